//! `latwidth`: exact lattice-width computations, blocking structures, case
//! verification, brute-force search and inequality suites, with JSON reports
//! on stdout.
//!
//! Exit codes: 0 on success/pass, 1 when an asserted bound fails, 2 on usage
//! or input errors.

use clap::{Args, Parser, Subcommand};
use latwidth_core::cases::{self, CaseName};
use latwidth_core::catalog;
use latwidth_core::covering::covering_radius_bracket;
use latwidth_core::inequalities as ineq;
use latwidth_core::json as io;
use latwidth_core::maximality;
use latwidth_core::metrics;
use latwidth_core::point::Pt;
use latwidth_core::polygon::LatticePolygon;
use latwidth_core::rational::{frac, rat, rat_from_str, rat_to_string};
use latwidth_core::sampling::{self, Sampler};
use latwidth_core::search::{self, SearchSpec};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "latwidth", version, about = "Exact planar lattice geometry")]
struct Cli {
    /// Seed for all randomized sweeps; identical seeds give identical bytes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all; env LATWIDTH_JOBS as fallback).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report real elapsed time instead of the deterministic 0.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice width of a polygon.
    Width { polygon: PathBuf },
    /// All width and lattice functionals of a polygon as one JSON object.
    Metrics {
        polygon: PathBuf,
        /// Tolerance of the covering-radius bracket.
        #[arg(long, default_value = "1/64")]
        covering_tol: String,
    },
    /// Lattice points of a polygon.
    Points {
        polygon: PathBuf,
        #[arg(long)]
        interior: bool,
    },
    /// Blocking points and blocking polygon.
    Blocking { polygon: PathBuf },
    /// k-maximality test and extension.
    Maximal {
        polygon: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1")]
        step: String,
        #[arg(long, default_value = "16")]
        cap: String,
    },
    /// Admissible vertex regions of a case family.
    Regions {
        #[arg(long)]
        case: String,
    },
    /// Grid verification of the case families.
    Verify(VerifyArgs),
    /// Brute-force enumeration of small lattice polygons.
    Search {
        /// tri or quad
        #[arg(long)]
        shape: String,
        #[arg(long)]
        radius: i64,
        /// Interior point range `min..max`.
        #[arg(long, default_value = "0..1")]
        interior: String,
        #[arg(long)]
        emit_argmax: Option<PathBuf>,
    },
    /// Inequality suites.
    Check {
        /// extremizers | isominwidth | makai | chain | transference | all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "all")]
    case: Option<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long, default_value_t = 40)]
    refine_iters: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .or_else(|| std::env::var("LATWIDTH_JOBS").ok().and_then(|v| v.parse().ok()));
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    let (inputs, outcome) = run(&cli);
    let elapsed_ms = if cli.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    match outcome {
        Ok((results, pass)) => {
            let envelope = json!({
                "command": command_name(&cli.command),
                "inputs": inputs,
                "results": results,
                "version": env!("CARGO_PKG_VERSION"),
                "elapsed_ms": elapsed_ms,
            });
            println!("{}", serde_json::to_string_pretty(&envelope).unwrap());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Width { .. } => "width",
        Command::Metrics { .. } => "metrics",
        Command::Points { .. } => "points",
        Command::Blocking { .. } => "blocking",
        Command::Maximal { .. } => "maximal",
        Command::Regions { .. } => "regions",
        Command::Verify(_) => "verify",
        Command::Search { .. } => "search",
        Command::Check { .. } => "check",
    }
}

fn load_polygon(path: &PathBuf) -> anyhow::Result<LatticePolygon> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("{} is not valid JSON: {e}", path.display()))?;
    io::polygon_from_json(&value).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Returns `(inputs-echo, (results, pass))`.
fn run(cli: &Cli) -> (Value, anyhow::Result<(Value, bool)>) {
    match &cli.command {
        Command::Width { polygon } => (
            json!({"polygon": polygon.display().to_string()}),
            cmd_width(polygon),
        ),
        Command::Metrics {
            polygon,
            covering_tol,
        } => (
            json!({"polygon": polygon.display().to_string(), "covering_tol": covering_tol}),
            cmd_metrics(polygon, covering_tol),
        ),
        Command::Points { polygon, interior } => (
            json!({"polygon": polygon.display().to_string(), "interior": interior}),
            cmd_points(polygon, *interior),
        ),
        Command::Blocking { polygon } => (
            json!({"polygon": polygon.display().to_string()}),
            cmd_blocking(polygon),
        ),
        Command::Maximal {
            polygon,
            k,
            step,
            cap,
        } => (
            json!({"polygon": polygon.display().to_string(), "k": k, "step": step, "cap": cap}),
            cmd_maximal(polygon, *k, step, cap),
        ),
        Command::Regions { case } => (json!({ "case": case }), cmd_regions(case)),
        Command::Verify(args) => (
            json!({
                "case": args.case,
                "all": args.all,
                "grid": args.grid,
                "refine_iters": args.refine_iters,
                "tol": args.tol,
            }),
            cmd_verify(args),
        ),
        Command::Search {
            shape,
            radius,
            interior,
            emit_argmax,
        } => (
            json!({"shape": shape, "radius": radius, "interior": interior}),
            cmd_search(shape, *radius, interior, emit_argmax.as_ref()),
        ),
        Command::Check { suite, samples } => (
            json!({"suite": suite, "samples": samples, "seed": cli.seed}),
            cmd_check(suite, *samples, cli.seed),
        ),
    }
}

fn cmd_width(path: &PathBuf) -> anyhow::Result<(Value, bool)> {
    let p = load_polygon(path)?;
    let w = metrics::lattice_width(&p)?;
    Ok((
        json!({
            "value": rat_to_string(&w.value),
            "direction": [w.minimizer.x, w.minimizer.y],
        }),
        true,
    ))
}

fn cmd_metrics(path: &PathBuf, covering_tol: &str) -> anyhow::Result<(Value, bool)> {
    let p = load_polygon(path)?;
    let tol = rat_from_str(covering_tol)?;
    let mut out = serde_json::Map::new();
    let w = metrics::lattice_width(&p)?;
    out.insert(
        "width".into(),
        json!({"value": rat_to_string(&w.value), "direction": [w.minimizer.x, w.minimizer.y]}),
    );
    out.insert("area".into(), json!(rat_to_string(&p.area())));
    out.insert("interior_points".into(), json!(p.interior_count()));
    out.insert("total_points".into(), json!(p.total_count()));
    out.insert(
        "difference_body".into(),
        io::polygon_to_json(&metrics::difference_body(&p)),
    );
    let origin_interior = p.contains(&Pt::origin(), true);
    out.insert(
        "polar".into(),
        if origin_interior {
            io::polygon_to_json(&metrics::polar(&p)?)
        } else {
            Value::Null
        },
    );
    out.insert(
        "first_minimum".into(),
        if origin_interior {
            json!(rat_to_string(&metrics::first_minimum(&p)?))
        } else {
            Value::Null
        },
    );
    out.insert(
        "transference_product".into(),
        if origin_interior {
            json!(rat_to_string(&metrics::transference_product(&p, false)?))
        } else {
            Value::Null
        },
    );
    out.insert(
        "transference_product_symmetric".into(),
        if origin_interior && p.is_centrally_symmetric() {
            json!(rat_to_string(&metrics::transference_product(&p, true)?))
        } else {
            Value::Null
        },
    );
    let bracket = covering_radius_bracket(&p, &tol)?;
    out.insert(
        "covering_radius".into(),
        json!({
            "lower": rat_to_string(&bracket.lower),
            "upper": rat_to_string(&bracket.upper),
            "witness_translate": [
                rat_to_string(&bracket.witness_translate.x),
                rat_to_string(&bracket.witness_translate.y),
            ],
        }),
    );
    let euclid = metrics::euclidean_min_width(&p)?;
    out.insert(
        "euclidean_min_width".into(),
        json!({"squared": rat_to_string(&euclid.squared), "approx": euclid.approx()}),
    );
    Ok((Value::Object(out), true))
}

fn cmd_points(path: &PathBuf, interior: bool) -> anyhow::Result<(Value, bool)> {
    let p = load_polygon(path)?;
    let pts = p.lattice_points(interior);
    Ok((
        json!({"count": pts.len(), "points": io::points_to_json(&pts)}),
        true,
    ))
}

fn cmd_blocking(path: &PathBuf) -> anyhow::Result<(Value, bool)> {
    let p = load_polygon(path)?;
    let data = maximality::blocking_data(&p)?;
    Ok((io::blocking_to_json(&data), true))
}

fn cmd_maximal(path: &PathBuf, k: usize, step: &str, cap: &str) -> anyhow::Result<(Value, bool)> {
    let p = load_polygon(path)?;
    let step = rat_from_str(step)?;
    let cap = rat_from_str(cap)?;
    let is_max = maximality::is_k_maximal(&p, k)?;
    let mut out = serde_json::Map::new();
    out.insert("is_k_maximal".into(), json!(is_max));
    if is_max {
        out.insert("extension".into(), io::polygon_to_json(&p));
    } else if p.interior_count() == k {
        match maximality::k_maximal_extension(&p, &step, &cap) {
            Ok(ext) => {
                out.insert("extension".into(), io::polygon_to_json(&ext));
            }
            Err(e) => {
                out.insert("extension".into(), Value::Null);
                out.insert("extension_error".into(), json!(e.to_string()));
            }
        }
    } else {
        out.insert("extension".into(), Value::Null);
        out.insert(
            "extension_error".into(),
            json!(format!("polygon has {} interior points, not {k}", p.interior_count())),
        );
    }
    Ok((Value::Object(out), true))
}

fn cmd_regions(case: &str) -> anyhow::Result<(Value, bool)> {
    let name = CaseName::parse(case)?;
    let family = cases::build_case(name);
    let regions: Vec<Value> = family
        .regions
        .iter()
        .zip(&family.labels)
        .map(|(r, label)| {
            let mut v = io::region_to_json(r);
            v.as_object_mut()
                .unwrap()
                .insert("label".into(), json!(label));
            v
        })
        .collect();
    Ok((
        json!({
            "case": name.as_str(),
            "blocking_polygon": io::polygon_to_json(&family.blocking_polygon),
            "interior_point": [family.interior_point.0, family.interior_point.1],
            "regions": regions,
        }),
        true,
    ))
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<(Value, bool)> {
    let reports = if args.all {
        cases::verify_all(args.grid, args.refine_iters, args.tol)?
    } else {
        let case = args
            .case
            .as_deref()
            .ok_or_else(|| anyhow::anyhow!("pass --case <name> or --all"))?;
        vec![cases::verify_case(
            CaseName::parse(case)?,
            args.grid,
            args.refine_iters,
            args.tol,
        )?]
    };
    let pass = reports.iter().all(|r| r.pass);
    Ok((serde_json::to_value(&reports)?, pass))
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow::anyhow!("interior range must look like 0..1"))?;
    Ok((a.parse()?, b.parse()?))
}

fn cmd_search(
    shape: &str,
    radius: i64,
    interior: &str,
    emit: Option<&PathBuf>,
) -> anyhow::Result<(Value, bool)> {
    let (lo, hi) = parse_range(interior)?;
    let spec = match shape {
        "tri" => SearchSpec::triangles(radius, lo, hi),
        "quad" => SearchSpec::quadrilaterals(radius, lo, hi),
        other => anyhow::bail!("unknown shape {other:?}; use tri or quad"),
    };
    let result = search::search(&spec)?;
    let argmax: Vec<Value> = result.argmax.iter().map(io::polygon_to_json).collect();
    if let Some(path) = emit {
        std::fs::write(path, serde_json::to_string_pretty(&json!(argmax))?)?;
    }
    Ok((
        json!({
            "max_width": rat_to_string(&result.max_width),
            "argmax": argmax,
            "histogram": result.histogram,
            "visited": result.visited,
        }),
        true,
    ))
}

fn cmd_check(suite: &str, samples: usize, seed: u64) -> anyhow::Result<(Value, bool)> {
    let mut rng = sampling::sampler(seed);
    let mut results = serde_json::Map::new();
    let mut pass = true;
    let all = suite == "all";
    let mut matched = all;
    if all || suite == "extremizers" {
        matched = true;
        let lines = ineq::check_extremizers()?;
        pass &= lines.iter().all(|l| l.pass);
        results.insert("extremizers".into(), serde_json::to_value(&lines)?);
    }
    if all || suite == "isominwidth" {
        matched = true;
        results.insert(
            "isominwidth".into(),
            isominwidth_sweep(&mut rng, samples, &mut pass)?,
        );
    }
    if all || suite == "makai" {
        matched = true;
        results.insert("makai".into(), makai_sweep(&mut rng, samples, &mut pass)?);
    }
    if all || suite == "chain" {
        matched = true;
        results.insert("chain".into(), chain_check(&mut pass)?);
    }
    if all || suite == "transference" {
        matched = true;
        results.insert(
            "transference".into(),
            transference_sweep(&mut rng, samples, &mut pass)?,
        );
    }
    if !matched {
        anyhow::bail!("unknown suite {suite:?}");
    }
    Ok((Value::Object(results), pass))
}

fn isominwidth_sweep(rng: &mut Sampler, samples: usize, pass: &mut bool) -> anyhow::Result<Value> {
    let mut checked = 0;
    let mut equalities = 0;
    while checked < samples {
        let p = sampling::random_lattice_polygon(rng, 4, 6);
        if p.interior_count() == 0 {
            continue;
        }
        let c = ineq::check_isominwidth(&p)?;
        *pass &= c.pass;
        if c.equality {
            equalities += 1;
            *pass &= c.equivalent_to_width3_triangle;
        }
        checked += 1;
    }
    let exact = ineq::check_isominwidth(&catalog::scaled_standard_triangle(3))?;
    *pass &= exact.pass && exact.equality && exact.equivalent_to_width3_triangle;
    Ok(json!({"checked": checked, "equalities": equalities, "pass": *pass}))
}

fn makai_sweep(rng: &mut Sampler, samples: usize, pass: &mut bool) -> anyhow::Result<Value> {
    for _ in 0..samples {
        let p = sampling::random_rational_polygon(rng, 4, 6, 6);
        let c = ineq::check_makai(&p)?;
        *pass &= c.pass;
    }
    let t0 = ineq::check_makai(&catalog::terminal_triangle())?;
    *pass &= t0.pass && t0.equality && t0.matches_terminal_triangle;
    Ok(json!({"checked": samples, "pass": *pass}))
}

fn chain_check(pass: &mut bool) -> anyhow::Result<Value> {
    let scan = search::isominwidth_scan(&SearchSpec::triangles(4, 1, 20))?;
    let mut rows = Vec::new();
    for (k, w) in &scan.max_width_per_count {
        let check = ineq::check_flatness_chain(*k, &rat(*w));
        *pass &= check.pass && check.ratio_step.unwrap_or(true);
        rows.push(serde_json::to_value(&check)?);
    }
    Ok(json!({"per_count": rows, "pass": *pass}))
}

fn transference_sweep(rng: &mut Sampler, samples: usize, pass: &mut bool) -> anyhow::Result<Value> {
    let mut worst_nonsym = rat(0);
    for _ in 0..samples {
        let p = sampling::random_one_point_polygon(rng, 4);
        let prod = metrics::transference_product(&p, false)?;
        if prod > rat(3) {
            *pass = false;
        }
        if prod > worst_nonsym {
            worst_nonsym = prod;
        }
    }
    let mut worst_sym = rat(0);
    for _ in 0..samples {
        let p = sampling::random_symmetric_polygon(rng, 4);
        let prod = metrics::transference_product(&p, true)?;
        if prod > frac(4, 3) {
            *pass = false;
        }
        if prod > worst_sym {
            worst_sym = prod;
        }
    }
    let bary = ineq::hexagon_barycentric_check(rng, samples.min(200))?;
    *pass &= bary.pass;
    let cross = ineq::symmetric_cross_case_check(rng)?;
    *pass &= cross.pass;
    Ok(json!({
        "nonsymmetric_max": rat_to_string(&worst_nonsym),
        "symmetric_max": rat_to_string(&worst_sym),
        "barycentric": serde_json::to_value(&bary)?,
        "symmetric_cross": serde_json::to_value(&cross)?,
        "pass": *pass,
    }))
}
