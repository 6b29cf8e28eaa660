//! JSON interchange: polygons, regions and report fragments.
//!
//! Rationals travel as strings (`"p/q"` or `"3"`) so reports are exact and
//! diff-friendly. Parse errors name the offending field.

use crate::error::{Error, Result};
use crate::maximality::BlockingData;
use crate::point::Pt;
use crate::polygon::LatticePolygon;
use crate::rational::{rat_from_str, rat_to_string};
use crate::region::{Cell, Region};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub fn polygon_to_json(p: &LatticePolygon) -> Value {
    json!({
        "vertices": p
            .vertices()
            .iter()
            .map(|v| json!([rat_to_string(&v.x), rat_to_string(&v.y)]))
            .collect::<Vec<_>>()
    })
}

pub fn polygon_from_json(v: &Value) -> Result<LatticePolygon> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("polygon must be a JSON object".into()))?;
    let verts = obj
        .get("vertices")
        .ok_or_else(|| Error::Parse("missing field \"vertices\"".into()))?
        .as_array()
        .ok_or_else(|| Error::Parse("field \"vertices\" must be an array".into()))?;
    if verts.is_empty() {
        return Err(Error::Parse("field \"vertices\" must be non-empty".into()));
    }
    let mut pts = Vec::with_capacity(verts.len());
    for (i, vertex) in verts.iter().enumerate() {
        let pair = vertex.as_array().ok_or_else(|| {
            Error::Parse(format!("vertices[{i}] must be a two-element array"))
        })?;
        if pair.len() != 2 {
            return Err(Error::Parse(format!(
                "vertices[{i}] must have exactly two coordinates"
            )));
        }
        let coord = |j: usize| -> Result<crate::rational::Rat> {
            let field = &pair[j];
            if let Some(s) = field.as_str() {
                rat_from_str(s).map_err(|_| {
                    Error::Parse(format!("vertices[{i}][{j}] is not a rational: {s:?}"))
                })
            } else if let Some(n) = field.as_i64() {
                Ok(crate::rational::rat(n))
            } else {
                Err(Error::Parse(format!(
                    "vertices[{i}][{j}] must be a string rational or integer"
                )))
            }
        };
        pts.push(Pt::new(coord(0)?, coord(1)?));
    }
    crate::polygon::convex_hull(&pts)
}

pub fn region_to_json(r: &Region) -> Value {
    json!({
        "cells": r
            .cells
            .iter()
            .map(cell_to_json)
            .collect::<Vec<_>>()
    })
}

fn cell_to_json(c: &Cell) -> Value {
    json!({
        "halfplanes": c
            .constraints
            .iter()
            .map(|cn| {
                json!({
                    "normal": [
                        cn.hp.normal.0.to_i64().expect("normal fits i64"),
                        cn.hp.normal.1.to_i64().expect("normal fits i64"),
                    ],
                    "offset": rat_to_string(&cn.hp.offset),
                    "strict": cn.strict,
                })
            })
            .collect::<Vec<_>>()
    })
}

pub fn blocking_to_json(b: &BlockingData) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "per_edge".into(),
        json!(b
            .per_edge
            .iter()
            .map(|pts| pts.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    );
    obj.insert(
        "blocking_polygon".into(),
        b.blocking_polygon
            .as_ref()
            .map(polygon_to_json)
            .unwrap_or(Value::Null),
    );
    Value::Object(obj)
}

pub fn points_to_json(pts: &[(i64, i64)]) -> Value {
    json!(pts.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn polygon_round_trip() {
        for p in [
            catalog::scaled_standard_triangle(3),
            catalog::two_point_maximizer(),
            catalog::hollow_width2_quadrilateral(),
        ] {
            let v = polygon_to_json(&p);
            let back = polygon_from_json(&v).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn integer_coordinates_accepted() {
        let v: Value = serde_json::from_str(r#"{"vertices": [[0,0],["3","0"],[0,"3"]]}"#).unwrap();
        let p = polygon_from_json(&v).unwrap();
        assert_eq!(p, catalog::scaled_standard_triangle(3));
    }

    #[test]
    fn parse_errors_name_fields() {
        let bad: Value = serde_json::from_str(r#"{"vertices": [["1/0","0"]]}"#).unwrap();
        let err = polygon_from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("vertices[0][0]"));
        let missing: Value = serde_json::from_str(r#"{}"#).unwrap();
        assert!(polygon_from_json(&missing)
            .unwrap_err()
            .to_string()
            .contains("vertices"));
    }
}
