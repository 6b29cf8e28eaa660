use thiserror::Error;

/// Errors shared by all geometry and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("EmptyPointSet: convex hull of an empty point set")]
    EmptyPointSet,
    #[error("NotLatticePolygon: operation requires integer vertices")]
    NotLatticePolygon,
    #[error("DegeneratePolygon: operation requires a full-dimensional polygon")]
    DegeneratePolygon,
    #[error("OriginNotInterior: origin must lie strictly inside the polygon")]
    OriginNotInterior,
    #[error("NotCentrallySymmetric: polygon is not symmetric about the origin")]
    NotCentrallySymmetric,
    #[error("InvalidTolerance: tolerance must be positive")]
    InvalidTolerance,
    #[error("BadEdgeIndex: edge index {0} out of range")]
    BadEdgeIndex(usize),
    #[error("ApexOnEdge: apex lies on the chosen edge")]
    ApexOnEdge,
    #[error("ApexInsideBody: cone apex lies in the interior of the body")]
    ApexInsideBody,
    #[error("ExtensionFailed: no blocked extension found within the offset cap")]
    ExtensionFailed,
    #[error("SearchTooLarge: spec exceeds the enumeration budget")]
    SearchTooLarge,
    #[error("UnknownCase: no case family named {0:?}")]
    UnknownCase(String),
    #[error("EmptyFamily: no feasible point found in case {0:?}")]
    EmptyFamily(String),
    #[error("NoSolutionsFound: numeric solver diverged from every start")]
    NoSolutionsFound,
    #[error("CatalogMismatch: {0}")]
    CatalogMismatch(String),
    #[error("CounterexampleFound: {0}")]
    CounterexampleFound(String),
    #[error("InvalidPolygon: {0}")]
    InvalidPolygon(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
