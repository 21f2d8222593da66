use thiserror::Error;

/// Errors produced by the geometric kernel and the structures built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as an exact rational")]
    InvalidScalar(String),
    #[error("the three defining points are collinear")]
    CollinearDefiningPoints,
    #[error("sites coincide")]
    CoincidentSites,
    #[error("need at least {needed} sites, got {got}")]
    TooFewSites { needed: usize, got: usize },
    #[error("all sites are collinear")]
    AllCollinear,
    #[error("site set must not be empty")]
    EmptySiteSet,
    #[error("sites {first} and {second} have identical coordinates")]
    DuplicateSite { first: usize, second: usize },
    #[error("site id {id} out of range for {len} sites")]
    InvalidSiteId { id: usize, len: usize },
    #[error("({i}, {j}) is not an edge of the triangulation")]
    NotAnEdge { i: usize, j: usize },
    #[error("shared Voronoi feature of sites {i} and {j} is not a bounded segment")]
    NotBoundedSegment { i: usize, j: usize },
    #[error("edge ({0}, {0}) would be a self loop")]
    SelfLoop(usize),
    #[error("no such edge ({0}, {1})")]
    NoSuchEdge(usize, usize),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
