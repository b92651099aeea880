use thiserror::Error;

use crate::coding::FareyInterval;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not a point of [0, inf]")]
    ZeroOverZero,

    #[error("value is negative and lies outside [0, inf]")]
    Negative,

    #[error("surd denominator must be nonzero")]
    ZeroDenominator,

    #[error("map is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("identity map has no isolated fixed point")]
    IdentityMap,

    #[error("map has no fixed point in [0, inf]")]
    NoFixedPoint,

    #[error("could not single out one fixed point inside the cylinder of {0}")]
    AmbiguousFixedPoint(String),

    #[error("phi(0) = inf is not a quadratic surd; use the rational path")]
    SurdAtZero,

    #[error("word {0:?} is not admissible (contains \"11\")")]
    Inadmissible(String),

    #[error("word must be nonempty")]
    EmptyWord,

    #[error("{0} is outside the domain [0, 1]")]
    OutsideUnitInterval(String),

    #[error("width goal not reached after {prefix} symbols; best enclosure {enclosure}")]
    WidthGoalNotReached { prefix: usize, enclosure: FareyInterval },

    #[error("level {requested} exceeds the configured maximum {max}")]
    LevelTooLarge { requested: u32, max: u32 },

    #[error("depth {requested} exceeds the guard {max}")]
    DepthTooLarge { requested: u32, max: u32 },

    #[error("k = {requested} exceeds the configured maximum {max}")]
    KTooLarge { requested: u32, max: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("schedule violates (m_i)! > (m_(i-1))! + k_(i-1) + 1 at position {0}")]
    BadSchedule(usize),

    #[error("index arithmetic overflowed u64")]
    IndexOverflow,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
