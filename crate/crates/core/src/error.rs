use thiserror::Error;

/// Errors shared by every layer of the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("the 1-form has both coefficients identically zero")]
    ZeroForm,

    #[error("the 1-form is regular at the origin; nothing to reduce")]
    NotSingular,

    #[error("special point on component D{component} has irrational coordinates (residual factor {residual})")]
    NonRationalSingularity { component: usize, residual: String },

    #[error("reduction did not stabilise within {max_depth} rounds; {count} points still fail: {points:?}")]
    DepthExceeded {
        max_depth: usize,
        count: usize,
        points: Vec<String>,
    },

    #[error("the curve {{y=0}} is not invariant for the given 1-form")]
    NotInvariant,

    #[error("the curve {{y=0}} is invariant for the given 1-form; tangency order is undefined")]
    IsInvariant,

    #[error("supplied curve {curve} is not a separatrix of the foliation")]
    NotASeparatrix { curve: String },

    #[error("curvette attachment at coordinate {coord} on D{component} collides with a special point")]
    AttachmentConflict { component: usize, coord: String },

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },

    #[error("literal at byte {pos} is not an exact rational; write fractions as p/q")]
    NonRationalLiteral { pos: usize },

    #[error("the reference curve is not a rational line through the given point")]
    NotALine,
}

pub type Result<T> = std::result::Result<T, Error>;
