use thiserror::Error;

/// Errors raised by the series, geometry, solver and curve routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant term {0:e} is too small to invert")]
    ZeroConstantTerm(f64),
    #[error("constant term {0:e} is not positive, no real square root")]
    NonPositiveConstantTerm(f64),
    #[error("series is not divisible by x^{power}: coefficient of x^{j} y^{k} is {value:e}")]
    NotDivisible { power: usize, j: usize, k: usize, value: f64 },
    #[error("argument outside the domain of {func}: {value}")]
    Domain { func: &'static str, value: f64 },
    #[error("point ({x}, {y}) is light-like (B = {b:e})")]
    LightlikePoint { x: f64, y: f64, b: f64 },
    #[error("base point is not light-like (B(0,0) = {0:e})")]
    NotLightlike(f64),
    #[error("B vanishes identically; A = 0 and the witness is unconstrained")]
    IdenticallyLightlike,
    #[error("surface is not admissible: residual {0:e} at degree {1}")]
    NotAdmissible(f64, usize),
    #[error("surface germ is not normalized: {0}")]
    NotNormalized(String),
    #[error("initial curve is invalid: {0}")]
    InvalidCurve(String),
    #[error("order {0} is too low")]
    OrderTooLow(usize),
    #[error("series solver broke down: {0}")]
    SeriesBlowup(String),
    #[error("initial curve is not degenerate (v_1 = {0:e})")]
    NotDegenerate(f64),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("(alpha, beta) is not a solution pair: residual {0:e}")]
    NotSolutionPair(f64),
    #[error("grid too coarse: step {0}")]
    GridTooCoarse(f64),
    #[error("singular coefficient at y = {0}")]
    SingularCoefficient(f64),
    #[error("|z - t0| = {dist} exceeds evaluation radius {radius}")]
    RadiusExceeded { dist: f64, radius: f64 },
    #[error("imaginary residue {0:e} after averaging")]
    ImaginaryResidue(f64),
    #[error("base curve is not space-like at t = {0}")]
    NotSpacelike(f64),
    #[error("projection is not locally invertible: {0}")]
    NotAGraph(String),
    #[error("level set trace failed: {0}")]
    TraceFailed(String),
    #[error("operation not supported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
