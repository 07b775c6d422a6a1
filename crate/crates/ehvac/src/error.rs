use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("leading cubic coefficient is degenerate ({0:e})")]
    DegenerateLeading(f64),

    #[error("integration exceeded {max_steps} steps at s = {s}")]
    StepLimit { max_steps: usize, s: f64 },

    #[error("non-finite right-hand side; last good s = {last_s}")]
    NonFinite { last_s: f64 },

    #[error("no sign change on [{a}, {b}] (f(a) = {fa}, f(b) = {fb})")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },

    #[error("cylindrical chart singularity at r = {r}")]
    ChartSingularity { r: f64 },

    #[error("operation requires the {expected} chart")]
    WrongChart { expected: &'static str },

    #[error("singular metric (det = {det:e}) at event {event:?}")]
    SingularMetric { det: f64, event: [f64; 4] },

    #[error("tensor is not antisymmetric (defect {defect:e})")]
    NotAntisymmetric { defect: f64 },

    #[error("variance mismatch: {0}")]
    Variance(&'static str),

    #[error("degenerate dispersion: Lambda1 = {0:e}")]
    DegenerateLambda1(f64),

    #[error("complex dispersion roots: discriminant = {0:e}")]
    ComplexRoots(f64),

    #[error("degenerate Omega denominator ({0:e})")]
    DegenerateOmega(f64),

    #[error("L_F vanishes at the evaluation point")]
    LfZero,

    #[error("direction phi = {phi} is trapped (1 - P A^2 sin^2 phi < 0)")]
    Trapped { phi: f64 },

    #[error("infinite delay (velocity vanishes)")]
    InfiniteDelay,

    #[error("degenerate light cone: discriminant = {0:e}")]
    DegenerateCone(f64),

    #[error("r = {r} and r0 = {r0} lie on opposite sides of r_c = {rc}")]
    BranchCrossing { r: f64, r0: f64, rc: f64 },

    #[error("r = {r} is outside the branch domain (r_s = {r_s})")]
    OutOfDomain { r: f64, r_s: f64 },

    #[error("no cubic root in the range of branch {branch} at r = {r}")]
    NoRootInRange { branch: &'static str, r: f64 },

    #[error("dB/dr is singular at the branch point B^2 = B_s^2")]
    BranchPoint,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
