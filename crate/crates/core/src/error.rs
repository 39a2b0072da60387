use crate::ComplexValue;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("order {0} exceeds the supported maximum of 50")]
    OrderTooLarge(u32),
    #[error("|z| = {0} exceeds the supported maximum of 1e4")]
    MagnitudeTooLarge(f64),
    #[error("non-finite input")]
    NonFinite,
    #[error("result is not representable in double precision")]
    Overflow,
    #[error("Y_n is singular at the origin")]
    OriginSingularity,
    #[error("z = {0} lies on the branch cut (-inf, 0]")]
    BranchCut(ComplexValue),
    #[error("argument must be non-zero")]
    ZeroArgument,
    #[error("ODE step {step} exceeds the maximum of {max}")]
    StepTooLarge { step: f64, max: f64 },
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("boundary radius R + eps*f(theta) is non-positive at theta = {theta}")]
    NonPositiveRadius { theta: f64 },
    #[error("perturbation too large: eps * sup|f| = {bound} is not below R = {radius}")]
    PerturbationTooLarge { bound: f64, radius: f64 },
    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),
    #[error("mapping epsilon {mapping} differs from boundary epsilon {boundary}")]
    EpsilonMismatch { mapping: f64, boundary: f64 },
    #[error("normal equations are singular: J_n and Y_n are numerically collinear on the sample")]
    SingularNormalEquations,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable upper-case code used in CSV reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OrderTooLarge(_) => "ORDER_TOO_LARGE",
            Error::MagnitudeTooLarge(_) => "MAGNITUDE_TOO_LARGE",
            Error::NonFinite => "NON_FINITE",
            Error::Overflow => "OVERFLOW",
            Error::OriginSingularity => "ORIGIN_SINGULARITY",
            Error::BranchCut(_) => "BRANCH_CUT",
            Error::ZeroArgument => "ZERO_ARGUMENT",
            Error::StepTooLarge { .. } => "STEP_TOO_LARGE",
            Error::InvalidRegion(_) => "INVALID_REGION",
            Error::NonPositiveRadius { .. } => "NON_POSITIVE_RADIUS",
            Error::PerturbationTooLarge { .. } => "PERTURBATION_TOO_LARGE",
            Error::InvalidBoundary(_) => "INVALID_BOUNDARY",
            Error::EpsilonMismatch { .. } => "EPSILON_MISMATCH",
            Error::SingularNormalEquations => "SINGULAR_NORMAL_EQUATIONS",
            Error::DegenerateInput(_) => "DEGENERATE_INPUT",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
        }
    }
}
