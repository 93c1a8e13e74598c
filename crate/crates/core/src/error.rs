use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("group element must have positive determinant (got {det})")]
    NonPositiveDeterminant { det: f64 },
    #[error("kernel not one-dimensional: matrix vanishes")]
    KernelNotOneDimensional,
    #[error("matrix is not singular (|det|/|X|^2 = {ratio:e})")]
    NotSingular { ratio: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parameter {t} out of range [{min}, {max}]")]
    ParameterOutOfRange { t: f64, min: f64, max: f64 },
    #[error("insufficient samples for stencil at t = {t}")]
    InsufficientSamples { t: f64 },
    #[error("degenerate frame at t = {t}: position and velocity are parallel")]
    DegenerateFrame { t: f64 },
    #[error("curve is not 0-convex at t = {t}")]
    NotZeroConvex { t: f64 },
    #[error("left 0-convex region at t = {t}")]
    LeftZeroConvexRegion { t: f64 },
    #[error("left parameter range at t = {t}")]
    LeftParameterRange { t: f64 },
    #[error("integration did not converge (step-halving difference {diff:e})")]
    IntegratorDidNotConverge { diff: f64 },
    #[error("quadrature did not converge (Richardson difference {diff:e})")]
    QuadratureDidNotConverge { diff: f64 },

    #[error("t = {t} is not a node of the sample grid")]
    NotOnGrid { t: f64 },
    #[error("path not differentiable at t = {t}")]
    NotDifferentiable { t: f64 },
    #[error("nullity violated at t = {t} (residual {residual:e})")]
    NullityViolated { t: f64, residual: f64 },
    #[error("path not null at t = {t} (residual {residual:e})")]
    PathNotNull { t: f64, residual: f64 },
    #[error("path velocity vanishes at t = {t}")]
    VelocityVanishes { t: f64 },
    #[error("acceleration not spatial at t = {t} (norm {value:e})")]
    AccelerationNotSpatial { t: f64, value: f64 },
    #[error("negative acceleration norm {value:e} at t = {t}")]
    NegativeAcceleration { t: f64, value: f64 },
    #[error("kernel sign propagation broke at t = {t}; grid too coarse")]
    SignPropagationBroke { t: f64 },
    #[error("ellipse frame precondition violated: {0}")]
    EllipseFrame(&'static str),
    #[error("reconstructed curve is not 0-convex at t = {t}")]
    ReconstructionNotConvex { t: f64 },
    #[error("reconstructed curve does not osculate the path (residual {residual:e})")]
    OsculationResidual { residual: f64 },
}
