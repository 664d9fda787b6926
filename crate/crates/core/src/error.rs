use thiserror::Error;

/// Errors shared across the whole library.
///
/// Formal-path operations never round; they either produce an exact result or
/// fail with one of these.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("division by a non-unit series (zero constant term)")]
    DivisionByNonUnit,
    #[error("substituted series must vanish at the origin")]
    NonVanishingShift,
    #[error("linear part is singular")]
    SingularLinearPart,
    #[error("scalar factor is not a unit")]
    NonUnitFactor,
    #[error("component has x-degree {found}, expected a polynomial of degree <= {max}")]
    NotPolynomialInX { found: usize, max: usize },
    #[error("field would be meromorphic at infinity without rescaling (needs x~^{0})")]
    MeromorphicAtInfinity(usize),
    #[error("axis {0} is not invariant")]
    AxisNotInvariant(&'static str),
    #[error("field component vanishes identically on the axis")]
    ZeroAxisComponent,
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("field is not a saddle-node at the origin")]
    NotSaddleNode,
    #[error("truncation order too shallow: need at least {needed}, have {have}")]
    TruncationTooShallow { needed: usize, have: usize },
    #[error("class not supported by the formal normal form solver: {0}")]
    UnsupportedClass(String),
    #[error("eigendata is irrational or approximate; exact reduction refused")]
    IrrationalEigendata,
    #[error("1-d field has zero linear coefficient")]
    ZeroLinearCoefficient,
    #[error("leading coefficient has no exact {0}-th root; cannot normalize")]
    RootUnavailable(u32),
    #[error("input is rational; continued-fraction verdict would be degenerate")]
    RationalInput,
    #[error("invalid continued-fraction target: {0}")]
    InvalidTarget(String),
    #[error("field is not in the central-manifold form x^2 dx + (y + x f(y)) dy, f(0)=0")]
    NotCentralForm,
    #[error("field is not singular at the origin")]
    NonSingularInput,
    #[error("blow-up is degenerate: all components vanish modulo truncation")]
    DegenerateBlowup,
    #[error("g vanishes identically on the axis")]
    VanishingG,
    #[error("axis cannot be fixed pointwise: f(x,0) is not identically 1")]
    AxisNotFixable,
    #[error("leaf integration hit a singular point (|fx| = {0:.3e})")]
    SingularEncounter(f64),
    #[error("integration step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("multiplier has modulus {0}; linearization requires |s| != 0, 1")]
    NonHyperbolic(f64),
    #[error("gamma function pole at {0}")]
    PoleOfGamma(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
