use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants split into two families: input errors (the polynomial or file
/// could not be understood) and domain errors (the input is fine but the
/// requested invariant is not available for it). [`Error::is_domain`] tells
/// them apart; the CLI maps them to exit codes 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("the polynomial has a nonzero constant term, so f(0) != 0")]
    ConstantTermPresent,
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("the constraint region is unbounded")]
    UnboundedRegion,
    #[error("the polyhedron is not full-dimensional")]
    NotFullDimensional,
    #[error("the affine space has no integral lattice scale")]
    NoLatticeScale,
    #[error("the Newton degree of the zero vector is infinite")]
    InfiniteDegree,
    #[error("the Newton polyhedron is not convenient (it misses a coordinate axis)")]
    NotConvenient,
    #[error("combinatorial polynomial has a non-integer exponent")]
    NonIntegerExponentInR,
    #[error(
        "the Newton polyhedron is not simplicial; the spectral-pair formula fails for \
         non-simplicial faces (e.g. x^2+y^2+xz+yz+z^4, where q = t+t^(3/2) on the \
         square face but Sp = t^(3/2))"
    )]
    NotSimplicial,
    #[error(
        "isolatedness is not established: the polyhedron is not convenient and \
         assume_isolated was not set"
    )]
    IsolatednessNotEstablished,
    #[error("non-degeneracy must be asserted for this invariant")]
    NondegeneracyNotAsserted,
    #[error("ray {0} lies outside the non-negative orthant")]
    RayOutsideSupport(String),
    #[error("cone does not lie over the normal cone of the requested face")]
    ParentMismatch,
    #[error("invalid refinement: {0}")]
    RefinementInvalid(String),
    #[error("negative exponent {0} of (1-L) in a motivic coefficient")]
    NegativeMotivicExponent(i64),
    #[error("smooth subdivision exceeded {0} steps")]
    SubdivisionLimit(usize),
}

impl Error {
    /// True for errors where the input was understood but the invariant is
    /// unavailable for it.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Syntax { .. }
                | Error::ConstantTermPresent
                | Error::ZeroPolynomial
                | Error::DimensionMismatch { .. }
                | Error::InvalidInput(_)
        )
    }

    /// Stable machine-readable name, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::ConstantTermPresent => "ConstantTermPresent",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::UnboundedRegion => "UnboundedRegion",
            Error::NotFullDimensional => "NotFullDimensional",
            Error::NoLatticeScale => "NoLatticeScale",
            Error::InfiniteDegree => "InfiniteDegree",
            Error::NotConvenient => "NotConvenient",
            Error::NonIntegerExponentInR => "NonIntegerExponentInR",
            Error::NotSimplicial => "NotSimplicial",
            Error::IsolatednessNotEstablished => "IsolatednessNotEstablished",
            Error::NondegeneracyNotAsserted => "NondegeneracyNotAsserted",
            Error::RayOutsideSupport(_) => "RayOutsideSupport",
            Error::ParentMismatch => "ParentMismatch",
            Error::RefinementInvalid(_) => "RefinementInvalid",
            Error::NegativeMotivicExponent(_) => "NegativeMotivicExponent",
            Error::SubdivisionLimit(_) => "SubdivisionLimit",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
