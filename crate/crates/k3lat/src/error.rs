use alloc::string::String;

/// Errors raised by lattice and moduli computations. Every variant carries
/// enough context to render a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Gram matrix is not square.
    NotSquare,
    /// Gram matrix is not symmetric.
    NotSymmetric,
    /// A diagonal Gram entry is odd; only even lattices are supported.
    NotEven { index: usize },
    /// det(gram) = 0.
    Degenerate,
    /// Vector length does not match the lattice rank.
    LengthMismatch { expected: usize, found: usize },
    /// The zero vector has no divisibility and is never primitive.
    ZeroVector,
    /// rescale by 0 does not yield a lattice.
    ZeroScale,
    /// Parameter out of range for a named lattice construction.
    BadParameter(&'static str),
    /// Sublattice basis is linearly dependent.
    DependentBasis,
    /// glue check requires unimodular ambient.
    NotUnimodular,
    /// Restricted Gram of the sublattice is degenerate.
    DegenerateSublattice,
    /// A sublattice that must be primitive is not.
    NotPrimitiveSublattice,
    /// A vector that must be primitive is not.
    NotPrimitiveVector(&'static str),
    /// Rational coordinates do not pair integrally with the lattice.
    NotDualVector,
    /// Generator image list does not define a group homomorphism.
    NotHomomorphic,
    /// Néron–Severi lattice must have signature (1, rank-1).
    BadSignature { pos: usize, neg: usize },
    /// Ample hint must have positive square.
    AmpleNotPositive,
    /// Mukai vector must be primitive.
    MukaiNotPrimitive,
    /// Witness does not span two orthogonal hyperbolic planes.
    BadHyperbolicWitness(&'static str),
    /// Polarisation class violates a Beauville–Mukai hypothesis.
    BadPolarisation(&'static str),
    /// A required elliptic-fibration witness was not found.
    MissingSectionWitness,
    /// Anything else, with a free-form message.
    Other(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::NotSquare => write!(f, "gram matrix must be square"),
            Error::NotSymmetric => write!(f, "gram matrix must be symmetric"),
            Error::NotEven { index } => {
                write!(f, "lattice is not even: gram[{index}][{index}] is odd")
            }
            Error::Degenerate => write!(f, "degenerate lattice: det(gram) = 0"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "vector length {found} does not match rank {expected}")
            }
            Error::ZeroVector => write!(f, "zero vector has no divisibility"),
            Error::ZeroScale => write!(f, "cannot rescale a lattice by 0"),
            Error::BadParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DependentBasis => write!(f, "sublattice basis is linearly dependent"),
            Error::NotUnimodular => write!(f, "glue check requires unimodular ambient"),
            Error::DegenerateSublattice => {
                write!(f, "sublattice has degenerate restricted gram")
            }
            Error::NotPrimitiveSublattice => {
                write!(f, "sublattice is not primitive in the ambient lattice")
            }
            Error::NotPrimitiveVector(where_) => {
                write!(f, "vector is not primitive in {where_}")
            }
            Error::NotDualVector => write!(f, "not a dual vector"),
            Error::NotHomomorphic => {
                write!(f, "generator images do not define a group homomorphism")
            }
            Error::BadSignature { pos, neg } => {
                write!(f, "expected signature (1, rank-1), found ({pos}, {neg})")
            }
            Error::AmpleNotPositive => write!(f, "ample hint must have positive square"),
            Error::MukaiNotPrimitive => write!(f, "Mukai vector must be primitive"),
            Error::BadHyperbolicWitness(what) => {
                write!(f, "need U+U sublattice witness: {what}")
            }
            Error::BadPolarisation(what) => write!(f, "invalid polarisation: {what}"),
            Error::MissingSectionWitness => {
                write!(f, "theorem hypothesis not verified: no elliptic section witness")
            }
            Error::Other(msg) => write!(f, "{msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
