use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("characteristic too small: {name} has nilpotency class {class} > p = {p}")]
    CharacteristicTooSmall { name: String, p: u32, class: usize },
    #[error("algebra `{0}` needs a parameter eps")]
    MissingEps(String),
    #[error("algebra `{0}` takes no parameter eps")]
    UnexpectedEps(String),
    #[error("algebra `{0}` requires eps != 0")]
    EpsMustBeNonzero(String),
    #[error("algebra `{0}` is only defined in characteristic 2")]
    Char2Only(String),
    #[error("invalid algebra description: {0}")]
    InvalidSpec(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("product degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("x{i} and x{j} occur in one monomial but do not commute")]
    NonCommutingSupport { i: usize, j: usize },
    #[error("inputs do not pairwise commute")]
    NonCommutingInputs,
    #[error("center is not spanned by basis vectors")]
    CenterNotCoordinateAligned,

    #[error("algebra `{0}` has no listed center generators (its center is the p-center)")]
    NotInGeneratorTable(String),
    #[error("generator `{expr}` of {name} vanishes modulo {p}")]
    GeneratorVanishes { name: String, expr: String, p: u32 },
    #[error("no published generator list for p = {0} (only 5 and 7)")]
    UnsupportedPrime(u32),
    #[error("coefficient space of size {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("degree bound must be at least {min}")]
    DegreeBoundTooSmall { min: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
