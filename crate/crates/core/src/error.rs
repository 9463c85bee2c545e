use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tower height {0} is unsupported (expected 1..=6)")]
    TowerHeight(u32),
    #[error("index {index} is out of range for GF(2^{degree})")]
    IndexOutOfRange { index: u64, degree: u32 },
    #[error("element {0:#x} does not belong to the configured field")]
    FieldMismatch(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("parameter {name}={value} is out of range (max {max})")]
    ParameterOutOfRange { name: &'static str, value: u64, max: u64 },
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("polynomial of degree {degree} does not fit into {len} coefficients")]
    DegreeTooLarge { degree: usize, len: usize },
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("coefficient {index} is not in GF(2)")]
    NotBinary { index: usize },
    #[error("coefficient {index} is outside the subfield GF(2^{width})")]
    CoefficientDomain { index: usize, width: u32 },
    #[error("offset {alpha:#x} is not in W_{upper} \\ W_{lower}")]
    BadOffset { alpha: u64, lower: u32, upper: u32 },
    #[error("twiddle {twiddle:#x} is not of the form c + v_{l} with c in GF(2^{l})")]
    TwiddleForm { twiddle: u64, l: u32 },
    #[error("orbit of point {sigma:#x} collides at index {index}")]
    OrbitCollision { sigma: u64, index: u64 },
    #[error("index {0} is not covered by any orbit")]
    Uncovered(u64),
    #[error("operands need a transform of dimension {needed}, field supports {max}")]
    OperandsTooLarge { needed: u32, max: u32 },
    #[error("unsupported circuit size {0}")]
    UnsupportedSize(usize),
    #[error("malformed reference {0}")]
    MalformedReference(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid hex string {0:?}")]
    InvalidHex(String),
}
