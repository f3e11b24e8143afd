//! Error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong when constructing fields, polynomials,
/// group elements, or lattice data from untrusted input.
///
/// Arithmetic misuse that indicates a programming error rather than bad
/// input (mixing elements of different field specs, dividing by zero through
/// the operator traits) panics instead of returning a variant; the checked
/// entry points (`FieldElement::checked_inv`, constructors taking raw data)
/// return `Error`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The claimed characteristic is not a prime number.
    NotPrime { p: u32 },
    /// The extension degree must be at least 1.
    BadExtensionDegree { m: u32 },
    /// `p^m` exceeds the configured size bound.
    FieldTooLarge { p: u32, m: u32, bound: u64 },
    /// A serialized field element lies outside `[0, q)`.
    ElementOutOfRange { value: u64, q: u32 },
    /// Multinomial parts do not sum to the claimed total.
    PartsSumMismatch { total: u64, sum: u64 },
    /// An exponent tuple has the wrong number of entries for the context.
    ArityMismatch { expected: usize, got: usize },
    /// An exponent exceeds `q - 1`, so the monomial is not reduced.
    ExponentTooLarge { exponent: u64, max: u32 },
    /// A requested degree lies outside `0 ..= n(q-1)`.
    DegreeOutOfRange { r: u32, max: u32 },
    /// A value table has the wrong number of entries (`q^n` expected).
    ValueTableSize { expected: usize, got: usize },
    /// Matrix shapes do not allow the requested operation.
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    /// The matrix of a would-be group element is singular.
    SingularMatrix,
    /// A pairing was requested between quotients whose degrees do not add up
    /// to `n(q - 1)`.
    PairingDegrees { r: u32, r_prime: u32, required_sum: u32 },
    /// A polynomial is not homogeneous of the degree the context requires.
    NotHomogeneous { expected: u32 },
    /// A claimed signature does not belong to the poset under consideration.
    UnknownSignature { signature: alloc::vec::Vec<u32> },
    /// A member set is not downward closed, so it is not an ideal.
    NotDownwardClosed { culprit: alloc::vec::Vec<u32> },
    /// Free-form parse or validation failure (used for serialized inputs).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime { p } => write!(f, "{p} is not prime"),
            Error::BadExtensionDegree { m } => {
                write!(f, "extension degree must be at least 1, got {m}")
            }
            Error::FieldTooLarge { p, m, bound } => {
                write!(f, "field size {p}^{m} exceeds the bound {bound}")
            }
            Error::ElementOutOfRange { value, q } => {
                write!(f, "serialized element {value} is outside [0, {q})")
            }
            Error::PartsSumMismatch { total, sum } => {
                write!(f, "multinomial parts sum to {sum}, expected {total}")
            }
            Error::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            Error::ExponentTooLarge { exponent, max } => {
                write!(f, "exponent {exponent} exceeds the reduced maximum {max}")
            }
            Error::DegreeOutOfRange { r, max } => {
                write!(f, "degree {r} is outside 0..={max}")
            }
            Error::ValueTableSize { expected, got } => {
                write!(f, "value table needs {expected} entries, got {got}")
            }
            Error::ShapeMismatch { left, right } => write!(
                f,
                "matrix shapes {}x{} and {}x{} are incompatible",
                left.0, left.1, right.0, right.1
            ),
            Error::SingularMatrix => write!(f, "matrix is not invertible"),
            Error::PairingDegrees { r, r_prime, required_sum } => write!(
                f,
                "degrees {r} and {r_prime} do not sum to {required_sum}, so the quotients do not pair"
            ),
            Error::NotHomogeneous { expected } => {
                write!(f, "polynomial is not homogeneous of degree {expected}")
            }
            Error::UnknownSignature { signature } => {
                write!(f, "signature {signature:?} does not occur in this poset")
            }
            Error::NotDownwardClosed { culprit } => write!(
                f,
                "member set is not downward closed: a predecessor of {culprit:?} is missing"
            ),
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
