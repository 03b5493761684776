//! Exact commutative algebra: finite field towers, dense polynomials,
//! rational functions, truncated power series and matrices, together with the
//! local Smith form, Newton polygon and Hensel lifting routines the motive
//! layer is built on.
//!
//! Everything here is desk scale: fields of at most a few thousand elements,
//! polynomial degrees in the tens, matrices up to roughly ten rows.  The code
//! prefers clarity and exactness over asymptotics.

pub mod field;
pub mod hensel;
pub mod literal;
pub mod matrix;
pub mod newton;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod smith;

use std::fmt;

/// Variable tags for polynomials and series.  Binary operations insist that
/// both operands carry the same tag, which catches a whole class of
/// plumbing mistakes (e.g. adding a polynomial in `t` to one in `theta`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// The coefficient variable `t` of the ring `A = F_q[t]`.
    T,
    /// The field generator `theta` of `K = F_q(theta)`.
    Theta,
    /// The indeterminate of characteristic polynomials.
    X,
    /// The local coordinate of a local shtuka.
    Z,
    /// The uniformizer of a complete local base ring.
    Pi,
    /// Auxiliary local coordinate (used for shifted series such as `z - zeta`).
    Eps,
}

impl Var {
    /// The literal spelling used by the expression grammar and printers.
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Theta => "th",
            Var::X => "X",
            Var::Z => "z",
            Var::Pi => "pi",
            Var::Eps => "eps",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Element-level ring interface.
///
/// Elements carry their own context (a finite field element knows its field,
/// a polynomial knows its variable), so the zero and one of the ambient ring
/// are obtained from an existing element via [`Ring::zero_like`] and
/// [`Ring::one_like`].
pub trait Ring: Clone + PartialEq + fmt::Debug {
    /// Zero of the ring this element lives in.
    fn zero_like(&self) -> Self;
    /// One of the ring this element lives in.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse, `None` when the element is not a unit.
    fn try_inv(&self) -> Option<Self>;
}

/// Errors raised by the algebra layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// A square matrix was singular where a regular one was required.
    SingularMatrix,
    /// The zero polynomial has no Newton polygon.
    ZeroPolynomial,
    /// A polynomial expected to be irreducible was not.
    NotIrreducible(String),
    /// The residue field does not contain the expected root of the polynomial.
    ResidueRootMissing(String),
    /// A series computation needed more precision than was carried.
    PrecisionExhausted(String),
    /// Operands belong to different fields or carry different variables.
    Mismatch(String),
    /// A division that had to be exact was not.
    InexactDivision,
    /// Invalid construction data (non-prime characteristic, empty matrix, ...).
    Invalid(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::SingularMatrix => write!(f, "matrix is singular"),
            AlgebraError::ZeroPolynomial => write!(f, "zero polynomial"),
            AlgebraError::NotIrreducible(s) => write!(f, "polynomial is not irreducible: {s}"),
            AlgebraError::ResidueRootMissing(s) => write!(f, "residue root missing: {s}"),
            AlgebraError::PrecisionExhausted(s) => write!(f, "series precision exhausted: {s}"),
            AlgebraError::Mismatch(s) => write!(f, "operand mismatch: {s}"),
            AlgebraError::InexactDivision => write!(f, "division was not exact"),
            AlgebraError::Invalid(s) => write!(f, "invalid data: {s}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Shorthand result type for the algebra layer.
pub type AlgebraResult<T> = Result<T, AlgebraError>;

pub use field::{FFElem, FiniteField};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use series::TruncatedSeries;
