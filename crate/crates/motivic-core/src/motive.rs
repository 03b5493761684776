//! Tau-matrix presentations of effective motives over `K = F_q(theta)`.
//!
//! A presentation is a square matrix `T` over `K[t]` with
//! `det T = c * (t - theta)^d` for a unit `c` of `K`: the matrix of the
//! semilinear operator in a fixed basis, columns giving the images of the
//! twisted basis vectors.  Validation is eager — a constructed
//! [`MotivePresentation`] always carries its local divisor profile at
//! `t = theta` (the Hodge–Pink weights), its dimension `d` and its rank.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::algebra::field::{FFElem, FiniteField};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::smith::divisor_valuations_minors;
use crate::algebra::{AlgebraError, Ring, Var};

#[derive(Debug, Clone, PartialEq)]
pub enum MotiveError {
    NotSquare,
    SingularTau,
    NotEffective(String),
    FieldMismatch(String),
    BadEntry(String),
}

impl fmt::Display for MotiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotiveError::NotSquare => write!(f, "tau matrix must be square"),
            MotiveError::SingularTau => write!(f, "tau matrix has zero determinant"),
            MotiveError::NotEffective(msg) => write!(f, "presentation is not effective: {msg}"),
            MotiveError::FieldMismatch(msg) => write!(f, "coefficient field mismatch: {msg}"),
            MotiveError::BadEntry(msg) => write!(f, "bad tau entry: {msg}"),
        }
    }
}

impl std::error::Error for MotiveError {}

impl From<AlgebraError> for MotiveError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::SingularMatrix => MotiveError::SingularTau,
            other => MotiveError::BadEntry(other.to_string()),
        }
    }
}

pub type MotiveResult<T> = Result<T, MotiveError>;

#[derive(Clone)]
pub struct MotivePresentation {
    field: Arc<FiniteField>,
    tau: Matrix<Poly<RatFunc>>,
    /// Local divisor profile of `tau` at `t = theta`, ascending.
    hodge_pink: Vec<usize>,
    label: Option<String>,
}

impl MotivePresentation {
    /// Validate and finish a presentation.  Checks squareness, coefficient
    /// field consistency, a non-zero determinant of the exact shape
    /// `c * (t - theta)^d`, and computes the divisor profile at `t = theta`.
    pub fn new(
        field: &Arc<FiniteField>,
        tau: Matrix<Poly<RatFunc>>,
        label: Option<String>,
    ) -> MotiveResult<Self> {
        if !tau.is_square() || tau.rows() == 0 {
            return Err(MotiveError::NotSquare);
        }
        for e in tau.entries() {
            if e.var() != Var::T {
                return Err(MotiveError::BadEntry(format!(
                    "entry is a polynomial in `{}`, expected `t`",
                    e.var()
                )));
            }
            for c in e.coeffs() {
                if c.var() != Var::Theta {
                    return Err(MotiveError::BadEntry(format!(
                        "coefficient is a function of `{}`, expected `th`",
                        c.var()
                    )));
                }
                let cf = c.num().coeffs()[0].field();
                if cf != field {
                    return Err(MotiveError::FieldMismatch(format!(
                        "entry coefficient lies in F_{}, presentation field is F_{}",
                        cf.order(),
                        field.order()
                    )));
                }
            }
        }

        let det = tau.det();
        if det.is_zero() {
            return Err(MotiveError::SingularTau);
        }
        let theta = RatFunc::variable(Var::Theta, &FFElem::one(field));
        let dim = det
            .valuation_at_root(&theta)
            .expect("non-zero determinant has finite valuation");
        let lin = Poly::new(Var::T, vec![theta.neg(), theta.one_like()]);
        let mut residual = det.clone();
        for _ in 0..dim {
            residual = residual.div_exact(&lin)?;
        }
        match residual.degree() {
            Some(0) => {}
            _ => {
                return Err(MotiveError::NotEffective(format!(
                    "det tau = ({residual}) * (t - th)^{dim} is not a unit multiple of a power of (t - th)"
                )));
            }
        }

        let hodge_pink = divisor_valuations_minors(&tau, &theta)?;
        let total: usize = hodge_pink.iter().sum();
        assert_eq!(
            total, dim,
            "divisor profile must sum to the determinant valuation"
        );

        Ok(MotivePresentation {
            field: Arc::clone(field),
            tau,
            hodge_pink,
            label,
        })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn tau(&self) -> &Matrix<Poly<RatFunc>> {
        &self.tau
    }

    pub fn rank(&self) -> usize {
        self.tau.rows()
    }

    pub fn dim(&self) -> usize {
        self.hodge_pink.iter().sum()
    }

    /// Elementary divisor valuations of tau at `t = theta`, ascending.
    pub fn hodge_pink_weights(&self) -> &[usize] {
        &self.hodge_pink
    }

    /// Largest divisor valuation; the presentation's weights lie in
    /// `[0, height]`.
    pub fn height(&self) -> usize {
        *self.hodge_pink.last().expect("rank is at least one")
    }

    /// `dim / rank`.
    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.dim() as i64, self.rank() as i64)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    // -- standard constructions ---------------------------------------------

    /// The rank-one presentation `[t - th]`.
    pub fn carlitz(field: &Arc<FiniteField>) -> Self {
        let theta = RatFunc::variable(Var::Theta, &FFElem::one(field));
        let entry = Poly::new(Var::T, vec![theta.neg(), theta.one_like()]);
        MotivePresentation::new(field, Matrix::new(1, 1, vec![entry]), Some("carlitz".into()))
            .expect("the Carlitz presentation is effective")
    }

    /// The unit presentation `[1]`.
    pub fn unit(field: &Arc<FiniteField>) -> Self {
        let one = Poly::constant(Var::T, RatFunc::one_of(Var::Theta, &FFElem::one(field)));
        MotivePresentation::new(field, Matrix::new(1, 1, vec![one]), Some("unit".into()))
            .expect("the unit presentation is effective")
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> MotiveResult<Self> {
        if self.field != other.field {
            return Err(MotiveError::FieldMismatch(
                "direct sum of presentations over different fields".into(),
            ));
        }
        MotivePresentation::new(&self.field, self.tau.block_diag(&other.tau), None)
    }

    /// Kronecker-product tensor.
    pub fn tensor(&self, other: &Self) -> MotiveResult<Self> {
        if self.field != other.field {
            return Err(MotiveError::FieldMismatch(
                "tensor of presentations over different fields".into(),
            ));
        }
        MotivePresentation::new(&self.field, self.tau.kronecker(&other.tau), None)
    }

    pub fn tensor_power(&self, e: u32) -> MotiveResult<Self> {
        let mut result = MotivePresentation::unit(&self.field);
        for _ in 0..e {
            result = result.tensor(self)?;
        }
        Ok(result)
    }

    /// The rank-one presentation `[det tau]`.
    pub fn determinant(&self) -> Self {
        MotivePresentation::new(&self.field, Matrix::new(1, 1, vec![self.tau.det()]), None)
            .expect("the determinant of an effective presentation is effective")
    }

    /// Deterministic pseudo-random presentation with the prescribed divisor
    /// profile: `U * diag((t-th)^{h_i}) * V` with `U`, `V` products of
    /// elementary row and column operations over `F_q[th][t]`.  All entries
    /// are polynomial in `th`, so the result has good reduction at every
    /// finite place not dividing the leading structure, and its divisor
    /// profile is exactly `profile` (sorted).  Used by tests and benchmarks.
    pub fn from_divisor_profile(field: &Arc<FiniteField>, profile: &[usize], seed: u64) -> Self {
        assert!(!profile.is_empty(), "profile must be non-empty");
        let r = profile.len();
        let one = FFElem::one(field);
        let theta = RatFunc::variable(Var::Theta, &one);
        let lin = Poly::new(Var::T, vec![theta.neg(), theta.one_like()]);

        let mut sorted = profile.to_vec();
        sorted.sort_unstable();
        let zero = Poly::zero(Var::T, &RatFunc::zero_of(Var::Theta, &one));
        let mut m = Matrix::from_fn(r, r, |_, _| zero.clone());
        for (i, &h) in sorted.iter().enumerate() {
            m.set(i, i, lin.pow(h as u32));
        }

        // xorshift* stream; deterministic for a given seed
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state = state.wrapping_mul(0x2545F4914F6CDD1D);
            state >> 32
        };
        let q = field.order();

        for round in 0..(2 * r + 2) {
            let i = (next() as usize) % r;
            let mut k = (next() as usize) % r;
            if r > 1 && k == i {
                k = (k + 1) % r;
            }
            if r == 1 {
                break;
            }
            // factor = a + b*th + c*t with small pseudo-random scalars
            let a = FFElem::from_u64(field, next() % q);
            let b = FFElem::from_u64(field, next() % q);
            let c = FFElem::from_u64(field, next() % q);
            let factor = Poly::new(
                Var::T,
                vec![
                    RatFunc::from_poly(Poly::new(Var::Theta, vec![a, b])),
                    RatFunc::constant(Var::Theta, c),
                ],
            );
            if round % 2 == 0 {
                // row_i += factor * row_k
                for col in 0..r {
                    let add = factor.mul(m.at(k, col));
                    m.set(i, col, m.at(i, col).add(&add));
                }
            } else {
                // col_i += factor * col_k
                for row in 0..r {
                    let add = factor.mul(m.at(row, k));
                    m.set(row, i, m.at(row, i).add(&add));
                }
            }
        }

        MotivePresentation::new(field, m, None)
            .expect("elementary operations preserve effectivity")
    }
}

impl fmt::Debug for MotivePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MotivePresentation(rank {}, dim {}, hp {:?})",
            self.rank(),
            self.dim(),
            self.hodge_pink
        )
    }
}
