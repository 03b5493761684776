//! Local shtukas at a finite place and tame inertia weights.
//!
//! At a place `u` of `K` with residue field `k` of order `q_hat`, the
//! completed story happens over `O = k[[pi]]` and its `z`-adic extension
//! `O[[z]]`: a local shtuka presentation is a square matrix over `O[[z]]`
//! together with the point `zeta in O` where its determinant is allowed to
//! vanish (`zeta = pi` in the coordinate constructed here; synthetic
//! presentations may use `zeta = unit * pi^e` with `e > 1`).
//!
//! [`associated_local_shtuka`] turns a presentation with good reduction at
//! `u` into this local data: it lifts the residue root of the place
//! generator `g` to the series root `w` of `g(W) = pi` (Hensel), multiplies
//! the full Frobenius word out symbolically over `K[t]`, and then substitutes
//! `t -> w(z)` (coefficients constant) and `th -> w(pi)`.  For the rank-one
//! unit-root-free case `tau = [t - th]` at the place `(th)` this yields
//! exactly `z - pi`.
//!
//! The torsion quotient mod `z` is a semilinear matrix over `O`; when it has
//! permutation support it decomposes into cyclic blocks `(n_0, ..., n_{r-1};
//! lambda)`, whose attached tame character has exponent
//! `n = n_0 q_hat^{r-1} + ... + n_{r-1}` on the level-`r` fundamental
//! character.  Its tame inertia weights are the base-`q_hat` digits of `n`
//! reduced mod `q_hat^r - 1` — so the all-`(q_hat - 1)` digit vector
//! collapses to the trivial character.  Under the guard
//! `e * h < q_hat - 1` no digit wraps and the weights must sum to
//! `e * dim`; on the boundary the collapse breaks that sum, which is
//! exactly the phenomenon [`ti_sum_check`] polices with its strict guard.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{FFElem, FiniteField};
use crate::algebra::hensel::lift_root_orbit;
use crate::algebra::matrix::Matrix;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::series::TruncatedSeries;
use crate::algebra::{AlgebraError, Ring, Var};
use crate::motive::MotivePresentation;
use crate::place::{reduce_at, Place, PlaceError};

pub const DEFAULT_PI_PRECISION: usize = 16;
pub const DEFAULT_Z_PRECISION: usize = 8;

/// Element of `k[[pi]]` at finite precision.
pub type PiSeries = TruncatedSeries<FFElem>;
/// Element of `k[[pi]][[z]]` at finite precision (outer variable `z`).
pub type ZSeries = TruncatedSeries<TruncatedSeries<FFElem>>;

#[derive(Debug, Clone, PartialEq)]
pub enum ShtukaError {
    NotGoodAtU(String),
    PrecisionExhausted(String),
    NotCyclicShape(String),
    HeightViolation { digit: usize, bound: usize },
    ExponentOutOfRange(String),
    GuardViolated(String),
    Place(PlaceError),
    Algebra(AlgebraError),
}

impl fmt::Display for ShtukaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShtukaError::NotGoodAtU(msg) => write!(f, "no good model at the place: {msg}"),
            ShtukaError::PrecisionExhausted(msg) => write!(f, "precision exhausted: {msg}"),
            ShtukaError::NotCyclicShape(msg) => {
                write!(f, "torsion matrix does not have permutation support: {msg}")
            }
            ShtukaError::HeightViolation { digit, bound } => {
                write!(f, "torsion digit {digit} exceeds the height bound {bound}")
            }
            ShtukaError::ExponentOutOfRange(msg) => write!(f, "bad character exponent: {msg}"),
            ShtukaError::GuardViolated(msg) => {
                write!(f, "tame inertia guard violated: {msg}")
            }
            ShtukaError::Place(e) => write!(f, "{e}"),
            ShtukaError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ShtukaError {}

impl From<PlaceError> for ShtukaError {
    fn from(e: PlaceError) -> Self {
        ShtukaError::Place(e)
    }
}

impl From<AlgebraError> for ShtukaError {
    fn from(e: AlgebraError) -> Self {
        ShtukaError::Algebra(e)
    }
}

pub type ShtukaResult<T> = Result<T, ShtukaError>;

/// A local shtuka presentation: matrix over `k[[pi]][[z]]` and the point
/// `zeta = unit * pi^e` of its allowed degeneracy.
#[derive(Clone)]
pub struct LocalShtukaPresentation {
    k: Arc<FiniteField>,
    matrix: Matrix<ZSeries>,
    zeta: PiSeries,
    ram_index: usize,
}

impl LocalShtukaPresentation {
    pub fn new(
        k: &Arc<FiniteField>,
        matrix: Matrix<ZSeries>,
        zeta: PiSeries,
    ) -> ShtukaResult<Self> {
        assert!(matrix.is_square() && matrix.rows() >= 1);
        let ram_index = zeta.order().ok_or_else(|| {
            ShtukaError::PrecisionExhausted(
                "zeta vanishes to its precision; ramification index unknown".into(),
            )
        })?;
        if zeta.coeff(ram_index).try_inv().is_none() {
            return Err(ShtukaError::PrecisionExhausted(
                "zeta is not a unit multiple of a power of pi".into(),
            ));
        }
        Ok(LocalShtukaPresentation {
            k: Arc::clone(k),
            matrix,
            zeta,
            ram_index,
        })
    }

    pub fn residue_field(&self) -> &Arc<FiniteField> {
        &self.k
    }

    pub fn matrix(&self) -> &Matrix<ZSeries> {
        &self.matrix
    }

    pub fn zeta(&self) -> &PiSeries {
        &self.zeta
    }

    /// `e` with `zeta = unit * pi^e`.
    pub fn ram_index(&self) -> usize {
        self.ram_index
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// Order of the residue field.
    pub fn q_hat(&self) -> u64 {
        self.k.order()
    }

    /// The matrix of the torsion quotient mod `z`: a semilinear matrix over
    /// `k[[pi]]`.
    pub fn torsion_mod_z(&self) -> Matrix<PiSeries> {
        self.matrix.map(|entry| entry.coeff(0))
    }
}

impl fmt::Debug for LocalShtukaPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LocalShtuka(rank {}, over F_{}, e = {})",
            self.rank(),
            self.k.order(),
            self.ram_index
        )
    }
}

fn nested_zero(k: &Arc<FiniteField>, prec_pi: usize, prec_z: usize) -> ZSeries {
    TruncatedSeries::zero(
        Var::Z,
        &TruncatedSeries::zero(Var::Pi, &FFElem::zero(k), prec_pi),
        prec_z,
    )
}

/// Evaluate a rational function of `th` at a series point; errors when the
/// denominator is not a unit there (the function has a pole at the place).
fn eval_ratfunc_at_series(
    c: &RatFunc,
    w: &PiSeries,
    k: &Arc<FiniteField>,
) -> ShtukaResult<PiSeries> {
    let prec = w.precision();
    let embed = |a: &FFElem| {
        TruncatedSeries::constant(
            Var::Pi,
            FFElem::embed(k, a).expect("base field embeds into the residue field"),
            prec,
        )
    };
    let num = c.num().eval_map(w, embed);
    let den = c.den().eval_map(w, embed);
    let den_inv = den.try_inv().ok_or_else(|| {
        ShtukaError::NotGoodAtU("an entry denominator vanishes at the place".into())
    })?;
    Ok(num.mul(&den_inv))
}

/// Build the local shtuka of a presentation with good reduction at `place`.
///
/// The coordinate is the one in which `zeta = pi`: `w` is the series root of
/// `g(W) = pi` above the distinguished residue root, the Frobenius word
/// `N = tau sigma(tau) ... sigma^{f-1}(tau)` is expanded symbolically over
/// `K[t]`, and the entries are mapped by `t -> w(z)`, `th -> w(pi)`.
pub fn associated_local_shtuka(
    motive: &MotivePresentation,
    place: &Place,
    prec_pi: usize,
    prec_z: usize,
) -> ShtukaResult<LocalShtukaPresentation> {
    assert!(prec_pi >= 2 && prec_z >= 2, "precisions must be at least 2");
    let red = reduce_at(motive, place)?;
    if !red.is_good() {
        return Err(ShtukaError::NotGoodAtU(format!(
            "local profile {:?} differs from generic {:?}",
            red.local_profile(),
            red.generic_profile()
        )));
    }
    let k = place.residue_field();
    let q = place.base_field().order();
    let f = place.degree();

    // w with g(w) = pi, w = residue root mod pi; lifted once at the larger
    // precision and reused for both substitutions
    let lift_prec = prec_pi.max(prec_z);
    let target = TruncatedSeries::variable(Var::Pi, &FFElem::zero(k), lift_prec);
    let roots = lift_root_orbit(place.generator(), k, place.residue_root(), &target)?;
    let w = &roots[0];

    // th -> w(pi) as a z-constant
    let w_pi = w.truncate(prec_pi);
    // t -> w(z): the same coefficient sequence read as a polynomial in z
    // with k-constant coefficients
    let w_z = TruncatedSeries::new(
        Var::Z,
        w.coeffs()[..prec_z]
            .iter()
            .map(|c| TruncatedSeries::constant(Var::Pi, c.clone(), prec_pi))
            .collect(),
        prec_z,
    );

    // Frobenius word tau sigma(tau) ... sigma^{f-1}(tau), with every factor
    // substituted before multiplying: the coefficients are fixed by the
    // base Frobenius, so sigma^i(c) evaluates at w to c(w^{q^i}), and the
    // factor products happen in the truncated ring instead of K[t] (where
    // the twisted theta-degrees grow like q^f)
    let r = motive.rank();
    let zero = nested_zero(k, prec_pi, prec_z);
    let mut theta_image = w_pi.clone();
    let mut matrix: Option<Matrix<TruncatedSeries<TruncatedSeries<FFElem>>>> = None;
    for _ in 0..f {
        let mut factor = Matrix::from_fn(r, r, |_, _| zero.clone());
        for i in 0..r {
            for j in 0..r {
                let entry = motive.tau().at(i, j);
                // Horner in the nested ring over the coefficients of t^m
                let mut acc = zero.clone();
                for c in entry.coeffs().iter().rev() {
                    let c_hat = eval_ratfunc_at_series(c, &theta_image, k)?;
                    let c_nested = TruncatedSeries::constant(Var::Z, c_hat, prec_z);
                    acc = acc.mul(&w_z).add(&c_nested);
                }
                factor.set(i, j, acc);
            }
        }
        matrix = Some(match matrix {
            Some(m) => m.mul(&factor),
            None => factor,
        });
        let base = theta_image.clone();
        for _ in 1..q {
            theta_image = theta_image.mul(&base);
        }
    }
    let matrix = matrix.expect("presentations have rank at least one");

    let zeta = TruncatedSeries::variable(Var::Pi, &FFElem::zero(k), prec_pi);
    LocalShtukaPresentation::new(k, matrix, zeta)
}

/// `dim = ord_{z = zeta} det` of the presentation.  After substituting
/// `z = y + zeta` every truncation error lies in `(pi)`, so scanning for the
/// first `y`-coefficient that is a *unit* of `k[[pi]]` is exact.  Errors
/// with `PrecisionExhausted` when no coefficient below the `z`-precision is
/// a unit.
pub fn shtuka_dimension(sh: &LocalShtukaPresentation) -> ShtukaResult<usize> {
    let det = sh.matrix.det();
    let prec_z = det.precision();
    let shift = TruncatedSeries::new(
        Var::Eps,
        vec![sh.zeta.clone(), sh.zeta.one_like()],
        prec_z,
    );
    let shifted = det.substitute(&shift);
    shifted.unit_order().ok_or_else(|| {
        ShtukaError::PrecisionExhausted(format!(
            "det has no unit coefficient below z-precision {prec_z}; \
             the order at zeta is out of reach"
        ))
    })
}

/// One cycle of a permutation-supported torsion matrix: visiting order of
/// the column indices, the pi-orders of the entries along the cycle, and the
/// twisted unit product.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicBlock {
    pub columns: Vec<usize>,
    pub digits: Vec<usize>,
    /// `prod u_i^{q_hat^{r-1-i}}` over the constant terms of the entry units
    /// along the cycle.  Invariant under rescaling the basis by units of
    /// `k[[pi]]` (the scaling contributions telescope to a
    /// `(q_hat^r - 1)`-th power of a constant, which is trivial in `k^x`).
    pub lambda: FFElem,
}

/// Decompose a semilinear torsion matrix with permutation support into
/// cyclic blocks.  Each column must have exactly one non-zero entry (to
/// carried precision) and the non-zero pattern must be a permutation.
/// `digit_bound`, when given, caps the admissible pi-order of every entry.
pub fn permutation_normal_form(
    m: &Matrix<PiSeries>,
    digit_bound: Option<usize>,
) -> ShtukaResult<Vec<CyclicBlock>> {
    assert!(m.is_square() && m.rows() >= 1);
    let r = m.rows();
    let q_hat = m.sample().coeff(0).field().order();

    // column -> (row, order, unit constant)
    let mut image = Vec::with_capacity(r);
    for j in 0..r {
        let mut found: Option<(usize, usize, FFElem)> = None;
        for i in 0..r {
            let entry = m.at(i, j);
            if let Some(d) = entry.order() {
                if found.is_some() {
                    return Err(ShtukaError::NotCyclicShape(format!(
                        "column {j} has more than one non-zero entry"
                    )));
                }
                if let Some(bound) = digit_bound {
                    if d > bound {
                        return Err(ShtukaError::HeightViolation { digit: d, bound });
                    }
                }
                found = Some((i, d, entry.coeff(d)));
            }
        }
        match found {
            Some(t) => image.push(t),
            None => {
                return Err(ShtukaError::NotCyclicShape(format!(
                    "column {j} vanishes to carried precision"
                )))
            }
        }
    }
    let mut seen_rows = vec![false; r];
    for &(i, _, _) in &image {
        if seen_rows[i] {
            return Err(ShtukaError::NotCyclicShape(format!(
                "row {i} receives two columns"
            )));
        }
        seen_rows[i] = true;
    }

    // cycle decomposition, each cycle starting at its smallest column
    let mut visited = vec![false; r];
    let mut blocks = Vec::new();
    for start in 0..r {
        if visited[start] {
            continue;
        }
        let mut columns = Vec::new();
        let mut digits = Vec::new();
        let mut units = Vec::new();
        let mut j = start;
        loop {
            visited[j] = true;
            columns.push(j);
            let (next, d, u) = image[j].clone();
            digits.push(d);
            units.push(u);
            j = next;
            if j == start {
                break;
            }
            if visited[j] {
                return Err(ShtukaError::NotCyclicShape(
                    "support pattern is not a permutation".into(),
                ));
            }
        }
        // twisted product prod u_s^{q_hat^{len-1-s}}
        let len = columns.len();
        let mut lambda = units[0].one_like();
        for (s, u) in units.iter().enumerate() {
            let mut exp = 1u64;
            for _ in 0..(len - 1 - s) {
                exp = exp
                    .checked_mul(q_hat)
                    .ok_or_else(|| ShtukaError::ExponentOutOfRange("q_hat^s overflows".into()))?;
            }
            lambda = lambda.mul(&u.pow(exp));
        }
        blocks.push(CyclicBlock {
            columns,
            digits,
            lambda,
        });
    }
    Ok(blocks)
}

/// Tame inertia weights of the level-`level` fundamental character raised to
/// `exponent`: the base-`q_hat` digits of `exponent mod (q_hat^level - 1)`,
/// most significant first.  The boundary exponent `q_hat^level - 1` is the
/// trivial character and correctly yields all-zero weights.
pub fn tame_weights_of_character(
    exponent: u128,
    level: usize,
    q_hat: u64,
) -> ShtukaResult<Vec<u64>> {
    if level == 0 || q_hat < 2 {
        return Err(ShtukaError::ExponentOutOfRange(format!(
            "level {level} and residue order {q_hat} do not define a character"
        )));
    }
    let mut modulus: u128 = 1;
    for _ in 0..level {
        modulus = modulus
            .checked_mul(q_hat as u128)
            .ok_or_else(|| ShtukaError::ExponentOutOfRange("q_hat^level overflows".into()))?;
    }
    modulus -= 1;
    let mut n = exponent % modulus;
    // digits, most significant first
    let mut weights = vec![0u64; level];
    for s in (0..level).rev() {
        weights[s] = (n % q_hat as u128) as u64;
        n /= q_hat as u128;
    }
    Ok(weights)
}

/// Tame inertia weights of a decomposed torsion matrix: concatenation over
/// the cyclic blocks of the digit weights of their characters, ascending.
pub fn tame_weights_of_normal_form(
    blocks: &[CyclicBlock],
    q_hat: u64,
) -> ShtukaResult<Vec<u64>> {
    let mut weights = Vec::new();
    for b in blocks {
        let level = b.digits.len();
        let mut modulus: u128 = 1;
        for _ in 0..level {
            modulus = modulus
                .checked_mul(q_hat as u128)
                .ok_or_else(|| ShtukaError::ExponentOutOfRange("q_hat^level overflows".into()))?;
        }
        modulus -= 1;
        let mut n: u128 = 0;
        for &d in &b.digits {
            n = (n * q_hat as u128 + d as u128) % modulus;
        }
        weights.extend(tame_weights_of_character(n, level, q_hat)?);
    }
    weights.sort_unstable();
    Ok(weights)
}

/// Report of the tame-inertia sum rule `sum(weights) = e * dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct TameInertiaReport {
    pub ram_index: usize,
    pub dimension: usize,
    pub weights: Vec<u64>,
    pub sum_matches: bool,
}

/// Run the full tame-inertia pipeline under the strict guard
/// `e * h < q_hat - 1` (so no digit can wrap and the sum rule is exact).
/// Errors with `GuardViolated` at or beyond the boundary — at
/// `e * h = q_hat - 1` the all-boundary digit vector already collapses to
/// the trivial character and the sum rule genuinely fails.
pub fn ti_sum_check(sh: &LocalShtukaPresentation, h: usize) -> ShtukaResult<TameInertiaReport> {
    let q_hat = sh.q_hat();
    let e = sh.ram_index();
    if (e * h) as u64 >= q_hat - 1 {
        return Err(ShtukaError::GuardViolated(format!(
            "e * h = {} must be strictly below q_hat - 1 = {}",
            e * h,
            q_hat - 1
        )));
    }
    let dimension = shtuka_dimension(sh)?;
    let torsion = sh.torsion_mod_z();
    let blocks = permutation_normal_form(&torsion, Some(e * h))?;
    let weights = tame_weights_of_normal_form(&blocks, q_hat)?;
    let sum: u64 = weights.iter().sum();
    Ok(TameInertiaReport {
        ram_index: e,
        dimension,
        weights,
        sum_matches: sum == (e * dimension) as u64,
    })
}
