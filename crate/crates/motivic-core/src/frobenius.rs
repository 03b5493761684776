//! Frobenius characteristic polynomials and Weil weights.
//!
//! For a presentation with good reduction at a place `v` of `K` of degree
//! `d_v`, the Frobenius characteristic polynomial `P(X)` lies in `F_q[t][X]`
//! and is computed here by two genuinely independent routes:
//!
//! * **iterate** — multiply out `N = tau_bar * sigma(tau_bar) * ... *
//!   sigma^{d_v - 1}(tau_bar)` over the residue field and take
//!   `det(X I - N)`, then descend the coefficients to `F_q[t]`;
//! * **restriction** — write the reduction as a module over `F_q[t]` of rank
//!   `r * d_v` on the basis `theta_bar^l e_i`, form the matrix `B` of the
//!   semilinear operator there (it is `F_q[t]`-linear on the restriction),
//!   and read `P` off `det(I - x B)`, whose only surviving powers of `x` are
//!   multiples of `d_v`.
//!
//! Both routes must agree coefficient by coefficient; `Both` runs them and
//! errors loudly on any discrepancy.  Weil weights are the Newton-polygon
//! slopes of `P` over the degree valuation, divided by `d_v`.

use std::fmt;

use num_rational::Ratio;

use crate::algebra::field::FFElem;
use crate::algebra::matrix::Matrix;
use crate::algebra::newton::{coeff_degrees, first_support_index, newton_slopes};
use crate::algebra::poly::Poly;
use crate::algebra::{AlgebraError, Ring, Var};
use crate::place::{Place, PlaceError, ReducedMotive, SemiStablePresentation};

#[derive(Debug, Clone, PartialEq)]
pub enum FrobeniusError {
    /// The reduction at the place is not good, so no characteristic
    /// polynomial with coefficients in `F_q[t]` exists.
    NotGoodReduction(String),
    /// A coefficient failed to descend from the residue field to `F_q`
    /// (cannot happen for a good reduction; kept as a loud invariant).
    CoefficientNotInBase(String),
    /// The restriction determinant had a power of `x` outside `d_v * Z`.
    UnexpectedPower(String),
    /// The polynomial has `X = 0` as a root, so weights are undefined.
    ZeroRoot,
    /// The two routes disagreed — an internal invariant violation.
    RouteMismatch(String),
    NotMonic,
    Place(PlaceError),
    Algebra(AlgebraError),
}

impl fmt::Display for FrobeniusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrobeniusError::NotGoodReduction(msg) => {
                write!(f, "reduction at the place is not good: {msg}")
            }
            FrobeniusError::CoefficientNotInBase(msg) => {
                write!(f, "coefficient does not descend to the base field: {msg}")
            }
            FrobeniusError::UnexpectedPower(msg) => {
                write!(f, "restriction determinant malformed: {msg}")
            }
            FrobeniusError::ZeroRoot => write!(f, "characteristic polynomial has a zero root"),
            FrobeniusError::RouteMismatch(msg) => {
                write!(f, "independent charpoly routes disagree: {msg}")
            }
            FrobeniusError::NotMonic => write!(f, "polynomial must be monic"),
            FrobeniusError::Place(e) => write!(f, "{e}"),
            FrobeniusError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FrobeniusError {}

impl From<PlaceError> for FrobeniusError {
    fn from(e: PlaceError) -> Self {
        FrobeniusError::Place(e)
    }
}

impl From<AlgebraError> for FrobeniusError {
    fn from(e: AlgebraError) -> Self {
        FrobeniusError::Algebra(e)
    }
}

pub type FrobResult<T> = Result<T, FrobeniusError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharPolyMethod {
    Iterate,
    Restriction,
    /// Run both independent routes and require exact agreement.
    Both,
}

/// A Frobenius characteristic polynomial at a place: monic in `X` with
/// coefficients in `F_q[t]`.
#[derive(Clone, PartialEq)]
pub struct FrobCharPoly {
    place: Place,
    poly: Poly<Poly<FFElem>>,
}

impl FrobCharPoly {
    /// Wrap an externally obtained polynomial (e.g. a parsed target value).
    pub fn from_parts(place: Place, poly: Poly<Poly<FFElem>>) -> FrobResult<Self> {
        if !poly.leading().is_one() {
            return Err(FrobeniusError::NotMonic);
        }
        Ok(FrobCharPoly { place, poly })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn poly(&self) -> &Poly<Poly<FFElem>> {
        &self.poly
    }

    /// Degree in `X` (the rank of the underlying presentation).
    pub fn rank(&self) -> usize {
        self.poly.degree().expect("charpoly is monic, hence non-zero")
    }

    /// Weil weights: Newton slopes over the degree valuation divided by the
    /// place degree, ascending with multiplicity.
    pub fn weil_weights(&self) -> FrobResult<Vec<Ratio<i64>>> {
        weil_weights_of(&self.poly, self.place.degree())
    }

    /// Degrees in `t` of the coefficients, indexed by the power of `X`.
    pub fn coefficient_degrees(&self) -> Vec<Option<i64>> {
        coeff_degrees(&self.poly)
    }
}

impl fmt::Debug for FrobCharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrobCharPoly(at {:?}: {:?})", self.place, self.poly)
    }
}

/// Weil weights of a monic polynomial in `X` over `F_q[t]` read at a place
/// of the given degree.
pub fn weil_weights_of(
    poly: &Poly<Poly<FFElem>>,
    place_degree: usize,
) -> FrobResult<Vec<Ratio<i64>>> {
    let degrees = coeff_degrees(poly);
    match first_support_index(&degrees) {
        Some(0) => {}
        _ => return Err(FrobeniusError::ZeroRoot),
    }
    let slopes = newton_slopes(&degrees)?;
    let dv = Ratio::from_integer(place_degree as i64);
    Ok(slopes.into_iter().map(|s| s / dv).collect())
}

/// `det(X I - N)` over the coefficient ring of `N`'s entries.
fn char_matrix_det(n: &Matrix<Poly<FFElem>>) -> Poly<Poly<FFElem>> {
    let r = n.rows();
    let t_sample = n.sample();
    let m: Matrix<Poly<Poly<FFElem>>> = Matrix::from_fn(r, r, |i, j| {
        if i == j {
            Poly::new(Var::X, vec![n.at(i, j).neg(), t_sample.one_like()])
        } else {
            Poly::new(Var::X, vec![n.at(i, j).neg()])
        }
    });
    m.det()
}

fn descend_coefficient(c: &FFElem, place: &Place) -> FrobResult<FFElem> {
    if place.degree() == 1 {
        return Ok(c.clone());
    }
    c.try_to_base().ok_or_else(|| {
        FrobeniusError::CoefficientNotInBase(format!(
            "{c} lies outside F_{}",
            place.base_field().order()
        ))
    })
}

fn require_good(red: &ReducedMotive) -> FrobResult<()> {
    if red.is_good() {
        Ok(())
    } else {
        Err(FrobeniusError::NotGoodReduction(format!(
            "local profile {:?} vs generic {:?}",
            red.local_profile(),
            red.generic_profile()
        )))
    }
}

/// The iterated-Frobenius route: `P = det(X I - tau_bar sigma(tau_bar) ...
/// sigma^{d_v-1}(tau_bar))`, descended to `F_q[t]`.
pub fn charpoly_iterate(red: &ReducedMotive) -> FrobResult<FrobCharPoly> {
    require_good(red)?;
    let place = red.place().clone();
    let q = place.base_field().order();
    let dv = place.degree();

    let mut n = red.tau_bar().clone();
    for i in 1..dv {
        let twisted = red
            .tau_bar()
            .map(|p| p.map_coeffs(|c| c.frobenius(q, i as u32)));
        n = n.mul(&twisted);
    }

    let p_residue = char_matrix_det(&n);
    let mut x_coeffs = Vec::with_capacity(p_residue.coeffs().len());
    for c in p_residue.coeffs() {
        let mut t_coeffs = Vec::with_capacity(c.coeffs().len());
        for a in c.coeffs() {
            t_coeffs.push(descend_coefficient(a, &place)?);
        }
        x_coeffs.push(Poly::new(Var::T, t_coeffs));
    }
    FrobCharPoly::from_parts(place, Poly::new(Var::X, x_coeffs))
}

/// The matrix of the semilinear operator on the restriction of scalars to
/// `F_q[t]`: basis `theta_bar^l e_i` ordered by `i * d_v + l`, entries in
/// `F_q[t]`.
pub fn restriction_matrix(red: &ReducedMotive) -> FrobResult<Matrix<Poly<FFElem>>> {
    require_good(red)?;
    let place = red.place();
    let q = place.base_field().order();
    let dv = place.degree();
    let r = red.rank();
    let root = place.residue_root();

    // coordinates of a residue-field element over F_q
    let coords = |c: &FFElem| -> FrobResult<Vec<FFElem>> {
        if dv == 1 {
            Ok(vec![c.clone()])
        } else {
            Ok(c.base_coordinates()?)
        }
    };

    let n = r * dv;
    let zero_t = Poly::zero(Var::T, &FFElem::zero(place.base_field()));
    let mut b = Matrix::from_fn(n, n, |_, _| zero_t.clone());
    for j in 0..r {
        for k in 0..dv {
            // image of theta_bar^k e_j is sum_i (theta_bar^{kq} T_ij) e_i
            let twist = root.frobenius(q, 1).pow(k as u64);
            for i in 0..r {
                let entry = red.tau_bar().at(i, j).scale(&twist);
                // expand each t-coefficient over the F_q-basis of the residue
                let mut rows: Vec<Vec<FFElem>> = vec![Vec::new(); dv];
                for c in entry.coeffs() {
                    let cs = coords(c)?;
                    for (l, cl) in cs.into_iter().enumerate() {
                        rows[l].push(cl);
                    }
                }
                for (l, t_coeffs) in rows.into_iter().enumerate() {
                    if t_coeffs.is_empty() {
                        continue;
                    }
                    b.set(i * dv + l, j * dv + k, Poly::new(Var::T, t_coeffs));
                }
            }
        }
    }
    Ok(b)
}

/// The restriction-of-scalars route: `det(I - x B)` collapses onto powers
/// `x^{i d_v}`, and `P(X) = sum_i D_{i d_v} X^{r-i}`.
pub fn charpoly_restriction(red: &ReducedMotive) -> FrobResult<FrobCharPoly> {
    let place = red.place().clone();
    let dv = place.degree();
    let r = red.rank();
    let b = restriction_matrix(red)?;
    let n = r * dv;

    let t_zero = Poly::zero(Var::T, &FFElem::zero(place.base_field()));
    let t_one = Poly::one(Var::T, &FFElem::zero(place.base_field()));
    let m: Matrix<Poly<Poly<FFElem>>> = Matrix::from_fn(n, n, |i, j| {
        let c0 = if i == j { t_one.clone() } else { t_zero.clone() };
        Poly::new(Var::X, vec![c0, b.at(i, j).neg()])
    });
    let d = m.det();

    if !d.coeff(0).is_one() {
        return Err(FrobeniusError::UnexpectedPower(
            "determinant of (I - x B) must have constant term 1".into(),
        ));
    }
    for (k, c) in d.coeffs().iter().enumerate() {
        if !c.is_zero() && k % dv != 0 {
            return Err(FrobeniusError::UnexpectedPower(format!(
                "non-zero coefficient at x^{k} with place degree {dv}"
            )));
        }
    }

    let mut x_coeffs = vec![t_zero; r + 1];
    for i in 0..=r {
        x_coeffs[r - i] = d.coeff(i * dv);
    }
    FrobCharPoly::from_parts(place, Poly::new(Var::X, x_coeffs))
}

/// Dispatch on the method; `Both` cross-checks the routes and fails on any
/// disagreement.
pub fn charpoly(red: &ReducedMotive, method: CharPolyMethod) -> FrobResult<FrobCharPoly> {
    match method {
        CharPolyMethod::Iterate => charpoly_iterate(red),
        CharPolyMethod::Restriction => charpoly_restriction(red),
        CharPolyMethod::Both => {
            let a = charpoly_iterate(red)?;
            let b = charpoly_restriction(red)?;
            if a.poly != b.poly {
                return Err(FrobeniusError::RouteMismatch(format!(
                    "iterate gave {:?}, restriction gave {:?}",
                    a.poly, b.poly
                )));
            }
            Ok(a)
        }
    }
}

/// Characteristic polynomial of a block-triangular presentation: the product
/// over the diagonal blocks (each of which must have good reduction).
pub fn charpoly_semistable(
    ss: &SemiStablePresentation,
    place: &Place,
    method: CharPolyMethod,
) -> FrobResult<FrobCharPoly> {
    let blocks = ss.validate_at(place)?;
    let mut product: Option<Poly<Poly<FFElem>>> = None;
    for red in &blocks {
        let cp = charpoly(red, method)?;
        product = Some(match product {
            Some(p) => p.mul(cp.poly()),
            None => cp.poly().clone(),
        });
    }
    let poly = product.expect("a semistable presentation has at least one block");
    FrobCharPoly::from_parts(place.clone(), poly)
}

/// Characteristic polynomial of the `s`-th power of the underlying operator,
/// computed as `det(X I - C^s)` for `C` the companion matrix of `p`.  (The
/// classical Newton-identity transform is unusable here: it divides by
/// integers that vanish in characteristic `p`.)
pub fn companion_power_charpoly(
    p: &Poly<Poly<FFElem>>,
    s: u32,
) -> FrobResult<Poly<Poly<FFElem>>> {
    if !p.leading().is_one() {
        return Err(FrobeniusError::NotMonic);
    }
    let r = p.degree().expect("monic polynomials are non-zero");
    if r == 0 {
        return Err(FrobeniusError::Algebra(AlgebraError::Invalid(
            "constant polynomial has no companion matrix".into(),
        )));
    }
    let t_zero = p.coeffs()[0].zero_like();
    let t_one = p.coeffs()[0].one_like();
    let mut c = Matrix::from_fn(r, r, |_, _| t_zero.clone());
    for i in 1..r {
        c.set(i, i - 1, t_one.clone());
    }
    for i in 0..r {
        c.set(i, r - 1, p.coeff(i).neg());
    }

    // c^s by binary exponentiation
    let mut power = Matrix::identity(r, &t_zero);
    let mut base = c;
    let mut e = s;
    while e > 0 {
        if e & 1 == 1 {
            power = power.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    Ok(char_matrix_det(&power))
}

/// Bound check for coefficients of a charpoly whose weights are claimed to
/// lie in `[0, h]`: the coefficient of `X^{r-i}` must have degree at most
/// `i * d_v * h`.
pub fn coefficient_bound_check(cp: &FrobCharPoly, h: usize) -> bool {
    let r = cp.rank();
    let dv = cp.place().degree();
    for i in 0..=r {
        if let Some(d) = cp.poly().coeff(r - i).degree() {
            if d > i * dv * h {
                return false;
            }
        }
    }
    true
}

/// Outcome of trying to force a coefficient difference to vanish from a
/// congruence plus a degree bound.
#[derive(Debug, Clone, PartialEq)]
pub enum Reconstruction {
    /// The difference is congruent to zero and the degree bound is smaller
    /// than the prime degree: the difference is literally zero.
    Zero,
    /// The difference is not even congruent to zero.
    NonZero,
    /// The congruence holds but the degree bound is too weak to conclude.
    Inconclusive(String),
}

/// Decide whether `c = 0` can be forced from `c = 0 mod prime` together with
/// an a-priori bound `deg c <= degree_bound`.  The difference `c` handed in
/// is exact, so the `Zero` branch also asserts the conclusion it derives.
pub fn reconstruct_zero(
    c: &Poly<FFElem>,
    prime: &Poly<FFElem>,
    degree_bound: usize,
) -> FrobResult<Reconstruction> {
    let d_p = prime
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| FrobeniusError::Algebra(AlgebraError::Invalid(
            "reconstruction prime must be non-constant".into(),
        )))?;
    if let Some(dc) = c.degree() {
        if dc > degree_bound {
            return Ok(Reconstruction::Inconclusive(format!(
                "difference has degree {dc}, above the claimed bound {degree_bound}"
            )));
        }
    }
    let rem = c.rem(prime)?;
    if !rem.is_zero() {
        return Ok(Reconstruction::NonZero);
    }
    if degree_bound < d_p {
        assert!(
            c.is_zero(),
            "a multiple of a degree-{d_p} prime bounded by degree {degree_bound} must vanish"
        );
        Ok(Reconstruction::Zero)
    } else {
        Ok(Reconstruction::Inconclusive(format!(
            "degree bound {degree_bound} is not below the prime degree {d_p}"
        )))
    }
}
