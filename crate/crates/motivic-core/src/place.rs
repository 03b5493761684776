//! Places of the coefficient rings, reduction, and good reduction.
//!
//! A [`Place`] is a monic irreducible polynomial over `F_q` together with the
//! residue field it cuts out and the class of the variable in it.  Places in
//! `th` are the finite places of `K = F_q(theta)` (where presentations are
//! reduced); places in `t` are the primes of the coefficient ring `A = F_q[t]`
//! (where characteristic polynomial congruences are read).
//!
//! [`ReducedMotive`] is the entrywise reduction of a presentation at a place
//! in `th`; it is *good* when its determinant is still a unit multiple of
//! `(t - theta_bar)^d` and the local divisor profile matches the generic one.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{FFElem, FiniteField};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::smith::divisor_valuations_minors;
use crate::algebra::{AlgebraError, Ring, Var};
use crate::motive::MotivePresentation;

#[derive(Debug, Clone, PartialEq)]
pub enum PlaceError {
    NotMonic,
    NotIrreducible(String),
    /// Entries of the tau matrix whose denominators vanish at the place.
    NotIntegralAtPlace(Vec<(usize, usize)>),
    BadReduction(String),
    BlockNotGood(usize),
    ShapeViolation(String),
    FieldMismatch(String),
}

impl fmt::Display for PlaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceError::NotMonic => write!(f, "place generator must be monic"),
            PlaceError::NotIrreducible(msg) => write!(f, "place generator is reducible: {msg}"),
            PlaceError::NotIntegralAtPlace(entries) => {
                write!(f, "tau entries not integral at the place: {entries:?}")
            }
            PlaceError::BadReduction(msg) => write!(f, "reduction failed: {msg}"),
            PlaceError::BlockNotGood(k) => {
                write!(f, "diagonal block {k} does not have good reduction")
            }
            PlaceError::ShapeViolation(msg) => write!(f, "presentation shape violation: {msg}"),
            PlaceError::FieldMismatch(msg) => write!(f, "field mismatch: {msg}"),
        }
    }
}

impl std::error::Error for PlaceError {}

pub type PlaceResult<T> = Result<T, PlaceError>;

/// A finite place: a monic irreducible generator over `F_q`, its residue
/// field, and the image of the variable there.
#[derive(Clone)]
pub struct Place {
    gen: Poly<FFElem>,
    residue: Arc<FiniteField>,
    root: FFElem,
}

impl Place {
    /// Build the place cut out by a monic irreducible polynomial over `F_q`.
    /// For degree one the residue field is `F_q` itself; otherwise it is the
    /// extension `F_q[x]/(gen)` with the variable mapped to `x`.
    pub fn from_prime(gen: Poly<FFElem>) -> PlaceResult<Self> {
        let deg = gen
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| PlaceError::NotIrreducible("generator must be non-constant".into()))?;
        if !gen.is_monic() {
            return Err(PlaceError::NotMonic);
        }
        let base = Arc::clone(gen.coeffs()[0].field());
        if deg == 1 {
            // root of x + c_0 is -c_0
            let root = gen.coeff(0).neg();
            return Ok(Place {
                gen,
                residue: base,
                root,
            });
        }
        let residue = FiniteField::extension(&base, gen.coeffs().to_vec()).map_err(|e| match e {
            AlgebraError::NotIrreducible(msg) => PlaceError::NotIrreducible(msg),
            other => PlaceError::BadReduction(other.to_string()),
        })?;
        let root = FFElem::generator(&residue)
            .expect("a proper extension has a generator");
        Ok(Place {
            gen,
            residue,
            root,
        })
    }

    pub fn generator(&self) -> &Poly<FFElem> {
        &self.gen
    }

    /// Variable of the generator: `th` for places of `K`, `t` for primes of
    /// the coefficient ring.
    pub fn var(&self) -> Var {
        self.gen.var()
    }

    pub fn degree(&self) -> usize {
        self.gen.degree().expect("generator is non-constant")
    }

    pub fn base_field(&self) -> &Arc<FiniteField> {
        self.gen.coeffs()[0].field()
    }

    pub fn residue_field(&self) -> &Arc<FiniteField> {
        &self.residue
    }

    /// Order of the residue field.
    pub fn residue_order(&self) -> u64 {
        self.residue.order()
    }

    /// Image of the variable in the residue field.
    pub fn residue_root(&self) -> &FFElem {
        &self.root
    }

    /// Reduce a rational function at this place.  Errors when the
    /// denominator vanishes there.
    pub fn reduce_scalar(&self, c: &RatFunc) -> PlaceResult<FFElem> {
        if c.var() != self.var() {
            return Err(PlaceError::FieldMismatch(format!(
                "cannot reduce a function of `{}` at a place in `{}`",
                c.var(),
                self.var()
            )));
        }
        c.eval_map(&self.root, |a| {
            FFElem::embed(&self.residue, a).expect("base field embeds into the residue field")
        })
        .map_err(|_| PlaceError::BadReduction("denominator vanishes at the place".into()))
    }

    /// Reduce a polynomial with rational-function coefficients entrywise.
    pub fn reduce_poly(&self, p: &Poly<RatFunc>) -> PlaceResult<Poly<FFElem>> {
        let mut coeffs = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            coeffs.push(self.reduce_scalar(c)?);
        }
        Ok(Poly::new(p.var(), coeffs))
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({}; residue F_{})", self.gen, self.residue.order())
    }
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

/// A presentation reduced at a place of `K`, together with the judgment data
/// of the reduction.
#[derive(Clone)]
pub struct ReducedMotive {
    place: Place,
    tau_bar: Matrix<Poly<FFElem>>,
    rank: usize,
    /// Divisor profile of the reduction at `t = theta_bar`, if the reduced
    /// determinant is non-zero.
    local_profile: Option<Vec<usize>>,
    /// Profile of the generic fibre, carried over for comparison.
    generic_profile: Vec<usize>,
}

impl ReducedMotive {
    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn tau_bar(&self) -> &Matrix<Poly<FFElem>> {
        &self.tau_bar
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn local_profile(&self) -> Option<&[usize]> {
        self.local_profile.as_deref()
    }

    pub fn generic_profile(&self) -> &[usize] {
        &self.generic_profile
    }

    /// Good reduction: the reduced determinant is a unit multiple of
    /// `(t - theta_bar)^d` and the local divisor profile equals the generic
    /// one.
    pub fn is_good(&self) -> bool {
        let profile = match &self.local_profile {
            Some(p) => p,
            None => return false,
        };
        if *profile != self.generic_profile {
            return false;
        }
        // unit-times-power determinant shape
        let det = self.tau_bar.det();
        let d: usize = profile.iter().sum();
        let root = self.place.residue_root().clone();
        let lin = Poly::new(Var::T, vec![root.neg(), root.one_like()]);
        let mut residual = det;
        for _ in 0..d {
            residual = match residual.div_exact(&lin) {
                Ok(r) => r,
                Err(_) => return false,
            };
        }
        residual.degree() == Some(0)
    }
}

impl fmt::Debug for ReducedMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ReducedMotive(rank {}, at {:?}, profile {:?})",
            self.rank, self.place, self.local_profile
        )
    }
}

/// Reduce a presentation at a place of `K` in `th`.  Collects every entry
/// whose denominator vanishes rather than stopping at the first.
pub fn reduce_at(motive: &MotivePresentation, place: &Place) -> PlaceResult<ReducedMotive> {
    if place.var() != Var::Theta {
        return Err(PlaceError::FieldMismatch(
            "presentations are reduced at places in `th`".into(),
        ));
    }
    if place.base_field() != motive.field() {
        return Err(PlaceError::FieldMismatch(format!(
            "place over F_{}, presentation over F_{}",
            place.base_field().order(),
            motive.field().order()
        )));
    }
    let r = motive.rank();
    let mut bad = Vec::new();
    let zero = Poly::zero(Var::T, &FFElem::zero(place.residue_field()));
    let mut tau_bar = Matrix::from_fn(r, r, |_, _| zero.clone());
    for i in 0..r {
        for j in 0..r {
            match place.reduce_poly(motive.tau().at(i, j)) {
                Ok(p) => tau_bar.set(i, j, p),
                Err(PlaceError::BadReduction(_)) => bad.push((i, j)),
                Err(other) => return Err(other),
            }
        }
    }
    if !bad.is_empty() {
        return Err(PlaceError::NotIntegralAtPlace(bad));
    }

    let det = tau_bar.det();
    let local_profile = if det.is_zero() {
        None
    } else {
        Some(
            divisor_valuations_minors(&tau_bar, place.residue_root())
                .expect("non-singular reduction has divisor valuations"),
        )
    };

    Ok(ReducedMotive {
        place: place.clone(),
        tau_bar,
        rank: r,
        local_profile,
        generic_profile: motive.hodge_pink_weights().to_vec(),
    })
}

/// A block-upper-triangular presentation whose diagonal blocks are expected
/// to have good reduction at the places of interest.
#[derive(Clone)]
pub struct SemiStablePresentation {
    motive: MotivePresentation,
    block_sizes: Vec<usize>,
}

impl SemiStablePresentation {
    /// Check the block sizes against the rank and the vanishing of every
    /// entry below the block diagonal.
    pub fn new(motive: MotivePresentation, block_sizes: Vec<usize>) -> PlaceResult<Self> {
        let total: usize = block_sizes.iter().sum();
        if total != motive.rank() || block_sizes.iter().any(|&s| s == 0) {
            return Err(PlaceError::ShapeViolation(format!(
                "block sizes {block_sizes:?} do not partition rank {}",
                motive.rank()
            )));
        }
        let starts: Vec<usize> = block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect();
        for (bi, (&start_i, &size_i)) in starts.iter().zip(&block_sizes).enumerate() {
            for (bj, (&start_j, &size_j)) in starts.iter().zip(&block_sizes).enumerate() {
                if bj >= bi {
                    continue;
                }
                for i in start_i..start_i + size_i {
                    for j in start_j..start_j + size_j {
                        if !motive.tau().at(i, j).is_zero() {
                            return Err(PlaceError::ShapeViolation(format!(
                                "entry ({i}, {j}) below the block diagonal is non-zero"
                            )));
                        }
                    }
                }
            }
        }
        Ok(SemiStablePresentation {
            motive,
            block_sizes,
        })
    }

    pub fn motive(&self) -> &MotivePresentation {
        &self.motive
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn block_count(&self) -> usize {
        self.block_sizes.len()
    }

    /// The `k`-th diagonal block as a matrix.
    pub fn diagonal_block(&self, k: usize) -> Matrix<Poly<RatFunc>> {
        let start: usize = self.block_sizes[..k].iter().sum();
        let size = self.block_sizes[k];
        let idx: Vec<usize> = (start..start + size).collect();
        self.motive.tau().submatrix(&idx, &idx)
    }

    /// Reduce every diagonal block at the place and check it is good.
    /// Returns the reduced blocks; errors with the index of the first bad
    /// block.
    pub fn validate_at(&self, place: &Place) -> PlaceResult<Vec<ReducedMotive>> {
        let mut reduced = Vec::with_capacity(self.block_count());
        for k in 0..self.block_count() {
            let block = self.diagonal_block(k);
            let sub = MotivePresentation::new(self.motive.field(), block, None)
                .map_err(|_| PlaceError::BlockNotGood(k))?;
            let red = match reduce_at(&sub, place) {
                Ok(r) => r,
                Err(PlaceError::NotIntegralAtPlace(_)) => {
                    return Err(PlaceError::BlockNotGood(k))
                }
                Err(other) => return Err(other),
            };
            if !red.is_good() {
                return Err(PlaceError::BlockNotGood(k));
            }
            reduced.push(red);
        }
        // the off-diagonal rectangles must also be integral at the place
        for i in 0..self.motive.rank() {
            for j in 0..self.motive.rank() {
                if place.reduce_poly(self.motive.tau().at(i, j)).is_err() {
                    return Err(PlaceError::NotIntegralAtPlace(vec![(i, j)]));
                }
            }
        }
        Ok(reduced)
    }
}
