//! Rational functions `num/den` over a finite field, kept reduced with a
//! monic denominator so equality is plain structural equality.
//!
//! These are the scalars of `K = F_q(theta)`; polynomials in `t` over `K`
//! are `Poly<RatFunc>` values.

use std::fmt;

use super::field::FFElem;
use super::poly::Poly;
use super::{AlgebraError, AlgebraResult, Ring, Var};

#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Poly<FFElem>,
    den: Poly<FFElem>,
}

impl RatFunc {
    /// Build `num/den`, reducing by the gcd and scaling the denominator
    /// monic.  Panics on a zero denominator (that is a construction bug, not
    /// a data condition).
    pub fn new(num: Poly<FFElem>, den: Poly<FFElem>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.var(), den.var(), "variable mismatch");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(num: Poly<FFElem>) -> Self {
        let den = num.one_like();
        RatFunc { num, den }
    }

    pub fn zero_of(var: Var, sample: &FFElem) -> Self {
        RatFunc {
            num: Poly::zero(var, sample),
            den: Poly::one(var, sample),
        }
    }

    pub fn one_of(var: Var, sample: &FFElem) -> Self {
        RatFunc {
            num: Poly::one(var, sample),
            den: Poly::one(var, sample),
        }
    }

    pub fn constant(var: Var, c: FFElem) -> Self {
        RatFunc {
            den: Poly::one(var, &c),
            num: Poly::constant(var, c),
        }
    }

    /// The variable itself as a rational function.
    pub fn variable(var: Var, sample: &FFElem) -> Self {
        RatFunc {
            num: Poly::variable(var, sample),
            den: Poly::one(var, sample),
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = self.den.one_like();
            return;
        }
        let g = self.num.gcd(&self.den).expect("field coefficients");
        if let Some(d) = g.degree() {
            if d > 0 {
                self.num = self.num.div_exact(&g).expect("gcd divides");
                self.den = self.den.div_exact(&g).expect("gcd divides");
            }
        }
        let lead_inv = self
            .den
            .leading()
            .try_inv()
            .expect("nonzero field element inverts");
        self.num = self.num.scale(&lead_inv);
        self.den = self.den.scale(&lead_inv);
    }

    pub fn num(&self) -> &Poly<FFElem> {
        &self.num
    }

    pub fn den(&self) -> &Poly<FFElem> {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator if the denominator is one.
    pub fn as_poly(&self) -> AlgebraResult<Poly<FFElem>> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(AlgebraError::Invalid(format!(
                "{self} is not a polynomial"
            )))
        }
    }

    /// Evaluate at a point of a field containing the coefficient field,
    /// mapping coefficients through `embed`.  Errors when the denominator
    /// vanishes at the point.
    pub fn eval_map<F: Fn(&FFElem) -> FFElem>(
        &self,
        x: &FFElem,
        embed: F,
    ) -> AlgebraResult<FFElem> {
        let dv = self.den.eval_map(x, &embed);
        let dv_inv = dv.try_inv().ok_or_else(|| {
            AlgebraError::Invalid("denominator vanishes at the evaluation point".into())
        })?;
        Ok(self.num.eval_map(x, &embed).mul(&dv_inv))
    }

    /// The `q^i`-power of the element.  Over `F_q(theta)` with `q` the full
    /// constant field size this is the twist `theta -> theta^{q^i}`:
    /// coefficients in `F_q` are fixed, exponents are scaled.
    pub fn power_frobenius(&self, q: u64, i: u32) -> Self {
        RatFunc::new(
            poly_power_frobenius(&self.num, q, i),
            poly_power_frobenius(&self.den, q, i),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

/// `f^(q^i)` for `f` over a field with `q^m` elements: coefficients are
/// raised to the `q^i` and exponents scaled by `q^i` (the freshman's dream
/// in characteristic `p`).
pub fn poly_power_frobenius(f: &Poly<FFElem>, q: u64, i: u32) -> Poly<FFElem> {
    if f.is_zero() || i == 0 {
        return f.clone();
    }
    let mut e = 1u64;
    for _ in 0..i {
        e = e.checked_mul(q).expect("frobenius exponent overflow");
    }
    let zero = f.coeffs()[0].zero_like();
    let deg = f.degree().expect("nonzero");
    let mut coeffs = vec![zero; deg as usize * e as usize + 1];
    for (k, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            coeffs[k * e as usize] = c.frobenius(q, i);
        }
    }
    Poly::new(f.var(), coeffs)
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc {
            num: self.num.zero_like(),
            den: self.num.one_like(),
        }
    }

    fn one_like(&self) -> Self {
        RatFunc {
            num: self.num.one_like(),
            den: self.num.one_like(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
