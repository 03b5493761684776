//! Dense univariate polynomials over any [`Ring`].
//!
//! A polynomial carries a [`Var`] tag; binary operations require equal tags.
//! The coefficient vector is never empty and carries no trailing zeros (the
//! zero polynomial is a single zero coefficient), so the coefficient ring is
//! always recoverable from `coeffs[0]`.

use std::fmt;

use super::{AlgebraError, AlgebraResult, Ring, Var};

#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    /// Build from coefficients in ascending degree order; `coeffs` must be
    /// non-empty (use [`Poly::zero`] for the zero polynomial).
    pub fn new(var: Var, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "coefficient vector must be non-empty");
        let mut p = Poly { var, coeffs };
        p.normalize();
        p
    }

    pub fn zero(var: Var, sample: &C) -> Self {
        Poly {
            var,
            coeffs: vec![sample.zero_like()],
        }
    }

    pub fn one(var: Var, sample: &C) -> Self {
        Poly {
            var,
            coeffs: vec![sample.one_like()],
        }
    }

    pub fn constant(var: Var, c: C) -> Self {
        Poly { var, coeffs: vec![c] }
    }

    /// `c * var^k`.
    pub fn monomial(var: Var, c: C, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero(var, &c);
        }
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        Poly { var, coeffs }
    }

    /// The variable itself, `var^1`.
    pub fn variable(var: Var, sample: &C) -> Self {
        Poly::monomial(var, sample.one_like(), 1)
    }

    fn normalize(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `var^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    pub fn leading(&self) -> &C {
        self.coeffs.last().expect("coefficients are non-empty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        Poly::new(self.var, self.coeffs.iter().map(|c| f(c)).collect())
    }

    /// Map the coefficients into another ring, keeping the variable.
    pub fn map_into<T: Ring, F: Fn(&C) -> T>(&self, f: F) -> Poly<T> {
        Poly::new(self.var, self.coeffs.iter().map(|c| f(c)).collect())
    }

    /// Re-tag the variable (the coefficients are untouched).
    pub fn with_var(&self, var: Var) -> Self {
        Poly {
            var,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|a| a.mul(c))
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![self.coeffs[0].zero_like(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            var: self.var,
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Poly::one(self.var, &self.coeffs[0]);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            if e > 1 {
                b = b.mul(&b);
            }
            e >>= 1;
        }
        result
    }

    /// Horner evaluation at a point of the coefficient ring.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = self.coeffs.last().expect("non-empty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at a point of another ring, mapping the
    /// coefficients through `f` on the way.
    pub fn eval_map<T: Ring, F: Fn(&C) -> T>(&self, x: &T, f: F) -> T {
        let mut acc = f(self.coeffs.last().expect("non-empty"));
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x).add(&f(c));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Poly::zero(self.var, &self.coeffs[0]);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            // k * c computed by repeated addition: exact in any characteristic
            let mut acc = c.zero_like();
            for _ in 0..k {
                acc = acc.add(c);
            }
            coeffs.push(acc);
        }
        Poly::new(self.var, coeffs)
    }

    /// Euclidean division; requires the divisor's leading coefficient to be a
    /// unit.
    pub fn divrem(&self, d: &Poly<C>) -> AlgebraResult<(Poly<C>, Poly<C>)> {
        assert_eq!(self.var, d.var, "variable mismatch in division");
        let dd = d.degree().ok_or(AlgebraError::Invalid(
            "division by the zero polynomial".into(),
        ))?;
        let lead_inv = d
            .leading()
            .try_inv()
            .ok_or(AlgebraError::Invalid("divisor leading coefficient is not a unit".into()))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.var, &self.coeffs[0]), self.clone()));
        }
        let mut quot = vec![self.coeffs[0].zero_like(); rem.len() - dd];
        while rem.len() > dd && !(rem.len() == 1 && rem[0].is_zero()) {
            let top = rem.len() - 1;
            let c = rem[top].mul(&lead_inv);
            if !c.is_zero() {
                let shift = top - dd;
                quot[shift] = c.clone();
                for (k, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + k] = rem[shift + k].sub(&c.mul(dc));
                }
            }
            rem.pop();
            if rem.is_empty() {
                rem.push(self.coeffs[0].zero_like());
            }
        }
        Ok((Poly::new(self.var, quot), Poly::new(self.var, rem)))
    }

    pub fn rem(&self, d: &Poly<C>) -> AlgebraResult<Poly<C>> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; errors if the remainder is non-zero.
    pub fn div_exact(&self, d: &Poly<C>) -> AlgebraResult<Poly<C>> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// Synthetic division by `(var - root)`: returns the quotient and the
    /// remainder value `self(root)`.
    pub fn div_linear(&self, root: &C) -> (Poly<C>, C) {
        if self.coeffs.len() == 1 {
            return (Poly::zero(self.var, &self.coeffs[0]), self.coeffs[0].clone());
        }
        let n = self.coeffs.len();
        let mut quot = vec![self.coeffs[0].zero_like(); n - 1];
        let mut acc = self.coeffs[n - 1].clone();
        for k in (0..n - 1).rev() {
            quot[k] = acc.clone();
            acc = acc.mul(root).add(&self.coeffs[k]);
        }
        (Poly::new(self.var, quot), acc)
    }

    /// Multiplicity of `(var - root)` in `self`; `None` for the zero
    /// polynomial (infinite valuation).
    pub fn valuation_at_root(&self, root: &C) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.div_linear(root);
            if r.is_zero() {
                v += 1;
                f = q;
                if f.is_zero() {
                    // can only happen if self was zero, excluded above
                    return Some(v);
                }
            } else {
                return Some(v);
            }
        }
    }

    /// Monic gcd (requires invertible leading coefficients along the way, so
    /// effectively field coefficients).
    pub fn gcd(&self, other: &Poly<C>) -> AlgebraResult<Poly<C>> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Scale to leading coefficient one.
    pub fn monic(&self) -> AlgebraResult<Poly<C>> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let inv = self
            .leading()
            .try_inv()
            .ok_or(AlgebraError::Invalid("leading coefficient is not a unit".into()))?;
        Ok(self.scale(&inv))
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.var, &self.coeffs[0])
    }

    fn one_like(&self) -> Self {
        Poly::one(self.var, &self.coeffs[0])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.var, rhs.var, "variable mismatch in addition");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).unwrap_or(&zero);
            let b = rhs.coeffs.get(k).unwrap_or(&zero);
            coeffs.push(a.add(b));
        }
        Poly::new(self.var, coeffs)
    }

    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.var, rhs.var, "variable mismatch in multiplication");
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.var, coeffs)
    }

    fn try_inv(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0]
                .try_inv()
                .map(|c| Poly::constant(self.var, c))
        } else {
            None
        }
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let wrapped = if cs.contains('+') || cs.contains('-') || cs.contains('*') {
                format!("({cs})")
            } else {
                cs
            };
            let term = match k {
                0 => wrapped,
                1 => {
                    if c.is_one() {
                        self.var.name().to_string()
                    } else {
                        format!("{wrapped}*{}", self.var)
                    }
                }
                _ => {
                    if c.is_one() {
                        format!("{}^{k}", self.var)
                    } else {
                        format!("{wrapped}*{}^{k}", self.var)
                    }
                }
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl<C: Ring> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]{:?}", self.var, self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{FFElem, FiniteField};
    use super::*;

    fn f3poly(coeffs: &[u64]) -> Poly<FFElem> {
        let f3 = FiniteField::prime(3).unwrap();
        Poly::new(
            Var::T,
            coeffs.iter().map(|&c| FFElem::from_u64(&f3, c)).collect(),
        )
    }

    #[test]
    fn arithmetic_and_normalization() {
        let a = f3poly(&[1, 2, 1]); // 1 + 2t + t^2
        let b = f3poly(&[2, 1]); // 2 + t
        let s = a.add(&b);
        assert_eq!(s, f3poly(&[0, 0, 1]));
        let p = a.mul(&b);
        // (t^2+2t+1)(t+2) = t^3 + 4t^2 + 5t + 2 = t^3 + t^2 + 2t + 2 mod 3
        assert_eq!(p, f3poly(&[2, 2, 1, 1]));
        // trailing zero stripping
        let d = a.sub(&a);
        assert!(d.is_zero());
        assert_eq!(d.degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        let a = f3poly(&[2, 0, 1]); // t^2 + 2
        let b = f3poly(&[1, 1]); // t + 1
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());

        // gcd((t+1)^2(t+2), (t+1)(t+2)^2) = (t+1)(t+2) monic
        let p1 = b.mul(&b).mul(&f3poly(&[2, 1]));
        let p2 = b.mul(&f3poly(&[2, 1])).mul(&f3poly(&[2, 1]));
        let g = p1.gcd(&p2).unwrap();
        assert_eq!(g, b.mul(&f3poly(&[2, 1])));
    }

    #[test]
    fn linear_division_and_valuation() {
        let f3 = FiniteField::prime(3).unwrap();
        let one = FFElem::one(&f3);
        // f = (t - 1)^2 * (t + 1)
        let lin = f3poly(&[2, 1]); // t - 1 = t + 2
        let f = lin.mul(&lin).mul(&f3poly(&[1, 1]));
        assert_eq!(f.valuation_at_root(&one), Some(2));
        let (q, r) = f.div_linear(&one);
        assert!(r.is_zero());
        assert_eq!(q, lin.mul(&f3poly(&[1, 1])));
        // eval agrees with div_linear remainder
        let two = FFElem::from_u64(&f3, 2);
        assert_eq!(f.eval(&two), f.div_linear(&two).1);
    }

    #[test]
    fn derivative_char_p() {
        // d/dt (t^3 + t) = 3t^2 + 1 = 1 over F_3
        let f = f3poly(&[0, 1, 0, 1]);
        assert_eq!(f.derivative(), f3poly(&[1]));
    }
}
