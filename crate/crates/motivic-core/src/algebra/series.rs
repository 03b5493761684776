//! Truncated power series with explicit precision.
//!
//! A `TruncatedSeries` stores exactly `precision` coefficients and represents
//! a class modulo `var^precision`.  All operations return results at the
//! minimum precision of their operands; nothing ever extrapolates.  Questions
//! that cannot be answered at the carried precision (the order of a series
//! that vanishes to precision, division by a non-unit, ...) fail loudly
//! rather than guess.

use std::fmt;

use super::poly::Poly;
use super::{AlgebraError, AlgebraResult, Ring, Var};

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    var: Var,
    /// Invariant: `coeffs.len() == precision >= 1`.
    coeffs: Vec<C>,
}

impl<C: Ring> TruncatedSeries<C> {
    /// Build from coefficients in ascending order, truncating or
    /// zero-padding to `precision`.  Padding is only sound when the input is
    /// exact (e.g. comes from a polynomial); callers lifting genuinely
    /// truncated data must pass its real precision.
    pub fn new(var: Var, mut coeffs: Vec<C>, precision: usize) -> Self {
        assert!(precision >= 1, "series precision must be at least 1");
        assert!(!coeffs.is_empty(), "coefficient vector must be non-empty");
        let zero = coeffs[0].zero_like();
        coeffs.resize(precision, zero);
        TruncatedSeries { var, coeffs }
    }

    pub fn zero(var: Var, sample: &C, precision: usize) -> Self {
        assert!(precision >= 1);
        TruncatedSeries {
            var,
            coeffs: vec![sample.zero_like(); precision],
        }
    }

    pub fn one(var: Var, sample: &C, precision: usize) -> Self {
        let mut s = Self::zero(var, sample, precision);
        s.coeffs[0] = sample.one_like();
        s
    }

    pub fn constant(var: Var, c: C, precision: usize) -> Self {
        let mut s = Self::zero(var, &c, precision);
        s.coeffs[0] = c;
        s
    }

    /// The variable itself (requires precision >= 2 to be faithful).
    pub fn variable(var: Var, sample: &C, precision: usize) -> Self {
        let mut s = Self::zero(var, sample, precision);
        if precision >= 2 {
            s.coeffs[1] = sample.one_like();
        }
        s
    }

    pub fn from_poly(p: &Poly<C>, precision: usize) -> Self {
        TruncatedSeries::new(p.var(), p.coeffs().to_vec(), precision)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    /// Lower the precision.
    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1 && precision <= self.precision());
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs[..precision].to_vec(),
        }
    }

    /// Raise the precision by zero-padding.  Only sound when the caller
    /// knows the series is exact (all omitted coefficients are zero).
    pub fn extend_exact(&self, precision: usize) -> Self {
        assert!(precision >= self.precision());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(precision, self.coeffs[0].zero_like());
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| f(c)).collect(),
        }
    }

    /// First index with a non-zero coefficient; `None` when the series
    /// vanishes identically to its precision (order unknown, >= precision).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// First index whose coefficient is a unit of the coefficient ring.
    /// For series over a local ring this detects the "true" order of an
    /// element known to be `var^d * unit`, robustly against lower-order
    /// noise lying in the maximal ideal.
    pub fn unit_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.try_inv().is_some())
    }

    /// Multiply by `var^k` (top coefficients fall off the precision window).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.precision();
        let mut coeffs = vec![self.coeffs[0].zero_like(); n];
        for i in 0..n.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    /// Divide by `var^k`; the low `k` coefficients must vanish.  The result
    /// is only known modulo `var^{precision-k}`, so the precision drops.
    pub fn shift_down(&self, k: usize) -> AlgebraResult<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.precision() {
            return Err(AlgebraError::PrecisionExhausted(format!(
                "cannot divide by {}^{k} at precision {}",
                self.var,
                self.precision()
            )));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = self.one_like();
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

    /// Substitute another series for the variable (Horner).  The result is
    /// reported at the substituted series' precision; for substitutions whose
    /// constant term is not nilpotent-small the caller owns the error
    /// analysis (see the shtuka module for the one place this is used).
    pub fn substitute(&self, g: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        let mut acc = TruncatedSeries::constant(
            g.var,
            self.coeffs.last().expect("non-empty").clone(),
            g.precision(),
        );
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(g);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }

    /// Forget the tail and return the underlying polynomial (trailing zeros
    /// trimmed).
    pub fn to_poly(&self) -> Poly<C> {
        Poly::new(self.var, self.coeffs.clone())
    }
}

impl<C: Ring> Ring for TruncatedSeries<C> {
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(self.var, &self.coeffs[0], self.precision())
    }

    fn one_like(&self) -> Self {
        TruncatedSeries::one(self.var, &self.coeffs[0], self.precision())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let n = self.precision().min(rhs.precision());
        TruncatedSeries {
            var: self.var,
            coeffs: (0..n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect(),
        }
    }

    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let n = self.precision().min(rhs.precision());
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !rhs.coeffs[j].is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
                }
            }
        }
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    /// Inverse of a unit (constant term invertible), by the standard
    /// coefficient recurrence.
    fn try_inv(&self) -> Option<Self> {
        let c0_inv = self.coeffs[0].try_inv()?;
        let n = self.precision();
        let mut inv = vec![self.coeffs[0].zero_like(); n];
        inv[0] = c0_inv.clone();
        for k in 1..n {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&inv[k - j]));
            }
            inv[k] = acc.mul(&c0_inv).neg();
        }
        Some(TruncatedSeries {
            var: self.var,
            coeffs: inv,
        })
    }
}

impl<C: Ring + fmt::Display> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            let wrapped = if cs.contains('+') || cs.contains('-') || cs.contains('*') {
                format!("({cs})")
            } else {
                cs
            };
            match k {
                0 => write!(f, "{wrapped}")?,
                1 => {
                    if c.is_one() {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{wrapped}*{}", self.var)?;
                    }
                }
                _ => {
                    if c.is_one() {
                        write!(f, "{}^{k}", self.var)?;
                    } else {
                        write!(f, "{wrapped}*{}^{k}", self.var)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.precision())
    }
}

impl<C: Ring> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}; prec {}]{:?}", self.var, self.precision(), self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{FFElem, FiniteField};
    use super::*;
    use std::sync::Arc;

    fn s3(coeffs: &[u64], prec: usize) -> TruncatedSeries<FFElem> {
        let f3 = FiniteField::prime(3).unwrap();
        TruncatedSeries::new(
            Var::Pi,
            coeffs.iter().map(|&c| FFElem::from_u64(&f3, c)).collect(),
            prec,
        )
    }

    #[test]
    fn inversion_of_units() {
        // (1 - pi)^{-1} = 1 + pi + pi^2 + ...
        let s = s3(&[1, 2], 6);
        let inv = s.try_inv().unwrap();
        assert_eq!(inv, s3(&[1, 1, 1, 1, 1, 1], 6));
        assert!(s.mul(&inv).is_one());
        // non-units do not invert
        assert!(s3(&[0, 1], 6).try_inv().is_none());
    }

    #[test]
    fn precision_is_min_of_operands() {
        let a = s3(&[1, 1, 1, 1], 4);
        let b = s3(&[1, 2], 8);
        assert_eq!(a.mul(&b).precision(), 4);
        assert_eq!(a.add(&b).precision(), 4);
    }

    #[test]
    fn orders_and_shifts() {
        let s = s3(&[0, 0, 2, 1], 6);
        assert_eq!(s.order(), Some(2));
        assert_eq!(s.unit_order(), Some(2));
        let d = s.shift_down(2).unwrap();
        assert_eq!(d.precision(), 4);
        assert_eq!(d.coeff(0), FFElem::from_u64(&FiniteField::prime(3).unwrap(), 2));
        assert!(s.shift_down(3).is_err()); // inexact
        assert!(s3(&[0, 0], 2).order().is_none());
    }

    #[test]
    fn substitution_shift_by_constant() {
        // f(pi) = pi^2 substituted with pi := eps + 1 gives eps^2 + 2 eps + 1
        let f = s3(&[0, 0, 1], 5);
        let f3 = FiniteField::prime(3).unwrap();
        let mut g = TruncatedSeries::zero(Var::Eps, &FFElem::zero(&f3), 5);
        g = {
            let mut c = g.coeffs().to_vec();
            c[0] = FFElem::one(&f3);
            c[1] = FFElem::one(&f3);
            TruncatedSeries::new(Var::Eps, c, 5)
        };
        let sub = f.substitute(&g);
        assert_eq!(sub.coeff(0), FFElem::one(&f3));
        assert_eq!(sub.coeff(1), FFElem::from_u64(&f3, 2));
        assert_eq!(sub.coeff(2), FFElem::one(&f3));
        let _ = Arc::strong_count(&f3);
    }

    #[test]
    fn nested_series_invert() {
        // series in z whose coefficients are series in pi
        let f3 = FiniteField::prime(3).unwrap();
        let unit_pi = s3(&[1, 1], 4);
        let z_series = TruncatedSeries::new(Var::Z, vec![unit_pi.clone(), unit_pi], 3);
        let inv = z_series.try_inv().unwrap();
        assert!(z_series.mul(&inv).is_one());
        let _ = f3;
    }
}
