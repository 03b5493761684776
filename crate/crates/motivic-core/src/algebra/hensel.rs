//! Hensel lifting of simple residue roots into truncated series rings.
//!
//! Given a monic separable `g` over a finite field, a residue field `k`
//! containing a distinguished root `root0` of `g - target(0)`, and a target
//! series, [`lift_root_orbit`] produces the full Frobenius orbit of series
//! roots `w_i` of `g(W) = target` in `k[[pi]]`, with `w_i` reducing to
//! `root0^{q^i}` modulo `pi`.  Lifting is Newton iteration; the result is
//! self-checked by multiplying the lifted factors back together.

use std::sync::Arc;

use super::field::{FFElem, FiniteField};
use super::poly::Poly;
use super::series::TruncatedSeries;
use super::{AlgebraError, AlgebraResult, Ring};

/// Embed an element into `k`, where `k` is the element's own field or a
/// one-step extension of it.
pub fn embed_into(c: &FFElem, k: &Arc<FiniteField>) -> AlgebraResult<FFElem> {
    FFElem::embed(k, c)
}

/// Lift the Frobenius orbit of `root0` to series roots of `g(W) = target`.
///
/// * `g` is monic with coefficients in the base field `F_q` (or in `k`
///   itself); `q` is read off the coefficient field.
/// * `root0` lies in `k` and satisfies `g(root0) = target(0)`, and must be a
///   simple root there (`g'(root0) != 0`).
/// * The orbit `root0, root0^q, root0^{q^2}, ...` must consist of
///   `deg g` distinct elements — i.e. the reduction of `g - target` splits
///   over `k` with that orbit as its roots.  The lifted factors are
///   multiplied back together and compared against `g(W) - target` as a
///   final consistency check.
pub fn lift_root_orbit(
    g: &Poly<FFElem>,
    k: &Arc<FiniteField>,
    root0: &FFElem,
    target: &TruncatedSeries<FFElem>,
) -> AlgebraResult<Vec<TruncatedSeries<FFElem>>> {
    let deg = g
        .degree()
        .ok_or(AlgebraError::ZeroPolynomial)
        .and_then(|d| {
            if d == 0 {
                Err(AlgebraError::Invalid("constant polynomial has no roots".into()))
            } else {
                Ok(d)
            }
        })?;
    if !g.is_monic() {
        return Err(AlgebraError::Invalid("lifting requires a monic polynomial".into()));
    }
    let q = g.leading().field().order();
    let prec = target.precision();
    let var = target.var();

    // coefficients of g, viewed in k
    let mut gk_coeffs = Vec::with_capacity(deg + 1);
    for c in g.coeffs() {
        gk_coeffs.push(embed_into(c, k)?);
    }
    let gk = Poly::new(g.var(), gk_coeffs);
    let gk_deriv = gk.derivative();

    // reject a wrong starting root before reasoning about its orbit
    if gk.eval(root0) != target.coeff(0) {
        return Err(AlgebraError::ResidueRootMissing(format!(
            "{root0} is not a residue root of the shifted polynomial"
        )));
    }

    // the Frobenius orbit in k, which must exhaust the roots
    let mut orbit = Vec::with_capacity(deg);
    for i in 0..deg {
        orbit.push(root0.frobenius(q, i as u32));
    }
    for (i, a) in orbit.iter().enumerate() {
        for b in orbit.iter().skip(i + 1) {
            if a == b {
                return Err(AlgebraError::NotIrreducible(format!(
                    "Frobenius orbit of the residue root has fewer than {deg} elements"
                )));
            }
        }
    }

    let mut lifted = Vec::with_capacity(deg);
    for r in &orbit {
        if gk.eval(r) != target.coeff(0) {
            return Err(AlgebraError::ResidueRootMissing(format!(
                "{r} is not a residue root of the shifted polynomial"
            )));
        }
        if gk_deriv.eval(r).is_zero() {
            return Err(AlgebraError::NotIrreducible(format!(
                "residue root {r} is not simple"
            )));
        }

        let mut w = TruncatedSeries::constant(var, r.clone(), prec);
        let mut steps = 0usize;
        loop {
            let value = gk.eval_map(&w, |c| TruncatedSeries::constant(var, c.clone(), prec));
            let diff = value.sub(target);
            if diff.is_zero() {
                break;
            }
            let deriv = gk_deriv.eval_map(&w, |c| TruncatedSeries::constant(var, c.clone(), prec));
            let deriv_inv = deriv.try_inv().ok_or_else(|| {
                AlgebraError::PrecisionExhausted("derivative became a non-unit while lifting".into())
            })?;
            w = w.sub(&diff.mul(&deriv_inv));
            steps += 1;
            if steps > 64 {
                return Err(AlgebraError::PrecisionExhausted(
                    "Newton iteration failed to stabilize".into(),
                ));
            }
        }
        lifted.push(w);
    }

    // consistency: the lifted factors must multiply back to g(W) - target
    let one = TruncatedSeries::one(var, &target.coeff(0), prec);
    let mut product = Poly::constant(g.var(), one.clone());
    for w in &lifted {
        let factor = Poly::new(g.var(), vec![w.neg(), one.clone()]);
        product = product.mul(&factor);
    }
    let mut expected_coeffs: Vec<TruncatedSeries<FFElem>> = gk
        .coeffs()
        .iter()
        .map(|c| TruncatedSeries::constant(var, c.clone(), prec))
        .collect();
    expected_coeffs[0] = expected_coeffs[0].sub(target);
    let expected = Poly::new(g.var(), expected_coeffs);
    if product != expected {
        return Err(AlgebraError::Mismatch(
            "lifted factors do not reproduce the polynomial".into(),
        ));
    }

    Ok(lifted)
}
