//! Newton polygons over the degree valuation.
//!
//! For `P(X) = sum_i c_i X^i` with `c_i` polynomials in `t`, plot the points
//! `(i, -deg c_i)` (omitting zero coefficients) and take the lower convex
//! hull, read left to right.  Each hull segment of horizontal span `w` and
//! slope `s` contributes `s` with multiplicity `w` to the returned list, so
//! the slopes come out ascending and there are `deg_X P - i_min` of them,
//! where `i_min` is the lowest index with a non-zero coefficient.

use num_rational::Ratio;

use super::poly::Poly;
use super::{AlgebraError, AlgebraResult, Ring};

/// Degrees of the coefficients of a polynomial whose coefficients are
/// themselves polynomials; `None` marks a zero coefficient.
pub fn coeff_degrees<C: Ring>(p: &Poly<Poly<C>>) -> Vec<Option<i64>> {
    p.coeffs()
        .iter()
        .map(|c| c.degree().map(|d| d as i64))
        .collect()
}

/// Lower-hull slopes, ascending and with multiplicity, of the points
/// `(i, -degrees[i])`.  `degrees[i] = None` omits the point.  Errors with
/// `ZeroPolynomial` when every entry is `None`.
pub fn newton_slopes(degrees: &[Option<i64>]) -> AlgebraResult<Vec<Ratio<i64>>> {
    let points: Vec<(i64, i64)> = degrees
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|d| (i as i64, -d)))
        .collect();
    if points.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }

    // monotone-chain lower hull; input is already sorted by x
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    let mut slopes = Vec::new();
    for seg in hull.windows(2) {
        let (x0, y0) = seg[0];
        let (x1, y1) = seg[1];
        let slope = Ratio::new(y1 - y0, x1 - x0);
        for _ in 0..(x1 - x0) {
            slopes.push(slope);
        }
    }
    Ok(slopes)
}

/// Index of the lowest non-zero coefficient, if any.  A positive value means
/// `X = 0` is a root (with that multiplicity), which callers computing
/// weights out of the slopes must reject.
pub fn first_support_index(degrees: &[Option<i64>]) -> Option<usize> {
    degrees.iter().position(|d| d.is_some())
}
