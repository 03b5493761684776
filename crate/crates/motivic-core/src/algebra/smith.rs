//! Elementary divisor valuations of a polynomial matrix at a linear place.
//!
//! For a nonsingular square matrix `M` over `C[x]` and a root `a` of the
//! place `x - a`, the local Smith normal form of `M` over the local ring at
//! `(x - a)` is `diag((x-a)^{h_1}, ..., (x-a)^{h_r})` with
//! `h_1 <= ... <= h_r`.  Two independent routes are provided:
//!
//! * [`divisor_valuations_minors`] reads the `h_k` off the determinantal
//!   ideals: `delta_k` = minimal valuation of a `k x k` minor at `a`, and
//!   `h_k = delta_k - delta_{k-1}`.
//! * [`divisor_valuations_series`] substitutes `x = a + eps`, giving a matrix
//!   over the discrete valuation ring `C[[eps]]`, and performs Smith
//!   reduction with unit pivoting at finite precision.
//!
//! The first is exact and allocation-light at small rank; the second is the
//! cross-checking reference (and fails loudly with `PrecisionExhausted` when
//! the carried precision cannot resolve a pivot).

use super::matrix::Matrix;
use super::poly::Poly;
use super::series::TruncatedSeries;
use super::{AlgebraError, AlgebraResult, Ring, Var};

/// All `k`-element ascending index subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for i in start..=n.saturating_sub(needed) {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Valuations of the elementary divisors at `x = root`, ascending, via
/// determinantal ideals.  Errors with `SingularMatrix` when `det M = 0`.
pub fn divisor_valuations_minors<C: Ring>(
    m: &Matrix<Poly<C>>,
    root: &C,
) -> AlgebraResult<Vec<usize>> {
    assert!(m.is_square(), "divisor valuations need a square matrix");
    let r = m.rows();
    assert!(r >= 1);

    let mut deltas = Vec::with_capacity(r + 1);
    deltas.push(0usize);
    for k in 1..=r {
        let mut best: Option<usize> = None;
        for row_set in combinations(r, k) {
            for col_set in combinations(r, k) {
                let minor = m.submatrix(&row_set, &col_set).det();
                if let Some(v) = minor.valuation_at_root(root) {
                    best = Some(match best {
                        Some(b) => b.min(v),
                        None => v,
                    });
                    if best == Some(deltas[k - 1]) {
                        // valuations of k-minors can never undercut delta_{k-1}
                        break;
                    }
                }
            }
            if best == Some(deltas[k - 1]) {
                break;
            }
        }
        match best {
            Some(v) => deltas.push(v),
            None => return Err(AlgebraError::SingularMatrix),
        }
    }
    Ok((1..=r).map(|k| deltas[k] - deltas[k - 1]).collect())
}

/// Valuations of the elementary divisors at `x = root`, ascending, via Smith
/// reduction of `M(root + eps)` over `C[[eps]]` at the given precision.
/// Requires the coefficient ring to be a field (every order-zero series is
/// then a unit).  Errors with `PrecisionExhausted` when some reduction step
/// meets a block that vanishes to the carried precision.
pub fn divisor_valuations_series<C: Ring>(
    m: &Matrix<Poly<C>>,
    root: &C,
    precision: usize,
) -> AlgebraResult<Vec<usize>> {
    assert!(m.is_square(), "divisor valuations need a square matrix");
    let r = m.rows();
    assert!(r >= 1);

    // x := root + eps
    let sample = root.zero_like();
    let mut x = TruncatedSeries::variable(Var::Eps, &sample, precision);
    x = x.add(&TruncatedSeries::constant(Var::Eps, root.clone(), precision));
    let mut work: Vec<Vec<TruncatedSeries<C>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| m.at(i, j).eval_map(&x, |c| TruncatedSeries::constant(Var::Eps, c.clone(), precision)))
                .collect()
        })
        .collect();

    let mut orders = Vec::with_capacity(r);
    for step in 0..r {
        // locate a pivot of minimal order in the trailing block
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in step..r {
            for j in step..r {
                if let Some(d) = work[i][j].order() {
                    if pivot.map_or(true, |(_, _, pd)| d < pd) {
                        pivot = Some((i, j, d));
                    }
                }
            }
        }
        let (pi, pj, d) = pivot.ok_or_else(|| {
            AlgebraError::PrecisionExhausted(format!(
                "no pivot at reduction step {step}: block vanishes to carried precision"
            ))
        })?;
        work.swap(step, pi);
        for row in work.iter_mut() {
            row.swap(step, pj);
        }

        // pivot = eps^d * u with u a unit; clear the rest of row and column
        let unit = work[step][step].shift_down(d)?;
        let unit_inv = unit
            .try_inv()
            .expect("minimal-order pivot is eps^d times a unit over a field");
        for i in step + 1..r {
            if work[i][step].is_zero() {
                continue;
            }
            let q = work[i][step].shift_down(d)?.mul(&unit_inv);
            for j in step..r {
                let sub = q.mul(&work[step][j]);
                work[i][j] = work[i][j].sub(&sub);
            }
        }
        for j in step + 1..r {
            if work[step][j].is_zero() {
                continue;
            }
            let q = work[step][j].shift_down(d)?.mul(&unit_inv);
            for i in step..r {
                let sub = q.mul(&work[i][step]);
                work[i][j] = work[i][j].sub(&sub);
            }
        }
        orders.push(d);
    }
    orders.sort_unstable();
    Ok(orders)
}

#[cfg(test)]
mod tests {
    use super::super::field::{FFElem, FiniteField};
    use super::super::ratfunc::RatFunc;
    use super::*;

    fn f5_theta() -> (std::sync::Arc<FiniteField>, RatFunc) {
        let f5 = FiniteField::prime(5).unwrap();
        let th = RatFunc::variable(Var::Theta, &FFElem::one(&f5));
        (f5, th)
    }

    /// t - theta as a polynomial in t over F_5(theta)
    fn t_minus_theta(f5: &std::sync::Arc<FiniteField>, th: &RatFunc) -> Poly<RatFunc> {
        Poly::new(
            Var::T,
            vec![th.neg(), RatFunc::one_of(Var::Theta, &FFElem::one(f5))],
        )
    }

    #[test]
    fn diagonal_matrix_reads_off_valuations() {
        let (f5, th) = f5_theta();
        let j = t_minus_theta(&f5, &th);
        let one = Poly::constant(Var::T, RatFunc::one_of(Var::Theta, &FFElem::one(&f5)));
        let zero = one.zero_like();
        // diag(1, (t-theta), (t-theta)^3), shuffled by a unimodular move
        let mut m = Matrix::from_fn(3, 3, |_, _| zero.clone());
        m.set(0, 0, one.clone());
        m.set(1, 1, j.clone());
        m.set(2, 2, j.pow(3));
        // row_0 += row_2 keeps the divisors
        let r2 = m.at(2, 0).clone();
        m.set(0, 0, m.at(0, 0).add(&r2));
        let r2 = m.at(2, 2).clone();
        m.set(0, 2, m.at(0, 2).add(&r2));

        let hs = divisor_valuations_minors(&m, &th).unwrap();
        assert_eq!(hs, vec![0, 1, 3]);
        let hs2 = divisor_valuations_series(&m, &th, 8).unwrap();
        assert_eq!(hs2, vec![0, 1, 3]);
    }

    #[test]
    fn non_diagonal_example_and_route_agreement() {
        let (f5, th) = f5_theta();
        let j = t_minus_theta(&f5, &th);
        let one = Poly::constant(Var::T, RatFunc::one_of(Var::Theta, &FFElem::one(&f5)));
        // [[t-theta, 1], [0, t-theta]] has divisors 1, 1 (the off-diagonal 1
        // does not lower them below the determinant's valuation 2... it does:
        // delta_1 = 0 because of the unit minor, so divisors are 0 and 2)
        let zero = one.zero_like();
        let mut m = Matrix::from_fn(2, 2, |_, _| zero.clone());
        m.set(0, 0, j.clone());
        m.set(0, 1, one.clone());
        m.set(1, 1, j.clone());
        let hs = divisor_valuations_minors(&m, &th).unwrap();
        assert_eq!(hs, vec![0, 2]);
        assert_eq!(divisor_valuations_series(&m, &th, 8).unwrap(), hs);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let (f5, th) = f5_theta();
        let j = t_minus_theta(&f5, &th);
        let zero = j.zero_like();
        let mut m = Matrix::from_fn(2, 2, |_, _| zero.clone());
        m.set(0, 0, j.clone());
        m.set(1, 0, j.clone());
        assert!(matches!(
            divisor_valuations_minors(&m, &th),
            Err(AlgebraError::SingularMatrix)
        ));
        assert!(matches!(
            divisor_valuations_series(&m, &th, 6),
            Err(AlgebraError::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn random_conjugates_preserve_divisors() {
        // multiply by elementary matrices with polynomial entries on both
        // sides; elementary divisors at the place are invariant
        let (f5, th) = f5_theta();
        let j = t_minus_theta(&f5, &th);
        let one = Poly::constant(Var::T, RatFunc::one_of(Var::Theta, &FFElem::one(&f5)));
        let zero = one.zero_like();
        let mut m = Matrix::from_fn(3, 3, |_, _| zero.clone());
        m.set(0, 0, one.clone());
        m.set(1, 1, j.pow(2));
        m.set(2, 2, j.pow(2));

        let mut seed = 11u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as usize
        };
        for _ in 0..6 {
            let i = next() % 3;
            let mut k = next() % 3;
            if k == i {
                k = (k + 1) % 3;
            }
            // row_i += (t + c) * row_k
            let c = RatFunc::constant(Var::Theta, FFElem::from_u64(&f5, (next() % 5) as u64));
            let factor = Poly::new(Var::T, vec![c, RatFunc::one_of(Var::Theta, &FFElem::one(&f5))]);
            for col in 0..3 {
                let add = factor.mul(m.at(k, col));
                m.set(i, col, m.at(i, col).add(&add));
            }
        }
        let hs = divisor_valuations_minors(&m, &th).unwrap();
        assert_eq!(hs, vec![0, 2, 2]);
        assert_eq!(divisor_valuations_series(&m, &th, 10).unwrap(), hs);
    }
}
