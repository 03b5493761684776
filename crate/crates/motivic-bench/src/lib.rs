//! Shared fixtures for the pipeline benchmarks.

use std::sync::Arc;

use motivic_core::algebra::field::{FFElem, FiniteField};
use motivic_core::algebra::poly::Poly;
use motivic_core::algebra::Var;
use motivic_core::motive::MotivePresentation;
use motivic_core::place::Place;

pub fn base_field() -> Arc<FiniteField> {
    FiniteField::prime(3).expect("3 is prime")
}

/// Rank-three direct sum `C + C^2 + 1`: mixed weights, good at every place
/// away from the support of `t - theta`.
pub fn mixed_sum(field: &Arc<FiniteField>) -> MotivePresentation {
    let carlitz = MotivePresentation::carlitz(field);
    let square = carlitz.tensor_power(2).expect("same field");
    let unit = MotivePresentation::unit(field);
    carlitz
        .direct_sum(&square)
        .and_then(|m| m.direct_sum(&unit))
        .expect("same field")
}

pub fn theta_place(field: &Arc<FiniteField>, coeffs: &[u64]) -> Place {
    Place::from_prime(Poly::new(
        Var::Theta,
        coeffs.iter().map(|&c| FFElem::from_u64(field, c)).collect(),
    ))
    .expect("monic irreducible")
}

pub fn t_poly(field: &Arc<FiniteField>, coeffs: &[u64]) -> Poly<FFElem> {
    Poly::new(
        Var::T,
        coeffs.iter().map(|&c| FFElem::from_u64(field, c)).collect(),
    )
}
