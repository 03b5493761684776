//! Exact arithmetic for effective `F_q[t]`-motives over the rational function
//! field `K = F_q(theta)`.
//!
//! The crate provides the full pipeline from a tau-matrix presentation of a
//! motive down to verdicts about its Frobenius data:
//!
//! * [`algebra`] — finite field towers, dense polynomials, rational functions,
//!   truncated power series, matrices, local Smith forms, Newton polygons and
//!   Hensel lifting.
//! * [`motive`] — tau-matrix presentations, Hodge–Pink weights, direct sums,
//!   tensor products and determinants.
//! * [`place`] — places of `K`, reduction of presentations, good-reduction
//!   tests and block-triangular (semi-stable) presentations.
//! * [`frobenius`] — Frobenius characteristic polynomials by two independent
//!   algorithms, Weil weights, coefficient bounds and small-residue
//!   reconstruction.
//! * [`shtuka`] — local shtukas attached to good-reduction motives, torsion
//!   normal forms and tame inertia weights.
//! * [`congruence`] — the congruence and non-existence verdict engines built
//!   on top of the other modules.
//! * [`repr`] — finite group representations over finite fields and the
//!   characteristic-polynomial (Brauer–Nesbitt style) comparison.
//! * [`io`] — plain-text file formats for presentations, rank-one target
//!   factors and representation pairs.
//!
//! All arithmetic is exact; truncated power series carry their precision and
//! refuse to answer questions that exceed it.

pub mod algebra;
pub mod congruence;
pub mod frobenius;
pub mod io;
pub mod motive;
pub mod place;
pub mod repr;
pub mod shtuka;

pub use algebra::field::{FFElem, FiniteField};
pub use algebra::matrix::Matrix;
pub use algebra::poly::Poly;
pub use algebra::ratfunc::RatFunc;
pub use algebra::series::TruncatedSeries;
pub use algebra::{AlgebraError, Ring, Var};
pub use congruence::{BoundContext, CongruenceVerdict, NonexistenceVerdict, WeightScreening};
pub use frobenius::{CharPolyMethod, FrobCharPoly};
pub use io::{MotiveDocument, ParseError, TargetEntry};
pub use motive::MotivePresentation;
pub use place::{Place, ReducedMotive, SemiStablePresentation};
pub use repr::{FiniteGroupRep, Group};
pub use shtuka::{LocalShtukaPresentation, TameInertiaReport};
