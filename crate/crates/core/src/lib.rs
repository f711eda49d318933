//! Frobenius complexes of the monoids `Λ^{p,q} = <a,b | pa = qb>` and
//! `Λ^{p,q,r} = <a,b,c | pa + qb = rc>`.
//!
//! The crate builds open intervals in the divisibility order, their order
//! complexes and exact reduced homology over `GF(2)`, `GF(p)` or `Q`, and
//! compares the results with the homotopy types predicted by transition
//! maps and closure operators. Multigraded Poincaré series are assembled
//! from local Betti numbers and checked against their closed forms.

pub mod cli;
pub mod complex;
pub mod error;
pub mod homology;
pub mod interval;
pub mod monoid;
pub mod poincare;
pub mod transition;
pub mod verify;

pub use complex::{order_complex, order_complex_skeleton, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{
    frobenius_betti, local_betti, reduced_betti, BettiVector, FieldSpec, HomologyOptions,
    LocalBettiVector,
};
pub use interval::{half_open_interval, open_interval, IntervalPoset};
pub use monoid::{recognize_submonoid, Element, MonoidSpec, NumericalIso, Recognition};
pub use transition::{predict, predicted_betti, tau, transition_map, ClosureOp, HomotopyType};
