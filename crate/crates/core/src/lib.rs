//! Characters, log-numerators and unique factorization for parabolic Verma
//! modules over symmetrizable Kac–Moody algebras.
//!
//! A parabolic Verma module is indexed by a pair `(λ, I)`: a finite set `I` of
//! simple roots and the pairings `λ(α_i^∨) ≥ 0` for `i ∈ I`. Its character is
//! `e^λ · U(λ, I) / U(0, S)`, where `U` is an alternating sum over the
//! parabolic Weyl group `W_I` and `S` is the full node set. The log-numerator
//! `L(λ, I) = -log U(λ, I)` is additive over tensor products, and sums of
//! log-numerators determine their factors up to `≈` (see [`factorizer`]).
//!
//! Everything is computed as power series in `x_i = e^{-α_i}` truncated at a
//! total degree. The series layer is generic over [`Scalar`]; the factorizer
//! and order code work over exact [`Rational`] coefficients.

pub mod cartan;
pub mod error;
pub mod factorizer;
pub mod fixtures;
pub mod folding;
pub mod numerators;
pub mod order;
pub mod scalar;
pub mod series;
pub mod weyl;

pub use cartan::{CartanMatrix, NodeSet};
pub use error::{Error, Result};
pub use factorizer::{
    character_product, folded_log_sum, log_sum, peel_folded, peel_log_sum, recover_from_character_product,
    verify_equivalence, Equivalence, FactorizationResult,
};
pub use folding::{
    check_automorphism, connected_transversal, orbit_partition, DiagramAutomorphism, FoldContext, LiftData, Partition,
};
pub use numerators::{
    beta, character, denominator, leading_coefficient_closed_form, log_numerator, root_multiplicities, CharacterValue,
    PvIndex,
};
pub use order::{approx, maximal_indices, preceq};
pub use scalar::{parse_rational, render_rational, Scalar};
pub use series::{Exponent, FoldedSeries, Series};
pub use weyl::{numerator_u, orbit_terms, OrbitTerm};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Series over exact rationals.
pub type QSeries = Series<Rational>;
/// Series over `f64`, for quick numeric work.
pub type F64Series = Series<f64>;
/// Series over `f32`.
pub type F32Series = Series<f32>;
