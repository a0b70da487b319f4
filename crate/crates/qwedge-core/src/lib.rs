//! Exact computations in level-1 Fock spaces realized by q-deformed
//! wedge products of an infinite tensor power.
//!
//! The crate keeps every coefficient exact — Laurent polynomials in `q` over
//! the integers, multivariate polynomials over the rationals — and realizes
//! semi-infinite wedges concretely as Hecke-antisymmetrized tensors truncated
//! to a finite working depth. On top of that sit the straightening calculus,
//! the two quantum-group actions (rank-free and affine), vertex-operator
//! coefficient extraction, and the Knizhnik–Zamolodchikov residue checks.

pub mod coeff;
pub mod error;
pub mod fock;
pub mod hecke;
pub mod kz;
pub mod selftest;
pub mod uqaction;
pub mod vertex;
pub mod wedge;

pub use coeff::{FactoredRational, LaurentQ, PolyZ};
pub use error::{CoeffError, FockError, KzError, ParseError, WedgeError};
pub use fock::{Algebra, FlatIndex, PureTensor, TensorVector};
pub use hecke::{HeckeElement, Permutation};
pub use kz::{
    apply_exchange, finite_wedge_poly, kz_residual, ExchangeMode, ExchangeOperator, KZVector,
};
pub use selftest::{run_all, CriterionReport};
pub use uqaction::{
    act, act_affine, act_on_wedge, act_sl_inf, relation_check, GeneratorKind, GeneratorLabel,
    Relation,
};
pub use vertex::{
    compose, matrix_coefficient, split_first, ComposeExpansion, SplitEntry, SplitExpansion,
};
pub use wedge::{
    class_charge, expand, stability_probe, straighten, wedge_from_charge, wedge_from_young, weight,
    young_from_wedge, Partition, StabilityReport, Straightener, WedgeTerm, WedgeVector,
    WeightReport,
};
