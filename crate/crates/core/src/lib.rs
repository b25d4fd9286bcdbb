//! Ideal Turaev–Viro invariants of compact 3-manifolds.
//!
//! The crate reads special spines in Matveev's cyclic-word coding, builds
//! Turaev–Viro state sums over a colour system, synthesizes the
//! Biedenharn–Elliott ideal and compares manifolds through normal forms
//! modulo a Gröbner basis, all over exact rationals.
//!
//! Pipeline, bottom up:
//!
//! - [`exactpoly`]: rationals, sparse polynomials, monomial orders, text form,
//!   evaluation in `ℚ[t]/(μ)`.
//! - [`groebner`]: division, Buchberger, normal forms, radical membership.
//! - [`spine`]: Matveev codes and the reconstructed incidence structure.
//! - [`colours`]: colour systems, the tetrahedral symmetry of symbols and the
//!   variable registry.
//! - [`statesum`]: the state-sum polynomial of a spine.
//! - [`beideal`]: Biedenharn–Elliott generators, bridging and the scaling check.
//! - [`invariant`]: end-to-end records, partitions and checks.

pub mod beideal;
pub mod cache;
pub mod colours;
pub mod exactpoly;
pub mod groebner;
pub mod invariant;
pub mod spine;
pub mod statesum;

pub use exactpoly::{Monomial, MonomialOrder, OrderKind, Polynomial, Rational, VariableRegistry};
