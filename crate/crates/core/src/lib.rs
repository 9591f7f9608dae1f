//! Reasoning with monoidal functional dependencies (MFDs).
//!
//! An MFD `A -> B` relates two finite multisets of attributes. It is read over
//! an integral commutative partially ordered monoid: an evaluation `e`
//! satisfies it when `e(A) <= e(B)`, where `e(A)` multiplies the values of the
//! attributes of `A` with multiplicities. Unlike classical functional
//! dependencies, repeated attributes matter, so `A -> B` and `A -> C` do not
//! give `A -> BC`, only `AA -> BC`.
//!
//! This crate is `no_std` (it needs `alloc`) and contains only the pure
//! algorithms:
//!
//! - [`formula`]: attribute multisets, MFDs, theories.
//! - [`syntax`]: the line-oriented theory grammar.
//! - [`algebra`]: finite pomonoids, residuated lattices, t-norms, evaluation,
//!   structure enumeration, and the downset completion.
//! - [`proof`]: `(Ax)`/`(Cut)` proof trees, the checker, derived rules, and the
//!   s-expression certificate format.
//! - [`entail`]: rewriting, breadth-first proof search, countermodel search,
//!   and the combined decision procedure.
//! - [`member`]: the polynomial decision procedure for non-contracting
//!   theories.
//! - [`relational`]: ranked relations with similarity-valued attributes.
//!
//! File formats, concurrency, and the command-line tool live in the `mfd`
//! crate.

#![no_std]
#![allow(clippy::result_large_err, clippy::type_complexity)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod entail;
pub mod formula;
pub mod member;
pub mod proof;
pub mod relational;
pub mod syntax;

pub use algebra::{
    Element, Evaluation, FinitePomonoid, FiniteResiduatedLattice, Pomonoid, TNorm, UnitInterval,
};
pub use entail::{decide, Budgets, Refutation, Verdict};
pub use formula::{Attr, AttributeMultiset, Mfd, Theory};
pub use member::member;
pub use proof::{check_proof, ProofTree};
pub use syntax::{parse_mfd, parse_multiset, parse_theory};
