//! Deciding `Gamma |- A -> B`.
//!
//! Provability coincides with rewriting: `Gamma |- A -> B` iff `A` rewrites
//! in finitely many steps to some `BC`, where one step turns `EG` into `FG`
//! for a rule `E -> F` of `Gamma`. Breadth-first search over these steps
//! finds proofs; enumeration of small finite structures finds
//! countermodels. [`decide`] runs both under budgets and, for
//! non-contracting theories, uses the polynomial procedure in
//! [`member`](crate::member) instead.

mod bfs;
mod classical;
mod countermodel;
mod decide;
mod rewrite;

pub use bfs::{bfs_prove, BfsOutcome, BfsReport, BfsSearch, BfsState, DEFAULT_BFS_NODES};
pub use classical::{classical_closure, classical_entails};
pub use countermodel::{
    find_countermodel, refute_in, Countermodel, CountermodelOutcome, CountermodelReport,
    CountermodelSearch, CountermodelState, SearchResult, DEFAULT_MODEL_EVALUATIONS,
};
pub use decide::{
    decide, decide_non_contracting, deduction_search, deduction_witness, Budgets, DeductionOutcome, Refutation,
    UnknownReport, Verdict,
};
pub use rewrite::{rewrite_successors, PathError, RewritePath, RewriteStep};
