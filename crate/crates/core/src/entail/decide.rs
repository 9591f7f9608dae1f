use super::bfs::{certify, BfsReport, BfsSearch, BfsState, DEFAULT_BFS_NODES};
use super::countermodel::{Countermodel, CountermodelReport, CountermodelSearch, CountermodelState, DEFAULT_MODEL_EVALUATIONS};
use super::rewrite::RewritePath;
use crate::formula::{AttributeMultiset, Mfd, Theory, DEFAULT_MULTIPLICITY_CAP};
use crate::member::{member, MemberTrace};
use crate::proof::ProofTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Distinct multisets the proof search may visit.
    pub bfs_nodes: usize,
    /// Assignment nodes the countermodel search may visit.
    pub model_evaluations: u64,
    /// Largest structure tried, clamped to the enumeration cap.
    pub max_algebra_size: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            bfs_nodes: DEFAULT_BFS_NODES,
            model_evaluations: DEFAULT_MODEL_EVALUATIONS,
            max_algebra_size: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Refutation {
    Countermodel(Countermodel),
    /// The polynomial procedure answered false.
    MemberAlgorithm(MemberTrace),
    /// The rewrite graph from the antecedent is finite and was searched
    /// completely, and no structure up to the size limit refutes the query.
    RewritingExhausted(BfsReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownReport {
    pub bfs: BfsReport,
    pub models: CountermodelReport,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Proved { path: RewritePath, proof: ProofTree },
    Refuted(Refutation),
    Unknown(UnknownReport),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Proved { .. } => "proved",
            Verdict::Refuted(_) => "refuted",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

/// Settles a query over a non-contracting theory, or returns `None` when the
/// theory is contracting or the working multiset overflows.
pub fn decide_non_contracting(theory: &Theory, query: &Mfd) -> Option<Verdict> {
    let (result, trace) = member(theory, query).ok()?;
    if !result {
        return Some(Verdict::Refuted(Refutation::MemberAlgorithm(trace)));
    }
    let path = trace
        .rewrite_path(&query.antecedent)
        .expect("a true result carries its firings");
    let (path, proof) = certify(theory, &path, &query.consequent);
    Some(Verdict::Proved { path, proof })
}

/// Decides `theory |- query` within `budgets`.
///
/// Non-contracting theories go to the polynomial procedure. Otherwise proof
/// search and countermodel search alternate, one breadth-first layer against
/// one structure, until either succeeds or both run out.
pub fn decide(theory: &Theory, query: &Mfd, budgets: Budgets) -> Verdict {
    if let Some(v) = decide_non_contracting(theory, query) {
        return v;
    }
    let mut bfs = BfsSearch::new(theory, query, budgets.bfs_nodes);
    let mut models = CountermodelSearch::new(
        theory,
        query,
        budgets.max_algebra_size,
        budgets.model_evaluations,
    );
    loop {
        if bfs.is_running() {
            bfs.step_layer();
        }
        if let Some((path, proof)) = bfs.certificate() {
            return Verdict::Proved { path, proof };
        }
        if models.is_running() {
            if let CountermodelState::Found(c) = models.step_algebra() {
                return Verdict::Refuted(Refutation::Countermodel(c.clone()));
            }
        }
        if !bfs.is_running() && !models.is_running() {
            break;
        }
    }
    if bfs.state() == BfsState::Exhausted {
        Verdict::Refuted(Refutation::RewritingExhausted(bfs.report()))
    } else {
        Verdict::Unknown(UnknownReport {
            bfs: bfs.report(),
            models: models.report(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeductionOutcome {
    /// The least `n` for which `A^n -> B` was proved.
    Witness(u32),
    /// Every `A^n -> B` with `n <= n_max` was refuted.
    NoneUpTo(u32),
    /// No power was proved and some verdict was unknown.
    Unsettled(u32),
}

/// Tries `A^n -> B` for `n = 0, 1, ..., n_max`.
pub fn deduction_search(
    theory: &Theory,
    a: &AttributeMultiset,
    b: &AttributeMultiset,
    n_max: u32,
    budgets: Budgets,
) -> DeductionOutcome {
    let mut settled = true;
    for n in 0..=n_max {
        let Ok(power) = a.checked_power(n, DEFAULT_MULTIPLICITY_CAP) else {
            settled = false;
            break;
        };
        match decide(theory, &Mfd::new(power, b.clone()), budgets) {
            Verdict::Proved { .. } => return DeductionOutcome::Witness(n),
            Verdict::Refuted(_) => {}
            Verdict::Unknown(_) => settled = false,
        }
    }
    if settled {
        DeductionOutcome::NoneUpTo(n_max)
    } else {
        DeductionOutcome::Unsettled(n_max)
    }
}

/// The least `n <= n_max` with `theory |- A^n -> B` proved within budgets.
pub fn deduction_witness(
    theory: &Theory,
    a: &AttributeMultiset,
    b: &AttributeMultiset,
    n_max: u32,
    budgets: Budgets,
) -> Option<u32> {
    match deduction_search(theory, a, b, n_max, budgets) {
        DeductionOutcome::Witness(n) => Some(n),
        _ => None,
    }
}
