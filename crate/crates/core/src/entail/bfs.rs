use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::rewrite::{has_overflowing_successor, rewrite_successors, RewritePath, RewriteStep};
use crate::formula::{AttributeMultiset, Mfd, Theory};
use crate::proof::{check_proof, ProofTree};

/// Default limit on distinct multisets visited.
pub const DEFAULT_BFS_NODES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfsState {
    Running,
    /// The goal divides the node with this id.
    Found(usize),
    /// Every reachable multiset was visited without meeting the goal.
    Exhausted,
    /// The node budget ran out.
    OutOfBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfsReport {
    pub nodes: usize,
    pub layers: usize,
    pub budget: usize,
    /// The reachable set was finite and fully explored. Together with a
    /// missing goal this shows the query is not provable.
    pub exhausted: bool,
}

#[derive(Debug, Clone)]
struct Node {
    ms: AttributeMultiset,
    parent: Option<(usize, RewriteStep)>,
}

/// Breadth-first search over the rewrite graph, one layer per
/// [`step_layer`](Self::step_layer).
#[derive(Debug, Clone)]
pub struct BfsSearch<'t> {
    theory: &'t Theory,
    goal: AttributeMultiset,
    nodes: Vec<Node>,
    seen: BTreeMap<AttributeMultiset, usize>,
    frontier: Vec<usize>,
    budget: usize,
    layers: usize,
    /// Some successor was dropped for overflow, so exhaustion proves nothing.
    truncated: bool,
    state: BfsState,
}

impl<'t> BfsSearch<'t> {
    pub fn new(theory: &'t Theory, query: &Mfd, budget: usize) -> Self {
        let start = query.antecedent.clone();
        let goal = query.consequent.clone();
        let found = goal.divides(&start).is_some();
        let mut seen = BTreeMap::new();
        seen.insert(start.clone(), 0);
        BfsSearch {
            theory,
            goal,
            nodes: alloc::vec![Node {
                ms: start,
                parent: None,
            }],
            seen,
            frontier: alloc::vec![0],
            budget: budget.max(1),
            layers: 0,
            truncated: false,
            state: if found { BfsState::Found(0) } else { BfsState::Running },
        }
    }

    pub fn state(&self) -> BfsState {
        self.state
    }

    pub fn is_running(&self) -> bool {
        self.state == BfsState::Running
    }

    pub fn nodes_visited(&self) -> usize {
        self.nodes.len()
    }

    pub fn report(&self) -> BfsReport {
        BfsReport {
            nodes: self.nodes.len(),
            layers: self.layers,
            budget: self.budget,
            exhausted: self.state == BfsState::Exhausted,
        }
    }

    /// Expands the whole current frontier.
    pub fn step_layer(&mut self) -> BfsState {
        if self.state != BfsState::Running {
            return self.state;
        }
        let frontier = core::mem::take(&mut self.frontier);
        let mut next = Vec::new();
        for id in frontier {
            let ms = self.nodes[id].ms.clone();
            if has_overflowing_successor(&ms, self.theory) {
                self.truncated = true;
            }
            for step in rewrite_successors(&ms, self.theory) {
                if self.seen.contains_key(&step.result) {
                    continue;
                }
                if self.nodes.len() >= self.budget {
                    self.state = BfsState::OutOfBudget;
                    return self.state;
                }
                let new_id = self.nodes.len();
                let hit = self.goal.divides(&step.result).is_some();
                self.seen.insert(step.result.clone(), new_id);
                self.nodes.push(Node {
                    ms: step.result.clone(),
                    parent: Some((id, step)),
                });
                if hit {
                    self.layers += 1;
                    self.state = BfsState::Found(new_id);
                    return self.state;
                }
                next.push(new_id);
            }
        }
        self.layers += 1;
        if next.is_empty() {
            self.state = if self.truncated {
                BfsState::OutOfBudget
            } else {
                BfsState::Exhausted
            };
        }
        self.frontier = next;
        self.state
    }

    pub fn run(&mut self) -> BfsState {
        while self.step_layer() == BfsState::Running {}
        self.state
    }

    /// The path to a node whose multiset contains the goal, once found.
    pub fn path(&self) -> Option<RewritePath> {
        let BfsState::Found(mut id) = self.state else {
            return None;
        };
        let mut steps = Vec::new();
        while let Some((parent, step)) = &self.nodes[id].parent {
            steps.push(step.clone());
            id = *parent;
        }
        steps.reverse();
        Some(RewritePath {
            start: self.nodes[0].ms.clone(),
            steps,
        })
    }

    /// The path and its checked certificate, once found.
    pub fn certificate(&self) -> Option<(RewritePath, ProofTree)> {
        let path = self.path()?;
        Some(certify(self.theory, &path, &self.goal))
    }
}

/// Builds the proof of `start -> goal` from a path and checks it.
pub(crate) fn certify(theory: &Theory, path: &RewritePath, goal: &AttributeMultiset) -> (RewritePath, ProofTree) {
    let proof = path
        .to_proof(goal)
        .expect("a path ending in a goal container yields a proof");
    let concl = check_proof(&proof, theory).expect("certificates built from theory rules check");
    debug_assert_eq!(concl, Mfd::new(path.start.clone(), goal.clone()));
    (path.clone(), proof)
}

#[derive(Debug, Clone)]
pub enum BfsOutcome {
    Proved { path: RewritePath, proof: ProofTree },
    Unknown(BfsReport),
}

impl BfsOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, BfsOutcome::Proved { .. })
    }
}

/// Searches for `query.antecedent =>* query.consequent · C`, visiting at
/// most `budget` distinct multisets.
pub fn bfs_prove(theory: &Theory, query: &Mfd, budget: usize) -> BfsOutcome {
    let mut search = BfsSearch::new(theory, query, budget);
    search.run();
    match search.certificate() {
        Some((path, proof)) => BfsOutcome::Proved { path, proof },
        None => BfsOutcome::Unknown(search.report()),
    }
}
