use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::formula::{AttributeMultiset, Mfd, Theory, DEFAULT_MULTIPLICITY_CAP};
use crate::proof::{derive_pro, derive_ref, derive_rwt, ProofError, ProofTree};

/// One application `EG => FG` of a rule `E -> F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Mfd,
    /// The untouched part `G`.
    pub remainder: AttributeMultiset,
    /// `F · G`.
    pub result: AttributeMultiset,
}

impl RewriteStep {
    /// The multiset the step starts from, `E · G`.
    pub fn source(&self) -> AttributeMultiset {
        self.rule.antecedent.union(&self.remainder)
    }
}

/// One successor per formula of `theory` whose antecedent divides `w`, in
/// theory order. Successors whose multiplicities would overflow are left out.
pub fn rewrite_successors(w: &AttributeMultiset, theory: &Theory) -> Vec<RewriteStep> {
    let mut out = Vec::new();
    for rule in theory.formulas() {
        if let Some(remainder) = rule.antecedent.divides(w) {
            if let Ok(result) = rule.consequent.checked_union(&remainder, DEFAULT_MULTIPLICITY_CAP) {
                out.push(RewriteStep {
                    rule: rule.clone(),
                    remainder,
                    result,
                });
            }
        }
    }
    out
}

/// Whether some rule's successor of `w` was dropped for overflow.
pub(crate) fn has_overflowing_successor(w: &AttributeMultiset, theory: &Theory) -> bool {
    theory.formulas().iter().any(|rule| {
        rule.antecedent.divides(w).is_some_and(|rem| {
            rule.consequent
                .checked_union(&rem, DEFAULT_MULTIPLICITY_CAP)
                .is_err()
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritePath {
    pub start: AttributeMultiset,
    pub steps: Vec<RewriteStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    /// Step `index` does not start where the previous one ended, or its
    /// parts are inconsistent.
    #[error("rewrite step {index} is inconsistent")]
    Broken { index: usize },
    #[error("rewrite step {index} uses a rule outside the theory")]
    RuleNotInTheory { index: usize },
    /// The goal does not divide the final multiset.
    #[error("goal is not contained in the final multiset")]
    GoalMissing,
    #[error(transparent)]
    Proof(ProofError),
}

impl RewritePath {
    pub fn empty(start: AttributeMultiset) -> Self {
        RewritePath {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> &AttributeMultiset {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// The multisets visited, start included.
    pub fn states(&self) -> impl Iterator<Item = &AttributeMultiset> + '_ {
        core::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.result))
    }

    /// Checks every step against `theory`.
    pub fn validate(&self, theory: &Theory) -> Result<(), PathError> {
        let mut current = &self.start;
        for (index, step) in self.steps.iter().enumerate() {
            if !theory.contains(&step.rule) {
                return Err(PathError::RuleNotInTheory { index });
            }
            if step.source() != *current || step.rule.consequent.union(&step.remainder) != step.result {
                return Err(PathError::Broken { index });
            }
            current = &step.result;
        }
        Ok(())
    }

    /// Turns a path from `A` to a multiset containing `goal` into a proof of
    /// `A -> goal`: reflexivity, one rewriting rule per step, then
    /// projection.
    pub fn to_proof(&self, goal: &AttributeMultiset) -> Result<ProofTree, PathError> {
        if goal.divides(self.end()).is_none() {
            return Err(PathError::GoalMissing);
        }
        let mut proof = derive_ref(&self.start);
        for step in &self.steps {
            proof = derive_rwt(proof, ProofTree::hyp(step.rule.clone())).map_err(PathError::Proof)?;
        }
        derive_pro(proof, goal).map_err(PathError::Proof)
    }
}

impl fmt::Display for RewritePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for s in &self.steps {
            write!(f, " => {}", s.result)?;
        }
        Ok(())
    }
}
