//! Polynomial decision procedure for non-contracting theories.
//!
//! With `Delta = Gamma + {B -> B y}` for a fresh `y`, the working multiset
//! `W` starts at `A` and every pass tries each rule of `Delta` once, in
//! order, replacing `W = E X` by `F X`. Non-contracting rules never remove
//! occurrences, so a rule that fires once fires in every later pass. The
//! loop stops when a pass changes nothing, when the pass counter runs out,
//! or when `y` appears; `A -> B` is provable exactly in the last case.

use alloc::vec::Vec;

use thiserror::Error;

use crate::entail::{RewritePath, RewriteStep};
use crate::formula::{fresh_attr, Attr, AttributeMultiset, Mfd, Theory, DEFAULT_MULTIPLICITY_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MemberError {
    #[error("`{0}` is contracting: its antecedent is not contained in its consequent")]
    Contracting(Mfd),
    #[error("multiplicity overflow while rewriting")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberIteration {
    /// `W` at the end of the pass.
    pub snapshot: AttributeMultiset,
    pub fired: Vec<Mfd>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberTrace {
    pub fresh_var: Attr,
    pub counter_initial: i64,
    pub iterations: Vec<MemberIteration>,
    pub counter_final: i64,
    pub result: bool,
    /// Every firing in order, the closing `B -> B y` included.
    pub firings: Vec<RewriteStep>,
}

impl MemberTrace {
    /// The firings of theory rules as a rewrite path from `A` to a multiset
    /// containing `B`, when the result is true.
    pub fn rewrite_path(&self, start: &AttributeMultiset) -> Option<RewritePath> {
        if !self.result {
            return None;
        }
        let steps = self.firings[..self.firings.len() - 1].to_vec();
        Some(RewritePath {
            start: start.clone(),
            steps,
        })
    }
}

/// Decides `theory |- query` for a non-contracting theory.
pub fn member(theory: &Theory, query: &Mfd) -> Result<(bool, MemberTrace), MemberError> {
    if let Some(f) = theory.first_contracting() {
        return Err(MemberError::Contracting(f.clone()));
    }
    let mut used = theory.variables();
    used.extend(query.variables());
    let y = fresh_attr(&used);
    let b = &query.consequent;
    let by = b.union(&AttributeMultiset::singleton(y.clone()));
    let delta: Vec<Mfd> = theory
        .formulas()
        .iter()
        .cloned()
        .chain(core::iter::once(Mfd::new(b.clone(), by)))
        .collect();

    let mut w = query.antecedent.clone();
    let counter_initial: i64 = delta.iter().map(|f| f.antecedent.size() as i64).sum();
    let mut n = counter_initial;
    let mut iterations = Vec::new();
    let mut firings = Vec::new();
    loop {
        let last = w.clone();
        let mut fired = Vec::new();
        for rule in &delta {
            if let Some(x) = rule.antecedent.divides(&w) {
                let next = rule
                    .consequent
                    .checked_union(&x, DEFAULT_MULTIPLICITY_CAP)
                    .map_err(|_| MemberError::Overflow)?;
                firings.push(RewriteStep {
                    rule: rule.clone(),
                    remainder: x,
                    result: next.clone(),
                });
                fired.push(rule.clone());
                w = next;
            }
        }
        n -= 1;
        iterations.push(MemberIteration {
            snapshot: w.clone(),
            fired,
        });
        if last == w || n <= 0 || w.get(y.as_str()) > 0 {
            break;
        }
    }
    let result = w.get(y.as_str()) > 0;
    Ok((
        result,
        MemberTrace {
            fresh_var: y,
            counter_initial,
            iterations,
            counter_final: n,
            result,
            firings,
        },
    ))
}
