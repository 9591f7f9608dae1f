//! Structured verdicts.
//!
//! Formulas and multisets travel as strings in the theory grammar, proofs as
//! s-expressions, and structures in the format of [`crate::files`].
//! [`VerdictDoc::verify`] rebuilds the verdict and re-checks every
//! certificate it carries against the theory.

use std::collections::BTreeMap;

use mfd_core::entail::{
    bfs_prove, BfsOutcome, BfsReport, Countermodel, CountermodelReport, RewritePath, RewriteStep, UnknownReport,
};
use mfd_core::member::{member, MemberIteration, MemberTrace};
use mfd_core::syntax::ParseError;
use mfd_core::{check_proof, parse_mfd, parse_multiset, Attr, Mfd, ProofTree, Refutation, Theory, Verdict};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::files::{AlgebraFile, FormatError, LoadedAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub rule: String,
    pub remainder: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDoc {
    pub start: String,
    pub steps: Vec<StepDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfsDoc {
    pub nodes: usize,
    pub layers: usize,
    pub budget: usize,
    pub exhausted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelsDoc {
    pub evaluations: u64,
    pub budget: u64,
    pub algebras: usize,
    pub max_size: usize,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationDoc {
    pub snapshot: String,
    pub fired: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub fresh_var: String,
    pub counter_initial: i64,
    pub counter_final: i64,
    pub result: bool,
    pub iterations: Vec<IterationDoc>,
    pub firings: Vec<StepDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationDoc {
    Countermodel {
        algebra: AlgebraFile,
        assignment: BTreeMap<String, String>,
    },
    Member {
        trace: TraceDoc,
    },
    RewritingExhausted {
        bfs: BfsDoc,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VerdictDoc {
    Proved {
        query: String,
        path: PathDoc,
        proof: String,
    },
    Refuted {
        query: String,
        refutation: RefutationDoc,
    },
    Unknown {
        query: String,
        bfs: BfsDoc,
        models: ModelsDoc,
    },
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("`{text}`: {source}")]
    Parse { text: String, source: ParseError },
    #[error("proof: {0}")]
    Sexpr(#[from] mfd_core::proof::SexprError),
    #[error("proof does not check: {0}")]
    Proof(#[from] mfd_core::proof::ProofError),
    #[error("proof concludes `{got}`, not the query `{query}`")]
    WrongConclusion { got: Mfd, query: Mfd },
    #[error("rewrite path: {0}")]
    Path(#[from] mfd_core::entail::PathError),
    #[error("structure: {0}")]
    Algebra(#[from] FormatError),
    #[error("countermodel structure must be a finite pomonoid")]
    NotFinite,
    #[error("`{0}` is not an element of the countermodel")]
    UnknownElement(String),
    #[error("the evaluation does not refute the query in a model of the theory")]
    NotACountermodel,
    #[error("the polynomial procedure does not refute the query")]
    MemberDisagrees,
    #[error("the rewrite graph is not exhausted within the recorded budget")]
    NotExhausted,
}

fn mfd(text: &str) -> Result<Mfd, VerifyError> {
    parse_mfd(text).map_err(|source| VerifyError::Parse {
        text: text.to_string(),
        source,
    })
}

fn multiset(text: &str) -> Result<mfd_core::AttributeMultiset, VerifyError> {
    parse_multiset(text).map_err(|source| VerifyError::Parse {
        text: text.to_string(),
        source,
    })
}

impl StepDoc {
    fn new(s: &RewriteStep) -> Self {
        StepDoc {
            rule: s.rule.to_string(),
            remainder: s.remainder.to_string(),
            result: s.result.to_string(),
        }
    }

    fn to_step(&self) -> Result<RewriteStep, VerifyError> {
        Ok(RewriteStep {
            rule: mfd(&self.rule)?,
            remainder: multiset(&self.remainder)?,
            result: multiset(&self.result)?,
        })
    }
}

impl PathDoc {
    pub fn new(p: &RewritePath) -> Self {
        PathDoc {
            start: p.start.to_string(),
            steps: p.steps.iter().map(StepDoc::new).collect(),
        }
    }

    fn to_path(&self) -> Result<RewritePath, VerifyError> {
        Ok(RewritePath {
            start: multiset(&self.start)?,
            steps: self.steps.iter().map(StepDoc::to_step).collect::<Result<_, _>>()?,
        })
    }
}

impl From<BfsReport> for BfsDoc {
    fn from(r: BfsReport) -> Self {
        BfsDoc {
            nodes: r.nodes,
            layers: r.layers,
            budget: r.budget,
            exhausted: r.exhausted,
        }
    }
}

impl From<BfsDoc> for BfsReport {
    fn from(r: BfsDoc) -> Self {
        BfsReport {
            nodes: r.nodes,
            layers: r.layers,
            budget: r.budget,
            exhausted: r.exhausted,
        }
    }
}

impl From<CountermodelReport> for ModelsDoc {
    fn from(r: CountermodelReport) -> Self {
        ModelsDoc {
            evaluations: r.evaluations,
            budget: r.budget,
            algebras: r.algebras,
            max_size: r.max_size,
            complete: r.complete,
        }
    }
}

impl From<ModelsDoc> for CountermodelReport {
    fn from(r: ModelsDoc) -> Self {
        CountermodelReport {
            evaluations: r.evaluations,
            budget: r.budget,
            algebras: r.algebras,
            max_size: r.max_size,
            complete: r.complete,
        }
    }
}

impl TraceDoc {
    pub fn new(t: &MemberTrace) -> Self {
        TraceDoc {
            fresh_var: t.fresh_var.to_string(),
            counter_initial: t.counter_initial,
            counter_final: t.counter_final,
            result: t.result,
            iterations: t
                .iterations
                .iter()
                .map(|it| IterationDoc {
                    snapshot: it.snapshot.to_string(),
                    fired: it.fired.iter().map(Mfd::to_string).collect(),
                })
                .collect(),
            firings: t.firings.iter().map(StepDoc::new).collect(),
        }
    }

    fn to_trace(&self) -> Result<MemberTrace, VerifyError> {
        Ok(MemberTrace {
            fresh_var: Attr::new(&self.fresh_var),
            counter_initial: self.counter_initial,
            counter_final: self.counter_final,
            result: self.result,
            iterations: self
                .iterations
                .iter()
                .map(|it| {
                    Ok(MemberIteration {
                        snapshot: multiset(&it.snapshot)?,
                        fired: it.fired.iter().map(|f| mfd(f)).collect::<Result<_, _>>()?,
                    })
                })
                .collect::<Result<_, VerifyError>>()?,
            firings: self.firings.iter().map(StepDoc::to_step).collect::<Result<_, _>>()?,
        })
    }
}

pub fn countermodel_doc(c: &Countermodel) -> RefutationDoc {
    RefutationDoc::Countermodel {
        algebra: AlgebraFile::from_pomonoid(&c.algebra),
        assignment: c
            .assignment
            .iter()
            .map(|(a, e)| (a.to_string(), c.algebra.name(*e).to_string()))
            .collect(),
    }
}

impl VerdictDoc {
    pub fn new(query: &Mfd, v: &Verdict) -> Self {
        let query = query.to_string();
        match v {
            Verdict::Proved { path, proof } => VerdictDoc::Proved {
                query,
                path: PathDoc::new(path),
                proof: proof.to_sexpr(),
            },
            Verdict::Refuted(r) => VerdictDoc::Refuted {
                query,
                refutation: match r {
                    Refutation::Countermodel(c) => countermodel_doc(c),
                    Refutation::MemberAlgorithm(t) => RefutationDoc::Member { trace: TraceDoc::new(t) },
                    Refutation::RewritingExhausted(b) => RefutationDoc::RewritingExhausted { bfs: (*b).into() },
                },
            },
            Verdict::Unknown(u) => VerdictDoc::Unknown {
                query,
                bfs: u.bfs.into(),
                models: u.models.into(),
            },
        }
    }

    pub fn query(&self) -> &str {
        match self {
            VerdictDoc::Proved { query, .. } | VerdictDoc::Refuted { query, .. } | VerdictDoc::Unknown { query, .. } => {
                query
            }
        }
    }

    /// Rebuilds the verdict, checking its certificate against `theory`.
    ///
    /// Proofs are re-checked rule by rule, countermodels re-evaluated, a
    /// member refutation re-run, and an exhausted rewrite graph re-searched
    /// under the recorded budget. Unknown verdicts carry nothing to check.
    pub fn verify(&self, theory: &Theory) -> Result<(Mfd, Verdict), VerifyError> {
        let query = mfd(self.query())?;
        let verdict = match self {
            VerdictDoc::Proved { path, proof, .. } => {
                let path = path.to_path()?;
                path.validate(theory)?;
                let proof = ProofTree::from_sexpr(proof)?;
                let got = check_proof(&proof, theory)?;
                if got != query {
                    return Err(VerifyError::WrongConclusion { got, query });
                }
                if path.start != query.antecedent {
                    return Err(VerifyError::WrongConclusion {
                        got: Mfd::new(path.start.clone(), query.consequent.clone()),
                        query,
                    });
                }
                path.to_proof(&query.consequent)?;
                Verdict::Proved { path, proof }
            }
            VerdictDoc::Refuted { refutation, .. } => Verdict::Refuted(match refutation {
                RefutationDoc::Countermodel { algebra, assignment } => {
                    let LoadedAlgebra::Pomonoid(algebra) = algebra.to_algebra()? else {
                        return Err(VerifyError::NotFinite);
                    };
                    let assignment = assignment
                        .iter()
                        .map(|(a, e)| {
                            algebra
                                .element(e)
                                .map(|e| (Attr::new(a), e))
                                .ok_or_else(|| VerifyError::UnknownElement(e.clone()))
                        })
                        .collect::<Result<_, _>>()?;
                    let c = Countermodel { algebra, assignment };
                    if !c.verify(theory, &query) {
                        return Err(VerifyError::NotACountermodel);
                    }
                    Refutation::Countermodel(c)
                }
                RefutationDoc::Member { trace } => {
                    let trace = trace.to_trace()?;
                    match member(theory, &query) {
                        Ok((false, _)) if !trace.result => Refutation::MemberAlgorithm(trace),
                        _ => return Err(VerifyError::MemberDisagrees),
                    }
                }
                RefutationDoc::RewritingExhausted { bfs } => match bfs_prove(theory, &query, bfs.budget) {
                    BfsOutcome::Unknown(r) if r.exhausted => Refutation::RewritingExhausted(r),
                    _ => return Err(VerifyError::NotExhausted),
                },
            }),
            VerdictDoc::Unknown { bfs, models, .. } => Verdict::Unknown(UnknownReport {
                bfs: (*bfs).into(),
                models: (*models).into(),
            }),
        };
        Ok((query, verdict))
    }
}
