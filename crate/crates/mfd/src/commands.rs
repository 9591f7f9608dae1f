//! One function per subcommand. Each takes file contents rather than paths
//! and returns the exit code with both output streams.

use std::fmt::Write as _;

use mfd_core::algebra::{downset_completion, Pomonoid};
use mfd_core::entail::{find_countermodel, CountermodelOutcome};
use mfd_core::member::{member as run_member, MemberError, MemberTrace};
use mfd_core::relational::RankedRelation;
use mfd_core::syntax::format_theory;
use mfd_core::{parse_mfd, parse_theory, Budgets, Mfd, Refutation, Theory, Verdict};
use serde_json::{json, Value as Json};

use crate::decide::decide_concurrent;
use crate::files::{parse_algebra, parse_relation, CompletionFile, FormatError, LoadedAlgebra, LoadedRelation};
use crate::verdict::{countermodel_doc, ModelsDoc, TraceDoc, VerdictDoc};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub budgets: Budgets,
    pub json: bool,
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(code: i32, stdout: String) -> Self {
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

pub fn verdict_exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Proved { .. } => EXIT_HOLDS,
        Verdict::Refuted(_) => EXIT_FAILS,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn theory_arg(text: &str) -> Result<Theory, Output> {
    parse_theory(text).map_err(|e| Output::error(EXIT_USAGE, format_args!("theory: {e}")))
}

fn query_arg(text: &str) -> Result<Mfd, Output> {
    parse_mfd(text).map_err(|e| Output::error(EXIT_USAGE, format_args!("query: {e}")))
}

fn format_error(what: &str, e: FormatError) -> Output {
    let code = if matches!(e, FormatError::Json(_)) { EXIT_USAGE } else { EXIT_DATA };
    Output::error(code, format_args!("{what}: {e}"))
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

macro_rules! tryout {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(out) => return out,
        }
    };
}

fn write_trace(out: &mut String, t: &MemberTrace) {
    let _ = writeln!(out, "fresh variable: {}", t.fresh_var);
    let _ = writeln!(out, "N = {}", t.counter_initial);
    for (i, it) in t.iterations.iter().enumerate() {
        let fired: Vec<String> = it.fired.iter().map(Mfd::to_string).collect();
        let fired = if fired.is_empty() { "nothing".to_string() } else { fired.join(", ") };
        let _ = writeln!(out, "pass {}: W = {}; fired {}", i + 1, it.snapshot, fired);
    }
    let _ = writeln!(out, "N = {} at exit", t.counter_final);
}

fn write_verdict(out: &mut String, query: &Mfd, v: &Verdict, trace: bool) {
    let _ = writeln!(out, "{}: {query}", v.name());
    match v {
        Verdict::Proved { path, proof } => {
            let _ = writeln!(out, "rewrite path ({} steps):", path.len());
            let _ = writeln!(out, "  {}", path.start);
            for s in &path.steps {
                let _ = writeln!(out, "  => {}    by {}", s.result, s.rule);
            }
            let _ = writeln!(out, "certificate:\n  {}", proof.to_sexpr());
        }
        Verdict::Refuted(Refutation::Countermodel(c)) => {
            let _ = writeln!(out, "countermodel over a structure with {} elements:", c.algebra.size());
            let _ = writeln!(out, "{:?}", c.algebra);
            let assignment: Vec<String> = c
                .assignment
                .iter()
                .map(|(a, e)| format!("{a} = {}", c.algebra.name(*e)))
                .collect();
            let _ = writeln!(out, "evaluation: {}", assignment.join(", "));
        }
        Verdict::Refuted(Refutation::MemberAlgorithm(t)) => {
            let _ = writeln!(
                out,
                "the polynomial procedure stopped after {} passes without reaching the consequent",
                t.iterations.len()
            );
            if trace {
                write_trace(out, t);
            }
        }
        Verdict::Refuted(Refutation::RewritingExhausted(r)) => {
            let _ = writeln!(
                out,
                "all {} multisets reachable from the antecedent were visited and none contains the consequent",
                r.nodes
            );
        }
        Verdict::Unknown(u) => {
            let _ = writeln!(
                out,
                "proof search visited {} of {} multisets; countermodel search spent {} of {} evaluations on {} structures up to size {}",
                u.bfs.nodes, u.bfs.budget, u.models.evaluations, u.models.budget, u.models.algebras, u.models.max_size
            );
        }
    }
}

pub fn decide(theory: &str, query: &str, opts: Options) -> Output {
    let theory = tryout!(theory_arg(theory));
    let query = tryout!(query_arg(query));
    let v = decide_concurrent(&theory, &query, opts.budgets);
    let stdout = if opts.json {
        pretty(&VerdictDoc::new(&query, &v))
    } else {
        let mut s = String::new();
        write_verdict(&mut s, &query, &v, opts.trace);
        s
    };
    Output::ok(verdict_exit_code(&v), stdout)
}

pub fn member(theory: &str, query: &str, opts: Options) -> Output {
    let theory = tryout!(theory_arg(theory));
    let query = tryout!(query_arg(query));
    let (result, trace) = match run_member(&theory, &query) {
        Ok(r) => r,
        Err(e @ MemberError::Contracting(_)) => return Output::error(EXIT_DATA, e),
        Err(e @ MemberError::Overflow) => return Output::error(EXIT_UNKNOWN, e),
    };
    let stdout = if opts.json {
        pretty(&json!({ "query": query.to_string(), "result": result, "trace": TraceDoc::new(&trace) }))
    } else {
        let mut s = format!("{result}: {query}\n");
        if opts.trace {
            write_trace(&mut s, &trace);
        }
        s
    };
    Output::ok(if result { EXIT_HOLDS } else { EXIT_FAILS }, stdout)
}

fn check_in<L: Pomonoid>(rel: &RankedRelation<L>, theory: &Theory, opts: Options) -> Output {
    let degree = |e: L::Elem| rel.algebra().format_elem(e);
    for f in theory.formulas() {
        let pairs = match rel.violations(f) {
            Ok(p) => p,
            Err(e) => return Output::error(EXIT_DATA, format_args!("`{f}`: {e}")),
        };
        if pairs.is_empty() {
            continue;
        }
        let stdout = if opts.json {
            let pairs: Vec<Json> = pairs
                .iter()
                .map(|p| json!({ "first": p.first + 1, "second": p.second + 1, "lhs": degree(p.lhs), "rhs": degree(p.rhs) }))
                .collect();
            pretty(&json!({ "holds": false, "formula": f.to_string(), "violations": pairs }))
        } else {
            let mut s = format!("violated: {f}\n");
            for p in &pairs {
                let _ = writeln!(
                    s,
                    "  tuples {} and {}: {} is not below {}",
                    p.first + 1,
                    p.second + 1,
                    degree(p.lhs),
                    degree(p.rhs)
                );
            }
            s
        };
        return Output::ok(EXIT_FAILS, stdout);
    }
    let stdout = if opts.json {
        pretty(&json!({ "holds": true }))
    } else {
        format!("holds: {} formulas over {} tuples\n", theory.len(), rel.len())
    };
    Output::ok(EXIT_HOLDS, stdout)
}

pub fn check(relation: &str, theory: &str, opts: Options) -> Output {
    let theory = tryout!(theory_arg(theory));
    match parse_relation(relation) {
        Ok(LoadedRelation::Interval(r)) => check_in(&r, &theory, opts),
        Ok(LoadedRelation::Finite(r)) => check_in(&r, &theory, opts),
        Err(e) => format_error("relation", e),
    }
}

pub fn countermodel(theory: &str, query: &str, opts: Options) -> Output {
    let theory = tryout!(theory_arg(theory));
    let query = tryout!(query_arg(query));
    let b = opts.budgets;
    match find_countermodel(&theory, &query, b.max_algebra_size, b.model_evaluations) {
        CountermodelOutcome::Refuted(c) => {
            let stdout = if opts.json {
                pretty(&json!({ "query": query.to_string(), "result": "refuted", "countermodel": countermodel_doc(&c) }))
            } else {
                let mut s = String::new();
                write_verdict(&mut s, &query, &Verdict::Refuted(Refutation::Countermodel(c)), false);
                s
            };
            Output::ok(EXIT_FAILS, stdout)
        }
        CountermodelOutcome::Unknown(r) => {
            let stdout = if opts.json {
                pretty(&json!({ "query": query.to_string(), "result": "unknown", "models": ModelsDoc::from(r) }))
            } else {
                let scope = if r.complete { "no countermodel" } else { "no countermodel found within budget" };
                format!(
                    "unknown: {query}\n{scope} among {} structures up to size {} ({} evaluations)\n",
                    r.algebras, r.max_size, r.evaluations
                )
            };
            Output::ok(EXIT_UNKNOWN, stdout)
        }
    }
}

pub fn classify(theory: &str, opts: Options) -> Output {
    let theory = tryout!(theory_arg(theory));
    let contracting: Vec<String> = theory
        .formulas()
        .iter()
        .filter(|f| !f.is_non_contracting())
        .map(Mfd::to_string)
        .collect();
    let trivial: Vec<String> = theory
        .formulas()
        .iter()
        .filter(|f| f.is_trivial())
        .map(Mfd::to_string)
        .collect();
    let stdout = if opts.json {
        pretty(&json!({
            "formulas": theory.len(),
            "non_contracting": contracting.is_empty(),
            "contracting": contracting,
            "trivial": trivial,
        }))
    } else {
        let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
        format!(
            "formulas: {}\nnon-contracting: {}\ncontracting formulas: {}\ntrivial formulas: {}\n",
            theory.len(),
            contracting.is_empty(),
            list(&contracting),
            list(&trivial)
        )
    };
    Output::ok(EXIT_HOLDS, stdout)
}

pub fn boolify(theory: &str, opts: Options) -> Output {
    let theory = tryout!(theory_arg(theory));
    let boolean = theory.booleanize([]);
    let stdout = if opts.json {
        let formulas: Vec<String> = boolean.formulas().iter().map(Mfd::to_string).collect();
        pretty(&json!({ "theory": formulas }))
    } else {
        format_theory(&boolean)
    };
    Output::ok(EXIT_HOLDS, stdout)
}

pub fn complete_algebra(algebra: &str, _opts: Options) -> Output {
    let p = match parse_algebra(algebra) {
        Ok(LoadedAlgebra::Pomonoid(p)) => p,
        Ok(LoadedAlgebra::Lattice(l)) => l.monoid().clone(),
        Ok(LoadedAlgebra::Interval(_)) => {
            return Output::error(EXIT_DATA, "completion needs a finite structure");
        }
        Err(e) => return format_error("structure", e),
    };
    match downset_completion(&p) {
        Ok(c) => Output::ok(EXIT_HOLDS, pretty(&CompletionFile::new(&p, &c))),
        Err(e) => Output::error(EXIT_DATA, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINEAR: &str = "p -> u x\np -> v y\nu y -> q\nv x -> q\n";

    #[test]
    fn exit_codes() {
        let o = Options::default();
        assert_eq!(decide(LINEAR, "p p -> q q", o).code, EXIT_HOLDS);
        assert_eq!(decide(LINEAR, "p ->", o).code, EXIT_USAGE);
        assert_eq!(decide("p -> -> q", "p -> q", o).code, EXIT_USAGE);
        assert_eq!(member("p -> p p", "p -> p p p", o).code, EXIT_HOLDS);
        assert_eq!(member("", "p -> q", o).code, EXIT_FAILS);
        let contracting = member("p q -> q", "p -> q", o);
        assert_eq!(contracting.code, EXIT_DATA);
        assert!(contracting.stderr.contains("p q -> q"));
    }

    #[test]
    fn member_trace_lists_passes() {
        let opts = Options {
            trace: true,
            ..Options::default()
        };
        let out = member("p -> p q", "p -> q", opts);
        assert!(out.stdout.starts_with("true: p -> q\n"));
        assert!(out.stdout.contains("pass 1: W = "));
        assert!(out.stdout.contains("N = "));
    }

    #[test]
    fn classify_and_boolify() {
        let out = classify(LINEAR, Options::default());
        assert!(out.stdout.contains("non-contracting: false"));
        assert!(out.stdout.contains("trivial formulas: none"));
        let out = classify("p q -> p\np -> p q", Options::default());
        assert!(out.stdout.contains("trivial formulas: p q -> p"));
        assert_eq!(boolify("p -> q", Options::default()).stdout, "p -> q\np -> p p\nq -> q q\n");
    }

    #[test]
    fn complete_rejects_the_interval() {
        assert_eq!(complete_algebra("\"product\"", Options::default()).code, EXIT_DATA);
        assert_eq!(complete_algebra("[", Options::default()).code, EXIT_USAGE);
    }
}
