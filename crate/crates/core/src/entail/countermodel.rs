use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{
    enumerate_pomonoids, Element, Evaluation, FinitePomonoid, Pomonoid, PomonoidEnumerator,
    DEFAULT_ENUMERATION_CAP,
};
use crate::formula::{Attr, AttributeMultiset, Mfd, Theory};

/// Default limit on assignment nodes visited.
pub const DEFAULT_MODEL_EVALUATIONS: u64 = 1_000_000;

/// A finite structure and evaluation that model a theory and refute a query.
#[derive(Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub algebra: FinitePomonoid,
    pub assignment: Vec<(Attr, Element)>,
}

impl Countermodel {
    pub fn evaluation(&self) -> Evaluation<'_, FinitePomonoid> {
        let mut e = Evaluation::new(&self.algebra);
        for (a, v) in &self.assignment {
            // elements come from the carrier
            let _ = e.assign(a.clone(), *v);
        }
        e
    }

    /// Re-checks the witness with the plain evaluator.
    pub fn verify(&self, theory: &Theory, query: &Mfd) -> bool {
        if self.assignment.iter().any(|(_, v)| !self.algebra.contains(*v)) || !self.algebra.is_valid() {
            return false;
        }
        let e = self.evaluation();
        matches!(
            (e.is_model(theory), e.satisfies(query)),
            (Ok(true), Ok(false))
        )
    }
}

impl fmt::Debug for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Countermodel")
            .field("algebra", &self.algebra)
            .field(
                "assignment",
                &self
                    .assignment
                    .iter()
                    .map(|(a, v)| (a.as_str(), self.algebra.name(*v)))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A side of a formula as `(variable index, multiplicity)` pairs.
type Side = Vec<(usize, u32)>;

#[derive(Debug, Clone)]
struct Compiled {
    lhs: Side,
    rhs: Side,
    /// Number of leading variables that must be assigned to evaluate.
    ready: usize,
}

/// The theory and query over a fixed variable order: query variables first,
/// then the rest of the theory's, each group in name order.
#[derive(Debug, Clone)]
struct Problem {
    vars: Vec<Attr>,
    theory: Vec<Compiled>,
    query: Compiled,
}

impl Problem {
    fn new(theory: &Theory, query: &Mfd) -> Self {
        let mut vars: Vec<Attr> = query.variables().into_iter().collect();
        for v in theory.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let side = |ms: &AttributeMultiset| -> Side {
            ms.iter()
                .map(|(a, n)| (vars.iter().position(|v| v == a).expect("collected above"), n))
                .collect()
        };
        let compile = |f: &Mfd| {
            let lhs = side(&f.antecedent);
            let rhs = side(&f.consequent);
            let ready = lhs.iter().chain(&rhs).map(|&(i, _)| i + 1).max().unwrap_or(0);
            Compiled { lhs, rhs, ready }
        };
        let query = compile(query);
        let theory = theory.distinct().into_iter().map(compile).collect();
        Problem { vars, theory, query }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchResult {
    Found,
    /// The whole space was searched.
    NotFound,
    OutOfBudget,
}

struct AlgebraSearch<'a> {
    l: &'a FinitePomonoid,
    problem: &'a Problem,
    /// Formulas grouped by the depth at which they become checkable.
    checks: Vec<Vec<usize>>,
    values: Vec<usize>,
    budget: u64,
    used: u64,
}

impl<'a> AlgebraSearch<'a> {
    fn new(l: &'a FinitePomonoid, problem: &'a Problem, budget: u64) -> Self {
        let mut checks = alloc::vec![Vec::new(); problem.vars.len() + 1];
        for (i, c) in problem.theory.iter().enumerate() {
            checks[c.ready].push(i);
        }
        AlgebraSearch {
            l,
            problem,
            checks,
            values: alloc::vec![0; problem.vars.len()],
            budget,
            used: 0,
        }
    }

    fn eval(&self, side: &Side) -> usize {
        side.iter().fold(self.l.unit_idx(), |acc, &(v, n)| {
            let p = self.l.power(Element(self.values[v]), n);
            self.l.times_idx(acc, p.0)
        })
    }

    fn holds(&self, c: &Compiled) -> bool {
        self.l.leq_idx(self.eval(&c.lhs), self.eval(&c.rhs))
    }

    /// Whether the partial assignment of `depth` variables can still extend
    /// to a countermodel, judged by the formulas that just became checkable.
    fn consistent(&self, depth: usize) -> bool {
        if self.problem.query.ready == depth && self.holds(&self.problem.query) {
            return false;
        }
        self.checks[depth]
            .iter()
            .all(|&i| self.holds(&self.problem.theory[i]))
    }

    fn run(&mut self) -> SearchResult {
        if !self.consistent(0) {
            return SearchResult::NotFound;
        }
        self.extend(0)
    }

    fn extend(&mut self, depth: usize) -> SearchResult {
        if depth == self.values.len() {
            return SearchResult::Found;
        }
        for v in 0..self.l.size() {
            if self.used >= self.budget {
                return SearchResult::OutOfBudget;
            }
            self.used += 1;
            self.values[depth] = v;
            if self.consistent(depth + 1) {
                match self.extend(depth + 1) {
                    SearchResult::NotFound => {}
                    other => return other,
                }
            }
        }
        SearchResult::NotFound
    }
}

/// Looks for an evaluation in `l` that models `theory` and refutes `query`,
/// visiting at most `budget` assignment nodes. Returns the witness and the
/// number of nodes used.
pub fn refute_in(
    l: &FinitePomonoid,
    theory: &Theory,
    query: &Mfd,
    budget: u64,
) -> (SearchResult, Option<Countermodel>, u64) {
    let problem = Problem::new(theory, query);
    let mut s = AlgebraSearch::new(l, &problem, budget);
    let result = s.run();
    let witness = (result == SearchResult::Found).then(|| Countermodel {
        algebra: l.clone(),
        assignment: problem
            .vars
            .iter()
            .cloned()
            .zip(s.values.iter().map(|&v| Element(v)))
            .collect(),
    });
    (result, witness, s.used)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountermodelReport {
    pub evaluations: u64,
    pub budget: u64,
    pub algebras: usize,
    pub max_size: usize,
    /// Every structure up to `max_size` was searched exhaustively.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountermodelState {
    Running,
    Found(Countermodel),
    /// All structures up to the size limit searched without a witness.
    Exhausted,
    OutOfBudget,
}

/// Countermodel search over all structures up to a size, one structure per
/// [`step_algebra`](Self::step_algebra).
pub struct CountermodelSearch {
    problem: Problem,
    algebras: PomonoidEnumerator,
    max_size: usize,
    budget: u64,
    used: u64,
    tried: usize,
    state: CountermodelState,
}

impl CountermodelSearch {
    /// Sizes above the enumeration cap are clamped to it.
    pub fn new(theory: &Theory, query: &Mfd, max_size: usize, budget: u64) -> Self {
        let max_size = max_size.min(DEFAULT_ENUMERATION_CAP);
        CountermodelSearch {
            problem: Problem::new(theory, query),
            algebras: enumerate_pomonoids(max_size).expect("size clamped to the cap"),
            max_size,
            budget,
            used: 0,
            tried: 0,
            state: CountermodelState::Running,
        }
    }

    pub fn state(&self) -> &CountermodelState {
        &self.state
    }

    pub fn is_running(&self) -> bool {
        self.state == CountermodelState::Running
    }

    pub fn report(&self) -> CountermodelReport {
        CountermodelReport {
            evaluations: self.used,
            budget: self.budget,
            algebras: self.tried,
            max_size: self.max_size,
            complete: self.state == CountermodelState::Exhausted,
        }
    }

    /// Searches the next structure in enumeration order.
    pub fn step_algebra(&mut self) -> &CountermodelState {
        if self.state != CountermodelState::Running {
            return &self.state;
        }
        let Some(l) = self.algebras.next() else {
            self.state = CountermodelState::Exhausted;
            return &self.state;
        };
        self.tried += 1;
        let mut s = AlgebraSearch::new(&l, &self.problem, self.budget - self.used);
        let result = s.run();
        self.used += s.used;
        match result {
            SearchResult::Found => {
                let assignment = self
                    .problem
                    .vars
                    .iter()
                    .cloned()
                    .zip(s.values.iter().map(|&v| Element(v)))
                    .collect();
                self.state = CountermodelState::Found(Countermodel {
                    algebra: l,
                    assignment,
                });
            }
            SearchResult::OutOfBudget => self.state = CountermodelState::OutOfBudget,
            SearchResult::NotFound => {}
        }
        &self.state
    }

    pub fn run(&mut self) -> &CountermodelState {
        while self.is_running() {
            self.step_algebra();
        }
        &self.state
    }
}

#[derive(Debug, Clone)]
pub enum CountermodelOutcome {
    Refuted(Countermodel),
    Unknown(CountermodelReport),
}

/// The first countermodel in enumeration order among structures with at
/// most `max_size` elements.
pub fn find_countermodel(theory: &Theory, query: &Mfd, max_size: usize, budget: u64) -> CountermodelOutcome {
    let mut s = CountermodelSearch::new(theory, query, max_size, budget);
    match s.run().clone() {
        CountermodelState::Found(c) => CountermodelOutcome::Refuted(c),
        _ => CountermodelOutcome::Unknown(s.report()),
    }
}
