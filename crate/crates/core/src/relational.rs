//! Ranked relations: tables whose attributes carry a reflexive similarity
//! with degrees in a pomonoid.
//!
//! Two tuples are similar on a multiset `A` to the degree obtained by
//! multiplying the per-attribute similarities, each raised to its
//! multiplicity in `A`. A relation satisfies `A -> B` when, for every
//! ordered pair of tuples, the degree on `A` is at most the degree on `B`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::algebra::{Evaluation, Pomonoid};
use crate::formula::{Attr, AttributeMultiset, Mfd, Theory};

#[derive(Debug, Clone, PartialEq)]
pub enum Value<E> {
    Scalar(f64),
    Vector(Vec<f64>),
    Token(String),
    /// An element of the structure itself.
    Degree(E),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Scalar,
    /// Real vectors of a fixed dimension.
    Vector(usize),
    Token,
    Degree,
}

impl Domain {
    pub fn admits<E>(self, v: &Value<E>) -> bool {
        match (self, v) {
            (Domain::Scalar, Value::Scalar(x)) => x.is_finite(),
            (Domain::Vector(n), Value::Vector(xs)) => xs.len() == n && xs.iter().all(|x| x.is_finite()),
            (Domain::Token, Value::Token(_)) | (Domain::Degree, Value::Degree(_)) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Similarity<E> {
    /// `exp(-10^-c * d(a, b))` with `d` the Euclidean distance; needs a
    /// structure on the unit interval.
    ExpEuclidean { c: f64 },
    /// The unit on equal values and `other` elsewhere.
    Equality { other: E },
    /// An explicit matrix over a token domain, rows and columns in `domain`
    /// order.
    Table { domain: Vec<String>, degrees: Vec<Vec<E>> },
    /// On degrees: `x ~ x` is the unit, `1 ~ d` and `d ~ 1` are `d`, and
    /// `x ~ y` is `x * y` otherwise.
    UnitAnchored,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSpec<E> {
    pub domain: Domain,
    pub similarity: Similarity<E>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RelationError {
    #[error("attribute `{0}` is not in the scheme")]
    AttributeOutsideScheme(Attr),
    #[error("attribute `{0}` appears twice in the scheme")]
    DuplicateAttribute(Attr),
    #[error("scheme has {scheme} attributes but {specs} specifications")]
    SpecCount { scheme: usize, specs: usize },
    #[error("tuple {tuple} has {got} values, expected {expected}")]
    Arity { tuple: usize, expected: usize, got: usize },
    #[error("tuple {tuple}: value for `{attr}` is outside its domain")]
    OutsideDomain { tuple: usize, attr: Attr },
    #[error("`{attr}`: {reason}")]
    BadSimilarity { attr: Attr, reason: SimilarityProblem },
    #[error("tuple index {0} out of range")]
    TupleOutOfRange(usize),
    #[error("attribute `{0}` has no value in the evaluation")]
    Unassigned(Attr),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimilarityProblem {
    #[error("exp_euclidean needs a structure on the unit interval")]
    NotRealValued,
    #[error("exp_euclidean needs a finite parameter and a numeric domain")]
    BadExpParameter,
    #[error("equality needs an element other than the unit, in the carrier")]
    EqualityElement,
    #[error("table is not square over its domain")]
    TableShape,
    #[error("table is not reflexive")]
    NotReflexive,
    #[error("table entry outside the carrier")]
    TableEntry,
    #[error("table needs a token domain")]
    TableDomain,
    #[error("value is not in the table's domain")]
    UnknownToken,
    #[error("unit-anchored similarity needs a degree domain")]
    AnchoredDomain,
}

/// A pair of tuples and the degrees that break `A -> B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairViolation<E> {
    pub first: usize,
    pub second: usize,
    pub lhs: E,
    pub rhs: E,
}

#[derive(Debug, Clone)]
pub struct RankedRelation<L: Pomonoid> {
    algebra: L,
    scheme: Vec<Attr>,
    specs: Vec<AttributeSpec<L::Elem>>,
    tuples: Vec<Vec<Value<L::Elem>>>,
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

impl<L: Pomonoid> RankedRelation<L> {
    /// Checks the scheme, similarities, and every tuple against its domain.
    pub fn new(
        algebra: L,
        scheme: Vec<Attr>,
        specs: Vec<AttributeSpec<L::Elem>>,
        tuples: Vec<Vec<Value<L::Elem>>>,
    ) -> Result<Self, RelationError> {
        if scheme.len() != specs.len() {
            return Err(RelationError::SpecCount {
                scheme: scheme.len(),
                specs: specs.len(),
            });
        }
        for (i, a) in scheme.iter().enumerate() {
            if scheme[..i].contains(a) {
                return Err(RelationError::DuplicateAttribute(a.clone()));
            }
        }
        for (attr, spec) in scheme.iter().zip(&specs) {
            check_similarity(&algebra, spec).map_err(|reason| RelationError::BadSimilarity {
                attr: attr.clone(),
                reason,
            })?;
        }
        let mut rel = RankedRelation {
            algebra,
            scheme,
            specs,
            tuples: Vec::new(),
        };
        for t in tuples {
            rel.push(t)?;
        }
        Ok(rel)
    }

    /// Appends a tuple after checking it against the scheme.
    pub fn push(&mut self, tuple: Vec<Value<L::Elem>>) -> Result<(), RelationError> {
        let index = self.tuples.len();
        if tuple.len() != self.scheme.len() {
            return Err(RelationError::Arity {
                tuple: index,
                expected: self.scheme.len(),
                got: tuple.len(),
            });
        }
        for ((attr, spec), v) in self.scheme.iter().zip(&self.specs).zip(&tuple) {
            let in_domain = spec.domain.admits(v)
                && match v {
                    Value::Degree(d) => self.algebra.contains(*d),
                    _ => true,
                };
            if !in_domain {
                return Err(RelationError::OutsideDomain {
                    tuple: index,
                    attr: attr.clone(),
                });
            }
            if let (Similarity::Table { domain, .. }, Value::Token(t)) = (&spec.similarity, v) {
                if !domain.contains(t) {
                    return Err(RelationError::BadSimilarity {
                        attr: attr.clone(),
                        reason: SimilarityProblem::UnknownToken,
                    });
                }
            }
        }
        self.tuples.push(tuple);
        Ok(())
    }

    pub fn algebra(&self) -> &L {
        &self.algebra
    }

    pub fn scheme(&self) -> &[Attr] {
        &self.scheme
    }

    pub fn specs(&self) -> &[AttributeSpec<L::Elem>] {
        &self.specs
    }

    pub fn tuples(&self) -> &[Vec<Value<L::Elem>>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    fn position(&self, attr: &Attr) -> Result<usize, RelationError> {
        self.scheme
            .iter()
            .position(|a| a == attr)
            .ok_or_else(|| RelationError::AttributeOutsideScheme(attr.clone()))
    }

    fn check_indices(&self, i: usize, j: usize) -> Result<(), RelationError> {
        for k in [i, j] {
            if k >= self.tuples.len() {
                return Err(RelationError::TupleOutOfRange(k));
            }
        }
        Ok(())
    }

    /// Similarity of tuples `i` and `j` on the attribute at `col`.
    fn attribute_similarity(&self, col: usize, i: usize, j: usize) -> L::Elem {
        let l = &self.algebra;
        let (a, b) = (&self.tuples[i][col], &self.tuples[j][col]);
        match &self.specs[col].similarity {
            Similarity::ExpEuclidean { c } => {
                let d = match (a, b) {
                    (Value::Scalar(x), Value::Scalar(y)) => euclidean(&[*x], &[*y]),
                    (Value::Vector(x), Value::Vector(y)) => euclidean(x, y),
                    _ => unreachable!("domains checked on insertion"),
                };
                let degree = libm::exp(-libm::pow(10.0, -c) * d);
                l.degree_from_real(degree).expect("structure checked to be real-valued")
            }
            Similarity::Equality { other } => {
                if a == b {
                    l.unit()
                } else {
                    *other
                }
            }
            Similarity::Table { domain, degrees } => {
                let (Value::Token(x), Value::Token(y)) = (a, b) else {
                    unreachable!("domains checked on insertion")
                };
                let r = domain.iter().position(|t| t == x).expect("token checked");
                let c = domain.iter().position(|t| t == y).expect("token checked");
                degrees[r][c]
            }
            Similarity::UnitAnchored => {
                let (Value::Degree(x), Value::Degree(y)) = (a, b) else {
                    unreachable!("domains checked on insertion")
                };
                let u = l.unit();
                if x == y {
                    u
                } else if *x == u {
                    *y
                } else if *y == u {
                    *x
                } else {
                    l.times(*x, *y)
                }
            }
        }
    }

    /// Degree to which tuples `i` and `j` are similar on all of `a`.
    pub fn tuple_similarity(&self, i: usize, j: usize, a: &AttributeMultiset) -> Result<L::Elem, RelationError> {
        self.check_indices(i, j)?;
        let l = &self.algebra;
        let mut acc = l.unit();
        for (attr, n) in a.iter() {
            let col = self.position(attr)?;
            acc = l.times(acc, l.power(self.attribute_similarity(col, i, j), n));
        }
        Ok(acc)
    }

    /// The first ordered pair, in row-major order, whose degree on the
    /// antecedent exceeds its degree on the consequent; `None` when `f`
    /// holds.
    pub fn satisfies_relation(&self, f: &Mfd) -> Result<Option<PairViolation<L::Elem>>, RelationError> {
        for attr in f.antecedent.support().chain(f.consequent.support()) {
            self.position(attr)?;
        }
        for i in 0..self.tuples.len() {
            for j in 0..self.tuples.len() {
                let lhs = self.tuple_similarity(i, j, &f.antecedent)?;
                let rhs = self.tuple_similarity(i, j, &f.consequent)?;
                if !self.algebra.leq(lhs, rhs) {
                    return Ok(Some(PairViolation {
                        first: i,
                        second: j,
                        lhs,
                        rhs,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Every violating ordered pair, in row-major order.
    pub fn violations(&self, f: &Mfd) -> Result<Vec<PairViolation<L::Elem>>, RelationError> {
        for attr in f.antecedent.support().chain(f.consequent.support()) {
            self.position(attr)?;
        }
        let mut out = Vec::new();
        for i in 0..self.tuples.len() {
            for j in 0..self.tuples.len() {
                let lhs = self.tuple_similarity(i, j, &f.antecedent)?;
                let rhs = self.tuple_similarity(i, j, &f.consequent)?;
                if !self.algebra.leq(lhs, rhs) {
                    out.push(PairViolation {
                        first: i,
                        second: j,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn satisfies(&self, f: &Mfd) -> Result<bool, RelationError> {
        Ok(self.satisfies_relation(f)?.is_none())
    }

    /// The first formula of `theory` that fails, with its violation.
    pub fn first_violation<'t>(
        &self,
        theory: &'t Theory,
    ) -> Result<Option<(&'t Mfd, PairViolation<L::Elem>)>, RelationError> {
        for f in theory.formulas() {
            if let Some(v) = self.satisfies_relation(f)? {
                return Ok(Some((f, v)));
            }
        }
        Ok(None)
    }

    pub fn relation_models(&self, theory: &Theory) -> Result<bool, RelationError> {
        Ok(self.first_violation(theory)?.is_none())
    }

    /// One evaluation per ordered pair `(i, j)`, sending each attribute to
    /// the similarity of the two tuples on it, in row-major order.
    pub fn relation_to_evaluations(&self) -> Vec<Evaluation<'_, L>> {
        let n = self.tuples.len();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = Evaluation::new(&self.algebra);
                for (col, attr) in self.scheme.iter().enumerate() {
                    e.assign(attr.clone(), self.attribute_similarity(col, i, j))
                        .expect("similarities lie in the carrier");
                }
                out.push(e);
            }
        }
        out
    }
}

fn check_similarity<L: Pomonoid>(l: &L, spec: &AttributeSpec<L::Elem>) -> Result<(), SimilarityProblem> {
    match &spec.similarity {
        Similarity::ExpEuclidean { c } => {
            if !c.is_finite() || !matches!(spec.domain, Domain::Scalar | Domain::Vector(_)) {
                return Err(SimilarityProblem::BadExpParameter);
            }
            if l.degree_from_real(1.0).is_none() {
                return Err(SimilarityProblem::NotRealValued);
            }
        }
        Similarity::Equality { other } => {
            if !l.contains(*other) || *other == l.unit() {
                return Err(SimilarityProblem::EqualityElement);
            }
        }
        Similarity::Table { domain, degrees } => {
            if spec.domain != Domain::Token {
                return Err(SimilarityProblem::TableDomain);
            }
            if degrees.len() != domain.len() || degrees.iter().any(|r| r.len() != domain.len()) {
                return Err(SimilarityProblem::TableShape);
            }
            if degrees.iter().flatten().any(|d| !l.contains(*d)) {
                return Err(SimilarityProblem::TableEntry);
            }
            if (0..domain.len()).any(|i| degrees[i][i] != l.unit()) {
                return Err(SimilarityProblem::NotReflexive);
            }
        }
        Similarity::UnitAnchored => {
            if spec.domain != Domain::Degree {
                return Err(SimilarityProblem::AnchoredDomain);
            }
        }
    }
    Ok(())
}

/// The two-tuple relation over `attrs` whose first tuple is all units and
/// whose second carries `e`. It satisfies an MFD over `attrs` exactly when
/// `e` does.
pub fn evaluation_to_relation<'b, L: Pomonoid + Clone>(
    e: &Evaluation<'_, L>,
    attrs: impl IntoIterator<Item = &'b Attr>,
) -> Result<RankedRelation<L>, RelationError> {
    let l = e.algebra();
    let scheme: Vec<Attr> = attrs.into_iter().cloned().collect();
    let mut second = Vec::with_capacity(scheme.len());
    for a in &scheme {
        let v = e
            .get(a.as_str())
            .ok_or_else(|| RelationError::Unassigned(a.clone()))?;
        second.push(Value::Degree(v));
    }
    let first = scheme.iter().map(|_| Value::Degree(l.unit())).collect();
    let specs = scheme
        .iter()
        .map(|_| AttributeSpec {
            domain: Domain::Degree,
            similarity: Similarity::UnitAnchored,
        })
        .collect();
    RankedRelation::new(l.clone(), scheme, specs, alloc::vec![first, second])
}

impl<E: fmt::Debug> fmt::Display for PairViolation<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tuples {} and {}: {:?} is not below {:?}",
            self.first + 1,
            self.second + 1,
            self.lhs,
            self.rhs
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, FinitePomonoid, UnitInterval};
    use crate::syntax::{parse_mfd, parse_multiset};
    use proptest::prelude::*;
    use std::collections::BTreeSet as StdSet;

    type Rel = RankedRelation<UnitInterval>;

    fn listing(extra: bool) -> Rel {
        let spec = |domain, c| AttributeSpec {
            domain,
            similarity: Similarity::ExpEuclidean { c },
        };
        let mut rows = alloc::vec![
            (2510.0, [12.2, 23.4], 810000.0),
            (2730.0, [35.3, 40.0], 650000.0),
            (2850.0, [95.8, 82.3], 625000.0),
            (4250.0, [20.1, 45.7], 925000.0),
        ];
        if extra {
            rows.push((2600.0, [50.0, 50.0], 450000.0));
        }
        let tuples = rows
            .into_iter()
            .map(|(a, l, p)| alloc::vec![Value::Scalar(a), Value::Vector(l.to_vec()), Value::Scalar(p)])
            .collect();
        RankedRelation::new(
            UnitInterval::product(),
            alloc::vec![Attr::new("area"), Attr::new("loc"), Attr::new("price")],
            alloc::vec![spec(Domain::Scalar, 4.0), spec(Domain::Vector(2), 2.0), spec(Domain::Scalar, 6.0)],
            tuples,
        )
        .unwrap()
    }

    /// Independent computation with std floats.
    fn oracle(a: (f64, [f64; 2], f64), b: (f64, [f64; 2], f64), area: u32, loc: u32, price: u32) -> f64 {
        let s_area = (-1e-4 * (a.0 - b.0).abs()).exp();
        let s_loc = (-1e-2 * ((a.1[0] - b.1[0]).powi(2) + (a.1[1] - b.1[1]).powi(2)).sqrt()).exp();
        let s_price = (-1e-6 * (a.2 - b.2).abs()).exp();
        s_area.powi(area as i32) * s_loc.powi(loc as i32) * s_price.powi(price as i32)
    }

    fn sim(r: &Rel, i: usize, j: usize, a: &str) -> f64 {
        r.tuple_similarity(i, j, &parse_multiset(a).unwrap()).unwrap()
    }

    #[test]
    fn worked_degrees() {
        let r = listing(false);
        let t1 = (2510.0, [12.2, 23.4], 810000.0);
        let t2 = (2730.0, [35.3, 40.0], 650000.0);
        assert!((sim(&r, 0, 1, "loc area") - oracle(t1, t2, 1, 1, 0)).abs() < 1e-12);
        assert!((sim(&r, 0, 1, "loc area") - 0.7360).abs() < 5e-5);
        assert!((sim(&r, 0, 1, "price") - 0.8521).abs() < 5e-5);
        assert!((sim(&r, 0, 1, "loc") - 0.7524).abs() < 5e-5);
        assert!((sim(&r, 0, 2, "price") - 0.8311).abs() < 5e-5);
        assert_eq!(sim(&r, 2, 2, "loc area area price"), 1.0);
    }

    #[test]
    fn worked_satisfaction() {
        let r = listing(false);
        assert!(r.satisfies(&parse_mfd("loc area -> price").unwrap()).unwrap());
        let v = r.satisfies_relation(&parse_mfd("price -> loc").unwrap()).unwrap().unwrap();
        assert_eq!((v.first, v.second), (0, 1));
        assert!((v.lhs - 0.8521).abs() < 5e-5 && (v.rhs - 0.7524).abs() < 5e-5);
        assert!((sim(&r, 0, 2, "price") - 0.8311).abs() < 5e-5);
        assert!((sim(&r, 0, 2, "loc") - 0.3596).abs() < 5e-5);
        let all = r.violations(&parse_mfd("price -> loc").unwrap()).unwrap();
        assert!(all.iter().any(|v| (v.first, v.second) == (0, 2)));
        assert_eq!(all[0], v);
    }

    #[test]
    fn inserted_tuple_breaks_and_weakening_repairs() {
        let r = listing(true);
        let v = r.satisfies_relation(&parse_mfd("loc area -> price").unwrap()).unwrap().unwrap();
        assert_eq!((v.first, v.second), (1, 4));
        assert!((v.lhs - 0.8263).abs() < 5e-5 && (v.rhs - 0.8187).abs() < 5e-5);
        assert!(sim(&r, 3, 4, "loc area") > sim(&r, 3, 4, "price"));
        assert!(r.satisfies(&parse_mfd("loc area area -> price").unwrap()).unwrap());
        assert!((sim(&r, 1, 4, "loc area area") - 0.8156).abs() < 5e-5);
        assert!((sim(&r, 3, 4, "loc area area") - 0.5315).abs() < 5e-5);
    }

    #[test]
    fn models_of_theories() {
        let r = listing(false);
        assert!(r.relation_models(&Theory::new()).unwrap());
        let t: Theory = [parse_mfd("loc area -> price").unwrap()].into_iter().collect();
        assert!(r.relation_models(&t).unwrap());
        let t: Theory = ["loc area -> price", "price -> loc"]
            .into_iter()
            .map(|s| parse_mfd(s).unwrap())
            .collect();
        assert!(!r.relation_models(&t).unwrap());
        assert_eq!(
            r.satisfies_relation(&parse_mfd("loc -> tax").unwrap()),
            Err(RelationError::AttributeOutsideScheme(Attr::new("tax")))
        );
    }

    #[test]
    fn pair_evaluations() {
        let r = listing(false);
        let es = r.relation_to_evaluations();
        assert_eq!(es.len(), 16);
        let distinct: StdSet<std::vec::Vec<u64>> = es
            .iter()
            .map(|e| e.iter().map(|(_, v)| v.to_bits()).collect())
            .collect();
        // the four diagonal pairs coincide and the similarities are symmetric
        assert_eq!(distinct.len(), 7);
    }

    #[test]
    fn exp_euclidean_values() {
        let r = listing(false);
        assert!((sim(&r, 0, 1, "price") - (-0.16f64).exp()).abs() < 1e-15);
        for i in 0..4 {
            assert_eq!(sim(&r, i, i, "loc"), 1.0);
        }
    }

    #[test]
    fn construction_errors() {
        let l = UnitInterval::product();
        let scalar = |c| AttributeSpec {
            domain: Domain::Scalar,
            similarity: Similarity::ExpEuclidean { c },
        };
        let err = RankedRelation::new(l, alloc::vec![Attr::new("a")], alloc::vec![scalar(1.0)], alloc::vec![alloc::vec![Value::Vector(alloc::vec![1.0])]]);
        assert!(matches!(err, Err(RelationError::OutsideDomain { tuple: 0, .. })));
        let err = RankedRelation::new(l, alloc::vec![Attr::new("a")], alloc::vec![scalar(f64::NAN)], alloc::vec![]);
        assert!(matches!(err, Err(RelationError::BadSimilarity { reason: SimilarityProblem::BadExpParameter, .. })));
        let vec2 = AttributeSpec {
            domain: Domain::Vector(2),
            similarity: Similarity::ExpEuclidean { c: 2.0 },
        };
        let err = RankedRelation::new(l, alloc::vec![Attr::new("a")], alloc::vec![vec2], alloc::vec![alloc::vec![Value::Vector(alloc::vec![1.0, 2.0, 3.0])]]);
        assert!(matches!(err, Err(RelationError::OutsideDomain { .. })));
        let eq_unit = AttributeSpec {
            domain: Domain::Token,
            similarity: Similarity::Equality { other: 1.0 },
        };
        assert!(RankedRelation::new(l, alloc::vec![Attr::new("a")], alloc::vec![eq_unit], alloc::vec![]).is_err());

        let b = FinitePomonoid::boolean();
        let finite_exp = AttributeSpec {
            domain: Domain::Scalar,
            similarity: Similarity::ExpEuclidean { c: 2.0 },
        };
        assert!(matches!(
            RankedRelation::new(b.clone(), alloc::vec![Attr::new("a")], alloc::vec![finite_exp], alloc::vec![]),
            Err(RelationError::BadSimilarity { reason: SimilarityProblem::NotRealValued, .. })
        ));
        let not_reflexive = AttributeSpec {
            domain: Domain::Token,
            similarity: Similarity::Table {
                domain: alloc::vec!["x".into(), "y".into()],
                degrees: alloc::vec![alloc::vec![Element(1), Element(0)], alloc::vec![Element(0), Element(0)]],
            },
        };
        assert!(matches!(
            RankedRelation::new(b, alloc::vec![Attr::new("a")], alloc::vec![not_reflexive], alloc::vec![]),
            Err(RelationError::BadSimilarity { reason: SimilarityProblem::NotReflexive, .. })
        ));
    }

    #[test]
    fn asymmetric_table_is_accepted() {
        let b = FinitePomonoid::boolean();
        let spec = AttributeSpec {
            domain: Domain::Token,
            similarity: Similarity::Table {
                domain: alloc::vec!["x".into(), "y".into()],
                degrees: alloc::vec![alloc::vec![Element(1), Element(1)], alloc::vec![Element(0), Element(1)]],
            },
        };
        let tok = |s: &str| alloc::vec![Value::Token(s.into())];
        let r = RankedRelation::new(b, alloc::vec![Attr::new("a")], alloc::vec![spec], alloc::vec![tok("x"), tok("y")]).unwrap();
        let a = parse_multiset("a").unwrap();
        assert_eq!(r.tuple_similarity(0, 1, &a).unwrap(), Element(1));
        assert_eq!(r.tuple_similarity(1, 0, &a).unwrap(), Element(0));
        assert!(r.tuple_similarity(0, 5, &a).is_err());
    }

    #[test]
    fn bridge_examples() {
        let l = UnitInterval::product();
        let attrs = [Attr::new("p"), Attr::new("q"), Attr::new("r")];
        let e = Evaluation::constant(&l, &attrs, 1.0).unwrap();
        let r = evaluation_to_relation(&e, &attrs).unwrap();
        assert!(r.satisfies(&parse_mfd("p -> q q r").unwrap()).unwrap());

        let e = Evaluation::new(&l).with("p", 0.5).unwrap().with("q", 0.6).unwrap();
        let pq = [Attr::new("p"), Attr::new("q")];
        let r = evaluation_to_relation(&e, &pq).unwrap();
        assert!(r.satisfies(&parse_mfd("p -> q").unwrap()).unwrap());
        let v = r.satisfies_relation(&parse_mfd("q -> p").unwrap()).unwrap().unwrap();
        assert_eq!((v.lhs, v.rhs), (0.6, 0.5));
        let back = r.relation_to_evaluations();
        assert!(back.iter().any(|b| b.get("p") == Some(0.5) && b.get("q") == Some(0.6)));

        let e = Evaluation::new(&l).with("p", 0.5).unwrap().with("q", 0.6).unwrap().with("r", 0.6).unwrap();
        let r = evaluation_to_relation(&e, &attrs).unwrap();
        assert!(r.satisfies(&parse_mfd("p -> q").unwrap()).unwrap());
        assert!(r.satisfies(&parse_mfd("p -> r").unwrap()).unwrap());
        assert!(!r.satisfies(&parse_mfd("p -> q r").unwrap()).unwrap());
    }

    #[test]
    fn classical_reading_differs() {
        // all prices differ, so price -> loc holds as an ordinary dependency
        let r = listing(false);
        let prices: StdSet<u64> = r.tuples().iter().map(|t| match t[2] {
            Value::Scalar(x) => x.to_bits(),
            _ => unreachable!(),
        }).collect();
        assert_eq!(prices.len(), r.len());
        assert!(!r.satisfies(&parse_mfd("price -> loc").unwrap()).unwrap());
    }

    fn arb_ms() -> impl Strategy<Value = AttributeMultiset> {
        proptest::collection::vec(0u32..3, 4)
            .prop_map(|c| AttributeMultiset::from_counts(["p", "q", "r", "s"].into_iter().zip(c)))
    }

    proptest! {
        #[test]
        fn bridge_preserves_satisfaction(
            vals in proptest::collection::vec(0.0f64..=1.0, 4),
            a in arb_ms(),
            b in arb_ms(),
        ) {
            let l = UnitInterval::product();
            let attrs = [Attr::new("p"), Attr::new("q"), Attr::new("r"), Attr::new("s")];
            let mut e = Evaluation::new(&l);
            for (attr, v) in attrs.iter().zip(&vals) {
                e.assign(attr.clone(), *v).unwrap();
            }
            let f = Mfd::new(a, b);
            let r = evaluation_to_relation(&e, &attrs).unwrap();
            prop_assert_eq!(r.satisfies(&f).unwrap(), e.satisfies(&f).unwrap());
        }

        #[test]
        fn decomposition_and_multiplicativity(
            rows in proptest::collection::vec((0.0f64..1000.0, 0.0f64..50.0, 0.0f64..50.0), 1..5),
            a in arb_ms(),
            b in arb_ms(),
        ) {
            let spec = |domain, c| AttributeSpec { domain, similarity: Similarity::ExpEuclidean { c } };
            let tuples = rows
                .iter()
                .map(|&(x, y, z)| alloc::vec![
                    Value::Scalar(x),
                    Value::Vector(alloc::vec![y, z]),
                    Value::Scalar(y - z),
                    Value::Scalar(x * 0.5),
                ])
                .collect();
            let r = RankedRelation::new(
                UnitInterval::product(),
                ["p", "q", "r", "s"].into_iter().map(Attr::new).collect(),
                alloc::vec![
                    spec(Domain::Scalar, 2.0),
                    spec(Domain::Vector(2), 1.0),
                    spec(Domain::Scalar, 0.0),
                    spec(Domain::Scalar, 3.0),
                ],
                tuples,
            )
            .unwrap();
            let f = Mfd::new(a.clone(), b.clone());
            let by_pairs = r.relation_to_evaluations().iter().all(|e| e.satisfies(&f).unwrap());
            prop_assert_eq!(r.satisfies(&f).unwrap(), by_pairs);
            for i in 0..r.len() {
                let ab = r.tuple_similarity(i, 0, &a.union(&b)).unwrap();
                let prod = r.tuple_similarity(i, 0, &a).unwrap() * r.tuple_similarity(i, 0, &b).unwrap();
                prop_assert!((ab - prod).abs() <= 1e-12);
                prop_assert_eq!(r.tuple_similarity(i, i, &a).unwrap(), 1.0);
            }
        }

        #[test]
        fn equality_similarity_implies_classical_dependency(
            rows in proptest::collection::vec(proptest::collection::vec(0u8..2, 3), 1..6),
            lhs in proptest::collection::vec(0u32..2, 3),
            rhs in proptest::collection::vec(0u32..2, 3),
        ) {
            let b = FinitePomonoid::boolean();
            let names = ["p", "q", "r"];
            let spec = AttributeSpec { domain: Domain::Token, similarity: Similarity::Equality { other: Element(0) } };
            let tuples: Vec<_> = rows
                .iter()
                .map(|row| row.iter().map(|&v| Value::Token(if v == 0 { "x".into() } else { "y".into() })).collect())
                .collect();
            let r = RankedRelation::new(
                b,
                names.iter().map(|n| Attr::new(n)).collect(),
                alloc::vec![spec.clone(), spec.clone(), spec],
                tuples,
            )
            .unwrap();
            let f = Mfd::new(
                AttributeMultiset::from_counts(names.into_iter().zip(lhs.iter().copied())),
                AttributeMultiset::from_counts(names.into_iter().zip(rhs.iter().copied())),
            );
            if r.satisfies(&f).unwrap() {
                for t1 in &rows {
                    for t2 in &rows {
                        let agree = |side: &[u32]| (0..3).all(|k| side[k] == 0 || t1[k] == t2[k]);
                        prop_assert!(!agree(&lhs) || agree(&rhs));
                    }
                }
            }
        }
    }
}
