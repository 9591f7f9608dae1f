use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::{Element, Pomonoid};

/// The laws checked by [`FinitePomonoid::validate`] and
/// [`FiniteResiduatedLattice::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    Commutativity,
    Associativity,
    UnitNeutral,
    Monotonicity,
    Integrality,
    MeetIsGreatestLowerBound,
    JoinIsLeastUpperBound,
    BottomIsLeast,
    OrderAgreesWithMeet,
    Adjointness,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::UnitNeutral => "unit-neutral",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Integrality => "integrality",
            Axiom::MeetIsGreatestLowerBound => "meet-glb",
            Axiom::JoinIsLeastUpperBound => "join-lub",
            Axiom::BottomIsLeast => "bottom",
            Axiom::OrderAgreesWithMeet => "order-meet",
            Axiom::Adjointness => "adjointness",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed law together with the element indices that break it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: [usize; 3],
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.witness;
        write!(f, "{} fails at ({a}, {b}, {c})", self.axiom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("the carrier is empty")]
    EmptyCarrier,
    #[error("{table} has {found} rows, expected {expected}")]
    RowCount {
        table: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("row {row} of {table} has {found} entries, expected {expected}")]
    Ragged {
        table: &'static str,
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) of {table} is out of range: {value}")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("{what} element {value} is out of range")]
    DesignatedOutOfRange { what: &'static str, value: usize },
    #[error("{found} element names given for {expected} elements")]
    NameCount { found: usize, expected: usize },
    #[error("element name `{0}` is used twice")]
    DuplicateName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("axioms violated: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("carrier of size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn flatten<T: Copy>(
    table: &'static str,
    rows: &[Vec<T>],
    n: usize,
) -> Result<Vec<T>, ShapeError> {
    if rows.len() != n {
        return Err(ShapeError::RowCount {
            table,
            found: rows.len(),
            expected: n,
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(ShapeError::Ragged {
                table,
                row,
                found: r.len(),
                expected: n,
            });
        }
        flat.extend_from_slice(r);
    }
    Ok(flat)
}

fn check_range(table: &'static str, flat: &[usize], n: usize) -> Result<(), ShapeError> {
    match flat.iter().position(|&v| v >= n) {
        Some(i) => Err(ShapeError::OutOfRange {
            table,
            row: i / n,
            col: i % n,
            value: flat[i],
        }),
        None => Ok(()),
    }
}

fn check_names(names: &[String], n: usize) -> Result<(), ShapeError> {
    if names.len() != n {
        return Err(ShapeError::NameCount {
            found: names.len(),
            expected: n,
        });
    }
    let mut seen = BTreeSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(ShapeError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

/// A finite pomonoid given by its order and multiplication tables.
///
/// Construction only checks the shape of the tables; call
/// [`validate`](FinitePomonoid::validate) to check the laws.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePomonoid {
    names: Vec<String>,
    leq: Vec<bool>,
    times: Vec<usize>,
    unit: usize,
}

impl FinitePomonoid {
    pub fn from_tables(
        names: Vec<String>,
        leq: &[Vec<bool>],
        times: &[Vec<usize>],
        unit: usize,
    ) -> Result<Self, ShapeError> {
        let n = names.len();
        if n == 0 {
            return Err(ShapeError::EmptyCarrier);
        }
        check_names(&names, n)?;
        let leq = flatten("leq", leq, n)?;
        let times = flatten("times", times, n)?;
        check_range("times", &times, n)?;
        if unit >= n {
            return Err(ShapeError::DesignatedOutOfRange {
                what: "unit",
                value: unit,
            });
        }
        Ok(FinitePomonoid {
            names,
            leq,
            times,
            unit,
        })
    }

    /// Builds from flat row-major tables without any checks.
    pub(crate) fn from_raw(names: Vec<String>, leq: Vec<bool>, times: Vec<usize>, unit: usize) -> Self {
        debug_assert_eq!(leq.len(), names.len() * names.len());
        debug_assert_eq!(times.len(), names.len() * names.len());
        FinitePomonoid {
            names,
            leq,
            times,
            unit,
        }
    }

    /// The two-element Boolean chain `0 < 1` with conjunction.
    pub fn boolean() -> Self {
        FinitePomonoid::from_raw(
            alloc::vec!["0".into(), "1".into()],
            alloc::vec![true, true, false, true],
            alloc::vec![0, 0, 0, 1],
            1,
        )
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Element) -> &str {
        &self.names[a.0]
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name).map(Element)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.size()).map(Element)
    }

    #[inline]
    pub(crate) fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size() + b]
    }

    #[inline]
    pub(crate) fn times_idx(&self, a: usize, b: usize) -> usize {
        self.times[a * self.size() + b]
    }

    pub(crate) fn unit_idx(&self) -> usize {
        self.unit
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.size()).map(<[bool]>::to_vec).collect()
    }

    pub fn times_matrix(&self) -> Vec<Vec<usize>> {
        self.times.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    /// True when every two elements are comparable.
    pub fn is_linear(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.leq_idx(a, b) || self.leq_idx(b, a)))
    }

    /// Checks the pomonoid laws and returns one violation per failing law,
    /// each with the first witness found.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.size();
        let le = |a, b| self.leq_idx(a, b);
        let mul = |a, b| self.times_idx(a, b);
        let u = self.unit;
        let mut out = Vec::new();
        let mut report = |axiom, found: Option<[usize; 3]>| {
            if let Some(witness) = found {
                out.push(Violation { axiom, witness });
            }
        };
        let triples = || {
            (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
        };
        report(
            Axiom::Reflexivity,
            (0..n).find(|&a| !le(a, a)).map(|a| [a, a, a]),
        );
        report(
            Axiom::Antisymmetry,
            triples().find(|&[a, b, _]| a != b && le(a, b) && le(b, a)),
        );
        report(
            Axiom::Transitivity,
            triples().find(|&[a, b, c]| le(a, b) && le(b, c) && !le(a, c)),
        );
        report(
            Axiom::Commutativity,
            triples().find(|&[a, b, _]| mul(a, b) != mul(b, a)),
        );
        report(
            Axiom::Associativity,
            triples().find(|&[a, b, c]| mul(mul(a, b), c) != mul(a, mul(b, c))),
        );
        report(
            Axiom::UnitNeutral,
            (0..n)
                .find(|&a| mul(u, a) != a || mul(a, u) != a)
                .map(|a| [a, u, u]),
        );
        report(
            Axiom::Monotonicity,
            triples().find(|&[a, b, c]| le(a, b) && !le(mul(a, c), mul(b, c))),
        );
        report(
            Axiom::Integrality,
            (0..n).find(|&a| !le(a, u)).map(|a| [a, u, u]),
        );
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn validated(self) -> Result<Self, AlgebraError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(AlgebraError::Invalid(violations))
        }
    }

    /// Whether some bijection maps `self` onto `other` preserving the order,
    /// the multiplication, and the unit. Brute force over permutations.
    pub fn is_isomorphic(&self, other: &FinitePomonoid) -> bool {
        let n = self.size();
        if n != other.size() {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if self.maps_onto(other, &perm) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn maps_onto(&self, other: &FinitePomonoid, f: &[usize]) -> bool {
        let n = self.size();
        f[self.unit] == other.unit
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    self.leq_idx(a, b) == other.leq_idx(f[a], f[b])
                        && f[self.times_idx(a, b)] == other.times_idx(f[a], f[b])
                })
            })
    }
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Pomonoid for FinitePomonoid {
    type Elem = Element;

    fn unit(&self) -> Element {
        Element(self.unit)
    }

    fn times(&self, a: Element, b: Element) -> Element {
        Element(self.times_idx(a.0, b.0))
    }

    fn leq(&self, a: Element, b: Element) -> bool {
        self.leq_idx(a.0, b.0)
    }

    fn contains(&self, a: Element) -> bool {
        a.0 < self.size()
    }

    fn format_elem(&self, a: Element) -> String {
        self.names[a.0].clone()
    }
}

impl fmt::Debug for FinitePomonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        writeln!(f, "FinitePomonoid {{ unit: {}", self.names[self.unit])?;
        for a in 0..n {
            let above: Vec<&str> = (0..n)
                .filter(|&b| b != a && self.leq_idx(a, b))
                .map(|b| self.names[b].as_str())
                .collect();
            let row: Vec<&str> = (0..n)
                .map(|b| self.names[self.times_idx(a, b)].as_str())
                .collect();
            writeln!(
                f,
                "  {}: below [{}], times [{}]",
                self.names[a],
                above.join(" "),
                row.join(" ")
            )?;
        }
        write!(f, "}}")
    }
}

/// A finite integral commutative residuated lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteResiduatedLattice {
    monoid: FinitePomonoid,
    meet: Vec<usize>,
    join: Vec<usize>,
    residuum: Vec<usize>,
    bottom: usize,
}

impl FiniteResiduatedLattice {
    pub fn from_tables(
        monoid: FinitePomonoid,
        meet: &[Vec<usize>],
        join: &[Vec<usize>],
        residuum: &[Vec<usize>],
        bottom: usize,
    ) -> Result<Self, ShapeError> {
        let n = monoid.size();
        let meet = flatten("meet", meet, n)?;
        let join = flatten("join", join, n)?;
        let residuum = flatten("residuum", residuum, n)?;
        check_range("meet", &meet, n)?;
        check_range("join", &join, n)?;
        check_range("residuum", &residuum, n)?;
        if bottom >= n {
            return Err(ShapeError::DesignatedOutOfRange {
                what: "bottom",
                value: bottom,
            });
        }
        Ok(FiniteResiduatedLattice {
            monoid,
            meet,
            join,
            residuum,
            bottom,
        })
    }

    pub fn monoid(&self) -> &FinitePomonoid {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    pub fn bottom(&self) -> Element {
        Element(self.bottom)
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        Element(self.meet[a.0 * self.size() + b.0])
    }

    pub fn join(&self, a: Element, b: Element) -> Element {
        Element(self.join[a.0 * self.size() + b.0])
    }

    pub fn residuum(&self, a: Element, b: Element) -> Element {
        Element(self.residuum[a.0 * self.size() + b.0])
    }

    pub fn meet_matrix(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn join_matrix(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn residuum_matrix(&self) -> Vec<Vec<usize>> {
        self.residuum.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    /// Checks the pomonoid laws, the bounded lattice laws, agreement of the
    /// order with the meet, and adjointness for every triple.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.monoid.validate();
        let n = self.size();
        let le = |a, b| self.monoid.leq_idx(a, b);
        let mul = |a, b| self.monoid.times_idx(a, b);
        let meet = |a, b| self.meet[a * n + b];
        let join = |a, b| self.join[a * n + b];
        let res = |a, b| self.residuum[a * n + b];
        let triples =
            || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])));
        let mut report = |axiom, found: Option<[usize; 3]>| {
            if let Some(witness) = found {
                out.push(Violation { axiom, witness });
            }
        };
        report(
            Axiom::MeetIsGreatestLowerBound,
            triples().find(|&[a, b, c]| {
                let m = meet(a, b);
                !le(m, a) || !le(m, b) || (le(c, a) && le(c, b) && !le(c, m))
            }),
        );
        report(
            Axiom::JoinIsLeastUpperBound,
            triples().find(|&[a, b, c]| {
                let j = join(a, b);
                !le(a, j) || !le(b, j) || (le(a, c) && le(b, c) && !le(j, c))
            }),
        );
        report(
            Axiom::BottomIsLeast,
            (0..n).find(|&a| !le(self.bottom, a)).map(|a| [self.bottom, a, a]),
        );
        report(
            Axiom::OrderAgreesWithMeet,
            triples().find(|&[a, b, _]| le(a, b) != (meet(a, b) == a)),
        );
        report(
            Axiom::Adjointness,
            triples().find(|&[a, b, c]| le(mul(a, b), c) != le(a, res(b, c))),
        );
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn validated(self) -> Result<Self, AlgebraError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(AlgebraError::Invalid(violations))
        }
    }
}

impl Pomonoid for FiniteResiduatedLattice {
    type Elem = Element;

    fn unit(&self) -> Element {
        self.monoid.unit()
    }

    fn times(&self, a: Element, b: Element) -> Element {
        self.monoid.times(a, b)
    }

    fn leq(&self, a: Element, b: Element) -> bool {
        self.monoid.leq(a, b)
    }

    fn contains(&self, a: Element) -> bool {
        self.monoid.contains(a)
    }

    fn format_elem(&self, a: Element) -> String {
        self.monoid.format_elem(a)
    }
}

impl fmt::Debug for FiniteResiduatedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteResiduatedLattice {{ size: {}, bottom: {}, monoid: {:?} }}",
            self.size(),
            self.monoid.names[self.bottom],
            self.monoid
        )
    }
}

/// Builds a pomonoid from element names, the covering pairs of its order
/// (`lower < upper`), and a full multiplication table given by names.
///
/// Intended for writing small structures by hand; panics on unknown names.
pub fn pomonoid_from_hasse(
    names: &[&str],
    covers: &[(&str, &str)],
    table: &[&[&str]],
    unit: &str,
) -> FinitePomonoid {
    let n = names.len();
    let idx = |s: &str| {
        names
            .iter()
            .position(|&x| x == s)
            .unwrap_or_else(|| panic!("unknown element {s}"))
    };
    let mut leq = alloc::vec![alloc::vec![false; n]; n];
    for (a, row) in leq.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(lo, hi) in covers {
        leq[idx(lo)][idx(hi)] = true;
    }
    // transitive closure
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let times: Vec<Vec<usize>> = table
        .iter()
        .map(|row| row.iter().map(|&s| idx(s)).collect())
        .collect();
    FinitePomonoid::from_tables(
        names.iter().map(|s| s.to_string()).collect(),
        &leq,
        &times,
        idx(unit),
    )
    .expect("well-shaped tables")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    /// The five-element non-linear pomonoid `0 < a < b, c < 1` with `b` and
    /// `c` incomparable.
    pub(crate) fn nonlinear_five() -> FinitePomonoid {
        pomonoid_from_hasse(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("a", "c"), ("b", "1"), ("c", "1")],
            &[
                &["0", "0", "0", "0", "0"],
                &["0", "0", "0", "0", "a"],
                &["0", "0", "b", "0", "b"],
                &["0", "0", "0", "c", "c"],
                &["0", "a", "b", "c", "1"],
            ],
            "1",
        )
    }

    #[test]
    fn boolean_chain_is_valid() {
        let b = FinitePomonoid::boolean();
        assert!(b.validate().is_empty());
        assert!(b.is_linear());
    }

    #[test]
    fn nonlinear_five_is_valid() {
        let p = nonlinear_five();
        assert_eq!(p.validate(), vec![]);
        assert!(!p.is_linear());
    }

    #[test]
    fn unit_not_greatest_is_reported() {
        // 0 < 1 but the unit is 0, with max as multiplication.
        let p = FinitePomonoid::from_tables(
            vec!["0".into(), "1".into()],
            &[vec![true, true], vec![false, true]],
            &[vec![0, 1], vec![1, 1]],
            0,
        )
        .unwrap();
        let v = p.validate();
        assert!(v.iter().any(|v| v.axiom == Axiom::Integrality && v.witness[0] == 1));
        assert!(matches!(p.validated(), Err(AlgebraError::Invalid(_))));
    }

    #[test]
    fn broken_tables_name_the_law() {
        let p = FinitePomonoid::from_tables(
            vec!["x".into(), "y".into(), "1".into()],
            &[vec![true, false, true], vec![false, true, true], vec![false, false, true]],
            &[vec![0, 0, 0], vec![1, 1, 1], vec![0, 1, 2]],
            2,
        )
        .unwrap();
        let axioms: Vec<Axiom> = p.validate().into_iter().map(|v| v.axiom).collect();
        assert!(axioms.contains(&Axiom::Commutativity));
    }

    #[test]
    fn ragged_tables_are_shape_errors() {
        let e = FinitePomonoid::from_tables(
            vec!["0".into(), "1".into()],
            &[vec![true, true], vec![true]],
            &[vec![0, 0], vec![0, 1]],
            1,
        )
        .unwrap_err();
        assert!(matches!(e, ShapeError::Ragged { table: "leq", row: 1, .. }));
        let e = FinitePomonoid::from_tables(
            vec!["0".into(), "1".into()],
            &[vec![true, true], vec![false, true]],
            &[vec![0, 0], vec![0, 7]],
            1,
        )
        .unwrap_err();
        assert!(matches!(e, ShapeError::OutOfRange { value: 7, .. }));
        assert!(FinitePomonoid::from_tables(vec![], &[], &[], 0).is_err());
        assert!(matches!(
            FinitePomonoid::from_tables(vec!["a".into(), "a".into()], &[], &[], 0),
            Err(ShapeError::DuplicateName(_))
        ));
    }

    #[test]
    fn powers_in_finite_structures() {
        let p = nonlinear_five();
        let b = p.element("b").unwrap();
        assert_eq!(p.power(b, 2), b);
        assert_eq!(p.power(b, 0), p.unit());
        let a = p.element("a").unwrap();
        assert_eq!(p.name(p.power(a, 2)), "0");
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let p = nonlinear_five();
        let q = pomonoid_from_hasse(
            &["1", "c", "b", "a", "0"],
            &[("0", "a"), ("a", "b"), ("a", "c"), ("b", "1"), ("c", "1")],
            &[
                &["1", "c", "b", "a", "0"],
                &["c", "c", "0", "0", "0"],
                &["b", "0", "b", "0", "0"],
                &["a", "0", "0", "0", "0"],
                &["0", "0", "0", "0", "0"],
            ],
            "1",
        );
        assert!(q.is_valid());
        assert!(p.is_isomorphic(&q));
        assert!(!p.is_isomorphic(&FinitePomonoid::boolean()));
    }
}
