//! Embedding a finite pomonoid into the residuated lattice of its downsets.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::finite::{AlgebraError, FinitePomonoid, FiniteResiduatedLattice};
use super::Element;

/// Largest carrier accepted by [`downset_completion`]; downsets are found by
/// scanning all subsets.
pub const MAX_COMPLETION_CARRIER: usize = 16;

/// The completion together with the embedding `h(a) = {x : x <= a}`.
#[derive(Debug, Clone)]
pub struct Completion {
    pub lattice: FiniteResiduatedLattice,
    /// `embedding[a]` is the image of element `a` of the source.
    pub embedding: Vec<Element>,
}

impl Completion {
    pub fn embed(&self, a: Element) -> Element {
        self.embedding[a.0]
    }
}

/// Builds the residuated lattice of downward closed subsets of `p`, ordered
/// by inclusion, with
///
/// - `X * Y = {z : z <= x * y for some x in X, y in Y}`,
/// - `X -> Y = {z : X * {z} is contained in Y}`,
///
/// intersection and union as meet and join, the empty set as bottom, and the
/// whole carrier as unit.
pub fn downset_completion(p: &FinitePomonoid) -> Result<Completion, AlgebraError> {
    let violations = p.validate();
    if !violations.is_empty() {
        return Err(AlgebraError::Invalid(violations));
    }
    let n = p.size();
    if n > MAX_COMPLETION_CARRIER {
        return Err(AlgebraError::TooLarge {
            size: n,
            limit: MAX_COMPLETION_CARRIER,
        });
    }
    let down: Vec<u32> = (0..n)
        .map(|a| (0..n).filter(|&b| p.leq_idx(b, a)).fold(0, |m, b| m | 1 << b))
        .collect();
    let is_downset = |mask: u32| (0..n).all(|a| mask >> a & 1 == 0 || down[a] & !mask == 0);
    let mut sets: Vec<u32> = (0u32..(1u32 << n)).filter(|&m| is_downset(m)).collect();
    sets.sort_by_key(|&m| (m.count_ones(), m));
    let index: BTreeMap<u32, usize> = sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let members = |mask: u32| (0..n).filter(move |&a| mask >> a & 1 == 1);
    let star = |x: u32, y: u32| {
        let mut out = 0;
        for a in members(x) {
            for b in members(y) {
                out |= down[p.times_idx(a, b)];
            }
        }
        out
    };

    let d = sets.len();
    let mut leq = alloc::vec![alloc::vec![false; d]; d];
    let mut times = alloc::vec![alloc::vec![0; d]; d];
    let mut meet = alloc::vec![alloc::vec![0; d]; d];
    let mut join = alloc::vec![alloc::vec![0; d]; d];
    let mut residuum = alloc::vec![alloc::vec![0; d]; d];
    for (i, &x) in sets.iter().enumerate() {
        for (j, &y) in sets.iter().enumerate() {
            leq[i][j] = x & !y == 0;
            times[i][j] = index[&star(x, y)];
            meet[i][j] = index[&(x & y)];
            join[i][j] = index[&(x | y)];
            let imp = (0..n)
                .filter(|&z| {
                    let xz = members(x).fold(0, |acc, a| acc | down[p.times_idx(a, z)]);
                    xz & !y == 0
                })
                .fold(0, |m, z| m | 1 << z);
            residuum[i][j] = index[&imp];
        }
    }
    let names: Vec<String> = sets
        .iter()
        .map(|&m| {
            let inner: Vec<&str> = members(m).map(|a| p.names()[a].as_str()).collect();
            alloc::format!("{{{}}}", inner.join(","))
        })
        .collect();
    let monoid = FinitePomonoid::from_tables(names, &leq, &times, d - 1)?;
    let lattice = FiniteResiduatedLattice::from_tables(monoid, &meet, &join, &residuum, 0)?;
    let embedding = down.iter().map(|m| Element(index[m])).collect();
    Ok(Completion { lattice, embedding })
}

#[cfg(test)]
mod tests {
    use super::super::finite::tests::nonlinear_five;
    use super::super::{Axiom, Pomonoid, Violation};
    use super::*;
    use alloc::vec;

    fn assert_embedding(p: &FinitePomonoid, c: &Completion) {
        let l = &c.lattice;
        assert_eq!(c.embed(p.unit()), l.unit());
        for a in p.elements() {
            for b in p.elements() {
                assert_eq!(c.embed(p.times(a, b)), l.times(c.embed(a), c.embed(b)));
                assert_eq!(p.leq(a, b), l.leq(c.embed(a), c.embed(b)));
            }
        }
    }

    #[test]
    fn two_chain_gives_three_downsets() {
        let p = FinitePomonoid::boolean();
        let c = downset_completion(&p).unwrap();
        assert_eq!(c.lattice.size(), 3);
        assert_eq!(c.lattice.monoid().names(), &["{}", "{0}", "{0,1}"]);
        assert_eq!(c.lattice.validate(), vec![]);
        assert_embedding(&p, &c);
    }

    #[test]
    fn point_gives_two_downsets() {
        let p = crate::algebra::enumerate_pomonoids(1).unwrap().next().unwrap();
        let c = downset_completion(&p).unwrap();
        assert_eq!(c.lattice.size(), 2);
        assert!(c.lattice.is_valid());
        assert_eq!(c.embed(p.unit()), c.lattice.unit());
    }

    #[test]
    fn nonlinear_five_gives_seven_downsets() {
        let p = nonlinear_five();
        let c = downset_completion(&p).unwrap();
        assert_eq!(c.lattice.size(), 7);
        assert_eq!(c.lattice.validate(), Vec::<Violation>::new());
        assert_embedding(&p, &c);
    }

    #[test]
    fn adjointness_checked_by_brute_force() {
        // independent of the validator: the residuum is the largest z with x * z <= y
        let p = nonlinear_five();
        let c = downset_completion(&p).unwrap();
        let l = &c.lattice;
        for x in l.monoid().elements() {
            for y in l.monoid().elements() {
                let r = l.residuum(x, y);
                assert!(l.leq(l.times(x, r), y));
                for z in l.monoid().elements() {
                    if l.leq(l.times(x, z), y) {
                        assert!(l.leq(z, r));
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_input_is_rejected() {
        let bad = FinitePomonoid::from_tables(
            vec!["0".into(), "1".into()],
            &[vec![true, true], vec![false, true]],
            &[vec![0, 1], vec![1, 1]],
            0,
        )
        .unwrap();
        match downset_completion(&bad) {
            Err(AlgebraError::Invalid(v)) => assert!(v.iter().any(|v| v.axiom == Axiom::Integrality)),
            other => panic!("expected invalid input, got {other:?}"),
        }
    }
}
