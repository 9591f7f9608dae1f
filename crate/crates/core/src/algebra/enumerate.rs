//! Enumeration of finite integral commutative pomonoids up to isomorphism.
//!
//! Structures come out ordered by carrier size, then by order relation, then
//! by multiplication table. The unit is always the last element.
//!
//! For each size the partial orders on the non-unit elements are generated up
//! to isomorphism first, each in a natural labeling (`i < j` implies
//! `i < j` as indices). For a fixed order, multiplication tables are filled by
//! backtracking with monotonicity and associativity checked as soon as the
//! entries involved are known. Two tables on the same order are isomorphic
//! exactly when an automorphism of the order maps one onto the other, so only
//! the table that is smallest in its orbit is kept.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::finite::{next_permutation, AlgebraError, FinitePomonoid};

/// Largest carrier size [`enumerate_pomonoids`] accepts.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

const UNSET: usize = usize::MAX;

/// All integral commutative pomonoids with at most `max_size` elements, one
/// per isomorphism class.
pub fn enumerate_pomonoids(max_size: usize) -> Result<PomonoidEnumerator, AlgebraError> {
    enumerate_pomonoids_with_cap(max_size, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_pomonoids_with_cap(
    max_size: usize,
    cap: usize,
) -> Result<PomonoidEnumerator, AlgebraError> {
    if max_size > cap {
        return Err(AlgebraError::TooLarge {
            size: max_size,
            limit: cap,
        });
    }
    Ok(PomonoidEnumerator {
        max_size,
        size: 0,
        posets: VecDeque::new(),
        batch: VecDeque::new(),
    })
}

/// Pull-based stream of structures; see [`enumerate_pomonoids`].
#[derive(Debug, Clone)]
pub struct PomonoidEnumerator {
    max_size: usize,
    size: usize,
    posets: VecDeque<Poset>,
    batch: VecDeque<FinitePomonoid>,
}

impl Iterator for PomonoidEnumerator {
    type Item = FinitePomonoid;

    fn next(&mut self) -> Option<FinitePomonoid> {
        loop {
            if let Some(p) = self.batch.pop_front() {
                return Some(p);
            }
            if let Some(poset) = self.posets.pop_front() {
                self.batch = tables_over(&poset).into();
                continue;
            }
            if self.size >= self.max_size {
                return None;
            }
            self.size += 1;
            self.posets = posets_up_to_iso(self.size - 1).into();
        }
    }
}

/// A partial order on `m` elements in natural labeling, with its
/// automorphisms.
#[derive(Debug, Clone)]
struct Poset {
    m: usize,
    /// Reflexive order, row-major `m * m`.
    leq: Vec<bool>,
    automorphisms: Vec<Vec<usize>>,
}

impl Poset {
    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.m + b]
    }

    /// The order with the unit adjoined on top, as an `n * n` matrix.
    fn with_top(&self) -> Vec<bool> {
        let n = self.m + 1;
        let mut out = vec![false; n * n];
        for a in 0..self.m {
            for b in 0..self.m {
                out[a * n + b] = self.le(a, b);
            }
            out[a * n + self.m] = true;
        }
        out[n * n - 1] = true;
        out
    }
}

/// The strict pairs `i < j` with `i < j` as indices, in a fixed order.
fn upper_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect()
}

fn relabel_code(leq: &[bool], m: usize, perm: &[usize]) -> Vec<bool> {
    let mut out = vec![false; m * m];
    for a in 0..m {
        for b in 0..m {
            out[perm[a] * m + perm[b]] = leq[a * m + b];
        }
    }
    out
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut out = vec![perm.clone()];
    while next_permutation(&mut perm) {
        out.push(perm.clone());
    }
    out
}

/// One naturally labeled representative per isomorphism class of partial
/// orders on `m` elements, sorted by order matrix.
fn posets_up_to_iso(m: usize) -> Vec<Poset> {
    let pairs = upper_pairs(m);
    let perms = all_permutations(m);
    // canonical code -> smallest naturally labeled matrix in the class
    let mut classes: BTreeMap<Vec<bool>, Vec<bool>> = BTreeMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![false; m * m];
        for a in 0..m {
            leq[a * m + a] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * m + j] = true;
            }
        }
        let transitive = (0..m).all(|a| {
            (0..m).all(|b| (0..m).all(|c| !(leq[a * m + b] && leq[b * m + c]) || leq[a * m + c]))
        });
        if !transitive {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| relabel_code(&leq, m, p))
            .min()
            .expect("at least the identity");
        classes
            .entry(canonical)
            .and_modify(|best| {
                if leq < *best {
                    *best = leq.clone();
                }
            })
            .or_insert(leq);
    }
    // order classes by their matrix with the unit adjoined
    let mut posets: Vec<Poset> = classes
        .into_values()
        .map(|leq| {
            let automorphisms = perms
                .iter()
                .filter(|p| relabel_code(&leq, m, p) == leq)
                .cloned()
                .collect();
            Poset {
                m,
                leq,
                automorphisms,
            }
        })
        .collect();
    posets.sort_by_key(Poset::with_top);
    posets
}

fn element_names(m: usize) -> Vec<String> {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    let mut names: Vec<String> = (0..m)
        .map(|i| String::from(LETTERS[i % LETTERS.len()] as char))
        .collect();
    names.push(String::from("1"));
    names
}

struct TableSearch<'p> {
    poset: &'p Poset,
    n: usize,
    /// Full `n * n` table, `UNSET` where unknown.
    table: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    /// For each pair, the admissible values: common lower bounds.
    candidates: Vec<Vec<usize>>,
    found: Vec<Vec<usize>>,
}

impl<'p> TableSearch<'p> {
    fn new(poset: &'p Poset) -> Self {
        let m = poset.m;
        let n = m + 1;
        let mut table = vec![UNSET; n * n];
        for a in 0..n {
            table[m * n + a] = a;
            table[a * n + m] = a;
        }
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let candidates = pairs
            .iter()
            .map(|&(i, j)| (0..m).filter(|&v| poset.le(v, i) && poset.le(v, j)).collect())
            .collect();
        TableSearch {
            poset,
            n,
            table,
            pairs,
            candidates,
            found: Vec::new(),
        }
    }

    fn le(&self, a: usize, b: usize) -> bool {
        let unit = self.poset.m;
        b == unit || (a != unit && self.poset.le(a, b))
    }

    fn get(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    fn set(&mut self, a: usize, b: usize, v: usize) {
        self.table[a * self.n + b] = v;
        self.table[b * self.n + a] = v;
    }

    /// Monotonicity of `x * y` against known entries in the same column.
    fn monotone_at(&self, x: usize, y: usize) -> bool {
        let v = self.get(x, y);
        for z in 0..self.n {
            let w = self.get(z, y);
            if w == UNSET || z == x {
                continue;
            }
            if self.le(z, x) && !self.le(w, v) {
                return false;
            }
            if self.le(x, z) && !self.le(v, w) {
                return false;
            }
        }
        true
    }

    fn associative_so_far(&self) -> bool {
        let m = self.poset.m;
        for a in 0..m {
            for b in 0..m {
                let ab = self.get(a, b);
                if ab == UNSET {
                    continue;
                }
                for c in 0..m {
                    let bc = self.get(b, c);
                    if bc == UNSET {
                        continue;
                    }
                    let left = self.get(ab, c);
                    let right = self.get(a, bc);
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.pairs.len() {
            if self.is_orbit_minimum() {
                self.found.push(self.table.clone());
            }
            return;
        }
        let (i, j) = self.pairs[k];
        for ci in 0..self.candidates[k].len() {
            let v = self.candidates[k][ci];
            self.set(i, j, v);
            if self.monotone_at(i, j) && self.monotone_at(j, i) && self.associative_so_far() {
                self.run(k + 1);
            }
        }
        self.set(i, j, UNSET);
    }

    fn code(&self, table: &[usize], perm: Option<&[usize]>) -> Vec<usize> {
        let m = self.poset.m;
        let map = |x: usize| match perm {
            Some(p) if x < m => p[x],
            _ => x,
        };
        let mut relabeled = vec![0; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                relabeled[map(a) * self.n + map(b)] = map(table[a * self.n + b]);
            }
        }
        self.pairs
            .iter()
            .map(|&(i, j)| relabeled[i * self.n + j])
            .collect()
    }

    fn is_orbit_minimum(&self) -> bool {
        let own = self.code(&self.table, None);
        self.poset
            .automorphisms
            .iter()
            .all(|p| self.code(&self.table, Some(p)) >= own)
    }
}

fn tables_over(poset: &Poset) -> Vec<FinitePomonoid> {
    let mut search = TableSearch::new(poset);
    search.run(0);
    let leq = poset.with_top();
    let names = element_names(poset.m);
    search
        .found
        .into_iter()
        .map(|times| FinitePomonoid::from_raw(names.clone(), leq.clone(), times, poset.m))
        .collect()
}
