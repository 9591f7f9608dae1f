//! Structures of truth degrees and evaluation of formulas in them.
//!
//! Every structure here is an integral commutative pomonoid: a partial order
//! with a commutative, associative, monotone multiplication whose unit is the
//! greatest element. Formulas only ever need this much; residuated lattices
//! appear as the target of the downset completion.

use alloc::string::String;
use core::fmt;

mod completion;
mod enumerate;
mod eval;
pub(crate) mod finite;
mod interval;

pub use completion::{downset_completion, Completion, MAX_COMPLETION_CARRIER};
pub use enumerate::{
    enumerate_pomonoids, enumerate_pomonoids_with_cap, PomonoidEnumerator, DEFAULT_ENUMERATION_CAP,
};
pub use eval::{EvalError, Evaluation};
pub use finite::{
    pomonoid_from_hasse, AlgebraError, Axiom, FinitePomonoid, FiniteResiduatedLattice, ShapeError,
    Violation,
};
pub use interval::{TNorm, UnitInterval};

/// An integral commutative partially ordered monoid.
pub trait Pomonoid {
    type Elem: Copy + PartialEq + fmt::Debug;

    fn unit(&self) -> Self::Elem;
    fn times(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool;
    /// Whether `a` belongs to the carrier.
    fn contains(&self, a: Self::Elem) -> bool;

    /// `a^n`, with `a^0` the unit.
    fn power(&self, a: Self::Elem, mut n: u32) -> Self::Elem {
        let mut acc = self.unit();
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.times(acc, base);
            }
            n >>= 1;
            if n > 0 {
                base = self.times(base, base);
            }
        }
        acc
    }

    /// Converts a real degree in `[0, 1]` to an element, for structures whose
    /// carrier is the unit interval.
    fn degree_from_real(&self, _x: f64) -> Option<Self::Elem> {
        None
    }

    fn format_elem(&self, a: Self::Elem) -> String;
}

/// An element of a finite structure, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
