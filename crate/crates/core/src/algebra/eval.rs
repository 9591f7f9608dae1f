use alloc::collections::BTreeMap;

use thiserror::Error;

use super::Pomonoid;
use crate::formula::{Attr, AttributeMultiset, Mfd, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("attribute `{0}` has no value")]
    Unassigned(Attr),
    #[error("value for `{0}` is not in the carrier")]
    NotInCarrier(Attr),
}

/// An assignment of degrees to attributes in a fixed structure.
pub struct Evaluation<'a, L: Pomonoid> {
    algebra: &'a L,
    assignment: BTreeMap<Attr, L::Elem>,
}

impl<'a, L: Pomonoid> Clone for Evaluation<'a, L> {
    fn clone(&self) -> Self {
        Evaluation {
            algebra: self.algebra,
            assignment: self.assignment.clone(),
        }
    }
}

impl<'a, L: Pomonoid> core::fmt::Debug for Evaluation<'a, L> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_map().entries(self.assignment.iter()).finish()
    }
}

impl<'a, L: Pomonoid> Evaluation<'a, L> {
    pub fn new(algebra: &'a L) -> Self {
        Evaluation {
            algebra,
            assignment: BTreeMap::new(),
        }
    }

    /// Assigns every attribute of `attrs` the same value.
    pub fn constant<'b>(
        algebra: &'a L,
        attrs: impl IntoIterator<Item = &'b Attr>,
        value: L::Elem,
    ) -> Result<Self, EvalError> {
        let mut e = Self::new(algebra);
        for a in attrs {
            e.assign(a.clone(), value)?;
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &'a L {
        self.algebra
    }

    pub fn assign(&mut self, attr: impl Into<Attr>, value: L::Elem) -> Result<(), EvalError> {
        let attr = attr.into();
        if !self.algebra.contains(value) {
            return Err(EvalError::NotInCarrier(attr));
        }
        self.assignment.insert(attr, value);
        Ok(())
    }

    /// Builder form of [`assign`](Self::assign).
    pub fn with(mut self, attr: impl Into<Attr>, value: L::Elem) -> Result<Self, EvalError> {
        self.assign(attr, value)?;
        Ok(self)
    }

    pub fn get(&self, attr: &str) -> Option<L::Elem> {
        self.assignment.get(attr).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Attr, L::Elem)> + '_ {
        self.assignment.iter().map(|(a, &v)| (a, v))
    }

    /// `e(A)`: the product of `e(p)^A(p)` over the support of `A`. The empty
    /// multiset evaluates to the unit.
    pub fn evaluate(&self, a: &AttributeMultiset) -> Result<L::Elem, EvalError> {
        let l = self.algebra;
        a.iter().try_fold(l.unit(), |acc, (attr, n)| {
            let v = self
                .get(attr.as_str())
                .ok_or_else(|| EvalError::Unassigned(attr.clone()))?;
            Ok(l.times(acc, l.power(v, n)))
        })
    }

    /// `e(A) <= e(B)`.
    pub fn satisfies(&self, f: &Mfd) -> Result<bool, EvalError> {
        let lhs = self.evaluate(&f.antecedent)?;
        let rhs = self.evaluate(&f.consequent)?;
        Ok(self.algebra.leq(lhs, rhs))
    }

    pub fn is_model(&self, theory: &Theory) -> Result<bool, EvalError> {
        for f in theory.formulas() {
            if !self.satisfies(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
