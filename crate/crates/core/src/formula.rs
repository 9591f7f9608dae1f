//! Attribute multisets, MFDs, and theories.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use thiserror::Error;

/// Largest multiplicity an attribute may reach unless a caller asks for a
/// different cap.
pub const DEFAULT_MULTIPLICITY_CAP: u32 = i32::MAX as u32;

/// An attribute (propositional variable) name.
///
/// Names are case-sensitive. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attr(Arc<str>);

impl Attr {
    pub fn new(name: &str) -> Self {
        Attr(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Attr {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Attr {
    fn from(name: &str) -> Self {
        Attr::new(name)
    }
}

impl fmt::Debug for Attr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for Attr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("multiplicity of `{attr}` exceeds the cap {cap}")]
    MultiplicityOverflow { attr: Attr, cap: u32 },
}

/// A finite multiset of attributes.
///
/// Only attributes with positive multiplicity are stored, so two multisets
/// are equal exactly when they agree on every attribute. The empty multiset
/// is the top formula `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttributeMultiset {
    entries: BTreeMap<Attr, u32>,
}

impl AttributeMultiset {
    /// The empty multiset.
    pub fn top() -> Self {
        Self::default()
    }

    pub fn singleton(attr: impl Into<Attr>) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(attr.into(), 1);
        AttributeMultiset { entries }
    }

    /// Builds a multiset from `(attribute, multiplicity)` pairs. Repeated
    /// attributes add up and zero multiplicities are dropped.
    ///
    /// Panics if a multiplicity exceeds [`DEFAULT_MULTIPLICITY_CAP`].
    pub fn from_counts<A: Into<Attr>>(pairs: impl IntoIterator<Item = (A, u32)>) -> Self {
        let mut ms = AttributeMultiset::top();
        for (attr, count) in pairs {
            ms.add(attr.into(), count, DEFAULT_MULTIPLICITY_CAP)
                .expect("multiplicity overflow");
        }
        ms
    }

    /// Builds a multiset with one occurrence per listed attribute.
    pub fn from_attrs<A: Into<Attr>>(attrs: impl IntoIterator<Item = A>) -> Self {
        Self::from_counts(attrs.into_iter().map(|a| (a, 1)))
    }

    pub(crate) fn add(&mut self, attr: Attr, count: u32, cap: u32) -> Result<(), FormulaError> {
        if count == 0 {
            return Ok(());
        }
        let slot = self.entries.entry(attr.clone()).or_insert(0);
        match slot.checked_add(count) {
            Some(total) if total <= cap => {
                *slot = total;
                Ok(())
            }
            _ => Err(FormulaError::MultiplicityOverflow { attr, cap }),
        }
    }

    /// Multiplicity of `attr`; zero when absent.
    pub fn get(&self, attr: &str) -> u32 {
        self.entries.get(attr).copied().unwrap_or(0)
    }

    pub fn is_top(&self) -> bool {
        self.entries.is_empty()
    }

    /// Attributes with positive multiplicity.
    pub fn support(&self) -> impl Iterator<Item = &Attr> + '_ {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Attr, u32)> + '_ {
        self.entries.iter().map(|(a, &n)| (a, n))
    }

    /// Number of occurrences counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.entries.values().map(|&n| u64::from(n)).sum()
    }

    /// Pointwise sum, `(AB)(p) = A(p) + B(p)`.
    ///
    /// Panics if a multiplicity exceeds [`DEFAULT_MULTIPLICITY_CAP`]; see
    /// [`checked_union`](Self::checked_union) for the fallible form.
    pub fn union(&self, other: &Self) -> Self {
        self.checked_union(other, DEFAULT_MULTIPLICITY_CAP)
            .expect("multiplicity overflow")
    }

    pub fn checked_union(&self, other: &Self, cap: u32) -> Result<Self, FormulaError> {
        let mut out = self.clone();
        for (attr, n) in other.iter() {
            out.add(attr.clone(), n, cap)?;
        }
        Ok(out)
    }

    /// `n`-fold union of `self` with itself; the zeroth power is top.
    ///
    /// Panics on overflow like [`union`](Self::union).
    pub fn power(&self, n: u32) -> Self {
        self.checked_power(n, DEFAULT_MULTIPLICITY_CAP)
            .expect("multiplicity overflow")
    }

    pub fn checked_power(&self, n: u32, cap: u32) -> Result<Self, FormulaError> {
        if n == 0 {
            return Ok(Self::top());
        }
        let mut entries = BTreeMap::new();
        for (attr, m) in self.iter() {
            match m.checked_mul(n) {
                Some(total) if total <= cap => {
                    entries.insert(attr.clone(), total);
                }
                _ => {
                    return Err(FormulaError::MultiplicityOverflow {
                        attr: attr.clone(),
                        cap,
                    })
                }
            }
        }
        Ok(AttributeMultiset { entries })
    }

    /// Returns `X` with `whole = self · X` when `self` is contained in
    /// `whole` pointwise, and `None` otherwise.
    pub fn divides(&self, whole: &Self) -> Option<Self> {
        if !self.is_submultiset_of(whole) {
            return None;
        }
        let mut entries = BTreeMap::new();
        for (attr, n) in whole.iter() {
            let rest = n - self.get(attr.as_str());
            if rest > 0 {
                entries.insert(attr.clone(), rest);
            }
        }
        Some(AttributeMultiset { entries })
    }

    pub fn is_submultiset_of(&self, other: &Self) -> bool {
        self.iter().all(|(attr, n)| n <= other.get(attr.as_str()))
    }
}

impl fmt::Display for AttributeMultiset {
    /// Space-separated attribute tokens with repetition, or `1` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return f.write_str("1");
        }
        let mut first = true;
        for (attr, n) in self.iter() {
            for _ in 0..n {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{attr}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AttributeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// A monoidal functional dependency `antecedent -> consequent`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mfd {
    pub antecedent: AttributeMultiset,
    pub consequent: AttributeMultiset,
}

impl Mfd {
    pub fn new(antecedent: AttributeMultiset, consequent: AttributeMultiset) -> Self {
        Mfd {
            antecedent,
            consequent,
        }
    }

    /// True iff the formula is an instance of `(Ax)`, i.e. the consequent is
    /// contained in the antecedent. These are exactly the formulas satisfied
    /// by every evaluation in every pomonoid.
    pub fn is_trivial(&self) -> bool {
        self.consequent.is_submultiset_of(&self.antecedent)
    }

    /// True iff the consequent contains the antecedent (`B = AC`).
    pub fn is_non_contracting(&self) -> bool {
        self.antecedent.is_submultiset_of(&self.consequent)
    }

    pub fn variables(&self) -> BTreeSet<Attr> {
        self.antecedent
            .support()
            .chain(self.consequent.support())
            .cloned()
            .collect()
    }
}

impl fmt::Display for Mfd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.antecedent, self.consequent)
    }
}

impl fmt::Debug for Mfd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mfd({self})")
    }
}

/// A finite theory: an ordered list of MFDs.
///
/// Storage keeps duplicates and order; reasoning goes through
/// [`distinct`](Theory::distinct).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Theory {
    formulas: Vec<Mfd>,
}

impl Theory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, f: Mfd) {
        self.formulas.push(f);
    }

    pub fn formulas(&self) -> &[Mfd] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, f: &Mfd) -> bool {
        self.formulas.contains(f)
    }

    /// Formulas in first-occurrence order with duplicates removed.
    pub fn distinct(&self) -> Vec<&Mfd> {
        let mut seen = BTreeSet::new();
        self.formulas.iter().filter(|f| seen.insert(*f)).collect()
    }

    /// Union of the supports of all formulas.
    pub fn variables(&self) -> BTreeSet<Attr> {
        self.formulas.iter().flat_map(Mfd::variables).collect()
    }

    pub fn is_non_contracting(&self) -> bool {
        self.formulas.iter().all(Mfd::is_non_contracting)
    }

    /// First formula whose antecedent is not contained in its consequent.
    pub fn first_contracting(&self) -> Option<&Mfd> {
        self.formulas.iter().find(|f| !f.is_non_contracting())
    }

    /// Adds the idempotence formula `p -> p p` for every variable of the
    /// theory and every attribute in `extra`, in name order.
    ///
    /// Attributes that occur in neither the theory nor the query can never
    /// take part in a rewrite, so restricting to these variables loses
    /// nothing.
    pub fn booleanize<'a>(&self, extra: impl IntoIterator<Item = &'a Attr>) -> Theory {
        let mut vars = self.variables();
        vars.extend(extra.into_iter().cloned());
        let mut out = self.clone();
        for p in vars {
            let single = AttributeMultiset::singleton(p);
            let double = single.power(2);
            out.push(Mfd::new(single, double));
        }
        out
    }
}

impl FromIterator<Mfd> for Theory {
    fn from_iter<I: IntoIterator<Item = Mfd>>(iter: I) -> Self {
        Theory {
            formulas: iter.into_iter().collect(),
        }
    }
}

impl Extend<Mfd> for Theory {
    fn extend<I: IntoIterator<Item = Mfd>>(&mut self, iter: I) {
        self.formulas.extend(iter);
    }
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.formulas).finish()
    }
}

/// Returns the first name `_y0`, `_y1`, ... that is not in `used`.
pub fn fresh_attr(used: &BTreeSet<Attr>) -> Attr {
    (0u64..)
        .map(|i| {
            let mut name = String::from("_y");
            push_decimal(&mut name, i);
            Attr::new(&name)
        })
        .find(|a| !used.contains(a))
        .expect("unbounded name supply")
}

fn push_decimal(out: &mut String, mut n: u64) {
    let mut digits = [0u8; 20];
    let mut len = 0;
    loop {
        digits[len] = b'0' + (n % 10) as u8;
        len += 1;
        n /= 10;
        if n == 0 {
            break;
        }
    }
    for &d in digits[..len].iter().rev() {
        out.push(d as char);
    }
}
