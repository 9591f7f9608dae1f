//! Proof trees over the two primitive rules
//!
//! ```text
//! (Ax)   AB -> B
//! (Cut)  from A -> B and BC -> D infer AC -> D
//! ```
//!
//! plus constructors for the usual derived rules. Every node stores its
//! conclusion; [`check_proof`] recomputes each one instead of trusting it.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::formula::{AttributeMultiset, Mfd, Theory, DEFAULT_MULTIPLICITY_CAP};
use crate::syntax::{parse_mfd, parse_multiset, ParseError};

#[derive(Clone, PartialEq, Eq)]
pub enum ProofTree {
    Hyp(Mfd),
    /// Concludes `rest · kept -> kept`.
    Ax {
        rest: AttributeMultiset,
        kept: AttributeMultiset,
        conclusion: Mfd,
    },
    Cut {
        left: Box<ProofTree>,
        right: Box<ProofTree>,
        conclusion: Mfd,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("hypothesis `{0}` is not in the theory")]
    HypothesisNotInTheory(Mfd),
    #[error("axiom node concludes `{stored}` but its parts give `{expected}`")]
    MalformedAx { stored: Mfd, expected: Mfd },
    #[error("cut of `{left}` into `{right}`: {reason}")]
    CutMismatch {
        left: Mfd,
        right: Mfd,
        reason: CutProblem,
    },
    #[error("`{0}` and `{1}` do not share an antecedent")]
    AntecedentMismatch(Mfd, Mfd),
    #[error("`{part}` does not divide `{whole}`")]
    NotDivisible {
        part: AttributeMultiset,
        whole: AttributeMultiset,
    },
    #[error("multiplicity overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutProblem {
    #[error("left consequent does not divide right antecedent")]
    NotDivisible,
    #[error("stored conclusion `{stored}` differs from `{expected}`")]
    WrongConclusion { stored: Mfd, expected: Mfd },
}

fn union(a: &AttributeMultiset, b: &AttributeMultiset) -> Result<AttributeMultiset, ProofError> {
    a.checked_union(b, DEFAULT_MULTIPLICITY_CAP)
        .map_err(|_| ProofError::Overflow)
}

/// `AC -> D` for a cut of `A -> B` into `P -> D`, with `C = P / B`.
fn cut_conclusion(left: &Mfd, right: &Mfd) -> Result<Option<Mfd>, ProofError> {
    match left.consequent.divides(&right.antecedent) {
        None => Ok(None),
        Some(c) => Ok(Some(Mfd::new(
            union(&left.antecedent, &c)?,
            right.consequent.clone(),
        ))),
    }
}

impl ProofTree {
    pub fn hyp(f: Mfd) -> Self {
        ProofTree::Hyp(f)
    }

    /// The axiom instance `AB -> B`.
    pub fn ax(rest: AttributeMultiset, kept: AttributeMultiset) -> Result<Self, ProofError> {
        let conclusion = Mfd::new(union(&rest, &kept)?, kept.clone());
        Ok(ProofTree::Ax {
            rest,
            kept,
            conclusion,
        })
    }

    pub fn cut(left: ProofTree, right: ProofTree) -> Result<Self, ProofError> {
        let conclusion = cut_conclusion(left.conclusion(), right.conclusion())?.ok_or_else(|| {
            ProofError::CutMismatch {
                left: left.conclusion().clone(),
                right: right.conclusion().clone(),
                reason: CutProblem::NotDivisible,
            }
        })?;
        Ok(ProofTree::Cut {
            left: Box::new(left),
            right: Box::new(right),
            conclusion,
        })
    }

    pub fn conclusion(&self) -> &Mfd {
        match self {
            ProofTree::Hyp(f) => f,
            ProofTree::Ax { conclusion, .. } | ProofTree::Cut { conclusion, .. } => conclusion,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            ProofTree::Hyp(_) | ProofTree::Ax { .. } => 1,
            ProofTree::Cut { left, right, .. } => 1 + left.size() + right.size(),
        }
    }

    /// Hypotheses in left-to-right leaf order, with repeats.
    pub fn hypotheses(&self) -> Vec<&Mfd> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(t) = stack.pop() {
            match t {
                ProofTree::Hyp(f) => out.push(f),
                ProofTree::Ax { .. } => {}
                ProofTree::Cut { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }

    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        write_sexpr(self, &mut out);
        out
    }

    pub fn from_sexpr(text: &str) -> Result<Self, SexprError> {
        let mut p = SexprParser {
            chars: text.char_indices().collect(),
            pos: 0,
        };
        let tree = p.tree()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(tree)
    }
}

impl fmt::Debug for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

/// Verifies every node and returns the root conclusion.
pub fn check_proof(tree: &ProofTree, theory: &Theory) -> Result<Mfd, ProofError> {
    // explicit stack: derived proofs can be deep
    enum Task<'t> {
        Visit(&'t ProofTree),
        Finish(&'t ProofTree),
    }
    let mut tasks = alloc::vec![Task::Visit(tree)];
    let mut done: Vec<Mfd> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Visit(t) => match t {
                ProofTree::Hyp(f) => {
                    if !theory.contains(f) {
                        return Err(ProofError::HypothesisNotInTheory(f.clone()));
                    }
                    done.push(f.clone());
                }
                ProofTree::Ax {
                    rest,
                    kept,
                    conclusion,
                } => {
                    let expected = Mfd::new(union(rest, kept)?, kept.clone());
                    if *conclusion != expected {
                        return Err(ProofError::MalformedAx {
                            stored: conclusion.clone(),
                            expected,
                        });
                    }
                    done.push(expected);
                }
                ProofTree::Cut { left, right, .. } => {
                    tasks.push(Task::Finish(t));
                    tasks.push(Task::Visit(right));
                    tasks.push(Task::Visit(left));
                }
            },
            Task::Finish(t) => {
                let ProofTree::Cut { conclusion, .. } = t else {
                    unreachable!("only cuts are finished")
                };
                let right = done.pop().expect("right premise checked");
                let left = done.pop().expect("left premise checked");
                let expected = cut_conclusion(&left, &right)?.ok_or_else(|| ProofError::CutMismatch {
                    left: left.clone(),
                    right: right.clone(),
                    reason: CutProblem::NotDivisible,
                })?;
                if *conclusion != expected {
                    return Err(ProofError::CutMismatch {
                        left,
                        right,
                        reason: CutProblem::WrongConclusion {
                            stored: conclusion.clone(),
                            expected,
                        },
                    });
                }
                done.push(expected);
            }
        }
    }
    Ok(done.pop().expect("root checked"))
}

/// (Tra): from `A -> B` and `B -> C` infer `A -> C`.
pub fn derive_tra(p1: ProofTree, p2: ProofTree) -> Result<ProofTree, ProofError> {
    if p1.conclusion().consequent != p2.conclusion().antecedent {
        return Err(ProofError::AntecedentMismatch(
            p1.conclusion().clone(),
            p2.conclusion().clone(),
        ));
    }
    ProofTree::cut(p1, p2)
}

/// (Aug): from `A -> B` infer `AC -> BC`.
pub fn derive_aug(p1: ProofTree, c: &AttributeMultiset) -> Result<ProofTree, ProofError> {
    let bc = union(&p1.conclusion().consequent, c)?;
    ProofTree::cut(p1, ProofTree::ax(AttributeMultiset::top(), bc)?)
}

/// (Ref): `A -> A`.
pub fn derive_ref(a: &AttributeMultiset) -> ProofTree {
    ProofTree::ax(AttributeMultiset::top(), a.clone()).expect("no union with top overflows")
}

/// (Rwt): from `A -> BC` and `C -> D` infer `A -> BD`.
pub fn derive_rwt(p1: ProofTree, p2: ProofTree) -> Result<ProofTree, ProofError> {
    let c = &p2.conclusion().antecedent;
    let whole = &p1.conclusion().consequent;
    let b = c.divides(whole).ok_or_else(|| ProofError::NotDivisible {
        part: c.clone(),
        whole: whole.clone(),
    })?;
    let aug = derive_aug(p2, &b)?;
    derive_tra(p1, aug)
}

/// (Pro): from `A -> BC` infer `A -> B`.
pub fn derive_pro(p1: ProofTree, b: &AttributeMultiset) -> Result<ProofTree, ProofError> {
    let whole = &p1.conclusion().consequent;
    let c = b.divides(whole).ok_or_else(|| ProofError::NotDivisible {
        part: b.clone(),
        whole: whole.clone(),
    })?;
    let ax = ProofTree::ax(c, b.clone())?;
    derive_tra(p1, ax)
}

/// From `A -> B` and `A -> C` infer `AA -> BC`.
pub fn derive_weak_additivity(p1: ProofTree, p2: ProofTree) -> Result<ProofTree, ProofError> {
    if p1.conclusion().antecedent != p2.conclusion().antecedent {
        return Err(ProofError::AntecedentMismatch(
            p1.conclusion().clone(),
            p2.conclusion().clone(),
        ));
    }
    let bc = union(&p1.conclusion().consequent, &p2.conclusion().consequent)?;
    // A -> B cut into BC -> BC gives AC -> BC; A -> C cut into that gives AA -> BC
    let inner = ProofTree::cut(p1, ProofTree::ax(AttributeMultiset::top(), bc)?)?;
    ProofTree::cut(p2, inner)
}

fn write_quoted(out: &mut String, s: &str) {
    out.push('"');
    out.push_str(s);
    out.push('"');
}

fn write_sexpr(t: &ProofTree, out: &mut String) {
    use core::fmt::Write;
    match t {
        ProofTree::Hyp(f) => {
            out.push_str("(hyp ");
            let _ = write!(out, "\"{f}\"");
            out.push(')');
        }
        ProofTree::Ax { rest, kept, .. } => {
            out.push_str("(ax ");
            let _ = write!(out, "\"{rest}\" \"{kept}\"");
            out.push(')');
        }
        ProofTree::Cut {
            left,
            right,
            conclusion,
        } => {
            out.push_str("(cut ");
            write_sexpr(left, out);
            out.push(' ');
            write_sexpr(right, out);
            out.push(' ');
            write_quoted(out, &alloc::format!("{conclusion}"));
            out.push(')');
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexprError {
    #[error("offset {offset}: {message}")]
    Syntax { offset: usize, message: &'static str },
    #[error("offset {offset}: {source}")]
    Formula { offset: usize, source: ParseError },
    #[error(transparent)]
    Proof(#[from] ProofError),
}

struct SexprParser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl SexprParser {
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or_else(|| self.chars.last().map_or(0, |&(o, c)| o + c.len_utf8()))
    }

    fn error(&self, message: &'static str) -> SexprError {
        SexprError::Syntax {
            offset: self.offset(),
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SexprError> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some(&(_, got)) if got == c => {
                self.pos += 1;
                Ok(())
            }
            _ if c == '(' => Err(self.error("expected `(`")),
            _ if c == ')' => Err(self.error("expected `)`")),
            _ => Err(self.error("expected `\"`")),
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().map(|&(_, c)| c).collect()
    }

    fn quoted(&mut self) -> Result<(usize, String), SexprError> {
        self.expect('"')?;
        let start = self.offset();
        let mut s = String::new();
        loop {
            match self.chars.get(self.pos) {
                None => return Err(self.error("unterminated string")),
                Some(&(_, '"')) => {
                    self.pos += 1;
                    return Ok((start, s));
                }
                Some(&(_, c)) => {
                    s.push(c);
                    self.pos += 1;
                }
            }
        }
    }

    fn formula(&mut self) -> Result<Mfd, SexprError> {
        let (offset, s) = self.quoted()?;
        parse_mfd(&s).map_err(|source| SexprError::Formula { offset, source })
    }

    fn multiset(&mut self) -> Result<AttributeMultiset, SexprError> {
        let (offset, s) = self.quoted()?;
        parse_multiset(&s).map_err(|source| SexprError::Formula { offset, source })
    }

    fn tree(&mut self) -> Result<ProofTree, SexprError> {
        self.expect('(')?;
        let tree = match self.word().as_str() {
            "hyp" => ProofTree::Hyp(self.formula()?),
            "ax" => {
                let rest = self.multiset()?;
                let kept = self.multiset()?;
                ProofTree::ax(rest, kept)?
            }
            "cut" => {
                let left = self.tree()?;
                let right = self.tree()?;
                let conclusion = self.formula()?;
                // kept as written so that check_proof can reject it
                ProofTree::Cut {
                    left: Box::new(left),
                    right: Box::new(right),
                    conclusion,
                }
            }
            _ => return Err(self.error("expected `hyp`, `ax`, or `cut`")),
        };
        self.expect(')')?;
        Ok(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{enumerate_pomonoids, Evaluation, FinitePomonoid, Pomonoid};
    use crate::formula::Attr;
    use crate::syntax::parse_theory;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(s: &str) -> Mfd {
        parse_mfd(s).unwrap()
    }

    fn ms(s: &str) -> AttributeMultiset {
        parse_multiset(s).unwrap()
    }

    #[test]
    fn ax_shape() {
        let t = ProofTree::ax(ms("p"), ms("q")).unwrap();
        assert_eq!(check_proof(&t, &Theory::new()).unwrap(), m("p q -> q"));
    }

    #[test]
    fn worked_cut() {
        let hyp = m("LOCATION AREA -> PRICE");
        let theory: Theory = [hyp.clone()].into_iter().collect();
        let t = ProofTree::cut(
            ProofTree::hyp(hyp),
            ProofTree::ax(ms("AREA"), ms("PRICE")).unwrap(),
        )
        .unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("LOCATION AREA AREA -> PRICE"));
    }

    #[test]
    fn cut_rejects_non_divisor() {
        let err = ProofTree::cut(ProofTree::hyp(m("p -> q")), ProofTree::hyp(m("r -> s"))).unwrap_err();
        assert!(matches!(
            err,
            ProofError::CutMismatch {
                reason: CutProblem::NotDivisible,
                ..
            }
        ));
    }

    #[test]
    fn checker_rejects_tampering() {
        let theory = parse_theory("p -> q").unwrap();
        let forged = ProofTree::Cut {
            left: Box::new(ProofTree::hyp(m("p -> q"))),
            right: Box::new(derive_ref(&ms("q"))),
            conclusion: m("p -> q q"),
        };
        assert!(matches!(
            check_proof(&forged, &theory),
            Err(ProofError::CutMismatch {
                reason: CutProblem::WrongConclusion { .. },
                ..
            })
        ));
        let bad_ax = ProofTree::Ax {
            rest: ms("p"),
            kept: ms("q"),
            conclusion: m("p -> q"),
        };
        assert!(matches!(check_proof(&bad_ax, &theory), Err(ProofError::MalformedAx { .. })));
        assert_eq!(
            check_proof(&ProofTree::hyp(m("q -> p")), &theory),
            Err(ProofError::HypothesisNotInTheory(m("q -> p")))
        );
    }

    #[test]
    fn tra_cases() {
        let t = derive_tra(ProofTree::hyp(m("p -> q")), ProofTree::hyp(m("q -> r"))).unwrap();
        assert_eq!(t.conclusion(), &m("p -> r"));
        let t = derive_tra(derive_ref(&ms("p")), ProofTree::hyp(m("p -> q"))).unwrap();
        assert_eq!(t.conclusion(), &m("p -> q"));
        let theory = parse_theory("loc area -> price\nprice -> tax").unwrap();
        let t = derive_tra(
            ProofTree::hyp(m("loc area -> price")),
            ProofTree::hyp(m("price -> tax")),
        )
        .unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("loc area -> tax"));
        assert!(derive_tra(ProofTree::hyp(m("p -> q")), ProofTree::hyp(m("r -> s"))).is_err());
    }

    #[test]
    fn aug_cases() {
        let theory = parse_theory("p -> q").unwrap();
        let t = derive_aug(ProofTree::hyp(m("p -> q")), &AttributeMultiset::top()).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("p -> q"));
        let t = derive_aug(ProofTree::hyp(m("p -> q")), &ms("r")).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("p r -> q r"));
        let t = derive_aug(ProofTree::hyp(m("p -> q")), &ms("p")).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("p p -> q p"));
    }

    #[test]
    fn ref_rwt_pro() {
        assert_eq!(check_proof(&derive_ref(&ms("p p")), &Theory::new()).unwrap(), m("p p -> p p"));
        // AC -> AC and A -> B give AC -> BC
        let theory = parse_theory("a -> b").unwrap();
        let t = derive_rwt(derive_ref(&ms("a c")), ProofTree::hyp(m("a -> b"))).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("a c -> b c"));
        let theory = parse_theory("a -> b c").unwrap();
        let t = derive_pro(ProofTree::hyp(m("a -> b c")), &ms("b")).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("a -> b"));
        assert!(derive_pro(ProofTree::hyp(m("a -> b c")), &ms("d")).is_err());
        assert!(derive_rwt(ProofTree::hyp(m("a -> b")), ProofTree::hyp(m("c -> d"))).is_err());
    }

    #[test]
    fn weak_additivity_cases() {
        let theory = parse_theory("p -> q\np -> r\np -> 1\na -> b").unwrap();
        let t = derive_weak_additivity(ProofTree::hyp(m("p -> q")), ProofTree::hyp(m("p -> r"))).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("p p -> q r"));
        let t = derive_weak_additivity(ProofTree::hyp(m("p -> 1")), ProofTree::hyp(m("p -> 1"))).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("p p -> 1"));
        let t = derive_weak_additivity(ProofTree::hyp(m("a -> b")), ProofTree::hyp(m("a -> b"))).unwrap();
        assert_eq!(check_proof(&t, &theory).unwrap(), m("a a -> b b"));
        assert!(derive_weak_additivity(ProofTree::hyp(m("p -> q")), ProofTree::hyp(m("a -> b"))).is_err());
    }

    #[test]
    fn sexpr_round_trip() {
        let t = derive_weak_additivity(ProofTree::hyp(m("p -> q")), ProofTree::hyp(m("p -> r"))).unwrap();
        let text = t.to_sexpr();
        assert!(text.starts_with("(cut (hyp \"p -> r\")"));
        assert_eq!(ProofTree::from_sexpr(&text).unwrap(), t);
        assert_eq!(
            ProofTree::from_sexpr("  (ax \"1\" \"p p\")\n").unwrap(),
            derive_ref(&ms("p p"))
        );
        assert!(ProofTree::from_sexpr("(ax \"1\")").is_err());
        assert!(ProofTree::from_sexpr("(lemma)").is_err());
        assert!(ProofTree::from_sexpr("(hyp \"p ->\")").is_err());
        assert!(ProofTree::from_sexpr("(ax \"1\" \"p\") x").is_err());
    }

    /// Grows a random proof from hypotheses in `theory` with every
    /// constructor, keeping only steps whose side conditions hold.
    fn random_proof(theory: &Theory, rng: &mut ChaCha8Rng, steps: usize) -> Vec<ProofTree> {
        const NAMES: [&str; 3] = ["p", "q", "r"];
        let mut pool: Vec<ProofTree> = theory.formulas().iter().cloned().map(ProofTree::hyp).collect();
        let random_ms = |rng: &mut ChaCha8Rng| {
            AttributeMultiset::from_counts(NAMES.iter().map(|&n| (n, rng.gen_range(0..2u32))))
        };
        for _ in 0..steps {
            let pick = |rng: &mut ChaCha8Rng, pool: &Vec<ProofTree>| pool[rng.gen_range(0..pool.len())].clone();
            let next = match rng.gen_range(0..6) {
                0 => ProofTree::ax(random_ms(rng), random_ms(rng)).ok(),
                1 => ProofTree::cut(pick(rng, &pool), pick(rng, &pool)).ok(),
                2 => derive_aug(pick(rng, &pool), &random_ms(rng)).ok(),
                3 => derive_weak_additivity(pick(rng, &pool), pick(rng, &pool)).ok(),
                4 => derive_rwt(pick(rng, &pool), pick(rng, &pool)).ok(),
                _ => derive_pro(pick(rng, &pool), &random_ms(rng)).ok(),
            };
            if let Some(t) = next {
                if t.conclusion().antecedent.size() + t.conclusion().consequent.size() <= 12 {
                    pool.push(t);
                }
            }
        }
        pool
    }

    fn holds_in_all_models(theory: &Theory, f: &Mfd, algebras: &[FinitePomonoid]) -> bool {
        let mut vars: Vec<Attr> = theory.variables().into_iter().collect();
        vars.extend(f.variables());
        vars.sort();
        vars.dedup();
        for l in algebras {
            let n = l.size();
            let total = n.pow(vars.len() as u32);
            for mut code in 0..total {
                let mut e = Evaluation::new(l);
                for v in &vars {
                    e.assign(v.clone(), crate::algebra::Element(code % n)).unwrap();
                    code /= n;
                }
                if e.is_model(theory).unwrap() && !e.satisfies(f).unwrap() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn checked_proofs_are_sound(seed in any::<u64>(), nf in 1usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            const NAMES: [&str; 3] = ["p", "q", "r"];
            let theory: Theory = (0..nf)
                .map(|_| {
                    let side = |rng: &mut ChaCha8Rng| AttributeMultiset::from_counts(
                        NAMES.iter().map(|&n| (n, rng.gen_range(0..3u32))),
                    );
                    Mfd::new(side(&mut rng), side(&mut rng))
                })
                .collect();
            let algebras: Vec<FinitePomonoid> = enumerate_pomonoids(3).unwrap().collect();
            for t in random_proof(&theory, &mut rng, 12) {
                let concl = check_proof(&t, &theory).unwrap();
                prop_assert_eq!(&concl, t.conclusion());
                prop_assert!(holds_in_all_models(&theory, &concl, &algebras), "unsound: {:?}", t);
                prop_assert_eq!(ProofTree::from_sexpr(&t.to_sexpr()).unwrap(), t);
            }
        }
    }

    #[test]
    fn no_checked_proof_of_additivity_in_small_models() {
        // a three-element chain with a * a = 0 refutes p -> q r from p -> q, p -> r
        let theory = parse_theory("p -> q\np -> r").unwrap();
        let algebras: Vec<FinitePomonoid> = enumerate_pomonoids(3).unwrap().collect();
        assert!(!holds_in_all_models(&theory, &m("p -> q r"), &algebras));
        assert!(holds_in_all_models(&theory, &m("p p -> q r"), &algebras));
        let l = &algebras[algebras.len() - 1];
        assert!(l.unit() == crate::algebra::Element(l.size() - 1));
    }
}
