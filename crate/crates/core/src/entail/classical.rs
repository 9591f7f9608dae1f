use alloc::collections::BTreeSet;

use crate::formula::{Attr, Mfd, Theory};

/// Closure of `start` under the supports of the theory's formulas read as
/// classical dependencies.
pub fn classical_closure(theory: &Theory, start: &BTreeSet<Attr>) -> BTreeSet<Attr> {
    let mut closure = start.clone();
    loop {
        let before = closure.len();
        for f in theory.formulas() {
            if f.antecedent.support().all(|a| closure.contains(a)) {
                closure.extend(f.consequent.support().cloned());
            }
        }
        if closure.len() == before {
            return closure;
        }
    }
}

/// Classical entailment of the support-collapsed query.
pub fn classical_entails(theory: &Theory, query: &Mfd) -> bool {
    let start: BTreeSet<Attr> = query.antecedent.support().cloned().collect();
    let closure = classical_closure(theory, &start);
    query.consequent.support().all(|a| closure.contains(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_mfd, parse_theory};

    #[test]
    fn direct_rule() {
        let t = parse_theory("a b -> c").unwrap();
        assert!(classical_entails(&t, &parse_mfd("a b -> c").unwrap()));
    }

    #[test]
    fn additivity_holds_classically() {
        let t = parse_theory("p -> q\np -> r").unwrap();
        assert!(classical_entails(&t, &parse_mfd("p -> q r").unwrap()));
    }

    #[test]
    fn empty_theory() {
        assert!(!classical_entails(&Theory::new(), &parse_mfd("p -> q").unwrap()));
        assert!(classical_entails(&Theory::new(), &parse_mfd("p q -> q q").unwrap()));
    }

    #[test]
    fn multiplicities_collapse() {
        let t = parse_theory("a a -> b\nb b b -> c").unwrap();
        assert!(classical_entails(&t, &parse_mfd("a -> c").unwrap()));
    }
}
