//! Reality, type D, abelian and double subracks, and per-class verdicts.

mod report;
mod subracks;
mod typed;

use crate::error::{Error, Result};
use crate::permcore::{ClassTable, ConjugacyClass, PermutationGroup};

pub use report::{
    analyze_class, analyze_group, AbelianFinding, AnalyzeOptions, CharacterEvidence, ClassReport,
    DiagonalData, GroupInfo, GroupReport, HilbertProbe, Summary, Verdict, NAMING_NOTE, QXX_LEMMA,
};
pub use subracks::{
    bounded_closure, commuting_cliques, detect_double_subracks, double_templates,
    find_abelian_subracks, DoubleFinding,
};
pub use typed::{is_type_d_class, is_type_d_rack, witness_element, TypeDResult, TypeDWitness};

/// Stable reason codes attached to class verdicts.
pub mod reason {
    pub const TYPE_D: &str = "TYPE_D";
    pub const QXX_ONE_ALL_LINEAR: &str = "QXX_ONE_ALL_LINEAR";
    pub const FINITE_HILBERT: &str = "FINITE_HILBERT";
    pub const TRUNCATED_PROBE: &str = "TRUNCATED_PROBE";
    pub const UNRESOLVED_PAIRS: &str = "UNRESOLVED_PAIRS";
    pub const DOUBLE_SUBRACK_FOUND: &str = "DOUBLE_SUBRACK_FOUND";
    pub const ABELIAN_SUBRACK_FOUND: &str = "ABELIAN_SUBRACK_FOUND";
}

/// Whether `cls = cls⁻¹`.
pub fn is_real(cls: &ConjugacyClass) -> bool {
    cls.contains(&cls.representative.inverse())
}

/// All `m` with `1 < m < N` and `rep^m ∈ cls`, where `N` is the element order.
pub fn is_quasireal(cls: &ConjugacyClass) -> Vec<u64> {
    (2..cls.element_order)
        .filter(|&m| cls.contains(&cls.representative.pow(m)))
        .collect()
}

/// The `F`-classes partitioning `cls ∩ F`, in the order of `F`'s class table.
pub fn restrict_class_to_subgroup(
    group: &PermutationGroup,
    sub: &PermutationGroup,
    cls: &ConjugacyClass,
) -> Result<Vec<ConjugacyClass>> {
    if !group.contains_group(sub) {
        return Err(Error::NotSubgroup(
            "generators of F are not all in G".into(),
        ));
    }
    Ok(ClassTable::new(sub)
        .classes()
        .iter()
        .filter(|c| cls.contains(&c.representative))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{load_fixture, DEFAULT_ORDER_CAP};

    #[test]
    fn reality() {
        let s5 = load_fixture("S5", DEFAULT_ORDER_CAP).unwrap();
        let t = ClassTable::new(&s5);
        let five = t.get(t.by_name("5a").unwrap());
        assert!(is_real(five));
        assert_eq!(is_quasireal(five), vec![2, 3, 4]);
        for cls in t.classes().iter().filter(|c| c.element_order == 2) {
            assert!(is_real(cls));
            assert!(is_quasireal(cls).is_empty());
        }

        let a4 = load_fixture("A4", DEFAULT_ORDER_CAP).unwrap();
        let t = ClassTable::new(&a4);
        let threes: Vec<usize> = (0..t.len())
            .filter(|&i| t.get(i).element_order == 3)
            .collect();
        assert_eq!(threes.len(), 2);
        for &i in &threes {
            assert!(!is_real(t.get(i)));
            assert_ne!(t.inverse_class(&a4, i), i);
        }
    }

    #[test]
    fn restriction() {
        let s4 = load_fixture("S4", DEFAULT_ORDER_CAP).unwrap();
        let a4 = load_fixture("A4", DEFAULT_ORDER_CAP).unwrap();
        let t = ClassTable::new(&s4);
        let threes = t.get(t.by_name("3a").unwrap());
        let parts = restrict_class_to_subgroup(&s4, &a4, threes).unwrap();
        assert_eq!(
            parts.iter().map(|c| c.size()).collect::<Vec<_>>(),
            vec![4, 4]
        );
        let same = restrict_class_to_subgroup(&s4, &s4, threes).unwrap();
        assert_eq!(same, vec![threes.clone()]);
        let transpositions = t.get(t.by_name("2b").unwrap());
        assert!(restrict_class_to_subgroup(&s4, &a4, transpositions)
            .unwrap()
            .is_empty());
        assert!(matches!(
            restrict_class_to_subgroup(&a4, &s4, threes),
            Err(Error::NotSubgroup(_))
        ));
    }
}
