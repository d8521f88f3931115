use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::permcore::Permutation;

/// Element cap applied when the caller does not configure one.
pub const DEFAULT_ORDER_CAP: usize = 200_000;

/// A finite permutation group, fully enumerated.
///
/// `elements` is sorted lexicographically by image list; membership is a
/// binary search. `generators` is whatever generated the group (for
/// subgroups built from an element list, a greedy generating set).
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

impl PermutationGroup {
    /// Enumerates `⟨generators⟩` by breadth-first closure.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let elements = closure(degree, &generators, cap)?;
        Ok(PermutationGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Wraps a list of elements known to be closed, picking generators greedily
    /// in sorted order.
    fn from_closed_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        let mut generators = Vec::new();
        let mut current: HashSet<Permutation> = HashSet::new();
        current.insert(Permutation::identity(degree));
        for x in &elements {
            if current.len() == elements.len() {
                break;
            }
            if !current.contains(x) {
                generators.push(x.clone());
                current = closure(degree, &generators, usize::MAX)
                    .expect("uncapped closure")
                    .into_iter()
                    .collect();
            }
        }
        PermutationGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        if x.degree() != self.degree {
            return None;
        }
        self.elements.binary_search(x).ok()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index_of(x).is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1, |acc, x| num_integer::lcm(acc, x.order()))
    }

    fn check_member(&self, x: &Permutation) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInGroup(x.to_string()))
        }
    }

    /// Orbit of `x` under conjugation by the group, sorted.
    pub fn conjugacy_orbit(&self, x: &Permutation) -> Vec<Permutation> {
        orbit_under_conjugation(&self.generators, x, usize::MAX).expect("uncapped orbit")
    }

    /// `{g ∈ G : g s = s g}`.
    pub fn centralizer(&self, s: &Permutation) -> Result<PermutationGroup> {
        self.check_member(s)?;
        if s.is_identity() {
            return Ok(self.clone());
        }
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| g.compose(s) == s.compose(g))
            .cloned()
            .collect();
        Ok(PermutationGroup::from_closed_elements(
            self.degree,
            elements,
        ))
    }

    /// `⟨elems⟩` as a subgroup of `self`.
    pub fn subgroup_generated(
        &self,
        elems: &[Permutation],
        cap: usize,
    ) -> Result<PermutationGroup> {
        for e in elems {
            self.check_member(e)?;
        }
        let generators: Vec<Permutation> =
            elems.iter().filter(|e| !e.is_identity()).cloned().collect();
        PermutationGroup::generate(self.degree, generators, cap)
    }

    /// Whether some `h` in the group satisfies `h a h⁻¹ = b`.
    pub fn are_conjugate_in(&self, a: &Permutation, b: &Permutation) -> Result<bool> {
        self.check_member(a)?;
        self.check_member(b)?;
        if a == b {
            return Ok(true);
        }
        if a.cycle_type() != b.cycle_type() {
            return Ok(false);
        }
        Ok(self.conjugacy_orbit(a).binary_search(b).is_ok())
    }

    /// Whether every element of `sub` lies in `self`.
    pub fn contains_group(&self, sub: &PermutationGroup) -> bool {
        sub.degree == self.degree && sub.generators.iter().all(|g| self.contains(g))
    }

    /// For each member `x` of a class containing `s`, the smallest group element
    /// `g` (in the sorted element order) with `g s g⁻¹ = x`, indexed like `members`.
    pub fn conjugating_sections(
        &self,
        s: &Permutation,
        members: &[Permutation],
    ) -> Vec<Permutation> {
        let mut sections: Vec<Option<Permutation>> = vec![None; members.len()];
        let mut remaining = members.len();
        for g in &self.elements {
            if remaining == 0 {
                break;
            }
            let x = g.conjugate(s);
            if let Ok(i) = members.binary_search(&x) {
                if sections[i].is_none() {
                    sections[i] = Some(g.clone());
                    remaining -= 1;
                }
            }
        }
        sections
            .into_iter()
            .map(|g| g.expect("members must form the class of s"))
            .collect()
    }
}

/// Conjugation orbit of `x` under the group generated by `generators`, sorted.
/// Fails once the orbit exceeds `cap` points.
pub fn orbit_under_conjugation(
    generators: &[Permutation],
    x: &Permutation,
    cap: usize,
) -> Result<Vec<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(x.clone());
    queue.push_back(x.clone());
    while let Some(y) = queue.pop_front() {
        for g in generators {
            let z = g.conjugate(&y);
            if !seen.contains(&z) {
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(z.clone());
                queue.push_back(z);
            }
        }
    }
    let mut orbit: Vec<Permutation> = seen.into_iter().collect();
    orbit.sort_unstable();
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn sym(n: usize) -> PermutationGroup {
        let cycle = format!(
            "({})",
            (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        );
        PermutationGroup::generate(n, vec![p("(1,2)", n), p(&cycle, n)], DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn s3_has_order_six() {
        let g = PermutationGroup::generate(3, vec![p("(1,2)", 3), p("(1,2,3)", 3)], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermutationGroup::generate(4, vec![], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn cap_is_an_error() {
        let err =
            PermutationGroup::generate(4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)], 10).unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { cap: 10 });
    }

    #[test]
    fn degree_mismatch_rejected() {
        assert!(PermutationGroup::generate(4, vec![p("(1,2)", 3)], 10).is_err());
    }

    #[test]
    fn centralizer_of_transposition_in_s3() {
        let g = sym(3);
        let c = g.centralizer(&p("(1,2)", 3)).unwrap();
        assert_eq!(c.order(), 2);
        assert!(c.contains(&p("(1,2)", 3)));
    }

    #[test]
    fn centralizer_of_four_cycle_in_s4() {
        let g = sym(4);
        let s = p("(1,2,3,4)", 4);
        let c = g.centralizer(&s).unwrap();
        assert_eq!(c.order(), 4);
        let cyclic = g.subgroup_generated(std::slice::from_ref(&s), 100).unwrap();
        assert_eq!(c.elements(), cyclic.elements());
        assert_eq!(c.order() * g.conjugacy_orbit(&s).len(), g.order());
    }

    #[test]
    fn centralizer_of_identity_is_whole_group() {
        let g = sym(4);
        assert_eq!(g.centralizer(&g.identity()).unwrap().order(), 24);
        assert!(g.centralizer(&p("(1,2)", 3)).is_err());
    }

    #[test]
    fn generated_subgroups_of_s3() {
        let g = sym(3);
        assert_eq!(
            g.subgroup_generated(&[p("(1,2)", 3)], 100).unwrap().order(),
            2
        );
        assert_eq!(
            g.subgroup_generated(&[p("(1,2)", 3), p("(2,3)", 3)], 100)
                .unwrap()
                .order(),
            6
        );
        assert_eq!(
            g.subgroup_generated(&[g.identity()], 100).unwrap().order(),
            1
        );
        assert!(g
            .subgroup_generated(&[p("(1,2)", 3), p("(2,3)", 3)], 3)
            .is_err());
    }

    #[test]
    fn conjugacy_tests() {
        let g = sym(3);
        assert!(g.are_conjugate_in(&p("(1,2)", 3), &p("(2,3)", 3)).unwrap());
        assert!(g.are_conjugate_in(&p("(1,2)", 3), &p("(1,2)", 3)).unwrap());
        let c3 = g.subgroup_generated(&[p("(1,2,3)", 3)], 10).unwrap();
        assert!(!c3
            .are_conjugate_in(&p("(1,2,3)", 3), &p("(1,3,2)", 3))
            .unwrap());
        assert!(c3.are_conjugate_in(&p("(1,2)", 3), &p("(1,2)", 3)).is_err());
    }

    #[test]
    fn sections_conjugate_basepoint() {
        let g = sym(4);
        let s = p("(1,2)", 4);
        let members = g.conjugacy_orbit(&s);
        let sections = g.conjugating_sections(&s, &members);
        for (x, gx) in members.iter().zip(&sections) {
            assert_eq!(&gx.conjugate(&s), x);
            // smallest such element
            let first = g.elements().iter().find(|h| &h.conjugate(&s) == x).unwrap();
            assert_eq!(first, gx);
        }
    }

    #[test]
    fn greedy_generators_regenerate_subgroup() {
        let g = sym(5);
        let c = g.centralizer(&p("(1,2)(3,4)", 5)).unwrap();
        let regenerated = PermutationGroup::generate(5, c.generators().to_vec(), 1000).unwrap();
        assert_eq!(regenerated.elements(), c.elements());
    }
}
