use std::collections::VecDeque;

use serde::Serialize;

use crate::permcore::{Permutation, PermutationGroup};

/// A conjugacy class with its sorted members. The representative is the
/// smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub name: String,
    pub representative: Permutation,
    pub members: Vec<Permutation>,
    pub element_order: u64,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.members.binary_search(x).ok()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index_of(x).is_some()
    }
}

/// All classes of a group plus the element → class lookup.
#[derive(Clone, Debug)]
pub struct ClassTable {
    classes: Vec<ConjugacyClass>,
    /// Class position for each element index of the group.
    class_of: Vec<u32>,
}

/// Short summary row, as printed by the `classes` command.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub name: String,
    pub size: usize,
    pub element_order: u64,
    pub representative: String,
}

fn letters(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

impl ClassTable {
    /// Partitions the group into conjugacy classes, sorted by
    /// (element order, class size, smallest member) and named
    /// `<order><letter>` in that order.
    pub fn new(group: &PermutationGroup) -> Self {
        let n = group.order();
        let mut orbit_id = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if orbit_id[start] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut orbit = vec![start];
            orbit_id[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let x = &group.elements()[i];
                for g in group.generators() {
                    let j = group
                        .index_of(&g.conjugate(x))
                        .expect("group closed under conjugation");
                    if orbit_id[j] == u32::MAX {
                        orbit_id[j] = id;
                        orbit.push(j);
                        queue.push_back(j);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }

        let mut keyed: Vec<(u64, usize, usize, Vec<usize>)> = orbits
            .into_iter()
            .map(|o| (group.elements()[o[0]].order(), o.len(), o[0], o))
            .collect();
        keyed.sort_by_key(|a| (a.0, a.1, a.2));

        let mut classes = Vec::with_capacity(keyed.len());
        let mut class_of = vec![0u32; n];
        let mut letter = 0;
        let mut last_order = 0;
        for (pos, (order, _, _, members)) in keyed.into_iter().enumerate() {
            if order != last_order {
                letter = 0;
                last_order = order;
            }
            for &i in &members {
                class_of[i] = pos as u32;
            }
            let members: Vec<Permutation> = members
                .iter()
                .map(|&i| group.elements()[i].clone())
                .collect();
            classes.push(ConjugacyClass {
                name: format!("{order}{}", letters(letter)),
                representative: members[0].clone(),
                members,
                element_order: order,
            });
            letter += 1;
        }
        ClassTable { classes, class_of }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, i: usize) -> &ConjugacyClass {
        &self.classes[i]
    }

    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Position of the class containing `x`, if `x` is in the group.
    pub fn class_index(&self, group: &PermutationGroup, x: &Permutation) -> Option<usize> {
        group.index_of(x).map(|i| self.class_of[i] as usize)
    }

    /// Position of the class of `rep^m`, where `rep` represents class `cls`.
    pub fn power_class(&self, group: &PermutationGroup, cls: usize, m: u64) -> usize {
        let x = self.classes[cls].representative.pow(m);
        self.class_index(group, &x)
            .expect("powers stay in the group")
    }

    /// Position of the class of inverses.
    pub fn inverse_class(&self, group: &PermutationGroup, cls: usize) -> usize {
        let x = self.classes[cls].representative.inverse();
        self.class_index(group, &x)
            .expect("inverses stay in the group")
    }

    pub fn summaries(&self) -> Vec<ClassSummary> {
        self.classes
            .iter()
            .map(|c| ClassSummary {
                name: c.name.clone(),
                size: c.size(),
                element_order: c.element_order,
                representative: c.representative.to_string(),
            })
            .collect()
    }
}

/// Convenience form of [`ClassTable::new`].
pub fn conjugacy_classes(group: &PermutationGroup) -> Vec<ConjugacyClass> {
    ClassTable::new(group).classes
}

/// Class of `rep^m` computed directly as a conjugation orbit; the name is
/// left empty because naming depends on the full class table.
pub fn power_class(group: &PermutationGroup, cls: &ConjugacyClass, m: u64) -> ConjugacyClass {
    let x = cls.representative.pow(m);
    let members = group.conjugacy_orbit(&x);
    ConjugacyClass {
        name: String::new(),
        representative: members[0].clone(),
        element_order: members[0].order(),
        members,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::DEFAULT_ORDER_CAP;

    fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
        PermutationGroup::generate(
            degree,
            gens.iter()
                .map(|g| Permutation::parse(g, degree).unwrap())
                .collect(),
            DEFAULT_ORDER_CAP,
        )
        .unwrap()
    }

    #[test]
    fn s3_classes() {
        let g = group(3, &["(1,2)", "(1,2,3)"]);
        let t = ClassTable::new(&g);
        let sizes: Vec<usize> = t.classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let names: Vec<&str> = t.classes().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["1a", "2a", "3a"]);
    }

    #[test]
    fn s4_classes() {
        let g = group(4, &["(1,2)", "(1,2,3,4)"]);
        let t = ClassTable::new(&g);
        let sizes: Vec<usize> = t.classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 6, 8, 6]);
        let names: Vec<&str> = t.classes().iter().map(|c| c.name.as_str()).collect();
        // order 2: double transpositions (3) before transpositions (6)
        assert_eq!(names, vec!["1a", "2a", "2b", "3a", "4a"]);
        assert_eq!(t.get(1).representative.to_string(), "(1,2)(3,4)");
    }

    #[test]
    fn trivial_group_has_one_class() {
        let g = PermutationGroup::trivial(3);
        let t = ClassTable::new(&g);
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(0).name, "1a");
    }

    #[test]
    fn five_cycle_powers_in_s5() {
        let g = group(5, &["(1,2)", "(1,2,3,4,5)"]);
        let t = ClassTable::new(&g);
        let c = t
            .classes()
            .iter()
            .position(|c| c.element_order == 5)
            .unwrap();
        assert_eq!(t.power_class(&g, c, 2), c);
        assert_eq!(t.power_class(&g, c, 1), c);
        let direct = power_class(&g, t.get(c), 2);
        assert_eq!(direct.members, t.get(c).members);
    }

    #[test]
    fn three_cycle_classes_of_a4_swap_under_squaring() {
        let g = group(4, &["(1,2,3)", "(2,3,4)"]);
        let t = ClassTable::new(&g);
        let x = Permutation::parse("(1,2,3)", 4).unwrap();
        let c = t.class_index(&g, &x).unwrap();
        let d = t.power_class(&g, c, 2);
        assert_ne!(c, d);
        assert_eq!(t.get(c).size(), 4);
        assert_eq!(t.get(d).size(), 4);
        assert_eq!(t.power_class(&g, d, 2), c);
        assert!(!t.get(c).contains(&x.inverse()));
    }

    #[test]
    fn letter_sequence() {
        assert_eq!(letters(0), "a");
        assert_eq!(letters(25), "z");
        assert_eq!(letters(26), "aa");
    }
}
