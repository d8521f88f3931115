use std::sync::Arc;

use rayon::prelude::*;

use super::{Cocycle, Cyclotomic, RootOfUnity};
use crate::error::{Error, Result};
use crate::permcore::{Abelianization, Character, ConjugacyClass, Permutation, PermutationGroup};
use crate::rack::{Rack, TRIPLE_BUDGET};

/// The cocycles `q^χ` on a class `O ∋ s` for all linear characters `χ` of `C_G(s)`.
///
/// With sections `g_x s g_x⁻¹ = x`, the element `w(x, y) = g_{x▷y}⁻¹ x g_y` lies in
/// `C_G(s)` and `q^χ_{x,y} = χ(w(x, y))`.
pub struct CharacterCocycles<'g> {
    group: &'g PermutationGroup,
    class: &'g ConjugacyClass,
    base: usize,
    centralizer: PermutationGroup,
    sections: Vec<Permutation>,
    section_inverses: Vec<Permutation>,
    characters: Vec<Character>,
}

impl<'g> CharacterCocycles<'g> {
    pub fn new(
        group: &'g PermutationGroup,
        class: &'g ConjugacyClass,
        s: &Permutation,
    ) -> Result<Self> {
        let base = class
            .index_of(s)
            .ok_or_else(|| Error::InvalidArgument(format!("{s} is not in class {}", class.name)))?;
        let centralizer = group.centralizer(s)?;
        let table = Arc::new(Abelianization::new(&centralizer));
        let characters = table.characters();
        let sections = group.conjugating_sections(s, &class.members);
        let section_inverses = sections.iter().map(Permutation::inverse).collect();
        Ok(CharacterCocycles {
            group,
            class,
            base,
            centralizer,
            sections,
            section_inverses,
            characters,
        })
    }

    pub fn group(&self) -> &'g PermutationGroup {
        self.group
    }

    pub fn class(&self) -> &'g ConjugacyClass {
        self.class
    }

    /// Index of `s` among the class members.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn centralizer(&self) -> &PermutationGroup {
        &self.centralizer
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    fn op(&self, x: usize, y: usize) -> usize {
        let m = &self.class.members;
        self.class
            .index_of(&m[x].conjugate(&m[y]))
            .expect("class closed under conjugation")
    }

    /// Index of `w(x, y)` in the centralizer.
    fn w_index(&self, x: usize, y: usize) -> usize {
        let xy = self.op(x, y);
        let w = self.section_inverses[xy]
            .compose(&self.class.members[x])
            .compose(&self.sections[y]);
        self.centralizer
            .index_of(&w)
            .expect("w(x, y) centralizes s")
    }

    /// `q^{χ_k}_{x,y}`.
    pub fn value(&self, k: usize, x: usize, y: usize) -> RootOfUnity {
        self.characters[k].value_at_index(self.w_index(x, y))
    }

    /// `q_{xx}`, which equals `χ_k(s)` for every `x`.
    pub fn diagonal(&self, k: usize) -> RootOfUnity {
        let s = &self.class.members[self.base];
        self.characters[k].value(s).expect("s centralizes itself")
    }

    /// Dense cocycle for character `k` on `Rack::conjugation(class)`.
    pub fn cocycle(&self, k: usize, rack_cap: usize) -> Result<Cocycle> {
        let rack = Rack::conjugation(self.class, rack_cap)?;
        dense_cocycle(rack, &self.characters[k], |x, y| self.w_index(x, y))
    }

    /// `C_G(s)`-orbit representatives on the class (smallest index per orbit).
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let n = self.class.size();
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            reps.push(start);
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(y) = stack.pop() {
                for c in self.centralizer.generators() {
                    let z = self
                        .class
                        .index_of(&c.conjugate(&self.class.members[y]))
                        .expect("class closed");
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        reps
    }

    /// Checks the cocycle identity for every character up to the symmetry of `G`.
    ///
    /// Conjugating by `h ∈ G` carries `q^χ` to a cohomologous cocycle, so the
    /// defect at `(hx, hy, hz)` is the defect at `(x, y, z)`. Triples with `x = s`
    /// and `y` among `C_G(s)`-orbit representatives therefore suffice.
    pub fn validate_up_to_symmetry(&self) -> bool {
        let tables: Vec<(u64, Vec<u64>)> = self
            .characters
            .iter()
            .map(|c| (c.conductor(), c.exponent_table()))
            .collect();
        let n = self.class.size();
        let x = self.base;
        self.orbit_representatives().par_iter().all(|&y| {
            let xy = self.op(x, y);
            (0..n).all(|z| {
                let yz = self.op(y, z);
                let xz = self.op(x, z);
                let a = self.w_index(x, yz);
                let b = self.w_index(y, z);
                let c = self.w_index(xy, xz);
                let d = self.w_index(x, z);
                tables
                    .iter()
                    .all(|(m, t)| (t[a] + t[b]) % m == (t[c] + t[d]) % m)
            })
        })
    }

    /// Certifies every cocycle without enumerating triples.
    ///
    /// Both sides of the cocycle identity equal `χ(g_{x▷(y▷z)}⁻¹ x y g_z)`, so the
    /// identity holds once each `w(x, y)` lies in `C_G(s)` and each `χ` is a
    /// homomorphism. The first follows from `g_x s g_x⁻¹ = x`; the second is
    /// checked on generators times all elements of `C_G(s)`.
    pub fn certify(&self) -> bool {
        let s = &self.class.members[self.base];
        let sections_ok = (0..self.class.size()).into_par_iter().all(|x| {
            self.sections[x]
                .compose(s)
                .compose(&self.section_inverses[x])
                == self.class.members[x]
        });
        if !sections_ok {
            return false;
        }
        let elements = self.centralizer.elements();
        self.characters.iter().all(|chi| {
            let (m, t) = (chi.conductor(), chi.exponent_table());
            self.centralizer.generators().iter().all(|c| {
                let Some(ci) = self.centralizer.index_of(c) else {
                    return false;
                };
                elements.par_iter().enumerate().all(|(bi, b)| {
                    self.centralizer
                        .index_of(&c.compose(b))
                        .is_some_and(|k| t[k] == (t[ci] + t[bi]) % m)
                })
            })
        })
    }

    /// The triple check when it fits the rack triple budget, otherwise [`CharacterCocycles::certify`].
    pub fn validate(&self) -> bool {
        let reps = self.orbit_representatives().len();
        if reps.saturating_mul(self.class.size()) <= TRIPLE_BUDGET {
            self.validate_up_to_symmetry()
        } else {
            self.certify()
        }
    }
}

fn dense_cocycle(
    rack: Rack,
    chi: &Character,
    w: impl Fn(usize, usize) -> usize,
) -> Result<Cocycle> {
    let n = rack.size();
    let m = chi.conductor();
    let values: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| chi.value_at_index(w(x, y)).to_cyclotomic(m))
                .collect()
        })
        .collect();
    Cocycle::new_unchecked(rack, values)
}

/// The cocycle `q^χ` on `Rack::conjugation(cls)` for a linear character `χ` of `C_G(s)`.
pub fn cocycle_from_character(
    group: &PermutationGroup,
    cls: &ConjugacyClass,
    s: &Permutation,
    chi: &Character,
) -> Result<Cocycle> {
    if !cls.contains(s) {
        return Err(Error::InvalidArgument(format!(
            "{s} is not in class {}",
            cls.name
        )));
    }
    let centralizer = group.centralizer(s)?;
    if chi.domain().elements() != centralizer.elements() {
        return Err(Error::InvalidArgument(
            "character is not defined on the centralizer of s".into(),
        ));
    }
    let sections = group.conjugating_sections(s, &cls.members);
    let inverses: Vec<Permutation> = sections.iter().map(Permutation::inverse).collect();
    let rack = Rack::conjugation(cls, usize::MAX)?;
    let w = |x: usize, y: usize| {
        let xy = rack.op(x, y);
        let w = inverses[xy].compose(&cls.members[x]).compose(&sections[y]);
        chi.domain().index_of(&w).expect("w(x, y) centralizes s")
    };
    let values: Vec<Vec<usize>> = (0..cls.size())
        .map(|x| (0..cls.size()).map(|y| w(x, y)).collect())
        .collect();
    dense_cocycle(rack, chi, |x, y| values[x][y])
}
