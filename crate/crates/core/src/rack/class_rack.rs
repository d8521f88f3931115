use rayon::prelude::*;

use crate::error::Result;
use crate::permcore::{ConjugacyClass, PermutationGroup};

/// Above this many `(s, y, z)` triples, validation switches from the triple
/// check to the group certificate.
pub const TRIPLE_BUDGET: usize = 250_000;

/// A conjugation rack evaluated on demand from the group, for classes too
/// large for a dense table.
#[derive(Clone, Copy, Debug)]
pub struct ClassRack<'g> {
    group: &'g PermutationGroup,
    class: &'g ConjugacyClass,
}

impl<'g> ClassRack<'g> {
    pub fn new(group: &'g PermutationGroup, class: &'g ConjugacyClass) -> Self {
        ClassRack { group, class }
    }

    pub fn size(&self) -> usize {
        self.class.size()
    }

    pub fn class(&self) -> &'g ConjugacyClass {
        self.class
    }

    pub fn group(&self) -> &'g PermutationGroup {
        self.group
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        let m = &self.class.members;
        self.class
            .index_of(&m[x].conjugate(&m[y]))
            .expect("class closed under conjugation")
    }

    /// The translation `φ_x` as an image list.
    pub fn row(&self, x: usize) -> Vec<u32> {
        (0..self.size()).map(|y| self.op(x, y) as u32).collect()
    }

    /// Orbits of `C_G(s)` on the class (`s` = member 0), as the smallest member
    /// index of each orbit.
    pub fn stabilizer_orbit_representatives(&self) -> Result<Vec<usize>> {
        let s = &self.class.members[0];
        let centralizer = self.group.centralizer(s)?;
        let n = self.size();
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
                for c in centralizer.generators() {
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
        Ok(reps)
    }

    /// Checks both rack axioms up to the symmetry of the group.
    ///
    /// Conjugation by any `g` is an automorphism of the class rack, so
    /// `φ_{gx} = g φ_x g⁻¹` and the self-distributivity defect at `(x, y, z)`
    /// equals the defect at `(gx, gy, gz)`. It therefore suffices to check
    /// bijectivity of `φ_s` and the identity on triples `(s, y, z)` with `y`
    /// ranging over `C_G(s)`-orbit representatives.
    pub fn validate_up_to_symmetry(&self) -> Result<bool> {
        let n = self.size();
        let phi_s = self.row(0);
        let mut seen = vec![false; n];
        for &v in &phi_s {
            if seen[v as usize] {
                return Ok(false);
            }
            seen[v as usize] = true;
        }
        let reps = self.stabilizer_orbit_representatives()?;
        let ok = reps.par_iter().all(|&y| {
            let phi_y = self.row(y);
            let phi_sy = self.row(phi_s[y] as usize);
            (0..n).all(|z| phi_s[phi_y[z] as usize] == phi_sy[phi_s[z] as usize])
        });
        Ok(ok)
    }

    /// Certifies the rack axioms through the group.
    ///
    /// If the class is closed under conjugation by the generators of `G`, then
    /// `▷` is conjugation inside `G`, self-distributivity is associativity, and
    /// each `φ_x` is injective. Only closure and the bijectivity of `φ_s` are
    /// checked; the cost is linear in the class size.
    pub fn certify(&self) -> bool {
        let members = &self.class.members;
        let closed = self.group.generators().par_iter().all(|g| {
            members
                .iter()
                .all(|m| self.class.index_of(&g.conjugate(m)).is_some())
        });
        if !closed {
            return false;
        }
        let mut seen = vec![false; self.size()];
        self.row(0)
            .into_iter()
            .all(|v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// The triple check when it fits [`TRIPLE_BUDGET`], otherwise [`ClassRack::certify`].
    pub fn validate(&self) -> Result<bool> {
        let reps = self.stabilizer_orbit_representatives()?;
        if reps.len().saturating_mul(self.size()) <= TRIPLE_BUDGET {
            self.validate_up_to_symmetry()
        } else {
            Ok(self.certify())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{ClassTable, Permutation};
    use crate::rack::Rack;

    #[test]
    fn lazy_rack_matches_dense_rack() {
        let g = PermutationGroup::generate(
            5,
            vec![
                Permutation::parse("(1,2)", 5).unwrap(),
                Permutation::parse("(1,2,3,4,5)", 5).unwrap(),
            ],
            1000,
        )
        .unwrap();
        let t = ClassTable::new(&g);
        for cls in t.classes() {
            let lazy = ClassRack::new(&g, cls);
            let dense = Rack::conjugation(cls, 1000).unwrap();
            for x in 0..cls.size() {
                assert_eq!(
                    lazy.row(x),
                    (0..cls.size())
                        .map(|y| dense.op(x, y) as u32)
                        .collect::<Vec<_>>()
                );
            }
            assert!(lazy.validate_up_to_symmetry().unwrap());
            assert!(lazy.certify());
            assert!(lazy.validate().unwrap());
            assert!(dense.is_valid());
        }
    }
}
