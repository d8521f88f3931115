use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::permcore::{orbit_under_conjugation, ConjugacyClass, Permutation, PermutationGroup};
use crate::rack::Rack;

/// A pair `r ∈ R`, `s ∈ S` in a decomposable subrack `R ⊔ S` with
/// `r ▷ (s ▷ (r ▷ s)) ≠ s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeDWitness {
    pub r: usize,
    pub s: usize,
    /// Group elements when the rack is a conjugacy class.
    pub r_element: Option<String>,
    pub s_element: Option<String>,
    /// Points of the subrack generated by `r` and `s`, sorted.
    pub subrack: Vec<usize>,
    /// The inner components containing `r` and `s`.
    pub components: [Vec<usize>; 2],
}

/// Outcome of a type-D search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeDResult {
    pub witness: Option<TypeDWitness>,
    /// False when some pairs could not be decided.
    pub complete: bool,
    pub unresolved_pairs: usize,
}

impl TypeDResult {
    pub fn is_type_d(&self) -> bool {
        self.witness.is_some()
    }
}

/// `(rs)² s (rs)⁻²`, the group form of `r ▷ (s ▷ (r ▷ s))`.
pub fn witness_element(r: &Permutation, s: &Permutation) -> Permutation {
    let rs = r.compose(s);
    rs.pow(2).conjugate(s)
}

/// Orbits of `C_G(x)` on the class, as the smallest member index of each orbit.
pub(crate) fn centralizer_orbit_representatives(
    group: &PermutationGroup,
    cls: &ConjugacyClass,
    base: usize,
) -> Result<Vec<usize>> {
    let centralizer = group.centralizer(&cls.members[base])?;
    let n = cls.size();
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
                let z = cls
                    .index_of(&c.conjugate(&cls.members[y]))
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

enum PairOutcome {
    Witness(TypeDWitness),
    NoWitness,
    Unresolved,
}

fn class_witness(cls: &ConjugacyClass, r: usize, s: usize, cap: usize) -> PairOutcome {
    let (x, y) = (&cls.members[r], &cls.members[s]);
    if witness_element(x, y) == *y {
        return PairOutcome::NoWitness;
    }
    let gens = [x.clone(), y.clone()];
    let Ok(orbit_r) = orbit_under_conjugation(&gens, x, cap) else {
        return PairOutcome::Unresolved;
    };
    if orbit_r.binary_search(y).is_ok() {
        return PairOutcome::NoWitness;
    }
    let Ok(orbit_s) = orbit_under_conjugation(&gens, y, cap) else {
        return PairOutcome::Unresolved;
    };
    let to_indices = |orbit: &[Permutation]| -> Vec<usize> {
        let mut v: Vec<usize> = orbit
            .iter()
            .map(|e| cls.index_of(e).expect("in class"))
            .collect();
        v.sort_unstable();
        v
    };
    let comp_r = to_indices(&orbit_r);
    let comp_s = to_indices(&orbit_s);
    let mut subrack: Vec<usize> = comp_r.iter().chain(&comp_s).copied().collect();
    subrack.sort_unstable();
    PairOutcome::Witness(TypeDWitness {
        r,
        s,
        r_element: Some(x.to_string()),
        s_element: Some(y.to_string()),
        subrack,
        components: [comp_r, comp_s],
    })
}

/// Type-D search on a conjugacy class through the group.
///
/// A pair `(r, s)` is a witness when `(rs)² s (rs)⁻² ≠ s` and `s` is not conjugate
/// to `r` in `⟨r, s⟩`; the `⟨r, s⟩`-classes of `r` and `s` then form the
/// decomposable subrack. Conjugating a witness gives a witness, so `r` can be
/// fixed to the first member, and `s` only needs testing on one point per
/// `C_G(r)`-orbit. The reported witness is the lexicographically smallest pair.
///
/// Pairs whose `⟨r, s⟩`-orbits exceed `cap` points are left unresolved; the
/// result is then incomplete.
pub fn is_type_d_class(
    group: &PermutationGroup,
    cls: &ConjugacyClass,
    cap: usize,
) -> Result<TypeDResult> {
    if cls.size() < 2 {
        return Ok(TypeDResult {
            witness: None,
            complete: true,
            unresolved_pairs: 0,
        });
    }
    let reps = centralizer_orbit_representatives(group, cls, 0)?;
    let outcomes: Vec<PairOutcome> = reps
        .par_iter()
        .map(|&s| class_witness(cls, 0, s, cap))
        .collect();
    let unresolved_pairs = outcomes
        .iter()
        .filter(|o| matches!(o, PairOutcome::Unresolved))
        .count();
    let witness = outcomes.into_iter().find_map(|o| match o {
        PairOutcome::Witness(w) => Some(w),
        _ => None,
    });
    Ok(TypeDResult {
        witness,
        complete: unresolved_pairs == 0,
        unresolved_pairs,
    })
}

/// Type-D search on an arbitrary rack by scanning all pairs in lexicographic order.
///
/// For each pair the subrack `Z` generated by `r` and `s` is built; a witness
/// needs `r` and `s` in different inner components of `Z` and
/// `r ▷ (s ▷ (r ▷ s)) ≠ s`.
pub fn is_type_d_rack(rack: &Rack) -> Result<TypeDResult> {
    let n = rack.size();
    let labels = rack.labels();
    let found = (0..n * n).into_par_iter().find_map_first(|k| {
        let (r, s) = (k / n, k % n);
        if r == s || rack.op(r, rack.op(s, rack.op(r, s))) == s {
            return None;
        }
        let z = rack.subrack_generated(&[r, s]).expect("valid seed");
        let local = z.to_rack();
        let comps = local.inner_components();
        let lr = z.local_index(r).expect("seed in closure");
        let ls = z.local_index(s).expect("seed in closure");
        let cr = comps.iter().find(|c| c.contains(&lr)).expect("partition");
        if cr.contains(&ls) {
            return None;
        }
        let cs = comps.iter().find(|c| c.contains(&ls)).expect("partition");
        let lift = |c: &Vec<usize>| c.iter().map(|&i| z.indices()[i]).collect::<Vec<_>>();
        Some(TypeDWitness {
            r,
            s,
            r_element: labels.map(|l| l[r].to_string()),
            s_element: labels.map(|l| l[s].to_string()),
            subrack: z.indices().to_vec(),
            components: [lift(cr), lift(cs)],
        })
    });
    Ok(TypeDResult {
        witness: found,
        complete: true,
        unresolved_pairs: 0,
    })
}
