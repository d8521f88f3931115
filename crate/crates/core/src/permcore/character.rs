use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_integer::Integer;

use crate::braiding::RootOfUnity;
use crate::permcore::{Permutation, PermutationGroup};

/// The abelianization `H / [H, H]` in polycyclic form.
///
/// Every coset is written uniquely as `a_1^{j_1} ⋯ a_r^{j_r}` with
/// `0 ≤ j_i < relative_orders[i]`; `coords[c]` holds those exponents for coset `c`.
#[derive(Debug)]
pub struct Abelianization {
    domain: PermutationGroup,
    derived_order: usize,
    coset_of: Vec<u32>,
    coords: Vec<Vec<u64>>,
    relative_orders: Vec<u64>,
    /// Coordinates of `a_i^{relative_orders[i]}`, which lies in `⟨a_1, …, a_{i-1}⟩`.
    power_coords: Vec<Vec<u64>>,
    exponent: u64,
}

/// A linear character `χ: H → ℂ^×`, stored by its values on the polycyclic
/// generators of the abelianization. All values are `conductor`-th roots of unity.
#[derive(Clone, Debug)]
pub struct Character {
    table: Arc<Abelianization>,
    basis_values: Vec<u64>,
}

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.compose(b).compose(&a.inverse()).compose(&b.inverse())
}

/// Derived subgroup as the normal closure of commutators of generators.
fn derived_subgroup(h: &PermutationGroup) -> Vec<Permutation> {
    let gens = h.generators();
    let mut dgens: Vec<Permutation> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = commutator(a, b);
            if !c.is_identity() && !dgens.contains(&c) {
                dgens.push(c);
            }
        }
    }
    loop {
        let current =
            PermutationGroup::generate(h.degree(), dgens.clone(), usize::MAX).expect("uncapped");
        let mut grew = false;
        for g in gens {
            for d in dgens.clone() {
                let c = g.conjugate(&d);
                if !current.contains(&c) {
                    dgens.push(c);
                    grew = true;
                    break;
                }
            }
            if grew {
                break;
            }
        }
        if !grew {
            return current.elements().to_vec();
        }
    }
}

impl Abelianization {
    pub fn new(h: &PermutationGroup) -> Self {
        let derived = derived_subgroup(h);
        let n = h.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..n {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(i);
            let x = &h.elements()[i];
            for d in &derived {
                let j = h.index_of(&x.compose(d)).expect("coset inside group");
                coset_of[j] = c;
            }
        }
        let k = reps.len();
        let mul = |a: usize, b: usize| -> usize {
            let x = h.elements()[reps[a]].compose(&h.elements()[reps[b]]);
            coset_of[h.index_of(&x).expect("closed")] as usize
        };

        // Build the polycyclic series B_0 < B_1 < ... by adjoining cosets in
        // label order; elements of B_{i+1} are b * a^j.
        let identity = coset_of[0] as usize;
        let mut in_b: Vec<Option<Vec<u64>>> = vec![None; k];
        in_b[identity] = Some(Vec::new());
        let mut members = vec![identity];
        let mut relative_orders: Vec<u64> = Vec::new();
        let mut power_coords: Vec<Vec<u64>> = Vec::new();
        for a in 0..k {
            if in_b[a].is_some() {
                continue;
            }
            // relative order of a modulo B
            let mut power = a;
            let mut n_rel = 1u64;
            while in_b[power].is_none() {
                power = mul(power, a);
                n_rel += 1;
            }
            let r = relative_orders.len();
            power_coords.push(in_b[power].clone().expect("power lies in B"));
            for coord in in_b.iter_mut().flatten() {
                coord.push(0);
            }
            let mut new_members = Vec::new();
            let mut a_pow = a;
            for j in 1..n_rel {
                for &b in &members {
                    let x = mul(b, a_pow);
                    let mut coord = in_b[b].clone().expect("member");
                    coord[r] = j;
                    debug_assert!(in_b[x].is_none());
                    in_b[x] = Some(coord);
                    new_members.push(x);
                }
                a_pow = mul(a_pow, a);
            }
            members.extend(new_members);
            relative_orders.push(n_rel);
        }
        let coords: Vec<Vec<u64>> = in_b
            .into_iter()
            .map(|c| {
                let mut c = c.expect("every coset reached");
                c.resize(relative_orders.len(), 0);
                c
            })
            .collect();
        for c in power_coords.iter_mut() {
            c.resize(relative_orders.len(), 0);
        }

        // exponent of the quotient
        let mut exponent = 1u64;
        for c in 0..k {
            let mut order = 1u64;
            let mut x = c;
            while x != identity {
                x = mul(x, c);
                order += 1;
            }
            exponent = num_integer::lcm(exponent, order);
        }

        Abelianization {
            domain: h.clone(),
            derived_order: derived.len(),
            coset_of,
            coords,
            relative_orders,
            power_coords,
            exponent,
        }
    }

    pub fn domain(&self) -> &PermutationGroup {
        &self.domain
    }

    pub fn derived_order(&self) -> usize {
        self.derived_order
    }

    /// `|H / [H, H]|`.
    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    fn coordinates_of(&self, g: &Permutation) -> Option<&[u64]> {
        self.domain
            .index_of(g)
            .map(|i| self.coords[self.coset_of[i] as usize].as_slice())
    }

    /// All linear characters, trivial first, then in lexicographic order of
    /// the root choices made while extending along the polycyclic series.
    pub fn characters(self: &Arc<Self>) -> Vec<Character> {
        let e = self.exponent;
        let mut partial: Vec<Vec<u64>> = vec![Vec::new()];
        for (i, &n) in self.relative_orders.iter().enumerate() {
            let mut next = Vec::with_capacity(partial.len() * n as usize);
            for psi in &partial {
                // ψ(a_i^n), using the coordinates of a_i^n on earlier generators
                let t = psi
                    .iter()
                    .zip(&self.power_coords[i])
                    .fold(0u64, |acc, (v, c)| (acc + v * c) % e);
                debug_assert_eq!(t % n, 0);
                let base = t / n;
                for j in 0..n {
                    let mut chi = psi.clone();
                    chi.push((base + j * (e / n)) % e);
                    next.push(chi);
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|basis_values| Character {
                table: Arc::clone(self),
                basis_values,
            })
            .collect()
    }
}

impl Character {
    pub fn domain(&self) -> &PermutationGroup {
        &self.table.domain
    }

    /// Common order bound of all values: the exponent of the abelianization.
    pub fn conductor(&self) -> u64 {
        self.table.exponent
    }

    /// `χ(g)` as `ζ_conductor^k`; `None` when `g` is outside the domain.
    pub fn value(&self, g: &Permutation) -> Option<RootOfUnity> {
        self.table
            .coordinates_of(g)
            .map(|coords| self.value_at_coords(coords))
    }

    /// `χ` at the domain element with the given index.
    pub fn value_at_index(&self, i: usize) -> RootOfUnity {
        let coords = &self.table.coords[self.table.coset_of[i] as usize];
        self.value_at_coords(coords)
    }

    fn value_at_coords(&self, coords: &[u64]) -> RootOfUnity {
        let e = self.table.exponent;
        let k = coords
            .iter()
            .zip(&self.basis_values)
            .fold(0u64, |acc, (c, v)| (acc + c * v) % e);
        RootOfUnity::new(e, k)
    }

    /// Smallest image of the value vector under `χ ↦ χ^k`, `gcd(k, e) = 1`.
    /// Galois conjugate characters share it, and their cocycles have equal ranks.
    pub fn galois_key(&self) -> Vec<u64> {
        let e = self.table.exponent;
        (1..=e.max(1))
            .filter(|k| k.gcd(&e) == 1)
            .map(|k| {
                self.basis_values
                    .iter()
                    .map(|v| v * k % e)
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis_values.iter().all(|&v| v == 0)
    }

    /// Value exponents for every domain element, in the domain's sorted order.
    pub fn exponent_table(&self) -> Vec<u64> {
        (0..self.table.domain.order())
            .map(|i| self.value_at_index(i).exponent_in(self.conductor()))
            .collect()
    }
}

/// All linear characters of `g`: `|G / [G, G]|` of them, trivial first.
pub fn linear_characters(g: &PermutationGroup) -> Vec<Character> {
    Arc::new(Abelianization::new(g)).characters()
}

/// `[G, G]` as the closure of all pairwise commutators. Quadratic in `|G|`;
/// used as an independent check of [`Abelianization`] on small groups.
pub fn derived_subgroup_brute_force(g: &PermutationGroup) -> usize {
    let mut comms: HashSet<Permutation> = HashSet::new();
    for a in g.elements() {
        for b in g.elements() {
            comms.insert(commutator(a, b));
        }
    }
    let mut closed: HashSet<Permutation> = comms.clone();
    let mut queue: VecDeque<Permutation> = comms.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for c in &comms {
            let y = x.compose(c);
            if closed.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    closed.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
        PermutationGroup::generate(
            degree,
            gens.iter()
                .map(|g| Permutation::parse(g, degree).unwrap())
                .collect(),
            100_000,
        )
        .unwrap()
    }

    #[test]
    fn s3_has_trivial_and_sign() {
        let g = group(3, &["(1,2)", "(1,2,3)"]);
        let chars = linear_characters(&g);
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial());
        let t = Permutation::parse("(1,2)", 3).unwrap();
        let c = Permutation::parse("(1,2,3)", 3).unwrap();
        assert_eq!(chars[1].value(&t).unwrap(), RootOfUnity::new(2, 1));
        assert_eq!(chars[1].value(&c).unwrap(), RootOfUnity::new(2, 0));
    }

    #[test]
    fn cyclic_four_has_four_characters() {
        let g = group(4, &["(1,2,3,4)"]);
        let chars = linear_characters(&g);
        assert_eq!(chars.len(), 4);
        let gen = Permutation::parse("(1,2,3,4)", 4).unwrap();
        let mut values: Vec<u64> = chars
            .iter()
            .map(|c| {
                assert_eq!(c.conductor(), 4);
                c.value(&gen).unwrap().exponent_in(4)
            })
            .collect();
        values.sort_unstable();
        assert_eq!(values, vec![0, 1, 2, 3]);
    }

    #[test]
    fn galois_orbits_of_cyclic_four() {
        // trivial, the order-2 character, and the pair of order-4 characters
        let g = group(4, &["(1,2,3,4)"]);
        let keys: HashSet<Vec<u64>> = linear_characters(&g)
            .iter()
            .map(|c| c.galois_key())
            .collect();
        assert_eq!(keys.len(), 3);
    }

    #[test]
    fn trivial_group_has_one_character() {
        let chars = linear_characters(&PermutationGroup::trivial(2));
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_trivial());
    }

    #[test]
    fn klein_four_characters_are_distinct_and_multiplicative() {
        let g = group(4, &["(1,2)", "(3,4)"]);
        let chars = linear_characters(&g);
        assert_eq!(chars.len(), 4);
        let tables: HashSet<Vec<u64>> = chars.iter().map(|c| c.exponent_table()).collect();
        assert_eq!(tables.len(), 4);
        for c in &chars {
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = c.value(&a.compose(b)).unwrap();
                    let rhs = c.value(a).unwrap().mul(&c.value(b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn a4_abelianization_matches_brute_force() {
        let g = group(4, &["(1,2,3)", "(2,3,4)"]);
        let ab = Abelianization::new(&g);
        assert_eq!(ab.derived_order(), derived_subgroup_brute_force(&g));
        assert_eq!(ab.order(), 3);
        assert_eq!(linear_characters(&g).len(), 3);
    }
}
