//! Finite racks: a set with a self-distributive operation whose left
//! translations `φ_x = x ▷ _` are bijections.

mod class_rack;
mod iso;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permcore::{ConjugacyClass, Permutation, PermutationGroup};

pub use class_rack::{ClassRack, TRIPLE_BUDGET};
pub use iso::are_isomorphic;

/// Largest conjugation rack built as a dense table unless the caller raises it.
pub const DEFAULT_RACK_CAP: usize = 4096;

/// A rack stored as its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rack {
    size: usize,
    /// Row-major: `table[x * size + y] = x ▷ y`.
    table: Vec<u32>,
    /// `inverse[x * size + y] = φ_x⁻¹(y)`.
    inverse: Vec<u32>,
    labels: Option<Vec<Permutation>>,
}

/// JSON literal form `{"size": n, "table": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RackLiteral {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

/// Explains why a table is not a rack, or `None` if it is one.
pub fn rack_violation(table: &[Vec<usize>]) -> Option<String> {
    let n = table.len();
    if n == 0 {
        return Some("a rack must be nonempty".into());
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Some(format!("row {x} has length {} instead of {n}", row.len()));
        }
        let mut seen = vec![false; n];
        for &v in row {
            if v >= n {
                return Some(format!("entry {v} in row {x} out of range"));
            }
            if seen[v] {
                return Some(format!("translation by {x} is not bijective"));
            }
            seen[v] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]] {
                    return Some(format!("self-distributivity fails at ({x}, {y}, {z})"));
                }
            }
        }
    }
    None
}

/// Whether `table` satisfies both rack axioms.
pub fn validate_rack(table: &[Vec<usize>]) -> bool {
    rack_violation(table).is_none()
}

impl Rack {
    /// Builds a rack from a table, checking both axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(why) = rack_violation(&table) {
            return Err(Error::InvalidRack(why));
        }
        Ok(Self::from_table_unchecked(&table))
    }

    pub fn from_literal(lit: &RackLiteral) -> Result<Self> {
        if lit.table.len() != lit.size {
            return Err(Error::InvalidRack(format!(
                "size {} but table has {} rows",
                lit.size,
                lit.table.len()
            )));
        }
        Self::from_table(lit.table.clone())
    }

    pub fn to_literal(&self) -> RackLiteral {
        RackLiteral {
            size: self.size,
            table: self.to_table(),
        }
    }

    fn from_table_unchecked(table: &[Vec<usize>]) -> Self {
        let n = table.len();
        let mut flat = Vec::with_capacity(n * n);
        let mut inverse = vec![0u32; n * n];
        for (x, row) in table.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                flat.push(v as u32);
                inverse[x * n + v] = y as u32;
            }
        }
        Rack {
            size: n,
            table: flat,
            inverse,
            labels: None,
        }
    }

    fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
        Self::from_table_unchecked(&table)
    }

    /// The trivial rack `x ▷ y = y` on `n` points.
    pub fn abelian(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(n, |_, y| y)
    }

    /// The permutation rack `x ▷ y = σ(y)`.
    pub fn permutation_rack(sigma: &Permutation) -> Self {
        Self::from_fn(sigma.degree(), |_, y| sigma.apply(y))
    }

    /// `x ▷ y = 2x − y (mod p)`, isomorphic to the involutions of the dihedral
    /// group of order `2p`.
    pub fn dihedral(p: usize) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "dihedral rack needs an odd p ≥ 3, got {p}"
            )));
        }
        Ok(Self::from_fn(p, |x, y| (2 * x + p - y) % p))
    }

    /// Conjugation rack `x ▷ y = x y x⁻¹` on the sorted members of `cls`.
    pub fn conjugation(cls: &ConjugacyClass, cap: usize) -> Result<Self> {
        let n = cls.size();
        if n > cap {
            return Err(Error::RackTooLarge { size: n, cap });
        }
        let members = &cls.members;
        let mut rack = Self::from_fn(n, |x, y| {
            cls.index_of(&members[x].conjugate(&members[y]))
                .expect("class closed under conjugation")
        });
        rack.labels = Some(members.clone());
        Ok(rack)
    }

    /// The rack of 4-cycles in the symmetric group on 4 points.
    pub fn four_cycles() -> Self {
        let s4 = PermutationGroup::generate(
            4,
            vec![
                Permutation::parse("(1,2)", 4).expect("literal"),
                Permutation::parse("(1,2,3,4)", 4).expect("literal"),
            ],
            24,
        )
        .expect("S4");
        let members = s4.conjugacy_orbit(&Permutation::parse("(1,2,3,4)", 4).expect("literal"));
        let cls = ConjugacyClass {
            name: "4a".into(),
            representative: members[0].clone(),
            element_order: 4,
            members,
        };
        Self::conjugation(&cls, 6).expect("six elements")
    }

    /// Two copies of `self` on `X × {0, 1}` with `(x, i) ▷ (y, j) = (x ▷ y, j)`.
    /// Point `(x, i)` has index `i * |X| + x`.
    pub fn double(&self) -> Self {
        let n = self.size;
        Self::from_fn(2 * n, |a, b| {
            let (x, _) = (a % n, a / n);
            let (y, j) = (b % n, b / n);
            j * n + self.op(x, y)
        })
    }

    /// Relabels points by the bijection `perm` (`perm[x]` is the new name of `x`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.size;
        let mut inv = vec![0; n];
        for (x, &px) in perm.iter().enumerate() {
            inv[px] = x;
        }
        Self::from_fn(n, |a, b| perm[self.op(inv[a], inv[b])])
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    /// `φ_x⁻¹(y)`.
    #[inline]
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inverse[x * self.size + y] as usize
    }

    pub fn labels(&self) -> Option<&[Permutation]> {
        self.labels.as_deref()
    }

    pub fn to_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.op(x, y)).collect())
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        validate_rack(&self.to_table())
    }

    /// The translation `φ_x` as a permutation of the points.
    pub fn translation(&self, x: usize) -> Permutation {
        Permutation::from_images((0..self.size).map(|y| self.op(x, y)).collect())
            .expect("rows are bijections")
    }

    /// Whether every translation is the identity.
    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == y))
    }

    /// Whether `x ▷ x = x` for every `x`.
    pub fn is_quandle(&self) -> bool {
        (0..self.size).all(|x| self.op(x, x) == x)
    }

    /// Orbits of the group generated by all translations, each sorted,
    /// ordered by smallest element.
    pub fn inner_components(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (find(&mut parent, y), find(&mut parent, self.op(x, y)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for y in 0..n {
            let r = find(&mut parent, y);
            if slot[r] == usize::MAX {
                slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[r]].push(y);
        }
        comps
    }

    pub fn is_decomposable(&self) -> bool {
        self.inner_components().len() >= 2
    }

    /// Smallest subrack containing `seed`.
    pub fn subrack_generated(&self, seed: &[usize]) -> Result<Subrack<'_>> {
        self.subrack_generated_bounded(seed, self.size)?
            .ok_or_else(|| Error::Internal("unbounded closure exceeded rack size".into()))
    }

    /// Like [`Rack::subrack_generated`], but gives up (returning `None`) once the
    /// closure exceeds `limit` points.
    pub fn subrack_generated_bounded(
        &self,
        seed: &[usize],
        limit: usize,
    ) -> Result<Option<Subrack<'_>>> {
        if seed.is_empty() {
            return Err(Error::InvalidArgument("seed must be nonempty".into()));
        }
        if let Some(&bad) = seed.iter().find(|&&x| x >= self.size) {
            return Err(Error::InvalidArgument(format!(
                "seed point {bad} out of range"
            )));
        }
        let mut member = vec![false; self.size];
        let mut set: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        for &x in seed {
            if !member[x] {
                member[x] = true;
                set.push(x);
                queue.push_back(x);
            }
        }
        while let Some(e) = queue.pop_front() {
            let mut k = 0;
            while k < set.len() {
                let s = set[k];
                for v in [
                    self.op(e, s),
                    self.op(s, e),
                    self.inv_op(e, s),
                    self.inv_op(s, e),
                ] {
                    if !member[v] {
                        member[v] = true;
                        set.push(v);
                        queue.push_back(v);
                    }
                }
                k += 1;
            }
            if set.len() > limit {
                return Ok(None);
            }
        }
        set.sort_unstable();
        Ok(Some(Subrack {
            parent: self,
            indices: set,
        }))
    }

    /// Wraps an index set, checking that it is closed under `▷`.
    pub fn subrack(&self, indices: Vec<usize>) -> Result<Subrack<'_>> {
        let mut indices = indices;
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() || indices.last().is_some_and(|&x| x >= self.size) {
            return Err(Error::InvalidArgument(
                "subrack indices out of range".into(),
            ));
        }
        for &a in &indices {
            for &b in &indices {
                if indices.binary_search(&self.op(a, b)).is_err() {
                    return Err(Error::NotClosed);
                }
            }
        }
        Ok(Subrack {
            parent: self,
            indices,
        })
    }

    /// Translation cycle type per point, the invariant used to prune isomorphism search.
    pub(crate) fn profiles(&self) -> Vec<(Vec<usize>, bool)> {
        (0..self.size)
            .map(|x| (self.translation(x).cycle_type(), self.op(x, x) == x))
            .collect()
    }
}

/// A subset of a rack closed under `▷`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subrack<'a> {
    parent: &'a Rack,
    indices: Vec<usize>,
}

impl<'a> Subrack<'a> {
    pub fn parent(&self) -> &'a Rack {
        self.parent
    }

    /// Parent indices, sorted.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.indices.binary_search(&x).is_ok()
    }

    /// Position of parent index `x` inside the subrack.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.indices.binary_search(&x).ok()
    }

    /// The subrack as a standalone rack, points renumbered in sorted order.
    pub fn to_rack(&self) -> Rack {
        let k = self.indices.len();
        let mut rack = Rack::from_fn(k, |a, b| {
            self.local_index(self.parent.op(self.indices[a], self.indices[b]))
                .expect("closed")
        });
        rack.labels = self
            .parent
            .labels
            .as_ref()
            .map(|l| self.indices.iter().map(|&i| l[i].clone()).collect());
        rack
    }

    pub fn is_abelian(&self) -> bool {
        self.indices
            .iter()
            .all(|&a| self.indices.iter().all(|&b| self.parent.op(a, b) == b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_tables() {
        assert!(validate_rack(&[vec![0]]));
        assert!(validate_rack(&[
            vec![0, 1, 2],
            vec![0, 1, 2],
            vec![0, 1, 2]
        ]));
        assert!(!validate_rack(&[vec![0, 0], vec![0, 1]]));
        assert!(!validate_rack(&[]));
        assert!(!validate_rack(&[vec![0, 1], vec![0]]));
        // bijective rows but not self-distributive
        assert!(!validate_rack(&[
            vec![1, 0, 2],
            vec![0, 1, 2],
            vec![0, 1, 2]
        ]));
    }

    #[test]
    fn dihedral_racks() {
        for p in [3, 5, 7, 9, 11] {
            let d = Rack::dihedral(p).unwrap();
            assert!(d.is_valid());
            assert!(d.is_quandle());
            assert_eq!(d.inner_components().len(), 1);
        }
        assert!(Rack::dihedral(4).is_err());
        assert!(Rack::dihedral(1).is_err());
        let d3 = Rack::dihedral(3).unwrap();
        assert_eq!(d3.op(0, 1), 2);
        assert!(!d3.is_abelian());
    }

    #[test]
    fn doubles() {
        let one = Rack::abelian(1).double();
        assert_eq!(one.size(), 2);
        assert!(one.is_abelian());
        let d = Rack::dihedral(3).unwrap().double();
        assert!(d.is_valid());
        assert_eq!(d.inner_components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(Rack::four_cycles().double().is_valid());
    }

    #[test]
    fn abelian_components_are_singletons() {
        let a = Rack::abelian(4);
        assert!(a.is_abelian());
        assert_eq!(a.inner_components().len(), 4);
    }

    #[test]
    fn subrack_closure() {
        let d3 = Rack::dihedral(3).unwrap();
        assert_eq!(d3.subrack_generated(&[0]).unwrap().indices(), &[0]);
        assert_eq!(d3.subrack_generated(&[0, 1]).unwrap().indices(), &[0, 1, 2]);
        assert_eq!(
            d3.subrack_generated(&[0, 1, 2]).unwrap().indices(),
            &[0, 1, 2]
        );
        assert!(d3.subrack_generated(&[]).is_err());
        assert!(d3.subrack_generated(&[5]).is_err());
        assert!(d3.subrack_generated_bounded(&[0, 1], 2).unwrap().is_none());
        assert_eq!(d3.subrack(vec![0, 1]), Err(Error::NotClosed));
    }

    #[test]
    fn four_cycle_rack() {
        let o = Rack::four_cycles();
        assert_eq!(o.size(), 6);
        assert!(o.is_valid());
        assert_eq!(o.inner_components().len(), 1);
        let labels = o.labels().unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(labels[o.op(x, y)], labels[x].conjugate(&labels[y]));
            }
        }
    }

    #[test]
    fn literal_round_trip() {
        let d = Rack::dihedral(5).unwrap();
        let lit = d.to_literal();
        assert_eq!(Rack::from_literal(&lit).unwrap().to_table(), d.to_table());
        let bad = RackLiteral {
            size: 2,
            table: vec![vec![0, 0], vec![1, 1]],
        };
        assert!(matches!(
            Rack::from_literal(&bad),
            Err(Error::InvalidRack(_))
        ));
    }
}
