//! Scalar rings, sparse and monomial operators, and exact rank.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::braiding::cyclotomic::{inv_mod, mul_mod, pow_mod};
use crate::braiding::Cyclotomic;
use crate::error::Result;

/// A commutative ring whose elements carry no context of their own.
pub trait Ring: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of a cyclotomic number, or `None` if it is not representable.
    fn embed(&self, c: &Cyclotomic) -> Option<Self::Elem>;
}

/// `ℚ(ζ_m)` with every element kept at conductor `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    pub conductor: u64,
}

impl Ring for CyclotomicField {
    type Elem = Cyclotomic;

    fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.conductor)
    }
    fn one(&self) -> Cyclotomic {
        Cyclotomic::one(self.conductor)
    }
    fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a.add(b)
    }
    fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a.mul(b)
    }
    fn embed(&self, c: &Cyclotomic) -> Option<Cyclotomic> {
        self.conductor
            .is_multiple_of(c.conductor())
            .then(|| c.lift(self.conductor))
    }
}

/// `𝔽_p` for a prime `p < 2^32`, receiving `ℚ(ζ_m)` through `ζ_m ↦ omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
    pub conductor: u64,
    pub omega: u64,
}

impl PrimeField {
    /// `𝔽_p` receiving only rationals.
    pub fn new(p: u64) -> Self {
        PrimeField {
            p,
            conductor: 1,
            omega: 1,
        }
    }

    /// `𝔽_p` with a primitive `m`-th root of unity; needs `p ≡ 1 (mod m)`.
    pub fn split(p: u64, m: u64) -> Self {
        PrimeField {
            p,
            conductor: m,
            omega: primitive_root_of_unity(m, p),
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn embed(&self, c: &Cyclotomic) -> Option<u64> {
        if !self.conductor.is_multiple_of(c.conductor()) {
            return None;
        }
        let omega = pow_mod(self.omega, self.conductor / c.conductor(), self.p);
        c.reduce_mod(self.p, omega)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Modular primes stay below this so `rank_mod_p` can defer reductions.
pub const MODULAR_TOP: u64 = 1 << 26;

/// Primes `p ≡ 1 (mod m)` below `MODULAR_TOP`, largest first, skipping any
/// prime that divides `avoid`.
pub fn split_primes(m: u64, count: usize, avoid: &BigInt) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let top: u64 = MODULAR_TOP;
    let mut p = top - 1 - ((top - 2) % m);
    while out.len() < count && p > m {
        if is_prime(p) && (avoid.is_zero() || !(avoid % BigInt::from(p)).is_zero()) {
            out.push(p);
        }
        p -= m;
    }
    out
}

/// A primitive `m`-th root of unity modulo `p`, with `p ≡ 1 (mod m)`.
pub fn primitive_root_of_unity(m: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % m, 0);
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    let generator = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime field has a generator");
    pow_mod(generator, (p - 1) / m, p)
}

/// An operator with exactly one nonzero entry per column: column `j` maps to
/// row `target[j]` with coefficient `coeff[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial<E> {
    pub target: Vec<u32>,
    pub coeff: Vec<E>,
}

impl<E: Clone + PartialEq + Debug + Send + Sync> Monomial<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, dim: usize) -> Self {
        Monomial {
            target: (0..dim as u32).collect(),
            coeff: vec![ring.one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// `self · other` (apply `other` first).
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R, other: &Monomial<E>) -> Monomial<E> {
        let mut target = Vec::with_capacity(other.dim());
        let mut coeff = Vec::with_capacity(other.dim());
        for (j, &t) in other.target.iter().enumerate() {
            target.push(self.target[t as usize]);
            coeff.push(ring.mul(&self.coeff[t as usize], &other.coeff[j]));
        }
        Monomial { target, coeff }
    }

    pub fn to_sparse<R: Ring<Elem = E>>(&self, ring: &R) -> SparseMatrix<E> {
        let columns = self
            .target
            .iter()
            .zip(&self.coeff)
            .map(|(&t, c)| {
                if ring.is_zero(c) {
                    vec![]
                } else {
                    vec![(t, c.clone())]
                }
            })
            .collect();
        SparseMatrix {
            dim: self.dim(),
            columns,
        }
    }

    /// Dense row-major form, for small exact comparisons.
    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        self.to_sparse(ring).to_dense(ring)
    }
}

/// A square sparse matrix in column-major form; each column holds
/// `(row, value)` pairs sorted by row with no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    pub dim: usize,
    pub columns: Vec<Vec<(u32, E)>>,
}

impl<E: Clone + PartialEq + Debug + Send + Sync> SparseMatrix<E> {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            columns: vec![Vec::new(); dim],
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Accumulates `scale · column` into a dense scratch column.
    fn accumulate<R: Ring<Elem = E>>(
        ring: &R,
        scratch: &mut [Option<E>],
        touched: &mut Vec<u32>,
        column: &[(u32, E)],
        scale: &E,
    ) {
        for (r, v) in column {
            let term = ring.mul(scale, v);
            match &mut scratch[*r as usize] {
                Some(acc) => *acc = ring.add(acc, &term),
                slot @ None => {
                    *slot = Some(term);
                    touched.push(*r);
                }
            }
        }
    }

    fn drain_scratch<R: Ring<Elem = E>>(
        ring: &R,
        scratch: &mut [Option<E>],
        touched: &mut Vec<u32>,
    ) -> Vec<(u32, E)> {
        touched.sort_unstable();
        let mut out = Vec::with_capacity(touched.len());
        for &r in touched.iter() {
            let v = scratch[r as usize].take().expect("touched");
            if !ring.is_zero(&v) {
                out.push((r, v));
            }
        }
        touched.clear();
        out
    }

    /// `Σ_k terms[k]` for monomial terms.
    pub fn sum_of_monomials<R: Ring<Elem = E>>(
        ring: &R,
        dim: usize,
        terms: &[Monomial<E>],
    ) -> Self {
        let mut scratch: Vec<Option<E>> = vec![None; dim];
        let mut touched = Vec::new();
        let one = ring.one();
        let columns = (0..dim)
            .map(|j| {
                for t in terms {
                    Self::accumulate(
                        ring,
                        &mut scratch,
                        &mut touched,
                        &[(t.target[j], t.coeff[j].clone())],
                        &one,
                    );
                }
                Self::drain_scratch(ring, &mut scratch, &mut touched)
            })
            .collect();
        SparseMatrix { dim, columns }
    }

    /// Column `j` of the product `self · m` for a monomial `m`: `m_coeff · self[:, m_target]`.
    pub fn mul_monomial<R: Ring<Elem = E>>(&self, ring: &R, m: &Monomial<E>) -> Self {
        let columns = (0..self.dim)
            .map(|j| {
                let src = &self.columns[m.target[j] as usize];
                src.iter()
                    .filter_map(|(r, v)| {
                        let w = ring.mul(v, &m.coeff[j]);
                        (!ring.is_zero(&w)).then_some((*r, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix {
            dim: self.dim,
            columns,
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut scratch: Vec<Option<E>> = vec![None; self.dim];
        let mut touched = Vec::new();
        let one = ring.one();
        let columns = (0..self.dim)
            .map(|j| {
                Self::accumulate(ring, &mut scratch, &mut touched, &self.columns[j], &one);
                Self::accumulate(ring, &mut scratch, &mut touched, &other.columns[j], &one);
                Self::drain_scratch(ring, &mut scratch, &mut touched)
            })
            .collect();
        SparseMatrix {
            dim: self.dim,
            columns,
        }
    }

    /// `self · other` for general sparse operands.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut scratch: Vec<Option<E>> = vec![None; self.dim];
        let mut touched = Vec::new();
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (k, v) in col {
                    Self::accumulate(
                        ring,
                        &mut scratch,
                        &mut touched,
                        &self.columns[*k as usize],
                        v,
                    );
                }
                Self::drain_scratch(ring, &mut scratch, &mut touched)
            })
            .collect();
        SparseMatrix {
            dim: self.dim,
            columns,
        }
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        let mut dense = vec![vec![ring.zero(); self.dim]; self.dim];
        for (j, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                dense[*r as usize][j] = v.clone();
            }
        }
        dense
    }

    /// Dense row-major submatrix on the given (sorted) index set, used for
    /// both rows and columns.
    pub fn principal_block<R: Ring<Elem = E>>(&self, ring: &R, indices: &[u32]) -> Vec<Vec<E>> {
        let k = indices.len();
        let mut block = vec![vec![ring.zero(); k]; k];
        for (bj, &j) in indices.iter().enumerate() {
            for (r, v) in &self.columns[j as usize] {
                if let Ok(bi) = indices.binary_search(r) {
                    block[bi][bj] = v.clone();
                }
            }
        }
        block
    }
}

/// Rank over `𝔽_p` by incremental row echelon form: rows are taken in order,
/// reduced against the existing pivots, and a surviving row pivots on its
/// first nonzero column.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    debug_assert!(p < MODULAR_TOP);
    // entries stay below 2^64 for this many unreduced updates of size < 2^52
    const SLACK: u32 = 4000;
    let ncols = rows.first().map_or(0, Vec::len);
    // pivots[c] = normalized row with leading 1 at column c
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut r = row.clone();
        let mut pending = 0u32;
        let mut lead = None;
        for c in 0..ncols {
            let v = r[c] % p;
            r[c] = v;
            if v == 0 {
                continue;
            }
            match &pivots[c] {
                Some(prow) => {
                    let f = p - v;
                    for (x, &y) in r[c..].iter_mut().zip(&prow[c..]) {
                        *x += f * y;
                    }
                    pending += 1;
                    if pending == SLACK {
                        for x in &mut r[c..] {
                            *x %= p;
                        }
                        pending = 0;
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        if let Some(c) = lead {
            let inv = inv_mod(r[c], p);
            for v in r.iter_mut().skip(c) {
                *v = mul_mod(*v % p, inv, p);
            }
            pivots[c] = Some(r);
            rank += 1;
        }
    }
    rank
}

/// Exact rank over `ℚ(ζ_m)` by Gaussian elimination.
///
/// Pivot rows are normalized to a leading one; only rows with a nonzero entry
/// in the pivot column are touched, and only on the pivot row's support.
pub fn rank_exact(rows: &[Vec<Cyclotomic>]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    let ncols = first.len();
    let mut a: Vec<Vec<Cyclotomic>> = rows
        .iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let nrows = a.len();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(r) = (rank..nrows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, r);
        let inv = a[rank][c].inv()?;
        let support: Vec<usize> = (c..ncols).filter(|&j| !a[rank][j].is_zero()).collect();
        for &j in &support {
            a[rank][j] = a[rank][j].mul(&inv);
        }
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        tail.par_iter_mut().for_each(|row| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j] = row[j].sub(&f.mul(&prow[j]));
            }
        });
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(1, n)
    }

    #[test]
    fn modular_rank_of_small_matrices() {
        let p = 101;
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], p), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![3, 4]], p), 2);
        assert_eq!(rank_mod_p(&[vec![0, 0], vec![0, 0]], p), 0);
        assert_eq!(rank_mod_p(&[], p), 0);
    }

    #[test]
    fn exact_rank_matches_hand_computation() {
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(4), q(5), q(6)],
            vec![q(7), q(8), q(9)],
        ];
        assert_eq!(rank_exact(&m).unwrap(), 2);
        let id = vec![vec![q(2), q(0)], vec![q(0), q(3)]];
        assert_eq!(rank_exact(&id).unwrap(), 2);
    }

    #[test]
    fn exact_rank_over_gaussian_integers() {
        let i = Cyclotomic::root_of_unity(4, 1);
        let one = Cyclotomic::one(4);
        // [[1, i], [i, -1]] has rank 1
        let m = vec![vec![one.clone(), i.clone()], vec![i.clone(), i.mul(&i)]];
        assert_eq!(rank_exact(&m).unwrap(), 1);
        let m2 = vec![vec![one.clone(), i.clone()], vec![i.clone(), one.clone()]];
        assert_eq!(rank_exact(&m2).unwrap(), 2);
    }

    #[test]
    fn split_primes_are_one_mod_m() {
        let ps = split_primes(12, 3, &BigInt::from(0));
        assert_eq!(ps.len(), 3);
        for &p in &ps {
            assert_eq!(p % 12, 1);
            assert!(is_prime(p));
            let w = primitive_root_of_unity(12, p);
            assert_eq!(pow_mod(w, 12, p), 1);
            assert_ne!(pow_mod(w, 6, p), 1);
            assert_ne!(pow_mod(w, 4, p), 1);
        }
    }

    #[test]
    fn monomial_composition() {
        let ring = PrimeField::new(7);
        let a = Monomial {
            target: vec![1, 0],
            coeff: vec![2, 3],
        };
        let aa = a.compose(&ring, &a);
        assert_eq!(aa.target, vec![0, 1]);
        assert_eq!(aa.coeff, vec![6, 6]);
        let s =
            SparseMatrix::sum_of_monomials(&ring, 2, &[Monomial::identity(&ring, 2), a.clone()]);
        assert_eq!(s.to_dense(&ring), vec![vec![1, 3], vec![2, 1]]);
        assert_eq!(
            s.mul(&ring, &s),
            s.mul_monomial(&ring, &Monomial::identity(&ring, 2))
                .mul(&ring, &s)
        );
    }
}
