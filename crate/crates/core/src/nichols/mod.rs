//! Braid-group representations on `V^{⊗n}`, quantum symmetrizers and the
//! graded dimensions of Nichols algebras.

mod dims;

use crate::braiding::BraidedSpace;
use crate::error::{Error, Result};
use crate::linalg::{Monomial, Ring, SparseMatrix};

pub use dims::{
    graded_dimension, hilbert_prefix, hilbert_prefix_with, hurwitz_orbits, prefix_from_dimension,
    symmetrizer_dump, DumpEntry, GradedDims, MatrixDump, NicholsCaps, RankMethod, SeriesStatus,
    Truncation,
};

/// Largest degree for which the literal `n!`-term symmetrizer is built.
pub const ORACLE_DEGREE_CAP: usize = 5;

/// The operators `c_i = id^{⊗(i−1)} ⊗ c ⊗ id^{⊗(n−i−1)}`, `1 ≤ i < n`, on `V^{⊗n}`
/// in the lexicographic basis.
#[derive(Clone, Debug)]
pub struct BraidOperators<E> {
    n: usize,
    dim: usize,
    generators: Vec<Monomial<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> BraidOperators<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, space: &BraidedSpace, n: usize) -> Result<Self> {
        let c = space.braiding_in(ring)?;
        Ok(Self::from_braiding(space.dimension(), &c, n))
    }

    /// Builds the `c_i` from the braiding `c` on `V ⊗ V` given as a monomial on `dim²` points.
    pub fn from_braiding(dim: usize, c: &Monomial<E>, n: usize) -> Self {
        let total = dim.pow(n as u32);
        let generators = (1..n)
            .map(|i| {
                let suffix = dim.pow((n - i - 1) as u32);
                let pair = dim * dim;
                let mut target = Vec::with_capacity(total);
                let mut coeff = Vec::with_capacity(total);
                for j in 0..total {
                    let b = j % suffix;
                    let xy = (j / suffix) % pair;
                    let a = j / (suffix * pair);
                    target.push(((a * pair + c.target[xy] as usize) * suffix + b) as u32);
                    coeff.push(c.coeff[xy].clone());
                }
                Monomial { target, coeff }
            })
            .collect();
        BraidOperators { n, dim, generators }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base_dimension(&self) -> usize {
        self.dim
    }

    /// `dim^n`.
    pub fn size(&self) -> usize {
        self.dim.pow(self.n as u32)
    }

    /// `c_1, …, c_{n−1}`.
    pub fn generators(&self) -> &[Monomial<E>] {
        &self.generators
    }

    /// `c_{i_1} ⋯ c_{i_k}` for a word of 1-based generator indices.
    pub fn word_operator<R: Ring<Elem = E>>(&self, ring: &R, word: &[usize]) -> Monomial<E> {
        word.iter()
            .fold(Monomial::identity(ring, self.size()), |acc, &i| {
                acc.compose(ring, &self.generators[i - 1])
            })
    }
}

/// A reduced word for `sigma` (one-line notation on `0..n`) as 1-based
/// adjacent-transposition indices `i_1, …, i_k` with `σ = s_{i_1} ⋯ s_{i_k}`.
///
/// Obtained by bubble sort: sorting `σ` by right multiplications `σ s_{j_1} ⋯ s_{j_k} = e`
/// and reading the swaps backwards.
pub fn reduced_word(sigma: &[usize]) -> Vec<usize> {
    let mut w = sigma.to_vec();
    let mut swaps = Vec::new();
    let n = w.len();
    for pass in 0..n {
        for i in 0..n.saturating_sub(pass + 1) {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                swaps.push(i + 1);
            }
        }
    }
    swaps.reverse();
    swaps
}

/// Every reduced word of `sigma`, in lexicographic order.
pub fn all_reduced_words(sigma: &[usize]) -> Vec<Vec<usize>> {
    let descents: Vec<usize> = (0..sigma.len().saturating_sub(1))
        .filter(|&i| sigma[i] > sigma[i + 1])
        .collect();
    if descents.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in descents {
        let mut shorter = sigma.to_vec();
        shorter.swap(i, i + 1);
        for mut word in all_reduced_words(&shorter) {
            word.push(i + 1);
            out.push(word);
        }
    }
    out.sort();
    out
}

/// Number of inversions of `sigma`.
pub fn inversions(sigma: &[usize]) -> usize {
    (0..sigma.len())
        .map(|i| {
            (i + 1..sigma.len())
                .filter(|&j| sigma[i] > sigma[j])
                .count()
        })
        .sum()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| current[j] > current[i])
            .expect("successor");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

/// `ρ_n(M(σ))`: the product of the `c_i` along the reduced word of `σ`.
pub fn matsumoto_operator<R: Ring>(
    ring: &R,
    ops: &BraidOperators<R::Elem>,
    sigma: &[usize],
) -> Monomial<R::Elem> {
    assert_eq!(sigma.len(), ops.degree(), "permutation degree must match");
    ops.word_operator(ring, &reduced_word(sigma))
}

/// `Σ_{σ ∈ 𝕊_n} ρ_n(M(σ))` summed term by term.
pub fn quantum_symmetrizer_direct<R: Ring>(
    ring: &R,
    ops: &BraidOperators<R::Elem>,
) -> Result<SparseMatrix<R::Elem>> {
    if ops.degree() > ORACLE_DEGREE_CAP {
        return Err(Error::OracleDegree {
            degree: ops.degree(),
            cap: ORACLE_DEGREE_CAP,
        });
    }
    let terms: Vec<Monomial<R::Elem>> = permutations(ops.degree())
        .iter()
        .map(|sigma| matsumoto_operator(ring, ops, sigma))
        .collect();
    Ok(SparseMatrix::sum_of_monomials(ring, ops.size(), &terms))
}

/// `id_V ⊗ A` on `V^{⊗n}` for `A` on `V^{⊗(n−1)}`.
fn identity_tensor<E: Clone + PartialEq + std::fmt::Debug + Send + Sync>(
    dim: usize,
    a: &SparseMatrix<E>,
) -> SparseMatrix<E> {
    let inner = a.dim;
    let mut columns = Vec::with_capacity(dim * inner);
    for x in 0..dim {
        let shift = (x * inner) as u32;
        for col in &a.columns {
            columns.push(col.iter().map(|(r, v)| (r + shift, v.clone())).collect());
        }
    }
    SparseMatrix {
        dim: dim * inner,
        columns,
    }
}

/// `Σ_{j=0}^{n−1} c_1 c_2 ⋯ c_j`.
fn coset_sum<R: Ring>(ring: &R, ops: &BraidOperators<R::Elem>) -> SparseMatrix<R::Elem> {
    let mut prefix = Monomial::identity(ring, ops.size());
    let mut terms = vec![prefix.clone()];
    for c in ops.generators() {
        prefix = prefix.compose(ring, c);
        terms.push(prefix.clone());
    }
    SparseMatrix::sum_of_monomials(ring, ops.size(), &terms)
}

/// `Q_n` from `Q_{n−1}`: `Q_n = (id ⊗ Q_{n−1}) · Σ_j c_1 ⋯ c_j`.
pub fn symmetrizer_step<R: Ring>(
    ring: &R,
    ops: &BraidOperators<R::Elem>,
    previous: &SparseMatrix<R::Elem>,
) -> SparseMatrix<R::Elem> {
    identity_tensor(ops.base_dimension(), previous).mul(ring, &coset_sum(ring, ops))
}

/// `Q_n` by the recursive factorization, starting from `Q_1 = id`.
pub fn quantum_symmetrizer<R: Ring>(
    ring: &R,
    space: &BraidedSpace,
    n: usize,
) -> Result<SparseMatrix<R::Elem>> {
    let c = space.braiding_in(ring)?;
    let d = space.dimension();
    let mut q = Monomial::identity(ring, d).to_sparse(ring);
    for k in 2..=n {
        let ops = BraidOperators::from_braiding(d, &c, k);
        q = symmetrizer_step(ring, &ops, &q);
    }
    if n == 0 {
        q = Monomial::identity(ring, 1).to_sparse(ring);
    }
    Ok(q)
}
