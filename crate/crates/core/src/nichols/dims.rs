use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::{symmetrizer_step, BraidOperators};
use crate::braiding::cyclotomic::totient;
use crate::braiding::{BraidedSpace, Cyclotomic};
use crate::error::{Error, Result};
use crate::linalg::{
    rank_exact, rank_mod_p, split_primes, CyclotomicField, Monomial, PrimeField, Ring, SparseMatrix,
};

/// Limits for graded-dimension computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NicholsCaps {
    pub max_degree: usize,
    /// Largest `dim^n` for which `Q_n` is built.
    pub max_rows: usize,
}

impl Default for NicholsCaps {
    fn default() -> Self {
        NicholsCaps {
            max_degree: 12,
            max_rows: 20_000,
        }
    }
}

/// How ranks of `Q_n` are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RankMethod {
    /// Exact for small operators, otherwise modular with exact arbitration.
    #[default]
    Auto,
    Exact,
    /// Ranks modulo several split primes; disagreements fall back to exact.
    Modular,
}

/// Number of primes in the modular rank path.
const MODULAR_PRIMES: usize = 3;
/// Under `Auto`, operators with at most this many rows are ranked exactly.
const AUTO_EXACT_ROWS: usize = 1_000;
/// ... provided the elimination stays under this many rational operations,
/// estimated as `Σ k³/3 · φ(m)²` over blocks of size `k`.
const AUTO_EXACT_WORK: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesStatus {
    Complete,
    Truncated,
}

/// Why a series stopped before reaching a zero degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    /// First degree that was not computed.
    pub degree: usize,
    /// `"max_degree"` or `"rows"`.
    pub reason: String,
}

/// `dim 𝔅^n(V)` for `n = 0, 1, …` up to the first zero or a cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<u64>,
    pub status: SeriesStatus,
    /// `Σ dims` when complete.
    pub total: Option<u64>,
    pub truncation: Option<Truncation>,
    pub caps: NicholsCaps,
    /// False when some rank rests on agreement of modular ranks alone.
    pub exact: bool,
}

/// Orbits of the braid group on the basis of `V^{⊗n}`: points joined by some `c_i`.
/// `Q_n` is block diagonal with respect to them. Each orbit is sorted; orbits
/// are ordered by their smallest point.
pub fn hurwitz_orbits<E>(ops: &BraidOperators<E>) -> Vec<Vec<u32>>
where
    E: Clone + PartialEq + std::fmt::Debug + Send + Sync,
{
    let size = ops.size();
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    for c in ops.generators() {
        for (j, &t) in c.target.iter().enumerate() {
            let a = find(&mut parent, j as u32);
            let b = find(&mut parent, t);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut slot: Vec<Option<usize>> = vec![None; size];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for j in 0..size as u32 {
        let root = find(&mut parent, j) as usize;
        let k = *slot[root].get_or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[k].push(j);
    }
    orbits
}

/// `Q_n` over one ring, advanced one degree at a time.
struct Tower<R: Ring> {
    ring: R,
    braiding: Monomial<R::Elem>,
    dim: usize,
    degree: usize,
    q: SparseMatrix<R::Elem>,
}

impl<R: Ring> Tower<R> {
    fn new(ring: R, space: &BraidedSpace) -> Result<Self> {
        let braiding = space.braiding_in(&ring)?;
        let dim = space.dimension();
        let q = Monomial::identity(&ring, dim).to_sparse(&ring);
        Ok(Tower {
            ring,
            braiding,
            dim,
            degree: 1,
            q,
        })
    }

    fn advance_to(&mut self, n: usize) -> &SparseMatrix<R::Elem> {
        while self.degree < n {
            self.degree += 1;
            let ops = BraidOperators::from_braiding(self.dim, &self.braiding, self.degree);
            self.q = symmetrizer_step(&self.ring, &ops, &self.q);
        }
        &self.q
    }
}

/// Computes `rank Q_n` for successive `n` with a fixed strategy.
struct RankEngine<'a> {
    space: &'a BraidedSpace,
    method: RankMethod,
    exact: Option<Tower<CyclotomicField>>,
    modular: Vec<Tower<PrimeField>>,
}

impl<'a> RankEngine<'a> {
    fn new(space: &'a BraidedSpace, method: RankMethod) -> Self {
        RankEngine {
            space,
            method,
            exact: None,
            modular: Vec::new(),
        }
    }

    fn exact_tower(&mut self, n: usize) -> Result<&SparseMatrix<Cyclotomic>> {
        if self.exact.as_ref().is_none_or(|t| t.degree > n) {
            let ring = CyclotomicField {
                conductor: self.space.conductor(),
            };
            self.exact = Some(Tower::new(ring, self.space)?);
        }
        Ok(self.exact.as_mut().expect("just set").advance_to(n))
    }

    fn advance_modular(&mut self, n: usize) -> Result<()> {
        if self.modular.is_empty() || self.modular[0].degree > n {
            let m = self.space.conductor();
            let avoid = self
                .space
                .cocycle()
                .to_matrix()
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator_lcm()));
            self.modular = split_primes(m, MODULAR_PRIMES, &avoid)
                .into_iter()
                .map(|p| Tower::new(PrimeField::split(p, m), self.space))
                .collect::<Result<_>>()?;
        }
        for t in &mut self.modular {
            t.advance_to(n);
        }
        Ok(())
    }

    /// `rank Q_n` and whether it was certified exactly.
    fn rank(&mut self, n: usize) -> Result<(u64, bool)> {
        let d = self.space.dimension();
        if n == 0 {
            return Ok((1, true));
        }
        let ring = CyclotomicField {
            conductor: self.space.conductor(),
        };
        let c = self.space.braiding_in(&ring)?;
        let ops = BraidOperators::from_braiding(d, &c, n);
        let orbits = hurwitz_orbits(&ops);
        let rows = ops.size();
        let use_exact = match self.method {
            RankMethod::Exact => true,
            RankMethod::Auto => {
                let phi = totient(self.space.conductor()) as f64;
                let work: f64 = orbits
                    .iter()
                    .map(|o| (o.len() as f64).powi(3) / 3.0)
                    .sum::<f64>()
                    * phi
                    * phi;
                rows <= AUTO_EXACT_ROWS && work <= AUTO_EXACT_WORK
            }
            RankMethod::Modular => false,
        };
        if use_exact {
            let q = self.exact_tower(n)?;
            let ranks: Vec<usize> = orbits
                .par_iter()
                .map(|orbit| rank_exact(&q.principal_block(&ring, orbit)))
                .collect::<Result<_>>()?;
            return Ok((ranks.iter().sum::<usize>() as u64, true));
        }
        self.advance_modular(n)?;
        let towers = &self.modular;
        let per_block: Vec<Vec<usize>> = orbits
            .par_iter()
            .map(|orbit| {
                towers
                    .iter()
                    .map(|t| rank_mod_p(&t.q.principal_block(&t.ring, orbit), t.ring.p))
                    .collect()
            })
            .collect();
        let mut total = 0usize;
        let mut disputed = Vec::new();
        for (k, ranks) in per_block.iter().enumerate() {
            if ranks.iter().all(|&r| r == ranks[0]) {
                total += ranks[0];
            } else {
                disputed.push(k);
            }
        }
        if !disputed.is_empty() {
            let q = self.exact_tower(n)?;
            for k in disputed {
                total += rank_exact(&q.principal_block(&ring, &orbits[k]))?;
            }
        }
        Ok((total as u64, false))
    }
}

fn rows_at(dim: usize, n: usize) -> Option<usize> {
    dim.checked_pow(n as u32)
}

/// `rank Q_n`, the dimension of the degree-`n` component of `𝔅(V)`.
pub fn graded_dimension(space: &BraidedSpace, n: usize, caps: &NicholsCaps) -> Result<u64> {
    let rows = rows_at(space.dimension(), n).unwrap_or(usize::MAX);
    if rows > caps.max_rows {
        return Err(Error::MatrixTooLarge {
            rows,
            cap: caps.max_rows,
        });
    }
    Ok(RankEngine::new(space, RankMethod::Auto).rank(n)?.0)
}

/// Graded dimensions up to `max_degree` with operators of at most `dim_cap` rows.
pub fn hilbert_prefix(space: &BraidedSpace, max_degree: usize, dim_cap: usize) -> GradedDims {
    let caps = NicholsCaps {
        max_degree,
        max_rows: dim_cap,
    };
    hilbert_prefix_with(space, &caps, RankMethod::Auto)
        .expect("cocycle values embed in their own field")
}

/// The prefix when the caps already stop the series below degree 2, where
/// only `d_0 = 1` and `d_1 = dim` are known without building any operator.
pub fn prefix_from_dimension(dim: usize, caps: &NicholsCaps) -> Option<GradedDims> {
    if dim == 0 || caps.max_degree == 0 {
        return None;
    }
    let stop = if caps.max_degree == 1 {
        Truncation {
            degree: 2,
            reason: "max_degree".into(),
        }
    } else if rows_at(dim, 2).is_none_or(|r| r > caps.max_rows) {
        Truncation {
            degree: 2,
            reason: "rows".into(),
        }
    } else {
        return None;
    };
    if dim > caps.max_rows {
        return None;
    }
    Some(GradedDims {
        dims: vec![1, dim as u64],
        status: SeriesStatus::Truncated,
        total: None,
        truncation: Some(stop),
        caps: *caps,
        exact: true,
    })
}

/// [`hilbert_prefix`] with an explicit rank strategy.
pub fn hilbert_prefix_with(
    space: &BraidedSpace,
    caps: &NicholsCaps,
    method: RankMethod,
) -> Result<GradedDims> {
    let mut engine = RankEngine::new(space, method);
    let mut dims = vec![1u64];
    let mut exact = true;
    let mut truncation = None;
    let mut complete = false;
    for n in 1..=caps.max_degree {
        let rows = rows_at(space.dimension(), n).unwrap_or(usize::MAX);
        if rows > caps.max_rows {
            truncation = Some(Truncation {
                degree: n,
                reason: "rows".into(),
            });
            break;
        }
        let (r, certified) = engine.rank(n)?;
        exact &= certified;
        dims.push(r);
        if r == 0 {
            complete = true;
            break;
        }
    }
    if !complete && truncation.is_none() {
        truncation = Some(Truncation {
            degree: caps.max_degree + 1,
            reason: "max_degree".into(),
        });
    }
    Ok(GradedDims {
        total: complete.then(|| dims.iter().sum()),
        status: if complete {
            SeriesStatus::Complete
        } else {
            SeriesStatus::Truncated
        },
        dims,
        truncation,
        caps: *caps,
        exact,
    })
}

/// One nonzero entry of a dumped operator; `value[k] = [num, den]` is the
/// coefficient of `ζ^k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DumpEntry {
    pub row: u32,
    pub col: u32,
    pub value: Vec<[i64; 2]>,
}

/// `Q_n` in exact sparse form, rows and columns in the lexicographic basis of `V^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixDump {
    pub degree: usize,
    pub dimension: usize,
    pub conductor: u64,
    pub basis: String,
    pub entries: Vec<DumpEntry>,
}

/// Exact `Q_n` for external audit.
pub fn symmetrizer_dump(space: &BraidedSpace, n: usize, caps: &NicholsCaps) -> Result<MatrixDump> {
    let rows = rows_at(space.dimension(), n).unwrap_or(usize::MAX);
    if rows > caps.max_rows {
        return Err(Error::MatrixTooLarge {
            rows,
            cap: caps.max_rows,
        });
    }
    let ring = CyclotomicField {
        conductor: space.conductor(),
    };
    let q = super::quantum_symmetrizer(&ring, space, n)?;
    let mut entries = Vec::with_capacity(q.nnz());
    for (col, column) in q.columns.iter().enumerate() {
        for (row, v) in column {
            let value = v
                .coeffs()
                .iter()
                .map(|c| match (c.numer().to_i64(), c.denom().to_i64()) {
                    (Some(a), Some(b)) => Ok([a, b]),
                    _ => Err(Error::Internal("coefficient exceeds 64 bits".into())),
                })
                .collect::<Result<_>>()?;
            entries.push(DumpEntry {
                row: *row,
                col: col as u32,
                value,
            });
        }
    }
    entries.sort_by_key(|e| (e.row, e.col));
    Ok(MatrixDump {
        degree: n,
        dimension: q.dim,
        conductor: space.conductor(),
        basis: "lexicographic".into(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::constant_cocycle;
    use crate::rack::Rack;

    fn space(rack: Rack, q: i64) -> BraidedSpace {
        BraidedSpace::new(constant_cocycle(&rack, &Cyclotomic::from_integer(1, q)).unwrap())
    }

    #[test]
    fn one_point_series() {
        let g = hilbert_prefix(&space(Rack::abelian(1), -1), 12, 20_000);
        assert_eq!(g.dims, vec![1, 1, 0]);
        assert_eq!(g.status, SeriesStatus::Complete);
        assert_eq!(g.total, Some(2));
        assert!(g.exact);

        let g = hilbert_prefix(&space(Rack::abelian(1), 1), 4, 20_000);
        assert_eq!(g.dims, vec![1, 1, 1, 1, 1]);
        assert_eq!(g.status, SeriesStatus::Truncated);
        assert_eq!(g.total, None);
        assert_eq!(g.truncation.unwrap().reason, "max_degree");
    }

    #[test]
    fn dihedral_three() {
        let v = space(Rack::dihedral(3).unwrap(), -1);
        let g = hilbert_prefix(&v, 6, 20_000);
        assert_eq!(g.dims, vec![1, 3, 4, 3, 1, 0]);
        assert_eq!(g.total, Some(12));
        for method in [RankMethod::Exact, RankMethod::Modular] {
            let caps = NicholsCaps {
                max_degree: 6,
                max_rows: 20_000,
            };
            assert_eq!(hilbert_prefix_with(&v, &caps, method).unwrap().dims, g.dims);
        }
        assert_eq!(graded_dimension(&v, 3, &NicholsCaps::default()).unwrap(), 3);
    }

    #[test]
    fn row_cap_truncates() {
        let v = space(Rack::dihedral(3).unwrap(), -1);
        let g = hilbert_prefix(&v, 12, 30);
        assert_eq!(g.dims, vec![1, 3, 4, 3]);
        assert_eq!(
            g.truncation,
            Some(Truncation {
                degree: 4,
                reason: "rows".into()
            })
        );
        assert!(matches!(
            graded_dimension(
                &v,
                4,
                &NicholsCaps {
                    max_degree: 12,
                    max_rows: 30
                }
            ),
            Err(Error::MatrixTooLarge { rows: 81, cap: 30 })
        ));
    }

    #[test]
    fn hurwitz_orbits_partition() {
        let v = space(Rack::dihedral(3).unwrap(), -1);
        let ring = CyclotomicField { conductor: 1 };
        let ops = BraidOperators::new(&ring, &v, 3).unwrap();
        let orbits = hurwitz_orbits(&ops);
        let mut all: Vec<u32> = orbits.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..27).collect::<Vec<u32>>());
        // diagonal points (x, x, x) are fixed by every c_i
        assert!(orbits.contains(&vec![0]));
    }

    #[test]
    fn dump_small_operator() {
        let v = space(Rack::abelian(1), -1);
        let dump = symmetrizer_dump(&v, 1, &NicholsCaps::default()).unwrap();
        assert_eq!(
            dump.entries,
            vec![DumpEntry {
                row: 0,
                col: 0,
                value: vec![[1, 1]]
            }]
        );
        let dump = symmetrizer_dump(&v, 2, &NicholsCaps::default()).unwrap();
        assert!(dump.entries.is_empty());
    }
}
