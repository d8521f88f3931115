//! Rack 2-cocycles with cyclotomic values and the braided vector spaces they
//! define: `c(e_x ⊗ e_y) = q_{x,y} e_{x▷y} ⊗ e_x`.

pub mod cyclotomic;
mod group_cocycle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Monomial, Ring};
use crate::rack::{Rack, Subrack};

pub use cyclotomic::{parse_root_of_unity, Cyclotomic, RootOfUnity};
pub use group_cocycle::{cocycle_from_character, CharacterCocycles};

/// A scalar 2-cocycle `q: X × X → 𝕜^×` on a rack, all values at one conductor.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    rack: Rack,
    conductor: u64,
    /// Row-major `q_{x,y}`.
    values: Vec<Cyclotomic>,
}

/// JSON literal for cocycles: either `{"constant": "-1"}` or
/// `{"conductor": m, "values": [[[[num, den], ...], ...], ...]}` where the
/// innermost list holds the coefficients of `1, ζ_m, ζ_m^2, …`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleLiteral {
    Constant {
        constant: String,
    },
    Explicit {
        conductor: u64,
        values: Vec<Vec<Vec<(i64, i64)>>>,
    },
}

/// Finds a triple where `q_{x,y▷z} q_{y,z} = q_{x▷y,x▷z} q_{x,z}` fails.
fn find_violation(
    rack: &Rack,
    q: impl Fn(usize, usize) -> Cyclotomic,
) -> Option<(usize, usize, usize)> {
    let n = rack.size();
    for x in 0..n {
        for y in 0..n {
            let xy = rack.op(x, y);
            for z in 0..n {
                let lhs = q(x, rack.op(y, z)).mul(&q(y, z));
                let rhs = q(xy, rack.op(x, z)).mul(&q(x, z));
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

impl Cocycle {
    /// Builds a cocycle from a matrix of values, lifting everything to a common
    /// conductor. Fails on zero entries or when the cocycle identity does not hold.
    pub fn new(rack: Rack, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let q = Self::new_unchecked(rack, values)?;
        if let Some((x, y, z)) = q.violation() {
            return Err(Error::CocycleViolation { x, y, z });
        }
        Ok(q)
    }

    /// Like [`Cocycle::new`] without checking the cocycle identity.
    pub fn new_unchecked(rack: Rack, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rack.size();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidCocycle(format!("expected a {n}×{n} matrix")));
        }
        let conductor = values
            .iter()
            .flatten()
            .fold(1u64, |acc, v| num_integer::lcm(acc, v.conductor()));
        let mut flat = Vec::with_capacity(n * n);
        for (x, row) in values.into_iter().enumerate() {
            for (y, v) in row.into_iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::InvalidCocycle(format!("q[{x}][{y}] is zero")));
                }
                flat.push(v.lift(conductor));
            }
        }
        Ok(Cocycle {
            rack,
            conductor,
            values: flat,
        })
    }

    /// `q ≡ λ`; always a cocycle.
    pub fn constant(rack: &Rack, lambda: &Cyclotomic) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidCocycle("constant must be nonzero".into()));
        }
        let n = rack.size();
        Ok(Cocycle {
            rack: rack.clone(),
            conductor: lambda.conductor(),
            values: vec![lambda.clone(); n * n],
        })
    }

    /// Cocycle with root-of-unity values, checked.
    pub fn from_roots(rack: Rack, roots: &[Vec<RootOfUnity>]) -> Result<Self> {
        let m = roots
            .iter()
            .flatten()
            .fold(1u64, |acc, r| num_integer::lcm(acc, r.order()));
        let values = roots
            .iter()
            .map(|row| row.iter().map(|r| r.to_cyclotomic(m)).collect())
            .collect();
        Cocycle::new(rack, values)
    }

    pub fn from_literal(rack: &Rack, lit: &CocycleLiteral) -> Result<Self> {
        match lit {
            CocycleLiteral::Constant { constant } => {
                let root = parse_root_of_unity(constant)?;
                Cocycle::constant(rack, &root.to_cyclotomic(root.order()))
            }
            CocycleLiteral::Explicit { conductor, values } => {
                let matrix = values
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|pairs| Cyclotomic::from_fraction_pairs(*conductor, pairs))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Cocycle::new(rack.clone(), matrix)
            }
        }
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> &Cyclotomic {
        &self.values[x * self.rack.size() + y]
    }

    pub fn to_matrix(&self) -> Vec<Vec<Cyclotomic>> {
        let n = self.rack.size();
        (0..n)
            .map(|x| (0..n).map(|y| self.value(x, y).clone()).collect())
            .collect()
    }

    /// First triple violating the cocycle identity, in lexicographic order.
    pub fn violation(&self) -> Option<(usize, usize, usize)> {
        // roots of unity multiply by adding exponents, which is much cheaper
        let m = num_integer::lcm(self.conductor, 2);
        let exponents: Option<Vec<u64>> = self
            .values
            .iter()
            .map(|v| v.as_root_of_unity().map(|r| r.exponent_in(m)))
            .collect();
        let Some(e) = exponents else {
            return find_violation(&self.rack, |x, y| self.value(x, y).clone());
        };
        let n = self.rack.size();
        let rack = &self.rack;
        let q = |x: usize, y: usize| e[x * n + y];
        (0..n).find_map(|x| {
            (0..n).find_map(|y| {
                let xy = rack.op(x, y);
                (0..n)
                    .find(|&z| {
                        (q(x, rack.op(y, z)) + q(y, z)) % m != (q(xy, rack.op(x, z)) + q(x, z)) % m
                    })
                    .map(|z| (x, y, z))
            })
        })
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// Entry-wise restriction to a subrack of `self.rack()`.
    pub fn restrict(&self, sub: &Subrack<'_>) -> Result<Cocycle> {
        if sub.parent() != &self.rack {
            return Err(Error::InvalidArgument("subrack of a different rack".into()));
        }
        // re-check closure: Subrack values are closed by construction
        let idx = sub.indices();
        let values = idx
            .iter()
            .map(|&a| idx.iter().map(|&b| self.value(a, b).clone()).collect())
            .collect();
        Cocycle::new_unchecked(sub.to_rack(), values)
    }

    /// Same cocycle on the relabeled rack (`perm[x]` is the new name of `x`).
    pub fn relabel(&self, perm: &[usize]) -> Cocycle {
        let n = self.rack.size();
        let mut inv = vec![0; n];
        for (x, &px) in perm.iter().enumerate() {
            inv[px] = x;
        }
        let values = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.value(inv[a], inv[b]).clone())
            .collect();
        Cocycle {
            rack: self.rack.relabel(perm),
            conductor: self.conductor,
            values,
        }
    }
}

/// Whether `q` satisfies the cocycle identity for all triples.
pub fn validate_cocycle(q: &Cocycle) -> bool {
    q.is_valid()
}

/// `q_{x,y} = λ` for all `x, y`.
pub fn constant_cocycle(rack: &Rack, lambda: &Cyclotomic) -> Result<Cocycle> {
    Cocycle::constant(rack, lambda)
}

/// Restriction of `q` to `sub`.
pub fn restrict_cocycle(q: &Cocycle, sub: &Subrack<'_>) -> Result<Cocycle> {
    q.restrict(sub)
}

/// A braided vector space `(𝕜X, c^q)` with basis `e_x`, `x ∈ X`.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidedSpace {
    cocycle: Cocycle,
}

impl BraidedSpace {
    pub fn new(cocycle: Cocycle) -> Self {
        BraidedSpace { cocycle }
    }

    pub fn rack(&self) -> &Rack {
        &self.cocycle.rack
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn dimension(&self) -> usize {
        self.cocycle.rack.size()
    }

    pub fn conductor(&self) -> u64 {
        self.cocycle.conductor
    }

    /// `c^q` on `V ⊗ V` in the lexicographic basis `e_x ⊗ e_y` (index `x·n + y`),
    /// with scalars mapped into `ring`.
    pub fn braiding_in<R: Ring>(&self, ring: &R) -> Result<Monomial<R::Elem>> {
        let n = self.dimension();
        let rack = self.rack();
        let mut target = Vec::with_capacity(n * n);
        let mut coeff = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                target.push((rack.op(x, y) * n + x) as u32);
                let v = ring.embed(self.cocycle.value(x, y)).ok_or_else(|| {
                    Error::InvalidArgument(
                        "cocycle value not representable in the target ring".into(),
                    )
                })?;
                coeff.push(v);
            }
        }
        Ok(Monomial { target, coeff })
    }

    /// `c^q` with exact cyclotomic coefficients.
    pub fn braiding_operator(&self) -> Monomial<Cyclotomic> {
        self.braiding_in(&crate::linalg::CyclotomicField {
            conductor: self.conductor(),
        })
        .expect("values live at the cocycle conductor")
    }
}

/// `(q_{xy})` on an abelian subrack, rows and columns in sorted index order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalBraiding {
    pub matrix: Vec<Vec<Cyclotomic>>,
}

impl DiagonalBraiding {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// Whether some diagonal entry `q_{xx}` equals 1.
    pub fn has_trivial_diagonal_entry(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .any(|(i, row)| row[i].is_one())
    }
}

/// The diagonal braiding matrix of `q` restricted to an abelian subrack.
pub fn diagonal_from_abelian(sub: &Subrack<'_>, q: &Cocycle) -> Result<DiagonalBraiding> {
    if !sub.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let idx = sub.indices();
    Ok(DiagonalBraiding {
        matrix: idx
            .iter()
            .map(|&a| idx.iter().map(|&b| q.value(a, b).clone()).collect())
            .collect(),
    })
}

/// The braid equation `(c⊗id)(id⊗c)(c⊗id) = (id⊗c)(c⊗id)(id⊗c)` on `V^{⊗3}`,
/// checked exactly.
pub fn braid_equation_holds(v: &BraidedSpace) -> bool {
    let ring = crate::linalg::CyclotomicField {
        conductor: v.conductor(),
    };
    let ops = crate::nichols::BraidOperators::new(&ring, v, 3).expect("exact embedding");
    let (c1, c2) = (&ops.generators()[0], &ops.generators()[1]);
    let lhs = c1.compose(&ring, c2).compose(&ring, c1);
    let rhs = c2.compose(&ring, c1).compose(&ring, c2);
    lhs == rhs
}
