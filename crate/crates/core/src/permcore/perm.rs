use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Point images stored inline up to degree 16, which covers every shipped fixture.
type Images = SmallVec<[u16; 16]>;

/// A permutation of `{0, .., degree - 1}`.
///
/// Composition follows the left-action convention used for conjugation:
/// `(a * b)(i) = a(b(i))`, so `a * b` applies `b` first. With this convention
/// `x ▷ y = x * y * x⁻¹` is the conjugation rack product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Images,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::Parse(format!(
                "degree {n} exceeds the supported maximum"
            )));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(Error::Parse(format!(
                        "point {} out of range 1..{degree}",
                        p + 1
                    )));
                }
                if used[p] {
                    return Err(Error::Parse(format!("point {} repeated in cycles", p + 1)));
                }
                used[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based disjoint cycle notation such as `(1,2)(3,4)`.
    /// The empty string (or `()`) is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {text:?}")))?;
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::Parse(format!("nested parentheses in {text:?}")));
            }
            if !inner.trim().is_empty() {
                let mut cycle = Vec::new();
                for tok in inner.split(',') {
                    let tok = tok.trim();
                    let point: usize = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
                    if point == 0 || point > degree {
                        return Err(Error::Parse(format!(
                            "point {point} out of range 1..{degree}"
                        )));
                    }
                    cycle.push(point - 1);
                }
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// `self * other`, i.e. apply `other` first.
    #[inline]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images: Images = SmallVec::from_elem(0, self.degree());
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Permutation { images }
    }

    /// `self * x * self⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        // (g x g⁻¹)(g(i)) = g(x(i))
        let mut images: Images = SmallVec::from_elem(0, self.degree());
        for i in 0..self.degree() {
            images[self.images[i] as usize] = self.images[x.images[i] as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exponent: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let fixed = self.degree() - self.cycles().iter().map(Vec::len).sum::<usize>();
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, fixed));
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images.as_slice().cmp(other.images.as_slice())
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_double_transposition() {
        let p = Permutation::parse("(1,2)(3,4)", 4).unwrap();
        assert_eq!(p.images().collect::<Vec<_>>(), vec![1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(1,2)(3,4)");
    }

    #[test]
    fn empty_string_is_identity() {
        let p = Permutation::parse("", 5).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "()");
        assert!(Permutation::parse("()", 3).unwrap().is_identity());
    }

    #[test]
    fn three_cycle_squared() {
        let p = Permutation::parse("(1,2,3)", 3).unwrap();
        assert_eq!(p.compose(&p).to_string(), "(1,3,2)");
        assert_eq!(p.pow(2), p.compose(&p));
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::parse("(1,2)(2,3)", 3).is_err());
        assert!(Permutation::parse("(1,4)", 3).is_err());
        assert!(Permutation::parse("(0,1)", 3).is_err());
        assert!(Permutation::parse("(1,2", 3).is_err());
        assert!(Permutation::parse("1,2)", 3).is_err());
        assert!(Permutation::parse("((1,2))", 3).is_err());
        assert!(Permutation::parse("(1,x)", 3).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Permutation::parse("(1,2)", 3).unwrap();
        let b = Permutation::parse("(2,3)", 3).unwrap();
        // b sends 1 -> 1, then a sends 1 -> 2
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.conjugate(&b), a.compose(&b).compose(&a.inverse()));
    }

    #[test]
    fn cycle_type_counts_fixed_points() {
        let p = Permutation::parse("(1,2,3)", 5).unwrap();
        assert_eq!(p.cycle_type(), vec![1, 1, 3]);
    }
}
