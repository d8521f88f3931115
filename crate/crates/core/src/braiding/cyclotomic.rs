//! Exact arithmetic in cyclotomic fields `ℚ(ζ_m)`.
//!
//! An element of conductor `m` is a polynomial in `ζ_m` of degree `< φ(m)`,
//! reduced modulo the `m`-th cyclotomic polynomial. Binary operations on
//! elements of different conductors first lift both to the lcm conductor.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer coefficients of `Φ_m`, lowest degree first.
fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("poisoned").get(&m) {
        return Arc::clone(p);
    }
    // Φ_m = (x^m − 1) / ∏_{d | m, d < m} Φ_d
    let mut num: Vec<i64> = vec![0; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    let p = Arc::new(num);
    cache.lock().expect("poisoned").insert(m, Arc::clone(&p));
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An exact element of `ℚ(ζ_conductor)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

fn reduce(mut poly: Vec<BigRational>, m: u64) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    if poly.len() > d {
        for k in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi[..d].iter().enumerate() {
                if pj != 0 {
                    poly[k - d + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
    }
    poly.resize(d, BigRational::zero());
    poly
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        assert!(conductor >= 1);
        Cyclotomic {
            conductor,
            coeffs: vec![BigRational::zero(); totient(conductor) as usize],
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_integer(conductor: u64, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(conductor: u64, q: BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(m: u64, k: u64) -> Self {
        let k = (k % m) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Cyclotomic {
            conductor: m,
            coeffs: reduce(poly, m),
        }
    }

    /// Canonical form of `Σ coeffs[i] ζ_m^i` for an arbitrary-length coefficient list.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        Ok(Cyclotomic {
            conductor,
            coeffs: reduce(coeffs, conductor),
        })
    }

    /// Like [`Cyclotomic::from_coeffs`] from `(numerator, denominator)` pairs.
    pub fn from_fraction_pairs(conductor: u64, pairs: &[(i64, i64)]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(pairs.len());
        for &(n, d) in pairs {
            if d == 0 {
                return Err(Error::DivisionByZero);
            }
            coeffs.push(BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
        Self::from_coeffs(conductor, coeffs)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element in `ℚ(ζ_target)`; `conductor` must divide `target`.
    pub fn lift(&self, target: u64) -> Self {
        assert_eq!(target % self.conductor, 0, "conductor must divide target");
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Cyclotomic {
            conductor: target,
            coeffs: reduce(poly, target),
        }
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor.lcm(&b.conductor);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::unify(self, other);
            return a.add(&b);
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::unify(self, other);
            return a.mul(&b);
        }
        let n = self.coeffs.len();
        if n == 1 {
            return Cyclotomic {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut poly = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: reduce(poly, self.conductor),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(Cyclotomic {
                conductor: self.conductor,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        // invariant: s_i * self ≡ r_i (mod Φ)
        let mut r0 = trim(phi);
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs: reduce(s, self.conductor),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.conductor);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Whether every coefficient is an integer, i.e. the element lies in `ℤ[ζ_m]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Image under `ζ_m ↦ omega` in `𝔽_p`; `None` if a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64, omega: u64) -> Option<u64> {
        let big_p = BigInt::from(p);
        let mut acc = 0u64;
        let mut power = 1u64;
        for c in &self.coeffs {
            if !c.is_zero() {
                let num = mod_bigint(c.numer(), &big_p);
                let den = mod_bigint(c.denom(), &big_p);
                if den == 0 {
                    return None;
                }
                let term = mul_mod(num, inv_mod(den, p), p);
                acc = (acc + mul_mod(term, power, p)) % p;
            }
            power = mul_mod(power, omega, p);
        }
        Some(acc)
    }

    /// If the element is a root of unity `ζ_m^k`, returns it.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let m = self.conductor;
        // roots of unity in ℚ(ζ_m) are ±ζ_m^k, i.e. ζ_{lcm(2,m)}^j
        let big = m.lcm(&2);
        let lifted = self.lift(big);
        (0..big)
            .find(|&k| lifted == Cyclotomic::root_of_unity(big, k))
            .map(|k| RootOfUnity::new(big, k))
    }
}

fn mod_bigint(x: &BigInt, p: &BigInt) -> u64 {
    let r = x.mod_floor(p);
    u64::try_from(r).expect("residue fits u64")
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if (a | b) >> 32 == 0 {
        return (a * b) % p;
    }
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] * &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::unify(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let m = self.conductor;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "zeta{m}")?;
                    } else {
                        write!(f, "zeta{m}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `ζ_order^exponent`, normalized so that `order` is the exact multiplicative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(m: u64, k: u64) -> Self {
        assert!(m >= 1);
        let k = k % m;
        let g = m.gcd(&k);
        RootOfUnity {
            order: m / g,
            exponent: k / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity {
            order: 1,
            exponent: 0,
        }
    }

    pub fn minus_one() -> Self {
        RootOfUnity {
            order: 2,
            exponent: 1,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent relative to `ζ_order`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Exponent `k` with `self = ζ_m^k`; `self.order()` must divide `m`.
    pub fn exponent_in(&self, m: u64) -> u64 {
        assert_eq!(m % self.order, 0, "order must divide the conductor");
        self.exponent * (m / self.order)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.order.lcm(&other.order);
        RootOfUnity::new(m, self.exponent_in(m) + other.exponent_in(m))
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.order, self.order - self.exponent)
    }

    pub fn pow(&self, e: u64) -> Self {
        RootOfUnity::new(
            self.order,
            (self.exponent as u128 * e as u128 % self.order as u128) as u64,
        )
    }

    pub fn to_cyclotomic(&self, conductor: u64) -> Cyclotomic {
        Cyclotomic::root_of_unity(conductor, self.exponent_in(conductor))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => f.write_str("1"),
            (2, _) => f.write_str("-1"),
            (m, 1) => write!(f, "zeta{m}"),
            (m, k) => write!(f, "zeta{m}^{k}"),
        }
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `1`, `-1`, `zeta<m>`, `zeta<m>^<k>` or `-zeta<m>^<k>`.
pub fn parse_root_of_unity(text: &str) -> Result<RootOfUnity> {
    let t = text.trim();
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let base = if body == "1" {
        RootOfUnity::one()
    } else if let Some(rest) = body.strip_prefix("zeta") {
        let (m, k) = match rest.split_once('^') {
            Some((m, k)) => (m, k),
            None => (rest, "1"),
        };
        let m: u64 = m
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad root of unity {text:?}")))?;
        let k: u64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad root of unity {text:?}")))?;
        if m == 0 {
            return Err(Error::Parse(format!("bad root of unity {text:?}")));
        }
        RootOfUnity::new(m, k)
    } else {
        return Err(Error::Parse(format!("bad root of unity {text:?}")));
    };
    Ok(if negative {
        base.mul(&RootOfUnity::minus_one())
    } else {
        base
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, k: u64) -> Cyclotomic {
        Cyclotomic::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(15).len() as u64 - 1, totient(15));
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(z(4, 1).mul(&z(4, 1)), Cyclotomic::from_integer(4, -1));
        assert_eq!(z(4, 2), Cyclotomic::from_integer(1, -1));
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        assert_eq!(z(3, 1).add(&z(3, 2)), Cyclotomic::from_integer(3, -1));
    }

    #[test]
    fn zeta6_is_minus_zeta3_squared() {
        assert_eq!(z(6, 1), z(3, 2).neg());
        assert_eq!(z(6, 1).lift(12), z(12, 2));
    }

    #[test]
    fn inverse_of_non_unit() {
        let a = Cyclotomic::from_integer(5, 2).add(&z(5, 3));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
        assert_eq!(Cyclotomic::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            Cyclotomic::from_fraction_pairs(3, &[(1, 0)]),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn modular_image_respects_multiplication() {
        // p = 13 ≡ 1 (mod 4), 5 has order 4 mod 13
        let i = z(4, 1);
        assert_eq!(i.reduce_mod(13, 5), Some(5));
        assert_eq!(i.mul(&i).reduce_mod(13, 5), Some(12));
    }

    #[test]
    fn root_of_unity_normalization_and_parsing() {
        assert_eq!(RootOfUnity::new(4, 2), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(6, 0), RootOfUnity::one());
        assert_eq!(parse_root_of_unity("-1").unwrap(), RootOfUnity::minus_one());
        assert_eq!(
            parse_root_of_unity("zeta3^2").unwrap(),
            RootOfUnity::new(3, 2)
        );
        assert_eq!(
            parse_root_of_unity("-zeta3").unwrap(),
            RootOfUnity::new(6, 5)
        );
        assert!(parse_root_of_unity("two").is_err());
        assert_eq!(RootOfUnity::new(3, 2).to_string(), "zeta3^2");
        assert_eq!(z(12, 5).as_root_of_unity(), Some(RootOfUnity::new(12, 5)));
        assert_eq!(Cyclotomic::from_integer(1, 2).as_root_of_unity(), None);
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::from_integer(2, -1).to_string(), "-1");
        let a = Cyclotomic::from_integer(5, 2).sub(&z(5, 3));
        assert_eq!(a.to_string(), "2 - zeta5^3");
    }
}
