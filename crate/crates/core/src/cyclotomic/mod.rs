//! Exact arithmetic in the cyclotomic field `ℚ(ζ_N)`.
//!
//! Elements are stored over the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced
//! modulo the cyclotomic polynomial `Φ_N`, as an integer vector over a single
//! positive denominator. The representation is canonical, so equality is
//! structural.

mod literal;
pub mod numeric;
pub mod poly;
pub mod quotient;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use numeric::{complex_roots, ComplexApprox};
pub use poly::{poly_gcd_squarefree, CycPoly};
pub use quotient::QuotRing;

/// Data shared by every number at one cyclotomic level `N`.
#[derive(Debug)]
pub struct CycloLevel {
    n: u64,
    phi: usize,
    /// `Φ_N`, lowest degree first, monic.
    modulus: Vec<BigInt>,
    /// `ζ^k` reduced, for `0 <= k < N` (only cached for small levels).
    powers: Option<Vec<Vec<BigInt>>>,
}

impl PartialEq for CycloLevel {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CycloLevel {}

impl CycloLevel {
    /// Shared handle for level `n`.
    pub fn get(n: u64) -> Arc<CycloLevel> {
        assert!(n >= 1, "cyclotomic level must be positive");
        static LEVELS: OnceLock<Mutex<HashMap<u64, Arc<CycloLevel>>>> = OnceLock::new();
        let levels = LEVELS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(l) = levels.lock().unwrap().get(&n) {
            return l.clone();
        }
        let modulus = cyclotomic_polynomial(n);
        let phi = modulus.len() - 1;
        let mut level = CycloLevel { n, phi, modulus, powers: None };
        if (n as usize).saturating_mul(phi) <= 1 << 20 {
            let mut table = Vec::with_capacity(n as usize);
            let mut cur = vec![BigInt::zero(); phi];
            cur[0] = BigInt::one();
            for _ in 0..n {
                table.push(cur.clone());
                cur = level.times_zeta(&cur);
            }
            level.powers = Some(table);
        }
        let level = Arc::new(level);
        levels.lock().unwrap().entry(n).or_insert(level).clone()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn times_zeta(&self, v: &[BigInt]) -> Vec<BigInt> {
        let phi = self.phi;
        let top = v[phi - 1].clone();
        let mut out = vec![BigInt::zero(); phi];
        out[1..phi].clone_from_slice(&v[..phi - 1]);
        if !top.is_zero() {
            for j in 0..phi {
                out[j] -= &top * &self.modulus[j];
            }
        }
        out
    }

    fn zeta_power(&self, k: u64) -> Vec<BigInt> {
        let k = k % self.n;
        if let Some(table) = &self.powers {
            return table[k as usize].clone();
        }
        let mut cur = vec![BigInt::zero(); self.phi];
        cur[0] = BigInt::one();
        for _ in 0..k {
            cur = self.times_zeta(&cur);
        }
        cur
    }

    /// Reduce an integer polynomial of any length modulo `Φ_N`.
    fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        if p.len() > phi {
            for d in (phi..p.len()).rev() {
                let c = std::mem::take(&mut p[d]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..phi {
                    p[d - phi + j] -= &c * &self.modulus[j];
                }
            }
            p.truncate(phi);
        }
        p.resize(phi, BigInt::zero());
        p
    }
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            rem[i + j] -= &c * &den[j];
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// `Φ_n` as an integer coefficient vector, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            p = poly_div_exact(&p, &phi_d);
        }
    }
    p
}

/// An exact element of `ℚ(ζ_N)`.
#[derive(Clone)]
pub struct CycNum {
    level: Arc<CycloLevel>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(level: Arc<CycloLevel>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycNum { level, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(level: &Arc<CycloLevel>) -> Self {
        CycNum { level: level.clone(), num: vec![BigInt::zero(); level.phi], den: BigInt::one() }
    }

    pub fn one(level: &Arc<CycloLevel>) -> Self {
        Self::from_int(level, 1)
    }

    pub fn from_int(level: &Arc<CycloLevel>, v: i64) -> Self {
        let mut x = Self::zero(level);
        x.num[0] = BigInt::from(v);
        x
    }

    pub fn from_rational(level: &Arc<CycloLevel>, v: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); level.phi];
        num[0] = v.numer().clone();
        Self::from_parts(level.clone(), num, v.denom().clone())
    }

    /// Rational coefficients over the power basis (length `φ(N)`).
    pub fn from_coeffs(level: &Arc<CycloLevel>, coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let num = {
            num.resize(num.len().max(level.phi), BigInt::zero());
            level.reduce(num)
        };
        Self::from_parts(level.clone(), num, den)
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(level: &Arc<CycloLevel>, k: i64) -> Self {
        let k = k.rem_euclid(level.n as i64) as u64;
        CycNum { level: level.clone(), num: level.zeta_power(k), den: BigInt::one() }
    }

    /// `ζ_N^k` scaled by an integer.
    pub fn int_zeta(level: &Arc<CycloLevel>, c: i64, k: i64) -> Self {
        Self::zeta_pow(level, k).scale_int(c)
    }

    pub fn level(&self) -> &Arc<CycloLevel> {
        &self.level
    }

    pub fn n(&self) -> u64 {
        self.level.n
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.level.phi).map(|k| self.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Rational value if the number lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        Self::from_parts(self.level.clone(), self.num.iter().map(|a| a * &c).collect(), self.den.clone())
    }

    fn same_level(&self, other: &Self) {
        assert_eq!(self.level.n, other.level.n, "cyclotomic level mismatch");
    }

    fn add_impl(&self, other: &Self, sign: i32) -> Self {
        self.same_level(other);
        let num = if self.den == other.den {
            self.num.iter().zip(&other.num).map(|(a, b)| if sign > 0 { a + b } else { a - b }).collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &other.den, b * &self.den);
                    if sign > 0 {
                        x + y
                    } else {
                        x - y
                    }
                })
                .collect()
        };
        let den = if self.den == other.den { self.den.clone() } else { &self.den * &other.den };
        Self::from_parts(self.level.clone(), num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.same_level(other);
        let phi = self.level.phi;
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.level);
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.level.reduce(prod);
        Self::from_parts(self.level.clone(), num, &self.den * &other.den)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(&self.level, &q.recip()));
        }
        // extended Euclid of a(x) against Φ_N(x) over ℚ[x]
        let a: Vec<BigRational> = self.coeffs();
        let m: Vec<BigRational> = self.level.modulus.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let s = rational_poly_inverse(&a, &m)?;
        Some(Self::from_coeffs(&self.level, &s))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        other.inv().map(|inv| self * &inv).ok_or_else(|| Error::Arithmetic("division by zero".into()))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.level);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Re-express at level `m`, a multiple of the current level.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.level.n) {
            return Err(Error::Arithmetic(format!("cannot lift level {} to level {m}", self.level.n)));
        }
        let target = CycloLevel::get(m);
        let step = (m / self.level.n) as i64;
        let mut acc = Self::zero(&target);
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let mut t = Self::zeta_pow(&target, k as i64 * step);
                t.num.iter_mut().for_each(|x| *x *= c);
                acc = &acc + &t;
            }
        }
        acc.den = &acc.den * &self.den;
        acc.normalize();
        Ok(acc)
    }

    pub fn parse(level: &Arc<CycloLevel>, s: &str) -> Result<Self> {
        literal::parse(level, s)
    }

    /// Conservative float approximation of `|self|`.
    pub fn abs_f64(&self) -> f64 {
        let n = self.level.n as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for k in 0..self.level.phi {
            let c = rational_to_f64(&self.coeff(k));
            let t = std::f64::consts::TAU * k as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        re.hypot(im)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Inverse of `a` modulo `m` in `ℚ[x]`, or `None` if they share a factor.
fn rational_poly_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // invariants: r0 = s0·a (mod m), r1 = s1·a (mod m)
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = rational_divrem(&r0, &r1);
        let qs1 = rational_mul(&q, &s1);
        let mut s2 = rational_sub(&s0, &qs1);
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv_c = r0[0].recip();
    Some(s0.into_iter().map(|c| c * &inv_c).collect())
}

fn rational_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            r[i + j] -= t;
        }
        q[i] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn rational_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rational_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.level.n == other.level.n {
            return self.den == other.den && self.num == other.num;
        }
        let m = self.level.n.lcm(&other.level.n);
        match (self.lift(m), other.lift(m)) {
            (Ok(a), Ok(b)) => a.den == b.den && a.num == b.num,
            _ => false,
        }
    }
}

impl Eq for CycNum {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                $body(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_impl(b, 1));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_impl(b, -1));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_impl(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { level: self.level.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format(self))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.level.n, literal::format(self))
    }
}

/// The q-integer `(a)_v = 1 + v + … + v^{a-1}`, with `(0)_v = 0`.
pub fn q_integer(a: u64, v: &CycNum) -> CycNum {
    let mut acc = CycNum::zero(v.level());
    let mut p = CycNum::one(v.level());
    for _ in 0..a {
        acc = &acc + &p;
        p = &p * v;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(n: u64) -> Arc<CycloLevel> {
        CycloLevel::get(n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| cyclotomic_polynomial(n).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn field_examples() {
        let l4 = lv(4);
        let i = CycNum::zeta_pow(&l4, 1);
        assert_eq!(&i * &i, CycNum::from_int(&l4, -1));
        let one = CycNum::one(&l4);
        assert_eq!((&one + &i) * (&one - &i), CycNum::from_int(&l4, 2));

        let l8 = lv(8);
        let z = CycNum::zeta_pow(&l8, 1);
        let zi = z.inv().unwrap();
        assert_eq!(zi, CycNum::zeta_pow(&l8, 7));
        assert_eq!(zi, -CycNum::zeta_pow(&l8, 3));
        assert!(CycNum::zero(&l8).inv().is_none());
        assert!(CycNum::one(&l8).checked_div(&CycNum::zero(&l8)).is_err());
    }

    #[test]
    fn inverse_of_generic_element() {
        let l12 = lv(12);
        let a = CycNum::parse(&l12, "3-1/2*z^1+7*z^3").unwrap();
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn sqrt2_in_level8() {
        let l8 = lv(8);
        let s = &CycNum::zeta_pow(&l8, 1) + &CycNum::zeta_pow(&l8, 7);
        assert_eq!(&s * &s, CycNum::from_int(&l8, 2));
    }

    #[test]
    fn q_integers() {
        let l4 = lv(4);
        let q = CycNum::zeta_pow(&l4, 1);
        assert!(q_integer(0, &q).is_zero());
        assert_eq!(q_integer(3, &q), q);
        assert!(q_integer(4, &q).is_zero());
        for a in 1..10 {
            let lhs = &q_integer(a, &q) - &(&q * &q_integer(a - 1, &q));
            assert!(lhs.is_one());
            assert_eq!(q_integer(a, &q), &q_integer(a - 1, &q) + &q.pow(a as i64 - 1));
            assert_eq!(q_integer(a + 4, &q), q_integer(a, &q));
        }
    }

    #[test]
    fn lifting_levels() {
        let l4 = lv(4);
        let i = CycNum::zeta_pow(&l4, 1);
        let lifted = i.lift(8).unwrap();
        assert_eq!(lifted, CycNum::zeta_pow(&lv(8), 2));
        assert_eq!(i, lifted);
        assert!(i.lift(6).is_err());
    }

    #[test]
    fn level_one_and_two() {
        let l1 = lv(1);
        assert_eq!(CycNum::zeta_pow(&l1, 5), CycNum::one(&l1));
        let l2 = lv(2);
        assert_eq!(CycNum::zeta_pow(&l2, 1), CycNum::from_int(&l2, -1));
    }
}
