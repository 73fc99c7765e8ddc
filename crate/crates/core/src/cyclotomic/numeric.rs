//! Complex approximations with tracked error bounds, the embedding
//! `ζ_N ↦ exp(2πi/N)`, and certified root finding for polynomials over
//! `ℚ(ζ_N)`.
//!
//! A [`ComplexApprox`] is a dyadic complex number `(re + i·im)/2^bits`
//! together with a bound on its distance to the quantity it approximates.
//! Every operation rounds to `bits` fractional bits and widens the bound
//! accordingly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{CycNum, CycPoly};
use crate::error::{Error, Result};

/// Precision used when the caller does not say otherwise.
pub const DEFAULT_PRECISION: u32 = 128;
/// Ceiling for automatic precision doubling.
pub const MAX_PRECISION: u32 = 1024;

#[derive(Clone, PartialEq)]
pub struct ComplexApprox {
    re: BigInt,
    im: BigInt,
    bits: u32,
    err: f64,
}

fn pow2(e: i64) -> f64 {
    2f64.powi(e.clamp(-1100, 1100) as i32)
}

fn fixed_to_f64(x: &BigInt, bits: u32) -> f64 {
    let shift = x.bits().saturating_sub(60);
    let mant = (x >> shift).to_f64().unwrap_or(0.0);
    mant * pow2(shift as i64 - bits as i64)
}

fn ulp(bits: u32) -> f64 {
    pow2(-(bits as i64))
}

impl ComplexApprox {
    pub fn zero(bits: u32) -> Self {
        ComplexApprox { re: BigInt::zero(), im: BigInt::zero(), bits, err: 0.0 }
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        let conv = |v: f64| -> BigInt {
            // exact dyadic conversion of the double
            if v == 0.0 || !v.is_finite() {
                return BigInt::zero();
            }
            let scaled = BigRational::from_float(v).expect("finite");
            let shifted = scaled * BigRational::from_integer(BigInt::from(1) << bits);
            shifted.round().to_integer()
        };
        ComplexApprox { re: conv(re), im: conv(im), bits, err: ulp(bits) }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let scaled = q * BigRational::from_integer(BigInt::from(1) << bits);
        let exact = scaled.is_integer();
        ComplexApprox {
            re: scaled.round().to_integer(),
            im: BigInt::zero(),
            bits,
            err: if exact { 0.0 } else { ulp(bits) },
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bound on the distance to the represented quantity.
    pub fn error_bound(&self) -> f64 {
        self.err
    }

    pub fn with_error(mut self, err: f64) -> Self {
        self.err = err;
        self
    }

    pub fn re_f64(&self) -> f64 {
        fixed_to_f64(&self.re, self.bits)
    }

    pub fn im_f64(&self) -> f64 {
        fixed_to_f64(&self.im, self.bits)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re_f64(), self.im_f64())
    }

    pub fn abs(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        use std::cmp::Ordering::*;
        let (re, im, extra) = match bits.cmp(&self.bits) {
            Equal => return self.clone(),
            Greater => (&self.re << (bits - self.bits), &self.im << (bits - self.bits), 0.0),
            Less => (&self.re >> (self.bits - bits), &self.im >> (self.bits - bits), 2.0 * ulp(bits)),
        };
        ComplexApprox { re, im, bits, err: self.err + extra }
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let b = self.bits.max(other.bits);
        (self.with_bits(b), other.with_bits(b))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        ComplexApprox { re: &a.re + &b.re, im: &a.im + &b.im, bits: a.bits, err: a.err + b.err }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        ComplexApprox { re: &a.re - &b.re, im: &a.im - &b.im, bits: a.bits, err: a.err + b.err }
    }

    pub fn neg(&self) -> Self {
        ComplexApprox { re: -&self.re, im: -&self.im, bits: self.bits, err: self.err }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let bits = a.bits;
        let re = (&a.re * &b.re - &a.im * &b.im) >> bits;
        let im = (&a.re * &b.im + &a.im * &b.re) >> bits;
        let err = a.abs() * b.err + b.abs() * a.err + a.err * b.err + 2.0 * ulp(bits);
        ComplexApprox { re, im, bits, err }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let m = c.abs().to_f64().unwrap_or(f64::INFINITY);
        ComplexApprox { re: &self.re * c, im: &self.im * c, bits: self.bits, err: self.err * m }
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        let m = d.abs().to_f64().unwrap_or(f64::INFINITY);
        ComplexApprox { re: &self.re / d, im: &self.im / d, bits: self.bits, err: self.err / m + 2.0 * ulp(self.bits) }
    }

    /// Quotient; `None` when the divisor cannot be bounded away from zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let (a, b) = self.align(other);
        let bits = a.bits;
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&a.re * &b.re + &a.im * &b.im) << bits) / &den;
        let im = ((&a.im * &b.re - &a.re * &b.im) << bits) / &den;
        let bmag = b.abs();
        let err = if bmag > b.err {
            (a.err + a.abs() / bmag * b.err) / (bmag - b.err) + 2.0 * ulp(bits)
        } else {
            f64::INFINITY
        };
        Some(ComplexApprox { re, im, bits, err })
    }

    /// Formats as `re+imi` with `digits` decimals.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (fixed_to_decimal(&self.re, self.bits, digits), fixed_to_decimal(&self.im, self.bits, digits))
    }
}

fn fixed_to_decimal(x: &BigInt, bits: u32, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let half = BigInt::from(1) << bits.saturating_sub(1);
    let v = x * &scale;
    let q = if v.is_negative() { -((-&v + &half) >> bits) } else { (&v + &half) >> bits };
    let neg = q.is_negative();
    let s = q.abs().to_string();
    let s = format!("{:0>width$}", s, width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int);
    if digits > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits as f64) * std::f64::consts::LOG10_2) as usize;
        let digits = digits.clamp(1, 40);
        let (re, im) = self.to_decimal(digits);
        if im.starts_with('-') {
            write!(f, "{re}{im}i")
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl fmt::Debug for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (±{:e})", self.err)
    }
}

/// Powers `ζ_N^k` for `0 <= k < N`, certified to `bits` fractional bits.
fn zeta_powers(n: u64, bits: u32) -> Vec<ComplexApprox> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Vec<ComplexApprox>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(n, bits)) {
        return v.clone();
    }
    let work = bits + 32;
    let theta = std::f64::consts::TAU / n as f64;
    let mut z = ComplexApprox::from_f64(theta.cos(), theta.sin(), work).with_error(0.0);
    // Newton on z^N - 1
    let one = ComplexApprox::from_rational(&BigRational::from_integer(1.into()), work);
    let nn = BigInt::from(n);
    for _ in 0..64 {
        let zn1 = pow_exact(&z, n - 1);
        let zn = zn1.mul(&z);
        let f = zn.sub(&one);
        let df = zn1.scale_int(&nn);
        let step = f.div(&df).expect("nonzero derivative");
        z = z.sub(&step).with_error(0.0);
        if step.abs() < ulp(work) * 4.0 {
            break;
        }
    }
    // distance from z to the nearest N-th root of unity is at most N|p(z)|/|p'(z)|
    let zn1 = pow_exact(&z, n - 1);
    let f = zn1.mul(&z).sub(&one);
    let df = zn1.scale_int(&nn);
    let bound = n as f64 * (f.abs() + f.err) / (df.abs() - df.err).max(f64::MIN_POSITIVE);
    let z = z.with_error(bound);
    let mut out = Vec::with_capacity(n as usize);
    let mut p = one.clone();
    for _ in 0..n {
        out.push(p.with_bits(bits));
        p = p.mul(&z);
    }
    cache.lock().unwrap().insert((n, bits), out.clone());
    out
}

fn pow_exact(z: &ComplexApprox, e: u64) -> ComplexApprox {
    let mut acc = ComplexApprox::from_rational(&BigRational::from_integer(1.into()), z.bits);
    for _ in 0..e {
        acc = acc.mul(z);
    }
    acc
}

/// Complex embedding `ζ_N ↦ exp(2πi/N)`.
pub fn embed(x: &CycNum, bits: u32) -> ComplexApprox {
    let n = x.n();
    let powers = zeta_powers(n, bits);
    let mut acc = ComplexApprox::zero(bits);
    for (k, c) in x.num.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&powers[k].scale_int(c));
        }
    }
    if x.den == BigInt::from(1) {
        acc
    } else {
        acc.div_int(&x.den)
    }
}

fn eval_approx(coeffs: &[ComplexApprox], z: &ComplexApprox) -> ComplexApprox {
    let mut acc = ComplexApprox::zero(z.bits);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

fn derivative_approx(coeffs: &[ComplexApprox]) -> Vec<ComplexApprox> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale_int(&BigInt::from(k))).collect()
}

/// Durand–Kerner iteration in double precision, for starting values.
fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.clamp(0.5, 4.0)).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            if step.is_finite() {
                z[i] -= step;
                delta = delta.max(step.norm());
            }
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Newton-refine simple roots of `f` until each carries a certified bound
/// below `target`, doubling the working precision up to [`MAX_PRECISION`].
fn refine_simple_roots(f: &CycPoly, bits: u32, target: f64) -> Result<Vec<ComplexApprox>> {
    let deg = f.degree().expect("nonzero");
    let start: Vec<Complex64> = {
        let c: Vec<Complex64> = f.coeffs().iter().map(|c| embed(c, 64).to_c64()).collect();
        durand_kerner(&c)
    };
    let mut work = bits.max(64);
    let mut best = f64::INFINITY;
    loop {
        let coeffs: Vec<ComplexApprox> = f.coeffs().iter().map(|c| embed(c, work)).collect();
        let dcoeffs = derivative_approx(&coeffs);
        let mut roots = Vec::with_capacity(deg);
        let mut worst: f64 = 0.0;
        for s in &start {
            let mut z = ComplexApprox::from_f64(s.re, s.im, work).with_error(0.0);
            for _ in 0..(8 + 2 * (work as usize / 32).max(1).ilog2() as usize) {
                let fz = eval_approx(&coeffs, &z);
                let dz = eval_approx(&dcoeffs, &z);
                match fz.div(&dz) {
                    Some(step) => {
                        z = z.sub(&step).with_error(0.0);
                        if step.abs() < ulp(work) {
                            break;
                        }
                    }
                    None => break,
                }
            }
            let fz = eval_approx(&coeffs, &z);
            let dz = eval_approx(&dcoeffs, &z);
            let denom = dz.abs() - dz.err;
            let bound = if denom > 0.0 { deg as f64 * (fz.abs() + fz.err) / denom } else { f64::INFINITY };
            worst = worst.max(bound);
            roots.push(z.with_error(bound));
        }
        let separated =
            roots.iter().enumerate().all(|(i, a)| roots[i + 1..].iter().all(|b| a.sub(b).abs() > a.err + b.err));
        best = best.min(worst);
        if worst < target && separated {
            return Ok(roots
                .into_iter()
                .map(|r| {
                    let e = r.err;
                    r.with_bits(bits).with_error(e + 2.0 * ulp(bits))
                })
                .collect());
        }
        if work >= MAX_PRECISION {
            return Err(Error::Precision { requested: target, achieved: best });
        }
        work = (work * 2).min(MAX_PRECISION);
    }
}

/// All `deg p` complex roots (with multiplicity) of a nonzero polynomial,
/// each with a certified error bound below `2^{-bits/2}`.
pub fn complex_roots(p: &CycPoly, bits: u32) -> Result<Vec<ComplexApprox>> {
    match p.degree() {
        None => return Err(Error::Domain("roots of the zero polynomial".into())),
        Some(0) => return Ok(vec![]),
        _ => {}
    }
    let target = pow2(-(bits as i64) / 2);
    let mut out = Vec::new();
    for (k, f) in p.squarefree_decomposition().iter().enumerate() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        for r in refine_simple_roots(f, bits, target)? {
            for _ in 0..=k {
                out.push(r.clone());
            }
        }
    }
    out.sort_by(|a, b| a.re_f64().total_cmp(&b.re_f64()).then(a.im_f64().total_cmp(&b.im_f64())));
    Ok(out)
}

/// Distinct roots of a squarefree polynomial, in canonical (re, im) order.
pub fn simple_roots(f: &CycPoly, bits: u32) -> Result<Vec<ComplexApprox>> {
    let target = pow2(-(bits as i64) / 2);
    let mut roots = refine_simple_roots(f, bits, target)?;
    roots.sort_by(|a, b| a.re_f64().total_cmp(&b.re_f64()).then(a.im_f64().total_cmp(&b.im_f64())));
    Ok(roots)
}

/// Evaluate a polynomial at an approximate point.
pub fn eval_poly(p: &CycPoly, z: &ComplexApprox) -> ComplexApprox {
    let coeffs: Vec<ComplexApprox> = p.coeffs().iter().map(|c| embed(c, z.bits)).collect();
    eval_approx(&coeffs, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloLevel;

    #[test]
    fn zeta_embedding() {
        let l = CycloLevel::get(8);
        let z = embed(&CycNum::zeta_pow(&l, 1), 128);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z.re_f64() - h).abs() < 1e-15 && (z.im_f64() - h).abs() < 1e-15);
        assert!(z.error_bound() < 1e-36);
        let i = embed(&CycNum::zeta_pow(&CycloLevel::get(4), 1), 128);
        assert!(i.re_f64().abs() < 1e-30 && (i.im_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn linear_and_quadratic_roots() {
        let l = CycloLevel::get(4);
        let p = CycPoly::new(&l, vec![CycNum::from_int(&l, -5), CycNum::one(&l)]);
        let r = complex_roots(&p, 128).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].re_f64() - 5.0).abs() < 1e-30 && r[0].im_f64().abs() < 1e-30);

        let p = CycPoly::new(&l, vec![CycNum::one(&l), CycNum::zero(&l), CycNum::one(&l)]);
        let r = complex_roots(&p, 128).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].im_f64() + 1.0).abs() < 1e-30);
        assert!((r[1].im_f64() - 1.0).abs() < 1e-30);
        for x in &r {
            assert!(x.error_bound() < pow2(-64));
            assert!(eval_poly(&p, x).abs() < 1e-30);
        }
    }

    #[test]
    fn repeated_roots_keep_multiplicity() {
        let l = CycloLevel::get(4);
        let lin = CycPoly::new(&l, vec![CycNum::zeta_pow(&l, 1), CycNum::one(&l)]);
        let p = lin.mul(&lin).mul(&CycPoly::new(&l, vec![CycNum::from_int(&l, 2), CycNum::one(&l)]));
        let r = complex_roots(&p, 128).unwrap();
        assert_eq!(r.len(), 3);
        let at_minus_i = r.iter().filter(|z| (z.im_f64() + 1.0).abs() < 1e-20).count();
        assert_eq!(at_minus_i, 2);
    }

    #[test]
    fn decimal_formatting() {
        let x = ComplexApprox::from_f64(-1.5, 0.25, 64);
        assert_eq!(x.to_decimal(3), ("-1.500".to_string(), "0.250".to_string()));
        assert_eq!(format!("{}", ComplexApprox::from_f64(0.5, -2.0, 20)), "0.500000-2.000000i");
    }
}
