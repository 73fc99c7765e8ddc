//! Univariate polynomials over `ℚ(ζ_N)`.

use std::fmt;
use std::sync::Arc;

use super::{CycNum, CycloLevel};
use crate::error::{Error, Result};

/// Dense polynomial, lowest degree first; the zero polynomial has no
/// coefficients and every other polynomial has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct CycPoly {
    level: Arc<CycloLevel>,
    coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn new(level: &Arc<CycloLevel>, mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CycPoly { level: level.clone(), coeffs }
    }

    pub fn zero(level: &Arc<CycloLevel>) -> Self {
        CycPoly { level: level.clone(), coeffs: vec![] }
    }

    pub fn constant(c: CycNum) -> Self {
        let level = c.level().clone();
        Self::new(&level, vec![c])
    }

    pub fn one(level: &Arc<CycloLevel>) -> Self {
        Self::constant(CycNum::one(level))
    }

    /// The indeterminate.
    pub fn var(level: &Arc<CycloLevel>) -> Self {
        Self::new(level, vec![CycNum::zero(level), CycNum::one(level)])
    }

    /// `a·t + b`.
    pub fn linear(a: &CycNum, b: &CycNum) -> Self {
        Self::new(a.level(), vec![b.clone(), a.clone()])
    }

    pub fn level(&self) -> &Arc<CycloLevel> {
        &self.level
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycNum {
        self.coeffs.get(k).cloned().unwrap_or_else(|| CycNum::zero(&self.level))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&CycNum> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.level, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.level, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.level, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.level);
        }
        let mut out = vec![CycNum::zero(&self.level); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.level, out)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::new(&self.level, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let db = divisor.degree().ok_or_else(|| Error::Arithmetic("polynomial division by zero".into()))?;
        let lead_inv = divisor.coeffs[db].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(&self.level), self.clone()));
        }
        let mut quot = vec![CycNum::zero(&self.level); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=db {
                rem[i + j] = &rem[i + j] - &(&c * &divisor.coeffs[j]);
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Ok((Self::new(&self.level, quot), Self::new(&self.level, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(&self.level, self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale_int(k as i64)).collect())
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(&self.level);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitute a polynomial for the indeterminate.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(&self.level);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g (mod m)`.
    pub fn gcd_cofactor(&self, m: &Self) -> (Self, Self) {
        let mut r0 = m.clone();
        let mut r1 = self.clone();
        let mut s0 = Self::zero(&self.level);
        let mut s1 = Self::one(&self.level);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        match r0.lead() {
            None => (r0, s0),
            Some(l) => {
                let inv = l.inv().expect("nonzero lead");
                (r0.scale(&inv), s0.scale(&inv))
            }
        }
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).expect("gcd is nonzero").0.monic()
    }

    /// Yun's decomposition `self = lead·∏ f_k^k` with each `f_k` squarefree,
    /// monic and pairwise coprime; entry `k-1` holds `f_k`.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.divrem(&a0).unwrap().0;
        let mut c = d.divrem(&a0).unwrap().0;
        let mut dd = c.sub(&b.derivative());
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            out.push(a.clone());
            b = b.divrem(&a).unwrap().0;
            c = dd.divrem(&a).unwrap().0;
            dd = c.sub(&b.derivative());
        }
        out
    }
}

/// `(gcd(p, p'), squarefree)` for a nonzero polynomial.
pub fn poly_gcd_squarefree(p: &CycPoly) -> Result<(CycPoly, bool)> {
    if p.is_zero() {
        return Err(Error::Domain("squarefree test of the zero polynomial".into()));
    }
    let g = p.gcd(&p.derivative());
    let sf = g.degree() == Some(0);
    Ok((g, sf))
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*c")?,
                _ => write!(f, "({c})*c^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycPoly[{}]({self})", self.level.n())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(l: &Arc<CycloLevel>, s: &str) -> CycNum {
        CycNum::parse(l, s).unwrap()
    }

    fn poly(l: &Arc<CycloLevel>, cs: &[&str]) -> CycPoly {
        CycPoly::new(l, cs.iter().map(|s| lit(l, s)).collect())
    }

    #[test]
    fn squarefree_examples() {
        let l = CycloLevel::get(8);
        let (g, sf) = poly_gcd_squarefree(&poly(&l, &["-1", "0", "1"])).unwrap();
        assert!(sf);
        assert_eq!(g.degree(), Some(0));

        let (g, sf) = poly_gcd_squarefree(&poly(&l, &["1", "-2", "1"])).unwrap();
        assert!(!sf);
        assert_eq!(g, poly(&l, &["-1", "1"]));

        for r in 1..7 {
            let mut cs = vec!["0"; r + 1];
            cs[0] = "-1";
            cs[r] = "z^3";
            assert!(poly_gcd_squarefree(&poly(&l, &cs)).unwrap().1);
        }
        assert!(poly_gcd_squarefree(&CycPoly::zero(&l)).is_err());
    }

    #[test]
    fn division_identity() {
        let l = CycloLevel::get(12);
        let a = poly(&l, &["1", "z", "-3*z^2", "1/2", "z^5"]);
        let b = poly(&l, &["z^3", "0", "2"]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn yun_decomposition() {
        let l = CycloLevel::get(4);
        let f1 = poly(&l, &["z", "1"]);
        let f2 = poly(&l, &["-1", "1"]);
        let p = f1.mul(&f2).mul(&f2).scale(&lit(&l, "3"));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], f1);
        assert_eq!(dec[1], f2);
        assert_eq!(p.squarefree_part(), f1.mul(&f2));
    }

    #[test]
    fn cofactor_gives_inverse() {
        let l = CycloLevel::get(8);
        let m = poly(&l, &["1/4", "0", "0", "0", "1"]);
        let a = poly(&l, &["z", "1", "2"]);
        let (g, s) = a.gcd_cofactor(&m);
        assert_eq!(g, CycPoly::one(&l));
        assert_eq!(s.mul(&a).rem(&m).unwrap(), CycPoly::one(&l));
    }
}
