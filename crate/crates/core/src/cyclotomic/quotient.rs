//! The ring `ℚ(ζ_N)[t]/(f)` for a monic squarefree `f`.
//!
//! When `f` is squarefree this ring is a product of fields, one per
//! irreducible factor, so an identity holds in it exactly when it holds at
//! every root of `f`. Elements are reduced polynomials of degree `< deg f`.
//! A nonzero element may fail to be a unit; [`QuotRing::split_on`] turns such
//! an element into a factorization of the modulus.

use std::sync::Arc;

use super::{CycNum, CycPoly, CycloLevel};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotRing {
    modulus: CycPoly,
}

impl QuotRing {
    pub fn new(modulus: &CycPoly) -> Result<Self> {
        match modulus.degree() {
            None | Some(0) => Err(Error::Domain("quotient modulus must have positive degree".into())),
            Some(_) => Ok(QuotRing { modulus: modulus.monic() }),
        }
    }

    pub fn modulus(&self) -> &CycPoly {
        &self.modulus
    }

    pub fn level(&self) -> &Arc<CycloLevel> {
        self.modulus.level()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn reduce(&self, p: &CycPoly) -> CycPoly {
        p.rem(&self.modulus).expect("nonzero modulus")
    }

    /// The class of the indeterminate, i.e. a generic root of the modulus.
    pub fn generator(&self) -> CycPoly {
        self.reduce(&CycPoly::var(self.level()))
    }

    pub fn constant(&self, c: &CycNum) -> CycPoly {
        CycPoly::constant(c.clone())
    }

    pub fn mul(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &CycPoly) -> Option<CycPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s) = a.gcd_cofactor(&self.modulus);
        if g.degree() == Some(0) {
            Some(self.reduce(&s))
        } else {
            None
        }
    }

    /// For a nonzero non-unit `a`, the coprime split `(g, f/g)` of the modulus
    /// with `g = gcd(a, f)`.
    pub fn split_on(&self, a: &CycPoly) -> Option<(QuotRing, QuotRing)> {
        let g = a.gcd(&self.modulus);
        match g.degree() {
            Some(d) if d > 0 && d < self.degree() => {
                let h = self.modulus.divrem(&g).ok()?.0;
                Some((QuotRing { modulus: g }, QuotRing { modulus: h.monic() }))
            }
            _ => None,
        }
    }

    /// Evaluate a ring-valued computation on every branch of the modulus,
    /// splitting whenever the computation hits a zero divisor.
    pub fn split_eval<T, E>(
        &self,
        mut op: impl FnMut(&QuotRing) -> std::result::Result<T, E>,
        mut zero_divisor: impl FnMut(&E) -> Option<CycPoly>,
    ) -> std::result::Result<Vec<(QuotRing, T)>, E> {
        let mut pending = vec![self.clone()];
        let mut done = Vec::new();
        while let Some(ring) = pending.pop() {
            match op(&ring) {
                Ok(v) => done.push((ring, v)),
                Err(e) => match zero_divisor(&e).and_then(|a| ring.split_on(&a)) {
                    Some((g, h)) => {
                        pending.push(h);
                        pending.push(g);
                    }
                    None => return Err(e),
                },
            }
        }
        Ok(done)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_a_root() {
        let l = CycloLevel::get(4);
        let f = CycPoly::new(&l, vec![CycNum::from_int(&l, 1), CycNum::zero(&l), CycNum::one(&l)]);
        let r = QuotRing::new(&f).unwrap();
        let t = r.generator();
        let t2 = r.mul(&t, &t);
        assert_eq!(t2, CycPoly::constant(CycNum::from_int(&l, -1)));
        // t^2 + 1 = (t - i)(t + i) over Q(i): t - i is a zero divisor
        let i = CycNum::zeta_pow(&l, 1);
        let a = t.sub(&CycPoly::constant(i.clone()));
        assert!(r.inv(&a).is_none());
        let (g, h) = r.split_on(&a).unwrap();
        assert_eq!(g.degree() + h.degree(), 2);
        assert!(r.inv(&t).is_some());
    }
}
