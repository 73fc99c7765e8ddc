//! The scalars `c_i` describing how `y` acts on string modules.

use crate::cyclotomic::{q_integer, CycNum, CycPoly};
use crate::groups::Character;
use crate::lifting::SectorData;

/// `c_0, …, c_len` by the recursion
/// `c_i = q(c_{i−1} + ν − ν q^{2(i−1)} η(g₁g₂))`.
pub fn c_recursive(q: &CycNum, nu: &CycNum, eta12: &CycNum, c0: &CycNum, len: usize) -> Vec<CycNum> {
    let mut out = Vec::with_capacity(len + 1);
    out.push(c0.clone());
    let q2 = q * q;
    let mut q2pow = CycNum::one(q.level());
    for i in 1..=len {
        let prev = &out[i - 1];
        let inner = &(prev + nu) - &(&(nu * &q2pow) * eta12);
        out.push(q * &inner);
        q2pow = &q2pow * &q2;
    }
    out
}

/// `c_i = q^i c + q(i)_q ν(1 − q^{i−1} η(g₁g₂))`, with `c_0 = c`.
pub fn c_closed(q: &CycNum, nu: &CycNum, eta12: &CycNum, c0: &CycNum, i: u64) -> CycNum {
    if i == 0 {
        return c0.clone();
    }
    let one = CycNum::one(q.level());
    let tail = &one - &(&q.pow(i as i64 - 1) * eta12);
    &(&q.pow(i as i64) * c0) + &(&(&(q * &q_integer(i, q)) * nu) * &tail)
}

/// `c_i` as a degree-one polynomial in `c = c_0`.
pub fn c_poly(q: &CycNum, nu: &CycNum, eta12: &CycNum, i: u64) -> CycPoly {
    let zero = CycNum::zero(q.level());
    CycPoly::linear(&q.pow(i as i64), &c_closed(q, nu, eta12, &zero, i))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CSequence {
    pub c0: CycNum,
    pub eta: Character,
    pub values: Vec<CycNum>,
}

/// The c-sequence of a sector for the weight `η`, of length `len + 1`.
pub fn c_sequence(sd: &SectorData, eta: &Character, c0: &CycNum, len: usize) -> CSequence {
    let values = c_recursive(&sd.q, &sd.nu, &sd.eta_g1g2(eta), c0, len);
    CSequence { c0: c0.clone(), eta: eta.clone(), values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloLevel;

    #[test]
    fn worked_example_sequence() {
        let l = CycloLevel::get(4);
        let q = CycNum::zeta_pow(&l, 1);
        let one = CycNum::one(&l);
        let zero = CycNum::zero(&l);
        let m1 = CycNum::from_int(&l, -1);
        let c = c_recursive(&q, &one, &m1, &zero, 4);
        let p = |s| CycNum::parse(&l, s).unwrap();
        assert_eq!(&c[1..], &[p("2*z"), p("-2"), zero.clone(), zero.clone()]);
        for i in 0..=4u64 {
            assert_eq!(c_closed(&q, &one, &m1, &zero, i), c[i as usize]);
        }
        let c = c_recursive(&q, &one, &one, &zero, 1);
        assert!(c[1].is_zero());
        let c = c_recursive(&q, &zero, &m1, &zero, 6);
        assert!(c.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn polynomial_form_evaluates_to_closed_form() {
        let l = CycloLevel::get(12);
        let q = CycNum::zeta_pow(&l, 2);
        let nu = CycNum::parse(&l, "3-z").unwrap();
        let e = CycNum::zeta_pow(&l, 5);
        let c = CycNum::parse(&l, "1/2+z^3").unwrap();
        for i in 0..15 {
            assert_eq!(c_poly(&q, &nu, &e, i).eval(&c), c_closed(&q, &nu, &e, &c, i));
        }
    }
}
