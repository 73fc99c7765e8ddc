//! Small reference data used by the test suites and the command line.
//!
//! `z8(α₁₁, α₂₂, α₁₂)` is the quantum plane over `ℤ/8` with `g₁ = g₂ = h`,
//! `χ₁(h) = ζ₈²`, `χ₂(h) = ζ₈⁶`; `Λ = {0, 4}` and both sectors have
//! dimension 64. Sector 0 is `ξ(h⁴) = 1`, sector 1 is `ξ(h⁴) = −1`.

use crate::cyclotomic::{CycNum, CycloLevel};
use crate::error::Result;
use crate::groups::FinAbGroup;
use crate::lifting::LiftingDatum;

fn lit(n: u64, s: &str) -> CycNum {
    CycNum::parse(&CycloLevel::get(n), s).expect("fixture literal")
}

/// The `ℤ/8` plane with the given `α₁₁`, `α₂₂`, `α₁₂` (`α₂₁` follows by
/// antisymmetry).
pub fn z8(a11: &str, a22: &str, a12: &str) -> Result<LiftingDatum> {
    let grp = FinAbGroup::cyclic(8)?;
    let a12 = lit(8, a12);
    let a21 = &(-lit(8, "z^2")) * &a12;
    LiftingDatum::new(
        grp.clone(),
        vec![grp.element(&[1])?, grp.element(&[1])?],
        vec![grp.character(&[2])?, grp.character(&[6])?],
        vec![vec![lit(8, a11), a12], vec![a21, lit(8, a22)]],
    )
}

/// All `α` zero: Case I in both sectors.
pub fn z8_case_i() -> LiftingDatum {
    z8("0", "0", "0").unwrap()
}

/// `α₁₁ = 1`: Case I / Case II.
pub fn z8_case_ii() -> LiftingDatum {
    z8("1", "0", "0").unwrap()
}

/// `α₁₁ = α₂₂ = 1`: Case I / Case III.
pub fn z8_case_iii() -> LiftingDatum {
    z8("1", "1", "0").unwrap()
}

/// `α₁₁ = 1`, `α₁₂ = 1`: Case IV / Case V.
pub fn z8_case_v() -> LiftingDatum {
    z8("1", "0", "1").unwrap()
}

/// `α₁₁ = α₂₂ = α₁₂ = 1`: Case IV / Case VI with a squarefree polynomial.
pub fn z8_case_vi() -> LiftingDatum {
    z8("1", "1", "1").unwrap()
}

/// `α₂₂ = 1` only: the second sector needs the generator swap.
pub fn z8_swap() -> LiftingDatum {
    z8("0", "1", "0").unwrap()
}

/// `ℤ/4`, `g₁ = g₂ = h`, `χ₁(h) = ζ₄`, `χ₂(h) = ζ₄³`, `α₁₂ = 1`: one
/// sector of dimension 64, Case IV.
pub fn z4_case_iv() -> LiftingDatum {
    let grp = FinAbGroup::cyclic(4).unwrap();
    LiftingDatum::new(
        grp.clone(),
        vec![grp.element(&[1]).unwrap(); 2],
        vec![grp.character(&[1]).unwrap(), grp.character(&[3]).unwrap()],
        vec![vec![lit(4, "0"), lit(4, "1")], vec![lit(4, "-1*z"), lit(4, "0")]],
    )
    .unwrap()
}

/// `ℤ/8`, `g₁ = h`, `g₂ = h³`, `χ₁ = χ₂ = (h ↦ −1)`, `α₁₁ = α₂₂ = 1`,
/// `α₁₂ = √2`. Here `r = s = 2` and `g₁g₂ ∈ Λ = {0, 2, 4, 6}`; in the sector
/// with `ξ(h²) = i` the Case VI polynomial is `−(c + √2)²`.
pub fn z8_repeated_root() -> LiftingDatum {
    let grp = FinAbGroup::cyclic(8).unwrap();
    let nu = lit(8, "z-z^3");
    LiftingDatum::new(
        grp.clone(),
        vec![grp.element(&[1]).unwrap(), grp.element(&[3]).unwrap()],
        vec![grp.character(&[4]).unwrap(), grp.character(&[4]).unwrap()],
        vec![vec![lit(8, "1"), nu.clone()], vec![nu, lit(8, "1")]],
    )
    .unwrap()
}

/// The rank-one datum `(ℤ/8, h, χ₁(h) = ζ₈², α₁₁ = 1)`, whose nontrivial
/// sector is the subalgebra generated by `x` and the group.
pub fn z8_rank_one() -> LiftingDatum {
    let grp = FinAbGroup::cyclic(8).unwrap();
    LiftingDatum::new(
        grp.clone(),
        vec![grp.element(&[1]).unwrap()],
        vec![grp.character(&[2]).unwrap()],
        vec![vec![lit(8, "1")]],
    )
    .unwrap()
}
