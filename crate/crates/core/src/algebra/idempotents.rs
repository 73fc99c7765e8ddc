//! Central idempotents `e_ξ` of the group algebra of `Λ`.

use crate::cyclotomic::CycNum;
use crate::groups::SubgroupCharacter;
use crate::lifting::LiftingDatum;

/// Element of `k[Λ]`, indexed like the subgroup's member list.
pub type GroupAlgebraElem = Vec<CycNum>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    pub pass: bool,
    pub characters: usize,
    pub failures: Vec<String>,
}

/// `e_ξ = |Λ|⁻¹ Σ_{g∈Λ} ξ(g)⁻¹ g`.
pub fn idempotent(d: &LiftingDatum, xi: &SubgroupCharacter) -> GroupAlgebraElem {
    let size = d.lambda().len() as i64;
    let l = d.level();
    let inv = CycNum::from_rational(l, &num_rational::BigRational::new(1.into(), size.into()));
    xi.values().iter().map(|&k| &inv * &CycNum::zeta_pow(l, -(k as i64))).collect()
}

/// Convolution product in `k[Λ]`.
pub fn product(d: &LiftingDatum, a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> GroupAlgebraElem {
    let lambda = d.lambda();
    let group = d.group();
    let mut out = vec![CycNum::zero(d.level()); lambda.len()];
    for (i, gi) in lambda.members().iter().enumerate() {
        if a[i].is_zero() {
            continue;
        }
        for (j, gj) in lambda.members().iter().enumerate() {
            if b[j].is_zero() {
                continue;
            }
            let k = lambda.position(&group.add(gi, gj)).expect("subgroup is closed");
            out[k] = &out[k] + &(&a[i] * &b[j]);
        }
    }
    out
}

/// `a ↼ ξ = Σ_g a_g ξ(g) g`, i.e. `⟨ξ, a₍₁₎⟩ a₍₂₎` for grouplike `g`.
pub fn hit(d: &LiftingDatum, a: &GroupAlgebraElem, xi: &SubgroupCharacter) -> GroupAlgebraElem {
    a.iter().zip(xi.values()).map(|(c, &k)| c * &CycNum::zeta_pow(d.level(), k as i64)).collect()
}

/// Idempotence, orthogonality, completeness and the hit-action identity
/// `e_η ↼ ξ = e_{ξ⁻¹η}` over all pairs of characters of `Λ`.
pub fn idempotent_check(d: &LiftingDatum) -> IdempotentReport {
    let n = d.group().exponent();
    let chars: Vec<SubgroupCharacter> = d.group().subgroup_dual(d.lambda()).into_iter().map(|(xi, _)| xi).collect();
    let es: Vec<GroupAlgebraElem> = chars.iter().map(|xi| idempotent(d, xi)).collect();
    let mut failures = Vec::new();
    let zero = vec![CycNum::zero(d.level()); d.lambda().len()];
    for (a, ea) in es.iter().enumerate() {
        for (b, eb) in es.iter().enumerate() {
            let p = product(d, ea, eb);
            let expected = if a == b { ea } else { &zero };
            if &p != expected {
                failures.push(format!("e{a} e{b}"));
            }
            let shifted = hit(d, ea, &chars[b]);
            let target = chars[b].inv(n).mul(&chars[a], n);
            if shifted != idempotent(d, &target) {
                failures.push(format!("e{a} hit xi{b}"));
            }
        }
    }
    let mut sum = zero.clone();
    for e in &es {
        sum = sum.iter().zip(e).map(|(x, y)| x + y).collect();
    }
    let mut one = zero;
    let id = d.lambda().position(&d.group().identity()).expect("identity is a member");
    one[id] = CycNum::one(d.level());
    if sum != one {
        failures.push("sum of idempotents".into());
    }
    IdempotentReport { pass: failures.is_empty(), characters: chars.len(), failures }
}
