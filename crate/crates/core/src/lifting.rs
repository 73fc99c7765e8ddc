//! Lifting data `(Γ, g_i, χ_i, 𝒜)`, their validation, the central subgroup
//! `Λ`, the sector list `Λ̂`, and the six-way classification of rank-two
//! sectors.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cyclotomic::{CycNum, CycloLevel};
use crate::error::{Error, Result};
use crate::groups::{Character, FinAbGroup, GroupElement, Subgroup, SubgroupCharacter};

/// A validated lifting datum together with the data derived from it.
#[derive(Clone, Debug)]
pub struct LiftingDatum {
    group: FinAbGroup,
    level: Arc<CycloLevel>,
    g: Vec<GroupElement>,
    chi: Vec<Character>,
    alpha: Vec<Vec<CycNum>>,
    r: Vec<u64>,
    lambda: Subgroup,
    dim: u64,
    relaxed: bool,
}

impl LiftingDatum {
    /// Validate a datum. Every violated condition is collected and reported.
    pub fn new(group: FinAbGroup, g: Vec<GroupElement>, chi: Vec<Character>, alpha: Vec<Vec<CycNum>>) -> Result<Self> {
        Self::build(group, g, chi, alpha, false)
    }

    /// Like [`LiftingDatum::new`] but without requiring `α_ii ∈ {0, 1}`, so
    /// that rescaled generators can be represented.
    pub fn new_relaxed(
        group: FinAbGroup,
        g: Vec<GroupElement>,
        chi: Vec<Character>,
        alpha: Vec<Vec<CycNum>>,
    ) -> Result<Self> {
        Self::build(group, g, chi, alpha, true)
    }

    fn build(
        group: FinAbGroup,
        g: Vec<GroupElement>,
        chi: Vec<Character>,
        alpha: Vec<Vec<CycNum>>,
        relaxed: bool,
    ) -> Result<Self> {
        let theta = g.len();
        let n = group.exponent();
        let level = CycloLevel::get(n);
        let mut problems = Vec::new();
        if theta == 0 {
            problems.push("at least one generator pair is required".to_string());
        }
        if chi.len() != theta {
            problems.push(format!("{} group elements but {} characters", theta, chi.len()));
        }
        if alpha.len() != theta || alpha.iter().any(|row| row.len() != theta) {
            problems.push(format!("alpha must be a {theta}x{theta} matrix"));
        }
        for (i, x) in g.iter().enumerate() {
            if x.exponents().len() != group.rank() {
                problems.push(format!("g_{} has the wrong length", i + 1));
            }
        }
        for (i, x) in chi.iter().enumerate() {
            if x.exponents().len() != group.rank() {
                problems.push(format!("chi_{} has the wrong length", i + 1));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidDatum(problems));
        }
        let mut lifted = Vec::with_capacity(theta);
        for (i, row) in alpha.iter().enumerate() {
            let mut out = Vec::with_capacity(theta);
            for (j, a) in row.iter().enumerate() {
                if !n.is_multiple_of(a.n()) {
                    problems.push(format!(
                        "alpha_{}{} lives at level {}, which does not divide {n}",
                        i + 1,
                        j + 1,
                        a.n()
                    ));
                    out.push(CycNum::zero(&level));
                } else {
                    out.push(a.lift(n)?);
                }
            }
            lifted.push(out);
        }
        let alpha = lifted;

        let q_exp = |i: usize, j: usize| group.char_eval(&chi[i], &g[j]);
        let r: Vec<u64> = (0..theta).map(|i| n / num_integer::gcd(n, q_exp(i, i))).collect();
        for i in 0..theta {
            if r[i] <= 1 {
                problems.push(format!("chi_{0}(g_{0}) = 1, so r_{0} = 1 (must exceed 1)", i + 1));
            }
        }
        for i in 0..theta {
            for j in i + 1..theta {
                let s = (q_exp(i, j) + q_exp(j, i)) % n;
                if s != 0 {
                    problems.push(format!("chi_{a}(g_{b}) chi_{b}(g_{a}) = z^{s} is not 1", a = i + 1, b = j + 1));
                }
            }
        }
        for i in 0..theta {
            let a = &alpha[i][i];
            if a.is_zero() {
                continue;
            }
            if !relaxed && !a.is_one() {
                problems.push(format!("alpha_{0}{0} = {a} must be 0 or 1", i + 1));
            }
            let gr = group.scale(&g[i], r[i]);
            if gr.is_identity() {
                problems.push(format!("alpha_{0}{0} = {a} must vanish because g_{0}^{1} = 1", i + 1, r[i]));
            }
            if !group.is_trivial_character(&group.char_pow(&chi[i], r[i] as i64)) {
                problems.push(format!("alpha_{0}{0} = {a} must vanish because chi_{0}^{1} is nontrivial", i + 1, r[i]));
            }
        }
        for i in 0..theta {
            for j in 0..theta {
                if i == j {
                    continue;
                }
                let a = &alpha[i][j];
                if !a.is_zero() {
                    if group.add(&g[i], &g[j]).is_identity() {
                        problems.push(format!(
                            "alpha_{}{} = {a} must vanish because g_{}g_{} = 1",
                            i + 1,
                            j + 1,
                            i + 1,
                            j + 1
                        ));
                    }
                    if !group.is_trivial_character(&group.char_mul(&chi[i], &chi[j])) {
                        problems.push(format!(
                            "alpha_{}{} = {a} must vanish because chi_{}chi_{} is nontrivial",
                            i + 1,
                            j + 1,
                            i + 1,
                            j + 1
                        ));
                    }
                }
                if i < j {
                    let factor = -CycNum::zeta_pow(&level, q_exp(i, j) as i64);
                    let expected = &factor * a;
                    if alpha[j][i] != expected {
                        problems.push(format!(
                            "alpha_{}{} = {} but antisymmetry requires -chi_{}(g_{}) alpha_{}{} = {}",
                            j + 1,
                            i + 1,
                            alpha[j][i],
                            i + 1,
                            j + 1,
                            i + 1,
                            j + 1,
                            expected
                        ));
                    }
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidDatum(problems));
        }

        let lambda = group.compute_lambda(&chi);
        if !lambda.is_closed(&group) {
            return Err(Error::Inconsistency("computed subgroup is not closed".into()));
        }
        for j in 0..theta {
            let chi_pow_trivial = group.is_trivial_character(&group.char_pow(&chi[j], r[j] as i64));
            let all_dual =
                (0..theta).filter(|&i| i != j).all(|i| group.is_trivial_character(&group.char_mul(&chi[i], &chi[j])));
            if (chi_pow_trivial || (theta > 1 && all_dual)) && !lambda.contains(&group.scale(&g[j], r[j])) {
                return Err(Error::Inconsistency(format!("g_{}^{} is not central", j + 1, r[j])));
            }
        }
        for i in 0..theta {
            for j in 0..theta {
                if i != j && !alpha[i][j].is_zero() && r[i] != r[j] {
                    return Err(Error::Inconsistency(format!(
                        "alpha_{}{} is nonzero but r_{} != r_{}",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut dim = group.order();
        for &ri in &r {
            dim = dim.checked_mul(ri).ok_or_else(|| Error::Domain("algebra dimension overflows".into()))?;
        }
        Ok(LiftingDatum { group, level, g, chi, alpha, r, lambda, dim, relaxed })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn level(&self) -> &Arc<CycloLevel> {
        &self.level
    }

    pub fn theta(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self, i: usize) -> &GroupElement {
        &self.g[i]
    }

    pub fn chi(&self, i: usize) -> &Character {
        &self.chi[i]
    }

    pub fn chis(&self) -> &[Character] {
        &self.chi
    }

    pub fn alpha(&self, i: usize, j: usize) -> &CycNum {
        &self.alpha[i][j]
    }

    pub fn alpha_matrix(&self) -> &[Vec<CycNum>] {
        &self.alpha
    }

    /// `r_i`, the order of `χ_i(g_i)`.
    pub fn r(&self, i: usize) -> u64 {
        self.r[i]
    }

    pub fn lambda(&self) -> &Subgroup {
        &self.lambda
    }

    /// `dim A = |Γ|·∏ r_i`.
    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    /// `χ(g)` as a cyclotomic number.
    pub fn char_value(&self, chi: &Character, g: &GroupElement) -> CycNum {
        CycNum::zeta_pow(&self.level, self.group.char_eval(chi, g) as i64)
    }

    /// `ξ(λ)` as a cyclotomic number, for `λ ∈ Λ`.
    pub fn xi_value(&self, xi: &SubgroupCharacter, g: &GroupElement) -> Option<CycNum> {
        xi.eval(&self.lambda, g).map(|k| CycNum::zeta_pow(&self.level, k as i64))
    }

    /// `q = χ_1(g_1)`.
    pub fn q(&self) -> CycNum {
        self.char_value(&self.chi[0], &self.g[0])
    }

    /// `w = χ_2(g_1)`; only meaningful for rank two.
    pub fn w(&self) -> CycNum {
        self.char_value(&self.chi[1], &self.g[0])
    }

    /// The datum with generator pairs `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.g.swap(i, j);
        out.chi.swap(i, j);
        out.r.swap(i, j);
        out.alpha.swap(i, j);
        for row in &mut out.alpha {
            row.swap(i, j);
        }
        out
    }

    /// Sub-datum keeping only the listed generator pairs.
    pub fn restricted(&self, keep: &[usize]) -> Result<Self> {
        let g = keep.iter().map(|&i| self.g[i].clone()).collect();
        let chi = keep.iter().map(|&i| self.chi[i].clone()).collect();
        let alpha = keep.iter().map(|&i| keep.iter().map(|&j| self.alpha[i][j].clone()).collect()).collect();
        Self::build(self.group.clone(), g, chi, alpha, self.relaxed)
    }

    /// Rescale `x_i ↦ λ_i x_i`, which multiplies `α_ij` by `λ_i λ_j` (and
    /// `α_ii` by `λ_i^{r_i}`). The result is validated in relaxed mode.
    pub fn rescaled(&self, lambdas: &[CycNum]) -> Result<Self> {
        let theta = self.theta();
        let alpha = (0..theta)
            .map(|i| {
                (0..theta)
                    .map(|j| {
                        if i == j {
                            &self.alpha[i][i] * &lambdas[i].pow(self.r[i] as i64)
                        } else {
                            &(&self.alpha[i][j] * &lambdas[i]) * &lambdas[j]
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new_relaxed(self.group.clone(), self.g.clone(), self.chi.clone(), alpha)
    }
}

/// One sector `A(ξ)`: a character `ξ` of `Λ`, its canonical preimage and fiber.
#[derive(Clone, Debug)]
pub struct Sector {
    pub index: usize,
    pub xi: SubgroupCharacter,
    pub eta_canonical: Character,
    pub fiber: Vec<Character>,
    pub dim: u64,
}

/// All sectors, ordered by the lexicographic order of their canonical
/// preimages.
pub fn sectors(d: &LiftingDatum) -> Result<Vec<Sector>> {
    let lambda = d.lambda();
    let per_sector = d.dim() / lambda.len() as u64;
    d.group()
        .subgroup_dual(lambda)
        .into_iter()
        .enumerate()
        .map(|(index, (xi, eta))| {
            let fiber = d.group().fiber(lambda, &xi)?;
            Ok(Sector { index, xi, eta_canonical: eta, fiber, dim: per_sector })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IV => "IV",
            Case::V => "V",
            Case::VI => "VI",
        }
    }

    pub fn parse(s: &str) -> Option<Case> {
        Some(match s {
            "I" => Case::I,
            "II" => Case::II,
            "III" => Case::III,
            "IV" => Case::IV,
            "V" => Case::V,
            "VI" => Case::VI,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Scalars and case of a rank-two sector. When `swapped` is set, `datum`
/// is the input with its two generator pairs exchanged and every scalar
/// refers to that datum.
#[derive(Clone, Debug)]
pub struct SectorData {
    pub sector: Sector,
    pub datum: LiftingDatum,
    pub swapped: bool,
    pub case: Case,
    /// `α = α₁₁(ξ(g₁^r) − 1)`.
    pub alpha: CycNum,
    /// `β = α₂₂(ξ(g₂^s) − 1)`.
    pub beta: CycNum,
    /// `ν = α₁₂`.
    pub nu: CycNum,
    /// `ν(ξ(g₁g₂) − 1)` when `g₁g₂ ∈ Λ`.
    pub nu_effective: Option<CycNum>,
    pub q: CycNum,
    pub w: CycNum,
    pub r: u64,
    pub s: u64,
}

impl SectorData {
    pub fn dim(&self) -> u64 {
        self.sector.dim
    }

    /// Whether the mixed relation has a nonzero right-hand side in this sector.
    pub fn nu_term_nonzero(&self) -> bool {
        match &self.nu_effective {
            Some(v) => !v.is_zero(),
            None => !self.nu.is_zero(),
        }
    }

    /// `η(g₁g₂)` for a character of the fiber.
    pub fn eta_g1g2(&self, eta: &Character) -> CycNum {
        let d = &self.datum;
        d.char_value(eta, &d.group().add(d.g(0), d.g(1)))
    }
}

/// `α_ii(ξ(g_i^{r_i}) − 1)`, zero whenever `α_ii` is.
fn power_scalar(d: &LiftingDatum, xi: &SubgroupCharacter, i: usize) -> Result<CycNum> {
    let a = d.alpha(i, i);
    if a.is_zero() {
        return Ok(CycNum::zero(d.level()));
    }
    let gr = d.group().scale(d.g(i), d.r(i));
    let v = d
        .xi_value(xi, &gr)
        .ok_or_else(|| Error::Inconsistency(format!("g_{}^{} is not in the subgroup", i + 1, d.r(i))))?;
    Ok(a * &(&v - &CycNum::one(d.level())))
}

fn sector_scalars(d: &LiftingDatum, sector: &Sector) -> Result<(CycNum, CycNum, Option<CycNum>)> {
    let alpha = power_scalar(d, &sector.xi, 0)?;
    let beta = power_scalar(d, &sector.xi, 1)?;
    let g12 = d.group().add(d.g(0), d.g(1));
    let nu_eff = d.xi_value(&sector.xi, &g12).map(|v| d.alpha(0, 1) * &(&v - &CycNum::one(d.level())));
    Ok((alpha, beta, nu_eff))
}

/// Classify a rank-two sector by the vanishing pattern of `α`, `β` and the
/// mixed term. The pattern `α = 0 ≠ β` is reduced to Case II or V by
/// exchanging the generator pairs.
pub fn classify_sector(d: &LiftingDatum, sector: &Sector) -> Result<SectorData> {
    if d.theta() != 2 {
        return Err(Error::Domain(format!("classification needs rank two, the datum has rank {}", d.theta())));
    }
    let (alpha, beta, _) = sector_scalars(d, sector)?;
    let swapped = alpha.is_zero() && !beta.is_zero();
    let datum = if swapped { d.swapped(0, 1) } else { d.clone() };
    let (alpha, beta, nu_effective) = sector_scalars(&datum, sector)?;
    let nu = datum.alpha(0, 1).clone();

    let g12 = datum.group().add(datum.g(0), datum.g(1));
    let chi12_trivial = datum.group().is_trivial_character(&datum.group().char_mul(datum.chi(0), datum.chi(1)));
    if chi12_trivial && datum.r(0) > 2 && datum.lambda().contains(&g12) {
        return Err(Error::Inconsistency("g1g2 lies in the subgroup although r > 2".into()));
    }

    let nu_term = match &nu_effective {
        Some(v) => !v.is_zero(),
        None => !nu.is_zero(),
    };
    let case = match (alpha.is_zero(), beta.is_zero(), nu_term) {
        (true, true, false) => Case::I,
        (false, true, false) => Case::II,
        (false, false, false) => Case::III,
        (true, true, true) => Case::IV,
        (false, true, true) => Case::V,
        (false, false, true) => Case::VI,
        (true, false, _) => unreachable!("handled by the swap"),
    };
    Ok(SectorData {
        sector: sector.clone(),
        q: datum.q(),
        w: datum.w(),
        r: datum.r(0),
        s: datum.r(1),
        datum,
        swapped,
        case,
        alpha,
        beta,
        nu,
        nu_effective,
    })
}

/// Random valid rank-two datum over a random group of order at most
/// `max_order`.
pub fn random_datum<R: Rng>(rng: &mut R, max_order: u64) -> LiftingDatum {
    loop {
        if let Some(d) = try_random_datum(rng, max_order) {
            return d;
        }
    }
}

fn try_random_datum<R: Rng>(rng: &mut R, max_order: u64) -> Option<LiftingDatum> {
    let mut factors = Vec::new();
    let mut order = 1;
    let rank = rng.gen_range(1..=2);
    for _ in 0..rank {
        let a = rng.gen_range(2..=12u64);
        if order * a > max_order {
            break;
        }
        order *= a;
        factors.push(a);
    }
    if factors.is_empty() {
        return None;
    }
    let group = FinAbGroup::new(factors).ok()?;
    let elems: Vec<GroupElement> = group.elements().collect();
    let chars: Vec<Character> = group.characters().collect();
    let g1 = elems.choose(rng)?.clone();
    let g2 = elems.choose(rng)?.clone();
    let chi1 = chars.choose(rng)?.clone();
    let n = group.exponent();
    let target = (n - group.char_eval(&chi1, &g2)) % n;
    let options: Vec<&Character> = chars.iter().filter(|c| group.char_eval(c, &g1) == target).collect();
    let chi2 = (*options.choose(rng)?).clone();
    let level = CycloLevel::get(n);
    let zero = CycNum::zero(&level);
    let mut alpha = vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero]];
    let probe =
        LiftingDatum::new(group.clone(), vec![g1.clone(), g2.clone()], vec![chi1.clone(), chi2.clone()], alpha.clone())
            .ok()?;
    for i in 0..2 {
        let chi_pow = group.char_pow(probe.chi(i), probe.r(i) as i64);
        let gr = group.scale(probe.g(i), probe.r(i));
        if group.is_trivial_character(&chi_pow) && !gr.is_identity() && rng.gen_bool(0.5) {
            alpha[i][i] = CycNum::one(&level);
        }
    }
    let chi12 = group.char_mul(&chi1, &chi2);
    if group.is_trivial_character(&chi12) && !group.add(&g1, &g2).is_identity() && rng.gen_bool(0.6) {
        let nu = CycNum::int_zeta(&level, rng.gen_range(1..=3), rng.gen_range(0..n as i64));
        let factor = -probe.char_value(&chi1, &g2);
        alpha[1][0] = &factor * &nu;
        alpha[0][1] = nu;
    }
    LiftingDatum::new(group, vec![g1, g2], vec![chi1, chi2], alpha).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z8(a11: &str, a22: &str, a12: &str) -> LiftingDatum {
        let grp = FinAbGroup::cyclic(8).unwrap();
        let l = CycloLevel::get(8);
        let p = |s: &str| CycNum::parse(&l, s).unwrap();
        let a12 = p(a12);
        // χ₁(g₂) = ζ₈², so α₂₁ = −z²·α₁₂
        let a21 = &(-p("z^2")) * &a12;
        LiftingDatum::new(
            grp.clone(),
            vec![grp.element(&[1]).unwrap(), grp.element(&[1]).unwrap()],
            vec![grp.character(&[2]).unwrap(), grp.character(&[6]).unwrap()],
            vec![vec![p(a11), a12], vec![a21, p(a22)]],
        )
        .unwrap()
    }

    #[test]
    fn z8_validation_and_sectors() {
        let d = z8("0", "0", "0");
        assert_eq!((d.r(0), d.r(1)), (4, 4));
        assert_eq!(d.q(), CycNum::parse(d.level(), "z^2").unwrap());
        assert_eq!(d.dim(), 128);
        let secs = sectors(&d).unwrap();
        assert_eq!(secs.len(), 2);
        assert!(secs.iter().all(|s| s.dim == 64 && s.fiber.len() == 4));
        assert_eq!(secs[0].xi.values(), &[0, 0]);
        assert_eq!(secs[1].xi.values(), &[0, 4]);
    }

    #[test]
    fn z8_classification() {
        let d = z8("1", "0", "0");
        let secs = sectors(&d).unwrap();
        let plus = classify_sector(&d, &secs[0]).unwrap();
        let minus = classify_sector(&d, &secs[1]).unwrap();
        assert_eq!(plus.case, Case::I);
        assert_eq!(minus.case, Case::II);
        assert_eq!(minus.alpha, CycNum::from_int(d.level(), -2));

        let d = z8("1", "1", "0");
        let secs = sectors(&d).unwrap();
        assert_eq!(classify_sector(&d, &secs[1]).unwrap().case, Case::III);

        let d = z8("1", "1", "1");
        let secs = sectors(&d).unwrap();
        assert_eq!(classify_sector(&d, &secs[0]).unwrap().case, Case::IV);
        assert_eq!(classify_sector(&d, &secs[1]).unwrap().case, Case::VI);

        let d = z8("0", "1", "0");
        let secs = sectors(&d).unwrap();
        let s = classify_sector(&d, &secs[1]).unwrap();
        assert!(s.swapped);
        assert_eq!(s.case, Case::II);
    }

    #[test]
    fn z4_case_four() {
        let grp = FinAbGroup::cyclic(4).unwrap();
        let l = CycloLevel::get(4);
        let one = CycNum::one(&l);
        let d = LiftingDatum::new(
            grp.clone(),
            vec![grp.element(&[1]).unwrap(); 2],
            vec![grp.character(&[1]).unwrap(), grp.character(&[3]).unwrap()],
            vec![vec![CycNum::zero(&l), one.clone()], vec![-CycNum::zeta_pow(&l, 1), CycNum::zero(&l)]],
        )
        .unwrap();
        let secs = sectors(&d).unwrap();
        assert_eq!(secs.len(), 1);
        assert_eq!(secs[0].dim, 64);
        assert_eq!(classify_sector(&d, &secs[0]).unwrap().case, Case::IV);
    }

    #[test]
    fn rejects_forced_zero() {
        let grp = FinAbGroup::new(vec![2, 2]).unwrap();
        let l = CycloLevel::get(2);
        let z = CycNum::zero(&l);
        let err = LiftingDatum::new(
            grp.clone(),
            vec![grp.element(&[1, 0]).unwrap(), grp.element(&[0, 1]).unwrap()],
            vec![grp.character(&[1, 0]).unwrap(), grp.character(&[0, 1]).unwrap()],
            vec![vec![CycNum::one(&l), z.clone()], vec![z.clone(), z]],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("alpha_11") && msg.contains("g_1^2 = 1"), "{msg}");
    }

    #[test]
    fn reports_antisymmetry_violation() {
        let grp = FinAbGroup::cyclic(8).unwrap();
        let l = CycloLevel::get(8);
        let one = CycNum::one(&l);
        let z = CycNum::zero(&l);
        let err = LiftingDatum::new(
            grp.clone(),
            vec![grp.element(&[1]).unwrap(); 2],
            vec![grp.character(&[2]).unwrap(), grp.character(&[6]).unwrap()],
            vec![vec![z.clone(), one.clone()], vec![one, z]],
        )
        .unwrap_err();
        assert!(err.to_string().contains("antisymmetry"));
    }

    #[test]
    fn random_data_are_valid_and_dimensions_add_up() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let d = random_datum(&mut rng, 64);
            let secs = sectors(&d).unwrap();
            let total: u64 = secs.iter().map(|s| s.dim).sum();
            assert_eq!(total, d.dim());
            for s in &secs {
                classify_sector(&d, s).unwrap();
            }
        }
    }
}
