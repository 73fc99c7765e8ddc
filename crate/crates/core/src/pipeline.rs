//! End-to-end analysis of a lifting datum: sectors, classification,
//! construction, and every check against the structure-constant oracle.

use crate::algebra::analysis::{check_associativity, check_unit};
use crate::algebra::{
    analyze, completeness_check, hom_dim, idempotent_check, verify_relations, OracleSummary, StructureAlgebra,
};
use crate::cyclotomic::{CycNum, CycPoly};
use crate::error::{Error, Result};
use crate::groups::{Character, SubgroupCharacter};
use crate::lifting::{classify_sector, sectors, Case, LiftingDatum, Sector, SectorData};
use crate::linalg::{CycField, MatrixRep};
use crate::reps::builders::{one_dimensional, shift_module};
use crate::reps::{
    build_sector, case_vi_polynomial, irreducibility, iso_classes, IrrepDescriptor, NumericOptions, Regenerated,
    SectorReps,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Families are verified in the quotient ring and numerically.
    Exact,
    /// Families are verified numerically only.
    Numeric,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub numeric: NumericOptions,
    pub mode: Mode,
    /// Largest sector dimension for which the oracle is built.
    pub max_dim: u64,
    pub seed: u64,
    /// Exhaustive associativity up to this dimension, sampled above it.
    pub exhaustive_associativity: usize,
    pub associativity_samples: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            numeric: NumericOptions::default(),
            mode: Mode::Exact,
            max_dim: 4096,
            seed: 0,
            exhaustive_associativity: 80,
            associativity_samples: 2000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Check {
    pub fn failed(&self) -> bool {
        matches!(self, Check::Fail(_))
    }

    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    fn from_failures(failures: Vec<String>) -> Check {
        if failures.is_empty() {
            Check::Pass
        } else {
            Check::Fail(failures.join("; "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct SectorChecks {
    pub relations: Check,
    pub irreducibility: Check,
    pub iso_classes: Check,
    pub completeness: Check,
    /// Relations on the regular module plus unit and associativity of the
    /// structure constants.
    pub oracle: Check,
}

impl SectorChecks {
    pub fn all(&self) -> [(&'static str, &Check); 5] {
        [
            ("relations", &self.relations),
            ("irreducibility", &self.irreducibility),
            ("iso_classes", &self.iso_classes),
            ("completeness", &self.completeness),
            ("oracle", &self.oracle),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct SectorReport {
    pub sector: Sector,
    pub classification: Option<SectorData>,
    pub case: Option<Case>,
    pub swapped: bool,
    pub exceptional: bool,
    /// Pairwise non-isomorphic simple modules found by the builders.
    pub irreps: Vec<IrrepDescriptor>,
    /// Matrices of each entry of `irreps`, in input generator order.
    pub modules: Vec<Regenerated>,
    /// Case VI polynomials `(η, P, squarefree)`.
    pub polynomials: Vec<(Character, CycPoly, bool)>,
    pub oracle: Option<OracleSummary>,
    pub checks: SectorChecks,
    /// Largest numeric relation residual over all family members.
    pub max_residual: f64,
    pub notes: Vec<String>,
}

impl SectorReport {
    pub fn failed(&self) -> bool {
        self.checks.all().iter().any(|(_, c)| c.failed())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub datum: LiftingDatum,
    pub sectors: Vec<SectorReport>,
    pub sector_dim_sum: u64,
    pub idempotents: Check,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.idempotents.failed() || self.sector_dim_sum != self.datum.dim() || self.sectors.iter().any(|s| s.failed())
    }
}

pub fn run(d: &LiftingDatum, opts: &PipelineOptions) -> Result<Report> {
    run_sectors(d, opts, None)
}

/// Like [`run`], restricted to one sector when `only` is given.
pub fn run_sectors(d: &LiftingDatum, opts: &PipelineOptions, only: Option<usize>) -> Result<Report> {
    let secs = sectors(d)?;
    if let Some(i) = only {
        if i >= secs.len() {
            return Err(Error::Domain(format!("sector {i} does not exist ({} sectors)", secs.len())));
        }
    }
    let sector_dim_sum = secs.iter().map(|s| s.dim).sum();
    let mut reports = Vec::new();
    for s in &secs {
        if only.is_some_and(|i| i != s.index) {
            continue;
        }
        reports.push(analyze_sector(d, s, opts)?);
    }
    let idempotents = if d.lambda().len() <= 64 {
        let rep = idempotent_check(d);
        Check::from_failures(rep.failures)
    } else {
        Check::Skipped(format!("subgroup of order {} is above the table limit", d.lambda().len()))
    };
    Ok(Report { datum: d.clone(), sectors: reports, sector_dim_sum, idempotents })
}

fn oracle_checks(alg: &StructureAlgebra, d: &LiftingDatum, xi: &SubgroupCharacter, opts: &PipelineOptions) -> Check {
    let mut failures = Vec::new();
    if !check_unit(alg) {
        failures.push("unit".to_string());
    }
    if let Err((u, v, w)) =
        check_associativity(alg, opts.exhaustive_associativity, opts.associativity_samples, opts.seed)
    {
        failures.push(format!("associativity at basis triple ({u}, {v}, {w})"));
    }
    let f = alg.field();
    let rel = verify_relations(&f, &alg.regular_rep(), d, xi);
    failures.extend(rel.failures.into_iter().map(|r| format!("regular module: {r}")));
    Check::from_failures(failures)
}

pub fn analyze_sector(d: &LiftingDatum, s: &Sector, opts: &PipelineOptions) -> Result<SectorReport> {
    let oracle_alg = if s.dim <= opts.max_dim { Some(StructureAlgebra::build(d, &s.xi)?) } else { None };
    let oracle = oracle_alg.as_ref().map(analyze).transpose()?;
    let oracle_check = match &oracle_alg {
        Some(alg) => oracle_checks(alg, d, &s.xi, opts),
        None => Check::Skipped(format!("unverified: dimension {} exceeds {}", s.dim, opts.max_dim)),
    };
    let mut report = match d.theta() {
        2 => rank_two(d, s, opts, oracle.as_ref())?,
        1 => rank_one(d, s, oracle.as_ref())?,
        _ => {
            let skip = || Check::Skipped("no explicit construction above rank two".into());
            SectorReport {
                sector: s.clone(),
                classification: None,
                case: None,
                swapped: false,
                exceptional: false,
                irreps: Vec::new(),
                modules: Vec::new(),
                polynomials: Vec::new(),
                oracle: None,
                checks: SectorChecks {
                    relations: skip(),
                    irreducibility: skip(),
                    iso_classes: skip(),
                    completeness: skip(),
                    oracle: Check::Pass,
                },
                max_residual: 0.0,
                notes: Vec::new(),
            }
        }
    };
    report.oracle = oracle;
    report.checks.oracle = oracle_check;
    Ok(report)
}

fn completeness(oracle: Option<&OracleSummary>, irreps: &[IrrepDescriptor], exceptional: bool) -> Check {
    let Some(sum) = oracle else {
        return Check::Skipped("oracle not built".into());
    };
    if exceptional {
        return Check::Skipped(format!(
            "exceptional sector: oracle finds {} simple classes and a semisimple quotient of dimension {}",
            sum.simple_count,
            sum.semisimple_quotient_dim()
        ));
    }
    let dims: Vec<usize> = irreps.iter().map(|c| c.dim).collect();
    let rep = completeness_check(sum, &dims);
    if rep.pass {
        Check::Pass
    } else {
        Check::Fail(format!(
            "sum of squares {} vs {}, classes {} vs {}",
            rep.sum_of_squares, rep.expected_sum, rep.classes, rep.expected_classes
        ))
    }
}

fn class_module(sr: &SectorReps, desc: &IrrepDescriptor) -> Result<Regenerated> {
    let missing = || Error::Inconsistency(format!("no module built for class {} eta={}", desc.case, desc.eta));
    match &desc.parameter {
        None => sr
            .exact
            .iter()
            .find(|(d, _)| d.eta == desc.eta && d.case == desc.case)
            .map(|(_, rep)| Regenerated::Exact(rep.clone()))
            .ok_or_else(missing),
        Some(p) => {
            let fam = sr.families.iter().find(|f| f.eta == desc.eta && f.case == desc.case).ok_or_else(missing)?;
            let root = fam.roots.get(p.index).ok_or_else(missing)?;
            Ok(Regenerated::Numeric(fam.specialize(root)))
        }
    }
}

fn rank_two(
    d: &LiftingDatum,
    s: &Sector,
    opts: &PipelineOptions,
    oracle: Option<&OracleSummary>,
) -> Result<SectorReport> {
    let sd = classify_sector(d, s)?;
    let sr = build_sector(&sd, opts.numeric)?;
    let exceptional = sr.exceptional();
    let f = CycField::new(d.group().exponent());
    let nf = opts.numeric.field();

    let mut rel_fail = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (desc, rep) in &sr.exact {
        let r = verify_relations(&f, rep, d, &s.xi);
        if !r.pass {
            rel_fail.push(format!("eta={}: {}", desc.eta, r.failures.join(", ")));
        }
    }
    for fam in &sr.families {
        if opts.mode == Mode::Exact {
            let r = verify_relations(&fam.ring, &fam.rep, d, &s.xi);
            if !r.pass {
                rel_fail.push(format!("family eta={} (exact): {}", fam.eta, r.failures.join(", ")));
            }
        }
        for (k, z) in fam.roots.iter().enumerate() {
            let r = verify_relations(&nf, &fam.specialize(z), d, &s.xi);
            max_residual = max_residual.max(r.max_residual);
            if !r.pass {
                rel_fail.push(format!("family eta={} root#{k}: {}", fam.eta, r.failures.join(", ")));
            }
        }
    }

    let irr = irreducibility(&sr, opts.numeric)?;
    let irr_fail: Vec<String> =
        irr.iter().filter(|c| !c.irreducible).map(|c| format!("{} has End dims {:?}", c.label, c.end_dims)).collect();

    let mut notes = Vec::new();
    let (irreps, iso_check) = match iso_classes(&sr, opts.numeric) {
        Ok(iso) => {
            notes.extend(iso.notes.iter().cloned());
            (iso.classes, Check::Pass)
        }
        Err(Error::Inconsistency(msg)) => (Vec::new(), Check::Fail(msg)),
        Err(e) => return Err(e),
    };
    let polynomials = if sd.case == Case::VI {
        sr.families.iter().map(|fam| (fam.eta.clone(), case_vi_polynomial(&sd, &fam.eta), fam.squarefree)).collect()
    } else {
        Vec::new()
    };
    let completeness = completeness(oracle, &irreps, exceptional);
    let modules = irreps.iter().map(|c| class_module(&sr, c)).collect::<Result<Vec<_>>>()?;
    Ok(SectorReport {
        sector: s.clone(),
        case: Some(sd.case),
        swapped: sd.swapped,
        classification: Some(sd),
        exceptional,
        irreps,
        modules,
        polynomials,
        oracle: None,
        checks: SectorChecks {
            relations: Check::from_failures(rel_fail),
            irreducibility: Check::from_failures(irr_fail),
            iso_classes: iso_check,
            completeness,
            oracle: Check::Pass,
        },
        max_residual,
        notes,
    })
}

fn rank_one_alpha(d: &LiftingDatum, s: &Sector) -> Result<CycNum> {
    if d.alpha(0, 0).is_zero() {
        return Ok(CycNum::zero(d.level()));
    }
    let gr = d.group().scale(d.g(0), d.r(0));
    let v = d.xi_value(&s.xi, &gr).ok_or_else(|| Error::Inconsistency("g^r is not central".into()))?;
    Ok(d.alpha(0, 0) * &(&v - &CycNum::one(d.level())))
}

/// Case of a sector without building anything: the rank-two classification
/// with its scalars, the rank-one dichotomy, or nothing above rank two.
pub fn classify(d: &LiftingDatum, s: &Sector) -> Result<(Option<Case>, Option<SectorData>)> {
    match d.theta() {
        2 => {
            let sd = classify_sector(d, s)?;
            Ok((Some(sd.case), Some(sd)))
        }
        1 => {
            let case = if rank_one_alpha(d, s)?.is_zero() { Case::I } else { Case::II };
            Ok((Some(case), None))
        }
        _ => Ok((None, None)),
    }
}

/// Rank one: `x^r = α` with `α = α₁₁(ξ(g₁^r) − 1)`; Case I if `α = 0`,
/// otherwise the shift modules `W(η)`, one class per `χ₁`-orbit.
fn rank_one(d: &LiftingDatum, s: &Sector, oracle: Option<&OracleSummary>) -> Result<SectorReport> {
    let group = d.group();
    let f = CycField::new(group.exponent());
    let alpha = rank_one_alpha(d, s)?;
    let case = if alpha.is_zero() { Case::I } else { Case::II };
    let built: Vec<(Character, MatrixRep<CycNum>)> = s
        .fiber
        .iter()
        .map(|eta| {
            let rep = if case == Case::I { one_dimensional(d, eta) } else { shift_module(d, eta, &alpha) };
            (eta.clone(), rep)
        })
        .collect();
    let nonunit = |e: crate::linalg::NonUnit<CycNum>| Error::Arithmetic(format!("non-unit pivot {}", e.0));
    let same_orbit = |a: &Character, b: &Character| {
        (0..d.r(0)).any(|m| group.char_mul(a, &group.char_pow(d.chi(0), m as i64)) == *b)
    };
    let mut rel_fail = Vec::new();
    let mut irr_fail = Vec::new();
    let mut iso_fail = Vec::new();
    let mut irreps: Vec<IrrepDescriptor> = Vec::new();
    let mut modules = Vec::new();
    for (a, (eta, rep)) in built.iter().enumerate() {
        let r = verify_relations(&f, rep, d, &s.xi);
        if !r.pass {
            rel_fail.push(format!("eta={eta}: {}", r.failures.join(", ")));
        }
        if hom_dim(&f, rep, rep).map_err(nonunit)? != 1 {
            irr_fail.push(format!("eta={eta}"));
        }
        let mut new_class = true;
        for (b, (eta2, rep2)) in built.iter().enumerate() {
            if a == b {
                continue;
            }
            let expect = case == Case::II && same_orbit(eta, eta2);
            let h = hom_dim(&f, rep, rep2).map_err(nonunit)?;
            if (h > 0) != expect {
                iso_fail.push(format!("eta={eta} vs eta={eta2}: dim Hom = {h}"));
            }
            if expect && b < a {
                new_class = false;
            }
        }
        if new_class {
            modules.push(Regenerated::Exact(rep.clone()));
            irreps.push(IrrepDescriptor { case, eta: eta.clone(), dim: rep.dim(), length: None, parameter: None });
        }
    }
    Ok(SectorReport {
        sector: s.clone(),
        classification: None,
        case: Some(case),
        swapped: false,
        exceptional: false,
        irreps: irreps.clone(),
        modules,
        polynomials: Vec::new(),
        oracle: None,
        checks: SectorChecks {
            relations: Check::from_failures(rel_fail),
            irreducibility: Check::from_failures(irr_fail),
            iso_classes: Check::from_failures(iso_fail),
            completeness: completeness(oracle, &irreps, false),
            oracle: Check::Pass,
        },
        max_residual: 0.0,
        notes: Vec::new(),
    })
}
