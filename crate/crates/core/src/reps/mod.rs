//! Simple modules of rank-two sector algebras: construction, irreducibility
//! and isomorphism classes.

pub mod builders;
pub mod cseq;

use std::collections::BTreeMap;

pub use builders::{
    build_case_i, build_case_ii, build_case_iii, build_case_iv, build_case_v, build_case_vi, case_iv_length,
    case_vi_polynomial, clifford_data, CliffordData, Family, IrrepDescriptor, RootParameter,
};
pub use cseq::{c_closed, c_poly, c_recursive, c_sequence, CSequence};

use crate::algebra::{hom_dim, hom_dim_split};
use crate::cyclotomic::numeric::eval_poly;
use crate::cyclotomic::{ComplexApprox, CycNum};
use crate::error::{Error, Result};
use crate::groups::Character;
use crate::lifting::{Case, SectorData};
use crate::linalg::{CycField, MatrixRep, NumericField};

/// Precision and zero tolerance for numeric work.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericOptions {
    pub bits: u32,
    pub tolerance: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { bits: 128, tolerance: 1e-25 }
    }
}

impl NumericOptions {
    pub fn field(&self) -> NumericField {
        NumericField::new(self.bits, self.tolerance)
    }
}

/// Every module built for one sector, with generators in the order of the
/// input datum.
#[derive(Clone, Debug)]
pub struct SectorReps {
    pub data: SectorData,
    pub exact: Vec<(IrrepDescriptor, MatrixRep<CycNum>)>,
    pub families: Vec<Family>,
}

impl SectorReps {
    /// A Case VI polynomial with a repeated root.
    pub fn exceptional(&self) -> bool {
        self.families.iter().any(|f| !f.squarefree)
    }
}

fn unswap<E: Clone>(mut rep: MatrixRep<E>, swapped: bool) -> MatrixRep<E> {
    if swapped {
        rep.xs.reverse();
    }
    rep
}

/// Run the builder for the sector's case on every weight of the fiber.
pub fn build_sector(sd: &SectorData, opts: NumericOptions) -> Result<SectorReps> {
    let mut exact = Vec::new();
    let mut families = Vec::new();
    let fiber = &sd.sector.fiber;
    match sd.case {
        Case::I => exact = build_case_i(sd),
        Case::II => {
            for eta in fiber {
                exact.push(build_case_ii(sd, eta)?);
            }
        }
        Case::III => families = build_case_iii(sd, opts.bits)?,
        Case::IV => {
            for eta in fiber {
                exact.push(build_case_iv(sd, eta)?);
            }
        }
        Case::V => {
            for eta in fiber {
                exact.push(build_case_v(sd, eta)?);
            }
        }
        Case::VI => {
            for eta in fiber {
                families.push(build_case_vi(sd, eta, opts.bits)?);
            }
        }
    }
    let exact = exact.into_iter().map(|(d, r)| (d, unswap(r, sd.swapped))).collect();
    let families = families
        .into_iter()
        .map(|mut f| {
            f.rep = unswap(f.rep, sd.swapped);
            f
        })
        .collect();
    Ok(SectorReps { data: sd.clone(), exact, families })
}

/// A module produced again from its descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum Regenerated {
    Exact(MatrixRep<CycNum>),
    Numeric(MatrixRep<ComplexApprox>),
}

/// Rebuild a module from its descriptor, in input generator order.
pub fn regenerate(sd: &SectorData, desc: &IrrepDescriptor, opts: NumericOptions) -> Result<Regenerated> {
    let exact = |r: MatrixRep<CycNum>| Ok(Regenerated::Exact(unswap(r, sd.swapped)));
    let pick = |fam: &Family| -> Result<Regenerated> {
        let p = desc.parameter.as_ref().ok_or_else(|| Error::Domain("descriptor lacks a root parameter".into()))?;
        let root =
            fam.roots.get(p.index).ok_or_else(|| Error::Domain(format!("root index {} out of range", p.index)))?;
        Ok(Regenerated::Numeric(unswap(fam.specialize(root), sd.swapped)))
    };
    match desc.case {
        Case::I => exact(builders::one_dimensional(&sd.datum, &desc.eta)),
        Case::II => exact(build_case_ii(sd, &desc.eta)?.1),
        Case::IV => exact(build_case_iv(sd, &desc.eta)?.1),
        Case::V => exact(build_case_v(sd, &desc.eta)?.1),
        Case::III => {
            let fams = build_case_iii(sd, opts.bits)?;
            let fam = fams
                .iter()
                .find(|f| f.eta == desc.eta)
                .ok_or_else(|| Error::NotInFiber(format!("no Case III family for {}", desc.eta)))?;
            pick(fam)
        }
        Case::VI => pick(&build_case_vi(sd, &desc.eta, opts.bits)?),
    }
}

/// Irreducibility of one built module (or one family member).
#[derive(Clone, Debug, PartialEq)]
pub struct IrreducibilityCheck {
    pub label: String,
    /// `dim End` per branch: one entry for exact modules, one per factor of
    /// the modulus for families, then one per root numerically.
    pub end_dims: Vec<usize>,
    pub irreducible: bool,
}

fn label(case: Case, eta: &Character, root: Option<usize>) -> String {
    match root {
        Some(k) => format!("{case} eta={eta} root#{k}"),
        None => format!("{case} eta={eta}"),
    }
}

/// `dim End(V) = 1` for every module of the sector: exactly for modules over
/// `ℚ(ζ_N)`; for families exactly on every factor of the ring and numerically
/// at every root.
pub fn irreducibility(sr: &SectorReps, opts: NumericOptions) -> Result<Vec<IrreducibilityCheck>> {
    let f = CycField::new(sr.data.datum.group().exponent());
    let nf = opts.field();
    let mut out = Vec::new();
    for (desc, rep) in &sr.exact {
        let d = hom_dim(&f, rep, rep).map_err(|e| Error::Arithmetic(format!("non-unit pivot {}", e.0)))?;
        out.push(IrreducibilityCheck {
            label: label(desc.case, &desc.eta, None),
            end_dims: vec![d],
            irreducible: d == 1,
        });
    }
    for fam in &sr.families {
        let branches: Vec<usize> = hom_dim_split(&fam.ring, &fam.rep, &fam.rep).into_iter().map(|(_, d)| d).collect();
        for (k, root) in fam.roots.iter().enumerate() {
            let spec = fam.specialize(root);
            let nd = hom_dim(&nf, &spec, &spec).unwrap_or(usize::MAX);
            let mut dims = branches.clone();
            dims.push(nd);
            let ok = dims.iter().all(|&d| d == 1);
            out.push(IrreducibilityCheck {
                label: label(fam.case, &fam.eta, Some(k)),
                end_dims: dims,
                irreducible: ok,
            });
        }
    }
    Ok(out)
}

/// Result of isomorphism classification within a sector.
#[derive(Clone, Debug)]
pub struct IsoClasses {
    pub classes: Vec<IrrepDescriptor>,
    /// Pairs whose `dim Hom` was compared with the case criterion.
    pub pairs_checked: usize,
    /// Pairs identified by the criterion (each confirmed by an intertwiner).
    pub merges: usize,
    /// Disagreements tolerated because the sector is exceptional.
    pub notes: Vec<String>,
}

fn orbit_index(sd: &SectorData, a: &Character, b: &Character) -> Option<u64> {
    let d = &sd.datum;
    (0..sd.r).find(|&m| d.group().char_mul(a, &d.group().char_pow(d.chi(0), m as i64)) == *b)
}

struct Tally {
    pairs: usize,
    merges: usize,
    notes: Vec<String>,
    lenient: bool,
}

impl Tally {
    fn record(&mut self, what: String, expect_iso: bool, hom: usize) -> Result<()> {
        self.pairs += 1;
        if expect_iso {
            self.merges += 1;
        }
        let ok = if expect_iso { hom >= 1 } else { hom == 0 };
        if ok {
            return Ok(());
        }
        let msg = format!(
            "{what}: criterion says {} but dim Hom = {hom}",
            if expect_iso { "isomorphic" } else { "distinct" }
        );
        if self.lenient {
            self.notes.push(msg);
            Ok(())
        } else {
            Err(Error::Inconsistency(msg))
        }
    }
}

/// Deduplicate the sector's modules with the case criterion and confirm
/// every pair against `dim Hom`.
pub fn iso_classes(sr: &SectorReps, opts: NumericOptions) -> Result<IsoClasses> {
    let sd = &sr.data;
    let f = CycField::new(sd.datum.group().exponent());
    let mut tally = Tally { pairs: 0, merges: 0, notes: Vec::new(), lenient: sr.exceptional() };
    let mut classes = Vec::new();
    let nonunit = |e: crate::linalg::NonUnit<CycNum>| Error::Arithmetic(format!("non-unit pivot {}", e.0));

    if !sr.exact.is_empty() {
        // criterion for each ordered pair (a, b)
        let criterion = |a: &Character, b: &Character| -> bool {
            match sd.case {
                Case::I | Case::IV => a == b,
                Case::II => orbit_index(sd, a, b).is_some(),
                Case::V => match orbit_index(sd, a, b) {
                    Some(m) => {
                        let zero = CycNum::zero(sd.datum.level());
                        c_sequence(sd, a, &zero, m as usize).values[m as usize].is_zero()
                    }
                    None => false,
                },
                Case::III | Case::VI => unreachable!(),
            }
        };
        let n = sr.exact.len();
        let mut rep_of: Vec<usize> = (0..n).collect();
        for a in 0..n {
            for b in 0..n {
                let (da, ra) = &sr.exact[a];
                let (db, rb) = &sr.exact[b];
                let expect = criterion(&da.eta, &db.eta);
                let h = hom_dim(&f, ra, rb).map_err(nonunit)?;
                tally.record(
                    format!("{} vs {}", label(da.case, &da.eta, None), label(db.case, &db.eta, None)),
                    expect,
                    h,
                )?;
                if expect && b < a && rep_of[a] == a {
                    rep_of[a] = rep_of[b];
                }
            }
        }
        for a in 0..n {
            if rep_of[a] == a {
                classes.push(sr.exact[a].0.clone());
            }
        }
    }

    if !sr.families.is_empty() {
        let nf = opts.field();
        let specs: Vec<(usize, usize, MatrixRep<ComplexApprox>)> = sr
            .families
            .iter()
            .enumerate()
            .flat_map(|(fi, fam)| fam.roots.iter().enumerate().map(move |(k, z)| (fi, k, fam.specialize(z))))
            .collect();

        // which family represents each family (Case VI merges along χ₁-orbits)
        let mut family_rep: Vec<usize> = (0..sr.families.len()).collect();
        if sd.case == Case::VI {
            for (a, fa) in sr.families.iter().enumerate() {
                for (b, fb) in sr.families.iter().enumerate() {
                    let Some(m) = orbit_index(sd, &fa.eta, &fb.eta) else { continue };
                    if m == 0 {
                        continue;
                    }
                    // L(η_a, t) ≅ L(η_b, c_m(t)) for t a root of f_a
                    let cm = fa.ring.reduce(&c_poly(&sd.q, &sd.nu, &sd.eta_g1g2(&fa.eta), m));
                    let image = fa.ring.reduce(&fb.ring.modulus().compose(&cm));
                    if !image.is_zero() {
                        tally.record(format!("root map {} -> {}", fa.eta, fb.eta), true, 0)?;
                        continue;
                    }
                    let moved = fb.rep.map(|p| fa.ring.reduce(&p.compose(&cm)));
                    for (_, h) in hom_dim_split(&fa.ring, &fa.rep, &moved) {
                        tally.record(format!("family {} vs shifted family {}", fa.eta, fb.eta), true, h)?;
                    }
                    if b < a && family_rep[a] == a {
                        family_rep[a] = family_rep[b];
                    }
                }
            }
        }

        let tol = opts.tolerance.max(1e-20);
        for (fa, ka, ra) in &specs {
            for (fb, kb, rb) in &specs {
                let (fam_a, fam_b) = (&sr.families[*fa], &sr.families[*fb]);
                let expect = match sd.case {
                    Case::III => fa == fb && ka == kb,
                    _ => match orbit_index(sd, &fam_a.eta, &fam_b.eta) {
                        Some(m) => {
                            let cm = c_poly(&sd.q, &sd.nu, &sd.eta_g1g2(&fam_a.eta), m);
                            let img = eval_poly(&cm, &fam_a.roots[*ka]);
                            img.sub(&fam_b.roots[*kb]).abs() < tol
                        }
                        None => false,
                    },
                };
                let h = hom_dim(&nf, ra, rb).unwrap_or(usize::MAX);
                tally.record(
                    format!(
                        "{} vs {}",
                        label(fam_a.case, &fam_a.eta, Some(*ka)),
                        label(fam_b.case, &fam_b.eta, Some(*kb))
                    ),
                    expect,
                    h,
                )?;
            }
        }
        for (fi, fam) in sr.families.iter().enumerate() {
            if family_rep[fi] == fi {
                classes.extend((0..fam.roots.len()).map(|k| fam.descriptor(k)));
            }
        }
    }

    Ok(IsoClasses { classes, pairs_checked: tally.pairs, merges: tally.merges, notes: tally.notes })
}

/// Simple-module dimensions grouped by value, largest first.
pub fn dimension_multiset(classes: &[IrrepDescriptor]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in classes {
        *out.entry(c.dim).or_insert(0) += 1;
    }
    out
}

/// `f_{η'}(c_m(t)) ≡ 0` in the ring of the family for `η`: the root map
/// between two Case VI families related by `η' = ηχ₁^m`.
pub fn root_map_holds(sd: &SectorData, from: &Family, to: &Family, m: u64) -> bool {
    let cm = from.ring.reduce(&c_poly(&sd.q, &sd.nu, &sd.eta_g1g2(&from.eta), m));
    from.ring.reduce(&to.ring.modulus().compose(&cm)).is_zero()
}
