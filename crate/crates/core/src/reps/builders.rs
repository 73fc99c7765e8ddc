//! Explicit simple modules for the six cases.
//!
//! Builders work in the coordinates of `SectorData::datum` (after the
//! generator swap, if one was made); [`super::build_sector`] converts back.
//! Matrices act on column vectors: column `j` is the image of basis vector `j`.

use crate::cyclotomic::numeric::{eval_poly, simple_roots};
use crate::cyclotomic::{ComplexApprox, CycNum, CycPoly, QuotRing};
use crate::error::{Error, Result};
use crate::groups::Character;
use crate::lifting::{Case, LiftingDatum, SectorData};
use crate::linalg::{CycField, Field, Matrix, MatrixRep};

use super::cseq::{c_poly, c_sequence};

/// Parameters that determine a simple module within its sector.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepDescriptor {
    pub case: Case,
    pub eta: Character,
    pub dim: usize,
    /// String length `N` (Case IV).
    pub length: Option<usize>,
    /// A root of a defining polynomial: `λ` (Case III) or `c` (Case VI).
    pub parameter: Option<RootParameter>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootParameter {
    /// Squarefree defining polynomial whose roots parametrize the family.
    pub poly: CycPoly,
    /// Position in the canonical (re, im) ordering of the roots.
    pub index: usize,
    pub value: ComplexApprox,
}

/// Modules depending on a root `t` of a polynomial, realized over the ring
/// `ℚ(ζ_N)[t]/(f)` with `f` the squarefree part of that polynomial.
#[derive(Clone, Debug)]
pub struct Family {
    pub case: Case,
    pub eta: Character,
    /// The polynomial before removing repeated factors.
    pub poly: CycPoly,
    pub squarefree: bool,
    pub ring: QuotRing,
    pub rep: MatrixRep<CycPoly>,
    pub roots: Vec<ComplexApprox>,
}

impl Family {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn specialize(&self, root: &ComplexApprox) -> MatrixRep<ComplexApprox> {
        self.rep.map(|p| eval_poly(p, root))
    }

    pub fn descriptor(&self, index: usize) -> IrrepDescriptor {
        IrrepDescriptor {
            case: self.case,
            eta: self.eta.clone(),
            dim: self.dim(),
            length: None,
            parameter: Some(RootParameter {
                poly: self.ring.modulus().clone(),
                index,
                value: self.roots[index].clone(),
            }),
        }
    }
}

fn check_fiber(sd: &SectorData, eta: &Character) -> Result<()> {
    if sd.sector.fiber.contains(eta) {
        Ok(())
    } else {
        Err(Error::NotInFiber(format!("character {eta}")))
    }
}

/// Diagonal `h_u` matrices for a list of weights.
fn weight_matrices<F: Field>(f: &F, d: &LiftingDatum, weights: &[Character]) -> Vec<Matrix<F::Elem>> {
    let group = d.group();
    (0..group.rank())
        .map(|u| {
            let hu = group.generator(u);
            let mut m = Matrix::filled(weights.len(), weights.len(), f.zero());
            for (i, w) in weights.iter().enumerate() {
                m.set(i, i, f.from_cyc(&d.char_value(w, &hu)));
            }
            m
        })
        .collect()
}

/// `η, ηχ₁, …, ηχ₁^{n−1}`.
fn string_weights(d: &LiftingDatum, eta: &Character, n: usize) -> Vec<Character> {
    let group = d.group();
    let mut out = Vec::with_capacity(n);
    let mut w = eta.clone();
    for _ in 0..n {
        out.push(w.clone());
        w = group.char_mul(&w, d.chi(0));
    }
    out
}

/// `f_i ↦ f_{i+1}`, `f_{n−1} ↦ wrap·f_0`.
fn shift<F: Field>(f: &F, n: usize, wrap: F::Elem) -> Matrix<F::Elem> {
    let mut m = Matrix::filled(n, n, f.zero());
    for i in 0..n - 1 {
        m.set(i + 1, i, f.one());
    }
    m.set(0, n - 1, f.add(m.get(0, n - 1), &wrap));
    m
}

fn descriptor(case: Case, eta: &Character, dim: usize) -> IrrepDescriptor {
    IrrepDescriptor { case, eta: eta.clone(), dim, length: None, parameter: None }
}

/// One-dimensional modules with every `x_i` acting by zero.
pub(crate) fn one_dimensional(d: &LiftingDatum, eta: &Character) -> MatrixRep<CycNum> {
    let f = CycField::new(d.group().exponent());
    MatrixRep {
        xs: (0..d.theta()).map(|_| Matrix::filled(1, 1, f.zero())).collect(),
        hs: weight_matrices(&f, d, std::slice::from_ref(eta)),
    }
}

/// `W(η)`: `x` cycles the weight vectors with `x^r = α`, every other
/// generator acts by zero.
pub(crate) fn shift_module(d: &LiftingDatum, eta: &Character, alpha: &CycNum) -> MatrixRep<CycNum> {
    let f = CycField::new(d.group().exponent());
    let r = d.r(0) as usize;
    let mut xs = vec![shift(&f, r, alpha.clone())];
    xs.extend((1..d.theta()).map(|_| Matrix::filled(r, r, f.zero())));
    MatrixRep { xs, hs: weight_matrices(&f, d, &string_weights(d, eta, r)) }
}

pub fn build_case_i(sd: &SectorData) -> Vec<(IrrepDescriptor, MatrixRep<CycNum>)> {
    sd.sector.fiber.iter().map(|eta| (descriptor(Case::I, eta, 1), one_dimensional(&sd.datum, eta))).collect()
}

pub fn build_case_ii(sd: &SectorData, eta: &Character) -> Result<(IrrepDescriptor, MatrixRep<CycNum>)> {
    check_fiber(sd, eta)?;
    let rep = shift_module(&sd.datum, eta, &sd.alpha);
    Ok((descriptor(Case::II, eta, rep.dim()), rep))
}

/// String length of the Case IV module with weight `η`.
pub fn case_iv_length(sd: &SectorData, eta: &Character) -> Result<usize> {
    let zero = CycNum::zero(sd.datum.level());
    let seq = c_sequence(sd, eta, &zero, sd.r as usize);
    (1..seq.values.len())
        .find(|&i| seq.values[i].is_zero())
        .ok_or_else(|| Error::Inconsistency(format!("no vanishing c_i for weight {eta}")))
}

pub fn build_case_iv(sd: &SectorData, eta: &Character) -> Result<(IrrepDescriptor, MatrixRep<CycNum>)> {
    check_fiber(sd, eta)?;
    let d = &sd.datum;
    let f = CycField::new(d.group().exponent());
    let n = case_iv_length(sd, eta)?;
    let seq = c_sequence(sd, eta, &f.zero(), n);
    let mut x = Matrix::filled(n, n, f.zero());
    let mut y = Matrix::filled(n, n, f.zero());
    for i in 0..n - 1 {
        x.set(i + 1, i, f.one());
    }
    for i in 1..n {
        y.set(i - 1, i, seq.values[i].clone());
    }
    let rep = MatrixRep { xs: vec![x, y], hs: weight_matrices(&f, d, &string_weights(d, eta, n)) };
    let mut desc = descriptor(Case::IV, eta, n);
    desc.length = Some(n);
    Ok((desc, rep))
}

pub fn build_case_v(sd: &SectorData, eta: &Character) -> Result<(IrrepDescriptor, MatrixRep<CycNum>)> {
    check_fiber(sd, eta)?;
    let d = &sd.datum;
    let f = CycField::new(d.group().exponent());
    let r = sd.r as usize;
    let seq = c_sequence(sd, eta, &f.zero(), r);
    let mut y = Matrix::filled(r, r, f.zero());
    for i in 1..r {
        y.set(i - 1, i, seq.values[i].clone());
    }
    let rep = MatrixRep {
        xs: vec![shift(&f, r, sd.alpha.clone()), y],
        hs: weight_matrices(&f, d, &string_weights(d, eta, r)),
    };
    Ok((descriptor(Case::V, eta, r), rep))
}

/// `P(c) = ∏_{i<r} c_i(c) − αβ`. The product of the `c_i` equals `α·β`
/// because `y^r` picks up one wrap factor `α⁻¹` on its way around.
pub fn case_vi_polynomial(sd: &SectorData, eta: &Character) -> CycPoly {
    let l = sd.datum.level();
    let e12 = sd.eta_g1g2(eta);
    let mut p = CycPoly::one(l);
    for i in 0..sd.r {
        p = p.mul(&c_poly(&sd.q, &sd.nu, &e12, i));
    }
    p.sub(&CycPoly::constant(&sd.alpha * &sd.beta))
}

pub fn build_case_vi(sd: &SectorData, eta: &Character, bits: u32) -> Result<Family> {
    check_fiber(sd, eta)?;
    let d = &sd.datum;
    let poly = case_vi_polynomial(sd, eta);
    let sqf = poly.squarefree_part();
    let squarefree = sqf.degree() == poly.degree();
    let ring = QuotRing::new(&sqf)?;
    let r = sd.r as usize;
    let e12 = sd.eta_g1g2(eta);
    let alpha_inv = sd.alpha.inv().ok_or_else(|| Error::Inconsistency("Case VI with vanishing alpha".into()))?;
    let cs: Vec<CycPoly> = (0..sd.r).map(|i| ring.reduce(&c_poly(&sd.q, &sd.nu, &e12, i))).collect();
    let mut y = Matrix::filled(r, r, ring.zero());
    for i in 1..r {
        y.set(i - 1, i, cs[i].clone());
    }
    y.set(r - 1, 0, cs[0].scale(&alpha_inv));
    let rep = MatrixRep {
        xs: vec![shift(&ring, r, ring.from_cyc(&sd.alpha)), y],
        hs: weight_matrices(&ring, d, &string_weights(d, eta, r)),
    };
    let roots = simple_roots(&sqf, bits)?;
    Ok(Family { case: Case::VI, eta: eta.clone(), poly, squarefree, ring, rep, roots })
}

/// Shape of the Case III modules: `y^d` maps the weight `η` into the
/// `x`-string through `η` at position `m`, and `λ^e = κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordData {
    pub d: u64,
    pub m: u64,
    pub e: u64,
    pub t: u64,
    pub kappa: CycNum,
}

pub fn clifford_data(sd: &SectorData) -> Result<CliffordData> {
    let dat = &sd.datum;
    let group = dat.group();
    let (r, s) = (sd.r, sd.s);
    for d in 1..=s {
        let target = group.char_pow(dat.chi(1), d as i64);
        let Some(m) = (0..r).find(|&m| group.char_pow(dat.chi(0), m as i64) == target) else {
            continue;
        };
        if s % d != 0 || (m * (s / d)) % r != 0 {
            return Err(Error::Inconsistency(format!(
                "orbit data d = {d}, m = {m} incompatible with r = {r}, s = {s}"
            )));
        }
        let e = s / d;
        let t = m * e / r;
        let twist = (d * m * (e * (e - 1) / 2)) as i64;
        let kappa = &(&sd.beta * &sd.alpha.pow(-(t as i64))) * &sd.w.pow(twist);
        return Ok(CliffordData { d, m, e, t, kappa });
    }
    Err(Error::Inconsistency("no power of chi_2 lies in the group generated by chi_1".into()))
}

/// One family per coset of `⟨χ₁, χ₂⟩` in the fiber, each with `e` members
/// of dimension `r·d`.
pub fn build_case_iii(sd: &SectorData, bits: u32) -> Result<Vec<Family>> {
    let dat = &sd.datum;
    let group = dat.group();
    let cd = clifford_data(sd)?;
    let l = dat.level();
    let (r, dd) = (sd.r as usize, cd.d as usize);
    let mut coeffs = vec![CycNum::zero(l); cd.e as usize + 1];
    coeffs[0] = -&cd.kappa;
    coeffs[cd.e as usize] = CycNum::one(l);
    let poly = CycPoly::new(l, coeffs);
    let ring = QuotRing::new(&poly)?;
    let roots = simple_roots(&poly, bits)?;
    let lam = ring.generator();
    let n = r * dd;
    let idx = |i: usize, j: usize| j * r + i;

    let mut families = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for eta in &sd.sector.fiber {
        if seen.contains(eta) {
            continue;
        }
        let mut weights = vec![group.trivial_character(); n];
        for j in 0..dd {
            for i in 0..r {
                let w = group.char_mul(
                    &group.char_mul(eta, &group.char_pow(dat.chi(0), i as i64)),
                    &group.char_pow(dat.chi(1), j as i64),
                );
                seen.insert(w.clone());
                weights[idx(i, j)] = w;
            }
        }
        let mut x = Matrix::filled(n, n, ring.zero());
        let mut y = Matrix::filled(n, n, ring.zero());
        for j in 0..dd {
            for i in 0..r {
                let (ti, wrap) = if i + 1 < r { (i + 1, CycNum::one(l)) } else { (0, sd.alpha.clone()) };
                x.set(idx(ti, j), idx(i, j), ring.from_cyc(&wrap));
                let wi = sd.w.pow(-(i as i64));
                if j + 1 < dd {
                    y.set(idx(i, j + 1), idx(i, j), ring.from_cyc(&wi));
                } else {
                    let k = i + cd.m as usize;
                    let (a, b) = (k / r, k % r);
                    let coef = &wi * &sd.alpha.pow(a as i64);
                    y.set(idx(b, 0), idx(i, j), lam.scale(&coef));
                }
            }
        }
        let rep = MatrixRep { xs: vec![x, y], hs: weight_matrices(&ring, dat, &weights) };
        families.push(Family {
            case: Case::III,
            eta: eta.clone(),
            poly: poly.clone(),
            squarefree: true,
            ring: ring.clone(),
            rep,
            roots: roots.clone(),
        });
    }
    Ok(families)
}
