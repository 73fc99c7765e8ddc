//! Radical, simple count and consistency checks computed from structure
//! constants alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::structure::{SparseVec, StructureAlgebra};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{dense_kernel, CycField, Eliminator, Field};

/// Semisimple accounting of one sector algebra.
#[derive(Clone, Debug)]
pub struct OracleSummary {
    pub dim: usize,
    pub radical_dim: usize,
    pub radical_basis: Vec<Vec<CycNum>>,
    /// Number of isomorphism classes of simple modules over the algebraic
    /// closure, `dim Z(A/J)`.
    pub simple_count: usize,
}

impl OracleSummary {
    pub fn semisimple(&self) -> bool {
        self.radical_dim == 0
    }

    /// `dim A − dim J`, which equals `Σ dim(S)²` over the simple classes.
    pub fn semisimple_quotient_dim(&self) -> usize {
        self.dim - self.radical_dim
    }
}

fn nonunit(e: crate::linalg::NonUnit<CycNum>) -> Error {
    Error::Arithmetic(format!("nonzero field element {} has no inverse", e.0))
}

/// Jacobson radical as the kernel of the trace form (characteristic zero).
pub fn radical(alg: &StructureAlgebra) -> Result<Vec<Vec<CycNum>>> {
    let f = alg.field();
    let gram = alg.trace_gram();
    dense_kernel(&f, gram, alg.dim()).map_err(nonunit)
}

fn to_sparse(f: &CycField, v: &[CycNum]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i, c.clone())).collect()
}

/// `dim {a : [a, s] ∈ J for every generator s} − dim J`.
pub fn center_mod_radical_dim(alg: &StructureAlgebra, radical: &[Vec<CycNum>]) -> Result<usize> {
    let f = alg.field();
    let d = alg.dim();
    let mut jel = Eliminator::new(&f, d);
    for v in radical {
        jel.add_row(to_sparse(&f, v)).map_err(nonunit)?;
    }
    let gens = alg.generators();
    let mut rows = Eliminator::new(&f, d * gens.len());
    for v in 0..d {
        let b = vec![(v, CycNum::one(alg.level()))];
        let mut row = Vec::new();
        for (k, s) in gens.iter().enumerate() {
            let comm = alg.sub(&alg.mul(&b, s), &alg.mul(s, &b));
            for (c, val) in jel.reduce(comm) {
                row.push((k * d + c, val));
            }
        }
        rows.add_row(row).map_err(nonunit)?;
    }
    let central = d - rows.rank();
    central
        .checked_sub(radical.len())
        .ok_or_else(|| Error::Inconsistency("radical is not contained in the center preimage".into()))
}

pub fn analyze(alg: &StructureAlgebra) -> Result<OracleSummary> {
    let radical_basis = radical(alg)?;
    let simple_count = center_mod_radical_dim(alg, &radical_basis)?;
    Ok(OracleSummary { dim: alg.dim(), radical_dim: radical_basis.len(), radical_basis, simple_count })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub pass: bool,
    pub sum_of_squares: usize,
    pub expected_sum: usize,
    pub classes: usize,
    pub expected_classes: usize,
}

/// Compare the dimensions of a list of pairwise non-isomorphic simples with
/// the oracle: their squares must add up to `dim A − dim J` and their number
/// must equal the number of simple classes.
pub fn completeness_check(summary: &OracleSummary, dims: &[usize]) -> CompletenessReport {
    let sum_of_squares = dims.iter().map(|d| d * d).sum();
    let expected_sum = summary.semisimple_quotient_dim();
    CompletenessReport {
        pass: sum_of_squares == expected_sum && dims.len() == summary.simple_count,
        sum_of_squares,
        expected_sum,
        classes: dims.len(),
        expected_classes: summary.simple_count,
    }
}

/// `a·j` and `j·a` lie in `J` for the given elements `a` and every basis
/// vector of `J`.
pub fn radical_is_ideal(alg: &StructureAlgebra, radical: &[Vec<CycNum>], probes: &[SparseVec]) -> Result<bool> {
    let f = alg.field();
    let mut jel = Eliminator::new(&f, alg.dim());
    for v in radical {
        jel.add_row(to_sparse(&f, v)).map_err(nonunit)?;
    }
    for j in radical {
        let js = to_sparse(&f, j);
        for a in probes {
            if !jel.contains(alg.mul(a, &js)) || !jel.contains(alg.mul(&js, a)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Associativity on basis triples: all of them when `dim ≤ exhaustive_cap`,
/// otherwise `samples` seeded random triples. Returns the number of
/// triples checked, or the first failing triple.
pub fn check_associativity(
    alg: &StructureAlgebra,
    exhaustive_cap: usize,
    samples: usize,
    seed: u64,
) -> std::result::Result<usize, (usize, usize, usize)> {
    let d = alg.dim();
    let one = CycNum::one(alg.level());
    let check = |u: usize, v: usize, w: usize| {
        let uv = alg.basis_product(u, v);
        let vw = alg.basis_product(v, w);
        let left = alg.mul(&uv, &vec![(w, one.clone())]);
        let right = alg.mul(&vec![(u, one.clone())], &vw);
        left == right
    };
    if d <= exhaustive_cap {
        for u in 0..d {
            for v in 0..d {
                for w in 0..d {
                    if !check(u, v, w) {
                        return Err((u, v, w));
                    }
                }
            }
        }
        Ok(d * d * d)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (u, v, w) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
            if !check(u, v, w) {
                return Err((u, v, w));
            }
        }
        Ok(samples)
    }
}

/// The unit (`x^0 · identity coset`) acts as the identity on both sides.
pub fn check_unit(alg: &StructureAlgebra) -> bool {
    let one = CycNum::one(alg.level());
    let u = alg.unit_index();
    (0..alg.dim()).all(|v| {
        let e = vec![(v, one.clone())];
        alg.basis_product(u, v) == e && alg.basis_product(v, u) == e
    })
}
