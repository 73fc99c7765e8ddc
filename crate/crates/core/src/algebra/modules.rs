//! Intertwiner spaces between matrix modules.

use crate::cyclotomic::{CycPoly, QuotRing};
use crate::linalg::{Eliminator, Field, MatrixRep, NonUnit, SparseRow};

/// `Hom(V, W)`: solutions `T` of `T ρ_V(a) = ρ_W(a) T` for every generator.
/// Returns the dimension and a basis, each `T` flattened row-major
/// (`dim W × dim V`). Modules with different generator counts have no
/// intertwiners to compare and give `0`.
pub fn hom_space<F: Field>(
    f: &F,
    v: &MatrixRep<F::Elem>,
    w: &MatrixRep<F::Elem>,
) -> Result<(usize, Vec<Vec<F::Elem>>), NonUnit<F::Elem>> {
    let (dv, dw) = (v.dim(), w.dim());
    if v.xs.len() != w.xs.len() || v.hs.len() != w.hs.len() {
        return Ok((0, Vec::new()));
    }
    let unknowns = dv * dw;
    let var = |a: usize, b: usize| a * dv + b;
    let mut elim = Eliminator::new(f, unknowns);
    for (mv, mw) in v.generators().zip(w.generators()) {
        // entry (a, c) of T·V − W·T
        for a in 0..dw {
            for c in 0..dv {
                let mut row: SparseRow<F::Elem> = Vec::new();
                for b in 0..dv {
                    let x = mv.get(b, c);
                    if !f.is_zero(x) {
                        row.push((var(a, b), x.clone()));
                    }
                }
                for b in 0..dw {
                    let x = mw.get(a, b);
                    if !f.is_zero(x) {
                        row.push((var(b, c), f.neg(x)));
                    }
                }
                if !row.is_empty() {
                    elim.add_row(row)?;
                }
            }
        }
        if elim.rank() == unknowns {
            return Ok((0, Vec::new()));
        }
    }
    let ker = elim.kernel();
    Ok((ker.len(), ker))
}

pub fn hom_dim<F: Field>(f: &F, v: &MatrixRep<F::Elem>, w: &MatrixRep<F::Elem>) -> Result<usize, NonUnit<F::Elem>> {
    hom_space(f, v, w).map(|(d, _)| d)
}

pub fn is_irreducible<F: Field>(f: &F, v: &MatrixRep<F::Elem>) -> Result<bool, NonUnit<F::Elem>> {
    hom_dim(f, v, v).map(|d| d == 1)
}

/// `dim Hom(V, W)` over each factor of a quotient ring. Whenever elimination
/// meets a zero divisor the modulus is split and both halves are redone, so
/// every returned branch is a ring in which the computation ran through
/// with unit pivots only.
pub fn hom_dim_split(ring: &QuotRing, v: &MatrixRep<CycPoly>, w: &MatrixRep<CycPoly>) -> Vec<(QuotRing, usize)> {
    ring.split_eval(
        |sub| {
            let vv = v.map(|p| sub.reduce(p));
            let ww = w.map(|p| sub.reduce(p));
            hom_dim(sub, &vv, &ww)
        },
        |e: &NonUnit<CycPoly>| Some(e.0.clone()),
    )
    .expect("a nonzero non-unit always splits a squarefree modulus")
}
