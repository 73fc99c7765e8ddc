//! Dense matrices and exact elimination over a coefficient field given by a
//! context object.
//!
//! Three coefficient domains share this code: the cyclotomic field itself,
//! quotient rings `ℚ(ζ_N)[t]/(f)` (a product of fields when `f` is
//! squarefree), and tracked-error complex approximations. In a quotient ring
//! a nonzero pivot can fail to be invertible; elimination then stops with
//! [`NonUnit`] carrying that pivot so the caller can split the modulus.

use std::fmt::Debug;
use std::sync::Arc;

use crate::cyclotomic::numeric::embed;
use crate::cyclotomic::{ComplexApprox, CycNum, CycPoly, CycloLevel, QuotRing};

pub trait Field {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_cyc(&self, a: &CycNum) -> Self::Elem;
    /// Approximate magnitude, used for pivoting and residual reports.
    fn magnitude(&self, a: &Self::Elem) -> f64;
    /// Whether larger pivots should be preferred during elimination.
    fn wants_pivoting(&self) -> bool {
        false
    }
}

/// The cyclotomic field `ℚ(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycField {
    level: Arc<CycloLevel>,
}

impl CycField {
    pub fn new(n: u64) -> Self {
        CycField { level: CycloLevel::get(n) }
    }

    pub fn level(&self) -> &Arc<CycloLevel> {
        &self.level
    }

    pub fn zeta(&self, k: i64) -> CycNum {
        CycNum::zeta_pow(&self.level, k)
    }

    pub fn int(&self, v: i64) -> CycNum {
        CycNum::from_int(&self.level, v)
    }
}

impl Field for CycField {
    type Elem = CycNum;

    fn zero(&self) -> CycNum {
        CycNum::zero(&self.level)
    }
    fn one(&self) -> CycNum {
        CycNum::one(&self.level)
    }
    fn is_zero(&self, a: &CycNum) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a + b
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a - b
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a * b
    }
    fn neg(&self, a: &CycNum) -> CycNum {
        -a
    }
    fn inv(&self, a: &CycNum) -> Option<CycNum> {
        a.inv()
    }
    fn from_cyc(&self, a: &CycNum) -> CycNum {
        a.clone()
    }
    fn magnitude(&self, a: &CycNum) -> f64 {
        a.abs_f64()
    }
}

impl Field for QuotRing {
    type Elem = CycPoly;

    fn zero(&self) -> CycPoly {
        CycPoly::zero(self.level())
    }
    fn one(&self) -> CycPoly {
        CycPoly::one(self.level())
    }
    fn is_zero(&self, a: &CycPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        a.add(b)
    }
    fn sub(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        a.sub(b)
    }
    fn mul(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        QuotRing::mul(self, a, b)
    }
    fn neg(&self, a: &CycPoly) -> CycPoly {
        a.neg()
    }
    fn inv(&self, a: &CycPoly) -> Option<CycPoly> {
        QuotRing::inv(self, a)
    }
    fn from_cyc(&self, a: &CycNum) -> CycPoly {
        CycPoly::constant(a.clone())
    }
    fn magnitude(&self, a: &CycPoly) -> f64 {
        a.coeffs().iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }
}

/// Complex numbers at a fixed working precision; entries whose magnitude
/// is below `tolerance` count as zero.
#[derive(Clone, Debug)]
pub struct NumericField {
    pub bits: u32,
    pub tolerance: f64,
}

impl NumericField {
    pub fn new(bits: u32, tolerance: f64) -> Self {
        NumericField { bits, tolerance }
    }
}

impl Field for NumericField {
    type Elem = ComplexApprox;

    fn zero(&self) -> ComplexApprox {
        ComplexApprox::zero(self.bits)
    }
    fn one(&self) -> ComplexApprox {
        ComplexApprox::from_f64(1.0, 0.0, self.bits).with_error(0.0)
    }
    fn is_zero(&self, a: &ComplexApprox) -> bool {
        a.abs() <= self.tolerance
    }
    fn add(&self, a: &ComplexApprox, b: &ComplexApprox) -> ComplexApprox {
        a.add(b)
    }
    fn sub(&self, a: &ComplexApprox, b: &ComplexApprox) -> ComplexApprox {
        a.sub(b)
    }
    fn mul(&self, a: &ComplexApprox, b: &ComplexApprox) -> ComplexApprox {
        a.mul(b)
    }
    fn neg(&self, a: &ComplexApprox) -> ComplexApprox {
        a.neg()
    }
    fn inv(&self, a: &ComplexApprox) -> Option<ComplexApprox> {
        if self.is_zero(a) {
            None
        } else {
            self.one().div(a)
        }
    }
    fn from_cyc(&self, a: &CycNum) -> ComplexApprox {
        embed(a, self.bits)
    }
    fn magnitude(&self, a: &ComplexApprox) -> f64 {
        a.abs()
    }
    fn wants_pivoting(&self) -> bool {
        true
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in matrix product");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if f.is_zero(bkj) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = f.add(&out.data[idx], &f.mul(aik, bkj));
            }
        }
    }
    out
}

pub fn mat_add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows, a.cols, |i, j| f.add(a.get(i, j), b.get(i, j)))
}

pub fn mat_sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows, a.cols, |i, j| f.sub(a.get(i, j), b.get(i, j)))
}

pub fn mat_scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| f.mul(c, x))
}

pub fn mat_pow<F: Field>(f: &F, a: &Matrix<F::Elem>, e: u64) -> Matrix<F::Elem> {
    let mut acc = identity(f, a.rows);
    for _ in 0..e {
        acc = mat_mul(f, &acc, a);
    }
    acc
}

/// Largest entry magnitude.
pub fn max_magnitude<F: Field>(f: &F, a: &Matrix<F::Elem>) -> f64 {
    a.data.iter().map(|x| f.magnitude(x)).fold(0.0, f64::max)
}

pub fn is_zero_matrix<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// A module given by matrices for the skew-primitive generators `x_i` and the
/// generators `h_u` of the cyclic factors of the group.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<E> {
    pub xs: Vec<Matrix<E>>,
    pub hs: Vec<Matrix<E>>,
}

impl<E: Clone> MatrixRep<E> {
    pub fn dim(&self) -> usize {
        self.xs.first().or(self.hs.first()).map_or(0, |m| m.rows())
    }

    pub fn map<T: Clone>(&self, mut f: impl FnMut(&E) -> T) -> MatrixRep<T> {
        MatrixRep {
            xs: self.xs.iter().map(|m| m.map(&mut f)).collect(),
            hs: self.hs.iter().map(|m| m.map(&mut f)).collect(),
        }
    }

    /// All generator matrices, `x`'s first.
    pub fn generators(&self) -> impl Iterator<Item = &Matrix<E>> {
        self.xs.iter().chain(self.hs.iter())
    }
}

/// A nonzero pivot that is not a unit of the coefficient ring.
#[derive(Clone, Debug)]
pub struct NonUnit<E>(pub E);

pub type SparseRow<E> = Vec<(usize, E)>;

/// Incremental Gauss–Jordan elimination on sparse rows. The stored rows are
/// kept in reduced echelon form: each has leading coefficient 1 at its pivot
/// column and zeros at every other pivot column.
pub struct Eliminator<'a, F: Field> {
    field: &'a F,
    ncols: usize,
    rows: Vec<SparseRow<F::Elem>>,
    pivot_of_col: Vec<Option<usize>>,
}

impl<'a, F: Field> Eliminator<'a, F> {
    pub fn new(field: &'a F, ncols: usize) -> Self {
        Eliminator { field, ncols, rows: Vec::new(), pivot_of_col: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce a row against the current basis.
    pub fn reduce(&self, row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        let f = self.field;
        let mut dense: Vec<Option<F::Elem>> = vec![None; self.ncols];
        for (c, v) in row {
            if !f.is_zero(&v) {
                dense[c] = Some(match dense[c].take() {
                    Some(old) => f.add(&old, &v),
                    None => v,
                });
            }
        }
        for c in 0..self.ncols {
            let Some(p) = self.pivot_of_col[c] else { continue };
            let Some(coef) = dense[c].take() else { continue };
            if f.is_zero(&coef) {
                continue;
            }
            for (cc, pv) in &self.rows[p] {
                if *cc == c {
                    continue;
                }
                let t = f.mul(&coef, pv);
                let nv = match dense[*cc].take() {
                    Some(old) => f.sub(&old, &t),
                    None => f.neg(&t),
                };
                dense[*cc] = Some(nv);
            }
        }
        dense.into_iter().enumerate().filter_map(|(c, v)| v.filter(|v| !f.is_zero(v)).map(|v| (c, v))).collect()
    }

    /// Add a row; returns whether it enlarged the row space.
    pub fn add_row(&mut self, row: SparseRow<F::Elem>) -> Result<bool, NonUnit<F::Elem>> {
        let f = self.field;
        let reduced = self.reduce(row);
        if reduced.is_empty() {
            return Ok(false);
        }
        let pos = if f.wants_pivoting() {
            reduced
                .iter()
                .enumerate()
                .max_by(|a, b| f.magnitude(&a.1 .1).total_cmp(&f.magnitude(&b.1 .1)))
                .map(|(i, _)| i)
                .unwrap()
        } else {
            0
        };
        let (pc, pv) = reduced[pos].clone();
        let inv = f.inv(&pv).ok_or_else(|| NonUnit(pv.clone()))?;
        let new_row: SparseRow<F::Elem> =
            reduced.into_iter().map(|(c, v)| if c == pc { (c, f.one()) } else { (c, f.mul(&inv, &v)) }).collect();
        // clear the new pivot column from existing rows
        for r in &mut self.rows {
            let Some(idx) = r.iter().position(|(c, _)| *c == pc) else { continue };
            let coef = r[idx].1.clone();
            let mut merged: Vec<(usize, F::Elem)> = Vec::with_capacity(r.len() + new_row.len());
            let (mut i, mut j) = (0, 0);
            while i < r.len() || j < new_row.len() {
                let ci = r.get(i).map(|x| x.0).unwrap_or(usize::MAX);
                let cj = new_row.get(j).map(|x| x.0).unwrap_or(usize::MAX);
                if ci < cj {
                    merged.push(r[i].clone());
                    i += 1;
                } else if cj < ci {
                    merged.push((cj, f.neg(&f.mul(&coef, &new_row[j].1))));
                    j += 1;
                } else {
                    let v = f.sub(&r[i].1, &f.mul(&coef, &new_row[j].1));
                    if !f.is_zero(&v) && ci != pc {
                        merged.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            *r = merged;
        }
        self.pivot_of_col[pc] = Some(self.rows.len());
        self.rows.push(new_row);
        Ok(true)
    }

    /// Whether a row lies in the current row space.
    pub fn contains(&self, row: SparseRow<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn basis(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_of_col[c].is_some()).collect()
    }

    /// Basis of `{v : row·v = 0 for every stored row}`.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| self.pivot_of_col[c].is_none()) {
            let mut v = vec![f.zero(); self.ncols];
            v[free] = f.one();
            for (pc, p) in self.pivot_of_col.iter().enumerate() {
                let Some(p) = p else { continue };
                if let Some((_, coef)) = self.rows[*p].iter().find(|(c, _)| *c == free) {
                    v[pc] = f.neg(coef);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Fraction-free (Bareiss) row reduction of a dense matrix. Returns the
/// pivot columns and the echelon form, each row scaled by its pivot.
pub fn bareiss_echelon<F: Field>(
    f: &F,
    mut m: Vec<Vec<F::Elem>>,
) -> Result<(Vec<usize>, Vec<Vec<F::Elem>>), NonUnit<F::Elem>> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = f.one();
    let mut prev_inv = f.one();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let candidate = if f.wants_pivoting() {
            (row..nrows)
                .filter(|&i| !f.is_zero(&m[i][col]))
                .max_by(|&a, &b| f.magnitude(&m[a][col]).total_cmp(&f.magnitude(&m[b][col])))
        } else {
            (row..nrows).find(|&i| !f.is_zero(&m[i][col]))
        };
        let Some(p) = candidate else { continue };
        m.swap(row, p);
        let piv = m[row][col].clone();
        let piv_inv = f.inv(&piv).ok_or_else(|| NonUnit(piv.clone()))?;
        for i in row + 1..nrows {
            let a = m[i][col].clone();
            for j in col + 1..ncols {
                let t = f.sub(&f.mul(&piv, &m[i][j]), &f.mul(&a, &m[row][j]));
                m[i][j] = f.mul(&t, &prev_inv);
            }
            m[i][col] = f.zero();
        }
        pivots.push(col);
        prev = piv;
        prev_inv = piv_inv;
        row += 1;
    }
    let _ = prev;
    m.truncate(row);
    Ok((pivots, m))
}

/// Right kernel of a dense matrix via fraction-free elimination followed by
/// back substitution.
pub fn dense_kernel<F: Field>(
    f: &F,
    m: Vec<Vec<F::Elem>>,
    ncols: usize,
) -> Result<Vec<Vec<F::Elem>>, NonUnit<F::Elem>> {
    if m.is_empty() {
        return Ok((0..ncols).map(|i| (0..ncols).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect());
    }
    let (pivots, ech) = bareiss_echelon(f, m)?;
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivots.contains(&c)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut s = f.zero();
            for j in pc + 1..ncols {
                if !f.is_zero(&ech[r][j]) && !f.is_zero(&v[j]) {
                    s = f.add(&s, &f.mul(&ech[r][j], &v[j]));
                }
            }
            let inv = f.inv(&ech[r][pc]).ok_or_else(|| NonUnit(ech[r][pc].clone()))?;
            v[pc] = f.neg(&f.mul(&s, &inv));
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_over_cyclotomic_field() {
        let f = CycField::new(4);
        let i = f.zeta(1);
        // rows: (1, i, 0), (i, -1, 0) are dependent; kernel has dim 2
        let m = vec![vec![f.one(), i.clone(), f.zero()], vec![i.clone(), f.int(-1), f.zero()]];
        let ker = dense_kernel(&f, m.clone(), 3).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m {
                let s = row.iter().zip(v).fold(f.zero(), |acc, (a, b)| &acc + &(a * b));
                assert!(s.is_zero());
            }
        }
        let mut e = Eliminator::new(&f, 3);
        for row in m {
            e.add_row(row.into_iter().enumerate().collect()).unwrap();
        }
        assert_eq!(e.rank(), 1);
        assert_eq!(e.kernel().len(), 2);
    }

    #[test]
    fn eliminator_matches_bareiss_rank() {
        let f = CycField::new(3);
        let z = f.zeta(1);
        let rows: Vec<Vec<CycNum>> = vec![
            vec![f.one(), z.clone(), f.int(2), f.zero()],
            vec![z.clone(), f.zero(), f.one(), f.int(3)],
            vec![&f.one() + &z, z.clone(), &f.int(2) + &f.one(), f.int(3)],
        ];
        let (p, _) = bareiss_echelon(&f, rows.clone()).unwrap();
        let mut e = Eliminator::new(&f, 4);
        for r in rows {
            e.add_row(r.into_iter().enumerate().collect()).unwrap();
        }
        assert_eq!(p.len(), 2);
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn non_unit_pivot_is_reported() {
        let l = CycloLevel::get(4);
        let modulus = CycPoly::new(&l, vec![CycNum::from_int(&l, 1), CycNum::zero(&l), CycNum::one(&l)]);
        let r = QuotRing::new(&modulus).unwrap();
        let t = r.generator();
        let zero_div = t.sub(&CycPoly::constant(CycNum::zeta_pow(&l, 1)));
        let mut e = Eliminator::new(&r, 2);
        assert!(e.add_row(vec![(0, zero_div)]).is_err());
    }
}
