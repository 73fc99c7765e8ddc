//! `A(ξ)` by PBW basis and structure constants.
//!
//! A basis element is `x_1^{e_1}⋯x_θ^{e_θ} ḡ` with `0 ≤ e_i < r_i` and `ḡ`
//! the lexicographically smallest member of its coset of `Λ`. Products in the
//! full lifting are computed by left multiplication with one `x_i` at a time,
//! using the defining relations oriented towards this ordering, and then
//! pushed into the sector by replacing elements of `Λ` with their
//! `ξ`-values.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cyclotomic::{CycNum, CycloLevel};
use crate::error::{Error, Result};
use crate::groups::{Character, GroupElement, SubgroupCharacter};
use crate::lifting::LiftingDatum;
use crate::linalg::{CycField, Matrix, MatrixRep};

const REWRITE_LIMIT: usize = 50_000_000;

/// Element of the full lifting: `(monomial index, group element index) → coefficient`.
type FullTerms = Vec<(usize, usize, CycNum)>;

/// Sparse vector over the sector basis.
pub type SparseVec = Vec<(usize, CycNum)>;

#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    datum: LiftingDatum,
    xi: SubgroupCharacter,
    level: Arc<CycloLevel>,
    radices: Vec<u64>,
    monomials: usize,
    /// Character `χ^e = ∏ χ_k^{e_k}` of each monomial.
    mono_chars: Vec<Character>,
    cosets: Vec<GroupElement>,
    /// For each group element (by index): position of its coset and the
    /// `ζ_N`-exponent of `ξ(g − ḡ)`.
    coset_of: Vec<(usize, u64)>,
    /// `x^e · x^{e'}` in the full lifting, indexed by `e·M + e'`.
    mono_products: Vec<FullTerms>,
}

impl StructureAlgebra {
    pub fn build(datum: &LiftingDatum, xi: &SubgroupCharacter) -> Result<Self> {
        let group = datum.group();
        let lambda = datum.lambda();
        let level = datum.level().clone();
        let radices: Vec<u64> = (0..datum.theta()).map(|i| datum.r(i)).collect();
        let monomials = radices.iter().product::<u64>() as usize;

        let order = group.order() as usize;
        let mut coset_of = vec![(usize::MAX, 0u64); order];
        let mut cosets = Vec::new();
        for (idx, g) in group.elements().enumerate() {
            if coset_of[idx].0 != usize::MAX {
                continue;
            }
            let pos = cosets.len();
            for (li, l) in lambda.members().iter().enumerate() {
                let h = group.add(&g, l);
                coset_of[group.index_of(&h)] = (pos, xi.values()[li]);
            }
            cosets.push(g);
        }

        let mut alg = StructureAlgebra {
            datum: datum.clone(),
            xi: xi.clone(),
            level,
            radices,
            monomials,
            mono_chars: Vec::new(),
            cosets,
            coset_of,
            mono_products: Vec::new(),
        };
        alg.mono_chars = (0..monomials)
            .map(|m| {
                let e = alg.decode(m);
                let mut c = group.trivial_character();
                for (k, &ek) in e.iter().enumerate() {
                    c = group.char_mul(&c, &group.char_pow(datum.chi(k), ek as i64));
                }
                c
            })
            .collect();

        let mut rw = Rewriter { alg: &alg, memo: HashMap::new(), steps: 0 };
        let mut products = Vec::with_capacity(monomials * monomials);
        for a in 0..monomials {
            let e = alg.decode(a);
            for b in 0..monomials {
                let mut acc: FullTerms = vec![(b, 0, CycNum::one(&alg.level))];
                for i in (0..e.len()).rev() {
                    for _ in 0..e[i] {
                        acc = rw.left_mul(i, &acc)?;
                    }
                }
                products.push(acc);
            }
        }
        alg.mono_products = products;
        Ok(alg)
    }

    pub fn datum(&self) -> &LiftingDatum {
        &self.datum
    }

    pub fn xi(&self) -> &SubgroupCharacter {
        &self.xi
    }

    pub fn level(&self) -> &Arc<CycloLevel> {
        &self.level
    }

    pub fn dim(&self) -> usize {
        self.monomials * self.cosets.len()
    }

    pub fn field(&self) -> CycField {
        CycField::new(self.level.n())
    }

    fn decode(&self, mut m: usize) -> Vec<u64> {
        let mut e = vec![0; self.radices.len()];
        for k in (0..self.radices.len()).rev() {
            let r = self.radices[k] as usize;
            e[k] = (m % r) as u64;
            m /= r;
        }
        e
    }

    fn encode(&self, e: &[u64]) -> usize {
        e.iter().zip(&self.radices).fold(0, |acc, (&ek, &r)| acc * r as usize + ek as usize)
    }

    /// Basis label `(exponents, coset representative)`.
    pub fn label(&self, idx: usize) -> (Vec<u64>, GroupElement) {
        (self.decode(idx % self.monomials), self.cosets[idx / self.monomials].clone())
    }

    pub fn unit_index(&self) -> usize {
        0
    }

    /// Sector basis vector equal to the image of the group element `g`.
    pub fn group_element(&self, g: &GroupElement) -> SparseVec {
        let (pos, k) = self.coset_of[self.datum.group().index_of(g)];
        vec![(pos * self.monomials, CycNum::zeta_pow(&self.level, k as i64))]
    }

    /// Image of `x_i`.
    pub fn x(&self, i: usize) -> SparseVec {
        let mut e = vec![0; self.radices.len()];
        e[i] = 1;
        vec![(self.encode(&e), CycNum::one(&self.level))]
    }

    /// Algebra generators: every `x_i`, then every `h_u`.
    pub fn generators(&self) -> Vec<SparseVec> {
        let group = self.datum.group();
        let mut out: Vec<SparseVec> = (0..self.radices.len()).map(|i| self.x(i)).collect();
        for u in 0..group.rank() {
            out.push(self.group_element(&group.generator(u)));
        }
        out
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, u: usize, v: usize) -> SparseVec {
        let group = self.datum.group();
        let (mu, cu) = (u % self.monomials, u / self.monomials);
        let (mv, cv) = (v % self.monomials, v / self.monomials);
        let gu = &self.cosets[cu];
        let gv = &self.cosets[cv];
        // ḡ x^{e'} = χ^{e'}(ḡ) x^{e'} ḡ
        let twist = group.char_eval(&self.mono_chars[mv], gu);
        let base = group.add(gu, gv);
        let mut out: HashMap<usize, CycNum> = HashMap::new();
        for (m, gamma, c) in &self.mono_products[mu * self.monomials + mv] {
            let g = group.add(&group.element_at(*gamma), &base);
            let (pos, k) = self.coset_of[group.index_of(&g)];
            let coef = c * &CycNum::zeta_pow(&self.level, (k + twist) as i64);
            let idx = pos * self.monomials + m;
            accumulate(&mut out, idx, coef);
        }
        finish(out)
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out: HashMap<usize, CycNum> = HashMap::new();
        for (u, cu) in a {
            for (v, cv) in b {
                let c = cu * cv;
                for (w, cw) in self.basis_product(*u, *v) {
                    accumulate(&mut out, w, &c * &cw);
                }
            }
        }
        finish(out)
    }

    pub fn sub(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out: HashMap<usize, CycNum> = a.iter().cloned().collect();
        for (k, v) in b {
            accumulate(&mut out, *k, -v);
        }
        finish(out)
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_matrix(&self, a: &SparseVec) -> Matrix<CycNum> {
        let d = self.dim();
        let mut m = Matrix::filled(d, d, CycNum::zero(&self.level));
        for v in 0..d {
            for (w, c) in self.mul(a, &vec![(v, CycNum::one(&self.level))]) {
                m.set(w, v, c);
            }
        }
        m
    }

    /// The left regular module, as matrices for the generators.
    pub fn regular_rep(&self) -> MatrixRep<CycNum> {
        let group = self.datum.group();
        MatrixRep {
            xs: (0..self.radices.len()).map(|i| self.left_matrix(&self.x(i))).collect(),
            hs: (0..group.rank()).map(|u| self.left_matrix(&self.group_element(&group.generator(u)))).collect(),
        }
    }

    /// `t(b) = tr L_b` for each basis element.
    pub fn traces(&self) -> Vec<CycNum> {
        let d = self.dim();
        (0..d)
            .map(|u| {
                let mut t = CycNum::zero(&self.level);
                for v in 0..d {
                    if let Some((_, c)) = self.basis_product(u, v).into_iter().find(|(w, _)| *w == v) {
                        t = &t + &c;
                    }
                }
                t
            })
            .collect()
    }

    /// Gram matrix `G[u][v] = t(b_u b_v)` of the trace form.
    pub fn trace_gram(&self) -> Vec<Vec<CycNum>> {
        let d = self.dim();
        let t = self.traces();
        (0..d)
            .map(|u| {
                (0..d)
                    .map(|v| {
                        self.basis_product(u, v)
                            .iter()
                            .fold(CycNum::zero(&self.level), |acc, (w, c)| &acc + &(c * &t[*w]))
                    })
                    .collect()
            })
            .collect()
    }
}

fn accumulate(map: &mut HashMap<usize, CycNum>, k: usize, v: CycNum) {
    match map.get_mut(&k) {
        Some(old) => *old = &*old + &v,
        None => {
            map.insert(k, v);
        }
    }
}

fn finish(map: HashMap<usize, CycNum>) -> SparseVec {
    let mut out: SparseVec = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

struct Rewriter<'a> {
    alg: &'a StructureAlgebra,
    memo: HashMap<(usize, usize), FullTerms>,
    steps: usize,
}

impl Rewriter<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > REWRITE_LIMIT {
            return Err(Error::RewriteLimit(REWRITE_LIMIT));
        }
        Ok(())
    }

    /// `x_i · Σ c x^e γ`.
    fn left_mul(&mut self, i: usize, terms: &FullTerms) -> Result<FullTerms> {
        let group = self.alg.datum.group();
        let mut out: HashMap<(usize, usize), CycNum> = HashMap::new();
        for (m, gamma, c) in terms {
            let ge = group.element_at(*gamma);
            for (m2, g2, c2) in self.mul_x(i, *m)? {
                let g = group.index_of(&group.add(&group.element_at(g2), &ge));
                let v = c * &c2;
                match out.get_mut(&(m2, g)) {
                    Some(old) => *old = &*old + &v,
                    None => {
                        out.insert((m2, g), v);
                    }
                }
            }
        }
        let mut res: FullTerms = out.into_iter().filter(|(_, v)| !v.is_zero()).map(|((m, g), v)| (m, g, v)).collect();
        res.sort_by_key(|(m, g, _)| (*m, *g));
        Ok(res)
    }

    /// `x_i · x^e` as a combination of `x^{e'} γ`.
    fn mul_x(&mut self, i: usize, m: usize) -> Result<FullTerms> {
        if let Some(v) = self.memo.get(&(i, m)) {
            return Ok(v.clone());
        }
        self.tick()?;
        let alg = self.alg;
        let d = &alg.datum;
        let group = d.group();
        let level = &alg.level;
        let mut e = alg.decode(m);
        let first = e.iter().position(|&k| k > 0);
        let res: FullTerms = match first {
            Some(j) if j < i => {
                e[j] -= 1;
                let rest = alg.encode(&e);
                let mut out: FullTerms = Vec::new();
                // χ_j(g_i) x_j (x_i x^{e⁻})
                let inner = self.mul_x(i, rest)?;
                let q = d.char_value(d.chi(j), d.g(i));
                for (t, c) in self.left_mul(j, &inner)?.into_iter().map(|(a, b, c)| ((a, b), c)) {
                    out.push((t.0, t.1, &q * &c));
                }
                // α_ij (g_i g_j − 1) x^{e⁻}
                let a = d.alpha(i, j);
                if !a.is_zero() {
                    let gg = group.add(d.g(i), d.g(j));
                    let k = group.char_eval(&alg.mono_chars[rest], &gg);
                    out.push((rest, group.index_of(&gg), a * &CycNum::zeta_pow(level, k as i64)));
                    out.push((rest, 0, -a));
                }
                merge(out)
            }
            _ => {
                // x_i lands in place: every nonzero exponent sits at index >= i
                e[i] += 1;
                if e[i] < alg.radices[i] {
                    vec![(alg.encode(&e), 0, CycNum::one(level))]
                } else {
                    e[i] = 0;
                    let rest = alg.encode(&e);
                    let a = d.alpha(i, i);
                    if a.is_zero() {
                        Vec::new()
                    } else {
                        // x_i^{r_i} = α_ii (g_i^{r_i} − 1)
                        let gr = group.scale(d.g(i), d.r(i));
                        let k = group.char_eval(&alg.mono_chars[rest], &gr);
                        merge(vec![(rest, group.index_of(&gr), a * &CycNum::zeta_pow(level, k as i64)), (rest, 0, -a)])
                    }
                }
            }
        };
        self.memo.insert((i, m), res.clone());
        Ok(res)
    }
}

fn merge(terms: FullTerms) -> FullTerms {
    let mut map: HashMap<(usize, usize), CycNum> = HashMap::new();
    for (m, g, c) in terms {
        match map.get_mut(&(m, g)) {
            Some(old) => *old = &*old + &c,
            None => {
                map.insert((m, g), c);
            }
        }
    }
    let mut out: FullTerms = map.into_iter().filter(|(_, v)| !v.is_zero()).map(|((m, g), v)| (m, g, v)).collect();
    out.sort_by_key(|(m, g, _)| (*m, *g));
    out
}
