//! Checking the defining relations of `A(ξ)` on a matrix module.

use crate::groups::{GroupElement, SubgroupCharacter};
use crate::lifting::LiftingDatum;
use crate::linalg::{
    identity, is_zero_matrix, mat_mul, mat_pow, mat_scale, mat_sub, max_magnitude, Field, Matrix, MatrixRep,
};

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub pass: bool,
    /// Largest entry of any relation's defect.
    pub max_residual: f64,
    /// Names of the relations that failed.
    pub failures: Vec<String>,
}

struct Checker<'a, F: Field> {
    f: &'a F,
    max_residual: f64,
    failures: Vec<String>,
}

impl<F: Field> Checker<'_, F> {
    fn expect_zero(&mut self, name: impl FnOnce() -> String, m: &Matrix<F::Elem>) {
        let res = max_magnitude(self.f, m);
        if !is_zero_matrix(self.f, m) {
            self.failures.push(name());
            self.max_residual = self.max_residual.max(res);
        } else if res.is_finite() {
            self.max_residual = self.max_residual.max(res);
        }
    }
}

/// Matrix of a group element, as a product of powers of the `h_u`.
pub fn group_matrix<F: Field>(f: &F, rep: &MatrixRep<F::Elem>, g: &GroupElement) -> Matrix<F::Elem> {
    let mut acc = identity(f, rep.dim());
    for (u, &e) in g.exponents().iter().enumerate() {
        if e > 0 {
            acc = mat_mul(f, &acc, &mat_pow(f, &rep.hs[u], e));
        }
    }
    acc
}

/// Check every defining relation of `A(ξ)` on `rep`: the group relations,
/// `λ = ξ(λ)` on generators of `Λ`, `h x_i = χ_i(h) x_i h`, the mixed
/// relations `x_i x_j − χ_j(g_i) x_j x_i = α_ij(g_i g_j − 1)` and the power
/// relations `x_i^{r_i} = α_ii(g_i^{r_i} − 1)`.
pub fn verify_relations<F: Field>(
    f: &F,
    rep: &MatrixRep<F::Elem>,
    d: &LiftingDatum,
    xi: &SubgroupCharacter,
) -> RelationReport {
    let group = d.group();
    let n = rep.dim();
    let mut ck = Checker { f, max_residual: 0.0, failures: Vec::new() };
    let shape_ok = rep.xs.len() == d.theta()
        && rep.hs.len() == group.rank()
        && rep.generators().all(|m| m.rows() == n && m.cols() == n);
    if !shape_ok {
        return RelationReport { pass: false, max_residual: f64::INFINITY, failures: vec!["matrix shapes".into()] };
    }
    let id = identity(f, n);
    let scalar = |c: &crate::cyclotomic::CycNum| mat_scale(f, &f.from_cyc(c), &id);

    for u in 0..group.rank() {
        let a = group.invariant_factors()[u];
        ck.expect_zero(|| format!("h{}^{} = 1", u + 1, a), &mat_sub(f, &mat_pow(f, &rep.hs[u], a), &id));
        for v in u + 1..group.rank() {
            let c = mat_sub(f, &mat_mul(f, &rep.hs[u], &rep.hs[v]), &mat_mul(f, &rep.hs[v], &rep.hs[u]));
            ck.expect_zero(|| format!("h{} h{} = h{} h{}", u + 1, v + 1, v + 1, u + 1), &c);
        }
    }
    for l in d.lambda().generators(group) {
        let val = d.xi_value(xi, &l).expect("generator lies in the subgroup");
        let c = mat_sub(f, &group_matrix(f, rep, &l), &scalar(&val));
        ck.expect_zero(|| format!("{l} = xi({l})"), &c);
    }
    for i in 0..d.theta() {
        for u in 0..group.rank() {
            let hu = group.generator(u);
            let ch = d.char_value(d.chi(i), &hu);
            let lhs = mat_mul(f, &rep.hs[u], &rep.xs[i]);
            let rhs = mat_scale(f, &f.from_cyc(&ch), &mat_mul(f, &rep.xs[i], &rep.hs[u]));
            ck.expect_zero(
                || format!("h{} x{} = chi{}(h{}) x{} h{}", u + 1, i + 1, i + 1, u + 1, i + 1, u + 1),
                &mat_sub(f, &lhs, &rhs),
            );
        }
    }
    for i in 0..d.theta() {
        for j in 0..d.theta() {
            if i == j {
                continue;
            }
            let q = d.char_value(d.chi(j), d.g(i));
            let lhs = mat_sub(
                f,
                &mat_mul(f, &rep.xs[i], &rep.xs[j]),
                &mat_scale(f, &f.from_cyc(&q), &mat_mul(f, &rep.xs[j], &rep.xs[i])),
            );
            let gg = group_matrix(f, rep, &group.add(d.g(i), d.g(j)));
            let rhs = mat_scale(f, &f.from_cyc(d.alpha(i, j)), &mat_sub(f, &gg, &id));
            ck.expect_zero(|| format!("mixed relation x{} x{}", i + 1, j + 1), &mat_sub(f, &lhs, &rhs));
        }
    }
    for i in 0..d.theta() {
        let lhs = mat_pow(f, &rep.xs[i], d.r(i));
        let gr = group_matrix(f, rep, &group.scale(d.g(i), d.r(i)));
        let rhs = mat_scale(f, &f.from_cyc(d.alpha(i, i)), &mat_sub(f, &gr, &id));
        ck.expect_zero(|| format!("x{}^{} power relation", i + 1, d.r(i)), &mat_sub(f, &lhs, &rhs));
    }
    RelationReport { pass: ck.failures.is_empty(), max_residual: ck.max_residual, failures: ck.failures }
}
