//! Finite abelian groups given by invariant factors, their characters, the
//! kernel subgroup of a family of characters, and character fibers.
//!
//! A group `Z/a_1 ⊕ … ⊕ Z/a_t` has elements and characters stored as exponent
//! vectors. A character `χ = (c_1, …, c_t)` sends the generator `h_u` to
//! `ζ_N^{(N/a_u)·c_u}` where `N = lcm(a_u)` is the exponent of the group, so
//! every character value is reported as an exponent of `ζ_N` modulo `N`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Upper bound on `|Γ|`; subgroup and fiber computations enumerate the group.
pub const MAX_GROUP_ORDER: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    exponent: u64,
    order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(Vec<u64>);

/// An explicit subgroup: its members in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<GroupElement>,
    index: BTreeMap<GroupElement, usize>,
}

/// A character of a subgroup, given by its values (exponents of `ζ_N`) on the
/// subgroup's member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupCharacter {
    values: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("at least one invariant factor is required".into()));
        }
        if let Some(bad) = factors.iter().find(|&&a| a == 0) {
            return Err(Error::InvalidGroup(format!("invariant factor {bad} must be >= 1")));
        }
        let mut order: u64 = 1;
        for &a in &factors {
            order = order
                .checked_mul(a)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or_else(|| Error::InvalidGroup(format!("group order exceeds {MAX_GROUP_ORDER}")))?;
        }
        let exponent = factors.iter().fold(1u64, |acc, &a| acc.lcm(&a));
        Ok(FinAbGroup { factors, exponent, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `N = lcm(a_1, …, a_t)`; all character values are powers of `ζ_N`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        self.reduce(exps).map(GroupElement)
    }

    pub fn character(&self, exps: &[i64]) -> Result<Character> {
        self.reduce(exps).map(Character)
    }

    fn reduce(&self, exps: &[i64]) -> Result<Vec<u64>> {
        if exps.len() != self.factors.len() {
            return Err(Error::InvalidGroup(format!(
                "exponent vector {:?} has length {}, group has {} cyclic factors",
                exps,
                exps.len(),
                self.factors.len()
            )));
        }
        Ok(exps.iter().zip(&self.factors).map(|(&e, &a)| e.rem_euclid(a as i64) as u64).collect())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    /// The generator `h_u` of the `u`-th cyclic factor.
    pub fn generator(&self, u: usize) -> GroupElement {
        let mut e = vec![0; self.rank()];
        e[u] = 1 % self.factors[u];
        GroupElement(e)
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(g.0.iter().zip(&h.0).zip(&self.factors).map(|((&a, &b), &m)| (a + b) % m).collect())
    }

    pub fn neg(&self, g: &GroupElement) -> GroupElement {
        GroupElement(g.0.iter().zip(&self.factors).map(|(&a, &m)| (m - a) % m).collect())
    }

    pub fn scale(&self, g: &GroupElement, n: u64) -> GroupElement {
        GroupElement(g.0.iter().zip(&self.factors).map(|(&a, &m)| (a * (n % m)) % m).collect())
    }

    /// Least `n >= 1` with `n·g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter().zip(&self.factors).map(|(&e, &a)| a / e.gcd(&a)).fold(1, |acc, o| acc.lcm(&o))
    }

    /// Exponent `k` with `χ(g) = ζ_N^k`.
    pub fn char_eval(&self, chi: &Character, g: &GroupElement) -> u64 {
        let n = self.exponent;
        let mut k: u128 = 0;
        for ((&c, &e), &a) in chi.0.iter().zip(&g.0).zip(&self.factors) {
            k += ((n / a) as u128) * (c as u128) * (e as u128);
        }
        (k % n as u128) as u64
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(a.0.iter().zip(&b.0).zip(&self.factors).map(|((&x, &y), &m)| (x + y) % m).collect())
    }

    pub fn char_inv(&self, a: &Character) -> Character {
        Character(a.0.iter().zip(&self.factors).map(|(&x, &m)| (m - x) % m).collect())
    }

    pub fn char_pow(&self, a: &Character, n: i64) -> Character {
        Character(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| ((x as i128 * n as i128).rem_euclid(m as i128)) as u64)
                .collect(),
        )
    }

    /// Order of a character in `Γ̂`.
    pub fn character_order(&self, chi: &Character) -> u64 {
        self.element_order(&GroupElement(chi.0.clone()))
    }

    pub fn is_trivial_character(&self, chi: &Character) -> bool {
        chi.0.iter().all(|&c| c == 0)
    }

    /// Position of `g` in lexicographic enumeration order.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter().zip(&self.factors).fold(0usize, |acc, (&e, &a)| acc * a as usize + e as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut e = vec![0; self.rank()];
        for u in (0..self.rank()).rev() {
            let a = self.factors[u] as usize;
            e[u] = (idx % a) as u64;
            idx /= a;
        }
        GroupElement(e)
    }

    /// All elements in lexicographic order of their exponent vectors.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    /// All characters in lexicographic order of their exponent vectors.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(|g| Character(g.0))
    }

    /// `Λ = {g ∈ Γ : χ(g) = 1 for every χ in chars}`, by enumeration.
    pub fn compute_lambda(&self, chars: &[Character]) -> Subgroup {
        let members = self.elements().filter(|g| chars.iter().all(|chi| self.char_eval(chi, g) == 0)).collect();
        Subgroup::from_sorted(members)
    }

    /// Characters of `Γ` whose restriction to `lambda` equals `xi`.
    pub fn fiber(&self, lambda: &Subgroup, xi: &SubgroupCharacter) -> Result<Vec<Character>> {
        self.check_subgroup_character(lambda, xi)?;
        Ok(self.characters().filter(|eta| self.restrict(eta, lambda) == *xi).collect())
    }

    pub fn restrict(&self, eta: &Character, lambda: &Subgroup) -> SubgroupCharacter {
        SubgroupCharacter { values: lambda.members.iter().map(|g| self.char_eval(eta, g)).collect() }
    }

    fn check_subgroup_character(&self, lambda: &Subgroup, xi: &SubgroupCharacter) -> Result<()> {
        let n = self.exponent;
        if xi.values.len() != lambda.len() {
            return Err(Error::InvalidCharacter(format!(
                "{} values given for a subgroup of order {}",
                xi.values.len(),
                lambda.len()
            )));
        }
        for (i, a) in lambda.members.iter().enumerate() {
            for (j, b) in lambda.members.iter().enumerate() {
                let k = lambda
                    .position(&self.add(a, b))
                    .ok_or_else(|| Error::InvalidCharacter("member list is not closed under addition".into()))?;
                if (xi.values[i] + xi.values[j]) % n != xi.values[k] % n {
                    return Err(Error::InvalidCharacter(format!(
                        "values are not multiplicative at {:?} + {:?}",
                        a.0, b.0
                    )));
                }
            }
        }
        Ok(())
    }

    /// The dual group of `lambda`, each character paired with its canonical
    /// preimage (lexicographically smallest `η ∈ Γ̂` restricting to it),
    /// ordered by that preimage.
    pub fn subgroup_dual(&self, lambda: &Subgroup) -> Vec<(SubgroupCharacter, Character)> {
        let gens = lambda.generators(self);
        let mut seen: BTreeMap<Vec<u64>, Character> = BTreeMap::new();
        for eta in self.characters() {
            let key: Vec<u64> = gens.iter().map(|g| self.char_eval(&eta, g)).collect();
            seen.entry(key).or_insert(eta);
            if seen.len() == lambda.len() {
                break;
            }
        }
        let mut out: Vec<_> = seen.into_values().map(|eta| (self.restrict(&eta, lambda), eta)).collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Character {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Subgroup {
    fn from_sorted(members: Vec<GroupElement>) -> Self {
        let index = members.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Subgroup { members, index }
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn is_closed(&self, group: &FinAbGroup) -> bool {
        self.contains(&group.identity())
            && self.members.iter().all(|a| self.members.iter().all(|b| self.contains(&group.add(a, b))))
    }

    /// A small generating set, chosen greedily in member order.
    pub fn generators(&self, group: &FinAbGroup) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        let mut span = vec![group.identity()];
        let mut in_span: std::collections::BTreeSet<GroupElement> = span.iter().cloned().collect();
        for g in &self.members {
            if in_span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            // close the span under the new generator
            let mut frontier = span.clone();
            loop {
                let mut next = Vec::new();
                for a in &frontier {
                    let b = group.add(a, g);
                    if in_span.insert(b.clone()) {
                        next.push(b);
                    }
                }
                if next.is_empty() {
                    break;
                }
                span.extend(next.iter().cloned());
                frontier = next;
            }
        }
        gens
    }
}

impl SubgroupCharacter {
    pub fn new(values: Vec<u64>) -> Self {
        SubgroupCharacter { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value (exponent of `ζ_N`) at a member of the subgroup.
    pub fn eval(&self, lambda: &Subgroup, g: &GroupElement) -> Option<u64> {
        lambda.position(g).map(|i| self.values[i])
    }

    pub fn mul(&self, other: &Self, n: u64) -> Self {
        SubgroupCharacter { values: self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % n).collect() }
    }

    pub fn inv(&self, n: u64) -> Self {
        SubgroupCharacter { values: self.values.iter().map(|a| (n - a % n) % n).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8() -> FinAbGroup {
        FinAbGroup::cyclic(8).unwrap()
    }

    #[test]
    fn element_orders() {
        let g = z8();
        assert_eq!(g.element_order(&g.element(&[1]).unwrap()), 8);
        assert_eq!(g.element_order(&g.element(&[4]).unwrap()), 2);
        let h = FinAbGroup::new(vec![2, 4]).unwrap();
        assert_eq!(h.element_order(&h.element(&[1, 2]).unwrap()), 2);
        assert_eq!(h.element_order(&h.identity()), 1);
    }

    #[test]
    fn character_values() {
        let g = z8();
        let h3 = g.element(&[3]).unwrap();
        assert_eq!(g.char_eval(&g.character(&[1]).unwrap(), &h3), 3);
        assert_eq!(g.char_eval(&g.character(&[2]).unwrap(), &g.element(&[4]).unwrap()), 0);
        for x in g.elements() {
            assert_eq!(g.char_eval(&g.trivial_character(), &x), 0);
        }
        // mixed factors: chi(h_u) = zeta_N^{(N/a_u) c_u}
        let h = FinAbGroup::new(vec![2, 4]).unwrap();
        let chi = h.character(&[1, 1]).unwrap();
        assert_eq!(h.char_eval(&chi, &h.element(&[1, 0]).unwrap()), 2);
        assert_eq!(h.char_eval(&chi, &h.element(&[0, 1]).unwrap()), 1);
    }

    #[test]
    fn lambda_examples() {
        let g = z8();
        let chis = [g.character(&[2]).unwrap(), g.character(&[6]).unwrap()];
        let lam = g.compute_lambda(&chis);
        let got: Vec<_> = lam.members().iter().map(|m| m.exponents()[0]).collect();
        assert_eq!(got, vec![0, 4]);
        assert!(lam.is_closed(&g));

        let z4 = FinAbGroup::cyclic(4).unwrap();
        let lam = z4.compute_lambda(&[z4.character(&[1]).unwrap(), z4.character(&[3]).unwrap()]);
        assert_eq!(lam.len(), 1);

        let lam = g.compute_lambda(&[g.trivial_character()]);
        assert_eq!(lam.len(), 8);
    }

    #[test]
    fn fiber_examples() {
        let g = z8();
        let lam = g.compute_lambda(&[g.character(&[2]).unwrap(), g.character(&[6]).unwrap()]);
        // xi(h^4) = -1 = zeta_8^4
        let minus = SubgroupCharacter::new(vec![0, 4]);
        let f: Vec<_> = g.fiber(&lam, &minus).unwrap().iter().map(|c| c.exponents()[0]).collect();
        assert_eq!(f, vec![1, 3, 5, 7]);
        let plus = SubgroupCharacter::new(vec![0, 0]);
        let f: Vec<_> = g.fiber(&lam, &plus).unwrap().iter().map(|c| c.exponents()[0]).collect();
        assert_eq!(f, vec![0, 2, 4, 6]);

        let bad = SubgroupCharacter::new(vec![0, 2]);
        assert!(matches!(g.fiber(&lam, &bad), Err(Error::InvalidCharacter(_))));

        let z4 = FinAbGroup::cyclic(4).unwrap();
        let triv = z4.compute_lambda(&[z4.character(&[1]).unwrap()]);
        let all = z4.fiber(&triv, &SubgroupCharacter::new(vec![0])).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn dual_of_lambda_partitions_characters() {
        let g = FinAbGroup::new(vec![2, 4]).unwrap();
        let lam = g.compute_lambda(&[g.character(&[0, 2]).unwrap()]);
        let dual = g.subgroup_dual(&lam);
        assert_eq!(dual.len(), lam.len());
        let total: usize = dual.iter().map(|(xi, _)| g.fiber(&lam, xi).unwrap().len()).sum();
        assert_eq!(total as u64, g.order());
        for (xi, eta) in &dual {
            let fib = g.fiber(&lam, xi).unwrap();
            assert_eq!(fib.len() * lam.len(), g.order() as usize);
            assert_eq!(fib.iter().min().unwrap(), eta);
        }
    }

    #[test]
    fn rejects_oversized_group() {
        assert!(FinAbGroup::new(vec![1000, 1000]).is_err());
        assert!(FinAbGroup::new(vec![]).is_err());
        assert!(FinAbGroup::new(vec![0]).is_err());
    }
}
