//! The monomial groups `G(m, r, n)`, their reflections, and their action on
//! polynomials.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::linalg;
use crate::poly::{Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group parameters m={m}, r={r}, n={n}: need m, n >= 1 and r | m")]
    InvalidParameters { m: u32, r: u32, n: usize },
    #[error("field root of unity has order {field}, not a multiple of m = {m}")]
    RootOrder { field: u32, m: u32 },
}

/// `g` acts on linear forms by `x_j -> xi^{exps[j]} x_{perm[j]}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub perm: Vec<usize>,
    pub exps: Vec<u32>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            perm: (0..n).collect(),
            exps: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// `self * other` (apply `other` first); exponents reduced mod `m`.
    pub fn compose(&self, other: &GroupElement, m: u32) -> GroupElement {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for j in 0..n {
            let s = other.perm[j];
            perm[j] = self.perm[s];
            exps[j] = (other.exps[j] + self.exps[s]) % m;
        }
        GroupElement { perm, exps }
    }

    pub fn inverse(&self, m: u32) -> GroupElement {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for j in 0..n {
            let t = self.perm[j];
            perm[t] = j;
            exps[t] = (m - self.exps[j] % m) % m;
        }
        GroupElement { perm, exps }
    }

    pub fn perm_sign(&self) -> i64 {
        perm_sign(&self.perm)
    }

    pub fn exp_sum(&self) -> u64 {
        self.exps.iter().map(|&a| a as u64).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.exps.iter().all(|&a| a == 0)
    }

    /// Image under the `q`-th power map into `G(m/q, m/q, n)`-type exponents.
    pub fn power_image(&self, modulus: u32) -> GroupElement {
        GroupElement {
            perm: self.perm.clone(),
            exps: self.exps.iter().map(|a| a % modulus).collect(),
        }
    }
}

pub fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Conjugacy-class label of a reflection.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    /// All `s_ij^k`.
    S,
    /// `s_ij^k` with `k` even (`n = 2`, `r` even).
    SEven,
    /// `s_ij^k` with `k` odd (`n = 2`, `r` even).
    SOdd,
    /// `t_i^k`, `1 <= k < q`.
    T(u32),
}

impl ClassLabel {
    pub fn name(&self) -> String {
        match self {
            ClassLabel::S => "c0".into(),
            ClassLabel::SEven => "c0+".into(),
            ClassLabel::SOdd => "c0-".into(),
            ClassLabel::T(k) => format!("c{k}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReflectionKind {
    /// `s_ij^k`, `i < j`: swaps `x_i, x_j` with `x_i -> xi^k x_j`.
    S { i: usize, j: usize, k: u32 },
    /// `t_i^k`: `x_i -> xi^{rk} x_i`.
    T { i: usize, k: u32 },
}

#[derive(Clone, Debug)]
pub struct Reflection {
    pub element: GroupElement,
    pub kind: ReflectionKind,
    pub class: ClassLabel,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub m: u32,
    pub r: u32,
    pub n: usize,
    /// The group's `xi` is the field root raised to this power.
    pub xi_step: u32,
}

impl GroupSpec {
    pub fn new(m: u32, r: u32, n: usize) -> Result<Self, GroupError> {
        if m == 0 || r == 0 || n == 0 || !m.is_multiple_of(r) {
            return Err(GroupError::InvalidParameters { m, r, n });
        }
        Ok(GroupSpec { m, r, n, xi_step: 1 })
    }

    /// Same group, with `xi` taken from a field whose root has order `field_m`.
    pub fn in_field(self, field_m: u32) -> Result<Self, GroupError> {
        if !field_m.is_multiple_of(self.m) {
            return Err(GroupError::RootOrder {
                field: field_m,
                m: self.m,
            });
        }
        Ok(GroupSpec {
            xi_step: field_m / self.m,
            ..self
        })
    }

    pub fn q(&self) -> u32 {
        self.m / self.r
    }

    pub fn order(&self) -> u64 {
        let fact: u64 = (1..=self.n as u64).product();
        (self.m as u64).pow(self.n as u32) * fact / self.r as u64
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.n() == self.n && g.exps.iter().all(|&a| a < self.m) && g.exp_sum().is_multiple_of(self.r as u64)
    }

    pub fn xi<F: Field>(&self, f: &F, k: i64) -> F::Elem {
        f.xi_pow(k * self.xi_step as i64)
    }

    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.compose(b, self.m)
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        g.inverse(self.m)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        let (m, r, n) = (self.m, self.r, self.n);
        let mut exps_list = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            let s: u64 = cur[..n - 1].iter().map(|&a| a as u64).sum();
            for last in 0..m {
                if (s + last as u64).is_multiple_of(r as u64) {
                    let mut e = cur.clone();
                    e[n - 1] = last;
                    exps_list.push(e);
                }
            }
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] + 1 < m) else {
                break;
            };
            cur[i] += 1;
            for c in cur[i + 1..n - 1].iter_mut() {
                *c = 0;
            }
        }
        let mut out = Vec::with_capacity(self.order() as usize);
        for p in all_permutations(n) {
            for e in &exps_list {
                out.push(GroupElement {
                    perm: p.clone(),
                    exps: e.clone(),
                });
            }
        }
        out
    }

    pub fn s_element(&self, i: usize, j: usize, k: u32) -> GroupElement {
        let mut g = GroupElement::identity(self.n);
        g.perm.swap(i, j);
        let k = k % self.m;
        g.exps[i] = k;
        g.exps[j] = (self.m - k) % self.m;
        g
    }

    pub fn t_element(&self, i: usize, k: u32) -> GroupElement {
        let mut g = GroupElement::identity(self.n);
        g.exps[i] = (self.r * k) % self.m;
        g
    }

    /// Generators: adjacent transpositions, `s_12^1`, and `t_1^1` when `q > 1`.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        for i in 0..self.n.saturating_sub(1) {
            gens.push(self.s_element(i, i + 1, 0));
        }
        if self.n >= 2 && self.m > 1 {
            gens.push(self.s_element(0, 1, 1));
        }
        if self.q() > 1 {
            gens.push(self.t_element(0, 1));
        }
        gens
    }

    pub fn split_s_class(&self) -> bool {
        self.n == 2 && self.r.is_multiple_of(2)
    }

    /// Labels of the reflection classes, in a fixed order.
    pub fn class_labels(&self) -> Vec<ClassLabel> {
        let mut out = Vec::new();
        if self.n >= 2 {
            if self.split_s_class() {
                out.push(ClassLabel::SEven);
                out.push(ClassLabel::SOdd);
            } else {
                out.push(ClassLabel::S);
            }
        }
        for k in 1..self.q() {
            out.push(ClassLabel::T(k));
        }
        out
    }

    pub fn reflections(&self) -> Vec<Reflection> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in 0..self.m {
                    let class = if self.split_s_class() {
                        if k % 2 == 0 {
                            ClassLabel::SEven
                        } else {
                            ClassLabel::SOdd
                        }
                    } else {
                        ClassLabel::S
                    };
                    out.push(Reflection {
                        element: self.s_element(i, j, k),
                        kind: ReflectionKind::S { i, j, k },
                        class,
                    });
                }
            }
        }
        for i in 0..self.n {
            for k in 1..self.q() {
                out.push(Reflection {
                    element: self.t_element(i, k),
                    kind: ReflectionKind::T { i, k },
                    class: ClassLabel::T(k),
                });
            }
        }
        out
    }

    /// Matrix of `g` on `h*` in the basis `x_1..x_n`; column `j` is `g x_j`.
    pub fn matrix<F: Field>(&self, f: &F, g: &GroupElement) -> Vec<Vec<F::Elem>> {
        let mut a = vec![vec![f.zero(); self.n]; self.n];
        for j in 0..self.n {
            a[g.perm[j]][j] = self.xi(f, g.exps[j] as i64);
        }
        a
    }

    pub fn act_monomial<F: Field>(&self, f: &F, g: &GroupElement, m: &Monomial) -> (Monomial, F::Elem) {
        let mut out = Monomial::one(self.n);
        let mut e: u64 = 0;
        for (j, &d) in m.0.iter().enumerate() {
            out.0[g.perm[j]] += d;
            e += g.exps[j] as u64 * d as u64;
        }
        (out, self.xi(f, (e % self.m as u64) as i64))
    }

    /// `g . f`: substitute `x_j -> xi^{a_j} x_{pi(j)}`.
    pub fn act_poly<F: Field>(&self, f: &F, g: &GroupElement, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut r = Poly::zero(self.n);
        for (m, c) in p.terms() {
            let (k, z) = self.act_monomial(f, g, m);
            r.add_term(f, k, f.mul(c, &z));
        }
        r
    }

    /// All elements `s` with `rank(1 - s) = 1`, by exhaustive scan.
    pub fn brute_force_reflections<F: Field>(&self, f: &F) -> Vec<GroupElement> {
        self.elements()
            .into_iter()
            .filter(|g| {
                let mut a = self.matrix(f, g);
                for (i, row) in a.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        *x = f.neg(x);
                        if i == j {
                            *x = f.add(x, &f.one());
                        }
                    }
                }
                linalg::rank(f, &a, self.n) == 1
            })
            .collect()
    }

    /// Conjugacy classes of the given elements, by brute-force conjugation.
    pub fn conjugacy_classes(&self, elems: &[GroupElement]) -> Vec<Vec<GroupElement>> {
        let all = self.elements();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut classes = Vec::new();
        for s in elems {
            if seen.contains(s) {
                continue;
            }
            let mut class: Vec<GroupElement> = Vec::new();
            let mut members = HashSet::new();
            for g in &all {
                let c = self.compose(&self.compose(g, s), &self.inverse(g));
                if members.insert(c.clone()) {
                    class.push(c);
                }
            }
            seen.extend(members);
            classes.push(class);
        }
        classes
    }
}

impl Reflection {
    /// Coefficients of the root `alpha_s` in `x_1..x_n`.
    pub fn alpha<F: Field>(&self, f: &F, g: &GroupSpec) -> Vec<F::Elem> {
        let mut a = vec![f.zero(); g.n];
        match self.kind {
            ReflectionKind::S { i, j, k } => {
                a[i] = f.one();
                a[j] = f.neg(&g.xi(f, k as i64));
            }
            ReflectionKind::T { i, .. } => a[i] = f.one(),
        }
        a
    }

    /// Coefficients of the coroot `alpha_s^vee` in `y_1..y_n`, normalized so
    /// that `(1 - s) x = <alpha^vee, x> alpha`.
    pub fn coroot<F: Field>(&self, f: &F, g: &GroupSpec) -> Vec<F::Elem> {
        let mut a = vec![f.zero(); g.n];
        match self.kind {
            ReflectionKind::S { i, j, k } => {
                a[i] = f.one();
                a[j] = f.neg(&g.xi(f, -(k as i64)));
            }
            ReflectionKind::T { i, k } => {
                a[i] = f.sub(&f.one(), &g.xi(f, (g.r * k) as i64));
            }
        }
        a
    }

    /// Index of the variable with coefficient one in `alpha`.
    pub fn lead_variable(&self) -> usize {
        match self.kind {
            ReflectionKind::S { i, .. } | ReflectionKind::T { i, .. } => i,
        }
    }

    pub fn alpha_poly<F: Field>(&self, f: &F, g: &GroupSpec) -> Poly<F::Elem> {
        let mut p = Poly::zero(g.n);
        for (j, c) in self.alpha(f, g).into_iter().enumerate() {
            p.add_term(f, Monomial::var(j, g.n), c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;

    fn field_for(m: u32) -> GaloisField {
        GaloisField::minimal(13, m).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let g = GroupSpec::new(1, 1, 3).unwrap();
        let r = g.reflections();
        assert_eq!(r.len(), 3);
        assert_eq!(g.class_labels(), vec![ClassLabel::S]);
        let g = GroupSpec::new(3, 1, 2).unwrap();
        assert_eq!(g.reflections().len(), 7);
        let g = GroupSpec::new(2, 2, 2).unwrap();
        let r = g.reflections();
        assert_eq!(r.len(), 2);
        assert_ne!(r[0].class, r[1].class);
        assert!(GroupSpec::new(4, 3, 2).is_err());
    }

    #[test]
    fn brute_force_agrees_with_closed_form() {
        for m in 1..=4u32 {
            for r in (1..=m).filter(|r| m % r == 0) {
                for n in 1..=3usize {
                    let g = GroupSpec::new(m, r, n).unwrap();
                    let f = field_for(m.max(1));
                    let g = g.in_field(f.root_order()).unwrap();
                    assert_eq!(g.elements().len() as u64, g.order());
                    let brute: HashSet<_> = g.brute_force_reflections(&f).into_iter().collect();
                    let listed: Vec<_> = g.reflections();
                    let closed: HashSet<_> = listed.iter().map(|s| s.element.clone()).collect();
                    assert_eq!(brute, closed, "G({m},{r},{n})");
                    let q = m / r;
                    let expected = if m == 1 && n >= 2 {
                        n * (n - 1) / 2
                    } else {
                        m as usize * n * (n - 1) / 2
                    } + n * (q as usize - 1);
                    assert_eq!(listed.len(), expected);
                    // same label iff conjugate
                    let classes = g.conjugacy_classes(&brute.iter().cloned().collect::<Vec<_>>());
                    for s in &listed {
                        for t in &listed {
                            let conj = classes.iter().any(|c| c.contains(&s.element) && c.contains(&t.element));
                            assert_eq!(conj, s.class == t.class, "G({m},{r},{n})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn root_coroot_identity() {
        for (m, r, n) in [(4, 1, 3), (3, 3, 3), (6, 2, 2), (5, 5, 2)] {
            let f = field_for(m);
            let g = GroupSpec::new(m, r, n).unwrap();
            for s in g.reflections() {
                let a = s.alpha(&f, &g);
                let c = s.coroot(&f, &g);
                let mat = g.matrix(&f, &s.element);
                for x in 0..n {
                    // (1 - s) x_x versus <alpha^vee, x_x> alpha
                    for row in 0..n {
                        let lhs = f.sub(&if row == x { f.one() } else { f.zero() }, &mat[row][x]);
                        let rhs = f.mul(&c[x], &a[row]);
                        assert_eq!(lhs, rhs);
                    }
                }
                let order = (0..).find(|&e: &u32| {
                    let mut h = GroupElement::identity(n);
                    for _ in 0..e + 1 {
                        h = g.compose(&h, &s.element);
                    }
                    h.is_identity()
                });
                assert!(order.is_some());
            }
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let f = field_for(4);
        let g = GroupSpec::new(4, 2, 3).unwrap();
        let p = Poly::from_int_terms(&f, 3, &[(&[2, 1, 0], 1), (&[0, 1, 3], 2), (&[1, 1, 1], -1)]);
        let els = g.elements();
        for (a, b) in els.iter().step_by(7).zip(els.iter().skip(3).step_by(11)) {
            let ab = g.compose(a, b);
            assert_eq!(g.act_poly(&f, &ab, &p), g.act_poly(&f, a, &g.act_poly(&f, b, &p)));
            let inv = g.inverse(a);
            assert!(g.compose(a, &inv).is_identity());
        }
    }

    #[test]
    fn act_examples() {
        let f = field_for(4);
        let g = GroupSpec::new(4, 1, 2).unwrap();
        let d = Poly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(g.act_poly(&f, &GroupElement::identity(2), &d), d);
        assert_eq!(g.act_poly(&f, &g.s_element(0, 1, 0), &d), d.neg(&f));
        let x4 = Poly::monomial(&f, &[4, 0]);
        assert_eq!(g.act_poly(&f, &g.t_element(0, 1), &x4), x4);
    }
}
