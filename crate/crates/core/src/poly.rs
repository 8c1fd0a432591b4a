//! Sparse multivariate polynomials and vectors in `Sym(h*) ⊗ τ`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use crate::field::Field;

pub type Exponents = SmallVec<[u16; 6]>;

/// Exponent vector ordered graded-lexicographically with `x1 > x2 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable names: `x, y, z, w` up to four variables, `x1, x2, ...` beyond.
pub fn variable_name(i: usize, nvars: usize) -> String {
    if nvars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub fn format_monomial(m: &Monomial) -> String {
    let names: Vec<String> = (0..m.nvars()).map(|i| variable_name(i, m.nvars())).collect();
    format_monomial_named(m, &names)
}

pub fn format_monomial_named(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> =
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Polynomial with coefficients of type `E`; arithmetic takes the field
/// context explicitly. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E, nvars: usize) -> Self {
        Self::term(f, Monomial::one(nvars), c)
    }

    pub fn one<F: Field<Elem = E>>(f: &F, nvars: usize) -> Self {
        Self::constant(f, f.one(), nvars)
    }

    pub fn term<F: Field<Elem = E>>(f: &F, m: Monomial, c: E) -> Self {
        let mut p = Poly::zero(m.nvars());
        if !f.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var<F: Field<Elem = E>>(f: &F, i: usize, nvars: usize) -> Self {
        Self::term(f, Monomial::var(i, nvars), f.one())
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, exps: &[u16]) -> Self {
        Self::term(f, Monomial::from_slice(exps), f.one())
    }

    /// Builds a polynomial from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms<F: Field<Elem = E>>(f: &F, nvars: usize, terms: &[(&[u16], i64)]) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(f, Monomial::from_slice(e), f.from_i64(*c));
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, m: &Monomial) -> E {
        self.terms.get(m).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree if homogeneous (zero polynomial counts as homogeneous of any
    /// degree and returns `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, m: Monomial, c: E) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign<F: Field<Elem = E>>(&mut self, f: &F, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(f, m.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled<F: Field<Elem = E>>(&mut self, f: &F, c: &E, other: &Self) {
        if f.is_zero(c) {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(f, m.clone(), f.mul(c, d));
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(f, other);
        r
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(f, &f.neg(&f.one()), other);
        r
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.scale(f, &f.neg(&f.one()))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), f.mul(c, d))).collect(),
        }
    }

    pub fn mul_monomial<F: Field<Elem = E>>(&self, f: &F, m: &Monomial, c: &E) -> Self {
        if f.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), f.mul(c, d))).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &other.terms {
            for (k, d) in &self.terms {
                r.add_term(f, k.mul(m), f.mul(c, d));
            }
        }
        r
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut r = Poly::one(f, self.nvars);
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }

    /// Substitution `x_j -> x_j^m`.
    pub fn power_substitute(&self, m: u16) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (Monomial(k.0.iter().map(|e| e * m).collect()), c.clone()))
                .collect(),
        }
    }

    /// Applies `x_j -> sum_k map[j][k] x_k` where `map[j]` is a linear form.
    pub fn linear_substitute<F: Field<Elem = E>>(&self, f: &F, images: &[Poly<E>]) -> Self {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(f, c.clone(), self.nvars);
            for (j, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(f, &images[j]);
                }
            }
            r.add_assign(f, &t);
        }
        r
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F, i: usize) -> Self {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k.0[i] -= 1;
            r.add_term(f, k, f.mul(c, &f.from_i64(e as i64)));
        }
        r
    }

    /// Exact division by a linear form whose coefficient on `x_lead` is one.
    /// Returns the quotient, or the nonzero remainder on failure.
    pub fn div_linear<F: Field<Elem = E>>(&self, f: &F, lead: usize, form: &Poly<E>) -> Result<Poly<E>, Poly<E>> {
        let lead_mono = Monomial::var(lead, self.nvars);
        debug_assert!(f.is_one(&form.coeff(f, &lead_mono)));
        let tail = {
            let mut t = form.clone();
            t.terms.remove(&lead_mono);
            t
        };
        let mut q = Poly::zero(self.nvars);
        let mut rem = self.clone();
        loop {
            // term with the largest x_lead exponent
            let pick = rem
                .terms
                .iter()
                .filter(|(m, _)| m.0[lead] > 0)
                .max_by_key(|(m, _)| m.0[lead])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = pick else { break };
            let mut qm = m.clone();
            qm.0[lead] -= 1;
            q.add_term(f, qm.clone(), c.clone());
            rem.terms.remove(&m);
            // rem -= c * qm * tail
            let neg_c = f.neg(&c);
            for (tm, tc) in &tail.terms {
                rem.add_term(f, qm.mul(tm), f.mul(&neg_c, tc));
            }
        }
        if rem.is_zero() {
            Ok(q)
        } else {
            Err(rem)
        }
    }

    /// Exact multivariate division; `None` if `divisor` does not divide `self`.
    pub fn exact_div<F: Field<Elem = E>>(&self, f: &F, divisor: &Poly<E>) -> Option<Poly<E>> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = f.inv(lc);
        let mut q = Poly::zero(self.nvars);
        let mut rem = self.clone();
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = f.mul(&c, &lc_inv);
            q.add_term(f, qm.clone(), qc.clone());
            let neg = f.neg(&qc);
            for (dm, dc) in &divisor.terms {
                rem.add_term(f, dm.mul(&qm), f.mul(&neg, dc));
            }
        }
        Some(q)
    }

    pub fn evaluate<F: Field<Elem = E>>(&self, f: &F, point: &[E]) -> E {
        let mut s = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &f.pow(&point[j], e as u64));
                }
            }
            s = f.add(&s, &t);
        }
        s
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<E2: Clone + PartialEq, G: Field<Elem = E2>>(&self, g: &G, map: impl Fn(&E) -> E2) -> Poly<E2> {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(g, m.clone(), map(c));
        }
        r
    }

    /// Human-readable form, leading term first.
    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        let names: Vec<String> = (0..self.nvars).map(|i| variable_name(i, self.nvars)).collect();
        self.format_named(f, &names)
    }

    pub fn format_named<F: Field<Elem = E>>(&self, f: &F, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = f.format_elem(c);
            let mono = format_monomial_named(m, names);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            let body = if mono == "1" {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// Element of `Sym(h*) ⊗ τ`: one polynomial per τ-basis vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VermaVector<E> {
    pub components: Vec<Poly<E>>,
}

impl<E: Clone + PartialEq> VermaVector<E> {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        VermaVector {
            components: vec![Poly::zero(nvars); dim],
        }
    }

    /// `f ⊗ e_j`.
    pub fn pure(f: Poly<E>, j: usize, dim: usize) -> Self {
        let n = f.nvars();
        let mut v = Self::zero(n, dim);
        v.components[j] = f;
        v
    }

    pub fn from_components(components: Vec<Poly<E>>) -> Self {
        VermaVector { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components.first().map_or(0, |p| p.nvars())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for p in &self.components {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_assign<F: Field<Elem = E>>(&mut self, f: &F, other: &Self) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_assign(f, b);
        }
    }

    pub fn add_scaled<F: Field<Elem = E>>(&mut self, f: &F, c: &E, other: &Self) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(f, c, b);
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(f, &f.neg(&f.one()), other);
        r
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        VermaVector {
            components: self.components.iter().map(|p| p.scale(f, c)).collect(),
        }
    }

    pub fn mul_poly<F: Field<Elem = E>>(&self, f: &F, g: &Poly<E>) -> Self {
        VermaVector {
            components: self.components.iter().map(|p| p.mul(f, g)).collect(),
        }
    }

    pub fn mul_monomial<F: Field<Elem = E>>(&self, f: &F, m: &Monomial) -> Self {
        let one = f.one();
        VermaVector {
            components: self.components.iter().map(|p| p.mul_monomial(f, m, &one)).collect(),
        }
    }

    pub fn power_substitute(&self, m: u16) -> Self {
        VermaVector {
            components: self.components.iter().map(|p| p.power_substitute(m)).collect(),
        }
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.dim() == 1 {
            return self.components[0].format(f);
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(j, p)| {
                if p.num_terms() == 1 {
                    format!("{}⊗e{}", p.format(f), j + 1)
                } else {
                    format!("({})⊗e{}", p.format(f), j + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// All monomials of one degree, in decreasing graded-lex order, with an index.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(Monomial::from_slice(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if degree == 0 {
                monomials.push(Monomial::one(0));
            }
        } else {
            rec(0, degree, &mut cur, &mut monomials);
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Coordinates of homogeneous vectors of one degree in `Sym(h*)_d ⊗ τ`.
/// Column `mono_index * dim + j` is `monomial ⊗ e_j`.
#[derive(Clone, Debug)]
pub struct SliceCoords {
    pub basis: MonomialBasis,
    pub dim: usize,
}

impl SliceCoords {
    pub fn new(nvars: usize, degree: u32, dim: usize) -> Self {
        SliceCoords {
            basis: MonomialBasis::new(nvars, degree),
            dim,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len() * self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree
    }

    pub fn column(&self, m: &Monomial, j: usize) -> usize {
        self.basis.index_of(m).unwrap_or_else(|| panic!("monomial of wrong degree")) * self.dim + j
    }

    pub fn basis_vector<F: Field>(&self, f: &F, col: usize) -> VermaVector<F::Elem> {
        let m = self.basis.monomials[col / self.dim].clone();
        VermaVector::pure(Poly::term(f, m, f.one()), col % self.dim, self.dim)
    }

    pub fn to_dense<F: Field>(&self, f: &F, v: &VermaVector<F::Elem>) -> Vec<F::Elem> {
        let mut out = vec![f.zero(); self.len()];
        for (j, p) in v.components.iter().enumerate() {
            for (m, c) in p.terms() {
                out[self.column(m, j)] = c.clone();
            }
        }
        out
    }

    pub fn from_dense<F: Field>(&self, f: &F, x: &[F::Elem]) -> VermaVector<F::Elem> {
        let mut v = VermaVector::zero(self.basis.nvars, self.dim);
        for (col, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                let m = self.basis.monomials[col / self.dim].clone();
                v.components[col % self.dim].add_term(f, m, c.clone());
            }
        }
        v
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("unexpected character {ch:?} at offset {at} in {input:?}")]
    Unexpected { ch: char, at: usize, input: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("empty term in {0:?}")]
    EmptyTerm(String),
}

/// Parses integer-coefficient polynomials such as `4x^2 + z^2 - 3*x*y^2` or
/// `xyzw`, with variable names as in [`variable_name`].
pub fn parse_poly<F: Field>(f: &F, s: &str, nvars: usize) -> Result<Poly<F::Elem>, PolyParseError> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |at: usize| PolyParseError::Unexpected {
        ch: chars[at],
        at,
        input: s.to_string(),
    };
    let number = |pos: &mut usize| -> Option<i64> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().unwrap_or(i64::MAX))
    };
    let mut out = Poly::zero(nvars);
    let mut pos = 0;
    if chars.is_empty() {
        return Err(PolyParseError::EmptyTerm(s.to_string()));
    }
    while pos < chars.len() {
        let mut sign = 1i64;
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coeff = sign;
        let mut exps = vec![0u16; nvars];
        let mut empty = true;
        if let Some(c) = number(&mut pos) {
            coeff *= c;
            empty = false;
        }
        while pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            if chars[pos] == '*' {
                pos += 1;
                continue;
            }
            if !chars[pos].is_ascii_alphabetic() {
                if empty {
                    return Err(err(pos));
                }
                if let Some(c) = number(&mut pos) {
                    coeff *= c;
                    continue;
                }
                return Err(err(pos));
            }
            let start = pos;
            pos += 1;
            if nvars > 4 {
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
            }
            let name: String = chars[start..pos].iter().collect();
            let var = (0..nvars)
                .find(|&i| variable_name(i, nvars) == name)
                .ok_or_else(|| PolyParseError::UnknownVariable(name.clone()))?;
            let mut e = 1u16;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                e = number(&mut pos).ok_or_else(|| err(pos.min(chars.len() - 1)))? as u16;
            }
            exps[var] += e;
            empty = false;
        }
        if empty {
            return Err(PolyParseError::EmptyTerm(s.to_string()));
        }
        out.add_term(f, Monomial::from_slice(&exps), f.from_i64(coeff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;

    #[test]
    fn parse_round_trip() {
        let f = GaloisField::prime(7).unwrap();
        let p = parse_poly(&f, "4x^2 + z^2 - 3*x*y^2", 3).unwrap();
        assert_eq!(p.coeff(&f, &Monomial::from_slice(&[2, 0, 0])), f.from_i64(4));
        assert_eq!(p.coeff(&f, &Monomial::from_slice(&[1, 2, 0])), f.from_i64(-3));
        assert_eq!(parse_poly(&f, &p.format(&f), 3).unwrap(), p);
        let q = parse_poly(&f, "xyzw", 4).unwrap();
        assert_eq!(q, Poly::monomial(&f, &[1, 1, 1, 1]));
        assert_eq!(parse_poly(&f, "x1^2 - x5", 5).unwrap().num_terms(), 2);
        assert_eq!(parse_poly(&f, "-x^2 - y^2", 2).unwrap().num_terms(), 2);
        assert!(matches!(parse_poly(&f, "q", 2), Err(PolyParseError::UnknownVariable(_))));
        assert!(parse_poly(&f, "x + ", 2).is_err());
        assert!(parse_poly(&f, "", 2).is_err());
    }

    #[test]
    fn grlex_order_and_basis() {
        let b = MonomialBasis::new(3, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(b.monomials[0], Monomial::from_slice(&[2, 0, 0]));
        assert_eq!(b.monomials[5], Monomial::from_slice(&[0, 0, 2]));
        for w in b.monomials.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert!(Monomial::from_slice(&[0, 0, 3]) > Monomial::from_slice(&[2, 0, 0]));
    }

    #[test]
    fn linear_division() {
        let f = GaloisField::new(7, 1, 3).unwrap();
        // (x^3 - y^3) / (x - y) = x^2 + xy + y^2
        let p = Poly::from_int_terms(&f, 2, &[(&[3, 0], 1), (&[0, 3], -1)]);
        let a = Poly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let q = p.div_linear(&f, 0, &a).unwrap();
        let expected = Poly::from_int_terms(&f, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        assert_eq!(q, expected);
        let bad = Poly::from_int_terms(&f, 2, &[(&[2, 0], 1)]);
        assert!(bad.div_linear(&f, 0, &a).is_err());
    }

    #[test]
    fn exact_division() {
        let f = GaloisField::prime(5).unwrap();
        let a = Poly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = Poly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = a.mul(&f, &b);
        assert_eq!(prod.exact_div(&f, &b), Some(a.clone()));
        assert_eq!(a.exact_div(&f, &b), None);
    }

    #[test]
    fn formatting() {
        let f = GaloisField::prime(7).unwrap();
        let p = Poly::from_int_terms(&f, 2, &[(&[3, 0], 1), (&[1, 1], -2), (&[0, 0], 3)]);
        assert_eq!(p.format(&f), "x^3 - 2*x*y + 3");
    }
}
