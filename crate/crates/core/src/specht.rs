//! Young tableaux, Garnir polynomials, and Specht modules of `Σ_n`.

use crate::field::Field;
use crate::linalg::{mat_mul, SpanCoordinates};
use crate::poly::{Monomial, MonomialBasis, Poly};
use crate::rep::RepError;

/// Tableau as rows of entries `1..=n`.
pub type Tableau = Vec<Vec<usize>>;

pub fn parse_partition(s: &str) -> Result<Vec<usize>, RepError> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    let parts = parts.map_err(|_| RepError::NotAPartition(s.to_string()))?;
    check_partition(&parts)?;
    Ok(parts)
}

pub fn check_partition(lambda: &[usize]) -> Result<(), RepError> {
    let ok = !lambda.is_empty() && lambda.iter().all(|&x| x > 0) && lambda.windows(2).all(|w| w[0] >= w[1]);
    if ok {
        Ok(())
    } else {
        Err(RepError::NotAPartition(format!("{lambda:?}")))
    }
}

/// `n(λ) = Σ (i - 1) λ_i`, the degree of the Garnir polynomials.
pub fn n_lambda(lambda: &[usize]) -> u32 {
    lambda.iter().enumerate().map(|(i, &l)| (i * l) as u32).sum()
}

/// Hook lengths, row by row.
pub fn hooks(lambda: &[usize]) -> Vec<Vec<u32>> {
    let conj: Vec<usize> = (0..lambda.first().copied().unwrap_or(0))
        .map(|j| lambda.iter().filter(|&&l| l > j).count())
        .collect();
    lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| (0..l).map(|j| (l - j + conj[j] - i - 1) as u32).collect())
        .collect()
}

/// Standard tableaux of shape `λ`, in the order produced by placing
/// `1, 2, ...` into the lowest-index admissible row first.
pub fn standard_tableaux(lambda: &[usize]) -> Vec<Tableau> {
    let n: usize = lambda.iter().sum();
    let mut out = Vec::new();
    let mut cur: Tableau = vec![Vec::new(); lambda.len()];
    fn rec(k: usize, n: usize, lambda: &[usize], cur: &mut Tableau, out: &mut Vec<Tableau>) {
        if k > n {
            out.push(cur.clone());
            return;
        }
        for i in 0..lambda.len() {
            let len = cur[i].len();
            if len < lambda[i] && (i == 0 || cur[i - 1].len() > len) {
                cur[i].push(k);
                rec(k + 1, n, lambda, cur, out);
                cur[i].pop();
            }
        }
    }
    rec(1, n, lambda, &mut cur, &mut out);
    out
}

/// `Π_columns Π_{r<s} (x_{T(r)} - x_{T(s)})` in `n` variables.
pub fn garnir_polynomial<F: Field>(f: &F, t: &Tableau, n: usize) -> Result<Poly<F::Elem>, RepError> {
    let shape: Vec<usize> = t.iter().map(|r| r.len()).collect();
    let mut seen = vec![false; n + 1];
    let mut count = 0;
    for &e in t.iter().flatten() {
        if e == 0 || e > n || seen[e] {
            return Err(RepError::MalformedTableau);
        }
        seen[e] = true;
        count += 1;
    }
    if count != n || check_partition(&shape).is_err() {
        return Err(RepError::MalformedTableau);
    }
    let mut p = Poly::one(f, n);
    for col in 0..shape[0] {
        let entries: Vec<usize> = t.iter().filter_map(|r| r.get(col).copied()).collect();
        for a in 0..entries.len() {
            for b in a + 1..entries.len() {
                let mut d = Poly::var(f, entries[a] - 1, n);
                d.add_term(f, Monomial::var(entries[b] - 1, n), f.neg(&f.one()));
                p = p.mul(f, &d);
            }
        }
    }
    Ok(p)
}

/// Specht module realized on the span of standard Garnir polynomials, with
/// matrices for the adjacent transpositions `(i, i+1)`.
#[derive(Clone, Debug)]
pub struct SpechtData<E> {
    pub shape: Vec<usize>,
    pub n: usize,
    pub tableaux: Vec<Tableau>,
    pub polys: Vec<Poly<E>>,
    /// `adjacent[i]` is the matrix of the transposition `(i, i+1)`.
    pub adjacent: Vec<Vec<Vec<E>>>,
}

fn permute_vars<F: Field>(f: &F, p: &Poly<F::Elem>, perm: &[usize]) -> Poly<F::Elem> {
    let n = p.nvars();
    let mut r = Poly::zero(n);
    for (m, c) in p.terms() {
        let mut k = Monomial::one(n);
        for (j, &e) in m.0.iter().enumerate() {
            k.0[perm[j]] += e;
        }
        r.add_term(f, k, c.clone());
    }
    r
}

impl<E: Clone + PartialEq> SpechtData<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, shape: &[usize]) -> Result<Self, RepError> {
        check_partition(shape)?;
        let n: usize = shape.iter().sum();
        let tableaux = standard_tableaux(shape);
        let polys: Vec<Poly<E>> = tableaux
            .iter()
            .map(|t| garnir_polynomial(f, t, n))
            .collect::<Result<_, _>>()?;
        let basis = MonomialBasis::new(n, n_lambda(shape));
        let dense = |p: &Poly<E>| {
            let mut v = vec![f.zero(); basis.len()];
            for (m, c) in p.terms() {
                v[basis.index_of(m).expect("homogeneous")] = c.clone();
            }
            v
        };
        let coords = SpanCoordinates::new(f, polys.iter().map(&dense).collect()).ok_or(RepError::ExpressionFailure)?;
        let mut adjacent = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            let d = polys.len();
            let mut mat = vec![vec![f.zero(); d]; d];
            for (col, p) in polys.iter().enumerate() {
                let c = coords
                    .express(f, &dense(&permute_vars(f, p, &perm)))
                    .ok_or(RepError::ExpressionFailure)?;
                for (row, x) in c.into_iter().enumerate() {
                    mat[row][col] = x;
                }
            }
            adjacent.push(mat);
        }
        Ok(SpechtData {
            shape: shape.to_vec(),
            n,
            tableaux,
            polys,
            adjacent,
        })
    }

    pub fn dim(&self) -> usize {
        self.polys.len()
    }

    /// Matrix of the permutation `j -> perm[j]`.
    pub fn matrix<F: Field<Elem = E>>(&self, f: &F, perm: &[usize]) -> Vec<Vec<E>> {
        let mut word = Vec::new();
        let mut p = perm.to_vec();
        let mut pos = vec![0; self.n];
        loop {
            for (j, &v) in p.iter().enumerate() {
                pos[v] = j;
            }
            let Some(i) = (0..self.n.saturating_sub(1)).find(|&i| pos[i + 1] < pos[i]) else {
                break;
            };
            word.push(i);
            for v in p.iter_mut() {
                if *v == i {
                    *v = i + 1;
                } else if *v == i + 1 {
                    *v = i;
                }
            }
        }
        let mut m = crate::linalg::identity(f, self.dim());
        for &i in &word {
            m = mat_mul(f, &m, &self.adjacent[i]);
        }
        m
    }
}
