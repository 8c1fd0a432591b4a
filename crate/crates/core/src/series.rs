//! Integer polynomials and truncated power series in one variable `t`.

use serde::{Deserialize, Serialize};

/// Integer polynomial in `t`, little-endian coefficients.
pub type TPoly = Vec<i64>;

pub fn trim(mut a: TPoly) -> TPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn tpoly_mul(a: &[i64], b: &[i64]) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn tpoly_add(a: &[i64], b: &[i64]) -> TPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

pub fn tpoly_scale(a: &[i64], c: i64) -> TPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn tpoly_pow(a: &[i64], e: u32) -> TPoly {
    let mut r = vec![1];
    for _ in 0..e {
        r = tpoly_mul(&r, a);
    }
    r
}

/// `1 + t + ... + t^{k-1}`.
pub fn geometric(k: u32) -> TPoly {
    vec![1; k as usize]
}

/// `1 - t^e`.
pub fn one_minus_t_pow(e: u32) -> TPoly {
    let mut v = vec![0; e as usize + 1];
    v[0] = 1;
    v[e as usize] -= 1;
    trim(v)
}

/// `a(t^k)`.
pub fn substitute_power(a: &[i64], k: u32) -> TPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; (a.len() - 1) * k as usize + 1];
    for (i, x) in a.iter().enumerate() {
        out[i * k as usize] = *x;
    }
    out
}

pub fn truncate(a: &[i64], n: usize) -> TPoly {
    let mut v: TPoly = a.iter().take(n + 1).copied().collect();
    v.resize(n + 1, 0);
    v
}

/// Power-series expansion of `numerator / prod (1 - t^{e_i})` to degree `n`.
pub fn expand_rational(numerator: &[i64], denominator: &[u32], n: usize) -> Vec<i64> {
    let mut s = truncate(numerator, n);
    for &e in denominator {
        let e = e as usize;
        assert!(e > 0, "zero exponent in denominator");
        for i in e..=n {
            s[i] += s[i - e];
        }
    }
    s
}

/// Numerator and denominator exponents of a rational generating function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub numerator: TPoly,
    pub denominator: Vec<u32>,
}

impl ClosedForm {
    pub fn polynomial(p: TPoly) -> Self {
        ClosedForm {
            numerator: trim(p),
            denominator: Vec::new(),
        }
    }

    /// Reduces `numerator / prod(1 - t^{e_i})` by exact division where
    /// possible, so that finite series become polynomials.
    pub fn simplify(&self) -> ClosedForm {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for &e in &self.denominator {
            match exact_div(&num, &one_minus_t_pow(e)) {
                Some(q) => num = q,
                None => den.push(e),
            }
        }
        ClosedForm {
            numerator: num,
            denominator: den,
        }
    }

    pub fn expand(&self, n: usize) -> Vec<i64> {
        expand_rational(&self.numerator, &self.denominator, n)
    }
}

/// Exact division of integer polynomials; `None` if not exact over the integers.
pub fn exact_div(a: &[i64], b: &[i64]) -> Option<TPoly> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lb = *b.last()?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.clone();
    let mut q = vec![0; a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = rem[i + b.len() - 1];
        if c % lb != 0 {
            return None;
        }
        let c = c / lb;
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    if rem.iter().all(|&x| x == 0) {
        Some(trim(q))
    } else {
        None
    }
}

/// Graded dimensions `a_0, ..., a_N` with an optional closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSeries {
    pub coeffs: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<ClosedForm>,
}

impl GradedSeries {
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        GradedSeries { coeffs, closed: None }
    }

    pub fn from_closed(closed: ClosedForm, n: usize) -> Self {
        GradedSeries {
            coeffs: closed.expand(n),
            closed: Some(closed),
        }
    }

    pub fn polynomial(p: TPoly) -> Self {
        let n = p.len().saturating_sub(1);
        Self::from_closed(ClosedForm::polynomial(p), n)
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Largest degree with a nonzero coefficient.
    pub fn top_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    /// Compares coefficients up to the shorter truncation.
    pub fn agrees_with(&self, other: &GradedSeries) -> bool {
        let n = self.coeffs.len().min(other.coeffs.len());
        self.coeffs[..n] == other.coeffs[..n]
    }

    /// Coefficients with trailing zeros removed.
    pub fn trimmed(&self) -> TPoly {
        trim(self.coeffs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_rational(&[1, 1], &[1], 3), vec![1, 2, 2, 2]);
        // (1 + t)^2 * sum (k + 1) t^k
        assert_eq!(expand_rational(&[1, 2, 1], &[1, 1], 2), vec![1, 4, 8]);
        assert_eq!(expand_rational(&[1], &[], 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn closed_forms_simplify_to_polynomials() {
        // (1 - t^2)(1 - t^4) / (1 - t)^2 = (1 + t)(1 + t + t^2 + t^3)
        let num = tpoly_mul(&one_minus_t_pow(2), &one_minus_t_pow(4));
        let c = ClosedForm {
            numerator: num,
            denominator: vec![1, 1],
        }
        .simplify();
        assert!(c.denominator.is_empty());
        assert_eq!(c.numerator, tpoly_mul(&[1, 1], &geometric(4)));
    }

    #[test]
    fn integer_division() {
        assert_eq!(exact_div(&[1, 0, -1], &[1, -1]), Some(vec![1, 1]));
        assert_eq!(exact_div(&[1, 1], &[1, -1]), None);
    }
}
