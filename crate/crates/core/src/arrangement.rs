//! Subspace-arrangement ideals and candidate generators of `J` for trivial `τ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dunkl::{CherednikParams, DunklEngine};
use crate::field::{Field, FieldError, GaloisField};
use crate::group::{GroupError, GroupSpec};
use crate::poly::{binomial, Monomial, MonomialBasis, Poly, VermaVector};
use crate::rep::GradedRep;
use crate::series::{geometric, one_minus_t_pow, substitute_power, tpoly_mul, tpoly_pow, ClosedForm, GradedSeries, TPoly};
use crate::slice::quotient_hilbert;
use crate::specht::{garnir_polynomial, standard_tableaux};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("2i < n is required, got i = {i}, n = {n}")]
    OutOfRegime { i: usize, n: usize },
    #[error("n = {n} is not congruent to i = {i} modulo p = {p} (with 0 <= i < p)")]
    CongruenceViolated { n: usize, i: usize, p: u64 },
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Dunkl(#[from] crate::dunkl::DunklError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ArrangementKind {
    /// Union of the flats `x_{j_1}^m = ... = x_{j_{n-i}}^m`.
    I { i: usize, m: u32 },
    /// Squarefree monomials of degree `i`.
    T { i: usize },
    /// `G(m,m,n)` with `p | n`.
    JPDividesN { m: u32, p: u64 },
    /// `G(m,m,n)` with `n ≡ i (mod p)`, `0 < i < p`.
    JPNotDividesN { m: u32, i: usize },
    /// `Σ_n` with `n ≡ i (mod p)`.
    Symmetric { i: usize, p: u64 },
}

#[derive(Clone, Debug)]
pub struct ArrangementIdeal<E> {
    pub kind: ArrangementKind,
    pub n: usize,
    pub generators: Vec<Poly<E>>,
    /// Additional generators that are conjectured, not proved, to lie in `J`.
    pub conjectural: Vec<Poly<E>>,
    pub oracle: Option<ClosedForm>,
    pub top_degree: Option<u32>,
    pub socle_dim: Option<u64>,
}

fn ones(d: usize) -> Vec<u32> {
    vec![1; d]
}

/// Garnir generators of `I_i^{(m)}` and the closed form of `A / I_i^{(m)}`.
pub fn ideal_i<F: Field>(f: &F, i: usize, m: u32, n: usize) -> Result<ArrangementIdeal<F::Elem>, ArrangementError> {
    if 2 * i >= n {
        return Err(ArrangementError::OutOfRegime { i, n });
    }
    if m == 0 {
        return Err(ArrangementError::InvalidArguments("m must be positive".into()));
    }
    let (generators, numerator) = if i == 0 {
        let gens = (0..n - 1)
            .map(|j| {
                let mut p = Poly::var(f, j, n);
                p.add_term(f, Monomial::var(j + 1, n), f.neg(&f.one()));
                p
            })
            .collect();
        (gens, vec![1])
    } else {
        let shape = if n >= 2 * i + 2 {
            vec![n - i - 1, i + 1]
        } else {
            vec![i, i, 1]
        };
        let gens = standard_tableaux(&shape)
            .iter()
            .map(|t| garnir_polynomial(f, t, n).expect("standard tableau"))
            .collect();
        let c = |a: usize, b: usize| binomial(a as u64, b as u64) as i64;
        let mut num = vec![0i64; i + 2];
        let top = if n >= 2 * i + 2 { i } else { i + 1 };
        for (j, slot) in num.iter_mut().enumerate().take(top + 1) {
            *slot = c(n - i + j - 2, j);
        }
        if n >= 2 * i + 2 {
            num[i + 1] = c(n - 1, i - 1);
        }
        (gens, crate::series::trim(num))
    };
    let base = ArrangementIdeal {
        kind: ArrangementKind::I { i, m: 1 },
        n,
        generators,
        conjectural: Vec::new(),
        oracle: Some(ClosedForm {
            numerator,
            denominator: ones(i + 1),
        }),
        top_degree: None,
        socle_dim: None,
    };
    let mut out = power_substitute(f, &base, m);
    out.kind = ArrangementKind::I { i, m };
    Ok(out)
}

/// Squarefree monomials of degree `i` in `n` variables.
pub fn ideal_t<F: Field>(f: &F, i: usize, n: usize) -> Result<ArrangementIdeal<F::Elem>, ArrangementError> {
    if i == 0 || i > n {
        return Err(ArrangementError::InvalidArguments(format!(
            "need 1 <= i <= n, got i = {i}, n = {n}"
        )));
    }
    let generators = squarefree_monomials(f, i, n);
    let numerator = (0..i).map(|j| binomial((n - i + j) as u64, (n - i) as u64) as i64).collect();
    Ok(ArrangementIdeal {
        kind: ArrangementKind::T { i },
        n,
        generators,
        conjectural: Vec::new(),
        oracle: Some(ClosedForm {
            numerator,
            denominator: ones(i - 1),
        }),
        top_degree: None,
        socle_dim: None,
    })
}

fn squarefree_monomials<F: Field>(f: &F, k: usize, n: usize) -> Vec<Poly<F::Elem>> {
    subsets(n, k)
        .into_iter()
        .map(|s| {
            let mut e = vec![0u16; n];
            for j in s {
                e[j] = 1;
            }
            Poly::term(f, Monomial::from_slice(&e), f.one())
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `e_k(x_1^m, ..., x_n^m)`.
pub fn elementary_power<F: Field>(f: &F, k: usize, m: u32, n: usize) -> Poly<F::Elem> {
    let mut p = Poly::zero(n);
    for s in subsets(n, k) {
        let mut e = vec![0u16; n];
        for j in s {
            e[j] = m as u16;
        }
        p.add_term(f, Monomial::from_slice(&e), f.one());
    }
    p
}

/// Candidate generators of `J` for `G(m,m,n)`, trivial `τ`, `ħ = 0`.
pub fn conjectured_j_generators<F: Field>(
    f: &F,
    m: u32,
    r: u32,
    n: usize,
    p: u64,
    tau: &str,
) -> Result<ArrangementIdeal<F::Elem>, ArrangementError> {
    if tau != "trivial" {
        return Err(ArrangementError::UnsupportedCase(format!("τ = {tau}")));
    }
    if r != m {
        return Err(ArrangementError::UnsupportedCase(format!(
            "G({m},{r},{n}) is not of the form G(m,m,n)"
        )));
    }
    if n < 2 || p < 2 {
        return Err(ArrangementError::InvalidArguments(format!("n = {n}, p = {p}")));
    }
    let i = (n as u64 % p) as usize;
    if m == 1 {
        let base = ideal_i(f, i, 1, n)?;
        let mut conjectural = vec![(0..n).fold(Poly::zero(n), |acc, j| acc.add(f, &Poly::var(f, j, n)))];
        if i == 1 {
            let mut g = Poly::zero(n);
            let pe = p as u16;
            let mono = |a: u16, b: u16| {
                let mut e = vec![0u16; n];
                e[n - 2] = a;
                e[n - 1] = b;
                Monomial::from_slice(&e)
            };
            g.add_term(f, mono(pe, 0), f.one());
            g.add_term(f, mono(1, pe - 1), f.neg(&f.one()));
            g.add_term(f, mono(0, pe), f.one());
            conjectural.push(g);
        }
        return Ok(ArrangementIdeal {
            kind: ArrangementKind::Symmetric { i, p },
            conjectural,
            ..base
        });
    }
    if i == 0 {
        let mut generators: Vec<Poly<F::Elem>> = (0..n - 1)
            .map(|j| {
                let mut a = vec![0u16; n];
                a[j] = m as u16;
                let mut b = vec![0u16; n];
                b[j + 1] = m as u16;
                let mut g = Poly::term(f, Monomial::from_slice(&a), f.one());
                g.add_term(f, Monomial::from_slice(&b), f.neg(&f.one()));
                g
            })
            .collect();
        if (p as usize) <= n {
            generators.extend(squarefree_monomials(f, p as usize, n));
        }
        return Ok(ArrangementIdeal {
            kind: ArrangementKind::JPDividesN { m, p },
            n,
            generators,
            conjectural: Vec::new(),
            oracle: None,
            top_degree: Some((p as u32 - 1) * m),
            socle_dim: Some(1),
        });
    }
    let mut generators: Vec<Poly<F::Elem>> = (1..=n).map(|k| elementary_power(f, k, m, n)).collect();
    generators.extend(squarefree_monomials(f, i, n));
    let h: TPoly = (0..i).map(|j| binomial((n - i + j) as u64, (n - i) as u64) as i64).collect();
    let numerator = (1..i as u32).fold(h, |acc, j| tpoly_mul(&acc, &one_minus_t_pow(j * m)));
    let oracle = ClosedForm {
        numerator,
        denominator: ones(i - 1),
    };
    let top = oracle.simplify().numerator.len() as u32 - 1;
    Ok(ArrangementIdeal {
        kind: ArrangementKind::JPNotDividesN { m, i },
        n,
        generators,
        conjectural: Vec::new(),
        oracle: Some(oracle),
        top_degree: Some(top),
        socle_dim: Some(binomial(n as u64 - 1, i as u64 - 1)),
    })
}

/// `x_j -> x_j^m` on generators; the closed form `P(t)/(1-t)^d` becomes
/// `P(t^m) [m]^{n-d} / (1-t)^d`.
pub fn power_substitute<F: Field>(f: &F, ideal: &ArrangementIdeal<F::Elem>, m: u32) -> ArrangementIdeal<F::Elem> {
    let _ = f;
    if m == 1 {
        return ideal.clone();
    }
    let oracle = ideal.oracle.as_ref().and_then(|c| {
        if c.denominator.iter().any(|&e| e != 1) {
            return None;
        }
        let d = c.denominator.len();
        let num = tpoly_mul(
            &substitute_power(&c.numerator, m),
            &tpoly_pow(&geometric(m), (ideal.n - d) as u32),
        );
        Some(ClosedForm {
            numerator: num,
            denominator: c.denominator.clone(),
        })
    });
    ArrangementIdeal {
        kind: ideal.kind.clone(),
        n: ideal.n,
        generators: ideal.generators.iter().map(|g| g.power_substitute(m as u16)).collect(),
        conjectural: ideal.conjectural.iter().map(|g| g.power_substitute(m as u16)).collect(),
        oracle,
        top_degree: ideal.top_degree.map(|t| t * m + (m - 1) * ideal.n as u32),
        socle_dim: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub computed: GradedSeries,
    pub oracle: Option<Vec<i64>>,
    pub matches: bool,
}

/// Hilbert function of `A / ideal` to degree `dmax` against the oracle.
pub fn check_oracle<F: Field>(f: &F, ideal: &ArrangementIdeal<F::Elem>, dmax: u32) -> OracleCheck {
    let computed = quotient_hilbert(f, &ideal.generators, ideal.n, dmax).expect("homogeneous generators");
    let oracle = ideal.oracle.as_ref().map(|c| c.expand(dmax as usize));
    let matches = match &oracle {
        Some(o) => *o == computed.coeffs,
        None => ideal.top_degree.is_none_or(|t| computed.top_degree() == Some(t as usize)),
    };
    OracleCheck {
        computed,
        oracle,
        matches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DunklKillReport {
    pub m: u32,
    pub n: usize,
    pub p: u64,
    pub i: usize,
    pub congruence_holds: bool,
    pub generators: usize,
    pub killed: bool,
    /// `(generator index, operator index)` of the first nonzero image.
    pub first_failure: Option<(usize, usize)>,
}

/// Requires `n ≡ i (mod p)`; see [`dunkl_kill_report`] for the unchecked form.
pub fn verify_dunkl_kill(m: u32, n: usize, p: u64, i: usize, seed: u64) -> Result<DunklKillReport, ArrangementError> {
    if i as u64 >= p || n as u64 % p != i as u64 {
        return Err(ArrangementError::CongruenceViolated { n, i, p });
    }
    dunkl_kill_report(m, n, p, i, seed)
}

/// Applies every Dunkl operator of `G(m,1,n)` at random parameters to every
/// Garnir generator of `I_i^{(m)}`.
pub fn dunkl_kill_report(m: u32, n: usize, p: u64, i: usize, seed: u64) -> Result<DunklKillReport, ArrangementError> {
    let f = GaloisField::for_generic(p, m)?;
    let g = GroupSpec::new(m, 1, n)?.in_field(f.root_order())?;
    let ideal = ideal_i(&f, i, m, n)?;
    let params = CherednikParams::specialized(&f, &g, 0, seed)?;
    let rep = GradedRep::trivial();
    let e = DunklEngine::new(&f, &g, &rep, &params);
    let mut first_failure = None;
    'outer: for (gi, gen) in ideal.generators.iter().enumerate() {
        let imgs = e.apply_all(&VermaVector::pure(gen.clone(), 0, 1))?;
        for (k, v) in imgs.iter().enumerate() {
            if !v.is_zero() {
                first_failure = Some((gi, k));
                break 'outer;
            }
        }
    }
    Ok(DunklKillReport {
        m,
        n,
        p,
        i,
        congruence_holds: (i as u64) < p && n as u64 % p == i as u64,
        generators: ideal.generators.len(),
        killed: first_failure.is_none(),
        first_failure,
    })
}

/// All monomials of degree `d`, as polynomials.
pub fn degree_monomials<F: Field>(f: &F, n: usize, d: u32) -> Vec<Poly<F::Elem>> {
    MonomialBasis::new(n, d)
        .monomials
        .into_iter()
        .map(|m| Poly::term(f, m, f.one()))
        .collect()
}
