//! Rational functions in the Cherednik parameters over a finite field, and
//! their pseudo-random specialization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, Fq, GaloisField};
use crate::poly::{Monomial, Poly};

/// Symbolic arithmetic is limited to this many parameter variables.
pub const MAX_SYMBOLIC_PARAMS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes at the specialization drawn from seed {0}")]
    DenominatorVanishesAtSpecialization(u64),
    #[error("symbolic mode supports at most {MAX_SYMBOLIC_PARAMS} parameters, got {0}")]
    TooManyParameters(usize),
}

/// Reduced fraction `num / den` with `den` monic in the graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    pub num: Poly<Fq>,
    pub den: Poly<Fq>,
}

/// Field of rational functions in named parameters over a finite field.
#[derive(Clone, Debug)]
pub struct ParamField {
    pub base: GaloisField,
    pub names: Vec<String>,
}

/// A parameter value: a rational function, or a field element drawn from a seed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamScalar {
    Symbolic(RatFunc),
    Specialized { value: Fq, seed: u64 },
}

fn nvars_of(p: &Poly<Fq>) -> usize {
    p.nvars()
}

/// Coefficients of `p` as a polynomial in `x_v`, indexed by power.
fn coeffs_in(f: &GaloisField, p: &Poly<Fq>, v: usize) -> Vec<Poly<Fq>> {
    let n = nvars_of(p);
    let deg = p.terms().map(|(m, _)| m.0[v] as usize).max().unwrap_or(0);
    let mut out = vec![Poly::zero(n); deg + 1];
    for (m, c) in p.terms() {
        let mut k = m.clone();
        let e = k.0[v] as usize;
        k.0[v] = 0;
        out[e].add_term(f, k, *c);
    }
    out
}

fn from_coeffs_in(f: &GaloisField, cs: &[Poly<Fq>], v: usize, n: usize) -> Poly<Fq> {
    let mut r = Poly::zero(n);
    for (e, c) in cs.iter().enumerate() {
        let mut m = Monomial::one(n);
        m.0[v] = e as u16;
        r.add_assign(f, &c.mul_monomial(f, &m, &f.one()));
    }
    r
}

fn deg_in(p: &Poly<Fq>, v: usize) -> Option<usize> {
    p.terms().map(|(m, _)| m.0[v] as usize).max()
}

/// Makes the graded-lex leading coefficient one.
fn monic(f: &GaloisField, p: &Poly<Fq>) -> Poly<Fq> {
    match p.leading_term() {
        Some((_, c)) => p.scale(f, &f.inv(c)),
        None => p.clone(),
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in `x_v`.
fn pseudo_rem(f: &GaloisField, a: &Poly<Fq>, b: &Poly<Fq>, v: usize) -> Poly<Fq> {
    let n = nvars_of(a);
    let db = deg_in(b, v).unwrap();
    let bc = coeffs_in(f, b, v);
    let lb = bc[db].clone();
    let mut r = a.clone();
    while let Some(dr) = deg_in(&r, v) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = coeffs_in(f, &r, v)[dr].clone();
        let mut shift = Monomial::one(n);
        shift.0[v] = (dr - db) as u16;
        let t = b.mul(f, &lr).mul_monomial(f, &shift, &f.one());
        r = r.mul(f, &lb).sub(f, &t);
    }
    r
}

/// Greatest common divisor (monic) of polynomials involving only the
/// variables in `vars`.
fn gcd_in(f: &GaloisField, a: &Poly<Fq>, b: &Poly<Fq>, vars: &[usize]) -> Poly<Fq> {
    let n = nvars_of(a);
    if a.is_zero() {
        return monic(f, b);
    }
    if b.is_zero() {
        return monic(f, a);
    }
    let Some((&v, rest)) = vars.split_last() else {
        return Poly::one(f, n);
    };
    let (ca, pa) = content_split(f, a, v, rest);
    let (cb, pb) = content_split(f, b, v, rest);
    let c = gcd_in(f, &ca, &cb, rest);
    let (mut x, mut y) = if deg_in(&pa, v) >= deg_in(&pb, v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !y.is_zero() && deg_in(&y, v).unwrap_or(0) > 0 {
        let r = pseudo_rem(f, &x, &y, v);
        x = y;
        y = if r.is_zero() { r } else { content_split(f, &r, v, rest).1 };
    }
    let g = if y.is_zero() { x } else { Poly::one(f, n) };
    monic(f, &g.mul(f, &c))
}

/// Splits `p` into content (in the `rest` variables) and primitive part with
/// respect to `x_v`.
fn content_split(f: &GaloisField, p: &Poly<Fq>, v: usize, rest: &[usize]) -> (Poly<Fq>, Poly<Fq>) {
    let n = nvars_of(p);
    let cs = coeffs_in(f, p, v);
    let mut c = Poly::zero(n);
    for k in cs.iter().filter(|k| !k.is_zero()) {
        c = gcd_in(f, &c, k, rest);
        if c.degree() == Some(0) {
            break;
        }
    }
    let prim: Vec<Poly<Fq>> = cs
        .iter()
        .map(|k| k.exact_div(f, &c).expect("content divides coefficient"))
        .collect();
    (c, from_coeffs_in(f, &prim, v, n))
}

pub fn poly_gcd(f: &GaloisField, a: &Poly<Fq>, b: &Poly<Fq>) -> Poly<Fq> {
    let vars: Vec<usize> = (0..nvars_of(a)).collect();
    gcd_in(f, a, b, &vars)
}

/// Canonical form of `num / den`: common factors removed, denominator monic.
pub fn normalize_param(f: &GaloisField, num: Poly<Fq>, den: Poly<Fq>) -> Result<RatFunc, ParamError> {
    if den.is_zero() {
        return Err(ParamError::ZeroDenominator);
    }
    let n = den.nvars();
    if num.is_zero() {
        return Ok(RatFunc {
            num,
            den: Poly::one(f, n),
        });
    }
    let (num, den) = if den.degree() == Some(0) {
        (num, den)
    } else {
        let g = poly_gcd(f, &num, &den);
        if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.exact_div(f, &g).expect("gcd divides numerator"),
                den.exact_div(f, &g).expect("gcd divides denominator"),
            )
        }
    };
    let lc = f.inv(den.leading_term().unwrap().1);
    Ok(RatFunc {
        num: num.scale(f, &lc),
        den: den.scale(f, &lc),
    })
}

/// Point at which parameters are specialized for `seed`: independent
/// pseudo-random nonzero values.
pub fn specialization_point(f: &GaloisField, nparams: usize, seed: u64) -> Vec<Fq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..nparams).map(|_| f.random_nonzero(&mut rng)).collect()
}

pub fn evaluate(f: &GaloisField, a: &RatFunc, point: &[Fq]) -> Option<Fq> {
    let d = a.den.evaluate(f, point);
    if f.is_zero(&d) {
        None
    } else {
        Some(f.div(&a.num.evaluate(f, point), &d))
    }
}

pub fn specialize_params(f: &GaloisField, a: &RatFunc, seed: u64) -> Result<ParamScalar, ParamError> {
    let point = specialization_point(f, a.num.nvars(), seed);
    let value = evaluate(f, a, &point).ok_or(ParamError::DenominatorVanishesAtSpecialization(seed))?;
    Ok(ParamScalar::Specialized { value, seed })
}

impl ParamField {
    pub fn new(base: GaloisField, names: &[&str]) -> Result<Self, ParamError> {
        if names.len() > MAX_SYMBOLIC_PARAMS {
            return Err(ParamError::TooManyParameters(names.len()));
        }
        Ok(ParamField {
            base,
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn nparams(&self) -> usize {
        self.names.len()
    }

    pub fn param(&self, i: usize) -> RatFunc {
        let n = self.nparams();
        RatFunc {
            num: Poly::var(&self.base, i, n),
            den: Poly::one(&self.base, n),
        }
    }

    pub fn constant(&self, c: Fq) -> RatFunc {
        let n = self.nparams();
        RatFunc {
            num: Poly::constant(&self.base, c, n),
            den: Poly::one(&self.base, n),
        }
    }

    pub fn from_polys(&self, num: Poly<Fq>, den: Poly<Fq>) -> Result<RatFunc, ParamError> {
        normalize_param(&self.base, num, den)
    }

    pub fn evaluate(&self, a: &RatFunc, point: &[Fq]) -> Option<Fq> {
        evaluate(&self.base, a, point)
    }

    fn make(&self, num: Poly<Fq>, den: Poly<Fq>) -> RatFunc {
        normalize_param(&self.base, num, den).expect("nonzero denominator")
    }
}

impl Field for ParamField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        self.constant(self.base.zero())
    }

    fn one(&self) -> RatFunc {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &self.base;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return self.make(a.num.add(f, &b.num), a.den.clone());
        }
        let num = a.num.mul(f, &b.den).add(f, &b.num.mul(f, &a.den));
        self.make(num, a.den.mul(f, &b.den))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: a.num.neg(&self.base),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &self.base;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if a.den.degree() == Some(0) && b.den.degree() == Some(0) {
            return RatFunc {
                num: a.num.mul(f, &b.num),
                den: a.den.clone(),
            };
        }
        self.make(a.num.mul(f, &b.num), a.den.mul(f, &b.den))
    }

    fn inv(&self, a: &RatFunc) -> RatFunc {
        assert!(!a.num.is_zero(), "inverse of zero");
        self.make(a.den.clone(), a.num.clone())
    }

    fn from_i64(&self, v: i64) -> RatFunc {
        self.constant(self.base.from_i64(v))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn root_order(&self) -> u32 {
        self.base.root_order()
    }

    fn xi_pow(&self, k: i64) -> RatFunc {
        self.constant(self.base.xi_pow(k))
    }

    fn format_elem(&self, a: &RatFunc) -> String {
        let f = &self.base;
        let num = a.num.format_named(f, &self.names);
        if a.den.degree() == Some(0) {
            return num;
        }
        let den = a.den.format_named(f, &self.names);
        let wrap = |s: String, p: &Poly<Fq>| if p.num_terms() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(num, &a.num), wrap(den, &a.den))
    }
}
