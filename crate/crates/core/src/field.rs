//! Finite fields `F_{p^k}` carrying a distinguished primitive `m`-th root of unity.
//!
//! Elements are stored as discrete logarithms with respect to a fixed
//! primitive element, and addition goes through a Zech logarithm table.
//! Everything downstream (polynomials, linear algebra, Dunkl operators) is
//! generic over the [`Field`] trait, which passes the field context explicitly
//! because the characteristic is only known at run time.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact field arithmetic with an explicit context object.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Order of the distinguished root of unity `xi`.
    fn root_order(&self) -> u32;
    /// `xi^k` for any integer `k`.
    fn xi_pow(&self, k: i64) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {p} divides m = {m}")]
    CharacteristicDividesM { p: u64, m: u32 },
    #[error("field of order {p}^{k} is too large for table arithmetic")]
    TooLarge { p: u64, k: u32 },
}

/// Serializable description of `F_{p^k}` with its root of unity.
///
/// Coefficient lists are little-endian; `xi` is the coefficient list of the
/// chosen root in `F_p[a]/(modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
    pub m: u32,
    pub xi: Vec<u64>,
}

/// Largest field order we are willing to tabulate.
const MAX_ORDER: u64 = 1 << 24;

/// Fields used for computations with generic parameters are enlarged until
/// they have at least this many elements, so that random specializations
/// avoid special parameter values with high probability.
pub const GENERIC_MIN_ORDER: u64 = 1 << 16;

/// Seed for the irreducible-modulus search.
pub const MODULUS_SEED: u64 = 0x5eed_f1e1d;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Minimal `k` with `m | p^k - 1`.
pub fn minimal_degree(p: u64, m: u32) -> u32 {
    let m = m as u64;
    if m == 1 {
        return 1;
    }
    let mut k = 1;
    let mut pk = p % m;
    while pk != 1 {
        pk = pk * (p % m) % m;
        k += 1;
    }
    k
}

// Dense polynomials over F_p, little-endian, used only during construction.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = mod_inv(f[df], p);
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &fc) in f.iter().enumerate() {
            let t = c * fc % p;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Rabin's irreducibility test for a monic polynomial of degree `k`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u64;
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^j) mod f
    let frob = |j: u64| {
        let mut r = x.clone();
        for _ in 0..j {
            r = poly_powmod(&r, p, f, p);
        }
        r
    };
    let full = frob(k);
    let mut diff = full;
    diff.resize(diff.len().max(2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for l in prime_factors(k) {
        let mut h = frob(k / l);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        let g = poly_gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Seeded random search for a monic irreducible polynomial of degree `k`.
/// Degree one always returns `x`.
pub fn find_irreducible(p: u64, k: u32, seed: u64) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut f: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
}

/// Seeded random search for a monic irreducible polynomial of degree `k`
/// whose root `x` generates the multiplicative group of `F_p[x]/(f)`.
pub fn find_primitive(p: u64, k: u32, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = p.pow(k) - 1;
    let factors = prime_factors(order);
    let x = vec![0, 1];
    loop {
        let mut f: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        f.push(1);
        if f[0] == 0 || !is_irreducible(&f, p) {
            continue;
        }
        let generates = factors.iter().all(|&l| {
            let mut r = poly_powmod(&x, order / l, &f, p);
            trim(&mut r);
            r != [1]
        });
        if generates || order == 1 {
            return f;
        }
    }
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut enc: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(enc % p);
        enc /= p;
    }
    out
}

const NO_LOG: u32 = u32::MAX;

#[derive(Debug)]
struct Tables {
    p: u64,
    k: u32,
    q1: u32,
    modulus: Vec<u64>,
    /// `exp[i]` = encoding of `g^i`.
    exp: Vec<u32>,
    /// `log[enc]` = discrete log, `NO_LOG` for zero.
    log: Vec<u32>,
    /// `zech[i]` = log of `1 + g^i`, `NO_LOG` when that is zero.
    zech: Vec<u32>,
    neg_one_log: u32,
    m: u32,
    xi_log: u32,
}

/// Element of a [`GaloisField`]: 0 is zero, otherwise `1 + log`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fq(pub u32);

/// `F_{p^k}` with table arithmetic. Cheap to clone.
#[derive(Clone)]
pub struct GaloisField {
    t: Arc<Tables>,
}

impl Debug for GaloisField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{}; m={})", self.t.p, self.t.k, self.t.m)
    }
}

/// Tabulated fields keyed by `(p, k, m)`.
type FieldCache = Mutex<HashMap<(u64, u32, u32), GaloisField>>;

fn field_cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn validate(p: u64, m: u32) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if (m as u64).is_multiple_of(p) {
        return Err(FieldError::CharacteristicDividesM { p, m });
    }
    Ok(())
}

/// Minimal field containing a primitive `m`-th root of unity.
pub fn build_field(p: u64, m: u32) -> Result<FieldSpec, FieldError> {
    validate(p, m)?;
    let k = minimal_degree(p, m);
    Ok(GaloisField::new(p, k, m)?.spec())
}

impl GaloisField {
    /// `F_{p^k}` with `xi` of order exactly `m`. Requires `m | p^k - 1`.
    pub fn new(p: u64, k: u32, m: u32) -> Result<Self, FieldError> {
        validate(p, m)?;
        let q = (p as u128).pow(k);
        if q > MAX_ORDER as u128 {
            return Err(FieldError::TooLarge { p, k });
        }
        assert!((q as u64 - 1).is_multiple_of(m as u64), "m = {m} does not divide {p}^{k} - 1");
        let key = (p, k, m);
        if let Some(f) = field_cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let f = GaloisField {
            t: Arc::new(Self::tabulate(p, k, m)),
        };
        field_cache().lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    /// Field for computations with generic parameters: the smallest extension
    /// of the minimal root-of-unity field with at least [`GENERIC_MIN_ORDER`]
    /// elements.
    pub fn for_generic(p: u64, m: u32) -> Result<Self, FieldError> {
        validate(p, m)?;
        let k0 = minimal_degree(p, m);
        let mut k = k0;
        while (p as u128).pow(k) < GENERIC_MIN_ORDER as u128 {
            k += k0;
        }
        Self::new(p, k, m)
    }

    /// Smallest field of characteristic `p` containing a primitive `m`-th root.
    pub fn minimal(p: u64, m: u32) -> Result<Self, FieldError> {
        validate(p, m)?;
        Self::new(p, minimal_degree(p, m), m)
    }

    /// Prime field `F_p` (root of unity of order 1).
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, 1)
    }

    fn tabulate(p: u64, k: u32, m: u32) -> Tables {
        let q = p.pow(k);
        let q1 = (q - 1) as u32;
        let generating = find_primitive(p, k, MODULUS_SEED);
        // Powers of the generator x: shift the digits up and fold the
        // overflowing top digit back in with `x^k = -(f_0 + ... )`.
        let ku = k as usize;
        let neg_f: Vec<u64> = generating[..ku].iter().map(|&c| (p - c) % p).collect();
        let table: Vec<u64> = (0..p).flat_map(|l| neg_f.iter().map(move |&c| l * c % p)).collect();
        let place: Vec<u64> = (0..ku as u32).map(|t| p.pow(t)).collect();
        let mut exp = Vec::with_capacity(q1 as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![0u64; ku];
        cur[0] = 1;
        let mut e = 1u64;
        for i in 0..q1 {
            exp.push(e as u32);
            log[e as usize] = i;
            let lead = cur[ku - 1] as usize;
            for t in (1..ku).rev() {
                cur[t] = cur[t - 1];
            }
            cur[0] = 0;
            e = 0;
            let row = &table[lead * ku..(lead + 1) * ku];
            for ((c, &add), &w) in cur.iter_mut().zip(row).zip(&place) {
                *c += add;
                if *c >= p {
                    *c -= p;
                }
                e += *c * w;
            }
        }
        let zech = exp
            .iter()
            .map(|&e| {
                let c0 = e as u64 % p;
                let shifted = e as u64 - c0 + (c0 + 1) % p;
                log[shifted as usize]
            })
            .collect();
        // Prime fields are reported as F_p[a]/(a); elements are plain residues.
        let modulus = if k == 1 { vec![0, 1] } else { generating };
        let neg_one_log = if p == 2 { 0 } else { q1 / 2 };
        let xi_log = if m == 1 {
            0
        } else {
            // smallest encoding among the elements of order exactly m
            let step = q1 / m;
            (1..m)
                .filter(|&j| gcd_u64(j as u64, m as u64) == 1)
                .map(|j| j * step)
                .min_by_key(|&l| exp[l as usize])
                .expect("m divides p^k - 1")
        };
        Tables {
            p,
            k,
            q1,
            modulus,
            exp,
            log,
            zech,
            neg_one_log,
            m,
            xi_log,
        }
    }

    pub fn order(&self) -> u64 {
        self.t.q1 as u64 + 1
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    /// Coefficient vector (little-endian, length `k`) of an element.
    pub fn coefficients(&self, a: Fq) -> Vec<u64> {
        if a.0 == 0 {
            return vec![0; self.t.k as usize];
        }
        decode(self.t.exp[(a.0 - 1) as usize] as u64, self.t.p, self.t.k)
    }

    pub fn from_coefficients(&self, c: &[u64]) -> Fq {
        let mut c: Vec<u64> = c.iter().map(|x| x % self.t.p).collect();
        c.resize(self.t.k as usize, 0);
        let l = self.t.log[encode(&c, self.t.p) as usize];
        if l == NO_LOG {
            Fq(0)
        } else {
            Fq(l + 1)
        }
    }

    /// Integer encoding used as the fixed total order on elements.
    pub fn encoding(&self, a: Fq) -> u64 {
        if a.0 == 0 {
            0
        } else {
            self.t.exp[(a.0 - 1) as usize] as u64
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.t.p,
            k: self.t.k,
            modulus: self.t.modulus.clone(),
            m: self.t.m,
            xi: self.coefficients(self.xi_pow(1)),
        }
    }

    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(1..=self.t.q1))
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(&a, self.t.p)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fq) -> u64 {
        assert!(a.0 != 0);
        let q1 = self.t.q1 as u64;
        q1 / gcd_u64((a.0 - 1) as u64, q1)
    }

    /// Same field as `self` but with the distinguished root replaced by one of
    /// order `m` (which must divide the order of `self`'s root).
    pub fn with_root_order(&self, m: u32) -> GaloisField {
        GaloisField::new(self.t.p, self.t.k, m).expect("valid sub-root")
    }

    /// Canonical embedding of `F_p` into `self`.
    pub fn embed_prime(&self, r: u64) -> Fq {
        self.from_i64((r % self.t.p) as i64)
    }
}

impl Field for GaloisField {
    type Elem = Fq;

    #[inline]
    fn zero(&self) -> Fq {
        Fq(0)
    }

    #[inline]
    fn one(&self) -> Fq {
        Fq(1)
    }

    #[inline]
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }

    #[inline]
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        if a.0 == 0 {
            return *b;
        }
        if b.0 == 0 {
            return *a;
        }
        let q1 = self.t.q1;
        let la = a.0 - 1;
        let lb = b.0 - 1;
        let d = if lb >= la { lb - la } else { lb + q1 - la };
        let z = self.t.zech[d as usize];
        if z == NO_LOG {
            Fq(0)
        } else {
            let s = la as u64 + z as u64;
            Fq((s % q1 as u64) as u32 + 1)
        }
    }

    #[inline]
    fn neg(&self, a: &Fq) -> Fq {
        if a.0 == 0 {
            return *a;
        }
        let s = (a.0 - 1) as u64 + self.t.neg_one_log as u64;
        Fq((s % self.t.q1 as u64) as u32 + 1)
    }

    #[inline]
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let s = (a.0 - 1) as u64 + (b.0 - 1) as u64;
        Fq((s % self.t.q1 as u64) as u32 + 1)
    }

    #[inline]
    fn inv(&self, a: &Fq) -> Fq {
        assert!(a.0 != 0, "inverse of zero");
        let la = a.0 - 1;
        Fq((self.t.q1 - la) % self.t.q1 + 1)
    }

    fn from_i64(&self, n: i64) -> Fq {
        let p = self.t.p as i64;
        let r = n.rem_euclid(p) as u64;
        let l = self.t.log[r as usize];
        if l == NO_LOG {
            Fq(0)
        } else {
            Fq(l + 1)
        }
    }

    fn characteristic(&self) -> u64 {
        self.t.p
    }

    fn root_order(&self) -> u32 {
        self.t.m
    }

    fn xi_pow(&self, k: i64) -> Fq {
        let q1 = self.t.q1 as i64;
        let l = (self.t.xi_log as i64 * k.rem_euclid(self.t.m.max(1) as i64)).rem_euclid(q1);
        Fq(l as u32 + 1)
    }

    fn pow(&self, a: &Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq(1);
        }
        if a.0 == 0 {
            return Fq(0);
        }
        let q1 = self.t.q1 as u64;
        let l = ((a.0 - 1) as u64 * (e % q1)) % q1;
        Fq(l as u32 + 1)
    }

    fn format_elem(&self, a: &Fq) -> String {
        let c = self.coefficients(*a);
        let p = self.t.p;
        let signed = |v: u64| -> i64 {
            if v > p / 2 {
                v as i64 - p as i64
            } else {
                v as i64
            }
        };
        if self.t.k == 1 {
            return signed(c[0]).to_string();
        }
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match i {
                0 => format!("{}", signed(v)),
                1 => format!("{}*a", signed(v)),
                _ => format!("{}*a^{}", signed(v), i),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            format!("({})", terms.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_for_seven_and_three() {
        let spec = build_field(7, 3).unwrap();
        assert_eq!(spec.k, 1);
        assert_eq!(spec.xi, vec![2]);
        assert_eq!(
            serde_json::to_string(&spec).unwrap(),
            r#"{"p":7,"k":1,"modulus":[0,1],"m":3,"xi":[2]}"#
        );
    }

    #[test]
    fn degree_two_needed_for_cube_roots_mod_five() {
        let spec = build_field(5, 3).unwrap();
        assert_eq!(spec.k, 2);
        assert!(is_irreducible(&spec.modulus, 5));
    }

    #[test]
    fn trivial_root() {
        let spec = build_field(7, 1).unwrap();
        assert_eq!(spec.k, 1);
        assert_eq!(spec.xi, vec![1]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(build_field(9, 2), Err(FieldError::NotPrime(9)));
        assert_eq!(build_field(3, 3), Err(FieldError::CharacteristicDividesM { p: 3, m: 3 }));
    }

    #[test]
    fn xi_has_exact_order_and_orthogonality() {
        for (p, m) in [(7u64, 3u32), (5, 3), (7, 8), (11, 5), (2, 3), (5, 6)] {
            let f = GaloisField::new(p, minimal_degree(p, m), m).unwrap();
            let xi = f.xi_pow(1);
            assert_eq!(f.mult_order(xi), m as u64);
            for j in 0..(2 * m as i64) {
                let mut s = f.zero();
                for k in 0..m as i64 {
                    s = f.add(&s, &f.xi_pow(j * k));
                }
                let expected = if j % m as i64 == 0 { f.from_i64(m as i64) } else { f.zero() };
                assert_eq!(s, expected, "p={p} m={m} j={j}");
            }
        }
    }

    #[test]
    fn generic_field_is_large() {
        let f = GaloisField::for_generic(7, 4).unwrap();
        assert!(f.order() >= GENERIC_MIN_ORDER);
        assert_eq!(f.degree() % 2, 0);
        assert_eq!(f.mult_order(f.xi_pow(1)), 4);
    }
}
