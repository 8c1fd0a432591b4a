//! Comparison of `L` for `G(m,r,n)` on a pulled-back representation with
//! `L` for `G(r,r,n)`: `h(t) = h¹(t^q) (1 + t + ... + t^{q-1})^n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dunkl::{CherednikParams, DunklEngine, ParamMode};
use crate::field::{Field, GaloisField};
use crate::group::{ClassLabel, GroupSpec};
use crate::lmodule::{compute_l_specialized, LError};
use crate::poly::{MonomialBasis, Poly, VermaVector};
use crate::rep::builtin_rep;
use crate::series::{geometric, substitute_power, tpoly_mul, tpoly_pow, TPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegenerationReport {
    pub q: u32,
    pub h1: TPoly,
    pub h: TPoly,
    pub predicted: TPoly,
    pub equal: bool,
    pub lemma_checks: usize,
    pub lemma_ok: bool,
}

/// `τ'` names a representation of `G(r,r,n)`; `G(m,r,n)` acts through the
/// `q`-th power map.
pub fn verify_degeneration(m: u32, r: u32, n: usize, tau: &str, p: u64, seeds: &[u64]) -> Result<DegenerationReport, LError> {
    let field = GaloisField::for_generic(p, m)?;
    let big = GroupSpec::new(m, r, n)?;
    let small = GroupSpec::new(r, r, n)?;
    let q = m / r;
    let pulled = if q == 1 { tau.to_string() } else { format!("pullback:{tau}") };
    let h1 = compute_l_specialized(&field, &small, tau, 0, seeds, None)?
        .module
        .hilbert()
        .trimmed();
    let run = compute_l_specialized(&field, &big, &pulled, 0, seeds, None)?;
    let h = run.module.hilbert().trimmed();
    let predicted = tpoly_mul(&substitute_power(&h1, q), &tpoly_pow(&geometric(q), n as u32));
    let (lemma_checks, lemma_ok) = lemma_spot_check(&field, m, r, n, tau, seeds.first().copied().unwrap_or(0))?;
    Ok(DegenerationReport {
        q,
        equal: h == predicted,
        h1,
        h,
        predicted,
        lemma_checks,
        lemma_ok,
    })
}

/// Number of random `f' ⊗ v` tested by [`lemma_spot_check`].
pub const LEMMA_SAMPLES: usize = 20;

/// For random `f'` and basis vectors `v`, checks
/// `D_i(f'(x^q) ⊗ v) = q x_i^{q-1} (D'_i(f' ⊗ v))(x^q)`.
pub fn lemma_spot_check(field: &GaloisField, m: u32, r: u32, n: usize, tau: &str, seed: u64) -> Result<(usize, bool), LError> {
    let f = field;
    let root = f.root_order();
    let big = GroupSpec::new(m, r, n)?.in_field(root)?;
    let small = GroupSpec::new(r, r, n)?.in_field(root)?;
    let q = m / r;
    let pulled = if q == 1 { tau.to_string() } else { format!("pullback:{tau}") };
    let rep = builtin_rep(f, &big, &pulled)?;
    let rep1 = builtin_rep(f, &small, tau)?;
    let params = CherednikParams::specialized(f, &big, 0, seed)?;
    let values = small
        .class_labels()
        .into_iter()
        .map(|c: ClassLabel| (c, *params.get(c)))
        .collect();
    let params1 = CherednikParams::new(&small, 0, values, ParamMode::Specialized)?;
    let d = DunklEngine::new(f, &big, &rep, &params);
    let d1 = DunklEngine::new(f, &small, &rep1, &params1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    while checks < LEMMA_SAMPLES {
        let deg = rng.gen_range(1..=3u32);
        let j = rng.gen_range(0..rep.dim);
        let mut fp = Poly::zero(n);
        for mono in &MonomialBasis::new(n, deg).monomials {
            if rng.gen_bool(0.6) {
                fp.add_term(f, mono.clone(), f.random_nonzero(&mut rng));
            }
        }
        if fp.is_zero() {
            continue;
        }
        checks += 1;
        let v1 = VermaVector::pure(fp, j, rep.dim);
        let v = v1.power_substitute(q as u16);
        let lhs = d.apply_all(&v)?;
        let rhs1 = d1.apply_all(&v1)?;
        let scale = f.from_i64(q as i64);
        for i in 0..n {
            let xi = Poly::var(f, i, n).pow(f, q - 1).scale(f, &scale);
            if lhs[i] != rhs1[i].power_substitute(q as u16).mul_poly(f, &xi) {
                return Ok((checks, false));
            }
        }
    }
    Ok((checks, true))
}
