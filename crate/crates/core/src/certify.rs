//! Irreducibility certificate for a graded quotient `N = M / J'`:
//! socle in top degree, socle irreducible under `G`, and `β` nonzero on it.

use serde::{Deserialize, Serialize};

use crate::dunkl::DunklEngine;
use crate::field::Field;
use crate::group::GroupSpec;
use crate::linalg::{kernel_basis, SpanCoordinates};
use crate::lmodule::{LError, LModule, LStatus, QuotientSlice};
use crate::poly::{Poly, VermaVector};
use crate::rep::{act_vector_with, hom_dim, is_modular, GradedRep, Matrix, RepError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BetaWitness {
    pub degree: u32,
    pub vector: String,
    pub word: Vec<usize>,
    pub phi_index: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub socle_top: bool,
    /// `(degree, dimension)` of every nonzero socle component.
    pub socle_dims: Vec<(u32, usize)>,
    /// `None` when `p` divides `|G|`.
    pub socle_irred: Option<bool>,
    pub end_dim: Option<usize>,
    pub beta_nonzero: bool,
    pub witness: Option<BetaWitness>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.socle_top && self.socle_irred == Some(true) && self.beta_nonzero
    }
}

/// Matrices of the group generators on `M_d / J_d` in the representative basis.
pub fn quotient_group_matrices<F: Field>(
    f: &F,
    group: &GroupSpec,
    rep: &GradedRep<F::Elem>,
    slice: &QuotientSlice<F::Elem>,
) -> Vec<Matrix<F::Elem>> {
    let reps = slice.representatives(f);
    group
        .generators()
        .iter()
        .map(|g| {
            let tau_g = rep.matrix(f, group, g);
            let cols: Vec<Vec<F::Elem>> = reps
                .iter()
                .map(|v| slice.project(f, &act_vector_with(f, group, g, &tau_g, v)))
                .collect();
            transpose(f, &cols, slice.dim())
        })
        .collect()
}

fn transpose<F: Field>(f: &F, cols: &[Vec<F::Elem>], nrows: usize) -> Matrix<F::Elem> {
    (0..nrows)
        .map(|r| cols.iter().map(|c| c.get(r).cloned().unwrap_or_else(|| f.zero())).collect())
        .collect()
}

/// Basis (in quotient coordinates) of `{v ∈ N_d : x_i v = 0 for all i}`.
pub fn socle_slice<F: Field>(f: &F, cur: &QuotientSlice<F::Elem>, next: Option<&QuotientSlice<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let l = cur.dim();
    let Some(next) = next.filter(|s| s.dim() > 0) else {
        return crate::linalg::identity(f, l);
    };
    let n = cur.coords.basis.nvars;
    let reps = cur.representatives(f);
    let mut rows = Vec::new();
    for i in 0..n {
        let xi = Poly::var(f, i, n);
        let cols: Vec<Vec<F::Elem>> = reps.iter().map(|v| next.project(f, &v.mul_poly(f, &xi))).collect();
        rows.extend(transpose(f, &cols, next.dim()));
    }
    kernel_basis(f, &rows, l).expect("rectangular")
}

/// Checks the three conditions on `n`. `truth` is the computed irreducible
/// quotient, used to find a `β` witness by descent through `J`.
pub fn certify_irreducible<F: Field>(
    engine: &DunklEngine<'_, F>,
    rep: &GradedRep<F::Elem>,
    n: &LModule<F::Elem>,
    truth: &LModule<F::Elem>,
) -> Result<Certificate, LError> {
    let f = engine.f;
    let group = &engine.group;
    if n.status != LStatus::Complete {
        return Err(LError::NotComputed(n.cap + 1));
    }
    let top = n.top_degree().unwrap_or(0);
    let mut socle: Vec<(u32, Vec<Vec<F::Elem>>)> = Vec::new();
    for d in 0..=top {
        let s = socle_slice(f, &n.slices[d as usize], n.slices.get(d as usize + 1));
        if !s.is_empty() {
            socle.push((d, s));
        }
    }
    let socle_dims: Vec<(u32, usize)> = socle.iter().map(|(d, s)| (*d, s.len())).collect();
    let socle_top = socle_dims.iter().all(|(d, _)| *d == top);
    let mut notes = Vec::new();

    let p = f.characteristic();
    let (socle_irred, end_dim) = if is_modular(p, group) {
        notes.push(RepError::ModularCharacteristic { p, order: group.order() }.to_string());
        (None, None)
    } else {
        let mats = socle_group_matrices(f, group, rep, n, &socle)?;
        let total: usize = socle_dims.iter().map(|(_, k)| k).sum();
        let e = hom_dim(f, &mats, total, &mats, total);
        (Some(e == 1), Some(e))
    };

    let mut witness = None;
    'outer: for (d, basis) in &socle {
        let slice = &n.slices[*d as usize];
        for q in basis {
            let v = slice.lift(f, q);
            if let Some(w) = beta_witness(engine, truth, &v)? {
                witness = Some(w);
                break 'outer;
            }
        }
    }
    Ok(Certificate {
        socle_top,
        socle_dims,
        socle_irred,
        end_dim,
        beta_nonzero: witness.is_some(),
        witness,
        notes,
    })
}

fn socle_group_matrices<F: Field>(
    f: &F,
    group: &GroupSpec,
    rep: &GradedRep<F::Elem>,
    n: &LModule<F::Elem>,
    socle: &[(u32, Vec<Vec<F::Elem>>)],
) -> Result<Vec<Matrix<F::Elem>>, LError> {
    let total: usize = socle.iter().map(|(_, s)| s.len()).sum();
    let ngens = group.generators().len();
    let mut out = vec![vec![vec![f.zero(); total]; total]; ngens];
    let mut offset = 0;
    for (d, basis) in socle {
        let q = quotient_group_matrices(f, group, rep, &n.slices[*d as usize]);
        let span = SpanCoordinates::new(f, basis.clone()).ok_or(RepError::NotGStable)?;
        for (gi, m) in q.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                let img: Vec<F::Elem> = m
                    .iter()
                    .map(|row| row.iter().zip(b).fold(f.zero(), |a, (x, y)| f.add(&a, &f.mul(x, y))))
                    .collect();
                let c = span.express(f, &img).ok_or(RepError::NotGStable)?;
                for (r, x) in c.into_iter().enumerate() {
                    out[gi][offset + r][offset + k] = x;
                }
            }
        }
        offset += basis.len();
    }
    Ok(out)
}

/// A Dunkl word and a coordinate functional with `β(v, word ⊗ φ) ≠ 0`, found
/// by choosing at each step an operator whose image leaves `J`.
pub fn beta_witness<F: Field>(
    engine: &DunklEngine<'_, F>,
    truth: &LModule<F::Elem>,
    v: &VermaVector<F::Elem>,
) -> Result<Option<BetaWitness>, LError> {
    let f = engine.f;
    let Some(degree) = v.homogeneous_degree() else {
        return Ok(None);
    };
    if truth.kernel_membership(f, v)? {
        return Ok(None);
    }
    let mut cur = v.clone();
    let mut word = Vec::new();
    for d in (1..=degree).rev() {
        let below = truth.slice(d - 1)?;
        let imgs = engine.apply_all(&cur)?;
        let Some(i) = imgs.iter().position(|w| !below.contains(f, w)) else {
            return Ok(None);
        };
        word.push(i);
        cur = imgs[i].clone();
    }
    let one = crate::poly::Monomial::one(engine.nvars());
    let vals: Vec<F::Elem> = cur.components.iter().map(|p| p.coeff(f, &one)).collect();
    let Some(j) = vals.iter().position(|x| !f.is_zero(x)) else {
        return Ok(None);
    };
    let mut phi = vec![f.zero(); vals.len()];
    phi[j] = f.one();
    let value = engine.beta_pairing(v, &word, &phi)?;
    debug_assert_eq!(value, vals[j]);
    Ok(Some(BetaWitness {
        degree,
        vector: v.format(f),
        word,
        phi_index: j,
        value: f.format_elem(&value),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::lmodule::compute_l_specialized;
    use crate::poly::Monomial;

    fn certify(m: u32, r: u32, n: usize, p: u64, tau: &str) -> Certificate {
        let f = GaloisField::for_generic(p, m).unwrap();
        let run = compute_l_specialized(&f, &GroupSpec::new(m, r, n).unwrap(), tau, 0, &[11, 12, 13], None).unwrap();
        let e = DunklEngine::new(&run.field, &run.group, &run.rep, &run.params);
        certify_irreducible(&e, &run.rep, &run.module, &run.module).unwrap()
    }

    #[test]
    fn dihedral_certified() {
        for (m, p) in [(3, 5), (4, 7), (5, 7)] {
            let c = certify(m, m, 2, p, "trivial");
            assert!(c.passed(), "{m} {p}: {c:?}");
            assert_eq!(c.socle_dims, vec![(m, 1)]);
        }
        let c = certify(6, 6, 2, 7, "rho:2");
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.socle_dims, vec![(2, 2)]);
    }

    #[test]
    fn modular_condition_not_decided() {
        let c = certify(3, 3, 2, 2, "trivial");
        assert!(c.socle_top && c.beta_nonzero);
        assert_eq!(c.socle_irred, None);
        assert!(!c.passed());
    }

    #[test]
    fn too_small_submodule_fails_socle_condition() {
        // J' = <x^2 y, x y^2, x^4, y^4> is G-stable and inside J = <xy, x^3 + y^3>,
        // but xy survives as a socle vector below the top degree
        let f = GaloisField::for_generic(7, 3).unwrap();
        let g = GroupSpec::new(3, 3, 2).unwrap();
        let run = compute_l_specialized(&f, &g, "trivial", 0, &[1], None).unwrap();
        let e = DunklEngine::new(&run.field, &run.group, &run.rep, &run.params);
        let mono = |a: u16, b: u16| VermaVector::pure(Poly::term(&f, Monomial::from_slice(&[a, b]), f.one()), 0, 1);
        let gens = vec![mono(2, 1), mono(1, 2), mono(4, 0), mono(0, 4)];
        let n = LModule::from_generators(&f, &run.group, "trivial", 1, &gens, 10).unwrap();
        assert_eq!(n.dims(), vec![1, 2, 3, 2]);
        let c = certify_irreducible(&e, &run.rep, &n, &run.module).unwrap();
        assert!(!c.socle_top);
        assert_eq!(c.socle_dims, vec![(2, 1), (3, 2)]);
        assert_eq!(c.socle_irred, Some(false));
        assert!(!c.passed());
        let n2 = LModule::from_generators(&f, &run.group, "trivial", 1, &gens[..1], 3).unwrap();
        assert_eq!(n2.status, LStatus::TruncatedAtCap);
    }
}
