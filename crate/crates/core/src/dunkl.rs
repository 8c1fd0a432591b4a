//! Cherednik parameters and Dunkl operators on `Sym(h*) ⊗ τ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, GaloisField};
use crate::group::{ClassLabel, GroupSpec, Reflection};
use crate::param::{specialization_point, ParamField, RatFunc};
use crate::poly::{Poly, VermaVector};
use crate::rep::{GradedRep, Matrix, RepError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DunklError {
    #[error("vector is not homogeneous")]
    NonHomogeneous,
    #[error("(1 - s) f is not divisible by alpha_s for reflection {0}")]
    DivisionFailure(usize),
    #[error("hbar must be 0 or 1, got {0}")]
    InvalidHbar(u8),
    #[error("parameter labels {given:?} do not match the reflection classes {expected:?}")]
    LabelMismatch { given: Vec<String>, expected: Vec<String> },
    #[error("word length {word} differs from degree {degree}")]
    LengthMismatch { word: usize, degree: u32 },
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    Symbolic,
    Specialized,
}

/// `ħ` and one parameter per reflection class.
#[derive(Clone, Debug)]
pub struct CherednikParams<E> {
    pub hbar: u8,
    pub values: BTreeMap<ClassLabel, E>,
    pub mode: ParamMode,
    pub seed: Option<u64>,
}

impl<E: Clone> CherednikParams<E> {
    pub fn new(group: &GroupSpec, hbar: u8, values: BTreeMap<ClassLabel, E>, mode: ParamMode) -> Result<Self, DunklError> {
        if hbar > 1 {
            return Err(DunklError::InvalidHbar(hbar));
        }
        let expected = group.class_labels();
        let given: Vec<ClassLabel> = values.keys().copied().collect();
        let mut sorted = expected.clone();
        sorted.sort();
        if given != sorted {
            return Err(DunklError::LabelMismatch {
                given: given.iter().map(|c| c.name()).collect(),
                expected: expected.iter().map(|c| c.name()).collect(),
            });
        }
        Ok(CherednikParams {
            hbar,
            values,
            mode,
            seed: None,
        })
    }

    pub fn get(&self, c: ClassLabel) -> &E {
        &self.values[&c]
    }
}

impl CherednikParams<crate::field::Fq> {
    /// Independent pseudo-random nonzero values, one per class, from `seed`.
    pub fn specialized(f: &GaloisField, group: &GroupSpec, hbar: u8, seed: u64) -> Result<Self, DunklError> {
        let labels = group.class_labels();
        let point = specialization_point(f, labels.len(), seed);
        let mut p = Self::new(group, hbar, labels.into_iter().zip(point).collect(), ParamMode::Specialized)?;
        p.seed = Some(seed);
        Ok(p)
    }
}

/// Conventional parameter names: `c`, `d` for the two dihedral classes
/// (odd and even `k`), class names otherwise.
pub fn parameter_names(group: &GroupSpec) -> Vec<String> {
    group
        .class_labels()
        .iter()
        .map(|c| match c {
            ClassLabel::SOdd => "c".to_string(),
            ClassLabel::SEven => "d".to_string(),
            ClassLabel::S => "c".to_string(),
            other => other.name(),
        })
        .collect()
}

impl CherednikParams<RatFunc> {
    /// Every class parameter an independent indeterminate.
    pub fn symbolic(pf: &ParamField, group: &GroupSpec, hbar: u8) -> Result<Self, DunklError> {
        let labels = group.class_labels();
        let values = labels.iter().enumerate().map(|(i, l)| (*l, pf.param(i))).collect();
        Self::new(group, hbar, values, ParamMode::Symbolic)
    }
}

/// Precomputed reflection data for one `(G, τ, c)`.
pub struct DunklEngine<'a, F: Field> {
    pub f: &'a F,
    pub group: GroupSpec,
    pub dim: usize,
    pub hbar: F::Elem,
    refls: Vec<ReflData<F::Elem>>,
}

struct ReflData<E> {
    refl: Reflection,
    alpha: Poly<E>,
    lead: usize,
    /// `c_s * (y_i, alpha_s)` for each `i`.
    weights: Vec<E>,
    tau: Matrix<E>,
}

impl<'a, F: Field> DunklEngine<'a, F> {
    pub fn new(f: &'a F, group: &GroupSpec, rep: &GradedRep<F::Elem>, params: &CherednikParams<F::Elem>) -> Self {
        let refls = group
            .reflections()
            .into_iter()
            .map(|s| {
                let c = params.get(s.class).clone();
                let weights = s.alpha(f, group).iter().map(|a| f.mul(&c, a)).collect();
                ReflData {
                    alpha: s.alpha_poly(f, group),
                    lead: s.lead_variable(),
                    weights,
                    tau: rep.matrix(f, group, &s.element),
                    refl: s,
                }
            })
            .collect();
        DunklEngine {
            f,
            group: *group,
            dim: rep.dim,
            hbar: f.from_i64(params.hbar as i64),
            refls,
        }
    }

    pub fn nvars(&self) -> usize {
        self.group.n
    }

    /// `(p - s p) / alpha_s`.
    pub fn divided_difference(&self, idx: usize, p: &Poly<F::Elem>) -> Result<Poly<F::Elem>, DunklError> {
        let f = self.f;
        let r = &self.refls[idx];
        let diff = p.sub(f, &self.group.act_poly(f, &r.refl.element, p));
        diff.div_linear(f, r.lead, &r.alpha)
            .map_err(|_| DunklError::DivisionFailure(idx))
    }

    /// `D_1 v, ..., D_n v` at once.
    pub fn apply_all(&self, v: &VermaVector<F::Elem>) -> Result<Vec<VermaVector<F::Elem>>, DunklError> {
        let f = self.f;
        let n = self.nvars();
        if !v.is_homogeneous() {
            return Err(DunklError::NonHomogeneous);
        }
        let mut out = vec![VermaVector::zero(n, self.dim); n];
        if v.is_zero() || v.homogeneous_degree() == Some(0) {
            return Ok(out);
        }
        if !f.is_zero(&self.hbar) {
            for (i, o) in out.iter_mut().enumerate() {
                for (j, p) in v.components.iter().enumerate() {
                    o.components[j].add_scaled(f, &self.hbar, &p.derivative(f, i));
                }
            }
        }
        for (idx, r) in self.refls.iter().enumerate() {
            for (j, p) in v.components.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let q = self.divided_difference(idx, p)?;
                if q.is_zero() {
                    continue;
                }
                // q ⊗ s e_j = sum_l tau[l][j] q ⊗ e_l
                for l in 0..self.dim {
                    let t = &r.tau[l][j];
                    if f.is_zero(t) {
                        continue;
                    }
                    for (i, o) in out.iter_mut().enumerate() {
                        let w = &r.weights[i];
                        if f.is_zero(w) {
                            continue;
                        }
                        let coef = f.neg(&f.mul(w, t));
                        o.components[l].add_scaled(f, &coef, &q);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `D_i v`.
    pub fn apply(&self, i: usize, v: &VermaVector<F::Elem>) -> Result<VermaVector<F::Elem>, DunklError> {
        Ok(self.apply_all(v)?.swap_remove(i))
    }

    /// `φ` applied to the degree-zero part of `D_{w_d} ... D_{w_1} v`.
    pub fn beta_pairing(&self, v: &VermaVector<F::Elem>, word: &[usize], phi: &[F::Elem]) -> Result<F::Elem, DunklError> {
        let f = self.f;
        let degree = v.homogeneous_degree().unwrap_or(0);
        if !v.is_zero() && word.len() != degree as usize {
            return Err(DunklError::LengthMismatch {
                word: word.len(),
                degree,
            });
        }
        let mut cur = v.clone();
        for &i in word {
            cur = self.apply(i, &cur)?;
        }
        let one = crate::poly::Monomial::one(self.nvars());
        Ok(cur
            .components
            .iter()
            .zip(phi)
            .fold(f.zero(), |acc, (p, a)| f.add(&acc, &f.mul(&p.coeff(f, &one), a))))
    }

    /// Commutator identity check: `D_i(x_j v) - x_j D_i(v)` against
    /// `ħ δ_ij v - Σ_s c_s (y_i, α_s)(α_s^∨, x_j) s·v`.
    pub fn commutator_defect(&self, i: usize, j: usize, v: &VermaVector<F::Elem>) -> Result<VermaVector<F::Elem>, DunklError> {
        let f = self.f;
        let n = self.nvars();
        let xj = Poly::var(f, j, n);
        let lhs = self
            .apply(i, &v.mul_poly(f, &xj))?
            .sub(f, &self.apply(i, v)?.mul_poly(f, &xj));
        let mut rhs = if i == j {
            v.scale(f, &self.hbar)
        } else {
            VermaVector::zero(n, self.dim)
        };
        for r in &self.refls {
            let cor = r.refl.coroot(f, &self.group);
            let coef = f.mul(&r.weights[i], &cor[j]);
            if f.is_zero(&coef) {
                continue;
            }
            let sv = crate::rep::act_vector_with(f, &self.group, &r.refl.element, &r.tau, v);
            rhs.add_scaled(f, &f.neg(&coef), &sv);
        }
        Ok(lhs.sub(f, &rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::poly::Monomial;
    use crate::rep::builtin_rep;

    fn dihedral(m: u32, p: u64) -> (GaloisField, GroupSpec) {
        let f = GaloisField::minimal(p, m).unwrap();
        let g = GroupSpec::new(m, m, 2).unwrap().in_field(f.root_order()).unwrap();
        (f, g)
    }

    fn params(f: &GaloisField, g: &GroupSpec, vals: &[i64]) -> CherednikParams<crate::Fq> {
        let labels = g.class_labels();
        CherednikParams::new(
            g,
            0,
            labels.into_iter().zip(vals.iter().map(|&v| f.from_i64(v))).collect(),
            ParamMode::Specialized,
        )
        .unwrap()
    }

    fn mono(f: &GaloisField, e: &[u16], dim: usize, j: usize) -> VermaVector<crate::Fq> {
        VermaVector::pure(Poly::term(f, Monomial::from_slice(e), f.one()), j, dim)
    }

    #[test]
    fn dihedral_power_of_x() {
        // m = 6: c (odd class) = 2, d (even class) = 5
        let (f, g) = dihedral(6, 13);
        let triv = GradedRep::trivial();
        let prm = params(&f, &g, &[5, 2]);
        let e = DunklEngine::new(&f, &g, &triv, &prm);
        let factor = f.from_i64(-3 * (2 + 5));
        for s in 1..=3u16 {
            let got = e.apply(0, &mono(&f, &[s, 0], 1, 0)).unwrap();
            let want = mono(&f, &[s - 1, 0], 1, 0).scale(&f, &factor);
            assert_eq!(got, want, "s = {s}");
        }
        // odd m: valid for all s <= m
        let (f, g) = dihedral(5, 11);
        let prm = params(&f, &g, &[4]);
        let e = DunklEngine::new(&f, &g, &triv, &prm);
        let factor = f.div(&f.from_i64(-5 * 8), &f.from_i64(2));
        for s in 1..=5u16 {
            let got = e.apply(0, &mono(&f, &[s, 0], 1, 0)).unwrap();
            assert_eq!(got, mono(&f, &[s - 1, 0], 1, 0).scale(&f, &factor), "s = {s}");
        }
    }

    #[test]
    fn rho1_example() {
        let (f, g) = dihedral(6, 13);
        let rho = builtin_rep(&f, &g, "rho:1").unwrap();
        let prm = params(&f, &g, &[5, 2]);
        let e = DunklEngine::new(&f, &g, &rho, &prm);
        let got = e.apply(0, &mono(&f, &[3, 0], 2, 1)).unwrap();
        let want = mono(&f, &[1, 1], 2, 0).scale(&f, &f.from_i64(-3 * 7));
        assert_eq!(got, want);
    }

    #[test]
    fn gmmn_last_variable() {
        // G(m,m,n): D_n(x_n^s) = -c (n-1) m x_n^{s-1}
        let f = GaloisField::minimal(13, 4).unwrap();
        let g = GroupSpec::new(4, 4, 3).unwrap().in_field(f.root_order()).unwrap();
        let prm = params(&f, &g, &[3]);
        let e = DunklEngine::new(&f, &g, &GradedRep::trivial(), &prm);
        for s in 1..=4u16 {
            let got = e.apply(2, &mono(&f, &[0, 0, s], 1, 0)).unwrap();
            let want = mono(&f, &[0, 0, s - 1], 1, 0).scale(&f, &f.from_i64(-3 * 2 * 4));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn invariants_are_killed() {
        let (f, g) = dihedral(4, 13);
        let prm = params(&f, &g, &[2, 7]);
        let e = DunklEngine::new(&f, &g, &GradedRep::trivial(), &prm);
        let inv = VermaVector::pure(Poly::from_int_terms(&f, 2, &[(&[4, 0], 1), (&[0, 4], 1)]), 0, 1);
        for v in e.apply_all(&inv).unwrap() {
            assert!(v.is_zero());
        }
        assert!(e.apply(0, &mono(&f, &[0, 0], 1, 0)).unwrap().is_zero());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let (f, g) = dihedral(3, 7);
        let prm = params(&f, &g, &[2]);
        let e = DunklEngine::new(&f, &g, &GradedRep::trivial(), &prm);
        let v = VermaVector::pure(Poly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[0, 0], 1)]), 0, 1);
        assert_eq!(e.apply(0, &v), Err(DunklError::NonHomogeneous));
        assert!(CherednikParams::<crate::Fq>::new(&g, 2, BTreeMap::new(), ParamMode::Specialized).is_err());
    }

    #[test]
    fn beta_on_dihedral_top() {
        // m = 5 odd, c = 4: (-(m/2)(2c))^m = (-20)^5
        let (f, g) = dihedral(5, 11);
        let prm = params(&f, &g, &[4]);
        let e = DunklEngine::new(&f, &g, &GradedRep::trivial(), &prm);
        let v = mono(&f, &[5, 0], 1, 0);
        let b = e.beta_pairing(&v, &[0; 5], &[f.one()]).unwrap();
        assert_eq!(b, f.pow(&f.from_i64(-20), 5));
        assert_eq!(
            e.beta_pairing(&mono(&f, &[0, 0], 1, 0), &[], &[f.from_i64(5)]).unwrap(),
            f.from_i64(5)
        );
        assert!(e.beta_pairing(&v, &[0; 3], &[f.one()]).is_err());
    }

    #[test]
    fn beta_on_dihedral_rho_socle() {
        // m = 6, c = 2 (odd class), d = 5 (even class)
        let (f, g) = dihedral(6, 13);
        let prm = params(&f, &g, &[5, 2]);
        let phi = |k: usize| {
            let mut v = vec![f.zero(); 2];
            v[k] = f.one();
            v
        };
        let rho1 = builtin_rep(&f, &g, "rho:1").unwrap();
        let e = DunklEngine::new(&f, &g, &rho1, &prm);
        let b = e.beta_pairing(&mono(&f, &[2, 0], 2, 1), &[0, 0], &phi(1)).unwrap();
        assert_eq!(b, f.from_i64(-9 * 7 * 7));
        // rho_{m/2-1}: the nonzero socle vector is x^2 ⊗ e_1 in this basis
        let rho2 = builtin_rep(&f, &g, "rho:2").unwrap();
        let e = DunklEngine::new(&f, &g, &rho2, &prm);
        let b = e.beta_pairing(&mono(&f, &[2, 0], 2, 0), &[0, 0], &phi(0)).unwrap();
        assert_eq!(b, f.from_i64(-9 * 3 * 3));
        assert_eq!(e.beta_pairing(&mono(&f, &[2, 0], 2, 1), &[0, 0], &phi(1)).unwrap(), f.zero());
    }

    #[test]
    fn beta_on_gamma_zero_top() {
        // φ = <e_1, -> for the invariant form: φ(e_1) = 2, φ(e_2) = -1
        for (m, p) in [(2u32, 7u64), (3, 7), (4, 13)] {
            let f = GaloisField::minimal(p, m).unwrap();
            let g = GroupSpec::new(m, m, 3).unwrap().in_field(f.root_order()).unwrap();
            let prm = params(&f, &g, &[3]);
            let rep = builtin_rep(&f, &g, "gamma:0").unwrap();
            let e = DunklEngine::new(&f, &g, &rep, &prm);
            let v = mono(&f, &[0, 0, 2 * m as u16], 2, 0);
            let word = vec![2; 2 * m as usize];
            let b = e.beta_pairing(&v, &word, &[f.from_i64(2), f.from_i64(-1)]).unwrap();
            let mc = f.pow(&f.from_i64(3 * m as i64), 2 * m as u64);
            let sign = if m % 2 == 0 { 2 } else { -2 };
            assert_eq!(b, f.mul(&f.from_i64(sign), &mc), "m = {m}");
        }
    }

    #[test]
    fn commutator_identity() {
        let f = GaloisField::minimal(13, 4).unwrap();
        let g = GroupSpec::new(4, 2, 2).unwrap().in_field(f.root_order()).unwrap();
        let labels = g.class_labels();
        let vals: Vec<i64> = (0..labels.len() as i64).map(|k| 2 + 3 * k).collect();
        for hbar in [0u8, 1] {
            let prm = CherednikParams::new(
                &g,
                hbar,
                labels.iter().copied().zip(vals.iter().map(|&v| f.from_i64(v))).collect(),
                ParamMode::Specialized,
            )
            .unwrap();
            let rep = builtin_rep(&f, &g, "rho:1").unwrap();
            let e = DunklEngine::new(&f, &g, &rep, &prm);
            let v = VermaVector::from_components(vec![
                Poly::from_int_terms(&f, 2, &[(&[2, 1], 1), (&[0, 3], 4)]),
                Poly::from_int_terms(&f, 2, &[(&[3, 0], 5), (&[1, 2], 1)]),
            ]);
            for i in 0..2 {
                for j in 0..2 {
                    assert!(e.commutator_defect(i, j, &v).unwrap().is_zero(), "{hbar} {i} {j}");
                }
            }
        }
    }
}
