//! The irreducible quotient `L = M / J`, computed slice by slice.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dunkl::{parameter_names, CherednikParams, DunklEngine, DunklError};
use crate::field::{Field, FieldError, GaloisField};
use crate::group::GroupSpec;
use crate::linalg::{kernel_basis, rref, EchelonBasis};
use crate::param::{ParamError, ParamField, RatFunc};
use crate::poly::{SliceCoords, VermaVector};
use crate::rep::{builtin_rep, GradedRep, RepError};
use crate::series::GradedSeries;
use crate::slice::{SliceBasis, SliceError, SubmoduleSlices};

#[derive(Debug, Error)]
pub enum LError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Dunkl(#[from] DunklError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error("specializations disagree: {0:?}")]
    SpecializationDisagreement(Vec<Vec<usize>>),
    #[error("degree {0} lies beyond the computed slices")]
    NotComputed(u32),
    #[error("at least one seed is required")]
    NoSeeds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LStatus {
    Complete,
    TruncatedAtCap,
}

/// One degree of a graded quotient `M_d / J_d`.
///
/// `proj[c]` holds the quotient coordinates of basis column `c`; the basis
/// vectors at `reps` map to the unit vectors, so they are coset
/// representatives of a quotient basis.
#[derive(Clone, Debug)]
pub struct QuotientSlice<E> {
    pub coords: SliceCoords,
    pub proj: Vec<Vec<E>>,
    pub reps: Vec<usize>,
}

impl<E: Clone + PartialEq> QuotientSlice<E> {
    /// Quotient map given by the rows of an RREF matrix with pivots `pivots`.
    pub fn from_rref(coords: SliceCoords, rows: &[Vec<E>], pivots: Vec<usize>) -> Self {
        let n = coords.len();
        let proj = (0..n).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
        QuotientSlice {
            coords,
            proj,
            reps: pivots,
        }
    }

    /// Quotient by a subspace; representatives are its free columns.
    pub fn from_subspace<F: Field<Elem = E>>(f: &F, s: &SliceBasis<E>) -> Self {
        let free = s.basis.free_columns();
        let mut proj = vec![vec![f.zero(); free.len()]; s.coords.len()];
        for (k, &c) in free.iter().enumerate() {
            proj[c][k] = f.one();
        }
        for (row, &p) in s.basis.rows.iter().zip(&s.basis.pivots) {
            proj[p] = free.iter().map(|&c| f.neg(&row[c])).collect();
        }
        QuotientSlice {
            coords: s.coords.clone(),
            proj,
            reps: free,
        }
    }

    pub fn degree(&self) -> u32 {
        self.coords.degree()
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn project<F: Field<Elem = E>>(&self, f: &F, v: &VermaVector<E>) -> Vec<E> {
        let mut out = vec![f.zero(); self.dim()];
        for (j, p) in v.components.iter().enumerate() {
            for (m, c) in p.terms() {
                let col = &self.proj[self.coords.column(m, j)];
                for (o, x) in out.iter_mut().zip(col) {
                    if !f.is_zero(x) {
                        *o = f.add(o, &f.mul(c, x));
                    }
                }
            }
        }
        out
    }

    pub fn project_dense<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.dim()];
        for (c, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&self.proj[c]) {
                *o = f.add(o, &f.mul(a, x));
            }
        }
        out
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &VermaVector<E>) -> bool {
        self.project(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Representative in `M_d` of a quotient vector.
    pub fn lift<F: Field<Elem = E>>(&self, f: &F, q: &[E]) -> VermaVector<E> {
        let mut dense = vec![f.zero(); self.coords.len()];
        for (&c, a) in self.reps.iter().zip(q) {
            dense[c] = a.clone();
        }
        self.coords.from_dense(f, &dense)
    }

    pub fn representatives<F: Field<Elem = E>>(&self, f: &F) -> Vec<VermaVector<E>> {
        self.reps.iter().map(|&c| self.coords.basis_vector(f, c)).collect()
    }

    /// Echelon basis of the kernel of the quotient map.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> SliceBasis<E> {
        let n = self.coords.len();
        let rows: Vec<Vec<E>> = (0..self.dim())
            .map(|k| (0..n).map(|c| self.proj[c][k].clone()).collect())
            .collect();
        let k = kernel_basis(f, &rows, n).expect("rectangular");
        SliceBasis {
            coords: self.coords.clone(),
            basis: EchelonBasis::from_vectors(f, k, n),
        }
    }
}

/// A graded quotient of `M = Sym(h*) ⊗ τ`, either the irreducible `L` or a
/// candidate `M / J'`.
#[derive(Clone, Debug)]
pub struct LModule<E> {
    pub group: GroupSpec,
    pub tau: String,
    pub hbar: u8,
    pub slices: Vec<QuotientSlice<E>>,
    pub status: LStatus,
    pub cap: u32,
}

impl<E: Clone + PartialEq> LModule<E> {
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.slices.iter().map(|s| s.dim()).collect();
        while d.len() > 1 && d.last() == Some(&0) {
            d.pop();
        }
        d
    }

    pub fn hilbert(&self) -> GradedSeries {
        GradedSeries::from_coeffs(self.dims().iter().map(|&x| x as i64).collect())
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.slices.iter().rposition(|s| s.dim() > 0).map(|d| d as u32)
    }

    pub fn total_dim(&self) -> usize {
        self.slices.iter().map(|s| s.dim()).sum()
    }

    pub fn slice(&self, d: u32) -> Result<&QuotientSlice<E>, LError> {
        self.slices.get(d as usize).ok_or(LError::NotComputed(d))
    }

    pub fn j_slice<F: Field<Elem = E>>(&self, f: &F, d: u32) -> Result<SliceBasis<E>, LError> {
        match self.slices.get(d as usize) {
            Some(s) => Ok(s.kernel(f)),
            None if self.status == LStatus::Complete => {
                let coords = SliceCoords::new(self.group.n, d, self.dim_tau());
                let n = coords.len();
                Ok(SliceBasis {
                    coords,
                    basis: EchelonBasis::full(f, n),
                })
            }
            None => Err(LError::NotComputed(d)),
        }
    }

    pub fn dim_tau(&self) -> usize {
        self.slices[0].coords.dim
    }

    /// Whether homogeneous `v` lies in `J`.
    pub fn kernel_membership<F: Field<Elem = E>>(&self, f: &F, v: &VermaVector<E>) -> Result<bool, LError> {
        if v.is_zero() {
            return Ok(true);
        }
        let d = v.homogeneous_degree().ok_or(DunklError::NonHomogeneous)?;
        match self.slices.get(d as usize) {
            Some(s) => Ok(s.contains(f, v)),
            None if self.status == LStatus::Complete => Ok(true),
            None => Err(LError::NotComputed(d)),
        }
    }

    /// A minimal homogeneous generating set of `J`, degree by degree. For a
    /// complete module all generators lie in degrees up to `top + 1`.
    pub fn minimal_generators<F: Field<Elem = E>>(&self, f: &F) -> Result<Vec<VermaVector<E>>, LError> {
        let n = self.group.n;
        let mut out = Vec::new();
        let mut prev: Vec<VermaVector<E>> = Vec::new();
        for d in 0..self.slices.len() as u32 {
            let j = self.j_slice(f, d)?;
            let mut span = EchelonBasis::empty(j.coords.len());
            for v in &prev {
                for i in 0..n {
                    let xv = v.mul_poly(f, &crate::poly::Poly::var(f, i, n));
                    span.insert(f, &j.coords.to_dense(f, &xv));
                }
            }
            prev = j.vectors(f);
            for v in &prev {
                if span.insert(f, &j.coords.to_dense(f, v)) {
                    out.push(v.clone());
                }
            }
        }
        Ok(out)
    }

    /// `M / J'` for the submodule `J'` generated by homogeneous `gens`,
    /// up to the first vanishing degree or `cap`.
    pub fn from_generators<F: Field<Elem = E>>(
        f: &F,
        group: &GroupSpec,
        tau: &str,
        dim_tau: usize,
        gens: &[VermaVector<E>],
        cap: u32,
    ) -> Result<Self, LError> {
        let mut slices = Vec::new();
        let mut status = LStatus::TruncatedAtCap;
        for s in SubmoduleSlices::new(f, gens, group.n, dim_tau)?.take(cap as usize + 2) {
            let q = QuotientSlice::from_subspace(f, &s);
            let done = q.dim() == 0;
            slices.push(q);
            if done {
                status = LStatus::Complete;
                break;
            }
        }
        Ok(LModule {
            group: *group,
            tau: tau.to_string(),
            hbar: 0,
            slices,
            status,
            cap,
        })
    }
}

/// `Σ (d_i - 1)` over the invariant degrees `m, 2m, ..., (n-1)m, nm/r`,
/// with every `d_i` scaled by `p` when `ħ = 1`.
pub fn default_cap(group: &GroupSpec, hbar: u8, p: u64) -> u32 {
    let scale = if hbar == 1 { p as u32 } else { 1 };
    let mut degrees: Vec<u32> = (1..group.n as u32).map(|j| j * group.m).collect();
    degrees.push(group.n as u32 * group.m / group.r);
    degrees.iter().map(|d| scale * d - 1).sum()
}

/// `J_d = {v ∈ M_d : D_i v ∈ J_{d-1} for all i}`, returned as the quotient
/// map `M_d -> M_d / J_d`.
pub fn compute_j_slice<F: Field>(
    engine: &DunklEngine<'_, F>,
    prev: &QuotientSlice<F::Elem>,
    d: u32,
) -> Result<QuotientSlice<F::Elem>, DunklError> {
    let f = engine.f;
    let n = engine.nvars();
    let coords = SliceCoords::new(n, d, engine.dim);
    let l = prev.dim();
    let ncols = coords.len();
    let columns: Vec<Vec<F::Elem>> = (0..ncols)
        .into_par_iter()
        .map(|c| {
            let imgs = engine.apply_all(&coords.basis_vector(f, c))?;
            Ok(imgs.iter().flat_map(|v| prev.project(f, v)).collect())
        })
        .collect::<Result<_, DunklError>>()?;
    let mut rows: Vec<Vec<F::Elem>> = (0..n * l)
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();
    drop(columns);
    let pivots = rref(f, &mut rows, ncols);
    Ok(QuotientSlice::from_rref(coords, &rows, pivots))
}

/// Degree-zero slice: `J_0 = 0`.
pub fn degree_zero_slice<F: Field>(f: &F, nvars: usize, dim: usize) -> QuotientSlice<F::Elem> {
    let coords = SliceCoords::new(nvars, 0, dim);
    let rows = crate::linalg::identity(f, dim);
    QuotientSlice::from_rref(coords, &rows, (0..dim).collect())
}

/// Iterates `compute_j_slice` until the quotient vanishes or degree `cap`
/// has been computed.
pub fn compute_l<F: Field>(engine: &DunklEngine<'_, F>, tau: &str, hbar: u8, cap: u32) -> Result<LModule<F::Elem>, LError> {
    let f = engine.f;
    let mut slices = vec![degree_zero_slice(f, engine.nvars(), engine.dim)];
    let mut status = LStatus::TruncatedAtCap;
    if engine.dim == 0 {
        status = LStatus::Complete;
    }
    for d in 1..=cap + 1 {
        if status == LStatus::Complete {
            break;
        }
        let s = compute_j_slice(engine, slices.last().expect("nonempty"), d)?;
        if s.dim() == 0 {
            status = LStatus::Complete;
        }
        slices.push(s);
    }
    Ok(LModule {
        group: engine.group,
        tau: tau.to_string(),
        hbar,
        slices,
        status,
        cap,
    })
}

/// One specialized run of `L` over `F_{p^k}`.
pub struct SpecializedRun {
    pub field: GaloisField,
    pub group: GroupSpec,
    pub rep: GradedRep<crate::Fq>,
    pub params: CherednikParams<crate::Fq>,
    pub module: LModule<crate::Fq>,
}

/// Computes `L` at each seed and checks that the graded dimensions agree.
/// Returns the run for the first seed.
pub fn compute_l_specialized(
    field: &GaloisField,
    group: &GroupSpec,
    tau: &str,
    hbar: u8,
    seeds: &[u64],
    cap: Option<u32>,
) -> Result<SpecializedRun, LError> {
    if seeds.is_empty() {
        return Err(LError::NoSeeds);
    }
    let group = group
        .in_field(field.root_order())
        .map_err(|_| FieldError::CharacteristicDividesM {
            p: field.characteristic(),
            m: group.m,
        })?;
    let rep = builtin_rep(field, &group, tau)?;
    let cap = cap.unwrap_or_else(|| default_cap(&group, hbar, field.characteristic()));
    let runs: Vec<(CherednikParams<crate::Fq>, LModule<crate::Fq>)> = seeds
        .par_iter()
        .map(|&seed| {
            let params = CherednikParams::specialized(field, &group, hbar, seed)?;
            let engine = DunklEngine::new(field, &group, &rep, &params);
            let module = compute_l(&engine, tau, hbar, cap)?;
            Ok((params, module))
        })
        .collect::<Result<_, LError>>()?;
    let dims: Vec<Vec<usize>> = runs.iter().map(|(_, l)| l.dims()).collect();
    if dims.windows(2).any(|w| w[0] != w[1]) {
        return Err(LError::SpecializationDisagreement(dims));
    }
    let (params, module) = runs.into_iter().next().expect("nonempty");
    Ok(SpecializedRun {
        field: field.clone(),
        group,
        rep,
        params,
        module,
    })
}

/// `L` over the rational function field in the class parameters.
pub fn compute_l_symbolic(
    base: &GaloisField,
    group: &GroupSpec,
    tau: &str,
    hbar: u8,
    cap: Option<u32>,
) -> Result<(ParamField, LModule<RatFunc>), LError> {
    let group = group
        .in_field(base.root_order())
        .map_err(|_| FieldError::CharacteristicDividesM {
            p: base.characteristic(),
            m: group.m,
        })?;
    let names = parameter_names(&group);
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let pf = ParamField::new(base.clone(), &names)?;
    let rep = builtin_rep(&pf, &group, tau)?;
    let params = CherednikParams::symbolic(&pf, &group, hbar)?;
    let cap = cap.unwrap_or_else(|| default_cap(&group, hbar, base.characteristic()));
    let module = {
        let engine = DunklEngine::new(&pf, &group, &rep, &params);
        compute_l(&engine, tau, hbar, cap)?
    };
    Ok((pf, module))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, Poly};

    const SEEDS: [u64; 3] = [1, 2, 3];

    fn run(m: u32, r: u32, n: usize, p: u64, tau: &str, hbar: u8) -> SpecializedRun {
        let f = GaloisField::for_generic(p, m).unwrap();
        let g = GroupSpec::new(m, r, n).unwrap();
        compute_l_specialized(&f, &g, tau, hbar, &SEEDS, None).unwrap()
    }

    #[test]
    fn dihedral_trivial() {
        let r = run(3, 3, 2, 7, "trivial", 0);
        assert_eq!(r.module.dims(), vec![1, 2, 2, 1]);
        assert_eq!(r.module.status, LStatus::Complete);
        let f = &r.field;
        let inv = VermaVector::pure(Poly::from_int_terms(f, 2, &[(&[3, 0], 1), (&[0, 3], 1)]), 0, 1);
        assert!(r.module.kernel_membership(f, &inv).unwrap());
        let xy = VermaVector::pure(Poly::from_int_terms(f, 2, &[(&[1, 1], 1)]), 0, 1);
        assert!(r.module.kernel_membership(f, &xy).unwrap());
        let one = VermaVector::pure(Poly::one(f, 2), 0, 1);
        assert!(!r.module.kernel_membership(f, &one).unwrap());
        // J_1 = 0
        assert_eq!(r.module.j_slice(f, 1).unwrap().dim(), 0);
        assert_eq!(r.module.j_slice(f, 0).unwrap().dim(), 0);
    }

    #[test]
    fn minimal_generator_degrees() {
        let r = run(3, 3, 2, 7, "rho:1", 0);
        let gens = r.module.minimal_generators(&r.field).unwrap();
        let degs: Vec<u32> = gens.iter().map(|v| v.homogeneous_degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 3, 3]);
    }

    #[test]
    fn dihedral_rho() {
        assert_eq!(run(6, 6, 2, 7, "rho:1", 0).module.dims(), vec![2, 2, 2]);
        assert_eq!(run(4, 4, 2, 5, "rho:1", 0).module.dims(), vec![2, 4, 2]);
        // 1 < i < m/2 - 1: J_1 = M_1
        let r = run(8, 8, 2, 17, "rho:2", 0);
        assert_eq!(r.module.dims(), vec![2]);
        assert_eq!(r.module.j_slice(&r.field, 1).unwrap().dim(), 4);
    }

    #[test]
    fn rank_three_gamma() {
        let r = run(3, 3, 3, 7, "gamma:0", 0);
        let expect = crate::series::tpoly_mul(&[2, 2, 2], &crate::series::tpoly_pow(&crate::series::geometric(3), 2));
        assert_eq!(r.module.hilbert().trimmed(), expect);
    }

    #[test]
    fn wreath_hbar_one() {
        let r = run(2, 1, 2, 7, "trivial", 1);
        let closed = crate::series::ClosedForm {
            numerator: crate::series::tpoly_mul(&crate::series::one_minus_t_pow(14), &crate::series::one_minus_t_pow(28)),
            denominator: vec![1, 1],
        };
        assert_eq!(r.module.hilbert().trimmed(), closed.simplify().numerator);
        assert_eq!(r.module.total_dim(), 8 * 49);
        assert_eq!(default_cap(&GroupSpec::new(2, 1, 2).unwrap(), 1, 7), 13 + 27);
    }

    #[test]
    fn symbolic_agrees() {
        let base = GaloisField::minimal(7, 3).unwrap();
        let (_, l) = compute_l_symbolic(&base, &GroupSpec::new(3, 3, 2).unwrap(), "trivial", 0, None).unwrap();
        assert_eq!(l.dims(), vec![1, 2, 2, 1]);
        let base = GaloisField::minimal(13, 4).unwrap();
        let (_, l) = compute_l_symbolic(&base, &GroupSpec::new(4, 4, 2).unwrap(), "rho:1", 0, None).unwrap();
        assert_eq!(l.dims(), vec![2, 4, 2]);
    }

    #[test]
    fn truncation_and_generators() {
        let f = GaloisField::for_generic(7, 3).unwrap();
        let g = GroupSpec::new(3, 3, 2).unwrap().in_field(f.root_order()).unwrap();
        let rep = GradedRep::trivial();
        let params = CherednikParams::specialized(&f, &g, 0, 5).unwrap();
        let e = DunklEngine::new(&f, &g, &rep, &params);
        let l = compute_l(&e, "trivial", 0, 1).unwrap();
        assert_eq!(l.status, LStatus::TruncatedAtCap);
        assert_eq!(l.dims(), vec![1, 2, 2]);
        let v = VermaVector::pure(Poly::term(&f, Monomial::from_slice(&[5, 0]), f.one()), 0, 1);
        assert!(matches!(l.kernel_membership(&f, &v), Err(LError::NotComputed(5))));

        let gens = vec![
            VermaVector::pure(Poly::from_int_terms(&f, 2, &[(&[1, 1], 1)]), 0, 1),
            VermaVector::pure(Poly::from_int_terms(&f, 2, &[(&[3, 0], 1), (&[0, 3], 1)]), 0, 1),
        ];
        let q = LModule::from_generators(&f, &g, "trivial", 1, &gens, 10).unwrap();
        assert_eq!(q.dims(), vec![1, 2, 2, 1]);
        for d in 0..4 {
            let a = q.j_slice(&f, d).unwrap();
            let b = compute_l(&e, "trivial", 0, 4).unwrap().j_slice(&f, d).unwrap();
            assert_eq!(a.basis, b.basis);
        }
    }
}
