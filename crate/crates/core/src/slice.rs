//! Degree slices of graded submodules of `A ⊗ K^dim`, `A = K[x_1..x_n]`.

use thiserror::Error;

use crate::field::Field;
use crate::linalg::EchelonBasis;
use crate::poly::{binomial, Poly, SliceCoords, VermaVector};
use crate::series::GradedSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SliceError {
    #[error("generator {0} is not homogeneous")]
    InhomogeneousGenerator(usize),
    #[error("generator {index} has {got} components, expected {expected}")]
    RankMismatch { index: usize, got: usize, expected: usize },
}

/// Echelon basis of one homogeneous component.
#[derive(Clone, Debug)]
pub struct SliceBasis<E> {
    pub coords: SliceCoords,
    pub basis: EchelonBasis<E>,
}

impl<E: Clone + PartialEq> SliceBasis<E> {
    pub fn degree(&self) -> u32 {
        self.coords.degree()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn codim(&self) -> usize {
        self.basis.codim()
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &VermaVector<E>) -> bool {
        self.basis.contains(f, &self.coords.to_dense(f, v))
    }

    pub fn vectors<F: Field<Elem = E>>(&self, f: &F) -> Vec<VermaVector<E>> {
        self.basis.rows.iter().map(|r| self.coords.from_dense(f, r)).collect()
    }
}

/// Maps `slice_d` into degree `d + 1` by multiplying with every variable.
pub fn multiply_up<F: Field>(f: &F, prev: &SliceBasis<F::Elem>, next: &SliceCoords) -> EchelonBasis<F::Elem> {
    let n = next.basis.nvars;
    let dim = next.dim;
    let mut out = EchelonBasis::empty(next.len());
    for row in &prev.basis.rows {
        for j in 0..n {
            let mut v = vec![f.zero(); next.len()];
            for (col, c) in row.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let mut m = prev.coords.basis.monomials[col / dim].clone();
                m.0[j] += 1;
                v[next.column(&m, col % dim)] = c.clone();
            }
            out.insert(f, &v);
        }
    }
    out
}

fn check_generators<E: Clone + PartialEq>(gens: &[VermaVector<E>], dim: usize) -> Result<(), SliceError> {
    for (i, g) in gens.iter().enumerate() {
        if g.dim() != dim {
            return Err(SliceError::RankMismatch {
                index: i,
                got: g.dim(),
                expected: dim,
            });
        }
        if !g.is_homogeneous() {
            return Err(SliceError::InhomogeneousGenerator(i));
        }
    }
    Ok(())
}

/// Iterates over the slices of the submodule generated by `gens`, degree by
/// degree from zero.
pub struct SubmoduleSlices<'a, F: Field> {
    f: &'a F,
    gens: &'a [VermaVector<F::Elem>],
    nvars: usize,
    dim: usize,
    prev: Option<SliceBasis<F::Elem>>,
    next_degree: u32,
}

impl<'a, F: Field> SubmoduleSlices<'a, F> {
    pub fn new(f: &'a F, gens: &'a [VermaVector<F::Elem>], nvars: usize, dim: usize) -> Result<Self, SliceError> {
        check_generators(gens, dim)?;
        Ok(SubmoduleSlices {
            f,
            gens,
            nvars,
            dim,
            prev: None,
            next_degree: 0,
        })
    }
}

impl<F: Field> Iterator for SubmoduleSlices<'_, F> {
    type Item = SliceBasis<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        let f = self.f;
        let d = self.next_degree;
        let coords = SliceCoords::new(self.nvars, d, self.dim);
        let mut basis = match &self.prev {
            Some(prev) => multiply_up(f, prev, &coords),
            None => EchelonBasis::empty(coords.len()),
        };
        for g in self.gens {
            if g.homogeneous_degree() == Some(d) {
                basis.insert(f, &coords.to_dense(f, g));
            }
        }
        let s = SliceBasis { coords, basis };
        self.prev = Some(s.clone());
        self.next_degree += 1;
        Some(s)
    }
}

/// Degree-`d` component of the submodule generated by homogeneous `gens`.
pub fn module_slice<F: Field>(
    f: &F,
    gens: &[VermaVector<F::Elem>],
    nvars: usize,
    dim: usize,
    d: u32,
) -> Result<SliceBasis<F::Elem>, SliceError> {
    check_generators(gens, dim)?;
    let coords = SliceCoords::new(nvars, d, dim);
    let mut basis = EchelonBasis::empty(coords.len());
    for g in gens {
        let Some(e) = g.homogeneous_degree() else {
            continue;
        };
        if e > d {
            continue;
        }
        for m in crate::poly::MonomialBasis::new(nvars, d - e).monomials {
            basis.insert(f, &coords.to_dense(f, &g.mul_monomial(f, &m)));
        }
    }
    Ok(SliceBasis { coords, basis })
}

/// Hilbert function of `(A ⊗ K^dim) / <gens>` up to degree `dmax`.
pub fn quotient_hilbert_module<F: Field>(
    f: &F,
    gens: &[VermaVector<F::Elem>],
    nvars: usize,
    dim: usize,
    dmax: u32,
) -> Result<GradedSeries, SliceError> {
    let slices = SubmoduleSlices::new(f, gens, nvars, dim)?;
    let coeffs = slices.take(dmax as usize + 1).map(|s| s.codim() as i64).collect();
    Ok(GradedSeries::from_coeffs(coeffs))
}

/// Hilbert function of `A / <gens>` up to degree `dmax`.
pub fn quotient_hilbert<F: Field>(f: &F, gens: &[Poly<F::Elem>], nvars: usize, dmax: u32) -> Result<GradedSeries, SliceError> {
    let gens: Vec<_> = gens.iter().map(|g| VermaVector::pure(g.clone(), 0, 1)).collect();
    quotient_hilbert_module(f, &gens, nvars, 1, dmax)
}

/// `dim A_d` for `n` variables.
pub fn polynomial_dim(nvars: usize, d: u32) -> u64 {
    if nvars == 0 {
        return u64::from(d == 0);
    }
    binomial(nvars as u64 - 1 + d as u64, d as u64)
}
