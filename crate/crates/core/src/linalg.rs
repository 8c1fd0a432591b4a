//! Dense exact linear algebra: reduced row echelon form, kernels, and
//! incrementally maintained echelon bases.

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
}

fn check_rect<E>(rows: &[Vec<E>], ncols: usize) -> Result<(), LinalgError> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(LinalgError::Ragged {
                row: i,
                len: r.len(),
                expected: ncols,
            });
        }
    }
    Ok(())
}

/// `row -= c * other`, starting at column `from`.
fn axpy<F: Field>(f: &F, row: &mut [F::Elem], c: &F::Elem, other: &[F::Elem], from: usize) {
    let nc = f.neg(c);
    for (a, b) in row[from..].iter_mut().zip(&other[from..]) {
        if !f.is_zero(b) {
            *a = f.add(a, &f.mul(&nc, b));
        }
    }
}

fn scale_row<F: Field>(f: &F, row: &mut [F::Elem], c: &F::Elem, from: usize) {
    for a in row[from..].iter_mut() {
        if !f.is_zero(a) {
            *a = f.mul(a, c);
        }
    }
}

/// In-place reduced row echelon form. Zero rows are dropped; returns the pivot
/// columns, in increasing order, one per remaining row.
pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][col]);
        scale_row(f, &mut rows[r], &inv, col);
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[col]) {
                let c = row[col].clone();
                axpy(f, row, &c, &pivot_row, col);
            }
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, ncols).len()
}

/// Basis of the right kernel `{x : A x = 0}`, returned in reduced echelon form.
pub fn kernel_basis<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Result<Vec<Vec<F::Elem>>, LinalgError> {
    check_rect(rows, ncols)?;
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (row, &p) in m.iter().zip(&pivots) {
            if !f.is_zero(&row[free]) {
                v[p] = f.neg(&row[free]);
            }
        }
        basis.push(v);
    }
    let mut basis = basis;
    rref(f, &mut basis, ncols);
    Ok(basis)
}

/// Subspace of `K^ncols` held as a fully reduced echelon basis.
#[derive(Clone, Debug)]
pub struct EchelonBasis<E> {
    pub ncols: usize,
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> EchelonBasis<E> {
    pub fn empty(ncols: usize) -> Self {
        EchelonBasis {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ncols: usize) -> Self {
        let rows = (0..ncols)
            .map(|i| {
                let mut v = vec![f.zero(); ncols];
                v[i] = f.one();
                v
            })
            .collect();
        EchelonBasis {
            ncols,
            rows,
            pivots: (0..ncols).collect(),
        }
    }

    pub fn from_vectors<F: Field<Elem = E>>(f: &F, vectors: Vec<Vec<E>>, ncols: usize) -> Self {
        let mut rows = vectors;
        let pivots = rref(f, &mut rows, ncols);
        EchelonBasis { ncols, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ncols - self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = v[p].clone();
                axpy(f, &mut v, &c, row, p);
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|c| f.is_zero(c))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let mut r = self.reduce(f, v);
        let Some(p) = r.iter().position(|c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inv(&r[p]);
        scale_row(f, &mut r, &inv, p);
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = row[p].clone();
                axpy(f, row, &c, &r, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Non-pivot columns: coordinates on the quotient `K^ncols / span`.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient, on the free columns.
    pub fn quotient_coords<F: Field<Elem = E>>(&self, f: &F, v: &[E], free: &[usize]) -> Vec<E> {
        let r = self.reduce(f, v);
        free.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }
}

impl<E: PartialEq> PartialEq for EchelonBasis<E> {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.pivots == other.pivots && self.rows == other.rows
    }
}

/// Multiplies a row vector by a matrix given as rows: `v * M`.
pub fn vec_mat<F: Field>(f: &F, v: &[F::Elem], m: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = vec![f.zero(); ncols];
    for (c, row) in v.iter().zip(m) {
        if !f.is_zero(c) {
            for (o, x) in out.iter_mut().zip(row) {
                if !f.is_zero(x) {
                    *o = f.add(o, &f.mul(c, x));
                }
            }
        }
    }
    out
}

/// Matrix product of row-major matrices.
pub fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    a.iter().map(|row| vec_mat(f, row, b)).collect()
}

pub fn identity<F: Field>(f: &F, n: usize) -> Vec<Vec<F::Elem>> {
    (0..n)
        .map(|i| {
            let mut r = vec![f.zero(); n];
            r[i] = f.one();
            r
        })
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert<F: Field>(f: &F, a: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = a.len();
    let mut aug: Vec<Vec<F::Elem>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            row
        })
        .collect();
    let piv = rref(f, &mut aug, 2 * n);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Expresses vectors in a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct SpanCoordinates<E> {
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
    inv: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> SpanCoordinates<E> {
    /// `None` if the family is linearly dependent.
    pub fn new<F: Field<Elem = E>>(f: &F, basis: Vec<Vec<E>>) -> Option<Self> {
        let ncols = basis.first().map_or(0, |r| r.len());
        let mut ech = basis.clone();
        let pivots = rref(f, &mut ech, ncols);
        if pivots.len() < basis.len() {
            return None;
        }
        let sub: Vec<Vec<E>> = basis.iter().map(|r| pivots.iter().map(|&c| r[c].clone()).collect()).collect();
        let inv = invert(f, &sub)?;
        Some(SpanCoordinates { basis, pivots, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients `c` with `sum c_i basis_i = v`, or `None` if `v` is not in the span.
    pub fn express<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        if self.basis.is_empty() {
            return v.iter().all(|x| f.is_zero(x)).then(Vec::new);
        }
        let vp: Vec<E> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let c = vec_mat(f, &vp, &self.inv);
        let back = vec_mat(f, &c, &self.basis);
        (back.as_slice() == v).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;

    fn m(f: &GaloisField, rows: &[&[i64]]) -> Vec<Vec<crate::Fq>> {
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn kernel_examples() {
        let f = GaloisField::prime(5).unwrap();
        let id = m(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(kernel_basis(&f, &id, 3).unwrap().is_empty());
        let z = m(&f, &[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(kernel_basis(&f, &z, 3).unwrap().len(), 3);
        let a = m(&f, &[&[1, 1, 0], &[0, 1, 1]]);
        let k = kernel_basis(&f, &a, 3).unwrap();
        assert_eq!(k, m(&f, &[&[1, -1, 1]]));
    }

    #[test]
    fn ragged_rejected() {
        let f = GaloisField::prime(5).unwrap();
        let a = m(&f, &[&[1, 1], &[0]]);
        assert!(kernel_basis(&f, &a, 2).is_err());
    }

    #[test]
    fn echelon_insert_matches_batch() {
        let f = GaloisField::prime(7).unwrap();
        let vs = m(&f, &[&[0, 1, 2, 3], &[1, 1, 1, 1], &[1, 2, 3, 4], &[2, 0, 5, 1]]);
        let batch = EchelonBasis::from_vectors(&f, vs.clone(), 4);
        let mut inc = EchelonBasis::empty(4);
        for v in vs.iter().rev() {
            inc.insert(&f, v);
        }
        assert_eq!(batch, inc);
        assert_eq!(batch.dim(), rank(&f, &vs, 4));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = GaloisField::prime(11).unwrap();
        let a = m(&f, &[&[2, 1], &[5, 3]]);
        let b = invert(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &b), identity(&f, 2));
        assert!(invert(&f, &m(&f, &[&[1, 2], &[2, 4]])).is_none());
    }
}
