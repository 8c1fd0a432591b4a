//! Matrix regular sequences: square polynomial matrices whose columns
//! generate a submodule of `A ⊗ K^s`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::linalg::{invert, kernel_basis};
use crate::lmodule::LModule;
use crate::poly::{Poly, VermaVector};
use crate::series::{one_minus_t_pow, tpoly_mul, ClosedForm, TPoly};
use crate::slice::SubmoduleSlices;

pub type PolyMatrix<E> = Vec<Vec<Poly<E>>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KoszulError {
    #[error("matrix {index} is {rows}x{cols}, expected {size}x{size}")]
    SizeMismatch {
        index: usize,
        rows: usize,
        cols: usize,
        size: usize,
    },
    #[error("no matrices given")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KoszulReport {
    pub size: usize,
    pub count: usize,
    pub commute: bool,
    pub determinants: Vec<String>,
    pub det_degrees: Vec<Option<u32>>,
    /// `None` when undecided within the degree budget.
    pub regular: Option<bool>,
    /// First degree where `A/(dets)` differs from the complete-intersection series.
    pub regular_mismatch_degree: Option<u32>,
    pub columns_in_j: Option<bool>,
    /// Change of basis `P` with `P · column ∈ J` for all columns, when the
    /// columns are not in `J` as given.
    pub alignment: Option<Vec<Vec<String>>>,
    pub predicted: Option<TPoly>,
    pub computed: Option<TPoly>,
    pub series_match: Option<bool>,
}

pub fn mat_mul_poly<F: Field>(f: &F, a: &PolyMatrix<F::Elem>, b: &PolyMatrix<F::Elem>, nvars: usize) -> PolyMatrix<F::Elem> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Poly::zero(nvars), |acc, (x, brow)| acc.add(f, &x.mul(f, &brow[j])))
                })
                .collect()
        })
        .collect()
}

/// Laplace expansion along the first row.
pub fn determinant<F: Field>(f: &F, m: &PolyMatrix<F::Elem>, nvars: usize) -> Poly<F::Elem> {
    let n = m.len();
    match n {
        0 => Poly::one(f, nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut out = Poly::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: PolyMatrix<F::Elem> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(f, &determinant(f, &minor, nvars));
                out = if j % 2 == 0 { out.add(f, &term) } else { out.sub(f, &term) };
            }
            out
        }
    }
}

pub fn columns<E: Clone + PartialEq>(m: &PolyMatrix<E>) -> Vec<VermaVector<E>> {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| VermaVector::from_components(m.iter().map(|row| row[j].clone()).collect()))
        .collect()
}

fn check_sizes<E>(mats: &[PolyMatrix<E>]) -> Result<usize, KoszulError> {
    let size = mats.first().ok_or(KoszulError::Empty)?.len();
    for (index, m) in mats.iter().enumerate() {
        let cols = m.first().map_or(0, Vec::len);
        if m.len() != size || m.iter().any(|r| r.len() != size) {
            return Err(KoszulError::SizeMismatch {
                index,
                rows: m.len(),
                cols,
                size,
            });
        }
    }
    Ok(size)
}

/// Compares `A / (dets)` with `Π (1 - t^{d_i}) / (1-t)^n` degree by degree up
/// to `budget`; for `k = n` agreement through `Σ (d_i - 1) + 1` decides it.
pub fn regular_sequence<F: Field>(f: &F, polys: &[Poly<F::Elem>], nvars: usize, budget: u32) -> (Option<bool>, Option<u32>) {
    let mut degs = Vec::new();
    for p in polys {
        match p.homogeneous_degree() {
            Some(d) if d > 0 => degs.push(d),
            _ => return (Some(false), None),
        }
    }
    if polys.len() > nvars || has_coordinate_zero(polys, nvars) {
        return (Some(false), None);
    }
    let closed = ClosedForm {
        numerator: degs.iter().fold(vec![1], |acc, &d| tpoly_mul(&acc, &one_minus_t_pow(d))),
        denominator: vec![1; nvars],
    };
    let finite = polys.len() == nvars;
    let decisive = degs.iter().map(|d| d - 1).sum::<u32>() + 1;
    let top = if finite { decisive.min(budget) } else { budget };
    let want = closed.expand(top as usize);
    let gens: Vec<_> = polys.iter().map(|g| VermaVector::pure(g.clone(), 0, 1)).collect();
    let slices = SubmoduleSlices::new(f, &gens, nvars, 1).expect("single component");
    for (d, s) in slices.take(top as usize + 1).enumerate() {
        if s.codim() as i64 != want[d] {
            return (Some(false), Some(d as u32));
        }
    }
    if finite && decisive <= budget {
        (Some(true), None)
    } else {
        (None, None)
    }
}

/// Setting the variables in some proper subset to zero leaves fewer nonzero
/// forms than remaining variables, so the forms share a nonzero common zero.
fn has_coordinate_zero<E: Clone + PartialEq>(polys: &[Poly<E>], nvars: usize) -> bool {
    (1..(1u32 << nvars) - 1).any(|mask| {
        let kept = nvars - mask.count_ones() as usize;
        let alive = polys
            .iter()
            .filter(|p| {
                p.terms()
                    .any(|(m, _)| (0..nvars).all(|i| mask & (1 << i) == 0 || m.0[i] == 0))
            })
            .count();
        alive < kept
    })
}

/// `P` (with `P` invertible) such that `P · c ∈ J` for every column `c`.
pub fn align_columns<F: Field>(
    f: &F,
    module: &LModule<F::Elem>,
    cols: &[VermaVector<F::Elem>],
    size: usize,
    seed: u64,
) -> Option<Vec<Vec<F::Elem>>> {
    let nvars = module.group.n;
    let unknowns = size * size;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for c in cols {
        let d = c.homogeneous_degree()?;
        let Some(slice) = module.slices.get(d as usize) else {
            continue;
        };
        let mut block = vec![vec![f.zero(); unknowns]; slice.dim()];
        for a in 0..size {
            for b in 0..size {
                let mut comps = vec![Poly::zero(nvars); size];
                comps[a] = c.components[b].clone();
                let q = slice.project(f, &VermaVector::from_components(comps));
                for (r, x) in q.into_iter().enumerate() {
                    block[r][a * size + b] = x;
                }
            }
        }
        rows.extend(block);
    }
    let kernel = kernel_basis(f, &rows, unknowns).ok()?;
    let as_matrix = |v: &[F::Elem]| -> Vec<Vec<F::Elem>> { v.chunks(size).map(<[_]>::to_vec).collect() };
    for v in &kernel {
        if invert(f, &as_matrix(v)).is_some() {
            return Some(as_matrix(v));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let mut v = vec![f.zero(); unknowns];
        for k in &kernel {
            let c = f.from_i64(rng.gen_range(-1000..1000));
            for (x, y) in v.iter_mut().zip(k) {
                *x = f.add(x, &f.mul(&c, y));
            }
        }
        if invert(f, &as_matrix(&v)).is_some() {
            return Some(as_matrix(&v));
        }
    }
    None
}

/// `module` is the computed irreducible quotient for the representation the
/// columns live in. `budget` bounds the degree of the regular-sequence test.
pub fn matrix_koszul_check<F: Field>(
    f: &F,
    mats: &[PolyMatrix<F::Elem>],
    nvars: usize,
    module: Option<&LModule<F::Elem>>,
    budget: u32,
) -> Result<KoszulReport, KoszulError> {
    let size = check_sizes(mats)?;
    let mut commute = true;
    'pairs: for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            if mat_mul_poly(f, a, b, nvars) != mat_mul_poly(f, b, a, nvars) {
                commute = false;
                break 'pairs;
            }
        }
    }
    let dets: Vec<Poly<F::Elem>> = mats.iter().map(|m| determinant(f, m, nvars)).collect();
    let det_degrees: Vec<Option<u32>> = dets.iter().map(Poly::homogeneous_degree).collect();
    let (regular, regular_mismatch_degree) = regular_sequence(f, &dets, nvars, budget);

    let cols: Vec<VermaVector<F::Elem>> = mats.iter().flat_map(columns).collect();
    let (mut columns_in_j, mut alignment, mut computed, mut series_match) = (None, None, None, None);
    if let Some(l) = module {
        let direct = cols.iter().all(|c| l.kernel_membership(f, c).unwrap_or(false));
        if direct {
            columns_in_j = Some(true);
        } else {
            let p = align_columns(f, l, &cols, size, 0);
            columns_in_j = Some(p.is_some());
            alignment = p.map(|m| m.iter().map(|r| r.iter().map(|x| f.format_elem(x)).collect()).collect());
        }
        computed = Some(l.dims().into_iter().map(|x| x as i64).collect());
    }
    // s · Π (1 - t^{e_i}) / (1-t)^n with e_i = deg det_i / s
    let predicted = det_degrees
        .iter()
        .map(|d| d.filter(|d| d % size as u32 == 0).map(|d| d / size as u32))
        .collect::<Option<Vec<u32>>>()
        .filter(|_| mats.len() == nvars)
        .map(|es| {
            let num = es
                .iter()
                .fold(vec![size as i64], |acc, &e| tpoly_mul(&acc, &one_minus_t_pow(e)));
            let c = ClosedForm {
                numerator: num,
                denominator: vec![1; nvars],
            };
            let top = c.simplify().numerator.len().saturating_sub(1);
            crate::series::trim(c.expand(top))
        });
    if let (Some(p), Some(c)) = (&predicted, &computed) {
        series_match = Some(p == c);
    }
    Ok(KoszulReport {
        size,
        count: mats.len(),
        commute,
        determinants: dets.iter().map(|d| d.format(f)).collect(),
        det_degrees,
        regular,
        regular_mismatch_degree,
        columns_in_j,
        alignment,
        predicted,
        computed,
        series_match,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RegroupingSearch {
    pub tries: usize,
    /// Column indices of each matrix in the first grouping found.
    pub found: Option<Vec<Vec<usize>>>,
}

/// Random regroupings of the columns into `count` square matrices, looking
/// for commuting matrices whose determinants form a regular sequence.
/// Not finding one says nothing about existence.
pub fn search_regroupings<F: Field>(
    f: &F,
    cols: &[VermaVector<F::Elem>],
    nvars: usize,
    tries: usize,
    seed: u64,
    budget: u32,
) -> RegroupingSearch {
    let size = cols.first().map_or(0, VermaVector::dim);
    if size == 0 || cols.len() % size != 0 {
        return RegroupingSearch { tries: 0, found: None };
    }
    let count = cols.len() / size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..cols.len()).collect();
    for t in 0..tries {
        idx.shuffle(&mut rng);
        let groups: Vec<Vec<usize>> = idx.chunks(size).map(<[usize]>::to_vec).collect();
        let mats: Vec<PolyMatrix<F::Elem>> = groups
            .iter()
            .map(|g| {
                (0..size)
                    .map(|r| g.iter().map(|&c| cols[c].components[r].clone()).collect())
                    .collect()
            })
            .collect();
        let commute = (0..count).all(|i| {
            (i + 1..count).all(|j| mat_mul_poly(f, &mats[i], &mats[j], nvars) == mat_mul_poly(f, &mats[j], &mats[i], nvars))
        });
        if !commute {
            continue;
        }
        let dets: Vec<_> = mats.iter().map(|m| determinant(f, m, nvars)).collect();
        if regular_sequence(f, &dets, nvars, budget).0 == Some(true) {
            let mut found = groups;
            for g in &mut found {
                g.sort_unstable();
            }
            return RegroupingSearch {
                tries: t + 1,
                found: Some(found),
            };
        }
    }
    RegroupingSearch { tries, found: None }
}
