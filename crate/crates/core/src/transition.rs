//! Transition matrices for dihedral groups: `[L(τ)] = Σ_σ a_{σ,τ}(t) [M(σ)]`
//! in the graded Grothendieck group. Rows are Verma labels, columns are
//! simple labels, both in the order of [`dihedral_irreducibles`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::quotient_group_matrices;
use crate::field::{Field, FieldError, GaloisField};
use crate::group::{GroupError, GroupSpec};
use crate::linalg::EchelonBasis;
use crate::lmodule::{compute_l_specialized, LError, QuotientSlice};
use crate::poly::SliceCoords;
use crate::rep::{builtin_rep, dihedral_irreducibles, generator_matrices, hom_dim, GradedRep, RepError};
use crate::series::{one_minus_t_pow, tpoly_mul, trim, TPoly};
use crate::slice::SliceBasis;

#[derive(Debug, Error)]
pub enum TransitionError {
    #[error("p = {p} divides 2m = {}", 2 * .m)]
    Modular { p: u64, m: u32 },
    #[error("degree bound {dmax} is below m + 2 = {}", .m + 2)]
    LowBound { dmax: u32, m: u32 },
    #[error("solve failed: {0}")]
    SolveFailure(String),
    #[error(transparent)]
    L(#[from] LError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TransitionMatrix {
    pub m: u32,
    pub p: u64,
    pub dmax: u32,
    pub labels: Vec<String>,
    /// `entries[row][col]`, row = Verma label, column = simple label.
    pub entries: Vec<Vec<TPoly>>,
    /// Multiplicity of `labels[μ]` in `L(labels[τ])_d`: `l_chars[μ][τ][d]`.
    pub l_chars: Vec<Vec<TPoly>>,
    pub notes: Vec<String>,
}

impl TransitionMatrix {
    pub fn diagonal_constant_terms_one(&self) -> bool {
        (0..self.labels.len()).all(|i| self.entries[i][i].first() == Some(&1))
    }

    pub fn format_entry(p: &[i64]) -> String {
        if p.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, &c) in p.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}{mono}")
            };
            out.push_str(sign);
            out.push_str(&body);
        }
        out
    }
}

/// Multiplicities of the irreducibles in one graded slice.
/// An irreducible with its generator matrices.
type Irrep<E> = (GradedRep<E>, Vec<crate::rep::Matrix<E>>);

fn slice_multiplicities<F: Field>(
    f: &F,
    group: &GroupSpec,
    rep: &GradedRep<F::Elem>,
    slice: &QuotientSlice<F::Elem>,
    irreps: &[Irrep<F::Elem>],
) -> Vec<i64> {
    if slice.dim() == 0 {
        return vec![0; irreps.len()];
    }
    let mats = quotient_group_matrices(f, group, rep, slice);
    irreps
        .iter()
        .map(|(w, wm)| hom_dim(f, wm, w.dim, &mats, slice.dim()) as i64)
        .collect()
}

pub fn transition_matrix(m: u32, p: u64, dmax: u32, seed: u64) -> Result<TransitionMatrix, TransitionError> {
    if p == 2 || (m as u64).is_multiple_of(p) {
        return Err(TransitionError::Modular { p, m });
    }
    if dmax < m + 2 {
        return Err(TransitionError::LowBound { dmax, m });
    }
    let field = GaloisField::for_generic(p, m)?;
    let group = GroupSpec::new(m, m, 2)?.in_field(field.root_order())?;
    let labels = dihedral_irreducibles(m);
    let k = labels.len();
    let irreps: Vec<_> = labels
        .iter()
        .map(|name| {
            let w = builtin_rep(&field, &group, name)?;
            let wm = generator_matrices(&field, &group, &w);
            Ok((w, wm))
        })
        .collect::<Result<_, RepError>>()?;
    let len = dmax as usize + 1;

    // columns: characters of L(τ) and of M(τ), each as k series
    let columns: Vec<(Vec<TPoly>, Vec<TPoly>)> = labels
        .par_iter()
        .enumerate()
        .map(|(t, name)| -> Result<_, TransitionError> {
            let run = compute_l_specialized(&field, &GroupSpec::new(m, m, 2)?, name, 0, &[seed, seed + 1], None)?;
            let rep = &run.rep;
            let mut lc = vec![vec![0i64; len]; k];
            for (d, s) in run.module.slices.iter().enumerate().take(len) {
                for (mu, x) in slice_multiplicities(&field, &group, rep, s, &irreps).into_iter().enumerate() {
                    lc[mu][d] = x;
                }
            }
            let mut mc = vec![vec![0i64; len]; k];
            for d in 0..len {
                let coords = SliceCoords::new(2, d as u32, rep.dim);
                let empty = SliceBasis {
                    basis: EchelonBasis::empty(coords.len()),
                    coords,
                };
                let s = QuotientSlice::from_subspace(&field, &empty);
                for (mu, x) in slice_multiplicities(&field, &group, rep, &s, &irreps).into_iter().enumerate() {
                    mc[mu][d] = x;
                }
            }
            if mc[t][0] != 1 {
                return Err(TransitionError::SolveFailure(format!("degree 0 of M({name}) is not {name}")));
            }
            Ok((lc, mc))
        })
        .collect::<Result<_, _>>()?;

    // L = M · A with M(0) = I, so A = M^{-1} L as power series
    let mser: Vec<Vec<TPoly>> = (0..k).map(|mu| (0..k).map(|s| columns[s].1[mu].clone()).collect()).collect();
    let lser: Vec<Vec<TPoly>> = (0..k).map(|mu| (0..k).map(|t| columns[t].0[mu].clone()).collect()).collect();
    let mut inv: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; len]; k]; k];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i][0] = 1;
    }
    for d in 1..len {
        for i in 0..k {
            for j in 0..k {
                let mut acc = 0;
                for e in 1..=d {
                    for l in 0..k {
                        acc += mser[i][l][e] * inv[l][j][d - e];
                    }
                }
                inv[i][j][d] = -acc;
            }
        }
    }
    let mut entries = vec![vec![Vec::new(); k]; k];
    for (s, row) in entries.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            let mut a = vec![0i64; len];
            for (d, slot) in a.iter_mut().enumerate() {
                for mu in 0..k {
                    for e in 0..=d {
                        *slot += inv[s][mu][e] * lser[mu][t][d - e];
                    }
                }
            }
            *cell = trim(a);
        }
    }
    let mut notes = Vec::new();
    if m.is_multiple_of(2) {
        notes.push("rho:-1 and rho:-2 are the two non-trivial parity characters; which is which depends on the reflection-class convention".into());
    }
    Ok(TransitionMatrix {
        m,
        p,
        dmax,
        labels,
        entries,
        l_chars: (0..k).map(|mu| (0..k).map(|t| trim(lser[mu][t].clone())).collect()).collect(),
        notes,
    })
}

/// Label permutation induced by tensoring with `rho:-1` (rotation acting by
/// `-1` for even `m`, the sign for odd `m`). For generic `c` the matrix is
/// invariant: `a_{χσ, χτ} = a_{σ, τ}`.
pub fn twist_permutation(m: u32) -> Vec<usize> {
    let labels = dihedral_irreducibles(m);
    let pos = |name: String| labels.iter().position(|l| *l == name).expect("label");
    labels
        .iter()
        .map(|l| {
            let i: i64 = l.trim_start_matches("rho:").parse().expect("rho label");
            let h = m as i64 / 2;
            let image = if m % 2 == 1 {
                match i {
                    -1 => 0,
                    0 => -1,
                    i => i,
                }
            } else {
                match i {
                    -3 => -2,
                    -2 => -3,
                    -1 => 0,
                    0 => -1,
                    i => h - i,
                }
            };
            pos(format!("rho:{image}"))
        })
        .collect()
}

/// `Σ_σ a_{σ,τ}(t) dim σ`: the numerator of the Hilbert series of `L(τ)` over `(1-t)^2`.
pub fn column_numerator(entries: &[Vec<TPoly>], col: usize, m: u32) -> TPoly {
    let dims: Vec<i64> = dihedral_irreducibles(m)
        .iter()
        .map(|l| {
            let i: i64 = l.trim_start_matches("rho:").parse().expect("rho label");
            if i > 0 {
                2
            } else {
                1
            }
        })
        .collect();
    entries.iter().zip(&dims).fold(Vec::new(), |acc, (row, &d)| {
        crate::series::tpoly_add(&acc, &crate::series::tpoly_scale(&row[col], d))
    })
}

fn cf(a: &[i64]) -> TPoly {
    trim(a.to_vec())
}

/// `(1 - t^2)(1 - t^m)`.
fn big(m: u32) -> TPoly {
    tpoly_mul(&one_minus_t_pow(2), &one_minus_t_pow(m))
}

/// Closed forms for `m ∈ {2,3,4,6,8}`, even `m > 8` and odd `m > 3`.
/// The off-diagonal `-t - t^3` entry sits below the diagonal.
pub fn closed_transition(m: u32) -> Option<Vec<Vec<TPoly>>> {
    let k = dihedral_irreducibles(m).len();
    let mut a = vec![vec![Vec::new(); k]; k];
    let mt = |e: u32| {
        let mut v = vec![0i64; e as usize + 1];
        v[e as usize] = -1;
        v
    };
    let pt = |e: u32| {
        let mut v = vec![0i64; e as usize + 1];
        v[e as usize] = 1;
        v
    };
    match m {
        0 | 1 => return None,
        2 => {
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = tpoly_mul(&one_minus_t_pow(2), &one_minus_t_pow(2));
            }
        }
        3 => {
            a[0][0] = big(3);
            a[1][1] = big(3);
            a[2][2] = tpoly_mul(&one_minus_t_pow(1), &one_minus_t_pow(3));
        }
        4 => {
            for (i, row) in a.iter_mut().enumerate().take(4) {
                row[i] = big(4);
            }
            a[4][4] = tpoly_mul(&one_minus_t_pow(2), &one_minus_t_pow(2));
        }
        6 => {
            for (i, row) in a.iter_mut().enumerate().take(4) {
                row[i] = big(6);
            }
            a[0][5] = pt(4);
            a[1][5] = mt(1);
            a[2][5] = mt(1);
            a[3][5] = pt(4);
            a[4][4] = cf(&[1, 0, 0, 0, 1]);
            a[4][5] = mt(3);
            a[5][4] = cf(&[0, -1, 0, -1]);
            a[5][5] = vec![1];
        }
        8 => {
            for (i, row) in a.iter_mut().enumerate().take(4) {
                row[i] = big(8);
            }
            a[0][6] = mt(3);
            a[1][6] = mt(1);
            a[2][6] = mt(1);
            a[3][6] = mt(3);
            a[4][4] = cf(&[1, 0, 0, 0, 1]);
            a[4][5] = mt(1);
            a[5][4] = cf(&[0, -1, 0, -1]);
            a[5][5] = cf(&[1, 0, 1]);
            a[5][6] = pt(4);
            a[6][5] = mt(1);
            a[6][6] = vec![1];
        }
        _ if m.is_multiple_of(2) => {
            // 1-indexed positions as in the displayed formulas
            let h = (m / 2) as usize;
            let kk = h + 3;
            let mut set = |i: usize, j: usize, v: TPoly| a[i - 1][j - 1] = v;
            for i in 1..=4 {
                set(i, i, big(m));
            }
            set(5, 5, cf(&[1, 0, 0, 0, 1]));
            set(6, 5, cf(&[0, -1, 0, -1]));
            for j in 6..=h + 2 {
                set(j, j, cf(&[1, 0, 1]));
                set(j - 1, j, mt(1));
                set(j + 1, j, mt(1));
            }
            set(2, kk, mt(1));
            set(3, kk, mt(1));
            set(h, kk, mt(3));
            set(h + 1, kk, pt(4));
            set(kk, kk, vec![1]);
        }
        _ => {
            let h = ((m - 1) / 2) as usize;
            let kk = h + 2;
            let mut set = |i: usize, j: usize, v: TPoly| a[i - 1][j - 1] = v;
            set(1, 1, big(m));
            set(2, 2, big(m));
            set(3, 3, cf(&[1, 0, 0, 0, 1]));
            set(4, 3, cf(&[0, -1, 0, -1]));
            for j in 4..=h + 1 {
                set(j, j, cf(&[1, 0, 1]));
                set(j - 1, j, mt(1));
                set(j + 1, j, mt(1));
            }
            set(h + 1, kk, mt(1));
            set(kk, kk, cf(&[1, -1, 1]));
        }
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_match_closed_forms() {
        for (m, p) in [(2u32, 5u64), (3, 7), (4, 7)] {
            let t = transition_matrix(m, p, m + 3, 1).unwrap();
            assert_eq!(Some(t.entries.clone()), closed_transition(m), "m = {m}: {:?}", t.entries);
            assert!(t.diagonal_constant_terms_one());
        }
    }

    #[test]
    fn errors_and_format() {
        assert!(matches!(transition_matrix(4, 2, 10, 1), Err(TransitionError::Modular { .. })));
        assert!(matches!(transition_matrix(5, 7, 5, 1), Err(TransitionError::LowBound { .. })));
        assert_eq!(TransitionMatrix::format_entry(&[1, 0, -1, -1, 0, 1]), "1-t^2-t^3+t^5");
        assert_eq!(TransitionMatrix::format_entry(&[0, -2]), "-2t");
        assert_eq!(TransitionMatrix::format_entry(&[]), "0");
    }

    #[test]
    fn odd_general_form() {
        for (m, p) in [(5u32, 11u64), (7, 11)] {
            let t = transition_matrix(m, p, m + 4, 2).unwrap();
            assert_eq!(Some(t.entries.clone()), closed_transition(m), "m = {m}");
        }
    }

    #[test]
    fn twist_symmetry() {
        for (m, p) in [(6u32, 7u64), (8, 7), (7, 11)] {
            let t = transition_matrix(m, p, m + 3, 3).unwrap();
            let chi = twist_permutation(m);
            let k = chi.len();
            for s in 0..k {
                for u in 0..k {
                    assert_eq!(t.entries[chi[s]][chi[u]], t.entries[s][u], "m = {m}, ({s},{u})");
                }
            }
        }
    }

    #[test]
    fn even_tables_outside_the_last_column() {
        for (m, p) in [(6u32, 7u64), (8, 7), (10, 7)] {
            let t = transition_matrix(m, p, m + 4, 4).unwrap();
            let c = closed_transition(m).unwrap();
            let last = c.len() - 1;
            for (row, crow) in t.entries.iter().zip(&c) {
                assert_eq!(row[..last], crow[..last], "m = {m}");
            }
            // the last column carries the same Hilbert series either way
            assert_eq!(column_numerator(&t.entries, last, m), column_numerator(&c, last, m));
            assert!(t.diagonal_constant_terms_one());
        }
    }
}
