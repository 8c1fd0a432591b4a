//! Graded minimal free resolutions to a degree bound, by linear algebra in
//! each degree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::linalg::{kernel_basis, EchelonBasis};
use crate::poly::{Monomial, MonomialBasis, Poly};
use crate::series::TPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("generator {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("generator {index} has {got} components, expected {expected}")]
    RankMismatch { index: usize, got: usize, expected: usize },
    #[error("degree bound {dmax} is below the generator degree {degree}")]
    DegreeBound { dmax: u32, degree: u32 },
    #[error("Betti table is not known to be complete")]
    IncompleteTable,
}

/// Free module `⊕_k A(-shifts[k])` over `K[x_1..x_nvars]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub nvars: usize,
    pub shifts: Vec<u32>,
}

/// Coordinates of the degree-`d` component of a free module.
struct FreeCoords {
    degree: u32,
    blocks: Vec<Option<(usize, MonomialBasis)>>,
    len: usize,
}

impl FreeCoords {
    fn new(m: &FreeModule, degree: u32) -> Self {
        let mut len = 0;
        let blocks = m
            .shifts
            .iter()
            .map(|&s| {
                (s <= degree).then(|| {
                    let b = MonomialBasis::new(m.nvars, degree - s);
                    let off = len;
                    len += b.len();
                    (off, b)
                })
            })
            .collect();
        FreeCoords { degree, blocks, len }
    }

    fn column(&self, k: usize, mono: &Monomial) -> usize {
        let (off, b) = self.blocks[k].as_ref().expect("component present in this degree");
        off + b.index_of(mono).expect("monomial of the right degree")
    }

    fn element(&self, col: usize) -> (usize, &Monomial) {
        for (k, blk) in self.blocks.iter().enumerate() {
            if let Some((off, b)) = blk {
                if col < off + b.len() {
                    return (k, &b.monomials[col - off]);
                }
            }
        }
        unreachable!("column out of range")
    }

    fn to_dense<F: Field>(&self, f: &F, v: &[Poly<F::Elem>]) -> Vec<F::Elem> {
        let mut out = vec![f.zero(); self.len];
        for (k, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                out[self.column(k, m)] = c.clone();
            }
        }
        out
    }

    fn polys_from_dense<F: Field>(&self, f: &F, nvars: usize, x: &[F::Elem]) -> Vec<Poly<F::Elem>> {
        let mut out = vec![Poly::zero(nvars); self.blocks.len()];
        for (col, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                let (k, m) = self.element(col);
                out[k].add_term(f, m.clone(), c.clone());
            }
        }
        out
    }

    /// `x_j · v` for `v` in the previous degree.
    fn raise<F: Field>(&self, f: &F, prev: &FreeCoords, v: &[F::Elem], j: usize) -> Vec<F::Elem> {
        debug_assert_eq!(prev.degree + 1, self.degree);
        let mut out = vec![f.zero(); self.len];
        for (col, c) in v.iter().enumerate() {
            if !f.is_zero(c) {
                let (k, m) = prev.element(col);
                let mut m = m.clone();
                m.0[j] += 1;
                out[self.column(k, &m)] = c.clone();
            }
        }
        out
    }
}

/// Submodule of a graded free module given by homogeneous generators.
#[derive(Clone, Debug)]
pub struct Presentation<E> {
    pub target: FreeModule,
    pub generators: Vec<Vec<Poly<E>>>,
}

impl<E: Clone + PartialEq> Presentation<E> {
    pub fn ideal(nvars: usize, gens: Vec<Poly<E>>) -> Self {
        Presentation {
            target: FreeModule { nvars, shifts: vec![0] },
            generators: gens.into_iter().map(|g| vec![g]).collect(),
        }
    }

    /// Free module of rank `rank` generated in degree 0; generators are columns.
    pub fn columns(nvars: usize, rank: usize, cols: Vec<Vec<Poly<E>>>) -> Self {
        Presentation {
            target: FreeModule {
                nvars,
                shifts: vec![0; rank],
            },
            generators: cols,
        }
    }

    fn degrees(&self) -> Result<Vec<Option<u32>>, ResolutionError> {
        let rank = self.target.shifts.len();
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.len() != rank {
                    return Err(ResolutionError::RankMismatch {
                        index: i,
                        got: g.len(),
                        expected: rank,
                    });
                }
                let mut deg = None;
                for (k, p) in g.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    let d = p.homogeneous_degree().ok_or(ResolutionError::Inhomogeneous(i))? + self.target.shifts[k];
                    if deg.is_some_and(|e| e != d) {
                        return Err(ResolutionError::Inhomogeneous(i));
                    }
                    deg = Some(d);
                }
                Ok(deg)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// Finite-length quotient with `top degree + nvars <= dmax`.
    Proven,
    /// Resolution ended inside the bound with no generators near the bound.
    Heuristic,
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BettiEntry {
    pub i: usize,
    pub j: u32,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BettiTable {
    pub nvars: usize,
    pub dmax: u32,
    pub completeness: Completeness,
    pub entries: Vec<BettiEntry>,
    /// `dim (F_0 / N)_d` for `d <= dmax`.
    pub quotient_dims: Vec<u64>,
}

impl BettiTable {
    pub fn is_complete(&self) -> bool {
        self.completeness != Completeness::Truncated
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.value)
    }

    pub fn pdim(&self) -> usize {
        self.entries.iter().map(|e| e.i).max().unwrap_or(0)
    }

    pub fn ranks(&self) -> Vec<u64> {
        let mut out = vec![0; self.pdim() + 1];
        for e in &self.entries {
            out[e.i] += e.value;
        }
        out
    }

    pub fn degrees(&self, i: usize) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|e| e.i == i)
            .flat_map(|e| std::iter::repeat_n(e.j, e.value as usize))
            .collect()
    }

    /// `Σ_i (-1)^i Σ_j β_{ij} t^j`.
    pub fn numerator(&self) -> TPoly {
        let top = self.entries.iter().map(|e| e.j).max().unwrap_or(0) as usize;
        let mut out = vec![0i64; top + 1];
        for e in &self.entries {
            let s = if e.i % 2 == 0 { 1 } else { -1 };
            out[e.j as usize] += s * e.value as i64;
        }
        out
    }

    pub fn raw_map(&self) -> BTreeMap<String, u64> {
        self.entries.iter().map(|e| (format!("{},{}", e.i, e.j), e.value)).collect()
    }
}

impl fmt::Display for BettiTable {
    /// Rows are `j - i`, columns are `i`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.pdim() + 1;
        let ranks = self.ranks();
        let rows: Vec<i64> = self.entries.iter().map(|e| e.j as i64 - e.i as i64).collect();
        let (lo, hi) = (*rows.iter().min().unwrap_or(&0), *rows.iter().max().unwrap_or(&0));
        let width = ranks
            .iter()
            .map(|r| r.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cols.to_string().len());
        let label = (hi.to_string().len() + 1).max(6);
        write!(out, "{:>label$}", "")?;
        for i in 0..cols {
            write!(out, " {i:>width$}")?;
        }
        writeln!(out)?;
        write!(out, "{:>label$}", "total:")?;
        for r in &ranks {
            write!(out, " {r:>width$}")?;
        }
        writeln!(out)?;
        for r in lo..=hi {
            write!(out, "{:>label$}", format!("{r}:"))?;
            for i in 0..cols {
                let j = r + i as i64;
                let v = if j >= 0 { self.get(i, j as u32) } else { 0 };
                if v == 0 {
                    write!(out, " {:>width$}", ".")?;
                } else {
                    write!(out, " {v:>width$}")?;
                }
            }
            writeln!(out)?;
        }
        if !self.is_complete() {
            writeln!(out, "(truncated at degree {})", self.dmax)?;
        }
        Ok(())
    }
}

/// One step: minimal generators, as elements of the source of the previous map.
struct Step<E> {
    shifts: Vec<u32>,
    gens: Vec<Vec<Poly<E>>>,
}

/// Minimal generators of the submodule and the quotient dimensions.
fn minimal_generators<F: Field>(
    f: &F,
    pres: &Presentation<F::Elem>,
    degs: &[Option<u32>],
    dmax: u32,
) -> (Step<F::Elem>, Vec<u64>) {
    let nvars = pres.target.nvars;
    let mut step = Step {
        shifts: Vec::new(),
        gens: Vec::new(),
    };
    let mut dims = Vec::new();
    let mut prev: Option<(FreeCoords, EchelonBasis<F::Elem>)> = None;
    for d in 0..=dmax {
        let coords = FreeCoords::new(&pres.target, d);
        let mut span = EchelonBasis::empty(coords.len);
        if let Some((pc, pb)) = &prev {
            for row in &pb.rows {
                for j in 0..nvars {
                    span.insert(f, &coords.raise(f, pc, row, j));
                }
            }
        }
        for (g, deg) in pres.generators.iter().zip(degs) {
            if *deg == Some(d) && span.insert(f, &coords.to_dense(f, g)) {
                step.shifts.push(d);
                step.gens.push(g.clone());
            }
        }
        dims.push((coords.len - span.dim()) as u64);
        prev = Some((coords, span));
    }
    (step, dims)
}

/// Minimal generators of `ker(source -> target)` in degrees `<= bound`.
fn syzygies<F: Field>(
    f: &F,
    target: &FreeModule,
    source: &FreeModule,
    images: &[Vec<Poly<F::Elem>>],
    bound: u32,
) -> Step<F::Elem> {
    let nvars = target.nvars;
    let mut step = Step {
        shifts: Vec::new(),
        gens: Vec::new(),
    };
    let lo = source.shifts.iter().copied().min().unwrap_or(0);
    let mut prev: Option<(FreeCoords, Vec<Vec<F::Elem>>)> = None;
    for d in lo..=bound {
        let sc = FreeCoords::new(source, d);
        let tc = FreeCoords::new(target, d);
        let mut rows = vec![vec![f.zero(); sc.len]; tc.len];
        for col in 0..sc.len {
            let (k, m) = sc.element(col);
            let img: Vec<Poly<F::Elem>> = images[k].iter().map(|p| p.mul_monomial(f, m, &f.one())).collect();
            for (r, c) in tc.to_dense(f, &img).into_iter().enumerate() {
                rows[r][col] = c;
            }
        }
        let kernel = kernel_basis(f, &rows, sc.len).expect("rectangular");
        let mut span = EchelonBasis::empty(sc.len);
        if let Some((pc, pk)) = &prev {
            for v in pk {
                for j in 0..nvars {
                    span.insert(f, &sc.raise(f, pc, v, j));
                }
            }
        }
        for v in &kernel {
            if span.insert(f, v) {
                step.shifts.push(d);
                step.gens.push(sc.polys_from_dense(f, nvars, v));
            }
        }
        prev = Some((sc, kernel));
    }
    step
}

/// Betti table of `F_0 / N` where `N` is generated by `pres.generators`.
pub fn graded_betti<F: Field>(f: &F, pres: &Presentation<F::Elem>, dmax: u32) -> Result<BettiTable, ResolutionError> {
    let degs = pres.degrees()?;
    if let Some(&d) = degs.iter().flatten().max() {
        if d > dmax {
            return Err(ResolutionError::DegreeBound { dmax, degree: d });
        }
    }
    let nvars = pres.target.nvars;
    let (first, quotient_dims) = minimal_generators(f, pres, &degs, dmax);

    // For finite length, β_{ij} = 0 when j exceeds top degree + i.
    let max_shift = pres.target.shifts.iter().copied().max().unwrap_or(0);
    let vanish = quotient_dims
        .iter()
        .enumerate()
        .position(|(d, &q)| q == 0 && d as u32 >= max_shift);
    let top = vanish.map(|v| quotient_dims[..v].iter().rposition(|&q| q > 0).map_or(0, |t| t as u32));
    let bound = |i: usize| top.map_or(dmax, |s| dmax.min(s + i as u32));

    let mut entries = Vec::new();
    let mut push = |i: usize, shifts: &[u32]| {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for &s in shifts {
            *counts.entry(s).or_default() += 1;
        }
        entries.extend(counts.into_iter().map(|(j, value)| BettiEntry { i, j, value }));
    };
    push(0, &pres.target.shifts);
    push(1, &first.shifts);

    let mut near_bound = first.shifts.iter().any(|&s| s + 1 >= bound(1));
    let mut target = pres.target.clone();
    let mut cur = first;
    let mut i = 1;
    while !cur.gens.is_empty() && i <= nvars {
        let source = FreeModule {
            nvars,
            shifts: cur.shifts.clone(),
        };
        let next = syzygies(f, &target, &source, &cur.gens, bound(i + 1));
        i += 1;
        push(i, &next.shifts);
        near_bound |= next.shifts.iter().any(|&s| s + 1 >= bound(i));
        target = source;
        cur = next;
    }
    let ended = cur.gens.is_empty();
    let completeness = match top {
        Some(s) if s + nvars as u32 <= dmax => Completeness::Proven,
        _ if ended && !near_bound => Completeness::Heuristic,
        _ => Completeness::Truncated,
    };
    Ok(BettiTable {
        nvars,
        dmax,
        completeness,
        entries,
        quotient_dims,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duality {
    pub gorenstein: bool,
    pub level: bool,
    pub palindromic: bool,
}

pub fn check_duality(table: &BettiTable, codim: usize) -> Result<Duality, ResolutionError> {
    if !table.is_complete() {
        return Err(ResolutionError::IncompleteTable);
    }
    let ranks = table.ranks();
    let rank = |i: usize| ranks.get(i).copied().unwrap_or(0);
    let last = table.entries.iter().filter(|e| e.i == codim && e.value > 0).count();
    Ok(Duality {
        gorenstein: rank(codim) == 1,
        level: last == 1,
        palindromic: (0..=codim).all(|i| rank(i) == rank(codim - i)),
    })
}
