//! Representations `τ` of `G(m, r, n)`: one-dimensional characters, power
//! representations, Specht pullbacks, and Hom-space computations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::Field;
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{self, SpanCoordinates};
use crate::poly::{Poly, SliceCoords, VermaVector};
use crate::specht::{parse_partition, SpechtData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("unknown representation name {0:?}")]
    UnknownName(String),
    #[error("representation {name} is not defined for G({m},{r},{n}): {reason}")]
    IncompatibleGroup {
        name: String,
        m: u32,
        r: u32,
        n: usize,
        reason: String,
    },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("malformed tableau")]
    MalformedTableau,
    #[error("permuted Garnir polynomial outside the standard span")]
    ExpressionFailure,
    #[error("subspace is not G-stable")]
    NotGStable,
    #[error("characteristic {p} divides the group order {order}")]
    ModularCharacteristic { p: u64, order: u64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Clone, Debug)]
pub enum RepBase<E> {
    Trivial,
    /// Sign of the underlying permutation.
    Sign,
    /// `(-1)^{a_1}`, times the permutation sign when `with_sign`.
    Parity {
        with_sign: bool,
    },
    /// `e_j -> xi^{i a_j} e_{π(j)}` on `n` dimensions.
    Power(i64),
    /// Subrepresentation of the permutation module `K^n` with the given basis.
    PermSub {
        basis: Vec<Vec<E>>,
        coords: SpanCoordinates<E>,
    },
    /// Specht module pulled back along `G -> Σ_n`.
    Specht(Box<SpechtData<E>>),
}

/// Representation given by a rule for the matrix of every group element.
/// Matrices use the column convention: column `j` holds `τ(g) e_j`.
#[derive(Clone, Debug)]
pub struct GradedRep<E> {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub base: RepBase<E>,
}

pub type Matrix<E> = Vec<Vec<E>>;

impl<E: Clone + PartialEq> GradedRep<E> {
    fn new(name: impl Into<String>, dim: usize, base: RepBase<E>) -> Self {
        GradedRep {
            name: name.into(),
            dim,
            labels: (1..=dim).map(|i| format!("e{i}")).collect(),
            base,
        }
    }

    pub fn trivial() -> Self {
        Self::new("trivial", 1, RepBase::Trivial)
    }

    pub fn sign() -> Self {
        Self::new("sign", 1, RepBase::Sign)
    }

    pub fn power(name: impl Into<String>, i: i64, n: usize) -> Self {
        Self::new(name, n, RepBase::Power(i))
    }

    pub fn specht<F: Field<Elem = E>>(f: &F, shape: &[usize]) -> Result<Self, RepError> {
        let data = SpechtData::new(f, shape)?;
        let name = format!("specht:{}", shape.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        Ok(Self::new(name, data.dim(), RepBase::Specht(Box::new(data))))
    }

    pub fn perm_sub<F: Field<Elem = E>>(f: &F, name: impl Into<String>, basis: Vec<Vec<E>>) -> Result<Self, RepError> {
        let coords = SpanCoordinates::new(f, basis.clone()).ok_or(RepError::ExpressionFailure)?;
        let dim = basis.len();
        Ok(Self::new(name, dim, RepBase::PermSub { basis, coords }))
    }

    pub fn matrix<F: Field<Elem = E>>(&self, f: &F, group: &GroupSpec, g: &GroupElement) -> Matrix<E> {
        let scalar = |c: E| vec![vec![c]];
        let pm1 = |odd: bool| if odd { f.neg(&f.one()) } else { f.one() };
        match &self.base {
            RepBase::Trivial => scalar(f.one()),
            RepBase::Sign => scalar(pm1(g.perm_sign() < 0)),
            RepBase::Parity { with_sign } => {
                let odd = g.exps[0] % 2 == 1;
                let s = *with_sign && g.perm_sign() < 0;
                scalar(pm1(odd != s))
            }
            RepBase::Power(i) => {
                let n = g.n();
                let mut m = vec![vec![f.zero(); n]; n];
                for j in 0..n {
                    m[g.perm[j]][j] = group.xi(f, i * g.exps[j] as i64);
                }
                m
            }
            RepBase::PermSub { basis, coords } => {
                let d = basis.len();
                let mut m = vec![vec![f.zero(); d]; d];
                for (col, b) in basis.iter().enumerate() {
                    let mut img = vec![f.zero(); b.len()];
                    for (j, x) in b.iter().enumerate() {
                        img[g.perm[j]] = x.clone();
                    }
                    let c = coords.express(f, &img).expect("stable permutation submodule");
                    for (row, x) in c.into_iter().enumerate() {
                        m[row][col] = x;
                    }
                }
                m
            }
            RepBase::Specht(data) => data.matrix(f, &g.perm),
        }
    }

    /// Pullback along the `q`-th power map from a representation of `G(r, r, n)`.
    pub fn pullback_power(self, q: u32) -> Self {
        let base = match self.base {
            RepBase::Power(i) => RepBase::Power(i * q as i64),
            b => b,
        };
        GradedRep {
            name: format!("pullback:{}", self.name),
            base,
            ..self
        }
    }
}

/// Applies `τ(g)` to a coordinate vector.
pub fn apply_matrix<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                if f.is_zero(a) || f.is_zero(b) {
                    acc
                } else {
                    f.add(&acc, &f.mul(a, b))
                }
            })
        })
        .collect()
}

/// `g . v` for `v ∈ Sym(h*) ⊗ τ`, given `τ(g)`.
pub fn act_vector_with<F: Field>(
    f: &F,
    group: &GroupSpec,
    g: &GroupElement,
    tau_g: &Matrix<F::Elem>,
    v: &VermaVector<F::Elem>,
) -> VermaVector<F::Elem> {
    let dim = v.dim();
    let mut out = VermaVector::zero(group.n, dim);
    for (j, p) in v.components.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let gp = group.act_poly(f, g, p);
        for (i, row) in tau_g.iter().enumerate() {
            if !f.is_zero(&row[j]) {
                out.components[i].add_scaled(f, &row[j], &gp);
            }
        }
    }
    out
}

pub fn act_vector<F: Field>(
    f: &F,
    group: &GroupSpec,
    rep: &GradedRep<F::Elem>,
    g: &GroupElement,
    v: &VermaVector<F::Elem>,
) -> Result<VermaVector<F::Elem>, RepError> {
    if v.dim() != rep.dim {
        return Err(RepError::DimensionMismatch {
            expected: rep.dim,
            got: v.dim(),
        });
    }
    Ok(act_vector_with(f, group, g, &rep.matrix(f, group, g), v))
}

pub fn act_poly_checked<F: Field>(f: &F, group: &GroupSpec, g: &GroupElement, p: &Poly<F::Elem>) -> Poly<F::Elem> {
    group.act_poly(f, g, p)
}

fn incompatible(name: &str, g: &GroupSpec, reason: &str) -> RepError {
    RepError::IncompatibleGroup {
        name: name.to_string(),
        m: g.m,
        r: g.r,
        n: g.n,
        reason: reason.to_string(),
    }
}

/// Looks up a representation by name: `trivial`, `sign`, `rho:i`, `gamma:i`,
/// `power:i`, `specht:λ`, `pullback:specht:λ`, `wedge:k`, and
/// `pullback:<name>` (a representation of `G(r, r, n)` pulled back along the
/// `q`-th power map).
pub fn builtin_rep<F: Field>(f: &F, group: &GroupSpec, name: &str) -> Result<GradedRep<F::Elem>, RepError> {
    let unknown = || RepError::UnknownName(name.to_string());
    let int_arg = |s: &str| s.trim().parse::<i64>().map_err(|_| unknown());
    let (m, n) = (group.m as i64, group.n);
    let mut rep = if name == "trivial" {
        GradedRep::trivial()
    } else if name == "sign" {
        GradedRep::sign()
    } else if let Some(rest) = name.strip_prefix("pullback:specht:") {
        GradedRep::specht(f, &checked_partition(rest, group, name)?)?
    } else if let Some(rest) = name.strip_prefix("specht:") {
        GradedRep::specht(f, &checked_partition(rest, group, name)?)?
    } else if let Some(rest) = name.strip_prefix("pullback:") {
        if group.r == group.m {
            return Err(incompatible(name, group, "no proper power map (q = 1)"));
        }
        let sub = GroupSpec {
            m: group.r,
            r: group.r,
            n,
            xi_step: group.xi_step * group.q(),
        };
        let inner = builtin_rep(f, &sub, rest)?;
        return Ok(inner.pullback_power(group.q()));
    } else if let Some(rest) = name.strip_prefix("rho:") {
        if n != 2 {
            return Err(incompatible(name, group, "rho representations need n = 2"));
        }
        match int_arg(rest)? {
            0 => GradedRep::trivial(),
            -1 if m % 2 == 1 => GradedRep::sign(),
            -1 => GradedRep::new(name, 1, RepBase::Parity { with_sign: false }),
            -2 if m % 2 == 0 => GradedRep::new(name, 1, RepBase::Parity { with_sign: true }),
            -3 if m % 2 == 0 => GradedRep::sign(),
            i if i > 0 => GradedRep::power(name, i, 2),
            _ => return Err(incompatible(name, group, "index out of range for this m")),
        }
    } else if let Some(rest) = name.strip_prefix("gamma:") {
        if n != 3 {
            return Err(incompatible(name, group, "gamma representations need n = 3"));
        }
        match int_arg(rest)? {
            0 => {
                let one = f.one();
                let neg = f.neg(&one);
                let zero = f.zero();
                GradedRep::perm_sub(
                    f,
                    name,
                    vec![vec![one.clone(), zero.clone(), neg.clone()], vec![zero, neg, one]],
                )?
            }
            i => GradedRep::power(name, i, 3),
        }
    } else if let Some(rest) = name.strip_prefix("power:") {
        GradedRep::power(name, int_arg(rest)?, n)
    } else if let Some(rest) = name.strip_prefix("wedge:") {
        let k = int_arg(rest)? as usize;
        if k + 1 > n {
            return Err(incompatible(name, group, "exterior power exceeds n - 1"));
        }
        let mut shape = vec![n - k];
        shape.extend(std::iter::repeat_n(1, k));
        GradedRep::specht(f, &shape)?
    } else {
        return Err(unknown());
    };
    rep.name = name.to_string();
    Ok(rep)
}

fn checked_partition(s: &str, group: &GroupSpec, name: &str) -> Result<Vec<usize>, RepError> {
    let lambda = parse_partition(s)?;
    if lambda.iter().sum::<usize>() != group.n {
        return Err(incompatible(name, group, "partition size differs from n"));
    }
    Ok(lambda)
}

/// Names of the irreducible representations of the dihedral group `G(m, m, 2)`
/// in the standard order (`ρ_{-3} … ρ_{m/2-1}` for even `m`, `ρ_{-1} …
/// ρ_{(m-1)/2}` for odd `m`).
pub fn dihedral_irreducibles(m: u32) -> Vec<String> {
    let mut out = Vec::new();
    if m.is_multiple_of(2) {
        for i in [-3i64, -2, -1] {
            out.push(format!("rho:{i}"));
        }
        for i in 0..m as i64 / 2 {
            out.push(format!("rho:{i}"));
        }
    } else {
        out.push("rho:-1".into());
        for i in 0..=(m as i64 - 1) / 2 {
            out.push(format!("rho:{i}"));
        }
    }
    out
}

/// Matrices of the group generators on a `G`-stable span of vectors.
pub struct StableSpace<E> {
    pub dim: usize,
    pub generator_matrices: Vec<Matrix<E>>,
}

/// Computes generator matrices on the span of `vectors` (linearly
/// independent, homogeneous of degree `d`).
pub fn stable_space<F: Field>(
    f: &F,
    group: &GroupSpec,
    rep: &GradedRep<F::Elem>,
    vectors: &[VermaVector<F::Elem>],
    d: u32,
) -> Result<StableSpace<F::Elem>, RepError> {
    let coords = SliceCoords::new(group.n, d, rep.dim);
    let dense: Vec<Vec<F::Elem>> = vectors.iter().map(|v| coords.to_dense(f, v)).collect();
    let dim = dense.len();
    let span = if dim == 0 {
        None
    } else {
        Some(SpanCoordinates::new(f, dense).ok_or(RepError::NotGStable)?)
    };
    let mut mats = Vec::new();
    for g in group.generators() {
        let tau_g = rep.matrix(f, group, &g);
        let mut m = vec![vec![f.zero(); dim]; dim];
        for (col, v) in vectors.iter().enumerate() {
            let img = coords.to_dense(f, &act_vector_with(f, group, &g, &tau_g, v));
            let c = span.as_ref().and_then(|s| s.express(f, &img)).ok_or(RepError::NotGStable)?;
            for (row, x) in c.into_iter().enumerate() {
                m[row][col] = x;
            }
        }
        mats.push(m);
    }
    Ok(StableSpace {
        dim,
        generator_matrices: mats,
    })
}

/// Generator matrices of a representation.
pub fn generator_matrices<F: Field>(f: &F, group: &GroupSpec, rep: &GradedRep<F::Elem>) -> Vec<Matrix<F::Elem>> {
    group.generators().iter().map(|g| rep.matrix(f, group, g)).collect()
}

/// `dim {X : B_g X = X A_g for every generator g}` = `dim Hom_G(A, B)`.
pub fn hom_dim<F: Field>(f: &F, a: &[Matrix<F::Elem>], da: usize, b: &[Matrix<F::Elem>], db: usize) -> usize {
    let nunk = da * db;
    if nunk == 0 {
        return 0;
    }
    let idx = |k: usize, j: usize| k * da + j;
    let mut rows = Vec::new();
    for (ag, bg) in a.iter().zip(b) {
        for i in 0..db {
            for j in 0..da {
                let mut row = vec![f.zero(); nunk];
                for k in 0..db {
                    if !f.is_zero(&bg[i][k]) {
                        row[idx(k, j)] = f.add(&row[idx(k, j)], &bg[i][k]);
                    }
                }
                for k in 0..da {
                    if !f.is_zero(&ag[k][j]) {
                        row[idx(i, k)] = f.sub(&row[idx(i, k)], &ag[k][j]);
                    }
                }
                rows.push(row);
            }
        }
    }
    nunk - linalg::rank(f, &rows, nunk)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    pub by_name: BTreeMap<String, usize>,
    pub end_dim: usize,
}

pub fn is_modular(p: u64, group: &GroupSpec) -> bool {
    group.order().is_multiple_of(p)
}

/// Multiplicities of the given (absolutely irreducible) representations in
/// a `G`-stable slice, plus `dim End_G` of the slice.
pub fn character_multiplicities<F: Field>(
    f: &F,
    group: &GroupSpec,
    rep: &GradedRep<F::Elem>,
    vectors: &[VermaVector<F::Elem>],
    d: u32,
    irreducibles: &[GradedRep<F::Elem>],
) -> Result<Multiplicities, RepError> {
    let p = f.characteristic();
    if is_modular(p, group) {
        return Err(RepError::ModularCharacteristic { p, order: group.order() });
    }
    let space = stable_space(f, group, rep, vectors, d)?;
    let v = &space.generator_matrices;
    let mut by_name = BTreeMap::new();
    for w in irreducibles {
        let wm = generator_matrices(f, group, w);
        let k = hom_dim(f, &wm, w.dim, v, space.dim);
        if k > 0 {
            by_name.insert(w.name.clone(), k);
        }
    }
    let end_dim = hom_dim(f, v, space.dim, v, space.dim);
    Ok(Multiplicities { by_name, end_dim })
}

/// Whether the slice is isomorphic to the irreducible `w`: equal dimension
/// and a nonzero equivariant map from `w`. Valid in any characteristic.
pub fn isomorphic_to<F: Field>(
    f: &F,
    group: &GroupSpec,
    rep: &GradedRep<F::Elem>,
    vectors: &[VermaVector<F::Elem>],
    d: u32,
    w: &GradedRep<F::Elem>,
) -> Result<bool, RepError> {
    let space = stable_space(f, group, rep, vectors, d)?;
    if space.dim != w.dim {
        return Ok(false);
    }
    let wm = generator_matrices(f, group, w);
    Ok(hom_dim(f, &wm, w.dim, &space.generator_matrices, space.dim) > 0)
}
