//! Shrinking faithful nilpotent modules by quotients by invariant subspaces.

use crate::lie::{verify_representation, LieAlgebra, LieError, Representation};
use crate::linalg::{is_zero_vector, kernel, rref_from_right, Matrix, Scalar, Subspace, Vector};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("module is not nilpotent: some basis element acts by a non-nilpotent matrix")]
    NotNilpotentModule,
    #[error("module is not faithful")]
    NotFaithful,
    #[error("no invariant vector can be removed without losing faithfulness")]
    NoAdmissibleComplement,
    #[error("exhaustive search is limited to modules of dimension at most {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl ReduceError {
    pub fn class(&self) -> &'static str {
        match self {
            ReduceError::NotNilpotentModule => "NotNilpotentModule",
            ReduceError::NotFaithful => "NotFaithful",
            ReduceError::NoAdmissibleComplement => "NoAdmissibleComplement",
            ReduceError::TooLarge(_) => "TooLarge",
            ReduceError::Lie(e) => e.class(),
        }
    }
}

/// `V^L = ⋂ ker ρ(x_i)`.
pub fn invariant_space(rho: &Representation) -> Result<Subspace, ReduceError> {
    if !rho.is_nilpotent() {
        return Err(ReduceError::NotNilpotentModule);
    }
    Ok(common_kernel(rho))
}

fn common_kernel(rho: &Representation) -> Subspace {
    let blocks: Vec<&Matrix> = rho.matrices().iter().collect();
    kernel(&Matrix::vstack(&blocks, rho.dim()))
}

/// One quotient step `V → V/U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub representation: Representation,
    /// Indices of the old basis vectors that form the basis of `V/U`.
    pub kept: Vec<usize>,
    pub invariant_dim: usize,
    pub complement: Subspace,
}

/// Projection onto the coordinates not eliminated by `u`: `u`'s right
/// echelon rows kill their pivot coordinates, the remaining coordinates
/// form a basis of the quotient.
struct QuotientMap {
    rows: Matrix,
    pivots: Vec<usize>,
    kept: Vec<usize>,
}

impl QuotientMap {
    fn new(u: &Subspace) -> Self {
        let (rows, pivots) = rref_from_right(u.basis());
        let kept = (0..u.ambient()).filter(|i| !pivots.contains(i)).collect();
        QuotientMap { rows, pivots, kept }
    }

    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = -w[p].clone();
            crate::linalg::axpy(&mut w, &f, self.rows.row(r));
        }
        w
    }

    fn project(&self, v: &[Scalar]) -> Vector {
        let w = self.reduce(v);
        self.kept.iter().map(|&i| w[i].clone()).collect()
    }

    fn quotient(&self, rho: &Representation) -> Representation {
        let k = self.kept.len();
        let matrices = rho
            .matrices()
            .iter()
            .map(|m| {
                let cols: Vec<Vector> = self.kept.iter().map(|&i| self.project(&m.column(i))).collect();
                Matrix::from_columns(&cols, k)
            })
            .collect();
        Representation::new(k, matrices).expect("square blocks")
    }
}

/// Whether `V/U` stays faithful: no nonzero central element may act with
/// image inside `U`. Since every nonzero ideal of a nilpotent algebra meets
/// the center, this decides faithfulness of the quotient.
fn center_survives(rho: &Representation, center: &[Vector], u: &Subspace) -> bool {
    let map = QuotientMap::new(u);
    let flattened: Vec<Vector> = center
        .iter()
        .map(|z| {
            let m = rho.act(z);
            (0..m.cols()).flat_map(|c| map.reduce(&m.column(c))).collect()
        })
        .collect();
    let len = rho.dim() * rho.dim();
    Subspace::span(len, flattened).dim() == center.len()
}

/// Quotient by an invariant subspace chosen greedily: the echelon basis of
/// `V^L` is scanned in pivot order and a vector is added to `U` whenever
/// the center still acts faithfully on `V/U`.
pub fn reduce_once(l: &LieAlgebra, rho: &Representation) -> Result<Reduction, ReduceError> {
    let inv = invariant_space(rho)?;
    if !rho.is_faithful() {
        return Err(ReduceError::NotFaithful);
    }
    let center = l.center().basis_vectors();
    let mut u = Subspace::zero(rho.dim());
    for v in inv.basis_vectors() {
        let candidate = u.with_vector(&v);
        if center_survives(rho, &center, &candidate) {
            u = candidate;
        }
    }
    if u.is_zero() {
        return Err(ReduceError::NoAdmissibleComplement);
    }
    Ok(quotient_by(l, rho, u, inv.dim()))
}

/// `V/U` for an invariant `U`; panics if the result is not a faithful module.
fn quotient_by(l: &LieAlgebra, rho: &Representation, u: Subspace, invariant_dim: usize) -> Reduction {
    let map = QuotientMap::new(&u);
    let representation = map.quotient(rho);
    let check = verify_representation(l, &representation);
    assert!(
        check.is_faithful_module(),
        "quotient by invariants lost faithfulness"
    );
    Reduction {
        representation,
        kept: map.kept,
        invariant_dim,
        complement: u,
    }
}

/// `V/U` for an arbitrary submodule `U`.
pub fn quotient_module(
    rho: &Representation,
    u: &Subspace,
) -> Result<(Representation, Vec<usize>), ReduceError> {
    let invariant = rho
        .matrices()
        .iter()
        .all(|m| u.basis_vectors().iter().all(|v| u.contains(&m.mul_vec(v))));
    if !invariant {
        return Err(ReduceError::Lie(LieError::NotASubalgebra));
    }
    let map = QuotientMap::new(u);
    Ok((map.quotient(rho), map.kept))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// The module before this step.
    pub representation: Representation,
    pub invariant_dim: usize,
    pub complement_dim: usize,
    pub kept: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionChain {
    pub steps: Vec<ReductionStep>,
    pub final_module: Representation,
    /// Invariant dimension of the final module.
    pub final_invariant_dim: usize,
}

impl ReductionChain {
    /// Dimensions visited, starting with the input module.
    pub fn dims(&self) -> Vec<usize> {
        self.steps
            .iter()
            .map(|s| s.representation.dim())
            .chain(std::iter::once(self.final_module.dim()))
            .collect()
    }

    pub fn invariant_dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.invariant_dim).collect()
    }

    /// Indices into the input basis of the vectors spanning the final module.
    pub fn final_indices(&self) -> Vec<usize> {
        let start = self
            .steps
            .first()
            .map_or(self.final_module.dim(), |s| s.representation.dim());
        let mut idx: Vec<usize> = (0..start).collect();
        for s in &self.steps {
            idx = s.kept.iter().map(|&k| idx[k]).collect();
        }
        idx
    }
}

pub fn reduce_fully(l: &LieAlgebra, rho: &Representation) -> Result<ReductionChain, ReduceError> {
    let mut current = rho.clone();
    let mut steps = Vec::new();
    loop {
        match reduce_once(l, &current) {
            Ok(r) => {
                steps.push(ReductionStep {
                    representation: current,
                    invariant_dim: r.invariant_dim,
                    complement_dim: r.complement.dim(),
                    kept: r.kept,
                });
                current = r.representation;
            }
            Err(ReduceError::NoAdmissibleComplement) => {
                let final_invariant_dim = invariant_space(&current)?.dim();
                return Ok(ReductionChain {
                    steps,
                    final_module: current,
                    final_invariant_dim,
                });
            }
            Err(e) => return Err(e),
        }
    }
}

pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Smallest dimension reachable by successive quotients, where each `U`
/// is spanned by a subset of the echelon basis of the invariants. Debug
/// aid for small modules only.
pub fn exhaustive_minimum(l: &LieAlgebra, rho: &Representation) -> Result<usize, ReduceError> {
    if rho.dim() > EXHAUSTIVE_LIMIT {
        return Err(ReduceError::TooLarge(EXHAUSTIVE_LIMIT));
    }
    if !rho.is_faithful() {
        return Err(ReduceError::NotFaithful);
    }
    let center = l.center().basis_vectors();
    search(rho, &center)
}

fn search(rho: &Representation, center: &[Vector]) -> Result<usize, ReduceError> {
    let inv = invariant_space(rho)?.basis_vectors();
    let mut best = rho.dim();
    for mask in 1u32..(1 << inv.len()) {
        let chosen: Vec<Vector> = (0..inv.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| inv[b].clone())
            .collect();
        let u = Subspace::span(rho.dim(), chosen);
        if !center_survives(rho, center, &u) {
            continue;
        }
        let q = QuotientMap::new(&u).quotient(rho);
        best = best.min(search(&q, center)?);
    }
    Ok(best)
}

/// Whether `v` lies in the invariant space of `rho`.
pub fn is_invariant(rho: &Representation, v: &[Scalar]) -> bool {
    rho.matrices().iter().all(|m| is_zero_vector(&m.mul_vec(v)))
}
