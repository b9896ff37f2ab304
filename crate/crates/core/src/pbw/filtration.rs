use super::PbwError;
use crate::lie::{LieAlgebra, SemidirectData};
use crate::linalg::{Scalar, Subspace};

/// A strictly descending chain `𝔫 = F_1 ⊃ F_2 ⊃ … ⊃ F_C ⊃ F_{C+1} = 0`
/// with `[F_i, F_j] ⊆ F_{i+j}`. Only the nonzero terms are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedFiltration {
    terms: Vec<Subspace>,
}

impl AdaptedFiltration {
    pub fn from_terms(algebra: &LieAlgebra, mut terms: Vec<Subspace>) -> Result<Self, PbwError> {
        let n = algebra.dim();
        while terms.last().is_some_and(Subspace::is_zero) {
            terms.pop();
        }
        if let Some(t) = terms.iter().find(|t| t.ambient() != n) {
            return Err(PbwError::NotAdapted(format!(
                "term lives in dimension {}, algebra has dimension {}",
                t.ambient(),
                n
            )));
        }
        match terms.first() {
            None if n > 0 => return Err(PbwError::NotAdapted("no terms given".into())),
            Some(first) if first.dim() != n => {
                return Err(PbwError::NotAdapted("first term is not the whole algebra".into()))
            }
            _ => {}
        }
        for (i, w) in terms.windows(2).enumerate() {
            if !(w[0].contains_subspace(&w[1]) && w[0].dim() > w[1].dim()) {
                return Err(PbwError::NotAdapted(format!(
                    "term {} does not strictly contain term {}",
                    i + 1,
                    i + 2
                )));
            }
        }
        let f = AdaptedFiltration { terms };
        let c = f.length();
        for i in 1..=c {
            for j in i..=c {
                let br = algebra.bracket_subspaces(&f.term(i), &f.term(j));
                if !f.term(i + j).contains_subspace(&br) {
                    return Err(PbwError::NotAdapted(format!(
                        "[F{}, F{}] is not contained in F{}",
                        i,
                        j,
                        i + j
                    )));
                }
            }
        }
        Ok(f)
    }

    /// The lower central series of `algebra`.
    pub fn lower_central(algebra: &LieAlgebra) -> Result<Self, PbwError> {
        let terms = algebra.lower_central_series()?;
        Self::from_terms(algebra, terms)
    }

    /// `F_i = 𝔫 ∩ 𝔤^i` for the ideal `𝔫` of a decomposition, with repeated
    /// terms collapsed.
    pub fn inherited(semi: &SemidirectData) -> Result<Self, PbwError> {
        let g = &semi.original;
        let n = g.dim();
        let full = Subspace::full(n);
        let mut series = vec![full.clone()];
        loop {
            let next = g.bracket_subspaces(&full, series.last().unwrap());
            if next.dim() == series.last().unwrap().dim() {
                if !next.is_zero() {
                    return Err(PbwError::NotAdapted(
                        "lower central series of the whole algebra does not reach zero".into(),
                    ));
                }
                break;
            }
            series.push(next);
        }
        let inner_dim = semi.inner_indices.len();
        let inner_space = Subspace::coordinate(n, semi.inner_indices.iter().copied());
        let mut terms: Vec<Subspace> = Vec::new();
        for s in &series {
            let meet = inner_space.intersect(s).expect("same ambient");
            let restricted = Subspace::span(
                inner_dim,
                meet.basis_vectors()
                    .into_iter()
                    .map(|v| semi.inner_indices.iter().map(|&i| v[i].clone()).collect())
                    .collect(),
            );
            if terms.last() != Some(&restricted) {
                terms.push(restricted);
            }
        }
        Self::from_terms(&semi.inner, terms)
    }

    /// `C`, the index of the last nonzero term.
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    /// `F_t` for `t ≥ 1`; zero beyond the length.
    pub fn term(&self, t: usize) -> Subspace {
        assert!(t >= 1);
        match self.terms.get(t - 1) {
            Some(s) => s.clone(),
            None => Subspace::zero(self.ambient()),
        }
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    pub fn ambient(&self) -> usize {
        self.terms.first().map_or(0, Subspace::ambient)
    }

    /// Largest `t` with `v ∈ F_t`, or `None` for `v = 0`.
    pub fn order_of(&self, v: &[Scalar]) -> Option<usize> {
        if crate::linalg::is_zero_vector(v) {
            return None;
        }
        self.terms.iter().rposition(|t| t.contains(v)).map(|p| p + 1)
    }
}
