use num_traits::{One, Zero};

use super::LieError;
use crate::linalg::{
    axpy, int, is_zero_vector, kernel, unit_vector, zero_vector, Matrix, Scalar, Subspace, Vector,
};

/// Sparse linear combination `Σ c_k x_k`.
pub type Terms = Vec<(usize, Scalar)>;

/// A finite-dimensional Lie algebra given by structure constants in a fixed
/// basis `x_0, …, x_{n-1}` (displayed 1-based as `x1 … xn`).
///
/// Brackets are supplied for `i < j`; the table for `j > i` is filled by
/// antisymmetry, so `[x_i, x_i] = 0` holds by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    table: Vec<Terms>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "LieAlgebra(dim {}) {{", self.dim)?;
        for (i, j, terms) in self.brackets() {
            let rhs: Vec<String> = terms.iter().map(|(k, c)| format!("{}*x{}", c, k + 1)).collect();
            writeln!(f, "  [x{}, x{}] = {}", i + 1, j + 1, rhs.join(" + "))?;
        }
        write!(f, "}}")
    }
}

fn clean(terms: Terms) -> Terms {
    let mut dense: std::collections::BTreeMap<usize, Scalar> = Default::default();
    for (k, c) in terms {
        *dense.entry(k).or_insert_with(Scalar::zero) += c;
    }
    dense.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl LieAlgebra {
    /// Builds the bracket table without checking the Jacobi identity.
    /// Pairs with `i > j` are accepted and stored with the opposite sign.
    pub fn from_brackets(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Terms)>,
    ) -> Result<Self, LieError> {
        let mut table = vec![Terms::new(); dim * dim];
        for (i, j, terms) in brackets {
            if i >= dim || j >= dim {
                return Err(LieError::IndexOutOfRange(i.max(j) + 1, dim));
            }
            if i == j {
                return Err(LieError::DiagonalBracket(i + 1));
            }
            if let Some((k, _)) = terms.iter().find(|(k, _)| *k >= dim) {
                return Err(LieError::IndexOutOfRange(k + 1, dim));
            }
            let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            let mut entry = std::mem::take(&mut table[a * dim + b]);
            entry.extend(terms.into_iter().map(|(k, c)| (k, c * int(sign))));
            table[a * dim + b] = clean(entry);
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                table[j * dim + i] = table[i * dim + j].iter().map(|(k, c)| (*k, -c.clone())).collect();
            }
        }
        Ok(LieAlgebra { dim, table })
    }

    /// Builds the algebra and checks the Jacobi identity on all basis
    /// triples, reporting the first violating triple.
    pub fn validate(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Terms)>,
    ) -> Result<Self, LieError> {
        let l = Self::from_brackets(dim, brackets)?;
        if let Some((i, j, k)) = l.jacobi_violation() {
            return Err(LieError::JacobiViolation(i + 1, j + 1, k + 1));
        }
        Ok(l)
    }

    /// Structure constants from a dense bracket function on basis pairs.
    pub fn from_dense(dim: usize, bracket: impl Fn(usize, usize) -> Vector) -> Self {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let v = bracket(i, j);
                let terms: Terms = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !terms.is_empty() {
                    entries.push((i, j, terms));
                }
            }
        }
        Self::from_brackets(dim, entries).expect("dense bracket indices are in range")
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(dim, []).unwrap()
    }

    /// Heisenberg algebra of dimension `2k+1`: `[x_i, x_{k+i}] = x_{2k+1}`.
    pub fn heisenberg(k: usize) -> Self {
        let dim = 2 * k + 1;
        Self::from_brackets(dim, (0..k).map(|i| (i, k + i, vec![(dim - 1, Scalar::one())]))).unwrap()
    }

    /// Standard graded filiform algebra: `[x_1, x_i] = x_{i+1}` for `2 ≤ i < n`.
    pub fn standard_filiform(dim: usize) -> Self {
        Self::from_brackets(
            dim,
            (1..dim.saturating_sub(1)).map(|i| (0, i, vec![(i + 1, Scalar::one())])),
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vector(self.dim);
        for (k, c) in self.bracket_terms(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Nonzero brackets `[x_i, x_j]` with `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &Terms)> {
        (0..self.dim).flat_map(move |i| {
            ((i + 1)..self.dim).filter_map(move |j| {
                let t = &self.table[i * self.dim + j];
                (!t.is_empty()).then_some((i, j, t))
            })
        })
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.bracket_terms(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)`; column `j` holds `[x, x_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &unit_vector(self.dim, j));
            m.set_column(j, &col);
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vector(self.dim, i))
    }

    /// First basis triple `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let e = |i| unit_vector(n, i);
        for i in 0..n {
            for j in (i + 1)..n {
                let ij = self.bracket_basis(i, j);
                for k in (j + 1)..n {
                    let mut sum = self.bracket(&e(i), &self.bracket_basis(j, k));
                    let a = self.bracket(&e(j), &self.bracket_basis(k, i));
                    let b = self.bracket(&e(k), &ij);
                    axpy(&mut sum, &Scalar::one(), &a);
                    axpy(&mut sum, &Scalar::one(), &b);
                    if !is_zero_vector(&sum) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        let bv = b.basis_vectors();
        for x in a.basis_vectors() {
            for y in &bv {
                let z = self.bracket(&x, y);
                if !is_zero_vector(&z) {
                    vecs.push(z);
                }
            }
        }
        Subspace::span(self.dim, vecs)
    }

    pub fn derived(&self) -> Subspace {
        let vecs = self
            .brackets()
            .map(|(i, j, _)| self.bracket_basis(i, j))
            .collect();
        Subspace::span(self.dim, vecs)
    }

    /// Joint kernel of all `ad(x_i)`.
    pub fn center(&self) -> Subspace {
        let blocks: Vec<Matrix> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        kernel(&Matrix::vstack(&refs, self.dim))
    }

    /// Terms `𝔫^1 = 𝔫, 𝔫^{i+1} = [𝔫, 𝔫^i]` up to the last nonzero one. The
    /// class is the length of the returned list.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>, LieError> {
        let full = Subspace::full(self.dim);
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        let mut series = vec![full.clone()];
        loop {
            let next = self.bracket_subspaces(&full, series.last().unwrap());
            if next.is_zero() {
                return Ok(series);
            }
            if next.dim() == series.last().unwrap().dim() {
                return Err(LieError::NotNilpotent);
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> Result<usize, LieError> {
        Ok(self.lower_central_series()?.len())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().is_ok()
    }

    /// Nilpotent of maximal class `n - 1` (and `n ≥ 3`).
    pub fn is_filiform(&self) -> bool {
        self.dim >= 3 && matches!(self.nilpotency_class(), Ok(c) if c + 1 == self.dim)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let all = Subspace::full(self.dim);
        s.contains_subspace(&self.bracket_subspaces(&all, s))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_subspaces(s, s))
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        self.bracket_subspaces(s, s).is_zero()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets().next().is_none()
    }

    /// `D[x_i, x_j] = [D x_i, x_j] + [x_i, D x_j]` on all basis pairs.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        if d.rows() != self.dim || d.cols() != self.dim {
            return false;
        }
        let n = self.dim;
        for i in 0..n {
            let di = d.column(i);
            let ei = unit_vector(n, i);
            for j in (i + 1)..n {
                let dj = d.column(j);
                let lhs = d.mul_vec(&self.bracket_basis(i, j));
                let mut rhs = self.bracket(&di, &unit_vector(n, j));
                axpy(&mut rhs, &Scalar::one(), &self.bracket(&ei, &dj));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Re-expresses the algebra in a new basis. Column `k` of `basis` is
    /// the `k`-th new basis vector in old coordinates.
    pub fn change_basis(&self, basis: &Matrix) -> Result<LieAlgebra, LieError> {
        let inv = basis.inverse().map_err(|_| LieError::SingularBasis)?;
        let cols: Vec<Vector> = (0..self.dim).map(|k| basis.column(k)).collect();
        Ok(LieAlgebra::from_dense(self.dim, |a, b| {
            inv.mul_vec(&self.bracket(&cols[a], &cols[b]))
        }))
    }

    /// The subalgebra spanned by `vectors` (assumed independent), written in
    /// that basis.
    pub fn restrict(&self, vectors: &[Vector]) -> Result<LieAlgebra, LieError> {
        let m = vectors.len();
        let span = Matrix::from_columns(vectors, self.dim);
        let mut out = Vec::new();
        for a in 0..m {
            for b in (a + 1)..m {
                let z = self.bracket(&vectors[a], &vectors[b]);
                if is_zero_vector(&z) {
                    continue;
                }
                let coords = crate::linalg::solve(&span, &z).ok_or(LieError::NotASubalgebra)?;
                let terms: Terms = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                out.push((a, b, terms));
            }
        }
        LieAlgebra::from_brackets(m, out)
    }

    /// Direct sum `self ⊕ other`, with `other`'s basis placed after `self`'s.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let off = self.dim;
        let mut entries: Vec<(usize, usize, Terms)> =
            self.brackets().map(|(i, j, t)| (i, j, t.clone())).collect();
        entries.extend(other.brackets().map(|(i, j, t)| {
            (
                i + off,
                j + off,
                t.iter().map(|(k, c)| (k + off, c.clone())).collect(),
            )
        }));
        LieAlgebra::from_brackets(self.dim + other.dim, entries).unwrap()
    }

    /// Splits off a central abelian direct factor: `L = ℚ^ℓ ⊕ M` with
    /// `Z(M) ⊆ [M, M]`.
    pub fn split_abelian_factor(&self) -> Result<AbelianSplit, LieError> {
        self.lower_central_series()?;
        let n = self.dim;
        let z = self.center();
        let d = self.derived();
        let zd = z.intersect(&d).expect("same ambient");
        let abelian_part = z.complement_in(&zd).expect("same ambient");
        // M = D ⊕ E, where E completes D ⊕ C to the whole algebra.
        let d_plus_c = Subspace::span(
            n,
            d.basis_vectors()
                .into_iter()
                .chain(abelian_part.iter().cloned())
                .collect(),
        );
        let e = Subspace::full(n).complement_in(&d_plus_c).unwrap();
        let mut m_basis = d.basis_vectors();
        m_basis.extend(e);
        m_basis.sort_by_key(|v| v.iter().position(|x| !x.is_zero()));
        let m = self.restrict(&m_basis)?;
        Ok(AbelianSplit {
            ell: abelian_part.len(),
            abelian_basis: abelian_part,
            complement_basis: m_basis,
            complement: m,
        })
    }
}

/// Result of [`LieAlgebra::split_abelian_factor`]. Basis vectors are in the
/// coordinates of the original algebra.
#[derive(Debug, Clone)]
pub struct AbelianSplit {
    pub ell: usize,
    pub abelian_basis: Vec<Vector>,
    pub complement_basis: Vec<Vector>,
    pub complement: LieAlgebra,
}
