use num_traits::Zero;

use super::{LieAlgebra, LieError, Representation, Terms};
use crate::linalg::{axpy, int, unit_vector, Matrix, Scalar, Subspace, Vector};

/// Where an original basis vector lands in `𝔡 ⋉ 𝔫`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// Index into the inner basis.
    Inner(usize),
    /// Index into the list of derivations.
    Outer(usize),
}

/// A decomposition `𝔤 = 𝔟 ⊕ 𝔫` of a basis into an ideal `𝔫` and a
/// complementary subalgebra `𝔟`, with `𝔟` acting on `𝔫` by the derivations
/// `D_a = ad(b_a)|_𝔫`.
#[derive(Debug, Clone)]
pub struct SemidirectData {
    pub original: LieAlgebra,
    pub inner: LieAlgebra,
    pub inner_indices: Vec<usize>,
    pub outer_indices: Vec<usize>,
    pub outer: LieAlgebra,
    /// Matrices in inner coordinates, one per outer basis vector.
    pub derivations: Vec<Matrix>,
}

impl SemidirectData {
    /// Splits the basis of `l` into the (0-based) `inner_indices`, which must
    /// span an ideal, and the remaining indices, which must span a subalgebra
    /// acting injectively.
    pub fn decompose(l: &LieAlgebra, inner_indices: &[usize]) -> Result<Self, LieError> {
        let n = l.dim();
        let mut inner_indices = inner_indices.to_vec();
        inner_indices.sort_unstable();
        inner_indices.dedup();
        if let Some(&i) = inner_indices.iter().find(|&&i| i >= n) {
            return Err(LieError::IndexOutOfRange(i + 1, n));
        }
        let outer_indices: Vec<usize> = (0..n).filter(|i| !inner_indices.contains(i)).collect();
        let inner_space = Subspace::coordinate(n, inner_indices.iter().copied());
        if !l.is_ideal(&inner_space) {
            return Err(LieError::NotAnIdeal);
        }
        let outer_space = Subspace::coordinate(n, outer_indices.iter().copied());
        if !l.is_subalgebra(&outer_space) {
            return Err(LieError::NotASubalgebra);
        }
        let inner_vecs: Vec<Vector> = inner_indices.iter().map(|&i| unit_vector(n, i)).collect();
        let outer_vecs: Vec<Vector> = outer_indices.iter().map(|&i| unit_vector(n, i)).collect();
        let inner = l.restrict(&inner_vecs)?;
        let outer = l.restrict(&outer_vecs)?;
        let derivations: Vec<Matrix> = outer_indices
            .iter()
            .map(|&a| {
                let ad = l.ad_basis(a);
                ad.submatrix(&inner_indices, &inner_indices)
            })
            .collect();
        let flat: Vec<Vector> = derivations.iter().map(|d| d.flatten().to_vec()).collect();
        let m = inner.dim();
        if Matrix::from_columns(&flat, m * m).rank() < derivations.len() {
            return Err(LieError::NotInjective);
        }
        Ok(SemidirectData {
            original: l.clone(),
            inner,
            inner_indices,
            outer_indices,
            outer,
            derivations,
        })
    }

    /// The trivial decomposition: `𝔫 = 𝔤`, no derivations.
    pub fn whole(l: &LieAlgebra) -> Self {
        Self::decompose(l, &(0..l.dim()).collect::<Vec<_>>()).expect("whole algebra is an ideal")
    }

    /// Builds `𝔡 ⋉ 𝔫` from derivations of `inner`. The outer basis comes
    /// first in the resulting algebra.
    pub fn from_derivations(inner: &LieAlgebra, derivations: Vec<Matrix>) -> Result<Self, LieError> {
        let m = inner.dim();
        if derivations.iter().any(|d| !inner.is_derivation(d)) {
            return Err(LieError::NotDerivation);
        }
        let outer = derivation_algebra(m, &derivations)?;
        let k = derivations.len();
        let mut entries: Vec<(usize, usize, Terms)> =
            outer.brackets().map(|(a, b, t)| (a, b, t.clone())).collect();
        for (a, d) in derivations.iter().enumerate() {
            for j in 0..m {
                let terms: Terms = d
                    .column(j)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (k + i, c))
                    .collect();
                if !terms.is_empty() {
                    entries.push((a, k + j, terms));
                }
            }
        }
        entries.extend(
            inner
                .brackets()
                .map(|(i, j, t)| (k + i, k + j, t.iter().map(|(l, c)| (k + l, c.clone())).collect())),
        );
        let original = LieAlgebra::from_brackets(k + m, entries)?;
        Ok(SemidirectData {
            original,
            inner: inner.clone(),
            inner_indices: (k..k + m).collect(),
            outer_indices: (0..k).collect(),
            outer,
            derivations,
        })
    }

    pub fn part(&self, original_index: usize) -> Part {
        if let Some(p) = self.inner_indices.iter().position(|&i| i == original_index) {
            Part::Inner(p)
        } else {
            Part::Outer(
                self.outer_indices
                    .iter()
                    .position(|&i| i == original_index)
                    .expect("index belongs to the decomposition"),
            )
        }
    }

    /// Checks that `b ↦ D_b`, `x ↦ x` preserves brackets on all basis pairs.
    pub fn is_homomorphism(&self) -> bool {
        let n = self.original.dim();
        let m = self.inner.dim();
        // image of an original vector: (derivation matrix, inner vector)
        let image = |v: &[Scalar]| -> (Matrix, Vector) {
            let mut d = Matrix::zeros(m, m);
            let mut x = vec![Scalar::zero(); m];
            for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                match self.part(i) {
                    Part::Inner(p) => x[p] += c,
                    Part::Outer(a) => d.add_scaled(c, &self.derivations[a]),
                }
            }
            (d, x)
        };
        for i in 0..n {
            let (di, xi) = image(&unit_vector(n, i));
            for j in (i + 1)..n {
                let (dj, xj) = image(&unit_vector(n, j));
                let (dl, xl) = image(&self.original.bracket_basis(i, j));
                // [(D,x),(E,y)] = ([D,E], Dy − Ex + [x,y])
                let mut x = self.inner.bracket(&xi, &xj);
                axpy(&mut x, &int(1), &di.mul_vec(&xj));
                axpy(&mut x, &int(-1), &dj.mul_vec(&xi));
                if di.commutator(&dj) != dl || x != xl {
                    return false;
                }
            }
        }
        true
    }
}

/// Structure constants of the span of `matrices` under the commutator.
fn derivation_algebra(size: usize, matrices: &[Matrix]) -> Result<LieAlgebra, LieError> {
    let flat: Vec<Vector> = matrices.iter().map(|d| d.flatten().to_vec()).collect();
    let span = Matrix::from_columns(&flat, size * size);
    if span.rank() < matrices.len() {
        return Err(LieError::NotFaithfulAction);
    }
    let mut entries = Vec::new();
    for a in 0..matrices.len() {
        for b in (a + 1)..matrices.len() {
            let c = matrices[a].commutator(&matrices[b]);
            if c.is_zero() {
                continue;
            }
            let coords = crate::linalg::solve(&span, c.flatten()).ok_or(LieError::NotASubalgebra)?;
            let terms: Terms = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            entries.push((a, b, terms));
        }
    }
    LieAlgebra::from_brackets(matrices.len(), entries)
}

/// The adjoint action of `⟨D⟩ ⋉ L` restricted to `L`, on the basis
/// `x_1, …, x_n, D`. Faithful when `D` is injective on the center.
pub fn extend_by_derivation(l: &LieAlgebra, d: &Matrix) -> Result<Representation, LieError> {
    l.lower_central_series()?;
    if !l.is_derivation(d) {
        return Err(LieError::NotDerivation);
    }
    let z = l.center();
    if z.image(d).dim() < z.dim() {
        return Err(LieError::CenterDegenerate);
    }
    let n = l.dim();
    let matrices = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(n + 1, n + 1);
            let ad = l.ad_basis(i);
            for r in 0..n {
                for c in 0..n {
                    m[(r, c)] = ad[(r, c)].clone();
                }
                // [x_i, D] = −D x_i
                m[(r, n)] = -d[(r, i)].clone();
            }
            m
        })
        .collect();
    Representation::new(n + 1, matrices)
}

/// The algebra `𝔟 ⋉ 𝔞` for a Lie algebra `𝔟` of endomorphisms of the
/// abelian `𝔞 = ℚ^r` (given by a basis of matrices), together with its
/// representation `(b, a) ↦ [[b, a], [0, 0]]` of dimension `r + 1`.
pub fn affine_embed(
    abelian_dim: usize,
    matrices: &[Matrix],
) -> Result<(LieAlgebra, Representation), LieError> {
    let r = abelian_dim;
    if matrices.iter().any(|m| m.rows() != r || m.cols() != r) {
        return Err(LieError::Shape {
            expected: matrices.len(),
            size: r,
            got: "non-square action".into(),
        });
    }
    let semi = SemidirectData::from_derivations(&LieAlgebra::abelian(r), matrices.to_vec())?;
    let k = matrices.len();
    let mut reps = Vec::with_capacity(k + r);
    for d in matrices {
        let mut m = Matrix::zeros(r + 1, r + 1);
        for i in 0..r {
            for j in 0..r {
                m[(i, j)] = d[(i, j)].clone();
            }
        }
        reps.push(m);
    }
    for a in 0..r {
        let mut m = Matrix::zeros(r + 1, r + 1);
        m[(a, r)] = int(1);
        reps.push(m);
    }
    Ok((semi.original, Representation::new(r + 1, reps)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::verify_representation;
    use num_traits::One;

    fn filiform4() -> LieAlgebra {
        LieAlgebra::standard_filiform(4)
    }

    #[test]
    fn decompose_codim_one_ideal() {
        let s = SemidirectData::decompose(&filiform4(), &[1, 2, 3]).unwrap();
        assert_eq!(s.outer_indices, vec![0]);
        let d = &s.derivations[0];
        // D x2 = x3, D x3 = x4 in inner coordinates (x2, x3, x4)
        assert_eq!(d.column(0), vec![int(0), int(1), int(0)]);
        assert_eq!(d.column(1), vec![int(0), int(0), int(1)]);
        assert!(s.inner.is_abelian());
        assert!(s.is_homomorphism());
    }

    #[test]
    fn decompose_other_ideal() {
        let s = SemidirectData::decompose(&filiform4(), &[0, 2, 3]).unwrap();
        assert_eq!(s.outer_indices, vec![1]);
        // D = ad(x2): D x1 = −x3
        assert_eq!(s.derivations[0].column(0), vec![int(0), int(-1), int(0)]);
        assert!(s.is_homomorphism());
    }

    #[test]
    fn decompose_errors() {
        assert_eq!(
            SemidirectData::decompose(&filiform4(), &[0, 1]).unwrap_err(),
            LieError::NotAnIdeal
        );
        assert_eq!(
            SemidirectData::decompose(&LieAlgebra::abelian(2), &[0]).unwrap_err(),
            LieError::NotInjective
        );
        // [x1,x2]=x3 with ideal ⟨x3⟩? complement ⟨x1,x2⟩ not closed
        assert_eq!(
            SemidirectData::decompose(&LieAlgebra::heisenberg(1), &[2]).unwrap_err(),
            LieError::NotASubalgebra
        );
    }

    #[test]
    fn extension_by_derivation() {
        let f = filiform4();
        let d = Matrix::diagonal(&[int(1), int(1), int(2), int(3)]);
        let rho = extend_by_derivation(&f, &d).unwrap();
        assert_eq!(rho.dim(), 5);
        assert!(verify_representation(&f, &rho).is_faithful_module());

        let h = LieAlgebra::heisenberg(1);
        let rho = extend_by_derivation(&h, &Matrix::diagonal(&[int(1), int(1), int(2)])).unwrap();
        assert_eq!(rho.dim(), 4);
        assert!(verify_representation(&h, &rho).is_faithful_module());

        assert_eq!(
            extend_by_derivation(&h, &Matrix::zeros(3, 3)).unwrap_err(),
            LieError::CenterDegenerate
        );
        assert_eq!(
            extend_by_derivation(&h, &Matrix::identity(3)).unwrap_err(),
            LieError::NotDerivation
        );
    }

    #[test]
    fn affine_examples() {
        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        let (g, rho) = affine_embed(2, &[rot]).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(rho.dim(), 3);
        assert!(verify_representation(&g, &rho).is_faithful_module());

        assert_eq!(
            affine_embed(2, &[Matrix::zeros(2, 2)]).unwrap_err(),
            LieError::NotFaithfulAction
        );

        let (g, rho) = affine_embed(1, &[]).unwrap();
        assert_eq!((g.dim(), rho.dim()), (1, 2));
        assert!(verify_representation(&g, &rho).is_faithful_module());
    }

    #[test]
    fn from_derivations_roundtrip() {
        let inner = LieAlgebra::abelian(3);
        let mut d = Matrix::zeros(3, 3);
        d[(1, 0)] = Scalar::one();
        d[(2, 1)] = Scalar::one();
        let s = SemidirectData::from_derivations(&inner, vec![d]).unwrap();
        assert_eq!(s.original, filiform4());
        assert!(s.is_homomorphism());
    }
}
