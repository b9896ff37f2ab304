use num_traits::Zero;

use super::{LieAlgebra, LieError};
use crate::linalg::{kernel, Matrix, Scalar, Subspace};

/// Matrices `ρ(x_1), …, ρ(x_n)` acting on `ℚ^d` (column vectors).
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    matrices: Vec<Matrix>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Representation(dim {}) {{", self.dim)?;
        for (i, m) in self.matrices.iter().enumerate() {
            writeln!(f, "  x{}: {:?}", i + 1, m)?;
        }
        write!(f, "}}")
    }
}

impl Representation {
    pub fn new(dim: usize, matrices: Vec<Matrix>) -> Result<Self, LieError> {
        if let Some(m) = matrices.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(LieError::Shape {
                expected: matrices.len(),
                size: dim,
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        Ok(Representation { dim, matrices })
    }

    /// The adjoint representation.
    pub fn adjoint(l: &LieAlgebra) -> Self {
        let matrices = (0..l.dim()).map(|i| l.ad_basis(i)).collect();
        Representation {
            dim: l.dim(),
            matrices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    pub fn into_matrices(self) -> Vec<Matrix> {
        self.matrices
    }

    /// `ρ(x)` for `x = Σ c_i x_i`.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out.add_scaled(c, m);
            }
        }
        out
    }

    /// `{x : ρ(x) = 0}`.
    pub fn kernel(&self) -> Subspace {
        let columns: Vec<Vec<Scalar>> = self.matrices.iter().map(|m| m.flatten().to_vec()).collect();
        kernel(&Matrix::from_columns(&columns, self.dim * self.dim))
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.matrices.iter().all(Matrix::is_nilpotent)
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(self.matrices.len(), other.matrices.len());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Representation {
            dim: self.dim + other.dim,
            matrices,
        }
    }

    /// `P⁻¹ ρ(x) P`: the same module in the basis given by the columns of `P`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Representation, LieError> {
        let inv = p.inverse().map_err(|_| LieError::SingularBasis)?;
        let matrices = self.matrices.iter().map(|m| inv.mul(&m.mul(p))).collect();
        Ok(Representation {
            dim: self.dim,
            matrices,
        })
    }

    /// Representation of the same algebra written in a new basis; column `k`
    /// of `basis` is the `k`-th new basis vector in old coordinates.
    pub fn pull_back(&self, basis: &Matrix) -> Representation {
        let matrices = (0..basis.cols()).map(|k| self.act(&basis.column(k))).collect();
        Representation {
            dim: self.dim,
            matrices,
        }
    }
}

/// Outcome of [`verify_representation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub is_module: bool,
    /// First basis pair (1-based) on which the bracket relation fails.
    pub failing_pair: Option<(usize, usize)>,
    pub kernel: Subspace,
}

impl Verification {
    pub fn is_faithful_module(&self) -> bool {
        self.is_module && self.kernel.is_zero()
    }
}

/// Checks `ρ([x_i, x_j]) = [ρ(x_i), ρ(x_j)]` on all basis pairs and computes
/// the kernel of `ρ`.
pub fn verify_representation(l: &LieAlgebra, rho: &Representation) -> Verification {
    let n = l.dim();
    let mut failing_pair = None;
    if rho.algebra_dim() != n {
        failing_pair = Some((0, 0));
    } else {
        'outer: for i in 0..n {
            for j in (i + 1)..n {
                let lhs = rho.act(&l.bracket_basis(i, j));
                if lhs != rho.matrices[i].commutator(&rho.matrices[j]) {
                    failing_pair = Some((i + 1, j + 1));
                    break 'outer;
                }
            }
        }
    }
    Verification {
        is_module: failing_pair.is_none(),
        failing_pair,
        kernel: rho.kernel(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use num_traits::One;

    #[test]
    fn adjoint_kernel_is_center() {
        let h = LieAlgebra::heisenberg(1);
        let v = verify_representation(&h, &Representation::adjoint(&h));
        assert!(v.is_module);
        assert_eq!(v.kernel, Subspace::coordinate(3, [2]));
    }

    #[test]
    fn perturbation_breaks_module() {
        let h = LieAlgebra::heisenberg(1);
        let rho = Representation::adjoint(&h);
        let mut mats = rho.into_matrices();
        mats[0] = mats[0].add(&Matrix::diagonal(&[Scalar::one(), int(0), int(0)]));
        let bad = Representation::new(3, mats).unwrap();
        let v = verify_representation(&h, &bad);
        assert!(!v.is_module);
        assert_eq!(v.failing_pair, Some((1, 2)));
    }

    #[test]
    fn conjugation_preserves_module() {
        let f = LieAlgebra::standard_filiform(4);
        let rho = Representation::adjoint(&f);
        let p = Matrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[0, 0, 1, 0], &[1, 0, 0, 1]]);
        let c = rho.conjugate(&p).unwrap();
        assert!(verify_representation(&f, &c).is_module);
        assert_eq!(c.kernel(), rho.kernel());
    }

    #[test]
    fn shape_mismatch() {
        assert!(Representation::new(2, vec![Matrix::identity(3)]).is_err());
    }
}
