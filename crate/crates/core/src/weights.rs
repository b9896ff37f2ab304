//! Weight decomposition `ρ = δ + ν` of representations of nilpotent Lie
//! algebras with rational weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lie::{LieAlgebra, LieError, Representation};
use crate::linalg::{kernel, Matrix, Scalar, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("some basis element has an eigenvalue outside the rationals")]
    IrrationalWeights,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("the center is not contained in the derived algebra")]
    HypothesisFails,
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl WeightError {
    pub fn class(&self) -> &'static str {
        match self {
            WeightError::IrrationalWeights => "IrrationalWeights",
            WeightError::NotNilpotent => "NotNilpotent",
            WeightError::HypothesisFails => "HypothesisFails",
            WeightError::Lie(e) => e.class(),
        }
    }
}

/// `ρ` written in a block basis as `δ + ν`: `δ` acts on block `k` by the
/// scalar `weights[k](x)`, `ν` is strictly upper triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSplit {
    /// Columns are the new basis vectors.
    pub change_of_basis: Matrix,
    pub delta: Representation,
    pub nu: Representation,
    /// Values of each weight on the basis `x_1, …, x_n`.
    pub weights: Vec<Vector>,
    pub block_dims: Vec<usize>,
}

impl WeightSplit {
    /// `ρ` in the new basis.
    pub fn conjugated(&self) -> Representation {
        let matrices = self
            .delta
            .matrices()
            .iter()
            .zip(self.nu.matrices())
            .map(|(d, n)| d.add(n))
            .collect();
        Representation::new(self.delta.dim(), matrices).expect("same shapes")
    }
}

/// Coefficients `c_0, …, c_n` of `det(t·I − A)`.
pub fn characteristic_polynomial(a: &Matrix) -> Vec<Scalar> {
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let am = a.mul(&m);
        let trace: Scalar = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -trace / Scalar::from_integer(BigInt::from(k));
    }
    coeffs
}

fn eval(poly: &[Scalar], t: &Scalar) -> Scalar {
    poly.iter().rev().fold(Scalar::zero(), |acc, c| acc * t + c)
}

/// Synthetic division by `t − r`.
fn deflate(poly: &[Scalar], r: &Scalar) -> Vec<Scalar> {
    let n = poly.len() - 1;
    let mut out = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for k in (1..=n).rev() {
        carry = &carry * r + &poly[k];
        out[k - 1] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All roots with multiplicity, or `None` if some root is not rational.
pub fn rational_roots(poly: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut p = poly.to_vec();
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Scalar::zero());
        p.remove(0);
    }
    if p.len() == 1 {
        return Some(roots);
    }
    // clear denominators
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = divisors(ints.last().unwrap());
    let constant = divisors(&ints[0]);
    for q in &lead {
        for a in &constant {
            for sign in [1, -1] {
                let r = Scalar::new(a * sign, q.clone());
                while p.len() > 1 && eval(&p, &r).is_zero() {
                    roots.push(r.clone());
                    p = deflate(&p, &r);
                }
            }
        }
    }
    (p.len() == 1).then_some(roots)
}

/// `R` with `A·B = B·R`, where the columns of `B` span an `A`-invariant
/// subspace.
fn restrict(a: &Matrix, basis: &[Vector], space: &Subspace) -> Matrix {
    let k = basis.len();
    let p = Subspace::span(a.rows(), basis.to_vec());
    debug_assert_eq!(p.dim(), k);
    let mut cols = Vec::with_capacity(k);
    let coords = Matrix::from_columns(basis, a.rows());
    for b in basis {
        let image = a.mul_vec(b);
        debug_assert!(space.contains(&image));
        cols.push(crate::linalg::solve(&coords, &image).expect("invariant subspace"));
    }
    Matrix::from_columns(&cols, k)
}

fn lift(basis: &[Vector], coords: &[Scalar]) -> Vector {
    let mut v = vec![Scalar::zero(); basis[0].len()];
    for (c, b) in coords.iter().zip(basis) {
        crate::linalg::axpy(&mut v, c, b);
    }
    v
}

struct Block {
    basis: Vec<Vector>,
    weight: Vector,
}

/// Splits `V` into the common generalized eigenspaces of the `ρ(x_i)` and
/// picks a basis of each in which `ρ(x_i) − λ(x_i)` is strictly upper
/// triangular.
pub fn weight_decompose(l: &LieAlgebra, rho: &Representation) -> Result<WeightSplit, WeightError> {
    if !l.is_nilpotent() {
        return Err(WeightError::NotNilpotent);
    }
    let dim = rho.dim();
    let n = rho.algebra_dim();
    let mut blocks = vec![Block {
        basis: (0..dim).map(|i| crate::linalg::unit_vector(dim, i)).collect(),
        weight: Vec::new(),
    }];
    if dim == 0 {
        blocks.clear();
    }
    for i in 0..n {
        let a = rho.matrix(i);
        let mut next = Vec::new();
        for block in blocks {
            let space = Subspace::span(dim, block.basis.clone());
            let r = restrict(a, &block.basis, &space);
            let k = r.rows();
            let mut roots =
                rational_roots(&characteristic_polynomial(&r)).ok_or(WeightError::IrrationalWeights)?;
            roots.sort();
            roots.dedup();
            for lambda in roots {
                let shifted = r.sub(&Matrix::identity(k).scale(&lambda));
                let gen = kernel(&shifted.pow(k as u32));
                let basis: Vec<Vector> = gen
                    .basis_vectors()
                    .iter()
                    .map(|c| lift(&block.basis, c))
                    .collect();
                let mut weight = block.weight.clone();
                weight.push(lambda);
                next.push(Block { basis, weight });
            }
        }
        blocks = next;
    }
    let mut columns = Vec::with_capacity(dim);
    let mut block_dims = Vec::new();
    let mut weights = Vec::new();
    for block in &blocks {
        let flag = triangular_basis(rho, block);
        block_dims.push(flag.len());
        weights.push(block.weight.clone());
        columns.extend(flag);
    }
    let p = Matrix::from_columns(&columns, dim);
    let conj = rho.conjugate(&p)?;
    let mut delta_mats = Vec::with_capacity(n);
    for i in 0..n {
        let mut diag = Vec::with_capacity(dim);
        for (w, &d) in weights.iter().zip(&block_dims) {
            diag.extend(std::iter::repeat_n(w[i].clone(), d));
        }
        delta_mats.push(Matrix::diagonal(&diag));
    }
    let nu_mats = conj
        .matrices()
        .iter()
        .zip(&delta_mats)
        .map(|(m, d)| m.sub(d))
        .collect();
    Ok(WeightSplit {
        change_of_basis: p,
        delta: Representation::new(dim, delta_mats)?,
        nu: Representation::new(dim, nu_mats)?,
        weights,
        block_dims,
    })
}

/// Basis of the block adapted to `K_1 ⊂ K_2 ⊂ …` with
/// `K_t = {v : N_i v ∈ K_{t-1} for all i}`, `N_i = ρ(x_i) − λ(x_i)`.
fn triangular_basis(rho: &Representation, block: &Block) -> Vec<Vector> {
    let dim = rho.dim();
    let k = block.basis.len();
    let space = Subspace::span(dim, block.basis.clone());
    let shifted: Vec<Matrix> = rho
        .matrices()
        .iter()
        .zip(&block.weight)
        .map(|(m, lambda)| {
            let r = restrict(m, &block.basis, &space);
            r.sub(&Matrix::identity(k).scale(lambda))
        })
        .collect();
    let mut flag = Subspace::zero(k);
    let mut out = Vec::new();
    while flag.dim() < k {
        // {c : N_i c ∈ flag} = kernel of (projection away from flag) ∘ N_i
        let constraints = flag.annihilator();
        let blocks: Vec<Matrix> = shifted
            .iter()
            .map(|m| Matrix::from_rows_with_cols(constraints.basis_vectors(), k).mul(m))
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let next = kernel(&Matrix::vstack(&refs, k));
        assert!(
            next.dim() > flag.dim(),
            "shifted operators are not jointly nilpotent"
        );
        for v in next.complement_in(&flag).expect("same ambient") {
            out.push(lift(&block.basis, &v));
        }
        flag = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub rho_faithful: bool,
    pub nu_faithful: bool,
}

/// Faithfulness of `ρ` and of its nilpotent part `ν`, which agree when the
/// center lies in the derived algebra.
pub fn faithful_transfer(l: &LieAlgebra, rho: &Representation) -> Result<Transfer, WeightError> {
    if !l.derived().contains_subspace(&l.center()) {
        return Err(WeightError::HypothesisFails);
    }
    let split = weight_decompose(l, rho)?;
    Ok(Transfer {
        rho_faithful: rho.is_faithful(),
        nu_faithful: split.nu.is_faithful(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};

    #[test]
    fn char_poly_and_roots() {
        let a = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(characteristic_polynomial(&a), vec![int(1), int(-2), int(1)]);
        assert_eq!(
            rational_roots(&[int(1), int(-2), int(1)]).unwrap(),
            vec![int(1), int(1)]
        );
        // t² − 2
        assert!(rational_roots(&[int(-2), int(0), int(1)]).is_none());
        // 2t − 1
        assert_eq!(rational_roots(&[int(-1), int(2)]).unwrap(), vec![ratio(1, 2)]);
    }

    #[test]
    fn nilpotent_module_has_zero_weight() {
        let h = LieAlgebra::heisenberg(1);
        let rho = Representation::adjoint(&h);
        let s = weight_decompose(&h, &rho).unwrap();
        assert_eq!(s.weights, vec![vec![int(0); 3]]);
        assert!(s.delta.matrices().iter().all(Matrix::is_zero));
    }

    #[test]
    fn diagonal_weights() {
        let a = LieAlgebra::abelian(1);
        let rho = Representation::new(2, vec![Matrix::diagonal(&[int(1), int(2)])]).unwrap();
        let s = weight_decompose(&a, &rho).unwrap();
        assert_eq!(s.weights.len(), 2);
        assert!(s.nu.matrices()[0].is_zero());
    }

    #[test]
    fn jordan_block() {
        let a = LieAlgebra::abelian(1);
        let rho = Representation::new(2, vec![Matrix::from_i64(&[&[1, 1], &[0, 1]])]).unwrap();
        let s = weight_decompose(&a, &rho).unwrap();
        assert_eq!(s.weights, vec![vec![int(1)]]);
        assert_eq!(s.delta.matrix(0), &Matrix::identity(2));
        assert_eq!(s.nu.matrix(0), &Matrix::from_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn irrational() {
        let a = LieAlgebra::abelian(1);
        let rho = Representation::new(2, vec![Matrix::from_i64(&[&[0, 2], &[1, 0]])]).unwrap();
        assert_eq!(
            weight_decompose(&a, &rho).unwrap_err(),
            WeightError::IrrationalWeights
        );
    }

    #[test]
    fn transfer() {
        let h = LieAlgebra::heisenberg(1);
        let adj = Representation::adjoint(&h);
        let t = faithful_transfer(&h, &adj).unwrap();
        assert!(!t.rho_faithful && !t.nu_faithful);
        let a = LieAlgebra::abelian(2);
        let rho = Representation::new(1, vec![Matrix::zeros(1, 1); 2]).unwrap();
        assert_eq!(
            faithful_transfer(&a, &rho).unwrap_err(),
            WeightError::HypothesisFails
        );
    }
}
