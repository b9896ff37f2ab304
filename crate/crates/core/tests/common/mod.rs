#![allow(dead_code)]

use faithful_core::lie::{LieAlgebra, Representation};
use faithful_core::linalg::{int, Matrix, Scalar, Subspace, Vector};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut impl Rng, range: i64) -> Scalar {
    int(rng.gen_range(-range..=range))
}

fn flatten(m: &Matrix) -> Vector {
    m.flatten().to_vec()
}

fn unflatten(v: &[Scalar], n: usize) -> Matrix {
    Matrix::from_rows((0..n).map(|r| v[r * n..(r + 1) * n].to_vec()).collect())
}

/// The Lie subalgebra of strictly upper triangular `m×m` matrices generated
/// by a few random sparse generators, rejected if larger than `max_dim`.
pub fn random_nilpotent(rng: &mut impl Rng, max_dim: usize) -> LieAlgebra {
    loop {
        let m = rng.gen_range(3..=5);
        let gens = rng.gen_range(2..=3);
        let mut space = Subspace::zero(m * m);
        let mut basis: Vec<Matrix> = Vec::new();
        for _ in 0..gens {
            let mut g = Matrix::zeros(m, m);
            for r in 0..m {
                for c in (r + 1)..m {
                    if rng.gen_bool(0.5) {
                        g[(r, c)] = small(rng, 2);
                    }
                }
            }
            if !space.contains(&flatten(&g)) {
                space = space.with_vector(&flatten(&g));
                basis.push(g);
            }
        }
        let mut k = 0;
        let mut too_big = false;
        while k < basis.len() && !too_big {
            for i in 0..k {
                let c = basis[i].commutator(&basis[k]);
                if !space.contains(&flatten(&c)) {
                    space = space.with_vector(&flatten(&c));
                    basis.push(c);
                    if basis.len() > max_dim {
                        too_big = true;
                        break;
                    }
                }
            }
            k += 1;
        }
        if too_big || basis.is_empty() {
            continue;
        }
        let vectors = space.basis_vectors();
        let mats: Vec<Matrix> = vectors.iter().map(|v| unflatten(v, m)).collect();
        return LieAlgebra::from_dense(mats.len(), |i, j| {
            space
                .coordinates(&flatten(&mats[i].commutator(&mats[j])))
                .expect("closed under brackets")
        });
    }
}

/// Random two-step nilpotent algebra of dimension at most `max_dim`:
/// brackets of the first `k` basis vectors land in the span of the rest.
pub fn random_two_step(rng: &mut impl Rng, max_dim: usize) -> LieAlgebra {
    loop {
        let k = rng.gen_range(2..=max_dim - 1);
        let r = rng.gen_range(1..=(max_dim - k).min(3));
        let dim = k + r;
        let mut table = vec![vec![Scalar::zero(); dim]; dim * dim];
        for i in 0..k {
            for j in (i + 1)..k {
                for z in k..dim {
                    if rng.gen_bool(0.4) {
                        table[i * dim + j][z] = small(rng, 2);
                    }
                }
            }
        }
        let l = LieAlgebra::from_dense(dim, |i, j| table[i * dim + j].clone());
        if l.nilpotency_class().ok() == Some(2) {
            return l;
        }
    }
}

/// Bracket relations and injectivity, checked directly on the matrices.
pub fn check_faithful_module(l: &LieAlgebra, rho: &Representation) -> Result<(), String> {
    let n = l.dim();
    if rho.algebra_dim() != n {
        return Err(format!(
            "{} matrices for an algebra of dimension {n}",
            rho.algebra_dim()
        ));
    }
    let d = rho.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = rho
                .matrix(i)
                .mul(rho.matrix(j))
                .sub(&rho.matrix(j).mul(rho.matrix(i)));
            let mut rhs = Matrix::zeros(d, d);
            for (k, c) in l.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    rhs.add_scaled(c, rho.matrix(k));
                }
            }
            if lhs != rhs {
                return Err(format!("bracket relation fails on ({}, {})", i + 1, j + 1));
            }
        }
    }
    let stacked = Matrix::from_rows_with_cols((0..n).map(|i| flatten(rho.matrix(i))).collect(), d * d);
    if stacked.rank() != n {
        return Err(format!("kernel of dimension {}", n - stacked.rank()));
    }
    Ok(())
}
