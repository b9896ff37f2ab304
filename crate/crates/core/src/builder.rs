//! Faithful finite-dimensional quotients of `U(𝔫)` for `𝔤 = 𝔡 ⋉ 𝔫`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bounds;
use crate::lie::{verify_representation, LieAlgebra, LieError, Part, Representation, SemidirectData};
use crate::linalg::{int, unit_vector, Matrix, Scalar, Subspace, Vector};
use crate::pbw::{squeeze_level, AdaptedFiltration, Monomial, PbwContext, PbwError, UeaElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("J is not an ideal of the inner algebra")]
    NotIdeal,
    #[error("J is not abelian")]
    NotAbelian,
    #[error("J is not stable under the derivations")]
    NotDInvariant,
    #[error("J is not squeezed between consecutive filtration terms")]
    NotSqueezed,
    #[error("derivations do not raise the order: need o(Dx) >= o(x) + 1")]
    DerivationsNotOrderRaising,
    #[error("derivations do not preserve the order: need o(Dx) >= o(x)")]
    DerivationsNotOrderPreserving,
    #[error("constructed module failed verification: {0}")]
    FaithfulnessCheckFailed(String),
    #[error("algebra is not two-step nilpotent")]
    NotTwoStep,
    #[error("algebra is not filiform in an adapted basis ([x1, xi] = x(i+1))")]
    NotFiliform,
    #[error("ideal <x{0}, ..., xn> is not abelian")]
    JNotAbelian(usize),
    #[error("suffix start {0} out of range")]
    SuffixOutOfRange(usize),
    #[error("no compatible ideal found")]
    NoCompatibleIdealFound,
    #[error("module dimension {got} differs from the expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("order-truncation module of dimension {dim} exceeds (3/sqrt(n))*2^n for n = {n}")]
    BoundViolated { dim: usize, n: usize },
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl BuildError {
    pub fn class(&self) -> &'static str {
        match self {
            BuildError::NotIdeal => "NotIdeal",
            BuildError::NotAbelian => "NotAbelian",
            BuildError::NotDInvariant => "NotDInvariant",
            BuildError::NotSqueezed => "NotSqueezed",
            BuildError::DerivationsNotOrderRaising => "DerivationsNotOrderRaising",
            BuildError::DerivationsNotOrderPreserving => "DerivationsNotOrderPreserving",
            BuildError::FaithfulnessCheckFailed(_) => "FaithfulnessCheckFailed",
            BuildError::NotTwoStep => "NotTwoStep",
            BuildError::NotFiliform => "NotFiliform",
            BuildError::JNotAbelian(_) => "JNotAbelian",
            BuildError::SuffixOutOfRange(_) => "SuffixOutOfRange",
            BuildError::NoCompatibleIdealFound => "NoCompatibleIdealFound",
            BuildError::DimensionMismatch { .. } => "DimensionMismatch",
            BuildError::BoundViolated { .. } => "BoundViolated",
            BuildError::Pbw(e) => e.class(),
            BuildError::Lie(e) => e.class(),
        }
    }
}

/// `J = ⟨y_m, …, y_n⟩` in the aligned basis of a context, with
/// `F_{t+1} ⊆ J ⊆ F_t` for `t = level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleIdeal {
    pub suffix_start: usize,
    pub level: usize,
    pub dim: usize,
}

impl CompatibleIdeal {
    /// Validates the aligned suffix starting at `m` (0-based).
    pub fn check(ctx: &PbwContext, m: usize) -> Result<Self, BuildError> {
        let n = ctx.dim();
        if m > n {
            return Err(BuildError::SuffixOutOfRange(m + 1));
        }
        let j = Subspace::coordinate(n, m..n);
        let l = ctx.algebra();
        if !l.is_ideal(&j) {
            return Err(BuildError::NotIdeal);
        }
        if !l.is_abelian_subspace(&j) {
            return Err(BuildError::NotAbelian);
        }
        if ctx
            .derivations()
            .iter()
            .any(|d| !j.contains_subspace(&j.image(d)))
        {
            return Err(BuildError::NotDInvariant);
        }
        let terms: Vec<Subspace> = (1..=ctx.length()).map(|t| ctx.aligned_term(t)).collect();
        let aligned = AdaptedFiltration::from_terms(l, terms)?;
        let level = squeeze_level(&aligned, &j).ok_or(BuildError::NotSqueezed)?;
        Ok(CompatibleIdeal {
            suffix_start: m,
            level,
            dim: n - m,
        })
    }

    pub fn has_support(&self, m: &Monomial) -> bool {
        m.exponents()[self.suffix_start..].iter().any(|&e| e > 0)
    }
}

/// Checks the compatibility conditions for a subspace `J` of the inner
/// algebra (inner coordinates) and builds a context aligned with it, with
/// threshold `C`.
pub fn prepare(
    semi: SemidirectData,
    filtration: AdaptedFiltration,
    j: &Subspace,
) -> Result<(PbwContext, CompatibleIdeal), BuildError> {
    let inner = &semi.inner;
    if j.ambient() != inner.dim() {
        return Err(BuildError::NotIdeal);
    }
    if !inner.is_ideal(j) {
        return Err(BuildError::NotIdeal);
    }
    if !inner.is_abelian_subspace(j) {
        return Err(BuildError::NotAbelian);
    }
    if semi.derivations.iter().any(|d| !j.contains_subspace(&j.image(d))) {
        return Err(BuildError::NotDInvariant);
    }
    if squeeze_level(&filtration, j).is_none() {
        return Err(BuildError::NotSqueezed);
    }
    let c = filtration.length() as u32;
    let ctx = PbwContext::new(semi, filtration, c, Some(j))?;
    let m = ctx.dim() - j.dim();
    let ideal = CompatibleIdeal::check(&ctx, m)?;
    Ok((ctx, ideal))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisElement {
    Monomial(Monomial),
    /// Standard basis vector of the diagonal module of a split-off abelian
    /// factor.
    AbelianFactor(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    CompatibleQuotient {
        filtration_length: usize,
        ideal_dim: usize,
        level: usize,
    },
    OrderTruncation {
        threshold: usize,
    },
    TwoStep {
        abelian_factor: usize,
    },
    Filiform {
        n: usize,
        beta: usize,
    },
}

/// A faithful module of the original algebra `𝔤` with a named basis.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub algebra: LieAlgebra,
    pub basis: Vec<BasisElement>,
    pub names: Vec<String>,
    pub representation: Representation,
    pub construction: Construction,
}

impl QuotientModule {
    pub fn dim(&self) -> usize {
        self.representation.dim()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .filter_map(|b| match b {
                BasisElement::Monomial(m) => Some(m.clone()),
                BasisElement::AbelianFactor(_) => None,
            })
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Action of the original algebra on the span of `basis` inside `U(𝔫)`,
/// where monomials outside the basis are discarded. `dropped` must accept
/// every discarded monomial; a violation means the span is not a quotient.
fn quotient_action(
    ctx: &PbwContext,
    basis: &[Monomial],
    dropped: impl Fn(&Monomial) -> bool,
) -> Result<Representation, BuildError> {
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let semi = ctx.semidirect();
    let g = &semi.original;
    let d = basis.len();
    let mut s = ctx.straightener();
    let mut matrices = Vec::with_capacity(g.dim());
    for i in 0..g.dim() {
        let mut mat = Matrix::zeros(d, d);
        for (col, m) in basis.iter().enumerate() {
            let v = UeaElement::monomial(m.clone(), Scalar::one());
            let image = match semi.part(i) {
                Part::Inner(p) => {
                    let x = ctx.to_aligned(&unit_vector(semi.inner.dim(), p));
                    s.left_mul(&x, &v)
                }
                Part::Outer(a) => s.derive(&ctx.derivations()[a], &v),
            };
            for (mono, c) in image.terms() {
                match index.get(mono) {
                    Some(&row) => mat[(row, col)] = c.clone(),
                    None if dropped(mono) => {}
                    None => {
                        return Err(BuildError::FaithfulnessCheckFailed(format!(
                            "monomial {} escapes the quotient basis",
                            ctx.monomial_name(mono)
                        )))
                    }
                }
            }
        }
        matrices.push(mat);
    }
    Ok(Representation::new(d, matrices)?)
}

fn verified(
    algebra: &LieAlgebra,
    basis: Vec<BasisElement>,
    names: Vec<String>,
    representation: Representation,
    construction: Construction,
) -> Result<QuotientModule, BuildError> {
    let v = verify_representation(algebra, &representation);
    if !v.is_module {
        return Err(BuildError::FaithfulnessCheckFailed(format!(
            "bracket relation fails on {:?}",
            v.failing_pair
        )));
    }
    if !v.kernel.is_zero() {
        return Err(BuildError::FaithfulnessCheckFailed(format!(
            "kernel of dimension {}",
            v.kernel.dim()
        )));
    }
    Ok(QuotientModule {
        algebra: algebra.clone(),
        basis,
        names,
        representation,
        construction,
    })
}

/// Is the monomial in `Z_J = ⟨⟨J⟩⟩ ∩ 𝓛₂ + V_C ∩ 𝓛₂`?
pub fn in_z_j(ctx: &PbwContext, ideal: &CompatibleIdeal, m: &Monomial) -> bool {
    let c = ctx.length() as u32;
    m.length() >= 2 && (ideal.has_support(m) || ctx.monomial_order(m) >= c)
}

/// Basis of `U(𝔫)/Z_J`: the monomials of order at most `C` outside `Z_J`.
pub fn quotient_basis(ctx: &PbwContext, ideal: &CompatibleIdeal) -> Vec<Monomial> {
    let c = ctx.length() as u32;
    ctx.enumerate_monomials(c, |m, _, _| !in_z_j(ctx, ideal, m))
}

/// The module `U(𝔫)/Z_J` pulled back to the original algebra.
pub fn build_quotient(ctx: &PbwContext, ideal: &CompatibleIdeal) -> Result<QuotientModule, BuildError> {
    if !ctx.order_raising() {
        return Err(BuildError::DerivationsNotOrderRaising);
    }
    let c = ctx.length();
    let ctx = ctx.with_threshold(c as u32);
    let basis = quotient_basis(&ctx, ideal);
    let rep = quotient_action(&ctx, &basis, |m| in_z_j(&ctx, ideal, m))?;
    let names = basis.iter().map(|m| ctx.monomial_name(m)).collect();
    verified(
        &ctx.semidirect().original,
        basis.into_iter().map(BasisElement::Monomial).collect(),
        names,
        rep,
        Construction::CompatibleQuotient {
            filtration_length: c,
            ideal_dim: ideal.dim,
            level: ideal.level,
        },
    )
}

/// Independent check of the monomial description of `Z_J`: computes
/// `⟨⟨J⟩⟩` by straightening right multiples `X^α y_k` and compares
/// `⟨⟨J⟩⟩ ∩ 𝓛₂ + V_C ∩ 𝓛₂` with the span of the predicted monomials,
/// everything modulo `V_{C+1}`.
pub fn z_j_matches_monomial_span(ctx: &PbwContext, ideal: &CompatibleIdeal) -> bool {
    let c = ctx.length() as u32;
    let ctx = ctx.with_threshold(c);
    let all = ctx.enumerate_monomials(c, |_, _, _| true);
    let index: HashMap<&Monomial, usize> = all.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let size = all.len();
    let n = ctx.dim();
    let mut s = ctx.straightener();
    let mut rows = Vec::new();
    for k in ideal.suffix_start..n {
        let y = UeaElement::monomial(Monomial::generator(n, k), Scalar::one());
        for m in &all {
            if ctx.monomial_order(m) + ctx.orders()[k] > c {
                continue;
            }
            let w = s.mul_monomial(m, &y);
            let mut row = vec![Scalar::zero(); size];
            for (mono, coeff) in w.terms() {
                row[index[mono]] = coeff.clone();
            }
            rows.push(row);
        }
    }
    let generated = Subspace::span(size, rows);
    let long = Subspace::coordinate(size, (0..size).filter(|&i| all[i].length() >= 2));
    let high_long = Subspace::coordinate(
        size,
        (0..size).filter(|&i| all[i].length() >= 2 && ctx.monomial_order(&all[i]) >= c),
    );
    let z = generated
        .intersect(&long)
        .and_then(|w| w.sum(&high_long))
        .expect("same ambient");
    let predicted = Subspace::coordinate(size, (0..size).filter(|&i| in_z_j(&ctx, ideal, &all[i])));
    z == predicted
}

/// `U(𝔫)/V_{c+1}` for the lower central series of `𝔫`, pulled back to the
/// original algebra.
pub fn build_order_truncation(semi: SemidirectData) -> Result<QuotientModule, BuildError> {
    build_truncation(semi, None)
}

/// `U(𝔫)/V_{T+1}` for the lower central series of `𝔫`; `None` means
/// `T = c`. The size bound is only checked for `T = c`.
pub fn build_truncation(semi: SemidirectData, threshold: Option<u32>) -> Result<QuotientModule, BuildError> {
    let f = AdaptedFiltration::lower_central(&semi.inner)?;
    let class = f.length();
    let c = threshold.map_or(class, |t| t as usize);
    let ctx = PbwContext::new(semi, f, c as u32, None)?;
    if !ctx.order_preserving() {
        return Err(BuildError::DerivationsNotOrderPreserving);
    }
    let basis = ctx.enumerate_monomials(c as u32, |_, _, _| true);
    let n = ctx.dim();
    let d = basis.len();
    // d ≤ (3/√n)·2^n  ⟺  d²·n ≤ 9·4^n
    if c == class
        && n > 0
        && BigInt::from(d * d) * BigInt::from(n) > BigInt::from(9) * BigInt::from(4).pow(n as u32)
    {
        return Err(BuildError::BoundViolated { dim: d, n });
    }
    let rep = quotient_action(&ctx, &basis, |m| ctx.monomial_order(m) > c as u32)?;
    let names = basis.iter().map(|m| ctx.monomial_name(m)).collect();
    verified(
        &ctx.semidirect().original,
        basis.into_iter().map(BasisElement::Monomial).collect(),
        names,
        rep,
        Construction::OrderTruncation { threshold: c },
    )
}

/// Picks a compatible ideal: among the center, the filtration terms, and
/// greedy enlargements of each `F_{t+1}` by basis vectors of the block
/// `F_t / F_{t+1}`, the compatible one of largest dimension (ties: smallest
/// level).
pub fn auto_select_ideal(
    semi: SemidirectData,
    filtration: AdaptedFiltration,
) -> Result<(PbwContext, CompatibleIdeal), BuildError> {
    let inner = semi.inner.clone();
    let derivations = semi.derivations.clone();
    let compatible = |j: &Subspace| -> Option<usize> {
        if !inner.is_ideal(j) || !inner.is_abelian_subspace(j) {
            return None;
        }
        if derivations.iter().any(|d| !j.contains_subspace(&j.image(d))) {
            return None;
        }
        squeeze_level(&filtration, j)
    };
    let mut candidates: Vec<Subspace> = vec![inner.center()];
    let c = filtration.length();
    for t in 1..=c {
        candidates.push(filtration.term(t));
        let mut s = filtration.term(t + 1);
        for v in filtration.term(t).complement_in(&s).expect("same ambient") {
            let bigger = s.with_vector(&v);
            if compatible(&bigger).is_some() {
                s = bigger;
            }
        }
        candidates.push(s);
    }
    let best = candidates
        .into_iter()
        .filter_map(|j| compatible(&j).map(|t| (j, t)))
        .max_by(|(a, ta), (b, tb)| a.dim().cmp(&b.dim()).then(tb.cmp(ta)))
        .map(|(j, _)| j)
        .ok_or(BuildError::NoCompatibleIdealFound)?;
    prepare(semi, filtration, &best)
}

/// Faithful module of dimension `dim L` for a two-step nilpotent `L`: an
/// abelian factor is split off and handled by a diagonal module; the rest
/// uses a codimension-one ideal containing `[M, M]`, the filtration
/// `𝔫 ⊃ Z(M) ⊃ 0` and `J = Z(M)`.
pub fn two_step_module(l: &LieAlgebra) -> Result<QuotientModule, BuildError> {
    let split = l.split_abelian_factor()?;
    let m = &split.complement;
    if m.nilpotency_class()? != 2 {
        return Err(BuildError::NotTwoStep);
    }
    let md = m.dim();
    let derived = m.derived();
    let outside = Subspace::full(md).complement_in(&derived).expect("same ambient");
    let mut new_basis: Vec<Vector> = outside.clone();
    new_basis.extend(derived.basis_vectors());
    let p = Matrix::from_columns(&new_basis, md);
    let mm = m.change_basis(&p)?;
    let semi = SemidirectData::decompose(&mm, &(1..md).collect::<Vec<_>>())?;
    let center: Vec<Vector> = mm
        .center()
        .basis_vectors()
        .into_iter()
        .map(|v| v[1..].to_vec())
        .collect();
    let z = Subspace::span(md - 1, center);
    let filtration = AdaptedFiltration::from_terms(&semi.inner, vec![Subspace::full(md - 1), z.clone()])?;
    let (ctx, ideal) = prepare(semi, filtration, &z)?;
    let inner_module = build_quotient(&ctx, &ideal)?;

    // ρ on L: write each x_i in the basis (abelian part, columns of P).
    let ell = split.ell;
    let n = l.dim();
    let mut combined: Vec<Vector> = split.abelian_basis.clone();
    for col in 0..md {
        let mut v = vec![Scalar::zero(); n];
        for (k, c) in p.column(col).iter().enumerate() {
            crate::linalg::axpy(&mut v, c, &split.complement_basis[k]);
        }
        combined.push(v);
    }
    let change = Matrix::from_columns(&combined, n);
    let coords = change.inverse().map_err(|_| LieError::SingularBasis)?;
    let d = ell + inner_module.dim();
    let mut matrices = Vec::with_capacity(n);
    for i in 0..n {
        let c = coords.column(i);
        let mut mat = Matrix::zeros(d, d);
        for a in 0..ell {
            mat[(a, a)] = c[a].clone();
        }
        let inner_part = inner_module.representation.act(&c[ell..]);
        for r in 0..inner_module.dim() {
            for s in 0..inner_module.dim() {
                mat[(ell + r, ell + s)] = inner_part[(r, s)].clone();
            }
        }
        matrices.push(mat);
    }
    let mut basis: Vec<BasisElement> = (0..ell).map(BasisElement::AbelianFactor).collect();
    basis.extend(inner_module.basis.iter().cloned());
    let mut names: Vec<String> = (0..ell).map(|a| format!("e{}", a + 1)).collect();
    names.extend(inner_module.names.iter().cloned());
    let module = verified(
        l,
        basis,
        names,
        Representation::new(d, matrices)?,
        Construction::TwoStep { abelian_factor: ell },
    )?;
    if module.dim() != n {
        return Err(BuildError::DimensionMismatch {
            expected: n,
            got: module.dim(),
        });
    }
    Ok(module)
}

/// Filiform with `[x_1, x_i] = x_{i+1}` plus terms in `⟨x_{i+2}, …, x_n⟩`.
/// Filiform with `[x_1, x_i] = x_{i+1} + (higher terms)` for `2 ≤ i < n`.
pub fn is_adapted_filiform(f: &LieAlgebra) -> bool {
    let n = f.dim();
    if n < 3 || !f.is_filiform() {
        return false;
    }
    (1..n - 1).all(|i| {
        let v = f.bracket_basis(0, i);
        v[i + 1] == int(1) && v[..=i].iter().all(Zero::is_zero)
    })
}

/// The construction for a filiform algebra with `𝔫 = ⟨x_2, …, x_n⟩`,
/// `𝔡 = ⟨ad x_1⟩`, the filtration inherited from the lower central series
/// and `J = ⟨x_m, …, x_n⟩` (`m` 1-based). The dimension is `f(n, β)` with
/// `β = n - m + 1`.
pub fn filiform_module(f: &LieAlgebra, m: usize) -> Result<QuotientModule, BuildError> {
    let n = f.dim();
    if !is_adapted_filiform(f) {
        return Err(BuildError::NotFiliform);
    }
    if m < 2 || m > n {
        return Err(BuildError::SuffixOutOfRange(m));
    }
    let semi = SemidirectData::decompose(f, &(1..n).collect::<Vec<_>>())?;
    // inner coordinates are x_2..x_n, so x_m sits at m - 2
    let j = Subspace::coordinate(n - 1, (m - 2)..(n - 1));
    if !semi.inner.is_abelian_subspace(&j) {
        return Err(BuildError::JNotAbelian(m));
    }
    let filtration = AdaptedFiltration::inherited(&semi)?;
    let (ctx, ideal) = prepare(semi, filtration, &j)?;
    let mut module = build_quotient(&ctx, &ideal)?;
    let beta = n - m + 1;
    let expected = bounds::f(n as u64, beta as u64).expect("range checked above");
    if BigInt::from(module.dim()) != expected {
        return Err(BuildError::DimensionMismatch {
            expected: expected.try_into().unwrap_or(usize::MAX),
            got: module.dim(),
        });
    }
    module.construction = Construction::Filiform { n, beta };
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_example() -> (PbwContext, CompatibleIdeal) {
        let g = LieAlgebra::standard_filiform(4);
        let semi = SemidirectData::decompose(&g, &[0, 2, 3]).unwrap();
        let f = AdaptedFiltration::inherited(&semi).unwrap();
        let j = Subspace::coordinate(3, [1, 2]);
        prepare(semi, f, &j).unwrap()
    }

    fn second_example() -> (PbwContext, CompatibleIdeal) {
        let g = LieAlgebra::standard_filiform(4);
        let semi = SemidirectData::decompose(&g, &[1, 2, 3]).unwrap();
        let f = AdaptedFiltration::inherited(&semi).unwrap();
        prepare(semi, f, &Subspace::full(3)).unwrap()
    }

    #[test]
    fn compatibility_levels() {
        let (_, j) = first_example();
        assert_eq!((j.level, j.dim, j.suffix_start), (2, 2, 1));
        let (_, j) = second_example();
        assert_eq!((j.level, j.dim), (1, 3));
    }

    #[test]
    fn heisenberg_whole_ideal_is_not_abelian() {
        let h = LieAlgebra::heisenberg(1);
        let semi = SemidirectData::whole(&h);
        let f = AdaptedFiltration::lower_central(&h).unwrap();
        let ctx = PbwContext::new(semi, f, 2, None).unwrap();
        assert_eq!(
            CompatibleIdeal::check(&ctx, 0).unwrap_err(),
            BuildError::NotAbelian
        );
    }

    #[test]
    fn first_example_module() {
        let (ctx, j) = first_example();
        let module = build_quotient(&ctx, &j).unwrap();
        assert_eq!(module.names, ["1", "X1", "X3", "X1^2", "X4"]);
        let x2 = module.representation.matrix(1);
        let from = module.index_of("X1^2").unwrap();
        let to = module.index_of("X4").unwrap();
        let col = x2.column(from);
        for (r, c) in col.iter().enumerate() {
            assert_eq!(*c, if r == to { int(1) } else { int(0) });
        }
        assert!(z_j_matches_monomial_span(&ctx, &j));
    }

    #[test]
    fn second_example_module() {
        let (ctx, j) = second_example();
        let module = build_quotient(&ctx, &j).unwrap();
        assert_eq!(module.names, ["1", "X2", "X3", "X4"]);
        let rho = &module.representation;
        // x1·X2 = X3 and x2·1 = X2
        assert_eq!(rho.matrix(0)[(2, 1)], int(1));
        assert_eq!(rho.matrix(1)[(1, 0)], int(1));
        assert!(z_j_matches_monomial_span(&ctx, &j));
    }

    #[test]
    fn heisenberg_codim_one() {
        let h = LieAlgebra::heisenberg(1);
        let semi = SemidirectData::decompose(&h, &[1, 2]).unwrap();
        let f = AdaptedFiltration::inherited(&semi).unwrap();
        assert_eq!(f.length(), 2);
        let (ctx, j) = prepare(semi, f, &Subspace::coordinate(2, [1])).unwrap();
        let module = build_quotient(&ctx, &j).unwrap();
        assert_eq!(module.dim(), 3);
    }

    #[test]
    fn not_order_raising() {
        // whole algebra with lower central filtration but a derivation that
        // only preserves orders
        let a = LieAlgebra::abelian(2);
        let mut d = Matrix::zeros(2, 2);
        d[(1, 0)] = int(1);
        let semi = SemidirectData::from_derivations(&a, vec![d]).unwrap();
        let f = AdaptedFiltration::lower_central(&a).unwrap();
        let (ctx, j) = prepare(semi, f, &Subspace::coordinate(2, [1])).unwrap();
        assert_eq!(
            build_quotient(&ctx, &j).unwrap_err(),
            BuildError::DerivationsNotOrderRaising
        );
    }

    #[test]
    fn order_truncations() {
        let g = LieAlgebra::standard_filiform(4);
        let semi = SemidirectData::decompose(&g, &[1, 2, 3]).unwrap();
        let module = build_order_truncation(semi).unwrap();
        assert_eq!(module.names, ["1", "X2", "X3", "X4"]);

        let module = build_order_truncation(SemidirectData::whole(&LieAlgebra::abelian(2))).unwrap();
        assert_eq!(module.names, ["1", "X1", "X2"]);

        let module = build_order_truncation(SemidirectData::whole(&LieAlgebra::heisenberg(1))).unwrap();
        assert_eq!(module.dim(), 7);
    }

    #[test]
    fn two_step_examples() {
        for k in 1..=3 {
            let h = LieAlgebra::heisenberg(k);
            assert_eq!(two_step_module(&h).unwrap().dim(), 2 * k + 1);
        }
        let hc = LieAlgebra::heisenberg(1).direct_sum(&LieAlgebra::abelian(2));
        assert_eq!(two_step_module(&hc).unwrap().dim(), 5);
        assert_eq!(
            two_step_module(&LieAlgebra::abelian(3)).unwrap_err(),
            BuildError::NotTwoStep
        );
        assert_eq!(
            two_step_module(&LieAlgebra::standard_filiform(4)).unwrap_err(),
            BuildError::NotTwoStep
        );
    }

    #[test]
    fn filiform_dimensions() {
        let f4 = LieAlgebra::standard_filiform(4);
        assert_eq!(filiform_module(&f4, 2).unwrap().dim(), 4);
        let f5 = LieAlgebra::standard_filiform(5);
        assert_eq!(filiform_module(&f5, 3).unwrap().dim(), 7);
        assert_eq!(
            filiform_module(&LieAlgebra::heisenberg(2), 2).unwrap_err(),
            BuildError::NotFiliform
        );
    }

    #[test]
    fn auto_selection() {
        let f4 = LieAlgebra::standard_filiform(4);
        let semi = SemidirectData::decompose(&f4, &[1, 2, 3]).unwrap();
        let f = AdaptedFiltration::inherited(&semi).unwrap();
        let (_, j) = auto_select_ideal(semi, f).unwrap();
        assert_eq!(j.dim, 3);

        let h = LieAlgebra::heisenberg(1);
        let semi = SemidirectData::whole(&h);
        let f = AdaptedFiltration::lower_central(&h).unwrap();
        let (ctx, j) = auto_select_ideal(semi, f).unwrap();
        // greedy enlargement of Z = ⟨x3⟩ by x1
        assert_eq!(j.dim, 2);
        assert_eq!(ctx.labels(), &["X2", "X1", "X3"]);
        assert!(build_quotient(&ctx, &j).is_ok());
    }
}
