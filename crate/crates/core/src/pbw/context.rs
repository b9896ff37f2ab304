use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{AdaptedFiltration, Monomial, PbwError, UeaElement};
use crate::lie::{LieAlgebra, SemidirectData};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// `U(𝔫)` truncated at order `T`, over a basis of `𝔫` aligned with an
/// adapted filtration, together with the derivations `𝔡` acting on it.
#[derive(Debug, Clone)]
pub struct PbwContext {
    semi: SemidirectData,
    filtration: AdaptedFiltration,
    basis: Matrix,
    basis_inverse: Matrix,
    algebra: LieAlgebra,
    derivations: Vec<Matrix>,
    orders: Vec<u32>,
    threshold: u32,
    labels: Vec<String>,
    ideal_level: Option<usize>,
}

impl PbwContext {
    /// Chooses a basis of `𝔫` in which every filtration term is spanned by a
    /// suffix. When `ideal` is given, the block it straddles is ordered so
    /// that the ideal is a suffix as well.
    pub fn new(
        semi: SemidirectData,
        filtration: AdaptedFiltration,
        threshold: u32,
        ideal: Option<&Subspace>,
    ) -> Result<Self, PbwError> {
        let n = semi.inner.dim();
        if filtration.ambient() != n {
            return Err(PbwError::NotAdapted(
                "filtration does not live in the inner algebra".into(),
            ));
        }
        let c = filtration.length();
        let ideal_level = match ideal {
            None => None,
            Some(j) => Some(squeeze_level(&filtration, j).ok_or(PbwError::BasisAlignmentImpossible)?),
        };
        let mut columns: Vec<Vector> = Vec::with_capacity(n);
        let mut orders = Vec::with_capacity(n);
        for t in 1..=c {
            let upper = filtration.term(t);
            let lower = filtration.term(t + 1);
            let block = match (ideal, ideal_level) {
                (Some(j), Some(level)) if level == t => {
                    let mut v = upper.complement_in(j).expect("same ambient");
                    v.extend(j.complement_in(&lower).expect("same ambient"));
                    v
                }
                _ => upper.complement_in(&lower).expect("same ambient"),
            };
            orders.extend(std::iter::repeat_n(t as u32, block.len()));
            columns.extend(block);
        }
        debug_assert_eq!(columns.len(), n);
        let basis = Matrix::from_columns(&columns, n);
        let basis_inverse = basis.inverse().map_err(|_| PbwError::BasisAlignmentImpossible)?;
        let algebra = semi.inner.change_basis(&basis)?;
        let derivations = semi
            .derivations
            .iter()
            .map(|d| basis_inverse.mul(&d.mul(&basis)))
            .collect();
        let labels = columns
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let support: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
                match support.as_slice() {
                    [i] if v[*i].is_one() => format!("X{}", semi.inner_indices[*i] + 1),
                    _ => format!("Y{}", k + 1),
                }
            })
            .collect();
        Ok(PbwContext {
            semi,
            filtration,
            basis,
            basis_inverse,
            algebra,
            derivations,
            orders,
            threshold,
            labels,
            ideal_level,
        })
    }

    pub fn with_threshold(&self, threshold: u32) -> PbwContext {
        let mut c = self.clone();
        c.threshold = threshold;
        c
    }

    pub fn semidirect(&self) -> &SemidirectData {
        &self.semi
    }

    pub fn filtration(&self) -> &AdaptedFiltration {
        &self.filtration
    }

    /// `C`.
    pub fn length(&self) -> usize {
        self.filtration.length()
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    /// Number of generators of `U(𝔫)`.
    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// `𝔫` written in the aligned basis.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Columns are the aligned basis vectors in inner coordinates.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Derivation matrices in the aligned basis, one per outer generator.
    pub fn derivations(&self) -> &[Matrix] {
        &self.derivations
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Level at which the alignment ideal was squeezed, if one was given.
    pub fn ideal_level(&self) -> Option<usize> {
        self.ideal_level
    }

    /// Aligned coordinates of a vector given in inner coordinates.
    pub fn to_aligned(&self, v: &[Scalar]) -> Vector {
        self.basis_inverse.mul_vec(v)
    }

    /// `F_t` in aligned coordinates: the span of the basis vectors of
    /// order at least `t`.
    pub fn aligned_term(&self, t: usize) -> Subspace {
        Subspace::coordinate(
            self.dim(),
            (0..self.dim()).filter(|&k| self.orders[k] as usize >= t),
        )
    }

    fn derivations_shift(&self, shift: u32) -> bool {
        self.derivations.iter().all(|d| {
            (0..self.dim()).all(|k| {
                (0..self.dim()).all(|r| d[(r, k)].is_zero() || self.orders[r] >= self.orders[k] + shift)
            })
        })
    }

    /// `o(D x) ≥ o(x)` for every derivation and basis vector.
    pub fn order_preserving(&self) -> bool {
        self.derivations_shift(0)
    }

    /// `o(D x) ≥ o(x) + 1` for every derivation and basis vector.
    pub fn order_raising(&self) -> bool {
        self.derivations_shift(1)
    }

    pub fn monomial_order(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.orders).map(|(e, o)| e * o).sum()
    }

    /// `o(W)`; `None` stands for `∞` (the zero element).
    pub fn order(&self, w: &UeaElement) -> Option<u32> {
        w.terms().map(|(m, _)| self.monomial_order(m)).min()
    }

    /// `λ(W)`; `None` stands for `∞`.
    pub fn length_of(&self, w: &UeaElement) -> Option<u32> {
        w.terms().map(|(m, _)| m.length()).min()
    }

    pub fn monomial_name(&self, m: &Monomial) -> String {
        m.display_with(&self.labels)
    }

    /// All standard monomials of order at most `max_order` accepted by
    /// `keep(monomial, order, length)`, sorted by order, then length, then
    /// lexicographically by word.
    pub fn enumerate_monomials(
        &self,
        max_order: u32,
        mut keep: impl FnMut(&Monomial, u32, u32) -> bool,
    ) -> Vec<Monomial> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut current = Monomial::one(n);
        fn rec(ctx: &PbwContext, k: usize, budget: u32, current: &mut Monomial, out: &mut Vec<Monomial>) {
            if k == ctx.dim() {
                out.push(current.clone());
                return;
            }
            let o = ctx.orders[k].max(1);
            let mut e = 0;
            loop {
                current.0[k] = e;
                rec(ctx, k + 1, budget - e * o, current, out);
                if (e + 1) * o > budget {
                    break;
                }
                e += 1;
            }
            current.0[k] = 0;
        }
        rec(self, 0, max_order, &mut current, &mut out);
        out.retain(|m| {
            let o = self.monomial_order(m);
            o <= max_order && keep(m, o, m.length())
        });
        out.sort_by(|a, b| {
            self.monomial_order(a)
                .cmp(&self.monomial_order(b))
                .then_with(|| a.length().cmp(&b.length()))
                .then_with(|| a.word().cmp(&b.word()))
        });
        out
    }

    pub fn straightener(&self) -> Straightener<'_> {
        Straightener {
            ctx: self,
            cache: HashMap::new(),
        }
    }
}

/// Largest `t` with `F_{t+1} ⊆ J ⊆ F_t`.
pub fn squeeze_level(filtration: &AdaptedFiltration, j: &Subspace) -> Option<usize> {
    (1..=filtration.length())
        .rev()
        .find(|&t| filtration.term(t).contains_subspace(j) && j.contains_subspace(&filtration.term(t + 1)))
}

/// Normal-form arithmetic in the truncated enveloping algebra. Products
/// `X_i · X^α` are memoized.
pub struct Straightener<'a> {
    ctx: &'a PbwContext,
    cache: HashMap<(usize, Monomial), UeaElement>,
}

impl<'a> Straightener<'a> {
    pub fn context(&self) -> &'a PbwContext {
        self.ctx
    }

    /// `X_i · X^α` in standard form, dropping monomials of order above the
    /// threshold.
    pub fn mul_basis(&mut self, i: usize, m: &Monomial) -> UeaElement {
        let ctx = self.ctx;
        if ctx.orders[i] + ctx.monomial_order(m) > ctx.threshold {
            return UeaElement::zero();
        }
        let k = match m.first_index() {
            Some(k) if k < i => k,
            _ => return UeaElement::monomial(m.times_generator(i), Scalar::one()),
        };
        let key = (i, m.clone());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        // X_i X_k X^β = X_k (X_i X^β) + [x_i, x_k] X^β
        let rest = m.without(k);
        let inner = self.mul_basis(i, &rest);
        let mut out = self.left_mul_basis(k, &inner);
        let bracket: Vec<(usize, Scalar)> = ctx.algebra.bracket_terms(i, k).to_vec();
        for (l, c) in bracket {
            let t = self.mul_basis(l, &rest);
            out.add_scaled(&c, &t);
        }
        self.cache.insert(key, out.clone());
        out
    }

    pub fn left_mul_basis(&mut self, i: usize, w: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (m, c) in w.terms() {
            let t = self.mul_basis(i, m);
            out.add_scaled(c, &t);
        }
        out
    }

    /// `x · W` for `x` in aligned coordinates.
    pub fn left_mul(&mut self, x: &[Scalar], w: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let t = self.left_mul_basis(i, w);
            out.add_scaled(c, &t);
        }
        out
    }

    /// Product of a standard monomial with an element: the letters are
    /// applied from the right.
    pub fn mul_monomial(&mut self, m: &Monomial, w: &UeaElement) -> UeaElement {
        let mut acc = w.clone();
        for &i in m.word().iter().rev() {
            acc = self.left_mul_basis(i, &acc);
        }
        acc
    }

    pub fn mul(&mut self, w: &UeaElement, y: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (m, c) in w.terms() {
            let t = self.mul_monomial(m, y);
            out.add_scaled(c, &t);
        }
        out
    }

    /// Normal form of the word `X_{w_1} ⋯ X_{w_k}` times `coeff`.
    pub fn straighten(&mut self, word: &[usize], coeff: &Scalar) -> UeaElement {
        let mut acc = UeaElement::one(self.ctx.dim());
        for &i in word.iter().rev() {
            acc = self.left_mul_basis(i, &acc);
        }
        acc.scaled(coeff)
    }

    /// Leibniz extension of the derivation `d` (aligned coordinates) to
    /// `U(𝔫)`, with `d(1) = 0`.
    pub fn derive(&mut self, d: &Matrix, w: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (m, c) in w.terms() {
            let t = self.derive_monomial(d, m);
            out.add_scaled(c, &t);
        }
        out
    }

    fn derive_monomial(&mut self, d: &Matrix, m: &Monomial) -> UeaElement {
        let n = self.ctx.dim();
        let word = m.word();
        let mut out = UeaElement::zero();
        for p in 0..word.len() {
            let suffix = Monomial::from_word(n, &word[p + 1..]);
            let mut term = UeaElement::zero();
            for r in 0..n {
                let c = &d[(r, word[p])];
                if !c.is_zero() {
                    let t = self.mul_basis(r, &suffix);
                    term.add_scaled(c, &t);
                }
            }
            for &q in word[..p].iter().rev() {
                if term.is_zero() {
                    break;
                }
                term = self.left_mul_basis(q, &term);
            }
            out.add_scaled(&Scalar::one(), &term);
        }
        out
    }
}
