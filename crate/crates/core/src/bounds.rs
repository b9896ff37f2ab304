//! Partition counts, the filiform dimension formula `f(n, β)` and bounds
//! on the minimal dimension `μ` of a faithful module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lie::LieAlgebra;
use crate::linalg::ceil_sqrt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("n = {0} out of range: need n >= 3")]
    DimensionOutOfRange(u64),
    #[error("beta = {beta} out of range: need 1 <= beta <= {max}")]
    BetaOutOfRange { beta: u64, max: u64 },
    #[error("r must be positive")]
    NonPositiveRank,
}

impl BoundsError {
    pub fn class(&self) -> &'static str {
        match self {
            BoundsError::DimensionOutOfRange(_) => "DimensionOutOfRange",
            BoundsError::BetaOutOfRange { .. } => "BetaOutOfRange",
            BoundsError::NonPositiveRank => "NonPositiveRank",
        }
    }
}

/// `(p_k(0), …, p_k(j_max))`, where `p_k(j)` counts partitions of `j` into
/// parts of size at most `k`.
pub fn restricted_partitions(k: u64, j_max: u64) -> Vec<BigInt> {
    let len = j_max as usize + 1;
    let mut row = vec![BigInt::zero(); len];
    row[0] = BigInt::one();
    // p_k(j) = p_{k-1}(j) + p_k(j - k), updated in place part by part
    for part in 1..=k.min(j_max) as usize {
        for j in part..len {
            let prev = row[j - part].clone();
            row[j] += prev;
        }
    }
    row
}

pub fn p_restricted(k: u64, j: u64) -> BigInt {
    restricted_partitions(k, j).pop().unwrap()
}

fn check_range(n: u64, beta: u64) -> Result<(), BoundsError> {
    if n < 3 {
        return Err(BoundsError::DimensionOutOfRange(n));
    }
    if beta < 1 || beta > n - 1 {
        return Err(BoundsError::BetaOutOfRange { beta, max: n - 1 });
    }
    Ok(())
}

/// `f(n, β) = β + Σ_{j=0}^{n-2} p_{n-1-β}(j)`.
pub fn f(n: u64, beta: u64) -> Result<BigInt, BoundsError> {
    check_range(n, beta)?;
    let row = restricted_partitions(n - 1 - beta, n - 2);
    Ok(BigInt::from(beta) + row.iter().sum::<BigInt>())
}

/// Closed forms for `β = n - 1, n - 2, n - 3` (`n ≥ 4`); `None` otherwise.
pub fn f_closed_form(n: u64, beta: u64) -> Option<BigInt> {
    if n < 4 {
        return None;
    }
    let n_big = BigInt::from(n);
    match n - beta {
        1 => Some(n_big),
        2 => Some(BigInt::from(2) * &n_big - 3),
        3 => {
            let num: BigInt = &n_big * &n_big + BigInt::from(3) * &n_big - 12 + BigInt::from(2 * (n / 2));
            let (q, r) = num.div_rem(&BigInt::from(4));
            debug_assert!(r.is_zero());
            Some(q)
        }
        _ => None,
    }
}

/// Checks `f(n, n-1) ≤ … ≤ f(n, 2) = f(n, 1)`.
pub fn is_monotone(n: u64) -> Result<bool, BoundsError> {
    let values = (1..n).map(|b| f(n, b)).collect::<Result<Vec<_>, _>>()?;
    let decreasing = values.windows(2).all(|w| w[0] >= w[1]);
    Ok(decreasing && values.len() >= 2 && values[0] == values[1])
}

/// `β + (2n-β-3)^{n-β-1} / (n-β-1)!`, an upper bound for `f(n, β)`.
pub fn remark_bound(n: u64, beta: u64) -> Result<BigRational, BoundsError> {
    check_range(n, beta)?;
    let e = n - beta - 1;
    let base = BigInt::from(2 * n - beta - 3);
    let power = num_traits::pow(base, e as usize);
    let factorial: BigInt = (1..=e).map(BigInt::from).product();
    Ok(BigRational::from_integer(BigInt::from(beta)) + BigRational::new(power, factorial))
}

/// `n - 1 + Σ_{j=0}^{n-2} p_{⌊n/2⌋-1}(j)`, an upper bound for `μ` of any
/// filiform algebra of dimension `n`.
pub fn half_beta_bound(n: u64) -> Result<BigInt, BoundsError> {
    if n < 3 {
        return Err(BoundsError::DimensionOutOfRange(n));
    }
    let row = restricted_partitions(n / 2 - 1, n - 2);
    Ok(BigInt::from(n - 1) + row.iter().sum::<BigInt>())
}

/// `a + b·√r` with rational `a`, `b` and the integer ceiling of the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtValue {
    pub rational: BigRational,
    pub sqrt_coefficient: BigRational,
    pub radicand: BigInt,
    pub ceiling: BigInt,
}

impl std::fmt::Display for SqrtValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sqrt_coefficient.is_zero() || self.radicand.is_one() {
            write!(f, "{}", &self.rational + &self.sqrt_coefficient)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                self.rational, self.sqrt_coefficient, self.radicand
            )
        }
    }
}

/// `dim_q + (3/√r)·2^r`, carried exactly.
pub fn general_bound_value(dim_q: u64, r: u64) -> Result<SqrtValue, BoundsError> {
    if r == 0 {
        return Err(BoundsError::NonPositiveRank);
    }
    let r_big = BigInt::from(r);
    let s = r_big.sqrt();
    let two_r = num_traits::pow(BigInt::from(2), r as usize);
    let rational = BigRational::from_integer(BigInt::from(dim_q));
    // 3·2^r/√r = (3·2^r/r)·√r, or 3·2^r/s when r = s²
    let (coefficient, radicand) = if &s * &s == r_big {
        (BigRational::new(BigInt::from(3) * &two_r, s), BigInt::one())
    } else {
        (BigRational::new(BigInt::from(3) * &two_r, r_big.clone()), r_big)
    };
    // ⌈c·√d⌉ = ⌈√(c²·d)⌉ for c ≥ 0
    let square = &coefficient * &coefficient * BigRational::from_integer(radicand.clone());
    let ceil_square = square.ceil().to_integer();
    let ceiling = BigInt::from(dim_q) + ceil_sqrt(&ceil_square);
    Ok(SqrtValue {
        rational,
        sqrt_coefficient: coefficient,
        radicand,
        ceiling,
    })
}

/// One ingredient of a bound on `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSource {
    pub name: String,
    pub value: BigInt,
    pub rule: &'static str,
}

/// Lower and upper bounds on `μ` with their sources. `upper = None` means
/// no upper bound is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuEstimate {
    pub lower: BigInt,
    pub upper: Option<BigInt>,
    pub sources: Vec<BoundSource>,
}

impl MuEstimate {
    pub fn is_consistent(&self) -> bool {
        self.upper.as_ref().is_none_or(|u| self.lower <= *u)
    }

    pub fn add_upper(&mut self, name: &str, value: BigInt, rule: &'static str) {
        self.upper = Some(match self.upper.take() {
            Some(u) => u.min(value.clone()),
            None => value.clone(),
        });
        self.sources.push(BoundSource {
            name: name.into(),
            value,
            rule,
        });
    }

    pub fn add_lower(&mut self, name: &str, value: BigInt, rule: &'static str) {
        if value > self.lower {
            self.lower = value.clone();
        }
        self.sources.push(BoundSource {
            name: name.into(),
            value,
            rule,
        });
    }
}

/// Lower bounds: `⌈√dim⌉` always, `c + 1` for nilpotent algebras of
/// dimension at least 2, and `n` for filiform algebras.
pub fn mu_lower(l: &LieAlgebra) -> MuEstimate {
    let n = l.dim() as u64;
    let mut est = MuEstimate {
        lower: BigInt::zero(),
        upper: None,
        sources: Vec::new(),
    };
    est.add_lower("sqrt_dim", ceil_sqrt(&BigInt::from(n)), "dim L <= mu^2");
    if n >= 2 {
        if let Ok(c) = l.nilpotency_class() {
            est.add_lower(
                "class_plus_one",
                BigInt::from(c + 1),
                "class c nilpotent: c + 1 <= mu",
            );
        }
    }
    if l.is_filiform() {
        est.add_lower("filiform", BigInt::from(n), "filiform of dimension n: n <= mu");
    }
    est
}
