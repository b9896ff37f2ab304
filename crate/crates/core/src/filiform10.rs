//! The 13-parameter family of 10-dimensional filiform Lie algebras: the
//! admissibility equations, the case tree, the general 58-dimensional
//! module and the reduction pipeline.

use std::fmt;

use num_traits::{One, Zero};

use crate::bounds::{mu_lower, MuEstimate};
use crate::builder::{filiform_module, BuildError, QuotientModule};
use crate::lie::{LieAlgebra, Representation, Terms};
use crate::linalg::{int, is_zero_vector, Matrix, Scalar, Vector};
use crate::reducer::{reduce_fully, ReduceError, ReductionChain};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum F10Error {
    #[error("parameters are not admissible: {}", .0.join("; "))]
    NotAdmissible(Vec<String>),
    #[error("expected 13 parameters, got {0}")]
    WrongParameterCount(usize),
    #[error("algebra is not in adapted filiform form: {0}")]
    NotAdapted(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

impl F10Error {
    pub fn class(&self) -> &'static str {
        match self {
            F10Error::NotAdmissible(_) => "NotAdmissible",
            F10Error::WrongParameterCount(_) => "WrongParameterCount",
            F10Error::NotAdapted(_) => "NotAdapted",
            F10Error::Build(e) => e.class(),
            F10Error::Reduce(e) => e.class(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiliformParams {
    pub alpha: [Scalar; 13],
}

impl FiliformParams {
    pub fn new(alpha: [Scalar; 13]) -> Self {
        FiliformParams { alpha }
    }

    pub fn from_slice(values: &[Scalar]) -> Result<Self, F10Error> {
        let alpha: [Scalar; 13] = values
            .to_vec()
            .try_into()
            .map_err(|v: Vec<Scalar>| F10Error::WrongParameterCount(v.len()))?;
        Ok(FiliformParams { alpha })
    }

    pub fn from_i64(values: [i64; 13]) -> Self {
        FiliformParams {
            alpha: values.map(int),
        }
    }

    pub fn zero() -> Self {
        Self::from_i64([0; 13])
    }

    /// `(1,0,0,0,0,0,−1,1,0,0,3,−16,1)`, an algebra of case 2a2b for which
    /// the lower bound 12 is known.
    pub fn reference_example() -> Self {
        Self::from_i64([1, 0, 0, 0, 0, 0, -1, 1, 0, 0, 3, -16, 1])
    }

    /// `α_k` with `k` 1-based.
    pub fn a(&self, k: usize) -> &Scalar {
        &self.alpha[k - 1]
    }

    /// Left minus right side of the three defining equations.
    pub fn equations(&self) -> [Scalar; 3] {
        let a = |k| self.a(k).clone();
        let two = int(2);
        let three = int(3);
        let e1 = a(11) * (&two * a(1) + a(7)) - &three * a(7) * a(7);
        let e2 = a(13) * (&two * a(1) - a(7) - a(11));
        let e3 = a(13) * (&two * a(3) + a(9))
            - a(12) * (&two * a(1) + a(7))
            - (&three * a(11) * (a(2) + a(8)) - int(7) * a(7) * a(8));
        [e1, e2, e3]
    }

    /// Human-readable list of the violated equations.
    pub fn violations(&self) -> Vec<String> {
        const NAMES: [&str; 3] = [
            "a11*(2*a1 + a7) - 3*a7^2 = 0",
            "a13*(2*a1 - a7 - a11) = 0",
            "a13*(2*a3 + a9) - a12*(2*a1 + a7) = 3*a11*(a2 + a8) - 7*a7*a8",
        ];
        self.equations()
            .iter()
            .zip(NAMES)
            .filter(|(v, _)| !v.is_zero())
            .map(|(v, name)| format!("{name} (residual {v})"))
            .collect()
    }

    pub fn is_admissible(&self) -> bool {
        self.equations().iter().all(Zero::is_zero)
    }

    /// `α_13 (α_1² − α_7²)`, which vanishes for admissible parameters.
    pub fn consequence(&self) -> Scalar {
        self.a(13) * (self.a(1) * self.a(1) - self.a(7) * self.a(7))
    }

    fn check(&self) -> Result<(), F10Error> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(F10Error::NotAdmissible(v))
        }
    }
}

impl fmt::Display for FiliformParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Which of the admissible families to land in when completing a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `α_1 = α_7 = 0`.
    Degenerate,
    /// `α_13 ≠ 0` with `α_7 = sign·α_1`.
    CenterBracket { sign: i8 },
    /// `α_13 = 0`, `2α_1 + α_7 ≠ 0`.
    NoCenterBracket,
}

/// Overwrites the dependent parameters of `seed` so that the result is
/// admissible and lies in `branch`. Returns `None` when the seed makes the
/// branch degenerate (e.g. `2α_1 + α_7 = 0` where it must not vanish).
pub fn complete_admissible(seed: &FiliformParams, branch: Branch) -> Option<FiliformParams> {
    let mut a = seed.alpha.clone();
    let two = int(2);
    let three = int(3);
    match branch {
        Branch::Degenerate => {
            a[0] = Scalar::zero();
            a[6] = Scalar::zero();
            // α13·α11 = 0 and α13(2α3 + α9) = 3α11(α2 + α8)
            if !a[12].is_zero() {
                a[10] = Scalar::zero();
                a[8] = -&two * &a[2];
            } else {
                a[7] = -a[1].clone();
            }
        }
        Branch::CenterBracket { sign } => {
            if a[0].is_zero() || a[12].is_zero() {
                return None;
            }
            a[6] = if sign >= 0 { a[0].clone() } else { -a[0].clone() };
        }
        Branch::NoCenterBracket => {
            a[12] = Scalar::zero();
        }
    }
    if !matches!(branch, Branch::Degenerate) {
        let s = &two * &a[0] + &a[6];
        if s.is_zero() {
            return None;
        }
        a[10] = &three * &a[6] * &a[6] / &s;
        let rhs = &three * &a[10] * (&a[1] + &a[7]) - int(7) * &a[6] * &a[7];
        a[11] = (&a[12] * (&two * &a[2] + &a[8]) - rhs) / &s;
    }
    let p = FiliformParams { alpha: a };
    debug_assert!(p.is_admissible());
    Some(p)
}

/// The bracket table, without any admissibility check.
pub fn bracket_table(p: &FiliformParams) -> LieAlgebra {
    let a = |k: usize| p.a(k).clone();
    // (i, j, [(k, coefficient)]) with 1-based indices
    let mut table: Vec<(usize, usize, Terms)> =
        (2..=9).map(|i| (1, i, vec![(i + 1, int(1))])).collect();
    let two = int(2);
    let three = int(3);
    table.extend([
        (
            2,
            3,
            vec![(5, a(1)), (6, a(2)), (7, a(3)), (8, a(4)), (9, a(5)), (10, a(6))],
        ),
        (2, 4, vec![(6, a(1)), (7, a(2)), (8, a(3)), (9, a(4)), (10, a(5))]),
        (
            2,
            5,
            vec![
                (7, a(1) - a(7)),
                (8, a(2) - a(8)),
                (9, a(3) - a(9)),
                (10, a(4) - a(10)),
            ],
        ),
        (
            2,
            6,
            vec![
                (8, a(1) - &two * a(7)),
                (9, a(2) - &two * a(8)),
                (10, a(3) - &two * a(9)),
            ],
        ),
        (
            2,
            7,
            vec![
                (9, a(1) - &three * a(7) + a(11)),
                (10, a(2) - &three * a(8) + a(12)),
            ],
        ),
        (2, 8, vec![(10, a(1) - int(4) * a(7) + &three * a(11))]),
        (2, 9, vec![(10, -a(13))]),
        (3, 4, vec![(7, a(7)), (8, a(8)), (9, a(9)), (10, a(10))]),
        (3, 5, vec![(8, a(7)), (9, a(8)), (10, a(9))]),
        (3, 6, vec![(9, a(7) - a(11)), (10, a(8) - a(12))]),
        (3, 7, vec![(10, a(7) - &two * a(11))]),
        (3, 8, vec![(10, a(13))]),
        (4, 5, vec![(9, a(11)), (10, a(12))]),
        (4, 6, vec![(10, a(11))]),
        (4, 7, vec![(10, -a(13))]),
        (5, 6, vec![(10, a(13))]),
    ]);
    let entries = table.into_iter().map(|(i, j, terms)| {
        let terms: Terms = terms.into_iter().map(|(k, c)| (k - 1, c)).collect();
        (i - 1, j - 1, terms)
    });
    LieAlgebra::from_brackets(10, entries).expect("indices in range")
}

/// The algebra for admissible parameters.
pub fn make_f10(p: &FiliformParams) -> Result<LieAlgebra, F10Error> {
    p.check()?;
    let l = bracket_table(p);
    assert!(
        l.jacobi_violation().is_none(),
        "admissible parameters must satisfy Jacobi"
    );
    Ok(l)
}

/// Reads the parameters back from an algebra in the adapted form of the
/// family.
pub fn alpha_from_algebra(l: &LieAlgebra) -> Result<FiliformParams, F10Error> {
    if l.dim() != 10 {
        return Err(F10Error::NotAdapted(format!("dimension {}", l.dim())));
    }
    let coeff = |i: usize, j: usize, k: usize| l.bracket_basis(i - 1, j - 1)[k - 1].clone();
    let alpha = [
        coeff(2, 3, 5),
        coeff(2, 3, 6),
        coeff(2, 3, 7),
        coeff(2, 3, 8),
        coeff(2, 3, 9),
        coeff(2, 3, 10),
        coeff(3, 4, 7),
        coeff(3, 4, 8),
        coeff(3, 4, 9),
        coeff(3, 4, 10),
        coeff(4, 5, 9),
        coeff(4, 5, 10),
        coeff(5, 6, 10),
    ];
    let p = FiliformParams { alpha };
    if bracket_table(&p) != *l {
        return Err(F10Error::NotAdapted(
            "brackets differ from the family's table".into(),
        ));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    C1,
    C2a1,
    C2a2a,
    C2a2b,
    C2b1,
    C2b2a,
    C2b2b1,
    C2b2b2,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 8] = [
        CaseLabel::C1,
        CaseLabel::C2a1,
        CaseLabel::C2a2a,
        CaseLabel::C2a2b,
        CaseLabel::C2b1,
        CaseLabel::C2b2a,
        CaseLabel::C2b2b1,
        CaseLabel::C2b2b2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::C1 => "1",
            CaseLabel::C2a1 => "2a1",
            CaseLabel::C2a2a => "2a2a",
            CaseLabel::C2a2b => "2a2b",
            CaseLabel::C2b1 => "2b1",
            CaseLabel::C2b2a => "2b2a",
            CaseLabel::C2b2b1 => "2b2b1",
            CaseLabel::C2b2b2 => "2b2b2",
        }
    }

    /// Known upper bound on `μ` for the case, with a note on its status.
    pub fn cited_upper(&self) -> (u64, &'static str) {
        match self {
            CaseLabel::C1 => (10, "mu = 10 (case 1), cited"),
            CaseLabel::C2a1 => (11, "mu <= 11 (case 2a1), cited"),
            CaseLabel::C2a2a => (11, "mu <= 11 (case 2a2a), cited"),
            CaseLabel::C2a2b => (
                18,
                "mu <= 18 (case 2a2b), via a quotient of the 58-dimensional module",
            ),
            CaseLabel::C2b1 => (10, "mu = 10 (case 2b1), cited"),
            CaseLabel::C2b2a => (11, "mu <= 11 (case 2b2a), cited"),
            CaseLabel::C2b2b1 => (11, "mu <= 11 (case 2b2b1), cited"),
            CaseLabel::C2b2b2 => (
                15,
                "mu <= 15 (case 2b2b2), via a quotient of the 58-dimensional module",
            ),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_case(p: &FiliformParams) -> Result<CaseLabel, F10Error> {
    p.check()?;
    let a = |k: usize| p.a(k);
    let two = int(2);
    let three = int(3);
    if (&two * a(1) + a(7)).is_zero() {
        assert!(a(1).is_zero() && a(7).is_zero());
        return Ok(CaseLabel::C1);
    }
    let minus_a1 = -a(1).clone();
    let third_vanishes = (&three * a(2) + a(8)).is_zero();
    if !a(13).is_zero() {
        assert!(a(7) * a(7) == a(1) * a(1) && !a(1).is_zero());
        return Ok(if a(7) == a(1) {
            CaseLabel::C2a1
        } else if third_vanishes {
            CaseLabel::C2a2a
        } else {
            CaseLabel::C2a2b
        });
    }
    Ok(if a(7) * a(7) != a(1) * a(1) {
        CaseLabel::C2b1
    } else if a(7) == a(1) {
        CaseLabel::C2b2a
    } else {
        debug_assert_eq!(*a(7), minus_a1);
        if third_vanishes {
            CaseLabel::C2b2b1
        } else {
            CaseLabel::C2b2b2
        }
    })
}

/// Names of the 58 basis monomials in the reference order `v_1, …, v_58`.
pub const V58_ORDER: [&str; 58] = [
    "1",
    "X2",
    "X3",
    "X2^2",
    "X4",
    "X2*X3",
    "X2^3",
    "X5",
    "X2*X4",
    "X3^2",
    "X2^2*X3",
    "X2^4",
    "X6",
    "X3*X4",
    "X2*X5",
    "X2^2*X4",
    "X2*X3^2",
    "X2^3*X3",
    "X2^5",
    "X7",
    "X4^2",
    "X3*X5",
    "X2*X3*X4",
    "X3^3",
    "X2^2*X5",
    "X2^3*X4",
    "X2^2*X3^2",
    "X2^4*X3",
    "X2^6",
    "X8",
    "X4*X5",
    "X2*X4^2",
    "X3^2*X4",
    "X2*X3*X5",
    "X2^2*X3*X4",
    "X2*X3^3",
    "X2^3*X5",
    "X2^4*X4",
    "X2^3*X3^2",
    "X2^5*X3",
    "X2^7",
    "X9",
    "X3*X4^2",
    "X5^2",
    "X2*X4*X5",
    "X3^2*X5",
    "X2^2*X4^2",
    "X2*X3^2*X4",
    "X3^4",
    "X2^2*X3*X5",
    "X2^3*X3*X4",
    "X2^2*X3^3",
    "X2^4*X5",
    "X2^5*X4",
    "X2^4*X3^2",
    "X2^6*X3",
    "X2^8",
    "X10",
];

/// The general module in the reference basis order.
#[derive(Debug, Clone)]
pub struct V58 {
    pub params: FiliformParams,
    pub algebra: LieAlgebra,
    pub module: QuotientModule,
    /// `ρ` in the basis `v_1, …, v_58`.
    pub representation: Representation,
    /// `permutation[k]` is the index in `module` of `v_{k+1}`.
    pub permutation: Vec<usize>,
}

impl V58 {
    pub fn names(&self) -> Vec<String> {
        V58_ORDER.iter().map(|s| s.to_string()).collect()
    }
}

pub fn build_v58(p: &FiliformParams) -> Result<V58, F10Error> {
    let algebra = make_f10(p)?;
    let module = filiform_module(&algebra, 6)?;
    let permutation: Vec<usize> = V58_ORDER
        .iter()
        .map(|name| {
            module
                .index_of(name)
                .unwrap_or_else(|| panic!("monomial {name} missing"))
        })
        .collect();
    let dim = module.dim();
    assert_eq!(dim, 58);
    let mut pm = Matrix::zeros(dim, dim);
    for (k, &i) in permutation.iter().enumerate() {
        pm[(i, k)] = Scalar::one();
    }
    let representation = module.representation.conjugate(&pm).expect("permutation");
    Ok(V58 {
        params: p.clone(),
        algebra,
        module,
        representation,
        permutation,
    })
}

// Reference action lists: (source v-index, [(coefficient, target v-index)]).
// Coefficients are polynomials in a1..a13. Rows not listed act by zero.
const X1_ROWS: &[(usize, &[(&str, usize)])] = &[
    (2, &[("1", 3)]),
    (3, &[("1", 5)]),
    (
        4,
        &[
            ("2", 6),
            ("-a1", 8),
            ("-a2", 13),
            ("-a3", 20),
            ("-a4", 30),
            ("-a5", 42),
            ("-a6", 58),
        ],
    ),
    (5, &[("1", 8)]),
    (6, &[("1", 9), ("1", 10)]),
    (
        7,
        &[
            ("3", 11),
            ("-3*a1", 15),
            ("a1*(a1-a7)", 20),
            ("2*a1*a2 - 2*a2*a7 - a1*a8", 30),
            ("2*a1*a3 - a1*a9 + a11*a3 + a2^2 - 2*a2*a8 - 3*a3*a7", 42),
            (
                "2*a1*a4 - a1*a10 + 3*a11*a4 + a12*a3 - a13*a5 + 2*a2*a3 - 2*a2*a9 - 3*a3*a8 - 4*a4*a7",
                58,
            ),
        ],
    ),
    (8, &[("1", 13)]),
    (9, &[("1", 14), ("1", 15)]),
    (
        10,
        &[("2", 14), ("-a7", 20), ("-a8", 30), ("-a9", 42), ("-a10", 58)],
    ),
    (
        11,
        &[
            ("1", 16),
            ("2", 17),
            ("-a1", 22),
            ("a1*a7", 30),
            ("a1*a8 - a11*a2 + a2*a7", 42),
            ("a1*a9 - 2*a11*a3 - a12*a2 + a13*a4 + a2*a8 + a3*a7", 58),
        ],
    ),
    (
        12,
        &[
            ("4", 18),
            ("-6*a1", 25),
            ("a1*(4*a1*a7 - a1^2 - 3*a1*a11)", 42),
            (
                "4*a1^2*a8 - a1^2*a12 - 3*a1^2*a2 - 6*a1*a11*a2 + 3*a1*a11*a8 + a1*a12*a7 + 2*a1*a13*a3 \
          - a1*a13*a9 + 11*a1*a2*a7 - 7*a1*a7*a8 + a11*a13*a3 + 6*a11*a2*a7 + a13*a2^2 \
          - 2*a13*a2*a8 - 3*a13*a3*a7 - 8*a2*a7^2",
                58,
            ),
        ],
    ),
    (13, &[("1", 20)]),
    (14, &[("1", 21), ("1", 22)]),
    (15, &[("1", 22)]),
    (
        16,
        &[
            ("2", 23),
            ("1", 25),
            ("-a1", 31),
            ("a1*a11", 42),
            ("a1*a12 + a11*a2 - a13*a3", 58),
        ],
    ),
    (17, &[("2", 23), ("1", 24)]),
    (
        18,
        &[
            ("1", 26),
            ("3", 27),
            ("-3*a1", 34),
            (
                "2*a1^2*a11 - a1^2*a7 - 2*a1*a11*a7 - 2*a1*a13*a2 + a1*a13*a8 + a1*a7^2 + 2*a13*a2*a7",
                58,
            ),
        ],
    ),
    (
        19,
        &[
            ("5", 28),
            ("-10*a1", 37),
            ("a1*a13*(4*a1*a7 - a1^2 - 3*a1*a11)", 58),
        ],
    ),
    (20, &[("1", 30)]),
    (21, &[("2", 31), ("-a11", 42), ("-a12", 58)]),
    (22, &[("1", 31)]),
    (23, &[("1", 32), ("1", 33), ("1", 34)]),
    (24, &[("3", 33), ("a7^2 - 2*a11*a7 + a13*a8", 58)]),
    (25, &[("2", 34), ("-a1", 44), ("a13*a2", 58)]),
    (
        26,
        &[("3", 35), ("1", 37), ("-3*a1", 45), ("a1*a13*(a1 - a7)", 58)],
    ),
    (27, &[("2", 35), ("2", 36), ("-a1", 46), ("-a1*a13*a7", 58)]),
    (28, &[("1", 38), ("4", 39), ("-6*a1", 50)]),
    (29, &[("6", 40), ("-15*a1", 53)]),
    (30, &[("1", 42)]),
    (31, &[("1", 44)]),
    (32, &[("1", 43), ("2", 45)]),
    (33, &[("2", 43), ("1", 46), ("-a13*a7", 58)]),
    (34, &[("1", 45), ("1", 46)]),
    (35, &[("1", 47), ("2", 48), ("1", 50)]),
    (36, &[("3", 48), ("1", 49)]),
    (37, &[("3", 50)]),
    (38, &[("4", 51), ("1", 53)]),
    (39, &[("2", 51), ("3", 52)]),
    (40, &[("1", 54), ("5", 55)]),
    (41, &[("7", 56)]),
    (42, &[("1", 58)]),
    (44, &[("-a13", 58)]),
];

const X2_ROWS: &[(usize, usize)] = &[
    (1, 2),
    (2, 4),
    (3, 6),
    (4, 7),
    (5, 9),
    (6, 11),
    (7, 12),
    (8, 15),
    (9, 16),
    (10, 17),
    (11, 18),
    (12, 19),
    (14, 23),
    (15, 25),
    (16, 26),
    (17, 27),
    (18, 28),
    (19, 29),
    (21, 32),
    (22, 34),
    (23, 35),
    (24, 36),
    (25, 37),
    (26, 38),
    (27, 39),
    (28, 40),
    (29, 41),
    (31, 45),
    (32, 47),
    (33, 48),
    (34, 50),
    (35, 51),
    (36, 52),
    (37, 53),
    (38, 54),
    (39, 55),
    (40, 56),
    (41, 57),
];

/// Evaluates a polynomial in `a1, …, a13` with `+ - * ^` and parentheses.
pub fn eval_polynomial(expr: &str, p: &FiliformParams) -> Result<Scalar, String> {
    let tokens: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = PolyParser {
        tokens,
        pos: 0,
        params: p,
    };
    let v = parser.sum()?;
    if parser.pos != parser.tokens.len() {
        return Err(format!(
            "unexpected '{}' at {}",
            parser.tokens[parser.pos], parser.pos
        ));
    }
    Ok(v)
}

struct PolyParser<'a> {
    tokens: Vec<char>,
    pos: usize,
    params: &'a FiliformParams,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Scalar, String> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.product()?
            }
            _ => self.product()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.product()?;
            if c == '+' {
                acc += t;
            } else {
                acc -= t;
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Scalar, String> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc *= self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Scalar, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(num_traits::pow(base, e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<usize, String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.tokens[start..self.pos].iter().collect();
        s.parse().map_err(|_| format!("expected a number at {start}"))
    }

    fn atom(&mut self) -> Result<Scalar, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(format!("expected ')' at {}", self.pos));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('a') => {
                self.pos += 1;
                let k = self.number()?;
                if !(1..=13).contains(&k) {
                    return Err(format!("unknown parameter a{k}"));
                }
                Ok(self.params.a(k).clone())
            }
            Some(c) if c.is_ascii_digit() => Ok(int(self.number()? as i64)),
            other => Err(format!("unexpected {other:?} at {}", self.pos)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    MatchUpToSign,
    Mismatch,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Match => "match",
            RowStatus::MatchUpToSign => "match-up-to-sign",
            RowStatus::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressionRow {
    /// 1 or 2.
    pub generator: usize,
    /// 1-based index of the basis vector acted on.
    pub source: usize,
    pub expected: Vector,
    pub actual: Vector,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressionReport {
    pub rows: Vec<RegressionRow>,
}

impl RegressionReport {
    pub fn count(&self, status: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &RegressionRow> {
        self.rows.iter().filter(|r| r.status == RowStatus::Mismatch)
    }
}

fn reference_column(generator: usize, source: usize, p: &FiliformParams) -> Vector {
    let mut v = vec![Scalar::zero(); 58];
    if generator == 1 {
        if let Some((_, terms)) = X1_ROWS.iter().find(|(s, _)| *s == source) {
            for (expr, target) in terms.iter() {
                v[target - 1] += eval_polynomial(expr, p).expect("well-formed table entry");
            }
        }
    } else if let Some((_, target)) = X2_ROWS.iter().find(|(s, _)| *s == source) {
        v[target - 1] = Scalar::one();
    }
    v
}

/// Compares the actions of `x_1` and `x_2` on every basis vector with the
/// reference lists.
pub fn v58_regression(v: &V58) -> RegressionReport {
    let mut rows = Vec::with_capacity(116);
    for generator in [1, 2] {
        let m = v.representation.matrix(generator - 1);
        for source in 1..=58 {
            let expected = reference_column(generator, source, &v.params);
            let actual = m.column(source - 1);
            let negated: Vector = actual.iter().map(|c| -c).collect();
            let status = if expected == actual {
                RowStatus::Match
            } else if expected == negated && !is_zero_vector(&expected) {
                RowStatus::MatchUpToSign
            } else {
                RowStatus::Mismatch
            };
            rows.push(RegressionRow {
                generator,
                source,
                expected,
                actual,
                status,
            });
        }
    }
    RegressionReport { rows }
}

/// Result of building the general module and reducing it.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub case: CaseLabel,
    pub v58: V58,
    pub chain: ReductionChain,
    pub final_dim: usize,
    pub mu: MuEstimate,
}

impl PipelineResult {
    /// Reference names of the basis vectors of the final quotient.
    pub fn final_indices_names(&self) -> Vec<String> {
        self.chain
            .final_indices()
            .into_iter()
            .map(|i| V58_ORDER[i].to_string())
            .collect()
    }
}

pub fn pipeline(p: &FiliformParams) -> Result<PipelineResult, F10Error> {
    let case = classify_case(p)?;
    let v58 = build_v58(p)?;
    let chain = reduce_fully(&v58.algebra, &v58.representation)?;
    let final_dim = chain.final_module.dim();
    let mut mu = mu_lower(&v58.algebra);
    if *p == FiliformParams::reference_example() {
        mu.add_lower(
            "cited_example",
            12.into(),
            "mu >= 12 for this parameter tuple, cited",
        );
    }
    let (bound, rule) = case.cited_upper();
    mu.add_upper("cited_case", bound.into(), rule);
    mu.add_upper(
        "achieved",
        final_dim.into(),
        "dimension of the final faithful quotient",
    );
    Ok(PipelineResult {
        case,
        v58,
        chain,
        final_dim,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_parameters_give_standard_algebra() {
        let l = make_f10(&FiliformParams::zero()).unwrap();
        assert_eq!(l, LieAlgebra::standard_filiform(10));
        assert_eq!(classify_case(&FiliformParams::zero()).unwrap(), CaseLabel::C1);
    }

    #[test]
    fn reference_example_is_admissible() {
        let p = FiliformParams::reference_example();
        assert!(p.is_admissible());
        assert_eq!(classify_case(&p).unwrap(), CaseLabel::C2a2b);
        let l = make_f10(&p).unwrap();
        assert!(l.is_filiform());
        assert_eq!(alpha_from_algebra(&l).unwrap(), p);
    }

    #[test]
    fn inadmissible() {
        let mut p = FiliformParams::zero();
        p.alpha[0] = int(1);
        p.alpha[6] = int(2);
        p.alpha[12] = int(1);
        assert!(!p.consequence().is_zero());
        assert!(matches!(make_f10(&p), Err(F10Error::NotAdmissible(_))));
        assert!(bracket_table(&p).jacobi_violation().is_some());
    }

    #[test]
    fn case_2b2a() {
        let mut seed = FiliformParams::zero();
        seed.alpha[0] = int(1);
        seed.alpha[6] = int(1);
        let p = complete_admissible(&seed, Branch::NoCenterBracket).unwrap();
        assert_eq!(*p.a(11), int(1));
        assert_eq!(classify_case(&p).unwrap(), CaseLabel::C2b2a);
    }

    #[test]
    fn polynomial_parser() {
        let p = FiliformParams::reference_example();
        assert_eq!(eval_polynomial("a1*(a1-a7)", &p).unwrap(), int(2));
        assert_eq!(eval_polynomial("-a12 + 2*a11^2", &p).unwrap(), int(34));
        assert!(eval_polynomial("a14", &p).is_err());
        assert!(eval_polynomial("(a1", &p).is_err());
    }

    fn report_for(p: &FiliformParams) -> RegressionReport {
        let v = build_v58(p).unwrap();
        let report = v58_regression(&v);
        for row in report.mismatches() {
            eprintln!(
                "x{}.v{}: expected {:?} got {:?}",
                row.generator, row.source, row.expected, row.actual
            );
        }
        report
    }

    #[test]
    fn v58_spot_checks() {
        let p = FiliformParams::reference_example();
        let v = build_v58(&p).unwrap();
        let x1 = v.representation.matrix(0);
        let x2 = v.representation.matrix(1);
        assert_eq!(x1[(57, 43)], -p.a(13).clone());
        assert_eq!(x2[(36, 24)], int(1));
        assert!(x2.column(41).iter().all(Zero::is_zero));
    }

    #[test]
    fn v58_regression_zero_and_example() {
        for p in [FiliformParams::zero(), FiliformParams::reference_example()] {
            let report = report_for(&p);
            assert_eq!(report.count(RowStatus::Mismatch), 0, "{p}");
        }
    }

    #[test]
    fn pipeline_chains() {
        let r = pipeline(&FiliformParams::reference_example()).unwrap();
        assert_eq!(r.case, CaseLabel::C2a2b);
        assert_eq!(&r.chain.dims()[..4], [58, 43, 32, 23]);
        assert!(r.final_dim <= 18);
        assert_eq!(r.mu.lower, 12.into());
        assert_eq!(r.final_indices_names().last().map(String::as_str), Some("X10"));

        let r = pipeline(&FiliformParams::zero()).unwrap();
        assert_eq!(r.case, CaseLabel::C1);
        assert_eq!(r.mu.upper, Some(10.into()));
    }
}
