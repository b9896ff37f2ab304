//! Text formats: algebra files and filtration files.
//!
//! Algebra file:
//!
//! ```text
//! # Heisenberg
//! dim 3
//! labels x y z
//! [1,2] = x3
//! [1,3] = 1/2 x2 - 2*x3
//! ```
//!
//! Indices are 1-based; missing pairs are zero brackets. A bracket term is
//! an optional sign, an optional rational coefficient, an optional `*` and
//! a basis name (`x<k>` or a declared label).

use std::str::FromStr;

use faithful_core::lie::{LieAlgebra, LieError, Terms};
use faithful_core::linalg::{Scalar, Subspace};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, {field}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

fn err(line: usize, field: &str, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        field: field.into(),
        message: message.into(),
    }
}

/// `p/q` or an integer; `q = 0` is rejected.
pub fn parse_rational(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((_, den)) = s.split_once('/') {
        if den.trim().parse::<i64>().is_ok_and(|d| d == 0) || den.trim().chars().all(|c| c == '0') {
            return Err(format!("zero denominator in '{s}'"));
        }
    }
    Scalar::from_str(s).map_err(|_| format!("not a rational number: '{s}'"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    /// `(k, c)` with `k` 1-based.
    pub terms: Vec<(usize, Scalar)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub dim: usize,
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<Bracket>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<LieAlgebra, LieError> {
        let entries = self.brackets.iter().map(|b| {
            let terms: Terms = b.terms.iter().map(|(k, c)| (k - 1, c.clone())).collect();
            (b.i - 1, b.j - 1, terms)
        });
        LieAlgebra::from_brackets(self.dim, entries)
    }

    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let brackets = l
            .brackets()
            .map(|(i, j, terms)| Bracket {
                i: i + 1,
                j: j + 1,
                terms: terms.iter().map(|(k, c)| (k + 1, c.clone())).collect(),
            })
            .collect();
        AlgebraFile {
            dim: l.dim(),
            labels: None,
            brackets,
        }
    }

    fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(p) = labels.iter().position(|l| l == name) {
                return Some(p + 1);
            }
        }
        let k: usize = name.strip_prefix('x')?.parse().ok()?;
        (1..=self.dim).contains(&k).then_some(k)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut file = AlgebraFile {
        dim: 0,
        labels: None,
        brackets: Vec::new(),
    };
    let mut have_dim = false;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            if have_dim {
                return Err(err(line_no, "dim", "dimension given twice"));
            }
            file.dim = rest
                .trim()
                .parse()
                .map_err(|_| err(line_no, "dim", format!("not a dimension: '{}'", rest.trim())))?;
            have_dim = true;
        } else if let Some(rest) = line.strip_prefix("labels") {
            if !have_dim {
                return Err(err(line_no, "labels", "labels before dim"));
            }
            let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if labels.len() != file.dim {
                return Err(err(
                    line_no,
                    "labels",
                    format!("expected {} labels, got {}", file.dim, labels.len()),
                ));
            }
            file.labels = Some(labels);
        } else if line.starts_with('[') {
            if !have_dim {
                return Err(err(line_no, "bracket", "bracket before dim"));
            }
            let b = parse_bracket(&file, line, line_no)?;
            if file.brackets.iter().any(|o| (o.i, o.j) == (b.i, b.j)) {
                return Err(err(
                    line_no,
                    "bracket",
                    format!("pair [{},{}] given twice", b.i, b.j),
                ));
            }
            file.brackets.push(b);
        } else {
            return Err(err(line_no, "line", format!("unrecognized line '{line}'")));
        }
    }
    if !have_dim {
        return Err(err(0, "dim", "missing 'dim' line"));
    }
    Ok(file)
}

fn parse_bracket(file: &AlgebraFile, line: &str, line_no: usize) -> Result<Bracket, ParseError> {
    let close = line
        .find(']')
        .ok_or_else(|| err(line_no, "bracket", "missing ']'"))?;
    let pair = &line[1..close];
    let (a, b) = pair
        .split_once(',')
        .ok_or_else(|| err(line_no, "bracket", "expected [i,j]"))?;
    let index = |s: &str| {
        let s = s.trim();
        file.resolve(s)
            .or_else(|| s.parse().ok().filter(|k| (1..=file.dim).contains(k)))
            .ok_or_else(|| {
                err(
                    line_no,
                    "bracket",
                    format!("index '{s}' out of range 1..{}", file.dim),
                )
            })
    };
    let (i, j) = (index(a)?, index(b)?);
    if i >= j {
        return Err(err(line_no, "bracket", format!("need i < j, got [{i},{j}]")));
    }
    let rest = line[close + 1..].trim();
    let rhs = rest
        .strip_prefix('=')
        .ok_or_else(|| err(line_no, "bracket", "missing '='"))?;
    let terms = parse_terms(file, rhs, line_no)?;
    Ok(Bracket { i, j, terms })
}

fn parse_terms(file: &AlgebraFile, rhs: &str, line_no: usize) -> Result<Vec<(usize, Scalar)>, ParseError> {
    let chars: Vec<char> = rhs.chars().collect();
    let mut pos = 0;
    let mut terms: Vec<(usize, Scalar)> = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == chars.len() {
            break;
        }
        let mut sign = Scalar::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(
                line_no,
                "term",
                format!("expected '+' or '-' at column {}", pos + 1),
            ));
        }
        first = false;
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
            pos += 1;
        }
        let coeff = if pos > start {
            let s: String = chars[start..pos].iter().collect();
            parse_rational(&s).map_err(|m| err(line_no, "coefficient", m))?
        } else {
            Scalar::one()
        };
        skip_ws(&mut pos);
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            skip_ws(&mut pos);
        }
        let vstart = pos;
        while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
            pos += 1;
        }
        if vstart == pos {
            if pos > start && coeff.is_zero() {
                continue;
            }
            return Err(err(
                line_no,
                "term",
                format!("expected a basis element at column {}", pos + 1),
            ));
        }
        let name: String = chars[vstart..pos].iter().collect();
        let k = file
            .resolve(&name)
            .ok_or_else(|| err(line_no, "term", format!("unknown basis element '{name}'")))?;
        terms.push((k, sign * coeff));
    }
    Ok(terms)
}

/// One filtration term per non-empty line, given by 1-based basis indices
/// of the original algebra (separated by spaces or commas). Each index must
/// belong to `inner` (0-based original indices); the result is in inner
/// coordinates.
pub fn parse_filtration(text: &str, inner: &[usize]) -> Result<Vec<Subspace>, ParseError> {
    let mut terms = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut coords = Vec::new();
        for tok in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let k: usize = tok
                .trim_start_matches('x')
                .parse()
                .map_err(|_| err(no + 1, "filtration", format!("not an index: '{tok}'")))?;
            let p = inner
                .iter()
                .position(|&i| i + 1 == k)
                .ok_or_else(|| err(no + 1, "filtration", format!("x{k} is not in the inner ideal")))?;
            coords.push(p);
        }
        terms.push(Subspace::coordinate(inner.len(), coords));
    }
    Ok(terms)
}

/// `2,3,4` → `[1, 2, 3]` (0-based).
pub fn parse_index_list(s: &str, dim: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let k: usize = tok
            .trim_start_matches('x')
            .parse()
            .map_err(|_| format!("not an index: '{tok}'"))?;
        if !(1..=dim).contains(&k) {
            return Err(format!("index {k} out of range 1..{dim}"));
        }
        if out.contains(&(k - 1)) {
            return Err(format!("index {k} repeated"));
        }
        out.push(k - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use faithful_core::linalg::ratio;

    #[test]
    fn heisenberg_file() {
        let f = parse_algebra("# comment\ndim 3\n[1,2] = x3\n").unwrap();
        assert_eq!(f.to_algebra().unwrap(), LieAlgebra::heisenberg(1));
    }

    #[test]
    fn terms_with_coefficients_and_labels() {
        let f = parse_algebra("dim 3\nlabels a b c\n[a,b] = 1/2 c - 2*a + b\n").unwrap();
        assert_eq!(
            f.brackets[0].terms,
            vec![(3, ratio(1, 2)), (1, ratio(-2, 1)), (2, ratio(1, 1))]
        );
        let z = parse_algebra("dim 2\n[1,2] = 0\n").unwrap();
        assert!(z.brackets[0].terms.is_empty());
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_algebra("dim 3\n\n[1,2] = 1/0 x3\n").unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (3, "coefficient"));
        assert_eq!(parse_algebra("dim 3\n[2,1] = x3").unwrap_err().line, 2);
        assert_eq!(parse_algebra("dim 3\n[1,2] = x4").unwrap_err().field, "term");
        assert_eq!(parse_algebra("dim 3\n[1,2] = x3 x3").unwrap_err().field, "term");
        assert_eq!(parse_algebra("[1,2] = x3").unwrap_err().field, "bracket");
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("2,3,4", 4).unwrap(), vec![1, 2, 3]);
        assert!(parse_index_list("2,5", 4).is_err());
        assert!(parse_index_list("2,2", 4).is_err());
    }
}
