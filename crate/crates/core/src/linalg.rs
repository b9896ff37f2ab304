//! Exact linear algebra over the rationals.
//!
//! Everything downstream (brackets, module actions, invariant spaces) is
//! expressed through [`Matrix`] and [`Subspace`]. Subspaces are kept in
//! reduced row-echelon form, so two subspaces are equal exactly when their
//! stored bases are equal.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Ground-field element. Always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Dense column vector.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    Shape {
        expected: (usize, usize),
        got: (usize, usize),
    },
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose rows have `cols` entries even when `rows` is empty.
    pub fn from_rows_with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        if rows.is_empty() {
            Self::zeros(0, cols)
        } else {
            let m = Self::from_rows(rows);
            assert_eq!(m.cols, cols);
            m
        }
    }

    pub fn from_columns(cols: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[Scalar]) {
        for (r, x) in v.iter().enumerate() {
            self[(r, c)] = x.clone();
        }
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        let mut out = zero_vector(self.rows);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&mut self.data, c, &other.data);
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        // A^n = 0 for an n×n nilpotent matrix; square repeatedly.
        let mut p = self.clone();
        let mut e = 1usize;
        while e < self.rows {
            p = p.mul(&p);
            e *= 2;
        }
        p.is_zero()
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Flattens row-major, used to treat matrices as vectors.
    pub fn flatten(&self) -> &[Scalar] {
        &self.data
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let (e, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = e[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    /// Selects rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Stacks matrices with the same column count on top of each other.
    pub fn vstack(blocks: &[&Matrix], cols: usize) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }
}

/// Reduced row-echelon form with the list of pivot columns. Zero rows are
/// dropped, so the returned matrix has exactly `pivots.len()` rows.
pub fn rref(matrix: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows: Vec<Vector> = matrix.to_rows();
    let cols = matrix.cols();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = -row[col].clone();
            axpy(row, &f, &pivot_row);
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    (Matrix::from_rows_with_cols(rows, cols), pivots)
}

/// Null space `{x : A x = 0}`.
pub fn kernel(matrix: &Matrix) -> Subspace {
    let n = matrix.cols();
    let (e, pivots) = rref(matrix);
    let mut is_pivot = vec![None; n];
    for (r, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
        let mut v = zero_vector(n);
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -e[(r, free)].clone();
        }
        basis.push(v);
    }
    Subspace::span(n, basis)
}

/// Solves `A x = b`, returning one solution if any exists.
pub fn solve(matrix: &Matrix, b: &[Scalar]) -> Option<Vector> {
    let n = matrix.cols();
    let mut aug = Matrix::zeros(matrix.rows(), n + 1);
    for r in 0..matrix.rows() {
        for c in 0..n {
            aug[(r, c)] = matrix[(r, c)].clone();
        }
        aug[(r, n)] = b[r].clone();
    }
    let (e, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = zero_vector(n);
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = e[(r, n)].clone();
    }
    Some(x)
}

/// A linear subspace of `Q^ambient`, stored as a basis in reduced
/// row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        f.debug_list()
            .entries(
                self.basis
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            )
            .finish()
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Self {
        let m = Matrix::from_rows_with_cols(vectors, ambient);
        Self::row_space(&m)
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = rref(m);
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of the listed coordinate vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            ambient,
            indices.into_iter().map(|i| unit_vector(ambient, i)).collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = -v[p].clone();
            axpy(v, &f, self.basis.row(r));
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vector(&w)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            let f = -c.clone();
            axpy(&mut w, &f, self.basis.row(r));
        }
        is_zero_vector(&w).then_some(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let m = Matrix::vstack(&[&self.basis, &other.basis], self.ambient);
        Ok(Subspace::row_space(&m))
    }

    pub fn with_vector(&self, v: &[Scalar]) -> Subspace {
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        Subspace::span(self.ambient, rows)
    }

    /// Orthogonal complement for the standard bilinear form; used to turn
    /// a subspace into a system of linear constraints.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// `self ∩ other`, computed as the kernel of the stacked constraint
    /// systems of both subspaces.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let constraints = Matrix::vstack(&[a.basis(), b.basis()], self.ambient);
        Ok(kernel(&constraints))
    }

    /// Image of the subspace under `m` (vectors as columns).
    pub fn image(&self, m: &Matrix) -> Subspace {
        let rows = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), rows)
    }

    /// Picks vectors from the echelon basis of `self`, in pivot order, that
    /// extend `other ∩ self` to a basis of `self`.
    pub fn complement_in(&self, other: &Subspace) -> Result<Vec<Vector>, LinalgError> {
        self.check_ambient(other)?;
        let mut acc = other.intersect(self)?;
        let mut chosen = Vec::new();
        for v in self.basis_vectors() {
            if !acc.contains(&v) {
                acc = acc.with_vector(&v);
                chosen.push(v);
            }
        }
        Ok(chosen)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

/// Returns `U ⊆ S` with `U ⊕ W = S`. The vectors of `U` are taken greedily
/// from the echelon basis of `S` in pivot order.
pub fn complement_avoiding(s: &Subspace, w: &Subspace) -> Result<Subspace, LinalgError> {
    s.check_ambient(w)?;
    if !s.contains_subspace(w) {
        return Err(LinalgError::NotContained);
    }
    let chosen = s.complement_in(w)?;
    Ok(Subspace::span(s.ambient(), chosen))
}

/// Echelon basis whose pivots are taken from the right: each row has a
/// leading coefficient 1 in its *last* nonzero column and the other rows
/// vanish there. Returns `(rows, pivots)` with pivots ascending.
pub fn rref_from_right(m: &Matrix) -> (Matrix, Vec<usize>) {
    let cols = m.cols();
    let rev: Vec<usize> = (0..cols).rev().collect();
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let flipped = m.submatrix(&all_rows, &rev);
    let (e, pivots) = rref(&flipped);
    let back_rows: Vec<usize> = (0..e.rows()).rev().collect();
    let out = e.submatrix(&back_rows, &rev);
    let mut p: Vec<usize> = pivots.iter().map(|&c| cols - 1 - c).collect();
    p.reverse();
    (out, p)
}

pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1
    }
}
