//! Small dense matrices over `i64` and exact rationals.
//!
//! Everything here is sized for root-system data (rank at most a dozen or
//! so), so the algorithms are the textbook ones: Gauss-Jordan over ℚ and
//! elementary row/column operations over ℤ.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Formats a rational vector as `(a, b/c, ...)`.
pub fn fmt_qvec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn dot(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl Matrix<i64> {
    pub fn to_rational(&self) -> Matrix<Q> {
        self.map(|&x| q(x))
    }
}

impl Matrix<Q> {
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.data.iter().fold(1, |acc, x| acc.lcm(x.denom()))
    }

    pub fn scale(&self, s: Q) -> Matrix<Q> {
        self.map(|x| x * s)
    }

    /// Entries as integers, if all are integral.
    pub fn to_integer(&self) -> Option<Matrix<i64>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.map(|x| x.to_integer()))
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for r in col + 1..n {
                let f = a[(r, col)] / p;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= f * v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<Q>> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<Q>::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p = a[(col, col)];
            for c in 0..n {
                a[(col, c)] /= p;
                inv[(col, c)] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let av = a[(col, c)];
                    let iv = inv[(col, c)];
                    a[(r, c)] -= f * av;
                    inv[(r, c)] -= f * iv;
                }
            }
        }
        Some(inv)
    }

    /// Leading principal minors, top-left 1×1 through n×n.
    pub fn leading_minors(&self) -> Vec<Q> {
        (1..=self.rows)
            .map(|k| Matrix::from_fn(k, k, |i, j| self[(i, j)]).determinant())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_minors().iter().all(|m| m.is_positive())
    }
}

/// Smith normal form `U · M · V = D` of an integer matrix.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal of `D`, nonnegative, each dividing the next (zeros last).
    pub diagonal: Vec<i64>,
    pub left: Matrix<i64>,
    pub right: Matrix<i64>,
}

pub fn smith_normal_form(m: &Matrix<i64>) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::<i64>::identity(rows);
    let mut v = Matrix::<i64>::identity(cols);

    let row_axpy = |mat: &mut Matrix<i64>, dst: usize, src: usize, f: i64| {
        for c in 0..mat.cols() {
            let s = mat[(src, c)];
            mat[(dst, c)] -= f * s;
        }
    };
    let col_axpy = |mat: &mut Matrix<i64>, dst: usize, src: usize, f: i64| {
        for r in 0..mat.rows() {
            let s = mat[(r, src)];
            mat[(r, dst)] -= f * s;
        }
    };

    let n = rows.min(cols);
    for t in 0..n {
        // Pick the smallest nonzero entry in the remaining block as pivot.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a[(i, j)];
                    if x != 0 && best.map_or(true, |(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = a[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let f = Integer::div_floor(&a[(i, t)], &p);
                if f != 0 {
                    row_axpy(&mut a, i, t, f);
                    row_axpy(&mut u, i, t, f);
                }
                clean &= a[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let f = Integer::div_floor(&a[(t, j)], &p);
                if f != 0 {
                    col_axpy(&mut a, j, t, f);
                    col_axpy(&mut v, j, t, f);
                }
                clean &= a[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => {
                    // Fold row i into row t and go again.
                    row_axpy(&mut a, t, i, -1);
                    row_axpy(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if a[(t, t)] < 0 {
            for c in 0..cols {
                a[(t, c)] = -a[(t, c)];
            }
            for c in 0..rows {
                u[(t, c)] = -u[(t, c)];
            }
        }
    }

    Smith {
        diagonal: (0..n).map(|i| a[(i, i)]).collect(),
        left: u,
        right: v,
    }
}

/// Column Hermite basis of the lattice spanned by the columns of `m`.
///
/// Returns a lower-triangular `rows × rank` matrix whose columns are a
/// ℤ-basis of the column lattice of `m`, with positive diagonal and
/// off-diagonal entries reduced into `[0, pivot)`.
pub fn column_hermite_basis(m: &Matrix<i64>) -> Matrix<i64> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut rank = 0;
    for r in 0..rows {
        if rank == cols {
            break;
        }
        loop {
            let piv = (rank..cols)
                .filter(|&j| a[(r, j)] != 0)
                .min_by_key(|&j| a[(r, j)].abs());
            let Some(pj) = piv else {
                break;
            };
            a.swap_cols(rank, pj);
            let p = a[(r, rank)];
            let mut done = true;
            for j in rank + 1..cols {
                let f = Integer::div_floor(&a[(r, j)], &p);
                if f != 0 {
                    for i in 0..rows {
                        let s = a[(i, rank)];
                        a[(i, j)] -= f * s;
                    }
                }
                done &= a[(r, j)] == 0;
            }
            if done {
                break;
            }
        }
        if a[(r, rank)] == 0 {
            continue;
        }
        if a[(r, rank)] < 0 {
            for i in 0..rows {
                a[(i, rank)] = -a[(i, rank)];
            }
        }
        let p = a[(r, rank)];
        for j in 0..rank {
            let f = Integer::div_floor(&a[(r, j)], &p);
            if f != 0 {
                for i in 0..rows {
                    let s = a[(i, rank)];
                    a[(i, j)] -= f * s;
                }
            }
        }
        rank += 1;
    }
    Matrix::from_fn(rows, rank, |i, j| a[(i, j)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn imat(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        Matrix::from_rows(rows)
    }

    fn check_smith(m: &Matrix<i64>) -> Smith {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).mul(&s.right);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j { s.diagonal[i] } else { 0 };
                assert_eq!(d[(i, j)], expect, "U·M·V not diagonal for {m:?}");
            }
        }
        for w in s.diagonal.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {:?}", s.diagonal);
            }
        }
        assert_eq!(s.left.to_rational().determinant().abs(), q(1));
        assert_eq!(s.right.to_rational().determinant().abs(), q(1));
        s
    }

    #[test]
    fn smith_of_a3_cartan() {
        let a3 = imat(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(check_smith(&a3).diagonal, vec![1, 1, 4]);
    }

    #[test]
    fn smith_of_d4_cartan() {
        let d4 = imat(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]);
        assert_eq!(check_smith(&d4).diagonal, vec![1, 1, 2, 2]);
    }

    #[test]
    fn smith_needs_divisibility_fixup() {
        // diag(2, 3) has invariant factors 1, 6.
        let m = imat(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(check_smith(&m).diagonal, vec![1, 6]);
        let m = imat(vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
        assert_eq!(check_smith(&m).diagonal, vec![2, 2, 60]);
    }

    #[test]
    fn smith_rectangular_and_singular() {
        let m = imat(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check_smith(&m).diagonal, vec![2, 6, 12]);
        let m = imat(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(check_smith(&m).diagonal, vec![1, 0]);
        let m = imat(vec![vec![3, 6, 9]]);
        assert_eq!(check_smith(&m).diagonal, vec![3]);
    }

    #[test]
    fn inverse_and_determinant() {
        let a2 = imat(vec![vec![2, -1], vec![-1, 2]]).to_rational();
        assert_eq!(a2.determinant(), q(3));
        let inv = a2.inverse().unwrap();
        assert_eq!(inv[(0, 0)], qf(2, 3));
        assert_eq!(inv[(0, 1)], qf(1, 3));
        assert_eq!(a2.mul(&inv), Matrix::identity(2));
        let sing = imat(vec![vec![1, 2], vec![2, 4]]).to_rational();
        assert!(sing.inverse().is_none());
        assert_eq!(sing.determinant(), q(0));
    }

    #[test]
    fn hermite_basis_spans_same_lattice() {
        // Columns: e1, e2, (1/2)(e1+e2) scaled by 2.
        let m = imat(vec![vec![2, 0, 1], vec![0, 2, 1]]);
        let h = column_hermite_basis(&m);
        assert_eq!(h.cols(), 2);
        assert_eq!(h.to_rational().determinant().abs(), q(2));
        // Each original column is an integer combination of the basis.
        let hinv = h.to_rational().inverse().unwrap();
        for c in m.columns() {
            let c: Vec<Q> = c.into_iter().map(q).collect();
            assert!(hinv.mul_vec(&c).iter().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn hermite_basis_of_rank_deficient_generators() {
        let m = imat(vec![vec![2, 4, 6], vec![1, 2, 3]]);
        let h = column_hermite_basis(&m);
        assert_eq!(h.cols(), 1);
    }

    #[test]
    fn positive_definite_check() {
        let g2 = imat(vec![vec![6, -3], vec![-3, 2]]).to_rational();
        assert!(g2.is_positive_definite());
        let bad = imat(vec![vec![1, 2], vec![2, 1]]).to_rational();
        assert!(!bad.is_positive_definite());
    }
}
