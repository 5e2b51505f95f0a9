//! Dense row-major matrices over a generic scalar.

use std::fmt;
use std::ops::{Index, IndexMut, Neg};

use num_rational::Ratio;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, IntScalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = (0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]).collect();
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &rows).finish()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
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
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Sub-matrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.first_asymmetry().is_none()
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)>
    where
        T: PartialEq,
    {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows).flat_map(|i| (i + 1..self.cols).map(move |j| (i, j))).find(|&(i, j)| self[(i, j)] != self[(j, i)])
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!("hconcat {} vs {} rows", self.rows, other.rows)));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn column_vector(v: &[T]) -> Self {
        Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
    }
}

impl<T> Matrix<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul: shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cell = &mut out[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "mul_vec: shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        let my = self.mul_vec(y);
        x.iter().zip(&my).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)].clone() * other[(i % other.rows, j % other.cols)].clone()
        })
    }

    /// `P^T M P`.
    pub fn congruence(&self, p: &Self) -> Self {
        p.transpose().mul(self).mul(p)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl<T: IntScalar> Matrix<T> {
    pub fn to_fractions(&self) -> Matrix<Ratio<T>> {
        self.map(|x| Ratio::from_integer(x.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone()) / prev.clone();
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Entrywise least non-negative residues.
    pub fn residues(&self, modulus: i64) -> Matrix<i64> {
        self.map(|x| x.residue(modulus))
    }

    /// Inverse of a unimodular integer matrix.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        let inv = self.to_fractions().inverse()?;
        if inv.iter().all(|x| x.is_integer()) {
            Some(inv.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

/// Reduced row echelon form data.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: FieldScalar> Matrix<T> {
    pub fn rref(&self) -> Echelon<T> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = T::one() / a[(r, c)].clone();
            for j in c..a.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let factor = a[(i, c)].clone();
                    for j in c..a.cols {
                        let v = a[(i, j)].clone() - factor.clone() * a[(r, j)].clone();
                        a[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let aug = self.hconcat(&Matrix::identity(n)).ok()?;
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| reduced[(i, n + j)].clone()))
    }

    pub fn det_field(&self) -> T {
        assert!(self.is_square(), "det of non-square matrix");
        let mut a = self.clone();
        let n = a.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det = det * pivot.clone();
            for i in c + 1..n {
                if !a[(i, c)].is_zero() {
                    let factor = a[(i, c)].clone() / pivot.clone();
                    for j in c..n {
                        let v = a[(i, j)].clone() - factor.clone() * a[(c, j)].clone();
                        a[(i, j)] = v;
                    }
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x))
    }

    #[test]
    fn bareiss_matches_field_determinant() {
        let m = int(vec![vec![2, -1, 0, 3], vec![1, 4, 2, -2], vec![0, 5, -3, 1], vec![7, 0, 1, 1]]);
        let field: BigRational = m.to_fractions().det_field();
        assert_eq!(BigRational::from_integer(m.det()), field);
        assert_eq!(int(vec![vec![1, 2], vec![2, 4]]).det(), BigInt::from(0));
        assert_eq!(int(vec![vec![0, 1], vec![1, 0]]).det(), BigInt::from(-1));
        assert_eq!(Matrix::<BigInt>::zeros(0, 0).det(), BigInt::from(1));
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = int(vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]).to_fractions();
        let ker = m.nullspace();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_round_trips() {
        let m = int(vec![vec![2, 1], vec![7, 4]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(int(vec![vec![2, 0], vec![0, 1]]).inverse_unimodular().is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = int(vec![vec![1, 2], vec![3, 4]]);
        let b = int(vec![vec![0, 1], vec![1, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k[(0, 1)], BigInt::from(1));
        assert_eq!(k[(2, 3)], BigInt::from(4));
        assert_eq!(k[(2, 1)], BigInt::from(3));
        assert_eq!(k[(1, 2)], BigInt::from(2));
    }
}
