//! Linear algebra over Z₂ and nonsingular symmetric bilinear forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::residue::Z2;

const WORD: usize = 64;

fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD)
}

/// Bit vector over Z₂, packed into machine words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Vec {
    dim: usize,
    words: Vec<u64>,
}

impl fmt::Debug for Z2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2Vec({self})")
    }
}

impl fmt::Display for Z2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

impl Z2Vec {
    pub fn zero(dim: usize) -> Self {
        Z2Vec { dim, words: vec![0; words_for(dim)] }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Entries are reduced mod 2.
    pub fn from_ints(entries: &[i64]) -> Self {
        let bits: Vec<bool> = entries.iter().map(|x| x.rem_euclid(2) == 1).collect();
        Self::from_bits(&bits)
    }

    /// Vector whose i-th coordinate is bit i of `mask` (dim ≤ 64).
    pub fn from_mask(dim: usize, mask: u64) -> Self {
        assert!(dim <= WORD);
        let mut v = Self::zero(dim);
        if dim > 0 {
            v.words[0] = if dim == WORD { mask } else { mask & ((1u64 << dim) - 1) };
        }
        v
    }

    pub fn mask(&self) -> u64 {
        assert!(self.dim <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.dim);
        let bit = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.dim);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &Z2Vec) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Z2Vec) -> Z2Vec {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    /// Standard dot product over Z₂.
    pub fn dot(&self, other: &Z2Vec) -> bool {
        assert_eq!(self.dim, other.dim);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(|&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.dim).map(|i| self.get(i)).collect()
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Z2Vec) -> Z2Vec {
        let mut v = Z2Vec::zero(self.dim + other.dim);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.dim + i, true);
        }
        v
    }

    /// Tensor product in the basis `e_i ⊗ f_j ↦ i * other.dim + j`.
    pub fn tensor(&self, other: &Z2Vec) -> Z2Vec {
        let mut v = Z2Vec::zero(self.dim * other.dim);
        for i in self.ones() {
            for j in other.ones() {
                v.set(i * other.dim + j, true);
            }
        }
        v
    }
}

/// Row-reduces `rows` in place to reduced echelon form; returns pivot columns.
fn rref_rows(rows: &mut Vec<Z2Vec>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Square or rectangular bit matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z2Matrix {
    cols: usize,
    rows: Vec<Z2Vec>,
}

impl Z2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Z2Matrix { cols, rows: vec![Z2Vec::zero(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Z2Matrix { cols: n, rows: (0..n).map(|i| Z2Vec::unit(n, i)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<Z2Vec>) -> Result<Self> {
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(Error::ShapeMismatch("row length differs from column count".into()));
        }
        Ok(Z2Matrix { cols, rows })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Z2Matrix { cols, rows: (0..rows).map(|i| Z2Vec::from_bits(&(0..cols).map(|j| f(i, j)).collect::<Vec<_>>())).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Z2Vec {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> Vec<Z2Vec> {
        self.rows.clone()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b);
    }

    pub fn transpose(&self) -> Z2Matrix {
        Z2Matrix::from_fn(self.cols, self.nrows(), |i, j| self.get(j, i))
    }

    pub fn mul_vec(&self, v: &Z2Vec) -> Z2Vec {
        Z2Vec::from_bits(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &Z2Matrix) -> Z2Matrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Z2Vec::zero(other.cols);
                for k in r.ones() {
                    acc.xor_assign(other.row(k));
                }
                acc
            })
            .collect();
        Z2Matrix { cols: other.cols, rows }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        rref_rows(&mut rows, self.cols).len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Z2Vec> {
        let mut rows = self.rows.clone();
        let pivots = rref_rows(&mut rows, self.cols);
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = Z2Vec::unit(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if rows[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &Z2Vec) -> Option<Z2Vec> {
        assert_eq!(b.dim(), self.nrows());
        let mut aug: Vec<Z2Vec> = self.rows.iter().enumerate().map(|(i, r)| r.concat(&Z2Vec::from_bits(&[b.get(i)]))).collect();
        let pivots = rref_rows(&mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = Z2Vec::zero(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if aug[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Z2Matrix> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let mut aug: Vec<Z2Vec> = self.rows.iter().enumerate().map(|(i, r)| r.concat(&Z2Vec::unit(n, i))).collect();
        let pivots = rref_rows(&mut aug, 2 * n);
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        let rows = aug.iter().map(|r| Z2Vec::from_bits(&(n..2 * n).map(|j| r.get(j)).collect::<Vec<_>>())).collect();
        Some(Z2Matrix { cols: n, rows })
    }
}

/// Symmetric bilinear form over Z₂ given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z2SymForm {
    gram: Z2Matrix,
}

impl fmt::Display for Z2SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|j| u8::from(self.gram.get(i, j)).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Z2SymForm {
    pub fn new(gram: Z2Matrix) -> Result<Self> {
        if gram.nrows() != gram.ncols() {
            return Err(Error::NotSquare { rows: gram.nrows(), cols: gram.ncols() });
        }
        for i in 0..gram.nrows() {
            for j in i + 1..gram.ncols() {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Z2SymForm { gram })
    }

    /// Entries reduced mod 2.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(Z2Matrix::from_rows(cols, rows.iter().map(|r| Z2Vec::from_ints(r)).collect())?)
    }

    /// The anisotropic rank-one form P.
    pub fn p() -> Self {
        Z2SymForm { gram: Z2Matrix::identity(1) }
    }

    /// The hyperbolic form H.
    pub fn h() -> Self {
        Z2SymForm { gram: Z2Matrix::from_fn(2, 2, |i, j| i != j) }
    }

    pub fn zero_dim() -> Self {
        Z2SymForm { gram: Z2Matrix::zeros(0, 0) }
    }

    /// `p` copies of P followed by `k` copies of H.
    pub fn standard(p: usize, k: usize) -> Self {
        let n = p + 2 * k;
        let gram = Z2Matrix::from_fn(n, n, |i, j| {
            if i < p || j < p {
                i == j
            } else {
                let (a, b) = (i - p, j - p);
                a / 2 == b / 2 && a != b
            }
        });
        Z2SymForm { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &Z2Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.gram.get(i, j)
    }

    pub fn eval(&self, x: &Z2Vec, y: &Z2Vec) -> bool {
        x.dot(&self.gram.mul_vec(y))
    }

    pub fn diagonal(&self) -> Z2Vec {
        Z2Vec::from_bits(&(0..self.dim()).map(|i| self.gram.get(i, i)).collect::<Vec<_>>())
    }

    /// λ(x,x) = 0 for all x.
    pub fn is_isotropic(&self) -> bool {
        self.diagonal().is_zero()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    fn require_nonsingular(&self) -> Result<()> {
        if self.is_nonsingular() {
            Ok(())
        } else {
            Err(Error::SingularForm)
        }
    }

    /// The unique `v` with λ(x,x) = λ(x,v) for all x.
    pub fn wu_class(&self) -> Result<Z2Vec> {
        self.require_nonsingular()?;
        Ok(self.gram.solve(&self.diagonal()).expect("nonsingular system is solvable"))
    }

    pub fn direct_sum(&self, other: &Z2SymForm) -> Z2SymForm {
        let (n, m) = (self.dim(), other.dim());
        let gram = Z2Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
            (true, true) => self.entry(i, j),
            (false, false) => other.entry(i - n, j - n),
            _ => false,
        });
        Z2SymForm { gram }
    }

    /// Gram matrix of the form restricted to the span of `basis`.
    pub fn restrict(&self, basis: &[Z2Vec]) -> Z2SymForm {
        let gram = Z2Matrix::from_fn(basis.len(), basis.len(), |i, j| self.eval(&basis[i], &basis[j]));
        Z2SymForm { gram }
    }

    /// Pulls the form back along the columns of `p` (new basis `p e_i`).
    pub fn change_basis(&self, p: &Z2Matrix) -> Z2SymForm {
        let pt = p.transpose();
        let basis: Vec<Z2Vec> = (0..pt.nrows()).map(|i| pt.row(i).clone()).collect();
        self.restrict(&basis)
    }

    /// Orthogonal splitting into anisotropic vectors and hyperbolic pairs.
    pub fn decompose_with_basis(&self) -> Result<Decomposition> {
        self.require_nonsingular()?;
        let n = self.dim();
        let mut remaining: Vec<Z2Vec> = (0..n).map(|i| Z2Vec::unit(n, i)).collect();
        let mut anisotropic = Vec::new();
        while let Some(pos) = remaining.iter().position(|u| self.eval(u, u)) {
            let w = remaining.remove(pos);
            for u in remaining.iter_mut() {
                if self.eval(u, &w) {
                    u.xor_assign(&w);
                }
            }
            anisotropic.push(w);
        }
        let pairs = split_pairs(self, remaining)?;
        Ok(Decomposition { anisotropic, pairs })
    }

    /// Multiplicities `(p, k)` with the form isomorphic to ⊕ₚP ⊕ ⊕ₖH.
    pub fn decompose(&self) -> Result<(usize, usize)> {
        let d = self.decompose_with_basis()?;
        Ok((d.anisotropic.len(), d.pairs.len()))
    }

    /// Symplectic basis of an isotropic nonsingular subspace.
    pub fn symplectic_split(&self, sub: &Z2Subspace) -> Result<Vec<(Z2Vec, Z2Vec)>> {
        assert_eq!(sub.ambient_dim(), self.dim());
        let restricted = self.restrict(sub.basis());
        if !restricted.is_isotropic() {
            return Err(Error::AnisotropicInput);
        }
        if !restricted.is_nonsingular() {
            return Err(Error::DegenerateRestriction);
        }
        split_pairs(self, sub.basis().to_vec())
    }

    /// Class in L⁰(Z₂) ≅ Z₂.
    pub fn witt_class_sym(&self) -> Result<Z2> {
        let (p, _) = self.decompose()?;
        Ok(Z2::new(p as i64))
    }
}

/// Symplectic splitting of the span of `remaining`, on which λ is assumed
/// isotropic. Fails if the restriction is degenerate.
fn split_pairs(form: &Z2SymForm, mut remaining: Vec<Z2Vec>) -> Result<Vec<(Z2Vec, Z2Vec)>> {
    let mut pairs = Vec::new();
    while !remaining.is_empty() {
        let e = remaining.remove(0);
        let Some(pos) = remaining.iter().position(|u| form.eval(&e, u)) else {
            return Err(Error::DegenerateRestriction);
        };
        let f = remaining.remove(pos);
        for u in remaining.iter_mut() {
            let (ue, uf) = (form.eval(u, &e), form.eval(u, &f));
            if uf {
                u.xor_assign(&e);
            }
            if ue {
                u.xor_assign(&f);
            }
        }
        pairs.push((e, f));
    }
    Ok(pairs)
}

/// Every symmetric form of dimension `n` (2^(n(n+1)/2) of them), in a fixed order.
pub fn symmetric_forms(n: usize) -> impl Iterator<Item = Z2SymForm> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    assert!(cells.len() < 64, "too many forms to enumerate");
    (0..1u64 << cells.len()).map(move |mask| {
        let mut gram = Z2Matrix::zeros(n, n);
        for (k, &(i, j)) in cells.iter().enumerate() {
            let b = (mask >> k) & 1 == 1;
            gram.set(i, j, b);
            gram.set(j, i, b);
        }
        Z2SymForm { gram }
    })
}

/// Every nonsingular symmetric form of dimension `n`.
pub fn nonsingular_forms(n: usize) -> impl Iterator<Item = Z2SymForm> {
    symmetric_forms(n).filter(Z2SymForm::is_nonsingular)
}

/// Output of [`Z2SymForm::decompose_with_basis`]: mutually orthogonal
/// anisotropic vectors and hyperbolic pairs spanning the space.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub anisotropic: Vec<Z2Vec>,
    pub pairs: Vec<(Z2Vec, Z2Vec)>,
}

/// Subspace of Z₂ⁿ, stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z2Subspace {
    ambient_dim: usize,
    basis: Vec<Z2Vec>,
}

impl Z2Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Z2Vec]) -> Self {
        assert!(vectors.iter().all(|v| v.dim() == ambient_dim));
        let mut rows = vectors.to_vec();
        rref_rows(&mut rows, ambient_dim);
        Z2Subspace { ambient_dim, basis: rows }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Z2Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Z2Subspace { ambient_dim, basis: (0..ambient_dim).map(|i| Z2Vec::unit(ambient_dim, i)).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Z2Vec] {
        &self.basis
    }

    pub fn contains(&self, v: &Z2Vec) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        rref_rows(&mut rows, self.ambient_dim).len() == self.basis.len()
    }

    /// `{x : λ(x, l) = 0 for all l in self}`.
    pub fn orthogonal(&self, form: &Z2SymForm) -> Z2Subspace {
        let conditions = Z2Matrix { cols: self.ambient_dim, rows: self.basis.iter().map(|l| form.gram().mul_vec(l)).collect() };
        Z2Subspace::span(self.ambient_dim, &conditions.kernel())
    }
}
