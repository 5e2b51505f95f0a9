//! Symmetric forms over Z and Q: exact signature, characteristic vectors,
//! reduction to Z₄ enhancements and the multiplicativity defect.

use std::fmt;

use num_rational::Ratio;
use num_traits::One;

use crate::enhancements::Z4Quadratic;
use crate::error::{Error, Result};
use crate::linking::LinkingForm;
use crate::matrix::Matrix;
use crate::residue::{Z2, Z4, Z8};
use crate::scalar::{FieldScalar, IntScalar};
use crate::snf::smith_normal_form;
use crate::z2::{Z2Matrix, Z2SymForm, Z2Vec};

/// Symmetric form over a field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatSymForm<F> {
    matrix: Matrix<F>,
}

impl<F: FieldScalar> RatSymForm<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if let Some((row, col)) = matrix.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(RatSymForm { matrix })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of positive minus number of negative squares, by symmetric
    /// congruence diagonalization. The radical contributes 0.
    pub fn signature_exact(&self) -> i64 {
        let (pos, neg, _) = self.inertia();
        pos as i64 - neg as i64
    }

    /// `(positive, negative, zero)` counts of a diagonalization.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let mut a = self.matrix.clone();
        let mut active: Vec<usize> = (0..self.dim()).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            let pivot = match active.iter().position(|&i| !a[(i, i)].is_zero()) {
                Some(p) => p,
                None => {
                    let Some((pi, j)) = active
                        .iter()
                        .enumerate()
                        .find_map(|(pi, &i)| active.iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (pi, j)))
                    else {
                        break;
                    };
                    // all diagonal entries vanish: replace e_i by e_i + e_j,
                    // making the pivot 2 a_ij
                    let i = active[pi];
                    for &k in &active {
                        let v = a[(i, k)].clone() + a[(j, k)].clone();
                        a[(i, k)] = v;
                    }
                    for &k in &active {
                        let v = a[(k, i)].clone() + a[(k, j)].clone();
                        a[(k, i)] = v;
                    }
                    pi
                }
            };
            let i = active.remove(pivot);
            let d = a[(i, i)].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &r in &active {
                if a[(r, i)].is_zero() {
                    continue;
                }
                let factor = a[(r, i)].clone() / d.clone();
                for &c in &active {
                    let v = a[(r, c)].clone() - factor.clone() * a[(i, c)].clone();
                    a[(r, c)] = v;
                }
            }
        }
        (pos, neg, self.dim() - pos - neg)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        RatSymForm { matrix: self.matrix.direct_sum(&other.matrix) }
    }

    pub fn neg(&self) -> Self {
        RatSymForm { matrix: self.matrix.neg() }
    }

    /// `Pᵀ M P`.
    pub fn congruence(&self, p: &Matrix<F>) -> Self {
        RatSymForm { matrix: self.matrix.congruence(p) }
    }

    pub fn tensor_product(&self, other: &Self) -> Self {
        RatSymForm { matrix: self.matrix.kron(&other.matrix) }
    }
}

impl<F: fmt::Display> fmt::Display for RatSymForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Symmetric form over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntSymForm<T> {
    matrix: Matrix<T>,
}

impl<T: fmt::Display> fmt::Display for IntSymForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

impl<T: IntScalar> IntSymForm<T> {
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if let Some((row, col)) = matrix.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(IntSymForm { matrix })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = Matrix::from_rows(rows.to_vec())?;
        Self::new(m.map(|&x| T::from_int(x)))
    }

    /// `n` copies of (Z, [c]).
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        IntSymForm { matrix: Matrix::from_fn(n, n, |i, j| if i == j { T::from_int(entries[i]) } else { T::zero() }) }
    }

    pub fn hyperbolic() -> Self {
        IntSymForm { matrix: Matrix::from_fn(2, 2, |i, j| if i == j { T::zero() } else { T::one() }) }
    }

    pub fn zero_dim() -> Self {
        IntSymForm { matrix: Matrix::zeros(0, 0) }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn det(&self) -> T {
        self.matrix.det()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn is_even(&self) -> bool {
        (0..self.dim()).all(|i| self.matrix[(i, i)].is_even())
    }

    fn require_unimodular(&self) -> Result<()> {
        if self.is_unimodular() {
            Ok(())
        } else {
            Err(Error::NotUnimodular)
        }
    }

    pub fn to_rational(&self) -> RatSymForm<Ratio<T>> {
        RatSymForm { matrix: self.matrix.to_fractions() }
    }

    pub fn signature_exact(&self) -> i64 {
        self.to_rational().signature_exact()
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> T {
        self.matrix.bilinear(x, y)
    }

    /// The form reduced mod 2.
    pub fn mod2(&self) -> Z2SymForm {
        let n = self.dim();
        Z2SymForm::new(Z2Matrix::from_fn(n, n, |i, j| self.matrix[(i, j)].is_odd())).expect("reduction of a symmetric form is symmetric")
    }

    /// A 0/1 vector `v` with φ(x,x) ≡ φ(x,v) mod 2.
    pub fn characteristic_vector(&self) -> Result<Vec<T>> {
        self.require_unimodular()?;
        let wu = self.mod2().wu_class().expect("unimodular forms are nonsingular mod 2");
        Ok(wu.to_bits().into_iter().map(|b| if b { T::one() } else { T::zero() }).collect())
    }

    /// (E/2E, φ mod 2, x ↦ φ(x,x) mod 4).
    pub fn reduce_to_enhanced(&self) -> Result<Z4Quadratic> {
        self.require_unimodular()?;
        let values = (0..self.dim()).map(|i| Z4::new(self.matrix[(i, i)].residue(4))).collect();
        Z4Quadratic::new(self.mod2(), values)
    }

    /// φ(v,v) mod 8 for a characteristic vector v.
    pub fn van_der_blij_residue(&self) -> Result<Z8> {
        let v = self.characteristic_vector()?;
        Ok(Z8::new(self.eval(&v, &v).residue(8)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        IntSymForm { matrix: self.matrix.direct_sum(&other.matrix) }
    }

    pub fn neg(&self) -> Self {
        IntSymForm { matrix: self.matrix.neg() }
    }

    /// Kronecker product.
    pub fn tensor_product(&self, other: &Self) -> Self {
        IntSymForm { matrix: self.matrix.kron(&other.matrix) }
    }

    /// `Pᵀ M P`.
    pub fn congruence(&self, p: &Matrix<T>) -> Self {
        IntSymForm { matrix: self.matrix.congruence(p) }
    }

    /// Linking form on coker(φ) of an even nondegenerate form with 2-primary
    /// determinant.
    pub fn boundary_linking_form(&self) -> Result<LinkingForm<T>> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::DegenerateForm);
        }
        if let Some(index) = (0..self.dim()).find(|&i| self.matrix[(i, i)].is_odd()) {
            return Err(Error::OddDiagonal { index });
        }
        let mut odd = det.abs();
        let two = T::from_int(2);
        while odd.is_even() {
            odd = odd / two.clone();
        }
        if !odd.is_one() {
            return Err(Error::NotTwoPrimary);
        }
        let smith = smith_normal_form(&self.matrix);
        let left_inv = smith.left.inverse_unimodular().expect("Smith transforms are unimodular");
        let inv = self.matrix.to_fractions().inverse().expect("nondegenerate");
        let factors = smith.invariant_factors();
        let gens: Vec<Vec<Ratio<T>>> = (0..self.dim())
            .filter(|&i| factors[i] > T::one())
            .map(|i| left_inv.column(i).into_iter().map(Ratio::from_integer).collect())
            .collect();
        let orders: Vec<T> = factors.into_iter().filter(|d| *d > T::one()).collect();
        let l = gens.len();
        let one = Ratio::one();
        let two_r = Ratio::from_integer(two);
        let b = Matrix::from_fn(l, l, |i, j| frac_mod(&inv.bilinear(&gens[i], &gens[j]), &one));
        let q = (0..l).map(|i| frac_mod(&inv.bilinear(&gens[i], &gens[i]), &two_r)).collect();
        LinkingForm::new(orders, b, q)
    }
}

/// Representative of `x` in `[0, m)`.
pub(crate) fn frac_mod<T: IntScalar>(x: &Ratio<T>, m: &Ratio<T>) -> Ratio<T> {
    let k = (x.clone() / m.clone()).floor();
    x.clone() - k * m.clone()
}

/// Outcome of [`multiplicativity_defect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub sigma_e: i64,
    pub sigma_b: i64,
    pub sigma_f: i64,
    /// σ(e) − σ(b)σ(f).
    pub defect: i64,
    pub subquotient_dim: usize,
    pub arf: Z2,
}

impl DefectReport {
    /// 4·Arf ≡ σ(e) − σ(b)σ(f) mod 8.
    pub fn is_consistent(&self) -> bool {
        self.arf.times_four() == Z8::new(self.defect)
    }
}

/// Arf invariant of the Wu subquotient of e ⊕ −(b ⊗ f).
pub fn multiplicativity_defect<T: IntScalar>(e: &IntSymForm<T>, b: &IntSymForm<T>, f: &IntSymForm<T>) -> Result<DefectReport> {
    for form in [e, b, f] {
        form.require_unimodular()?;
    }
    let (sigma_e, sigma_b, sigma_f) = (e.signature_exact(), b.signature_exact(), f.signature_exact());
    let product = sigma_b * sigma_f;
    if (sigma_e - product).rem_euclid(4) != 0 {
        return Err(Error::NotMod4Multiplicative { sigma_e, product });
    }
    let combined = e.direct_sum(&b.tensor_product(f).neg());
    let sq = combined.reduce_to_enhanced()?.isotropic_subquotient()?;
    Ok(DefectReport {
        sigma_e,
        sigma_b,
        sigma_f,
        defect: sigma_e - product,
        subquotient_dim: sq.quadratic.dim(),
        arf: sq.quadratic.arf()?,
    })
}

/// Characteristic vector of a tensor product, `v_a ⊗ v_b`, as a Z₂ vector.
pub fn tensor_characteristic<T: IntScalar>(a: &IntSymForm<T>, b: &IntSymForm<T>) -> Result<Z2Vec> {
    let va = a.mod2().wu_class()?;
    let vb = b.mod2().wu_class()?;
    Ok(va.tensor(&vb))
}
