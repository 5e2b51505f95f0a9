//! Symplectic monodromy data and surface-bundle signatures via Wall
//! non-additivity.
//!
//! Conventions: `J = [[0, I], [−I, 0]]` and `φ(a, b) = aᵀ J b`.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intforms::RatSymForm;
use crate::matrix::Matrix;
use crate::scalar::IntScalar;

/// Standard symplectic matrix of size 2h.
pub fn standard_j<T: IntScalar>(h: usize) -> Matrix<T> {
    Matrix::from_fn(2 * h, 2 * h, |i, j| {
        if j == i + h {
            T::one()
        } else if i == j + h {
            -T::one()
        } else {
            T::zero()
        }
    })
}

/// MᵀJM = J. Fails on non-square or odd-sized input.
pub fn is_symplectic<T: IntScalar>(m: &Matrix<T>) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.rows().is_multiple_of(2) {
        return Err(Error::OddDimension(m.rows()));
    }
    let j = standard_j(m.rows() / 2);
    Ok(m.transpose().mul(&j).mul(m) == j)
}

/// Element of Sp(2h, Z).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix<T> {
    m: Matrix<T>,
}

impl<T: IntScalar> SymplecticMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if is_symplectic(&m)? {
            Ok(SymplecticMatrix { m })
        } else {
            Err(Error::NotSymplectic)
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows.to_vec())?.map(|&x| T::from_int(x)))
    }

    pub fn identity(h: usize) -> Self {
        SymplecticMatrix { m: Matrix::identity(2 * h) }
    }

    /// x ↦ x + φ(c, x)c, i.e. `I + c cᵀ J`.
    pub fn transvection(c: &[T]) -> Result<Self> {
        if !c.len().is_multiple_of(2) {
            return Err(Error::OddDimension(c.len()));
        }
        if c.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let h = c.len() / 2;
        let col = Matrix::column_vector(c);
        let m = Matrix::identity(2 * h).add(&col.mul(&col.transpose()).mul(&standard_j(h)));
        Ok(SymplecticMatrix { m })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn genus(&self) -> usize {
        self.m.rows() / 2
    }

    pub fn mul(&self, other: &Self) -> Self {
        SymplecticMatrix { m: self.m.mul(&other.m) }
    }

    /// `M⁻¹ = −J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = standard_j::<T>(self.genus());
        SymplecticMatrix { m: j.mul(&self.m.transpose()).mul(&j).neg() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        SymplecticMatrix { m: base.m.pow(e.unsigned_abs() as u32) }
    }

    /// `[f, g] = f g f⁻¹ g⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    pub fn conjugate_by(&self, p: &Self) -> Self {
        p.mul(self).mul(&p.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.m == Matrix::identity(self.m.rows())
    }

    /// M ≡ I mod k.
    pub fn is_identity_mod(&self, k: i64) -> bool {
        let n = self.m.rows();
        (0..n).all(|i| (0..n).all(|j| (self.m[(i, j)].clone() - if i == j { T::one() } else { T::zero() }).residue(k) == 0))
    }

    fn rational(&self) -> Matrix<Ratio<T>> {
        self.m.to_fractions()
    }
}

impl<T: fmt::Display> fmt::Display for SymplecticMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// Closed form `J (I − g⁻¹)(I − f)⁻¹(g − f)`, without the symmetry check.
pub fn wall_matrix_closed<T: IntScalar>(f: &SymplecticMatrix<T>, g: &SymplecticMatrix<T>) -> Result<Matrix<Ratio<T>>> {
    let n = f.matrix().rows();
    let id = Matrix::<Ratio<T>>::identity(n);
    let inv = id.sub(&f.rational()).inverse().ok_or(Error::OneMinusFSingular)?;
    let j = standard_j::<T>(n / 2).to_fractions();
    Ok(j.mul(&id.sub(&g.inverse().rational())).mul(&inv).mul(&g.rational().sub(&f.rational())))
}

/// The Wall form S(f, g) when I − f is invertible.
pub fn wall_form_closed<T: IntScalar>(f: &SymplecticMatrix<T>, g: &SymplecticMatrix<T>) -> Result<RatSymForm<Ratio<T>>> {
    RatSymForm::new(wall_matrix_closed(f, g)?)
}

/// Wall form on K = ker[(I − f) | (I − g)] with Ψ((y,z),(y',z')) = φ(y + z, (I − f)y').
#[derive(Clone, Debug)]
pub struct WallForm<T: IntScalar> {
    pub kernel: Vec<Vec<Ratio<T>>>,
    pub form: RatSymForm<Ratio<T>>,
    pub signature: i64,
}

pub fn wall_form_general<T: IntScalar>(f: &SymplecticMatrix<T>, g: &SymplecticMatrix<T>) -> WallForm<T> {
    let n = f.matrix().rows();
    let id = Matrix::<Ratio<T>>::identity(n);
    let a = id.sub(&f.rational());
    let b = id.sub(&g.rational());
    let kernel = a.hconcat(&b).expect("same size").nullspace();
    let j = standard_j::<T>(n / 2).to_fractions();
    let ja = j.mul(&a);
    let k = kernel.len();
    let split = |v: &Vec<Ratio<T>>| -> (Vec<Ratio<T>>, Vec<Ratio<T>>) { (v[..n].to_vec(), v[n..].to_vec()) };
    let gram = Matrix::from_fn(k, k, |p, q| {
        let (y, z) = split(&kernel[p]);
        let (y2, _) = split(&kernel[q]);
        let sum: Vec<Ratio<T>> = y.iter().zip(&z).map(|(s, t)| s.clone() + t.clone()).collect();
        ja.bilinear(&sum, &y2)
    });
    let form = RatSymForm::new(gram).expect("the Wall form is symmetric on the kernel");
    let signature = form.signature_exact();
    WallForm { kernel, form, signature }
}

/// c(a, b) = σ(Ψ(a⁻¹, b)), a normalized 2-cocycle on Sp(2h, Z).
pub fn meyer_cocycle<T: IntScalar>(a: &SymplecticMatrix<T>, b: &SymplecticMatrix<T>) -> i64 {
    wall_form_general(&a.inverse(), b).signature
}

/// Monodromy of a surface bundle: pairs (fᵢ, gᵢ) with Π[fᵢ, gᵢ] = I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData<T> {
    h: usize,
    pairs: Vec<(SymplecticMatrix<T>, SymplecticMatrix<T>)>,
}

/// Output of [`MonodromyData::bundle_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleReport {
    /// σ(Ψ(fᵢ, gᵢfᵢ⁻¹gᵢ⁻¹)) for each handle.
    pub handles: Vec<i64>,
    /// Sum of the handle values.
    pub handle_total: i64,
    /// Signature of the total space.
    pub signature: i64,
    pub z4_trivial: bool,
    pub z2_trivial: bool,
}

impl<T: IntScalar> MonodromyData<T> {
    pub fn new(h: usize, pairs: Vec<(SymplecticMatrix<T>, SymplecticMatrix<T>)>) -> Result<Self> {
        if let Some(bad) = pairs.iter().flat_map(|(f, g)| [f, g]).find(|m| m.genus() != h) {
            return Err(Error::ShapeMismatch(format!("expected {0}x{0} matrices, got {1}x{1}", 2 * h, bad.matrix().rows())));
        }
        let product = pairs.iter().fold(SymplecticMatrix::identity(h), |acc, (f, g)| acc.mul(&f.commutator(g)));
        if !product.is_identity() {
            return Err(Error::CommutatorRelationViolated { product: product.to_string() });
        }
        Ok(MonodromyData { h, pairs })
    }

    pub fn identity(h: usize, g: usize) -> Self {
        let id = SymplecticMatrix::identity(h);
        MonodromyData { h, pairs: vec![(id.clone(), id); g] }
    }

    pub fn fibre_genus(&self) -> usize {
        self.h
    }

    pub fn base_genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(SymplecticMatrix<T>, SymplecticMatrix<T>)] {
        &self.pairs
    }

    /// Letters f₁, g₁, f₁⁻¹, g₁⁻¹, f₂, … of the surface relator.
    fn relator(&self) -> Vec<SymplecticMatrix<T>> {
        self.pairs.iter().flat_map(|(f, g)| [f.clone(), g.clone(), f.inverse(), g.inverse()]).collect()
    }

    /// Per-handle Wall signatures σ(Ψ(fᵢ, gᵢfᵢ⁻¹gᵢ⁻¹)).
    pub fn handle_signatures(&self) -> Vec<i64> {
        self.pairs.par_iter().map(|(f, g)| wall_form_general(f, &g.mul(&f.inverse()).mul(&g.inverse())).signature).collect()
    }

    /// Signature of the total space: the cocycle summed over a fan
    /// triangulation of the relator polygon.
    pub fn bundle_signature(&self) -> i64 {
        let word = self.relator();
        let mut prefixes = Vec::with_capacity(word.len());
        let mut acc = SymplecticMatrix::identity(self.h);
        for letter in &word {
            acc = acc.mul(letter);
            prefixes.push(acc.clone());
        }
        let terms: Vec<i64> = (1..word.len().saturating_sub(1)).into_par_iter().map(|k| meyer_cocycle(&prefixes[k - 1], &word[k])).collect();
        terms.iter().sum()
    }

    pub fn z4_trivial_check(&self) -> bool {
        self.pairs.iter().all(|(f, g)| f.is_identity_mod(4) && g.is_identity_mod(4))
    }

    pub fn z2_trivial_check(&self) -> bool {
        self.pairs.iter().all(|(f, g)| f.is_identity_mod(2) && g.is_identity_mod(2))
    }

    pub fn bundle_report(&self) -> BundleReport {
        let handles = self.handle_signatures();
        BundleReport {
            handle_total: handles.iter().sum(),
            handles,
            signature: self.bundle_signature(),
            z4_trivial: self.z4_trivial_check(),
            z2_trivial: self.z2_trivial_check(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_monodromy, random_symplectic};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type S = SymplecticMatrix<BigInt>;

    fn s(rows: &[Vec<i64>]) -> S {
        S::from_i64_rows(rows).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn example1() -> MonodromyData<BigInt> {
        let f1 = s(&[vec![0, 1], vec![-1, 0]]);
        let g1 = s(&[vec![0, 1], vec![-1, 1]]);
        let f2 = s(&[vec![0, -1], vec![1, -1]]);
        let g2 = s(&[vec![0, 1], vec![-1, 0]]);
        MonodromyData::new(1, vec![(f1, g1), (f2, g2)]).unwrap()
    }

    #[test]
    fn symplectic_checks() {
        assert!(is_symplectic(s(&[vec![0, 1], vec![-1, 0]]).matrix()).unwrap());
        assert!(is_symplectic(&Matrix::from_rows(vec![vec![BigInt::from(1), BigInt::from(1)], vec![BigInt::from(0), BigInt::from(1)]]).unwrap()).unwrap());
        assert_eq!(S::from_i64_rows(&[vec![2, 0], vec![0, 1]]), Err(Error::NotSymplectic));
        assert_eq!(is_symplectic(&Matrix::<BigInt>::identity(3)), Err(Error::OddDimension(3)));
    }

    #[test]
    fn transvection_reproduces_dehn_twist_matrix() {
        let mut c = vec![BigInt::from(0); 6];
        c[1] = BigInt::from(1);
        let t = S::transvection(&c).unwrap();
        let mut expected = Matrix::<BigInt>::identity(6);
        expected[(1, 4)] = BigInt::from(1);
        assert_eq!(t.matrix(), &expected);
        assert_eq!(S::transvection(&[BigInt::from(0), BigInt::from(0)]), Err(Error::ZeroVector));
        let doubled: Vec<BigInt> = [1, -1, 2, 0].iter().map(|&x| BigInt::from(2 * x)).collect();
        assert!(S::transvection(&doubled).unwrap().is_identity_mod(4));
    }

    #[test]
    fn endo_matrices_are_not_trivial_mod_2() {
        let e1 = s(&[
            vec![1, 0, 0, -1, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
        ]);
        assert!(!e1.is_identity_mod(2) && !e1.is_identity_mod(4));
    }

    #[test]
    fn printed_wall_forms() {
        let m = example1();
        let (f1, g1) = &m.pairs()[0];
        let (f2, g2) = &m.pairs()[1];
        let s1 = wall_form_closed(f1, &g1.mul(&f1.inverse()).mul(&g1.inverse())).unwrap();
        let expected1 = Matrix::from_rows(vec![vec![r(4, 1), r(-3, 1)], vec![r(-3, 1), r(7, 2)]]).unwrap();
        assert_eq!(s1.matrix(), &expected1);
        assert_eq!(s1.signature_exact(), 2);
        let s2 = wall_form_closed(f2, &g2.mul(&f2.inverse()).mul(&g2.inverse())).unwrap();
        let expected2 = Matrix::from_rows(vec![vec![r(-4, 3), r(-2, 3)], vec![r(-2, 3), r(-10, 3)]]).unwrap();
        assert_eq!(s2.matrix(), &expected2);
        assert_eq!(m.handle_signatures(), vec![2, -2]);
    }

    #[test]
    fn trivial_wall_forms() {
        let f = s(&[vec![0, 1], vec![-1, 0]]);
        assert!(wall_form_closed(&f, &f).unwrap().matrix().is_zero());
        let id = S::identity(2);
        let w = wall_form_general(&id, &id);
        assert_eq!((w.kernel.len(), w.signature), (8, 0));
        assert!(w.form.matrix().is_zero());
        assert_eq!(wall_form_closed(&id, &id).unwrap_err(), Error::OneMinusFSingular);
    }

    #[test]
    fn commutator_relation_is_checked() {
        let f = s(&[vec![1, 1], vec![0, 1]]);
        let g = s(&[vec![1, 0], vec![1, 1]]);
        assert!(matches!(MonodromyData::new(1, vec![(f, g)]), Err(Error::CommutatorRelationViolated { .. })));
        assert_eq!(MonodromyData::<BigInt>::identity(2, 3).bundle_signature(), 0);
    }

    #[test]
    fn cocycle_is_normalized_and_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..15 {
            let a: S = random_symplectic(&mut rng, 2, 4);
            let b: S = random_symplectic(&mut rng, 2, 4);
            let c: S = random_symplectic(&mut rng, 2, 4);
            assert_eq!(meyer_cocycle(&a, &a.inverse()), 0);
            assert_eq!(meyer_cocycle(&S::identity(2), &a), 0);
            let lhs = meyer_cocycle(&a, &b) + meyer_cocycle(&a.mul(&b), &c);
            let rhs = meyer_cocycle(&a, &b.mul(&c)) + meyer_cocycle(&b, &c);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn closed_and_general_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let mut checked = 0;
        while checked < 30 {
            let h = 1 + checked % 3;
            let f: S = random_symplectic(&mut rng, h, 4 * h + 4);
            let g: S = random_symplectic(&mut rng, h, 4 * h + 4);
            let Ok(closed) = wall_form_closed(&f, &g) else { continue };
            assert_eq!(closed.signature_exact(), wall_form_general(&f, &g).signature);
            checked += 1;
        }
    }

    #[test]
    fn conjugation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..15 {
            let f: S = random_symplectic(&mut rng, 2, 4);
            let g: S = random_symplectic(&mut rng, 2, 4);
            let p: S = random_symplectic(&mut rng, 2, 4);
            assert_eq!(wall_form_general(&f.conjugate_by(&p), &g.conjugate_by(&p)).signature, wall_form_general(&f, &g).signature);
        }
    }

    #[test]
    fn random_bundles_satisfy_meyer_mod_4() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for i in 0..10 {
            let m: MonodromyData<BigInt> = random_monodromy(&mut rng, 1 + i % 3, 4, false);
            assert_eq!(m.bundle_signature().rem_euclid(4), 0);
        }
    }
}
