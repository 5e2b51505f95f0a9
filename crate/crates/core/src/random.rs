//! Seeded random generators for test data. Every caller passes its own RNG;
//! the project uses `ChaCha8Rng::seed_from_u64`.

use rand::Rng;

use crate::enhancements::Z4Quadratic;
use crate::fibration::{MonodromyData, SymplecticMatrix};
use crate::intforms::IntSymForm;
use crate::matrix::Matrix;
use crate::scalar::IntScalar;
use crate::symcomplex::SymComplex;
use crate::residue::Z4;
use crate::z2::{Z2Matrix, Z2SymForm};

fn small<T: IntScalar, R: Rng>(rng: &mut R, bound: i64) -> T {
    T::from_int(rng.gen_range(-bound..=bound))
}

fn random_matrix<T: IntScalar, R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| small(rng, bound))
}

/// Upper unitriangular with entries in [−2, 2].
pub fn random_unitriangular<T: IntScalar, R: Rng>(rng: &mut R, dim: usize) -> Matrix<T> {
    Matrix::from_fn(dim, dim, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => T::one(),
        std::cmp::Ordering::Less => small(rng, 2),
        std::cmp::Ordering::Greater => T::zero(),
    })
}

/// Symmetric matrix with entries in [−bound, bound].
pub fn random_symmetric<T: IntScalar, R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Matrix<T> {
    let upper: Matrix<T> = random_matrix(rng, dim, dim, bound);
    Matrix::from_fn(dim, dim, |i, j| upper[(i.min(j), i.max(j))].clone())
}

/// Unimodular form UᵀDU, D a sum of (±1) and hyperbolic blocks.
pub fn random_unimodular<T: IntScalar, R: Rng>(rng: &mut R, dim: usize) -> IntSymForm<T> {
    let mut d = Matrix::<T>::zeros(0, 0);
    while d.rows() < dim {
        if dim - d.rows() >= 2 && rng.gen_bool(0.25) {
            d = d.direct_sum(IntSymForm::<T>::hyperbolic().matrix());
        } else {
            let s = if rng.gen_bool(0.5) { T::one() } else { -T::one() };
            d = d.direct_sum(&Matrix::from_fn(1, 1, |_, _| s.clone()));
        }
    }
    let u = random_unitriangular(rng, dim);
    IntSymForm::new(d.congruence(&u)).expect("congruent to a symmetric matrix")
}

/// Even form UᵀAU where A is a sum of hyperbolic blocks and diagonal
/// blocks with even entries.
pub fn random_even_form<T: IntScalar, R: Rng>(rng: &mut R, dim: usize) -> IntSymForm<T> {
    let mut a = Matrix::<T>::zeros(0, 0);
    while a.rows() < dim {
        if dim - a.rows() >= 2 && rng.gen_bool(0.4) {
            a = a.direct_sum(IntSymForm::<T>::hyperbolic().matrix());
        } else {
            let mut x = 0;
            while x == 0 {
                x = 2 * rng.gen_range(-4..=4);
            }
            a = a.direct_sum(&Matrix::from_fn(1, 1, |_, _| T::from_int(x)));
        }
    }
    let u = random_unitriangular(rng, dim);
    IntSymForm::new(a.congruence(&u)).expect("congruent to a symmetric matrix")
}

pub fn random_z2_form<R: Rng>(rng: &mut R, dim: usize) -> Z2SymForm {
    let mut gram = Z2Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            if rng.gen_bool(0.5) {
                gram.set(i, j, true);
                gram.set(j, i, true);
            }
        }
    }
    Z2SymForm::new(gram).expect("symmetric by construction")
}

/// Nonsingular symmetric form over Z₂ (rejection sampling).
pub fn random_nonsingular_z2_form<R: Rng>(rng: &mut R, dim: usize) -> Z2SymForm {
    loop {
        let f = random_z2_form(rng, dim);
        if f.is_nonsingular() {
            return f;
        }
    }
}

/// Random Z₄ enhancement of a random nonsingular form.
pub fn random_z4_quadratic<R: Rng>(rng: &mut R, dim: usize) -> Z4Quadratic {
    let form = random_nonsingular_z2_form(rng, dim);
    let values: Vec<Z4> = (0..dim).map(|i| Z4::new(form.entry(i, i) as i64 + 2 * rng.gen_range(0..=1))).collect();
    Z4Quadratic::new(form, values).expect("values refine the diagonal")
}

/// Symmetric complex concentrated in degree 2k with a random form.
pub fn random_middle_complex<T: IntScalar, R: Rng>(rng: &mut R, k: usize, rank: usize) -> SymComplex<T> {
    let form = IntSymForm::new(random_symmetric(rng, rank, 3)).expect("symmetric");
    SymComplex::from_form(k, &form)
}

/// Symmetric complex of dimension 4k supported in degrees 2k (rank m) and
/// 2k+1 (rank p). With B = φ₁(2k) random, φ₁(2k+1) = −Bᵀ and
/// φ₀(2k) = S + strict upper part of dBᵀ − Bdᵀ.
pub fn random_two_degree_complex<T: IntScalar, R: Rng>(rng: &mut R, k: usize, m: usize, p: usize) -> SymComplex<T> {
    let n = 4 * k;
    let mut ranks = vec![0; n + 1];
    ranks[2 * k] = m;
    ranks[2 * k + 1] = p;
    let d: Matrix<T> = random_matrix(rng, m, p, 3);
    let b: Matrix<T> = random_matrix(rng, m, p, 2);
    let skew = d.mul(&b.transpose()).sub(&b.mul(&d.transpose()));
    let s: Matrix<T> = random_symmetric(rng, m, 3);
    let a = Matrix::from_fn(m, m, |i, j| if i < j { s[(i, j)].clone() + skew[(i, j)].clone() } else { s[(i, j)].clone() });
    SymComplex::zero(n, ranks)
        .and_then(|c| c.with_d(2 * k + 1, d))
        .and_then(|c| c.with_phi0(2 * k, a))
        .and_then(|c| c.with_phi1(2 * k, b.clone()))
        .and_then(|c| c.with_phi1(2 * k + 1, b.transpose().neg()))
        .expect("shapes match")
}

/// Nonzero vector of length 2h with entries in [−1, 1].
fn random_direction<T: IntScalar, R: Rng>(rng: &mut R, h: usize) -> Vec<T> {
    loop {
        let c: Vec<i64> = (0..2 * h).map(|_| rng.gen_range(-1..=1)).collect();
        if c.iter().any(|&x| x != 0) {
            return c.into_iter().map(T::from_int).collect();
        }
    }
}

/// Product of `len` transvections or their inverses, each along `scale · c`.
fn transvection_word<T: IntScalar, R: Rng>(rng: &mut R, h: usize, len: usize, scale: i64) -> SymplecticMatrix<T> {
    let mut acc = SymplecticMatrix::identity(h);
    for _ in 0..len {
        let c: Vec<T> = random_direction::<T, R>(rng, h).into_iter().map(|x| x * T::from_int(scale)).collect();
        let t = SymplecticMatrix::transvection(&c).expect("nonzero direction");
        acc = acc.mul(&if rng.gen_bool(0.5) { t } else { t.inverse() });
    }
    acc
}

/// Random element of Sp(2h, Z) as a word of at most `len` transvections.
pub fn random_symplectic<T: IntScalar, R: Rng>(rng: &mut R, h: usize, len: usize) -> SymplecticMatrix<T> {
    let l = rng.gen_range(1..=len.max(1));
    transvection_word(rng, h, l, 1)
}

/// Random element of the level-4 congruence subgroup: a word in
/// transvections along doubled vectors.
pub fn random_level4_symplectic<T: IntScalar, R: Rng>(rng: &mut R, h: usize, len: usize) -> SymplecticMatrix<T> {
    let l = rng.gen_range(1..=len.max(1));
    transvection_word(rng, h, l, 2)
}

/// Monodromy over a genus-2 base: (f, g, g, f), which satisfies
/// [f, g][g, f] = I. With `level4` the matrices are ≡ I mod 4.
pub fn random_monodromy<T: IntScalar, R: Rng>(rng: &mut R, h: usize, len: usize, level4: bool) -> MonodromyData<T> {
    let draw = |rng: &mut R| if level4 { random_level4_symplectic(rng, h, len) } else { random_symplectic(rng, h, len) };
    let f = draw(rng);
    let g = draw(rng);
    MonodromyData::new(h, vec![(f.clone(), g.clone()), (g, f)]).expect("commutators cancel")
}

/// Handles (f, fᵏ) commute, so any number of them is valid monodromy.
pub fn random_commuting_monodromy<T: IntScalar, R: Rng>(rng: &mut R, h: usize, genus: usize, len: usize) -> MonodromyData<T> {
    let pairs = (0..genus)
        .map(|_| {
            let f = random_symplectic(rng, h, len);
            let k = rng.gen_range(-2..=2);
            let g = f.pow(k);
            (f, g)
        })
        .collect();
    MonodromyData::new(h, pairs).expect("commuting handles")
}
