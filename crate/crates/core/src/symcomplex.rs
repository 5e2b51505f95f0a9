//! Finite symmetric chain complexes over Z and the algebraic Pontryagin square.
//!
//! Chains `C_r` are free with given ranks. Differentials are stored as
//! matrices `d_r: C_r → C_{r-1}`. Cochains are column vectors and the dual
//! differential `d*: C^r → C^{r+1}` is the transpose of `d_{r+1}`. The
//! structure maps `φ₀: C^{n-r} → C_r` and `φ₁: C^{n-r+1} → C_r` are
//! `rank_r × rank_{n-r}` and `rank_r × rank_{n-r+1}` matrices, and the
//! transposition `T` carries the sign `(−1)^{pq}` on `Hom(C^p, C_q)`.
//! Higher `φ_s` are taken to be zero.

use std::fmt;

use crate::error::{Error, Result};
use crate::intforms::IntSymForm;
use crate::matrix::Matrix;
use crate::residue::Z4;
use crate::scalar::IntScalar;
use crate::z2::{Z2Matrix, Z2Subspace, Z2Vec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymComplex<T> {
    n: usize,
    ranks: Vec<usize>,
    d: Vec<Matrix<T>>,
    phi0: Vec<Matrix<T>>,
    phi1: Vec<Matrix<T>>,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Mod 2 cohomology class in degree m, written as a pair with d*v = 2u, d*u = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2CohomologyClass<T> {
    pub degree: usize,
    pub v: Vec<T>,
    pub u: Vec<T>,
}

impl<T: IntScalar> Mod2CohomologyClass<T> {
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Mod2CohomologyClass {
            degree: self.degree,
            v: self.v.iter().zip(&other.v).map(|(a, b)| a.clone() + b.clone()).collect(),
            u: self.u.iter().zip(&other.u).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn reduce(&self) -> Z2Vec {
        Z2Vec::from_bits(&self.v.iter().map(|x| x.is_odd()).collect::<Vec<_>>())
    }
}

/// Violations found by [`SymComplex::validate_structure`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "structure: ok")
        } else {
            write!(f, "structure: {} violation(s): {}", self.violations.len(), self.violations.join("; "))
        }
    }
}

/// Wu class of a middle-concentrated complex with the mod 4 signature check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuSignature<T> {
    pub wu: Mod2CohomologyClass<T>,
    pub pontryagin: Z4,
    pub signature: i64,
}

impl<T> WuSignature<T> {
    /// σ ≡ P₂(v) mod 4.
    pub fn is_consistent(&self) -> bool {
        Z4::new(self.signature) == self.pontryagin
    }
}

impl<T: IntScalar> SymComplex<T> {
    /// The complex with the given ranks and all maps zero.
    pub fn zero(n: usize, ranks: Vec<usize>) -> Result<Self> {
        if ranks.len() != n + 1 {
            return Err(Error::ShapeMismatch(format!("expected {} ranks, got {}", n + 1, ranks.len())));
        }
        let rk = |k: i64| if (0..=n as i64).contains(&k) { ranks[k as usize] } else { 0 };
        let d = (0..=n as i64 + 1).map(|r| Matrix::zeros(rk(r - 1), rk(r))).collect();
        let phi0 = (0..=n as i64).map(|r| Matrix::zeros(rk(r), rk(n as i64 - r))).collect();
        let phi1 = (0..=n as i64).map(|r| Matrix::zeros(rk(r), rk(n as i64 - r + 1))).collect();
        Ok(SymComplex { n, ranks, d, phi0, phi1 })
    }

    /// Symmetric form in degree 2k of a 4k-dimensional complex.
    pub fn from_form(k: usize, form: &IntSymForm<T>) -> Self {
        let n = 4 * k;
        let mut ranks = vec![0; n + 1];
        ranks[2 * k] = form.dim();
        let c = Self::zero(n, ranks).expect("rank count matches");
        c.with_phi0(2 * k, form.matrix().clone()).expect("shape matches")
    }

    fn check_shape(&self, what: &str, r: usize, m: &Matrix<T>, expected: (usize, usize)) -> Result<()> {
        if (m.rows(), m.cols()) != expected {
            return Err(Error::ShapeMismatch(format!("{what} {r}: expected {}x{}, got {}x{}", expected.0, expected.1, m.rows(), m.cols())));
        }
        Ok(())
    }

    pub fn with_d(mut self, r: usize, m: Matrix<T>) -> Result<Self> {
        if r == 0 || r > self.n {
            return Err(Error::ShapeMismatch(format!("no differential d {r} in a complex of dimension {}", self.n)));
        }
        self.check_shape("d", r, &m, (self.rank(r as i64 - 1), self.rank(r as i64)))?;
        self.d[r] = m;
        Ok(self)
    }

    pub fn with_phi0(mut self, r: usize, m: Matrix<T>) -> Result<Self> {
        if r > self.n {
            return Err(Error::ShapeMismatch(format!("no phi0 {r} in a complex of dimension {}", self.n)));
        }
        self.check_shape("phi0", r, &m, (self.rank(r as i64), self.rank(self.n as i64 - r as i64)))?;
        self.phi0[r] = m;
        Ok(self)
    }

    pub fn with_phi1(mut self, r: usize, m: Matrix<T>) -> Result<Self> {
        if r > self.n {
            return Err(Error::ShapeMismatch(format!("no phi1 {r} in a complex of dimension {}", self.n)));
        }
        self.check_shape("phi1", r, &m, (self.rank(r as i64), self.rank(self.n as i64 - r as i64 + 1)))?;
        self.phi1[r] = m;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: i64) -> usize {
        if (0..=self.n as i64).contains(&k) {
            self.ranks[k as usize]
        } else {
            0
        }
    }

    /// `d_r`, zero outside `1..=n`.
    pub fn d(&self, r: i64) -> Matrix<T> {
        if (0..=self.n as i64 + 1).contains(&r) {
            self.d[r as usize].clone()
        } else {
            Matrix::zeros(self.rank(r - 1), self.rank(r))
        }
    }

    pub fn phi0(&self, r: i64) -> Matrix<T> {
        if (0..=self.n as i64).contains(&r) {
            self.phi0[r as usize].clone()
        } else {
            Matrix::zeros(self.rank(r), self.rank(self.n as i64 - r))
        }
    }

    pub fn phi1(&self, r: i64) -> Matrix<T> {
        if (0..=self.n as i64).contains(&r) {
            self.phi1[r as usize].clone()
        } else {
            Matrix::zeros(self.rank(r), self.rank(self.n as i64 - r + 1))
        }
    }

    /// Checks d² = 0 and the s = 0, 1, 2 structure relations (φ₂ = 0).
    pub fn validate_structure(&self) -> StructureReport {
        let n = self.n as i64;
        let mut violations = Vec::new();
        let scal = |s: i64| T::from_int(s);
        for r in 2..=n {
            if !self.d(r - 1).mul(&self.d(r)).is_zero() {
                violations.push(format!("d{} d{} != 0", r - 1, r));
            }
        }
        for r in 0..=n {
            let lhs = self.d(r + 1).mul(&self.phi0(r + 1)).add(&self.phi0(r).mul(&self.d(n - r).transpose()).scale(&scal(sign(r))));
            if !lhs.is_zero() {
                violations.push(format!("s=0 relation fails in degree {r}"));
            }
        }
        for r in 0..=n {
            let sym = self.phi0(r).sub(&self.phi0(n - r).transpose().scale(&scal(sign(r * (n - r)))));
            let lhs = self
                .d(r + 1)
                .mul(&self.phi1(r + 1))
                .add(&self.phi1(r).mul(&self.d(n - r + 1).transpose()).scale(&scal(sign(r))))
                .add(&sym.scale(&scal(sign(n))));
            if !lhs.is_zero() {
                violations.push(format!("s=1 relation fails in degree {r}"));
            }
        }
        for r in 0..=n {
            let lhs = self.phi1(r).add(&self.phi1(n - r + 1).transpose().scale(&scal(sign(r * (n - r + 1)))));
            if !lhs.is_zero() {
                violations.push(format!("s=2 relation (phi2 = 0) fails in degree {r}"));
            }
        }
        StructureReport { violations }
    }

    fn dual_d(&self, m: i64) -> Matrix<T> {
        // d*: C^m → C^{m+1}
        self.d(m + 1).transpose()
    }

    /// Representatives of a basis of H^m(C; Z₂), lifted to 0/1 cochains.
    pub fn cohomology_mod2(&self, m: usize) -> Vec<Mod2CohomologyClass<T>> {
        let mi = m as i64;
        let width = self.rank(mi);
        let to_z2 = |a: &Matrix<T>| Z2Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)].is_odd());
        let cocycles = to_z2(&self.dual_d(mi)).kernel();
        let coboundary = to_z2(&self.dual_d(mi - 1));
        let images: Vec<Z2Vec> = coboundary.transpose().row_vectors();
        let mut span = Z2Subspace::span(width, &images);
        let mut out = Vec::new();
        for z in cocycles {
            if span.contains(&z) {
                continue;
            }
            let mut gens = span.basis().to_vec();
            gens.push(z.clone());
            span = Z2Subspace::span(width, &gens);
            let v: Vec<T> = z.to_bits().into_iter().map(|b| if b { T::one() } else { T::zero() }).collect();
            let two = T::from_int(2);
            let u = self.dual_d(mi).mul_vec(&v).into_iter().map(|x| x / two.clone()).collect();
            out.push(Mod2CohomologyClass { degree: m, v, u });
        }
        out
    }

    /// Checks d*v = 2u and d*u = 0.
    pub fn check_class(&self, x: &Mod2CohomologyClass<T>) -> Result<()> {
        let m = x.degree as i64;
        if x.v.len() != self.rank(m) || x.u.len() != self.rank(m + 1) {
            return Err(Error::InvalidClass(format!("expected lengths {} and {}", self.rank(m), self.rank(m + 1))));
        }
        let two = T::from_int(2);
        let dv = self.dual_d(m).mul_vec(&x.v);
        if dv.iter().zip(&x.u).any(|(a, b)| *a != two.clone() * b.clone()) {
            return Err(Error::InvalidClass("d*v != 2u".into()));
        }
        if self.dual_d(m + 1).mul_vec(&x.u).iter().any(|a| !a.is_zero()) {
            return Err(Error::InvalidClass("d*u != 0".into()));
        }
        Ok(())
    }

    /// P₂(u,v) = φ₀(v,v) + 2φ₁(v,u) mod 4 on H^{2k} of a 4k-dimensional complex.
    pub fn pontryagin_square(&self, x: &Mod2CohomologyClass<T>) -> Result<Z4> {
        if !self.n.is_multiple_of(4) || x.degree * 2 != self.n {
            return Err(Error::InvalidClass(format!("class of degree {} in a complex of dimension {}", x.degree, self.n)));
        }
        self.check_class(x)?;
        let m = x.degree as i64;
        let a = self.phi0(m).bilinear(&x.v, &x.v);
        // φ₁: C^{2k} → C_{2k+1}, evaluated on u
        let b = {
            let image = self.phi1(m + 1).mul_vec(&x.v);
            image.iter().zip(&x.u).fold(T::zero(), |acc, (p, q)| acc + p.clone() * q.clone())
        };
        Ok(Z4::new((a + T::from_int(2) * b).residue(4)))
    }

    /// Cup product pairing φ₀(v, v') mod 2 on H^{2k}.
    pub fn cup_pairing(&self, x: &Mod2CohomologyClass<T>, y: &Mod2CohomologyClass<T>) -> bool {
        self.phi0(x.degree as i64).bilinear(&x.v, &y.v).is_odd()
    }

    /// The middle-degree form of a complex concentrated in degree 2k.
    pub fn middle_form(&self) -> Result<IntSymForm<T>> {
        if !self.n.is_multiple_of(4) {
            return Err(Error::NotMiddleConcentrated);
        }
        let k = self.n / 2;
        if (0..=self.n).any(|r| r != k && self.ranks[r] != 0) {
            return Err(Error::NotMiddleConcentrated);
        }
        IntSymForm::new(self.phi0(k as i64))
    }

    /// Wu class v₂ₖ and the check σ ≡ P₂(v₂ₖ) mod 4.
    pub fn wu_and_mod4_signature(&self) -> Result<WuSignature<T>> {
        let form = self.middle_form()?;
        let v = form.characteristic_vector()?;
        let wu = Mod2CohomologyClass { degree: self.n / 2, v, u: Vec::new() };
        let pontryagin = self.pontryagin_square(&wu)?;
        Ok(WuSignature { wu, pontryagin, signature: form.signature_exact() })
    }
}

impl<T: fmt::Display> fmt::Display for SymComplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.ranks.iter().map(ToString::to_string).collect();
        write!(f, "symcomplex {} ranks [{}]", self.n, ranks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_middle_complex, random_two_degree_complex, random_unimodular};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = SymComplex<BigInt>;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x))
    }

    fn two_degree(d: i64, a: i64, b: i64, c: i64) -> C {
        // n = 4, C_3 = C_2 = Z
        C::zero(4, vec![0, 0, 1, 1, 0])
            .unwrap()
            .with_d(3, m(vec![vec![d]]))
            .unwrap()
            .with_phi0(2, m(vec![vec![a]]))
            .unwrap()
            .with_phi1(2, m(vec![vec![b]]))
            .unwrap()
            .with_phi1(3, m(vec![vec![c]]))
            .unwrap()
    }

    #[test]
    fn middle_forms_validate() {
        let sym = C::from_form(1, &IntSymForm::from_i64_rows(&[vec![1, 2], vec![2, -1]]).unwrap());
        assert!(sym.validate_structure().is_valid());
        let asym = C::zero(4, vec![0, 0, 2, 0, 0]).unwrap().with_phi0(2, m(vec![vec![1, 2], vec![0, -1]])).unwrap();
        assert!(!asym.validate_structure().is_valid());
    }

    #[test]
    fn two_degree_signs() {
        assert!(two_degree(2, 1, 1, -1).validate_structure().is_valid());
        assert!(!two_degree(2, 1, 1, 1).validate_structure().is_valid());
        assert!(!two_degree(2, 1, -1, -1).validate_structure().is_valid());
    }

    #[test]
    fn cohomology_examples() {
        let form = C::from_form(1, &IntSymForm::diagonal(&[1, 1, 1]));
        let classes = form.cohomology_mod2(2);
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|x| x.u.iter().all(|u| u == &BigInt::from(0))));

        let c = two_degree(2, 1, 1, -1);
        let classes = c.cohomology_mod2(2);
        assert_eq!(classes.len(), 1);
        assert_eq!((classes[0].v.clone(), classes[0].u.clone()), (vec![BigInt::from(1)], vec![BigInt::from(1)]));
        assert!(c.cohomology_mod2(3).len() == 1);

        let acyclic = two_degree(1, 0, 0, 0);
        assert!(acyclic.cohomology_mod2(2).is_empty());
        assert!(acyclic.cohomology_mod2(3).is_empty());
    }

    #[test]
    fn pontryagin_examples() {
        let form = IntSymForm::from_i64_rows(&[vec![3, 1], vec![1, 2]]).unwrap();
        let c = C::from_form(1, &form);
        let classes = c.cohomology_mod2(2);
        for (i, x) in classes.iter().enumerate() {
            assert_eq!(x.v[i], BigInt::from(1));
            let diag = form.matrix()[(i, i)].clone();
            assert_eq!(c.pontryagin_square(x).unwrap(), Z4::new(diag.residue(4)));
        }
        let zero = Mod2CohomologyClass { degree: 2, v: vec![BigInt::from(0); 2], u: vec![] };
        assert_eq!(c.pontryagin_square(&zero).unwrap(), Z4::new(0));

        let t = two_degree(2, 1, 1, -1);
        let x = &t.cohomology_mod2(2)[0];
        assert_eq!(t.pontryagin_square(x).unwrap(), Z4::new(3));

        let bad = Mod2CohomologyClass { degree: 2, v: vec![BigInt::from(1)], u: vec![BigInt::from(0)] };
        assert!(matches!(t.pontryagin_square(&bad), Err(Error::InvalidClass(_))));
    }

    #[test]
    fn wu_examples() {
        let four = C::from_form(1, &IntSymForm::diagonal(&[1, 1, 1, 1]));
        let w = four.wu_and_mod4_signature().unwrap();
        assert_eq!((w.pontryagin, w.signature), (Z4::new(0), 4));
        assert!(w.is_consistent());
        let one = C::from_form(1, &IntSymForm::diagonal(&[1]));
        let w = one.wu_and_mod4_signature().unwrap();
        assert_eq!((w.pontryagin, w.signature), (Z4::new(1), 1));
        assert_eq!(two_degree(2, 1, 1, -1).wu_and_mod4_signature(), Err(Error::NotMiddleConcentrated));
        assert_eq!(C::from_form(1, &IntSymForm::diagonal(&[2])).wu_and_mod4_signature(), Err(Error::NotUnimodular));
    }

    fn perturb(c: &C, x: &Mod2CohomologyClass<BigInt>, rng: &mut ChaCha8Rng) -> Mod2CohomologyClass<BigInt> {
        let m = x.degree as i64;
        let w: Vec<BigInt> = (0..c.rank(m)).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
        let w2: Vec<BigInt> = (0..c.rank(m - 1)).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
        let dw2 = c.d(m).transpose().mul_vec(&w2);
        let dw = c.d(m + 1).transpose().mul_vec(&w);
        let two = BigInt::from(2);
        Mod2CohomologyClass {
            degree: x.degree,
            v: (0..x.v.len()).map(|i| x.v[i].clone() + &two * &w[i] + &dw2[i]).collect(),
            u: (0..x.u.len()).map(|i| x.u[i].clone() + &dw[i]).collect(),
        }
    }

    #[test]
    fn pontryagin_is_representative_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for trial in 0..20 {
            let (m, p) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let c: C = if trial % 2 == 0 { random_two_degree_complex(&mut rng, 1, m, p) } else { random_middle_complex(&mut rng, 1, m + 1) };
            assert!(c.validate_structure().is_valid(), "{:?}", c.validate_structure());
            for x in c.cohomology_mod2(2) {
                let p = c.pontryagin_square(&x).unwrap();
                let y = perturb(&c, &x, &mut rng);
                c.check_class(&y).unwrap();
                assert_eq!(c.pontryagin_square(&y).unwrap(), p);
                // reduction mod 2 is the cup square
                assert_eq!(p.reduce().value() == 1, c.cup_pairing(&x, &x));
            }
        }
    }

    #[test]
    fn pontryagin_is_quadratic() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..30 {
            let (m, p) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let c: C = random_two_degree_complex(&mut rng, 1, m, p);
            let classes = c.cohomology_mod2(2);
            for x in &classes {
                for y in &classes {
                    let lhs = c.pontryagin_square(&x.add(y)).unwrap() - c.pontryagin_square(x).unwrap() - c.pontryagin_square(y).unwrap();
                    assert_eq!(lhs, Z4::new(2 * c.cup_pairing(x, y) as i64));
                }
            }
        }
    }

    #[test]
    fn middle_complexes_agree_with_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let dim = rng.gen_range(1..=8);
            let form = random_unimodular::<BigInt, _>(&mut rng, dim);
            let c = C::from_form(1, &form);
            let w = c.wu_and_mod4_signature().unwrap();
            assert!(w.is_consistent());
            assert_eq!(w.signature, form.signature_exact());
            assert_eq!(w.wu.v, form.characteristic_vector().unwrap());
            let q = form.reduce_to_enhanced().unwrap();
            assert_eq!(w.pontryagin, q.eval(&w.wu.reduce()));
        }
    }
}
