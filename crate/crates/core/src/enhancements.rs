//! Quadratic enhancements of Z₂ forms: Arf and Brown-Kervaire invariants.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::residue::{Z2, Z4, Z8};
use crate::z2::{Z2Matrix, Z2SymForm, Z2Subspace, Z2Vec};

/// Largest dimension for which value tables are checked exhaustively.
pub const TABLE_MAX_DIM: usize = 10;
/// Largest dimension for which Gauss sums are enumerated.
pub const GAUSS_MAX_DIM: usize = 24;

/// Z₂-valued enhancement `h` of an isotropic form, stored by basis values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z2Quadratic {
    form: Z2SymForm,
    values: Vec<Z2>,
}

/// Z₄-valued enhancement `q` of a form, stored by basis values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z4Quadratic {
    form: Z2SymForm,
    values: Vec<Z4>,
}

/// Sum over `i < j` of `x_i x_j λ(e_i, e_j)`.
fn cross_terms(form: &Z2SymForm, x: &Z2Vec) -> bool {
    let idx: Vec<usize> = x.ones().collect();
    let mut acc = false;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            acc ^= form.entry(i, j);
        }
    }
    acc
}

fn check_table_dim(dim: usize) -> Result<()> {
    if dim > TABLE_MAX_DIM {
        Err(Error::DimTooLarge { dim, max: TABLE_MAX_DIM })
    } else {
        Ok(())
    }
}

impl Z2Quadratic {
    pub fn new(form: Z2SymForm, values: Vec<Z2>) -> Result<Self> {
        if values.len() != form.dim() {
            return Err(Error::ShapeMismatch(format!("{} values for a form of dimension {}", values.len(), form.dim())));
        }
        if !form.is_isotropic() {
            return Err(Error::AnisotropicInput);
        }
        Ok(Z2Quadratic { form, values })
    }

    /// Builds `h` from a full value table indexed by bit mask, checking the
    /// quadratic law on all pairs.
    pub fn from_table(form: Z2SymForm, table: &[Z2]) -> Result<Self> {
        let n = form.dim();
        check_table_dim(n)?;
        if table.len() != 1 << n {
            return Err(Error::ShapeMismatch(format!("table has {} entries, expected {}", table.len(), 1u64 << n)));
        }
        let values = (0..n).map(|i| table[1 << i]).collect();
        let h = Self::new(form, values)?;
        for x in 0..1u64 << n {
            for y in 0..1u64 << n {
                let (vx, vy) = (Z2Vec::from_mask(n, x), Z2Vec::from_mask(n, y));
                let rhs = table[x as usize] + table[y as usize] + Z2::from(h.form.eval(&vx, &vy));
                if table[(x ^ y) as usize] != rhs {
                    return Err(Error::NotQuadratic);
                }
            }
        }
        Ok(h)
    }

    pub fn form(&self) -> &Z2SymForm {
        &self.form
    }

    pub fn values(&self) -> &[Z2] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn eval(&self, x: &Z2Vec) -> Z2 {
        let linear = x.ones().fold(Z2::ZERO, |acc, i| acc + self.values[i]);
        linear + Z2::from(cross_terms(&self.form, x))
    }

    /// Enhancement of H with h(e) = a, h(f) = b.
    pub fn hyperbolic(a: u8, b: u8) -> Self {
        Z2Quadratic { form: Z2SymForm::h(), values: vec![Z2::new(a as i64), Z2::new(b as i64)] }
    }

    pub fn direct_sum(&self, other: &Z2Quadratic) -> Z2Quadratic {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Z2Quadratic { form: self.form.direct_sum(&other.form), values }
    }

    /// Arf invariant, Σ h(e_j) h(f_j) over a symplectic basis.
    pub fn arf(&self) -> Result<Z2> {
        let pairs = self.form.symplectic_split(&Z2Subspace::full(self.dim()))?;
        Ok(pairs.iter().fold(Z2::ZERO, |acc, (e, f)| acc + self.eval(e) * self.eval(f)))
    }

    /// `q = 2h`.
    pub fn double(&self) -> Z4Quadratic {
        Z4Quadratic { form: self.form.clone(), values: self.values.iter().map(|h| Z4::new(2 * h.value() as i64)).collect() }
    }

    /// Pulls `h` back along the columns of an invertible `p`.
    pub fn change_basis(&self, p: &Z2Matrix) -> Z2Quadratic {
        let pt = p.transpose();
        let values = (0..pt.nrows()).map(|i| self.eval(pt.row(i))).collect();
        Z2Quadratic { form: self.form.change_basis(p), values }
    }

    /// Every enhancement of an isotropic form.
    pub fn all_on(form: &Z2SymForm) -> Result<Vec<Z2Quadratic>> {
        let n = form.dim();
        check_table_dim(n)?;
        (0..1u64 << n)
            .map(|mask| Z2Quadratic::new(form.clone(), (0..n).map(|i| Z2::from((mask >> i) & 1 == 1)).collect()))
            .collect()
    }
}

impl fmt::Display for Z2Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "z2q {} [{}]", self.dim(), vals.join(" "))
    }
}

impl Z4Quadratic {
    /// Basis values must reduce to the diagonal of the form mod 2.
    pub fn new(form: Z2SymForm, values: Vec<Z4>) -> Result<Self> {
        if values.len() != form.dim() {
            return Err(Error::ShapeMismatch(format!("{} values for a form of dimension {}", values.len(), form.dim())));
        }
        if let Some(index) = (0..form.dim()).find(|&i| values[i].reduce() != Z2::from(form.entry(i, i))) {
            return Err(Error::InvalidEnhancement { index });
        }
        Ok(Z4Quadratic { form, values })
    }

    /// Builds `q` from a full value table indexed by bit mask, checking the
    /// quadratic law on all pairs.
    pub fn from_table(form: Z2SymForm, table: &[Z4]) -> Result<Self> {
        let n = form.dim();
        check_table_dim(n)?;
        if table.len() != 1 << n {
            return Err(Error::ShapeMismatch(format!("table has {} entries, expected {}", table.len(), 1u64 << n)));
        }
        if !table[0].is_zero() {
            return Err(Error::NotQuadratic);
        }
        let values = (0..n).map(|i| table[1 << i]).collect();
        let q = Self::new(form, values)?;
        for x in 0..1u64 << n {
            for y in 0..1u64 << n {
                let (vx, vy) = (Z2Vec::from_mask(n, x), Z2Vec::from_mask(n, y));
                let rhs = table[x as usize] + table[y as usize] + Z4::new(2 * q.form.eval(&vx, &vy) as i64);
                if table[(x ^ y) as usize] != rhs {
                    return Err(Error::NotQuadratic);
                }
            }
        }
        Ok(q)
    }

    pub fn form(&self) -> &Z2SymForm {
        &self.form
    }

    pub fn values(&self) -> &[Z4] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn eval(&self, x: &Z2Vec) -> Z4 {
        let linear = x.ones().fold(Z4::ZERO, |acc, i| acc + self.values[i]);
        linear + Z4::new(2 * cross_terms(&self.form, x) as i64)
    }

    /// Value table indexed by bit mask (dim ≤ 24).
    pub fn table(&self) -> Result<Vec<Z4>> {
        let n = self.dim();
        if n > GAUSS_MAX_DIM {
            return Err(Error::DimTooLarge { dim: n, max: GAUSS_MAX_DIM });
        }
        Ok((0..1u64 << n).map(|m| self.eval(&Z2Vec::from_mask(n, m))).collect())
    }

    /// P₁ (value 1) or P₋₁ (value 3).
    pub fn rank_one(value: u8) -> Result<Self> {
        Self::new(Z2SymForm::p(), vec![Z4::new(value as i64)])
    }

    /// Enhancement of H with q(e) = a, q(f) = b.
    pub fn hyperbolic(a: u8, b: u8) -> Result<Self> {
        Self::new(Z2SymForm::h(), vec![Z4::new(a as i64), Z4::new(b as i64)])
    }

    pub fn direct_sum(&self, other: &Z4Quadratic) -> Z4Quadratic {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Z4Quadratic { form: self.form.direct_sum(&other.form), values }
    }

    pub fn sum_of(parts: &[Z4Quadratic]) -> Z4Quadratic {
        parts.iter().fold(Z4Quadratic { form: Z2SymForm::zero_dim(), values: Vec::new() }, |acc, q| acc.direct_sum(q))
    }

    /// Pulls `q` back along the columns of an invertible `p`.
    pub fn change_basis(&self, p: &Z2Matrix) -> Z4Quadratic {
        let pt = p.transpose();
        let values = (0..pt.nrows()).map(|i| self.eval(pt.row(i))).collect();
        Z4Quadratic { form: self.form.change_basis(p), values }
    }

    /// Every enhancement of a form: each basis value ranges over the two
    /// lifts of the diagonal entry.
    pub fn all_on(form: &Z2SymForm) -> Result<Vec<Z4Quadratic>> {
        let n = form.dim();
        check_table_dim(n)?;
        (0..1u64 << n)
            .map(|mask| {
                let values = (0..n).map(|i| Z4::new(form.entry(i, i) as i64 + 2 * ((mask >> i) & 1) as i64)).collect();
                Z4Quadratic::new(form.clone(), values)
            })
            .collect()
    }

    /// Brown-Kervaire invariant from the Gauss sum Σ i^q(x).
    pub fn bk_gauss(&self) -> Result<Z8> {
        let n = self.dim();
        if n > GAUSS_MAX_DIM {
            return Err(Error::DimTooLarge { dim: n, max: GAUSS_MAX_DIM });
        }
        if !self.form.is_nonsingular() {
            return Err(Error::SingularForm);
        }
        let rows: Vec<u64> = (0..n).map(|i| self.form.gram().row(i).mask()).collect();
        let vals: Vec<u8> = self.values.iter().map(|v| v.value()).collect();
        let mut counts = [0i64; 4];
        let (mut x, mut qx) = (0u64, 0u8);
        counts[0] += 1;
        // Gray code walk: flipping bit i changes q by q(e_i) + 2λ(x, e_i)
        for step in 1..1u64 << n {
            let i = step.trailing_zeros() as usize;
            let cross = ((x & rows[i]).count_ones() & 1) as u8;
            let bit = 1u64 << i;
            if x & bit == 0 {
                qx = (qx + vals[i] + 2 * cross) & 3;
            } else {
                // remove e_i: q(x) = q(x - e_i) + q(e_i) + 2λ(x - e_i, e_i)
                let cross_rest = cross ^ ((rows[i] >> i) & 1) as u8;
                qx = (qx + 4 * 3 - vals[i] - 2 * cross_rest) & 3;
            }
            x ^= bit;
            counts[qx as usize] += 1;
        }
        gauss_match(n, counts[0] - counts[2], counts[1] - counts[3])
    }

    /// Classification into q^{0,0}, q^{2,2}, P₁ and P₋₁ summands.
    pub fn bk_classify(&self) -> Result<BkClassification> {
        let d = self.form.decompose_with_basis()?;
        let mut c = BkClassification::default();
        for w in &d.anisotropic {
            match self.eval(w).value() {
                1 => c.p_plus += 1,
                3 => c.p_minus += 1,
                _ => unreachable!("anisotropic vector has odd value"),
            }
        }
        for (e, f) in &d.pairs {
            if self.eval(e).value() == 2 && self.eval(f).value() == 2 {
                c.n += 1;
            } else {
                c.m += 1;
            }
        }
        Ok(c)
    }

    /// The unique `t` with q'(x) − q(x) = 2λ(x,t), together with 2q(t) ∈ Z₈,
    /// which equals BK(q) − BK(q').
    pub fn difference_vector(&self, other: &Z4Quadratic) -> Result<DifferenceVector> {
        if self.form != other.form {
            return Err(Error::FormMismatch);
        }
        if !self.form.is_nonsingular() {
            return Err(Error::SingularForm);
        }
        let n = self.dim();
        let mut rhs = Z2Vec::zero(n);
        for i in 0..n {
            match (other.values[i] - self.values[i]).value() {
                0 => {}
                2 => rhs.set(i, true),
                _ => return Err(Error::NotLinearDifference),
            }
        }
        let t = self.form.gram().solve(&rhs).expect("nonsingular system is solvable");
        let bk_difference = self.eval(&t).times_two();
        Ok(DifferenceVector { t, bk_difference })
    }

    /// L = ⟨v⟩ for the Wu class v, defined when q(v) = 0.
    pub fn wu_sublagrangian(&self) -> Result<Z2Subspace> {
        let v = self.form.wu_class()?;
        let qv = self.eval(&v);
        if !qv.is_zero() {
            return Err(Error::NotDivisibleBy4 { qv });
        }
        Ok(Z2Subspace::span(self.dim(), &[v]))
    }

    /// (L⊥/L, [λ], [q]/2) for the Wu sublagrangian L.
    pub fn isotropic_subquotient(&self) -> Result<Subquotient> {
        let l = self.wu_sublagrangian()?;
        let n = self.dim();
        let perp = l.orthogonal(&self.form);
        // complement of L inside L⊥, chosen greedily from the echelon basis
        let mut chosen: Vec<Z2Vec> = l.basis().to_vec();
        let mut lifts = Vec::new();
        for b in perp.basis() {
            if !Z2Subspace::span(n, &chosen).contains(b) {
                chosen.push(b.clone());
                lifts.push(b.clone());
            }
        }
        let form = self.form.restrict(&lifts);
        let values = lifts
            .iter()
            .map(|x| {
                let qx = self.eval(x).value();
                debug_assert!(qx.is_multiple_of(2));
                Z2::new((qx / 2) as i64)
            })
            .collect();
        let quadratic = Z2Quadratic::new(form, values)?;
        Ok(Subquotient { sublagrangian: l, lifts, quadratic })
    }

    pub fn witt_class(&self) -> Result<WittClassZ8> {
        let value = if self.dim() <= GAUSS_MAX_DIM { self.bk_gauss()? } else { self.bk_classify()?.value() };
        Ok(WittClassZ8 { value })
    }
}

impl fmt::Display for Z4Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "z4q {} [{}]", self.dim(), vals.join(" "))
    }
}

/// Matches a Gauss sum `re + i·im` against (√2)^n e^{2πik/8}.
pub fn gauss_match(dim: usize, re: i64, im: i64) -> Result<Z8> {
    let half = dim / 2;
    if half >= 62 {
        return Err(Error::DimTooLarge { dim, max: GAUSS_MAX_DIM });
    }
    let m = 1i64 << half;
    let k = if dim.is_multiple_of(2) {
        match (re, im) {
            (r, 0) if r == m => 0,
            (0, i) if i == m => 2,
            (r, 0) if r == -m => 4,
            (0, i) if i == -m => 6,
            _ => return Err(Error::NoGaussMatch),
        }
    } else {
        match (re, im) {
            (r, i) if r == m && i == m => 1,
            (r, i) if r == -m && i == m => 3,
            (r, i) if r == -m && i == -m => 5,
            (r, i) if r == m && i == -m => 7,
            _ => return Err(Error::NoGaussMatch),
        }
    };
    Ok(Z8::new(k))
}

/// Brown-Kervaire invariant of an unchecked value table indexed by bit mask.
pub fn bk_gauss_table(dim: usize, table: &[Z4]) -> Result<Z8> {
    if dim > GAUSS_MAX_DIM {
        return Err(Error::DimTooLarge { dim, max: GAUSS_MAX_DIM });
    }
    if table.len() != 1 << dim {
        return Err(Error::ShapeMismatch(format!("table has {} entries, expected {}", table.len(), 1u64 << dim)));
    }
    let mut counts = [0i64; 4];
    for q in table {
        counts[q.value() as usize] += 1;
    }
    gauss_match(dim, counts[0] - counts[2], counts[1] - counts[3])
}

/// Multiplicities of q ≅ ⊕ₘq^{0,0} ⊕ ⊕ₙq^{2,2} ⊕ ⊕p₊P₁ ⊕ ⊕p₋P₋₁.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BkClassification {
    pub m: usize,
    pub n: usize,
    pub p_plus: usize,
    pub p_minus: usize,
}

impl BkClassification {
    /// 4n + p₊ − p₋ in Z₈.
    pub fn value(&self) -> Z8 {
        Z8::new(4 * self.n as i64 + self.p_plus as i64 - self.p_minus as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceVector {
    pub t: Z2Vec,
    pub bk_difference: Z8,
}

/// The maximal isotropic subquotient of a Wu sublagrangian.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub sublagrangian: Z2Subspace,
    /// Representatives in V of the basis of W.
    pub lifts: Vec<Z2Vec>,
    pub quadratic: Z2Quadratic,
}

/// Element of the Witt group of Z₄ enhancements, identified with Z₈.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct WittClassZ8 {
    pub value: Z8,
}

impl Add for WittClassZ8 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        WittClassZ8 { value: self.value + rhs.value }
    }
}

impl fmt::Display for WittClassZ8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z2::nonsingular_forms;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(v: u8) -> Z4Quadratic {
        Z4Quadratic::rank_one(v).unwrap()
    }

    fn h4(a: u8, b: u8) -> Z4Quadratic {
        Z4Quadratic::hyperbolic(a, b).unwrap()
    }

    fn isotropic_nonsingular(n: usize) -> Vec<Z2SymForm> {
        nonsingular_forms(n).filter(Z2SymForm::is_isotropic).collect()
    }

    #[test]
    fn arf_examples() {
        assert_eq!(Z2Quadratic::hyperbolic(0, 0).arf().unwrap(), Z2::new(0));
        assert_eq!(Z2Quadratic::hyperbolic(1, 1).arf().unwrap(), Z2::new(1));
        let h11 = Z2Quadratic::hyperbolic(1, 1);
        assert_eq!(h11.direct_sum(&h11).arf().unwrap(), Z2::new(0));
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(p(1).bk_gauss().unwrap(), Z8::new(1));
        assert_eq!(p(3).bk_gauss().unwrap(), Z8::new(7));
        assert_eq!(h4(2, 2).bk_gauss().unwrap(), Z8::new(4));
        assert_eq!(h4(0, 0).bk_gauss().unwrap(), Z8::new(0));
        assert_eq!(Z4Quadratic::sum_of(&[]).bk_gauss().unwrap(), Z8::new(0));
    }

    #[test]
    fn gauss_table_detects_non_quadratic_tables() {
        // on H, values 0,1,0,0 have no admissible Gauss sum
        let bad = [Z4::new(0), Z4::new(1), Z4::new(0), Z4::new(0)];
        assert_eq!(bk_gauss_table(2, &bad), Err(Error::NoGaussMatch));
        assert_eq!(Z4Quadratic::from_table(Z2SymForm::h(), &bad), Err(Error::InvalidEnhancement { index: 0 }));
        let good = h4(2, 2).table().unwrap();
        assert_eq!(bk_gauss_table(2, &good).unwrap(), Z8::new(4));
        let not_quadratic = [Z4::new(0), Z4::new(2), Z4::new(2), Z4::new(0)];
        assert_eq!(Z4Quadratic::from_table(Z2SymForm::h(), &not_quadratic), Err(Error::NotQuadratic));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(h4(0, 0).bk_classify().unwrap(), BkClassification { m: 1, ..Default::default() });
        let c = p(1).direct_sum(&p(3)).bk_classify().unwrap();
        assert_eq!(c, BkClassification { p_plus: 1, p_minus: 1, ..Default::default() });
    }

    #[test]
    fn witt_relations() {
        let bk = |parts: &[Z4Quadratic]| Z4Quadratic::sum_of(parts).bk_gauss().unwrap();
        assert_eq!(bk(&[h4(0, 0), h4(0, 0)]), bk(&[h4(2, 2), h4(2, 2)]));
        assert_eq!(bk(&[h4(2, 2), p(1)]), bk(&[p(3), p(3), p(3)]));
        assert_eq!(bk(&[p(1), p(1), p(1), p(1)]), bk(&[p(3), p(3), p(3), p(3)]));
        assert_eq!(bk(&[h4(2, 2)]), bk(&[p(1), p(1), p(1), p(1)]));
    }

    #[test]
    fn double_examples() {
        let q = Z2Quadratic::hyperbolic(1, 1).double();
        assert_eq!(q, h4(2, 2));
        assert_eq!(q.bk_gauss().unwrap(), Z8::new(4));
        assert_eq!(Z2Quadratic::hyperbolic(0, 0).double().bk_gauss().unwrap(), Z8::new(0));
    }

    #[test]
    fn difference_vector_examples() {
        let q = h4(0, 0);
        let d = q.difference_vector(&q).unwrap();
        assert!(d.t.is_zero());
        let d = q.difference_vector(&h4(2, 2)).unwrap();
        assert_eq!(d.t, Z2Vec::from_ints(&[1, 1]));
        for m in 0..4 {
            let x = Z2Vec::from_mask(2, m);
            assert_eq!(h4(2, 2).eval(&x) - q.eval(&x), Z4::new(2 * q.form().eval(&x, &d.t) as i64));
        }
        let d = p(1).difference_vector(&p(3)).unwrap();
        assert_eq!(d.bk_difference, p(1).bk_gauss().unwrap() - p(3).bk_gauss().unwrap());
        assert_eq!(p(1).difference_vector(&h4(0, 0)), Err(Error::FormMismatch));
    }

    #[test]
    fn wu_sublagrangian_examples() {
        let four = Z4Quadratic::sum_of(&[p(1), p(1), p(1), p(1)]);
        let l = four.wu_sublagrangian().unwrap();
        assert_eq!(l.basis(), &[Z2Vec::from_ints(&[1, 1, 1, 1])]);
        assert_eq!(p(1).wu_sublagrangian(), Err(Error::NotDivisibleBy4 { qv: Z4::new(1) }));
        assert_eq!(h4(0, 0).wu_sublagrangian().unwrap().dim(), 0);
    }

    #[test]
    fn subquotient_examples() {
        let four = Z4Quadratic::sum_of(&[p(1), p(1), p(1), p(1)]);
        let sq = four.isotropic_subquotient().unwrap();
        assert_eq!(sq.quadratic.dim(), 2);
        for m in 1..4 {
            assert_eq!(sq.quadratic.eval(&Z2Vec::from_mask(2, m)), Z2::new(1));
        }
        assert_eq!(sq.quadratic.arf().unwrap(), Z2::new(1));

        let sq = h4(0, 0).isotropic_subquotient().unwrap();
        assert_eq!(sq.quadratic, Z2Quadratic::hyperbolic(0, 0));
        assert_eq!(sq.quadratic.arf().unwrap(), Z2::new(0));
    }

    #[test]
    fn quadratic_law_holds_up_to_dim_6() {
        for n in 0..=6 {
            for form in nonsingular_forms(n).take(40) {
                for q in Z4Quadratic::all_on(&form).unwrap().into_iter().take(8) {
                    let table = q.table().unwrap();
                    let rebuilt = Z4Quadratic::from_table(form.clone(), &table).unwrap();
                    assert_eq!(rebuilt, q);
                    for x in 0..1u64 << n {
                        let vx = Z2Vec::from_mask(n, x);
                        assert_eq!(table[x as usize].reduce(), Z2::from(form.eval(&vx, &vx)));
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_law_at_dim_10() {
        let form = Z2SymForm::standard(2, 4);
        let q = Z4Quadratic::new(form.clone(), (0..10).map(|i| Z4::new(if i < 2 { 1 } else { 2 * (i % 2) as i64 })).collect()).unwrap();
        let table = q.table().unwrap();
        assert_eq!(Z4Quadratic::from_table(form, &table).unwrap(), q);
    }

    #[test]
    fn classify_agrees_with_gauss_exhaustively_to_dim_4() {
        for n in 0..=4 {
            for form in nonsingular_forms(n) {
                for q in Z4Quadratic::all_on(&form).unwrap() {
                    assert_eq!(q.bk_classify().unwrap().value(), q.bk_gauss().unwrap(), "{q}");
                }
            }
        }
    }

    #[test]
    fn bk_is_four_arf_up_to_dim_4() {
        for n in [0, 2, 4] {
            for form in isotropic_nonsingular(n) {
                for h in Z2Quadratic::all_on(&form).unwrap() {
                    assert_eq!(h.double().bk_gauss().unwrap(), h.arf().unwrap().times_four());
                }
            }
        }
    }

    #[test]
    fn arf_is_majority_vote() {
        for n in [0, 2, 4, 6] {
            for form in isotropic_nonsingular(n).into_iter().take(60) {
                for h in Z2Quadratic::all_on(&form).unwrap() {
                    let ones = (0..1u64 << n).filter(|&m| h.eval(&Z2Vec::from_mask(n, m)).value() == 1).count();
                    assert_eq!(h.arf().unwrap().value() == 1, 2 * ones > 1 << n);
                }
            }
        }
    }

    fn random_symplectic_change(n: usize, rng: &mut ChaCha8Rng) -> Z2Matrix {
        // products of symplectic transvections x -> x + λ(x,c)c on ⊕H
        let form = Z2SymForm::standard(0, n / 2);
        let mut m = Z2Matrix::identity(n);
        for _ in 0..8 {
            let c = Z2Vec::from_mask(n, rng.gen::<u64>());
            let t = Z2Matrix::from_fn(n, n, |i, j| (i == j) ^ (c.get(i) && form.eval(&Z2Vec::unit(n, j), &c)));
            m = m.mul(&t);
        }
        m
    }

    #[test]
    fn arf_is_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 4, 6, 8] {
            let form = Z2SymForm::standard(0, n / 2);
            for _ in 0..6 {
                let values: Vec<Z2> = (0..n).map(|_| Z2::new(rng.gen_range(0..2))).collect();
                let h = Z2Quadratic::new(form.clone(), values).unwrap();
                let arf = h.arf().unwrap();
                for _ in 0..20 {
                    let p = random_symplectic_change(n, &mut rng);
                    let moved = h.change_basis(&p);
                    assert_eq!(moved.form(), &form);
                    assert_eq!(moved.arf().unwrap(), arf);
                }
            }
        }
    }

    #[test]
    fn bk_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let forms: Vec<Vec<Z2SymForm>> = (0..=3).map(|n| nonsingular_forms(n).collect()).collect();
        for _ in 0..200 {
            let pick = |rng: &mut ChaCha8Rng| {
                let n = rng.gen_range(0..=3);
                let form = forms[n].choose(rng).unwrap().clone();
                Z4Quadratic::all_on(&form).unwrap().choose(rng).unwrap().clone()
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            assert_eq!(a.direct_sum(&b).bk_gauss().unwrap(), a.bk_gauss().unwrap() + b.bk_gauss().unwrap());
        }
    }

    proptest::proptest! {
        #[test]
        fn difference_vector_tracks_bk(seed in 0u64..1 << 16, n in 1usize..=4) {
            let forms: Vec<Z2SymForm> = nonsingular_forms(n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let form = forms.choose(&mut rng).unwrap();
            let all = Z4Quadratic::all_on(form).unwrap();
            let (q, q2) = (all.choose(&mut rng).unwrap(), all.choose(&mut rng).unwrap());
            let d = q.difference_vector(q2).unwrap();
            proptest::prop_assert_eq!(d.bk_difference, q.bk_gauss().unwrap() - q2.bk_gauss().unwrap());
        }
    }
}
