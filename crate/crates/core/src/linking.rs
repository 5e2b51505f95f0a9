//! Quadratic linking forms on finite abelian 2-groups.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intforms::frac_mod;
use crate::matrix::Matrix;
use crate::residue::Z8;
use crate::scalar::IntScalar;

/// Largest log₂|T| for which Gauss sums are enumerated.
pub const LINKING_MAX_LOG2: u32 = 20;
/// Relative snap tolerance for the Gauss sum.
pub const SNAP_TOLERANCE: f64 = 1e-6;

/// `T = ⊕ Z/dᵢ` with b: T×T → Q/Z and q: T → Q/2Z, both given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingForm<T: IntScalar> {
    orders: Vec<T>,
    b: Matrix<Ratio<T>>,
    q: Vec<Ratio<T>>,
}

fn is_power_of_two<T: IntScalar>(d: &T) -> bool {
    let two = T::from_int(2);
    let mut x = d.clone();
    if x <= T::zero() {
        return false;
    }
    while x.is_even() {
        x = x / two.clone();
    }
    x.is_one()
}

impl<T: IntScalar> LinkingForm<T> {
    /// Values are reduced to `[0,1)` for b and `[0,2)` for q.
    pub fn new(orders: Vec<T>, b: Matrix<Ratio<T>>, q: Vec<Ratio<T>>) -> Result<Self> {
        let l = orders.len();
        if b.rows() != l || b.cols() != l || q.len() != l {
            return Err(Error::ShapeMismatch(format!("{l} generators but b is {}x{} and q has {} values", b.rows(), b.cols(), q.len())));
        }
        if let Some(d) = orders.iter().find(|d| !is_power_of_two(*d) || d.is_one()) {
            return Err(Error::InvalidLinkingForm(format!("order {d} is not a power of 2 greater than 1")));
        }
        let one = Ratio::one();
        let two = Ratio::from_integer(T::from_int(2));
        let b = b.map(|x| frac_mod(x, &one));
        let q: Vec<Ratio<T>> = q.iter().map(|x| frac_mod(x, &two)).collect();
        for i in 0..l {
            let di = Ratio::from_integer(orders[i].clone());
            for j in 0..l {
                if b[(i, j)] != b[(j, i)] {
                    return Err(Error::InvalidLinkingForm(format!("b is not symmetric at ({i}, {j})")));
                }
                if !(di.clone() * b[(i, j)].clone()).is_integer() {
                    return Err(Error::InvalidLinkingForm(format!("d_{i} b({i}, {j}) is not an integer")));
                }
            }
            if !frac_mod(&(q[i].clone() - b[(i, i)].clone()), &one).is_zero() {
                return Err(Error::InvalidLinkingForm(format!("q({i}) does not refine b({i}, {i})")));
            }
            if !frac_mod(&(di.clone() * di * q[i].clone()), &two).is_zero() {
                return Err(Error::InvalidLinkingForm(format!("q is not well defined on generator {i}")));
            }
        }
        Ok(LinkingForm { orders, b, q })
    }

    pub fn trivial() -> Self {
        LinkingForm { orders: Vec::new(), b: Matrix::zeros(0, 0), q: Vec::new() }
    }

    pub fn orders(&self) -> &[T] {
        &self.orders
    }

    pub fn b(&self) -> &Matrix<Ratio<T>> {
        &self.b
    }

    pub fn q(&self) -> &[Ratio<T>] {
        &self.q
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// log₂|T|.
    pub fn order_log2(&self) -> u32 {
        self.orders.iter().map(|d| d.to_f64().expect("finite order").log2().round() as u32).sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        let mut q = self.q.clone();
        q.extend(other.q.iter().cloned());
        LinkingForm { orders, b: self.b.direct_sum(&other.b), q }
    }

    /// q(Σ xᵢgᵢ) = Σ xᵢ² q(gᵢ) + 2 Σ_{i<j} xᵢxⱼ b(gᵢ,gⱼ) in Q/2Z.
    pub fn eval_q(&self, x: &[T]) -> Ratio<T> {
        let l = self.rank();
        let mut acc = Ratio::zero();
        let two = Ratio::from_integer(T::from_int(2));
        for i in 0..l {
            let xi = Ratio::from_integer(x[i].clone());
            acc = acc + xi.clone() * xi.clone() * self.q[i].clone();
            for (j, xj) in x.iter().enumerate().take(l).skip(i + 1) {
                acc = acc + two.clone() * xi.clone() * Ratio::from_integer(xj.clone()) * self.b[(i, j)].clone();
            }
        }
        frac_mod(&acc, &two)
    }

    /// Brown-Kervaire invariant from Σ e^{πi q(x)} = √|T| e^{2πik/8}.
    pub fn bk_linking(&self) -> Result<Z8> {
        let log2 = self.order_log2();
        if log2 > LINKING_MAX_LOG2 {
            return Err(Error::GroupTooLarge { max_log2: LINKING_MAX_LOG2 });
        }
        let l = self.rank();
        // common denominator: every value is an integer multiple of 1/den
        let den = self.q.iter().chain(self.b.iter()).fold(T::one(), |acc, r| acc.lcm(r.denom()));
        let den_i = den.to_i128().ok_or_else(|| Error::InvalidLinkingForm("denominator too large".into()))?;
        let scaled = |r: &Ratio<T>| -> Result<i128> {
            (r.numer().clone() * (den.clone() / r.denom().clone())).to_i128().ok_or_else(|| Error::InvalidLinkingForm("value too large".into()))
        };
        let qs: Vec<i128> = self.q.iter().map(scaled).collect::<Result<_>>()?;
        let bs: Vec<Vec<i128>> = (0..l).map(|i| (0..l).map(|j| scaled(&self.b[(i, j)])).collect::<Result<_>>()).collect::<Result<_>>()?;
        let orders: Vec<i128> = self.orders.iter().map(|d| d.to_i128().expect("order fits")).collect();
        let modulus = 2 * den_i;

        // histogram of den·q(x) mod 2·den
        let mut hist: HashMap<i128, u64> = HashMap::new();
        let mut x = vec![0i128; l];
        loop {
            let mut v = 0i128;
            for i in 0..l {
                v += x[i] * x[i] % modulus * qs[i];
                for j in i + 1..l {
                    v += 2 * (x[i] * x[j] % modulus) * bs[i][j];
                }
                v %= modulus;
            }
            *hist.entry(v.rem_euclid(modulus)).or_default() += 1;
            let mut k = 0;
            loop {
                if k == l {
                    return snap(&hist, den_i, log2);
                }
                x[k] += 1;
                if x[k] < orders[k] {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }
}

fn snap(hist: &HashMap<i128, u64>, den: i128, log2: u32) -> Result<Z8> {
    let mut keys: Vec<_> = hist.keys().copied().collect();
    keys.sort_unstable();
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for k in keys {
        let angle = PI * k as f64 / den as f64;
        let c = hist[&k] as f64;
        re += c * angle.cos();
        im += c * angle.sin();
    }
    let radius = 2f64.powf(log2 as f64 / 2.0);
    for k in 0..8 {
        let angle = 2.0 * PI * k as f64 / 8.0;
        let (cr, ci) = (radius * angle.cos(), radius * angle.sin());
        if ((re - cr).powi(2) + (im - ci).powi(2)).sqrt() <= SNAP_TOLERANCE * radius {
            return Ok(Z8::new(k));
        }
    }
    Err(Error::NoGaussMatch)
}
