//! Scalar traits the linear algebra is generic over.
//!
//! Integer code is written against [`IntScalar`] (`i64`, `i128`, `BigInt`);
//! field code against [`FieldScalar`] (`Ratio<_>`, `BigRational`, `f64`,
//! `f32`). Exact types give exact answers. Floating point types run the same
//! algorithms with exact zero tests and are only meaningful for
//! well-conditioned input.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait IntScalar:
    Clone + Debug + Display + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every IntScalar")
    }

    /// Least non-negative residue as an `i64`.
    fn residue(&self, modulus: i64) -> i64 {
        let m = Self::from_int(modulus);
        self.mod_floor(&m).to_i64().expect("residue fits i64")
    }
}

impl<T> IntScalar for T where
    T: Clone + Debug + Display + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

pub trait FieldScalar: Clone + Debug + Display + Num + Signed + PartialOrd + Send + Sync + 'static {}

impl<T> FieldScalar for T where T: Clone + Debug + Display + Num + Signed + PartialOrd + Send + Sync + 'static {}

/// Integers that embed in their fraction field.
pub trait HasFractions: IntScalar {
    fn to_fraction(&self) -> Ratio<Self> {
        Ratio::from_integer(self.clone())
    }
}

impl<T: IntScalar> HasFractions for T {}

/// Converts an exact fraction to `f64`.
pub fn ratio_to_f64<T: IntScalar>(r: &Ratio<T>) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}
