//! Residues modulo 2, 4 and 8.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of `Z/N` stored in canonical form `0..N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zn<const N: u8>(u8);

pub type Z2 = Zn<2>;
pub type Z4 = Zn<4>;
pub type Z8 = Zn<8>;

impl<const N: u8> Zn<N> {
    pub const ZERO: Self = Zn(0);

    pub fn new(value: i64) -> Self {
        Zn(value.rem_euclid(N as i64) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl<const N: u8> From<bool> for Zn<N> {
    fn from(b: bool) -> Self {
        Zn(b as u8 % N)
    }
}

impl<const N: u8> Add for Zn<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Zn((self.0 + rhs.0) % N)
    }
}

impl<const N: u8> AddAssign for Zn<N> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const N: u8> Sub for Zn<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Zn((self.0 + N - rhs.0) % N)
    }
}

impl<const N: u8> Neg for Zn<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Zn((N - self.0) % N)
    }
}

impl<const N: u8> Mul for Zn<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zn(((self.0 as u16 * rhs.0 as u16) % N as u16) as u8)
    }
}

impl<const N: u8> fmt::Display for Zn<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Z2 {
    /// The image under `4: Z2 -> Z8`.
    pub fn times_four(self) -> Z8 {
        Z8::new(4 * self.0 as i64)
    }
}

impl Z4 {
    /// The image under `2: Z4 -> Z8`.
    pub fn times_two(self) -> Z8 {
        Z8::new(2 * self.0 as i64)
    }

    pub fn reduce(self) -> Z2 {
        Z2::new(self.0 as i64)
    }
}

impl Z8 {
    pub fn reduce4(self) -> Z4 {
        Z4::new(self.0 as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_wraps() {
        assert_eq!(Z8::new(-3), Z8::new(5));
        assert_eq!(Z4::new(3) + Z4::new(3), Z4::new(2));
        assert_eq!(-Z8::new(1), Z8::new(7));
        assert_eq!(Z4::new(1) - Z4::new(3), Z4::new(2));
        assert_eq!(Z4::new(3).times_two(), Z8::new(6));
        assert_eq!(Z2::new(1).times_four(), Z8::new(4));
    }
}
