//! Signature invariants modulo 8: forms over Z₂ and their quadratic
//! enhancements, integral and rational symmetric forms, linking forms,
//! symmetric chain complexes with Pontryagin squares, and surface-bundle
//! signatures from symplectic monodromy.
//!
//! The integer and rational layers are generic over [`scalar::IntScalar`]
//! and [`scalar::FieldScalar`]; the aliases below fix the exact big-number
//! types used by the CLI and the text formats.

pub mod enhancements;
pub mod error;
pub mod fibration;
pub mod intforms;
pub mod linking;
pub mod matrix;
pub mod random;
pub mod residue;
pub mod scalar;
pub mod snf;
pub mod symcomplex;
pub mod text;
pub mod z2;

pub use enhancements::{Z2Quadratic, Z4Quadratic};
pub use error::{Error, Result};
pub use residue::{Z2, Z4, Z8};
pub use z2::{Z2Matrix, Z2SymForm, Z2Vec};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type IntMatrix = matrix::Matrix<Int>;
pub type RatMatrix = matrix::Matrix<Rational>;
pub type IntForm = intforms::IntSymForm<Int>;
pub type RatForm = intforms::RatSymForm<Rational>;
pub type Linking = linking::LinkingForm<Int>;
pub type Complex = symcomplex::SymComplex<Int>;
pub type Symplectic = fibration::SymplecticMatrix<Int>;
pub type Monodromy = fibration::MonodromyData<Int>;
