use thiserror::Error;

use crate::residue::Z4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("form is singular")]
    SingularForm,
    #[error("form is not isotropic: lambda(x,x) = 1 for some x")]
    AnisotropicInput,
    #[error("restricted form is degenerate")]
    DegenerateRestriction,
    #[error("basis value {index} is out of range or inconsistent with the form")]
    InvalidEnhancement { index: usize },
    #[error("value table is not a quadratic refinement of the form")]
    NotQuadratic,
    #[error("Gauss sum does not match any admissible value")]
    NoGaussMatch,
    #[error("dimension {dim} exceeds the enumeration bound {max}")]
    DimTooLarge { dim: usize, max: usize },
    #[error("enhancements live on different forms")]
    FormMismatch,
    #[error("difference of enhancements is not 2 times a linear map")]
    NotLinearDifference,
    #[error("q(v) = {qv} is nonzero in Z4, so BK is not divisible by 4")]
    NotDivisibleBy4 { qv: Z4 },
    #[error("form is not unimodular")]
    NotUnimodular,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("diagonal entry {index} is odd")]
    OddDiagonal { index: usize },
    #[error("determinant has a nontrivial odd part")]
    NotTwoPrimary,
    #[error("linking form is invalid: {0}")]
    InvalidLinkingForm(String),
    #[error("group order exceeds the enumeration bound 2^{max_log2}")]
    GroupTooLarge { max_log2: u32 },
    #[error("sigma(e) = {sigma_e} and sigma(b) sigma(f) = {product} differ mod 4")]
    NotMod4Multiplicative { sigma_e: i64, product: i64 },
    #[error("class is not a mod 2 cocycle: {0}")]
    InvalidClass(String),
    #[error("complex is not concentrated in the middle degree")]
    NotMiddleConcentrated,
    #[error("vector is zero")]
    ZeroVector,
    #[error("matrix has odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("I - f is singular")]
    OneMinusFSingular,
    #[error("product of commutators is not the identity: {product}")]
    CommutatorRelationViolated { product: String },
}

pub type Result<T> = std::result::Result<T, Error>;
