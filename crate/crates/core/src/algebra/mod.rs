//! Exact linear algebra and symmetric functions over the rationals.

pub mod matrix;
mod modular;
pub mod symmetric;

pub use matrix::{gl_transform, RankProfile, RationalMatrix};
pub use symmetric::{
    elementary_from_power_sums, elementary_symmetric, girard_newton_residual, power_sums,
    power_sums_from_elementary, SymmetricProfile,
};
