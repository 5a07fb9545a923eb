//! Constructing and certifying solutions of the multidimensional
//! Prouhet-Tarry-Escott problem with exact arithmetic.

pub mod algebra;
pub mod bounds;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod lifting;
pub mod oracle;
pub mod pte;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
pub use pte::{class_power_sum, multi_indices, Failure, Linearity, PteClass, PteInstance, PtePoint, VerificationReport};
