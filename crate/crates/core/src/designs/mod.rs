//! Combinatorial designs: orthogonal arrays, Latin squares, group divisible
//! designs, Hadamard matrices, and a small catalog of concrete instances.

pub mod catalog;
pub mod document;
pub mod gdd;
pub mod hadamard;
pub mod latin;
pub mod oa;

pub use catalog::{affine_plane_gdd, fano_pair, gdd_z8_pair, witt_system};
pub use document::{DesignDocument, DesignReport};
pub use gdd::{char_vector, designs_disjoint, gdd_lambda_s, verify_gdd, GddCheck, GroupDivisibleDesign};
pub use hadamard::{is_hadamard, paley, HadamardMatrix, Paley};
pub use latin::{verify_latin, LatinSquare};
pub use oa::{
    linear_oa_cosets, oa_regular_index, oas_disjoint, parity_split, trivial_oa, verify_oa,
    verify_type1_oa, Balance, OrthogonalArray, TypeIOrthogonalArray,
};
