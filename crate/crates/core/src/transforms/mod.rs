//! Exact integer conversions of quadric-like equations: rational rotations,
//! homotheties that make them integral, and substitution into polynomials.

mod apply;
mod diagonalize;
mod homothety;
mod matrix;
mod rotation;
mod surd;

pub use apply::{apply_transform, verify_count_preservation, PreservationReport, Transformed};
pub use diagonalize::{
    binary_quadratic_form, diagonalize_binary_quadratic, Branch, DiagonalOutcome, Diagonalization,
    SubstitutionCertificate,
};
pub use homothety::{check_integer_translation, deformation_matrix, homothety_case, Deformation, HomothetyCase, Lambda};
pub use matrix::{EntryJson, IntegerAffine, MatrixJson, TransformMatrix};
pub use rotation::{compose_rotations, embed_rotation, pythagorean_rotation};
pub use surd::{is_squarefree, squarefree_split, MatrixEntry};
