//! Exact scalars, linear algebra, projective primitives and scheme lengths.

pub mod congruence;
pub mod field;
pub mod forms;
pub mod integer;
pub mod matrix;
pub mod parse;
pub mod proj;
pub mod ratfunc;

pub use congruence::{diagonalize_symmetric, Diagonalization};
pub use field::{Field, FieldElement};
pub use forms::{scheme_length_from_forms, stable_scheme_length, Form};
pub use matrix::Matrix;
pub use proj::{ProjLine, ProjPoint};
