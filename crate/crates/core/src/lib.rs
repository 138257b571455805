//! Exact computations for forms of the quintic del Pezzo threefold.
//!
//! * [`algebra`]: scalars over ℚ, ℚ(√d), ℚ(s, t), matrices, projective
//!   points and Hilbert-function lengths.
//! * [`conics`]: smooth conics, Legendre decision with certificates,
//!   parametrization and tangent descent.
//! * [`vsp`]: apolar length-3 schemes, trisecant lines to the projected
//!   Veronese surface, special lines and the cylinder decision.
//! * [`involutions`]: base schemes of quadratic involutions of ℙ².
//! * [`chow`]: intersection numbers on ℙ¹-bundles over ℙ² and the two
//!   birational links.

pub mod algebra;
pub mod chow;
pub mod conics;
mod error;
pub mod involutions;
pub mod scheme;
pub mod vsp;

pub use error::Error;
