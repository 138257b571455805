use thiserror::Error;

use crate::algebra::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no common field for {0} and {1}")]
    IncompatibleFields(Field, Field),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("form is not homogeneous")]
    Inhomogeneous,
    #[error("degenerate conic: determinant is zero")]
    Degenerate,
    #[error("point is not on the conic")]
    NotOnConic,
    #[error("degenerate scheme data: {0}")]
    DegenerateScheme(String),
    #[error("scheme is not apolar to the form")]
    NotApolar,
    #[error("reduced scheme with a point on the dual conic is outside the O/S2/C6 trichotomy")]
    OutsideTrichotomy,
    #[error("not a stratum configuration: {0}")]
    NotAStratum(String),
    #[error("not a quadratic-involution base scheme: {0}")]
    NotInvolutionBase(String),
    #[error("scheme length is not stable: {d3} at degree 3, {d4} at degree 4")]
    UnstableLength { d3: usize, d4: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search bound exceeded: {0}")]
    SearchBound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable snake_case identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::IncompatibleFields(..) => "incompatible_fields",
            Error::NotSymmetric => "not_symmetric",
            Error::Dimension(_) => "dimension",
            Error::ZeroVector => "zero_vector",
            Error::Inhomogeneous => "inhomogeneous",
            Error::Degenerate => "degenerate",
            Error::NotOnConic => "not_on_conic",
            Error::DegenerateScheme(_) => "degenerate_scheme",
            Error::NotApolar => "not_apolar",
            Error::OutsideTrichotomy => "outside_trichotomy",
            Error::NotAStratum(_) => "not_a_stratum",
            Error::NotInvolutionBase(_) => "not_involution_base",
            Error::UnstableLength { .. } => "unstable_length",
            Error::Unsupported(_) => "unsupported",
            Error::SearchBound(_) => "search_bound",
            Error::Parse(_) => "parse",
            Error::Invalid(_) => "invalid",
        }
    }

    /// Decisions the library declines to make (as opposed to bad input).
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_))
    }
}
