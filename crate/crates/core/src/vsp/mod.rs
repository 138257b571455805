//! Apolarity and the variety of sums of powers `VSP(f)` of a smooth conic.
//!
//! Points of `ℙ(V*)` are linear forms `ax + by + cz`, written `[a:b:c]`.
//! Quadrics in `Sym²V*` use the coordinates `(x², y², z², yz, xz, xy)`.

mod pluecker;
mod special;

pub use pluecker::{trisecant_line, veronese_pullback, w_basis, PlueckerLine, VeronesePullback, W_BASIS_ID};
pub use special::{
    decide_cylinders, decide_cylinders_with_limit, hilbert_rational_point, hilbert_rational_point_with_limit,
    incidence_locus, is_special_line, A3Decision, CylinderReport, HilbertPoint,
};

use std::fmt;

use crate::algebra::congruence::diagonalize_symmetric;
use crate::algebra::{FieldElement, Form, Matrix, ProjPoint};
use crate::conics::QuadraticForm;
use crate::error::Error;
use crate::scheme::LengthThreeScheme;

/// An element of `Sym²V*` in the coordinates `(x², y², z², yz, xz, xy)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym2Vector(pub [FieldElement; 6]);

const PAIRS: [(usize, usize); 3] = [(1, 2), (0, 2), (0, 1)];

impl Sym2Vector {
    pub fn from_gram(m: &Matrix) -> Self {
        let two = FieldElement::from_int(2);
        Sym2Vector(std::array::from_fn(|k| {
            if k < 3 {
                m[(k, k)].clone()
            } else {
                let (i, j) = PAIRS[k - 3];
                &two * &m[(i, j)]
            }
        }))
    }

    pub fn from_quadratic(f: &QuadraticForm) -> Self {
        Self::from_gram(f.gram())
    }

    pub fn to_gram(&self) -> Matrix {
        let half = FieldElement::ratio(1, 2);
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            m[(i, i)] = self.0[i].clone();
        }
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            let v = &self.0[k + 3] * &half;
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
        m
    }

    pub fn to_form(&self) -> Form {
        Form::from_gram(&self.to_gram())
    }

    /// The symmetric product `ℓ·m` of two linear forms.
    pub fn product(l: &[FieldElement; 3], m: &[FieldElement; 3]) -> Self {
        Sym2Vector(std::array::from_fn(|k| {
            if k < 3 {
                &l[k] * &m[k]
            } else {
                let (i, j) = PAIRS[k - 3];
                &(&l[i] * &m[j]) + &(&l[j] * &m[i])
            }
        }))
    }

    pub fn coords(&self) -> &[FieldElement; 6] {
        &self.0
    }
}

impl fmt::Display for Sym2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Second Veronese image `v₂(ℓ) = ℓ²`.
pub fn veronese_square(l: &ProjPoint) -> Sym2Vector {
    Sym2Vector::product(l.coords(), l.coords())
}

fn span_columns(z: &LengthThreeScheme) -> Vec<Sym2Vector> {
    match z {
        LengthThreeScheme::Reduced(p) => p.iter().map(veronese_square).collect(),
        LengthThreeScheme::DoublePlusOne {
            double,
            direction,
            simple,
        } => vec![
            veronese_square(double),
            Sym2Vector::product(double.coords(), direction.coords()),
            veronese_square(simple),
        ],
        // v₂(ℓ + εm + ε²n) = ℓ² + 2εℓm + ε²(m² + 2ℓn)
        LengthThreeScheme::Curvilinear { point, tangent, second } => {
            let mut top = Sym2Vector::product(tangent, tangent);
            let corr = Sym2Vector::product(point, second);
            for (a, b) in top.0.iter_mut().zip(&corr.0) {
                *a = &*a + &(b + b);
            }
            vec![
                Sym2Vector::product(point, point),
                Sym2Vector::product(point, tangent),
                top,
            ]
        }
    }
}

/// Outcome of [`apolar_check`]. `lambda` is filled for reduced schemes,
/// relative to the normalized points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarCheck {
    pub apolar: bool,
    pub lambda: Option<[FieldElement; 3]>,
}

/// Whether `[f]` lies in the linear span of `v₂(Z)`.
pub fn apolar_check(f: &QuadraticForm, z: &LengthThreeScheme) -> Result<ApolarCheck, Error> {
    f.require_smooth()?;
    f.field().join(z.field()?)?;
    let cols: Vec<Vec<FieldElement>> = span_columns(z).into_iter().map(|c| c.0.to_vec()).collect();
    let a = Matrix::from_columns(&cols)?;
    let target = Sym2Vector::from_quadratic(f);
    if a.rank() < 3 {
        return Err(Error::DegenerateScheme("Veronese span of the scheme is not 3-dimensional".into()));
    }
    let Some(sol) = a.solve(&target.0)? else {
        return Ok(ApolarCheck { apolar: false, lambda: None });
    };
    let lambda = matches!(z, LengthThreeScheme::Reduced(_)).then(|| [sol[0].clone(), sol[1].clone(), sol[2].clone()]);
    Ok(ApolarCheck { apolar: true, lambda })
}

/// `f = Σ λᵢ ℓᵢ²`, with the linear forms kept as computed (not rescaled).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarDecomposition {
    pub forms: [[FieldElement; 3]; 3],
    pub lambda: [FieldElement; 3],
}

impl ApolarDecomposition {
    pub fn scheme(&self) -> LengthThreeScheme {
        let pts = self.forms.clone().map(|l| ProjPoint::new(l).expect("rows of an invertible matrix"));
        LengthThreeScheme::reduced(pts).expect("independent forms give distinct points")
    }

    /// Whether `Σ λᵢ ℓᵢ²` reproduces `f` exactly.
    pub fn verify(&self, f: &QuadraticForm) -> bool {
        let mut acc = Form::zero();
        for (l, c) in self.forms.iter().zip(&self.lambda) {
            let lf = Form::linear(l);
            acc = acc.add(&lf.mul(&lf).scale(c));
        }
        acc == f.to_form()
    }
}

/// Waring decomposition from congruence diagonalization: with `PᵀMP = D`,
/// the rows of `P⁻¹` are the `ℓᵢ` and `λᵢ = Dᵢᵢ`.
pub fn apolar_decompose(f: &QuadraticForm) -> Result<ApolarDecomposition, Error> {
    f.require_smooth()?;
    let diag = diagonalize_symmetric(f.gram())?;
    let inv = diag.transform.inverse()?;
    let forms = std::array::from_fn(|i| {
        let r = inv.row(i);
        [r[0].clone(), r[1].clone(), r[2].clone()]
    });
    let e = diag.entries();
    Ok(ApolarDecomposition {
        forms,
        lambda: [e[0].clone(), e[1].clone(), e[2].clone()],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    /// Three distinct points, none on the dual conic.
    O,
    /// A double point on the dual conic plus a point on its tangent.
    S2,
    /// A curvilinear triple point along the dual conic.
    C6,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stratum::O => "O",
            Stratum::S2 => "S2",
            Stratum::C6 => "C6",
        })
    }
}

/// Stratum of an apolar scheme in `VSP(f)`.
///
/// A reduced triple with a point on `Q*` is reported as
/// [`Error::OutsideTrichotomy`] before apolarity is tested.
pub fn stratum_classify(f: &QuadraticForm, z: &LengthThreeScheme) -> Result<Stratum, Error> {
    f.require_smooth()?;
    let dual = f.dual();
    if let LengthThreeScheme::Reduced(pts) = z {
        if pts.iter().any(|p| dual.eval(p.coords()).is_zero()) {
            return Err(Error::OutsideTrichotomy);
        }
    }
    if !apolar_check(f, z)?.apolar {
        return Err(Error::NotApolar);
    }
    match z {
        LengthThreeScheme::Reduced(_) => Ok(Stratum::O),
        LengthThreeScheme::DoublePlusOne { double, simple, .. } => {
            if !dual.eval(double.coords()).is_zero() {
                return Err(Error::NotAStratum("double point is off the dual conic".into()));
            }
            if !dual.bilinear(double.coords(), simple.coords()).is_zero() {
                return Err(Error::NotAStratum("simple point is off the tangent at the double point".into()));
            }
            Ok(Stratum::S2)
        }
        LengthThreeScheme::Curvilinear { point, tangent, .. } => {
            if !dual.eval(point).is_zero() || !dual.bilinear(point, tangent).is_zero() {
                return Err(Error::NotAStratum("jet is not tangent to the dual conic".into()));
            }
            Ok(Stratum::C6)
        }
    }
}
