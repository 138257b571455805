//! Smooth conics in ℙ²: invariants, polars, parametrization, descent of
//! quadratic points, and the rational-point decision over ℚ.

mod legendre;

pub use legendre::{
    has_rational_point, has_rational_point_with_limit, holzer_bounds, legendre_decide, legendre_reduce,
    search_witness, LegendreForm, Obstruction, PointCertificate, DEFAULT_SEARCH_LIMIT,
};

use std::fmt;

use crate::algebra::matrix::{cross, det3, dot};
use crate::algebra::{Field, FieldElement, Form, Matrix, ProjLine, ProjPoint};
use crate::error::Error;

/// A ternary quadratic form `f(v) = vᵀ M v` with its determinant and adjugate.
///
/// `M` is the Gram matrix, so an off-diagonal entry is half the coefficient
/// of the corresponding mixed monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Matrix,
    det: FieldElement,
    adj: Matrix,
    field: Field,
}

impl QuadraticForm {
    pub fn new(gram: Matrix) -> Result<Self, Error> {
        if gram.rows() != 3 || gram.cols() != 3 {
            return Err(Error::Dimension(format!("Gram matrix must be 3x3, got {}x{}", gram.rows(), gram.cols())));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let field = gram.field()?;
        let det = gram.determinant()?;
        let adj = gram.adjugate()?;
        Ok(QuadraticForm { gram, det, adj, field })
    }

    pub fn diagonal(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self, Error> {
        Self::new(Matrix::diagonal(&[a, b, c]))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Result<Self, Error> {
        Self::new(Matrix::from_ints(&rows))
    }

    /// Gram matrix of a quadratic [`Form`] in `x`, `y`, `z`.
    pub fn from_form(f: &Form) -> Result<Self, Error> {
        if f.homogeneous_degree()? != 2 {
            return Err(Error::Invalid("expected a quadratic form".into()));
        }
        let half = FieldElement::ratio(1, 2);
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut e = [0; 3];
                e[i] += 1;
                e[j] += 1;
                let c = f.coefficient(&e);
                m[(i, j)] = if i == j { c } else { &c * &half };
            }
        }
        Self::new(m)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn det(&self) -> &FieldElement {
        &self.det
    }

    pub fn adjugate(&self) -> &Matrix {
        &self.adj
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_smooth(&self) -> bool {
        !self.det.is_zero()
    }

    pub fn require_smooth(&self) -> Result<(), Error> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(Error::Degenerate)
        }
    }

    /// The dual conic, with Gram matrix `adj(M)`.
    pub fn dual(&self) -> QuadraticForm {
        QuadraticForm::new(self.adj.clone()).expect("adjugate of a symmetric matrix is symmetric")
    }

    pub fn bilinear(&self, u: &[FieldElement; 3], v: &[FieldElement; 3]) -> FieldElement {
        dot(u, &self.polar_vector(v))
    }

    pub fn eval(&self, v: &[FieldElement; 3]) -> FieldElement {
        self.bilinear(v, v)
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Result<FieldElement, Error> {
        self.field.join(p.field())?;
        Ok(self.eval(p.coords()))
    }

    /// `M·v`, the coefficient vector of the polar line of `v`.
    pub fn polar_vector(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        let w = self.gram.mul_vec(v).expect("3x3 times 3-vector");
        [w[0].clone(), w[1].clone(), w[2].clone()]
    }

    pub fn to_form(&self) -> Form {
        Form::from_gram(&self.gram)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form())
    }
}

/// Smoothness, determinant and dual conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicInvariants {
    pub smooth: bool,
    pub det: FieldElement,
    pub dual: QuadraticForm,
}

pub fn conic_invariants(f: &QuadraticForm) -> ConicInvariants {
    ConicInvariants {
        smooth: f.is_smooth(),
        det: f.det.clone(),
        dual: f.dual(),
    }
}

/// Polar line of `u` with respect to the conic of `n`: coefficients `N·u`.
pub fn polar_line(n: &QuadraticForm, u: &ProjPoint) -> Result<ProjLine, Error> {
    n.require_smooth()?;
    n.field.join(u.field())?;
    ProjPoint::new(n.polar_vector(u.coords()))
}

/// A degree-2 map ℙ¹ → ℙ², `[t:u] ↦ (q₀, q₁, q₂)`.
///
/// Each component is stored as its coefficients on `(t², t·u, u²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub components: [[FieldElement; 3]; 3],
}

impl Parametrization {
    pub fn eval(&self, t: &FieldElement, u: &FieldElement) -> Result<ProjPoint, Error> {
        let mons = [t * t, t * u, u * u];
        ProjPoint::new(self.components.clone().map(|c| dot(&c, &mons)))
    }

    /// Component `i` as a binary form in `t`, `u`.
    pub fn component_string(&self, i: usize) -> String {
        let names = ["t^2", "t*u", "u^2"];
        let mut out = String::new();
        for (c, name) in self.components[i].iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.as_rational().is_some_and(|q| q < &num_rational::BigRational::from_integer(0.into()));
            let mag = if neg { -c } else { c.clone() };
            if !out.is_empty() {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mag.is_one() {
                out.push_str(name);
            } else if mag.is_rational() {
                out.push_str(&format!("{mag}*{name}"));
            } else {
                out.push_str(&format!("({mag})*{name}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Rational parametrization of a smooth conic from one of its points.
///
/// Uses `q(w) = f(w)·p − 2B(p, w)·w` for `w = t·a + u·b` on a line missing
/// `p`, with `b` on the tangent at `p`; `[0:1]` maps to `p`. Every point of
/// the conic is in the image.
pub fn parametrize(f: &QuadraticForm, p: &ProjPoint) -> Result<Parametrization, Error> {
    f.require_smooth()?;
    f.field.join(p.field())?;
    if !f.eval(p.coords()).is_zero() {
        return Err(Error::NotOnConic);
    }
    let pv = p.coords();
    let tangent = f.polar_vector(pv);
    let candidates = (0..3)
        .map(|i| {
            let mut v = [0i64; 3];
            v[i] = 1;
            v
        })
        .chain([[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1], [1, 2, 3]]);
    for cand in candidates {
        let a = cand.map(FieldElement::from_int);
        let b = cross(&tangent, &a);
        if det3(&a, &b, pv).is_zero() {
            continue;
        }
        let fa = f.eval(&a);
        let fb = f.eval(&b);
        let bab = f.bilinear(&a, &b);
        let beta = f.bilinear(pv, &a);
        let two = FieldElement::from_int(2);
        let comps = std::array::from_fn(|i| {
            [
                &(&fa * &pv[i]) - &(&(&two * &beta) * &a[i]),
                &(&(&two * &bab) * &pv[i]) - &(&(&two * &beta) * &b[i]),
                &fb * &pv[i],
            ]
        });
        return Ok(Parametrization { components: comps });
    }
    unreachable!("some candidate line avoids the point")
}

/// Descends a point of the conic over ℚ(√d) to a ℚ-point of the plane.
///
/// A conjugation-invariant point is returned as is. Otherwise the tangents
/// at `p` and `p̄` meet in a single conjugation-invariant point, which lies
/// off the conic.
pub fn descend_rational_point(f: &QuadraticForm, p: &ProjPoint) -> Result<ProjPoint, Error> {
    f.require_smooth()?;
    if f.field != Field::Rationals {
        return Err(Error::Unsupported(format!("descent needs a form over Q, got {}", f.field)));
    }
    match p.field() {
        Field::Rationals | Field::Quadratic(_) => {}
        other => return Err(Error::Unsupported(format!("descent needs a point over Q(sqrt d), got {other}"))),
    }
    if !f.eval(p.coords()).is_zero() {
        return Err(Error::NotOnConic);
    }
    let conj = p.conjugate();
    if conj == *p {
        return Ok(p.clone());
    }
    let t1 = f.polar_vector(p.coords());
    let t2 = f.polar_vector(conj.coords());
    let meet = ProjPoint::new(cross(&t1, &t2)).expect("tangents at distinct points of a smooth conic are distinct");
    assert!(meet.is_rational(), "intersection of conjugate tangents is Galois-fixed");
    assert!(!f.eval(meet.coords()).is_zero(), "pole of a chord lies off the conic");
    Ok(meet)
}
