//! Length-3 subschemes of ℙ² given by explicit point data.

use crate::algebra::matrix::det3;
use crate::algebra::{Field, FieldElement, Matrix, ProjPoint};
use crate::error::Error;

/// A length-3 subscheme of a projective plane.
///
/// `Curvilinear` is the 2-jet of a curve germ `ℓ + ε·m + ε²·n`; its vectors
/// are kept unnormalized because rescaling `ℓ`, `m` independently changes
/// the jet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthThreeScheme {
    Reduced([ProjPoint; 3]),
    DoublePlusOne {
        double: ProjPoint,
        direction: ProjPoint,
        simple: ProjPoint,
    },
    Curvilinear {
        point: [FieldElement; 3],
        tangent: [FieldElement; 3],
        second: [FieldElement; 3],
    },
}

impl LengthThreeScheme {
    pub fn reduced(points: [ProjPoint; 3]) -> Result<Self, Error> {
        let [a, b, c] = &points;
        if a == b || a == c || b == c {
            return Err(Error::DegenerateScheme("reduced points must be pairwise distinct".into()));
        }
        Ok(LengthThreeScheme::Reduced(points))
    }

    pub fn double_plus_one(double: ProjPoint, direction: ProjPoint, simple: ProjPoint) -> Result<Self, Error> {
        if direction == double {
            return Err(Error::DegenerateScheme("tangent direction coincides with the double point".into()));
        }
        if simple == double {
            return Err(Error::DegenerateScheme("simple point coincides with the double point".into()));
        }
        Ok(LengthThreeScheme::DoublePlusOne {
            double,
            direction,
            simple,
        })
    }

    pub fn curvilinear(
        point: [FieldElement; 3],
        tangent: [FieldElement; 3],
        second: [FieldElement; 3],
    ) -> Result<Self, Error> {
        Field::join_all(point.iter().chain(&tangent).chain(&second))?;
        let p = ProjPoint::new(point.clone())?;
        let m = ProjPoint::new(tangent.clone())
            .map_err(|_| Error::DegenerateScheme("zero tangent vector".into()))?;
        if p == m {
            return Err(Error::DegenerateScheme("tangent direction coincides with the point".into()));
        }
        Ok(LengthThreeScheme::Curvilinear { point, tangent, second })
    }

    /// Support point of a curvilinear scheme, or the (first) point otherwise.
    pub fn support(&self) -> ProjPoint {
        match self {
            LengthThreeScheme::Reduced(p) => p[0].clone(),
            LengthThreeScheme::DoublePlusOne { double, .. } => double.clone(),
            LengthThreeScheme::Curvilinear { point, .. } => ProjPoint::new(point.clone()).expect("validated"),
        }
    }

    pub fn field(&self) -> Result<Field, Error> {
        let coords: Vec<&FieldElement> = match self {
            LengthThreeScheme::Reduced(p) => p.iter().flat_map(|q| q.coords().iter()).collect(),
            LengthThreeScheme::DoublePlusOne {
                double,
                direction,
                simple,
            } => [double, direction, simple].iter().flat_map(|q| q.coords().iter()).collect(),
            LengthThreeScheme::Curvilinear { point, tangent, second } => {
                point.iter().chain(tangent).chain(second).collect()
            }
        };
        Field::join_all(coords)
    }

    /// Image under the linear map `v ↦ g·v`.
    pub fn transform(&self, g: &Matrix) -> Result<Self, Error> {
        let apply = |v: &[FieldElement; 3]| -> Result<[FieldElement; 3], Error> {
            let w = g.mul_vec(v)?;
            Ok([w[0].clone(), w[1].clone(), w[2].clone()])
        };
        match self {
            LengthThreeScheme::Reduced(p) => Self::reduced([p[0].transform(g)?, p[1].transform(g)?, p[2].transform(g)?]),
            LengthThreeScheme::DoublePlusOne {
                double,
                direction,
                simple,
            } => Self::double_plus_one(double.transform(g)?, direction.transform(g)?, simple.transform(g)?),
            LengthThreeScheme::Curvilinear { point, tangent, second } => {
                Self::curvilinear(apply(point)?, apply(tangent)?, apply(second)?)
            }
        }
    }
}

/// Whether three points of ℙ² lie on a line.
pub fn collinear(points: &[ProjPoint; 3]) -> bool {
    det3(points[0].coords(), points[1].coords(), points[2].coords()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let p = ProjPoint::from_ints(1, 0, 0);
        let q = ProjPoint::from_ints(0, 1, 0);
        assert!(LengthThreeScheme::reduced([p.clone(), p.clone(), q.clone()]).is_err());
        assert!(LengthThreeScheme::double_plus_one(p.clone(), p.clone(), q.clone()).is_err());
        assert!(LengthThreeScheme::double_plus_one(p.clone(), q.clone(), p.clone()).is_err());
        let v = |a, b, c| [FieldElement::from_int(a), FieldElement::from_int(b), FieldElement::from_int(c)];
        assert!(LengthThreeScheme::curvilinear(v(1, 0, 0), v(2, 0, 0), v(0, 0, 0)).is_err());
        assert!(LengthThreeScheme::curvilinear(v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)).is_ok());
    }

    #[test]
    fn collinearity() {
        let pts = [
            ProjPoint::from_ints(1, 0, 0),
            ProjPoint::from_ints(0, 1, 0),
            ProjPoint::from_ints(1, 1, 0),
        ];
        assert!(collinear(&pts));
        let pts = [
            ProjPoint::from_ints(1, 0, 0),
            ProjPoint::from_ints(0, 1, 0),
            ProjPoint::from_ints(0, 0, 1),
        ];
        assert!(!collinear(&pts));
    }
}
