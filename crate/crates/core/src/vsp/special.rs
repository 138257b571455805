//! Special lines (points of the dual conic `Q*`), incidence, and the
//! cylinder decision.

use num_bigint::BigInt;

use crate::algebra::congruence::diagonalize_symmetric;
use crate::algebra::integer::is_squarefree_i64;
use crate::algebra::{Field, FieldElement, ProjLine, ProjPoint};
use crate::conics::{
    descend_rational_point, has_rational_point_with_limit, polar_line, Obstruction, PointCertificate, QuadraticForm,
    DEFAULT_SEARCH_LIMIT,
};
use crate::error::Error;

/// `Q*(x) = 0`.
pub fn is_special_line(f: &QuadraticForm, x: &ProjPoint) -> Result<bool, Error> {
    f.require_smooth()?;
    Ok(f.dual().eval_point(x)?.is_zero())
}

/// Polar line of `x` with respect to `Q*`: the lines of `VSP(f)` meeting
/// the line labeled `x`.
pub fn incidence_locus(f: &QuadraticForm, x: &ProjPoint) -> Result<ProjLine, Error> {
    f.require_smooth()?;
    polar_line(&f.dual(), x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum A3Decision {
    /// `witness` is a rational special line: the tangent to `Q` at `conic_point`.
    Special { witness: ProjPoint, conic_point: ProjPoint },
    NoSpecialLine { obstruction: Obstruction, reduced: [BigInt; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderReport {
    /// Always true: every form contains an open `𝔸²`-cylinder.
    pub a2: bool,
    pub a3: A3Decision,
}

impl CylinderReport {
    pub fn has_a3(&self) -> bool {
        matches!(self.a3, A3Decision::Special { .. })
    }
}

pub fn decide_cylinders(f: &QuadraticForm) -> Result<CylinderReport, Error> {
    decide_cylinders_with_limit(f, DEFAULT_SEARCH_LIMIT)
}

/// `𝔸³` exists iff there is a special line over ℚ, iff `Q` has a ℚ-point.
pub fn decide_cylinders_with_limit(f: &QuadraticForm, limit: u64) -> Result<CylinderReport, Error> {
    f.require_smooth()?;
    let a3 = match has_rational_point_with_limit(f, limit)? {
        PointCertificate::Solvable { witness, .. } => {
            let tangent = polar_line(f, &witness)?;
            if !f.dual().eval(tangent.coords()).is_zero() {
                return Err(Error::Invalid("tangent line failed the dual conic check".into()));
            }
            A3Decision::Special {
                witness: tangent,
                conic_point: witness,
            }
        }
        PointCertificate::Insolvable { obstruction, reduced } => A3Decision::NoSpecialLine { obstruction, reduced },
    };
    Ok(CylinderReport { a2: true, a3 })
}

/// A ℚ-point of the Hilbert scheme of lines `≅ ℙ(V*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoint {
    pub point: ProjPoint,
    /// Whether `point` lies on `Q*`.
    pub special: bool,
    /// The point of `Q*` over ℚ(√d) that was descended, if any.
    pub quadratic_point: Option<ProjPoint>,
}

pub fn hilbert_rational_point(f: &QuadraticForm) -> Result<HilbertPoint, Error> {
    hilbert_rational_point_with_limit(f, DEFAULT_SEARCH_LIMIT)
}

/// Radicands tried in order: `−1, 2, −2, 3, −3, 5, …` (square-free, `|d| ≤ 50`).
fn radicands() -> impl Iterator<Item = i64> {
    std::iter::once(-1).chain((2..=50).filter(|&n| is_squarefree_i64(n)).flat_map(|n| [n, -n]))
}

/// A rational special line if one exists. Otherwise a point of `Q*` over
/// some ℚ(√d) is found by making one diagonal coefficient of `Q*` absorb
/// `d`, and then descended through its conjugate tangents.
pub fn hilbert_rational_point_with_limit(f: &QuadraticForm, limit: u64) -> Result<HilbertPoint, Error> {
    f.require_smooth()?;
    if f.field() != Field::Rationals {
        return Err(Error::Unsupported(format!("rational points are searched over Q only, got {}", f.field())));
    }
    let dual = f.dual();
    if let PointCertificate::Solvable { witness, .. } = has_rational_point_with_limit(&dual, limit)? {
        return Ok(HilbertPoint {
            point: witness,
            special: true,
            quadratic_point: None,
        });
    }
    let diag = diagonalize_symmetric(dual.gram())?;
    let a = diag.entries();
    let fallback = {
        let prod = -(&a[0] * &a[1]);
        let q = prod.as_rational().expect("rational");
        let n = q.numer() * q.denom();
        let (_, m) = crate::algebra::integer::squarefree_decompose(&n)?;
        i64::try_from(m).map_err(|_| Error::Unsupported("radicand does not fit in 64 bits".into()))?
    };
    for d in radicands().chain(std::iter::once(fallback)) {
        for j in 0..3 {
            let mut coeffs = a.clone();
            coeffs[j] = &coeffs[j] * &FieldElement::from_int(d);
            let g = QuadraticForm::diagonal(coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone())?;
            let Some(y) = has_rational_point_with_limit(&g, limit)?.witness().cloned() else {
                continue;
            };
            let root = FieldElement::sqrt_of(d)?;
            let mut x = y.coords().clone();
            x[j] = &x[j] * &root;
            let v = diag.transform.mul_vec(&x)?;
            let p = ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()])?;
            debug_assert!(!p.is_rational());
            let point = descend_rational_point(&dual, &p)?;
            return Ok(HilbertPoint {
                point,
                special: false,
                quadratic_point: Some(p),
            });
        }
    }
    unreachable!("the fallback radicand always yields a point")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(a: i64, b: i64, c: i64) -> QuadraticForm {
        QuadraticForm::diagonal(a.into(), b.into(), c.into()).unwrap()
    }

    fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
        ProjPoint::from_ints(a, b, c)
    }

    #[test]
    fn special_lines() {
        let f = diag(1, 1, -1);
        assert!(is_special_line(&f, &pt(1, 0, 1)).unwrap());
        assert!(!is_special_line(&f, &pt(1, 0, 0)).unwrap());
        assert!(!is_special_line(&diag(1, 1, 1), &pt(0, 0, 1)).unwrap());
    }

    #[test]
    fn incidence() {
        assert_eq!(incidence_locus(&diag(1, 1, 1), &pt(1, 0, 0)).unwrap(), pt(1, 0, 0));
        let l = incidence_locus(&diag(1, 1, -1), &pt(1, 0, 1)).unwrap();
        assert_eq!(l, pt(1, 0, -1));
        assert!(pt(1, 0, 1).incident(&l));
        let l = incidence_locus(&diag(1, 1, 1), &pt(1, 1, 1)).unwrap();
        assert_eq!(l, pt(1, 1, 1));
        assert!(!pt(1, 1, 1).incident(&l));
    }

    #[test]
    fn cylinders() {
        let r = decide_cylinders(&diag(1, 1, -1)).unwrap();
        assert!(r.a2 && r.has_a3());
        let r = decide_cylinders(&diag(1, 1, 1)).unwrap();
        assert!(r.a2 && !r.has_a3());
        assert!(matches!(
            r.a3,
            A3Decision::NoSpecialLine {
                obstruction: Obstruction::Definite { .. },
                ..
            }
        ));
        let f = diag(1, 2, -3);
        let r = decide_cylinders(&f).unwrap();
        let A3Decision::Special { witness, conic_point } = r.a3 else { panic!() };
        assert!(f.eval(conic_point.coords()).is_zero());
        assert!(is_special_line(&f, &witness).unwrap());
    }

    #[test]
    fn hilbert_points() {
        let h = hilbert_rational_point(&diag(1, 1, -1)).unwrap();
        assert!(h.special);
        assert!(is_special_line(&diag(1, 1, -1), &h.point).unwrap());

        let h = hilbert_rational_point(&diag(1, 1, 1)).unwrap();
        assert!(!h.special);
        let dual = diag(1, 1, 1);
        assert!(!dual.eval(h.point.coords()).is_zero());
        let q = h.quadratic_point.unwrap();
        assert_eq!(q.field(), Field::Quadratic(-1));
        assert!(dual.eval(q.coords()).is_zero());
        assert!(h.point.incident(&polar_line(&dual, &q).unwrap()));
        assert!(h.point.incident(&polar_line(&dual, &q.conjugate()).unwrap()));
    }
}
