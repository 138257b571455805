//! Rational points on conics over ℚ via Legendre's theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuadraticForm;
use crate::algebra::congruence::diagonalize_symmetric;
use crate::algebra::integer::{factor, is_quadratic_residue, is_square, squarefree_decompose};
use crate::algebra::{Field, FieldElement, Matrix, ProjPoint};
use crate::error::Error;

/// Default cap on the number of candidate pairs examined by [`search_witness`].
pub const DEFAULT_SEARCH_LIMIT: u64 = 10_000_000;

/// `f(T·X) = λ·(a₀X₀² + a₁X₁² + a₂X₂²)` with `a` square-free, pairwise
/// coprime integers and `λ ∈ ℚ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreForm {
    pub coefficients: [BigInt; 3],
    pub transform: Matrix,
}

/// Why a conic has no rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// All reduced coefficients share a sign: no real point.
    Definite { positive: bool },
    /// `residue` (which is `−aⱼaₖ mod prime`) is not a square mod `prime`,
    /// where `prime` divides coefficient `index`.
    NonResidue { prime: BigInt, index: usize, residue: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointCertificate {
    Solvable { witness: ProjPoint, reduced: [BigInt; 3] },
    Insolvable { obstruction: Obstruction, reduced: [BigInt; 3] },
}

impl PointCertificate {
    pub fn is_solvable(&self) -> bool {
        matches!(self, PointCertificate::Solvable { .. })
    }

    pub fn witness(&self) -> Option<&ProjPoint> {
        match self {
            PointCertificate::Solvable { witness, .. } => Some(witness),
            PointCertificate::Insolvable { .. } => None,
        }
    }

    pub fn reduced(&self) -> &[BigInt; 3] {
        match self {
            PointCertificate::Solvable { reduced, .. } | PointCertificate::Insolvable { reduced, .. } => reduced,
        }
    }
}

fn rat(q: &FieldElement) -> BigRational {
    q.as_rational().expect("rational entry").clone()
}

/// Diagonalizes `f` and rescales to square-free, pairwise coprime integer
/// coefficients.
pub fn legendre_reduce(f: &QuadraticForm) -> Result<LegendreForm, Error> {
    if f.field() != Field::Rationals {
        return Err(Error::Unsupported(format!("rational-point decision is implemented over Q only, got {}", f.field())));
    }
    f.require_smooth()?;
    let diag = diagonalize_symmetric(f.gram())?;
    let mut a: Vec<BigInt> = Vec::with_capacity(3);
    let mut r: Vec<BigRational> = Vec::with_capacity(3);
    for d in diag.entries() {
        let d = rat(&d);
        a.push(d.numer() * d.denom());
        r.push(BigRational::from_integer(d.denom().clone()));
    }
    loop {
        let g = a[0].gcd(&a[1]).gcd(&a[2]);
        for ai in a.iter_mut() {
            *ai = &*ai / &g;
        }
        for i in 0..3 {
            let (k, m) = squarefree_decompose(&a[i])?;
            a[i] = m;
            r[i] = &r[i] / BigRational::from_integer(k);
        }
        let pair = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
            .into_iter()
            .find(|&(i, j, _)| !a[i].gcd(&a[j]).is_one());
        let Some((i, j, k)) = pair else { break };
        let g = a[i].gcd(&a[j]);
        a[i] = &a[i] / &g;
        a[j] = &a[j] / &g;
        a[k] = &a[k] * &g;
        let gq = BigRational::from_integer(g);
        r[i] = &r[i] / &gq;
        r[j] = &r[j] / &gq;
    }
    let scale = Matrix::diagonal(&r.iter().cloned().map(FieldElement::rational).collect::<Vec<_>>());
    let transform = diag.transform.mul(&scale)?;
    Ok(LegendreForm {
        coefficients: [a[0].clone(), a[1].clone(), a[2].clone()],
        transform,
    })
}

/// Legendre's criterion on square-free, pairwise coprime, nonzero `a`:
/// `None` when `Σ aᵢXᵢ² = 0` is solvable, else the first failing condition.
pub fn legendre_decide(a: &[BigInt; 3]) -> Result<Option<Obstruction>, Error> {
    if a.iter().any(Zero::is_zero) {
        return Err(Error::Degenerate);
    }
    if a.iter().all(Signed::is_positive) {
        return Ok(Some(Obstruction::Definite { positive: true }));
    }
    if a.iter().all(Signed::is_negative) {
        return Ok(Some(Obstruction::Definite { positive: false }));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let target = -(&a[j] * &a[k]);
        for (p, _) in factor(&a[i])? {
            if p == BigInt::from(2u32) {
                continue;
            }
            if !is_quadratic_residue(&target, &p) {
                return Ok(Some(Obstruction::NonResidue {
                    residue: target.mod_floor(&p),
                    prime: p,
                    index: i,
                }));
            }
        }
    }
    Ok(None)
}

/// `⌊√|aⱼaₖ|⌋` for each `i`: a solvable equation has a nontrivial solution
/// with `|Xᵢ|` within these bounds.
pub fn holzer_bounds(a: &[BigInt; 3]) -> [BigInt; 3] {
    std::array::from_fn(|i| (&a[(i + 1) % 3] * &a[(i + 2) % 3]).abs().sqrt())
}

/// Exhaustive search for a primitive nonzero solution of `Σ aᵢXᵢ² = 0`.
///
/// The two coordinates with the smallest bounds are enumerated over
/// `0..=bound` and the third is solved for. Fails with
/// [`Error::SearchBound`] when the enumeration would exceed `limit` pairs.
pub fn search_witness(a: &[BigInt; 3], limit: u64) -> Result<Option<[BigInt; 3]>, Error> {
    let bounds = holzer_bounds(a);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| bounds[x].cmp(&bounds[y]));
    let [i, j, k] = order;
    let count = (&bounds[i] + 1u32) * (&bounds[j] + 1u32);
    if count > BigInt::from(limit) {
        return Err(Error::SearchBound(format!("witness search needs {count} candidates, limit is {limit}")));
    }
    let bi = bounds[i].to_u64().expect("bounded by limit");
    let bj = bounds[j].to_u64().expect("bounded by limit");
    for xi in 0..=bi {
        let xi = BigInt::from(xi);
        let si = &a[i] * &xi * &xi;
        for xj in 0..=bj {
            if xi.is_zero() && xj == 0 {
                continue;
            }
            let xj = BigInt::from(xj);
            let rest = -(&si + &a[j] * &xj * &xj);
            if !rest.is_multiple_of(&a[k]) {
                continue;
            }
            let q = &rest / &a[k];
            if !is_square(&q) {
                continue;
            }
            let mut x: [BigInt; 3] = std::array::from_fn(|_| BigInt::zero());
            x[i] = xi.clone();
            x[j] = xj;
            x[k] = q.sqrt();
            let g = x[0].gcd(&x[1]).gcd(&x[2]);
            return Ok(Some(x.map(|v| v / &g)));
        }
    }
    Ok(None)
}

/// Decides whether the smooth conic `f` over ℚ has a rational point, with
/// the default search limit.
pub fn has_rational_point(f: &QuadraticForm) -> Result<PointCertificate, Error> {
    has_rational_point_with_limit(f, DEFAULT_SEARCH_LIMIT)
}

pub fn has_rational_point_with_limit(f: &QuadraticForm, limit: u64) -> Result<PointCertificate, Error> {
    let red = legendre_reduce(f)?;
    let reduced = red.coefficients.clone();
    if let Some(obstruction) = legendre_decide(&reduced)? {
        return Ok(PointCertificate::Insolvable { obstruction, reduced });
    }
    let x = search_witness(&reduced, limit)?
        .ok_or_else(|| Error::Invalid(format!("no witness within bounds for solvable form {reduced:?}")))?;
    let xv: Vec<FieldElement> = x.iter().cloned().map(FieldElement::from_bigint).collect();
    let v = red.transform.mul_vec(&xv)?;
    let witness = ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()])?;
    if !f.eval(witness.coords()).is_zero() {
        return Err(Error::Invalid("witness failed verification".into()));
    }
    Ok(PointCertificate::Solvable { witness, reduced })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3(a: i64, b: i64, c: i64) -> [BigInt; 3] {
        [BigInt::from(a), BigInt::from(b), BigInt::from(c)]
    }

    fn diag(a: i64, b: i64, c: i64) -> QuadraticForm {
        QuadraticForm::diagonal(a.into(), b.into(), c.into()).unwrap()
    }

    #[test]
    fn classical_cases() {
        let c = has_rational_point(&diag(1, 1, -1)).unwrap();
        assert!(c.is_solvable());
        let c = has_rational_point(&diag(1, 1, 1)).unwrap();
        assert_eq!(
            c,
            PointCertificate::Insolvable {
                obstruction: Obstruction::Definite { positive: true },
                reduced: b3(1, 1, 1)
            }
        );
        // x² + y² = 3z²: −1 is not a square mod 3
        let c = has_rational_point(&diag(1, 1, -3)).unwrap();
        match c {
            PointCertificate::Insolvable {
                obstruction: Obstruction::NonResidue { prime, index, .. },
                ..
            } => {
                assert_eq!(prime, BigInt::from(3));
                assert_eq!(index, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        // x² + y² = 2z² has (1,1,1)
        let c = has_rational_point(&diag(1, 1, -2)).unwrap();
        assert_eq!(c.witness(), Some(&ProjPoint::from_ints(1, 1, 1)));
    }

    #[test]
    fn reduction_clears_squares_and_common_factors() {
        // 4x² + 18y² − 50z² ~ 2x² + 9y² − 25z² ~ 2x² + y² − z²
        let red = legendre_reduce(&diag(4, 18, -50)).unwrap();
        let a = red.coefficients;
        assert_eq!(a, b3(2, 1, -1));
        // 6x² + 10y² − 15z²: pairwise gcds shared
        let red = legendre_reduce(&diag(6, 10, -15)).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(red.coefficients[i].gcd(&red.coefficients[j]).is_one());
            }
        }
    }

    #[test]
    fn non_diagonal_form() {
        // xy − z²
        let f = QuadraticForm::new(Matrix::from_rows(vec![
            vec![0.into(), FieldElement::ratio(1, 2), 0.into()],
            vec![FieldElement::ratio(1, 2), 0.into(), 0.into()],
            vec![0.into(), 0.into(), (-1).into()],
        ]).unwrap())
        .unwrap();
        let c = has_rational_point(&f).unwrap();
        let w = c.witness().unwrap();
        assert!(f.eval(w.coords()).is_zero());
    }

    #[test]
    fn search_limit_enforced() {
        let a = b3(1, 1, -1_000_001);
        assert!(matches!(search_witness(&a, 10), Err(Error::SearchBound(_))));
    }

    #[test]
    fn quadratic_field_unsupported() {
        let r2 = FieldElement::sqrt_of(2).unwrap();
        let f = QuadraticForm::diagonal(1.into(), r2, (-1).into()).unwrap();
        assert!(has_rational_point(&f).unwrap_err().is_unsupported());
    }
}
