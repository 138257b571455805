//! Points and lines of the projective plane.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, FieldElement};
use super::matrix::{cross, dot};
use crate::error::Error;

/// Normal form of a nonzero vector up to scale.
///
/// Rational vectors become primitive integer vectors with positive leading
/// nonzero entry; anything else is divided by its first nonzero entry, and
/// treated as rational if that makes it so.
pub fn normalize_vector(v: &[FieldElement]) -> Result<Vec<FieldElement>, Error> {
    let Some(lead) = v.iter().find(|c| !c.is_zero()) else {
        return Err(Error::ZeroVector);
    };
    Field::join_all(v.iter())?;
    if v.iter().all(FieldElement::is_rational) {
        let qs: Vec<_> = v.iter().map(|c| c.as_rational().unwrap().clone()).collect();
        let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if ints.iter().find(|n| !n.is_zero()).unwrap().is_negative() {
            g = -g;
        }
        return Ok(ints.into_iter().map(|n| FieldElement::from_bigint(n / &g)).collect());
    }
    let inv = lead.recip();
    let scaled: Vec<FieldElement> = v.iter().map(|c| c * &inv).collect();
    if scaled.iter().all(FieldElement::is_rational) {
        return normalize_vector(&scaled);
    }
    Ok(scaled)
}

/// A point of ℙ², stored in normal form, so equality is projective equality.
///
/// Lines are represented by their coefficient vectors with the same type
/// (see [`ProjLine`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

/// A line `aX + bY + cZ = 0`, given by `[a:b:c]`.
pub type ProjLine = ProjPoint;

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self, Error> {
        let n = normalize_vector(&coords)?;
        Ok(ProjPoint {
            coords: [n[0].clone(), n[1].clone(), n[2].clone()],
        })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new([x.into(), y.into(), z.into()]).expect("nonzero integer point")
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        Field::join_all(self.coords.iter()).expect("validated at construction")
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(FieldElement::is_rational)
    }

    /// Galois conjugate over ℚ(√d); the point itself otherwise.
    pub fn conjugate(&self) -> Self {
        Self::new(self.coords.clone().map(|c| c.conjugate())).expect("conjugate of nonzero is nonzero")
    }

    /// Incidence of a point with a line: `⟨line, point⟩ = 0`.
    pub fn incident(&self, line: &ProjLine) -> bool {
        dot(&self.coords, &line.coords).is_zero()
    }

    /// Line through two distinct points, or intersection of two distinct lines.
    pub fn join(&self, other: &ProjPoint) -> Result<ProjPoint, Error> {
        ProjPoint::new(cross(&self.coords, &other.coords))
    }

    pub fn transform(&self, m: &super::matrix::Matrix) -> Result<ProjPoint, Error> {
        let v = m.mul_vec(&self.coords)?;
        ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}
