//! Exact scalars over ℚ, ℚ(√d) and ℚ(s, t).
//!
//! [`FieldElement`] is a tagged value whose variant records the smallest of
//! the three supported fields containing it: a quadratic element with zero
//! irrational part is stored as a rational, and a constant rational function
//! is stored as a rational. Equality is therefore structural.
//!
//! Arithmetic between a quadratic element and a rational function, or
//! between quadratic elements over different `d`, has no common field and
//! panics; public entry points validate field compatibility up front with
//! [`Field::join`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::integer::{is_squarefree_i64, squarefree_decompose};
use super::ratfunc::{BiPoly, RationalFunction};
use crate::error::Error;

/// Which of the supported fields an element (or a computation) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// ℚ(√d) with `d` square-free and `d ≠ 1`.
    Quadratic(i64),
    /// ℚ(s, t).
    RationalFunctions,
}

impl Field {
    /// Smallest supported field containing both.
    pub fn join(self, other: Field) -> Result<Field, Error> {
        use Field::*;
        match (self, other) {
            (Rationals, x) | (x, Rationals) => Ok(x),
            (Quadratic(a), Quadratic(b)) if a == b => Ok(Quadratic(a)),
            (RationalFunctions, RationalFunctions) => Ok(RationalFunctions),
            (a, b) => Err(Error::IncompatibleFields(a, b)),
        }
    }

    pub fn join_all<'a>(elems: impl IntoIterator<Item = &'a FieldElement>) -> Result<Field, Error> {
        elems
            .into_iter()
            .try_fold(Field::Rationals, |acc, e| acc.join(e.field()))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
            Field::RationalFunctions => write!(f, "Q(s,t)"),
        }
    }
}

/// `a + b√d` with `b ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    a: BigRational,
    b: BigRational,
    d: i64,
}

impl QuadraticElement {
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Quadratic(QuadraticElement),
    Function(RationalFunction),
}

use FieldElement as FE;

fn q_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldElement {
    pub fn zero() -> Self {
        FE::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FE::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FE::Rational(q_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        FE::Rational(BigRational::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        FE::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(q: BigRational) -> Self {
        FE::Rational(q)
    }

    /// `a + b√d`; collapses to a rational when `b = 0`. `d` must be square-free and not 1.
    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Result<Self, Error> {
        if d == 1 || !is_squarefree_i64(d) {
            return Err(Error::Invalid(format!("radicand {d} is not a square-free integer ≠ 1")));
        }
        Ok(if b.is_zero() {
            FE::Rational(a)
        } else {
            FE::Quadratic(QuadraticElement { a, b, d })
        })
    }

    /// `√n` for any nonzero integer `n`, written as `k√m` with `m` square-free.
    pub fn sqrt_of(n: i64) -> Result<Self, Error> {
        if n == 0 {
            return Ok(Self::zero());
        }
        let (k, m) = squarefree_decompose(&BigInt::from(n))?;
        let k = BigRational::from_integer(k);
        if m.is_one() {
            return Ok(FE::Rational(k));
        }
        let m: i64 = m.try_into().map_err(|_| Error::Invalid("radicand too large".into()))?;
        Self::quadratic(BigRational::zero(), k, m)
    }

    pub fn param_s() -> Self {
        FE::Function(RationalFunction::from_poly(BiPoly::s()))
    }

    pub fn param_t() -> Self {
        FE::Function(RationalFunction::from_poly(BiPoly::t()))
    }

    fn from_function(f: RationalFunction) -> Self {
        match f.as_constant() {
            Some(c) => FE::Rational(c),
            None => FE::Function(f),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            FE::Rational(_) => Field::Rationals,
            FE::Quadratic(q) => Field::Quadratic(q.d),
            FE::Function(_) => Field::RationalFunctions,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FE::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FE::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FE::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FE::Rational(_))
    }

    /// Galois conjugation `√d ↦ −√d`; the identity on ℚ and ℚ(s, t).
    pub fn conjugate(&self) -> Self {
        match self {
            FE::Quadratic(q) => FE::Quadratic(QuadraticElement {
                a: q.a.clone(),
                b: -&q.b,
                d: q.d,
            }),
            other => other.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            FE::Rational(q) => {
                assert!(!q.is_zero(), "division by zero");
                FE::Rational(q.recip())
            }
            FE::Quadratic(q) => {
                let norm = &q.a * &q.a - &q.b * &q.b * q_int(q.d);
                FE::Quadratic(QuadraticElement {
                    a: &q.a / &norm,
                    b: -&q.b / &norm,
                    d: q.d,
                })
            }
            FE::Function(f) => Self::from_function(f.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn square(&self) -> Self {
        self * self
    }

    fn lift_function(&self) -> RationalFunction {
        match self {
            FE::Rational(q) => RationalFunction::constant(q.clone()),
            FE::Function(f) => f.clone(),
            FE::Quadratic(_) => panic!("{}", Error::IncompatibleFields(self.field(), Field::RationalFunctions)),
        }
    }

    fn quad_parts(&self, d: i64) -> (BigRational, BigRational) {
        match self {
            FE::Rational(q) => (q.clone(), BigRational::zero()),
            FE::Quadratic(q) if q.d == d => (q.a.clone(), q.b.clone()),
            _ => panic!("{}", Error::IncompatibleFields(self.field(), Field::Quadratic(d))),
        }
    }

    fn combine(
        &self,
        other: &Self,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        quad: impl Fn((BigRational, BigRational), (BigRational, BigRational), i64) -> (BigRational, BigRational),
        func: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> Self {
        let field = self
            .field()
            .join(other.field())
            .unwrap_or_else(|e| panic!("{e}"));
        match field {
            Field::Rationals => FE::Rational(rat(self.as_rational().unwrap(), other.as_rational().unwrap())),
            Field::Quadratic(d) => {
                let (a, b) = quad(self.quad_parts(d), other.quad_parts(d), d);
                FE::quadratic(a, b, d).expect("valid radicand")
            }
            Field::RationalFunctions => Self::from_function(func(&self.lift_function(), &other.lift_function())),
        }
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FE::from_int(n)
    }
}

impl From<BigRational> for FieldElement {
    fn from(q: BigRational) -> Self {
        FE::Rational(q)
    }
}

impl From<BigInt> for FieldElement {
    fn from(n: BigInt) -> Self {
        FE::from_bigint(n)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, other: &FieldElement) -> FieldElement {
        self.combine(
            other,
            |a, b| a + b,
            |(a1, b1), (a2, b2), _| (a1 + a2, b1 + b2),
            |f, g| f.add(g),
        )
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, other: &FieldElement) -> FieldElement {
        self.combine(
            other,
            |a, b| a - b,
            |(a1, b1), (a2, b2), _| (a1 - a2, b1 - b2),
            |f, g| f.sub(g),
        )
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, other: &FieldElement) -> FieldElement {
        self.combine(
            other,
            |a, b| a * b,
            |(a1, b1), (a2, b2), d| (&a1 * &a2 + &b1 * &b2 * q_int(d), a1 * b2 + b1 * a2),
            |f, g| f.mul(g),
        )
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, other: &FieldElement) -> FieldElement {
        self * &other.recip()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FE::Rational(q) => FE::Rational(-q),
            FE::Quadratic(q) => FE::Quadratic(QuadraticElement {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            }),
            FE::Function(f) => FE::Function(f.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, other: FieldElement) -> FieldElement {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, other: &FieldElement) -> FieldElement {
                (&self).$m(other)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, other: FieldElement) -> FieldElement {
                self.$m(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    /// `p/q` (or `p` when `q = 1`), `(a+b√d)/q`, or `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FE::Rational(q) => write!(f, "{q}"),
            FE::Quadratic(q) => {
                let den = q.a.denom().lcm(q.b.denom());
                let a = q.a.numer() * (&den / q.a.denom());
                let b = q.b.numer() * (&den / q.b.denom());
                let sign = if b.is_negative() { '-' } else { '+' };
                write!(f, "({a}{sign}{}√{})/{den}", b.abs(), q.d)
            }
            FE::Function(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        super::parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_arithmetic() {
        let r2 = FE::sqrt_of(2).unwrap();
        assert_eq!(&r2 * &r2, FE::from_int(2));
        let x = &FE::from_int(1) + &r2;
        let inv = x.recip();
        assert_eq!(&x * &inv, FE::one());
        assert_eq!(x.to_string(), "(1+1√2)/1");
        assert_eq!((&x - &r2).field(), Field::Rationals);
    }

    #[test]
    fn sqrt_extracts_squares() {
        assert_eq!(FE::sqrt_of(9).unwrap(), FE::from_int(3));
        let r8 = FE::sqrt_of(8).unwrap();
        assert_eq!(r8.to_string(), "(0+2√2)/1");
        let i = FE::sqrt_of(-1).unwrap();
        assert_eq!(&i * &i, FE::from_int(-1));
    }

    #[test]
    fn function_collapses_to_constant() {
        let s = FE::param_s();
        let t = FE::param_t();
        let q = &(&s * &t) / &(&t * &s);
        assert_eq!(q, FE::one());
        assert!(q.is_rational());
        assert_eq!((&s * &t).to_string(), "(s*t)/(1)");
    }

    #[test]
    fn conjugation_fixes_rationals() {
        let x = FE::quadratic(BigRational::one(), BigRational::one(), 3).unwrap();
        assert_eq!(x.conjugate().conjugate(), x);
        assert_eq!(&x * &x.conjugate(), FE::from_int(-2));
        assert_eq!(FE::ratio(3, 4).conjugate(), FE::ratio(3, 4));
    }

    #[test]
    fn join_rules() {
        assert_eq!(Field::Rationals.join(Field::Quadratic(2)).unwrap(), Field::Quadratic(2));
        assert!(Field::Quadratic(2).join(Field::Quadratic(3)).is_err());
        assert!(Field::Quadratic(2).join(Field::RationalFunctions).is_err());
    }

    #[test]
    #[should_panic]
    fn mixing_radicands_panics() {
        let _ = FE::sqrt_of(2).unwrap() + FE::sqrt_of(3).unwrap();
    }

    #[test]
    fn rejects_bad_radicand() {
        assert!(FE::quadratic(BigRational::one(), BigRational::one(), 4).is_err());
        assert!(FE::quadratic(BigRational::one(), BigRational::one(), 1).is_err());
    }
}
