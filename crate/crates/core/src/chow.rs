//! Intersection numbers on ℙ¹-bundles `ℙ(E)` over ℙ² and the divisor
//! calculus of the two links.
//!
//! The Chow ring is generated by `ξ` and `A` subject to `A³ = 0`,
//! `ξ² = c₁·ξA − c₂·A²` and `ξA² = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::parse::{parse_expr, ExprValue};
use crate::algebra::FieldElement;
use crate::error::Error;

/// A polynomial in `ξ`, `A` with rational coefficients, keyed by
/// `(deg ξ, deg A)`. Not reduced until passed through a [`ChowRing`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChowClass {
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ChowClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(xi: u32, a: u32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((xi, a), c);
        }
        ChowClass { terms }
    }

    pub fn xi() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn a() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    /// `u·ξ + v·A`.
    pub fn divisor(u: i64, v: i64) -> Self {
        Self::xi().scale(&q(u)).add(&Self::a().scale(&q(v)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, k: (u32, u32), c: BigRational) {
        let e = self.terms.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ChowClass {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.insert((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    /// Degree if all terms share one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        let d = degs.next().unwrap_or(0);
        degs.all(|e| e == d).then_some(d)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let mut factors = Vec::new();
            for (name, e) in [("xi", i), ("A", j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl ExprValue for ChowClass {
    fn from_scalar(c: FieldElement) -> Self {
        ChowClass::constant(c.as_rational().cloned().expect("rational coefficient"))
    }

    fn add(&self, other: &Self) -> Result<Self, Error> {
        Ok(ChowClass::add(self, other))
    }

    fn sub(&self, other: &Self) -> Result<Self, Error> {
        Ok(ChowClass::add(self, &other.scale(&q(-1))))
    }

    fn mul(&self, other: &Self) -> Result<Self, Error> {
        Ok(ChowClass::mul(self, other))
    }

    fn div(&self, other: &Self) -> Result<Self, Error> {
        match other.terms.get(&(0, 0)) {
            Some(c) if other.terms.len() == 1 => Ok(self.scale(&c.recip())),
            _ => Err(Error::Parse("division by a non-constant class".into())),
        }
    }

    fn neg(&self) -> Self {
        self.scale(&q(-1))
    }
}

impl FromStr for ChowClass {
    type Err = Error;

    /// Polynomials in `xi` and `A`, e.g. `-2xi - 4A`.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.contains('√') || s.contains("sqrt") {
            return Err(Error::Parse("class coefficients must be rational".into()));
        }
        parse_expr(s)?.eval(&|name: &str| match name {
            "xi" => Some(ChowClass::xi()),
            "A" => Some(ChowClass::a()),
            _ => None,
        })
    }
}

/// The Chow ring of `ℙ(E)` for Chern numbers `(c₁, c₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChowRing {
    pub c1: i64,
    pub c2: i64,
}

impl ChowRing {
    pub fn new(c1: i64, c2: i64) -> Self {
        ChowRing { c1, c2 }
    }

    /// Normal form on the basis `1, ξ, A, ξA, A², ξA²`.
    pub fn reduce(&self, c: &ChowClass) -> ChowClass {
        let mut work: Vec<((u32, u32), BigRational)> = c.terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut out = ChowClass::zero();
        while let Some(((i, j), v)) = work.pop() {
            if j >= 3 || i + j > 3 {
                continue;
            }
            if i >= 2 {
                // ξ^i A^j = ξ^(i-2) A^j (c₁ ξA − c₂ A²)
                work.push(((i - 1, j + 1), &v * q(self.c1)));
                work.push(((i - 2, j + 2), &v * q(-self.c2)));
            } else {
                out.insert((i, j), v);
            }
        }
        out
    }

    pub fn mul(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        self.reduce(&a.mul(b))
    }

    /// Degree of the top-dimensional part (coefficient of `ξA²`).
    pub fn degree(&self, c: &ChowClass) -> BigRational {
        self.reduce(c).terms.get(&(1, 2)).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// `D₁·D₂·D₃` for three divisor classes.
pub fn pbundle_intersection(c1: i64, c2: i64, classes: &[ChowClass; 3]) -> Result<BigRational, Error> {
    for (i, c) in classes.iter().enumerate() {
        if !c.is_zero() && c.homogeneous_degree() != Some(1) {
            return Err(Error::Invalid(format!("class {i} is not a divisor class: {c}")));
        }
    }
    let ring = ChowRing::new(c1, c2);
    Ok(ring.degree(&classes[0].mul(&classes[1]).mul(&classes[2])))
}

/// Intersection numbers of the link from `ℙ(E)` (`c₁ = −1`, `c₂ = 3`),
/// with `K = −2ξ − 4A` and `Γ = ξ + A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SarkisovNumbers {
    pub k3: BigRational,
    pub k2g: BigRational,
    pub kg2: BigRational,
    pub g3: BigRational,
    /// Cube of the flopped surface, a ℙ² with normal bundle `O(−1)`.
    pub g_plus3: BigRational,
    pub ky3: BigRational,
    pub h3: BigRational,
}

pub fn sarkisov_numerology() -> SarkisovNumbers {
    let ring = ChowRing::new(-1, 3);
    let k = ChowClass::divisor(-2, -4);
    let g = ChowClass::divisor(1, 1);
    let n = |a: &ChowClass, b: &ChowClass, c: &ChowClass| ring.degree(&a.mul(b).mul(c));
    let k3 = n(&k, &k, &k);
    let k2g = n(&k, &k, &g);
    let kg2 = n(&k, &g, &g);
    let g3 = n(&g, &g, &g);
    // c₁(N)² on ℙ² for N = O(−1)
    let g_plus3 = q(-1) * q(-1);
    let ky3 = &k3 - q(6) * &k2g + q(12) * &kg2 - q(8) * &g_plus3;
    let h3 = &ky3 / q(-8);
    SarkisovNumbers {
        k3,
        k2g,
        kg2,
        g3,
        g_plus3,
        ky3,
        h3,
    }
}

/// A class `h·q*H + e·E` on the blow-up of `Y` along a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkDivisor {
    pub h: i64,
    pub e: i64,
}

impl LinkDivisor {
    pub const fn new(h: i64, e: i64) -> Self {
        LinkDivisor { h, e }
    }

    pub fn add(self, o: Self) -> Self {
        LinkDivisor::new(self.h + o.h, self.e + o.e)
    }

    pub fn sub(self, o: Self) -> Self {
        LinkDivisor::new(self.h - o.h, self.e - o.e)
    }

    pub fn scale(self, n: i64) -> Self {
        LinkDivisor::new(n * self.h, n * self.e)
    }

    /// `q_*`: multiple of `H` on `Y` (the exceptional divisor is contracted).
    pub fn pushforward(self) -> i64 {
        self.h
    }
}

impl fmt::Display for LinkDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: i64, name: &str| match c {
            1 => name.to_string(),
            -1 => format!("-{name}"),
            _ => format!("{c}{name}"),
        };
        match (self.h, self.e) {
            (0, 0) => f.write_str("0"),
            (h, 0) => f.write_str(&term(h, "q*H")),
            (0, e) => f.write_str(&term(e, "E")),
            (h, e) if e < 0 => write!(f, "{} - {}", term(h, "q*H"), term(-e, "E")),
            (h, e) => write!(f, "{} + {}", term(h, "q*H"), term(e, "E")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricLinkReport {
    pub k_tilde: LinkDivisor,
    pub pullback_hyperplane: LinkDivisor,
    pub pullback_k_q: LinkDivisor,
    pub z_prime: LinkDivisor,
    pub q0_prime: LinkDivisor,
    /// `q_*Z′` as a multiple of `H`.
    pub z_pushforward: i64,
    /// `−K_Y` as a multiple of `H`.
    pub minus_k_y: i64,
    pub identities: Vec<(&'static str, bool)>,
}

/// Divisors of the link `Y ⇢ Q` given by projection from a line.
///
/// Inputs: `K_Y = −2H`, `K_Ỹ = q*K_Y + E`, `q′*O_Q(1) = q*H − E`,
/// `K_Q = −3·O_Q(1)`, and `q′*Q₀ = Q₀′ + Z′` for the hyperplane section `Q₀`.
pub fn quadric_link_divisors() -> QuadricLinkReport {
    let h = LinkDivisor::new(1, 0);
    let e = LinkDivisor::new(0, 1);
    let k_y = h.scale(-2);
    let k_tilde = k_y.add(e);
    let pullback_hyperplane = h.sub(e);
    let pullback_k_q = pullback_hyperplane.scale(-3);
    let z_prime = k_tilde.sub(pullback_k_q);
    let q0_prime = pullback_hyperplane.sub(z_prime);
    let z_pushforward = z_prime.pushforward();
    let minus_k_y = k_tilde.scale(-1).pushforward();
    let identities = vec![
        ("Z' = q*H - 2E", z_prime == LinkDivisor::new(1, -2)),
        ("q_*Z' = H", z_pushforward == 1),
        ("-K_Y = 2 q_*Z'", minus_k_y == 2 * z_pushforward),
        ("Q0' = E", q0_prime == e),
        ("-K_Y~ = 3Q0' + 2Z'", k_tilde.scale(-1) == q0_prime.scale(3).add(z_prime.scale(2))),
        ("q_*E = 0", e.pushforward() == 0),
    ];
    QuadricLinkReport {
        k_tilde,
        pullback_hyperplane,
        pullback_k_q,
        z_prime,
        q0_prime,
        z_pushforward,
        minus_k_y,
        identities,
    }
}
