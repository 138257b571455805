//! Polynomials and rational functions in the two parameters `s`, `t` over ℚ.
//!
//! Rational functions are kept in lowest terms with a monic denominator
//! (leading coefficient 1 in graded order, `s` before `t`), which makes the
//! representation canonical: two functions are equal iff their structs are.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Dense polynomial in `s` over ℚ, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UniPoly(Vec<Q>);

impl UniPoly {
    fn zero() -> Self {
        UniPoly(Vec::new())
    }

    fn trimmed(mut v: Vec<Q>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        UniPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Q {
        self.0.last().expect("nonzero polynomial")
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(Q::zero);
                let b = other.0.get(i).cloned().unwrap_or_else(Q::zero);
                a + b
            })
            .collect();
        Self::trimmed(v)
    }

    fn neg(&self) -> Self {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }

    fn scale(&self, c: &Q) -> Self {
        Self::trimmed(self.0.iter().map(|a| a * c).collect())
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); self.degree() - dd + 1];
        let lead = d.lead().clone();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        (Self::trimmed(quot), Self::trimmed(rem))
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Polynomial in `t` whose coefficients are polynomials in `s`.
type Recursive = Vec<UniPoly>;

fn rec_trim(mut r: Recursive) -> Recursive {
    while r.last().is_some_and(UniPoly::is_zero) {
        r.pop();
    }
    r
}

fn rec_content(r: &Recursive) -> UniPoly {
    r.iter().fold(UniPoly::zero(), |g, c| UniPoly::gcd(&g, c))
}

fn rec_div_scalar(r: &Recursive, c: &UniPoly) -> Recursive {
    r.iter()
        .map(|a| {
            let (q, rem) = a.divrem(c);
            debug_assert!(rem.is_zero());
            q
        })
        .collect()
}

fn rec_primitive(r: &Recursive) -> Recursive {
    let c = rec_content(r);
    if c.is_zero() {
        return Vec::new();
    }
    rec_div_scalar(r, &c)
}

/// Pseudo-remainder of `a` by `b` in ℚ[s][t].
fn rec_prem(a: &Recursive, b: &Recursive) -> Recursive {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Recursive = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&lr.mul(bc));
        }
        r = rec_trim(next);
    }
    r
}

/// Exact quotient `a / b` in ℚ[s][t]; `None` if `b` does not divide `a`.
fn rec_exact_div(a: &Recursive, b: &Recursive) -> Option<Recursive> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() <= db {
        return None;
    }
    let mut quot = vec![UniPoly::zero(); r.len() - db];
    while !r.is_empty() {
        let dr = r.len() - 1;
        if dr < db {
            return None;
        }
        let (c, rem) = r[dr].divrem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(bc));
        }
        quot[shift] = c;
        r = rec_trim(r);
    }
    Some(rec_trim(quot))
}

/// Sparse polynomial in `s`, `t` with rational coefficients.
///
/// Keys are `(deg_s, deg_t)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.insert((0, 0), c);
        p
    }

    pub fn s() -> Self {
        let mut p = Self::zero();
        p.insert((1, 0), Q::one());
        p
    }

    pub fn t() -> Self {
        let mut p = Self::zero();
        p.insert((0, 1), Q::one());
        p
    }

    fn insert(&mut self, key: (u32, u32), c: Q) {
        if c.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    fn add_term(&mut self, key: (u32, u32), c: Q) {
        let cur = self.terms.remove(&key).unwrap_or_else(Q::zero);
        self.insert(key, cur + c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Leading term in graded order (total degree, then `s`-degree).
    fn leading(&self) -> Option<(&(u32, u32), &Q)> {
        self.terms
            .iter()
            .max_by_key(|((a, b), _)| (a + b, *a))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.insert(*k, v * c);
        }
        out
    }

    pub fn eval(&self, s: &Q, t: &Q) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, ((a, b), c)| {
            acc + c * num_traits::pow(s.clone(), *a as usize) * num_traits::pow(t.clone(), *b as usize)
        })
    }

    fn to_recursive(&self) -> Recursive {
        let max_t = self.terms.keys().map(|k| k.1).max();
        let Some(max_t) = max_t else {
            return Vec::new();
        };
        let mut dense: Vec<Vec<Q>> = vec![Vec::new(); max_t as usize + 1];
        for ((a, b), c) in &self.terms {
            let row = &mut dense[*b as usize];
            if row.len() <= *a as usize {
                row.resize(*a as usize + 1, Q::zero());
            }
            row[*a as usize] = c.clone();
        }
        rec_trim(dense.into_iter().map(UniPoly::trimmed).collect())
    }

    fn from_recursive(r: &Recursive) -> Self {
        let mut out = Self::zero();
        for (b, coeff) in r.iter().enumerate() {
            for (a, c) in coeff.0.iter().enumerate() {
                out.insert((a as u32, b as u32), c.clone());
            }
        }
        out
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let a = self.to_recursive();
        let b = other.to_recursive();
        let content = UniPoly::gcd(&rec_content(&a), &rec_content(&b));
        let (mut a, mut b) = (rec_primitive(&a), rec_primitive(&b));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = rec_prem(&a, &b);
            a = b;
            b = rec_primitive(&r);
        }
        let g: Recursive = rec_primitive(&a).iter().map(|c| c.mul(&content)).collect();
        Self::from_recursive(&g).monic()
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "polynomial division by zero");
        rec_exact_div(&self.to_recursive(), &other.to_recursive()).map(|q| Self::from_recursive(&q))
    }

    fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }
}

fn fmt_monomial(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("s", a), ("t", b)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|(a, b)| std::cmp::Reverse((a + b, *a)));
        for (i, (a, b)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mono = fmt_monomial(a, b);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Element of ℚ(s, t) in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl RationalFunction {
    pub fn from_poly(p: BiPoly) -> Self {
        RationalFunction {
            num: p,
            den: BiPoly::constant(Q::one()),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    /// Builds `num / den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::constant(Q::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lead = den.leading().expect("nonzero").1.recip();
        RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Q> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Value at a rational specialization; `None` at a pole.
    pub fn eval(&self, s: &Q, t: &Q) -> Option<Q> {
        let d = self.den.eval(s, t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(s, t) / d)
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn gcd_of_shared_factor() {
        let s = BiPoly::s();
        let t = BiPoly::t();
        let one = BiPoly::constant(q(1));
        // (s + t)(s - 1) and (s + t)(t + 1)
        let common = s.add(&t);
        let a = common.mul(&s.sub(&one));
        let b = common.mul(&t.add(&one));
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn reduction_cancels() {
        let s = BiPoly::s();
        let t = BiPoly::t();
        let st = s.mul(&t);
        let f = RationalFunction::new(st.scale(&q(2)), s.scale(&q(4)));
        assert_eq!(f.to_string(), "(1/2*t)/(1)");
        let g = RationalFunction::new(s.mul(&s).sub(&t.mul(&t)), s.sub(&t));
        assert_eq!(g, RationalFunction::from_poly(s.add(&t)));
    }

    #[test]
    fn exact_div_rejects_non_divisor() {
        let s = BiPoly::s();
        let t = BiPoly::t();
        assert!(s.mul(&s).add(&t).exact_div(&s).is_none());
    }
}
