//! Ternary forms and lengths of zero-dimensional schemes in ℙ².
//!
//! The length of `V(I)` is read off the Hilbert function `dim (S/I)_d`,
//! computed as the corank of the matrix whose rows are all degree-`d`
//! multiples `m·g` of the generators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use super::field::{Field, FieldElement};
use super::matrix::Matrix;
use super::parse::{parse_expr, ExprValue};
use super::proj::normalize_vector;
use crate::error::Error;

/// Exponents of `x`, `y`, `z`.
pub type Monomial = [u32; 3];

/// Polynomial in `x`, `y`, `z`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, FieldElement>,
}

/// Degree-`d` monomials in a fixed order (lexicographic, `x` first).
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

impl Form {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut f = Self::zero();
        f.add_term([0, 0, 0], c);
        f
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        let mut f = Self::zero();
        f.add_term(e, FieldElement::one());
        f
    }

    pub fn monomial(e: Monomial, c: FieldElement) -> Self {
        let mut f = Self::zero();
        f.add_term(e, c);
        f
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(v: &[FieldElement; 3]) -> Self {
        let mut f = Self::zero();
        for (i, c) in v.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    /// Quadratic form `vᵀ M v` of a symmetric 3×3 matrix.
    pub fn from_gram(m: &Matrix) -> Self {
        let mut f = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut e = [0; 3];
                e[i] += 1;
                e[j] += 1;
                f.add_term(e, m[(i, j)].clone());
            }
        }
        f
    }

    fn add_term(&mut self, e: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Monomial) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn field(&self) -> Result<Field, Error> {
        Field::join_all(self.terms.values())
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Result<u32, Error> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let Some(d) = degs.next() else {
            return Err(Error::Invalid("zero form has no degree".into()));
        };
        if degs.all(|x| x == d) {
            Ok(d)
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Form {
        Form {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Form {
        let mut out = Form::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn eval(&self, p: &[FieldElement; 3]) -> FieldElement {
        self.terms.iter().fold(FieldElement::zero(), |acc, (e, c)| {
            let mut term = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    term = &term * &p[i].pow(e[i]);
                }
            }
            &acc + &term
        })
    }

    /// Scales a nonzero form to the normal form used for vectors
    /// (primitive integer coefficients with positive leading term, or
    /// leading coefficient 1), leading term taken in [`monomials`] order.
    pub fn normalized(&self) -> Result<Form, Error> {
        let d = self.homogeneous_degree()?;
        let basis = monomials(d);
        let coeffs: Vec<_> = basis.iter().map(|e| self.coefficient(e)).collect();
        let n = normalize_vector(&coeffs)?;
        let mut out = Form::zero();
        for (e, c) in basis.into_iter().zip(n) {
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Coefficient vector in the degree-`d` monomial basis.
    pub fn coefficients(&self, d: u32) -> Vec<FieldElement> {
        monomials(d).iter().map(|e| self.coefficient(e)).collect()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then(b.cmp(a))
        });
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let mono: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            let mono = mono.join("*");
            let (neg, mag) = match c.as_rational() {
                Some(q) => (q.is_negative(), FieldElement::rational(q.abs())),
                None => (false, c.clone()),
            };
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}")?;
            let coeff = if mag.is_rational() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (mono.is_empty(), mag.as_rational().is_some_and(One::is_one)) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl ExprValue for Form {
    fn from_scalar(c: FieldElement) -> Self {
        Form::constant(c)
    }

    fn add(&self, other: &Self) -> Result<Self, Error> {
        self.field()?.join(other.field()?)?;
        Ok(Form::add(self, other))
    }

    fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.field()?.join(other.field()?)?;
        Ok(Form::add(self, &other.neg()))
    }

    fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.field()?.join(other.field()?)?;
        Ok(Form::mul(self, other))
    }

    fn div(&self, other: &Self) -> Result<Self, Error> {
        let c = match other.terms.len() {
            1 => other.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        };
        let c = c.ok_or_else(|| Error::Parse("forms may only be divided by nonzero constants".into()))?;
        self.field()?.join(c.field())?;
        Ok(self.scale(&c.recip()))
    }

    fn neg(&self) -> Self {
        Form::neg(self)
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Form, Error> {
        parse_expr(s)?.eval(&|v: &str| match v {
            "x" => Some(Form::var(0)),
            "y" => Some(Form::var(1)),
            "z" => Some(Form::var(2)),
            "s" => Some(Form::constant(FieldElement::param_s())),
            "t" => Some(Form::constant(FieldElement::param_t())),
            _ => None,
        })
    }
}

/// `dim_k (S/I)_d` for the ideal generated by homogeneous `generators`.
///
/// Degrees below 3 are rejected: length-3 schemes need not be cut out
/// correctly by the Hilbert function there.
pub fn scheme_length_from_forms(generators: &[Form], d: u32) -> Result<usize, Error> {
    if d < 3 {
        return Err(Error::Invalid(format!("degree {d} is below 3")));
    }
    let mut rows = Vec::new();
    for g in generators {
        let e = g.homogeneous_degree()?;
        if e > d {
            continue;
        }
        for m in monomials(d - e) {
            let prod = g.mul(&Form::monomial(m, FieldElement::one()));
            rows.push(prod.coefficients(d));
        }
    }
    let total = monomials(d).len();
    if rows.is_empty() {
        return Ok(total);
    }
    let matrix = Matrix::from_rows(rows)?;
    Ok(total - matrix.rank())
}

/// Length at degree 3, confirmed at degree 4.
///
/// Disagreement means the input is not a zero-dimensional scheme of
/// length at most 3.
pub fn stable_scheme_length(generators: &[Form]) -> Result<usize, Error> {
    let d3 = scheme_length_from_forms(generators, 3)?;
    let d4 = scheme_length_from_forms(generators, 4)?;
    if d3 != d4 {
        return Err(Error::UnstableLength { d3, d4 });
    }
    Ok(d3)
}
