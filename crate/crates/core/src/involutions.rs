//! Base schemes of quadratic involutions of ℙ² and the Type I lattice.

use std::fmt;

use num_rational::Rational64;

use crate::algebra::matrix::det3;
use crate::algebra::{scheme_length_from_forms, Form};
use crate::error::Error;
use crate::scheme::{collinear, LengthThreeScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionType {
    /// Three non-collinear points.
    I,
    /// A double point `V(x, y²)` and a simple point.
    II,
    /// A curvilinear point `V(y³, x − y²)`.
    III,
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionType::I => "I",
            InvolutionType::II => "II",
            InvolutionType::III => "III",
        })
    }
}

/// A length-3 scheme, optionally with the net of conics defining the
/// involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionBaseScheme {
    scheme: LengthThreeScheme,
    generators: Option<Vec<Form>>,
}

impl InvolutionBaseScheme {
    pub fn new(scheme: LengthThreeScheme) -> Self {
        InvolutionBaseScheme {
            scheme,
            generators: None,
        }
    }

    /// Attaches generators, which must cut out a scheme of length 3 (at
    /// degrees 3 and 4) vanishing on the support of `scheme`.
    pub fn with_generators(scheme: LengthThreeScheme, generators: Vec<Form>) -> Result<Self, Error> {
        let d3 = scheme_length_from_forms(&generators, 3)?;
        let d4 = scheme_length_from_forms(&generators, 4)?;
        if d3 != 3 || d4 != 3 {
            return Err(Error::NotInvolutionBase(format!("generators cut out length {d3} (d=3), {d4} (d=4)")));
        }
        let support = match &scheme {
            LengthThreeScheme::Reduced(p) => p.to_vec(),
            LengthThreeScheme::DoublePlusOne { double, simple, .. } => vec![double.clone(), simple.clone()],
            LengthThreeScheme::Curvilinear { .. } => vec![scheme.support()],
        };
        for p in &support {
            if generators.iter().any(|g| !g.eval(p.coords()).is_zero()) {
                return Err(Error::NotInvolutionBase(format!("generators do not vanish at {p}")));
            }
        }
        Ok(InvolutionBaseScheme {
            scheme,
            generators: Some(generators),
        })
    }

    pub fn scheme(&self) -> &LengthThreeScheme {
        &self.scheme
    }

    pub fn generators(&self) -> Option<&[Form]> {
        self.generators.as_deref()
    }
}

/// Type of the base scheme. A scheme contained in a line is rejected:
/// every conic through it contains that line.
pub fn classify_base_scheme(z: &InvolutionBaseScheme) -> Result<InvolutionType, Error> {
    match &z.scheme {
        LengthThreeScheme::Reduced(p) => {
            if collinear(p) {
                return Err(Error::NotInvolutionBase("the three points are collinear".into()));
            }
            Ok(InvolutionType::I)
        }
        LengthThreeScheme::DoublePlusOne {
            double,
            direction,
            simple,
        } => {
            if det3(double.coords(), direction.coords(), simple.coords()).is_zero() {
                return Err(Error::NotInvolutionBase("the scheme lies on a line".into()));
            }
            Ok(InvolutionType::II)
        }
        LengthThreeScheme::Curvilinear { point, tangent, second } => {
            if det3(point, tangent, second).is_zero() {
                return Err(Error::NotInvolutionBase("the scheme lies on a line".into()));
            }
            Ok(InvolutionType::III)
        }
    }
}

/// A divisor class `a·H + b₁e₁ + b₂e₂ + b₃e₃`.
pub type Divisor = [Rational64; 4];

/// Picard lattice of ℙ² blown up in three points: basis `(H, e₁, e₂, e₃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    pub labels: [&'static str; 4],
    pub form: [[i64; 4]; 4],
}

impl Default for SurfaceLattice {
    fn default() -> Self {
        SurfaceLattice {
            labels: ["H", "e1", "e2", "e3"],
            form: [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
        }
    }
}

impl SurfaceLattice {
    pub fn pair(&self, a: &Divisor, b: &Divisor) -> Rational64 {
        let mut s = Rational64::from_integer(0);
        for i in 0..4 {
            for j in 0..4 {
                s += a[i] * b[j] * self.form[i][j];
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.form[i][j] == self.form[j][i]))
    }

    pub fn format(&self, d: &Divisor) -> String {
        let mut out = String::new();
        for (c, l) in d.iter().zip(self.labels) {
            if *c == Rational64::from_integer(0) {
                continue;
            }
            let neg = *c < Rational64::from_integer(0);
            let mag = if neg { -*c } else { *c };
            out.push_str(match (out.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            if mag != Rational64::from_integer(1) {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(l);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn div(v: [i64; 4]) -> Divisor {
    v.map(Rational64::from_integer)
}

fn lin(terms: &[(i64, i64, &Divisor)]) -> Divisor {
    let mut out = div([0; 4]);
    for (n, d, v) in terms {
        for i in 0..4 {
            out[i] += v[i] * Rational64::new(*n, *d);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Class(Divisor),
    Number(Rational64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: &'static str,
    pub lhs: Side,
    pub rhs: Side,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIReport {
    pub lattice: SurfaceLattice,
    pub e: Divisor,
    /// `e′ᵢ` is the line through the two points other than `pᵢ`.
    pub e_prime: [Divisor; 3],
    pub k: Divisor,
    pub identities: Vec<Identity>,
}

impl TypeIReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(Identity::holds)
    }
}

/// Divisor identities on the blow-up of three non-collinear points.
pub fn type1_lattice_verify(points: &[crate::algebra::ProjPoint; 3]) -> Result<TypeIReport, Error> {
    if collinear(points) {
        return Err(Error::NotInvolutionBase("the three points are collinear".into()));
    }
    let lattice = SurfaceLattice::default();
    let h = div([1, 0, 0, 0]);
    let ei = [div([0, 1, 0, 0]), div([0, 0, 1, 0]), div([0, 0, 0, 1])];
    let e = lin(&[(1, 1, &ei[0]), (1, 1, &ei[1]), (1, 1, &ei[2])]);
    let e_prime: [Divisor; 3] = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        lin(&[(1, 1, &h), (-1, 1, &ei[j]), (-1, 1, &ei[k])])
    });
    let ep = lin(&[(1, 1, &e_prime[0]), (1, 1, &e_prime[1]), (1, 1, &e_prime[2])]);
    let k = lin(&[(-3, 1, &h), (1, 1, &e)]);
    let n = |v: i64| Side::Number(Rational64::from_integer(v));
    let mut identities = vec![
        Identity {
            name: "e' = 3H - 2e",
            lhs: Side::Class(ep),
            rhs: Side::Class(lin(&[(3, 1, &h), (-2, 1, &e)])),
        },
        Identity {
            name: "K = -(e + e')",
            lhs: Side::Class(k),
            rhs: Side::Class(lin(&[(-1, 1, &e), (-1, 1, &ep)])),
        },
        Identity {
            name: "(2e + e')/3 = H",
            lhs: Side::Class(lin(&[(2, 3, &e), (1, 3, &ep)])),
            rhs: Side::Class(h),
        },
        Identity {
            name: "(e + 2e')/3 = 2H - e",
            lhs: Side::Class(lin(&[(1, 3, &e), (2, 3, &ep)])),
            rhs: Side::Class(lin(&[(2, 1, &h), (-1, 1, &e)])),
        },
    ];
    for (i, name) in ["e'1^2 = -1", "e'2^2 = -1", "e'3^2 = -1"].into_iter().enumerate() {
        identities.push(Identity {
            name,
            lhs: Side::Number(lattice.pair(&e_prime[i], &e_prime[i])),
            rhs: n(-1),
        });
    }
    identities.push(Identity {
        name: "K^2 = 6",
        lhs: Side::Number(lattice.pair(&k, &k)),
        rhs: n(6),
    });
    identities.push(Identity {
        name: "e.e' = 6",
        lhs: Side::Number(lattice.pair(&e, &ep)),
        rhs: n(6),
    });
    Ok(TypeIReport {
        lattice,
        e,
        e_prime,
        k,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElement, ProjPoint};

    fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
        ProjPoint::from_ints(a, b, c)
    }

    #[test]
    fn classification_examples() {
        let z = LengthThreeScheme::reduced([pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]).unwrap();
        assert_eq!(classify_base_scheme(&InvolutionBaseScheme::new(z)), Ok(InvolutionType::I));
        let z = LengthThreeScheme::double_plus_one(pt(0, 0, 1), pt(0, 1, 0), pt(1, 0, 0)).unwrap();
        assert_eq!(classify_base_scheme(&InvolutionBaseScheme::new(z)), Ok(InvolutionType::II));
        let z = LengthThreeScheme::reduced([pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0)]).unwrap();
        assert!(matches!(
            classify_base_scheme(&InvolutionBaseScheme::new(z)),
            Err(Error::NotInvolutionBase(_))
        ));
    }

    #[test]
    fn generators_checked_against_length() {
        let v = |a, b, c| [FieldElement::from_int(a), FieldElement::from_int(b), FieldElement::from_int(c)];
        let z = LengthThreeScheme::curvilinear(v(0, 0, 1), v(0, 1, 0), v(1, 0, 0)).unwrap();
        let net: Vec<Form> = ["x^2", "x*y", "y^2 - x*z"].iter().map(|s| s.parse().unwrap()).collect();
        let b = InvolutionBaseScheme::with_generators(z.clone(), net).unwrap();
        assert_eq!(classify_base_scheme(&b), Ok(InvolutionType::III));
        let wrong: Vec<Form> = ["x^2", "x*y", "y^2 - z^2"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(InvolutionBaseScheme::with_generators(z, wrong).is_err());
    }

    #[test]
    fn type1_identities() {
        let r = type1_lattice_verify(&[pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.lattice.format(&r.k), "-3*H + e1 + e2 + e3");
        assert_eq!(r.lattice.format(&r.e_prime[0]), "H - e2 - e3");
        let k2 = r.identities.iter().find(|i| i.name == "K^2 = 6").unwrap();
        assert_eq!(k2.lhs, Side::Number(Rational64::from_integer(6)));
        assert!(type1_lattice_verify(&[pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0)]).is_err());
    }
}
