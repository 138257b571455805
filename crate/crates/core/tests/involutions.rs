use proptest::prelude::*;
use quintic_core::algebra::{FieldElement, Form, Matrix, ProjPoint};
use quintic_core::involutions::{classify_base_scheme, type1_lattice_verify, InvolutionBaseScheme, InvolutionType};
use quintic_core::scheme::{collinear, LengthThreeScheme};

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn v(a: i64, b: i64, c: i64) -> [FieldElement; 3] {
    [fe(a), fe(b), fe(c)]
}

fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
    ProjPoint::from_ints(a, b, c)
}

/// `f ∘ g`, i.e. `v ↦ f(g·v)`.
fn compose(f: &Form, g: &Matrix) -> Form {
    let lin: Vec<Form> = (0..3)
        .map(|i| {
            let r = g.row(i);
            Form::linear(&[r[0].clone(), r[1].clone(), r[2].clone()])
        })
        .collect();
    let mut out = Form::zero();
    for (e, c) in f.terms() {
        let mut t = Form::constant(c.clone());
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = t.mul(&lin[i]);
            }
        }
        out = out.add(&t);
    }
    out
}

fn nets() -> Vec<(LengthThreeScheme, Vec<&'static str>, InvolutionType)> {
    vec![
        (
            LengthThreeScheme::reduced([pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]).unwrap(),
            vec!["y*z", "x*z", "x*y"],
            InvolutionType::I,
        ),
        (
            // x = 0 doubled at [0:0:1] along y = 0's direction, plus [0:1:0]
            LengthThreeScheme::double_plus_one(pt(0, 0, 1), pt(1, 0, 0), pt(0, 1, 0)).unwrap(),
            vec!["x^2", "x*y", "y*z"],
            InvolutionType::II,
        ),
        (
            LengthThreeScheme::curvilinear(v(0, 0, 1), v(0, 1, 0), v(1, 0, 0)).unwrap(),
            vec!["x^2", "x*y", "y^2 - x*z"],
            InvolutionType::III,
        ),
    ]
}

#[test]
fn standard_nets_have_length_three() {
    for (z, gens, ty) in nets() {
        let forms: Vec<Form> = gens.iter().map(|s| s.parse().unwrap()).collect();
        let b = InvolutionBaseScheme::with_generators(z, forms).unwrap();
        assert_eq!(classify_base_scheme(&b), Ok(ty));
    }
}

fn invertible() -> impl Strategy<Value = Matrix> {
    prop::array::uniform9(-3i64..=3)
        .prop_map(|e| Matrix::from_ints(&[[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]]))
        .prop_filter("invertible", |m| !m.determinant().unwrap().is_zero())
}

fn triple() -> impl Strategy<Value = [ProjPoint; 3]> {
    prop::array::uniform3(
        prop::array::uniform3(-4i64..=4)
            .prop_filter("nonzero", |v| v != &[0, 0, 0])
            .prop_map(|v| pt(v[0], v[1], v[2])),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_projectively_invariant(g in invertible(), which in 0usize..3) {
        let (z, gens, ty) = nets().swap_remove(which);
        let moved = z.transform(&g).unwrap();
        prop_assert_eq!(classify_base_scheme(&InvolutionBaseScheme::new(moved.clone())), Ok(ty));
        // generators move contravariantly: their zeros are g·Z when composed with g⁻¹
        let ginv = g.inverse().unwrap();
        let forms: Vec<Form> = gens.iter().map(|s| compose(&s.parse().unwrap(), &ginv)).collect();
        let b = InvolutionBaseScheme::with_generators(moved, forms).unwrap();
        prop_assert_eq!(classify_base_scheme(&b), Ok(ty));
    }

    #[test]
    fn type1_identities_hold(pts in triple()) {
        let distinct = pts[0] != pts[1] && pts[0] != pts[2] && pts[1] != pts[2];
        if distinct && !collinear(&pts) {
            let r = type1_lattice_verify(&pts).unwrap();
            prop_assert!(r.all_hold());
            prop_assert!(r.lattice.is_symmetric());
        } else if distinct {
            let z = LengthThreeScheme::reduced(pts.clone()).unwrap();
            prop_assert!(classify_base_scheme(&InvolutionBaseScheme::new(z)).is_err());
            prop_assert!(type1_lattice_verify(&pts).is_err());
        }
    }
}
