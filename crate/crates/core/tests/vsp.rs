use proptest::prelude::*;
use quintic_core::algebra::{FieldElement, Form, Matrix, ProjPoint};
use quintic_core::conics::{has_rational_point, parametrize, QuadraticForm};
use quintic_core::scheme::{collinear, LengthThreeScheme};
use quintic_core::vsp::{
    apolar_check, apolar_decompose, decide_cylinders, incidence_locus, is_special_line, trisecant_line,
    veronese_pullback, veronese_square, w_basis, PlueckerLine, Sym2Vector,
};
use quintic_core::Error;

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
    ProjPoint::from_ints(a, b, c)
}

fn diag(a: i64, b: i64, c: i64) -> QuadraticForm {
    QuadraticForm::diagonal(fe(a), fe(b), fe(c)).unwrap()
}

fn xyz() -> LengthThreeScheme {
    LengthThreeScheme::reduced([pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]).unwrap()
}

fn project(basis: &Matrix, p: &ProjPoint) -> Vec<FieldElement> {
    basis.mul_vec(veronese_square(p).coords()).unwrap()
}

#[test]
fn w_basis_for_sum_of_squares() {
    let b = w_basis(&diag(1, 1, 1));
    let expect = Matrix::from_ints(&[
        [1, -1, 0, 0, 0, 0],
        [0, 1, -1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]);
    assert_eq!(b, expect);
    let ints = |v: Vec<FieldElement>| v.into_iter().map(|c| c.to_string()).collect::<Vec<_>>();
    assert_eq!(ints(project(&b, &pt(1, 0, 0))), ["1", "0", "0", "0", "0"]);
    assert_eq!(ints(project(&b, &pt(0, 1, 0))), ["-1", "1", "0", "0", "0"]);
    assert_eq!(ints(project(&b, &pt(0, 0, 1))), ["0", "-1", "0", "0", "0"]);
}

#[test]
fn trisecant_examples() {
    let l = trisecant_line(&diag(1, 1, 1), &xyz()).unwrap();
    assert!(l.satisfies_relations());
    // images (1,0,0,0,0) and (-1,1,0,0,0): only p01 survives
    let mut expect = vec![fe(0); 10];
    expect[0] = fe(1);
    assert_eq!(l.coords().to_vec(), expect);

    let l = trisecant_line(&diag(1, 1, -1), &xyz()).unwrap();
    assert!(l.satisfies_relations());

    let bad = LengthThreeScheme::reduced([pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0)]).unwrap();
    assert_eq!(trisecant_line(&diag(1, 1, 1), &bad), Err(Error::NotApolar));
}

#[test]
fn pullback_of_coordinate_triangle() {
    let f = diag(1, 1, 1);
    let l = trisecant_line(&f, &xyz()).unwrap();
    let pb = veronese_pullback(&f, &l).unwrap();
    let got: Vec<String> = pb.conics.iter().map(ToString::to_string).collect();
    assert_eq!(got, ["y*z", "x*z", "x*y"]);
    assert_eq!(pb.length, 3);
    assert!(pb.is_trisecant());
    for p in [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)] {
        assert!(pb.conics.iter().all(|c| c.eval(p.coords()).is_zero()));
    }
}

#[test]
fn pullback_of_general_line_is_not_trisecant() {
    let f = diag(1, 1, 1);
    let basis = w_basis(&f);
    let q1: Form = "x^2 + 2*x*y - 3*y*z".parse().unwrap();
    let q2: Form = "y^2 + 5*x*z + 7*z^2".parse().unwrap();
    let img = |q: &Form| {
        let s = Sym2Vector::from_gram(QuadraticForm::from_form(q).unwrap().gram());
        basis.mul_vec(s.coords()).unwrap()
    };
    let l = PlueckerLine::through(&img(&q1), &img(&q2), basis.clone()).unwrap();
    let pb = veronese_pullback(&f, &l).unwrap();
    assert!(!pb.is_trisecant());
    assert_eq!(pb.length, 0);
}

#[test]
fn pluecker_rejects_non_decomposable() {
    let basis = w_basis(&diag(1, 1, 1));
    let mut c = vec![fe(0); 10];
    c[0] = fe(1); // p01
    c[7] = fe(1); // p23
    let coords: [FieldElement; 10] = c.try_into().unwrap();
    assert!(PlueckerLine::new(coords, basis).is_err());
}

fn small_point() -> impl Strategy<Value = ProjPoint> {
    prop::array::uniform3(-5i64..=5)
        .prop_filter("nonzero", |v| v != &[0, 0, 0])
        .prop_map(|v| pt(v[0], v[1], v[2]))
}

fn independent_triple() -> impl Strategy<Value = [ProjPoint; 3]> {
    prop::array::uniform3(small_point()).prop_filter("independent", |p| !collinear(p))
}

fn nonzero() -> impl Strategy<Value = i64> {
    (-6i64..=6).prop_filter("nonzero", |&n| n != 0)
}

fn sum_of_squares(pts: &[ProjPoint; 3], lambda: &[i64; 3]) -> QuadraticForm {
    let mut acc = Form::zero();
    for (p, &c) in pts.iter().zip(lambda) {
        let l = Form::linear(p.coords());
        acc = acc.add(&l.mul(&l).scale(&fe(c)));
    }
    QuadraticForm::from_form(&acc).unwrap()
}

fn symmetric() -> impl Strategy<Value = QuadraticForm> {
    prop::array::uniform6(-6i64..=6)
        .prop_map(|e| QuadraticForm::from_ints([[e[0], e[3], e[4]], [e[3], e[1], e[5]], [e[4], e[5], e[2]]]).unwrap())
        .prop_filter("smooth", QuadraticForm::is_smooth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decomposition_is_apolar(f in symmetric()) {
        let d = apolar_decompose(&f).unwrap();
        prop_assert!(d.verify(&f));
        prop_assert!(d.lambda.iter().all(|c| !c.is_zero()));
        prop_assert!(apolar_check(&f, &d.scheme()).unwrap().apolar);
    }

    #[test]
    fn apolar_triples_are_trisecant(pts in independent_triple(), lambda in prop::array::uniform3(nonzero())) {
        let f = sum_of_squares(&pts, &lambda);
        let z = LengthThreeScheme::reduced(pts.clone()).unwrap();
        let check = apolar_check(&f, &z).unwrap();
        prop_assert!(check.apolar);
        prop_assert!(!collinear(&pts));
        let basis = w_basis(&f);
        let images: Vec<_> = pts.iter().map(|p| project(&basis, p)).collect();
        prop_assert_eq!(Matrix::from_rows(images).unwrap().rank(), 2);
        let line = trisecant_line(&f, &z).unwrap();
        prop_assert!(line.satisfies_relations());
        let pb = veronese_pullback(&f, &line).unwrap();
        prop_assert!(pb.is_trisecant());
        for p in &pts {
            prop_assert!(pb.conics.iter().all(|c| c.eval(p.coords()).is_zero()));
        }
        for p in &pts {
            prop_assert!(!is_special_line(&f, p).unwrap());
        }
    }

    #[test]
    fn self_incidence_iff_special(f in symmetric(), x in small_point()) {
        let l = incidence_locus(&f, &x).unwrap();
        prop_assert_eq!(x.incident(&l), is_special_line(&f, &x).unwrap());
    }

    #[test]
    fn special_lines_are_disjoint(pts in independent_triple(), signs in prop::array::uniform2(nonzero())) {
        // f = ℓ₁² + a ℓ₂² − a ℓ₃² is isotropic, so Q* has rational points
        let f = sum_of_squares(&pts, &[signs[0], signs[1], -signs[1]]);
        let dual = f.dual();
        let start = has_rational_point(&dual).unwrap().witness().cloned().unwrap();
        let par = parametrize(&dual, &start).unwrap();
        let specials: Vec<ProjPoint> = [(0, 1), (1, 0), (1, 1), (1, -1), (2, 3)]
            .iter()
            .map(|&(t, u)| par.eval(&fe(t), &fe(u)).unwrap())
            .collect();
        for x in &specials {
            prop_assert!(is_special_line(&f, x).unwrap());
            let l = incidence_locus(&f, x).unwrap();
            for y in &specials {
                if x != y {
                    prop_assert!(!y.incident(&l));
                }
            }
        }
    }

    #[test]
    fn cylinder_flag_matches_point_decision(f in symmetric()) {
        let report = decide_cylinders(&f).unwrap();
        prop_assert!(report.a2);
        prop_assert_eq!(report.has_a3(), has_rational_point(&f).unwrap().is_solvable());
    }
}
