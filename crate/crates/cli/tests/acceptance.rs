//! Acceptance suite: one line per criterion; exits nonzero if any failed.
//! Runs without the libtest harness so the lines are never captured.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use quintic_cli::{run, Options, Request, Response, Status};
use quintic_core::algebra::{FieldElement, Form, Matrix, ProjPoint};
use quintic_core::conics::{has_rational_point, parametrize, QuadraticForm};
use quintic_core::involutions::{classify_base_scheme, type1_lattice_verify, InvolutionBaseScheme, InvolutionType};
use quintic_core::scheme::{collinear, LengthThreeScheme};
use quintic_core::vsp::{
    apolar_check, apolar_decompose, incidence_locus, is_special_line, trisecant_line, veronese_pullback,
    veronese_square, w_basis,
};

fn call(command: &str, payload: Value) -> Response {
    run(&Request::new(command, payload), &Options::default())
}

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
    ProjPoint::from_ints(a, b, c)
}

fn diag(a: i64, b: i64, c: i64) -> QuadraticForm {
    QuadraticForm::diagonal(fe(a), fe(b), fe(c)).unwrap()
}

fn gram_json(rows: [[&str; 3]; 3]) -> Value {
    json!(rows)
}

const CIRCLE: [[&str; 3]; 3] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]];
const SPHERE: [[&str; 3]; 3] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]];

fn random_point(rng: &mut ChaCha8Rng, r: i64) -> ProjPoint {
    loop {
        let v = [rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)];
        if v != [0, 0, 0] {
            return pt(v[0], v[1], v[2]);
        }
    }
}

fn random_triple(rng: &mut ChaCha8Rng) -> [ProjPoint; 3] {
    loop {
        let t = [random_point(rng, 9), random_point(rng, 9), random_point(rng, 9)];
        if !collinear(&t) {
            return t;
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_rows(
            (0..3).map(|_| (0..3).map(|_| fe(rng.gen_range(-5..=5))).collect()).collect(),
        )
        .unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

fn random_smooth_rational(rng: &mut ChaCha8Rng) -> QuadraticForm {
    loop {
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in i..3 {
                let q = FieldElement::ratio(rng.gen_range(-100..=100), rng.gen_range(1..=100));
                m[(i, j)] = q.clone();
                m[(j, i)] = q;
            }
        }
        let f = QuadraticForm::new(m).unwrap();
        if f.is_smooth() {
            return f;
        }
    }
}

fn sum_of_squares(pts: &[ProjPoint; 3], lambda: [i64; 3]) -> QuadraticForm {
    let mut acc = Form::zero();
    for (p, c) in pts.iter().zip(lambda) {
        let l = Form::linear(p.coords());
        acc = acc.add(&l.mul(&l).scale(&fe(c)));
    }
    QuadraticForm::from_form(&acc).unwrap()
}

fn criterion_1() {
    let r = call("chow sarkisov", json!({}));
    assert_eq!(r.status, Status::Ok);
    let res = &r.result;
    for (k, v) in [("K3", "-32"), ("K2G", "4"), ("KG2", "2"), ("G3", "-2"), ("KY3", "-40"), ("H3", "5")] {
        assert_eq!(res[k], json!(v), "{k}");
    }
}

fn criterion_2() {
    let r = call("chow quadric-link", json!({}));
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.result["Z_prime"], json!("q*H - 2E"));
    assert_eq!(r.result["Z_pushforward"], json!("H"));
    assert_eq!(r.result["minus_K_Y"], json!("2H"));
    assert!(r.certificate.as_array().unwrap().iter().all(|c| c["holds"] == json!(true)));
}

fn squarefree(n: i64) -> bool {
    let m = n.abs();
    (2..=m).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn holzer_search(a: i64, b: i64, c: i64) -> bool {
    let isqrt = |n: i64| (n as f64).sqrt().floor() as i64 + 1;
    let (bx, by, bz) = (isqrt((b * c).abs()), isqrt((a * c).abs()), isqrt((a * b).abs()));
    (0..=bx).any(|x| (0..=by).any(|y| (0..=bz).any(|z| (x, y, z) != (0, 0, 0) && a * x * x + b * y * y + c * z * z == 0)))
}

fn criterion_3() {
    let vals: Vec<i64> = (-20..=20).filter(|&n| n != 0 && squarefree(n)).collect();
    let mut count = 0;
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                if gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1 {
                    continue;
                }
                let f = diag(a, b, c);
                let cert = has_rational_point(&f).unwrap();
                assert_eq!(cert.is_solvable(), holzer_search(a, b, c), "({a}, {b}, {c})");
                if let Some(w) = cert.witness() {
                    assert!(f.eval(w.coords()).is_zero());
                }
                count += 1;
            }
        }
    }
    assert!(count > 1000);
}

fn criterion_4() {
    let r = call("vsp cylinders", json!({ "gram": gram_json(CIRCLE) }));
    assert_eq!((r.status, &r.result["A2"], &r.result["A3"]), (Status::Ok, &json!(true), &json!(true)));
    let w = quintic_cli::json::point(&r.result["witness"], "").unwrap();
    assert!(is_special_line(&diag(1, 1, -1), &w).unwrap());
    assert_eq!(r.certificate["dual_value"], json!("0"));

    let r = call("vsp cylinders", json!({ "gram": gram_json(SPHERE) }));
    assert_eq!((r.status, &r.result["A2"], &r.result["A3"]), (Status::Ok, &json!(true), &json!(false)));
    assert_eq!(r.certificate["kind"], json!("definite"));

    let st = json!({ "gram": [["1", "0", "0"], ["0", "s", "0"], ["0", "0", "t"]] });
    let r = call("vsp cylinders", st.clone());
    assert_eq!(r.status, Status::Unsupported);
    assert_eq!(r.exit_code(), 3);
    let mut bogus = st;
    bogus["witness"] = json!(["1", "0", "0"]);
    let r = call("vsp cylinders", bogus);
    assert_eq!(r.status, Status::Error);
    assert_eq!(r.error.unwrap().pointer, "/witness");
}

fn criterion_5() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let f = random_smooth_rational(&mut rng);
        let d = apolar_decompose(&f).unwrap();
        assert!(d.verify(&f));
        let check = apolar_check(&f, &d.scheme()).unwrap();
        assert!(check.apolar);
        // λ relative to the normalized points reconstructs f
        let LengthThreeScheme::Reduced(pts) = d.scheme() else { unreachable!() };
        let lambda = check.lambda.unwrap();
        let mut acc = Form::zero();
        for (p, c) in pts.iter().zip(&lambda) {
            let l = Form::linear(p.coords());
            acc = acc.add(&l.mul(&l).scale(c));
        }
        assert_eq!(acc, f.to_form());
    }
}

fn criterion_6() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let pts = random_triple(&mut rng);
        let mut lambda = [0i64; 3];
        for l in &mut lambda {
            while *l == 0 {
                *l = rng.gen_range(-9..=9);
            }
        }
        let f = sum_of_squares(&pts, lambda);
        let z = LengthThreeScheme::reduced(pts.clone()).unwrap();
        let basis = w_basis(&f);
        let images: Vec<Vec<FieldElement>> =
            pts.iter().map(|p| basis.mul_vec(veronese_square(p).coords()).unwrap()).collect();
        assert_eq!(Matrix::from_rows(images).unwrap().rank(), 2);
        let line = trisecant_line(&f, &z).unwrap();
        let pb = veronese_pullback(&f, &line).unwrap();
        assert_eq!((pb.length_d3, pb.length), (3, 3));
        for p in &pts {
            assert!(pb.conics.iter().all(|c| c.eval(p.coords()).is_zero()));
        }
    }
}

fn criterion_7() {
    let scheme_call = |scheme: Value| call("vsp stratum", json!({ "gram": gram_json(CIRCLE), "scheme": scheme }));
    let o = scheme_call(json!({"type": "reduced", "points": [["1","0","0"], ["0","1","0"], ["0","0","1"]]}));
    assert_eq!(o.result["stratum"], json!("O"));
    let s2 = scheme_call(json!({"type": "double_plus_one", "double": ["1","0","1"], "direction": ["1","0","-1"], "simple": ["0","1","0"]}));
    assert_eq!(s2.result["stratum"], json!("S2"));
    let c6 = scheme_call(json!({"type": "curvilinear", "point": ["1","0","1"], "tangent": ["0","1","0"], "second": ["1/2","0","-1/2"]}));
    assert_eq!(c6.result["stratum"], json!("C6"));
    let out = scheme_call(json!({"type": "reduced", "points": [["1","0","1"], ["0","1","0"], ["1","0","0"]]}));
    assert_eq!(out.status, Status::Error);
    assert_eq!(out.error.unwrap().code, "outside_trichotomy");
}

fn criterion_8() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let forms: Vec<QuadraticForm> = (0..10)
        .map(|_| {
            // mix forms with and without rational special lines
            let g = random_invertible(&mut rng);
            let base = if rng.gen_bool(0.5) { diag(1, 1, -1) } else { diag(1, 2, -7) };
            QuadraticForm::new(g.transpose().mul(base.gram()).unwrap().mul(&g).unwrap()).unwrap()
        })
        .collect();
    let mut special = 0;
    for i in 0..200 {
        let f = &forms[i % forms.len()];
        let x = if i % 4 == 0 {
            // a point of Q* when one exists, so both sides of the biconditional occur
            has_rational_point(&f.dual()).unwrap().witness().cloned().unwrap_or_else(|| random_point(&mut rng, 6))
        } else {
            random_point(&mut rng, 6)
        };
        let on_polar = x.incident(&incidence_locus(f, &x).unwrap());
        let sp = is_special_line(f, &x).unwrap();
        assert_eq!(on_polar, sp);
        special += sp as usize;
    }
    assert!(special > 0);

    let g = random_invertible(&mut rng);
    let f = QuadraticForm::new(g.transpose().mul(diag(1, 1, -1).gram()).unwrap().mul(&g).unwrap()).unwrap();
    let dual = f.dual();
    let start = has_rational_point(&dual).unwrap().witness().cloned().unwrap();
    let par = parametrize(&dual, &start).unwrap();
    let mut pairs = 0;
    let mut k = 1i64;
    while pairs < 50 {
        let x = par.eval(&fe(k), &fe(k + 1)).unwrap();
        let y = par.eval(&fe(-2 * k + 1), &fe(k + 3)).unwrap();
        k += 1;
        if x == y {
            continue;
        }
        assert!(is_special_line(&f, &x).unwrap() && is_special_line(&f, &y).unwrap());
        assert!(!y.incident(&incidence_locus(&f, &x).unwrap()));
        assert!(!x.incident(&incidence_locus(&f, &y).unwrap()));
        pairs += 1;
    }
}

fn criterion_9() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let pts = random_triple(&mut rng);
        let r = type1_lattice_verify(&pts).unwrap();
        for name in ["K = -(e + e')", "e' = 3H - 2e", "(2e + e')/3 = H"] {
            assert!(r.identities.iter().any(|i| i.name == name && i.holds()), "{name}");
        }
    }
    let v = |a, b, c| [fe(a), fe(b), fe(c)];
    let models = [
        (LengthThreeScheme::reduced([pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]).unwrap(), InvolutionType::I),
        (LengthThreeScheme::double_plus_one(pt(0, 0, 1), pt(0, 1, 0), pt(1, 0, 0)).unwrap(), InvolutionType::II),
        (LengthThreeScheme::curvilinear(v(0, 0, 1), v(0, 1, 0), v(1, 0, 0)).unwrap(), InvolutionType::III),
    ];
    for i in 0..50 {
        let (z, ty) = &models[i % 3];
        let g = random_invertible(&mut rng);
        let moved = z.transform(&g).unwrap();
        assert_eq!(classify_base_scheme(&InvolutionBaseScheme::new(moved)).unwrap(), *ty);
    }
}

fn criterion_10() {
    let r = call(
        "conic descend",
        json!({ "gram": [["1","0","0"],["0","1","0"],["0","0","-3"]], "point": ["1", "sqrt(2)", "1"] }),
    );
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.result["point"], json!(["3", "0", "1"]));
    let p = quintic_cli::json::point(&r.result["point"], "").unwrap();
    assert!(p.is_rational());
    assert_eq!(p.conjugate(), p);
    assert!(!diag(1, 1, -3).eval(p.coords()).is_zero());
}

fn main() {
    let criteria: [(&str, fn(), Duration); 10] = [
        ("sarkisov numerology", criterion_1, Duration::from_secs(1)),
        ("quadric-link divisibility", criterion_2, Duration::from_secs(1)),
        ("conic decision vs Holzer search", criterion_3, Duration::from_secs(60)),
        ("cylinder decision", criterion_4, Duration::from_secs(3)),
        ("apolarity round-trip", criterion_5, Duration::from_secs(60)),
        ("trisecant property suite", criterion_6, Duration::from_secs(60)),
        ("stratum classification", criterion_7, Duration::from_secs(60)),
        ("special-line invariants", criterion_8, Duration::from_secs(60)),
        ("type I lattice and invariance", criterion_9, Duration::from_secs(60)),
        ("tangent descent", criterion_10, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= *budget => "PASS".to_string(),
            Ok(()) => format!("FAIL (took {elapsed:.2?}, budget {budget:?})"),
            Err(_) => "FAIL".to_string(),
        };
        println!("criterion {:>2} {name}: {verdict} [{elapsed:.2?}]", i + 1);
        if verdict != "PASS" {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
