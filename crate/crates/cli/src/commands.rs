//! One handler per subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use quintic_core::algebra::{FieldElement, Form};
use quintic_core::chow::{pbundle_intersection, quadric_link_divisors, sarkisov_numerology, ChowClass};
use quintic_core::conics::{
    conic_invariants, descend_rational_point, has_rational_point_with_limit, parametrize, polar_line, Obstruction,
    PointCertificate,
};
use quintic_core::involutions::{classify_base_scheme, type1_lattice_verify, InvolutionBaseScheme, Side};
use quintic_core::scheme::LengthThreeScheme;
use quintic_core::vsp::{
    apolar_check, apolar_decompose, decide_cylinders_with_limit, hilbert_rational_point_with_limit, incidence_locus,
    is_special_line, stratum_classify, trisecant_line, veronese_pullback, w_basis, A3Decision, PlueckerLine,
    Sym2Vector, W_BASIS_ID,
};
use quintic_core::Error;

use crate::json::*;
use crate::Options;

pub struct Outcome {
    pub result: Value,
    pub certificate: Value,
    pub citation: Option<&'static str>,
}

fn ok(result: Value) -> Res<Outcome> {
    Ok(Outcome {
        result,
        certificate: Value::Null,
        citation: None,
    })
}

const LEGENDRE: &str = "Legendre's theorem: a x^2 + b y^2 + c z^2 = 0 (a, b, c square-free, pairwise coprime) has a \
                        nontrivial rational solution iff a, b, c are not all of one sign and -bc, -ca, -ab are \
                        squares modulo |a|, |b|, |c|; Holzer's bound limits the smallest solution";
const CYLINDERS: &str = "Every form Y of the quintic del Pezzo threefold contains an open A^2-cylinder; Y contains an \
                         A^3-cylinder iff it contains a special line over k, iff the conic Q = V(f) has a k-point";
const STRATA: &str = "VSP(f) = O ∪ S2 ∪ C6: reduced triples off the dual conic Q*, a double point on Q* with a \
                      point on its tangent, and curvilinear triple points along Q*";
const TRISECANT: &str = "VSP(f) is the variety of trisecant lines to the projected Veronese surface in P(W)";
const SPECIAL: &str = "Special lines of VSP(f) are the points of the dual conic Q*; lines meeting the line x are \
                       parametrized by the polar line of x with respect to Q*";
const HILBERT: &str = "The Hilbert scheme of lines of VSP(f) is P(V*); a point of Q* over a quadratic extension \
                       descends to a rational line through the intersection of its conjugate tangents";
const SARKISOV: &str = "Link from P(E) with c1 = -1, c2 = 3: K^3 = -32, K^2.G = 4, K.G^2 = 2, G^3 = -2; after the \
                        flop K_Y^3 = K^3 - 6K^2.G + 12K.G^2 - 8(G+)^3 = -40 and H^3 = 5";
const QUADRIC_LINK: &str = "Projection from a line links Y to a quadric Q with -K_Y ~ q_*(-K_Y~) ~ 2Z";
const TYPE_I: &str = "Type I quadratic involution: K = -(e + e'), H = (2e + e')/3 and the pullback (e + 2e')/3";

fn obstruction_json(o: &Obstruction, reduced: &[impl ToString; 3]) -> Value {
    let reduced: Vec<Value> = reduced.iter().map(s).collect();
    match o {
        Obstruction::Definite { positive } => json!({
            "kind": "definite",
            "sign": if *positive { "positive" } else { "negative" },
            "reduced_coefficients": reduced,
        }),
        Obstruction::NonResidue { prime, index, residue } => json!({
            "kind": "non_residue",
            "prime": s(prime),
            "coefficient_index": index,
            "residue": s(residue),
            "reduced_coefficients": reduced,
        }),
    }
}

pub fn conic_invariants_cmd(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let inv = conic_invariants(&f);
    ok(json!({
        "smooth": inv.smooth,
        "det": s(&inv.det),
        "dual": enc_matrix(inv.dual.gram()),
        "field": s(&f.field()),
    }))
}

pub fn conic_solve(p: &Value, o: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let cert = at("/gram", has_rational_point_with_limit(&f, o.search_limit))?;
    let reduced: Vec<Value> = cert.reduced().iter().map(s).collect();
    Ok(match cert {
        PointCertificate::Solvable { witness, .. } => Outcome {
            result: json!({"solvable": true, "point": enc_point(&witness)}),
            certificate: json!({
                "kind": "rational_point",
                "point": enc_point(&witness),
                "value": s(&f.eval(witness.coords())),
                "reduced_coefficients": reduced,
            }),
            citation: Some(LEGENDRE),
        },
        PointCertificate::Insolvable { obstruction, reduced } => Outcome {
            result: json!({"solvable": false, "point": null}),
            certificate: obstruction_json(&obstruction, &reduced),
            citation: Some(LEGENDRE),
        },
    })
}

pub fn conic_polar(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let u = point_field(p, "point")?;
    let l = at("/point", polar_line(&f, &u))?;
    ok(json!({"line": enc_point(&l), "incident": u.incident(&l)}))
}

pub fn conic_parametrize(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let pt = point_field(p, "point")?;
    let par = at("/point", parametrize(&f, &pt))?;
    ok(json!({
        "components": (0..3).map(|i| par.component_string(i)).collect::<Vec<_>>(),
        "coefficients": par.components.iter().map(|c| enc_vec(c)).collect::<Vec<_>>(),
        "monomials": ["t^2", "t*u", "u^2"],
    }))
}

pub fn conic_descend(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let pt = point_field(p, "point")?;
    let r = at("/point", descend_rational_point(&f, &pt))?;
    Ok(Outcome {
        result: json!({"point": enc_point(&r), "was_rational": pt.is_rational()}),
        certificate: json!({"value": s(&f.eval(r.coords()))}),
        citation: Some(HILBERT),
    })
}

pub fn vsp_decompose(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let d = at("/gram", apolar_decompose(&f))?;
    let forms: Vec<String> = d.forms.iter().map(|l| Form::linear(l).to_string()).collect();
    ok(json!({
        "forms": forms,
        "linear_forms": d.forms.iter().map(|l| enc_vec(l)).collect::<Vec<_>>(),
        "lambda": enc_vec(&d.lambda),
        "scheme": enc_scheme(&d.scheme()),
        "verified": d.verify(&f),
    }))
}

pub fn vsp_apolar_check(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let z = scheme(field(p, "", "scheme")?, "/scheme")?;
    let c = at("/scheme", apolar_check(&f, &z))?;
    ok(json!({
        "apolar": c.apolar,
        "lambda": c.lambda.as_ref().map(|l| enc_vec(l)),
    }))
}

pub fn vsp_stratum(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let z = scheme(field(p, "", "scheme")?, "/scheme")?;
    let st = at("/scheme", stratum_classify(&f, &z))?;
    Ok(Outcome {
        result: json!({"stratum": st.to_string()}),
        certificate: Value::Null,
        citation: Some(STRATA),
    })
}

fn pluecker_json(l: &PlueckerLine) -> Value {
    json!({
        "coords": enc_vec(l.coords()),
        "basis": W_BASIS_ID,
        "basis_rows": enc_matrix(l.basis()),
    })
}

pub fn vsp_trisecant(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let z = scheme(field(p, "", "scheme")?, "/scheme")?;
    let l = at("/scheme", trisecant_line(&f, &z))?;
    Ok(Outcome {
        result: pluecker_json(&l),
        certificate: json!({"relations_hold": l.satisfies_relations()}),
        citation: Some(TRISECANT),
    })
}

fn line_from_payload(f: &quintic_core::conics::QuadraticForm, v: &Value) -> Res<PlueckerLine> {
    let basis_id = field(v, "/line", "basis")?;
    if basis_id.as_str() != Some(W_BASIS_ID) {
        return Err(Fail::schema("/line/basis", format!("unknown basis id; expected \"{W_BASIS_ID}\"")));
    }
    let coords = array(field(v, "/line", "coords")?, "/line/coords", Some(10))?;
    let mut c = Vec::with_capacity(10);
    for (i, e) in coords.iter().enumerate() {
        c.push(scalar(e, &format!("/line/coords/{i}"))?);
    }
    let coords: [FieldElement; 10] = c.try_into().expect("length checked");
    at("/line", PlueckerLine::new(coords, w_basis(f)))
}

fn random_line(f: &quintic_core::conics::QuadraticForm, seed: u64) -> Res<PlueckerLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = w_basis(f);
    loop {
        let mut pick = || -> Vec<FieldElement> {
            let q = Sym2Vector(std::array::from_fn(|_| FieldElement::from_int(rng.gen_range(-9..=9))));
            basis.mul_vec(q.coords()).expect("5x6")
        };
        let (a, b) = (pick(), pick());
        match PlueckerLine::through(&a, &b, basis.clone()) {
            Ok(l) => return Ok(l),
            Err(Error::Degenerate) => continue,
            Err(e) => return Err(Fail::from_error("/line", e)),
        }
    }
}

/// The line comes from `"line"`, from the trisecant of `"scheme"`, or is
/// drawn at random (`"random": true`) from the request or CLI seed.
pub fn vsp_pullback(p: &Value, o: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let line = if let Some(v) = p.get("line") {
        line_from_payload(&f, v)?
    } else if let Some(z) = p.get("scheme") {
        at("/scheme", trisecant_line(&f, &scheme(z, "/scheme")?))?
    } else if p.get("random").and_then(Value::as_bool) == Some(true) {
        let seed = o.seed.ok_or_else(|| Fail::schema("/random", "a random line needs a seed"))?;
        random_line(&f, seed)?
    } else {
        return Err(Fail::schema("/line", "expected \"line\", \"scheme\" or \"random\""));
    };
    let pb = at("/line", veronese_pullback(&f, &line))?;
    Ok(Outcome {
        result: json!({
            "line": pluecker_json(&line),
            "conics": pb.conics.iter().map(s).collect::<Vec<_>>(),
            "length": pb.length,
            "length_d3": pb.length_d3,
            "trisecant": pb.is_trisecant(),
        }),
        certificate: Value::Null,
        citation: Some(TRISECANT),
    })
}

pub fn vsp_special_line(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let x = point_field(p, "point")?;
    let special = at("/point", is_special_line(&f, &x))?;
    Ok(Outcome {
        result: json!({"special": special}),
        certificate: json!({"dual_value": s(&f.dual().eval(x.coords()))}),
        citation: Some(SPECIAL),
    })
}

pub fn vsp_incidence(p: &Value, _: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let x = point_field(p, "point")?;
    let l = at("/point", incidence_locus(&f, &x))?;
    Ok(Outcome {
        result: json!({"line": enc_point(&l), "contains_point": x.incident(&l)}),
        certificate: Value::Null,
        citation: Some(SPECIAL),
    })
}

/// Over ℚ the decision is complete. Over other fields it is unsupported
/// unless a special line is supplied as `"witness"`.
pub fn vsp_cylinders(p: &Value, o: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    at("/gram", f.require_smooth())?;
    if f.field() != quintic_core::algebra::Field::Rationals {
        let Some(w) = p.get("witness") else {
            return Err(Fail::from_error(
                "/gram",
                Error::Unsupported(format!("A3 decision over {} needs a supplied special line", f.field())),
            ));
        };
        let w = point(w, "/witness")?;
        let value = at("/witness", f.dual().eval_point(&w))?;
        if !value.is_zero() {
            return Err(Fail::from_error("/witness", Error::Invalid("witness is not on the dual conic".into())));
        }
        return Ok(Outcome {
            result: json!({"A2": true, "A3": true, "witness": enc_point(&w)}),
            certificate: json!({"kind": "supplied_special_line", "special_line": enc_point(&w), "dual_value": s(&value)}),
            citation: Some(CYLINDERS),
        });
    }
    let r = at("/gram", decide_cylinders_with_limit(&f, o.search_limit))?;
    Ok(match &r.a3 {
        A3Decision::Special { witness, conic_point } => Outcome {
            result: json!({"A2": r.a2, "A3": true, "witness": enc_point(witness)}),
            certificate: json!({
                "kind": "special_line",
                "special_line": enc_point(witness),
                "dual_value": s(&f.dual().eval(witness.coords())),
                "conic_point": enc_point(conic_point),
                "conic_value": s(&f.eval(conic_point.coords())),
            }),
            citation: Some(CYLINDERS),
        },
        A3Decision::NoSpecialLine { obstruction, reduced } => Outcome {
            result: json!({"A2": r.a2, "A3": false, "witness": null}),
            certificate: obstruction_json(obstruction, reduced),
            citation: Some(CYLINDERS),
        },
    })
}

pub fn vsp_hilbert_point(p: &Value, o: &Options) -> Res<Outcome> {
    let f = quadratic_form(p)?;
    let h = at("/gram", hilbert_rational_point_with_limit(&f, o.search_limit))?;
    Ok(Outcome {
        result: json!({
            "point": enc_point(&h.point),
            "special": h.special,
            "quadratic_point": h.quadratic_point.as_ref().map(enc_point),
        }),
        certificate: json!({"dual_value": s(&f.dual().eval(h.point.coords()))}),
        citation: Some(HILBERT),
    })
}

pub fn involution_classify(p: &Value, _: &Options) -> Res<Outcome> {
    let z: LengthThreeScheme = scheme(field(p, "", "scheme")?, "/scheme")?;
    let base = match p.get("generators") {
        Some(g) => at("/generators", InvolutionBaseScheme::with_generators(z, forms(g, "/generators")?))?,
        None => InvolutionBaseScheme::new(z),
    };
    let ty = at("/scheme", classify_base_scheme(&base))?;
    ok(json!({"type": ty.to_string()}))
}

fn side_json(lattice: &quintic_core::involutions::SurfaceLattice, side: &Side) -> Value {
    match side {
        Side::Class(d) => Value::String(lattice.format(d)),
        Side::Number(n) => Value::String(n.to_string()),
    }
}

pub fn involution_verify_type1(p: &Value, _: &Options) -> Res<Outcome> {
    let pts = array(field(p, "", "points")?, "/points", Some(3))?;
    let pts = [
        point(&pts[0], "/points/0")?,
        point(&pts[1], "/points/1")?,
        point(&pts[2], "/points/2")?,
    ];
    let r = at("/points", type1_lattice_verify(&pts))?;
    let ids: Vec<Value> = r
        .identities
        .iter()
        .map(|i| {
            json!({
                "name": i.name,
                "lhs": side_json(&r.lattice, &i.lhs),
                "rhs": side_json(&r.lattice, &i.rhs),
                "holds": i.holds(),
            })
        })
        .collect();
    Ok(Outcome {
        result: json!({
            "all_hold": r.all_hold(),
            "e": r.lattice.format(&r.e),
            "e_prime": r.e_prime.iter().map(|d| r.lattice.format(d)).collect::<Vec<_>>(),
            "K": r.lattice.format(&r.k),
            "identities": ids,
        }),
        certificate: json!({"intersection_form": r.lattice.form, "basis": r.lattice.labels}),
        citation: Some(TYPE_I),
    })
}

pub fn involution_length(p: &Value, _: &Options) -> Res<Outcome> {
    use quintic_core::algebra::scheme_length_from_forms;
    let g = forms(field(p, "", "generators")?, "/generators")?;
    let d3 = at("/generators", scheme_length_from_forms(&g, 3))?;
    let d4 = at("/generators", scheme_length_from_forms(&g, 4))?;
    ok(json!({"length": d4, "length_d3": d3, "stable": d3 == d4}))
}

pub fn chow_triple(p: &Value, _: &Options) -> Res<Outcome> {
    let c1 = integer(field(p, "", "c1")?, "/c1")?;
    let c2 = integer(field(p, "", "c2")?, "/c2")?;
    let cl = array(field(p, "", "classes")?, "/classes", Some(3))?;
    let mut classes = Vec::with_capacity(3);
    for (i, c) in cl.iter().enumerate() {
        let ptr = format!("/classes/{i}");
        let text = c.as_str().ok_or_else(|| Fail::schema(&ptr, "expected a string"))?;
        classes.push(at(&ptr, text.parse::<ChowClass>())?);
    }
    let classes: [ChowClass; 3] = classes.try_into().expect("three classes");
    let v = at("/classes", pbundle_intersection(c1, c2, &classes))?;
    ok(json!({"value": s(&v), "classes": classes.iter().map(s).collect::<Vec<_>>(), "c1": c1, "c2": c2}))
}

pub fn chow_sarkisov(_: &Value, _: &Options) -> Res<Outcome> {
    let n = sarkisov_numerology();
    Ok(Outcome {
        result: json!({
            "K3": s(&n.k3),
            "K2G": s(&n.k2g),
            "KG2": s(&n.kg2),
            "G3": s(&n.g3),
            "Gplus3": s(&n.g_plus3),
            "KY3": s(&n.ky3),
            "H3": s(&n.h3),
        }),
        certificate: json!({
            "c1": -1,
            "c2": 3,
            "K": "-2*xi - 4*A",
            "G": "xi + A",
            "relations": ["A^3 = 0", "xi^2 = c1*xi*A - c2*A^2", "xi*A^2 = 1"],
            "expansion": "KY3 = K3 - 6*K2G + 12*KG2 - 8*Gplus3",
        }),
        citation: Some(SARKISOV),
    })
}

pub fn chow_quadric_link(_: &Value, _: &Options) -> Res<Outcome> {
    let r = quadric_link_divisors();
    Ok(Outcome {
        result: json!({
            "K_tilde": s(&r.k_tilde),
            "pullback_hyperplane": s(&r.pullback_hyperplane),
            "pullback_K_Q": s(&r.pullback_k_q),
            "Z_prime": s(&r.z_prime),
            "Q0_prime": s(&r.q0_prime),
            "Z_pushforward": h_multiple(r.z_pushforward),
            "minus_K_Y": h_multiple(r.minus_k_y),
        }),
        certificate: Value::Array(
            r.identities.iter().map(|(name, holds)| json!({"name": name, "holds": holds})).collect(),
        ),
        citation: Some(QUADRIC_LINK),
    })
}

fn h_multiple(n: i64) -> String {
    match n {
        0 => "0".into(),
        1 => "H".into(),
        -1 => "-H".into(),
        n => format!("{n}H"),
    }
}
