//! Payload decoding with JSON-pointer error paths, and result encoding.

use serde_json::{json, Map, Value};

use quintic_core::algebra::{FieldElement, Form, Matrix, ProjPoint};
use quintic_core::conics::QuadraticForm;
use quintic_core::scheme::LengthThreeScheme;
use quintic_core::Error;

/// A failed request: where in the payload, and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fail {
    pub code: String,
    pub pointer: String,
    pub message: String,
    pub unsupported: bool,
}

impl Fail {
    pub fn schema(pointer: &str, message: impl Into<String>) -> Self {
        Fail {
            code: "schema".into(),
            pointer: pointer.into(),
            message: message.into(),
            unsupported: false,
        }
    }

    pub fn from_error(pointer: &str, e: Error) -> Self {
        Fail {
            code: e.code().into(),
            pointer: pointer.into(),
            message: e.to_string(),
            unsupported: matches!(e, Error::Unsupported(_) | Error::SearchBound(_)),
        }
    }
}

pub type Res<T> = Result<T, Fail>;

/// Attaches a pointer to a core error.
pub fn at<T>(pointer: &str, r: Result<T, Error>) -> Res<T> {
    r.map_err(|e| Fail::from_error(pointer, e))
}

fn join(ptr: &str, key: impl std::fmt::Display) -> String {
    format!("{ptr}/{key}")
}

pub fn field<'a>(obj: &'a Value, ptr: &str, key: &str) -> Res<&'a Value> {
    obj.get(key).ok_or_else(|| Fail::schema(&join(ptr, key), format!("missing field \"{key}\"")))
}

pub fn array<'a>(v: &'a Value, ptr: &str, len: Option<usize>) -> Res<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| Fail::schema(ptr, "expected an array"))?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(Fail::schema(ptr, format!("expected {n} entries, got {}", a.len())));
        }
    }
    Ok(a)
}

pub fn scalar(v: &Value, ptr: &str) -> Res<FieldElement> {
    match v {
        Value::String(s) => at(ptr, s.parse()),
        Value::Number(n) => n
            .as_i64()
            .map(FieldElement::from_int)
            .ok_or_else(|| Fail::schema(ptr, "numbers must be integers; write fractions as strings")),
        _ => Err(Fail::schema(ptr, "expected a string or integer")),
    }
}

pub fn integer(v: &Value, ptr: &str) -> Res<i64> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| Fail::schema(ptr, "expected an integer")),
        Value::String(s) => s.trim().parse().map_err(|_| Fail::schema(ptr, "expected an integer")),
        _ => Err(Fail::schema(ptr, "expected an integer")),
    }
}

pub fn vector3(v: &Value, ptr: &str) -> Res<[FieldElement; 3]> {
    let a = array(v, ptr, Some(3))?;
    Ok([
        scalar(&a[0], &join(ptr, 0))?,
        scalar(&a[1], &join(ptr, 1))?,
        scalar(&a[2], &join(ptr, 2))?,
    ])
}

pub fn point(v: &Value, ptr: &str) -> Res<ProjPoint> {
    at(ptr, ProjPoint::new(vector3(v, ptr)?))
}

pub fn point_field(obj: &Value, key: &str) -> Res<ProjPoint> {
    point(field(obj, "", key)?, &join("", key))
}

/// The quadratic form of a payload: `"gram"` (3×3) or `"form"` (a string).
pub fn quadratic_form(obj: &Value) -> Res<QuadraticForm> {
    if let Some(g) = obj.get("gram") {
        let rows = array(g, "/gram", Some(3))?;
        let mut m = Vec::with_capacity(3);
        for (i, r) in rows.iter().enumerate() {
            let p = join("/gram", i);
            let entries = array(r, &p, Some(3))?;
            let mut row = Vec::with_capacity(3);
            for (j, e) in entries.iter().enumerate() {
                row.push(scalar(e, &join(&p, j))?);
            }
            m.push(row);
        }
        let m = at("/gram", Matrix::from_rows(m))?;
        return at("/gram", QuadraticForm::new(m));
    }
    if let Some(f) = obj.get("form") {
        let s = f.as_str().ok_or_else(|| Fail::schema("/form", "expected a string"))?;
        let form: Form = at("/form", s.parse())?;
        return at("/form", QuadraticForm::from_form(&form));
    }
    Err(Fail::schema("/gram", "missing field \"gram\" (or \"form\")"))
}

pub fn forms(v: &Value, ptr: &str) -> Res<Vec<Form>> {
    let a = array(v, ptr, None)?;
    a.iter()
        .enumerate()
        .map(|(i, s)| {
            let p = join(ptr, i);
            let s = s.as_str().ok_or_else(|| Fail::schema(&p, "expected a string"))?;
            at(&p, s.parse())
        })
        .collect()
}

/// `{"type": "reduced", "points": [p, p, p]}`,
/// `{"type": "double_plus_one", "double": p, "direction": p, "simple": p}` or
/// `{"type": "curvilinear", "point": v, "tangent": v, "second": v}`.
pub fn scheme(v: &Value, ptr: &str) -> Res<LengthThreeScheme> {
    let ty = field(v, ptr, "type")?
        .as_str()
        .ok_or_else(|| Fail::schema(&join(ptr, "type"), "expected a string"))?;
    let sub = |k: &str| -> Res<ProjPoint> { point(field(v, ptr, k)?, &join(ptr, k)) };
    let vec = |k: &str| -> Res<[FieldElement; 3]> { vector3(field(v, ptr, k)?, &join(ptr, k)) };
    match ty {
        "reduced" => {
            let pp = join(ptr, "points");
            let a = array(field(v, ptr, "points")?, &pp, Some(3))?;
            let pts = [point(&a[0], &join(&pp, 0))?, point(&a[1], &join(&pp, 1))?, point(&a[2], &join(&pp, 2))?];
            at(ptr, LengthThreeScheme::reduced(pts))
        }
        "double_plus_one" => at(ptr, LengthThreeScheme::double_plus_one(sub("double")?, sub("direction")?, sub("simple")?)),
        "curvilinear" => at(ptr, LengthThreeScheme::curvilinear(vec("point")?, vec("tangent")?, vec("second")?)),
        other => Err(Fail::schema(&join(ptr, "type"), format!("unknown scheme type \"{other}\""))),
    }
}

pub fn s(x: &impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn enc_vec<'a>(v: impl IntoIterator<Item = &'a FieldElement>) -> Value {
    Value::Array(v.into_iter().map(s).collect())
}

pub fn enc_point(p: &ProjPoint) -> Value {
    enc_vec(p.coords())
}

pub fn enc_matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| enc_vec(r)).collect())
}

pub fn enc_scheme(z: &LengthThreeScheme) -> Value {
    match z {
        LengthThreeScheme::Reduced(p) => json!({"type": "reduced", "points": p.iter().map(enc_point).collect::<Vec<_>>()}),
        LengthThreeScheme::DoublePlusOne {
            double,
            direction,
            simple,
        } => json!({
            "type": "double_plus_one",
            "double": enc_point(double),
            "direction": enc_point(direction),
            "simple": enc_point(simple),
        }),
        LengthThreeScheme::Curvilinear { point, tangent, second } => json!({
            "type": "curvilinear",
            "point": enc_vec(point),
            "tangent": enc_vec(tangent),
            "second": enc_vec(second),
        }),
    }
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
