//! JSON encoding of library values. Keys come out sorted because `serde_json::Map` is a `BTreeMap`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::bundle::{EBundleClass, FormalBundle};
use crate::error::Error;
use crate::lattice::{LatticeClass, SurfaceModel};
use crate::poly::{format_rational, UniPoly};

/// Largest integer a double represents exactly.
pub const SAFE_INT: i64 = (1 << 53) - 1;

pub fn int(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) if (-SAFE_INT..=SAFE_INT).contains(&x) => json!(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn int64(v: i64) -> Value {
    int(&BigInt::from(v))
}

pub fn rational(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

pub fn coeffs(c: &LatticeClass) -> Value {
    Value::Array(c.coeffs().iter().map(int).collect())
}

pub fn class(c: &LatticeClass) -> Value {
    json!({ "basis": c.basis().id(), "coeffs": coeffs(c) })
}

/// Classes as sorted coefficient arrays.
pub fn class_list<'a>(classes: impl IntoIterator<Item = &'a LatticeClass>) -> Value {
    let mut v: Vec<&LatticeClass> = classes.into_iter().collect();
    v.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Value::Array(v.into_iter().map(coeffs).collect())
}

pub fn poly(p: &UniPoly) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(rational).collect::<Vec<_>>(),
        "display": p.display("t"),
    })
}

pub fn ebundle(e: &EBundleClass) -> Value {
    json!({
        "N": e.order,
        "points": e.entries.iter().map(|x| json!({
            "p": x.point.value(),
            "mult": x.mult,
            "regular": x.regular,
        })).collect::<Vec<_>>(),
    })
}

pub fn formal_bundle(model: &SurfaceModel, b: &FormalBundle) -> Value {
    let summands: Vec<Value> = b
        .summands()
        .iter()
        .map(|s| {
            let deg = crate::bundle::boundary_degree(model, &s.class).map(|d| int(&d)).unwrap_or(Value::Null);
            json!({
                "class": coeffs(&s.class),
                "label": s.class.pretty(),
                "ext_group": s.ext_group,
                "boundary_degree": deg,
            })
        })
        .collect();
    json!({
        "basis": b.kind().id(),
        "rank": b.rank(),
        "c1": coeffs(&b.c1()),
        "summands": summands,
    })
}

pub fn error(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(int64(SAFE_INT), json!(SAFE_INT));
        assert_eq!(int64(-SAFE_INT), json!(-SAFE_INT));
        assert_eq!(int64(SAFE_INT + 1), json!("9007199254740992"));
        let big = BigInt::from(10).pow(30);
        assert_eq!(int(&big), json!("1000000000000000000000000000000"));
    }

    #[test]
    fn rationals_are_strings() {
        let r = BigRational::new(3.into(), (-6).into());
        assert_eq!(rational(&r), json!("-1/2"));
        assert_eq!(rational(&BigRational::from_integer(4.into())), json!("4"));
    }
}
