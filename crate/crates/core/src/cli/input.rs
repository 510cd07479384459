//! Reading and validating JSON inputs and class expressions.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::bundle::EGroup;
use crate::divisor::CollisionConfig;
use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, ModelKind, SurfaceModel};
use crate::local::{MPoly, Relation, TruncRing, DEFAULT_MAX_DEGREE};
use crate::poly::{parse_rational, UniPoly};
use crate::spectral::CoverPoly;
use crate::transform::SpectralFiberDatum;

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    parse_json(&text)
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
pub fn json_arg(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        parse_json(arg)
    } else {
        read_json(arg)
    }
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    obj.get(key).ok_or_else(|| schema(&join(path, key), "missing required field"))
}

fn reject_unknown(v: &Value, path: &str, allowed: &[&str]) -> Result<()> {
    if let Some(obj) = v.as_object() {
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(schema(&join(path, k), "unknown field"));
        }
    }
    Ok(())
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn as_rational(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(i.into())),
            None => Err(schema(path, "non-integer numbers must be written as \"p/q\" strings")),
        },
        Value::String(s) => parse_rational(s).map_err(|e| schema(path, e.to_string())),
        _ => Err(schema(path, "expected a rational")),
    }
}

/// Integer given as a JSON number or a decimal string.
fn as_bigint(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| schema(path, "expected an integer")),
        Value::String(s) => s.trim().parse().map_err(|_| schema(path, "expected an integer")),
        _ => Err(schema(path, "expected an integer")),
    }
}

pub struct SurfaceConfig {
    pub model: SurfaceModel,
    pub collisions: CollisionConfig,
}

/// `{"kind": ..., "n": ..., "collisions": [[i, j], ...]}`.
pub fn surface_config(v: &Value) -> Result<SurfaceConfig> {
    reject_unknown(v, "", &["kind", "n", "collisions"])?;
    let kind = as_str(field(v, "", "kind")?, "kind")?;
    let n = as_u64(field(v, "", "n")?, "n")? as usize;
    let kind = ModelKind::from_name(kind, n).ok_or_else(|| schema("kind", format!("unknown surface kind `{kind}`")))?;
    let model = SurfaceModel::build(kind)?;
    let mut pairs = Vec::new();
    if let Some(c) = v.get("collisions") {
        for (k, p) in as_array(c, "collisions")?.iter().enumerate() {
            let path = format!("collisions[{k}]");
            let a = as_array(p, &path)?;
            if a.len() != 2 {
                return Err(schema(&path, "expected a pair [i, j]"));
            }
            pairs.push((
                as_u64(&a[0], &format!("{path}[0]"))? as usize,
                as_u64(&a[1], &format!("{path}[1]"))? as usize,
            ));
        }
    }
    let collisions = CollisionConfig::new(&model, &pairs)?;
    Ok(SurfaceConfig { model, collisions })
}

/// `{"N": ..., "points": [...], "degrees": [...], "base_twist_degree": ...}`.
pub fn spectral_datum(v: &Value) -> Result<SpectralFiberDatum> {
    reject_unknown(v, "", &["N", "points", "degrees", "base_twist_degree"])?;
    let n = as_u64(field(v, "", "N")?, "N")?;
    let group = EGroup::new(n).map_err(|_| Error::InvalidDatum("group order N must be positive".into()))?;
    let points = as_array(field(v, "", "points")?, "points")?;
    let degrees = match v.get("degrees") {
        None => vec![1u32; points.len()],
        Some(d) => {
            let d = as_array(d, "degrees")?;
            if d.len() != points.len() {
                return Err(schema("degrees", "must have one entry per point"));
            }
            d.iter()
                .enumerate()
                .map(|(k, x)| {
                    let path = format!("degrees[{k}]");
                    match as_u64(x, &path)? {
                        0 => Err(schema(&path, "sheet degree must be positive")),
                        x => u32::try_from(x).map_err(|_| schema(&path, "sheet degree too large")),
                    }
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let mut sheets = Vec::new();
    for (k, (p, d)) in points.iter().zip(degrees).enumerate() {
        let x = as_bigint(p, &format!("points[{k}]"))?;
        sheets.push((group.point_big(&x), d));
    }
    let twist = match v.get("base_twist_degree") {
        None => 0,
        Some(t) => as_i64(t, "base_twist_degree")?,
    };
    SpectralFiberDatum::with_degrees(group, &sheets, twist)
}

/// `{"n": ..., "coeffs": [[c_00, c_01, ...], ...]}`: coefficients of `u^0 .. u^{n-1}` as
/// polynomials in `t`, low degree first; a trailing `[1]` for `u^n` is accepted.
pub fn cover(v: &Value) -> Result<CoverPoly> {
    reject_unknown(v, "", &["n", "coeffs"])?;
    let n = as_u64(field(v, "", "n")?, "n")? as usize;
    let rows = as_array(field(v, "", "coeffs")?, "coeffs")?;
    let mut polys = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let path = format!("coeffs[{i}]");
        let cs = as_array(row, &path)?
            .iter()
            .enumerate()
            .map(|(j, c)| as_rational(c, &format!("{path}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        polys.push(UniPoly::new(cs));
    }
    if polys.len() == n + 1 {
        CoverPoly::from_full(polys)
    } else if polys.len() == n {
        CoverPoly::new(polys)
    } else {
        Err(schema("coeffs", format!("expected {n} coefficient rows for n = {n}")))
    }
}

/// `{"vars": [["x", 1], ...], "relations": [["s^2", "x^2 - y^2"], ...], "max_degree": 8}`;
/// variables may also be `{"name": .., "degree": ..}` and relations `{"lhs": .., "rhs": ..}`.
pub fn ring(v: &Value) -> Result<TruncRing> {
    reject_unknown(v, "", &["vars", "relations", "max_degree"])?;
    let mut vars: Vec<(String, u32)> = Vec::new();
    for (k, x) in as_array(field(v, "", "vars")?, "vars")?.iter().enumerate() {
        let path = format!("vars[{k}]");
        let (name, deg) = match x {
            Value::Array(a) if a.len() == 2 => (&a[0], &a[1]),
            Value::Object(_) => (field(x, &path, "name")?, field(x, &path, "degree")?),
            _ => return Err(schema(&path, "expected [name, degree]")),
        };
        let deg = as_u64(deg, &format!("{path}.degree"))?;
        vars.push((as_str(name, &format!("{path}.name"))?.to_string(), deg as u32));
    }
    let mut rels = Vec::new();
    if let Some(r) = v.get("relations") {
        for (k, x) in as_array(r, "relations")?.iter().enumerate() {
            let path = format!("relations[{k}]");
            let (l, r) = match x {
                Value::Array(a) if a.len() == 2 => (&a[0], &a[1]),
                Value::Object(_) => (field(x, &path, "lhs")?, field(x, &path, "rhs")?),
                _ => return Err(schema(&path, "expected [lhs, rhs]")),
            };
            rels.push((as_str(l, &path)?.to_string(), as_str(r, &path)?.to_string()));
        }
    }
    let max_degree = match v.get("max_degree") {
        None => DEFAULT_MAX_DEGREE,
        Some(m) => as_u64(m, "max_degree")? as u32,
    };
    let vref: Vec<(&str, u32)> = vars.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let rref: Vec<(&str, &str)> = rels.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    TruncRing::from_strings(&vref, &rref, max_degree)
}

/// Named classes usable in expressions: basis labels, `l_i` aliases, `K` and `E`.
fn named_class(model: &SurfaceModel, name: &str) -> Option<LatticeClass> {
    let kind = model.kind();
    if let Some(i) = kind.labels().iter().position(|l| l == name) {
        return Some(LatticeClass::unit(kind, i));
    }
    match name {
        "K" => return Some(model.canonical().clone()),
        "E" => return Some(model.boundary()),
        _ => {}
    }
    let idx = name.strip_prefix("l_").or_else(|| name.strip_prefix('l'))?;
    model.line(idx.parse().ok()?).ok()
}

/// Linear expressions like `l2 - l1`, `2h - l0 - l1`, `f - 3*l_1`.
pub fn class_expr(model: &SurfaceModel, src: &str) -> Result<LatticeClass> {
    let bad = |msg: String| Error::InvalidClass(format!("`{src}`: {msg}"));
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(bad("empty".into()));
    }
    let mut acc = LatticeClass::zero(model.kind());
    let mut pos = 0;
    while pos < chars.len() {
        let mut sign = BigInt::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(bad(format!("expected + or - at {}", pos + 1)));
        }
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let coef: BigInt = if pos > start {
            chars[start..pos].iter().collect::<String>().parse().expect("digits")
        } else {
            BigInt::one()
        };
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
        }
        let ns = pos;
        while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
            pos += 1;
        }
        if ns == pos {
            // `0` names the zero class
            if ns > start && coef.is_zero() {
                continue;
            }
            return Err(bad(format!("expected a class name at {}", ns + 1)));
        }
        let name: String = chars[ns..pos].iter().collect();
        let c = named_class(model, &name).ok_or_else(|| bad(format!("unknown class `{name}`")))?;
        acc = &acc + &c.scale(&(sign * coef));
    }
    Ok(acc)
}

/// A class given as JSON (`{"basis", "coeffs"}` or a bare array), a JSON file, or an expression.
pub fn class_arg(model: &SurfaceModel, arg: &str) -> Result<LatticeClass> {
    let t = arg.trim_start();
    let v = if t.starts_with('{') || t.starts_with('[') {
        parse_json(arg)?
    } else if Path::new(arg).is_file() {
        read_json(arg)?
    } else {
        return class_expr(model, arg);
    };
    let (coeffs, path) = match &v {
        Value::Array(_) => (&v, "coeffs".to_string()),
        Value::Object(_) => {
            reject_unknown(&v, "", &["basis", "coeffs"])?;
            if let Some(b) = v.get("basis") {
                let kind = ModelKind::parse_id(as_str(b, "basis")?)?;
                if kind != model.kind() {
                    return Err(Error::BasisMismatch {
                        left: model.kind(),
                        right: kind,
                    });
                }
            }
            (field(&v, "", "coeffs")?, "coeffs".to_string())
        }
        _ => return Err(schema("", "expected a class object or array")),
    };
    let cs = as_array(coeffs, &path)?
        .iter()
        .enumerate()
        .map(|(i, c)| as_bigint(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    LatticeClass::new(model.kind(), cs)
}

/// A polynomial in `t` written like `1 - 3*t^2`.
pub fn t_poly(src: &str) -> Result<UniPoly> {
    let p: MPoly = crate::local::parse_poly(src, &["t".to_string()])?;
    let deg = p.terms().keys().map(|m| m[0]).max().unwrap_or(0) as usize;
    let mut cs = vec![BigRational::zero(); deg + 1];
    for (m, c) in p.terms() {
        cs[m[0] as usize] = c.clone();
    }
    Ok(UniPoly::new(cs))
}

/// Relations of a ring, for display.
pub fn relation_strings(r: &TruncRing) -> Vec<String> {
    r.relations()
        .iter()
        .map(|Relation { var, power, rhs }| {
            let lhs = if *power == 1 {
                r.names()[*var].clone()
            } else {
                format!("{}^{power}", r.names()[*var])
            };
            format!("{lhs} = {}", r.display(rhs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn expressions() {
        let s = SurfaceModel::hirzebruch(3).unwrap();
        let d = class_expr(&s, "l2 - l1").unwrap();
        assert_eq!(d, &s.line(2).unwrap() - &s.line(1).unwrap());
        assert_eq!(class_expr(&s, "l_0").unwrap(), s.l0().unwrap());
        let k = class_expr(&s, "K").unwrap();
        assert_eq!(&k, s.canonical());
        let p = class_expr(&s, "2b + 3*f - l1").unwrap();
        assert_eq!(class_expr(&s, &p.pretty()).unwrap(), p);
        assert!(class_expr(&s, "l9").is_err());
        assert!(class_expr(&s, "l1 l2").is_err());
    }

    #[test]
    fn datum_schema_errors() {
        let e = spectral_datum(&json!({"N": 12})).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "points"));
        let e = spectral_datum(&json!({"N": 0, "points": []})).unwrap_err();
        assert_eq!(e.kind(), "invalid_datum");
        let e = spectral_datum(&json!({"N": 5, "points": [1, "x"]})).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "points[1]"));
        let d = spectral_datum(&json!({"N": 12, "points": [5, 7]})).unwrap();
        assert!(d.su_constraint());
        assert_eq!(d.n(), 2);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_json("{\n  \"N\": 12,\n  \"points\": [1,, 2]\n}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn covers_and_rings() {
        let c = cover(&json!({"n": 2, "coeffs": [["0", "-1"], [0]]})).unwrap();
        assert_eq!(c.degree(), 2);
        let c2 = cover(&json!({"n": 2, "coeffs": [[0, -1], [], [1]]})).unwrap();
        assert_eq!(c, c2);
        let r = ring(&json!({
            "vars": [["x", 1], ["y", 1], ["z", 1], {"name": "s", "degree": 1}],
            "relations": [["s^2", "x^2 - y^2 + z^2"]],
        }))
        .unwrap();
        assert_eq!(r.graded_dim(2).unwrap(), 9);
        assert_eq!(relation_strings(&r), vec!["s^2 = x^2 - y^2 + z^2".to_string()]);
    }

    #[test]
    fn t_polynomials() {
        let p = t_poly("1 - 3*t^2").unwrap();
        assert_eq!(p, UniPoly::from_i64(&[1, 0, -3]));
    }
}
