//! The shipped schemas' examples must load, and error output must match its schema's shape.

use std::path::PathBuf;

use ade_core::cli::{input, run_with};
use ade_core::lattice::SurfaceModel;
use serde_json::Value;

fn schema(name: &str) -> Value {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", name].iter().collect();
    let text = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    serde_json::from_str(&text).unwrap()
}

fn examples(name: &str) -> Vec<Value> {
    let s = schema(name);
    assert_eq!(s["$schema"], "https://json-schema.org/draft/2020-12/schema");
    let ex = s["examples"].as_array().unwrap().clone();
    assert!(!ex.is_empty(), "{name} has no examples");
    ex
}

#[test]
fn surface_examples_load() {
    for v in examples("surface.schema.json") {
        input::surface_config(&v).unwrap();
    }
}

#[test]
fn spectral_examples_load() {
    for v in examples("spectral-datum.schema.json") {
        input::spectral_datum(&v).unwrap();
    }
}

#[test]
fn cover_examples_load() {
    for v in examples("cover.schema.json") {
        input::cover(&v).unwrap();
    }
}

#[test]
fn ring_examples_load() {
    for v in examples("ring.schema.json") {
        input::ring(&v).unwrap();
    }
}

#[test]
fn class_examples_load() {
    let s = SurfaceModel::hirzebruch(2).unwrap();
    for v in examples("class.schema.json") {
        input::class_arg(&s, &v.to_string()).unwrap();
    }
}

#[test]
fn errors_have_the_documented_shape() {
    let allowed: Vec<String> = schema("error.schema.json")["properties"]["error"]["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|k| k.as_str().unwrap().to_string())
        .collect();
    let out = run_with(["chi", "--kind", "p2", "--n", "2", "--class", "l9"], 0);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let obj = v["error"].as_object().unwrap();
    let keys: Vec<String> = obj.keys().cloned().collect();
    assert_eq!(keys, allowed);
}
