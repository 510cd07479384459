//! Byte-exact CLI output. Regenerate a file by running the listed command from
//! `tests/golden/` and redirecting stdout into it.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, i32, &[&str])] = &[
    ("lines-p2-3.json", 0, &["lines", "--kind", "p2", "--n", "3"]),
    ("roots-h4.json", 0, &["roots", "--kind", "hirzebruch", "--n", "4", "--orth", "K,f,b"]),
    ("ext-h3.json", 0, &["ext", "--surface", "surface-h3.json", "--l1", "l1", "--l2", "l2"]),
    ("transform-h3.json", 0, &["transform", "run", "--surface", "surface-h3.json", "--spectral", "datum.json"]),
    (
        "transform-missing-collision.json",
        1,
        &["transform", "run", "--surface", "surface-h3.json", "--spectral", "datum-late-collision.json"],
    ),
    (
        "analyze-cubic.json",
        0,
        &["spectral", "analyze", "--cover", r#"{"n": 3, "coeffs": [[0, 0, -1], [0, -3], []]}"#],
    ),
    (
        "dims-node.json",
        0,
        &[
            "localmodel",
            "dims",
            "--ring",
            r#"{"vars": [["x", 1], ["s", 1]], "relations": [["s^2", "x^2"]], "max_degree": 5}"#,
            "--upto",
            "5",
            "--gens",
            "s - x",
        ],
    ),
    (
        "restrict-h3.json",
        0,
        &["restrict", "--kind", "hirzebruch", "--n", "3", "--rep", "vector_D", "--N", "10", "--points", "1,4,5"],
    ),
];

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

#[test]
fn outputs_match_golden_files() {
    let mut mismatched = Vec::new();
    for (file, code, args) in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_ade"))
            .args(*args)
            .current_dir(dir())
            .env_remove("ADE_VERBOSE")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(*code), "{file}: {}", String::from_utf8_lossy(&out.stdout));
        let want = std::fs::read(dir().join(file)).unwrap();
        if out.stdout != want {
            mismatched.push(*file);
        }
    }
    assert!(mismatched.is_empty(), "output differs from {mismatched:?}");
}
