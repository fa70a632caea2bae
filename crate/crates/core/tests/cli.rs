use std::path::PathBuf;
use std::process::Command;

use mmm_core::algebra::{Generator, Polynomial};
use mmm_core::cli::parser::{AtomName, Expr};
use mmm_core::cli::{parse_expression, run_captured, run_command};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Commands whose output is pinned byte for byte under tests/golden.
const GOLDEN: &[(&str, &[&str])] = &[
    ("basis_1_3", &["basis", "--deg", "1", "--wt", "3", "--format", "tsv"]),
    ("basis_2_2", &["basis", "--deg", "2", "--wt", "2"]),
    ("count_20_6", &["count", "--deg", "20", "--wt", "6"]),
    ("derive_m03", &["derive", "--expr", "m(0,3)", "--unbarred"]),
    ("derive_product", &["derive", "--expr", "mbar(0,2)*mbar(1,1)", "--format", "tsv"]),
    ("cohom_d3", &["cohom", "--d", "3", "--kind", "coker", "--deg-max", "6", "--format", "tsv"]),
    ("cohom_ker_2_2", &["cohom", "--d", "2", "--kind", "ker", "--deg", "2"]),
    ("cohom_contra_2_2", &["cohom", "--d", "2", "--variant", "contravariant", "--kind", "coker", "--deg", "2"]),
    ("tor_lk", &["tor", "--module", "L-prime-mod-K", "--j-max", "4", "--deg-max", "16", "--format", "tsv"]),
    ("tor_d3", &["tor", "--module", "d3-coker", "--j-max", "3", "--deg-max", "12"]),
    ("verify_d3", &["verify", "--suite", "d3-coker", "--format", "tsv"]),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.out"))
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("MMM_BLESS").is_some();
    for (name, args) in GOLDEN {
        let (code, out) = run_captured(args);
        assert_eq!(code, 0, "{name}");
        let path = golden_path(name);
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &out).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}; rerun with MMM_BLESS=1", path.display()));
        assert_eq!(out, want, "{name}");
        assert_eq!(run_captured(args).1, out, "{name} is not stable across runs");
    }
}

#[test]
fn documented_examples() {
    let (_, out) = run_captured(&["basis", "--deg", "1", "--wt", "3", "--format", "tsv"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, ["0\tmbar(0,3)", "1\tmbar(1,1)*mbar(0,2)"]);
    let (_, out) = run_captured(&["derive", "--expr", "m(0,3)", "--unbarred"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], "-3*m(1,2)");
    assert_eq!(v["schema"], 1);
    let (code, out) = run_captured(&["verify", "--suite", "d5-coker", "--deg-max", "12"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cd = dir.path().to_str().unwrap();
    for (name, args) in GOLDEN {
        let mut a: Vec<&str> = args.to_vec();
        a.extend(["--cache-dir", cd]);
        let cold = run_captured(&a);
        let hit = run_captured(&a);
        assert_eq!(cold, hit, "{name}");
        assert_eq!(cold, run_captured(args), "{name}");
    }
    let (_, stat) = run_captured(&["cache", "stat", "--cache-dir", cd]);
    let v: serde_json::Value = serde_json::from_str(&stat).unwrap();
    assert_eq!(v["entries"], GOLDEN.len());
    assert_eq!(v["stale"], 0);
    // an entry from another schema version is a miss and is collected
    std::fs::write(dir.path().join("0000.json"), r#"{"schema": 0, "payload": "x"}"#).unwrap();
    let (_, gc) = run_captured(&["cache", "gc", "--cache-dir", cd]);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&gc).unwrap()["removed"], 1);
    let (_, clear) = run_captured(&["cache", "clear", "--cache-dir", cd]);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&clear).unwrap()["removed"], GOLDEN.len());
}

#[test]
fn cache_entries_from_other_schemas_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cd = dir.path().to_str().unwrap();
    let args = ["count", "--deg", "4", "--wt", "2", "--cache-dir", cd];
    let cold = run_captured(&args);
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    v["schema"] = 99.into();
    v["payload"] = "tampered".into();
    std::fs::write(&entry, v.to_string()).unwrap();
    assert_eq!(run_captured(&args), cold);
}

#[test]
fn exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mmm");
    let out = Command::new(bin).args(["derive", "--expr", "e(0)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte 0") && err.contains("inadmissible generator"), "{err}");
    let out = Command::new(bin).args(["basis", "--deg", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["cohom", "--d", "3", "--kind", "coker", "--deg", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["count", "--deg", "2", "--wt", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run_command(["mmm", "--help"]).code, 0);
    // the cache directory can come from the environment
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(bin).args(["count", "--deg", "2", "--wt", "2"]).env("MMM_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn spec_file_module() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/d3-coker.json");
    let (code, from_file) = run_captured(&["tor", "--module", path, "--j-max", "3", "--deg-max", "12", "--format", "tsv"]);
    assert_eq!(code, 0);
    let (_, builtin) = run_captured(&["tor", "--module", "d3-coker", "--j-max", "3", "--deg-max", "12", "--format", "tsv"]);
    assert_eq!(from_file, builtin);
}

#[test]
fn parsed_values() {
    let p = |s: &str| parse_expression(s).unwrap().eval().unwrap();
    assert_eq!(p("x(3,2)"), Polynomial::gen(Generator::M(1, 2)));
    assert_eq!(p("  e( 1 ) *  e(2)"), p("e(1)*e(2)"));
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..5).prop_map(|n| Expr::Num(BigInt::from(n))),
        (1i64..4).prop_map(|i| Expr::Atom(AtomName::E, vec![i])),
        (0i64..3, 2i64..4).prop_map(|(i, j)| Expr::Atom(AtomName::Mbar, vec![i, j])),
        (1i64..3, 1i64..3).prop_map(|(i, j)| Expr::Atom(AtomName::M, vec![i, j])),
        (2i64..5).prop_map(|n| Expr::Atom(AtomName::X, vec![n, 1])),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1i64..4).prop_map(|(a, n)| Expr::Div(Box::new(a), Box::new(Expr::Num(BigInt::from(n))))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 0u32..3).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
        ]
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(e in expr()) {
        let printed = e.to_string();
        let back = parse_expression(&printed).unwrap();
        prop_assert_eq!(&back, &e, "{}", printed);
        prop_assert_eq!(parse_expression(&back.to_string()).unwrap(), back);
    }

    #[test]
    fn rendered_polynomials_parse_back(e in expr()) {
        let p = e.eval().unwrap();
        prop_assert_eq!(parse_expression(&p.to_expr()).unwrap().eval().unwrap(), p.clone());
        let q = parse_expression(&p.to_unbarred_expr()).unwrap().eval().unwrap();
        prop_assert_eq!(q, p);
    }
}
