use std::process::Command;

use proptest::prelude::*;
use quatsym_cli::fixtures::{reproduce, Check, ReproduceReport, WORKED_EXAMPLES};
use quatsym_cli::report::VerdictReport;
use quatsym_cli::run;
use quatsym_core::{classify, AlgebraSpec, Status};

fn quatsym(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quatsym")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn in_process(args: &[String]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("quatsym".to_string()).chain(args.iter().cloned()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn binary_exit_codes() {
    assert_eq!(quatsym(&["classify", "quaternion", "--field", "qi", "5", "29"]).0, Some(0));
    assert_eq!(quatsym(&["classify", "symbol", "--q", "4", "7", "29"]).0, Some(1));
    let (code, _, err) = quatsym(&["classify", "quaternion", "--field", "q", "0", "5"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("parameters must be nonzero"));
    assert_eq!(quatsym(&["classify", "quaternion", "--field", "r", "1", "5"]).0, Some(2));
    assert_eq!(quatsym(&["legendre", "12345678901234567890", "7"]).0, Some(2));
}

#[test]
fn negative_arguments_parse() {
    let (code, out, _) = quatsym(&["--json", "classify", "quaternion", "--field", "q", "-1", "-1"]);
    assert_eq!(code, Some(0));
    let r: VerdictReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.status, "division");
    assert_eq!(r.ramified, ["real", "p=2"]);
    assert_eq!(r.discriminant, Some(2));
    let (_, out, _) = quatsym(&["gaussian", "factor", "-2+5i"]);
    assert!(out.contains("norm 29"));
}

#[test]
fn place_strings() {
    let (_, out, _) = quatsym(&["--json", "classify", "quaternion", "--field", "qi", "10", "29"]);
    let r: VerdictReport = serde_json::from_str(&out).unwrap();
    assert!(r.ramified.iter().all(|p| p.starts_with("pi=")), "{:?}", r.ramified);
    let (_, out, _) = quatsym(&["--json", "classify", "symbol", "--q", "3", "7", "19"]);
    let r: VerdictReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.ramified, ["ell=7,f=1"]);
}

#[test]
fn reproduce_binary() {
    let (code, out, _) = quatsym(&["reproduce-paper"]);
    assert_eq!(code, Some(0));
    assert!(out.ends_with("14/14 rows match\n"));
    let (code, out, _) = quatsym(&["reproduce-paper", "--only", "sym3:7:19", "--json"]);
    assert_eq!(code, Some(0));
    let r: ReproduceReport = serde_json::from_str(&out).unwrap();
    assert_eq!((r.matched, r.total), (1, 1));
}

#[test]
fn tampered_table_fails() {
    let mut table = WORKED_EXAMPLES.to_vec();
    table[7].expected = Status::Division;
    table[3].checks = &[Check::Ramified(&["pi=1+i"])];
    let r = reproduce(&table, None).unwrap();
    assert_eq!((r.matched, r.total), (12, 14));
    assert!(r.table().contains("NO"));
}

fn spec_args(spec: AlgebraSpec) -> Vec<String> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match spec {
        AlgebraSpec::QuaternionQ { a, b } => {
            s(&["classify", "quaternion", "--field", "q", &a.to_string(), &b.to_string()])
        }
        AlgebraSpec::QuaternionQi { a, b } => {
            s(&["classify", "quaternion", "--field", "qi", &a.to_string(), &b.to_string()])
        }
        AlgebraSpec::Symbol { q, alpha, p } => {
            s(&["classify", "symbol", "--q", &q.to_string(), &alpha.to_string(), &p.to_string()])
        }
    }
}

fn any_spec() -> impl Strategy<Value = AlgebraSpec> {
    let nz = prop_oneof![-500i64..=-1, 1i64..=500];
    prop_oneof![
        (nz.clone(), nz.clone()).prop_map(|(a, b)| AlgebraSpec::QuaternionQ { a, b }),
        (nz.clone(), nz.clone()).prop_map(|(a, b)| AlgebraSpec::QuaternionQi { a, b }),
        (prop_oneof![Just(3i64), Just(5), Just(7)], nz, 2i64..=400).prop_map(|(q, alpha, p)| AlgebraSpec::Symbol {
            q,
            alpha,
            p
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn json_round_trips(spec in any_spec()) {
        let v = classify(spec).unwrap();
        let report = VerdictReport::new(&v, 0.25);
        let text = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(serde_json::from_str::<VerdictReport>(&text).unwrap(), report);
    }

    #[test]
    fn json_and_table_agree(spec in any_spec()) {
        let mut args = spec_args(spec);
        let (code_table, table) = in_process(&args);
        args.push("--json".into());
        let (code_json, json) = in_process(&args);
        prop_assert_eq!(code_table, code_json);
        let r: VerdictReport = serde_json::from_str(&json).unwrap();
        let status_line = table.lines().find(|l| l.starts_with("status")).unwrap();
        prop_assert_eq!(status_line.split_whitespace().nth(1), Some(r.status.as_str()));
        let ramified_line = table.lines().find(|l| l.starts_with("ramified")).unwrap();
        let listed: Vec<&str> = ramified_line.split_whitespace().skip(1).filter(|s| *s != "-").collect();
        prop_assert_eq!(listed, r.ramified.iter().map(String::as_str).collect::<Vec<_>>());
    }

    #[test]
    fn json_is_deterministic_apart_from_ms(spec in any_spec()) {
        let mut args = spec_args(spec);
        args.push("--json".into());
        let strip = |s: String| {
            let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
            v.as_object_mut().unwrap().remove("ms");
            v
        };
        prop_assert_eq!(strip(in_process(&args).1), strip(in_process(&args).1));
    }
}
