//! End-to-end runs of the `ogq` binary.

use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigInt;
use ogq::partitions::StrictPartition;
use ogq::ring::{ring, GWQuery};
use serde_json::Value;

fn ogq(args: &[&str]) -> Output {
    ogq_env(args, None)
}

fn ogq_env(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ogq"));
    cmd.args(args).env_remove("OGQ_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("OGQ_CACHE_DIR", dir);
    }
    cmd.output().expect("failed to launch ogq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sp(s: &str) -> StrictPartition {
    s.parse().unwrap()
}

#[test]
fn products() {
    for (args, want) in [
        (["--n", "2", "--lhs", "2", "--rhs", "2"], "q\n"),
        (["--n", "2", "--lhs", "2,1", "--rhs", "2,1"], "τ[2]·q\n"),
        (["--n", "3", "--lhs", "1", "--rhs", ""], "τ[1]\n"),
    ] {
        let o = ogq(&[&["qprod"], &args[..]].concat());
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), want, "{args:?}");
    }
}

#[test]
fn product_json() {
    let o = ogq(&["qprod", "--n", "2", "--lhs", "2,1", "--rhs", "2,1", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"n": 2, "terms": [{"nu": [2], "d": 1, "coeff": 1}]}));
    let o = ogq(&["pieri", "--n", "3", "--lambda", "2,1", "--k", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    let keys: Vec<(u64, Vec<u64>)> = terms
        .iter()
        .map(|t| {
            let nu = t["nu"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            (t["d"].as_u64().unwrap(), nu)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn gw_values_and_exit_codes() {
    let o = ogq(&["gw", "--n", "2", "--d", "1", "--a", "2", "--b", "2", "--c", "2,1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = ogq(&["gw", "--n", "3", "--d", "0", "--a", "3,2", "--b", "", "--c", ""]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    let o = ogq(&["gw", "--n", "3", "--d", "0", "--a", "2,1", "--b", "3", "--c", ""]);
    let want = ring(3).gw(&sp("2,1"), &sp("3"), &sp(""), 0).unwrap();
    assert_eq!(stdout(&o), format!("{want}\n"));
    assert_eq!(ogq(&["gw", "--n", "2", "--d", "0", "--a", "2,2", "--b", "", "--c", ""]).status.code(), Some(2));
    assert_eq!(ogq(&["gw", "--n", "2", "--d", "0", "--a", "3", "--b", "", "--c", ""]).status.code(), Some(2));
    assert_eq!(ogq(&["qprod", "--n", "2", "--lhs", "x", "--rhs", "1"]).status.code(), Some(2));
}

#[test]
fn lg_routes_agree_from_the_command_line() {
    let base = ["lggw", "--n", "3", "--e", "1", "--a", "2,1", "--b", "2", "--c", "1"];
    let a = ogq(&base);
    let b = ogq(&[&base[..], &["--odd-route"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let o = ogq(&["lggw", "--n", "4", "--e", "1", "--a", "2,1", "--b", "2,1", "--c", "2,1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn qtilde_output() {
    let o = ogq(&["qtilde", "--n", "2", "--nu", "1", "--show-poly"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).trim().is_empty());
    assert_eq!(stdout(&ogq(&["qtilde", "--n", "2", "--nu", "3"])), "0\n");
}

#[test]
fn verify_suites_pass() {
    let o = ogq(&["verify", "--suite", "identities", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ogq(&["verify", "--suite", "ring", "--n-max", "3", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
    let o = ogq(&["verify", "--suite", "lg", "--n-max", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["pass"], Value::Bool(true));
        assert!(r["identity"].is_string() && r["params"].is_object());
    }
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["qprod", "--n", "4", "--lhs", "4,3,1", "--rhs", "3,2,1", "--json"][..],
        &["pieri", "--n", "4", "--lambda", "4,2", "--k", "3"][..],
        &["verify", "--suite", "lg", "--n-max", "3", "--json", "--jobs", "3"][..],
    ] {
        let a = ogq(args);
        let b = ogq(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn fresh(n: u32, l: &str, m: &str, v: &str, d: u32) -> BigInt {
    let q = GWQuery::new(n, sp(l), sp(m), sp(v), d);
    ring(n).gw_invariant(&q).unwrap()
}

#[test]
fn table_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("t.json");
    let o = ogq(&["table", "--n", "2", "--d-max", "1", "--out", json_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let csv_form = |x: &Value| -> String {
        x.as_array()
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut admissible = 0;
    let basis = ogq::partitions::strict_partitions(2);
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            for c in &basis[j..] {
                if GWQuery::degree_for(2, a.weight() + b.weight() + c.weight()).is_some_and(|d| d <= 1) {
                    admissible += 1;
                }
            }
        }
    }
    assert_eq!(entries.len(), admissible);
    for e in entries {
        let d = e["d"].as_u64().unwrap() as u32;
        let want = fresh(2, &csv_form(&e["lambda"]), &csv_form(&e["mu"]), &csv_form(&e["nu"]), d);
        assert_eq!(e["value"].to_string(), want.to_string(), "{e}");
    }

    let csv_path = dir.path().join("t.csv");
    let o = ogq(&["table", "--n", "3", "--d-max", "1", "--csv", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["lambda", "mu", "nu", "d", "value"]);
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let want = fresh(3, &rec[0], &rec[1], &rec[2], rec[3].parse().unwrap());
        assert_eq!(rec[4], want.to_string());
        rows += 1;
    }
    assert!(rows > 0);
}

#[test]
fn table_reports_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("t.json");
    let o = ogq(&["table", "--n", "2", "--d-max", "0", "--out", bad.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing"));
}

#[test]
fn cache_directory_is_populated_and_cleared() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["qprod", "--n", "4", "--lhs", "4,2,1", "--rhs", "3,2"];
    let first = ogq_env(&args, Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    let status = ogq(&["cache", "--dir", dir.path().to_str().unwrap()]);
    let text = stdout(&status);
    let count: usize = text.split_whitespace().next().unwrap().parse().unwrap();
    assert!(count > 0, "{text}");
    // warm run reads back the same answer
    let second = ogq_env(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    let cleared = ogq_env(&["cache", "--clear"], Some(dir.path()));
    assert_eq!(cleared.status.code(), Some(0));
    let text = stdout(&ogq(&["cache", "--dir", dir.path().to_str().unwrap()]));
    assert!(text.starts_with("0 records"), "{text}");
    assert_eq!(ogq(&["cache"]).status.code(), Some(2));
}
