use std::process::Command;

use algcps::harness::{gen_term, GenConfig};
use algcps::{canonical_key, parse, Rational, Term};
use algcps_cli::{
    run, Output, EXIT_CHECK_FAILED, EXIT_OK, EXIT_PRECONDITION, EXIT_TIMEOUT, EXIT_USAGE,
};
use proptest::prelude::*;

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("algcps").chain(args.iter().copied()))
}

fn t(s: &str) -> Term {
    parse(s).unwrap()
}

fn stdout_term(out: &Output) -> Term {
    t(out.stdout.trim())
}

#[test]
fn reduce_copies_per_summand_in_lin() {
    let out = cli(&["reduce", "--calculus", "lin", r"(\x. \f. f x x) (y + z)"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(
        canonical_key(&stdout_term(&out)),
        canonical_key(&t(r"(\f. f y y) + \f. f z z"))
    );
    let out = cli(&["reduce", "--calculus", "alg", r"(\x. \f. f x x) (y + z)"]);
    assert!(stdout_term(&out).alpha_eq(&t(r"\f. f (y + z) (y + z)")));
}

#[test]
fn translate_and_invert_examples() {
    let out = cli(&["translate", "--dir", "v2n", "x"]);
    assert_eq!(out.stdout, "\\k. k x\n");
    assert_eq!(cli(&["invert", "--dir", "v2n", "k x"]).stdout, "x\n");
    assert_eq!(
        cli(&["invert", "--dir", "v2n", r"(\k. k x) k"]).stdout,
        "x\n"
    );
    assert_eq!(
        cli(&["classify", "--dir", "v2n", "k x"]).stdout,
        "BaseComputation\n"
    );
    let out = cli(&["translate", "--dir", "n2v", "--apply-k", "f x"]);
    assert_eq!(out.stdout, "(\\k. f \\b. b x k) k\n");
}

#[test]
fn translate_then_invert_recovers_the_term() {
    for seed in 0..200 {
        let m: Term<Rational> = gen_term(&GenConfig {
            seed,
            ..GenConfig::default()
        });
        for dir in ["v2n", "n2v"] {
            let translated = cli(&["translate", "--dir", dir, "--apply-k", &m.to_string()]);
            assert_eq!(translated.code, EXIT_OK);
            let back = cli(&["invert", "--dir", dir, translated.stdout.trim()]);
            assert_eq!(back.code, EXIT_OK, "{}", back.stderr);
            assert_eq!(back.stdout.trim(), m.to_string(), "{dir}");
        }
    }
}

#[test]
fn exit_codes() {
    let out = cli(&["parse", r"\x. ("]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("column"), "{}", out.stderr);
    assert_eq!(
        cli(&["reduce", "--calculus", "lin", "--bogus", "x"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        cli(&["reduce", "--calculus", "quantum", "x"]).code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["reduce", "x"]).code, EXIT_USAGE);
    assert_eq!(cli(&["check", "--lemma", "no-such-lemma"]).code, EXIT_USAGE);
    assert_eq!(
        cli(&["translate", "--dir", "v2n", "k"]).code,
        EXIT_PRECONDITION
    );
    assert_eq!(
        cli(&["invert", "--dir", "v2n", "x y"]).code,
        EXIT_PRECONDITION
    );

    let omega = r"(\x. x x) \x. x x";
    let out = cli(&["reduce", "--calculus", "alg", "--steps", "20", omega]);
    assert_eq!(out.code, EXIT_TIMEOUT);
    assert_eq!(out.stdout, "TIMEOUT\n");
    let out = cli(&["reduce", "--calculus", "lin", "x y"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "STUCK x y\n"));
}

#[test]
fn check_reports_and_exit_status() {
    let args = ["check", "--lemma", "inverse-term", "--instances", "30"];
    let out = cli(&args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("inverse-term v2n: 30 attempted"));
    assert!(out.stdout.contains("inverse-term n2v: 30 attempted"));
    assert!(out.stdout.contains("coverage:"));

    let args = [
        "check",
        "--lemma",
        "continuation-linearity",
        "--dir",
        "v2n",
        "--instances",
        "60",
        "--seed",
        "5",
    ];
    let out = cli(&args);
    assert_eq!(out.code, EXIT_CHECK_FAILED, "{}", out.stdout);
    assert!(out.stdout.contains("FAIL seed 5"));
    assert!(out.stdout.contains("shrunk:"));
}

#[test]
fn structured_trace_carries_rule_path_and_term() {
    let out = cli(&[
        "--format",
        "structured",
        "trace",
        "--calculus",
        "lin",
        r"(\x. \f. f x x) (y + z)",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["outcome"], "value");
    let steps = doc["steps"].as_array().unwrap();
    assert_eq!(steps[0]["rule"], "Ar_sum");
    assert!(steps
        .iter()
        .all(|s| s["path"].is_array() && s["term"].is_string()));
    assert!(steps.iter().any(|s| s["rule"] == "BetaV"));
}

#[test]
fn text_trace_lists_steps() {
    let out = cli(&["trace", "--calculus", "lin", r"(\x. \f. f x x) (y + z)"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], r"(\x. \f. f x x) (y + z)");
    assert!(lines[1].starts_with("Ar_sum @ ε  "), "{}", lines[1]);
}

#[test]
fn term_from_file_and_gaussian_ring() {
    let dir = std::env::temp_dir().join(format!("algcps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("term.txt");
    std::fs::write(&path, "(\\x. x) (2.y + 3.y)\n").unwrap();
    let out = cli(&[
        "reduce",
        "--calculus",
        "lin",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.stdout, "5.y\n");
    let out = cli(&[
        "--ring",
        "gaussian",
        "reduce",
        "--calculus",
        "alg",
        "i.x + i.x",
    ]);
    assert_eq!(out.stdout, "2i.x\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn the_binary_runs() {
    let bin = env!("CARGO_BIN_EXE_algcps");
    let out = Command::new(bin)
        .args(["translate", "--dir", "v2n", "x"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "\\k. k x\n");
    let out = Command::new(bin).args(["parse", "("]).output().unwrap();
    assert_eq!(out.status.code(), Some(i32::from(EXIT_USAGE)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_echo_round_trips(seed in any::<u64>()) {
        let m: Term<Rational> = gen_term(&GenConfig { seed, ..GenConfig::default() });
        let out = cli(&["parse", &m.to_string()]);
        prop_assert_eq!(out.code, EXIT_OK);
        prop_assert!(stdout_term(&out).alpha_eq(&m));
    }
}
