use deltaring_cli::{run, EXIT_CHECK_FAILED, EXIT_PASS, EXIT_RESOURCE, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String) {
    let mut full = vec!["deltaring"];
    full.extend_from_slice(args);
    run(full)
}

fn ring_file(name: &str) -> String {
    format!("{}/rings/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn radial_psharp() {
    assert_eq!(cli(&["psharp", "--ring", "radial.json", "--ideal", "x"]), (EXIT_PASS, "(x), status=fixpoint".into()));
    let f = ring_file("radial.json");
    assert_eq!(cli(&["psharp", "--ring", &f, "--ideal", "x"]).1, "(x), status=fixpoint");
    let (code, s) = cli(&["psharp", "--ring", "line", "--ideal", "x", "--degree", "6"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(s, "(0), status=degree-exhausted");
}

#[test]
fn verify_suites() {
    let (code, s) = cli(&["verify", "leibniz", "--seed", "1", "--cases", "500"]);
    assert_eq!(code, EXIT_PASS);
    assert!(s.starts_with("leibniz: pass"), "{s}");
    let (code, s) = cli(&["verify", "charp-counterexamples"]);
    assert_eq!(code, EXIT_PASS, "{s}");
    let (code, s) = cli(&["--json", "verify", "svdp-roundtrip", "--cases", "5", "--seed", "4"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 4);
    assert_eq!(v["bounds"]["cases"], 5);
    assert!(v["version"].is_string());
}

#[test]
fn verify_is_deterministic() {
    for strategy in [&[][..], &["--sequential"][..]] {
        let mut a = vec!["--json", "verify", "leibniz", "--seed", "11", "--cases", "30"];
        a.extend_from_slice(strategy);
        assert_eq!(cli(&a), cli(&["--json", "verify", "leibniz", "--seed", "11", "--cases", "30"]));
    }
}

#[test]
fn every_suite_passes_quickly() {
    for suite in deltaring::suites::SUITE_NAMES {
        let (code, s) = cli(&["verify", suite, "--cases", "4"]);
        assert_eq!(code, EXIT_PASS, "{suite}: {s}");
    }
}

#[test]
fn ideal_commands() {
    assert_eq!(cli(&["member", "--ring", "partials", "--ideal", "x, y", "--poly", "x*y + y^2"]).1, "true");
    assert_eq!(cli(&["nf", "--ring", "partials", "--ideal", "x - y", "--poly", "x^2"]).1, "y^2");
    assert_eq!(cli(&["intersect", "--ring", "partials", "--ideal", "x", "--with", "y"]).1, "(x*y)");
    assert_eq!(cli(&["colon", "--ring", "partials", "--ideal", "x*y", "--by", "x"]).1, "(y)");
    assert_eq!(cli(&["colon", "--ring", "partials", "--ideal", "x^2*y", "--by-ideal", "x, y"]).1, "(x^2*y)");
    assert_eq!(cli(&["sat", "--ring", "partials", "--ideal", "x^3*y", "--by", "x"]).1, "(y)");
    assert_eq!(cli(&["eliminate", "--ring", "partials", "--ideal", "x - y^2, y - 1", "--vars", "y"]).1, "(x - 1)");
    assert_eq!(cli(&["gb", "--ring", "partials", "--ideal", "x^2 - y, x*y - 1", "--order", "lex"]).1, "(-y^2 + x, y^3 - 1)");
    assert_eq!(cli(&["dclose", "--ring", "radial", "--ideal", "x", "--bound", "3"]).1, "(x), certified=true, rounds=0");
    assert_eq!(cli(&["dclose", "--ring", "line", "--ideal", "x", "--bound", "1"]).1, "(1), certified=true, rounds=1");
    assert_eq!(cli(&["disideal", "--ring", "f2-line", "--ideal", "x^2"]).1, "true");
    assert_eq!(cli(&["dmember", "--ring", "line", "--ideal", "x", "--poly", "1", "--bound", "1"]).1, "yes");
    assert_eq!(
        cli(&["dmember", "--ring", "radial", "--ideal", "x", "--poly", "1", "--bound", "5"]).1,
        "not-found-at-bound 5, certified=true"
    );
    assert!(cli(&["radical-delta", "--ring", "radial", "--ideal", "x^2"]).1.starts_with("(x), fixpoint=true"));
}

#[test]
fn trajectories_and_leaves() {
    assert_eq!(cli(&["leaf", "--ring", "radial", "--ideal", "x"]).1, "true");
    assert_eq!(cli(&["leaf", "--ring", "line", "--ideal", "x"]).1, "false");
    assert_eq!(cli(&["traj", "--ring", "radial", "--ideal", "x - 1", "--degree", "6"]).1, "(0), status=degree-exhausted");
    let (code, s) = cli(&["traj", "--ring", "f2-dual", "--ideal", "x"]);
    assert_eq!(code, EXIT_USAGE, "{s}");
    let (code, s) = cli(&["leaf", "--ring", "radial", "--fixtures", &ring_file("radial-primes.json")]);
    assert_eq!(code, EXIT_PASS, "{s}");
    assert!(s.contains("origin: (x) leaf=true, trajectory (x) (fixpoint)"), "{s}");
    assert_eq!(cli(&["simple-scan", "--ring", "line", "--samples", "x, x^2 + 1, x^3 - x"]).1, "simple-consistent");
    assert_eq!(cli(&["simple-scan", "--ring", "radial", "--samples", "x"]).1, "proper-delta-ideal (x)");
    assert_eq!(cli(&["constants", "--ring", "radial", "--degree", "6"]).1, "span{1}, dim=1");
    let (code, s) = cli(&["localize", "--ring", "radial", "--poly", "x"]);
    assert_eq!(code, EXIT_PASS);
    assert!(deltaring::ringspec::parse_ring(&s).is_ok(), "{s}");
}

#[test]
fn tensor_commands() {
    assert_eq!(cli(&["svdp-extend", "--ideal", "u^2 - v"]).1, "(u^2 - v)");
    assert_eq!(cli(&["svdp-contract", "--ideal", "u*t, u"]).1, "(u)");
    assert_eq!(cli(&["svdp-reduce", "--ideal", "u, v", "--elem", "u*t + v"]).1, "(u) (x) (t) + (v) (x) (1)");
    assert_eq!(cli(&["svdp-length", "--elem", "u*t + u"]).1, "1");
    assert_eq!(cli(&["svdp-length", "--elem", "u + t"]).1, "2");
    assert_eq!(cli(&["fiber", "--ideal", "u^2 - v", "--at", "2"]).1, "(u^2 - v)");
    assert_eq!(cli(&["fiber", "--elem", "u*t", "--at", "1"]).1, "u");
    let (code, s) = cli(&["main-check", "--q", "u^2 - v", "--at", "-1"]);
    assert_eq!(code, EXIT_PASS, "{s}");
    let (code, s) = cli(&["main-check", "--q", "u", "--leaf", "u, t"]);
    assert_eq!(code, EXIT_USAGE, "{s}");
    let (code, s) = cli(&["svdp-reduce", "--ideal", "u", "--elem", "u + t"]);
    assert_eq!(code, EXIT_USAGE, "{s}");
}

#[test]
fn operators() {
    assert_eq!(cli(&["ore", "--left", "d", "--right", "t"]).1, "t*d + 1");
    assert_eq!(cli(&["ore", "--left", "t*d", "--right", "t*d"]).1, "t^2*d^2 + t*d");
    assert_eq!(cli(&["ore", "--left", "d", "--right", "d", "--apply", "t^2"]).1, "d^2\n2");
    assert_eq!(cli(&["unit-op", "--lambda", "t^2"]).1, "1/2*d^2");
    let (_, s) = cli(&["ann", "--lambda", "1", "--maxord", "1", "--coeffdeg", "0"]);
    assert_eq!(s, "d");
    assert_eq!(cli(&["unit-op", "--lambda", "0"]).0, EXIT_USAGE);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&[]).0, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).0, EXIT_PASS);
    assert_eq!(cli(&["verify", "nope"]).0, EXIT_USAGE);
    let (code, s) = cli(&["member", "--ring", "line", "--ideal", "x^-1", "--poly", "x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(s.contains("parse error"), "{s}");
    assert_eq!(cli(&["member", "--ring", "nowhere.json", "--ideal", "x", "--poly", "x"]).0, EXIT_USAGE);
    let caps = ["--max-pairs", "1", "gb", "--ring", "partials", "--ideal", "x^3 - y^2, x*y - 1, y^3 + x"];
    assert_eq!(cli(&caps).0, EXIT_RESOURCE);
    let bad_ring = r#"{"field": {"type": "Q"}, "vars": ["x"], "derivations": [{"name": "d", "images": {"x": "1"}}], "quotient": ["x^2"]}"#;
    assert_eq!(cli(&["member", "--ring", bad_ring, "--ideal", "x", "--poly", "x"]).0, EXIT_USAGE);
    let (code, s) = cli(&["--json", "psharp", "--ring", "line", "--ideal", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(serde_json::from_str::<serde_json::Value>(&s).unwrap()["error"].is_string());
    // a genuine leaf that is not over the fiber point
    let (code, s) = cli(&["main-check", "--q", "u", "--leaf", "v"]);
    assert_eq!(code, EXIT_CHECK_FAILED, "{s}");
}

#[test]
fn inline_ring_json() {
    let ring = r#"{"field": {"type": "Fp", "p": 2}, "vars": ["x"], "derivations": [{"name": "d", "images": {"x": "1"}}], "quotient": ["x^2"]}"#;
    assert_eq!(cli(&["psharp", "--ring", ring, "--ideal", "x"]).1, "(0), status=degree-exhausted");
    let f = ring_file("nilsquare-f2.json");
    assert_eq!(cli(&["dclose", "--ring", &f, "--ideal", "x"]).1, "(x, y), certified=true, rounds=1");
}
