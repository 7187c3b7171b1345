use std::process::{Command, Output};

fn cubicfields(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_cubicfields"))
        .args(args)
        .env("CUBICFIELDS_OEIS_CACHE", cache.path())
        .env("CUBICFIELDS_OFFLINE", "1")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut argv = args.to_vec();
    argv.push("--json");
    let out = cubicfields(&argv);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn scp_json_document() {
    let out = cubicfields(&["roots", "scp", "--h", "-1", "--digits", "40", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["kind", "inputs", "digits", "zeros", "residual"]);
    assert_eq!(doc["kind"], "roots.scp");
    assert_eq!(doc["digits"], 40);
    assert_eq!(
        doc["zeros"],
        serde_json::json!([
            "1.2469796037174670610500097680084796212645",
            "-0.4450418679126288085778051289935895189327",
            "-1.8019377358048382524722046390148901023318"
        ])
    );
    assert_eq!(stdout(&cubicfields(&["roots", "scp", "--h", "-1", "--digits", "40", "--json"])), text);
}

#[test]
fn sequence_text_and_bfile() {
    let out = cubicfields(&["seq", "a198636", "--terms", "7"]);
    assert_eq!(stdout(&out), "3 5 13 38 117 370 1186\n");
    let out = cubicfields(&["seq", "a198636", "--terms", "3", "--bfile"]);
    assert_eq!(stdout(&out), "0 3\n1 5\n2 13\n");
    let out = cubicfields(&["seq", "walks", "--n", "6", "--terms", "7"]);
    assert_eq!(stdout(&out), "6 0 10 0 26 0 76\n");
    let doc = json(&["seq", "trace", "--h", "-1", "--k", "2", "--terms", "4"]);
    assert_eq!(doc["terms"], serde_json::json!(["3", "5", "13", "38"]));
}

#[test]
fn verify_exit_codes() {
    let ok = cubicfields(&["verify", "2*cos(2*pi/7) == (1/3)*(-1+2*sqrt(7)*cos((1/3)*arctan(3*sqrt(3))))"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).ends_with("pass\n"));
    let fail = cubicfields(&["verify", "pi == 3.14159"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).ends_with("fail\n"));
    let parse = cubicfields(&["verify", "cos( == 1"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("offset 5"));
    let domain = cubicfields(&["verify", "sqrt(-1) == 0"]);
    assert_eq!(domain.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(cubicfields(&[]).status.code(), Some(2));
    assert_eq!(cubicfields(&["roots", "scp"]).status.code(), Some(2));
    assert_eq!(cubicfields(&["roots", "scp", "--h", "x+"]).status.code(), Some(2));
    assert_eq!(cubicfields(&["oeis-check", "Axx"]).status.code(), Some(2));
    assert_eq!(cubicfields(&["--digits", "0", "minpoly", "--h", "1"]).status.code(), Some(2));
    assert_eq!(cubicfields(&["--help"]).status.code(), Some(0));
}

#[test]
fn evaluation_errors() {
    assert_eq!(cubicfields(&["periods", "15"]).status.code(), Some(3));
    assert_eq!(cubicfields(&["minpoly", "--h", "3"]).status.code(), Some(3));
    assert_eq!(cubicfields(&["roots", "rcp", "--h", "1", "--s", "0"]).status.code(), Some(3));
    assert_eq!(cubicfields(&["roots", "cubic", "1", "0", "1", "0"]).status.code(), Some(3));
    assert_eq!(cubicfields(&["identity", "named", "nope"]).status.code(), Some(3));
}

#[test]
fn periods_and_minpoly() {
    let doc = json(&["periods", "13", "--digits", "20"]);
    let cosets = serde_json::json!([["1", "5", "8", "12"], ["2", "3", "10", "11"], ["4", "6", "7", "9"]]);
    assert_eq!(doc["report"]["cosets"], cosets);
    let out = cubicfields(&["minpoly", "--h", "1"]);
    assert!(stdout(&out).contains("x^3 + x^2 - 4*x + 1"));
    let doc = json(&["shanks-primes", "--limit", "139"]);
    let primes: Vec<&str> = doc["terms"].as_array().unwrap().iter().map(|t| t["p"].as_str().unwrap()).collect();
    assert_eq!(primes, ["7", "13", "19", "37", "79", "97", "139"]);
    assert_eq!(doc["terms"][0]["h"], "-1");
}

#[test]
fn identities() {
    for name in ["cos2pi7", "sqrt2", "pi_cos", "pi_cbrt"] {
        assert_eq!(cubicfields(&["identity", "named", name]).status.code(), Some(0), "{name}");
    }
    let list = stdout(&cubicfields(&["identity", "named", "--list"]));
    assert_eq!(list.lines().count(), 4);
    assert_eq!(cubicfields(&["identity", "ramanujan", "--h", "-1", "--s", "-1"]).status.code(), Some(0));
    assert_eq!(cubicfields(&["identity", "extended", "--alpha", "3/2", "--s", "-2"]).status.code(), Some(0));
    assert_eq!(cubicfields(&["identity", "gauss", "--h", "-10", "--digits", "30"]).status.code(), Some(0));
}

#[test]
fn roots_variants() {
    let doc = json(&["roots", "cubic", "1", "1", "-2", "-1", "--digits", "20"]);
    assert_eq!(doc["zeros"][0], "1.24697960371746706105");
    let doc = json(&["roots", "rcp", "--h", "-3/2", "--s", "-1", "--digits", "10"]);
    assert_eq!(doc["zeros"], serde_json::json!(["1.0000000000", "-0.5000000000", "-2.0000000000"]));
    let doc = json(&["roots", "witula", "--gamma", "3", "--r", "8", "--digits", "10"]);
    assert_eq!(doc["zeros"], serde_json::json!(["4.0000000000", "1.0000000000", "-2.0000000000"]));
    let out = cubicfields(&["roots", "rcp", "--h", "1", "--s", "2", "--explain"]);
    let text = stdout(&out);
    assert!(text.contains("resolvent") && text.contains("zeta(h, 1)"));
}

#[test]
fn oeis_check_offline() {
    for (id, flag, value) in [("A198636", "--terms", "30"), ("A005471", "--limit", "100000")] {
        let doc = json(&["oeis-check", id, flag, value]);
        assert_eq!(doc["report"]["source"], "fixture");
        assert_eq!(doc["report"]["verdict"], "pass");
    }
    let unsupported = cubicfields(&["oeis-check", "A000045"]);
    assert_eq!(unsupported.status.code(), Some(2));
}
