use diffset::cli::{run, Outcome, REPORT_SCHEMA};
use diffset::{GroupSpec, Subset};
use serde_json::Value;

const ILL1: &str = "(0,1);(0,2);(0,3);(1,0);(2,0);(3,0)";
const ILL2: &str = "(0,1);(0,2);(0,3);(1,0);(2,0);(1,1)";

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("diffset").chain(args.iter().copied()))
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs with `--json`, validates against the schema and checks that the
/// verdict field agrees with the exit code.
fn go_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = go(&full);
    let j: Value = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("not JSON ({e}): {}\n{}", out.stdout, out.stderr));
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&j).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations for {args:?}: {errors:?}\n{j:#}");
    match out.code {
        0 => assert_eq!(j["verdict"], true),
        1 => assert_eq!(j["verdict"], false),
        2 => assert!(j["verdict"].is_null()),
        c => panic!("unexpected exit code {c}"),
    }
    (out.code, j)
}

#[test]
fn verify_illustrations() {
    let o = go(&["verify", "--group", "4,4", "--set", ILL1, "--k", "6", "--lambda", "2", "--method", "all"]);
    assert_eq!(o.code, 0);
    for m in ["definition", "groupring", "ideal", "characters-exact", "characters-float"] {
        assert!(o.stdout.contains(m), "{}", o.stdout);
    }
    let (code, j) = go_json(&["verify", "--group", "4,4", "--set", ILL2, "--k", "6", "--lambda", "2"]);
    assert_eq!(code, 1);
    assert_eq!(j["certificate"]["witness"]["character"], serde_json::json!([0, 2]));
    assert_eq!(j["certificate"]["witness"]["value"], "-4");
    let (code, _) = go_json(&["verify", "--group", "4,x", "--set", ILL1, "--k", "6", "--lambda", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_size_mismatch_and_every_method() {
    let (code, j) = go_json(&["verify", "--group", "4,4", "--set", ILL1, "--k", "5", "--lambda", "2"]);
    assert_eq!(code, 1);
    assert_eq!(j["certificate"]["witness"]["kind"], "size-mismatch");
    for m in ["definition", "groupring", "ideal", "characters", "characters-exact", "characters-float", "all"] {
        let (code, _) = go_json(&["verify", "--group", "4,4", "--set", ILL2, "--k", "6", "--lambda", "2", "--method", m]);
        assert_eq!(code, 1, "{m}");
    }
    let (code, _) = go_json(&["verify", "--group", "4,4", "--set", ILL1, "--k", "17", "--lambda", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_report_positions() {
    let (code, j) = go_json(&["verify", "--group", "4,4", "--set", "(0,1);(0,4)", "--k", "2", "--lambda", "0"]);
    assert_eq!(code, 2);
    assert_eq!(j["error"]["position"], 9);
    let (code, j) = go_json(&["verify", "--group", "4,4", "--set", "(0,1);(0,1)", "--k", "2", "--lambda", "0"]);
    assert_eq!(code, 2);
    assert!(j["error"]["message"].as_str().unwrap().contains("duplicate"));
    let (code, _) = go_json(&["verify", "--group", "4,4", "--set", ILL1, "--k", "99999999999999999999999", "--lambda", "2"]);
    assert_eq!(code, 2);
    let (code, _) = go_json(&["verify", "--group", "4,4", "--set", ILL1, "--k", "6", "--lambda", "2", "--method", "fourier"]);
    assert_eq!(code, 2);
}

#[test]
fn generalized_sets() {
    let (code, j) = go_json(&["verify-gds", "--group", "4", "--set", "(0);(1)", "--m-set", "(0);(2)", "--lambda1", "0", "--lambda2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(j["certificate"]["params"]["m_size"], 2);
    let (code, _) = go_json(&["verify-gds", "--group", "7", "--set", "(1);(2);(4)", "--m-set", "(1);(2);(4)", "--lambda1", "1", "--lambda2", "1", "--method", "characters-exact"]);
    assert_eq!(code, 0);
    let (code, _) = go_json(&["verify-gds", "--group", "4,4", "--set", ILL1, "--m-set", "(0,0)", "--lambda1", "0", "--lambda2", "3"]);
    assert_eq!(code, 1);
    let (code, j) = go_json(&["verify-gds", "--group", "4", "--set", "(1)", "--m-set", "(0)", "--lambda1", "0", "--lambda2", "0"]);
    assert_eq!(code, 2);
    assert!(j["error"]["message"].as_str().unwrap().contains("k > 1"));
    let (code, _) = go_json(&["verify-gds", "--group", "4", "--set", "(0);(1)", "--m-set", "", "--lambda1", "0", "--lambda2", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn search_and_round_trip() {
    let (code, j) = go_json(&["search", "--group", "7", "--k", "3", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert_eq!(j["count"], 14);
    let g = GroupSpec::parse("7").unwrap();
    for s in j["sets"].as_array().unwrap() {
        let text = s.as_str().unwrap();
        assert_eq!(Subset::parse(text, &g).unwrap().to_string(), text);
        let o = go(&["verify", "--group", "7", "--set", text, "--k", "3", "--lambda", "1"]);
        assert_eq!(o.code, 0);
    }
    let (code, j) = go_json(&["search", "--group", "4,4", "--k", "6", "--lambda", "2", "--dedup", "translation", "--limit", "3"]);
    assert_eq!(code, 0);
    assert_eq!(j["count"], 3);
    assert_eq!(j["truncated"], true);
    let (code, j) = go_json(&["search", "--group", "5", "--k", "2", "--lambda", "1"]);
    assert_eq!(code, 1);
    assert!(j["note"].as_str().unwrap().starts_with("Ryser fails"));
    assert_eq!(go(&["search", "--group", "5", "--k", "2", "--lambda", "1", "--limit", "0"]).code, 2);
    let text = go(&["search", "--group", "7", "--k", "3", "--lambda", "1"]).stdout;
    assert!(text.lines().any(|l| l == "(1);(2);(4)"), "{text}");
}

#[test]
fn chars_table() {
    let o = go(&["chars", "--group", "4,4", "--set", ILL1, "--lambda", "2"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("16 of 16"), "{}", o.stdout);
    let (code, j) = go_json(&["chars", "--group", "4,4", "--set", ILL2, "--lambda", "2"]);
    assert_eq!(code, 1);
    let rows = j["characters"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    let row = rows.iter().find(|r| r["character"] == serde_json::json!([0, 2])).unwrap();
    assert_eq!(row["value"], "-4");
    assert_eq!(row["roots"], serde_json::json!(["1", "-1"]));
}

#[test]
fn ideal_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.txt");
    let p = path.to_str().unwrap();
    let (code, j) = go_json(&["ideal", "--group", "4,4", "--k", "6", "--lambda", "2", "--out", p]);
    assert_eq!(code, 0);
    assert_eq!(j["generators"], 32);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 34);
    assert_eq!(lines[0], "ring: A_0..A_15");
    assert_eq!(lines[1], "root-of-unity: z, order 4, minpoly z^2 + 1");
    let o = go(&["ideal", "--group", "2", "--k", "1", "--lambda", "0"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("A_0*A_0 - 2*A_0*A_1 + A_1*A_1 - 1"), "{}", o.stdout);
    let bad = dir.path().join("missing").join("x.txt");
    let (code, _) = go_json(&["ideal", "--group", "2", "--k", "1", "--lambda", "0", "--out", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn bent_commands() {
    let (code, j) = go_json(&["bent", "mm", "--m", "2"]);
    assert_eq!(code, 0);
    let tt = j["truth_table"].as_str().unwrap().to_string();
    assert_eq!(tt.len(), 16);
    let (code, j) = go_json(&["bent", "check", "--vars", "4", "--tt", &tt]);
    assert_eq!(code, 0);
    assert_eq!((j["bent"].clone(), j["k"].clone(), j["lambda"].clone()), (true.into(), 6.into(), 2.into()));
    assert_eq!(j["sign"], "-");
    assert_eq!(j["method_agreement"], true);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    let hex = j["certificate"].is_object().then(|| go_json(&["bent", "mm", "--m", "2"]).1["hex"].clone()).unwrap();
    std::fs::write(&path, format!("{}\n", hex.as_str().unwrap())).unwrap();
    let (code, _) = go_json(&["bent", "check", "--vars", "4", "--tt-file", path.to_str().unwrap()]);
    assert_eq!(code, 0);

    let (code, j) = go_json(&["bent", "check", "--vars", "4", "--tt", "0000000000000000"]);
    assert_eq!(code, 1);
    assert!(j["lambda"].is_null());
    let (code, j) = go_json(&["bent", "check", "--vars", "2", "--tt", "0001"]);
    assert_eq!(code, 0);
    assert_eq!(j["outside_stated_range"], true);
    let (code, j) = go_json(&["bent", "check", "--vars", "3", "--tt", "00010111"]);
    assert_eq!(code, 2);
    assert!(j["error"]["message"].as_str().unwrap().contains("even"));
    let (code, _) = go_json(&["bent", "check", "--vars", "4", "--tt", "0001"]);
    assert_eq!(code, 2);
    assert_eq!(go(&["bent", "check", "--vars", "4"]).code, 2);
}

#[test]
fn help_and_usage() {
    let o = go(&["--help"]);
    assert_eq!(o.code, 0);
    for sub in ["verify", "verify-gds", "search", "chars", "ideal", "bent"] {
        assert!(o.stdout.contains(sub), "{sub} missing from help");
    }
    let (code, j) = go_json(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(j["command"], "usage");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_diffset");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify", "--group", "4,4", "--set", ILL1, "--k", "6", "--lambda", "2"]), Some(0));
    assert_eq!(status(&["verify", "--group", "4,4", "--set", ILL2, "--k", "6", "--lambda", "2"]), Some(1));
    assert_eq!(status(&["verify", "--group", "4,x", "--set", ILL1, "--k", "6", "--lambda", "2"]), Some(2));
    let threaded = std::process::Command::new(bin)
        .env("DIFFSET_THREADS", "2")
        .args(["search", "--group", "7", "--k", "3", "--lambda", "1"])
        .output()
        .unwrap();
    assert_eq!(threaded.status.code(), Some(0));
    let bad = std::process::Command::new(bin)
        .env("DIFFSET_THREADS", "many")
        .args(["search", "--group", "7", "--k", "3", "--lambda", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
