use std::path::PathBuf;
use std::process::Command;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> (String, String, i32) {
    run_env(args, None)
}

fn run_env(args: &[&str], ceiling: Option<&str>) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_normalhst"));
    cmd.args(args).current_dir(corpus(""));
    match ceiling {
        Some(c) => cmd.env("NORMALHST_CEILING", c),
        None => cmd.env_remove("NORMALHST_CEILING"),
    };
    let out = cmd.output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text.lines().next().unwrap()).unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", "simplex_boundary.tri"]).2, 0);
    let (out, _, code) = run(&["validate", "pseudo_manifold.tri"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["report"]["bad_vertices"], serde_json::json!([0]));
    let (_, err, code) = run(&["validate", "self_glued.tri"]);
    assert_eq!(code, 2);
    assert!(err.contains("self-glued face"));
    assert_eq!(run(&["validate", "missing.tri"]).2, 2);
}

#[test]
fn surface_headlines() {
    let (out, _, code) = run(&["surface", "doubled.tri", "link_doubled.json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["headline"], "Normal, 1 component, χ=2, 348: pass");
    let (out, _, code) = run(&["surface", "single.tri", "octagon_single.json", "--mode", "almost-normal"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["headline"], "AlmostNormalOctagon, 1 component, χ=1, 348: pass");
    let (out, _, code) = run(&["surface", "single.tri", "two_octagons.json"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["classification"], "Inadmissible");
}

#[test]
fn enumerate_streams() {
    let (out, _, code) = run(&["enumerate", "single.tri", "--method", "vertex"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(json(lines[0])["count"], 7);
    assert!(lines[1].starts_with(r#"{"tets":[{"tri":["#));
    let (out, _, code) = run(&["enumerate", "doubled.tri", "--cross-check", "--bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(json(out.lines().last().unwrap())["cross_check"], "MATCH");
    let (_, err, code) = run_env(&["enumerate", "doubled.tri"], Some("max_rays=3"));
    assert_eq!(code, 3);
    assert!(err.contains("ceiling"));
    assert_eq!(run(&["enumerate", "doubled.tri", "--method", "brute", "--bound", "40"]).2, 3);
    assert_eq!(run_env(&["enumerate", "doubled.tri"], Some("bogus")).2, 2);
}

#[test]
fn hst_and_width() {
    let (out, _, _) = run(&["hst", "genus2.json"]);
    assert_eq!(json(&out)["complexity"], "(16)");
    let (out, _, _) = run(&["hst", "torus_sphere.json", "--action", "underlying"]);
    assert_eq!(json(&out)["splitting"], serde_json::json!([[], [[0, 0]], []]));
    let (out, _, _) = run(&["hst", "genus2.json", "--action", "search", "--budget", "0"]);
    assert_eq!(json(&out)["status_text"], "budget exhausted");
    let (out, _, _) = run(&["width", "bridge.pres"]);
    assert_eq!(json(&out)["profile"]["width"], 8);
    let (out, _, _) = run(&["width", "two_maxima.pres", "--action", "split"]);
    assert_eq!(json(&out)["splitting"], serde_json::json!([[], [[2, 4]], [[2, 2]], [[2, 4]], []]));
    let (out, _, _) = run(&["width", "bridge.pres", "--action", "search", "--single-component"]);
    assert_eq!(json(&out)["min_width"], 8);
    assert_eq!(run(&["hst", "bridge.pres"]).2, 2);
}

#[test]
fn curves_and_tables() {
    let (out, _, code) = run(&["curve", "decompose", "0", "1", "1", "0", "1", "1", "1", "1", "0", "1", "1", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["decomposition"]["lengths"], serde_json::json!([8]));
    assert_eq!(run(&["curve", "decompose", "1", "2"]).2, 2);
    let (out, _, _) = run(&["--format", "table", "width", "bridge.pres"]);
    assert!(out.lines().any(|l| l.starts_with("profile.width") && l.ends_with(" 8")));
}
