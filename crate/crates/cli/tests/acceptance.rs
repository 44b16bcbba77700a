//! One line per acceptance criterion. Criterion 7 here runs the real binary twice.

use normalhst_cli::acceptance::{self, Criterion, DEFAULT_SEED};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn binary(args: &[&str]) -> Output {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    Command::new(env!("CARGO_BIN_EXE_normalhst"))
        .args(args)
        .current_dir(corpus)
        .env_remove("NORMALHST_CEILING")
        .output()
        .expect("binary runs")
}

fn determinism_of_binary() -> Criterion {
    let seed = DEFAULT_SEED.to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["selftest", "--seed", &seed],
        vec!["--format", "table", "selftest", "--seed", &seed],
        vec!["validate", "simplex_boundary.tri"],
        vec!["validate", "pseudo_manifold.tri", "--format", "table"],
        vec!["surface", "doubled.tri", "link_doubled.json"],
        vec!["surface", "single.tri", "octagon_single.json", "--format", "table"],
        vec!["enumerate", "simplex_boundary.tri", "--method", "vertex"],
        vec!["enumerate", "doubled.tri", "--method", "brute", "--bound", "4"],
        vec!["enumerate", "one_tet_closed.tri", "--method", "octagon", "--bound", "6"],
        vec!["enumerate", "doubled.tri", "--cross-check", "--bound", "6"],
        vec!["hst", "genus2.json", "--action", "complexity"],
        vec!["hst", "torus_sphere.json", "--action", "underlying"],
        vec!["hst", "torus_sphere.json", "--action", "search", "--relative", "--budget", "500"],
        vec!["width", "bridge.pres", "--action", "width"],
        vec!["width", "two_maxima.pres", "--action", "split"],
        vec!["width", "two_maxima.pres", "--action", "search", "--space", "exchanges"],
        vec!["curve", "loops", "--max-length", "16"],
    ];
    let mut differing = Vec::new();
    for args in &commands {
        let a = binary(args);
        let b = binary(args);
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            differing.push(args.join(" "));
        }
    }
    let selftest_ok = binary(&["selftest", "--seed", &seed]).status.success();
    let pass = differing.is_empty() && selftest_ok;
    let detail = if !selftest_ok {
        "selftest exited nonzero".to_string()
    } else if let Some(first) = differing.first() {
        format!("`normalhst {first}` differs between runs")
    } else {
        format!("{} invocations, including selftest, byte-identical across two runs", commands.len())
    };
    Criterion { number: 7, title: "determinism", pass, detail }
}

/// Runs a criterion and fails it if it overruns `limit`.
fn timed(limit: Option<Duration>, f: impl FnOnce() -> Criterion) -> Criterion {
    let start = Instant::now();
    let mut c = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            c.pass = false;
            c.detail = format!("{} (took {:.1}s, limit {}s)", c.detail, elapsed.as_secs_f64(), limit.as_secs());
        }
    }
    c
}

fn main() {
    let minute = Some(Duration::from_secs(60));
    let results = vec![
        timed(minute, acceptance::curve_length_law),
        timed(None, acceptance::octagon_loop_rule),
        timed(Some(Duration::from_secs(300)), acceptance::enumeration_agreement),
        timed(None, acceptance::euler_two_paths),
        timed(minute, || acceptance::descent_and_termination(DEFAULT_SEED)),
        timed(None, acceptance::width_arithmetic),
        timed(None, determinism_of_binary),
    ];
    for c in &results {
        println!("{}", c.line());
    }
    let failed = results.iter().filter(|c| !c.pass).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
