//! Command implementations. Each takes file contents rather than paths, so the same
//! code serves the binary, the self-test and the integration tests.

use normalhst::curves::{check_348, decompose_pattern, enumerate_normal_loops, CurvePattern};
use normalhst::enumeration::{brute_force_enumerate, enumerate_octagon_surfaces, enumerate_vertex_surfaces};
use normalhst::hst::{
    is_minimal_reachable, splitting_complexity, underlying_splitting, AbstractSplitting, MoveFamilies,
};
use normalhst::normal::{check_admissible, classify, reconstruct_surface, Classification, SurfaceMode, SurfaceVector};
use normalhst::thin::{induced_splitting, thin_position_search, width, MorsePresentation, SearchSpace, ThinSearch};
use normalhst::triangulation::{compute_skeleton, validate_manifold};
use normalhst::{Error, Limits, Triangulation};
use normalhst_oracles::matching::{is_extreme_ray, is_primitive, matching_matrix};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;
use std::fmt;

/// Exit codes shared by every command.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const CEILING: i32 = 3;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError { code: exit::INPUT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::Ceiling { .. } => exit::CEILING,
            Error::Precondition(_) | Error::Inadmissible(_) | Error::InvalidTube(_) => exit::FAILED,
            _ => exit::INPUT,
        };
        CliError { code, message: e.to_string() }
    }
}

/// JSON records plus the exit code they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub records: Vec<Value>,
    pub code: i32,
}

impl Report {
    fn ok(v: Value) -> Report {
        Report { records: vec![v], code: exit::OK }
    }
}

type Outcome = std::result::Result<Report, CliError>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports always serialise")
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation, CliError> {
    Ok(Triangulation::parse(text)?)
}

/// SHA-256 of the canonical text form.
pub fn triangulation_hash(tri: &Triangulation) -> String {
    Sha256::digest(tri.to_text().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn validate(tri_text: &str) -> Outcome {
    let tri = parse_triangulation(tri_text)?;
    let skeleton = compute_skeleton(&tri);
    let report = validate_manifold(&tri);
    let code = if report.is_manifold { exit::OK } else { exit::FAILED };
    let problems: Vec<String> = report
        .bad_vertices
        .iter()
        .map(|v| format!("vertex {v}: link is neither a sphere nor a disk"))
        .chain(report.reversed_edges.iter().map(|e| format!("edge {e}: identified with itself reversed")))
        .collect();
    Ok(Report {
        records: vec![json!({
            "triangulation_sha256": triangulation_hash(&tri),
            "counts": {
                "tetrahedra": skeleton.tetrahedra,
                "vertices": skeleton.vertices.len(),
                "edges": skeleton.edges.len(),
                "faces": skeleton.faces.len(),
            },
            "skeleton": to_value(&skeleton),
            "report": to_value(&report),
            "problems": problems,
        })],
        code,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Auto,
    Normal,
    AlmostNormal,
}

/// The boundary-pattern check over a whole surface: every tetrahedron's loops have
/// length 3, 4 or 8, and there are exactly `expected_octagons` octagon loops in all.
pub fn surface_348(v: &SurfaceVector, expected_octagons: usize) -> Result<Value, CliError> {
    let mut tets = Vec::new();
    let mut total = 0;
    let mut witness: Option<String> = None;
    for (t, c) in v.tets.iter().enumerate() {
        let r = check_348(&CurvePattern::of_tetrahedron(c)?)?;
        total += r.octagon_loops;
        if let (None, Some(w)) = (&witness, &r.witness) {
            witness = Some(format!("tetrahedron {t}: loop of length {} {:?}", w.length, w.word));
        }
        tets.push(json!({"tet": t, "lengths": r.lengths, "pass": r.pass}));
    }
    if witness.is_none() && total != expected_octagons {
        witness = Some(format!("{total} octagon loops in all, expected {expected_octagons}"));
    }
    Ok(json!({
        "pass": witness.is_none(),
        "octagon_loops": total,
        "tetrahedra": tets,
        "witness": witness,
    }))
}

pub fn surface(tri_text: &str, vector_text: &str, mode: ModeArg, limits: &Limits) -> Outcome {
    let tri = parse_triangulation(tri_text)?;
    let v = SurfaceVector::from_json(vector_text)?;
    let classification = match mode {
        ModeArg::Auto => classify(&tri, &v),
        ModeArg::Normal | ModeArg::AlmostNormal => {
            let m = if mode == ModeArg::Normal { SurfaceMode::Normal } else { SurfaceMode::AlmostNormal };
            if check_admissible(&tri, &v, m)?.admissible {
                classify(&tri, &v)
            } else {
                Classification::Inadmissible
            }
        }
    };
    if classification == Classification::Inadmissible {
        let m = if mode == ModeArg::Normal { SurfaceMode::Normal } else { SurfaceMode::AlmostNormal };
        let report = check_admissible(&tri, &v, m)?;
        let violations: Vec<String> = report.violations.iter().map(|x| x.to_string()).collect();
        let headline = match violations.first() {
            Some(first) => format!("Inadmissible: {first}"),
            None => "Inadmissible".to_string(),
        };
        return Ok(Report {
            records: vec![json!({
                "classification": classification.to_string(),
                "headline": headline,
                "violations": violations,
            })],
            code: exit::FAILED,
        });
    }
    let r = reconstruct_surface(&tri, &v, limits)?;
    let expected = usize::from(classification == Classification::AlmostNormalOctagon);
    let check = surface_348(&v, expected)?;
    let pass = check["pass"] == json!(true);
    let n = r.summary.component_count;
    let headline = format!(
        "{classification}, {n} component{}, χ={}, 348: {}",
        if n == 1 { "" } else { "s" },
        r.summary.euler_characteristic,
        if pass { "pass" } else { "fail" }
    );
    Ok(Report {
        records: vec![json!({
            "classification": classification.to_string(),
            "headline": headline,
            "summary": to_value(&r.summary),
            "check_348": check,
        })],
        code: if pass { exit::OK } else { exit::FAILED },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Vertex,
    Brute,
    Octagon,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Vertex => "vertex",
            Method::Brute => "brute",
            Method::Octagon => "octagon",
        }
    }
}

/// Vertex surfaces with coordinate sum at most `bound`, and the primitive extreme rays
/// among the brute-force solutions with that bound.
pub fn cross_check_sets(
    tri: &Triangulation,
    bound: u64,
    limits: &Limits,
) -> Result<(BTreeSet<SurfaceVector>, BTreeSet<SurfaceVector>), CliError> {
    let b = BigInt::from(bound);
    let vertex: BTreeSet<SurfaceVector> = enumerate_vertex_surfaces(tri, limits)?
        .into_iter()
        .filter(|v| v.coordinate_sum() <= b)
        .collect();
    let m = matching_matrix(tri);
    let brute: BTreeSet<SurfaceVector> = brute_force_enumerate(tri, bound, limits)?
        .into_iter()
        .filter(|v| {
            let x = v.normal_coords();
            is_primitive(&x) && is_extreme_ray(&m, &x)
        })
        .collect();
    Ok((vertex, brute))
}

pub fn enumerate(tri_text: &str, method: Method, bound: Option<u64>, cross_check: bool, limits: &Limits) -> Outcome {
    let tri = parse_triangulation(tri_text)?;
    let hash = triangulation_hash(&tri);
    if cross_check {
        let bound = bound.unwrap_or(6);
        let (vertex, brute) = cross_check_sets(&tri, bound, limits)?;
        let matched = vertex == brute;
        let mut records = vec![json!({
            "triangulation_sha256": hash,
            "method": "cross_check",
            "bound": bound,
        })];
        records.extend(vertex.iter().map(to_value));
        records.push(json!({
            "cross_check": if matched { "MATCH" } else { "MISMATCH" },
            "vertex_surfaces": vertex.len(),
            "brute_force_extreme": brute.len(),
            "only_vertex": vertex.difference(&brute).map(to_value).collect::<Vec<_>>(),
            "only_brute_force": brute.difference(&vertex).map(to_value).collect::<Vec<_>>(),
        }));
        return Ok(Report { records, code: if matched { exit::OK } else { exit::FAILED } });
    }
    let surfaces = match method {
        Method::Vertex => {
            let all = enumerate_vertex_surfaces(&tri, limits)?;
            match bound {
                Some(b) => all.into_iter().filter(|v| v.coordinate_sum() <= BigInt::from(b)).collect(),
                None => all,
            }
        }
        Method::Brute => brute_force_enumerate(&tri, bound.unwrap_or(6), limits)?,
        Method::Octagon => enumerate_octagon_surfaces(&tri, bound.unwrap_or(6), limits)?,
    };
    let mut records = vec![json!({
        "triangulation_sha256": hash,
        "method": method.name(),
        "bound": if method == Method::Vertex { bound } else { Some(bound.unwrap_or(6)) },
        "count": surfaces.len(),
    })];
    records.extend(surfaces.iter().map(to_value));
    Ok(Report { records, code: exit::OK })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum HstAction {
    Complexity,
    Underlying,
    Search,
}

pub fn hst(splitting_text: &str, action: HstAction, relative: bool, budget: u64, limits: &Limits) -> Outcome {
    let s = AbstractSplitting::from_json(splitting_text)?;
    match action {
        HstAction::Complexity => {
            let abs = splitting_complexity(&s, false);
            let rel = splitting_complexity(&s, true);
            Ok(Report::ok(json!({
                "splitting": to_value(&s),
                "complexity": if relative { rel.to_string() } else { abs.to_string() },
                "absolute": to_value(&abs),
                "relative": to_value(&rel),
            })))
        }
        HstAction::Underlying => Ok(Report::ok(to_value(&underlying_splitting(&s)))),
        HstAction::Search => {
            if budget > limits.max_search_states {
                return Err(Error::ceiling("search states", limits.max_search_states).into());
            }
            let out = is_minimal_reachable(&s, budget, relative, MoveFamilies::default())?;
            let mut v = to_value(&out);
            v["status_text"] = json!(match out.status {
                normalhst::hst::SearchStatus::Certified => "certified",
                normalhst::hst::SearchStatus::BudgetExhausted => "budget exhausted",
            });
            Ok(Report::ok(v))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum WidthAction {
    Width,
    Split,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SpaceArg {
    Exchanges,
    Reorderings,
    All,
}

pub fn width_cmd(
    text: &str,
    action: WidthAction,
    space: SpaceArg,
    single_component: bool,
    budget: u64,
    limits: &Limits,
) -> Outcome {
    let p = MorsePresentation::parse(text)?;
    match action {
        WidthAction::Width => {
            let w = width(&p)?;
            let split = induced_splitting(&p).ok();
            Ok(Report::ok(json!({
                "profile": to_value(&w),
                "induced_splitting": split.as_ref().map(to_value),
            })))
        }
        WidthAction::Split => {
            let s = induced_splitting(&p)?;
            Ok(Report::ok(json!({
                "splitting": to_value(&s),
                "complexity": to_value(&splitting_complexity(&s, true)),
            })))
        }
        WidthAction::Search => {
            if budget > limits.max_search_states {
                return Err(Error::ceiling("search states", limits.max_search_states).into());
            }
            let space = match space {
                SpaceArg::Exchanges => SearchSpace::Exchanges,
                SpaceArg::Reorderings => SearchSpace::Reorderings,
                SpaceArg::All => SearchSpace::AllPresentations,
            };
            let r = thin_position_search(&p, &ThinSearch { space, single_component, budget })?;
            Ok(Report::ok(to_value(&r)))
        }
    }
}

pub fn curve_decompose(values: &[u64]) -> Outcome {
    let flat: [u64; 12] = values
        .try_into()
        .map_err(|_| CliError::input(format!("expected 12 arc counts, got {}", values.len())))?;
    let p = CurvePattern::from_flat(flat);
    let d = decompose_pattern(&p)?;
    let check = check_348(&p)?;
    Ok(Report::ok(json!({
        "decomposition": to_value(&d),
        "check_348": to_value(&check),
    })))
}

pub fn curve_loops(max_length: usize, limits: &Limits) -> Outcome {
    let census = enumerate_normal_loops(max_length, limits)?;
    let lengths: BTreeSet<usize> = census.loops.iter().map(|l| l.length).collect();
    Ok(Report::ok(json!({
        "max_length": max_length,
        "loops": census.loops.len(),
        "lengths": lengths,
        "classes": to_value(&census.classes),
    })))
}

/// Reads a resource ceiling override: one number for every ceiling, or
/// `name=value` pairs separated by commas.
pub fn parse_ceiling(text: &str) -> Result<Limits, CliError> {
    let text = text.trim();
    if let Ok(n) = text.parse::<u64>() {
        return Ok(Limits::with_all(n));
    }
    let mut limits = Limits::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("NORMALHST_CEILING: expected name=value, got `{part}`")))?;
        let n: u64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("NORMALHST_CEILING: `{value}` is not a number")))?;
        let as_usize = usize::try_from(n).unwrap_or(usize::MAX);
        match key.trim() {
            "max_rays" => limits.max_rays = as_usize,
            "max_bound" => limits.max_bound = n,
            "max_results" => limits.max_results = as_usize,
            "max_pieces" => limits.max_pieces = n,
            "max_loop_length" => limits.max_loop_length = as_usize,
            "max_search_states" => limits.max_search_states = n,
            other => return Err(CliError::input(format!("NORMALHST_CEILING: unknown ceiling `{other}`"))),
        }
    }
    Ok(limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLEX: &str = include_str!("../../../corpus/simplex_boundary.tri");
    const PSEUDO: &str = include_str!("../../../corpus/pseudo_manifold.tri");

    #[test]
    fn validate_exit_codes() {
        assert_eq!(validate(SIMPLEX).unwrap().code, exit::OK);
        let r = validate(PSEUDO).unwrap();
        assert_eq!(r.code, exit::FAILED);
        assert_eq!(r.records[0]["problems"][0], "vertex 0: link is neither a sphere nor a disk");
        let err = validate("1\n0:0:123 - - -\n").unwrap_err();
        assert_eq!(err.code, exit::INPUT);
    }

    #[test]
    fn ceiling_parsing() {
        assert_eq!(parse_ceiling("5").unwrap(), Limits::with_all(5));
        let l = parse_ceiling("max_rays=10, max_bound=3").unwrap();
        assert_eq!((l.max_rays, l.max_bound), (10, 3));
        assert_eq!(parse_ceiling("nope=1").unwrap_err().code, exit::INPUT);
    }

    #[test]
    fn hst_complexity_of_genus_two() {
        let r = hst("[[],[[-2,0]],[]]", HstAction::Complexity, false, 0, &Limits::default()).unwrap();
        assert_eq!(r.records[0]["complexity"], "(16)");
        let r = hst("[[],[[-2,0]],[]]", HstAction::Search, false, 0, &Limits::default()).unwrap();
        assert_eq!(r.records[0]["status_text"], "budget exhausted");
    }
}
