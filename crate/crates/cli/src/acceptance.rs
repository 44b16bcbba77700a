//! The acceptance criteria, each checked against an independent oracle where one
//! exists. Output is a pure function of the seed.

use crate::commands::{self, cross_check_sets, surface_348, HstAction, Method, ModeArg, SpaceArg, WidthAction};
use crate::render::{render_all, Format};
use normalhst::curves::{check_348, enumerate_normal_loops, CurvePattern};
use normalhst::enumeration::{brute_force_enumerate, enumerate_octagon_surfaces};
use normalhst::hst::{
    c_surface, compress, legal_compressions, splitting_complexity, untangle_step, AbstractSplitting,
    AbstractSurface, Component, Compression,
};
use normalhst::normal::{
    euler_characteristic, is_admissible, reconstruct_surface, vertex_link, SurfaceVector, TetCoords,
};
use normalhst::thin::{legal_exchanges, thin_position_search, width, Event, MorsePresentation, SearchSpace, ThinSearch};
use normalhst::triangulation::{compute_skeleton, validate_manifold};
use normalhst::triangulation::examples::{doubled_tetrahedron, simplex_boundary, single_tetrahedron};
use normalhst::{Limits, Triangulation};
use normalhst_oracles::{curves as curve_oracle, surfaces as surface_oracle, width as width_oracle};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

pub const DEFAULT_SEED: u64 = 20_240_917;

/// The bundled corpus of triangulations.
pub const CORPUS: [(&str, &str); 5] = [
    ("single.tri", include_str!("../../../corpus/single.tri")),
    ("doubled.tri", include_str!("../../../corpus/doubled.tri")),
    ("simplex_boundary.tri", include_str!("../../../corpus/simplex_boundary.tri")),
    ("one_tet_closed.tri", include_str!("../../../corpus/one_tet_closed.tri")),
    ("pseudo_manifold.tri", include_str!("../../../corpus/pseudo_manifold.tri")),
];

fn corpus() -> Vec<(&'static str, Triangulation)> {
    CORPUS.iter().map(|(n, t)| (*n, Triangulation::parse(t).expect("corpus parses"))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        line_of(&serde_json::to_value(self).expect("criteria serialise"))
    }
}

/// `criterion N [PASS] title: detail`, from a criterion's JSON record.
pub fn line_of(record: &serde_json::Value) -> String {
    format!(
        "criterion {} [{}] {}: {}",
        record["number"],
        if record["pass"] == true { "PASS" } else { "FAIL" },
        record["title"].as_str().unwrap_or(""),
        record["detail"].as_str().unwrap_or("")
    )
}

/// Collects failures while a criterion runs.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, number: u32, title: &'static str, summary: String) -> Criterion {
        let pass = self.failures.is_empty();
        let detail = if pass {
            summary
        } else {
            let more = self.failures.len() - 1;
            let tail = if more > 0 { format!(" (and {more} more)") } else { String::new() };
            format!("{}{tail}", self.failures[0])
        };
        Criterion { number, title, pass, detail }
    }
}

pub fn curve_length_law() -> Criterion {
    let mut c = Checks::default();
    let census = match enumerate_normal_loops(20, &Limits::default()) {
        Ok(x) => x,
        Err(e) => {
            c.require(false, || e.to_string());
            return c.finish(1, "curve length law", String::new());
        }
    };
    let lengths: BTreeSet<usize> = census.loops.iter().map(|l| l.length).collect();
    c.require(lengths.iter().all(|l| [3, 4, 8, 12, 16, 20].contains(l)), || {
        format!("unexpected loop lengths {lengths:?}")
    });
    for (len, size) in [(3, 4), (4, 3), (8, 3)] {
        let classes: Vec<usize> = census.classes.iter().filter(|k| k.length == len).map(|k| k.size).collect();
        c.require(classes == vec![size], || format!("length {len}: class sizes {classes:?}, expected [{size}]"));
    }
    let ours: Vec<(usize, Vec<usize>, usize)> =
        census.classes.iter().map(|k| (k.length, k.word.clone(), k.size)).collect();
    let oracle: Vec<(usize, Vec<usize>, usize)> =
        curve_oracle::loop_classes(20).into_iter().map(|k| (k.length, k.word, k.size)).collect();
    c.require(ours == oracle, || {
        format!("census has {} classes, word search has {}", ours.len(), oracle.len())
    });
    let summary = format!(
        "{} loops in {} classes up to length 20, lengths {:?}, matching the word search",
        census.loops.len(),
        census.classes.len(),
        lengths
    );
    c.finish(1, "curve length law", summary)
}

fn single_piece(kind: usize, k: usize) -> CurvePattern {
    let mut t = TetCoords::default();
    match kind {
        0 => t.tri[k] = 1.into(),
        1 => t.quad[k] = 1.into(),
        _ => t.oct[k] = 1.into(),
    }
    CurvePattern::of_tetrahedron(&t).expect("unit pieces fit")
}

pub fn octagon_loop_rule() -> Criterion {
    let mut c = Checks::default();
    let mut checked = 0;
    for (name, tri) in corpus() {
        let found = match enumerate_octagon_surfaces(&tri, 6, &Limits::default()) {
            Ok(x) => x,
            Err(e) => {
                c.require(false, || format!("{name}: {e}"));
                continue;
            }
        };
        for v in found.iter().filter(|v| is_admissible(&tri, v)) {
            checked += 1;
            let mut octagons = 0;
            for t in &v.tets {
                let r = check_348(&CurvePattern::of_tetrahedron(t).unwrap()).unwrap();
                c.require(r.lengths.iter().all(|&l| l == 3 || l == 4 || l == 8), || {
                    format!("{name}: loop lengths {:?} in {}", r.lengths, v.to_json())
                });
                octagons += r.octagon_loops;
            }
            c.require(octagons == 1, || format!("{name}: {octagons} octagon loops in {}", v.to_json()));
            let global = surface_348(v, 1).unwrap();
            c.require(global["pass"] == true, || format!("{name}: surface check failed on {}", v.to_json()));
        }
    }
    c.require(checked > 0, || "no admissible octagon surfaces in the corpus".into());

    // Hand-built violations, each of which must be rejected with a witness.
    let census = enumerate_normal_loops(16, &Limits::default()).unwrap();
    let long = |n: usize| census.loops.iter().find(|l| l.length == n).unwrap().pattern;
    let bad = [
        ("two parallel octagons", single_piece(2, 0).scale(2)),
        ("length 12 loop", long(12)),
        ("length 16 loop", long(16)),
        ("octagon and quad", single_piece(2, 0).add(&single_piece(1, 1))),
    ];
    for (what, p) in bad {
        let r = check_348(&p).unwrap();
        c.require(!r.pass && r.witness.is_some(), || format!("{what} was accepted"));
    }
    // Two octagons in different tetrahedra pass locally but fail the global clause.
    let mut two = SurfaceVector::zero(2);
    two.tets[0].oct[0] = 1.into();
    two.tets[1].oct[0] = 1.into();
    let g = surface_348(&two, 1).unwrap();
    c.require(g["pass"] == false && !g["witness"].is_null(), || "split octagons passed the global clause".into());
    let summary = format!("{checked} admissible octagon surfaces pass; 5 hand-built violations rejected with witnesses");
    c.finish(2, "octagon loop rule", summary)
}

pub fn enumeration_agreement() -> Criterion {
    let mut c = Checks::default();
    let mut counts = Vec::new();
    for (name, tri) in [
        ("single tetrahedron", single_tetrahedron()),
        ("doubled tetrahedron", doubled_tetrahedron()),
        ("4-simplex boundary", simplex_boundary()),
    ] {
        match cross_check_sets(&tri, 6, &Limits::default()) {
            Ok((vertex, brute)) => {
                c.require(!vertex.is_empty(), || format!("{name}: no vertex surfaces"));
                c.require(vertex == brute, || {
                    format!("{name}: {} vertex surfaces vs {} brute-force extreme rays", vertex.len(), brute.len())
                });
                counts.push(format!("{name} {}", vertex.len()));
            }
            Err(e) => c.require(false, || format!("{name}: {e}")),
        }
    }
    c.finish(3, "enumeration oracle agreement", format!("equal sets at sum <= 6: {}", counts.join(", ")))
}

pub fn euler_two_paths() -> Criterion {
    let mut c = Checks::default();
    let mut checked = 0;
    let mut links = 0;
    for (name, tri) in corpus() {
        let limits = Limits::default();
        let mut all = brute_force_enumerate(&tri, 6, &limits).unwrap_or_default();
        all.extend(enumerate_octagon_surfaces(&tri, 6, &limits).unwrap_or_default());
        for v in all.iter().filter(|v| is_admissible(&tri, v)) {
            checked += 1;
            let chi = euler_characteristic(&tri, v);
            let r = reconstruct_surface(&tri, v, &limits);
            match (chi, r) {
                (Ok(chi), Ok(r)) => {
                    let parts: i64 = r.summary.components.iter().map(|k| k.euler_characteristic).sum();
                    c.require(chi == BigInt::from(parts), || {
                        format!("{name}: χ {chi} vs components {parts} on {}", v.to_json())
                    });
                    let cells = surface_oracle::euler_characteristic(&tri, v);
                    c.require(chi == cells, || format!("{name}: χ {chi} vs cell count {cells} on {}", v.to_json()));
                }
                (a, b) => c.require(false, || format!("{name}: {:?} {:?}", a.err(), b.err())),
            }
        }
        let report = validate_manifold(&tri);
        if report.is_manifold && report.closed {
            for vtx in 0..compute_skeleton(&tri).vertices.len() {
                links += 1;
                let link = vertex_link(&tri, vtx).unwrap();
                let ok = reconstruct_surface(&tri, &link, &limits)
                    .map(|r| r.summary.component_count == 1 && r.summary.euler_characteristic == 2)
                    .unwrap_or(false);
                c.require(ok, || format!("{name}: link of vertex {vtx} is not a connected χ = 2 surface"));
            }
        }
    }
    let summary = format!("{checked} admissible vectors agree on three counts; {links} vertex links are spheres");
    c.finish(4, "euler characteristic two-path agreement", summary)
}

fn window() -> Vec<Component> {
    (0..=4).flat_map(|g| (0..=6).map(move |p| Component::new(-2 * g, p).unwrap())).collect()
}

fn random_component(rng: &mut ChaCha8Rng) -> Component {
    Component::new(-2 * rng.gen_range(0..=4), rng.gen_range(0..=6)).unwrap()
}

fn random_splitting(rng: &mut ChaCha8Rng) -> AbstractSplitting {
    let thick_levels = rng.gen_range(1..=2);
    let mut levels = vec![AbstractSurface::empty()];
    for i in 0..thick_levels {
        let n = rng.gen_range(1..=2);
        levels.push(AbstractSurface::new((0..n).map(|_| random_component(rng)).collect()));
        if i + 1 < thick_levels {
            levels.push(AbstractSurface::new(vec![random_component(rng)]));
        }
    }
    levels.push(AbstractSurface::empty());
    AbstractSplitting::new(levels).unwrap()
}

/// Half the time, tries one random untangling step at a random thick level.
fn random_untangle(s: &AbstractSplitting, relative: bool, rng: &mut ChaCha8Rng) -> Option<AbstractSplitting> {
    if rng.gen_bool(0.5) {
        return None;
    }
    let thick: Vec<usize> = s.thick_indices().collect();
    let p = thick[rng.gen_range(0..thick.len())];
    let g = &s.levels[p];
    let options = legal_compressions(g, relative);
    if options.is_empty() {
        return None;
    }
    let d = options[rng.gen_range(0..options.len())];
    let e = options[rng.gen_range(0..options.len())];
    let gd = compress(g, d.component, d.kind).ok()?;
    let ge = compress(g, e.component, e.kind).ok()?;
    compress(&gd, e.component, e.kind).ok()?;
    untangle_step(s, p, d, e, gd == s.levels[p - 1], ge == s.levels[p + 1]).ok()
}

pub fn descent_and_termination(seed: u64) -> Criterion {
    let mut c = Checks::default();
    let mut compressions = 0u64;
    let mut untangles = 0u64;
    for comp in window() {
        let f = AbstractSurface::new(vec![comp]);
        for relative in [false, true] {
            let options = legal_compressions(&f, relative);
            for d in &options {
                compressions += 1;
                let g = compress(&f, d.component, d.kind).unwrap();
                for measure in [relative, true] {
                    // Absolute moves lower both measures; relative moves only the relative one.
                    if !measure && matches!(d.kind, normalhst::hst::CompressKind::Relative) {
                        continue;
                    }
                    c.require(c_surface(&g, measure) < c_surface(&f, measure), || {
                        format!("{comp:?} {d:?}: c did not drop (relative measure {measure})")
                    });
                }
            }
            for d in &options {
                let gd = compress(&f, d.component, d.kind).unwrap();
                for e in &options {
                    if compress(&gd, e.component, e.kind).is_err() {
                        continue;
                    }
                    let ge = compress(&f, e.component, e.kind).unwrap();
                    for below in [false, true] {
                        for above in [false, true] {
                            let s = AbstractSplitting::new(vec![
                                if below { gd.clone() } else { AbstractSurface::empty() },
                                f.clone(),
                                if above { ge.clone() } else { AbstractSurface::empty() },
                            ])
                            .unwrap();
                            if let Ok(next) = untangle_step(&s, 1, *d, *e, below, above) {
                                untangles += 1;
                                c.require(
                                    splitting_complexity(&next, relative) < splitting_complexity(&s, relative),
                                    || format!("untangle {d:?} {e:?} on {} did not descend", s.to_json()),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    c.require(untangles > 0, || "no untangle steps were exercised".into());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut longest = 0usize;
    let mut total_steps = 0u64;
    for _ in 0..10_000 {
        let relative = rng.gen_bool(0.5);
        let mut s = random_splitting(&mut rng);
        let mut steps = 0usize;
        loop {
            // Any legal compression is a move, so the run ends exactly when there is none.
            let options: Vec<(usize, Compression)> = s
                .thick_indices()
                .flat_map(|p| legal_compressions(&s.levels[p], relative).into_iter().map(move |c| (p, c)))
                .collect();
            if options.is_empty() {
                break;
            }
            let next = random_untangle(&s, relative, &mut rng).unwrap_or_else(|| {
                let (p, d) = options[rng.gen_range(0..options.len())];
                let mut levels = s.levels.clone();
                levels[p] = compress(&s.levels[p], d.component, d.kind).expect("legal compression");
                AbstractSplitting { levels }
            });
            if splitting_complexity(&next, relative) >= splitting_complexity(&s, relative) {
                c.require(false, || format!("move from {} did not descend", s.to_json()));
                break;
            }
            s = next;
            steps += 1;
            if steps > 10_000 {
                c.require(false, || "a rewrite run exceeded 10000 steps".into());
                break;
            }
        }
        longest = longest.max(steps);
        total_steps += steps as u64;
    }
    let summary = format!(
        "{compressions} compressions and {untangles} untangle steps descend; 10000 runs (seed {seed}) \
         terminate, {total_steps} moves, longest {longest}"
    );
    c.finish(5, "descent and termination", summary)
}

pub fn width_arithmetic() -> Criterion {
    use Event::{Birth as B, Death as D};
    let mut c = Checks::default();
    let w = |events: Vec<Event>| width(&MorsePresentation::new(events).unwrap()).unwrap().width;
    c.require(w(vec![B(0), D(0)]) == 2, || "[B,D] width is not 2".into());
    c.require(w(vec![B(0), B(0), D(0), D(0)]) == 8, || "[B,B,D,D] width is not 8".into());
    let start = MorsePresentation::new(vec![B(0), B(0), D(0), D(0)]).unwrap();
    for (single, expected) in [(false, 4), (true, 8)] {
        let cfg = ThinSearch { space: SearchSpace::AllPresentations, single_component: single, budget: 100_000 };
        let r = thin_position_search(&start, &cfg).unwrap();
        c.require(r.certified && r.min_width == Some(expected), || {
            format!("4-event minimum (single {single}): {:?}, certified {}", r.min_width, r.certified)
        });
        c.require(width_oracle::minimum_width(4, single) == Some(expected), || {
            format!("oracle 4-event minimum (single {single}) is not {expected}")
        });
    }
    let mut exchanges = 0;
    let mut presentations = 0;
    for n in [0, 2, 4, 6] {
        for p in width_oracle::all_presentations(n) {
            presentations += 1;
            let before = width_oracle::width(&p);
            for (_, x) in legal_exchanges(&p) {
                exchanges += 1;
                let after = width_oracle::width(&x.presentation);
                c.require(after < before, || format!("exchange on {:?} did not narrow", p.events));
            }
        }
    }
    c.require(exchanges > 0, || "no legal exchanges found".into());
    let summary = format!(
        "[B,D] = 2, [B,B,D,D] = 8, 4-event minima 4 and 8 certified; {exchanges} exchanges over \
         {presentations} presentations all narrow"
    );
    c.finish(6, "width arithmetic", summary)
}

/// Every documented command, run in process on bundled inputs.
pub fn documented_commands() -> Vec<(String, String)> {
    let limits = Limits::default();
    let single = CORPUS[0].1;
    let doubled = CORPUS[1].1;
    let simplex = CORPUS[2].1;
    let pseudo = CORPUS[4].1;
    let link = r#"{"tets":[{"tri":[1,0,0,0],"quad":[0,0,0],"oct":[0,0,0]},{"tri":[1,0,0,0],"quad":[0,0,0],"oct":[0,0,0]}],"tube":null}"#;
    let octagon = r#"{"tets":[{"tri":[0,0,0,0],"quad":[0,0,0],"oct":[1,0,0]}],"tube":null}"#;
    let splitting = "[[],[[-2,0]],[]]";
    let bridge = "B 0\nB 0\nD 0\nD 0\n";
    let runs: Vec<(String, Result<commands::Report, commands::CliError>)> = vec![
        ("validate simplex".into(), commands::validate(simplex)),
        ("validate pseudo".into(), commands::validate(pseudo)),
        ("surface link".into(), commands::surface(doubled, link, ModeArg::Auto, &limits)),
        ("surface octagon".into(), commands::surface(single, octagon, ModeArg::AlmostNormal, &limits)),
        ("enumerate vertex".into(), commands::enumerate(single, Method::Vertex, None, false, &limits)),
        ("enumerate brute".into(), commands::enumerate(doubled, Method::Brute, Some(3), false, &limits)),
        ("enumerate octagon".into(), commands::enumerate(single, Method::Octagon, Some(2), false, &limits)),
        ("enumerate cross-check".into(), commands::enumerate(doubled, Method::Vertex, Some(6), true, &limits)),
        ("hst complexity".into(), commands::hst(splitting, HstAction::Complexity, false, 0, &limits)),
        ("hst underlying".into(), commands::hst(splitting, HstAction::Underlying, false, 0, &limits)),
        ("hst search".into(), commands::hst(splitting, HstAction::Search, true, 1000, &limits)),
        (
            "width width".into(),
            commands::width_cmd(bridge, WidthAction::Width, SpaceArg::All, false, 0, &limits),
        ),
        (
            "width split".into(),
            commands::width_cmd(bridge, WidthAction::Split, SpaceArg::All, false, 0, &limits),
        ),
        (
            "width search".into(),
            commands::width_cmd(bridge, WidthAction::Search, SpaceArg::All, true, 1000, &limits),
        ),
        ("curve decompose".into(), commands::curve_decompose(&[0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 0])),
        ("curve loops".into(), commands::curve_loops(12, &limits)),
    ];
    runs.into_iter()
        .flat_map(|(name, r)| {
            let text = |f| match &r {
                Ok(rep) => format!("{}exit {}\n", render_all(&rep.records, f), rep.code),
                Err(e) => format!("error {}: {e}\n", e.code),
            };
            [(format!("{name} json"), text(Format::Json)), (format!("{name} table"), text(Format::Table))]
        })
        .collect()
}

pub fn determinism() -> Criterion {
    let mut c = Checks::default();
    let first = documented_commands();
    let second = documented_commands();
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        c.require(a == b, || format!("`{name}` differs between runs"));
    }
    let summary = format!("{} command outputs identical across two in-process runs", first.len());
    c.finish(7, "determinism", summary)
}

/// Criteria 1 to 6, then the in-process determinism check.
pub fn run_all(seed: u64) -> Vec<Criterion> {
    vec![
        curve_length_law(),
        octagon_loop_rule(),
        enumeration_agreement(),
        euler_two_paths(),
        descent_and_termination(seed),
        width_arithmetic(),
        determinism(),
    ]
}
