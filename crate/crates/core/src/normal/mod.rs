//! Normal and almost normal surfaces in coordinates.
//!
//! Each tetrahedron carries 4 triangle, 3 quadrilateral and 3 octagon coordinates.
//! Triangle `v` cuts off vertex `v`; quad and octagon types follow [`crate::tet`].
//!
//! On face `f` of a tetrahedron, a normal arc is named by the vertex it cuts off.
//! Triangle `v` leaves one arc of type `v` on each face other than `f = v`; quad `q`
//! leaves one arc on every face, cutting off the vertex paired with `f`; octagon `k`
//! leaves two arcs on every face, cutting off the two vertices not paired with `f`.

mod json;
mod reconstruct;

pub use reconstruct::{
    reconstruct_surface, ArcRef, ComponentSummary, GluingKind, Orientability, PieceAdjacency,
    PieceInstance, Reconstruction, SurfaceSummary,
};

use crate::error::{Error, Result};
use crate::tet::{edge_index, face_vertices, partner, quad_crosses, EDGES};
use crate::triangulation::{compute_skeleton, Skeleton, Triangulation};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coordinates of one tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TetCoords {
    #[serde(with = "json::big_array")]
    pub tri: [BigInt; 4],
    #[serde(with = "json::big_array")]
    pub quad: [BigInt; 3],
    #[serde(with = "json::big_array", default)]
    pub oct: [BigInt; 3],
}

impl TetCoords {
    /// Number of arcs cutting off vertex `v` on face `f` (including octagon arcs).
    pub fn arc_count(&self, f: usize, v: usize) -> BigInt {
        debug_assert!(f != v);
        let mut c = self.tri[v].clone();
        for q in 0..3 {
            if partner(q, f) == v {
                c += &self.quad[q];
            } else {
                // Octagons of the other two types cut off v on this face.
                c += &self.oct[q];
            }
        }
        c
    }

    /// Number of points the pieces make on edge `e`.
    pub fn edge_weight(&self, e: usize) -> BigInt {
        let [a, b] = EDGES[e];
        let mut w = &self.tri[a] + &self.tri[b];
        for q in 0..3 {
            if quad_crosses(q, e) {
                w += &self.quad[q];
                w += &self.oct[q];
            } else {
                w += &self.oct[q] * 2;
            }
        }
        w
    }

    pub fn piece_count(&self) -> BigInt {
        self.tri.iter().chain(&self.quad).chain(&self.oct).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.tri.iter().chain(&self.quad).chain(&self.oct).all(Zero::is_zero)
    }

    pub fn count(&self, kind: PieceKind) -> &BigInt {
        match kind {
            PieceKind::Triangle(v) => &self.tri[v],
            PieceKind::Quad(q) => &self.quad[q],
            PieceKind::Octagon(k) => &self.oct[k],
        }
    }
}

/// The shape of one normal or almost normal piece in a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Triangle(usize),
    Quad(usize),
    Octagon(usize),
}

impl PieceKind {
    pub fn arity(&self) -> usize {
        match self {
            PieceKind::Triangle(_) => 3,
            PieceKind::Quad(_) => 4,
            PieceKind::Octagon(_) => 8,
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceKind::Triangle(v) => write!(f, "tri{v}"),
            PieceKind::Quad(q) => write!(f, "quad{q}"),
            PieceKind::Octagon(k) => write!(f, "oct{k}"),
        }
    }
}

/// A single piece in a tetrahedron, addressed by its stacking index.
///
/// Triangles at `v` are numbered outward from `v`. Quads are numbered starting from the
/// side that contains vertex 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PieceRef {
    pub kind: PieceKind,
    pub index: usize,
}

/// Two normal disks in one tetrahedron joined by a single tube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tube {
    pub tet: usize,
    pub first: PieceRef,
    pub second: PieceRef,
}

/// Surface coordinates over a whole triangulation, plus an optional tube.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceVector {
    pub tets: Vec<TetCoords>,
    #[serde(default, with = "json::tube")]
    pub tube: Option<Tube>,
}

impl SurfaceVector {
    pub fn zero(tetrahedra: usize) -> SurfaceVector {
        SurfaceVector { tets: vec![TetCoords::default(); tetrahedra], tube: None }
    }

    /// Builds a normal vector from the 7-per-tetrahedron triangle/quad layout.
    pub fn from_normal_coords(coords: &[BigInt]) -> SurfaceVector {
        assert_eq!(coords.len() % 7, 0);
        let tets = coords
            .chunks(7)
            .map(|c| TetCoords {
                tri: [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()],
                quad: [c[4].clone(), c[5].clone(), c[6].clone()],
                oct: Default::default(),
            })
            .collect();
        SurfaceVector { tets, tube: None }
    }

    /// The triangle/quad coordinates in matching-system order.
    pub fn normal_coords(&self) -> Vec<BigInt> {
        self.tets
            .iter()
            .flat_map(|t| t.tri.iter().chain(&t.quad).cloned())
            .collect()
    }

    pub fn total_octagons(&self) -> BigInt {
        self.tets.iter().flat_map(|t| &t.oct).sum()
    }

    pub fn coordinate_sum(&self) -> BigInt {
        self.tets.iter().map(TetCoords::piece_count).sum()
    }

    /// Coordinatewise sum; the tube is kept if exactly one side carries one.
    pub fn add(&self, other: &SurfaceVector) -> SurfaceVector {
        assert_eq!(self.tets.len(), other.tets.len());
        let tets = self
            .tets
            .iter()
            .zip(&other.tets)
            .map(|(a, b)| TetCoords {
                tri: std::array::from_fn(|i| &a.tri[i] + &b.tri[i]),
                quad: std::array::from_fn(|i| &a.quad[i] + &b.quad[i]),
                oct: std::array::from_fn(|i| &a.oct[i] + &b.oct[i]),
            })
            .collect();
        SurfaceVector { tets, tube: self.tube.or(other.tube) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("surface vectors always serialise")
    }

    pub fn from_json(text: &str) -> Result<SurfaceVector> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("surface vector JSON: {e}")))
    }
}

/// One row of the matching system: arcs cutting off `vertex` on `(tet, face)` equal
/// the corresponding arcs on the glued face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingRow {
    pub face_class: usize,
    pub tet: usize,
    pub face: usize,
    pub vertex: usize,
    pub coefficients: Vec<i64>,
}

/// Matching equations over the `7 * n` triangle/quad coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingSystem {
    pub unknowns: usize,
    pub rows: Vec<MatchingRow>,
}

/// Column of a triangle/quad coordinate in the matching system.
pub fn coordinate_column(tet: usize, kind: PieceKind) -> usize {
    match kind {
        PieceKind::Triangle(v) => 7 * tet + v,
        PieceKind::Quad(q) => 7 * tet + 4 + q,
        PieceKind::Octagon(_) => panic!("octagons are not matching-system unknowns"),
    }
}

/// Column of the quad type that cuts off `v` on face `f`.
fn quad_for_arc(f: usize, v: usize) -> usize {
    crate::tet::quad_pairing(f, v)
}

pub fn matching_system(tri: &Triangulation) -> MatchingSystem {
    let sk = compute_skeleton(tri);
    matching_system_with(tri, &sk)
}

pub(crate) fn matching_system_with(tri: &Triangulation, sk: &Skeleton) -> MatchingSystem {
    let unknowns = 7 * tri.tetrahedron_count();
    let mut rows = Vec::new();
    for (class, orbit) in sk.internal_faces() {
        let rep = orbit.members[0];
        let (t, f) = (rep.tet, rep.index);
        let g = tri.gluing(t, f).expect("internal face has a partner");
        for v in face_vertices(f) {
            let tv = g.perm.apply(v);
            let mut coefficients = vec![0i64; unknowns];
            coefficients[coordinate_column(t, PieceKind::Triangle(v))] += 1;
            coefficients[coordinate_column(t, PieceKind::Quad(quad_for_arc(f, v)))] += 1;
            coefficients[coordinate_column(g.tet, PieceKind::Triangle(tv))] -= 1;
            coefficients[coordinate_column(g.tet, PieceKind::Quad(quad_for_arc(g.face, tv)))] -= 1;
            rows.push(MatchingRow { face_class: class, tet: t, face: f, vertex: v, coefficients });
        }
    }
    MatchingSystem { unknowns, rows }
}

impl MatchingSystem {
    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| r.coefficients.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.unknowns {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in 0..m.len() {
                if r == rank || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..self.unknowns {
                    let v = &m[r][c] * &pivot - &factor * &m[rank][c];
                    m[r][c] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Evaluates every row at `x`.
    pub fn residuals(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|r| {
                r.coefficients
                    .iter()
                    .zip(x)
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, v)| v * BigInt::from(*c))
                    .sum()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceMode {
    Normal,
    AlmostNormal,
}

/// A single failed admissibility condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    Negative { tet: usize, piece: String },
    Matching {
        tet: usize,
        face: usize,
        vertex: usize,
        #[serde(with = "json::big")]
        here: BigInt,
        #[serde(with = "json::big")]
        across: BigInt,
    },
    QuadConstraint { tet: usize, quad_types: Vec<usize> },
    OctagonInNormalSurface { tet: usize },
    TubeInNormalSurface,
    OctagonCount {
        #[serde(with = "json::big")]
        total: BigInt,
    },
    OctagonWithQuads { tet: usize },
    TubeWithOctagon,
    MissingExceptionalPiece,
    InvalidTube { reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Negative { tet, piece } => write!(f, "negative coordinate {piece} in tetrahedron {tet}"),
            Violation::Matching { tet, face, vertex, here, across } => write!(
                f,
                "matching equation fails on tetrahedron {tet} face {face} arc {vertex}: {here} vs {across}"
            ),
            Violation::QuadConstraint { tet, quad_types } => {
                write!(f, "quad constraint: tetrahedron {tet} has quad types {quad_types:?}")
            }
            Violation::OctagonInNormalSurface { tet } => write!(f, "octagon in tetrahedron {tet} of a normal surface"),
            Violation::TubeInNormalSurface => write!(f, "tube in a normal surface"),
            Violation::OctagonCount { total } => write!(f, "octagon count {total}, expected exactly one"),
            Violation::OctagonWithQuads { tet } => write!(f, "octagon shares tetrahedron {tet} with quads"),
            Violation::TubeWithOctagon => write!(f, "tube and octagon both present"),
            Violation::MissingExceptionalPiece => write!(f, "no octagon or tube"),
            Violation::InvalidTube { reason } => write!(f, "invalid tube: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub mode: SurfaceMode,
    pub admissible: bool,
    pub violations: Vec<Violation>,
}

fn check_dimension(tri: &Triangulation, v: &SurfaceVector) -> Result<()> {
    if v.tets.len() != tri.tetrahedron_count() {
        return Err(Error::DimensionMismatch {
            expected: tri.tetrahedron_count(),
            found: v.tets.len(),
        });
    }
    Ok(())
}

/// Matching violations, with octagon arcs included, read straight off the gluings.
fn matching_violations(tri: &Triangulation, v: &SurfaceVector) -> Vec<Violation> {
    let mut out = Vec::new();
    for t in 0..tri.tetrahedron_count() {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            // Each glued pair once.
            if (g.tet, g.face) < (t, f) {
                continue;
            }
            for w in face_vertices(f) {
                let here = v.tets[t].arc_count(f, w);
                let across = v.tets[g.tet].arc_count(g.face, g.perm.apply(w));
                if here != across {
                    out.push(Violation::Matching { tet: t, face: f, vertex: w, here, across });
                }
            }
        }
    }
    out
}

/// Checks the tube annotation refers to two distinct, stack-adjacent normal disks.
pub fn tube_problem(tri: &Triangulation, v: &SurfaceVector, tube: &Tube) -> Option<String> {
    if tube.tet >= tri.tetrahedron_count() {
        return Some(format!("tetrahedron {} does not exist", tube.tet));
    }
    let coords = &v.tets[tube.tet];
    for p in [tube.first, tube.second] {
        if matches!(p.kind, PieceKind::Octagon(_)) {
            return Some("a tube joins two normal disks, not an octagon".into());
        }
        if BigInt::from(p.index) >= *coords.count(p.kind) {
            return Some(format!("piece {} #{} does not exist in tetrahedron {}", p.kind, p.index, tube.tet));
        }
    }
    if tube.first == tube.second {
        return Some("a tube must join two distinct pieces".into());
    }
    if !stack_adjacent(coords, tube.first, tube.second) {
        return Some(format!(
            "pieces {} #{} and {} #{} are not adjacent in the stacking",
            tube.first.kind, tube.first.index, tube.second.kind, tube.second.index
        ));
    }
    None
}

/// Positions (counted from the lower endpoint) where a piece meets edge `e`.
pub(crate) fn positions_on_edge(coords: &TetCoords, e: usize, piece: PieceRef) -> Vec<BigInt> {
    let [a, b] = EDGES[e];
    let total = coords.edge_weight(e);
    let idx = BigInt::from(piece.index);
    match piece.kind {
        PieceKind::Triangle(v) if v == a => vec![idx],
        PieceKind::Triangle(v) if v == b => vec![total - 1 - idx],
        PieceKind::Triangle(_) => vec![],
        PieceKind::Quad(q) => {
            if !quad_crosses(q, e) {
                return vec![];
            }
            let a_on_zero_side = a == 0 || partner(q, a) == 0;
            let offset = if a_on_zero_side { idx } else { &coords.quad[q] - 1 - idx };
            vec![&coords.tri[a] + offset]
        }
        PieceKind::Octagon(k) => {
            if quad_crosses(k, e) {
                vec![coords.tri[a].clone()]
            } else {
                vec![coords.tri[a].clone(), &coords.tri[a] + 1]
            }
        }
    }
}

/// Two pieces are adjacent when they are consecutive along some edge, i.e. when no
/// other piece separates them.
pub fn stack_adjacent(coords: &TetCoords, p: PieceRef, q: PieceRef) -> bool {
    (0..6).any(|e| {
        let pp = positions_on_edge(coords, e, p);
        let qp = positions_on_edge(coords, e, q);
        pp.iter().any(|x| qp.iter().any(|y| (x - y).abs().is_one()))
    })
}

/// Verifies nonnegativity, matching, the quad constraint and the mode-specific
/// octagon/tube rule, reporting every failure.
pub fn check_admissible(tri: &Triangulation, v: &SurfaceVector, mode: SurfaceMode) -> Result<AdmissibilityReport> {
    check_dimension(tri, v)?;
    let mut violations = Vec::new();
    for (t, c) in v.tets.iter().enumerate() {
        let named = (0..4)
            .map(|i| (format!("tri{i}"), &c.tri[i]))
            .chain((0..3).map(|i| (format!("quad{i}"), &c.quad[i])))
            .chain((0..3).map(|i| (format!("oct{i}"), &c.oct[i])));
        for (piece, x) in named {
            if x.is_negative() {
                violations.push(Violation::Negative { tet: t, piece });
            }
        }
    }
    violations.extend(matching_violations(tri, v));
    for (t, c) in v.tets.iter().enumerate() {
        let quad_types: Vec<usize> = (0..3).filter(|&q| !c.quad[q].is_zero()).collect();
        if quad_types.len() > 1 {
            violations.push(Violation::QuadConstraint { tet: t, quad_types });
        }
    }

    let total_oct = v.total_octagons();
    match mode {
        SurfaceMode::Normal => {
            for (t, c) in v.tets.iter().enumerate() {
                if c.oct.iter().any(|x| !x.is_zero()) {
                    violations.push(Violation::OctagonInNormalSurface { tet: t });
                }
            }
            if v.tube.is_some() {
                violations.push(Violation::TubeInNormalSurface);
            }
        }
        SurfaceMode::AlmostNormal => {
            let any_oct = v.tets.iter().any(|c| c.oct.iter().any(|x| !x.is_zero()));
            match (&v.tube, any_oct) {
                (None, false) => violations.push(Violation::MissingExceptionalPiece),
                (Some(_), true) => violations.push(Violation::TubeWithOctagon),
                (None, true) => {
                    if !total_oct.is_one() {
                        violations.push(Violation::OctagonCount { total: total_oct.clone() });
                    }
                    for (t, c) in v.tets.iter().enumerate() {
                        if c.oct.iter().any(|x| !x.is_zero()) && c.quad.iter().any(|x| !x.is_zero()) {
                            violations.push(Violation::OctagonWithQuads { tet: t });
                        }
                    }
                }
                (Some(tube), false) => {
                    if violations.iter().all(|x| !matches!(x, Violation::Negative { .. })) {
                        if let Some(reason) = tube_problem(tri, v, tube) {
                            violations.push(Violation::InvalidTube { reason });
                        }
                    }
                }
            }
        }
    }
    Ok(AdmissibilityReport { mode, admissible: violations.is_empty(), violations })
}

/// True when `v` satisfies either the normal or the almost normal conditions.
pub fn is_admissible(tri: &Triangulation, v: &SurfaceVector) -> bool {
    [SurfaceMode::Normal, SurfaceMode::AlmostNormal]
        .iter()
        .any(|&m| check_admissible(tri, v, m).map(|r| r.admissible).unwrap_or(false))
}

/// The vertex link of a vertex class: one triangle per corner in the class.
pub fn vertex_link(tri: &Triangulation, vertex: usize) -> Result<SurfaceVector> {
    let sk = compute_skeleton(tri);
    let orbit = sk
        .vertices
        .get(vertex)
        .ok_or_else(|| Error::Invalid(format!("vertex class {vertex} does not exist")))?;
    let mut v = SurfaceVector::zero(tri.tetrahedron_count());
    for c in &orbit.members {
        v.tets[c.tet].tri[c.index] += 1;
    }
    Ok(v)
}

/// Euler characteristic by cell counting: points on edges, arcs on faces, pieces.
///
/// Each edge and face class is counted once, read off its first member; a tube turns
/// its two disks into one annulus, which costs 2.
pub fn euler_characteristic(tri: &Triangulation, v: &SurfaceVector) -> Result<BigInt> {
    check_dimension(tri, v)?;
    if !is_admissible(tri, v) {
        return Err(Error::Inadmissible("euler characteristic needs an admissible vector".into()));
    }
    let sk = compute_skeleton(tri);
    let vertices: BigInt = sk
        .edges
        .iter()
        .map(|o| v.tets[o.members[0].tet].edge_weight(o.members[0].index))
        .sum();
    let edges: BigInt = sk
        .faces
        .iter()
        .map(|o| {
            let (t, f) = (o.members[0].tet, o.members[0].index);
            face_vertices(f).iter().map(|&w| v.tets[t].arc_count(f, w)).sum::<BigInt>()
        })
        .sum();
    let faces = v.coordinate_sum();
    let tube = if v.tube.is_some() { BigInt::from(2) } else { BigInt::zero() };
    Ok(vertices - edges + faces - tube)
}

/// Edge weights per edge class, read from the first member of each class.
pub fn edge_weights(tri: &Triangulation, v: &SurfaceVector) -> Result<Vec<BigInt>> {
    check_dimension(tri, v)?;
    let sk = compute_skeleton(tri);
    Ok(sk
        .edges
        .iter()
        .map(|o| v.tets[o.members[0].tet].edge_weight(o.members[0].index))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Normal,
    AlmostNormalOctagon,
    AlmostNormalTube,
    Inadmissible,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Normal => "Normal",
            Classification::AlmostNormalOctagon => "AlmostNormalOctagon",
            Classification::AlmostNormalTube => "AlmostNormalTube",
            Classification::Inadmissible => "Inadmissible",
        })
    }
}

pub fn classify(tri: &Triangulation, v: &SurfaceVector) -> Classification {
    let ok = |mode| check_admissible(tri, v, mode).map(|r| r.admissible).unwrap_or(false);
    if ok(SurfaceMode::Normal) {
        Classification::Normal
    } else if ok(SurfaceMode::AlmostNormal) {
        if v.tube.is_some() {
            Classification::AlmostNormalTube
        } else {
            Classification::AlmostNormalOctagon
        }
    } else {
        Classification::Inadmissible
    }
}

/// Index of edge `{a, b}`, re-exported for callers building vectors by hand.
pub fn edge(a: usize, b: usize) -> usize {
    edge_index(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::examples::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn arc_incidence_per_piece() {
        // Each quad leaves exactly one arc per face, each octagon exactly two.
        for q in 0..3 {
            let mut quad = TetCoords::default();
            quad.quad[q] = big(1);
            let mut oct = TetCoords::default();
            oct.oct[q] = big(1);
            for f in 0..4 {
                let qa: BigInt = face_vertices(f).iter().map(|&v| quad.arc_count(f, v)).sum();
                let oa: BigInt = face_vertices(f).iter().map(|&v| oct.arc_count(f, v)).sum();
                assert_eq!((qa, oa), (big(1), big(2)));
            }
            let qw: BigInt = (0..6).map(|e| quad.edge_weight(e)).sum();
            let ow: BigInt = (0..6).map(|e| oct.edge_weight(e)).sum();
            assert_eq!((qw, ow), (big(4), big(8)));
        }
    }

    #[test]
    fn matching_system_sizes() {
        let s = matching_system(&single_tetrahedron());
        assert_eq!((s.rows.len(), s.unknowns), (0, 7));
        let s = matching_system(&doubled_tetrahedron());
        assert_eq!((s.rows.len(), s.unknowns), (12, 14));
        let s = matching_system(&simplex_boundary());
        assert_eq!((s.rows.len(), s.unknowns), (30, 35));
    }

    #[test]
    fn zero_vector_is_admissible_and_empty() {
        let t = doubled_tetrahedron();
        let z = SurfaceVector::zero(2);
        assert!(check_admissible(&t, &z, SurfaceMode::Normal).unwrap().admissible);
        assert_eq!(euler_characteristic(&t, &z).unwrap(), big(0));
        assert_eq!(classify(&t, &z), Classification::Normal);
    }

    #[test]
    fn vertex_links_are_normal_spheres() {
        for tri in [doubled_tetrahedron(), simplex_boundary()] {
            let sk = compute_skeleton(&tri);
            for vtx in 0..sk.vertices.len() {
                let link = vertex_link(&tri, vtx).unwrap();
                assert_eq!(classify(&tri, &link), Classification::Normal);
                assert_eq!(euler_characteristic(&tri, &link).unwrap(), big(2));
                let residuals = matching_system(&tri).residuals(&link.normal_coords());
                assert!(residuals.iter().all(Zero::is_zero));
            }
        }
        let single = single_tetrahedron();
        let link = vertex_link(&single, 2).unwrap();
        assert_eq!(link.coordinate_sum(), big(1));
        assert_eq!(euler_characteristic(&single, &link).unwrap(), big(1));
    }

    #[test]
    fn two_quad_types_violate_quad_constraint() {
        let t = single_tetrahedron();
        let mut v = SurfaceVector::zero(1);
        v.tets[0].quad[0] = big(1);
        v.tets[0].quad[2] = big(1);
        let r = check_admissible(&t, &v, SurfaceMode::Normal).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.violations, vec![Violation::QuadConstraint { tet: 0, quad_types: vec![0, 2] }]);
        assert_eq!(classify(&t, &v), Classification::Inadmissible);
    }

    #[test]
    fn negative_and_dimension_errors() {
        let t = single_tetrahedron();
        let mut v = SurfaceVector::zero(1);
        v.tets[0].tri[1] = big(-1);
        let r = check_admissible(&t, &v, SurfaceMode::Normal).unwrap();
        assert_eq!(r.violations, vec![Violation::Negative { tet: 0, piece: "tri1".into() }]);
        assert!(matches!(
            check_admissible(&t, &SurfaceVector::zero(2), SurfaceMode::Normal),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
        assert_eq!(classify(&t, &SurfaceVector::zero(3)), Classification::Inadmissible);
    }

    #[test]
    fn octagon_rules() {
        let t = single_tetrahedron();
        let mut v = SurfaceVector::zero(1);
        v.tets[0].oct[1] = big(1);
        assert_eq!(classify(&t, &v), Classification::AlmostNormalOctagon);
        assert_eq!(euler_characteristic(&t, &v).unwrap(), big(1));
        v.tets[0].oct[1] = big(2);
        assert_eq!(classify(&t, &v), Classification::Inadmissible);
        v.tets[0].oct[1] = big(1);
        v.tets[0].oct[0] = big(1);
        assert_eq!(classify(&t, &v), Classification::Inadmissible);
        let mut w = SurfaceVector::zero(1);
        w.tets[0].oct[0] = big(1);
        w.tets[0].quad[0] = big(1);
        let r = check_admissible(&t, &w, SurfaceMode::AlmostNormal).unwrap();
        assert!(r.violations.contains(&Violation::OctagonWithQuads { tet: 0 }));
        let r = check_admissible(&t, &SurfaceVector::zero(1), SurfaceMode::AlmostNormal).unwrap();
        assert_eq!(r.violations, vec![Violation::MissingExceptionalPiece]);
    }

    #[test]
    fn vertex_link_plus_octagon_breaks_matching_in_closed_triangulations() {
        let t = doubled_tetrahedron();
        let mut v = vertex_link(&t, 0).unwrap();
        v.tets[0].oct[0] = big(1);
        let r = check_admissible(&t, &v, SurfaceMode::AlmostNormal).unwrap();
        assert!(r.violations.iter().any(|x| matches!(x, Violation::Matching { .. })));
        assert_eq!(classify(&t, &v), Classification::Inadmissible);
    }

    #[test]
    fn tube_adjacency() {
        let mut c = TetCoords::default();
        c.tri[0] = big(2);
        c.quad[0] = big(1);
        c.tri[3] = big(1);
        let tri0 = |i| PieceRef { kind: PieceKind::Triangle(0), index: i };
        let quad0 = PieceRef { kind: PieceKind::Quad(0), index: 0 };
        let tri3 = PieceRef { kind: PieceKind::Triangle(3), index: 0 };
        assert!(stack_adjacent(&c, tri0(0), tri0(1)));
        assert!(stack_adjacent(&c, tri0(1), quad0));
        assert!(!stack_adjacent(&c, tri0(0), quad0));
        assert!(stack_adjacent(&c, quad0, tri3));
        assert!(!stack_adjacent(&c, tri0(1), tri3));
    }

    #[test]
    fn json_schema_roundtrip() {
        let mut v = SurfaceVector::zero(2);
        v.tets[0].tri = [big(1), big(0), big(0), big(0)];
        v.tets[1].tri[0] = big(1);
        let text = v.to_json();
        assert_eq!(
            text,
            r#"{"tets":[{"tri":[1,0,0,0],"quad":[0,0,0],"oct":[0,0,0]},{"tri":[1,0,0,0],"quad":[0,0,0],"oct":[0,0,0]}],"tube":null}"#
        );
        assert_eq!(SurfaceVector::from_json(&text).unwrap(), v);
        let huge = r#"{"tets":[{"tri":["123456789012345678901234567890",0,0,0],"quad":[0,0,0],"oct":[0,0,0]}],"tube":null}"#;
        let parsed = SurfaceVector::from_json(huge).unwrap();
        assert_eq!(parsed.tets[0].tri[0].to_string(), "123456789012345678901234567890");
        assert_eq!(parsed.to_json(), huge);
        assert!(SurfaceVector::from_json(r#"{"tets":[{"tri":[1.5,0,0,0],"quad":[0,0,0]}]}"#).is_err());
    }
}
