//! Explicit reconstruction of a surface from its coordinates.
//!
//! Every piece is instantiated, parallel pieces are stacked in normal order, arcs are
//! glued across faces, and the resulting cell structure is measured directly. Nothing
//! here reads the matching system: a face whose arc counts disagree is reported as it
//! is met.

use super::{is_admissible, tube_problem, PieceKind, PieceRef, SurfaceVector};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::tet::{edge_index, face_vertices, partner, EDGES};
use crate::triangulation::{compute_skeleton, Triangulation};
use crate::unionfind::{DisjointSets, ParitySets};
use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

impl Serialize for PieceKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientability {
    Orientable,
    NonOrientable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub pieces: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub boundary_circles: usize,
    pub is_sphere: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub euler_characteristic: i64,
    pub component_count: usize,
    pub components: Vec<ComponentSummary>,
    pub orientable: Orientability,
    pub closed: bool,
    /// One entry per edge class of the triangulation.
    pub edge_weights: Vec<u64>,
}

impl SurfaceSummary {
    pub fn is_connected_sphere(&self) -> bool {
        self.component_count == 1 && self.components[0].is_sphere
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceInstance {
    pub id: usize,
    pub tet: usize,
    pub kind: PieceKind,
    pub index: usize,
    pub component: usize,
    /// Corners in boundary order, as `(edge, position from the lower endpoint)`.
    pub corners: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArcRef {
    pub tet: usize,
    pub face: usize,
    pub vertex: usize,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "via", rename_all = "snake_case")]
pub enum GluingKind {
    Arc { arc: ArcRef },
    Tube,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceAdjacency {
    pub first: usize,
    pub second: usize,
    #[serde(flatten)]
    pub kind: GluingKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    pub summary: SurfaceSummary,
    pub pieces: Vec<PieceInstance>,
    pub adjacencies: Vec<PieceAdjacency>,
}

struct Counts {
    tri: [usize; 4],
    quad: [usize; 3],
    oct: [usize; 3],
}

fn small(x: &BigInt, limits: &Limits) -> Result<usize> {
    x.to_usize()
        .filter(|&n| n as u64 <= limits.max_pieces)
        .ok_or_else(|| Error::ceiling("pieces", limits.max_pieces))
}

/// Indexing of points on edges and arcs on faces for the whole triangulation.
struct Layout {
    edge_total: Vec<[usize; 6]>,
    point_base: Vec<[usize; 6]>,
    arc_count: Vec<[[usize; 4]; 4]>,
    arc_base: Vec<[[usize; 4]; 4]>,
    points: usize,
    arcs: usize,
}

impl Layout {
    fn new(v: &SurfaceVector) -> Layout {
        let n = v.tets.len();
        let mut l = Layout {
            edge_total: vec![[0; 6]; n],
            point_base: vec![[0; 6]; n],
            arc_count: vec![[[0; 4]; 4]; n],
            arc_base: vec![[[0; 4]; 4]; n],
            points: 0,
            arcs: 0,
        };
        for (t, c) in v.tets.iter().enumerate() {
            for e in 0..6 {
                let w = c.edge_weight(e).to_usize().unwrap();
                l.edge_total[t][e] = w;
                l.point_base[t][e] = l.points;
                l.points += w;
            }
            for f in 0..4 {
                for w in face_vertices(f) {
                    let k = c.arc_count(f, w).to_usize().unwrap();
                    l.arc_count[t][f][w] = k;
                    l.arc_base[t][f][w] = l.arcs;
                    l.arcs += k;
                }
            }
        }
        l
    }

    fn point(&self, t: usize, e: usize, pos: usize) -> usize {
        debug_assert!(pos < self.edge_total[t][e]);
        self.point_base[t][e] + pos
    }

    /// The point where arc `i` cutting off `v` meets edge `{v, w}`.
    fn arc_end(&self, t: usize, v: usize, w: usize, i: usize) -> usize {
        let e = edge_index(v, w);
        let pos = if v < w { i } else { self.edge_total[t][e] - 1 - i };
        self.point(t, e, pos)
    }

    fn arc(&self, t: usize, f: usize, v: usize, i: usize) -> usize {
        debug_assert!(i < self.arc_count[t][f][v]);
        self.arc_base[t][f][v] + i
    }

    /// Endpoints of an arc, ordered by the ascending other vertices of the face.
    fn arc_ends(&self, t: usize, f: usize, v: usize, i: usize) -> (usize, usize) {
        let mut others = face_vertices(f).into_iter().filter(|&w| w != v);
        let (w1, w2) = (others.next().unwrap(), others.next().unwrap());
        (self.arc_end(t, v, w1, i), self.arc_end(t, v, w2, i))
    }
}

/// Arcs of a piece as `(face, cut-off vertex, index from that vertex)`.
fn piece_arcs(c: &Counts, kind: PieceKind, index: usize) -> Vec<(usize, usize, usize)> {
    match kind {
        PieceKind::Triangle(v) => face_vertices(v).iter().map(|&f| (f, v, index)).collect(),
        PieceKind::Quad(q) => (0..4)
            .map(|f| {
                let v = partner(q, f);
                let from_v = if v == 0 || partner(q, v) == 0 { index } else { c.quad[q] - 1 - index };
                (f, v, c.tri[v] + from_v)
            })
            .collect(),
        PieceKind::Octagon(k) => (0..4)
            .flat_map(|f| {
                let p = partner(k, f);
                face_vertices(f)
                    .into_iter()
                    .filter(move |&v| v != p)
                    .map(move |v| (f, v, c.tri[v]))
            })
            .collect(),
    }
}

/// Chains arc endpoints into one boundary cycle.
fn chain(ends: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut cycle = vec![ends[0].0];
    let mut used = vec![false; ends.len()];
    used[0] = true;
    let mut cur = ends[0].1;
    while cur != cycle[0] {
        cycle.push(cur);
        let next = (0..ends.len()).find(|&j| !used[j] && (ends[j].0 == cur || ends[j].1 == cur));
        let Some(j) = next else {
            return Err(Error::Invalid("piece boundary does not close up".into()));
        };
        used[j] = true;
        cur = if ends[j].0 == cur { ends[j].1 } else { ends[j].0 };
    }
    if cycle.len() != ends.len() || used.iter().any(|u| !u) {
        return Err(Error::Invalid("piece boundary is not a single cycle".into()));
    }
    Ok(cycle)
}

const CORNERS: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

type Vec3 = [BigInt; 3];

/// Exact corner position, scaled by `scale`, which every `total + 1` must divide.
fn point_coords(scale: &BigInt, total: usize, e: usize, pos: usize) -> Vec3 {
    let [a, b] = EDGES[e];
    let unit = scale / BigInt::from(total + 1);
    std::array::from_fn(|i| {
        let along = CORNERS[a][i] * (total as i64 + 1) + (pos as i64 + 1) * (CORNERS[b][i] - CORNERS[a][i]);
        &unit * along
    })
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    std::array::from_fn(|i| &a[i] - &b[i])
}

fn dot(a: &Vec3, b: &Vec3) -> BigInt {
    (0..3).map(|i| &a[i] * &b[i]).sum()
}

/// Newell normal and (length-scaled) centroid of a polygon.
fn normal_and_centroid(poly: &[Vec3]) -> (Vec3, Vec3) {
    let mut n: Vec3 = Default::default();
    let mut c: Vec3 = Default::default();
    for (i, p) in poly.iter().enumerate() {
        let q = &poly[(i + 1) % poly.len()];
        n[0] += (&p[1] - &q[1]) * (&p[2] + &q[2]);
        n[1] += (&p[2] - &q[2]) * (&p[0] + &q[0]);
        n[2] += (&p[0] - &q[0]) * (&p[1] + &q[1]);
        for k in 0..3 {
            c[k] += &p[k];
        }
    }
    (n, c)
}

/// Builds the surface piece by piece and measures it.
pub fn reconstruct_surface(tri: &Triangulation, v: &SurfaceVector, limits: &Limits) -> Result<Reconstruction> {
    if v.tets.len() != tri.tetrahedron_count() {
        return Err(Error::DimensionMismatch { expected: tri.tetrahedron_count(), found: v.tets.len() });
    }
    if let Some(tube) = &v.tube {
        if let Some(reason) = tube_problem(tri, v, tube) {
            return Err(Error::InvalidTube(reason));
        }
    }
    if !is_admissible(tri, v) {
        return Err(Error::Inadmissible("reconstruction needs an admissible vector".into()));
    }
    let total = v.coordinate_sum();
    small(&total, limits)?;
    for c in &v.tets {
        for e in 0..6 {
            small(&c.edge_weight(e), limits)?;
        }
    }

    let counts: Vec<Counts> = v
        .tets
        .iter()
        .map(|c| Counts {
            tri: std::array::from_fn(|i| c.tri[i].to_usize().unwrap()),
            quad: std::array::from_fn(|i| c.quad[i].to_usize().unwrap()),
            oct: std::array::from_fn(|i| c.oct[i].to_usize().unwrap()),
        })
        .collect();
    let layout = Layout::new(v);

    // Instantiate pieces with their boundary cycles.
    let mut pieces = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut arc_owner = vec![usize::MAX; layout.arcs];
    let mut point_owner = vec![usize::MAX; layout.points];
    for (t, c) in counts.iter().enumerate() {
        let kinds = (0..4)
            .map(|i| (PieceKind::Triangle(i), c.tri[i]))
            .chain((0..3).map(|i| (PieceKind::Quad(i), c.quad[i])))
            .chain((0..3).map(|i| (PieceKind::Octagon(i), c.oct[i])));
        for (kind, n) in kinds {
            for index in 0..n {
                let id = pieces.len();
                let arcs = piece_arcs(c, kind, index);
                let ends: Vec<(usize, usize)> =
                    arcs.iter().map(|&(f, w, i)| layout.arc_ends(t, f, w, i)).collect();
                for &(f, w, i) in &arcs {
                    let a = layout.arc(t, f, w, i);
                    if arc_owner[a] != usize::MAX {
                        return Err(Error::Invalid(format!("arc {a} claimed by two pieces")));
                    }
                    arc_owner[a] = id;
                }
                let cycle = chain(&ends)?;
                for &p in &cycle {
                    point_owner[p] = id;
                }
                cycles.push(cycle);
                pieces.push(PieceInstance { id, tet: t, kind, index, component: 0, corners: Vec::new() });
            }
        }
    }
    debug_assert!(arc_owner.iter().all(|&o| o != usize::MAX));
    debug_assert!(point_owner.iter().all(|&o| o != usize::MAX));

    // Where each point sits in its piece's cycle, to read arc directions.
    let mut point_slot = vec![0usize; layout.points];
    for cycle in &cycles {
        for (k, &p) in cycle.iter().enumerate() {
            point_slot[p] = k;
        }
    }
    let forward = |x: usize, y: usize| {
        let cycle = &cycles[point_owner[x]];
        point_slot[y] == (point_slot[x] + 1) % cycle.len()
    };

    let mut comps = DisjointSets::new(pieces.len());
    let mut arc_classes = DisjointSets::new(layout.arcs);
    let mut point_classes = DisjointSets::new(layout.points);
    let mut orientation = ParitySets::new(pieces.len());
    let mut consistent = vec![true; 0];
    let mut contradictions = Vec::new();
    let mut adjacencies = Vec::new();
    let mut boundary_arcs = Vec::new();

    for t in 0..tri.tetrahedron_count() {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else {
                for w in face_vertices(f) {
                    for i in 0..layout.arc_count[t][f][w] {
                        boundary_arcs.push(layout.arc(t, f, w, i));
                    }
                }
                continue;
            };
            if (g.tet, g.face) < (t, f) {
                continue;
            }
            for w in face_vertices(f) {
                let gw = g.perm.apply(w);
                let (here, across) = (layout.arc_count[t][f][w], layout.arc_count[g.tet][g.face][gw]);
                if here != across {
                    return Err(Error::Inadmissible(format!(
                        "arc counts disagree across tetrahedron {t} face {f} arc {w}: {here} vs {across}"
                    )));
                }
                for i in 0..here {
                    let a = layout.arc(t, f, w, i);
                    let b = layout.arc(g.tet, g.face, gw, i);
                    let (pa, pb) = (arc_owner[a], arc_owner[b]);
                    comps.union(pa, pb);
                    arc_classes.union(a, b);
                    let (x, y) = layout.arc_ends(t, f, w, i);
                    let mut others = face_vertices(f).into_iter().filter(|&u| u != w);
                    let (w1, w2) = (others.next().unwrap(), others.next().unwrap());
                    let x2 = layout.arc_end(g.tet, gw, g.perm.apply(w1), i);
                    let y2 = layout.arc_end(g.tet, gw, g.perm.apply(w2), i);
                    point_classes.union(x, x2);
                    point_classes.union(y, y2);
                    // Shared arcs are traversed in opposite senses by coherent orientations.
                    let same_sense = forward(x, y) == forward(x2, y2);
                    if !orientation.relate(pa, pb, same_sense) {
                        contradictions.push(pa);
                    }
                    adjacencies.push(PieceAdjacency {
                        first: pa,
                        second: pb,
                        kind: GluingKind::Arc { arc: ArcRef { tet: t, face: f, vertex: w, index: i } },
                    });
                }
            }
        }
    }

    let mut tube_piece = None;
    if let Some(tube) = &v.tube {
        let find = |p: PieceRef| {
            pieces
                .iter()
                .position(|x| x.tet == tube.tet && x.kind == p.kind && x.index == p.index)
                .expect("tube pieces were checked to exist")
        };
        let (p1, p2) = (find(tube.first), find(tube.second));
        let scale: BigInt = (0..6).map(|e| BigInt::from(layout.edge_total[tube.tet][e] + 1)).product();
        let geometry = |p: usize| {
            let poly: Vec<Vec3> = cycles[p]
                .iter()
                .map(|&pt| {
                    let (e, pos) = locate(&layout, tube.tet, pt);
                    point_coords(&scale, layout.edge_total[tube.tet][e], e, pos)
                })
                .collect();
            let (n, c) = normal_and_centroid(&poly);
            // Centroids are compared at a common scale.
            let k = BigInt::from(poly.len());
            (n, c, k)
        };
        let ((n1, c1, k1), (n2, c2, k2)) = (geometry(p1), geometry(p2));
        let c1s: Vec3 = std::array::from_fn(|i| &c1[i] * &k2);
        let c2s: Vec3 = std::array::from_fn(|i| &c2[i] * &k1);
        let (s1, s2) = (dot(&n1, &sub(&c2s, &c1s)).sign(), dot(&n2, &sub(&c1s, &c2s)).sign());
        if s1 == Sign::NoSign || s2 == Sign::NoSign {
            return Err(Error::InvalidTube("tube pieces are degenerate".into()));
        }
        // Coherent orientations make both disks face each other, or both face away.
        if !orientation.relate(p1, p2, s1 != s2) {
            contradictions.push(p1);
        }
        comps.union(p1, p2);
        adjacencies.push(PieceAdjacency { first: p1, second: p2, kind: GluingKind::Tube });
        tube_piece = Some(p1);
    }
    consistent.resize(pieces.len(), true);
    for p in contradictions {
        consistent[p] = false;
    }

    let (labels, component_count) = comps.labels();
    let mut components = vec![
        ComponentSummary { pieces: 0, euler_characteristic: 0, orientable: true, boundary_circles: 0, is_sphere: false };
        component_count
    ];
    for (p, piece) in pieces.iter_mut().enumerate() {
        piece.component = labels[p];
        piece.corners = cycles[p].iter().map(|&pt| locate(&layout, piece.tet, pt)).collect();
        components[labels[p]].pieces += 1;
        components[labels[p]].euler_characteristic += 1;
        if !consistent[p] {
            components[labels[p]].orientable = false;
        }
    }
    let (arc_labels, arc_class_count) = arc_classes.labels();
    let mut arc_class_seen = vec![false; arc_class_count];
    for a in 0..layout.arcs {
        if !std::mem::replace(&mut arc_class_seen[arc_labels[a]], true) {
            components[labels[arc_owner[a]]].euler_characteristic -= 1;
        }
    }
    let (point_labels, point_class_count) = point_classes.labels();
    let mut point_class_seen = vec![false; point_class_count];
    for p in 0..layout.points {
        if !std::mem::replace(&mut point_class_seen[point_labels[p]], true) {
            components[labels[point_owner[p]]].euler_characteristic += 1;
        }
    }
    if let Some(p) = tube_piece {
        components[labels[p]].euler_characteristic -= 2;
    }

    // Boundary circles: boundary arcs joined at shared point classes.
    let mut circles = DisjointSets::new(point_class_count);
    let mut on_boundary = vec![false; point_class_count];
    for &a in &boundary_arcs {
        let (x, y) = arc_endpoints(&layout, a);
        let (cx, cy) = (point_labels[x], point_labels[y]);
        circles.union(cx, cy);
        on_boundary[cx] = true;
        on_boundary[cy] = true;
    }
    let mut counted = vec![false; point_class_count];
    for p in 0..layout.points {
        let c = point_labels[p];
        if on_boundary[c] {
            let root = circles.find(c);
            if !std::mem::replace(&mut counted[root], true) {
                components[labels[point_owner[p]]].boundary_circles += 1;
            }
        }
    }
    for c in &mut components {
        c.is_sphere = c.boundary_circles == 0 && c.euler_characteristic == 2;
    }

    let sk = compute_skeleton(tri);
    let edge_weights = sk
        .edges
        .iter()
        .map(|o| layout.edge_total[o.members[0].tet][o.members[0].index] as u64)
        .collect();
    let orientable = if pieces.is_empty() {
        Orientability::Unknown
    } else if components.iter().all(|c| c.orientable) {
        Orientability::Orientable
    } else {
        Orientability::NonOrientable
    };
    let summary = SurfaceSummary {
        euler_characteristic: components.iter().map(|c| c.euler_characteristic).sum(),
        component_count,
        closed: components.iter().all(|c| c.boundary_circles == 0),
        components,
        orientable,
        edge_weights,
    };
    Ok(Reconstruction { summary, pieces, adjacencies })
}

/// `(edge, position)` of a global point index within tetrahedron `t`.
fn locate(layout: &Layout, t: usize, pt: usize) -> (usize, usize) {
    let e = (0..6)
        .rev()
        .find(|&e| layout.point_base[t][e] <= pt && layout.edge_total[t][e] > 0)
        .expect("point belongs to this tetrahedron");
    (e, pt - layout.point_base[t][e])
}

fn arc_endpoints(layout: &Layout, a: usize) -> (usize, usize) {
    for t in 0..layout.arc_base.len() {
        for f in 0..4 {
            for w in face_vertices(f) {
                let base = layout.arc_base[t][f][w];
                if a >= base && a < base + layout.arc_count[t][f][w] {
                    return layout.arc_ends(t, f, w, a - base);
                }
            }
        }
    }
    unreachable!("arc index out of range")
}
