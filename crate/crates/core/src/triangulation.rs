//! Triangulations given by face pairings, their skeleta and vertex links.
//!
//! Text format, one tetrahedron per line after the count:
//!
//! ```text
//! 2            # tetrahedron count
//! 1:0:123 1:1:023 1:2:013 1:3:012
//! 0:0:123 0:1:023 0:2:013 0:3:012
//! ```
//!
//! Each token is `-` for an unglued face or `t:f:abc`, gluing the current face to face
//! `f` of tetrahedron `t`. `abc` lists the images of the source face's three corners in
//! ascending corner order. `#` starts a comment.

use crate::error::{Error, Result};
use crate::tet::{edge_index, face_vertices, Perm4, EDGES};
use crate::unionfind::{DisjointSets, ParitySets};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Where a face goes: target tetrahedron, target face and the full vertex map.
///
/// `perm` sends the source face index to `face` and the source corners to the
/// target corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: Perm4,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    /// Builds a triangulation from explicit gluings, checking every invariant.
    pub fn from_gluings(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Triangulation> {
        if gluings.is_empty() {
            return Err(Error::Invalid("a triangulation needs at least one tetrahedron".into()));
        }
        let n = gluings.len();
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n || g.face >= 4 {
                    return Err(Error::IndexOutOfRange {
                        line: 0,
                        column: 0,
                        message: format!("tetrahedron {t} face {f} glued to ({}, {})", g.tet, g.face),
                    });
                }
                if g.perm.apply(f) != g.face {
                    return Err(Error::NotBijection {
                        line: 0,
                        column: 0,
                        message: format!("tetrahedron {t} face {f}: map does not send face to face"),
                    });
                }
                if g.tet == t && g.face == f {
                    return Err(Error::SelfGluedFace { tet: t, face: f });
                }
                let back = gluings[g.tet][g.face];
                let expected = Gluing { tet: t, face: f, perm: g.perm.inverse() };
                if back != Some(expected) {
                    return Err(Error::NonInvolutive {
                        tet: t,
                        face: f,
                        message: match back {
                            None => format!("partner ({}, {}) is unglued", g.tet, g.face),
                            Some(b) => format!(
                                "partner ({}, {}) points to ({}, {}) with map {:?}",
                                g.tet, g.face, b.tet, b.face, b.perm
                            ),
                        },
                    });
                }
            }
        }
        Ok(Triangulation { gluings })
    }

    /// Starts an all-unglued triangulation with `n` tetrahedra.
    pub fn builder(n: usize) -> TriangulationBuilder {
        TriangulationBuilder { gluings: vec![[None; 4]; n] }
    }

    pub fn tetrahedron_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    /// True when no face is unglued.
    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|fs| fs.iter().all(Option::is_some))
    }

    /// Parses the plain-text format described in the module docs.
    pub fn parse(text: &str) -> Result<Triangulation> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                (i + 1, body)
            })
            .filter(|(_, body)| !body.trim().is_empty());

        let (count_line, count_body) = lines.next().ok_or(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing tetrahedron count".into(),
        })?;
        let (count_col, count_tok) = tokens(count_body).next().unwrap();
        let n: usize = count_tok.parse().map_err(|_| Error::Syntax {
            line: count_line,
            column: count_col,
            message: format!("expected tetrahedron count, found `{count_tok}`"),
        })?;
        if let Some((col, extra)) = tokens(count_body).nth(1) {
            return Err(Error::Syntax {
                line: count_line,
                column: col,
                message: format!("unexpected token `{extra}` after tetrahedron count"),
            });
        }
        if n == 0 {
            return Err(Error::Syntax {
                line: count_line,
                column: count_col,
                message: "tetrahedron count must be positive".into(),
            });
        }

        let mut gluings = Vec::with_capacity(n);
        let mut positions = Vec::with_capacity(n);
        for t in 0..n {
            let (line, body) = lines.next().ok_or(Error::Syntax {
                line: count_line,
                column: 1,
                message: format!("expected {n} tetrahedron lines, found {t}"),
            })?;
            let toks: Vec<(usize, &str)> = tokens(body).collect();
            if toks.len() != 4 {
                let column = toks.get(4).map_or(1, |&(c, _)| c);
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("expected 4 gluing tokens, found {}", toks.len()),
                });
            }
            let mut faces = [None; 4];
            let mut cols = [0; 4];
            for (f, &(column, tok)) in toks.iter().enumerate() {
                cols[f] = column;
                faces[f] = parse_token(tok, f, n, line, column)?;
            }
            gluings.push(faces);
            positions.push((line, cols));
        }
        if let Some((line, body)) = lines.next() {
            return Err(Error::Syntax {
                line,
                column: tokens(body).next().map_or(1, |(c, _)| c),
                message: "unexpected content after the last tetrahedron".into(),
            });
        }
        // Self-gluing gets its own error; check it before involutivity so the message
        // names the real problem.
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if let Some(g) = g {
                    if g.tet == t && g.face == f {
                        return Err(Error::SelfGluedFace { tet: t, face: f });
                    }
                }
            }
        }
        Triangulation::from_gluings(gluings)
    }

    /// Serialises to the text format; `parse(to_text(t)) == t`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.tetrahedron_count()).unwrap();
        for faces in &self.gluings {
            let toks: Vec<String> = faces
                .iter()
                .enumerate()
                .map(|(f, g)| match g {
                    None => "-".to_string(),
                    Some(g) => {
                        let images: String = face_vertices(f)
                            .iter()
                            .map(|&c| char::from(b'0' + g.perm.apply(c) as u8))
                            .collect();
                        format!("{}:{}:{}", g.tet, g.face, images)
                    }
                })
                .collect();
            writeln!(out, "{}", toks.join(" ")).unwrap();
        }
        out
    }
}

fn tokens(body: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out.into_iter()
}

fn parse_token(tok: &str, face: usize, n: usize, line: usize, column: usize) -> Result<Option<Gluing>> {
    if tok == "-" {
        return Ok(None);
    }
    let syntax = |message: String| Error::Syntax { line, column, message };
    let parts: Vec<&str> = tok.split(':').collect();
    if parts.len() != 3 {
        return Err(syntax(format!("expected `-` or `t:f:abc`, found `{tok}`")));
    }
    let tet: usize = parts[0]
        .parse()
        .map_err(|_| syntax(format!("bad tetrahedron index `{}`", parts[0])))?;
    let target_face: usize = parts[1]
        .parse()
        .map_err(|_| syntax(format!("bad face index `{}`", parts[1])))?;
    if tet >= n {
        return Err(Error::IndexOutOfRange {
            line,
            column,
            message: format!("tetrahedron {tet} does not exist (count {n})"),
        });
    }
    if target_face >= 4 {
        return Err(Error::IndexOutOfRange {
            line,
            column,
            message: format!("face {target_face} does not exist"),
        });
    }
    let digits: Vec<char> = parts[2].chars().collect();
    if digits.len() != 3 || !digits.iter().all(|c| c.is_ascii_digit()) {
        return Err(syntax(format!("corner map must be three digits, found `{}`", parts[2])));
    }
    let images: Vec<usize> = digits.iter().map(|c| *c as usize - '0' as usize).collect();
    if let Some(&bad) = images.iter().find(|&&d| d >= 4) {
        return Err(Error::IndexOutOfRange {
            line,
            column,
            message: format!("corner {bad} does not exist"),
        });
    }
    let mut table = [0usize; 4];
    table[face] = target_face;
    for (corner, &img) in face_vertices(face).iter().zip(&images) {
        table[*corner] = img;
    }
    let perm = Perm4::from_images(table).ok_or_else(|| Error::NotBijection {
        line,
        column,
        message: format!("`{}` does not biject face {face} corners onto face {target_face} corners", parts[2]),
    })?;
    Ok(Some(Gluing { tet, face: target_face, perm }))
}

/// Incremental construction that always glues both sides at once.
#[derive(Debug, Clone)]
pub struct TriangulationBuilder {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl TriangulationBuilder {
    /// Glues face `face` of `tet` to the face `perm(face)` of `target`.
    pub fn glue(mut self, tet: usize, face: usize, target: usize, perm: Perm4) -> Self {
        let target_face = perm.apply(face);
        self.gluings[tet][face] = Some(Gluing { tet: target, face: target_face, perm });
        self.gluings[target][target_face] = Some(Gluing { tet, face, perm: perm.inverse() });
        self
    }

    pub fn build(self) -> Result<Triangulation> {
        Triangulation::from_gluings(self.gluings)
    }
}

/// A cell of the model complex: tetrahedron plus local index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellRef {
    pub tet: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub members: Vec<CellRef>,
    pub boundary: bool,
}

/// Vertex, edge and face classes of a triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    pub tetrahedra: usize,
    pub vertices: Vec<Orbit>,
    pub edges: Vec<Orbit>,
    pub faces: Vec<Orbit>,
    pub vertex_of: Vec<[usize; 4]>,
    pub edge_of: Vec<[usize; 6]>,
    pub face_of: Vec<[usize; 4]>,
    /// Edge classes in which some edge is identified with itself reversed.
    pub reversed_edges: Vec<usize>,
    pub orientable: bool,
}

impl Skeleton {
    /// `V - E + F - T`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
            - self.tetrahedra as i64
    }

    /// Face classes with a partner, i.e. the internal faces.
    pub fn internal_faces(&self) -> impl Iterator<Item = (usize, &Orbit)> {
        self.faces.iter().enumerate().filter(|(_, o)| !o.boundary)
    }
}

fn orbits<const K: usize>(
    labels: &[usize],
    classes: usize,
    tets: usize,
    boundary_of: impl Fn(usize, usize) -> bool,
) -> (Vec<Orbit>, Vec<[usize; K]>) {
    let mut out = vec![Orbit { members: Vec::new(), boundary: false }; classes];
    let mut class_of = vec![[0; K]; tets];
    for t in 0..tets {
        for i in 0..K {
            let c = labels[t * K + i];
            class_of[t][i] = c;
            out[c].members.push(CellRef { tet: t, index: i });
            out[c].boundary |= boundary_of(t, i);
        }
    }
    (out, class_of)
}

/// Computes cell orbits under the gluing maps.
pub fn compute_skeleton(tri: &Triangulation) -> Skeleton {
    let n = tri.tetrahedron_count();
    let mut vs = DisjointSets::new(4 * n);
    let mut es = ParitySets::new(6 * n);
    let mut es_plain = DisjointSets::new(6 * n);
    let mut fs = DisjointSets::new(4 * n);
    let mut reversed_roots = Vec::new();
    let mut orient = ParitySets::new(n);
    let mut orientable = true;

    for t in 0..n {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            fs.union(4 * t + f, 4 * g.tet + g.face);
            for v in face_vertices(f) {
                vs.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
            }
            for e in 0..6 {
                let [a, b] = EDGES[e];
                if a == f || b == f {
                    continue;
                }
                let (ia, ib) = (g.perm.apply(a), g.perm.apply(b));
                let target = edge_index(ia, ib);
                es_plain.union(6 * t + e, 6 * g.tet + target);
                // Parity records whether the lower-to-higher direction is preserved.
                if !es.relate(6 * t + e, 6 * g.tet + target, ia > ib) {
                    reversed_roots.push(6 * t + e);
                }
            }
            // Consistent orientations need o(t) * o(t') * sign = -1.
            if !orient.relate(t, g.tet, g.perm.sign() == 1) {
                orientable = false;
            }
        }
    }

    let boundary_face = |t: usize, f: usize| tri.gluing(t, f).is_none();
    let (vl, vc) = vs.labels();
    let (el, ec) = es_plain.labels();
    let (fl, fc) = fs.labels();
    let (vertices, vertex_of) = orbits::<4>(&vl, vc, n, |t, v| {
        (0..4).any(|f| f != v && boundary_face(t, f))
    });
    let (edges, edge_of) = orbits::<6>(&el, ec, n, |t, e| {
        crate::tet::faces_of_edge(e).iter().any(|&f| boundary_face(t, f))
    });
    let (faces, face_of) = orbits::<4>(&fl, fc, n, boundary_face);
    let mut reversed_edges: Vec<usize> = reversed_roots.iter().map(|&i| el[i]).collect();
    reversed_edges.sort_unstable();
    reversed_edges.dedup();

    Skeleton {
        tetrahedra: n,
        vertices,
        edges,
        faces,
        vertex_of,
        edge_of,
        face_of,
        reversed_edges,
        orientable,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    Sphere,
    Disk,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLinkReport {
    pub vertex: usize,
    pub triangles: usize,
    pub link_vertices: usize,
    pub link_edges: usize,
    pub euler_characteristic: i64,
    pub closed: bool,
    pub kind: LinkKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldReport {
    pub is_manifold: bool,
    pub closed: bool,
    pub orientable: bool,
    pub euler_characteristic: i64,
    pub links: Vec<VertexLinkReport>,
    /// Vertex classes whose link is neither a sphere nor a disk.
    pub bad_vertices: Vec<usize>,
    /// Edge classes identified with themselves in reverse.
    pub reversed_edges: Vec<usize>,
}

/// Rebuilds every vertex link from corner triangles and classifies it.
///
/// The link of a vertex class is the union of the corner triangles `(t, v)` in the
/// class. Its edge `(t, v, f)` lies in face `f`, and its vertex `(t, v, w)` sits on the
/// tetrahedron edge `vw` near `v`; gluings identify these.
pub fn validate_manifold(tri: &Triangulation) -> ManifoldReport {
    let sk = compute_skeleton(tri);
    let n = tri.tetrahedron_count();
    // Index link cells by (t, v, x) with x != v: 12 per tetrahedron.
    let idx = |t: usize, v: usize, x: usize| 16 * t + 4 * v + x;
    let mut lverts = DisjointSets::new(16 * n);
    let mut ledges = DisjointSets::new(16 * n);
    let mut glued_edge = vec![false; 16 * n];
    for t in 0..n {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            for v in face_vertices(f) {
                let tv = g.perm.apply(v);
                ledges.union(idx(t, v, f), idx(g.tet, tv, g.face));
                glued_edge[idx(t, v, f)] = true;
                for w in face_vertices(f) {
                    if w != v {
                        lverts.union(idx(t, v, w), idx(g.tet, tv, g.perm.apply(w)));
                    }
                }
            }
        }
    }

    let mut links = Vec::with_capacity(sk.vertices.len());
    for (vi, orbit) in sk.vertices.iter().enumerate() {
        let mut vroots = Vec::new();
        let mut eroots = Vec::new();
        let mut closed = true;
        for c in &orbit.members {
            let (t, v) = (c.tet, c.index);
            for x in 0..4 {
                if x == v {
                    continue;
                }
                vroots.push(lverts.find(idx(t, v, x)));
                eroots.push(ledges.find(idx(t, v, x)));
                closed &= glued_edge[idx(t, v, x)];
            }
        }
        vroots.sort_unstable();
        vroots.dedup();
        eroots.sort_unstable();
        eroots.dedup();
        let triangles = orbit.members.len();
        let chi = vroots.len() as i64 - eroots.len() as i64 + triangles as i64;
        let kind = match (closed, chi) {
            (true, 2) => LinkKind::Sphere,
            (false, 1) => LinkKind::Disk,
            _ => LinkKind::Other,
        };
        links.push(VertexLinkReport {
            vertex: vi,
            triangles,
            link_vertices: vroots.len(),
            link_edges: eroots.len(),
            euler_characteristic: chi,
            closed,
            kind,
        });
    }
    let bad_vertices: Vec<usize> = links
        .iter()
        .filter(|l| l.kind == LinkKind::Other)
        .map(|l| l.vertex)
        .collect();
    ManifoldReport {
        is_manifold: bad_vertices.is_empty() && sk.reversed_edges.is_empty(),
        closed: tri.is_closed(),
        orientable: sk.orientable,
        euler_characteristic: sk.euler_characteristic(),
        links,
        bad_vertices,
        reversed_edges: sk.reversed_edges.clone(),
    }
}

/// Small named triangulations used throughout the tests, the CLI and the demo.
pub mod examples {
    use super::*;

    /// One tetrahedron, every face on the boundary.
    pub fn single_tetrahedron() -> Triangulation {
        Triangulation::builder(1).build().unwrap()
    }

    /// Two tetrahedra glued face-to-face by the identity: a 3-sphere with four vertices.
    pub fn doubled_tetrahedron() -> Triangulation {
        (0..4)
            .fold(Triangulation::builder(2), |b, f| b.glue(0, f, 1, Perm4::IDENTITY))
            .build()
            .unwrap()
    }

    /// The boundary of the 4-simplex: tetrahedron `i` spans every simplex vertex but `i`.
    pub fn simplex_boundary() -> Triangulation {
        // Local vertex j of tetrahedron i is the j-th smallest element of {0..5} \ {i}.
        let global = |i: usize| -> [usize; 4] {
            let mut out = [0; 4];
            let mut k = 0;
            for g in 0..5 {
                if g != i {
                    out[k] = g;
                    k += 1;
                }
            }
            out
        };
        let mut b = Triangulation::builder(5);
        for i in 0..5 {
            for j in i + 1..5 {
                // The shared face misses i and j.
                let gi = global(i);
                let gj = global(j);
                let face_i = gi.iter().position(|&g| g == j).unwrap();
                let mut images = [0; 4];
                for (local, g) in gi.iter().enumerate() {
                    images[local] = if *g == j {
                        gj.iter().position(|&x| x == i).unwrap()
                    } else {
                        gj.iter().position(|x| x == g).unwrap()
                    };
                }
                b = b.glue(i, face_i, j, Perm4::from_images(images).unwrap());
            }
        }
        b.build().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn parse_single_tetrahedron() {
        let t = Triangulation::parse("1\n- - - -\n").unwrap();
        assert_eq!(t.tetrahedron_count(), 1);
        assert!(!t.is_closed());
    }

    #[test]
    fn parse_doubled_tetrahedron_roundtrip() {
        let d = doubled_tetrahedron();
        let text = d.to_text();
        assert_eq!(text, "2\n1:0:123 1:1:023 1:2:013 1:3:012\n0:0:123 0:1:023 0:2:013 0:3:012\n");
        assert_eq!(Triangulation::parse(&text).unwrap(), d);
        assert!(d.is_closed());
    }

    #[test]
    fn self_glued_face_rejected() {
        let err = Triangulation::parse("1\n0:0:123 - - -\n").unwrap_err();
        assert_eq!(err, Error::SelfGluedFace { tet: 0, face: 0 });
        assert!(err.to_string().contains("self-glued face"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Triangulation::parse("1\n- - x -\n").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 5)),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            Triangulation::parse("1\n5:0:123 - - -\n").unwrap_err(),
            Error::IndexOutOfRange { line: 2, column: 1, .. }
        ));
        assert!(matches!(
            Triangulation::parse("2\n1:0:112 - - -\n0:0:123 - - -\n").unwrap_err(),
            Error::NotBijection { .. }
        ));
        // Images must avoid the target face index.
        assert!(matches!(
            Triangulation::parse("2\n1:0:023 - - -\n0:0:123 - - -\n").unwrap_err(),
            Error::NotBijection { .. }
        ));
        assert!(matches!(
            Triangulation::parse("2\n1:0:123 - - -\n- - - -\n").unwrap_err(),
            Error::NonInvolutive { tet: 0, face: 0, .. }
        ));
        assert!(matches!(
            Triangulation::parse("2\n1:0:123 - - -\n0:0:132 - - -\n").unwrap_err(),
            Error::NonInvolutive { .. }
        ));
        assert!(matches!(Triangulation::parse("").unwrap_err(), Error::Syntax { .. }));
        assert!(matches!(
            Triangulation::parse("2\n- - - -\n").unwrap_err(),
            Error::Syntax { .. }
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = Triangulation::parse("# header\n1 # one tet\n\n- - - - # all boundary\n").unwrap();
        assert_eq!(t, single_tetrahedron());
    }

    #[test]
    fn single_tetrahedron_skeleton() {
        let sk = compute_skeleton(&single_tetrahedron());
        assert_eq!((sk.vertices.len(), sk.edges.len(), sk.faces.len()), (4, 6, 4));
        assert!(sk.vertices.iter().all(|o| o.boundary));
        assert_eq!(sk.euler_characteristic(), 1);
    }

    #[test]
    fn simplex_boundary_counts() {
        let t = simplex_boundary();
        assert!(t.is_closed());
        let sk = compute_skeleton(&t);
        assert_eq!(
            (sk.vertices.len(), sk.edges.len(), sk.faces.len(), sk.tetrahedra),
            (5, 10, 10, 5)
        );
        assert_eq!(sk.euler_characteristic(), 0);
        assert!(sk.orientable);
        assert!(sk.reversed_edges.is_empty());
    }

    #[test]
    fn doubled_tetrahedron_is_orientable_sphere() {
        let report = validate_manifold(&doubled_tetrahedron());
        assert!(report.is_manifold && report.closed && report.orientable);
        assert_eq!(report.links.len(), 4);
        assert!(report.links.iter().all(|l| l.kind == LinkKind::Sphere && l.triangles == 2));
    }

    #[test]
    fn simplex_boundary_links_are_spheres() {
        let report = validate_manifold(&simplex_boundary());
        assert!(report.is_manifold);
        assert_eq!(report.links.len(), 5);
        for l in &report.links {
            assert_eq!(l.euler_characteristic, 2);
            assert_eq!(l.triangles, 4);
        }
    }

    #[test]
    fn single_tetrahedron_links_are_disks() {
        let report = validate_manifold(&single_tetrahedron());
        assert!(report.is_manifold && !report.closed);
        assert!(report.links.iter().all(|l| l.kind == LinkKind::Disk && l.euler_characteristic == 1));
    }

    #[test]
    fn gluing_maps_respect_orbits() {
        for tri in [doubled_tetrahedron(), simplex_boundary()] {
            let sk = compute_skeleton(&tri);
            for t in 0..tri.tetrahedron_count() {
                for f in 0..4 {
                    let g = tri.gluing(t, f).unwrap();
                    assert_eq!(sk.face_of[t][f], sk.face_of[g.tet][g.face]);
                    for v in face_vertices(f) {
                        assert_eq!(sk.vertex_of[t][v], sk.vertex_of[g.tet][g.perm.apply(v)]);
                    }
                    // Involutivity: going there and back is the identity.
                    let back = tri.gluing(g.tet, g.face).unwrap();
                    assert_eq!(back.perm.compose(&g.perm), Perm4::IDENTITY);
                    assert_eq!((back.tet, back.face), (t, f));
                }
            }
        }
    }
}
