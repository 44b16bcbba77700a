//! Normal loops on the boundary of a tetrahedron by brute-force search over cyclic
//! edge words, with an explicit planar drawing to decide embeddedness.

use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Edges as vertex pairs, numbered `01, 02, 03, 12, 13, 23`.
const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn edge_id(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    EDGES.iter().position(|&e| e == (a, b)).unwrap()
}

fn on_face(e: usize, f: usize) -> bool {
    let (a, b) = EDGES[e];
    a != f && b != f
}

/// The face on the far side of edge `e` from face `f`.
fn across(e: usize, f: usize) -> usize {
    (0..4).find(|&g| g != f && on_face(e, g)).unwrap()
}

fn common_vertex(e: usize, d: usize) -> usize {
    let (a, b) = EDGES[e];
    let (c, x) = EDGES[d];
    if a == c || a == x {
        a
    } else {
        debug_assert!(b == c || b == x);
        b
    }
}

/// Smallest rotation or reversal.
pub fn cyclic_min(word: &[usize]) -> Vec<usize> {
    let n = word.len();
    let mut rev = word.to_vec();
    rev.reverse();
    let mut best = word.to_vec();
    for w in [word.to_vec(), rev] {
        for r in 0..n {
            let mut c = w.clone();
            c.rotate_left(r);
            best = best.min(c);
        }
    }
    best
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn relabel(word: &[usize], p: &[usize; 4]) -> Vec<usize> {
    word.iter()
        .map(|&e| {
            let (a, b) = EDGES[e];
            edge_id(p[a], p[b])
        })
        .collect()
}

/// Distinct loops (up to rotation and reversal) in the symmetry orbit of `word`, and
/// the orbit's smallest representative.
pub fn orbit(word: &[usize]) -> (BTreeSet<Vec<usize>>, Vec<usize>) {
    let all: BTreeSet<Vec<usize>> = permutations().iter().map(|p| cyclic_min(&relabel(word, p))).collect();
    let min = all.iter().next().unwrap().clone();
    (all, min)
}

/// Arc counts keyed by `(face, cut-off vertex)`.
type Pattern = BTreeMap<(usize, usize), usize>;

fn pattern_of(word: &[usize], faces: &[usize]) -> Pattern {
    let mut p = Pattern::new();
    for i in 0..word.len() {
        let v = common_vertex(word[i], word[(i + 1) % word.len()]);
        *p.entry((faces[i], v)).or_default() += 1;
    }
    p
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn segments_meet(p: ((i64, i64), (i64, i64)), q: ((i64, i64), (i64, i64))) -> bool {
    let d1 = cross(q.0, q.1, p.0).signum();
    let d2 = cross(q.0, q.1, p.1).signum();
    let d3 = cross(p.0, p.1, q.0).signum();
    let d4 = cross(p.0, p.1, q.1).signum();
    let within = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        o.0.min(a.0) <= b.0 && b.0 <= o.0.max(a.0) && o.1.min(a.1) <= b.1 && b.1 <= o.1.max(a.1)
    };
    (d1 * d2 < 0 && d3 * d4 < 0)
        || (d1 == 0 && within(q.0, q.1, p.0))
        || (d2 == 0 && within(q.0, q.1, p.1))
        || (d3 == 0 && within(p.0, p.1, q.0))
        || (d4 == 0 && within(p.0, p.1, q.1))
}

/// Draws every arc of the pattern as a straight segment, arcs of one type nested
/// around their vertex. Panics if two segments meet; returns the edge words of the
/// resulting loops.
fn draw(p: &Pattern) -> Vec<Vec<usize>> {
    let count = |f: usize, v: usize| p.get(&(f, v)).copied().unwrap_or(0);
    let weight: Vec<usize> = (0..6)
        .map(|e| {
            let (a, b) = EDGES[e];
            let f = (0..4).find(|&f| on_face(e, f)).unwrap();
            count(f, a) + count(f, b)
        })
        .collect();
    // Point ids: edge e, position k from the lower vertex.
    let id = |e: usize, k: usize| 32 * e + k;
    let mut links: HashMap<usize, Vec<usize>> = HashMap::new();
    for f in 0..4 {
        let verts: Vec<usize> = (0..4).filter(|&v| v != f).collect();
        let scale: i64 = verts
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| verts[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| weight[edge_id(a, b)] as i64 + 1)
            .product();
        let corner = |v: usize| {
            let i = verts.iter().position(|&w| w == v).unwrap() as i64;
            [(0, 0), (scale, 0), (0, scale)][i as usize]
        };
        // The k-th point (from v) on edge v-w, with its global id.
        let point = |v: usize, w: usize, k: usize| {
            let e = edge_id(v, w);
            let n = weight[e] as i64 + 1;
            let (cv, cw) = (corner(v), corner(w));
            let t = k as i64 + 1;
            let xy = (cv.0 + (cw.0 - cv.0) / n * t, cv.1 + (cw.1 - cv.1) / n * t);
            let pos = if v < w { k } else { weight[e] - 1 - k };
            (xy, id(e, pos))
        };
        let mut segments = Vec::new();
        for &v in &verts {
            let others: Vec<usize> = verts.iter().copied().filter(|&w| w != v).collect();
            for k in 0..count(f, v) {
                let (a, ia) = point(v, others[0], k);
                let (b, ib) = point(v, others[1], k);
                segments.push((a, b));
                links.entry(ia).or_default().push(ib);
                links.entry(ib).or_default().push(ia);
            }
        }
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                assert!(!segments_meet(segments[i], segments[j]), "nested arcs crossed on face {f}");
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut loops = Vec::new();
    let mut starts: Vec<usize> = links.keys().copied().collect();
    starts.sort();
    for s in starts {
        if seen.contains(&s) {
            continue;
        }
        let mut word = Vec::new();
        let (mut prev, mut cur) = (usize::MAX, s);
        loop {
            seen.insert(cur);
            word.push(cur / 32);
            let nb = &links[&cur];
            assert_eq!(nb.len(), 2, "every point lies on two arcs");
            let next = if nb[0] != prev { nb[0] } else { nb[1] };
            prev = cur;
            cur = next;
            if cur == s {
                break;
            }
        }
        loops.push(word);
    }
    loops
}

/// One class of embedded loops.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleClass {
    pub length: usize,
    pub word: Vec<usize>,
    pub size: usize,
}

/// Every symmetry class of embedded normal loops with at most `max_length` arcs.
///
/// Every class has a member whose word starts by crossing edge 01 into face 3 and
/// leaving through edge 02, so only those words are searched.
pub fn loop_classes(max_length: usize) -> Vec<OracleClass> {
    let mut memo: HashMap<Pattern, Option<Vec<usize>>> = HashMap::new();
    let mut classes = BTreeSet::new();
    let mut word = vec![0usize, 1];
    let mut faces = vec![3usize];
    fn go(
        word: &mut Vec<usize>,
        faces: &mut Vec<usize>,
        max: usize,
        memo: &mut HashMap<Pattern, Option<Vec<usize>>>,
        classes: &mut BTreeSet<OracleClass>,
    ) {
        let last = *word.last().unwrap();
        let face = across(last, *faces.last().unwrap());
        if face == 2 && last != word[0] && word.len() <= max {
            faces.push(face);
            let p = pattern_of(word, faces);
            faces.pop();
            let single = memo
                .entry(p.clone())
                .or_insert_with(|| {
                    let loops = draw(&p);
                    (loops.len() == 1).then(|| cyclic_min(&loops[0]))
                })
                .clone();
            if single.as_deref() == Some(cyclic_min(word).as_slice()) {
                let (members, min) = orbit(word);
                classes.insert(OracleClass { length: word.len(), word: min, size: members.len() });
            }
        }
        if word.len() == max {
            return;
        }
        for next in (0..6).filter(|&e| e != last && on_face(e, face)) {
            word.push(next);
            faces.push(face);
            go(word, faces, max, memo, classes);
            word.pop();
            faces.pop();
        }
    }
    go(&mut word, &mut faces, max_length, &mut memo, &mut classes);
    classes.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_loops() {
        let classes = loop_classes(8);
        let summary: Vec<(usize, usize)> = classes.iter().map(|c| (c.length, c.size)).collect();
        assert_eq!(summary, vec![(3, 4), (4, 3), (8, 3)]);
    }

    #[test]
    fn drawing_splits_parallel_copies() {
        let mut p = Pattern::new();
        for f in 0..3 {
            p.insert((f, 3), 2);
        }
        assert_eq!(draw(&p).len(), 2);
    }
}
