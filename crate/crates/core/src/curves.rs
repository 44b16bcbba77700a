//! Normal curves on the boundary of a single tetrahedron.
//!
//! A pattern records, for each face, how many normal arcs cut off each of its three
//! vertices. Arcs of one type are drawn parallel and nested around the vertex they cut
//! off, so every balanced pattern has exactly one embedded realisation; its loops are
//! read off by walking from edge point to edge point.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::normal::TetCoords;
use crate::tet::{edge_index, face_vertices, Perm4, EDGES};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Arc counts per face; slot `j` of face `f` cuts off `face_vertices(f)[j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct CurvePattern {
    pub counts: [[u64; 3]; 4],
}

impl CurvePattern {
    pub fn from_flat(values: [u64; 12]) -> CurvePattern {
        CurvePattern { counts: std::array::from_fn(|f| std::array::from_fn(|j| values[3 * f + j])) }
    }

    /// Arcs on face `f` cutting off vertex `v`.
    pub fn arcs(&self, f: usize, v: usize) -> u64 {
        self.counts[f][crate::tet::slot_in_face(f, v)]
    }

    /// Endpoints face `f` puts on edge `e`; `f` must contain `e`.
    fn endpoints(&self, f: usize, e: usize) -> u64 {
        let [a, b] = EDGES[e];
        self.arcs(f, a) + self.arcs(f, b)
    }

    /// Number of points on edge `e`, or the first unbalanced edge.
    pub fn edge_weight(&self, e: usize) -> u64 {
        self.endpoints(crate::tet::faces_of_edge(e)[0], e)
    }

    /// The first edge whose two faces disagree, if any.
    pub fn imbalance(&self) -> Option<usize> {
        (0..6).find(|&e| {
            let [c, d] = crate::tet::faces_of_edge(e);
            self.endpoints(c, e) != self.endpoints(d, e)
        })
    }

    pub fn length(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn add(&self, other: &CurvePattern) -> CurvePattern {
        CurvePattern {
            counts: std::array::from_fn(|f| std::array::from_fn(|j| self.counts[f][j] + other.counts[f][j])),
        }
    }

    pub fn scale(&self, k: u64) -> CurvePattern {
        CurvePattern { counts: self.counts.map(|row| row.map(|x| x * k)) }
    }

    /// The pattern a surface's pieces trace on the boundary of one tetrahedron.
    pub fn of_tetrahedron(coords: &TetCoords) -> Result<CurvePattern> {
        let mut p = CurvePattern::default();
        for f in 0..4 {
            for (j, v) in face_vertices(f).into_iter().enumerate() {
                p.counts[f][j] = coords
                    .arc_count(f, v)
                    .to_u64()
                    .ok_or_else(|| Error::Invalid("arc count out of range".into()))?;
            }
        }
        Ok(p)
    }
}

/// One loop, with its edge-crossing word in canonical form under the symmetries of the
/// tetrahedron, rotation and reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoopShape {
    pub length: usize,
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopDecomposition {
    /// Loop lengths, ascending.
    pub lengths: Vec<usize>,
    pub loops: Vec<LoopShape>,
}

/// Smallest rotation or reversal of a cyclic word.
pub fn cyclic_canonical(word: &[usize]) -> Vec<usize> {
    let n = word.len();
    let mut best: Option<Vec<usize>> = None;
    let reversed: Vec<usize> = word.iter().rev().copied().collect();
    for w in [word, reversed.as_slice()] {
        for r in 0..n {
            let cand: Vec<usize> = (0..n).map(|i| w[(r + i) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Canonical form under the 24 vertex permutations, rotation and reversal.
pub fn symmetry_canonical(word: &[usize]) -> Vec<usize> {
    Perm4::all()
        .iter()
        .map(|p| cyclic_canonical(&word.iter().map(|&e| p.map_edge(e)).collect::<Vec<_>>()))
        .min()
        .unwrap_or_default()
}

/// Realises a balanced pattern and returns the raw edge words of its loops.
pub fn trace_loops(p: &CurvePattern) -> Result<Vec<Vec<usize>>> {
    if let Some(e) = p.imbalance() {
        let [a, b] = EDGES[e];
        return Err(Error::Invalid(format!("pattern is unbalanced on edge {a}{b}")));
    }
    let weight: [usize; 6] = std::array::from_fn(|e| p.edge_weight(e) as usize);
    let mut base = [0usize; 6];
    for e in 1..6 {
        base[e] = base[e - 1] + weight[e - 1];
    }
    let total = base[5] + weight[5];
    // Point where the i-th arc around v meets edge {v, w}.
    let point = |v: usize, w: usize, i: usize| {
        let e = edge_index(v, w);
        base[e] + if v < w { i } else { weight[e] - 1 - i }
    };
    let mut neighbours = vec![Vec::with_capacity(2); total];
    for f in 0..4 {
        for v in face_vertices(f) {
            let mut others = face_vertices(f).into_iter().filter(|&w| w != v);
            let (w1, w2) = (others.next().unwrap(), others.next().unwrap());
            for i in 0..p.arcs(f, v) as usize {
                let (x, y) = (point(v, w1, i), point(v, w2, i));
                neighbours[x].push(y);
                neighbours[y].push(x);
            }
        }
    }
    let edge_of = |pt: usize| (0..6).rev().find(|&e| base[e] <= pt && weight[e] > 0).unwrap();
    let mut seen = vec![false; total];
    let mut loops = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        debug_assert_eq!(neighbours[start].len(), 2);
        let mut word = Vec::new();
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            seen[cur] = true;
            word.push(edge_of(cur));
            let next = if neighbours[cur][0] != prev { neighbours[cur][0] } else { neighbours[cur][1] };
            prev = cur;
            cur = next;
            if cur == start {
                break;
            }
        }
        loops.push(word);
    }
    Ok(loops)
}

pub fn decompose_pattern(p: &CurvePattern) -> Result<LoopDecomposition> {
    let mut loops: Vec<LoopShape> = trace_loops(p)?
        .into_iter()
        .map(|w| LoopShape { length: w.len(), word: symmetry_canonical(&w) })
        .collect();
    loops.sort();
    let lengths = loops.iter().map(|l| l.length).collect();
    Ok(LoopDecomposition { lengths, loops })
}

/// A single normal loop and its symmetry class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalLoop {
    pub pattern: CurvePattern,
    pub length: usize,
    /// Edge word up to rotation and reversal.
    pub word: Vec<usize>,
    /// Edge word up to symmetry, rotation and reversal.
    pub class: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopClass {
    pub length: usize,
    pub word: Vec<usize>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopCensus {
    pub max_length: usize,
    pub loops: Vec<NormalLoop>,
    pub classes: Vec<LoopClass>,
}

/// Every connected normal loop of length at most `max_length`.
///
/// Arc counts on faces 0 and 1 and one count on face 2 are chosen freely; edge balance
/// then forces the rest.
pub fn enumerate_normal_loops(max_length: usize, limits: &Limits) -> Result<LoopCensus> {
    if max_length > limits.max_loop_length {
        return Err(Error::ceiling("loop length", limits.max_loop_length));
    }
    let l = max_length as u64;
    let mut loops = Vec::new();
    let mut c = [[0u64; 3]; 4];
    for_each_composition(6, l, &mut |first: &[u64]| {
        c[0] = [first[0], first[1], first[2]];
        c[1] = [first[3], first[4], first[5]];
        let used: u64 = first.iter().sum();
        for s in 0..=l - used {
            if let Some(p) = complete(c[0], c[1], s) {
                if p.length() == 0 || p.length() > l {
                    continue;
                }
                let words = trace_loops(&p).expect("completed patterns are balanced");
                if words.len() == 1 {
                    let word = cyclic_canonical(&words[0]);
                    loops.push(NormalLoop { pattern: p, length: word.len(), class: symmetry_canonical(&word), word });
                }
            }
        }
    });
    loops.sort_by(|a, b| (a.length, &a.class, &a.pattern).cmp(&(b.length, &b.class, &b.pattern)));
    loops.dedup_by(|a, b| a.pattern == b.pattern);
    let mut classes: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for lp in &loops {
        *classes.entry((lp.length, lp.class.clone())).or_default() += 1;
    }
    let classes = classes
        .into_iter()
        .map(|((length, word), size)| LoopClass { length, word, size })
        .collect();
    Ok(LoopCensus { max_length, loops, classes })
}

/// Calls `f` with every vector of `n` nonnegative integers summing to at most `max`.
fn for_each_composition(n: usize, max: u64, f: &mut impl FnMut(&[u64])) {
    fn go(buf: &mut Vec<u64>, n: usize, left: u64, f: &mut impl FnMut(&[u64])) {
        if buf.len() == n {
            f(buf);
            return;
        }
        for x in 0..=left {
            buf.push(x);
            go(buf, n, left - x, f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, max, f);
}

/// Fills faces 2 and 3 from faces 0, 1 and the face-2 arc count around vertex 3.
fn complete(f0: [u64; 3], f1: [u64; 3], s: u64) -> Option<CurvePattern> {
    let mut p = CurvePattern::default();
    p.counts[0] = f0;
    p.counts[1] = f1;
    let get = |p: &CurvePattern, f: usize, v: usize| p.arcs(f, v) as i64;
    let s = s as i64;
    // Face 2 holds vertices 0, 1, 3. Edge 03 is shared with face 1, edge 13 with face 0.
    let c20 = get(&p, 1, 0) + get(&p, 1, 3) - s;
    let c21 = get(&p, 0, 1) + get(&p, 0, 3) - s;
    // Face 3 holds vertices 0, 1, 2. Edges 02, 12 and 01 fix its three counts.
    let a = get(&p, 1, 0) + get(&p, 1, 2);
    let b = get(&p, 0, 1) + get(&p, 0, 2);
    let c = c20 + c21;
    let twice_c32 = a + b - c;
    if c20 < 0 || c21 < 0 || twice_c32 < 0 || twice_c32 % 2 != 0 {
        return None;
    }
    let c32 = twice_c32 / 2;
    let (c30, c31) = (a - c32, b - c32);
    if c30 < 0 || c31 < 0 {
        return None;
    }
    p.counts[2] = [c20 as u64, c21 as u64, s as u64];
    p.counts[3] = [c30 as u64, c31 as u64, c32 as u64];
    (p.imbalance().is_none()).then_some(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check348 {
    pub pass: bool,
    pub lengths: Vec<usize>,
    pub octagon_loops: usize,
    /// The first loop that breaks the rule.
    pub witness: Option<LoopShape>,
}

/// Passes iff every loop has length 3 or 4, except for at most one of length 8.
pub fn check_348(p: &CurvePattern) -> Result<Check348> {
    let d = decompose_pattern(p)?;
    let mut octagons = 0;
    let mut witness = None;
    for lp in &d.loops {
        let bad = match lp.length {
            3 | 4 => false,
            8 => {
                octagons += 1;
                octagons > 1
            }
            _ => true,
        };
        if bad && witness.is_none() {
            witness = Some(lp.clone());
        }
    }
    Ok(Check348 { pass: witness.is_none(), lengths: d.lengths, octagon_loops: octagons, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::TetCoords;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn piece(kind: &str, k: usize) -> CurvePattern {
        let mut c = TetCoords::default();
        match kind {
            "tri" => c.tri[k] = BigInt::from(1),
            "quad" => c.quad[k] = BigInt::from(1),
            _ => c.oct[k] = BigInt::from(1),
        }
        CurvePattern::of_tetrahedron(&c).unwrap()
    }

    #[test]
    fn single_pieces_are_single_loops() {
        for v in 0..4 {
            assert_eq!(decompose_pattern(&piece("tri", v)).unwrap().lengths, vec![3]);
        }
        for q in 0..3 {
            assert_eq!(decompose_pattern(&piece("quad", q)).unwrap().lengths, vec![4]);
            assert_eq!(decompose_pattern(&piece("oct", q)).unwrap().lengths, vec![8]);
        }
    }

    #[test]
    fn parallel_quads() {
        let d = decompose_pattern(&piece("quad", 1).scale(3)).unwrap();
        assert_eq!(d.lengths, vec![4, 4, 4]);
        assert_eq!(d.loops[0], d.loops[2]);
    }

    #[test]
    fn census_to_eight() {
        let census = enumerate_normal_loops(8, &Limits::default()).unwrap();
        let sizes: Vec<(usize, usize)> = census.classes.iter().map(|c| (c.length, c.size)).collect();
        assert_eq!(sizes, vec![(3, 4), (4, 3), (8, 3)]);
        let octagons: Vec<CurvePattern> = (0..3).map(|k| piece("oct", k)).collect();
        for lp in census.loops.iter().filter(|l| l.length == 8) {
            assert!(octagons.contains(&lp.pattern));
        }
        assert!(enumerate_normal_loops(21, &Limits::default()).unwrap_err().is_ceiling());
    }

    #[test]
    fn length_law_to_twenty() {
        let census = enumerate_normal_loops(20, &Limits::default()).unwrap();
        assert!(census.loops.iter().all(|l| l.length == 3 || l.length % 4 == 0));
    }

    #[test]
    fn check_348_cases() {
        let ok = piece("oct", 0).add(&piece("tri", 1)).add(&piece("tri", 2));
        let r = check_348(&ok).unwrap();
        assert!(r.pass);
        assert_eq!(r.lengths, vec![3, 3, 8]);
        assert!(check_348(&CurvePattern::default()).unwrap().pass);
        let two = piece("oct", 2).scale(2);
        let r = check_348(&two).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witness.unwrap().length, 8);
        let census = enumerate_normal_loops(12, &Limits::default()).unwrap();
        let twelve = census.loops.iter().find(|l| l.length == 12).unwrap();
        let r = check_348(&twelve.pattern).unwrap();
        assert_eq!(r.witness.unwrap().length, 12);
        let mut bad = CurvePattern::default();
        bad.counts[0][0] = 1;
        assert!(check_348(&bad).is_err());
    }

    #[test]
    fn flat_layout_is_face_major() {
        let p = CurvePattern::from_flat([0, 0, 0, 1, 2, 3, 0, 0, 0, 0, 0, 0]);
        assert_eq!(p.arcs(1, 0), 1);
        assert_eq!(p.arcs(1, 3), 3);
    }

    proptest! {
        #[test]
        fn parallel_copies_round_trip(tris in proptest::array::uniform4(0u64..3), k in 0u64..4, q in 0usize..3, which in 0usize..3) {
            static CENSUS: std::sync::OnceLock<LoopCensus> = std::sync::OnceLock::new();
            let census = CENSUS.get_or_init(|| enumerate_normal_loops(12, &Limits::default()).unwrap());
            let base = match which {
                0 => piece("quad", q),
                1 => piece("oct", q),
                _ => census.loops.iter().filter(|l| l.length == 12).nth(q).unwrap().pattern,
            };
            let mut p = base.scale(k);
            for (v, &n) in tris.iter().enumerate() {
                p = p.add(&piece("tri", v).scale(n));
            }
            let d = decompose_pattern(&p).unwrap();
            let mut expected: Vec<usize> = std::iter::repeat_n(3, tris.iter().sum::<u64>() as usize)
                .chain(std::iter::repeat_n(base.length() as usize, k as usize))
                .collect();
            expected.sort();
            prop_assert_eq!(d.lengths.iter().sum::<usize>() as u64, p.length());
            prop_assert_eq!(d.lengths, expected);
        }
    }
}
