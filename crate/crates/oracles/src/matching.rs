//! Matching equations built straight from the gluings, rational linear algebra and a
//! naive lattice search.

use normalhst::Triangulation;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The vertex sharing a side with `v` in the quad type that pairs `0` with `k + 1`.
pub fn paired(k: usize, v: usize) -> usize {
    let pairs = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    for (a, b) in pairs[k] {
        if v == a {
            return b;
        }
        if v == b {
            return a;
        }
    }
    unreachable!()
}

/// Quad type whose arc on face `f` cuts off `v`.
pub fn quad_cutting(f: usize, v: usize) -> usize {
    (0..3).find(|&k| paired(k, f) == v).unwrap()
}

/// One row per glued face side and corner: `tri + quad` on one side minus the other.
/// Columns are `7t + v` for triangles and `7t + 4 + k` for quads.
pub fn matching_matrix(tri: &Triangulation) -> Vec<Vec<i64>> {
    let n = 7 * tri.tetrahedron_count();
    let mut rows = Vec::new();
    for t in 0..tri.tetrahedron_count() {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            for v in (0..4).filter(|&v| v != f) {
                let w = g.perm.apply(v);
                let mut row = vec![0i64; n];
                row[7 * t + v] += 1;
                row[7 * t + 4 + quad_cutting(f, v)] += 1;
                row[7 * g.tet + w] -= 1;
                row[7 * g.tet + 4 + quad_cutting(g.face, w)] -= 1;
                if row.iter().any(|x| *x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        let pivot_row: Vec<BigRational> = m[r].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
    }
    r
}

pub fn satisfies(matrix: &[Vec<i64>], x: &[BigInt]) -> bool {
    matrix
        .iter()
        .all(|row| row.iter().zip(x).map(|(a, b)| b * BigInt::from(*a)).sum::<BigInt>().is_zero())
}

/// A nonzero nonnegative solution spans an extreme ray of `{Ax = 0, x >= 0}` exactly
/// when the columns on its support have a one-dimensional kernel.
pub fn is_extreme_ray(matrix: &[Vec<i64>], x: &[BigInt]) -> bool {
    if x.iter().any(|v| v.is_negative()) || x.iter().all(|v| v.is_zero()) || !satisfies(matrix, x) {
        return false;
    }
    let support: Vec<usize> = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
    let sub: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| support.iter().map(|&i| BigRational::from_integer(row[i].into())).collect())
        .collect();
    let r = if sub.is_empty() { 0 } else { rank(&sub) };
    r + 1 == support.len()
}

pub fn is_primitive(x: &[BigInt]) -> bool {
    x.iter().fold(BigInt::zero(), |g, v| g.gcd(v)).is_one()
}

/// Every nonnegative solution with coordinate sum at most `bound` and at most one
/// nonzero quad type per tetrahedron, by trying every vector.
pub fn naive_solutions(tri: &Triangulation, bound: u64) -> Vec<Vec<BigInt>> {
    let matrix = matching_matrix(tri);
    let n = 7 * tri.tetrahedron_count();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn go(j: usize, left: i64, x: &mut Vec<i64>, matrix: &[Vec<i64>], out: &mut Vec<Vec<BigInt>>) {
        if j == x.len() {
            if matrix.iter().all(|row| row.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<i64>() == 0) {
                out.push(x.iter().map(|&v| BigInt::from(v)).collect());
            }
            return;
        }
        let t = j / 7;
        let quad_taken = j % 7 >= 4 && (7 * t + 4..j).any(|k| x[k] != 0);
        let max = if quad_taken { 0 } else { left };
        for v in 0..=max {
            x[j] = v;
            go(j + 1, left - v, x, matrix, out);
        }
        x[j] = 0;
    }
    go(0, bound as i64, &mut x, &matrix, &mut out);
    out.sort();
    out
}
