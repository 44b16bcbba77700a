/// Plain union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Dense class labels numbered by first appearance in index order.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for i in 0..n {
            let r = self.find(i);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels[i] = label_of_root[r];
        }
        (labels, next)
    }
}

/// Union-find tracking a parity (Z/2 label) relative to the class root.
///
/// `relate(a, b, odd)` records `label(a) + label(b) = odd (mod 2)`; it returns
/// `false` when the relation contradicts what is already known.
#[derive(Debug, Clone)]
pub(crate) struct ParitySets {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParitySets {
    pub fn new(n: usize) -> Self {
        ParitySets {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Compress from the top of the path down so parities accumulate correctly.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    pub fn relate(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == odd;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ odd;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_detects_odd_cycle() {
        let mut p = ParitySets::new(3);
        assert!(p.relate(0, 1, true));
        assert!(p.relate(1, 2, true));
        assert!(!p.relate(0, 2, true));
        assert!(p.relate(0, 2, false));
    }

    #[test]
    fn labels_are_first_appearance() {
        let mut d = DisjointSets::new(5);
        d.union(3, 1);
        d.union(4, 0);
        let (labels, n) = d.labels();
        assert_eq!(n, 3);
        assert_eq!(labels, vec![0, 1, 2, 1, 0]);
    }
}
