//! Union-find with parity labels and stack-ordered rollback.

/// Each vertex carries the parity of its side relative to its parent. Union
/// by size without path compression keeps `find` logarithmic and makes
/// every merge undoable.
#[derive(Clone, Debug)]
pub struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl ParityDsu {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), parity: vec![false; n], size: vec![1; n], history: Vec::new() }
    }

    /// Root of `v` and the parity of `v` relative to it.
    pub fn find(&self, mut v: usize) -> (usize, bool) {
        let mut p = false;
        while self.parent[v] != v {
            p ^= self.parity[v];
            v = self.parent[v];
        }
        (v, p)
    }

    /// Whether `side(a) ^ side(b) == diff` is consistent with the recorded
    /// relations, without recording it.
    pub fn consistent(&self, a: usize, b: usize, diff: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        ra != rb || pa ^ pb == diff
    }

    /// Records `side(a) ^ side(b) == diff`. Returns `false`, leaving the
    /// structure unchanged, if that contradicts earlier relations.
    pub fn relate(&mut self, a: usize, b: usize, diff: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == diff;
        }
        let (child, root) = if self.size[ra] < self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ diff;
        self.size[root] += self.size[child];
        self.history.push(child);
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, cp: usize) {
        while self.history.len() > cp {
            let child = self.history.pop().expect("length checked");
            let root = self.parent[child];
            self.size[root] -= self.size[child];
            self.parent[child] = child;
            self.parity[child] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_is_rejected() {
        let mut d = ParityDsu::new(3);
        assert!(d.relate(0, 1, true));
        assert!(d.relate(1, 2, true));
        assert!(!d.consistent(0, 2, true));
        assert!(!d.relate(0, 2, true));
        assert!(d.relate(0, 2, false));
    }

    #[test]
    fn rollback_restores_relations() {
        let mut d = ParityDsu::new(4);
        d.relate(0, 1, true);
        let cp = d.checkpoint();
        d.relate(1, 2, false);
        d.relate(2, 3, true);
        assert!(!d.consistent(0, 3, true));
        d.rollback(cp);
        assert!(d.consistent(0, 3, false));
        assert!(d.consistent(0, 2, false));
        assert!(!d.consistent(0, 1, false));
        assert_eq!(d.find(2), (2, false));
    }
}
