//! Proximity search over maximal red-blue bipartite subgraphs.
//!
//! From a maximal solution `H` and an absent edge `e = ab`, the two
//! removables are the full stars of `a` and `b` in `G`. Deleting either star
//! from `H` and adding `e` leaves a red-blue bipartite edge set (`e` is then
//! pendant), which greedy completion turns into a maximal solution. The
//! proof of completeness orders each solution by [`mu`]; the engine itself
//! never needs that order.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::bits::Bits;

use super::dsu::ParityDsu;
use super::graph::{is_connected_edges, BicoloredMultigraph};
use super::RbError;

/// Greedy completion: seed edges first, then every edge in ascending index
/// order that keeps the set red-blue bipartite.
pub fn gc_rb(g: &BicoloredMultigraph, seed: &Bits) -> Result<Bits, RbError> {
    let mut dsu = ParityDsu::new(g.num_vertices());
    let mut out = Bits::zeros(g.num_edges());
    for j in seed.iter_ones() {
        let e = g.edge(j);
        if !dsu.relate(e.u, e.v, e.color.crosses()) {
            return Err(RbError::ConflictingSeed);
        }
        out.set(j, true);
    }
    for (j, e) in g.edges().iter().enumerate() {
        if !out.get(j) && dsu.relate(e.u, e.v, e.color.crosses()) {
            out.set(j, true);
        }
    }
    Ok(out)
}

/// Vertex BFS order and the induced edge order of a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuOrder {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// BFS over the edges of `h` from its smallest vertex, visiting neighbours
/// in ascending label order; edges sorted by the BFS position of their later
/// endpoint, ties by the earlier endpoint.
pub fn mu(g: &BicoloredMultigraph, h: &Bits) -> Result<MuOrder, RbError> {
    let n = g.num_vertices();
    let Some(v0) = h.iter_ones().map(|j| g.edge(j).u.min(g.edge(j).v)).min() else {
        return Ok(MuOrder { vertices: Vec::new(), edges: Vec::new() });
    };
    let mut pos = vec![usize::MAX; n];
    let mut order = vec![v0];
    pos[v0] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &(w, j) in g.neighbours(v) {
            if h.get(j) && pos[w] == usize::MAX {
                pos[w] = order.len();
                order.push(w);
            }
        }
    }
    let mut keyed = Vec::with_capacity(h.count_ones());
    for j in h.iter_ones() {
        let e = g.edge(j);
        if pos[e.u] == usize::MAX || pos[e.v] == usize::MAX {
            return Err(RbError::Disconnected);
        }
        let (early, late) = if pos[e.u] < pos[e.v] { (pos[e.u], pos[e.v]) } else { (pos[e.v], pos[e.u]) };
        keyed.push((late, early, j));
    }
    keyed.sort_unstable();
    Ok(MuOrder { vertices: order, edges: keyed.into_iter().map(|(_, _, j)| j).collect() })
}

/// The stars `K1` of `a` and `K2` of `b` in `G`, for `e = ab ∉ h`.
pub fn removables(g: &BicoloredMultigraph, h: &Bits, e: usize) -> Result<[Bits; 2], RbError> {
    if h.get(e) {
        return Err(RbError::EdgeInSolution { edge: e });
    }
    let edge = g.edge(e);
    let star = |v: usize| Bits::from_indices(g.num_edges(), g.neighbours(v).iter().map(|&(_, j)| j));
    Ok([star(edge.u), star(edge.v)])
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProximityStats {
    pub emitted: u64,
    pub gc_calls: u64,
    /// Largest number of `gc_rb` calls between two consecutive outputs
    /// (counting the calls before the first output).
    pub max_gap: u64,
    /// Peak number of stored solutions.
    pub max_stored: usize,
}

/// Maximal solutions of a connected graph by proximity search.
///
/// Depth-first over the solution graph: a solution is emitted when popped,
/// then expanded. Each expansion makes at most two `gc_rb` calls per absent
/// edge, and every popped solution is new, so at most `2m` calls separate
/// consecutive outputs.
pub fn enumerate_connected<F>(g: &BicoloredMultigraph, mut sink: F) -> ProximityStats
where
    F: FnMut(&Bits) -> ControlFlow<()>,
{
    let mut stats = ProximityStats::default();
    let mut gap = 0u64;
    let mut seen: HashSet<Bits> = HashSet::new();
    let start = gc_rb(g, &Bits::zeros(g.num_edges())).expect("empty seed");
    stats.gc_calls += 1;
    gap += 1;
    seen.insert(start.clone());
    let mut stack = vec![start];

    while let Some(h) = stack.pop() {
        stats.emitted += 1;
        stats.max_gap = stats.max_gap.max(gap);
        gap = 0;
        if sink(&h).is_break() {
            break;
        }
        for e in h.iter_zeros() {
            for k in removables(g, &h, e).expect("e is absent") {
                let mut seed = h.clone();
                seed.and_not_assign(&k);
                seed.set(e, true);
                let next = gc_rb(g, &seed).expect("e is pendant after removing a star");
                stats.gc_calls += 1;
                gap += 1;
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    stack.push(next);
                }
            }
        }
        stats.max_stored = stats.max_stored.max(seen.len());
    }
    stats
}

/// Lazy mixed-radix counter over `radices`: yields every index tuple once,
/// last position fastest. No radices yields one empty tuple; a zero radix
/// yields nothing.
#[derive(Clone, Debug)]
pub struct Odometer {
    radices: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(radices: Vec<usize>) -> Self {
        let current = if radices.contains(&0) { None } else { Some(vec![0; radices.len()]) };
        Self { radices, current }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.radices[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// Cartesian product of per-component solution lists. `parts[c]` are edge
/// sets local to component `c`, whose edges map to global ids through
/// `edge_maps[c]`.
pub fn combine_components<F>(m: usize, parts: &[Vec<Bits>], edge_maps: &[Vec<usize>], mut sink: F)
where
    F: FnMut(&Bits) -> ControlFlow<()>,
{
    let radices = parts.iter().map(Vec::len).collect();
    for choice in Odometer::new(radices) {
        let mut merged = Bits::zeros(m);
        for (c, &i) in choice.iter().enumerate() {
            for j in parts[c][i].iter_ones() {
                merged.set(edge_maps[c][j], true);
            }
        }
        if sink(&merged).is_break() {
            return;
        }
    }
}

/// Maximal solutions of any graph: each component by proximity search, then
/// their product. A single component streams directly.
pub fn enumerate_max_rb<F>(g: &BicoloredMultigraph, mut sink: F) -> Vec<ProximityStats>
where
    F: FnMut(&Bits) -> ControlFlow<()>,
{
    let m = g.num_edges();
    let comps = g.components();
    if comps.len() == 1 && comps[0].0.len() == g.num_vertices() {
        return vec![enumerate_connected(g, |h| {
            debug_assert!(is_connected_edges(g, h));
            sink(h)
        })];
    }
    let mut stats = Vec::with_capacity(comps.len());
    let mut parts = Vec::with_capacity(comps.len());
    let mut maps = Vec::with_capacity(comps.len());
    for (verts, edges) in comps {
        let sub = g.subgraph(&verts, &edges);
        let mut list = Vec::new();
        stats.push(enumerate_connected(&sub, |h| {
            debug_assert!(is_connected_edges(&sub, h));
            list.push(h.clone());
            ControlFlow::Continue(())
        }));
        parts.push(list);
        maps.push(edges);
    }
    combine_components(m, &parts, &maps, sink);
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::tests::odd_triangle;
    use crate::formula::XorCnf;
    use crate::rb2xor::graph::{build_graph, check_rb_bipartite, is_maximal_rb};

    fn bits(s: &str) -> Bits {
        s.parse().unwrap()
    }

    fn collect(g: &BicoloredMultigraph) -> Vec<String> {
        let mut out = Vec::new();
        enumerate_max_rb(g, |h| {
            out.push(h.to_string());
            ControlFlow::Continue(())
        });
        out.sort();
        out
    }

    fn cycle(n: usize) -> XorCnf {
        let pairs: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
        let refs: Vec<(&[usize], bool)> = pairs.iter().map(|p| (p.as_slice(), true)).collect();
        XorCnf::from_pairs(n, &refs)
    }

    #[test]
    fn gc_examples() {
        let tri = build_graph(&odd_triangle()).unwrap();
        assert_eq!(gc_rb(&tri, &bits("000")).unwrap(), bits("110"));
        assert_eq!(gc_rb(&tri, &bits("011")).unwrap(), bits("011"));
        assert_eq!(gc_rb(&tri, &bits("111")), Err(RbError::ConflictingSeed));
    }

    #[test]
    fn removables_examples() {
        // Triangle x1x2 (e0), x2x3 (e1), x1x3 (e2); H = {e1, e2}, e = e0.
        let tri = build_graph(&odd_triangle()).unwrap();
        let h = bits("011");
        let [k1, k2] = removables(&tri, &h, 0).unwrap();
        assert_eq!(k1, bits("101"));
        assert_eq!(k2, bits("110"));
        for k in [k1, k2] {
            let mut s = h.clone();
            s.and_not_assign(&k);
            s.set(0, true);
            assert!(check_rb_bipartite(&tri, &s).is_ok());
        }
        assert_eq!(removables(&tri, &h, 1), Err(RbError::EdgeInSolution { edge: 1 }));

        let pair = build_graph(&XorCnf::from_pairs(2, &[(&[1, 2], false), (&[1, 2], true)])).unwrap();
        let [k1, k2] = removables(&pair, &bits("10"), 1).unwrap();
        assert_eq!(k1, bits("11"));
        assert_eq!(k2, bits("11"));
    }

    #[test]
    fn mu_single_edge_and_empty() {
        let g = build_graph(&XorCnf::from_pairs(2, &[(&[1, 2], true)])).unwrap();
        assert_eq!(mu(&g, &bits("1")).unwrap(), MuOrder { vertices: vec![0, 1], edges: vec![0] });
        assert!(mu(&g, &bits("0")).unwrap().edges.is_empty());
        let two = build_graph(&XorCnf::from_pairs(4, &[(&[1, 2], true), (&[3, 4], true)])).unwrap();
        assert_eq!(mu(&two, &bits("11")), Err(RbError::Disconnected));
    }

    #[test]
    fn small_enumerations() {
        let tri = build_graph(&odd_triangle()).unwrap();
        assert_eq!(collect(&tri), ["011", "101", "110"]);
        let c5 = build_graph(&cycle(5)).unwrap();
        assert_eq!(collect(&c5).len(), 5);
        let c4 = build_graph(&cycle(4)).unwrap();
        assert_eq!(collect(&c4), ["1111"]);
    }

    #[test]
    fn product_over_components() {
        let mut pairs: Vec<(&[usize], bool)> = vec![(&[1, 2], true), (&[2, 3], true), (&[1, 3], true)];
        pairs.extend([(&[4, 5][..], true), (&[5, 6][..], true), (&[4, 6][..], true)]);
        let g = build_graph(&XorCnf::from_pairs(6, &pairs)).unwrap();
        let all = collect(&g);
        assert_eq!(all.len(), 9);
        for s in &all {
            assert!(is_maximal_rb(&g, &bits(s)));
        }
    }

    #[test]
    fn odometer() {
        let all: Vec<Vec<usize>> = Odometer::new(vec![2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], [0, 1]);
        assert_eq!(Odometer::new(vec![]).count(), 1);
        assert_eq!(Odometer::new(vec![4]).count(), 4);
        assert_eq!(Odometer::new(vec![2, 0]).count(), 0);
    }

    #[test]
    fn delay_bound() {
        let c7 = build_graph(&cycle(7)).unwrap();
        let stats = enumerate_max_rb(&c7, |_| ControlFlow::Continue(()));
        assert_eq!(stats[0].emitted, 7);
        assert!(stats[0].max_gap <= 2 * 7);
    }
}
