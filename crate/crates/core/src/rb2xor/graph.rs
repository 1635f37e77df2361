//! The edge-bicoloured multigraph of a 2-XOR formula.

use std::collections::HashSet;
use std::fmt;

use crate::bits::Bits;
use crate::formula::{Signature, XorCnf};

use super::RbError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    /// Equality `x = y` (or the unit `¬y`, as `y = u`).
    Red,
    /// Disequality `x ≠ y` (or the unit `x`, as `x ≠ u`).
    Blue,
}

impl Color {
    /// Whether the endpoints of an edge of this colour lie on different sides.
    pub fn crosses(self) -> bool {
        self == Color::Blue
    }

    fn from_parity(parity: bool) -> Self {
        if parity {
            Color::Blue
        } else {
            Color::Red
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

impl Edge {
    /// The endpoint that is not `w`.
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Vertices are labelled `0..N`; the label order is the tie-break order of
/// every traversal. Edge `j` corresponds to clause `j` of the source
/// formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicoloredMultigraph {
    names: Vec<String>,
    edges: Vec<Edge>,
    /// `(neighbour, edge)` pairs sorted by neighbour, then edge.
    adj: Vec<Vec<(usize, usize)>>,
    gadget: bool,
}

impl BicoloredMultigraph {
    /// Checks endpoints, loops, and that no pair carries two edges of the
    /// same colour.
    pub fn new(names: Vec<String>, edges: Vec<Edge>) -> Result<Self, RbError> {
        Self::with_gadget(names, edges, false)
    }

    fn with_gadget(names: Vec<String>, edges: Vec<Edge>, gadget: bool) -> Result<Self, RbError> {
        let n = names.len();
        let mut seen = HashSet::new();
        let mut adj = vec![Vec::new(); n];
        for (j, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(RbError::VertexOutOfRange { edge: j });
            }
            if e.u == e.v {
                return Err(RbError::SelfLoop { edge: j });
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v), e.color)) {
                return Err(RbError::DuplicateEdge { edge: j });
            }
            adj[e.u].push((e.v, j));
            adj[e.v].push((e.u, j));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { names, edges, adj, gadget })
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> &Edge {
        &self.edges[j]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Sorted `(neighbour, edge)` pairs of `v`.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Whether vertex 0 is the unit-clause gadget.
    pub fn has_gadget(&self) -> bool {
        self.gadget
    }

    /// Vertex of variable `var` (1-based) in a graph built by [`build_graph`].
    pub fn vertex_of_var(&self, var: usize) -> usize {
        var - 1 + usize::from(self.gadget)
    }

    /// Connected components with at least one edge, as ascending vertex and
    /// edge lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.adj[s].is_empty() {
                continue;
            }
            seen[s] = true;
            let mut verts = vec![s];
            let mut head = 0;
            while head < verts.len() {
                let v = verts[head];
                head += 1;
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        verts.push(w);
                    }
                }
            }
            verts.sort_unstable();
            let mut edges: Vec<usize> = verts.iter().flat_map(|&v| self.adj[v].iter().map(|&(_, e)| e)).collect();
            edges.sort_unstable();
            edges.dedup();
            out.push((verts, edges));
        }
        out
    }

    /// The subgraph on `vertices` (ascending) with `edges` (ascending),
    /// relabelled order-preservingly.
    pub fn subgraph(&self, vertices: &[usize], edges: &[usize]) -> Self {
        let mut local = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let edges = edges
            .iter()
            .map(|&j| {
                let e = self.edges[j];
                Edge { u: local[e.u], v: local[e.v], color: e.color }
            })
            .collect();
        let gadget = self.gadget && vertices.first() == Some(&0);
        Self::with_gadget(names, edges, gadget).expect("subgraph of a valid graph")
    }

    /// Edge dump: one `edge <id> <u> <v> <red|blue>` line per edge, 1-based ids.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (j, e) in self.edges.iter().enumerate() {
            out.push_str(&format!("edge {} {} {} {}\n", j + 1, self.names[e.u], self.names[e.v], e.color));
        }
        out
    }
}

/// Parses an edge dump. Vertices are labelled in order of first appearance
/// unless `vertex <name>` lines come first; `#` starts a comment.
pub fn parse_dump(text: &str) -> Result<BicoloredMultigraph, RbError> {
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let id_of = |name: &str, names: &mut Vec<String>| match names.iter().position(|n| n == name) {
        Some(i) => i,
        None => {
            names.push(name.to_string());
            names.len() - 1
        }
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let bad = |message: &str| RbError::Dump { line, message: message.to_string() };
        match fields.as_slice() {
            ["vertex", name] => {
                if names.iter().any(|n| n == name) {
                    return Err(bad("vertex declared twice"));
                }
                names.push(name.to_string());
            }
            ["edge", id, a, b, color] => {
                let id: usize = id.parse().map_err(|_| bad("edge id is not a number"))?;
                if id != edges.len() + 1 {
                    return Err(bad("edge ids must run 1, 2, 3, ..."));
                }
                let color = match *color {
                    "red" => Color::Red,
                    "blue" => Color::Blue,
                    _ => return Err(bad("colour must be red or blue")),
                };
                let u = id_of(a, &mut names);
                let v = id_of(b, &mut names);
                edges.push(Edge { u, v, color });
            }
            _ => return Err(bad("expected `edge <id> <u> <v> <red|blue>` or `vertex <name>`")),
        }
    }
    BicoloredMultigraph::new(names, edges)
}

/// `G(φ)` for a formula with clauses of width at most two. Vertex `u` (label
/// 0, named `u`) is added when a unit clause is present, then one vertex
/// `x<i>` per variable. Clause `x ⊕ y = ε` gives an edge `xy`, unit `x = ε`
/// gives an edge `xu`; the edge is blue when `ε = 1`.
///
/// Duplicate clauses are rejected; run
/// [`preprocess`](crate::formula::preprocess) first.
pub fn build_graph(phi: &XorCnf) -> Result<BicoloredMultigraph, RbError> {
    if let Some((index, c)) = phi.clauses().iter().enumerate().find(|(_, c)| c.width() > 2) {
        return Err(RbError::ClauseTooWide { index, width: c.width() });
    }
    let gadget = phi.clauses().iter().any(|c| c.width() == 1);
    let off = usize::from(gadget);
    let mut names = Vec::with_capacity(phi.num_vars() + off);
    if gadget {
        names.push("u".to_string());
    }
    names.extend((1..=phi.num_vars()).map(|i| format!("x{i}")));
    let edges = phi
        .clauses()
        .iter()
        .map(|c| {
            let vars = c.vars();
            let (u, v) = match *vars {
                [x] => (0, x - 1 + off),
                [x, y] => (x - 1 + off, y - 1 + off),
                _ => unreachable!("width checked"),
            };
            Edge { u, v, color: Color::from_parity(c.parity()) }
        })
        .collect();
    BicoloredMultigraph::with_gadget(names, edges, gadget).map_err(|e| match e {
        RbError::DuplicateEdge { edge } => RbError::DuplicateClause { index: edge },
        other => other,
    })
}

/// Per-vertex sides; in each connected part the smallest vertex is on side
/// `false`. Vertices without selected edges are on side `false`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<bool>,
}

/// A closed walk through selected edges with an odd number of blue edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub cycle: Vec<usize>,
}

/// Red-blue bipartiteness of the edge set `s`: blue edges must cross, red
/// edges must not. BFS from each unvisited vertex in label order.
pub fn check_rb_bipartite(g: &BicoloredMultigraph, s: &Bits) -> Result<Bipartition, Conflict> {
    let n = g.num_vertices();
    let mut side = vec![false; n];
    let mut seen = vec![false; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &(w, j) in g.neighbours(v) {
                if !s.get(j) {
                    continue;
                }
                let want = side[v] ^ g.edge(j).color.crosses();
                if !seen[w] {
                    seen[w] = true;
                    side[w] = want;
                    parent_edge[w] = j;
                    depth[w] = depth[v] + 1;
                    queue.push(w);
                } else if side[w] != want {
                    return Err(Conflict { cycle: close_cycle(g, &parent_edge, &depth, v, w, j) });
                }
            }
        }
    }
    Ok(Bipartition { side })
}

fn close_cycle(
    g: &BicoloredMultigraph,
    parent_edge: &[usize],
    depth: &[usize],
    a: usize,
    b: usize,
    via: usize,
) -> Vec<usize> {
    let (mut a, mut b) = (a, b);
    let mut left = Vec::new();
    let mut right = Vec::new();
    while a != b {
        if depth[a] >= depth[b] {
            let e = parent_edge[a];
            left.push(e);
            a = g.edge(e).other(a);
        } else {
            let e = parent_edge[b];
            right.push(e);
            b = g.edge(e).other(b);
        }
    }
    left.push(via);
    left.extend(right.into_iter().rev());
    left
}

/// Whether `s` is red-blue bipartite and no further edge can be added.
pub fn is_maximal_rb(g: &BicoloredMultigraph, s: &Bits) -> bool {
    let Ok(bip) = check_rb_bipartite(g, s) else {
        return false;
    };
    // s + e is bipartite iff e joins two parts of s or agrees with the sides.
    let parts = part_ids(g, s);
    (0..g.num_edges()).filter(|&j| !s.get(j)).all(|j| {
        let e = g.edge(j);
        parts[e.u] == parts[e.v] && (bip.side[e.u] != bip.side[e.v]) != e.color.crosses()
    })
}

/// Connected-part id per vertex for the edges in `s`.
pub(crate) fn part_ids(g: &BicoloredMultigraph, s: &Bits) -> Vec<usize> {
    let n = g.num_vertices();
    let mut id = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for root in 0..n {
        if id[root] != usize::MAX {
            continue;
        }
        id[root] = root;
        stack.push(root);
        while let Some(v) = stack.pop() {
            for &(w, j) in g.neighbours(v) {
                if s.get(j) && id[w] == usize::MAX {
                    id[w] = root;
                    stack.push(w);
                }
            }
        }
    }
    id
}

/// Whether the edges of `s` form one connected piece (vacuously true if empty).
pub fn is_connected_edges(g: &BicoloredMultigraph, s: &Bits) -> bool {
    let parts = part_ids(g, s);
    let mut ids = s.iter_ones().map(|j| parts[g.edge(j).u]);
    match ids.next() {
        None => true,
        Some(first) => ids.all(|x| x == first),
    }
}

/// Edge set → signature of the source formula: bit `j` is set iff edge `j`
/// is selected.
pub fn to_signature(h: &Bits) -> Signature {
    Signature::new(h.clone())
}

pub fn from_signature(sigma: &Signature) -> Bits {
    sigma.bits().clone()
}
