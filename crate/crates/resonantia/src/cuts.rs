//! Cyclic edge-cuts: recognition, classification, cyclic edge
//! connectivity, nanotube detection, and the three cut-reshaping moves
//! (absorb a pendant vertex, shift an adjacent degree-two pair, peel an
//! alternating boundary ring).

use crate::canon::canonical_form;
use crate::graph::FullereneGraph;
use crate::spiral::construct_nanotube;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutError {
    #[error("({u},{v}) is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("removing the cut leaves the graph connected")]
    DoesNotDisconnect,
    #[error("cut splits the graph into {found} components, expected 2")]
    TooManyComponents { found: usize },
    #[error("cut edge ({u},{v}) has both endpoints in one side")]
    EdgeWithinSide { u: usize, v: usize },
    #[error("side {side} has no {shape}")]
    ShapeMissing { side: usize, shape: &'static str },
    #[error("move produced a cut of {found} edges, expected {expected}")]
    ResultSize { expected: usize, found: usize },
}

/// Classification flags for an edge set, per the cyclic-cut taxonomy:
/// cyclic when every component of the severed graph contains a cycle,
/// trivial when the set is exactly the outward edges of one face, and
/// degenerate when some component holds fewer than six whole pentagons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CutClass {
    pub disconnects: bool,
    pub cyclic: bool,
    pub trivial: bool,
    pub degenerate: bool,
}

/// An edge cut with exactly two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    /// (min, max) pairs, sorted.
    edges: Vec<(usize, usize)>,
    /// The two components of the severed graph, each ascending; side 0
    /// contains the smallest vertex overall.
    sides: [Vec<usize>; 2],
    /// Pentagons whose vertices lie entirely within one side.
    pentagons_per_side: [usize; 2],
}

/// All edges with exactly one endpoint in `x`, as sorted (min, max) pairs.
pub fn nabla(g: &FullereneGraph, x: &[usize]) -> Vec<(usize, usize)> {
    let mut inside = vec![false; g.n()];
    for &v in x {
        inside[v] = true;
    }
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| inside[u] != inside[v])
        .collect()
}

fn normalize(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut es: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    es.sort_unstable();
    es.dedup();
    es
}

/// Component index per vertex after deleting the (normalized, sorted) cut
/// edges, numbered in order of each component's smallest vertex; returns
/// the component count.
fn split_components(g: &FullereneGraph, cut: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let severed = |u: usize, v: usize| {
        let e = (u.min(v), u.max(v));
        cut.binary_search(&e).is_ok()
    };
    let mut comp = vec![usize::MAX; g.n()];
    let mut count = 0;
    for root in 0..g.n() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = count;
        let mut frontier = vec![root];
        while let Some(v) = frontier.pop() {
            for &u in &g.neighbors(v) {
                if comp[u] == usize::MAX && !severed(v, u) {
                    comp[u] = count;
                    frontier.push(u);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Classifies an arbitrary edge set against the cyclic-cut taxonomy. A
/// set that fails to disconnect reports all flags false.
pub fn is_cyclic_cut(g: &FullereneGraph, edges: &[(usize, usize)]) -> CutClass {
    let cut = normalize(edges);
    let (comp, count) = split_components(g, &cut);
    if count < 2 {
        return CutClass {
            disconnects: false,
            cyclic: false,
            trivial: false,
            degenerate: false,
        };
    }
    // A connected graph contains a cycle exactly when it has at least as
    // many edges as vertices.
    let mut vertices = vec![0usize; count];
    let mut inner_edges = vec![0usize; count];
    for v in 0..g.n() {
        vertices[comp[v]] += 1;
    }
    for &(u, v) in g.edges() {
        if comp[u] == comp[v] && cut.binary_search(&(u, v)).is_err() {
            inner_edges[comp[u]] += 1;
        }
    }
    let cyclic = (0..count).all(|c| inner_edges[c] >= vertices[c]);
    let trivial = (0..g.num_faces()).any(|f| nabla(g, g.face(f).walk()) == cut);
    let mut whole_pentagons = vec![0usize; count];
    for &p in g.pentagons() {
        let w = g.face(p).walk();
        let c = comp[w[0]];
        if w.iter().all(|&v| comp[v] == c) {
            whole_pentagons[c] += 1;
        }
    }
    let degenerate = cyclic && (0..count).any(|c| whole_pentagons[c] < 6);
    CutClass {
        disconnects: true,
        cyclic,
        trivial,
        degenerate,
    }
}

impl EdgeCut {
    /// Validates an edge set as a two-sided cut: every pair must be an
    /// edge, removal must leave exactly two components, and every cut
    /// edge must join them.
    pub fn new(g: &FullereneGraph, edges: &[(usize, usize)]) -> Result<Self, CutError> {
        let es = normalize(edges);
        for &(u, v) in &es {
            if !g.has_edge(u, v) {
                return Err(CutError::NotAnEdge { u, v });
            }
        }
        let (comp, count) = split_components(g, &es);
        match count {
            0 | 1 => return Err(CutError::DoesNotDisconnect),
            2 => {}
            n => return Err(CutError::TooManyComponents { found: n }),
        }
        for &(u, v) in &es {
            if comp[u] == comp[v] {
                return Err(CutError::EdgeWithinSide { u, v });
            }
        }
        let mut sides = [Vec::new(), Vec::new()];
        for v in 0..g.n() {
            sides[comp[v]].push(v);
        }
        let mut pentagons_per_side = [0usize; 2];
        for &p in g.pentagons() {
            let w = g.face(p).walk();
            let c = comp[w[0]];
            if w.iter().all(|&v| comp[v] == c) {
                pentagons_per_side[c] += 1;
            }
        }
        Ok(EdgeCut {
            edges: es,
            sides,
            pentagons_per_side,
        })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn side(&self, i: usize) -> &[usize] {
        &self.sides[i]
    }

    pub fn pentagons_per_side(&self) -> [usize; 2] {
        self.pentagons_per_side
    }

    pub fn classify(&self, g: &FullereneGraph) -> CutClass {
        is_cyclic_cut(g, &self.edges)
    }
}

/// Unit-capacity undirected flow network; arc i and arc i^1 are the two
/// directions of one edge.
struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(1);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(1);
    }

    /// Max flow by shortest augmenting paths, stopping early at `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut queue = std::collections::VecDeque::from([s]);
            'bfs: while let Some(v) = queue.pop_front() {
                for &a in &self.adj[v] {
                    let w = self.to[a];
                    if w != s && pred[w].is_none() && self.cap[a] > 0 {
                        pred[w] = Some(a);
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            let Some(_) = pred[t] else { break };
            let mut v = t;
            while v != s {
                let a = pred[v].unwrap();
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Minimum number of edges separating two vertex-disjoint faces, keeping
/// both facial cycles whole; stops counting at `limit`.
fn face_separation(g: &FullereneGraph, f1: usize, f2: usize, limit: usize) -> usize {
    let n = g.n();
    let (s, t) = (n, n + 1);
    let mut label: Vec<usize> = (0..n).collect();
    for &v in g.face(f1).walk() {
        label[v] = s;
    }
    for &v in g.face(f2).walk() {
        label[v] = t;
    }
    let mut net = FlowNet::new(n + 2);
    for &(u, v) in g.edges() {
        if label[u] != label[v] {
            net.add_edge(label[u], label[v]);
        }
    }
    net.max_flow(s, t, limit)
}

/// Cyclic edge connectivity: the smallest cyclic cut size. The outward
/// edges of any pentagon always form a cyclic 5-cut, so the scan over
/// vertex-disjoint face pairs only needs to look for anything smaller;
/// the assumption that a minimum cyclic cut keeps some face whole on
/// each side is checked against `min_cyclic_cut_brute` on small graphs.
pub fn cyclic_edge_connectivity(g: &FullereneGraph) -> usize {
    let mut best = 5;
    for f1 in 0..g.num_faces() {
        let w1 = g.face(f1).walk();
        for f2 in f1 + 1..g.num_faces() {
            if g.face(f2).walk().iter().any(|v| w1.contains(v)) {
                continue;
            }
            best = best.min(face_separation(g, f1, f2, best));
        }
    }
    best
}

/// Detects a cyclic 5-cut that is not the boundary of a single face. Such
/// cuts exist exactly in the tube graphs built from two pentagon caps
/// (`find_nontrivial_cyclic_5_cut_brute` confirms this exhaustively on
/// small orders), so the test is an isomorphism check against the tube
/// with the same vertex count.
pub fn has_nontrivial_cyclic_5_cut(g: &FullereneGraph) -> bool {
    let n = g.n();
    if n < 30 || n % 10 != 0 {
        return false;
    }
    let k = (n - 20) / 10;
    let tube = construct_nanotube(k).expect("tube size within supported range");
    canonical_form(g) == canonical_form(&tube)
}

fn combinations(total: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if size > total {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if visit(&idx) {
            return;
        }
        // Advance to the next combination in lexicographic order.
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + total - size {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustive reference for the smallest cyclic cut: tries every edge
/// subset of size 1..=5 in lexicographic order. Exponential in cut size —
/// intended for small graphs only.
pub fn min_cyclic_cut_brute(g: &FullereneGraph) -> usize {
    let edges = g.edges();
    for size in 1..=5 {
        let mut found = false;
        combinations(edges.len(), size, |idx| {
            let cut: Vec<(usize, usize)> = idx.iter().map(|&i| edges[i]).collect();
            if cut_is_cyclic(g, &cut) {
                found = true;
            }
            found
        });
        if found {
            return size;
        }
    }
    panic!("no cyclic cut of size at most 5: not a valid fullerene");
}

/// Lean cyclic check for the exhaustive scans: cut must disconnect and
/// every piece must contain a cycle.
fn cut_is_cyclic(g: &FullereneGraph, cut: &[(usize, usize)]) -> bool {
    let (comp, count) = split_components(g, cut);
    if count < 2 {
        return false;
    }
    let mut vertices = vec![0usize; count];
    let mut inner_edges = vec![0usize; count];
    for v in 0..g.n() {
        vertices[comp[v]] += 1;
    }
    for &(u, v) in g.edges() {
        if comp[u] == comp[v] && cut.binary_search(&(u, v)).is_err() {
            inner_edges[comp[u]] += 1;
        }
    }
    (0..count).all(|c| inner_edges[c] >= vertices[c])
}

/// Exhaustive reference for nontrivial cyclic 5-cut existence: scans all
/// 5-edge subsets in lexicographic order and returns the first cyclic one
/// that is not a face boundary. Exponential — intended for small graphs.
pub fn find_nontrivial_cyclic_5_cut_brute(g: &FullereneGraph) -> Option<Vec<(usize, usize)>> {
    let edges = g.edges();
    let face_cuts: Vec<Vec<(usize, usize)>> = (0..g.num_faces())
        .map(|f| nabla(g, g.face(f).walk()))
        .collect();
    let mut hit: Option<Vec<(usize, usize)>> = None;
    combinations(edges.len(), 5, |idx| {
        let cut: Vec<(usize, usize)> = idx.iter().map(|&i| edges[i]).collect();
        if cut_is_cyclic(g, &cut) && !face_cuts.contains(&cut) {
            hit = Some(cut);
        }
        hit.is_some()
    });
    hit
}

/// The three cut-reshaping moves, each reading the shape of one side:
/// absorb a vertex with a single inside neighbor (cut shrinks by one),
/// shift a pair of adjacent vertices that each have two inside neighbors
/// (cut size preserved), or peel a full boundary ring whose vertices
/// alternate between two and three inside neighbors (cut size preserved).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CutMove {
    AbsorbPendant,
    ShiftPair,
    PeelRing,
}

fn degree_within(g: &FullereneGraph, in_side: &[bool], v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&u| in_side[u]).count()
}

/// Applies a move to side `side` of the cut, transferring the matched
/// vertices to the other side, and returns the re-validated result.
pub fn apply_cut_operation(
    g: &FullereneGraph,
    cut: &EdgeCut,
    mv: CutMove,
    side: usize,
) -> Result<EdgeCut, CutError> {
    assert!(side < 2, "a cut has sides 0 and 1");
    let h = cut.side(side);
    let mut in_side = vec![false; g.n()];
    for &v in h {
        in_side[v] = true;
    }
    let expected = match mv {
        CutMove::AbsorbPendant => cut.size() - 1,
        CutMove::ShiftPair | CutMove::PeelRing => cut.size(),
    };
    let moved: Vec<usize> = match mv {
        CutMove::AbsorbPendant => {
            let v = h
                .iter()
                .copied()
                .find(|&v| degree_within(g, &in_side, v) == 1)
                .ok_or(CutError::ShapeMissing {
                    side,
                    shape: "degree-one vertex",
                })?;
            vec![v]
        }
        CutMove::ShiftPair => {
            let mut pair = None;
            for &u in h {
                if degree_within(g, &in_side, u) != 2 {
                    continue;
                }
                let partner = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&w| in_side[w] && degree_within(g, &in_side, w) == 2)
                    .min();
                if let Some(w) = partner {
                    pair = Some((u, w));
                    break;
                }
            }
            let (u, w) = pair.ok_or(CutError::ShapeMissing {
                side,
                shape: "adjacent degree-two pair",
            })?;
            vec![u, w]
        }
        CutMove::PeelRing => trace_alternating_ring(g, h, &in_side, side)?,
    };
    let remaining: Vec<usize> = h.iter().copied().filter(|v| !moved.contains(v)).collect();
    if remaining.is_empty() {
        return Err(CutError::ShapeMissing {
            side,
            shape: "vertex left behind by the move",
        });
    }
    let next = EdgeCut::new(g, &nabla(g, &remaining))?;
    if next.size() != expected {
        return Err(CutError::ResultSize {
            expected,
            found: next.size(),
        });
    }
    Ok(next)
}

/// Traces the boundary ring of a side whose outer cycle alternates
/// between degree-2 vertices (one cut edge each) and degree-3 vertices
/// (one edge toward the interior). The trace starts at the smallest
/// degree-2 vertex and is forced at every step: from a degree-2 vertex
/// the only other inside neighbor, from a degree-3 vertex the unique
/// unvisited-direction neighbor of degree 2.
fn trace_alternating_ring(
    g: &FullereneGraph,
    h: &[usize],
    in_side: &[bool],
    side: usize,
) -> Result<Vec<usize>, CutError> {
    let missing = CutError::ShapeMissing {
        side,
        shape: "alternating boundary ring",
    };
    let deg = |v: usize| degree_within(g, in_side, v);
    if h.iter().any(|&v| deg(v) < 2) {
        return Err(missing);
    }
    let start = match h.iter().copied().find(|&v| deg(v) == 2) {
        Some(v) => v,
        None => return Err(missing),
    };
    let first = g
        .neighbors(start)
        .iter()
        .copied()
        .filter(|&w| in_side[w])
        .min()
        .expect("degree-two vertex has inside neighbors");
    let mut ring = vec![start];
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        ring.push(cur);
        if ring.len() > h.len() {
            return Err(missing);
        }
        let next = match deg(cur) {
            2 => g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| in_side[w] && w != prev),
            3 => {
                let nbrs = g.neighbors(cur);
                let mut cands = nbrs
                    .iter()
                    .copied()
                    .filter(|&w| in_side[w] && w != prev && deg(w) == 2);
                match (cands.next(), cands.next()) {
                    (Some(w), None) => Some(w),
                    _ => None,
                }
            }
            _ => None,
        };
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
            }
            None => return Err(missing),
        }
    }
    if ring.len() % 2 != 0 {
        return Err(missing);
    }
    for (i, &v) in ring.iter().enumerate() {
        if deg(v) != if i % 2 == 0 { 2 } else { 3 } {
            return Err(missing);
        }
    }
    // Every cut-incident vertex must lie on the ring.
    if h.iter().any(|&v| deg(v) == 2 && !ring.contains(&v)) {
        return Err(missing);
    }
    Ok(ring)
}
