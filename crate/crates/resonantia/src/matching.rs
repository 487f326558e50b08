//! Maximum matching and the Gallai–Edmonds structure on general graphs.
//!
//! Nothing in this module assumes planarity or regularity; it works on any
//! simple graph and is tested independently against brute force. The
//! matcher is the classic blossom-contraction search, with deterministic
//! tie-breaking: vertices are scanned in ascending index and adjacency
//! lists are kept sorted, so the same input always yields the same
//! matching and the same decomposition.

use thiserror::Error;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("vertex {0} is out of range")]
    BadVertex(usize),
    #[error("edge ({0}, {1}) is a self-loop or duplicate")]
    BadEdge(usize, usize),
}

/// A plain undirected simple graph on vertices 0..n.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::try_from_edges(n, edges).expect("invalid edge list")
    }

    pub fn try_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, MatchingError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(MatchingError::BadVertex(u));
            }
            if v >= n {
                return Err(MatchingError::BadVertex(v));
            }
            if u == v || adj[u].contains(&v) {
                return Err(MatchingError::BadEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(SimpleGraph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, l) in self.adj.iter().enumerate() {
            for &v in l {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components, each sorted, in order of smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced on `keep` (sorted, distinct), plus the map from
    /// new ids back to old ones.
    pub fn induced(&self, keep: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let mut index = vec![NONE; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != NONE && v < w {
                    edges.push((i, index[w]));
                }
            }
        }
        (SimpleGraph::from_edges(keep.len(), &edges), keep.to_vec())
    }

    /// Connected, at least three vertices, and no cutvertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.n();
        if n < 3 || !self.is_connected() {
            return false;
        }
        for cut in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&v| v != cut).collect();
            let (sub, _) = self.induced(&keep);
            if !sub.is_connected() {
                return false;
            }
        }
        true
    }
}

/// A set of vertex-disjoint edges, normalized as sorted (min, max) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        let m = Matching { edges };
        debug_assert!(m.is_vertex_disjoint());
        m
    }

    fn from_mate(mate: &[usize]) -> Self {
        let mut edges = Vec::new();
        for (v, &m) in mate.iter().enumerate() {
            if m != NONE && v < m {
                edges.push((v, m));
            }
        }
        Matching { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.edges
            .iter()
            .all(|&(a, b)| a != b && seen.insert(a) && seen.insert(b))
    }

    /// A valid matching of g covering every vertex.
    pub fn is_perfect_on(&self, g: &SimpleGraph) -> bool {
        self.is_vertex_disjoint()
            && self.edges.iter().all(|&(a, b)| b < g.n() && g.has_edge(a, b))
            && self.edges.len() * 2 == g.n()
    }

    /// Reindexes edge endpoints through `map` (new id -> old id).
    pub fn relabeled(&self, map: &[usize]) -> Matching {
        Matching::new(self.edges.iter().map(|&(a, b)| (map[a], map[b])).collect())
    }
}

struct Matcher<'g> {
    g: &'g SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    outer: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl<'g> Matcher<'g> {
    fn new(g: &'g SimpleGraph) -> Self {
        let n = g.n();
        let mut m = Matcher {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            outer: vec![false; n],
            in_blossom: vec![false; n],
            queue: std::collections::VecDeque::new(),
        };
        // Greedy seed; the search only has to fix up what this misses.
        for v in 0..n {
            if m.mate[v] == NONE {
                if let Some(&w) = g.adj(v).iter().find(|&&w| m.mate[w] == NONE) {
                    m.mate[v] = w;
                    m.mate[w] = v;
                }
            }
        }
        m
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// One alternating-forest search from `root`. Returns the exposed far
    /// end of an augmenting path if one exists. Afterwards `outer` marks
    /// every vertex reached with even parity (blossoms included).
    fn search(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.outer.iter_mut().for_each(|o| *o = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.outer[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.adj(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom.
                    let cur_base = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.outer[i] {
                                self.outer[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.outer[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, exposed: usize) {
        let mut v = exposed;
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn solve(&mut self) {
        for v in 0..self.g.n() {
            if self.mate[v] == NONE {
                if let Some(exposed) = self.search(v) {
                    self.augment(exposed);
                }
            }
        }
    }
}

fn maximum_mate(g: &SimpleGraph) -> Vec<usize> {
    let mut m = Matcher::new(g);
    m.solve();
    m.mate
}

/// Independent reference for the matching machinery: maximum matching
/// size by memoized search over vertex subsets, no augmenting paths or
/// blossoms involved. Exponential in vertex count — limited to 20.
pub fn brute_force_matching_size(g: &SimpleGraph) -> usize {
    assert!(g.n() <= 20, "subset search is exponential in n");
    let n = g.n();
    let full: u32 = (1u32 << n) - 1;
    let mut memo = vec![u8::MAX; (full as usize) + 1];
    fn go(mask: u32, g: &SimpleGraph, memo: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        if memo[mask as usize] != u8::MAX {
            return memo[mask as usize];
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = go(rest, g, memo);
        for &w in g.adj(v) {
            if rest & (1 << w) != 0 {
                best = best.max(1 + go(rest & !(1 << w), g, memo));
            }
        }
        memo[mask as usize] = best;
        best
    }
    go(full, g, &mut memo) as usize
}

/// A maximum matching, deterministic for a given graph.
pub fn max_matching(g: &SimpleGraph) -> Matching {
    Matching::from_mate(&maximum_mate(g))
}

/// Perfect-matching query used on hot paths: the witness when one exists,
/// nothing otherwise.
pub fn try_perfect_matching(g: &SimpleGraph) -> Option<Matching> {
    if g.n() % 2 != 0 {
        return None;
    }
    // A vertex of degree zero can never be covered.
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return None;
    }
    let m = max_matching(g);
    (m.len() * 2 == g.n()).then_some(m)
}

/// Outcome of a perfect-matching test: either the matching itself or a
/// structural certificate of deficiency.
#[derive(Debug, Clone)]
pub enum PerfectMatching {
    Perfect(Matching),
    /// No perfect matching; the decomposition has more components than |S|.
    Deficient(GEDecomposition),
}

impl PerfectMatching {
    pub fn exists(&self) -> bool {
        matches!(self, PerfectMatching::Perfect(_))
    }
}

pub fn has_perfect_matching(g: &SimpleGraph) -> PerfectMatching {
    match try_perfect_matching(g) {
        Some(m) => PerfectMatching::Perfect(m),
        None => PerfectMatching::Deficient(gallai_edmonds(g)),
    }
}

/// Every vertex deletion leaves a perfectly matchable graph. Follows the
/// definition directly; the graph must be connected and of odd order (a
/// single vertex counts).
pub fn is_factor_critical(g: &SimpleGraph) -> bool {
    let n = g.n();
    if n % 2 == 0 || !g.is_connected() {
        return false;
    }
    if n == 1 {
        return true;
    }
    (0..n).all(|v| {
        let keep: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        let (sub, _) = g.induced(&keep);
        try_perfect_matching(&sub).is_some()
    })
}

/// One component of the decomposition.
#[derive(Debug, Clone)]
pub struct GEComponent {
    pub vertices: Vec<usize>,
    pub factor_critical: bool,
}

/// A vertex set S matchable into the components of G - S, all of which are
/// factor-critical. G has a perfect matching iff |S| equals the number of
/// components.
#[derive(Debug, Clone)]
pub struct GEDecomposition {
    pub s: Vec<usize>,
    pub components: Vec<GEComponent>,
    /// Injection witnessing matchability: (vertex of S, component index),
    /// componentwise distinct, each pair joined by an edge of G.
    pub matching_of_s: Vec<(usize, usize)>,
}

impl GEDecomposition {
    /// Components minus |S|; zero exactly when a perfect matching exists,
    /// and a lower bound on the number of uncoverable vertices otherwise.
    pub fn deficiency(&self) -> usize {
        self.components.len() - self.s.len()
    }

    /// Re-checks every claim in the decomposition against g directly:
    /// partition, factor-criticality of each component, and the injection.
    pub fn verify(&self, g: &SimpleGraph) -> bool {
        let n = g.n();
        let mut owner = vec![NONE; n];
        for &v in &self.s {
            if v >= n || owner[v] != NONE {
                return false;
            }
            owner[v] = n; // sentinel distinct from component indices
        }
        for (ci, c) in self.components.iter().enumerate() {
            for &v in &c.vertices {
                if v >= n || owner[v] != NONE {
                    return false;
                }
                owner[v] = ci;
            }
        }
        if owner.iter().any(|&o| o == NONE) {
            return false;
        }
        // Components must be maximal connected pieces of G - S: connected,
        // and with no edges leaving them except into S.
        for (ci, c) in self.components.iter().enumerate() {
            let (sub, _) = g.induced(&c.vertices);
            if !sub.is_connected() {
                return false;
            }
            for &v in &c.vertices {
                for &w in g.adj(v) {
                    if owner[w] != ci && owner[w] != n {
                        return false;
                    }
                }
            }
            if !c.factor_critical || !is_factor_critical(&sub) {
                return false;
            }
        }
        // The injection: pairwise-distinct components, each adjacent to its
        // S-vertex, one entry per S-vertex.
        if self.matching_of_s.len() != self.s.len() {
            return false;
        }
        let mut used = vec![false; self.components.len()];
        for &(sv, ci) in &self.matching_of_s {
            if !self.s.contains(&sv) || ci >= self.components.len() || used[ci] {
                return false;
            }
            used[ci] = true;
            let adj_to_comp = self.components[ci]
                .vertices
                .iter()
                .any(|&v| g.has_edge(sv, v));
            if !adj_to_comp {
                return false;
            }
        }
        true
    }
}

/// Vertices missed by some maximum matching: the union, over all exposed
/// roots, of the even-parity reachable sets of the final alternating
/// forests.
fn inessential_vertices(g: &SimpleGraph) -> Vec<bool> {
    let mut m = Matcher::new(g);
    m.solve();
    let n = g.n();
    let mut marks = vec![false; n];
    for root in 0..n {
        if m.mate[root] == NONE {
            let found = m.search(root);
            assert!(found.is_none(), "matching was not maximum");
            for v in 0..n {
                if m.outer[v] {
                    marks[v] = true;
                }
            }
        }
    }
    marks
}

/// Computes the canonical structure of one induced subgraph: the
/// inessential set D, its components, and the neighbor set A.
/// Returns (components of D, A, components of the perfectly matchable rest).
#[allow(clippy::type_complexity)]
fn ge_core(g: &SimpleGraph) -> (Vec<Vec<usize>>, Vec<usize>, Vec<Vec<usize>>) {
    let n = g.n();
    let d_mark = inessential_vertices(g);
    let mut a_mark = vec![false; n];
    for v in 0..n {
        if d_mark[v] {
            for &w in g.adj(v) {
                if !d_mark[w] {
                    a_mark[w] = true;
                }
            }
        }
    }
    let d: Vec<usize> = (0..n).filter(|&v| d_mark[v]).collect();
    let a: Vec<usize> = (0..n).filter(|&v| a_mark[v]).collect();
    let c: Vec<usize> = (0..n).filter(|&v| !d_mark[v] && !a_mark[v]).collect();

    let (d_sub, d_map) = g.induced(&d);
    let d_comps = d_sub
        .components()
        .into_iter()
        .map(|comp| comp.into_iter().map(|v| d_map[v]).collect())
        .collect();
    let (c_sub, c_map) = g.induced(&c);
    let c_comps = c_sub
        .components()
        .into_iter()
        .map(|comp| comp.into_iter().map(|v| c_map[v]).collect())
        .collect();
    (d_comps, a, c_comps)
}

/// The matchable decomposition behind the Berge–Tutte bound. S starts as
/// the neighbor set of the inessential vertices; each perfectly matchable
/// leftover component is peeled by moving its smallest vertex into S and
/// recursing, which keeps components minus |S| invariant. The result is
/// verified against the graph before being returned.
pub fn gallai_edmonds(g: &SimpleGraph) -> GEDecomposition {
    let mut s = Vec::new();
    let mut components = Vec::new();

    // Work queue of (vertex set, map to g-ids is identity) subgraphs whose
    // perfect matchability is guaranteed by construction.
    let all: Vec<usize> = (0..g.n()).collect();
    let mut stack = vec![all];
    while let Some(verts) = stack.pop() {
        if verts.is_empty() {
            continue;
        }
        let (sub, map) = g.induced(&verts);
        let (d_comps, a, c_comps) = ge_core(&sub);
        s.extend(a.iter().map(|&v| map[v]));
        for comp in d_comps {
            components.push(GEComponent {
                vertices: comp.into_iter().map(|v| map[v]).collect(),
                factor_critical: true,
            });
        }
        for comp in c_comps {
            // Peel: smallest vertex joins S, the rest recurses.
            let mut orig: Vec<usize> = comp.into_iter().map(|v| map[v]).collect();
            orig.sort_unstable();
            s.push(orig[0]);
            stack.push(orig[1..].to_vec());
        }
    }

    s.sort_unstable();
    components.sort_by_key(|c| c.vertices[0]);

    let matching_of_s = match_s_to_components(g, &s, &components);
    let out = GEDecomposition {
        s,
        components,
        matching_of_s,
    };
    assert!(out.verify(g), "decomposition failed self-verification");
    out
}

/// Bipartite matching (augmenting paths) from S into the components, scanned
/// in ascending order. The Gallai-Edmonds structure theorem guarantees
/// saturation of S.
fn match_s_to_components(
    g: &SimpleGraph,
    s: &[usize],
    components: &[GEComponent],
) -> Vec<(usize, usize)> {
    let mut comp_of = vec![NONE; g.n()];
    for (ci, c) in components.iter().enumerate() {
        for &v in &c.vertices {
            comp_of[v] = ci;
        }
    }
    let adj: Vec<Vec<usize>> = s
        .iter()
        .map(|&sv| {
            let mut cs: Vec<usize> = g
                .adj(sv)
                .iter()
                .filter_map(|&w| (comp_of[w] != NONE).then_some(comp_of[w]))
                .collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        })
        .collect();

    let mut comp_mate = vec![NONE; components.len()];
    fn try_kuhn(
        si: usize,
        adj: &[Vec<usize>],
        comp_mate: &mut [usize],
        visited: &mut [bool],
    ) -> bool {
        for &ci in &adj[si] {
            if visited[ci] {
                continue;
            }
            visited[ci] = true;
            if comp_mate[ci] == NONE || try_kuhn(comp_mate[ci], adj, comp_mate, visited) {
                comp_mate[ci] = si;
                return true;
            }
        }
        false
    }
    for si in 0..s.len() {
        let mut visited = vec![false; components.len()];
        let ok = try_kuhn(si, &adj, &mut comp_mate, &mut visited);
        assert!(ok, "S must be matchable into the components");
    }
    let mut out: Vec<(usize, usize)> = comp_mate
        .iter()
        .enumerate()
        .filter(|&(_, &si)| si != NONE)
        .map(|(ci, &si)| (s[si], ci))
        .collect();
    out.sort_unstable();
    out
}
