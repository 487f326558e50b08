//! Fullerene graphs as combinatorial embeddings on the sphere.
//!
//! A fullerene graph is a 3-connected cubic planar graph whose faces are
//! twelve pentagons and otherwise hexagons. The embedding is carried as a
//! rotation system: the cyclic order of the three neighbors around every
//! vertex. All face data is traced from the rotation system during
//! validation, never supplied by the caller, so a successfully built
//! [`FullereneGraph`] always satisfies the Euler relation and the face-size
//! constraints.

use thiserror::Error;

use crate::matching::SimpleGraph;

/// Hard upper bound on the vertex count. Keeps every vertex id and every
/// canonical-code label within a single byte, matching the wire format.
pub const MAX_VERTICES: usize = 254;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} is not an even number in 20..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("vertex {0} does not have exactly 3 distinct neighbors")]
    NonCubic(usize),
    #[error("vertex {v} lists out-of-range neighbor {nbr}")]
    BadIndex { v: usize, nbr: usize },
    #[error("adjacency is not symmetric: {u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: usize, v: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("face tracing found {found} faces where a spherical embedding needs {expected}")]
    EulerCheck { found: usize, expected: usize },
    #[error("pentagon count is {0}, a fullerene needs exactly 12")]
    PentagonCount(usize),
    #[error("face {id} has size {size}, only pentagons and hexagons are allowed")]
    FaceSize { id: usize, size: usize },
    #[error("the face walk through ({u}, {v}) repeats a vertex")]
    RepeatedWalkVertex { u: usize, v: usize },
}

/// A facial cycle, stored as its vertex walk in embedding order.
///
/// The walk is normalized to start at the lexicographically smallest
/// directed edge on the face, and face ids are assigned in sorted order of
/// that starting edge, so ids and walks are reproducible for a given
/// rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    id: usize,
    walk: Vec<usize>,
}

impl Face {
    pub fn id(&self) -> usize {
        self.id
    }

    /// Vertices in embedding order; consecutive entries (cyclically) are the
    /// edges of the face.
    pub fn walk(&self) -> &[usize] {
        &self.walk
    }

    pub fn size(&self) -> usize {
        self.walk.len()
    }

    pub fn is_pentagon(&self) -> bool {
        self.walk.len() == 5
    }

    pub fn is_hexagon(&self) -> bool {
        self.walk.len() == 6
    }

    pub fn contains(&self, v: usize) -> bool {
        self.walk.contains(&v)
    }

    /// Edges of the face, normalized as (min, max) pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let w = &self.walk;
        (0..w.len())
            .map(|i| norm_edge(w[i], w[(i + 1) % w.len()]))
            .collect()
    }
}

pub(crate) fn norm_edge(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A validated fullerene graph together with its traced faces.
#[derive(Debug, Clone)]
pub struct FullereneGraph {
    rotation: Vec<[usize; 3]>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Face>,
    /// face_at[v][i] is the id of the face lying on the trace side of the
    /// directed edge (v, rotation[v][i]).
    face_at: Vec<[usize; 3]>,
    pentagons: Vec<usize>,
    hexagons: Vec<usize>,
}

impl FullereneGraph {
    /// Builds a fullerene graph from a rotation system, checking every
    /// structural invariant: cubic symmetric adjacency, connectivity, the
    /// Euler relation via face tracing, exactly twelve pentagons and no face
    /// size outside {5, 6}.
    pub fn build_and_validate(rotation: Vec<[usize; 3]>) -> Result<Self, GraphError> {
        let n = rotation.len();
        if n < 20 || n > MAX_VERTICES || n % 2 != 0 {
            return Err(GraphError::VertexCount(n));
        }
        for (v, nbrs) in rotation.iter().enumerate() {
            for &w in nbrs {
                if w >= n {
                    return Err(GraphError::BadIndex { v, nbr: w });
                }
            }
            if nbrs[0] == nbrs[1] || nbrs[0] == nbrs[2] || nbrs[1] == nbrs[2] || nbrs.contains(&v)
            {
                return Err(GraphError::NonCubic(v));
            }
        }
        for (u, nbrs) in rotation.iter().enumerate() {
            for &v in nbrs {
                if !rotation[v].contains(&u) {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }
        if !is_connected(&rotation) {
            return Err(GraphError::Disconnected);
        }

        let (raw_faces, _) = trace_faces(&rotation);
        let expected = n / 2 + 2;
        if raw_faces.len() != expected {
            return Err(GraphError::EulerCheck {
                found: raw_faces.len(),
                expected,
            });
        }
        let pentagon_count = raw_faces.iter().filter(|w| w.len() == 5).count();
        if pentagon_count != 12 {
            return Err(GraphError::PentagonCount(pentagon_count));
        }
        for (id, w) in raw_faces.iter().enumerate() {
            if w.len() != 5 && w.len() != 6 {
                return Err(GraphError::FaceSize { id, size: w.len() });
            }
        }
        for w in &raw_faces {
            let mut seen = w.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|p| p[0] == p[1]) {
                return Err(GraphError::RepeatedWalkVertex { u: w[0], v: w[1] });
            }
        }

        // Normalize each walk to start at its smallest directed edge and
        // order faces by that edge, so ids are independent of trace order.
        let mut normalized: Vec<Vec<usize>> = raw_faces
            .into_iter()
            .map(|w| {
                let len = w.len();
                let start = (0..len)
                    .min_by_key(|&i| (w[i], w[(i + 1) % len]))
                    .unwrap();
                (0..len).map(|i| w[(start + i) % len]).collect()
            })
            .collect();
        normalized.sort_unstable_by_key(|w| (w[0], w[1]));

        let faces: Vec<Face> = normalized
            .into_iter()
            .enumerate()
            .map(|(id, walk)| Face { id, walk })
            .collect();

        let mut face_at = vec![[usize::MAX; 3]; n];
        for f in &faces {
            let w = &f.walk;
            for i in 0..w.len() {
                let (u, v) = (w[i], w[(i + 1) % w.len()]);
                let pos = rotation[u].iter().position(|&x| x == v).unwrap();
                face_at[u][pos] = f.id;
            }
        }
        debug_assert!(face_at.iter().flatten().all(|&f| f != usize::MAX));

        let mut edges = Vec::with_capacity(3 * n / 2);
        for (u, nbrs) in rotation.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();

        let pentagons = faces.iter().filter(|f| f.is_pentagon()).map(Face::id).collect();
        let hexagons = faces.iter().filter(|f| f.is_hexagon()).map(Face::id).collect();

        Ok(FullereneGraph {
            rotation,
            edges,
            faces,
            face_at,
            pentagons,
            hexagons,
        })
    }

    /// Accepts arbitrary-length neighbor lists, rejecting non-cubic input.
    pub fn from_neighbor_lists(lists: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut rotation = Vec::with_capacity(lists.len());
        for (v, l) in lists.iter().enumerate() {
            if l.len() != 3 {
                return Err(GraphError::NonCubic(v));
            }
            rotation.push([l[0], l[1], l[2]]);
        }
        Self::build_and_validate(rotation)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        self.rotation[v]
    }

    pub fn rotation(&self) -> &[[usize; 3]] {
        &self.rotation
    }

    /// Edges as (min, max) pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.rotation[u].contains(&v)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn pentagons(&self) -> &[usize] {
        &self.pentagons
    }

    pub fn hexagons(&self) -> &[usize] {
        &self.hexagons
    }

    /// The face traced along the directed edge (u, v).
    pub fn face_along(&self, u: usize, v: usize) -> usize {
        let pos = self.rotation[u].iter().position(|&x| x == v).unwrap();
        self.face_at[u][pos]
    }

    /// The three (distinct) faces meeting at v.
    pub fn faces_at(&self, v: usize) -> [usize; 3] {
        self.face_at[v]
    }

    /// Neighboring faces of face `id` in the cyclic order induced by its
    /// walk; entry i lies across the walk edge (w[i], w[i+1]).
    pub fn face_neighbors(&self, id: usize) -> Vec<usize> {
        let w = self.faces[id].walk();
        (0..w.len())
            .map(|i| self.face_along(w[(i + 1) % w.len()], w[i]))
            .collect()
    }

    /// Edges shared by two faces, normalized and sorted.
    pub fn shared_edges(&self, f: usize, g: usize) -> Vec<(usize, usize)> {
        let ge = self.faces[g].edges();
        let mut out: Vec<(usize, usize)> = self.faces[f]
            .edges()
            .into_iter()
            .filter(|e| ge.contains(e))
            .collect();
        out.sort_unstable();
        out
    }

    /// Checks 3-connectivity directly: the graph stays connected after
    /// removing any one or two vertices. Quadratic, intended for on-demand
    /// verification rather than the validation hot path.
    pub fn is_three_connected(&self) -> bool {
        let n = self.n();
        if n < 4 {
            return false;
        }
        let mut removed = vec![false; n];
        for a in 0..n {
            removed[a] = true;
            for b in (a + 1)..n {
                removed[b] = true;
                if !connected_avoiding(&self.rotation, &removed) {
                    return false;
                }
                removed[b] = false;
            }
            removed[a] = false;
        }
        true
    }

    /// The same embedding with the opposite orientation.
    pub fn mirrored(&self) -> Self {
        let rotation = self
            .rotation
            .iter()
            .map(|&[a, b, c]| [c, b, a])
            .collect();
        Self::build_and_validate(rotation).expect("mirror of a valid graph is valid")
    }

    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n(), &self.edges)
    }

    /// The subgraph induced on the complement of `deleted`, plus the map
    /// from new vertex ids back to ids in this graph.
    pub fn induced_without(&self, deleted: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in deleted {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| !gone[u] && !gone[v])
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        (SimpleGraph::from_edges(keep.len(), &edges), keep)
    }
}

/// Traces all faces of a rotation system. Returns the face walks and, for
/// bookkeeping, the number of directed edges consumed. The successor of the
/// directed edge (u, v) is (v, w) where w follows u in the rotation at v.
fn trace_faces(rotation: &[[usize; 3]]) -> (Vec<Vec<usize>>, usize) {
    let n = rotation.len();
    let mut seen = vec![[false; 3]; n];
    let mut faces = Vec::new();
    let mut consumed = 0;
    for v0 in 0..n {
        for i0 in 0..3 {
            if seen[v0][i0] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut u, mut i) = (v0, i0);
            loop {
                seen[u][i] = true;
                consumed += 1;
                walk.push(u);
                let v = rotation[u][i];
                let j = rotation[v].iter().position(|&x| x == u).unwrap();
                u = v;
                i = (j + 1) % 3;
                if u == v0 && i == i0 {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    (faces, consumed)
}

fn is_connected(rotation: &[[usize; 3]]) -> bool {
    connected_avoiding(rotation, &vec![false; rotation.len()])
}

fn connected_avoiding(rotation: &[[usize; 3]], removed: &[bool]) -> bool {
    let n = rotation.len();
    let Some(start) = (0..n).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &rotation[v] {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == (0..n).filter(|&v| !removed[v]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{dodecahedron, prism11_rotation};

    #[test]
    fn dodecahedron_validates() {
        let g = dodecahedron();
        assert_eq!(g.n(), 20);
        assert_eq!(g.num_edges(), 30);
        assert_eq!(g.num_faces(), 12);
        assert!(g.faces().iter().all(Face::is_pentagon));
        assert_eq!(g.pentagons().len(), 12);
        assert!(g.hexagons().is_empty());
    }

    #[test]
    fn dodecahedron_face_sizes_sum_to_3n() {
        let g = dodecahedron();
        let total: usize = g.faces().iter().map(Face::size).sum();
        assert_eq!(total, 3 * g.n());
    }

    #[test]
    fn dodecahedron_is_three_connected() {
        assert!(dodecahedron().is_three_connected());
    }

    #[test]
    fn face_neighbors_walk_the_face_boundary() {
        let g = dodecahedron();
        for f in g.faces() {
            let nbrs = g.face_neighbors(f.id());
            assert_eq!(nbrs.len(), f.size());
            // A pentagon and each neighboring face share exactly one edge.
            for &nb in &nbrs {
                assert_ne!(nb, f.id());
                assert_eq!(g.shared_edges(f.id(), nb).len(), 1);
            }
            // Every neighbor appears at most once in the dodecahedron.
            let mut sorted = nbrs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), f.size());
        }
    }

    #[test]
    fn faces_at_vertex_are_the_three_incident_faces() {
        let g = dodecahedron();
        for v in 0..g.n() {
            let fs = g.faces_at(v);
            let mut sorted = fs.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), 3);
            for f in fs {
                assert!(g.face(f).contains(v));
            }
        }
    }

    #[test]
    fn prism_on_22_vertices_is_rejected() {
        let err = FullereneGraph::build_and_validate(prism11_rotation()).unwrap_err();
        assert_eq!(err, GraphError::PentagonCount(0));
    }

    #[test]
    fn mirrored_graph_validates_with_same_face_sizes() {
        let g = dodecahedron();
        let m = g.mirrored();
        assert_eq!(m.num_faces(), g.num_faces());
        assert_eq!(m.pentagons().len(), 12);
    }

    #[test]
    fn odd_or_small_vertex_counts_are_rejected() {
        assert_eq!(
            FullereneGraph::from_neighbor_lists(vec![vec![1, 2, 3]; 4]).unwrap_err(),
            GraphError::VertexCount(4)
        );
    }

    #[test]
    fn asymmetric_rotation_is_rejected() {
        let mut rot = prism11_rotation();
        // Redirect one neighbor entry without fixing the other endpoint.
        rot[0] = [10, 1, 12];
        let err = FullereneGraph::build_and_validate(rot).unwrap_err();
        assert!(matches!(err, GraphError::Asymmetric { .. }));
    }

    #[test]
    fn repeated_neighbor_is_rejected() {
        let mut rot = prism11_rotation();
        rot[0] = [1, 1, 11];
        let err = FullereneGraph::build_and_validate(rot).unwrap_err();
        assert!(matches!(err, GraphError::NonCubic(0)));
    }

    #[test]
    fn disconnected_input_is_rejected() {
        // Two disjoint 11-prisms on 44 vertices.
        let mut rot = prism11_rotation();
        let shifted: Vec<[usize; 3]> = prism11_rotation()
            .iter()
            .map(|&[a, b, c]| [a + 22, b + 22, c + 22])
            .collect();
        rot.extend(shifted);
        let err = FullereneGraph::build_and_validate(rot).unwrap_err();
        assert_eq!(err, GraphError::Disconnected);
    }
}
