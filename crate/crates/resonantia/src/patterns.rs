//! Pentagon substructure predicates.
//!
//! Two local pentagon arrangements matter for 2-resonance: three pentagons
//! meeting at a common vertex, and four pentagons that appear as
//! consecutive neighbors around one common face. Graphs satisfying the
//! isolated pentagon rule (no two pentagons share a vertex) contain
//! neither.

use crate::graph::FullereneGraph;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PatternKind {
    /// Four pentagons occurring as consecutive neighbors of a common face.
    L,
    /// Three pentagons sharing a common vertex.
    R,
}

/// Where the detected pentagons meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    /// Common vertex of the three pentagons.
    Vertex(usize),
    /// Common face the four pentagons are consecutive neighbors of.
    Face(usize),
}

/// A concrete occurrence of one of the two pentagon substructures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    /// Pentagon face ids: 3 for a vertex-anchored triple, 4 (in cyclic
    /// neighbor order) for a face-anchored run.
    pub faces: Vec<usize>,
    pub anchor: Anchor,
}

/// The shared-edge relation among the twelve pentagons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PentagonAdjacency {
    /// The pentagon face ids, ascending.
    pub nodes: Vec<usize>,
    /// Pairs of pentagons sharing an edge, as (smaller id, larger id),
    /// sorted.
    pub links: Vec<(usize, usize)>,
}

impl PentagonAdjacency {
    /// Connected components over the links, each sorted, ordered by their
    /// smallest member. Isolated pentagons form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for &start in &self.nodes {
            if seen.contains(&start) {
                continue;
            }
            let mut cluster = vec![start];
            let mut frontier = vec![start];
            while let Some(p) = frontier.pop() {
                for &(a, b) in &self.links {
                    let q = match (a == p, b == p) {
                        (true, _) => b,
                        (_, true) => a,
                        _ => continue,
                    };
                    if !cluster.contains(&q) {
                        cluster.push(q);
                        frontier.push(q);
                    }
                }
            }
            cluster.sort_unstable();
            seen.extend_from_slice(&cluster);
            comp.push(cluster);
        }
        comp
    }
}

/// Computes the shared-edge relation among the pentagons.
pub fn pentagon_adjacency(g: &FullereneGraph) -> PentagonAdjacency {
    let nodes = g.pentagons().to_vec();
    let mut links = Vec::new();
    for (i, &p) in nodes.iter().enumerate() {
        for &q in &nodes[i + 1..] {
            if !g.shared_edges(p, q).is_empty() {
                links.push((p, q));
            }
        }
    }
    links.sort_unstable();
    PentagonAdjacency { nodes, links }
}

/// Finds three pentagons sharing a vertex: the witness anchors at the
/// smallest such vertex.
pub fn contains_r(g: &FullereneGraph) -> Option<PatternWitness> {
    for v in 0..g.n() {
        let fs = g.faces_at(v);
        if fs.iter().all(|&f| g.face(f).walk().len() == 5) {
            let mut faces = fs.to_vec();
            faces.sort_unstable();
            return Some(PatternWitness {
                kind: PatternKind::R,
                faces,
                anchor: Anchor::Vertex(v),
            });
        }
    }
    None
}

/// Finds four pentagons that are consecutive neighbors of one face: the
/// witness anchors at the smallest such face, with the run starting at
/// the smallest walk position.
pub fn contains_l(g: &FullereneGraph) -> Option<PatternWitness> {
    for f in 0..g.num_faces() {
        let nbrs = g.face_neighbors(f);
        let len = nbrs.len();
        for start in 0..len {
            let run: Vec<usize> = (0..4).map(|i| nbrs[(start + i) % len]).collect();
            let distinct = run
                .iter()
                .enumerate()
                .all(|(i, a)| run[i + 1..].iter().all(|b| a != b));
            if distinct && run.iter().all(|&p| g.face(p).walk().len() == 5) {
                return Some(PatternWitness {
                    kind: PatternKind::L,
                    faces: run,
                    anchor: Anchor::Face(f),
                });
            }
        }
    }
    None
}

/// Isolated pentagon rule: no two pentagons share a vertex.
pub fn is_ipr(g: &FullereneGraph) -> bool {
    let masks: Vec<[u64; 4]> = g
        .pentagons()
        .iter()
        .map(|&p| {
            let mut mask = [0u64; 4];
            for &v in g.face(p).walk() {
                mask[v / 64] |= 1 << (v % 64);
            }
            mask
        })
        .collect();
    for (i, a) in masks.iter().enumerate() {
        for b in &masks[i + 1..] {
            if a.iter().zip(b).any(|(x, y)| x & y != 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spiral::{construct_nanotube, unwind_spiral, SpiralCode};
    use crate::testutil::dodecahedron;

    /// The icosahedral 60-vertex graph via its face spiral: pentagons at
    /// these positions among 32 faces, hexagons elsewhere.
    fn buckyball() -> FullereneGraph {
        let pent = [0usize, 6, 8, 10, 12, 14, 17, 19, 21, 23, 25, 31];
        let sizes: Vec<usize> = (0..32)
            .map(|i| if pent.contains(&i) { 5 } else { 6 })
            .collect();
        unwind_spiral(&SpiralCode::new(&sizes).unwrap()).unwrap()
    }

    #[test]
    fn dodecahedron_pentagon_relation_is_icosahedral() {
        let g = dodecahedron();
        let adj = pentagon_adjacency(&g);
        assert_eq!(adj.nodes.len(), 12);
        assert_eq!(adj.links.len(), 30);
        for &p in &adj.nodes {
            let deg = adj.links.iter().filter(|&&(a, b)| a == p || b == p).count();
            assert_eq!(deg, 5);
        }
        assert_eq!(adj.components(), vec![(0..12).collect::<Vec<_>>()]);
        assert!(!is_ipr(&g));
    }

    #[test]
    fn dodecahedron_contains_both_substructures() {
        let g = dodecahedron();
        let r = contains_r(&g).expect("every vertex lies on three pentagons");
        assert_eq!(r.kind, PatternKind::R);
        assert_eq!(r.anchor, Anchor::Vertex(0));
        let Anchor::Vertex(v) = r.anchor else { unreachable!() };
        let at = g.faces_at(v);
        assert!(r.faces.iter().all(|f| at.contains(f)));
        assert!(r.faces.iter().all(|&f| g.face(f).walk().len() == 5));

        let l = contains_l(&g).expect("any face has five pentagonal neighbors");
        assert_eq!(l.kind, PatternKind::L);
        assert_eq!(l.faces.len(), 4);
        let Anchor::Face(f) = l.anchor else { unreachable!() };
        let nbrs = g.face_neighbors(f);
        assert!(l.faces.iter().all(|p| nbrs.contains(p)));
        assert!(l.faces.iter().all(|&p| g.face(p).walk().len() == 5));
    }

    #[test]
    fn nanotube_caps_are_pentagon_clusters() {
        let g = construct_nanotube(1).unwrap();
        let adj = pentagon_adjacency(&g);
        let comps = adj.components();
        assert_eq!(comps.len(), 2, "two caps");
        assert!(comps.iter().all(|c| c.len() == 6), "six pentagons per cap");
        assert!(!is_ipr(&g));
    }

    #[test]
    fn nanotubes_contain_the_vertex_anchored_triple() {
        for k in 1..=8 {
            let g = construct_nanotube(k).unwrap();
            assert!(contains_r(&g).is_some(), "k={k}");
            assert!(contains_l(&g).is_some(), "k={k}");
        }
    }

    #[test]
    fn buckyball_is_ipr_and_pattern_free() {
        let g = buckyball();
        assert_eq!(g.n(), 60);
        assert!(is_ipr(&g));
        assert_eq!(pentagon_adjacency(&g).links.len(), 0);
        assert!(contains_r(&g).is_none());
        assert!(contains_l(&g).is_none());
    }

    #[test]
    fn vertex_route_agrees_with_mutually_adjacent_triples() {
        // Independent detector: three pentagons pairwise sharing an edge.
        // In a fullerene, three pairwise-adjacent faces meet at a vertex,
        // so the two detectors must agree.
        for n in (20..=36).step_by(2) {
            for g in crate::spiral::enumerate_isomers(n).unwrap() {
                let pents = g.pentagons();
                let triple = pents.iter().enumerate().any(|(i, &p)| {
                    pents[i + 1..].iter().enumerate().any(|(j, &q)| {
                        pents[i + 1 + j + 1..].iter().any(|&r| {
                            !g.shared_edges(p, q).is_empty()
                                && !g.shared_edges(p, r).is_empty()
                                && !g.shared_edges(q, r).is_empty()
                        })
                    })
                });
                assert_eq!(contains_r(&g).is_some(), triple, "n={n}");
            }
        }
    }

    #[test]
    fn ipr_rules_out_both_patterns() {
        // Pattern pentagons are pairwise adjacent around their anchor, so
        // an isolated-pentagon graph can contain neither.
        for n in (20..=36).step_by(2) {
            for g in crate::spiral::enumerate_isomers(n).unwrap() {
                if is_ipr(&g) {
                    assert!(contains_r(&g).is_none());
                    assert!(contains_l(&g).is_none());
                }
            }
        }
    }
}
