//! Shared test fixtures: small graphs written out by hand, plus scaffolding
//! to turn a face list into a rotation system.

use crate::graph::{norm_edge, FullereneGraph};

/// Builds a rotation system from a full list of face walks by orienting
/// the faces consistently and chaining corners around each vertex.
pub(crate) fn rotation_from_faces(n: usize, faces: &[Vec<usize>]) -> Vec<[usize; 3]> {
    use std::collections::HashMap;

    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (id, w) in faces.iter().enumerate() {
        for i in 0..w.len() {
            let e = norm_edge(w[i], w[(i + 1) % w.len()]);
            by_edge.entry(e).or_default().push(id);
        }
    }
    assert!(by_edge.values().all(|v| v.len() == 2));

    let mut oriented: Vec<Option<Vec<usize>>> = vec![None; faces.len()];
    oriented[0] = Some(faces[0].clone());
    let mut queue = vec![0usize];
    while let Some(f) = queue.pop() {
        let walk = oriented[f].clone().unwrap();
        for i in 0..walk.len() {
            let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
            let &g = by_edge[&norm_edge(a, b)].iter().find(|&&g| g != f).unwrap();
            if oriented[g].is_some() {
                continue;
            }
            // The shared edge must be traversed b -> a in g.
            let gw = &faces[g];
            let pos = (0..gw.len())
                .find(|&j| norm_edge(gw[j], gw[(j + 1) % gw.len()]) == norm_edge(a, b))
                .unwrap();
            let mut w = gw.clone();
            if !(w[pos] == b && w[(pos + 1) % w.len()] == a) {
                w.reverse();
            }
            oriented[g] = Some(w);
            queue.push(g);
        }
    }

    // Around each vertex, every oriented corner (a, v, b) says b follows
    // a; the three corners chain into the rotation cycle.
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for w in oriented.iter().map(|o| o.as_ref().unwrap()) {
        for i in 0..w.len() {
            let a = w[i];
            let v = w[(i + 1) % w.len()];
            let b = w[(i + 2) % w.len()];
            succ[v].insert(a, b);
        }
    }
    (0..n)
        .map(|v| {
            assert_eq!(succ[v].len(), 3);
            let &x0 = succ[v].keys().min().unwrap();
            let x1 = succ[v][&x0];
            let x2 = succ[v][&x1];
            [x0, x1, x2]
        })
        .collect()
}

/// The dodecahedron written out as faces: a top pentagon, five upper
/// faces, five lower faces, a bottom pentagon.
pub(crate) fn dodecahedron() -> FullereneGraph {
    let mut faces: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3, 4]];
    for i in 0..5 {
        let j = (i + 1) % 5;
        faces.push(vec![i, j, 5 + j, 10 + i, 5 + i]);
    }
    for i in 0..5 {
        let j = (i + 1) % 5;
        faces.push(vec![10 + i, 5 + j, 10 + j, 15 + j, 15 + i]);
    }
    faces.push(vec![15, 16, 17, 18, 19]);
    let rotation = rotation_from_faces(20, &faces);
    FullereneGraph::build_and_validate(rotation).expect("dodecahedron is a fullerene")
}

/// An 11-gonal prism: cubic, planar, connected, but with two 11-gon
/// faces and eleven squares. Exercises rejection of a 22-vertex input.
pub(crate) fn prism11_rotation() -> Vec<[usize; 3]> {
    let n = 22;
    let mut rot = Vec::with_capacity(n);
    for i in 0..11 {
        rot.push([(i + 10) % 11, (i + 1) % 11, i + 11]);
    }
    for i in 0..11 {
        rot.push([11 + (i + 1) % 11, 11 + (i + 10) % 11, i]);
    }
    rot
}
