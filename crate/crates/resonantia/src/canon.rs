//! Canonical codes: a complete isomorphism invariant for fullerene graphs.
//!
//! The code is the lexicographic minimum, over all 3n rooted directed edges
//! and both orientations of the embedding, of a breadth-first labeling that
//! records each vertex's two non-entry neighbors in rotation order. Equal
//! codes let the whole rotation system be reconstructed up to relabeling,
//! so two graphs share a code exactly when they are isomorphic as embedded
//! graphs up to reflection — and for 3-connected planar graphs (Whitney)
//! that coincides with plain graph isomorphism.

use crate::graph::FullereneGraph;
use std::fmt;

/// Relabeling- and reflection-invariant identity of a fullerene graph.
/// Layout: one byte n, then 2n label bytes. Ordered lexicographically,
/// which sorts first by vertex count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    /// Lowercase hex rendering, used in reports and golden files.
    pub fn hex(&self) -> String {
        let mut s = String::with_capacity(2 * self.0.len());
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

struct Workspace {
    label: Vec<u8>,
    order: Vec<usize>,
    entry: Vec<usize>,
    out: Vec<u8>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            label: vec![0; n],
            order: Vec::with_capacity(n),
            entry: vec![0; n],
            out: Vec::with_capacity(2 * n),
        }
    }
}

/// One rooted labeling attempt. Compares itself bytewise against `best`
/// while being produced and gives up as soon as it exceeds it; replaces
/// `best` when strictly smaller (or when `best` is still empty).
fn try_candidate(rot: &[[usize; 3]], u0: usize, v0: usize, best: &mut Vec<u8>, w: &mut Workspace) {
    let n = rot.len();
    w.label.fill(0);
    w.order.clear();
    w.out.clear();
    w.label[u0] = 1;
    w.label[v0] = 2;
    w.order.push(u0);
    w.order.push(v0);
    w.entry[u0] = v0;
    w.entry[v0] = u0;
    let mut next_label = 3u8;
    let have_best = !best.is_empty();
    let mut smaller = false;
    let mut idx = 0usize;

    for i in 0..n {
        let v = w.order[i];
        let e = w.entry[v];
        let r = &rot[v];
        let p = r.iter().position(|&x| x == e).expect("entry is a neighbor");
        for j in 1..3 {
            let u = r[(p + j) % 3];
            if w.label[u] == 0 {
                w.label[u] = next_label;
                next_label += 1;
                w.order.push(u);
                w.entry[u] = v;
            }
            let b = w.label[u];
            if have_best && !smaller {
                let cur = best[idx];
                if b > cur {
                    return;
                }
                if b < cur {
                    smaller = true;
                }
            }
            w.out.push(b);
            idx += 1;
        }
    }
    if !have_best || smaller {
        best.clear();
        best.extend_from_slice(&w.out);
    }
}

/// The canonical code of g: deterministic, invariant under vertex
/// relabeling and under mirroring the embedding.
pub fn canonical_form(g: &FullereneGraph) -> CanonicalCode {
    let n = g.n();
    let rot_normal: Vec<[usize; 3]> = g.rotation().to_vec();
    let rot_mirror: Vec<[usize; 3]> = rot_normal.iter().map(|r| [r[2], r[1], r[0]]).collect();
    let mut best: Vec<u8> = Vec::new();
    let mut w = Workspace::new(n);
    for rot in [&rot_normal, &rot_mirror] {
        for u0 in 0..n {
            for &v0 in &rot[u0] {
                try_candidate(rot, u0, v0, &mut best, &mut w);
            }
        }
    }
    debug_assert_eq!(best.len(), 2 * n);
    let mut code = Vec::with_capacity(1 + 2 * n);
    code.push(n as u8);
    code.extend_from_slice(&best);
    CanonicalCode(code)
}
