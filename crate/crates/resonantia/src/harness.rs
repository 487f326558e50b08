//! Whole-corpus census: enumerate every isomer in a vertex range, check
//! structural invariants on each graph, classify substructures, resonance
//! and cuts, and collect the exceptional graphs into a deterministic,
//! machine-readable report.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::canonical_form;
use crate::cuts::{cyclic_edge_connectivity, has_nontrivial_cyclic_5_cut, is_cyclic_cut, nabla};
use crate::graph::{FullereneGraph, MAX_VERTICES};
use crate::io::{read_graphs_from_path, write_planar_code, IoError};
use crate::matching::gallai_edmonds;
use crate::patterns::{contains_l, contains_r, is_ipr};
use crate::resonance::{disjoint_hexagon_patterns, is_resonant_pattern, HexPattern};
use crate::spiral::{enumerate_isomers, SpiralError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("vertex range {n_min}..={n_max} must lie within 20..={max}")]
    BadRange {
        n_min: usize,
        n_max: usize,
        max: usize,
    },
    #[error("resonance order {k} outside the supported range 1..=3")]
    BadK { k: usize },
    #[error("no isomers found for {n} vertices")]
    GenerationIncomplete { n: usize },
    #[error(transparent)]
    Spiral(#[from] SpiralError),
    #[error("invariant violated on the {n}-vertex graph {code}: {what}")]
    InvariantViolated {
        n: usize,
        code: String,
        what: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Parse(#[from] IoError),
    #[error("golden mismatch in {name}: {detail}")]
    GoldenMismatch { name: String, detail: String },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Census parameters. Worker count and cache location affect only how the
/// run executes, never its output, so they are excluded from the config
/// echo in reports.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Resonance order to sweep (1..=3).
    pub k: usize,
    /// Worker threads; 0 picks the runtime default.
    #[serde(skip)]
    pub jobs: usize,
    /// Directory for memoized isomer lists, one planar-code file per
    /// vertex count.
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_min: 20,
            n_max: 60,
            k: 2,
            jobs: 1,
            cache_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n_min < 20 || self.n_min > self.n_max || self.n_max > MAX_VERTICES {
            return Err(HarnessError::BadRange {
                n_min: self.n_min,
                n_max: self.n_max,
                max: MAX_VERTICES,
            });
        }
        if !(1..=3).contains(&self.k) {
            return Err(HarnessError::BadK { k: self.k });
        }
        Ok(())
    }
}

/// Per-graph analysis result: one line of the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub n: usize,
    pub code: String,
    pub ipr: bool,
    pub has_l: bool,
    pub has_r: bool,
    /// Largest size s ≤ k such that every disjoint-hexagon pattern with
    /// at most s faces is resonant.
    pub resonant_up_to: usize,
    /// Face ids of the first failing pattern, when one exists within k.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_pattern: Option<Vec<usize>>,
    /// The facial walks of the failing pattern, for re-verification
    /// without reconstructing face numbering.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_walks: Option<Vec<Vec<usize>>>,
    pub cyclic_edge_connectivity: usize,
    pub nontrivial_5_cut: bool,
}

/// Aggregated counts for one vertex count. Counters that need a deeper
/// resonance sweep than the configured k are omitted rather than reported
/// as zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub n: usize,
    pub isomers: usize,
    pub one_resonant: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_resonant: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_resonant: Option<usize>,
    pub lr_free: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lr_free_non2resonant: Option<usize>,
    /// Informational: every non-2-resonant isomer, with or without the
    /// pentagon substructures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non2resonant_total: Option<usize>,
    pub ipr: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ipr_two_resonant: Option<usize>,
}

/// A graph free of both pentagon substructures yet not 2-resonant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalGraph {
    pub n: usize,
    pub code: String,
    pub failing_pattern: Vec<usize>,
    pub failing_walks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRef {
    pub n: usize,
    pub code: String,
}

/// Full census output: a summary (config echo, per-n tallies, exceptional
/// and fully-resonant lists) plus the per-graph records behind it.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub config: RunConfig,
    pub tallies: Vec<Tally>,
    pub exceptional: Vec<ExceptionalGraph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_resonant: Option<Vec<GraphRef>>,
    /// One line each in the JSONL rendering; not repeated in the summary
    /// object.
    #[serde(skip)]
    pub records: Vec<GraphRecord>,
}

impl CensusReport {
    /// Line-delimited JSON: one line per graph, then the summary object.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(self).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn write_jsonl(&self, path: &Path) -> Result<(), HarnessError> {
        fs::write(path, self.to_jsonl())?;
        Ok(())
    }

    /// "n code" per exceptional graph, one per line — the golden format.
    pub fn exceptional_lines(&self) -> String {
        self.exceptional
            .iter()
            .map(|e| format!("{} {}\n", e.n, e.code))
            .collect()
    }

    /// "n code" per fully 3-resonant graph, one per line.
    pub fn three_resonant_lines(&self) -> String {
        self.three_resonant
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|g| format!("{} {}\n", g.n, g.code))
            .collect()
    }

    pub fn write_golden(&self, dir: &Path) -> Result<(), HarnessError> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("exceptional.txt"), self.exceptional_lines())?;
        if self.three_resonant.is_some() {
            fs::write(dir.join("three_resonant.txt"), self.three_resonant_lines())?;
        }
        Ok(())
    }

    /// Compares against golden files written by `write_golden`.
    pub fn diff_golden(&self, dir: &Path) -> Result<(), HarnessError> {
        let mut checks = vec![("exceptional.txt", self.exceptional_lines())];
        if self.three_resonant.is_some() {
            checks.push(("three_resonant.txt", self.three_resonant_lines()));
        }
        for (name, current) in checks {
            let frozen = fs::read_to_string(dir.join(name))?;
            if frozen != current {
                return Err(HarnessError::GoldenMismatch {
                    name: name.to_string(),
                    detail: format!(
                        "frozen {} line(s) vs current {}",
                        frozen.lines().count(),
                        current.lines().count()
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Loads the isomer list for one vertex count from the cache if present,
/// enumerating and caching it otherwise. Files keep enumeration order, so
/// a cached run sees the same graphs in the same order.
fn load_or_enumerate(cfg: &RunConfig, n: usize) -> Result<Vec<FullereneGraph>, HarnessError> {
    let Some(dir) = &cfg.cache_dir else {
        return Ok(enumerate_isomers(n)?);
    };
    let path = dir.join(format!("isomers_{n:03}.pc"));
    if path.exists() {
        return Ok(read_graphs_from_path(&path)?);
    }
    let graphs = enumerate_isomers(n)?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("isomers_{n:03}.pc.tmp"));
    let mut buf = Vec::new();
    write_planar_code(&mut buf, graphs.iter())?;
    fs::write(&tmp, &buf)?;
    fs::rename(&tmp, &path)?;
    Ok(graphs)
}

/// Within-graph consistency checks that must hold for every fullerene:
/// any violation is a hard error carrying the offending graph's code.
pub fn structural_sweep(g: &FullereneGraph) -> Result<(), String> {
    let nf = g.num_faces();
    if !g.is_three_connected() {
        return Err("graph is not 3-connected".into());
    }
    let walks: Vec<&[usize]> = (0..nf).map(|f| g.face(f).walk()).collect();
    let shares_vertex =
        |a: usize, b: usize| walks[a].iter().any(|v| walks[b].contains(v));
    let mut adjacent = vec![vec![false; nf]; nf];
    for a in 0..nf {
        for b in a + 1..nf {
            let shared = g.shared_edges(a, b).len();
            if shared > 1 {
                return Err(format!("faces {a} and {b} share {shared} edges"));
            }
            adjacent[a][b] = shared == 1;
            adjacent[b][a] = adjacent[a][b];
        }
    }
    // Three pairwise adjacent faces always meet at a vertex.
    for a in 0..nf {
        for b in a + 1..nf {
            if !adjacent[a][b] {
                continue;
            }
            for c in b + 1..nf {
                if adjacent[a][c]
                    && adjacent[b][c]
                    && !walks[a]
                        .iter()
                        .any(|v| walks[b].contains(v) && walks[c].contains(v))
                {
                    return Err(format!(
                        "faces {a}, {b}, {c} are pairwise adjacent without a common vertex"
                    ));
                }
            }
        }
    }
    // Faces that neither touch nor see each other across an edge have at
    // most one common neighboring face.
    let crossing_edge = |a: usize, b: usize| {
        g.edges()
            .iter()
            .any(|&(u, v)| {
                (walks[a].contains(&u) && walks[b].contains(&v))
                    || (walks[a].contains(&v) && walks[b].contains(&u))
            })
    };
    for a in 0..nf {
        for b in a + 1..nf {
            if shares_vertex(a, b) || crossing_edge(a, b) {
                continue;
            }
            let common = (0..nf)
                .filter(|&c| c != a && c != b && adjacent[a][c] && adjacent[b][c])
                .count();
            if common > 1 {
                return Err(format!(
                    "disjoint non-incident faces {a} and {b} have {common} common neighbors"
                ));
            }
        }
    }
    // Outward edge sets of two faces overlap in at most one edge.
    let nablas: Vec<Vec<(usize, usize)>> = (0..nf).map(|f| nabla(g, walks[f])).collect();
    for a in 0..nf {
        for b in a + 1..nf {
            let overlap = nablas[a]
                .iter()
                .filter(|e| nablas[b].contains(e))
                .count();
            if overlap > 1 {
                return Err(format!(
                    "outward edges of faces {a} and {b} overlap in {overlap} edges"
                ));
            }
        }
    }
    // Every face boundary is a trivial, degenerate cyclic cut of the
    // face's size.
    for f in 0..nf {
        if nablas[f].len() != walks[f].len() {
            return Err(format!(
                "face {f} has {} outward edges for {} boundary vertices",
                nablas[f].len(),
                walks[f].len()
            ));
        }
        let class = is_cyclic_cut(g, &nablas[f]);
        if !(class.disconnects && class.cyclic && class.trivial && class.degenerate) {
            return Err(format!(
                "face {f} boundary classifies as {class:?}, expected trivial degenerate cyclic"
            ));
        }
    }
    Ok(())
}

/// Independent detector for the vertex-anchored pentagon triple: three
/// pentagons pairwise sharing an edge.
fn pentagon_triple_exists(g: &FullereneGraph) -> bool {
    let pents = g.pentagons();
    for (i, &p) in pents.iter().enumerate() {
        for (j, &q) in pents.iter().enumerate().skip(i + 1) {
            if g.shared_edges(p, q).is_empty() {
                continue;
            }
            for &r in pents.iter().skip(j + 1) {
                if !g.shared_edges(p, r).is_empty() && !g.shared_edges(q, r).is_empty() {
                    return true;
                }
            }
        }
    }
    false
}

fn analyze(g: &FullereneGraph, cfg: &RunConfig) -> Result<GraphRecord, HarnessError> {
    let n = g.n();
    let code = canonical_form(g).hex();
    let fail = |what: String| HarnessError::InvariantViolated {
        n,
        code: code.clone(),
        what,
    };

    structural_sweep(g).map_err(&fail)?;

    let ipr = is_ipr(g);
    let l = contains_l(g);
    let r = contains_r(g);
    if r.is_some() != pentagon_triple_exists(g) {
        return Err(fail(
            "vertex-anchored triple detectors disagree".into(),
        ));
    }
    if ipr && (l.is_some() || r.is_some()) {
        return Err(fail(
            "isolated-pentagon graph reports a pentagon cluster".into(),
        ));
    }

    let mut resonant_up_to = 0;
    let mut failing: Option<HexPattern> = None;
    'sizes: for size in 0..=cfg.k {
        for pattern in disjoint_hexagon_patterns(g, size) {
            if is_resonant_pattern(g, &pattern).is_none() {
                failing = Some(pattern);
                break 'sizes;
            }
        }
        resonant_up_to = size;
    }
    if let Some(p) = &failing {
        if p.is_empty() {
            return Err(fail("graph has no perfect matching".into()));
        }
        // The residual of a non-resonant pattern must certify the missing
        // matching: positive (hence, by parity, at least 2) deficiency and
        // 2-connected nontrivial factor-critical components.
        let (residual, _) = g.induced_without(&p.vertices(g));
        let dec = gallai_edmonds(&residual);
        if dec.deficiency() < 2 {
            return Err(fail(format!(
                "failing pattern residual has deficiency {}",
                dec.deficiency()
            )));
        }
        for comp in &dec.components {
            if comp.vertices.len() > 1 {
                let (sub, _) = residual.induced(&comp.vertices);
                if !sub.is_biconnected() {
                    return Err(fail(
                        "nontrivial factor-critical component is not 2-connected".into(),
                    ));
                }
            }
        }
    }

    Ok(GraphRecord {
        n,
        code,
        ipr,
        has_l: l.is_some(),
        has_r: r.is_some(),
        resonant_up_to,
        failing_pattern: failing.as_ref().map(|p| p.faces().to_vec()),
        failing_walks: failing.as_ref().map(|p| {
            p.faces()
                .iter()
                .map(|&f| g.face(f).walk().to_vec())
                .collect()
        }),
        cyclic_edge_connectivity: cyclic_edge_connectivity(g),
        nontrivial_5_cut: has_nontrivial_cyclic_5_cut(g),
    })
}

/// Runs the census over every even vertex count in the configured range.
/// Work is sharded per graph across the worker pool; aggregation follows
/// enumeration order, so reports are identical for any worker count.
pub fn run_census(cfg: &RunConfig) -> Result<CensusReport, HarnessError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;

    let mut tallies = Vec::new();
    let mut exceptional = Vec::new();
    let mut three_resonant = (cfg.k >= 3).then(Vec::new);
    let mut records = Vec::new();

    for n in (cfg.n_min..=cfg.n_max).filter(|n| n % 2 == 0) {
        let graphs = load_or_enumerate(cfg, n)?;
        if graphs.is_empty() && n != 22 {
            return Err(HarnessError::GenerationIncomplete { n });
        }
        let recs: Vec<GraphRecord> = pool.install(|| {
            graphs
                .par_iter()
                .map(|g| analyze(g, cfg))
                .collect::<Result<_, _>>()
        })?;

        let mut tally = Tally {
            n,
            isomers: recs.len(),
            one_resonant: 0,
            two_resonant: (cfg.k >= 2).then_some(0),
            three_resonant: (cfg.k >= 3).then_some(0),
            lr_free: 0,
            lr_free_non2resonant: (cfg.k >= 2).then_some(0),
            non2resonant_total: (cfg.k >= 2).then_some(0),
            ipr: 0,
            ipr_two_resonant: (cfg.k >= 2).then_some(0),
        };
        for rec in &recs {
            if rec.resonant_up_to >= 1 {
                tally.one_resonant += 1;
            }
            let two = rec.resonant_up_to >= 2;
            if let Some(c) = tally.two_resonant.as_mut() {
                *c += usize::from(two);
            }
            if let Some(c) = tally.non2resonant_total.as_mut() {
                *c += usize::from(!two);
            }
            if rec.resonant_up_to >= 3 {
                if let Some(c) = tally.three_resonant.as_mut() {
                    *c += 1;
                }
                if let Some(list) = three_resonant.as_mut() {
                    list.push(GraphRef {
                        n,
                        code: rec.code.clone(),
                    });
                }
            }
            let lr_free = !rec.has_l && !rec.has_r;
            if lr_free {
                tally.lr_free += 1;
                if cfg.k >= 2 && !two {
                    *tally.lr_free_non2resonant.as_mut().expect("k >= 2") += 1;
                    exceptional.push(ExceptionalGraph {
                        n,
                        code: rec.code.clone(),
                        failing_pattern: rec.failing_pattern.clone().unwrap_or_default(),
                        failing_walks: rec.failing_walks.clone().unwrap_or_default(),
                    });
                }
            }
            if rec.ipr {
                tally.ipr += 1;
                if let Some(c) = tally.ipr_two_resonant.as_mut() {
                    *c += usize::from(two);
                }
            }
        }
        tallies.push(tally);
        records.extend(recs);
    }

    Ok(CensusReport {
        config: cfg.clone(),
        tallies,
        exceptional,
        three_resonant,
        records,
    })
}
