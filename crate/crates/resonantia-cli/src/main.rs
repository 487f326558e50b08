//! Command-line frontend: isomer generation, ad-hoc matching queries,
//! resonance reports, substructure classification, cut facts, and the
//! full census run.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use resonantia::{
    canonical_form, construct_nanotube, contains_l, contains_r, cyclic_edge_connectivity,
    enumerate_isomers, find_nontrivial_cyclic_5_cut_brute, has_nontrivial_cyclic_5_cut, is_ipr,
    is_k_resonant, run_census, try_perfect_matching, FullereneGraph, PatternWitness, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "resonantia",
    version,
    about = "Fullerene graphs: enumeration, Kekulé structures, resonant patterns, pentagon substructures, cyclic cuts"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate every isomer with the given vertex count into a
    /// planar-code file.
    Generate {
        /// Vertex count (even, 20..=254; 22 yields an empty file).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Construct the tube graph: two six-pentagon caps joined by k rings
    /// of five hexagons.
    Nanotube {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a perfect matching in each input graph, optionally
    /// after deleting vertices.
    #[command(name = "match")]
    Match {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated vertex ids to delete before matching.
        #[arg(long, value_delimiter = ',')]
        delete: Vec<usize>,
    },
    /// Decide k-resonance of each input graph.
    Resonance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Report pentagon substructures and isolated-pentagon status.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Cyclic edge-cut facts.
    Cuts {
        #[arg(long = "in")]
        input: PathBuf,
        /// Compute the cyclic edge connectivity of each graph.
        #[arg(long)]
        check_clambda: bool,
        /// Detect a cyclic 5-cut that is not a face boundary.
        #[arg(long)]
        find_nontrivial5: bool,
    },
    /// Run the census over a vertex range and emit a line-delimited JSON
    /// report. Honors RESONANTIA_CACHE for memoized isomer lists.
    Verify {
        #[arg(long, default_value_t = 20)]
        n_min: usize,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Worker threads; 0 picks the runtime default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Golden directory to diff the summary lists against.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Rewrite the golden files instead of diffing (requires --golden).
        #[arg(long, requires = "golden")]
        freeze_golden: bool,
    },
}

fn read_inputs(path: &Path) -> Result<Vec<FullereneGraph>> {
    let graphs = resonantia::io::read_graphs_from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    if graphs.is_empty() {
        bail!("{} contains no graphs", path.display());
    }
    Ok(graphs)
}

fn write_graphs(path: &Path, graphs: &[FullereneGraph]) -> Result<()> {
    let mut buf = Vec::new();
    resonantia::io::write_planar_code(&mut buf, graphs.iter())?;
    fs::write(path, buf).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[derive(Serialize)]
struct MatchLine {
    graph: usize,
    n: usize,
    deleted: Vec<usize>,
    /// Edges of a perfect matching of the remaining graph, in original
    /// vertex ids; null when none exists.
    perfect_matching: Option<Vec<(usize, usize)>>,
}

#[derive(Serialize)]
struct ResonanceEntry {
    graph: usize,
    code: String,
    n: usize,
    k: usize,
    resonant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_pattern: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_edges: Option<Vec<(usize, usize)>>,
}

#[derive(Serialize)]
struct ClassifyWitnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<PatternWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<PatternWitness>,
}

#[derive(Serialize)]
struct ClassifyEntry {
    graph: usize,
    n: usize,
    ipr: bool,
    #[serde(rename = "has_L")]
    has_l: bool,
    #[serde(rename = "has_R")]
    has_r: bool,
    witnesses: ClassifyWitnesses,
}

#[derive(Serialize)]
struct CutsEntry {
    graph: usize,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    clambda: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nontrivial_5_cut: Option<bool>,
    /// Witness edges for small graphs, found by exhaustive search.
    #[serde(skip_serializing_if = "Option::is_none")]
    nontrivial_5_cut_edges: Option<Vec<(usize, usize)>>,
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Generate { n, out } => {
            let graphs = enumerate_isomers(n)?;
            write_graphs(&out, &graphs)?;
            eprintln!("{} isomer(s) with {n} vertices -> {}", graphs.len(), out.display());
        }
        Cmd::Nanotube { k, out } => {
            let g = construct_nanotube(k)?;
            write_graphs(&out, std::slice::from_ref(&g))?;
            eprintln!("tube k={k} ({} vertices) -> {}", g.n(), out.display());
        }
        Cmd::Match { input, delete } => {
            for (i, g) in read_inputs(&input)?.iter().enumerate() {
                let mut doomed = delete.clone();
                doomed.sort_unstable();
                doomed.dedup();
                if let Some(&v) = doomed.iter().find(|&&v| v >= g.n()) {
                    bail!("graph {i}: vertex {v} out of range (n={})", g.n());
                }
                let (residual, map) = g.induced_without(&doomed);
                let pm = try_perfect_matching(&residual)
                    .map(|m| m.relabeled(&map).edges().to_vec());
                let line = MatchLine {
                    graph: i,
                    n: g.n(),
                    deleted: doomed,
                    perfect_matching: pm,
                };
                println!("{}", serde_json::to_string(&line)?);
            }
        }
        Cmd::Resonance { input, k, report } => {
            let mut entries = Vec::new();
            for (i, g) in read_inputs(&input)?.iter().enumerate() {
                let verdict = is_k_resonant(g, k);
                entries.push(ResonanceEntry {
                    graph: i,
                    code: canonical_form(g).hex(),
                    n: g.n(),
                    k,
                    resonant: verdict.resonant,
                    failing_pattern: verdict.counterexample.as_ref().map(|p| {
                        p.faces()
                            .iter()
                            .map(|&f| g.face(f).walk().to_vec())
                            .collect()
                    }),
                    witness_edges: verdict.witness.map(|m| m.edges().to_vec()),
                });
            }
            let text = serde_json::to_string_pretty(&entries)?;
            match report {
                Some(path) => fs::write(&path, text + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
        }
        Cmd::Classify { input } => {
            for (i, g) in read_inputs(&input)?.iter().enumerate() {
                let (l, r) = (contains_l(g), contains_r(g));
                let entry = ClassifyEntry {
                    graph: i,
                    n: g.n(),
                    ipr: is_ipr(g),
                    has_l: l.is_some(),
                    has_r: r.is_some(),
                    witnesses: ClassifyWitnesses { l, r },
                };
                println!("{}", serde_json::to_string(&entry)?);
            }
        }
        Cmd::Cuts {
            input,
            check_clambda,
            find_nontrivial5,
        } => {
            for (i, g) in read_inputs(&input)?.iter().enumerate() {
                let nontrivial = find_nontrivial5.then(|| has_nontrivial_cyclic_5_cut(g));
                // Exhaustive witness search stays tractable only for the
                // smallest graphs.
                let edges = match nontrivial {
                    Some(true) if g.n() <= 30 => find_nontrivial_cyclic_5_cut_brute(g),
                    _ => None,
                };
                let entry = CutsEntry {
                    graph: i,
                    n: g.n(),
                    clambda: check_clambda.then(|| cyclic_edge_connectivity(g)),
                    nontrivial_5_cut: nontrivial,
                    nontrivial_5_cut_edges: edges,
                };
                println!("{}", serde_json::to_string(&entry)?);
            }
        }
        Cmd::Verify {
            n_min,
            n_max,
            k,
            jobs,
            out,
            golden,
            freeze_golden,
        } => {
            let cfg = RunConfig {
                n_min,
                n_max,
                k,
                jobs,
                cache_dir: std::env::var_os("RESONANTIA_CACHE").map(PathBuf::from),
            };
            let report = run_census(&cfg)?;
            for t in &report.tallies {
                eprintln!("{}", serde_json::to_string(t)?);
            }
            eprintln!(
                "exceptional: {} | isomers: {}",
                report.exceptional.len(),
                report.tallies.iter().map(|t| t.isomers).sum::<usize>()
            );
            match out {
                Some(path) => report
                    .write_jsonl(&path)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", report.to_jsonl()),
            }
            if let Some(dir) = golden {
                if freeze_golden {
                    report.write_golden(&dir)?;
                    eprintln!("golden files frozen in {}", dir.display());
                } else {
                    report.diff_golden(&dir)?;
                    eprintln!("golden files match");
                }
            }
        }
    }
    Ok(())
}
