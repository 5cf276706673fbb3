//! The `crystile` command.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use crystile_core::neighbors::{build_graph, lattice_neighbor_set, neighbor_graph, neighbor_set, pseudo_neighbor_set};
use crystile_core::raster::{default_depth, estimate_area, render_patch, render_tile, DEFAULT_RESOLUTION};
use crystile_core::topology::intersection_witnesses;
use crystile_core::{Budget, Error, TileParams};
use serde::Serialize;

use crate::dot::graph_to_dot;
use crate::golden::{Goldens, Source};
use crate::image::{file_name, save_png, save_ppm};
use crate::json::{NeighborsJson, WitnessJson};
use crate::sweep::{classify_cell, sweep, valid_pairs, write_csv};
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIFF: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OUT_OF_REGIME: i32 = 3;

/// Environment variable overriding the point budget (`depth · B^depth`).
pub const BUDGET_VAR: &str = "CRYSTILE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "crystile", version, about = "Neighbor graphs, disk-likeness and pictures of p2 crystiles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Pair {
    #[arg(short = 'A', allow_negative_numbers = true)]
    a: i64,
    #[arg(short = 'B', allow_negative_numbers = true)]
    b: i64,
}

impl Pair {
    fn params(&self) -> Result<TileParams, Error> {
        TileParams::new(self.a, self.b)
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("expected N, N..M or N..=M, got {s:?}");
    let Some((lo, hi)) = s.split_once("..") else {
        let n = s.trim().parse().map_err(|_| bad())?;
        return Ok(n..=n);
    };
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

#[derive(Debug, Args)]
struct Ranges {
    /// Range of A, inclusive.
    #[arg(short = 'A', allow_hyphen_values = true, value_parser = parse_range)]
    a: Option<RangeInclusive<i64>>,
    /// Range of B, inclusive.
    #[arg(short = 'B', allow_hyphen_values = true, value_parser = parse_range)]
    b: Option<RangeInclusive<i64>>,
}

impl Ranges {
    fn pairs(&self, default_b: RangeInclusive<i64>) -> Vec<(i64, i64)> {
        let b = self.b.clone().unwrap_or(default_b);
        let a = self.a.clone().unwrap_or(-*b.end()..=*b.end());
        valid_pairs(a, b)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Disk-likeness from the closed form and from the neighbor set.
    Classify(Pair),
    /// The neighbor set in canonical order.
    Neighbors {
        #[command(flatten)]
        pair: Pair,
        /// Neighbors of the lattice tile instead.
        #[arg(long)]
        lattice: bool,
    },
    /// The trimmed neighbor graph as Graphviz.
    Graph {
        #[command(flatten)]
        pair: Pair,
        /// Graph on the pseudo-neighbor set, untrimmed.
        #[arg(long)]
        pseudo: bool,
        /// Output file; standard output when absent.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Residue systems, edge tables, reference sets and agreement.
    Verify {
        #[command(flatten)]
        ranges: Ranges,
        /// Compare against entries as printed, ignoring corrections.
        #[arg(long)]
        published: bool,
        /// Reference data file; the bundled one when absent.
        #[arg(long)]
        goldens: Option<PathBuf>,
    },
    /// Two exact points of T ∩ c(T) with certificates.
    Witnesses(Pair),
    /// Rasterize the tile, or the tile with its neighbors.
    Render {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Draw γ(T) for every neighbor γ as well.
        #[arg(long)]
        patch: bool,
        /// Also write a PNG next to the PPM.
        #[arg(long)]
        png: bool,
    },
    /// Classification table over a range.
    Sweep {
        #[command(flatten)]
        ranges: Ranges,
        /// CSV instead of JSON lines.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Serialize)]
struct RenderJson {
    #[serde(rename = "A")]
    a: i64,
    #[serde(rename = "B")]
    b: i64,
    depth: usize,
    resolution: usize,
    labels: usize,
    area: f64,
    files: Vec<PathBuf>,
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotExpanding { .. }
            | Error::DependentVectors
            | Error::OutOfRange { .. }
            | Error::BudgetExceeded { .. } => EXIT_INVALID,
            Error::OutOfRegime { .. } => EXIT_OUT_OF_REGIME,
            _ => EXIT_DIFF,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(e) => e.into(),
            Err(e) => Failure {
                code: EXIT_DIFF,
                message: format!("{e:#}"),
            },
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn budget() -> Result<Budget, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse::<u128>().map(Budget::with_work).map_err(|_| Failure {
            code: EXIT_INVALID,
            message: format!("{BUDGET_VAR}={v:?} is not a non-negative integer"),
        }),
        Err(_) => Ok(Budget::default()),
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Classify(pair) => {
            let j = classify_cell(&pair.params()?);
            print_json(out, &j)?;
        }
        Command::Neighbors { pair, lattice } => {
            let p = pair.params()?;
            let j = if lattice {
                NeighborsJson::from_lattice(p.a(), p.b(), &lattice_neighbor_set(&p))
            } else {
                NeighborsJson::from_set(p.a(), p.b(), &neighbor_set(&p))
            };
            print_json(out, &j)?;
        }
        Command::Graph { pair, pseudo, dot } => {
            let p = pair.params()?;
            let graph = if pseudo {
                build_graph(&pseudo_neighbor_set(&p)?, &p)
            } else {
                neighbor_graph(&p)
            };
            let name = format!("G_A{}_B{}", p.a(), p.b());
            let text = graph_to_dot(&graph, &name);
            match dot {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Verify {
            ranges,
            published,
            goldens,
        } => {
            let goldens = match goldens {
                Some(path) => Goldens::load(&path)?,
                None => Goldens::bundled(),
            };
            let source = if published { Source::Published } else { Source::Corrected };
            let report = verify(&ranges.pairs(2..=16), &goldens, source)?;
            for c in &report.checks {
                writeln!(out, "{c}")?;
            }
            let failed = report.failures().count();
            writeln!(out, "{} checks, {failed} failed", report.checks.len())?;
            return Ok(if report.is_pass() { EXIT_OK } else { EXIT_DIFF });
        }
        Command::Witnesses(pair) => {
            let p = pair.params()?;
            let w = intersection_witnesses(&p)?;
            print_json(out, &WitnessJson::new(p.a(), p.b(), &w))?;
        }
        Command::Render {
            pair,
            depth,
            resolution,
            out: dir,
            patch,
            png,
        } => {
            let p = pair.params()?;
            let budget = budget()?;
            let depth = depth.unwrap_or_else(|| default_depth(&p));
            let (kind, raster) = if patch {
                ("patch", render_patch(&p, &neighbor_set(&p), depth, resolution, &budget)?)
            } else {
                ("tile", render_tile(&p, depth, resolution, &budget)?)
            };
            std::fs::create_dir_all(&dir)?;
            let mut files = vec![dir.join(file_name(kind, p.a(), p.b(), depth, "ppm"))];
            save_ppm(&raster, &files[0])?;
            if png {
                let path = dir.join(file_name(kind, p.a(), p.b(), depth, "png"));
                save_png(&raster, &path)?;
                files.push(path);
            }
            let j = RenderJson {
                a: p.a(),
                b: p.b(),
                depth,
                resolution,
                labels: raster.distinct_labels().len(),
                area: estimate_area(&raster),
                files,
            };
            print_json(out, &j)?;
        }
        Command::Sweep { ranges, csv } => {
            let rows = sweep(&ranges.pairs(2..=40));
            if csv {
                write_csv(&rows, &mut *out).map_err(anyhow::Error::from)?;
            } else {
                for r in &rows {
                    serde_json::to_writer(&mut *out, r)?;
                    writeln!(out)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
