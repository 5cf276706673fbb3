//! Reference neighbor sets, lattice neighbor sets and witness points.

use std::collections::BTreeSet;
use std::path::Path;

use anyhow::Context;
use crystile_core::{LatticeNeighborSet, P2Element, QVec2};
use serde::Deserialize;

use crate::json::parse_point;

pub const BUNDLED: &str = include_str!("../data/goldens.toml");

/// Which entry to compare against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// As printed.
    Published,
    /// Corrected entry where one exists, otherwise as printed.
    Corrected,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NeighborEntry {
    pub a: i64,
    pub b: i64,
    pub published: Vec<String>,
    pub corrected: Option<Vec<String>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct LatticeEntry {
    pub a: i64,
    pub b: i64,
    pub published: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WitnessEntry {
    pub a: i64,
    pub b: i64,
    pub published: Vec<[String; 2]>,
    pub corrected: Option<Vec<[String; 2]>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Goldens {
    pub version: u32,
    #[serde(default)]
    pub neighbors: Vec<NeighborEntry>,
    #[serde(default)]
    pub lattice: Vec<LatticeEntry>,
    #[serde(default)]
    pub witnesses: Vec<WitnessEntry>,
}

fn pick<'a, T>(published: &'a T, corrected: &'a Option<T>, source: Source) -> &'a T {
    match (source, corrected) {
        (Source::Corrected, Some(c)) => c,
        _ => published,
    }
}

impl NeighborEntry {
    pub fn set(&self, source: Source) -> anyhow::Result<BTreeSet<P2Element>> {
        let items = pick(&self.published, &self.corrected, source);
        let set: BTreeSet<P2Element> = items
            .iter()
            .map(|s| s.parse().with_context(|| format!("bad element {s:?}")))
            .collect::<anyhow::Result<_>>()?;
        anyhow::ensure!(set.len() == items.len(), "duplicate element for ({}, {})", self.a, self.b);
        Ok(set)
    }
}

impl LatticeEntry {
    pub fn set(&self) -> LatticeNeighborSet {
        LatticeNeighborSet::from_vectors(self.published.iter().map(|v| (v[0], v[1])))
    }
}

impl WitnessEntry {
    pub fn points(&self, source: Source) -> anyhow::Result<BTreeSet<QVec2>> {
        pick(&self.published, &self.corrected, source)
            .iter()
            .map(|p| parse_point(p).with_context(|| format!("bad point {p:?}")))
            .collect()
    }
}

impl Goldens {
    pub fn bundled() -> Goldens {
        Goldens::parse(BUNDLED).expect("bundled golden file parses")
    }

    pub fn parse(text: &str) -> anyhow::Result<Goldens> {
        let g: Goldens = toml::from_str(text)?;
        anyhow::ensure!(g.version == 1, "unsupported golden file version {}", g.version);
        Ok(g)
    }

    pub fn load(path: &Path) -> anyhow::Result<Goldens> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Goldens::parse(&text)
    }

    pub fn neighbor_entry(&self, a: i64, b: i64) -> Option<&NeighborEntry> {
        self.neighbors.iter().find(|e| (e.a, e.b) == (a, b))
    }

    pub fn witness_entry(&self, a: i64, b: i64) -> Option<&WitnessEntry> {
        self.witnesses.iter().find(|e| (e.a, e.b) == (a, b))
    }
}
