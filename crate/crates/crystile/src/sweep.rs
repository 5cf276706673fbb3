//! Classification over a range of parameters.

use std::io::Write;
use std::ops::RangeInclusive;

use crystile_core::neighbors::neighbor_set;
use crystile_core::topology::{classify, intersection_witnesses, verdict_from_neighbors};
use crystile_core::TileParams;
use rayon::prelude::*;
use serde::Serialize;

use crate::json::{ClassifyJson, VerdictJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub neighbor_count: usize,
    pub neighbors: Vec<String>,
    pub verdict: String,
    pub reason: String,
    pub agree: bool,
}

/// Valid `(A, B)` in the ranges, sorted by `(A, B)`.
pub fn valid_pairs(a_range: RangeInclusive<i64>, b_range: RangeInclusive<i64>) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = a_range
        .flat_map(|a| b_range.clone().map(move |b| (a, b)))
        .filter(|&(a, b)| TileParams::new(a, b).is_ok())
        .collect();
    out.sort_unstable();
    out
}

/// Classification of one cell. Below the large regime both decision paths
/// must agree; in it the closed form must say not disk-like and the
/// intersection witnesses must replay.
pub fn classify_cell(params: &TileParams) -> ClassifyJson {
    let (a, b) = (params.a(), params.b());
    let s = neighbor_set(params);
    let c = classify(params);
    let independent = verdict_from_neighbors(params, &s).ok();
    let agree = if params.in_small_regime() {
        independent.is_some_and(|i| i.verdict == c.verdict)
    } else {
        !c.is_disk_like() && intersection_witnesses(params).is_ok_and(|w| w.replay(params))
    };
    ClassifyJson {
        a,
        b,
        verdict: c.verdict.to_string(),
        reason: c.reason.to_string(),
        neighbor_count: s.len(),
        independent: independent.as_ref().map(VerdictJson::from),
        agree,
    }
}

pub fn sweep_row(params: &TileParams) -> SweepRow {
    let j = classify_cell(params);
    let s = neighbor_set(params);
    SweepRow {
        a: j.a,
        b: j.b,
        neighbor_count: j.neighbor_count,
        neighbors: s.iter().map(|g| g.to_string()).collect(),
        verdict: j.verdict,
        reason: j.reason,
        agree: j.agree,
    }
}

pub fn sweep(pairs: &[(i64, i64)]) -> Vec<SweepRow> {
    pairs
        .par_iter()
        .map(|&(a, b)| sweep_row(&TileParams::new(a, b).expect("valid pair")))
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["A", "B", "count", "verdict", "reason", "agree"])?;
    for r in rows {
        w.write_record([
            r.a.to_string(),
            r.b.to_string(),
            r.neighbor_count.to_string(),
            r.verdict.clone(),
            r.reason.clone(),
            r.agree.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
