//! Regression harness over a parameter range.

use std::collections::BTreeSet;
use std::fmt;

use crystile_core::neighbors::{lattice_neighbor_set, neighbor_set, verify_edge_tables};
use crystile_core::topology::intersection_witnesses;
use crystile_core::{verify_complete_residue_system, TileParams};
use rayon::prelude::*;

use crate::golden::{Goldens, Source};
use crate::sweep::classify_cell;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn is_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn set_diff<T: Ord + fmt::Display>(got: &BTreeSet<T>, want: &BTreeSet<T>) -> String {
    let show = |s: Vec<&T>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let missing = show(want.difference(got).collect());
    let extra = show(got.difference(want).collect());
    format!("missing [{missing}] extra [{extra}]")
}

/// Runs every check on the valid pairs in `pairs`; golden entries outside
/// the pairs are skipped.
pub fn verify(pairs: &[(i64, i64)], goldens: &Goldens, source: Source) -> anyhow::Result<VerifyReport> {
    let in_range = |a: i64, b: i64| pairs.contains(&(a, b));
    let failures: Vec<Check> = pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let p = TileParams::new(a, b).expect("valid pair");
            let mut out = Vec::new();
            if !verify_complete_residue_system(&p.digits(), &p) {
                out.push(check(format!("residue system ({a}, {b})"), false, ""));
            }
            if p.in_pseudo_range() {
                match verify_edge_tables(&p) {
                    Ok(r) if r.is_pass() => {}
                    Ok(r) => out.push(check(
                        format!("edge tables ({a}, {b})"),
                        false,
                        format!("{} differing rows", r.diffs().len()),
                    )),
                    Err(e) => out.push(check(format!("edge tables ({a}, {b})"), false, e.to_string())),
                }
            }
            let c = classify_cell(&p);
            if !c.agree {
                out.push(check(format!("agreement ({a}, {b})"), false, format!("{c:?}")));
            }
            out
        })
        .collect();
    let mut checks = vec![check(
        format!("residue systems, edge tables, agreement over {} pairs", pairs.len()),
        failures.is_empty(),
        "",
    )];
    checks.extend(failures);
    for e in &goldens.neighbors {
        if !in_range(e.a, e.b) {
            continue;
        }
        let want = e.set(source)?;
        let got = neighbor_set(&TileParams::new(e.a, e.b)?);
        let detail = if got == want { String::new() } else { set_diff(&got, &want) };
        checks.push(check(format!("neighbor set ({}, {})", e.a, e.b), got == want, detail));
    }
    for e in &goldens.lattice {
        if !in_range(e.a, e.b) {
            continue;
        }
        let want = e.set();
        let got = lattice_neighbor_set(&TileParams::new(e.a, e.b)?);
        let pass = got == want;
        let detail = if pass {
            String::new()
        } else {
            let fmt_set = |s: &crystile_core::LatticeNeighborSet| -> BTreeSet<String> {
                s.iter().map(|(x, y)| format!("({x}, {y})")).collect()
            };
            set_diff(&fmt_set(&got), &fmt_set(&want))
        };
        checks.push(check(format!("lattice neighbor set ({}, {})", e.a, e.b), pass, detail));
    }
    for e in &goldens.witnesses {
        if !in_range(e.a, e.b) {
            continue;
        }
        let p = TileParams::new(e.a, e.b)?;
        let want = e.points(source)?;
        let got: BTreeSet<_> = match intersection_witnesses(&p) {
            Ok(w) => w.points().into_iter().cloned().collect(),
            Err(err) => {
                checks.push(check(format!("witnesses ({}, {})", e.a, e.b), false, err.to_string()));
                continue;
            }
        };
        let pass = got == want;
        let detail = if pass {
            String::new()
        } else {
            let fmt_set = |s: &BTreeSet<crystile_core::QVec2>| -> BTreeSet<String> {
                s.iter()
                    .map(|x| {
                        let [u, v] = crate::json::point_strings(x);
                        format!("({u}, {v})")
                    })
                    .collect()
            };
            set_diff(&fmt_set(&got), &fmt_set(&want))
        };
        checks.push(check(format!("witnesses ({}, {})", e.a, e.b), pass, detail));
    }
    Ok(VerifyReport { checks })
}
