//! Neighbor graphs, neighbor sets of crystiles and of their lattice tiles.
//!
//! A state `γ` starts an infinite walk in `G(Ω)` for some finite `Ω ⊇ S`
//! exactly when `γ ∈ S`, and `S` is closed under edges. Trimming any finite
//! superset of `S` therefore returns `S`.

mod boundary;
mod graph;
mod lattice;
mod pseudo;
mod tables;

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::exact::bounding_box;
use crate::group::{P2Element, TileParams};

pub use boundary::{boundary_points, walk_point};
pub use graph::{build_graph, edge_targets, trim, Edge, NeighborGraph};
pub use lattice::{lattice_candidate_bound, lattice_neighbor_set, LatticeNeighborSet};
pub use pseudo::{lattice_neighbors_closed_form, pseudo_neighbor_set, super_pseudo_set};
pub use tables::{
    corrected_rows, printed_rows, printed_table_diff, verify_edge_tables, verify_with_rows,
    EdgeTableReport, ElemForm, Label, Labels, Lin, TableDiff, TableRow,
};

/// Bounds `(P, Q)` with `|p| <= P`, `|q| <= Q` for every `γ` whose tile can
/// meet `T`: twice the half-widths of the certified enclosure.
pub fn candidate_bound(params: &TileParams) -> (i64, i64) {
    let bx = bounding_box(params).expect("enclosure certified within the iteration cap");
    let h = bx.half_widths();
    let two = crate::exact::int(2);
    let floor = |r: crate::Rational| (r * &two).floor().to_integer().to_i64().expect("small bound");
    (floor(h.x), floor(h.y))
}

/// All `a^p b^q c^r ≠ id` with `|p| <= P`, `|q| <= Q`.
pub fn candidate_set(params: &TileParams) -> BTreeSet<P2Element> {
    let (pb, qb) = candidate_bound(params);
    let mut out = BTreeSet::new();
    for r in 0..2u8 {
        for p in -pb..=pb {
            for q in -qb..=qb {
                let g = P2Element::new(p, q, r);
                if !g.is_identity() {
                    out.insert(g);
                }
            }
        }
    }
    out
}

/// Dense index over the candidate box.
struct CandidateIndex {
    pb: i64,
    qb: i64,
    width: i64,
    height: i64,
}

impl CandidateIndex {
    fn new(pb: i64, qb: i64) -> Self {
        CandidateIndex {
            pb,
            qb,
            width: 2 * pb + 1,
            height: 2 * qb + 1,
        }
    }

    fn len(&self) -> usize {
        (2 * self.width * self.height) as usize
    }

    fn index(&self, p: i64, q: i64, r: u8) -> Option<usize> {
        if p.abs() > self.pb || q.abs() > self.qb {
            return None;
        }
        let plane = self.width * self.height;
        Some((r as i64 * plane + (p + self.pb) * self.height + (q + self.qb)) as usize)
    }

    fn element(&self, i: usize) -> P2Element {
        let i = i as i64;
        let plane = self.width * self.height;
        let r = i / plane;
        let rest = i % plane;
        P2Element::new(rest / self.height - self.pb, rest % self.height - self.qb, r as u8)
    }

    /// A `p`-window `[lo, hi]` clipped to the box.
    fn clip(&self, lo: i64, hi: i64) -> Option<(i64, i64)> {
        let (lo, hi) = (lo.max(-self.pb), hi.min(self.pb));
        (lo <= hi).then_some((lo, hi))
    }
}

/// Finds an alive state among the distinct successors of `gamma`.
///
/// With `h = g γ g⁻¹ = (u, v, ρ)` the targets `δ⁻¹ h δ′` are:
/// for `ρ = 0`: `(u + k, v, 0)`, `(u - i, v, 1)`, `(-u - j, -v, 1)`, `(-u, -v, 0)`;
/// for `ρ = 1`: `(u - k, v, 1)`, `(u - i, v, 0)`, `(j - u, -v, 0)`, `(-u, -v, 1)`;
/// with `|k| <= B - 2` (resp. `0 <= k <= 2B - 4`) and `0 <= i, j <= B - 2`.
fn alive_successor(
    gamma: P2Element,
    params: &TileParams,
    idx: &CandidateIndex,
    alive: &[bool],
) -> Option<usize> {
    let h = gamma.conjugate_by_g(params);
    let (u, v) = (h.p, h.q);
    let n = params.b() - 2;
    let flip = 1 - h.r();
    let scan = |lo: i64, hi: i64, q: i64, r: u8| -> Option<usize> {
        let (lo, hi) = idx.clip(lo, hi)?;
        (lo..=hi)
            .filter_map(|p| idx.index(p, q, r))
            .find(|&i| alive[i])
    };
    let same = if h.r() == 0 { (u - n, u + n) } else { (u - 2 * n, u) };
    scan(same.0, same.1, v, h.r())
        .or_else(|| scan(u - n, u, v, flip))
        .or_else(|| {
            if h.r() == 0 {
                scan(-u - n, -u, -v, flip)
            } else {
                scan(-u, -u + n, -v, flip)
            }
        })
        .or_else(|| idx.index(-u, -v, h.r()).filter(|&i| alive[i]))
}

/// The neighbor set `S`, by trimming the candidate superset.
pub fn neighbor_set(params: &TileParams) -> BTreeSet<P2Element> {
    let (pb, qb) = candidate_bound(params);
    let idx = CandidateIndex::new(pb, qb);
    let mut alive = vec![true; idx.len()];
    if let Some(i) = idx.index(0, 0, 0) {
        alive[i] = false;
    }
    // witness[i]: an alive successor found earlier; rechecked lazily
    let mut witness: Vec<Option<u32>> = vec![None; idx.len()];
    loop {
        let mut changed = false;
        for i in 0..idx.len() {
            if !alive[i] {
                continue;
            }
            if let Some(w) = witness[i] {
                if alive[w as usize] {
                    continue;
                }
            }
            match alive_successor(idx.element(i), params, &idx, &alive) {
                Some(w) => witness[i] = Some(w as u32),
                None => {
                    alive[i] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let s: BTreeSet<P2Element> = (0..idx.len())
        .filter(|&i| alive[i])
        .map(|i| idx.element(i))
        .collect();
    assert!(
        build_graph(&s, params).is_trimmed(),
        "neighbor set is not edge-closed"
    );
    s
}

/// `G(S)`.
pub fn neighbor_graph(params: &TileParams) -> NeighborGraph {
    build_graph(&neighbor_set(params), params)
}
