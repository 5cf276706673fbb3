//! Points of `B_γ = T ∩ γ(T)` from walks in `G(S)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exact::{ifs_maps, seed_point, QVec2, RationalAffineMap};
use crate::group::{P2Element, TileParams};

use super::graph::build_graph;
use super::neighbor_set;

fn digit_map(params: &TileParams, maps: &[RationalAffineMap], d: &P2Element) -> Result<RationalAffineMap, Error> {
    let i = params.digits().position(d).ok_or(Error::NotANeighbor(*d))?;
    Ok(maps[i].clone())
}

/// `f_{prefix} ∘ Fix(f_{period})`: the point with eventually periodic address
/// `prefix (period)^∞`.
pub fn walk_point(params: &TileParams, prefix: &[P2Element], period: &[P2Element]) -> Result<QVec2, Error> {
    let maps = ifs_maps(params);
    let compose_all = |digits: &[P2Element]| -> Result<RationalAffineMap, Error> {
        let mut acc = RationalAffineMap::identity();
        for d in digits {
            acc = acc.compose(&digit_map(params, &maps, d)?);
        }
        Ok(acc)
    };
    let base = if period.is_empty() {
        seed_point(params)
    } else {
        compose_all(period)?.fixed_point()?
    };
    Ok(compose_all(prefix)?.apply(&base))
}

/// Truncated limit points `g⁻¹δ₁ ⋯ g⁻¹δ_depth(seed)` over all length-`depth`
/// walks from `gamma` in `G(S)`, one per distinct left-label sequence.
pub fn boundary_points(gamma: &P2Element, params: &TileParams, depth: usize) -> Result<Vec<QVec2>, Error> {
    let s = neighbor_set(params);
    if !s.contains(gamma) {
        return Err(Error::NotANeighbor(*gamma));
    }
    let graph = build_graph(&s, params);
    let maps = ifs_maps(params);
    // (state, label sequence) frontier; sequences are kept as prefix maps
    let mut frontier: BTreeSet<(P2Element, Vec<usize>)> = BTreeSet::new();
    frontier.insert((*gamma, Vec::new()));
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for (state, word) in &frontier {
            for e in graph.out_edges(state) {
                let i = params.digits().position(&e.delta).expect("edge labels are digits");
                let mut w = word.clone();
                w.push(i);
                next.insert((e.dst, w));
            }
        }
        frontier = next;
    }
    let words: BTreeSet<Vec<usize>> = frontier.into_iter().map(|(_, w)| w).collect();
    let seed = seed_point(params);
    Ok(words
        .into_iter()
        .map(|w| {
            w.iter()
                .rev()
                .fold(seed.clone(), |x, &i| maps[i].apply(&x))
        })
        .collect())
}
