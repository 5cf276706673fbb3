//! Explicit supersets of the neighbor set for `A >= -1`, `2A < B + 3`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::{P2Element, TileParams};

fn check_range(params: &TileParams) -> Result<(), Error> {
    if params.in_pseudo_range() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            a: params.a(),
            b: params.b(),
        })
    }
}

/// Lattice-tile neighbors as translations, in closed form.
pub fn lattice_neighbors_closed_form(params: &TileParams) -> Result<BTreeSet<P2Element>, Error> {
    check_range(params)?;
    let a = params.a();
    let t = P2Element::translation;
    let list: Vec<P2Element> = match a {
        a if a > 0 => [t(a, 1), t(a - 1, 1), t(1, 0), t(-1, 0), t(-a, -1), t(1 - a, -1)].into(),
        0 => [
            t(1, 0),
            t(-1, 0),
            t(1, 1),
            t(-1, 1),
            t(1, -1),
            t(-1, -1),
            t(0, 1),
            t(0, -1),
        ]
        .into(),
        _ => [t(-1, 1), t(0, 1), t(1, 0), t(-1, 0), t(1, -1), t(0, -1)].into(),
    };
    Ok(list.into_iter().collect())
}

/// `S^ℓ ∪ {c} ∪ S^ℓ c`.
pub fn super_pseudo_set(params: &TileParams) -> BTreeSet<P2Element> {
    let lattice = lattice_neighbors_closed_form(params).unwrap_or_default();
    let mut out: BTreeSet<P2Element> = lattice.iter().copied().collect();
    out.insert(P2Element::C);
    out.extend(lattice.iter().map(|s| s.compose(&P2Element::C)));
    out
}

/// The pseudo-neighbor set `S″`.
///
/// For `A > 0` this is `S^ℓ ∪ {c} ∪ S^ℓ c` without `a^A b`, `a^{-A} b^{-1}`
/// and `a^{-A} b^{-1} c` (ten elements).
pub fn pseudo_neighbor_set(params: &TileParams) -> Result<BTreeSet<P2Element>, Error> {
    check_range(params)?;
    let a = params.a();
    let t = P2Element::translation;
    let r = P2Element::rotation;
    let list: Vec<P2Element> = match a {
        a if a > 0 => [
            t(a - 1, 1),
            t(1, 0),
            t(-1, 0),
            t(1 - a, -1),
            P2Element::C,
            r(a, 1),
            r(a - 1, 1),
            r(1, 0),
            r(-1, 0),
            r(1 - a, -1),
        ]
        .into(),
        0 => [t(1, 0), t(-1, 0), P2Element::C, r(1, 0), r(-1, 0), r(-1, 1), r(0, 1), r(1, 1)].into(),
        _ => [t(1, 0), t(-1, 0), P2Element::C, r(1, 0), r(-1, 0), r(-1, 1), r(0, 1)].into(),
    };
    Ok(list.into_iter().collect())
}
