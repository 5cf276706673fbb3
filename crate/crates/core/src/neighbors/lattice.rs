//! Neighbors of the lattice tile `M T^ℓ = ⋃_{d ∈ N} (T^ℓ + d)`,
//! `N = {0, e₁, …, (B-1) e₁}`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{P2Element, TileParams};

/// Nonzero integer vectors `s` with `T^ℓ ∩ (T^ℓ + s) ≠ ∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeNeighborSet {
    vectors: BTreeSet<(i64, i64)>,
}

impl LatticeNeighborSet {
    pub fn from_vectors<I: IntoIterator<Item = (i64, i64)>>(vectors: I) -> Self {
        LatticeNeighborSet {
            vectors: vectors.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &(i64, i64)) -> bool {
        self.vectors.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(i64, i64)> {
        self.vectors.iter()
    }

    pub fn vectors(&self) -> &BTreeSet<(i64, i64)> {
        &self.vectors
    }

    pub fn is_symmetric(&self) -> bool {
        self.vectors.iter().all(|(x, y)| self.vectors.contains(&(-x, -y)))
    }

    pub fn as_translations(&self) -> BTreeSet<P2Element> {
        self.vectors
            .iter()
            .map(|&(p, q)| P2Element::translation(p, q))
            .collect()
    }

    /// Image under `(p, q) ↦ (-p, q)`.
    pub fn reflected(&self) -> LatticeNeighborSet {
        LatticeNeighborSet::from_vectors(self.vectors.iter().map(|&(p, q)| (-p, q)))
    }
}

/// `T^ℓ` is a translate of `T ∪ (-T)` and so lies in a translate of the
/// symmetric crystile enclosure; neighbors satisfy the doubled bound.
pub fn lattice_candidate_bound(params: &TileParams) -> (i64, i64) {
    super::candidate_bound(params)
}

/// Trimmed graph on the candidate box with edges `s → M s + (d′ - d) e₁`.
pub fn lattice_neighbor_set(params: &TileParams) -> LatticeNeighborSet {
    let (pb, qb) = lattice_candidate_bound(params);
    let (a, b) = (params.a(), params.b());
    let height = 2 * qb + 1;
    let index = |x: i64, y: i64| -> Option<usize> {
        (x.abs() <= pb && y.abs() <= qb).then(|| ((x + pb) * height + (y + qb)) as usize)
    };
    let count = ((2 * pb + 1) * height) as usize;
    let mut alive = vec![true; count];
    alive[index(0, 0).expect("origin in box")] = false;
    let states: Vec<(i64, i64)> = (-pb..=pb)
        .flat_map(|x| (-qb..=qb).map(move |y| (x, y)))
        .collect();
    loop {
        let mut changed = false;
        for &(x, y) in &states {
            let i = index(x, y).expect("in box");
            if !alive[i] {
                continue;
            }
            // M s = (-B y, x - A y)
            let (mx, my) = (-b * y, x - a * y);
            let found = my.abs() <= qb
                && (mx - (b - 1)..=mx + (b - 1))
                    .filter_map(|tx| index(tx, my))
                    .any(|j| alive[j]);
            if !found {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    LatticeNeighborSet::from_vectors(
        states
            .into_iter()
            .filter(|&(x, y)| alive[index(x, y).expect("in box")]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(a: i64, b: i64) -> LatticeNeighborSet {
        lattice_neighbor_set(&TileParams::new(a, b).unwrap())
    }

    #[test]
    fn six_for_a_one() {
        let expected =
            LatticeNeighborSet::from_vectors([(1, 1), (0, 1), (1, 0), (-1, 0), (-1, -1), (0, -1)]);
        assert_eq!(lattice(1, 3), expected);
    }

    #[test]
    fn eight_for_a_zero() {
        for b in 2..=10 {
            let s = lattice(0, b);
            assert_eq!(s.len(), 8);
            for v in [(0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (1, -1), (-1, 1), (-1, -1)] {
                assert!(s.contains(&v));
            }
        }
    }

    #[test]
    fn negative_a_is_reflection() {
        let s = lattice(-2, 5);
        assert_eq!(
            s,
            LatticeNeighborSet::from_vectors([(-2, 1), (-1, 1), (1, 0), (-1, 0), (2, -1), (1, -1)])
        );
        for b in 2..=16 {
            for a in 1..=b {
                assert_eq!(lattice(-a, b), lattice(a, b).reflected(), "({a}, {b})");
            }
        }
    }

    #[test]
    fn symmetric_without_origin() {
        for b in 2..=12 {
            for a in -b..=b {
                let s = lattice(a, b);
                assert!(s.is_symmetric());
                assert!(!s.contains(&(0, 0)));
                assert!(s.len() >= 6);
            }
        }
    }
}
