//! Labeled graphs `G(Ω)` over p2 elements and their trimming.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::group::{P2Element, TileParams};

/// `src --δ|δ′--> dst` with `δ⁻¹ (g src g⁻¹) δ′ = dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: P2Element,
    pub delta: P2Element,
    pub deltap: P2Element,
    pub dst: P2Element,
}

impl Edge {
    /// Whether the defining relation holds.
    pub fn is_valid(&self, params: &TileParams) -> bool {
        self.delta
            .inverse()
            .compose(&self.src.conjugate_by_g(params))
            .compose(&self.deltap)
            == self.dst
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} --{}|{}--> {}", self.src, self.delta, self.deltap, self.dst)
    }
}

/// All `B²` triples `(δ, δ′, δ⁻¹ (g γ g⁻¹) δ′)` in digit order.
pub fn edge_targets(gamma: &P2Element, params: &TileParams) -> Vec<(P2Element, P2Element, P2Element)> {
    let h = gamma.conjugate_by_g(params);
    let digits = params.digits();
    let mut out = Vec::with_capacity(digits.len() * digits.len());
    for d in &digits {
        let left = d.inverse().compose(&h);
        for dp in &digits {
            out.push((*d, *dp, left.compose(dp)));
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NeighborGraph {
    pub states: BTreeSet<P2Element>,
    pub edges: BTreeSet<Edge>,
}

impl NeighborGraph {
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn out_edges<'a>(&'a self, state: &P2Element) -> impl Iterator<Item = &'a Edge> + 'a {
        let min = P2Element::translation(i64::MIN, i64::MIN);
        let lo = Edge {
            src: *state,
            delta: min,
            deltap: min,
            dst: min,
        };
        let state = *state;
        self.edges
            .range(lo..)
            .take_while(move |e| e.src == state)
    }

    pub fn out_degree(&self, state: &P2Element) -> usize {
        self.out_edges(state).count()
    }

    /// Distinct successor states.
    pub fn successors(&self, state: &P2Element) -> BTreeSet<P2Element> {
        self.out_edges(state).map(|e| e.dst).collect()
    }

    /// Every state has an outgoing edge.
    pub fn is_trimmed(&self) -> bool {
        self.states.iter().all(|s| self.out_degree(s) > 0)
    }

    /// Every edge satisfies the defining relation and joins two states.
    pub fn verify(&self, params: &TileParams) -> bool {
        self.edges.iter().all(|e| {
            e.is_valid(params) && self.states.contains(&e.src) && self.states.contains(&e.dst)
        })
    }

    /// Subgraph induced on `keep`.
    pub fn restrict(&self, keep: &BTreeSet<P2Element>) -> NeighborGraph {
        NeighborGraph {
            states: self.states.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(&e.src) && keep.contains(&e.dst))
                .copied()
                .collect(),
        }
    }
}

/// `G(Ω)`: states `Ω ∖ {id}` and every edge between them.
pub fn build_graph(omega: &BTreeSet<P2Element>, params: &TileParams) -> NeighborGraph {
    let states: BTreeSet<P2Element> = omega.iter().filter(|s| !s.is_identity()).copied().collect();
    let mut edges = BTreeSet::new();
    for src in &states {
        for (delta, deltap, dst) in edge_targets(src, params) {
            if states.contains(&dst) {
                edges.insert(Edge {
                    src: *src,
                    delta,
                    deltap,
                    dst,
                });
            }
        }
    }
    NeighborGraph { states, edges }
}

/// Removes states without outgoing edges until none are left.
pub fn trim(graph: &NeighborGraph) -> NeighborGraph {
    let mut out_deg: BTreeMap<P2Element, usize> =
        graph.states.iter().map(|s| (*s, 0)).collect();
    let mut preds: BTreeMap<P2Element, Vec<P2Element>> = BTreeMap::new();
    for e in &graph.edges {
        *out_deg.entry(e.src).or_insert(0) += 1;
        preds.entry(e.dst).or_default().push(e.src);
    }
    let mut queue: Vec<P2Element> = out_deg
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(s, _)| *s)
        .collect();
    let mut removed = BTreeSet::new();
    while let Some(s) = queue.pop() {
        if !removed.insert(s) {
            continue;
        }
        if let Some(ps) = preds.get(&s) {
            for p in ps {
                let d = out_deg.get_mut(p).expect("predecessor is a state");
                *d -= 1;
                if *d == 0 {
                    queue.push(*p);
                }
            }
        }
    }
    let keep: BTreeSet<P2Element> = graph.states.difference(&removed).copied().collect();
    graph.restrict(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: i64, b: i64) -> TileParams {
        TileParams::new(a, b).unwrap()
    }

    fn set(items: &[P2Element]) -> BTreeSet<P2Element> {
        items.iter().copied().collect()
    }

    #[test]
    fn targets_from_c() {
        for b in 2..=9 {
            for a in -1..=b {
                let p = params(a, b);
                let t = edge_targets(&P2Element::C, &p);
                assert_eq!(t.len(), (b * b) as usize);
                let top = P2Element::a_pow(b - 2);
                assert!(t.contains(&(top, P2Element::IDENTITY, P2Element::rotation(1, 0))));
                assert!(t.contains(&(top, P2Element::C, P2Element::A)));
            }
        }
    }

    #[test]
    fn no_edges_from_removed_states() {
        for b in 2..=12 {
            for a in 1..=b {
                if 2 * a >= b + 3 {
                    continue;
                }
                let p = params(a, b);
                let removed = P2Element::translation(a, 1);
                let s2 = crate::neighbors::pseudo_neighbor_set(&p).unwrap();
                for (_, _, dst) in edge_targets(&removed, &p) {
                    assert!(!s2.contains(&dst));
                }
            }
        }
    }

    #[test]
    fn build_basics() {
        let p = params(1, 3);
        assert!(build_graph(&BTreeSet::new(), &p).is_empty());
        for b in 2..=8 {
            let p = params(0, b);
            let g = build_graph(&set(&[P2Element::C]), &p);
            let loops = g.edges.iter().filter(|e| e.dst == P2Element::C).count();
            assert_eq!(loops > 0, b >= 3, "B = {b}");
            assert!(g.verify(&p));
        }
        let g = build_graph(&set(&[P2Element::IDENTITY, P2Element::A]), &p);
        assert_eq!(g.states, set(&[P2Element::A]));
    }

    #[test]
    fn trim_basics() {
        let p = params(0, 3);
        let looped = build_graph(&set(&[P2Element::C]), &p);
        assert_eq!(trim(&looped), looped);
        let lone = NeighborGraph {
            states: set(&[P2Element::C]),
            edges: BTreeSet::new(),
        };
        assert!(trim(&lone).is_empty());
    }

    #[test]
    fn trim_pseudo_graph_three_four() {
        let p = params(3, 4);
        let s2 = crate::neighbors::pseudo_neighbor_set(&p).unwrap();
        let g = build_graph(&s2, &p);
        let t = trim(&g);
        let removed: Vec<_> = g.states.difference(&t.states).copied().collect();
        assert_eq!(removed, [P2Element::rotation(-1, 0)]);
        assert_eq!(trim(&t), t);
        assert!(t.is_trimmed());
    }

    #[test]
    fn out_edges_are_grouped() {
        let p = params(1, 2);
        let s = crate::neighbors::neighbor_set(&p);
        let g = build_graph(&s, &p);
        let total: usize = g.states.iter().map(|s| g.out_degree(s)).sum();
        assert_eq!(total, g.edges.len());
        for s in &g.states {
            assert!(g.out_edges(s).all(|e| e.src == *s));
        }
    }
}
