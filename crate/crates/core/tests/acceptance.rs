//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use crystile_core::exact::rat;
use crystile_core::neighbors::{build_graph, lattice_neighbor_set, neighbor_set, trim, verify_edge_tables};
use crystile_core::raster::{default_depth, estimate_area, render_tile, DEFAULT_RESOLUTION};
use crystile_core::topology::{classify, independent_disklike_check, intersection_witnesses};
use crystile_core::{verify_complete_residue_system, Budget, LatticeNeighborSet, P2Element, QVec2, TileParams, Verdict};

const CLASSIFY_LIMIT: Duration = Duration::from_secs(120);
const GOLDEN_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_DEPTH: u32 = 12;
const AREA_RANGE: (f64, f64) = (0.45, 0.55);

/// Neighbor sets as listed in the source, for criterion 2.
const PUBLISHED_NEIGHBORS: [((i64, i64), &[&str]); 18] = [
    ((3, 5), &["a", "a^-1", "a^2 b", "a^-2 b^-1", "c", "a c", "a^-1 c", "a^2 b c", "a^-2 b^-1 c", "a^3 b c"]),
    ((4, 7), &["a", "a^-1", "a^3 b", "a^-3 b^-1", "c", "a c", "a^-1 c", "a^3 b c", "a^-3 b^-1 c", "a^4 b c"]),
    ((3, 4), &["a", "a^-1", "a^2 b", "a^-2 b^-1", "c", "a c", "a^2 b c", "a^-2 b^-1 c", "a^3 b c"]),
    ((2, 2), &["a b", "a^-1 b^-1", "c", "a c", "a b c", "a^2 b c"]),
    ((2, 3), &["a", "a^-1", "a b", "a^-1 b^-1", "c", "a c", "a b c", "a^2 b c"]),
    ((2, 4), &["a", "a^-1", "a b", "a^-1 b^-1", "c", "a c", "a b c", "a^2 b c"]),
    ((1, 2), &["a", "a^-1", "c", "a c", "a b c", "b c"]),
    ((1, 7), &["a", "a^-1", "c", "a c", "a b c", "b c"]),
    ((0, 2), &["a", "a^-1", "c", "a c", "a^-1 b c", "b c", "a b c"]),
    ((0, 5), &["a", "a^-1", "c", "a c", "a^-1 b c", "b c", "a b c"]),
    ((-1, 2), &["a", "a^-1", "c", "a^-1 c", "a^-1 b c", "b c"]),
    ((-1, 3), &["a", "a^-1", "c", "a c", "a^-1 b c", "b c"]),
    ((-2, 2), &["a", "a^-1", "c", "a^-1 c", "a^-2 b c", "a^-1 b c"]),
    ((-2, 3), &["a", "a^-1", "c", "a^-1 c", "a^-2 b c", "a^-1 b c"]),
    ((-2, 4), &["a", "a^-1", "c", "a c", "a^-2 b c", "a^-1 b c"]),
    ((-3, 4), &["a", "a^-1", "a^-2 b", "a^2 b^-1", "c", "a^-1 c", "a^-2 b c", "a^-3 b c"]),
    ((-3, 5), &["a", "a^-1", "a^-2 b", "a^2 b^-1", "c", "a c", "a^-2 b c", "a^-3 b c", "a^-1 c"]),
    ((-4, 6), &["a", "a^-1", "a^-3 b", "a^3 b^-1", "c", "a^-1 c", "a c", "a^-3 b c", "a^-4 b c", "a^3 b^-1 c"]),
];

/// Lattice tile neighbors as listed: `A > 0` (general form evaluated),
/// `A = -1` and `A = 0`.
fn published_lattice(a: i64) -> LatticeNeighborSet {
    match a {
        0 => LatticeNeighborSet::from_vectors([(1, 0), (-1, 0), (1, 1), (-1, 1), (1, -1), (-1, -1), (0, 1), (0, -1)]),
        -1 => LatticeNeighborSet::from_vectors([(-1, 1), (0, 1), (1, 0), (-1, 0), (1, -1), (0, -1)]),
        a if a > 0 => LatticeNeighborSet::from_vectors([(a, 1), (a - 1, 1), (1, 0), (-1, 0), (-a, -1), (1 - a, -1)]),
        _ => unreachable!("no listed set"),
    }
}

const LATTICE_CELLS: [(i64, i64); 8] = [(1, 3), (1, 6), (2, 5), (3, 7), (0, 2), (0, 5), (-1, 2), (-1, 4)];

/// Listed points of `T ∩ c(T)`.
fn published_witnesses(a: i64) -> BTreeSet<QVec2> {
    match a {
        3 => BTreeSet::from([QVec2::zero(), QVec2::new(rat(-13, 73), rat(16, 219))]),
        -3 => BTreeSet::from([QVec2::zero(), QVec2::from_ints(0, 1)]),
        _ => unreachable!("no listed points"),
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn params(a: i64, b: i64) -> TileParams {
    TileParams::new(a, b).unwrap()
}

fn all_pairs(max_b: i64) -> Vec<TileParams> {
    (2..=max_b)
        .flat_map(|b| (-b..=b).map(move |a| params(a, b)))
        .collect()
}

fn show<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn classification_agreement() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let pairs = all_pairs(40);
    for p in &pairs {
        let c = classify(p);
        let ok = if p.in_small_regime() {
            independent_disklike_check(p).is_ok_and(|i| i.verdict == c.verdict)
        } else {
            c.verdict == Verdict::NotDiskLike && intersection_witnesses(p).is_ok_and(|w| w.replay(p))
        };
        if !ok {
            bad.push(format!("({}, {})", p.a(), p.b()));
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && t < CLASSIFY_LIMIT,
        format!("{} pairs, {} disagree [{}], {:.1?}", pairs.len(), bad.len(), bad.join(" "), t),
    )
}

fn neighbor_goldens() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for ((a, b), items) in PUBLISHED_NEIGHBORS {
        let want: BTreeSet<P2Element> = items.iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(want.len(), items.len());
        let got = neighbor_set(&params(a, b));
        if got != want {
            bad.push(format!(
                "({a}, {b}) missing [{}] extra [{}]",
                show(want.difference(&got)),
                show(got.difference(&want))
            ));
        }
    }
    let t = start.elapsed();
    let n = PUBLISHED_NEIGHBORS.len();
    outcome(
        bad.is_empty() && t < GOLDEN_LIMIT,
        format!("{}/{n} equal, {:.1?}; {}", n - bad.len(), t, bad.join("; ")),
    )
}

fn lattice_goldens() -> Outcome {
    let mut bad = Vec::new();
    for (a, b) in LATTICE_CELLS {
        if lattice_neighbor_set(&params(a, b)) != published_lattice(a) {
            bad.push(format!("({a}, {b})"));
        }
    }
    // negative A: the A > 0 sets under (x, y) -> (-x, y)
    let mut reflected = 0;
    for b in 2..=16 {
        for a in 1..=3 {
            if 2 * a >= b + 3 {
                continue;
            }
            reflected += 1;
            let want = LatticeNeighborSet::from_vectors(published_lattice(a).iter().map(|&(x, y)| (-x, y)));
            if lattice_neighbor_set(&params(-a, b)) != want {
                bad.push(format!("reflected ({}, {b})", -a));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} listed cells, {reflected} reflected cells; failing [{}]", LATTICE_CELLS.len(), bad.join(" ")),
    )
}

fn table_regeneration() -> Outcome {
    let mut bad = Vec::new();
    let cells = [(1, 2), (1, 3), (0, 2), (0, 4), (-1, 2), (-1, 4), (2, 4), (3, 5), (4, 7)];
    for (a, b) in cells {
        match verify_edge_tables(&params(a, b)) {
            Ok(r) if r.is_pass() => {}
            Ok(r) => bad.push(format!("({a}, {b}): {} diffs", r.diffs().len())),
            Err(e) => bad.push(format!("({a}, {b}): {e}")),
        }
    }
    outcome(bad.is_empty(), format!("{}/{} empty diffs {}", cells.len() - bad.len(), cells.len(), bad.join("; ")))
}

fn exact_witnesses() -> Outcome {
    let mut bad = Vec::new();
    for (a, b) in [(3, 3), (-3, 3)] {
        let want = published_witnesses(a);
        let got: BTreeSet<QVec2> = intersection_witnesses(&params(a, b))
            .map(|w| w.points().into_iter().cloned().collect())
            .unwrap_or_default();
        if got != want {
            let fmt = |s: &BTreeSet<QVec2>| {
                show(s.iter().map(|x| format!("({}, {})", x.x, x.y)))
            };
            bad.push(format!("({a}, {b}) got [{}] want [{}]", fmt(&got), fmt(&want)));
        }
    }
    let mut count = 0;
    for b in 3..=15i64 {
        for a in -b..=b {
            if 2 * a.abs() < b + 3 {
                continue;
            }
            count += 1;
            let p = params(a, b);
            match intersection_witnesses(&p) {
                Ok(w) if w.first.point != w.second.point && w.replay(&p) => {}
                _ => bad.push(format!("({a}, {b}) replay")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} regime pairs replayed; {}", bad.join("; ")))
}

fn residue_systems() -> Outcome {
    let pairs = all_pairs(40);
    let bad: Vec<String> = pairs
        .iter()
        .filter(|p| !verify_complete_residue_system(&p.digits(), p))
        .map(|p| format!("({}, {})", p.a(), p.b()))
        .collect();
    outcome(bad.is_empty(), format!("{} pairs, failing [{}]", pairs.len(), bad.join(" ")))
}

/// Address points of depth `k` from the origin, in floating point, with a
/// bound `h` on their Hausdorff distance to the tile.
struct Cloud {
    points: Vec<(f64, f64)>,
    h: f64,
}

fn cloud(a: i64, b: i64, k: u32) -> Cloud {
    let (af, bf) = (a as f64, b as f64);
    // M⁻¹ = [[-A, B], [-1, 0]] / B
    let inv = [[-af / bf, 1.0], [-1.0 / bf, 0.0]];
    let t0 = (bf - 1.0) / 2.0;
    let apply = |x: f64, y: f64| (inv[0][0] * x + inv[0][1] * y, inv[1][0] * x + inv[1][1] * y);
    let mut pts = vec![(0.0f64, 0.0f64)];
    for _ in 0..k {
        let mut next = Vec::with_capacity(pts.len() * b as usize);
        for &(x, y) in &pts {
            for d in 0..b - 1 {
                next.push(apply(x + d as f64 - t0, y));
            }
            next.push(apply(-x - t0, -y));
        }
        pts = next;
    }
    let mut pw = [[1.0, 0.0], [0.0, 1.0]];
    for _ in 0..k {
        pw = [
            [
                pw[0][0] * inv[0][0] + pw[0][1] * inv[1][0],
                pw[0][0] * inv[0][1] + pw[0][1] * inv[1][1],
            ],
            [
                pw[1][0] * inv[0][0] + pw[1][1] * inv[1][0],
                pw[1][0] * inv[0][1] + pw[1][1] * inv[1][1],
            ],
        ];
    }
    let n = pw.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    assert!(n < 0.5);
    let r = pts.iter().map(|&(x, y)| x.hypot(y)).fold(0.0, f64::max);
    Cloud {
        points: pts,
        h: n * r / (1.0 - n) * 1.01,
    }
}

/// Smallest distance between `T` and `γ(T)` point clouds, if below `eps`.
fn touches(cloud: &Cloud, grid: &HashMap<(i64, i64), Vec<usize>>, cell: f64, g: &P2Element, eps: f64) -> Option<f64> {
    let s = g.sign() as f64;
    let mut best: Option<f64> = None;
    for &(x, y) in &cloud.points {
        let (u, v) = (s * x + g.p as f64, s * y + g.q as f64);
        let (cx, cy) = ((u / cell).floor() as i64, (v / cell).floor() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = grid.get(&(cx + dx, cy + dy)) {
                    for &i in ids {
                        let (px, py) = cloud.points[i];
                        let d = (px - u).hypot(py - v);
                        if d <= eps && best.is_none_or(|b| d < b) {
                            best = Some(d);
                        }
                    }
                }
            }
        }
        if best == Some(0.0) {
            break;
        }
    }
    best
}

fn oracle_neighbors(a: i64, b: i64) -> (BTreeSet<P2Element>, f64) {
    let c = cloud(a, b, ORACLE_DEPTH);
    let eps = 2.0 * c.h;
    let cell = eps;
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &(x, y)) in c.points.iter().enumerate() {
        grid.entry(((x / cell).floor() as i64, (y / cell).floor() as i64)).or_default().push(i);
    }
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &c.points {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let reach = |lo: f64, hi: f64| ((hi - lo) + 2.0 * eps).ceil() as i64 + 1;
    let (pr, qr) = (reach(xmin, xmax), reach(ymin, ymax));
    let mut out = BTreeSet::new();
    for p in -(2 * pr)..=2 * pr {
        for q in -(2 * qr)..=2 * qr {
            for r in 0..2u8 {
                let g = P2Element::new(p, q, r);
                if g.is_identity() {
                    continue;
                }
                // bounding boxes of T and γ(T) must meet
                let s = g.sign() as f64;
                let (gx0, gx1) = if s > 0.0 { (xmin + p as f64, xmax + p as f64) } else { (p as f64 - xmax, p as f64 - xmin) };
                let (gy0, gy1) = if s > 0.0 { (ymin + q as f64, ymax + q as f64) } else { (q as f64 - ymax, q as f64 - ymin) };
                if gx0 > xmax + eps || gx1 < xmin - eps || gy0 > ymax + eps || gy1 < ymin - eps {
                    continue;
                }
                if touches(&c, &grid, cell, &g, eps).is_some() {
                    out.insert(g);
                }
            }
        }
    }
    (out, eps)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    for (a, b) in [(1, 2), (0, 3), (2, 3)] {
        let (got, eps) = oracle_neighbors(a, b);
        let want = neighbor_set(&params(a, b));
        if got != want {
            pass = false;
            notes.push(format!(
                "({a}, {b}) missing [{}] extra [{}]",
                show(want.difference(&got)),
                show(got.difference(&want))
            ));
        } else {
            notes.push(format!("({a}, {b}) {} equal at eps {eps:.2e}", got.len()));
        }
    }
    let t = start.elapsed();
    outcome(pass && t < ORACLE_LIMIT, format!("{}; {:.1?}", notes.join("; "), t))
}

fn area_property() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for (a, b) in [(1, 4), (2, 3), (-2, 3), (-3, 4), (3, 3)] {
        let p = params(a, b);
        let depth = default_depth(&p);
        let area = render_tile(&p, depth, DEFAULT_RESOLUTION, &Budget::default())
            .map(|r| estimate_area(&r))
            .unwrap_or(f64::NAN);
        let ok = (AREA_RANGE.0..=AREA_RANGE.1).contains(&area);
        pass &= ok;
        notes.push(format!("({a}, {b}) d{depth} {area:.4}{}", if ok { "" } else { " out of range" }));
    }
    outcome(pass, notes.join(", "))
}

fn invariant_suite() -> Outcome {
    let start = Instant::now();
    let pairs = all_pairs(40);
    let mut bad = Vec::new();
    for p in &pairs {
        let s = neighbor_set(p);
        let symmetric = s.iter().all(|g| s.contains(&g.inverse()));
        let graph = build_graph(&s, p);
        let trimmed = trim(&graph);
        let ok = symmetric
            && s.len() >= 6
            && !s.contains(&P2Element::IDENTITY)
            && graph.is_trimmed()
            && trimmed == graph
            && trim(&trimmed) == trimmed
            && graph.verify(p);
        if !ok {
            bad.push(format!("({}, {})", p.a(), p.b()));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} pairs, failing [{}], {:.1?}", pairs.len(), bad.join(" "), start.elapsed()),
    )
}

fn main() {
    let criteria: [(&str, &dyn Fn() -> Outcome); 9] = [
        ("classification agreement", &classification_agreement),
        ("neighbor-set goldens", &neighbor_goldens),
        ("lattice goldens", &lattice_goldens),
        ("table regeneration", &table_regeneration),
        ("exact witnesses", &exact_witnesses),
        ("residue system", &residue_systems),
        ("oracle equivalence", &oracle_equivalence),
        ("area property", &area_property),
        ("invariant suite", &invariant_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {tag}: {name} ({})", i + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
