//! Disk-likeness: closed-form classification, an independent check from the
//! neighbor set, and exact points of `T ∩ c(T)` when `2|A| >= B + 3`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::exact::{ifs_fixed_point_closed_form, ifs_maps, QVec2};
use crate::group::{P2Element, TileParams};
use crate::neighbors::{neighbor_set, walk_point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    DiskLike,
    NotDiskLike,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reason {
    /// `2|A| - B >= 3`.
    RegimeLarge2A,
    SixNeighborConnected,
    SixNeighborDisconnected,
    SevenNeighborTemplate,
    SevenNeighborTemplateFail,
    EightNeighborTemplate,
    EightNeighborTemplateFail,
    TwelveNeighborTemplate,
    TwelveNeighborTemplateFail,
    /// Neighbor count in {7, 8, 12} without a matching template.
    NoTemplateMatch,
    NineOrTenNeighbors,
    TheoremLookup,
}

impl Reason {
    pub const ALL: [Reason; 12] = [
        Reason::RegimeLarge2A,
        Reason::SixNeighborConnected,
        Reason::SixNeighborDisconnected,
        Reason::SevenNeighborTemplate,
        Reason::SevenNeighborTemplateFail,
        Reason::EightNeighborTemplate,
        Reason::EightNeighborTemplateFail,
        Reason::TwelveNeighborTemplate,
        Reason::TwelveNeighborTemplateFail,
        Reason::NoTemplateMatch,
        Reason::NineOrTenNeighbors,
        Reason::TheoremLookup,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::RegimeLarge2A => "RegimeLarge2A",
            Reason::SixNeighborConnected => "SixNeighborConnected",
            Reason::SixNeighborDisconnected => "SixNeighborDisconnected",
            Reason::SevenNeighborTemplate => "SevenNeighborTemplate",
            Reason::SevenNeighborTemplateFail => "SevenNeighborTemplateFail",
            Reason::EightNeighborTemplate => "EightNeighborTemplate",
            Reason::EightNeighborTemplateFail => "EightNeighborTemplateFail",
            Reason::TwelveNeighborTemplate => "TwelveNeighborTemplate",
            Reason::TwelveNeighborTemplateFail => "TwelveNeighborTemplateFail",
            Reason::NoTemplateMatch => "NoTemplateMatch",
            Reason::NineOrTenNeighbors => "NineOrTenNeighbors",
            Reason::TheoremLookup => "TheoremLookup",
        }
    }

    /// The verdict a reason implies, when it implies one.
    pub fn implied_verdict(&self) -> Option<Verdict> {
        use Reason::*;
        match self {
            SixNeighborConnected | SevenNeighborTemplate | EightNeighborTemplate | TwelveNeighborTemplate => {
                Some(Verdict::DiskLike)
            }
            RegimeLarge2A
            | SixNeighborDisconnected
            | SevenNeighborTemplateFail
            | EightNeighborTemplateFail
            | TwelveNeighborTemplateFail
            | NoTemplateMatch
            | NineOrTenNeighbors => Some(Verdict::NotDiskLike),
            TheoremLookup => None,
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DiskLike => "DiskLike",
            Verdict::NotDiskLike => "NotDiskLike",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiskVerdict {
    pub verdict: Verdict,
    pub reason: Reason,
}

impl DiskVerdict {
    pub fn new(verdict: Verdict, reason: Reason) -> Self {
        if let Some(v) = reason.implied_verdict() {
            assert_eq!(v, verdict, "reason {reason} contradicts verdict {verdict}");
        }
        DiskVerdict { verdict, reason }
    }

    pub fn is_disk_like(&self) -> bool {
        self.verdict == Verdict::DiskLike
    }
}

/// Closed-form decision.
pub fn classify(params: &TileParams) -> DiskVerdict {
    let (a, b) = (params.a(), params.b());
    if 2 * a.abs() - b >= 3 {
        return DiskVerdict::new(Verdict::NotDiskLike, Reason::RegimeLarge2A);
    }
    let disk = (-2..=1).contains(&a) || (a, b) == (2, 2);
    let verdict = if disk { Verdict::DiskLike } else { Verdict::NotDiskLike };
    DiskVerdict::new(verdict, Reason::TheoremLookup)
}

/// Whether every `d, d′ ∈ P` are joined by a chain whose steps `d_i⁻¹ d_{i+1}`
/// lie in `F`.
pub fn f_connected(p: &BTreeSet<P2Element>, f: &BTreeSet<P2Element>) -> bool {
    let nodes: Vec<P2Element> = p.iter().copied().collect();
    let Some(&start) = nodes.first() else {
        return true;
    };
    let reach = |forward: bool| -> usize {
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in &nodes {
                let step = if forward {
                    x.inverse().compose(y)
                } else {
                    y.inverse().compose(&x)
                };
                if f.contains(&step) && seen.insert(*y) {
                    stack.push(*y);
                }
            }
        }
        seen.len()
    };
    reach(true) == nodes.len() && reach(false) == nodes.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateId {
    Seven,
    EightA,
    EightB,
    Twelve,
}

/// `a′ = a^i b^j`, `b′ = a^k b^l` with `il - jk = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub a_prime: (i64, i64),
    pub b_prime: (i64, i64),
}

impl Substitution {
    pub fn det(&self) -> i64 {
        self.a_prime.0 * self.b_prime.1 - self.a_prime.1 * self.b_prime.0
    }

    /// `γ` written over `a′, b′`.
    pub fn rewrite(&self, g: &P2Element) -> P2Element {
        let d = self.det();
        let (i, j) = self.a_prime;
        let (k, l) = self.b_prime;
        // (p, q) = x a′ + y b′
        let x = (l * g.p - k * g.q) * d;
        let y = (-j * g.p + i * g.q) * d;
        P2Element::new(x, y, g.r())
    }

    /// An element over `a′, b′` back in the original generators.
    pub fn expand(&self, g: &P2Element) -> P2Element {
        let (i, j) = self.a_prime;
        let (k, l) = self.b_prime;
        P2Element::new(g.p * i + g.q * k, g.p * j + g.q * l, g.r())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateMatch {
    pub template: TemplateId,
    pub substitution: Substitution,
    /// The connectedness test set, in the original generators.
    pub test_set: BTreeSet<P2Element>,
}

fn elements(items: &[(i64, i64, u8)]) -> BTreeSet<P2Element> {
    items.iter().map(|&(p, q, r)| P2Element::new(p, q, r)).collect()
}

/// `(id, neighbor set, test set)` over the primed generators.
fn templates() -> [(TemplateId, BTreeSet<P2Element>, BTreeSet<P2Element>); 4] {
    [
        (
            TemplateId::Seven,
            elements(&[(0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 1, 1), (-1, 0, 1), (-1, 1, 1), (-1, -1, 1)]),
            elements(&[(0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 1, 1), (-1, 0, 1)]),
        ),
        (
            TemplateId::EightA,
            elements(&[
                (0, 1, 0),
                (0, -1, 0),
                (0, 0, 1),
                (0, 1, 1),
                (-1, 0, 1),
                (0, -1, 1),
                (-1, 1, 1),
                (-1, -1, 1),
            ]),
            elements(&[(0, 1, 0), (0, -1, 0), (0, 0, 1), (-1, 0, 1)]),
        ),
        (
            TemplateId::EightB,
            elements(&[(0, 1, 0), (0, -1, 0), (-1, 1, 0), (1, -1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, -1, 1)]),
            elements(&[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, -1, 1)]),
        ),
        (
            TemplateId::Twelve,
            elements(&[
                (1, 0, 0),
                (-1, 0, 0),
                (0, 1, 0),
                (0, -1, 0),
                (1, 1, 0),
                (-1, -1, 0),
                (0, 0, 1),
                (-1, 0, 1),
                (0, 1, 1),
                (1, 1, 1),
                (-1, 1, 1),
                (-1, -1, 1),
            ]),
            elements(&[(0, 0, 1), (-1, 0, 1), (0, 1, 1)]),
        ),
    ]
}

/// Substitution exponent bound.
pub const SUBSTITUTION_BOUND: i64 = 5;

/// First template equal to `S` rewritten over a unimodular substitution.
pub fn match_template(s: &BTreeSet<P2Element>) -> Option<TemplateMatch> {
    let n = SUBSTITUTION_BOUND;
    let candidates: Vec<_> = templates().into_iter().filter(|(_, t, _)| t.len() == s.len()).collect();
    if candidates.is_empty() {
        return None;
    }
    for i in -n..=n {
        for j in -n..=n {
            for k in -n..=n {
                for l in -n..=n {
                    if (i * l - j * k).abs() != 1 {
                        continue;
                    }
                    let sub = Substitution {
                        a_prime: (i, j),
                        b_prime: (k, l),
                    };
                    let rewritten: BTreeSet<P2Element> = s.iter().map(|g| sub.rewrite(g)).collect();
                    for (id, t, f) in &candidates {
                        if &rewritten == t {
                            return Some(TemplateMatch {
                                template: *id,
                                substitution: sub,
                                test_set: f.iter().map(|g| sub.expand(g)).collect(),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Decision from the computed neighbor set.
pub fn independent_disklike_check(params: &TileParams) -> Result<DiskVerdict, Error> {
    let s = neighbor_set(params);
    verdict_from_neighbors(params, &s)
}

/// Decision from a given neighbor set `S` of `(A, B)`.
pub fn verdict_from_neighbors(params: &TileParams, s: &BTreeSet<P2Element>) -> Result<DiskVerdict, Error> {
    let digits: BTreeSet<P2Element> = params.digits().iter().copied().collect();
    let verdict = |ok: bool, yes: Reason, no: Reason| {
        if ok {
            DiskVerdict::new(Verdict::DiskLike, yes)
        } else {
            DiskVerdict::new(Verdict::NotDiskLike, no)
        }
    };
    match s.len() {
        6 => Ok(verdict(
            f_connected(&digits, s),
            Reason::SixNeighborConnected,
            Reason::SixNeighborDisconnected,
        )),
        7 | 8 | 12 => {
            let Some(m) = match_template(s) else {
                return Ok(DiskVerdict::new(Verdict::NotDiskLike, Reason::NoTemplateMatch));
            };
            let (yes, no) = match m.template {
                TemplateId::Seven => (Reason::SevenNeighborTemplate, Reason::SevenNeighborTemplateFail),
                TemplateId::EightA | TemplateId::EightB => {
                    (Reason::EightNeighborTemplate, Reason::EightNeighborTemplateFail)
                }
                TemplateId::Twelve => (Reason::TwelveNeighborTemplate, Reason::TwelveNeighborTemplateFail),
            };
            Ok(verdict(f_connected(&digits, &m.test_set), yes, no))
        }
        9 | 10 => Ok(DiskVerdict::new(Verdict::NotDiskLike, Reason::NineOrTenNeighbors)),
        n => Err(Error::Undecided { neighbor_count: n }),
    }
}

/// Why a point lies in `T ∩ c(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `x = Fix(f_p)` and `-x = Fix(f_q)` (1-based indices).
    FixedPoints { p: usize, q: usize },
    /// `x` has address `x_prefix (x_period)^∞` and `-x` has address
    /// `cx_prefix (cx_period)^∞`.
    Walk {
        x_prefix: Vec<P2Element>,
        x_period: Vec<P2Element>,
        cx_prefix: Vec<P2Element>,
        cx_period: Vec<P2Element>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedPoint {
    pub point: QVec2,
    pub certificate: Certificate,
}

impl CertifiedPoint {
    /// Re-derives `x ∈ T` and `-x ∈ T` from the certificate.
    pub fn replay(&self, params: &TileParams) -> bool {
        let neg = -&self.point;
        match &self.certificate {
            Certificate::FixedPoints { p, q } => {
                let n = params.digit_count();
                if *p == 0 || *q == 0 || *p > n || *q > n {
                    return false;
                }
                let maps = ifs_maps(params);
                let fp = maps[*p - 1].fixed_point();
                let fq = maps[*q - 1].fixed_point();
                fp.as_ref() == Ok(&self.point) && fq.as_ref() == Ok(&neg)
            }
            Certificate::Walk {
                x_prefix,
                x_period,
                cx_prefix,
                cx_period,
            } => {
                let valid = |w: &[P2Element]| w.iter().all(|d| params.digits().position(d).is_some());
                if x_period.is_empty() || cx_period.is_empty() {
                    return false;
                }
                if !(valid(x_prefix) && valid(x_period) && valid(cx_prefix) && valid(cx_period)) {
                    return false;
                }
                walk_point(params, x_prefix, x_period).as_ref() == Ok(&self.point)
                    && walk_point(params, cx_prefix, cx_period).as_ref() == Ok(&neg)
            }
        }
    }
}

/// Two distinct certified points of `T ∩ c(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub first: CertifiedPoint,
    pub second: CertifiedPoint,
}

impl WitnessPair {
    pub fn replay(&self, params: &TileParams) -> bool {
        self.first.point != self.second.point && self.first.replay(params) && self.second.replay(params)
    }

    pub fn points(&self) -> [&QVec2; 2] {
        [&self.first.point, &self.second.point]
    }
}

/// Witnesses `#(T ∩ c(T)) >= 2` for `2|A| >= B + 3`.
///
/// For `B > 3`: `Fix(f_p) = -Fix(f_q)` exactly when `p + q = B + 1`; the pair
/// `p = 2`, `q = B - 1` is used. For `B = 3`: `Fix(f_2) = 0` and a point with
/// an eventually periodic address.
pub fn intersection_witnesses(params: &TileParams) -> Result<WitnessPair, Error> {
    let (a, b) = (params.a(), params.b());
    if 2 * a.abs() < b + 3 {
        return Err(Error::OutOfRegime { a, b });
    }
    let pair = if b > 3 {
        let (p, q) = (2usize, (b - 1) as usize);
        let x = ifs_fixed_point_closed_form(params, p);
        let y = ifs_fixed_point_closed_form(params, q);
        assert_eq!(-&x, y, "fixed points of f_{p}, f_{q} are not opposite");
        WitnessPair {
            first: CertifiedPoint {
                point: x,
                certificate: Certificate::FixedPoints { p, q },
            },
            second: CertifiedPoint {
                point: y,
                certificate: Certificate::FixedPoints { p: q, q: p },
            },
        }
    } else {
        let origin = CertifiedPoint {
            point: ifs_fixed_point_closed_form(params, 2),
            certificate: Certificate::FixedPoints { p: 2, q: 2 },
        };
        let (id, ad, c) = (P2Element::IDENTITY, P2Element::A, P2Element::C);
        let certificate = if a > 0 {
            Certificate::Walk {
                x_prefix: vec![ad],
                x_period: vec![id, c, c, c],
                cx_prefix: vec![id],
                cx_period: vec![id, ad, id, c],
            }
        } else {
            Certificate::Walk {
                x_prefix: vec![ad, ad, ad],
                x_period: vec![id],
                cx_prefix: vec![c, id, c],
                cx_period: vec![id],
            }
        };
        let Certificate::Walk { x_prefix, x_period, .. } = &certificate else {
            unreachable!()
        };
        let point = walk_point(params, x_prefix, x_period)?;
        WitnessPair {
            first: origin,
            second: CertifiedPoint { point, certificate },
        }
    };
    assert!(pair.replay(params), "witness certificates do not replay");
    Ok(pair)
}

/// `p + q` pairs with `Fix(f_p) = -Fix(f_q)` among translation digits.
pub fn opposite_fixed_point_pairs(params: &TileParams) -> BTreeMap<usize, usize> {
    let n = params.digit_count();
    let fixed: Vec<QVec2> = (1..n).map(|i| ifs_fixed_point_closed_form(params, i)).collect();
    let mut out = BTreeMap::new();
    for (i, x) in fixed.iter().enumerate() {
        for (j, y) in fixed.iter().enumerate() {
            if *y == -x {
                out.insert(i + 1, j + 1);
            }
        }
    }
    out
}
