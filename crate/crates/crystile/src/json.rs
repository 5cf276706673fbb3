//! JSON documents printed by the command-line tool.

use std::collections::BTreeSet;

use crystile_core::topology::{Certificate, CertifiedPoint};
use crystile_core::{DiskVerdict, Error, LatticeNeighborSet, P2Element, QVec2, Rational, WitnessPair};
use serde::{Deserialize, Serialize};

/// `a^p b^q c^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub p: i64,
    pub q: i64,
    pub r: u8,
}

impl From<&P2Element> for ElementJson {
    fn from(g: &P2Element) -> Self {
        ElementJson {
            p: g.p,
            q: g.q,
            r: g.r(),
        }
    }
}

impl From<ElementJson> for P2Element {
    fn from(e: ElementJson) -> Self {
        P2Element::new(e.p, e.q, e.r)
    }
}

/// Always `num/den`, with `den > 0`.
pub fn rational_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `num/den` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let r: Rational = s.parse().map_err(|_| Error::Parse)?;
    Ok(r)
}

pub fn point_strings(x: &QVec2) -> [String; 2] {
    [rational_string(&x.x), rational_string(&x.y)]
}

pub fn parse_point(p: &[String; 2]) -> Result<QVec2, Error> {
    Ok(QVec2::new(parse_rational(&p[0])?, parse_rational(&p[1])?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub verdict: String,
    pub reason: String,
}

impl From<&DiskVerdict> for VerdictJson {
    fn from(v: &DiskVerdict) -> Self {
        VerdictJson {
            verdict: v.verdict.to_string(),
            reason: v.reason.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyJson {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub verdict: String,
    pub reason: String,
    pub neighbor_count: usize,
    /// `None` when the neighbor count has no criterion.
    pub independent: Option<VerdictJson>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborsJson {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub lattice: bool,
    pub count: usize,
    pub neighbors: Vec<String>,
    pub elements: Vec<ElementJson>,
}

impl NeighborsJson {
    pub fn from_set(a: i64, b: i64, s: &BTreeSet<P2Element>) -> Self {
        NeighborsJson {
            a,
            b,
            lattice: false,
            count: s.len(),
            neighbors: s.iter().map(|g| g.to_string()).collect(),
            elements: s.iter().map(ElementJson::from).collect(),
        }
    }

    pub fn from_lattice(a: i64, b: i64, s: &LatticeNeighborSet) -> Self {
        let t = s.as_translations();
        NeighborsJson {
            lattice: true,
            ..NeighborsJson::from_set(a, b, &t)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CertificateJson {
    FixedPoints {
        p: usize,
        q: usize,
    },
    Walk {
        x_prefix: Vec<String>,
        x_period: Vec<String>,
        cx_prefix: Vec<String>,
        cx_period: Vec<String>,
    },
}

fn words(w: &[P2Element]) -> Vec<String> {
    w.iter().map(|g| g.to_string()).collect()
}

fn parse_words(w: &[String]) -> Result<Vec<P2Element>, Error> {
    w.iter().map(|s| s.parse()).collect()
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        match c {
            Certificate::FixedPoints { p, q } => CertificateJson::FixedPoints { p: *p, q: *q },
            Certificate::Walk {
                x_prefix,
                x_period,
                cx_prefix,
                cx_period,
            } => CertificateJson::Walk {
                x_prefix: words(x_prefix),
                x_period: words(x_period),
                cx_prefix: words(cx_prefix),
                cx_period: words(cx_period),
            },
        }
    }
}

impl TryFrom<&CertificateJson> for Certificate {
    type Error = Error;

    fn try_from(c: &CertificateJson) -> Result<Self, Error> {
        Ok(match c {
            CertificateJson::FixedPoints { p, q } => Certificate::FixedPoints { p: *p, q: *q },
            CertificateJson::Walk {
                x_prefix,
                x_period,
                cx_prefix,
                cx_period,
            } => Certificate::Walk {
                x_prefix: parse_words(x_prefix)?,
                x_period: parse_words(x_period)?,
                cx_prefix: parse_words(cx_prefix)?,
                cx_period: parse_words(cx_period)?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedPointJson {
    pub point: [String; 2],
    pub certificate: CertificateJson,
}

impl From<&CertifiedPoint> for CertifiedPointJson {
    fn from(c: &CertifiedPoint) -> Self {
        CertifiedPointJson {
            point: point_strings(&c.point),
            certificate: (&c.certificate).into(),
        }
    }
}

impl TryFrom<&CertifiedPointJson> for CertifiedPoint {
    type Error = Error;

    fn try_from(c: &CertifiedPointJson) -> Result<Self, Error> {
        Ok(CertifiedPoint {
            point: parse_point(&c.point)?,
            certificate: (&c.certificate).try_into()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub points: [CertifiedPointJson; 2],
}

impl WitnessJson {
    pub fn new(a: i64, b: i64, w: &WitnessPair) -> Self {
        WitnessJson {
            a,
            b,
            points: [(&w.first).into(), (&w.second).into()],
        }
    }

    pub fn to_pair(&self) -> Result<WitnessPair, Error> {
        Ok(WitnessPair {
            first: (&self.points[0]).try_into()?,
            second: (&self.points[1]).try_into()?,
        })
    }
}
