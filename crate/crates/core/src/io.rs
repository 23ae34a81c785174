//! JSON instance files and solver result records.
//!
//! Coordinates are strings: an integer, a finite decimal, or `p/q`. Writing
//! picks the shortest exact form, so reading back gives the same rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{exposed_points, Coord, Instance, Point, Range, Solution};

pub const SCHEMA_VERSION: u32 = 1;

/// Formats a rational exactly.
pub fn format_coord(c: &Coord) -> String {
    if c.is_integer() {
        return c.numer().to_string();
    }
    let mut d = c.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut e2, mut e5) = (0u32, 0u32);
    while (&d % &two).is_zero() {
        d /= &two;
        e2 += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        e5 += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", c.numer(), c.denom());
    }
    let digits = e2.max(e5) as usize;
    let scaled = c.numer() * BigInt::from(10).pow(digits as u32) / c.denom();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let s = format!("{:0>width$}", scaled.abs().to_string(), width = digits + 1);
    let (int_part, frac) = s.split_at(s.len() - digits);
    format!("{sign}{int_part}.{frac}")
}

/// Parses an integer, a decimal like `-0.125`, or a fraction `p/q`.
pub fn parse_coord(s: &str) -> Result<Coord> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not an exact number: {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Coord::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if (ip.is_empty() && fp.is_empty()) || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}0").parse().map_err(|_| bad())?;
    let scale = BigInt::from(10).pow(fp.len() as u32 + 1);
    let v = Coord::new(digits, scale);
    Ok(if neg { -v } else { v })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum RangeRecord {
    Rect {
        x0: String,
        y0: String,
        x1: String,
        y1: String,
    },
    Disk {
        cx: String,
        cy: String,
        r: String,
    },
    Polygon {
        vertices: Vec<[String; 2]>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct InstanceRecord {
    schema_version: u32,
    k: usize,
    points: Vec<[String; 2]>,
    ranges: Vec<RangeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

/// An instance as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub metadata: Option<Metadata>,
}

fn pair(p: &Point) -> [String; 2] {
    [format_coord(&p.x), format_coord(&p.y)]
}

fn unpair(p: &[String; 2]) -> Result<Point> {
    Ok(Point::new(parse_coord(&p[0])?, parse_coord(&p[1])?))
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile {
            instance,
            metadata: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let inst = &self.instance;
        let rec = InstanceRecord {
            schema_version: SCHEMA_VERSION,
            k: inst.k,
            points: inst.points.iter().map(pair).collect(),
            ranges: inst
                .ranges
                .iter()
                .map(|r| match r {
                    Range::Rect(r) => RangeRecord::Rect {
                        x0: format_coord(&r.x0),
                        y0: format_coord(&r.y0),
                        x1: format_coord(&r.x1),
                        y1: format_coord(&r.y1),
                    },
                    Range::Disk(d) => RangeRecord::Disk {
                        cx: format_coord(&d.cx),
                        cy: format_coord(&d.cy),
                        r: format_coord(&d.r),
                    },
                    Range::Polygon(p) => RangeRecord::Polygon {
                        vertices: p.vertices.iter().map(pair).collect(),
                    },
                })
                .collect(),
            metadata: self.metadata.clone(),
        };
        Ok(serde_json::to_string_pretty(&rec)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: InstanceRecord = serde_json::from_str(s)?;
        if rec.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                rec.schema_version
            )));
        }
        let points = rec.points.iter().map(unpair).collect::<Result<_>>()?;
        let ranges = rec
            .ranges
            .iter()
            .map(|r| match r {
                RangeRecord::Rect { x0, y0, x1, y1 } => Range::rect(
                    parse_coord(x0)?,
                    parse_coord(y0)?,
                    parse_coord(x1)?,
                    parse_coord(y1)?,
                ),
                RangeRecord::Disk { cx, cy, r } => {
                    Range::disk(parse_coord(cx)?, parse_coord(cy)?, parse_coord(r)?)
                }
                RangeRecord::Polygon { vertices } => {
                    Range::polygon(vertices.iter().map(unpair).collect::<Result<_>>()?)
                }
            })
            .collect::<Result<_>>()?;
        Ok(InstanceFile {
            instance: Instance::new(points, ranges, rec.k)?,
            metadata: rec.metadata,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

/// What `solve` writes and `verify` checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algorithm: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub value: usize,
    pub deleted_count: usize,
    pub deleted: Vec<usize>,
    pub exposed: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<f64>,
}

impl ResultRecord {
    pub fn new(
        algorithm: &str,
        params: BTreeMap<String, String>,
        sol: &Solution,
        wall_clock_ms: Option<f64>,
    ) -> Self {
        ResultRecord {
            algorithm: algorithm.to_string(),
            params,
            value: sol.value,
            deleted_count: sol.deleted.len(),
            deleted: sol.deleted.iter().copied().collect(),
            exposed: sol.exposed.iter().copied().collect(),
            wall_clock_ms,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Recomputes exposure from `deleted` and checks every field against it.
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        let deleted: BTreeSet<usize> = self.deleted.iter().copied().collect();
        if deleted.len() != self.deleted.len() || !self.deleted.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Inconsistent(
                "deleted ids are not sorted and distinct".into(),
            ));
        }
        if self.deleted_count != deleted.len() {
            return Err(Error::Inconsistent(format!(
                "deleted_count {} but {} ids listed",
                self.deleted_count,
                deleted.len()
            )));
        }
        let exposed: Vec<usize> = exposed_points(inst, &deleted)?.into_iter().collect();
        if exposed != self.exposed {
            return Err(Error::Inconsistent(format!(
                "recorded exposed set ({} points) differs from recomputation ({} points)",
                self.exposed.len(),
                exposed.len()
            )));
        }
        if self.value != exposed.len() {
            return Err(Error::Inconsistent(format!(
                "value {} but {} points exposed",
                self.value,
                exposed.len()
            )));
        }
        Ok(())
    }
}
