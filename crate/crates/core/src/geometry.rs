//! Exact planar primitives, closed-range containment and the exposure
//! semantics every solver builds on.
//!
//! All coordinates are arbitrary-precision rationals. Containment is closed:
//! a point on the boundary of a range is inside it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Exact rational coordinate. Always stored in lowest terms.
pub type Coord = BigRational;

/// `num / den` as a [`Coord`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Coord {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer coordinate.
pub fn int(v: i64) -> Coord {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Closed axis-aligned rectangle `[x0, x1] x [y0, y1]` with `x0 < x1`, `y0 < y1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: Coord,
    pub y0: Coord,
    pub x1: Coord,
    pub y1: Coord,
}

impl Rect {
    pub fn width(&self) -> Coord {
        &self.x1 - &self.x0
    }

    pub fn height(&self) -> Coord {
        &self.y1 - &self.y0
    }

    pub fn is_square(&self) -> bool {
        self.width() == self.height()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    /// Closed-set intersection test.
    pub fn intersects(&self, other: &Rect) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x0.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y1.clone()),
            Point::new(self.x0.clone(), self.y1.clone()),
        ]
    }
}

/// Closed disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Disk {
    pub cx: Coord,
    pub cy: Coord,
    pub r: Coord,
}

/// Closed, strictly convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    pub vertices: Vec<Point>,
}

/// Twice the signed area of triangle `(a, b, c)`; positive for a left turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Coord {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Range {
    Rect(Rect),
    Disk(Disk),
    Polygon(ConvexPolygon),
}

impl Range {
    pub fn rect(x0: Coord, y0: Coord, x1: Coord, y1: Coord) -> Result<Self> {
        let r = Range::Rect(Rect { x0, y0, x1, y1 });
        r.validate()?;
        Ok(r)
    }

    /// Axis-aligned square with lower-left corner `(x, y)`.
    pub fn square(x: Coord, y: Coord, side: Coord) -> Result<Self> {
        let x1 = &x + &side;
        let y1 = &y + &side;
        Range::rect(x, y, x1, y1)
    }

    pub fn disk(cx: Coord, cy: Coord, r: Coord) -> Result<Self> {
        let d = Range::Disk(Disk { cx, cy, r });
        d.validate()?;
        Ok(d)
    }

    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        let p = Range::Polygon(ConvexPolygon { vertices });
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Range::Rect(r) => {
                if r.x0 < r.x1 && r.y0 < r.y1 {
                    Ok(())
                } else {
                    Err(Error::InvalidRange(format!(
                        "rectangle [{}, {}] x [{}, {}] is empty or inverted",
                        r.x0, r.x1, r.y0, r.y1
                    )))
                }
            }
            Range::Disk(d) => {
                if d.r.is_positive() {
                    Ok(())
                } else {
                    Err(Error::InvalidRange(format!(
                        "disk radius {} is not positive",
                        d.r
                    )))
                }
            }
            Range::Polygon(p) => {
                let v = &p.vertices;
                if v.len() < 3 {
                    return Err(Error::InvalidRange(format!(
                        "polygon needs at least 3 vertices, got {}",
                        v.len()
                    )));
                }
                // Every other vertex strictly left of every edge: strictly
                // convex, counter-clockwise and simple in one check.
                for i in 0..v.len() {
                    let a = &v[i];
                    let b = &v[(i + 1) % v.len()];
                    if a == b {
                        return Err(Error::InvalidRange("polygon repeats a vertex".into()));
                    }
                    for (j, c) in v.iter().enumerate() {
                        if j == i || j == (i + 1) % v.len() {
                            continue;
                        }
                        if !orient(a, b, c).is_positive() {
                            return Err(Error::InvalidRange(
                                "polygon is not strictly convex in counter-clockwise order".into(),
                            ));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn as_rect(&self) -> Option<&Rect> {
        match self {
            Range::Rect(r) => Some(r),
            _ => None,
        }
    }

    /// Closed containment, exact.
    pub fn contains(&self, p: &Point) -> bool {
        contains(self, p)
    }
}

/// True iff `p` lies in the closed region of `r`.
pub fn contains(r: &Range, p: &Point) -> bool {
    match r {
        Range::Rect(rect) => rect.contains(p),
        Range::Disk(d) => {
            let dx = &p.x - &d.cx;
            let dy = &p.y - &d.cy;
            &dx * &dx + &dy * &dy <= &d.r * &d.r
        }
        Range::Polygon(poly) => {
            let v = &poly.vertices;
            (0..v.len()).all(|i| !orient(&v[i], &v[(i + 1) % v.len()], p).is_negative())
        }
    }
}

/// Points, ranges and the deletion budget `k`. Indices are stable ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub points: Vec<Point>,
    pub ranges: Vec<Range>,
    pub k: usize,
}

impl Instance {
    pub fn new(points: Vec<Point>, ranges: Vec<Range>, k: usize) -> Result<Self> {
        for r in &ranges {
            r.validate()?;
        }
        if k > ranges.len() {
            return Err(Error::InvalidInstance(format!(
                "budget k = {k} exceeds the number of ranges {}",
                ranges.len()
            )));
        }
        Ok(Instance { points, ranges, k })
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        Instance::new(self.points.clone(), self.ranges.clone(), k)
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn n(&self) -> usize {
        self.ranges.len()
    }

    pub fn containment(&self) -> Containment {
        Containment::new(self)
    }

    fn check_point(&self, id: usize) -> Result<()> {
        if id < self.points.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfBounds {
                kind: "point",
                index: id,
                len: self.points.len(),
            })
        }
    }

    fn check_range(&self, id: usize) -> Result<()> {
        if id < self.ranges.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfBounds {
                kind: "range",
                index: id,
                len: self.ranges.len(),
            })
        }
    }

    /// Every range is an axis-aligned rectangle.
    pub fn rects(&self) -> Option<Vec<&Rect>> {
        self.ranges.iter().map(Range::as_rect).collect()
    }
}

/// Sorted, duplicate-free set of range ids containing a point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Signature(ids)
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset_of(&self, set: &BTreeSet<usize>) -> bool {
        self.0.iter().all(|r| set.contains(r))
    }
}

/// Maximal class of points sharing one non-empty signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub signature: Signature,
    pub point_ids: Vec<usize>,
}

/// Deleted ranges together with the points they expose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub deleted: BTreeSet<usize>,
    pub exposed: BTreeSet<usize>,
    pub value: usize,
}

impl Solution {
    /// Builds a solution by recomputing exposure from `deleted`.
    pub fn from_deleted(inst: &Instance, deleted: BTreeSet<usize>) -> Result<Self> {
        let exposed = exposed_points(inst, &deleted)?;
        Ok(Solution {
            value: exposed.len(),
            deleted,
            exposed,
        })
    }

    /// Checks `value == |exposed|` and that `exposed` is exactly what
    /// `deleted` exposes.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let recomputed = exposed_points(inst, &self.deleted)?;
        if recomputed != self.exposed {
            return Err(Error::Inconsistent(format!(
                "exposed set differs from recomputation ({} vs {} points)",
                self.exposed.len(),
                recomputed.len()
            )));
        }
        if self.value != self.exposed.len() {
            return Err(Error::Inconsistent(format!(
                "value {} != |exposed| {}",
                self.value,
                self.exposed.len()
            )));
        }
        Ok(())
    }
}

/// Point/range incidence of an instance, computed once.
#[derive(Clone, Debug)]
pub struct Containment {
    signatures: Vec<Signature>,
    members: Vec<Vec<usize>>,
}

impl Containment {
    pub fn new(inst: &Instance) -> Self {
        let mut members = vec![Vec::new(); inst.ranges.len()];
        let signatures = inst
            .points
            .iter()
            .enumerate()
            .map(|(pi, p)| {
                let ids: Vec<usize> = inst
                    .ranges
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.contains(p))
                    .map(|(ri, _)| ri)
                    .collect();
                for &ri in &ids {
                    members[ri].push(pi);
                }
                Signature(ids)
            })
            .collect();
        Containment {
            signatures,
            members,
        }
    }

    pub fn signature(&self, point_id: usize) -> &Signature {
        &self.signatures[point_id]
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    pub fn points_in(&self, range_id: usize) -> &[usize] {
        &self.members[range_id]
    }

    pub fn exposed(&self, deleted: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.signatures
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_subset_of(deleted))
            .map(|(i, _)| i)
            .collect()
    }

    /// Points whose signature is empty; exposed at zero cost.
    pub fn free_points(&self) -> Vec<usize> {
        self.signatures
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_empty())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn groups(&self) -> Vec<Group> {
        let mut by_sig: BTreeMap<&Signature, Vec<usize>> = BTreeMap::new();
        for (pi, sig) in self.signatures.iter().enumerate() {
            if !sig.is_empty() {
                by_sig.entry(sig).or_default().push(pi);
            }
        }
        let mut groups: Vec<Group> = by_sig
            .into_iter()
            .map(|(sig, point_ids)| Group {
                signature: sig.clone(),
                point_ids,
            })
            .collect();
        // BTreeMap order is lexicographic on the signature; a stable sort on
        // size keeps it as the tie-break.
        groups.sort_by_key(|g| std::cmp::Reverse(g.point_ids.len()));
        groups
    }
}

/// Sorted ids of the ranges containing `point_id`.
pub fn signature_of(inst: &Instance, point_id: usize) -> Result<Signature> {
    inst.check_point(point_id)?;
    let p = &inst.points[point_id];
    Ok(Signature(
        inst.ranges
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains(p))
            .map(|(i, _)| i)
            .collect(),
    ))
}

/// Ascending ids of the points inside `range_id`.
pub fn points_in(inst: &Instance, range_id: usize) -> Result<Vec<usize>> {
    inst.check_range(range_id)?;
    let r = &inst.ranges[range_id];
    Ok(inst
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| r.contains(p))
        .map(|(i, _)| i)
        .collect())
}

/// Points whose signature is a subset of `deleted`.
pub fn exposed_points(inst: &Instance, deleted: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    if let Some(&bad) = deleted.iter().find(|&&r| r >= inst.ranges.len()) {
        return Err(Error::IndexOutOfBounds {
            kind: "range",
            index: bad,
            len: inst.ranges.len(),
        });
    }
    Ok(inst
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            inst.ranges
                .iter()
                .enumerate()
                .all(|(ri, r)| deleted.contains(&ri) || !r.contains(p))
        })
        .map(|(i, _)| i)
        .collect())
}

/// Signature classes of all points with a non-empty signature, largest first,
/// ties broken by the lexicographically smallest signature.
pub fn group_by_signature(inst: &Instance) -> Vec<Group> {
    inst.containment().groups()
}

/// An instance with some points dropped, plus the map back to original ids.
#[derive(Clone, Debug)]
pub struct Filtered {
    pub instance: Instance,
    /// `original_point_ids[new_id]` is the id in the source instance.
    pub original_point_ids: Vec<usize>,
}

/// Drops every point contained in more than `k` ranges. Ranges and `k` are
/// kept as is.
pub fn filter_uncoverable(inst: &Instance) -> Filtered {
    let cont = inst.containment();
    let original_point_ids: Vec<usize> = (0..inst.m())
        .filter(|&i| cont.signature(i).len() <= inst.k)
        .collect();
    let points = original_point_ids
        .iter()
        .map(|&i| inst.points[i].clone())
        .collect();
    Filtered {
        instance: Instance {
            points,
            ranges: inst.ranges.clone(),
            k: inst.k,
        },
        original_point_ids,
    }
}
