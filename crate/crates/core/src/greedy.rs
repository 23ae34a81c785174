//! Group-based greedy deletion, square covers of fat rectangles, and the
//! smallest-square greedy for square ranges.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;

use crate::cell_dp::{solve_cell_relaxed, CellFrame};
use crate::error::{Error, Result};
use crate::geometry::{filter_uncoverable, int, Coord, Group, Instance, Range, Rect, Solution};

/// Output of the group greedy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicriteriaSolution {
    pub deleted: BTreeSet<usize>,
    pub exposed: BTreeSet<usize>,
    pub value: usize,
    pub alpha: usize,
    pub groups_taken: Vec<Group>,
    /// Points guaranteed by the taken groups plus the free points. `value`
    /// is never below this.
    pub guaranteed: usize,
}

impl BicriteriaSolution {
    pub fn solution(&self) -> Solution {
        Solution {
            deleted: self.deleted.clone(),
            exposed: self.exposed.clone(),
            value: self.value,
        }
    }
}

fn check_alpha(alpha: usize, k: usize) -> Result<()> {
    if alpha == 0 || alpha > k {
        return Err(Error::AlphaOutOfRange { alpha, k });
    }
    Ok(())
}

/// Deletes the ranges of the `alpha` largest signature groups among points
/// in at most `k` ranges.
pub fn greedy_bicriteria(inst: &Instance, alpha: usize) -> Result<BicriteriaSolution> {
    check_alpha(alpha, inst.k)?;
    let filtered = filter_uncoverable(inst);
    let groups_taken: Vec<Group> = filtered
        .instance
        .containment()
        .groups()
        .into_iter()
        .take(alpha)
        .map(|g| Group {
            signature: g.signature,
            point_ids: g
                .point_ids
                .into_iter()
                .map(|i| filtered.original_point_ids[i])
                .collect(),
        })
        .collect();
    let deleted: BTreeSet<usize> = groups_taken
        .iter()
        .flat_map(|g| g.signature.ids().iter().copied())
        .collect();
    let free = inst.containment().free_points().len();
    let guaranteed = free
        + groups_taken
            .iter()
            .map(|g| g.point_ids.len())
            .sum::<usize>();
    let sol = Solution::from_deleted(inst, deleted)?;
    if sol.value < guaranteed {
        return Err(Error::Inconsistent(format!(
            "greedy exposes {} but its groups hold {guaranteed}",
            sol.value
        )));
    }
    Ok(BicriteriaSolution {
        deleted: sol.deleted,
        exposed: sol.exposed,
        value: sol.value,
        alpha,
        groups_taken,
        guaranteed,
    })
}

/// Largest number of ranges containing a single point of the instance.
pub fn max_depth(inst: &Instance) -> usize {
    inst.containment()
        .signatures()
        .iter()
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// An instance of squares covering the ranges of another instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Squarified {
    pub instance: Instance,
    /// `cover[r]` lists the squares whose union is original range `r`.
    pub cover: Vec<Vec<usize>>,
    /// Largest cover size; `multiplier * k` squares replace any `k` ranges.
    pub multiplier: usize,
}

impl Squarified {
    /// Squares covering the given original ranges.
    pub fn cover_set(&self, deleted: &BTreeSet<usize>) -> BTreeSet<usize> {
        deleted
            .iter()
            .flat_map(|&r| self.cover[r].iter().copied())
            .collect()
    }
}

fn ceil_ratio(a: &Coord, b: &Coord) -> usize {
    (a / b)
        .ceil()
        .to_integer()
        .to_usize()
        .expect("square count fits")
}

/// Positions of `count` squares of side `s` along `[lo, hi]`, the last one
/// pulled back so it ends exactly at `hi`.
fn offsets(lo: &Coord, hi: &Coord, s: &Coord) -> Vec<Coord> {
    let count = ceil_ratio(&(hi - lo), s).max(1);
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi - s
            } else {
                lo + int(i as i64) * s
            }
        })
        .collect()
}

fn squarify_with(inst: &Instance, side: impl Fn(&Rect) -> Coord) -> Result<Squarified> {
    let rects = inst
        .rects()
        .ok_or_else(|| Error::Unsupported("squarification needs axis-aligned rectangles".into()))?;
    let mut ranges = Vec::new();
    let mut cover = Vec::with_capacity(rects.len());
    for r in rects {
        let s = side(r);
        let mut ids = Vec::new();
        for y in offsets(&r.y0, &r.y1, &s) {
            for x in offsets(&r.x0, &r.x1, &s) {
                ids.push(ranges.len());
                ranges.push(Range::square(x.clone(), y.clone(), s.clone())?);
            }
        }
        cover.push(ids);
    }
    let multiplier = cover.iter().map(Vec::len).max().unwrap_or(1);
    Ok(Squarified {
        instance: Instance::new(inst.points.clone(), ranges, inst.k)?,
        cover,
        multiplier,
    })
}

/// Covers every rectangle with squares of the smallest side length found in
/// the whole instance.
pub fn squarify_similar_fat(inst: &Instance) -> Result<Squarified> {
    let rects = inst
        .rects()
        .ok_or_else(|| Error::Unsupported("squarification needs axis-aligned rectangles".into()))?;
    let Some(a) = rects.iter().map(|r| r.width().min(r.height())).min() else {
        return squarify_with(inst, |_| int(1));
    };
    squarify_with(inst, |_| a.clone())
}

/// Covers every rectangle with squares of its own shorter side.
pub fn squarify_fat(inst: &Instance) -> Result<Squarified> {
    squarify_with(inst, |r| r.width().min(r.height()))
}

/// Each covered point's smallest containing square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareAssignment {
    pub owner: BTreeMap<usize, usize>,
}

impl SquareAssignment {
    /// Points grouped by owner square, in square order.
    pub fn by_square(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&p, &s) in &self.owner {
            out.entry(s).or_default().push(p);
        }
        out
    }
}

fn squares(inst: &Instance) -> Result<Vec<&Rect>> {
    let rects = inst
        .rects()
        .ok_or_else(|| Error::Unsupported("every range must be a square".into()))?;
    if let Some(i) = rects.iter().position(|r| !r.is_square()) {
        return Err(Error::Unsupported(format!("range {i} is not a square")));
    }
    Ok(rects)
}

fn assign(inst: &Instance, skip_free: bool) -> Result<SquareAssignment> {
    let sq = squares(inst)?;
    let cont = inst.containment();
    let mut owner = BTreeMap::new();
    for p in 0..inst.m() {
        let sig = cont.signature(p).ids();
        // Ties on side go to the smaller id because signatures are sorted.
        let Some(&best) = sig
            .iter()
            .min_by(|&&a, &&b| sq[a].width().cmp(&sq[b].width()))
        else {
            if skip_free {
                continue;
            }
            return Err(Error::Precondition(format!("point {p} lies in no square")));
        };
        owner.insert(p, best);
    }
    let assignment = SquareAssignment { owner };
    // Every range holding a point of a square's group is at least as large
    // as that square and contains one of its corners.
    for (s, pts) in assignment.by_square() {
        let own = sq[s];
        let corners = own.corners();
        for &p in &pts {
            for &r in cont.signature(p).ids() {
                if sq[r].width() < own.width() || !corners.iter().any(|c| sq[r].contains(c)) {
                    return Err(Error::Inconsistent(format!(
                        "range {r} holds point {p} of square {s} but is smaller or misses its corners"
                    )));
                }
            }
        }
    }
    Ok(assignment)
}

/// Assigns every point to its smallest containing square, ties to the
/// smaller range id. Points in no square are an error.
pub fn assign_points_to_squares(inst: &Instance) -> Result<SquareAssignment> {
    assign(inst, false)
}

/// Output of [`greedy_squares`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaresSolution {
    pub deleted: BTreeSet<usize>,
    pub exposed: BTreeSet<usize>,
    pub value: usize,
    pub alpha: usize,
    /// Owner squares whose local solutions were taken, best first.
    pub squares_taken: Vec<usize>,
    /// Free points plus the local optima of the taken squares.
    pub guaranteed: usize,
}

impl SquaresSolution {
    pub fn solution(&self) -> Solution {
        Solution {
            deleted: self.deleted.clone(),
            exposed: self.exposed.clone(),
            value: self.value,
        }
    }
}

/// For each square, exposes as many of its assigned points as possible with
/// `k` deletions; then takes the `alpha` best squares.
pub fn greedy_squares(inst: &Instance, alpha: usize) -> Result<SquaresSolution> {
    check_alpha(alpha, inst.k)?;
    let assignment = assign(inst, true)?;
    let cont = inst.containment();
    let mut local: Vec<(usize, usize, BTreeSet<usize>)> = Vec::new();
    for (s, pts) in assignment.by_square() {
        let frame = CellFrame::new(inst.ranges[s].as_rect().expect("squares checked").clone())?;
        let ranges: BTreeSet<usize> = pts
            .iter()
            .flat_map(|&p| cont.signature(p).ids().iter().copied())
            .collect();
        let ranges: Vec<usize> = ranges.into_iter().collect();
        let sol = solve_cell_relaxed(&frame, inst, &pts, &ranges, inst.k)?;
        let best = sol.local[inst.k];
        local.push((s, best, sol.certificates[inst.k].clone()));
    }
    local.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    local.truncate(alpha);
    let deleted: BTreeSet<usize> = local.iter().flat_map(|l| l.2.iter().copied()).collect();
    let guaranteed = cont.free_points().len() + local.iter().map(|l| l.1).sum::<usize>();
    let sol = Solution::from_deleted(inst, deleted)?;
    if sol.value < guaranteed {
        return Err(Error::Inconsistent(format!(
            "square greedy exposes {} but its squares hold {guaranteed}",
            sol.value
        )));
    }
    Ok(SquaresSolution {
        deleted: sol.deleted,
        exposed: sol.exposed,
        value: sol.value,
        alpha,
        squares_taken: local.iter().map(|l| l.0).collect(),
        guaranteed,
    })
}
