//! Exact max-exposure inside one square cell whose ranges are squares of the
//! cell's side.
//!
//! The cell is rescaled to `[0, 1]^2`. A range meeting the left side is
//! Type-0, one meeting only the right side is Type-1. A range crossing the
//! bottom line is anchored there, otherwise to the top line.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Coord, Instance, Point, Range, Rect};
use crate::slab::{self, SlabPiece, SlabPoint, SlabProblem};

pub use crate::slab::{RangeKind, SweepEvent as Event};

/// The cell `C` with its bottom (`anchor0`) and top (`anchor1`) lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFrame {
    pub cell: Rect,
    pub anchor0: Coord,
    pub anchor1: Coord,
}

impl CellFrame {
    pub fn new(cell: Rect) -> Result<Self> {
        if !cell.is_square() {
            return Err(Error::Precondition(format!(
                "cell [{}, {}] x [{}, {}] is not a square",
                cell.x0, cell.x1, cell.y0, cell.y1
            )));
        }
        Ok(CellFrame {
            anchor0: cell.y0.clone(),
            anchor1: cell.y1.clone(),
            cell,
        })
    }

    /// The unit cell with lower-left corner `(x, y)`.
    pub fn unit(x: Coord, y: Coord) -> Self {
        let cell = Rect {
            x1: &x + Coord::one(),
            y1: &y + Coord::one(),
            x0: x,
            y0: y,
        };
        CellFrame::new(cell).expect("unit cell is square")
    }

    pub fn side(&self) -> Coord {
        self.cell.width()
    }

    fn to_local(&self, p: &Point) -> (Coord, Coord) {
        let s = self.side();
        ((&p.x - &self.cell.x0) / &s, (&p.y - &self.cell.y0) / &s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    Bottom,
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedRange {
    pub range_id: usize,
    pub kind: RangeKind,
    pub anchor: Anchor,
    pub x_begin: Coord,
    pub x_end: Coord,
    /// Vertical extent inside the cell between the anchor line and the far
    /// horizontal side, in original units.
    pub anchor_distance: Coord,
}

fn classify_rect(frame: &CellFrame, range_id: usize, r: &Rect) -> Result<ClassifiedRange> {
    let c = &frame.cell;
    if !r.intersects(c) {
        return Err(Error::Precondition(format!(
            "range {range_id} does not meet the cell"
        )));
    }
    let kind = if r.x0 <= c.x0 {
        RangeKind::Type0
    } else {
        RangeKind::Type1
    };
    let (anchor, anchor_distance) = if r.y0 <= c.y0 {
        (Anchor::Bottom, r.y1.clone().min(c.y1.clone()) - &c.y0)
    } else {
        (Anchor::Top, &c.y1 - r.y0.clone().max(c.y0.clone()))
    };
    Ok(ClassifiedRange {
        range_id,
        kind,
        anchor,
        x_begin: r.x0.clone(),
        x_end: r.x1.clone(),
        anchor_distance,
    })
}

fn rect_of(inst: &Instance, id: usize) -> Result<&Rect> {
    let r = inst.ranges.get(id).ok_or(Error::IndexOutOfBounds {
        kind: "range",
        index: id,
        len: inst.n(),
    })?;
    r.as_rect()
        .ok_or_else(|| Error::Unsupported(format!("range {id} is not an axis-aligned rectangle")))
}

/// Classifies ranges that are squares of exactly the cell's side.
pub fn classify(
    frame: &CellFrame,
    inst: &Instance,
    range_ids: &[usize],
) -> Result<Vec<ClassifiedRange>> {
    let side = frame.side();
    range_ids
        .iter()
        .map(|&id| {
            let r = rect_of(inst, id)?;
            if !r.is_square() || r.width() != side {
                return Err(Error::Precondition(format!(
                    "range {id} is not a square of the cell side {side}"
                )));
            }
            classify_rect(frame, id, r)
        })
        .collect()
}

/// Like [`classify`] but accepts any rectangle at least as wide and tall as
/// the cell; such a range still meets a vertical side and a horizontal line
/// of the cell.
pub(crate) fn classify_relaxed(
    frame: &CellFrame,
    inst: &Instance,
    range_ids: &[usize],
) -> Result<Vec<ClassifiedRange>> {
    let side = frame.side();
    range_ids
        .iter()
        .map(|&id| {
            let r = rect_of(inst, id)?;
            if r.width() < side || r.height() < side {
                return Err(Error::Precondition(format!(
                    "range {id} is smaller than the cell side {side}"
                )));
            }
            classify_rect(frame, id, r)
        })
        .collect()
}

fn point_distance(frame: &CellFrame, p: &Point, anchor: Anchor) -> Coord {
    match anchor {
        Anchor::Bottom => &p.y - &frame.anchor0,
        Anchor::Top => &frame.anchor1 - &p.y,
    }
}

/// Whichever of `q` and `p` is strictly closer to the anchor line. `None`
/// stands for the sentinel and loses to any point; ties keep `q`.
pub fn closer<'a>(
    frame: &CellFrame,
    anchor: Anchor,
    q: Option<&'a Point>,
    p: &'a Point,
) -> Option<&'a Point> {
    match q {
        None => Some(p),
        Some(q) if point_distance(frame, p, anchor) < point_distance(frame, q, anchor) => Some(p),
        Some(q) => Some(q),
    }
}

/// `r` if it is anchored to `anchor` and strictly farther from it than `q`,
/// else `q`. `None` stands for the zero-width sentinel.
pub fn farther<'a>(
    anchor: Anchor,
    q: Option<&'a ClassifiedRange>,
    r: &'a ClassifiedRange,
) -> Option<&'a ClassifiedRange> {
    if r.anchor != anchor {
        return q;
    }
    match q {
        None => Some(r),
        Some(q) if r.anchor_distance > q.anchor_distance => Some(r),
        Some(q) => Some(q),
    }
}

/// Exact optimum for every budget `0..=kmax`, with the deletions used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSolution {
    pub local: Vec<usize>,
    pub certificates: Vec<BTreeSet<usize>>,
}

fn build_problem(
    frame: &CellFrame,
    inst: &Instance,
    point_ids: &[usize],
    classified: &[ClassifiedRange],
) -> Result<SlabProblem> {
    let zero = Coord::zero();
    let one = Coord::one();
    let mut points = Vec::with_capacity(point_ids.len());
    for &id in point_ids {
        let p = inst.points.get(id).ok_or(Error::IndexOutOfBounds {
            kind: "point",
            index: id,
            len: inst.m(),
        })?;
        if !frame.cell.contains(p) {
            return Err(Error::Precondition(format!(
                "point {id} at {p} lies outside the cell"
            )));
        }
        let (x, y) = frame.to_local(p);
        points.push(SlabPoint { id, x, y, block: 0 });
    }
    let s = frame.side();
    let local = |v: &Coord, o: &Coord| ((v - o) / &s).max(zero.clone()).min(one.clone());
    let pieces = classified
        .iter()
        .map(|c| {
            let r = inst.ranges[c.range_id]
                .as_rect()
                .expect("classified ranges are rectangles");
            let members = point_ids
                .iter()
                .enumerate()
                .filter(|(_, &pid)| r.contains(&inst.points[pid]))
                .map(|(i, _)| i)
                .collect();
            SlabPiece {
                range_id: c.range_id,
                kind: c.kind,
                block: 0,
                x_lo: local(&r.x0, &frame.cell.x0),
                x_hi: local(&r.x1, &frame.cell.x0),
                y_lo: local(&r.y0, &frame.cell.y0),
                y_hi: local(&r.y1, &frame.cell.y0),
                members,
            }
        })
        .collect();
    Ok(SlabProblem {
        blocks: 1,
        block_height: 1,
        points,
        pieces,
    })
}

/// Points of `point_ids` whose containing ranges among `range_ids` are all in
/// `deleted`.
fn locally_exposed(
    inst: &Instance,
    point_ids: &[usize],
    range_ids: &[usize],
    deleted: &BTreeSet<usize>,
) -> usize {
    point_ids
        .iter()
        .filter(|&&p| {
            range_ids
                .iter()
                .all(|r| deleted.contains(r) || !inst.ranges[*r].contains(&inst.points[p]))
        })
        .count()
}

fn solve_classified(
    frame: &CellFrame,
    inst: &Instance,
    point_ids: &[usize],
    classified: &[ClassifiedRange],
    kmax: usize,
) -> Result<CellSolution> {
    let problem = build_problem(frame, inst, point_ids, classified)?;
    let sol = slab::solve_slab(&problem, kmax)?;
    let range_ids: Vec<usize> = classified.iter().map(|c| c.range_id).collect();
    for (b, cert) in sol.certificates.iter().enumerate() {
        let got = locally_exposed(inst, point_ids, &range_ids, cert);
        if cert.len() > b || got != sol.local[b] {
            return Err(Error::Inconsistent(format!(
                "cell certificate for budget {b} deletes {} ranges and exposes {got}, DP value {}",
                cert.len(),
                sol.local[b]
            )));
        }
    }
    Ok(CellSolution {
        local: sol.local,
        certificates: sol.certificates,
    })
}

/// Solves the cell for every budget up to `kmax`.
///
/// `point_ids` must lie in the closed cell and `range_ids` must be squares of
/// the cell's side meeting the cell.
pub fn solve_cell(
    frame: &CellFrame,
    inst: &Instance,
    point_ids: &[usize],
    range_ids: &[usize],
    kmax: usize,
) -> Result<CellSolution> {
    let classified = classify(frame, inst, range_ids)?;
    solve_classified(frame, inst, point_ids, &classified, kmax)
}

/// [`solve_cell`] for ranges at least as large as the cell.
pub(crate) fn solve_cell_relaxed(
    frame: &CellFrame,
    inst: &Instance,
    point_ids: &[usize],
    range_ids: &[usize],
    kmax: usize,
) -> Result<CellSolution> {
    let classified = classify_relaxed(frame, inst, range_ids)?;
    solve_classified(frame, inst, point_ids, &classified, kmax)
}

/// The sweep order the DP uses for this cell.
pub fn events(
    frame: &CellFrame,
    inst: &Instance,
    point_ids: &[usize],
    range_ids: &[usize],
) -> Result<Vec<Event>> {
    let classified = classify(frame, inst, range_ids)?;
    let problem = build_problem(frame, inst, point_ids, &classified)?;
    Ok(slab::Engine::new(&problem)?.sweep_order())
}

/// Convenience: solve with every point of the instance and every range.
pub fn solve_whole_cell(frame: &CellFrame, inst: &Instance, kmax: usize) -> Result<CellSolution> {
    let points: Vec<usize> = (0..inst.m()).collect();
    let ranges: Vec<usize> = (0..inst.n())
        .filter(|&r| matches!(&inst.ranges[r], Range::Rect(rr) if rr.intersects(&frame.cell)))
        .collect();
    solve_cell(frame, inst, &points, &ranges, kmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::i1;
    use crate::geometry::{int, rat};
    use crate::oracle::brute_force_curve;
    use proptest::prelude::*;

    fn unit() -> CellFrame {
        CellFrame::unit(int(0), int(0))
    }

    fn sq(x: Coord, y: Coord) -> Range {
        Range::square(x, y, int(1)).unwrap()
    }

    #[test]
    fn classify_running_example() {
        let inst = i1(1);
        // R1, R2 of the running example are not unit squares, so use the
        // rectangle classifier directly.
        let c0 = classify_rect(&unit(), 0, inst.ranges[0].as_rect().unwrap()).unwrap();
        assert_eq!(
            (c0.kind, c0.anchor, c0.anchor_distance.clone()),
            (RangeKind::Type0, Anchor::Bottom, rat(4, 5))
        );
        let c1 = classify_rect(&unit(), 1, inst.ranges[1].as_rect().unwrap()).unwrap();
        assert_eq!(
            (c1.kind, c1.anchor, c1.anchor_distance.clone()),
            (RangeKind::Type1, Anchor::Top, rat(7, 10))
        );
    }

    #[test]
    fn full_width_range_is_type0_and_bottom_anchored() {
        let inst = Instance::new(vec![], vec![sq(int(0), int(0))], 0).unwrap();
        let c = classify(&unit(), &inst, &[0]).unwrap();
        assert_eq!((c[0].kind, c[0].anchor), (RangeKind::Type0, Anchor::Bottom));
    }

    #[test]
    fn classify_rejects_bad_ranges() {
        let inst = Instance::new(
            vec![],
            vec![
                sq(int(5), int(5)),
                Range::square(int(0), int(0), int(2)).unwrap(),
            ],
            0,
        )
        .unwrap();
        assert!(classify(&unit(), &inst, &[0]).is_err());
        assert!(classify(&unit(), &inst, &[1]).is_err());
    }

    #[test]
    fn closer_and_farther() {
        let f = unit();
        let a = Point::new(int(0), rat(1, 2));
        let b = Point::new(int(0), rat(1, 4));
        assert_eq!(closer(&f, Anchor::Bottom, None, &a), Some(&a));
        assert_eq!(closer(&f, Anchor::Bottom, Some(&a), &b), Some(&b));
        assert_eq!(closer(&f, Anchor::Top, Some(&a), &b), Some(&a));
        let b2 = Point::new(int(1), rat(1, 2));
        assert_eq!(closer(&f, Anchor::Bottom, Some(&a), &b2), Some(&a));

        let mk = |anchor, d: Coord| ClassifiedRange {
            range_id: 0,
            kind: RangeKind::Type1,
            anchor,
            x_begin: rat(1, 2),
            x_end: rat(3, 2),
            anchor_distance: d,
        };
        let r = mk(Anchor::Bottom, rat(3, 4));
        let q = mk(Anchor::Bottom, rat(1, 2));
        assert_eq!(farther(Anchor::Bottom, None, &r), Some(&r));
        assert_eq!(farther(Anchor::Bottom, Some(&q), &r), Some(&r));
        assert_eq!(farther(Anchor::Bottom, Some(&r), &q), Some(&r));
        let top = mk(Anchor::Top, int(1));
        assert_eq!(farther(Anchor::Bottom, Some(&q), &top), Some(&q));
    }

    #[test]
    fn running_example_curve() {
        // The running example's ranges are not unit squares, but inside the
        // unit cell they behave like them; drive the DP through the relaxed
        // entry with the ranges clipped to unit squares.
        let inst = i1(1);
        let clipped = Instance::new(
            inst.points.clone(),
            vec![sq(rat(-1, 2), rat(-1, 5)), sq(rat(2, 5), rat(3, 10))],
            1,
        )
        .unwrap();
        let sol = solve_cell(&unit(), &clipped, &[0, 1, 2, 3], &[0, 1], 2).unwrap();
        assert_eq!(sol.local, vec![1, 2, 4]);
        let shown = crate::geometry::exposed_points(&clipped, &sol.certificates[1]).unwrap();
        assert_eq!(shown.len(), 2);
    }

    #[test]
    fn no_ranges_exposes_everything() {
        let pts = vec![Point::new(rat(1, 3), rat(1, 3)), Point::new(int(1), int(1))];
        let inst = Instance::new(pts, vec![], 0).unwrap();
        assert_eq!(
            solve_cell(&unit(), &inst, &[0, 1], &[], 3).unwrap().local,
            vec![2; 4]
        );
    }

    #[test]
    fn one_type0_range_over_all_points() {
        let pts = (1..=3).map(|i| Point::new(rat(i, 8), rat(i, 4))).collect();
        let inst = Instance::new(pts, vec![sq(rat(-1, 2), int(0))], 0).unwrap();
        assert_eq!(
            solve_cell(&unit(), &inst, &[0, 1, 2], &[0], 2)
                .unwrap()
                .local,
            vec![0, 3, 3]
        );
    }

    #[test]
    fn begin_precedes_point_at_equal_x() {
        let pts = vec![Point::new(rat(1, 2), rat(1, 2))];
        let inst = Instance::new(pts, vec![sq(rat(1, 2), int(0))], 0).unwrap();
        assert_eq!(
            events(&unit(), &inst, &[0], &[0]).unwrap(),
            vec![Event::Begin(0), Event::Point(0)]
        );
        assert_eq!(
            solve_cell(&unit(), &inst, &[0], &[0], 1).unwrap().local,
            vec![0, 1]
        );
    }

    #[test]
    fn points_outside_cell_are_rejected() {
        let inst = Instance::new(vec![Point::new(int(2), int(0))], vec![], 0).unwrap();
        assert!(matches!(
            solve_cell(&unit(), &inst, &[0], &[], 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn coincident_heights_keep_exactness() {
        // Two points at the same height in different ranges; the incumbent
        // tie rule must not lose track of which Type-0 range was paid.
        let pts = vec![
            Point::new(rat(1, 8), rat(1, 2)),
            Point::new(rat(7, 8), rat(1, 2)),
            Point::new(rat(1, 2), rat(1, 2)),
        ];
        let ranges = vec![
            sq(rat(-3, 4), rat(-1, 4)),
            sq(rat(-1, 2), rat(-1, 4)),
            sq(rat(3, 4), rat(-1, 2)),
            sq(rat(1, 4), rat(1, 2)),
        ];
        let inst = Instance::new(pts, ranges, 0).unwrap();
        let sol = solve_cell(&unit(), &inst, &[0, 1, 2], &[0, 1, 2, 3], 4).unwrap();
        assert_eq!(
            sol.local,
            brute_force_curve(&inst.with_k(4).unwrap(), 4).unwrap()
        );
    }

    /// A unit cell instance on an 8x8 lattice.
    fn cell_instance() -> impl Strategy<Value = Instance> {
        let p = (0i64..=8, 0i64..=8);
        let r = (-8i64..=8, -8i64..=8);
        (
            proptest::collection::vec(p, 0..=9),
            proptest::collection::vec(r, 0..=7),
        )
            .prop_map(|(ps, rs)| {
                let points = ps
                    .into_iter()
                    .map(|(x, y)| Point::new(rat(x, 8), rat(y, 8)))
                    .collect();
                let ranges = rs
                    .into_iter()
                    .map(|(x, y)| sq(rat(x, 8), rat(y, 8)))
                    .collect();
                Instance::new(points, ranges, 0).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn matches_brute_force(inst in cell_instance()) {
            let kmax = inst.n().min(4);
            let sol = solve_whole_cell(&unit(), &inst, kmax).unwrap();
            let curve = brute_force_curve(&inst.with_k(kmax).unwrap(), kmax).unwrap();
            prop_assert_eq!(&sol.local, &curve);
        }

        #[test]
        fn local_is_monotone_and_full_budget_exposes_all(inst in cell_instance()) {
            let n = inst.n();
            let sol = solve_whole_cell(&unit(), &inst, n).unwrap();
            prop_assert!(sol.local.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(sol.local[n], inst.m());
        }

        #[test]
        fn single_type_instances(inst in cell_instance(), left in any::<bool>()) {
            // Keep only one range type: the DP then reduces to one of the
            // two single-type sweeps.
            let keep: Vec<Range> = inst
                .ranges
                .iter()
                .filter(|r| (r.as_rect().unwrap().x0 <= int(0)) == left)
                .cloned()
                .collect();
            let inst = Instance::new(inst.points.clone(), keep, 0).unwrap();
            let kmax = inst.n().min(4);
            let sol = solve_whole_cell(&unit(), &inst, kmax).unwrap();
            prop_assert_eq!(sol.local, brute_force_curve(&inst.with_k(kmax).unwrap(), kmax).unwrap());
        }

        #[test]
        fn translated_cells_agree(inst in cell_instance(), dx in -5i64..5, dy in -5i64..5) {
            let shift = |p: &Point| Point::new(&p.x + int(dx), &p.y + int(dy));
            let moved = Instance::new(
                inst.points.iter().map(shift).collect(),
                inst.ranges.iter().map(|r| {
                    let r = r.as_rect().unwrap();
                    sq(&r.x0 + int(dx), &r.y0 + int(dy))
                }).collect(),
                0,
            ).unwrap();
            let kmax = inst.n().min(3);
            let a = solve_whole_cell(&unit(), &inst, kmax).unwrap();
            let b = solve_whole_cell(&CellFrame::unit(int(dx), int(dy)), &moved, kmax).unwrap();
            prop_assert_eq!(a.local, b.local);
        }
    }
}
