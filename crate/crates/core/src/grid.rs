//! Grid-based solvers for unit-square ranges: the per-cell 4-approximation,
//! the flattened exact solver for an `h x h` block of cells, and the two
//! shifted-grid approximation schemes built on it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, ToPrimitive, Zero};

use crate::cell_dp::{solve_cell, CellFrame};
use crate::error::{Error, Result};
use crate::geometry::{int, Coord, Instance, Point, Range, Rect, Solution};
use crate::slab::{self, RangeKind, SlabPiece, SlabPoint, SlabProblem, SlabSolution};

/// Default largest `h` accepted by [`dp_flattened`].
pub const DEFAULT_H_CAP: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridCell {
    pub point_ids: Vec<usize>,
    /// Ranges meeting the closed cell.
    pub range_ids: Vec<usize>,
}

/// Points bucketed into half-open grid cells `[a + i s, a + (i+1) s) x [..)`.
/// Only cells holding at least one point are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridDecomposition {
    pub origin: (Coord, Coord),
    pub cell_size: Coord,
    pub cells: BTreeMap<(i64, i64), GridCell>,
}

fn floor_div(v: &Coord, o: &Coord, s: &Coord) -> i64 {
    ((v - o) / s)
        .floor()
        .to_integer()
        .to_i64()
        .expect("cell index fits in i64")
}

impl GridDecomposition {
    pub fn new(inst: &Instance, origin: (Coord, Coord), cell_size: Coord) -> Result<Self> {
        Self::with_points(inst, origin, cell_size, 0..inst.m())
    }

    fn with_points(
        inst: &Instance,
        origin: (Coord, Coord),
        cell_size: Coord,
        point_ids: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if cell_size <= Coord::zero() {
            return Err(Error::Precondition("cell size must be positive".into()));
        }
        let mut cells: BTreeMap<(i64, i64), GridCell> = BTreeMap::new();
        for pid in point_ids {
            let p = &inst.points[pid];
            let key = (
                floor_div(&p.x, &origin.0, &cell_size),
                floor_div(&p.y, &origin.1, &cell_size),
            );
            cells.entry(key).or_default().point_ids.push(pid);
        }
        let mut grid = GridDecomposition {
            origin,
            cell_size,
            cells,
        };
        let rects: Vec<Option<&Rect>> = inst.ranges.iter().map(Range::as_rect).collect();
        let keys: Vec<(i64, i64)> = grid.cells.keys().copied().collect();
        for key in keys {
            let cell = grid.cell_rect(key);
            let ids = rects
                .iter()
                .enumerate()
                .filter(|(_, r)| r.is_some_and(|r| r.intersects(&cell)))
                .map(|(i, _)| i)
                .collect();
            grid.cells.get_mut(&key).expect("key exists").range_ids = ids;
        }
        Ok(grid)
    }

    /// The closed square of cell `(i, j)`.
    pub fn cell_rect(&self, (i, j): (i64, i64)) -> Rect {
        let s = &self.cell_size;
        let x0 = &self.origin.0 + int(i) * s;
        let y0 = &self.origin.1 + int(j) * s;
        Rect {
            x1: &x0 + s,
            y1: &y0 + s,
            x0,
            y0,
        }
    }
}

/// Rescales an instance whose ranges are all translates of one rectangle so
/// that they become unit squares. Containment is unchanged.
pub fn normalize_unit_squares(inst: &Instance) -> Result<Instance> {
    let rects = inst.rects().ok_or_else(|| {
        Error::Unsupported("every range must be an axis-aligned rectangle".into())
    })?;
    let Some(first) = rects.first() else {
        return Ok(inst.clone());
    };
    let (w, h) = (first.width(), first.height());
    if let Some(i) = rects.iter().position(|r| r.width() != w || r.height() != h) {
        return Err(Error::Unsupported(format!(
            "range {i} is not a translate of range 0 ({} x {})",
            w, h
        )));
    }
    let points = inst
        .points
        .iter()
        .map(|p| Point::new(&p.x / &w, &p.y / &h))
        .collect();
    let ranges = rects
        .iter()
        .map(|r| Range::rect(&r.x0 / &w, &r.y0 / &h, &r.x1 / &w, &r.y1 / &h))
        .collect::<Result<_>>()?;
    Instance::new(points, ranges, inst.k)
}

/// Best total over items when item `i` given budget `b` is worth
/// `tables[i][b]`, and the budget each item receives.
fn knapsack(tables: &[Vec<usize>], budget: usize) -> (usize, Vec<usize>) {
    let width = budget + 1;
    let mut best = vec![0usize; width];
    let mut choice: Vec<Vec<usize>> = Vec::with_capacity(tables.len());
    for t in tables {
        let mut next = vec![0usize; width];
        let mut pick = vec![0usize; width];
        for b in 0..width {
            for kb in 0..=b.min(t.len() - 1) {
                let v = best[b - kb] + t[kb];
                if kb == 0 || v > next[b] {
                    next[b] = v;
                    pick[b] = kb;
                }
            }
        }
        best = next;
        choice.push(pick);
    }
    let mut alloc = vec![0; tables.len()];
    let mut b = budget;
    for i in (0..tables.len()).rev() {
        alloc[i] = choice[i][b];
        b -= alloc[i];
    }
    (best[budget], alloc)
}

fn realize(
    inst: &Instance,
    deleted: BTreeSet<usize>,
    predicted: usize,
    budget: usize,
) -> Result<Solution> {
    let sol = Solution::from_deleted(inst, deleted)?;
    if sol.value < predicted || sol.deleted.len() > budget {
        return Err(Error::Inconsistent(format!(
            "combined solution exposes {} with {} deletions, expected at least {predicted} within {budget}",
            sol.value,
            sol.deleted.len()
        )));
    }
    Ok(sol)
}

/// Solves every unit cell exactly for all budgets up to `budget` and combines
/// the cells with a knapsack over the budget.
///
/// All ranges must be translates of one rectangle. With `budget = 4k` the
/// result exposes at least as many points as an optimal `k`-deletion.
pub fn dp_approx(inst: &Instance, budget: usize) -> Result<Solution> {
    let norm = normalize_unit_squares(inst)?;
    let grid = GridDecomposition::new(&norm, (Coord::zero(), Coord::zero()), Coord::one())?;
    let mut tables = Vec::new();
    let mut certs = Vec::new();
    for (&key, cell) in &grid.cells {
        let frame = CellFrame::new(grid.cell_rect(key))?;
        let sol = solve_cell(&frame, &norm, &cell.point_ids, &cell.range_ids, budget)?;
        tables.push(sol.local);
        certs.push(sol.certificates);
    }
    let (predicted, alloc) = knapsack(&tables, budget);
    let deleted = alloc
        .iter()
        .zip(&certs)
        .flat_map(|(&b, c)| c[b].iter().copied())
        .collect();
    realize(inst, deleted, predicted, budget)
}

/// The columns of an `h x h` block of unit cells stacked into one slab of
/// width one. Column `c` is shifted by `(-c, c h)`; a range crossing from
/// column `c` into `c + 1` becomes a Type-1 component in column `c` and a
/// Type-0 component in column `c + 1`.
#[derive(Clone, Debug)]
pub struct FlattenedInstance {
    pub h: usize,
    pub origin: (Coord, Coord),
    /// `id` is the original point id, `block` the column.
    pub points: Vec<SlabPoint>,
    /// `range_id` is the original range id, `block` the column.
    pub components: Vec<SlabPiece>,
}

impl FlattenedInstance {
    pub fn problem(&self) -> SlabProblem {
        SlabProblem {
            blocks: self.h,
            block_height: self.h,
            points: self.points.clone(),
            pieces: self.components.clone(),
        }
    }

    /// The Type-1 and Type-0 components of an original range.
    pub fn components_of(&self, range_id: usize) -> (Option<&SlabPiece>, Option<&SlabPiece>) {
        let find = |kind| {
            self.components
                .iter()
                .find(|c| c.range_id == range_id && c.kind == kind)
        };
        (find(RangeKind::Type1), find(RangeKind::Type0))
    }

    /// Original ids of the points all of whose components lie in deleted
    /// ranges.
    pub fn exposed(&self, deleted: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut blocked = vec![false; self.points.len()];
        for c in &self.components {
            if !deleted.contains(&c.range_id) {
                for &m in &c.members {
                    blocked[m] = true;
                }
            }
        }
        self.points
            .iter()
            .zip(blocked)
            .filter(|(_, b)| !b)
            .map(|(p, _)| p.id)
            .collect()
    }
}

fn unit_square(inst: &Instance, id: usize) -> Result<&Rect> {
    let r = inst.ranges[id]
        .as_rect()
        .ok_or_else(|| Error::Unsupported(format!("range {id} is not a rectangle")))?;
    if r.width() != Coord::one() || r.height() != Coord::one() {
        return Err(Error::Unsupported(format!(
            "range {id} is not a unit square"
        )));
    }
    Ok(r)
}

/// Flattens the `h x h` block with lower-left corner `origin`. Every point
/// must lie in the closed block; ranges must be unit squares.
pub fn flatten(inst: &Instance, h: usize, origin: (Coord, Coord)) -> Result<FlattenedInstance> {
    let side = int(h as i64);
    let block = Rect {
        x1: &origin.0 + &side,
        y1: &origin.1 + &side,
        x0: origin.0.clone(),
        y0: origin.1.clone(),
    };
    let mut ranges = Vec::new();
    for id in 0..inst.n() {
        if unit_square(inst, id)?.intersects(&block) {
            ranges.push(id);
        }
    }
    let points: Vec<usize> = (0..inst.m()).collect();
    flatten_subset(inst, h, origin, &points, &ranges)
}

pub(crate) fn flatten_subset(
    inst: &Instance,
    h: usize,
    origin: (Coord, Coord),
    point_ids: &[usize],
    range_ids: &[usize],
) -> Result<FlattenedInstance> {
    if h == 0 {
        return Err(Error::Precondition("h must be at least 1".into()));
    }
    let zero = Coord::zero();
    let side = int(h as i64);
    let hh = h as i64;
    let mut points = Vec::with_capacity(point_ids.len());
    for &id in point_ids {
        let p = &inst.points[id];
        let (x, y) = (&p.x - &origin.0, &p.y - &origin.1);
        if x < zero || y < zero || x > side || y > side {
            return Err(Error::Precondition(format!(
                "point {id} at {p} lies outside the {h} x {h} block"
            )));
        }
        let col = x.floor().to_integer().to_i64().expect("small").min(hh - 1);
        points.push(SlabPoint {
            id,
            x: &x - int(col),
            y: &y + int(col * hh),
            block: col as usize,
        });
    }

    let mut components = Vec::new();
    for &id in range_ids {
        let r = unit_square(inst, id)?;
        if r.x1 < origin.0
            || r.y1 < origin.1
            || r.x0 > &origin.0 + &side
            || r.y0 > &origin.1 + &side
        {
            continue;
        }
        let clip = |v: Coord| v.max(zero.clone()).min(side.clone());
        let (x0, x1) = (clip(&r.x0 - &origin.0), clip(&r.x1 - &origin.0));
        let (y0, y1) = (clip(&r.y0 - &origin.1), clip(&r.y1 - &origin.1));
        // Columns whose points the range may contain: column c holds
        // x in [c, c + 1), the last column also x = h.
        let mut cols = Vec::new();
        for c in 0..hh {
            let lo = int(c);
            let hi = int(c + 1);
            let last = c == hh - 1;
            if x1 >= lo && (x0 < hi || (last && x0 <= hi)) {
                cols.push(c);
            }
        }
        let n_cols = cols.len();
        for (i, &c) in cols.iter().enumerate() {
            let lo = int(c);
            let x_lo = x0.clone().max(lo.clone()) - &lo;
            let x_hi = x1.clone().min(&lo + Coord::one()) - &lo;
            let kind = if n_cols == 2 {
                if i == 0 {
                    RangeKind::Type1
                } else {
                    RangeKind::Type0
                }
            } else if x_lo.is_zero() {
                RangeKind::Type0
            } else {
                RangeKind::Type1
            };
            let members = points
                .iter()
                .enumerate()
                .filter(|(_, p)| p.block == c as usize && r.contains(&inst.points[p.id]))
                .map(|(i, _)| i)
                .collect();
            let shift = int(c * hh);
            components.push(SlabPiece {
                range_id: id,
                kind,
                block: c as usize,
                x_lo,
                x_hi,
                y_lo: &y0 + &shift,
                y_hi: &y1 + &shift,
                members,
            });
        }
    }
    Ok(FlattenedInstance {
        h,
        origin,
        points,
        components,
    })
}

/// Exact optima of a flattened block for every budget up to `kmax`, with
/// `h` capped at [`DEFAULT_H_CAP`].
pub fn dp_flattened(flat: &FlattenedInstance, kmax: usize) -> Result<SlabSolution> {
    dp_flattened_with_cap(flat, kmax, DEFAULT_H_CAP)
}

pub fn dp_flattened_with_cap(
    flat: &FlattenedInstance,
    kmax: usize,
    cap: usize,
) -> Result<SlabSolution> {
    if flat.h > cap {
        return Err(Error::GridTooLarge { h: flat.h, cap });
    }
    let sol = slab::solve_slab(&flat.problem(), kmax)?;
    for (b, cert) in sol.certificates.iter().enumerate() {
        let got = flat.exposed(cert).len();
        if cert.len() > b || got != sol.local[b] {
            return Err(Error::Inconsistent(format!(
                "flattened certificate for budget {b} deletes {} ranges and exposes {got}, DP value {}",
                cert.len(),
                sol.local[b]
            )));
        }
    }
    Ok(sol)
}

/// Result of a shifted-grid scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSolution {
    pub solution: Solution,
    pub h: usize,
    /// Grid offset `(a, b)` of the winning shift.
    pub shift: (usize, usize),
    /// Deletion budget handed to the knapsack.
    pub budget: usize,
}

fn grid_side(numerator: i64, eps: &Coord) -> Result<usize> {
    if *eps <= Coord::zero() {
        return Err(Error::Precondition(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    (int(numerator) / eps)
        .ceil()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::Precondition(format!("epsilon {eps} is too small")))
}

/// Distance from `v` to the nearest line `o + i h` is below one.
fn near_line(v: &Coord, o: usize, h: usize) -> bool {
    let hc = int(h as i64);
    let u = v - int(o as i64);
    let r = &u - (&u / &hc).floor() * &hc;
    r < Coord::one() || &hc - &r < Coord::one()
}

fn shifted(
    inst: &Instance,
    h: usize,
    budget: usize,
    discard: bool,
    cap: usize,
) -> Result<ShiftedSolution> {
    if h > cap {
        return Err(Error::GridTooLarge { h, cap });
    }
    let norm = normalize_unit_squares(inst)?;
    let size = int(h as i64);
    let mut best: Option<ShiftedSolution> = None;
    for a in 0..h {
        for b in 0..h {
            let kept = (0..norm.m()).filter(|&i| {
                let p = &norm.points[i];
                !discard || !(near_line(&p.x, a, h) || near_line(&p.y, b, h))
            });
            let origin = (int(a as i64), int(b as i64));
            let grid = GridDecomposition::with_points(&norm, origin, size.clone(), kept)?;
            let mut tables = Vec::new();
            let mut certs = Vec::new();
            for (&key, cell) in &grid.cells {
                let rect = grid.cell_rect(key);
                let ranges: Vec<usize> = cell
                    .range_ids
                    .iter()
                    .copied()
                    .filter(|&r| {
                        cell.point_ids
                            .iter()
                            .any(|&p| norm.ranges[r].contains(&norm.points[p]))
                    })
                    .collect();
                let flat = flatten_subset(&norm, h, (rect.x0, rect.y0), &cell.point_ids, &ranges)?;
                let sol = dp_flattened_with_cap(&flat, budget, cap)?;
                tables.push(sol.local);
                certs.push(sol.certificates);
            }
            let (predicted, alloc) = knapsack(&tables, budget);
            let deleted = alloc
                .iter()
                .zip(&certs)
                .flat_map(|(&k, c)| c[k].iter().copied())
                .collect();
            let solution = realize(inst, deleted, predicted, budget)?;
            if best
                .as_ref()
                .is_none_or(|s| solution.value > s.solution.value)
            {
                best = Some(ShiftedSolution {
                    solution,
                    h,
                    shift: (a, b),
                    budget,
                });
            }
        }
    }
    Ok(best.expect("at least one shift"))
}

/// Shifted `h x h` grid with `h = ceil(8 / eps)`, each block solved exactly,
/// combined at budget `floor((1 + eps) k)`. Exposes at least the optimum for
/// `k` deletions.
pub fn ptas_budget(inst: &Instance, k: usize, eps: &Coord) -> Result<ShiftedSolution> {
    ptas_budget_with_cap(inst, k, eps, DEFAULT_H_CAP)
}

pub fn ptas_budget_with_cap(
    inst: &Instance,
    k: usize,
    eps: &Coord,
    cap: usize,
) -> Result<ShiftedSolution> {
    let h = grid_side(8, eps)?;
    let budget = ((Coord::one() + eps) * int(k as i64))
        .floor()
        .to_integer()
        .to_usize()
        .expect("budget fits");
    shifted(inst, h, budget, false, cap)
}

/// Shifted `h x h` grid with `h = ceil(4 / eps)`. Points closer than one to a
/// grid line are ignored while solving; blocks are solved exactly and
/// combined at budget exactly `k`.
pub fn ptas_points(inst: &Instance, k: usize, eps: &Coord) -> Result<ShiftedSolution> {
    ptas_points_with_cap(inst, k, eps, DEFAULT_H_CAP)
}

pub fn ptas_points_with_cap(
    inst: &Instance,
    k: usize,
    eps: &Coord,
    cap: usize,
) -> Result<ShiftedSolution> {
    let h = grid_side(4, eps)?;
    shifted(inst, h, k, true, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;
    use crate::oracle::{brute_force_curve, brute_force_opt};
    use proptest::prelude::*;

    fn sq(x: Coord, y: Coord) -> Range {
        Range::square(x, y, int(1)).unwrap()
    }

    fn pt(x: Coord, y: Coord) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn knapsack_picks_best_split() {
        let (v, alloc) = knapsack(&[vec![0, 1, 1], vec![0, 0, 5], vec![2, 2, 2]], 2);
        assert_eq!((v, alloc), (7, vec![0, 2, 0]));
        assert_eq!(knapsack(&[], 3).0, 0);
    }

    #[test]
    fn normalization_rescales_translates() {
        let inst = Instance::new(
            vec![pt(int(1), int(3))],
            vec![Range::rect(int(0), int(0), int(2), int(4)).unwrap()],
            1,
        )
        .unwrap();
        let n = normalize_unit_squares(&inst).unwrap();
        assert_eq!(n.points[0], pt(rat(1, 2), rat(3, 4)));
        let bad = Instance::new(
            vec![],
            vec![
                sq(int(0), int(0)),
                Range::square(int(0), int(0), int(2)).unwrap(),
            ],
            0,
        )
        .unwrap();
        assert!(matches!(
            normalize_unit_squares(&bad),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn decomposition_is_half_open() {
        let inst = Instance::new(
            vec![pt(int(1), int(0)), pt(rat(1, 2), rat(1, 2))],
            vec![sq(rat(1, 2), int(0))],
            0,
        )
        .unwrap();
        let g = GridDecomposition::new(&inst, (int(0), int(0)), int(1)).unwrap();
        assert_eq!(g.cells[&(0, 0)].point_ids, vec![1]);
        assert_eq!(g.cells[&(1, 0)].point_ids, vec![0]);
        assert_eq!(g.cells[&(1, 0)].range_ids, vec![0]);
    }

    #[test]
    fn dp_approx_single_cell_equals_cell_optimum() {
        let inst = Instance::new(
            vec![
                pt(rat(1, 5), rat(1, 2)),
                pt(rat(9, 20), rat(1, 2)),
                pt(rat(7, 10), rat(9, 10)),
                pt(rat(9, 10), rat(1, 10)),
            ],
            vec![sq(rat(-1, 2), rat(-1, 5)), sq(rat(2, 5), rat(3, 10))],
            1,
        )
        .unwrap();
        assert_eq!(dp_approx(&inst, 1).unwrap().value, 2);
        assert_eq!(dp_approx(&inst, 2).unwrap().value, 4);
        // Large budgets are clipped by the number of ranges.
        assert_eq!(dp_approx(&inst, 4).unwrap().value, 4);
    }

    #[test]
    fn dp_approx_two_far_cells() {
        let inst = Instance::new(
            vec![
                pt(rat(1, 2), rat(1, 2)),
                pt(rat(21, 2), rat(1, 2)),
                pt(int(50), int(50)),
            ],
            vec![sq(rat(1, 4), rat(1, 4)), sq(rat(41, 4), rat(1, 4))],
            1,
        )
        .unwrap();
        let s = dp_approx(&inst, 1).unwrap();
        assert_eq!(s.value, 2);
        assert_eq!(s.deleted.len(), 1);
    }

    #[test]
    fn flatten_transform() {
        let inst = Instance::new(
            vec![pt(rat(3, 2), rat(1, 2))],
            vec![sq(rat(3, 5), rat(3, 5))],
            1,
        )
        .unwrap();
        let flat = flatten(&inst, 2, (int(0), int(0))).unwrap();
        assert_eq!(
            (flat.points[0].x.clone(), flat.points[0].y.clone()),
            (rat(1, 2), rat(5, 2))
        );
        let (t1, t0) = flat.components_of(0);
        let (t1, t0) = (t1.unwrap(), t0.unwrap());
        assert_eq!(
            (
                t1.x_lo.clone(),
                t1.x_hi.clone(),
                t1.y_lo.clone(),
                t1.y_hi.clone()
            ),
            (rat(3, 5), int(1), rat(3, 5), rat(8, 5))
        );
        assert_eq!(
            (
                t0.x_lo.clone(),
                t0.x_hi.clone(),
                t0.y_lo.clone(),
                t0.y_hi.clone()
            ),
            (int(0), rat(3, 5), rat(13, 5), rat(18, 5))
        );
        assert_eq!((t1.block, t0.block), (0, 1));
    }

    #[test]
    fn flatten_keeps_single_column_ranges_whole() {
        let inst =
            Instance::new(vec![], vec![sq(rat(1, 4), int(0)), sq(int(1), int(1))], 0).unwrap();
        let flat = flatten(&inst, 2, (int(0), int(0))).unwrap();
        assert_eq!(
            flat.components.iter().filter(|c| c.range_id == 0).count(),
            2
        );
        let whole: Vec<_> = flat.components.iter().filter(|c| c.range_id == 1).collect();
        assert_eq!(whole.len(), 1);
        assert_eq!(
            (whole[0].kind, whole[0].block, whole[0].y_lo.clone()),
            (RangeKind::Type0, 1, int(3))
        );
    }

    #[test]
    fn flatten_rejects_outside_points() {
        let inst = Instance::new(vec![pt(int(3), int(0))], vec![], 0).unwrap();
        assert!(flatten(&inst, 2, (int(0), int(0))).is_err());
    }

    #[test]
    fn h_one_matches_cell_solver() {
        let inst = Instance::new(
            vec![
                pt(rat(1, 5), rat(1, 2)),
                pt(rat(9, 20), rat(1, 2)),
                pt(rat(7, 10), rat(9, 10)),
                pt(rat(9, 10), rat(1, 10)),
            ],
            vec![sq(rat(-1, 2), rat(-1, 5)), sq(rat(2, 5), rat(3, 10))],
            1,
        )
        .unwrap();
        let flat = flatten(&inst, 1, (int(0), int(0))).unwrap();
        let a = dp_flattened(&flat, 2).unwrap().local;
        let b = crate::cell_dp::solve_whole_cell(&CellFrame::unit(int(0), int(0)), &inst, 2)
            .unwrap()
            .local;
        assert_eq!(a, b);
    }

    #[test]
    fn range_across_columns_is_charged_once() {
        let inst = Instance::new(
            vec![
                pt(rat(3, 4), rat(1, 2)),
                pt(rat(5, 4), rat(1, 2)),
                pt(rat(7, 4), rat(7, 4)),
            ],
            vec![sq(rat(1, 2), rat(1, 4))],
            1,
        )
        .unwrap();
        let flat = flatten(&inst, 2, (int(0), int(0))).unwrap();
        let sol = dp_flattened(&flat, 1).unwrap();
        assert_eq!(sol.local, vec![1, 3]);
        assert_eq!(sol.certificates[1], [0].into_iter().collect());
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::new(vec![], vec![], 0).unwrap();
        let flat = flatten(&inst, 4, (int(0), int(0))).unwrap();
        assert!(matches!(
            dp_flattened(&flat, 0),
            Err(Error::GridTooLarge { h: 4, cap: 3 })
        ));
        let e = ptas_budget(&inst, 0, &int(1)).unwrap_err();
        assert!(e.is_infeasible());
    }

    #[test]
    fn ptas_zero_budget_counts_free_points() {
        let inst = Instance::new(
            vec![pt(rat(1, 2), rat(1, 2)), pt(int(5), int(5))],
            vec![sq(int(0), int(0))],
            0,
        )
        .unwrap();
        let s = ptas_budget(&inst, 0, &int(8)).unwrap();
        assert_eq!((s.solution.value, s.solution.deleted.len(), s.h), (1, 0, 1));
        let s = ptas_points(&inst, 0, &int(2)).unwrap();
        assert_eq!(s.solution.deleted.len(), 0);
        s.solution.validate(&inst).unwrap();
    }

    #[test]
    fn near_line_distance() {
        assert!(near_line(&rat(1, 2), 0, 3));
        assert!(!near_line(&int(1), 0, 3));
        assert!(!near_line(&int(2), 0, 3));
        assert!(near_line(&rat(5, 2), 0, 3));
        assert!(!near_line(&int(-1), 1, 3));
        assert!(near_line(&rat(-3, 2), 1, 3));
    }

    fn block_instance(h: i64, max_pts: usize, max_rngs: usize) -> impl Strategy<Value = Instance> {
        let span = 4 * h;
        (
            proptest::collection::vec((0..=span, 0..=span), 0..=max_pts),
            proptest::collection::vec((-4..=span, -4..=span), 1..=max_rngs),
        )
            .prop_map(|(ps, rs)| {
                Instance::new(
                    ps.into_iter()
                        .map(|(x, y)| pt(rat(x, 4), rat(y, 4)))
                        .collect(),
                    rs.into_iter()
                        .map(|(x, y)| sq(rat(x, 4), rat(y, 4)))
                        .collect(),
                    0,
                )
                .unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn flattened_matches_brute_force(inst in block_instance(2, 7, 5)) {
            let kmax = inst.n().min(3);
            let flat = flatten(&inst, 2, (int(0), int(0))).unwrap();
            let sol = dp_flattened(&flat, kmax).unwrap();
            let curve = brute_force_curve(&inst.with_k(kmax).unwrap(), kmax).unwrap();
            prop_assert_eq!(sol.local, curve);
        }

        #[test]
        fn flattening_preserves_exposure(inst in block_instance(2, 7, 5), mask in 0u32..32) {
            let flat = flatten(&inst, 2, (int(0), int(0))).unwrap();
            let deleted: BTreeSet<usize> = (0..inst.n()).filter(|i| mask >> i & 1 == 1).collect();
            prop_assert_eq!(flat.exposed(&deleted), crate::geometry::exposed_points(&inst, &deleted).unwrap());
        }

        #[test]
        fn split_components_meet(inst in block_instance(3, 0, 6)) {
            let flat = flatten(&inst, 3, (int(0), int(0))).unwrap();
            for r in 0..inst.n() {
                if let (Some(t1), Some(t0)) = flat.components_of(r) {
                    prop_assert_eq!(&t1.x_lo, &t0.x_hi);
                    prop_assert_eq!(t1.block + 1, t0.block);
                }
            }
        }

        #[test]
        fn dp_approx_four_k_dominates(inst in block_instance(3, 8, 5), k in 0usize..=2) {
            let k = k.min(inst.n());
            let opt = brute_force_opt(&inst.with_k(k).unwrap()).unwrap().value;
            let s = dp_approx(&inst, 4 * k).unwrap();
            prop_assert!(s.value >= opt);
            prop_assert!(s.deleted.len() <= 4 * k);
            s.validate(&inst).unwrap();
        }
    }
}
