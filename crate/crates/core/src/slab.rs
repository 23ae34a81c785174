//! The sweep-line dynamic program over a slab of stacked unit cells.
//!
//! A slab is `blocks` columns of `block_height` unit cells each, stacked
//! vertically so all x-coordinates lie in `[0, 1]`. Integer lines
//! `y = 0, 1, .., blocks * block_height` are the anchor lines. A single unit
//! cell is the slab with one block of height one.
//!
//! Ranges arrive as *pieces*: a Type-0 piece spans `[0, end]` horizontally, a
//! Type-1 piece spans `[begin, 1]`, and every piece crosses or touches an
//! anchor line. Each anchor line has two slots, one per side. The DP state
//! remembers, per slot, the closest exposed point and the farthest kept
//! Type-1 piece. From those the forbidden points and the already-paid
//! Type-0 ranges are recovered exactly.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::Coord;

const NONE: u32 = u32::MAX;

/// Which vertical side of the cell a range piece is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RangeKind {
    /// Touches the left edge `x = 0`; swept as "already started".
    Type0,
    /// Touches the right edge `x = 1` but not the left; starts at an event.
    Type1,
}

#[derive(Clone, Debug)]
pub struct SlabPoint {
    /// Caller-side id, reported back in solutions.
    pub id: usize,
    pub x: Coord,
    pub y: Coord,
    pub block: usize,
}

#[derive(Clone, Debug)]
pub struct SlabPiece {
    pub range_id: usize,
    pub kind: RangeKind,
    pub block: usize,
    pub x_lo: Coord,
    pub x_hi: Coord,
    pub y_lo: Coord,
    pub y_hi: Coord,
    /// Indices into [`SlabProblem::points`] of the points inside this piece.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SlabProblem {
    pub blocks: usize,
    pub block_height: usize,
    pub points: Vec<SlabPoint>,
    pub pieces: Vec<SlabPiece>,
}

/// Exact optima for every budget `0..=kmax` with certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlabSolution {
    pub local: Vec<usize>,
    /// Range ids charged by the DP for each budget.
    pub certificates: Vec<BTreeSet<usize>>,
    /// Point ids the DP chose to expose for each budget.
    pub exposed: Vec<BTreeSet<usize>>,
}

/// One step of the sweep, identified by caller-side ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepEvent {
    Point(usize),
    /// Start of the Type-1 piece of this range.
    Begin(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ev {
    Point(usize),
    Begin(usize),
}

/// Two slots per anchor line: `2j` above, `2j + 1` below.
fn slot(line: usize, below: bool) -> usize {
    2 * line + usize::from(below)
}

fn to_usize(c: &Coord) -> Result<usize> {
    c.to_integer()
        .to_usize()
        .ok_or_else(|| Error::Precondition(format!("coordinate {c} is not a valid line index")))
}

fn ceil(c: &Coord) -> Coord {
    c.ceil()
}

struct Node {
    same: u32,
    updated: u32,
    cost: u32,
    blocked: bool,
}

pub(crate) struct Engine {
    point_ids: Vec<usize>,
    pub(crate) events: Vec<Ev>,
    event_x: Vec<u32>,
    n_slots: usize,
    point_rank: Vec<Vec<u32>>,
    point_slots: Vec<Vec<(usize, u32)>>,
    piece_rank: Vec<Vec<u32>>,
    piece_slots: Vec<Vec<(usize, u32)>>,
    members: Vec<FixedBitSet>,
    piece_end: Vec<u32>,
    piece_range: Vec<usize>,
    point_type0: Vec<Vec<usize>>,
    twin: Vec<Option<usize>>,
}

fn rank_map(values: impl IntoIterator<Item = Coord>) -> BTreeMap<Coord, u32> {
    let set: BTreeSet<Coord> = values.into_iter().collect();
    set.into_iter()
        .enumerate()
        .map(|(i, c)| (c, i as u32))
        .collect()
}

impl Engine {
    pub(crate) fn new(problem: &SlabProblem) -> Result<Self> {
        let bh = problem.block_height;
        if problem.blocks == 0 || bh == 0 {
            return Err(Error::Precondition("slab needs at least one cell".into()));
        }
        let lines = problem.blocks * bh;
        let n_slots = 2 * (lines + 1);
        let zero = Coord::zero();
        let one = Coord::one();
        let block_lo = |b: usize| Coord::from_integer((b * bh).into());
        let block_hi = |b: usize| Coord::from_integer(((b + 1) * bh).into());

        for p in &problem.points {
            if p.block >= problem.blocks
                || p.x < zero
                || p.x > one
                || p.y < block_lo(p.block)
                || p.y > block_hi(p.block)
            {
                return Err(Error::Precondition(format!(
                    "point {} at ({}, {}) lies outside its cell block {}",
                    p.id, p.x, p.y, p.block
                )));
            }
        }

        // Pieces that contain no point can neither gain nor forbid anything.
        let pieces: Vec<&SlabPiece> = problem
            .pieces
            .iter()
            .filter(|p| !p.members.is_empty())
            .collect();

        let mut by_range: HashMap<(usize, RangeKind), usize> = HashMap::new();
        for (i, pc) in pieces.iter().enumerate() {
            if pc.block >= problem.blocks {
                return Err(Error::Precondition(format!(
                    "piece of range {} has no block",
                    pc.range_id
                )));
            }
            let ok_x = match pc.kind {
                RangeKind::Type0 => pc.x_lo == zero && pc.x_hi <= one,
                RangeKind::Type1 => pc.x_hi == one && pc.x_lo >= zero,
            };
            if !ok_x || pc.x_lo > pc.x_hi {
                return Err(Error::Precondition(format!(
                    "piece of range {} spans [{}, {}], not attached to its {:?} edge",
                    pc.range_id, pc.x_lo, pc.x_hi, pc.kind
                )));
            }
            if pc.y_lo > pc.y_hi
                || &pc.y_hi - &pc.y_lo > one
                || pc.y_lo < block_lo(pc.block)
                || pc.y_hi > block_hi(pc.block)
            {
                return Err(Error::Precondition(format!(
                    "piece of range {} has vertical extent [{}, {}] outside its block",
                    pc.range_id, pc.y_lo, pc.y_hi
                )));
            }
            for &m in &pc.members {
                if m >= problem.points.len() || problem.points[m].block != pc.block {
                    return Err(Error::Precondition(format!(
                        "piece of range {} lists a member from another block",
                        pc.range_id
                    )));
                }
            }
            if by_range.insert((pc.range_id, pc.kind), i).is_some() {
                return Err(Error::Precondition(format!(
                    "range {} has two {:?} pieces",
                    pc.range_id, pc.kind
                )));
            }
        }

        let twin: Vec<Option<usize>> = pieces
            .iter()
            .map(|pc| match pc.kind {
                RangeKind::Type1 => by_range.get(&(pc.range_id, RangeKind::Type0)).copied(),
                RangeKind::Type0 => None,
            })
            .collect();
        for (i, t) in twin.iter().enumerate() {
            if let Some(t) = *t {
                if pieces[i].x_lo != pieces[t].x_hi {
                    return Err(Error::Precondition(format!(
                        "range {} begins as Type-1 at {} but ends as Type-0 at {}",
                        pieces[i].range_id, pieces[i].x_lo, pieces[t].x_hi
                    )));
                }
            }
        }

        // Slot geometry. Slot `2j` (above line j) belongs to the block whose
        // bottom cell row starts at j, slot `2j + 1` to the block below j.
        let slot_owner = |line: usize, below: bool, block: usize| -> bool {
            let lo = block * bh;
            let hi = (block + 1) * bh;
            if below {
                line > lo && line <= hi
            } else {
                line >= lo && line < hi
            }
        };

        let mut point_slot_dist: Vec<Vec<(usize, Coord)>> = Vec::new();
        for p in &problem.points {
            let mut slots = Vec::new();
            for line in p.block * bh..=(p.block + 1) * bh {
                let l = Coord::from_integer(line.into());
                if slot_owner(line, false, p.block) && p.y >= l && &p.y - &l <= one {
                    slots.push((slot(line, false), &p.y - &l));
                }
                if slot_owner(line, true, p.block) && p.y <= l && &l - &p.y <= one {
                    slots.push((slot(line, true), &l - &p.y));
                }
            }
            point_slot_dist.push(slots);
        }

        let mut piece_slot_ext: Vec<Vec<(usize, Coord)>> = Vec::new();
        for pc in &pieces {
            let anchor = ceil(&pc.y_lo);
            if anchor > pc.y_hi {
                return Err(Error::Precondition(format!(
                    "piece of range {} meets no anchor line",
                    pc.range_id
                )));
            }
            let line = to_usize(&anchor)?;
            let mut slots = Vec::new();
            if slot_owner(line, false, pc.block) {
                slots.push((slot(line, false), &pc.y_hi - &anchor));
            }
            if slot_owner(line, true, pc.block) {
                slots.push((slot(line, true), &anchor - &pc.y_lo));
            }
            piece_slot_ext.push(slots);
        }

        let dist_rank = rank_map(point_slot_dist.iter().flatten().map(|(_, d)| d.clone()));
        let ext_rank = rank_map(piece_slot_ext.iter().flatten().map(|(_, d)| d.clone()));

        let mut point_rank = vec![vec![NONE; n_slots]; problem.points.len()];
        let point_slots: Vec<Vec<(usize, u32)>> = point_slot_dist
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.iter()
                    .map(|(s, d)| {
                        let r = dist_rank[d];
                        point_rank[i][*s] = r;
                        (*s, r)
                    })
                    .collect()
            })
            .collect();
        let mut piece_rank = vec![vec![NONE; n_slots]; pieces.len()];
        let piece_slots: Vec<Vec<(usize, u32)>> = piece_slot_ext
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.iter()
                    .map(|(s, d)| {
                        let r = ext_rank[d];
                        piece_rank[i][*s] = r;
                        (*s, r)
                    })
                    .collect()
            })
            .collect();

        let x_rank = rank_map(
            problem
                .points
                .iter()
                .map(|p| p.x.clone())
                .chain(pieces.iter().flat_map(|p| [p.x_lo.clone(), p.x_hi.clone()])),
        );

        let mut members = Vec::with_capacity(pieces.len());
        let mut point_type0 = vec![Vec::new(); problem.points.len()];
        for (i, pc) in pieces.iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(problem.points.len());
            for &m in &pc.members {
                bits.insert(m);
                if pc.kind == RangeKind::Type0 {
                    point_type0[m].push(i);
                }
            }
            members.push(bits);
        }

        // Sweep order: by x; at equal x, right columns first so a Type-0
        // piece finishes before its Type-1 twin starts; within a column,
        // range starts before points.
        let mut keyed: Vec<((u32, Reverse<usize>, u8, usize), Ev)> = Vec::new();
        for (i, p) in problem.points.iter().enumerate() {
            keyed.push(((x_rank[&p.x], Reverse(p.block), 1, i), Ev::Point(i)));
        }
        for (i, pc) in pieces.iter().enumerate() {
            if pc.kind == RangeKind::Type1 {
                keyed.push(((x_rank[&pc.x_lo], Reverse(pc.block), 0, i), Ev::Begin(i)));
            }
        }
        keyed.sort_by_key(|a| a.0);
        let event_x = keyed.iter().map(|(k, _)| k.0).collect();
        let events = keyed.into_iter().map(|(_, e)| e).collect();

        Ok(Engine {
            point_ids: problem.points.iter().map(|p| p.id).collect(),
            events,
            event_x,
            n_slots,
            point_rank,
            point_slots,
            piece_rank,
            piece_slots,
            members,
            piece_end: pieces.iter().map(|p| x_rank[&p.x_hi]).collect(),
            piece_range: pieces.iter().map(|p| p.range_id).collect(),
            point_type0,
            twin,
        })
    }

    /// Events in sweep order with caller-side ids.
    pub(crate) fn sweep_order(&self) -> Vec<SweepEvent> {
        self.events
            .iter()
            .map(|e| match *e {
                Ev::Point(p) => SweepEvent::Point(self.point_ids[p]),
                Ev::Begin(t) => SweepEvent::Begin(self.piece_range[t]),
            })
            .collect()
    }

    fn initial(&self) -> Box<[u32]> {
        vec![NONE; 2 * self.n_slots].into_boxed_slice()
    }

    /// `p` lies in a remembered kept Type-1 piece.
    pub(crate) fn forbidden(&self, state: &[u32], p: usize) -> bool {
        state[self.n_slots..]
            .iter()
            .any(|&q| q != NONE && self.members[q as usize].contains(p))
    }

    /// Type-0 piece `t` is active at event `ev` and contains a remembered
    /// exposed point, so its range has already been paid for.
    pub(crate) fn already_deleted(&self, state: &[u32], t: usize, ev: usize) -> bool {
        self.piece_end[t] >= self.event_x[ev]
            && state[..self.n_slots]
                .iter()
                .any(|&q| q != NONE && self.members[t].contains(q as usize))
    }

    /// Type-0 ranges that must be newly paid for to expose `p`.
    pub(crate) fn charge(&self, state: &[u32], p: usize, ev: usize) -> Vec<usize> {
        self.point_type0[p]
            .iter()
            .filter(|&&t| !self.already_deleted(state, t, ev))
            .copied()
            .collect()
    }

    fn closer(&self, state: &[u32], p: usize) -> Box<[u32]> {
        let mut next: Box<[u32]> = state.into();
        for &(s, r) in &self.point_slots[p] {
            let cur = next[s];
            if cur == NONE || r < self.point_rank[cur as usize][s] {
                next[s] = p as u32;
            }
        }
        next
    }

    fn farther(&self, state: &[u32], t: usize) -> Box<[u32]> {
        let mut next: Box<[u32]> = state.into();
        for &(s, r) in &self.piece_slots[t] {
            let idx = self.n_slots + s;
            let cur = next[idx];
            if cur == NONE || r > self.piece_rank[cur as usize][s] {
                next[idx] = t as u32;
            }
        }
        next
    }

    pub(crate) fn solve(&self, kmax: usize) -> SlabSolution {
        let width = kmax + 1;
        let n_events = self.events.len();

        // Forward pass: reachable states per layer.
        let mut keys: Vec<Vec<Box<[u32]>>> = vec![vec![self.initial()]];
        let mut nodes: Vec<Vec<Node>> = Vec::with_capacity(n_events);
        for (ev, event) in self.events.iter().enumerate() {
            let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
            let mut next_keys: Vec<Box<[u32]>> = Vec::new();
            let mut intern = |k: Box<[u32]>| -> u32 {
                if let Some(&i) = index.get(&k) {
                    return i;
                }
                let i = next_keys.len() as u32;
                next_keys.push(k.clone());
                index.insert(k, i);
                i
            };
            let mut layer = Vec::with_capacity(keys[ev].len());
            for state in &keys[ev] {
                let node = match *event {
                    Ev::Point(p) => {
                        let same = intern(state.clone());
                        if self.forbidden(state, p) {
                            Node {
                                same,
                                updated: NONE,
                                cost: 0,
                                blocked: true,
                            }
                        } else {
                            let cost = self.charge(state, p, ev).len() as u32;
                            let updated = intern(self.closer(state, p));
                            Node {
                                same,
                                updated,
                                cost,
                                blocked: false,
                            }
                        }
                    }
                    Ev::Begin(t) => {
                        let same = intern(state.clone());
                        let updated = intern(self.farther(state, t));
                        let paid =
                            self.twin[t].is_some_and(|tw| self.already_deleted(state, tw, ev));
                        Node {
                            same,
                            updated,
                            cost: 1,
                            blocked: paid,
                        }
                    }
                };
                layer.push(node);
            }
            nodes.push(layer);
            keys.push(next_keys);
        }

        // Backward pass: best[b] = most points exposed with at most b deletions.
        let mut values: Vec<Vec<u32>> = vec![Vec::new(); n_events + 1];
        values[n_events] = vec![0; keys[n_events].len() * width];
        for ev in (0..n_events).rev() {
            let next = &values[ev + 1];
            let mut cur = vec![0u32; nodes[ev].len() * width];
            for (si, node) in nodes[ev].iter().enumerate() {
                let same = &next[node.same as usize * width..][..width];
                let out = &mut cur[si * width..][..width];
                match self.events[ev] {
                    Ev::Point(_) => {
                        out.copy_from_slice(same);
                        if !node.blocked {
                            let upd = &next[node.updated as usize * width..][..width];
                            let c = node.cost as usize;
                            for b in c..width {
                                out[b] = out[b].max(upd[b - c] + 1);
                            }
                        }
                    }
                    Ev::Begin(_) => {
                        let keep = &next[node.updated as usize * width..][..width];
                        for b in 0..width {
                            let drop = if node.blocked {
                                same[b]
                            } else if b >= 1 {
                                same[b - 1]
                            } else {
                                0
                            };
                            out[b] = keep[b].max(drop);
                        }
                    }
                }
            }
            values[ev] = cur;
        }

        let mut local = Vec::with_capacity(width);
        let mut certificates = Vec::with_capacity(width);
        let mut exposed = Vec::with_capacity(width);
        for budget in 0..width {
            let total = values[0][budget];
            let mut b = budget;
            let mut si = 0usize;
            let mut charged = BTreeSet::new();
            let mut shown = BTreeSet::new();
            for ev in 0..n_events {
                let node = &nodes[ev][si];
                let target = values[ev][si * width + b];
                let next = &values[ev + 1];
                match self.events[ev] {
                    Ev::Point(p) => {
                        if next[node.same as usize * width + b] == target {
                            si = node.same as usize;
                        } else {
                            let state = &keys[ev][si];
                            for t in self.charge(state, p, ev) {
                                charged.insert(self.piece_range[t]);
                            }
                            shown.insert(self.point_ids[p]);
                            b -= node.cost as usize;
                            si = node.updated as usize;
                        }
                    }
                    Ev::Begin(t) => {
                        let keep = next[node.updated as usize * width + b];
                        if node.blocked && next[node.same as usize * width + b] == target {
                            si = node.same as usize;
                        } else if keep == target {
                            si = node.updated as usize;
                        } else {
                            charged.insert(self.piece_range[t]);
                            b -= 1;
                            si = node.same as usize;
                        }
                    }
                }
            }
            local.push(total as usize);
            certificates.push(charged);
            exposed.push(shown);
        }
        SlabSolution {
            local,
            certificates,
            exposed,
        }
    }
}

/// Solves a slab for every budget up to `kmax`.
pub fn solve_slab(problem: &SlabProblem, kmax: usize) -> Result<SlabSolution> {
    Ok(Engine::new(problem)?.solve(kmax))
}
