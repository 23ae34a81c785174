//! Instance generators: the two hardness constructions and seeded random
//! instances.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{int, orient, rat, Coord, Instance, Point, Range};
use crate::oracle::BipartiteGraph;

/// A hypergraph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertex_count: usize,
    /// Each hyperedge is a sorted, duplicate-free, non-empty vertex list.
    pub hyperedges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = Vec::with_capacity(hyperedges.len());
        for (i, e) in hyperedges.into_iter().enumerate() {
            let set: BTreeSet<usize> = e.into_iter().collect();
            if set.is_empty() {
                return Err(Error::InvalidInstance(format!("hyperedge {i} is empty")));
            }
            if let Some(&v) = set.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::IndexOutOfBounds {
                    kind: "vertex",
                    index: v,
                    len: vertex_count,
                });
            }
            edges.push(set.into_iter().collect());
        }
        Ok(Hypergraph {
            vertex_count,
            hyperedges: edges,
        })
    }

    /// Hyperedges incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.hyperedges.len())
            .filter(|&e| self.hyperedges[e].binary_search(&v).is_ok())
            .collect()
    }
}

/// Thin vertical rectangles for one side of the graph and thin horizontal
/// ones for the other, with one point per edge at the centre of the tiny
/// square where the two rectangles cross.
///
/// Ranges `0..a_count` are the vertical ones, `a_count..` the horizontal
/// ones, so range ids match the vertex numbering of the densest-subgraph
/// oracle.
pub fn gen_checkerboard(g: &BipartiteGraph, eps: &Coord, k: usize) -> Result<Instance> {
    if *eps <= int(0) || *eps >= int(1) {
        return Err(Error::Precondition(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let n = int(g.a_count.max(g.b_count) as i64);
    let mut ranges = Vec::with_capacity(g.vertex_count());
    for i in 0..g.a_count {
        let x = int(i as i64);
        ranges.push(Range::rect(x.clone(), int(0), x + eps, n.clone())?);
    }
    for j in 0..g.b_count {
        let y = int(j as i64);
        ranges.push(Range::rect(int(0), y.clone(), n.clone(), y + eps)?);
    }
    let half = eps / int(2);
    let points = g
        .edges
        .iter()
        .map(|&(i, j)| Point::new(int(i as i64) + &half, int(j as i64) + &half))
        .collect();
    Instance::new(points, ranges, k)
}

/// Rational point on the unit circle in the open first quadrant.
fn circle_point(t: &Coord) -> Point {
    let t2 = t * t;
    let d = int(1) + &t2;
    Point::new((int(1) - &t2) / &d, (t * int(2)) / d)
}

fn ccw_triangle(a: Point, b: Point, c: Point) -> Result<Range> {
    if orient(&a, &b, &c) > int(0) {
        Range::polygon(vec![a, b, c])
    } else {
        Range::polygon(vec![a, c, b])
    }
}

/// One point per hyperedge on the unit circle and one convex polygon per
/// vertex whose corners are the points of its incident hyperedges. A point
/// lies in a polygon iff it is one of its corners, so deleting a vertex set
/// exposes exactly the hyperedges inside it.
///
/// Vertices with fewer than three incident hyperedges get a thin triangle
/// that touches the circle only at the wanted points.
pub fn gen_convex_from_hypergraph(h: &Hypergraph, k: usize) -> Result<Instance> {
    if h.vertex_count == 0 {
        return Err(Error::InvalidInstance("hypergraph has no vertices".into()));
    }
    let m = h.hyperedges.len() as i64;
    let points: Vec<Point> = (0..m).map(|e| circle_point(&rat(e + 1, m + 1))).collect();
    for w in points.windows(3) {
        if orient(&w[0], &w[1], &w[2]) <= int(0) {
            return Err(Error::Inconsistent(
                "circle points are not in convex position".into(),
            ));
        }
    }
    let tenth = rat(1, 10);
    let mut ranges = Vec::with_capacity(h.vertex_count);
    for v in 0..h.vertex_count {
        let corners: Vec<Point> = h
            .incident(v)
            .into_iter()
            .map(|e| points[e].clone())
            .collect();
        let range = match corners.len() {
            0 => Range::polygon(vec![
                Point::new(int(0), int(0)),
                Point::new(rat(1, 100), int(0)),
                Point::new(int(0), rat(1, 100)),
            ])?,
            1 => {
                let p = &corners[0];
                let base = Point::new(&p.x * rat(9, 10), &p.y * rat(9, 10));
                let (px, py) = (-&p.y * &tenth, &p.x * &tenth);
                ccw_triangle(
                    p.clone(),
                    Point::new(&base.x + &px, &base.y + &py),
                    Point::new(&base.x - &px, &base.y - &py),
                )?
            }
            2 => {
                let (p, q) = (&corners[0], &corners[1]);
                let mid = Point::new((&p.x + &q.x) / int(4), (&p.y + &q.y) / int(4));
                ccw_triangle(p.clone(), q.clone(), mid)?
            }
            // Increasing parameter means increasing angle: counter-clockwise.
            _ => Range::polygon(corners)?,
        };
        ranges.push(range);
    }
    Instance::new(points, ranges, k)
}

/// Shape family for [`gen_random`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Translates of the unit square.
    UnitSquares,
    /// Squares with side in `(0, max_side]`.
    Squares,
    /// Rectangles with aspect ratio at most `max_aspect`.
    Rects { max_aspect: u32 },
    /// Disks such that no generated point lies in more than `max_ply` of them.
    Disks { max_ply: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub n_ranges: usize,
    pub n_points: usize,
    pub k: usize,
    pub shape: Shape,
    /// Points lie in `[0, span]^2`.
    pub span: u32,
    /// Coordinates are multiples of `1 / resolution`.
    pub resolution: u32,
    /// Largest side or radius, in coordinate units.
    pub max_side: u32,
    pub seed: u64,
    /// Attempts per disk before giving up.
    pub retry_cap: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            n_ranges: 6,
            n_points: 10,
            k: 2,
            shape: Shape::UnitSquares,
            span: 3,
            resolution: 8,
            max_side: 2,
            seed: 0,
            retry_cap: 1000,
        }
    }
}

/// Deterministic random instance for a seed.
pub fn gen_random(cfg: &RandomConfig) -> Result<Instance> {
    if cfg.resolution == 0 || cfg.max_side == 0 {
        return Err(Error::Precondition(
            "resolution and max_side must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let res = i64::from(cfg.resolution);
    let span = i64::from(cfg.span) * res;
    let max_side = i64::from(cfg.max_side) * res;
    let c = |v: i64| rat(v, res);

    let points: Vec<Point> = (0..cfg.n_points)
        .map(|_| Point::new(c(rng.gen_range(0..=span)), c(rng.gen_range(0..=span))))
        .collect();

    let mut ranges = Vec::with_capacity(cfg.n_ranges);
    let mut depth = vec![0usize; points.len()];
    for _ in 0..cfg.n_ranges {
        let range = match &cfg.shape {
            Shape::UnitSquares => {
                let (x, y) = (rng.gen_range(-res..=span), rng.gen_range(-res..=span));
                Range::square(c(x), c(y), int(1))?
            }
            Shape::Squares => {
                let s = rng.gen_range(1..=max_side);
                let (x, y) = (rng.gen_range(-s..=span), rng.gen_range(-s..=span));
                Range::square(c(x), c(y), c(s))?
            }
            Shape::Rects { max_aspect } => {
                let aspect = i64::from((*max_aspect).max(1));
                let short = rng.gen_range(1..=max_side);
                let long = rng.gen_range(short..=short * aspect);
                let (w, h) = if rng.gen_bool(0.5) {
                    (short, long)
                } else {
                    (long, short)
                };
                let (x, y) = (rng.gen_range(-w..=span), rng.gen_range(-h..=span));
                Range::rect(c(x), c(y), c(x + w), c(y + h))?
            }
            Shape::Disks { max_ply } => {
                let mut attempt = 0;
                loop {
                    attempt += 1;
                    if attempt > cfg.retry_cap {
                        return Err(Error::RetryCapExceeded {
                            attempts: cfg.retry_cap,
                            reason: format!("no disk keeps point depth at most {max_ply}"),
                        });
                    }
                    let r = rng.gen_range(1..=max_side.max(2) / 2);
                    let disk =
                        Range::disk(c(rng.gen_range(0..=span)), c(rng.gen_range(0..=span)), c(r))?;
                    let hits: Vec<usize> = (0..points.len())
                        .filter(|&i| disk.contains(&points[i]))
                        .collect();
                    if hits.iter().all(|&i| depth[i] < *max_ply) {
                        for i in hits {
                            depth[i] += 1;
                        }
                        break disk;
                    }
                }
            }
        };
        ranges.push(range);
    }
    Instance::new(points, ranges, cfg.k)
}

/// Random bipartite graph: each of the `a * b` pairs is an edge with
/// probability `density`.
pub fn random_bipartite(a: usize, b: usize, density: f64, seed: u64) -> Result<BipartiteGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density.clamp(0.0, 1.0)))
        .collect();
    BipartiteGraph::new(a, b, edges)
}

/// Random hypergraph with `edges` hyperedges of size `1..=max_edge_size`.
pub fn random_hypergraph(
    vertices: usize,
    edges: usize,
    max_edge_size: usize,
    seed: u64,
) -> Result<Hypergraph> {
    if vertices == 0 || max_edge_size == 0 {
        return Err(Error::Precondition(
            "need at least one vertex and a positive edge size".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hyperedges = (0..edges)
        .map(|_| {
            let size = rng.gen_range(1..=max_edge_size.min(vertices));
            rand::seq::index::sample(&mut rng, vertices, size).into_vec()
        })
        .collect();
    Hypergraph::new(vertices, hyperedges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::signature_of;
    use crate::oracle::{brute_force_opt, densest_k_subgraph_bipartite, densest_k_subhypergraph};

    #[test]
    fn checkerboard_k22() {
        let g = BipartiteGraph::complete(2, 2);
        let inst = gen_checkerboard(&g, &rat(1, 2), 2).unwrap();
        assert_eq!((inst.n(), inst.m()), (4, 4));
        for p in 0..4 {
            assert_eq!(signature_of(&inst, p).unwrap().len(), 2);
        }
        assert_eq!(brute_force_opt(&inst).unwrap().value, 1);
        assert_eq!(densest_k_subgraph_bipartite(&g, 2).unwrap(), 1);
    }

    #[test]
    fn checkerboard_small_cases() {
        let g = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        assert_eq!(
            brute_force_opt(&gen_checkerboard(&g, &rat(1, 3), 2).unwrap())
                .unwrap()
                .value,
            1
        );
        let empty = BipartiteGraph::new(2, 3, vec![]).unwrap();
        let inst = gen_checkerboard(&empty, &rat(1, 3), 2).unwrap();
        assert_eq!((inst.m(), brute_force_opt(&inst).unwrap().value), (0, 0));
        assert!(gen_checkerboard(&g, &int(1), 1).is_err());
    }

    #[test]
    fn convex_triangle_hypergraph() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        for k in 0..=3 {
            let inst = gen_convex_from_hypergraph(&h, k).unwrap();
            assert_eq!(
                brute_force_opt(&inst).unwrap().value,
                densest_k_subhypergraph(3, &h.hyperedges, k).unwrap()
            );
        }
        let inst = gen_convex_from_hypergraph(&h, 3).unwrap();
        assert_eq!(brute_force_opt(&inst).unwrap().value, 3);
    }

    #[test]
    fn convex_single_edge_over_all_vertices() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let inst = gen_convex_from_hypergraph(&h, 3).unwrap();
        assert_eq!(brute_force_opt(&inst).unwrap().value, 0);
    }

    #[test]
    fn convex_signatures_are_incidences() {
        let h = random_hypergraph(6, 9, 4, 3).unwrap();
        let inst = gen_convex_from_hypergraph(&h, 0).unwrap();
        for (e, edge) in h.hyperedges.iter().enumerate() {
            assert_eq!(signature_of(&inst, e).unwrap().ids(), edge.as_slice());
        }
    }

    #[test]
    fn hypergraph_validation() {
        assert!(Hypergraph::new(2, vec![vec![]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![2]]).is_err());
        assert!(gen_convex_from_hypergraph(&Hypergraph::new(0, vec![]).unwrap(), 0).is_err());
    }

    #[test]
    fn random_is_deterministic_and_shaped() {
        let cfg = RandomConfig {
            seed: 42,
            ..RandomConfig::default()
        };
        assert_eq!(gen_random(&cfg).unwrap(), gen_random(&cfg).unwrap());
        for r in &gen_random(&cfg).unwrap().ranges {
            let r = r.as_rect().unwrap();
            assert_eq!((r.width(), r.height()), (int(1), int(1)));
        }
        let rects = gen_random(&RandomConfig {
            shape: Shape::Rects { max_aspect: 2 },
            n_ranges: 20,
            ..cfg.clone()
        })
        .unwrap();
        for r in &rects.ranges {
            let r = r.as_rect().unwrap();
            let (a, b) = (r.width().min(r.height()), r.width().max(r.height()));
            assert!(b <= a * int(2));
        }
    }

    #[test]
    fn disks_respect_ply() {
        let cfg = RandomConfig {
            shape: Shape::Disks { max_ply: 2 },
            n_ranges: 12,
            n_points: 30,
            k: 2,
            seed: 7,
            ..RandomConfig::default()
        };
        let inst = gen_random(&cfg).unwrap();
        assert!(crate::greedy::max_depth(&inst) <= 2);
        let impossible = RandomConfig {
            shape: Shape::Disks { max_ply: 0 },
            n_points: 200,
            span: 1,
            retry_cap: 20,
            ..cfg
        };
        assert!(matches!(
            gen_random(&impossible),
            Err(Error::RetryCapExceeded { .. })
        ));
    }
}
