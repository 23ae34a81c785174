//! Exact and approximate solvers for geometric max-exposure.
//!
//! Given points, ranges (rectangles, squares, disks, convex polygons) and a
//! budget `k`, delete `k` ranges so that as many points as possible end up
//! in no remaining range. Coordinates are exact rationals and containment is
//! closed.
//!
//! ```
//! use max_exposure::{brute_force_opt, int, rat, Instance, Point, Range};
//!
//! let inst = Instance::new(
//!     vec![Point::new(rat(1, 2), rat(1, 2)), Point::new(int(3), int(3))],
//!     vec![Range::square(int(0), int(0), int(1)).unwrap()],
//!     1,
//! )
//! .unwrap();
//! assert_eq!(brute_force_opt(&inst).unwrap().value, 2);
//! ```
//!
//! Modules:
//! - [`geometry`]: primitives, exposure and signature groups.
//! - [`oracle`]: brute-force optima and densest-subgraph checks.
//! - [`greedy`]: group greedy, square covers and the smallest-square greedy.
//! - [`cell_dp`]: exact solver for one unit cell.
//! - [`grid`]: per-cell approximation, flattened blocks, shifted grids.
//! - [`generate`], [`io`], [`cli`]: instances, files and the command line.

pub mod cell_dp;
pub mod cli;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod greedy;
pub mod grid;
pub mod io;
pub mod oracle;
pub mod slab;

pub use cell_dp::{solve_cell, CellFrame, CellSolution};
pub use error::{Error, Result};
pub use generate::{
    gen_checkerboard, gen_convex_from_hypergraph, gen_random, Hypergraph, RandomConfig, Shape,
};
pub use geometry::{
    contains, exposed_points, filter_uncoverable, group_by_signature, int, points_in, rat,
    signature_of, Coord, Group, Instance, Point, Range, Rect, Signature, Solution,
};
pub use greedy::{
    assign_points_to_squares, greedy_bicriteria, greedy_squares, squarify_fat,
    squarify_similar_fat, BicriteriaSolution,
};
pub use grid::{
    dp_approx, dp_flattened, flatten, ptas_budget, ptas_points, FlattenedInstance, ShiftedSolution,
};
pub use io::{InstanceFile, ResultRecord};
pub use oracle::{
    brute_force_opt, densest_k_subgraph_bipartite, densest_k_subhypergraph, BipartiteGraph,
};
