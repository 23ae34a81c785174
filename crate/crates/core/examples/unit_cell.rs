//! Exact per-budget curve for the unit squares meeting one unit cell.

use max_exposure::cell_dp::{events, solve_cell, CellFrame};
use max_exposure::oracle::brute_force_curve;
use max_exposure::{int, rat, Instance, Point, Range};

fn main() -> max_exposure::Result<()> {
    let inst = Instance::new(
        vec![
            Point::new(rat(1, 4), rat(1, 8)),
            Point::new(rat(1, 2), rat(7, 8)),
            Point::new(rat(3, 4), rat(1, 2)),
            Point::new(rat(1, 8), rat(5, 8)),
            Point::new(rat(7, 8), rat(1, 4)),
        ],
        vec![
            Range::square(rat(-1, 2), rat(-1, 2), int(1))?,
            Range::square(rat(1, 4), rat(-3, 4), int(1))?,
            Range::square(rat(-1, 4), rat(1, 2), int(1))?,
            Range::square(rat(1, 2), rat(1, 4), int(1))?,
        ],
        2,
    )?;
    let frame = CellFrame::unit(int(0), int(0));
    let pts: Vec<usize> = (0..inst.m()).collect();
    let rngs: Vec<usize> = (0..inst.n()).collect();

    for e in events(&frame, &inst, &pts, &rngs)? {
        println!("{e:?}");
    }
    let kmax = inst.n();
    let sol = solve_cell(&frame, &inst, &pts, &rngs, kmax)?;
    for (b, (v, cert)) in sol.local.iter().zip(&sol.certificates).enumerate() {
        println!("budget {b}: {v} exposed by deleting {cert:?}");
    }
    assert_eq!(sol.local, brute_force_curve(&inst, kmax)?);
    Ok(())
}
