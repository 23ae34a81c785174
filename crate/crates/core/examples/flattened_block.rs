//! A 2x2 block cut into columns and stacked, then solved exactly.

use max_exposure::oracle::brute_force_curve;
use max_exposure::{dp_flattened, flatten, int, rat, Instance, Point, Range};

fn main() -> max_exposure::Result<()> {
    let inst = Instance::new(
        vec![
            Point::new(rat(3, 4), rat(1, 2)),
            Point::new(rat(5, 4), rat(1, 2)),
            Point::new(rat(7, 4), rat(7, 4)),
            Point::new(rat(1, 4), rat(3, 2)),
        ],
        vec![
            Range::square(rat(1, 2), rat(1, 4), int(1))?,
            Range::square(int(0), int(1), int(1))?,
            Range::square(rat(3, 2), rat(3, 2), int(1))?,
        ],
        2,
    )?;
    let flat = flatten(&inst, 2, (int(0), int(0)))?;
    for p in &flat.points {
        println!("point {} -> ({}, {}) in column {}", p.id, p.x, p.y, p.block);
    }
    for c in &flat.components {
        println!(
            "range {} {:?}: x [{}, {}] y [{}, {}] members {:?}",
            c.range_id, c.kind, c.x_lo, c.x_hi, c.y_lo, c.y_hi, c.members
        );
    }
    let sol = dp_flattened(&flat, inst.n())?;
    println!("curve {:?}", sol.local);
    assert_eq!(sol.local, brute_force_curve(&inst, inst.n())?);
    Ok(())
}
