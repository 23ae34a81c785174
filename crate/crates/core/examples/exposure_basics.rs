//! Signatures, groups and exposure on a small rectangle instance.

use std::collections::BTreeSet;

use max_exposure::{
    brute_force_opt, exposed_points, group_by_signature, rat, Instance, Point, Range,
};

fn main() -> max_exposure::Result<()> {
    let inst = Instance::new(
        vec![
            Point::new(rat(1, 5), rat(1, 2)),
            Point::new(rat(9, 20), rat(1, 2)),
            Point::new(rat(7, 10), rat(9, 10)),
            Point::new(rat(9, 10), rat(1, 10)),
        ],
        vec![
            Range::rect(rat(-1, 2), rat(-1, 5), rat(1, 2), rat(4, 5))?,
            Range::rect(rat(2, 5), rat(3, 10), rat(7, 5), rat(13, 10))?,
        ],
        1,
    )?;

    let cont = inst.containment();
    for p in 0..inst.m() {
        println!("point {p}: signature {:?}", cont.signature(p).ids());
    }
    for g in group_by_signature(&inst) {
        println!("group {:?} -> points {:?}", g.signature.ids(), g.point_ids);
    }

    for d in [vec![], vec![0], vec![1], vec![0, 1]] {
        let deleted: BTreeSet<usize> = d.into_iter().collect();
        println!(
            "delete {deleted:?}: exposed {:?}",
            exposed_points(&inst, &deleted)?
        );
    }

    let best = brute_force_opt(&inst)?;
    println!(
        "optimum at k = {}: delete {:?}, expose {}",
        inst.k, best.deleted, best.value
    );
    Ok(())
}
