//! Group greedy on random rectangles, compared with the exact optimum.

use max_exposure::{brute_force_opt, gen_random, greedy_bicriteria, RandomConfig, Shape};

fn main() -> max_exposure::Result<()> {
    let cfg = RandomConfig {
        n_ranges: 8,
        n_points: 14,
        k: 2,
        shape: Shape::Rects { max_aspect: 3 },
        span: 4,
        seed: 17,
        ..RandomConfig::default()
    };
    let inst = gen_random(&cfg)?;
    let opt = brute_force_opt(&inst)?;
    println!("optimum: {} points with {:?}", opt.value, opt.deleted);

    for alpha in 1..=inst.k {
        let s = greedy_bicriteria(&inst, alpha)?;
        let sigs: Vec<_> = s.groups_taken.iter().map(|g| g.signature.ids()).collect();
        println!(
            "alpha {alpha}: {} points, {} ranges deleted (cap {}), groups {:?}",
            s.value,
            s.deleted.len(),
            alpha * inst.k,
            sigs
        );
    }
    Ok(())
}
