//! Per-cell knapsack over unit squares: the budget-4k bound against the optimum.

use max_exposure::{brute_force_opt, dp_approx, gen_random, RandomConfig};

fn main() -> max_exposure::Result<()> {
    for seed in 0..5 {
        let cfg = RandomConfig {
            n_ranges: 8,
            n_points: 16,
            k: 1,
            span: 5,
            resolution: 4,
            seed,
            ..RandomConfig::default()
        };
        let inst = gen_random(&cfg)?;
        let opt = brute_force_opt(&inst)?.value;
        let at_k = dp_approx(&inst, inst.k)?;
        let at_4k = dp_approx(&inst, 4 * inst.k)?;
        println!(
            "seed {seed}: opt(k) = {opt}, approx(k) = {}, approx(4k) = {} using {} deletions",
            at_k.value,
            at_4k.value,
            at_4k.deleted.len()
        );
    }
    Ok(())
}
