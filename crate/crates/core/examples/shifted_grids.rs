//! Both shifted-grid schemes on unit squares.

use max_exposure::{brute_force_opt, gen_random, ptas_budget, ptas_points, rat, RandomConfig};

fn main() -> max_exposure::Result<()> {
    let cfg = RandomConfig {
        n_ranges: 7,
        n_points: 12,
        k: 2,
        span: 4,
        resolution: 4,
        seed: 3,
        ..RandomConfig::default()
    };
    let inst = gen_random(&cfg)?;
    let opt = brute_force_opt(&inst)?.value;
    println!("optimum at k = {}: {opt}", inst.k);

    let b = ptas_budget(&inst, inst.k, &rat(8, 3))?;
    println!(
        "extra budget: h = {}, shift {:?}, budget {}, value {}",
        b.h, b.shift, b.budget, b.solution.value
    );
    let p = ptas_points(&inst, inst.k, &rat(4, 3))?;
    println!(
        "dropped points: h = {}, shift {:?}, budget {}, value {}",
        p.h, p.shift, p.budget, p.solution.value
    );

    match ptas_budget(&inst, inst.k, &rat(1, 2)) {
        Ok(s) => println!("eps 1/2: {}", s.solution.value),
        Err(e) => println!("eps 1/2: {e}"),
    }
    Ok(())
}
