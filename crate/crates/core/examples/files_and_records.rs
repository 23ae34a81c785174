//! Writes an instance file, solves it through the command-line entry point
//! and checks the resulting record.

use max_exposure::cli::run_with;
use max_exposure::{gen_random, InstanceFile, RandomConfig, ResultRecord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = gen_random(&RandomConfig {
        n_ranges: 10,
        n_points: 12,
        span: 2,
        seed: 9,
        ..RandomConfig::default()
    })?;
    let path = std::env::temp_dir().join("maxexp_example_instance.json");
    InstanceFile::new(inst.clone()).save(&path)?;
    let text = std::fs::read_to_string(&path)?;
    assert_eq!(InstanceFile::from_json(&text)?.to_json()?, text);

    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = [
        "maxexp",
        "solve",
        path.to_str().unwrap(),
        "--algo",
        "dp-approx",
        "--no-timing",
    ];
    let code = run_with(argv, &mut out, &mut err);
    let rec = ResultRecord::from_json(std::str::from_utf8(&out)?)?;
    println!(
        "exit {code}: {} exposed {} of {} points deleting {:?}",
        rec.algorithm,
        rec.value,
        inst.m(),
        rec.deleted
    );
    rec.verify(&inst)?;
    std::fs::remove_file(&path)?;
    Ok(())
}
