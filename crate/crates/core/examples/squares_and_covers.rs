//! Smallest-square greedy, and square covers of fat rectangles.

use std::collections::BTreeSet;

use max_exposure::{
    assign_points_to_squares, brute_force_opt, exposed_points, gen_random, greedy_squares,
    squarify_fat, Instance, Point, RandomConfig, Shape,
};

fn main() -> max_exposure::Result<()> {
    let squares = gen_random(&RandomConfig {
        n_ranges: 7,
        n_points: 12,
        k: 2,
        shape: Shape::Squares,
        span: 4,
        max_side: 3,
        seed: 5,
        ..RandomConfig::default()
    })?;
    let cont = squares.containment();
    let covered: Vec<Point> = (0..squares.m())
        .filter(|&p| !cont.signature(p).is_empty())
        .map(|p| squares.points[p].clone())
        .collect();
    let owners =
        assign_points_to_squares(&Instance::new(covered, squares.ranges.clone(), squares.k)?)?;
    for (sq, pts) in owners.by_square() {
        println!("square {sq} owns {pts:?}");
    }
    let opt = brute_force_opt(&squares)?.value;
    for alpha in 1..=squares.k {
        let s = greedy_squares(&squares, alpha)?;
        println!(
            "alpha {alpha}: {} of optimum {opt}, squares {:?}",
            s.value, s.squares_taken
        );
    }

    let rects = gen_random(&RandomConfig {
        n_ranges: 4,
        n_points: 10,
        k: 1,
        shape: Shape::Rects { max_aspect: 2 },
        span: 4,
        seed: 6,
        ..RandomConfig::default()
    })?;
    let sq = squarify_fat(&rects)?;
    println!(
        "{} rectangles -> {} squares, multiplier {}",
        rects.n(),
        sq.instance.n(),
        sq.multiplier
    );
    let d: BTreeSet<usize> = [0].into();
    assert_eq!(
        exposed_points(&rects, &d)?,
        exposed_points(&sq.instance, &sq.cover_set(&d))?
    );
    Ok(())
}
