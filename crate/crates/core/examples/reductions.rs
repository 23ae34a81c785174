//! Densest-subgraph instances turned into geometry, and the matching optima.

use max_exposure::generate::{random_bipartite, random_hypergraph};
use max_exposure::{
    brute_force_opt, densest_k_subgraph_bipartite, densest_k_subhypergraph, gen_checkerboard,
    gen_convex_from_hypergraph, rat,
};

fn main() -> max_exposure::Result<()> {
    let g = random_bipartite(4, 3, 0.5, 1)?;
    println!("bipartite edges {:?}", g.edges);
    for k in 0..=g.vertex_count() {
        let inst = gen_checkerboard(&g, &rat(1, 2), k)?;
        println!(
            "k = {k}: thin rectangles {}, densest {}",
            brute_force_opt(&inst)?.value,
            densest_k_subgraph_bipartite(&g, k)?
        );
    }

    let h = random_hypergraph(5, 6, 3, 2)?;
    println!("hyperedges {:?}", h.hyperedges);
    for k in 0..=h.vertex_count {
        let inst = gen_convex_from_hypergraph(&h, k)?;
        println!(
            "k = {k}: polygons {}, densest {}",
            brute_force_opt(&inst)?.value,
            densest_k_subhypergraph(h.vertex_count, &h.hyperedges, k)?
        );
    }
    Ok(())
}
