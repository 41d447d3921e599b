// Packing constants of optimal covers along a ReverseGreedy run, computed
// exactly by flow, together with their witnessing decompositions.
//
// ```text
// cargo run --example packing
// ```

use std::error::Error;
use tufair::algorithms::{greedy_orientation, impact_matrix, reverse_greedy, z_decomposition};
use tufair::exact::{enumerate_covers, min_entropy_among, min_entropy_orientation, packing_over_covers, Caps};
use tufair::games::IsGame;
use tufair::generate::random_convex_game;
use tufair::measures::Order;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = IsGame::from_named(&["A", "B", "C"], &[("A", "B", 2), ("A", "C", 4), ("B", "C", 6)])?;
    let (rg, trace) = greedy_orientation(&g);
    let a = impact_matrix(&g, &trace)?;
    let best = min_entropy_orientation(&g, Order::SHANNON)?;
    for opt in &best.optima {
        let z = z_decomposition(&g, opt, &rg, &trace)?;
        assert!(z.is_consistent(&a));
        println!(
            "optimal orientation {:?}: stage sums {:?} against increments {:?}",
            opt.heads(),
            z.stage_sums(),
            trace.deltas
        );
    }
    let table = g.to_explicit()?;
    let covers = enumerate_covers(&table, Caps::default())?;
    let optima = min_entropy_among(&covers, Order::SHANNON)?.optima;
    let summary = packing_over_covers(&g, &optima, &trace)?;
    println!("triangle: α = {}, β = {}", summary.alpha, summary.beta);

    for seed in 0..5 {
        let h = random_convex_game(4, 20, seed)?;
        let (_, t) = reverse_greedy(&h);
        let covers = enumerate_covers(&h, Caps::default())?;
        let optima = min_entropy_among(&covers, Order::new(2.0)?)?.optima;
        let s = packing_over_covers(&h, &optima, &t)?;
        println!("convex game {seed}: α = {}, β = {} over {} optimal covers", s.alpha, s.beta, optima.len());
        for (x, p) in &s.per_cover {
            println!("  {x}: α witness {:?}", p.alpha_witness.z);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
