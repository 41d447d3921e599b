// ReverseGreedy on a convex game: the stage trace, the impact matrix and
// the agreement with forward greedy on the dual game.
//
// ```text
// cargo run --example reverse_greedy
// ```

use std::error::Error;
use tufair::algorithms::{forward_greedy, impact_matrix, reverse_greedy};
use tufair::games::{check_cover, check_supermodular, dual_game, Coalition, ExplicitGame, Game, IsGame};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = IsGame::from_named(&["A", "B", "C"], &[("A", "B", 2), ("A", "C", 4), ("B", "C", 6)])?;
    let names = g.player_names();
    let (cover, trace) = reverse_greedy(&g);
    for (r, (&i, &d)) in trace.order.iter().zip(&trace.deltas).enumerate() {
        println!("stage {}: {} takes its marginal contribution {d}", r + 1, names[i]);
    }
    println!("cover {cover} (in the core: {})", check_cover(&g, &cover)?.is_cover());

    let a = impact_matrix(&g, &trace)?;
    for (r, row) in a.rows.iter().enumerate() {
        println!("impact at stage {}: {row:?}", r + 1);
    }

    // a convex game that is not an IS game: additive part plus a unanimity bonus
    let bonus = Coalition::from_members([0, 1, 2]);
    let h = ExplicitGame::from_fn(4, |s| {
        let base: i64 = s.members().map(|i| i as i64).sum();
        base + if bonus.is_subset_of(s) { 5 } else { 0 }
    })?;
    assert!(check_supermodular(&h).holds);
    let (x, t) = reverse_greedy(&h);
    let (y, order) = forward_greedy(&dual_game(&h));
    println!("convex game: reverse greedy {x} via {:?}, dual forward greedy {y} via {order:?}", t.order);
    assert_eq!(x, y);
    assert_eq!(t.order, order);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
