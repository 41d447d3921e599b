// Edge orientations of an IS game: the greedy and biased orientations, and
// the fact that the best orientation is as good as the best cover.
//
// ```text
// cargo run --example orientations
// ```

use std::error::Error;
use tufair::algorithms::{biased_orientation, cover_of_orientation, greedy_orientation, reverse_greedy};
use tufair::exact::{min_entropy_cover, min_entropy_orientation, Caps};
use tufair::games::IsGame;
use tufair::measures::{renyi_entropy, Order};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = IsGame::from_named(
        &["a", "b", "c", "d"],
        &[("a", "b", 3), ("b", "c", 1), ("c", "d", 2), ("a", "c", 2), ("b", "d", 1)],
    )?;
    let (greedy, _) = greedy_orientation(&g);
    let biased = biased_orientation(&g);
    let from_greedy = cover_of_orientation(&g, &greedy)?;
    assert_eq!(from_greedy, reverse_greedy(&g).0);
    println!("vertex weights {:?}", g.vertex_weights());
    println!("greedy heads {:?} give {from_greedy}", greedy.heads());
    println!("biased heads {:?} give {}", biased.heads(), cover_of_orientation(&g, &biased)?);

    let table = g.to_explicit()?;
    for lambda in [0.5, 1.0, 2.0] {
        let order = Order::new(lambda)?;
        let by_orientation = min_entropy_orientation(&g, order)?;
        let by_cover = min_entropy_cover(&table, order, Caps::default())?;
        let h_greedy = renyi_entropy(&from_greedy.distribution()?, order);
        println!(
            "λ={lambda}: best orientation {:.6}, best cover {:.6}, greedy {:.6}",
            by_orientation.entropy, by_cover.entropy, h_greedy
        );
        assert!((by_orientation.entropy - by_cover.entropy).abs() < 1e-9);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
