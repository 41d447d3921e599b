// The three-player triangle game from end to end: its value table, the
// Shapley value, the integer core and the worst-case fairness against both
// baselines.
//
// ```text
// cargo run --example triangle
// ```

use std::error::Error;
use tufair::exact::{enumerate_covers, extremal_covers, fairness_among, min_entropy_among, Caps};
use tufair::games::{normalize_rationals, shapley_general, shapley_is, Coalition, Game, IsGame};
use tufair::measures::{Distribution, Order};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = IsGame::from_named(&["A", "B", "C"], &[("A", "B", 2), ("A", "C", 4), ("B", "C", 6)])?;
    let table = g.to_explicit()?;
    for s in Coalition::all(3) {
        let members: Vec<&str> = s.members().map(|i| g.player_names()[i].as_str()).collect();
        println!("v({{{}}}) = {}", members.join(","), table.value(s));
    }

    let shapley = shapley_is(&g);
    assert_eq!(shapley, shapley_general(&table)?);
    let shown: Vec<String> = shapley.iter().map(ToString::to_string).collect();
    println!("Shapley value: ({})", shown.join(","));

    let covers = enumerate_covers(&table, Caps::default())?;
    let extremal = extremal_covers(&table, &covers);
    println!("{} integer covers, {} extremal:", covers.len(), extremal.len());
    for x in &extremal {
        println!("  {x}");
    }

    let order = Order::SHANNON;
    let best = min_entropy_among(&covers, order)?;
    let optima: Vec<String> = best.optima.iter().map(ToString::to_string).collect();
    println!("minimum entropy {:.6} at {}", best.entropy, optima.join(" "));

    let uniform = Distribution::uniform(3);
    let marginalist = normalize_rationals(&shapley)?;
    for (name, q) in [("uniform", &uniform), ("Shapley", &marginalist)] {
        let fair = fairness_among(&covers, q, order)?;
        let argmax: Vec<String> = fair.argmax.iter().map(ToString::to_string).collect();
        println!("Fair against {name}: {:.6} at {}", fair.value, argmax.join(" "));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
