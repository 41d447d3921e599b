// Worst-case fairness over a grid of Rényi orders, and the decision form
// `Fair ≥ η`.
//
// ```text
// cargo run --example fairness
// ```

use std::error::Error;
use tufair::exact::{decide_fairness, worst_case_fairness, Baseline, Caps};
use tufair::games::IsGame;
use tufair::measures::Order;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = IsGame::from_named(&["A", "B", "C"], &[("A", "B", 2), ("A", "C", 4), ("B", "C", 6)])?;
    let table = g.to_explicit()?;
    let caps = Caps::default();
    for baseline in [Baseline::Uniform, Baseline::Shapley] {
        let q = baseline.resolve(&table)?;
        for lambda in [0.5, 1.0, 2.0, 3.0] {
            let order = Order::new(lambda)?;
            let fair = worst_case_fairness(&table, &q, order, caps)?;
            let argmax: Vec<String> = fair.argmax.iter().map(ToString::to_string).collect();
            println!("{baseline:?} λ={lambda}: {:.6} at {}", fair.value, argmax.join(" "));
        }
    }
    let q = Baseline::Uniform.resolve(&table)?;
    for eta in [0.5, 0.9, 0.95] {
        let yes = decide_fairness(&table, &q, Order::SHANNON, eta, caps)?;
        println!("Fair ≥ {eta}? {}", if yes { "YES" } else { "NO" });
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
