// Rényi entropies and divergences, and the randomized inequality suites
// that check their basic properties.
//
// ```text
// cargo run --example information
// ```

use std::error::Error;
use tufair::bounds::audit_information_lemmas;
use tufair::measures::{nonuniformity, relative_entropy_gibbs, renyi_divergence, renyi_entropy, Distribution, Order};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = Distribution::from_counts(&[2, 0, 10])?;
    let q = Distribution::from_counts(&[3, 4, 5])?;
    let u = Distribution::uniform(3);
    for lambda in [0.5, 1.0, 2.0] {
        let order = Order::new(lambda)?;
        println!(
            "λ={lambda}: H(p) = {:.6}, D(p‖u) = {:.6}, D(p‖q) = {:.6}",
            renyi_entropy(&p, order),
            renyi_divergence(&p, &u, order)?,
            renyi_divergence(&p, &q, order)?
        );
    }
    // zero mass where the reference has none is fine below order 1, infinite above
    let r = Distribution::from_counts(&[1, 1, 0])?;
    println!("D_2(u‖r) = {}", renyi_divergence(&u, &r, Order::new(2.0)?)?);
    println!("D_0.5(u‖r) = {:.6}", renyi_divergence(&u, &r, Order::new(0.5)?)?);
    println!("h_2(p, q) = {:.6}", relative_entropy_gibbs(&p, &q, Order::new(2.0)?)?);
    println!("nonuniformity of q = {:.6}", nonuniformity(&q));

    let report = audit_information_lemmas(7, 200)?;
    for line in &report.lines {
        println!("{:<28} λ={:<4} worst slack {:.3e}", line.check, line.lambda, line.slack);
    }
    assert!(report.all_pass());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
