// Seeded random instances, their JSON form, and a full audit of every
// guarantee on each of them.
//
// ```text
// cargo run --example generate
// ```

use std::error::Error;
use tufair::bounds::{audit_is_game, audit_reverse_greedy, AuditReport};
use tufair::exact::Caps;
use tufair::generate::{random_is_game, GeneratorConfig};
use tufair::instance::{parse_instance, serialize_instance, AnyGame};
use tufair::measures::Order;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut report = AuditReport::default();
    for seed in 0..10 {
        let config = GeneratorConfig {
            n: 5,
            edge_prob: 0.5,
            w_max: 3,
            seed,
        };
        let generated = random_is_game(&config)?;
        let text = serialize_instance(&AnyGame::Is(generated.game.clone()), None);
        assert_eq!(parse_instance(&text)?.game, AnyGame::Is(generated.game.clone()));
        if seed == 0 {
            print!("{text}");
        }
        let id = format!("seed {seed}");
        let table = generated.game.to_explicit()?;
        for lambda in [0.5, 1.0, 2.0] {
            let order = Order::new(lambda)?;
            report.extend(audit_is_game(&generated.game, order, Caps::default(), &id)?);
            report.extend(audit_reverse_greedy(&table, order, Caps::default(), &id)?);
        }
    }
    let worst = report
        .lines
        .iter()
        .min_by(|a, b| a.slack.total_cmp(&b.slack))
        .expect("some lines");
    println!(
        "{} inequalities, all hold: {}; tightest is {} on {} (slack {:.6})",
        report.lines.len(),
        report.all_pass(),
        worst.check,
        worst.instance,
        worst.slack
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
