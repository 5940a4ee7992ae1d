//! First-order probe of the equalisation step on a few fibers, then a
//! seeded random campaign.
//!
//! ```text
//! cargo run --release --example equalisation_probe
//! ```

use rademacher_envelope::oracle::{equalisation_probe, format_signs, probe_campaign, fiber, ProbeOutcome};
use rademacher_envelope::{Ratio, WeightVector};

fn main() -> rademacher_envelope::Result<()> {
    for (w, x) in [("3/5,4/5", "7/5"), ("1,2,4", "5"), ("1,2", "1"), ("1,1,2,3", "3"), ("2,2", "4")] {
        let w = WeightVector::parse(w)?;
        let x: Ratio = x.parse()?;
        match equalisation_probe(&w, &x)? {
            ProbeOutcome::NotApplicable => println!("w = {w}, x = {x}: not applicable"),
            ProbeOutcome::Probed(p) => {
                let configs: Vec<String> = fiber(&w, &x)?.configs.iter().map(|e| format_signs(e)).collect();
                let c = &p.chosen;
                println!(
                    "w = {w}, x = {x}: fiber {{{}}}; pair ({}, {}) {} upper median {} -> {} (either direction: {})",
                    configs.join(" "),
                    c.i + 1,
                    c.j + 1,
                    c.direction.as_str(),
                    c.upper_median_slope,
                    c.verdict,
                    p.either_direction_holds()
                );
            }
        }
    }

    let report = probe_campaign(2, 8, 500, 2024)?;
    println!(
        "\n{} random instances: {} fail in the reference direction, {} in both directions, {} without bias",
        report.trials,
        report.verdict_failures.len(),
        report.either_direction_failures.len(),
        report.bias_failures.len()
    );
    for i in report.verdict_failures.iter().take(5) {
        println!("  reference direction fails: {i}");
    }
    Ok(())
}
