//! Envelope quantiles: the smallest threshold whose worst-case mid-tail is
//! at most alpha, with the values on both sides of the jump.
//!
//! ```text
//! cargo run --release --example quantiles
//! ```

use rademacher_envelope::envelope::quantile_universal;
use rademacher_envelope::{Ratio, TruncationPolicy};

fn main() -> rademacher_envelope::Result<()> {
    let policy = TruncationPolicy::default();
    println!("alpha   t_star    value_at  left_limit  k");
    for (p, q) in [(1, 4), (1, 5), (1, 10), (1, 20), (1, 40)] {
        let alpha = Ratio::new(p, q)?;
        let r = quantile_universal(&alpha, &policy)?;
        println!(
            "{:<7} {:<9} {:<9} {:<11} {}",
            alpha.to_string(),
            r.t_star.to_string(),
            r.value_at.to_string(),
            r.left_limit.to_string(),
            r.witness_k_left
        );
    }
    Ok(())
}
