//! Random weight vectors never beat the equal-weight envelope.
//!
//! ```text
//! cargo run --release --example maximizer_search
//! ```

use rademacher_envelope::exactnum::parse_threshold;
use rademacher_envelope::oracle::random_maximizer_search;

fn main() -> rademacher_envelope::Result<()> {
    for t in ["1", "3/2", "2"] {
        let t = parse_threshold(t)?;
        for n in [3, 6, 9] {
            let r = random_maximizer_search(n, &t, 200, 7)?;
            println!(
                "t = {t:<4} n = {n}: envelope {:<8} best sampled {:<12} from {:?}, violators {}",
                r.envelope.value.to_string(),
                r.best_value.to_string(),
                r.best_weights,
                r.violators.len()
            );
        }
    }
    Ok(())
}
