//! Brute-force laws of arbitrary rational weight vectors, checked against
//! the envelope in the same dimension.
//!
//! ```text
//! cargo run --release --example oracle_check
//! ```

use rademacher_envelope::envelope::envelope_mid_tail;
use rademacher_envelope::exactnum::parse_threshold;
use rademacher_envelope::oracle::enumerate_dist;
use rademacher_envelope::WeightVector;

fn main() -> rademacher_envelope::Result<()> {
    let t = parse_threshold("3/2")?;
    for w in ["3,4", "1,1,1", "1,2,3,4", "5,5,5,1,1", "1/2,1/3,1/5,1/7,1/11,1/13"] {
        let w = WeightVector::parse(w)?;
        let dist = enumerate_dist(&w)?;
        let mid = dist.normalized_mid_tail(&t);
        let env = envelope_mid_tail(w.len() as u32, &t)?;
        println!(
            "w = {:<28} atoms {:>3}  mid-tail {:<8}  envelope {:<6}  {}",
            w.to_string(),
            dist.atoms().len(),
            mid.to_string(),
            env.value.to_string(),
            if mid <= env.value { "ok" } else { "EXCEEDS" }
        );
    }
    Ok(())
}
