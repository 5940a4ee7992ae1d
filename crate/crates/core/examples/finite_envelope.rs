//! Mid-tails of equal-weight sums and the finite-dimension envelope.
//!
//! ```text
//! cargo run --example finite_envelope
//! ```

use rademacher_envelope::binomdist::EqualWeightSum;
use rademacher_envelope::envelope::envelope_mid_tail;
use rademacher_envelope::exactnum::parse_threshold;

fn main() -> rademacher_envelope::Result<()> {
    let ts = ["1", "sqrt(3)", "2"];
    print!("{:>3}", "k");
    for t in ts {
        print!("{t:>12}");
    }
    println!();
    for k in 1..=8 {
        let s = EqualWeightSum::new(k)?;
        print!("{k:>3}");
        for t in ts {
            print!("{:>12}", s.mid_tail(&parse_threshold(t)?).to_string());
        }
        println!();
    }

    println!();
    for (n, t) in [(4, "sqrt(3)"), (5, "2"), (8, "2")] {
        let e = envelope_mid_tail(n, &parse_threshold(t)?)?;
        println!("M_{n}({t}) = {} at k in {:?}", e.value, e.argmax_k);
    }
    Ok(())
}
