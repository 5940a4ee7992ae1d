//! The same search on 1, 2 and 8 worker threads gives identical results.
//!
//! ```text
//! cargo run --release --example determinism
//! ```

use rademacher_envelope::envelope::universal_envelope;
use rademacher_envelope::exactnum::parse_threshold;
use rademacher_envelope::{with_threads, TruncationPolicy};

fn main() -> rademacher_envelope::Result<()> {
    let t = parse_threshold("sqrt(6)")?;
    let policy = TruncationPolicy::default();
    let runs: Vec<_> = [1, 2, 8]
        .into_iter()
        .map(|n| with_threads(n, || universal_envelope(&t, &policy)))
        .collect::<Result<_, _>>()?;
    for (threads, r) in [1, 2, 8].iter().zip(&runs) {
        println!("{threads} thread(s): {} at k = {:?}", r.value, r.argmax_k);
    }
    println!("identical: {}", runs.windows(2).all(|p| p[0] == p[1]));
    Ok(())
}
