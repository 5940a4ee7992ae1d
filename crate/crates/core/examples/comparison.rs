//! Universal envelope against the Hoeffding and Gaussian tails, as CSV.
//!
//! ```text
//! cargo run --release --example comparison
//! ```

use rademacher_envelope::statbridge::{comparison_table, default_grid, write_comparison_csv};
use rademacher_envelope::TruncationPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = comparison_table(&default_grid(), &TruncationPolicy::default())?;
    write_comparison_csv(std::io::stdout().lock(), &rows)?;
    for row in &rows {
        if let Some(w) = row.envelope.warning() {
            eprintln!("t = {}: {w}", row.t);
        }
    }
    Ok(())
}
