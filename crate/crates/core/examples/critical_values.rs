//! Nonparametric critical values of the self-normalised sum and the
//! corresponding Student-T thresholds.
//!
//! ```text
//! cargo run --release --example critical_values
//! ```

use rademacher_envelope::statbridge::{critical_table, write_critical_csv};
use rademacher_envelope::Ratio;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ns: Vec<u32> = vec![5, 10, 20, 50, 100];
    let alphas = vec![Ratio::new(1, 10)?, Ratio::new(1, 20)?, Ratio::new(1, 40)?, Ratio::new(1, 100)?];
    let table = critical_table(&ns, &alphas)?;
    write_critical_csv(std::io::stdout().lock(), &table)?;
    Ok(())
}
