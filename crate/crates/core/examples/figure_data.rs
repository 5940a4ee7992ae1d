//! Plot-ready points for the envelope, its ratio to Hoeffding and the
//! maximising support size.
//!
//! ```text
//! cargo run --release --example figure_data
//! ```

use rademacher_envelope::statbridge::{figure_data, write_figure_csv, Figure};
use rademacher_envelope::TruncationPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let policy = TruncationPolicy::default();
    for which in [Figure::Envelope, Figure::Ratio, Figure::Kstar] {
        let points = figure_data(which, &policy)?;
        write_figure_csv(std::io::stdout().lock(), which, &points)?;
        println!();
    }
    Ok(())
}
