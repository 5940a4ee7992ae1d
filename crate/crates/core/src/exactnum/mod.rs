//! Exact number kernel.
//!
//! Every probability handled by the crate is a [`Dyadic`] and every threshold
//! is a [`Threshold`] of the form `sign·√(p/q)`. Comparisons between lattice
//! atoms `a/√k` and thresholds reduce to integer cross-multiplication, so no
//! floating point is involved anywhere in this module except the explicit
//! `to_f64` conversions.

mod dyadic;
mod lattice;
mod parse;
mod ratio;
mod threshold;

pub use dyadic::Dyadic;
pub use lattice::{cmp_lattice_lattice, cmp_lattice_threshold, LatticeValue};
pub use parse::{parse_ratio, parse_threshold};
pub use ratio::Ratio;
pub use threshold::{DisplayHint, Sign, Threshold};

use num_bigint::BigUint;

/// Exact square root of a perfect square, `None` otherwise.
pub(crate) fn exact_sqrt(x: &BigUint) -> Option<BigUint> {
    let r = x.sqrt();
    if &r * &r == *x {
        Some(r)
    } else {
        None
    }
}
