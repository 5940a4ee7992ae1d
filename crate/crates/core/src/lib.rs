//! Exact worst-case mid-tail envelopes for weighted Rademacher sums.
//!
//! For a nonnegative weight vector `w` with unit Euclidean norm, the sum
//! `S(w) = Σ wᵢ εᵢ` over independent fair signs has a mid-tail
//! `P(S > t) + ½ P(S = t)`. The worst case over all such `w` is attained by
//! equal weights `1/√k` on `k` coordinates, so the envelope reduces to a
//! search over support sizes of exact binomial tails.
//!
//! Everything probabilistic is computed exactly: probabilities are dyadic
//! rationals ([`Dyadic`]) and thresholds are signed square roots of
//! rationals ([`Threshold`]). Floating point appears only in the classical
//! comparison columns of [`statbridge`].
//!
//! * [`exactnum`]: integers, rationals, dyadics, surd thresholds.
//! * [`binomdist`]: the law of the equal-weight sum and its tails.
//! * [`envelope`]: the search over support sizes and envelope quantiles.
//! * [`oracle`]: brute-force enumeration for arbitrary rational weights.
//! * [`statbridge`]: Student-T conversion, classical bounds, tables.
//! * [`cli`]: the `radenv` command-line front end.

pub mod binomdist;
pub mod cli;
pub mod envelope;
mod error;
pub mod exactnum;
pub mod oracle;
pub mod statbridge;

pub use binomdist::{AtomTable, EqualWeightSum};
pub use envelope::{Certificate, EnvelopeResult, QuantileResult, TruncationPolicy};
pub use error::{Error, Result};
pub use exactnum::{Dyadic, LatticeValue, Ratio, Sign, Threshold};
pub use oracle::{ExactDist, WeightVector};

/// Runs `f` on a dedicated pool of `threads` workers.
///
/// All parallel searches in this crate reduce with exact arithmetic in a
/// fixed order, so the result of `f` does not depend on `threads`.
pub fn with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool construction");
    pool.install(f)
}
