//! Sign-pattern enumeration over integer weights.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::Signs;

/// Patterns per parallel work unit.
const CHUNK_BITS: usize = 12;

/// Integer weights small enough that every signed sum fits in `i128`.
fn small_weights(ints: &[BigInt]) -> Option<Vec<i128>> {
    let total: BigInt = ints.iter().map(|x| x.abs()).sum();
    if total.bits() > 120 {
        return None;
    }
    ints.iter().map(|x| x.to_i128()).collect()
}

/// Multiset of `Σ ±Wᵢ` over all `2^n` patterns, ascending.
pub(super) fn sum_counts(ints: &[BigInt]) -> Vec<(BigInt, u64)> {
    match small_weights(ints) {
        Some(w) => gray_counts(&w)
            .into_iter()
            .map(|(s, c)| (BigInt::from(s), c))
            .collect(),
        None => convolution_counts(ints),
    }
}

/// Gray-code walk: consecutive patterns differ in one sign, so each step is
/// a single addition. The pattern space is split into fixed chunks.
fn gray_counts(w: &[i128]) -> BTreeMap<i128, u64> {
    let n = w.len();
    let chunk_bits = n.min(CHUNK_BITS);
    let chunks = 1u64 << (n - chunk_bits);
    let per_chunk = 1u64 << chunk_bits;
    let partial: Vec<HashMap<i128, u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let first = c * per_chunk;
            let gray = first ^ (first >> 1);
            let mut sum: i128 = w
                .iter()
                .enumerate()
                .map(|(b, &x)| if gray >> b & 1 == 1 { x } else { -x })
                .sum();
            let mut counts = HashMap::new();
            *counts.entry(sum).or_insert(0) += 1;
            for i in first + 1..first + per_chunk {
                let b = i.trailing_zeros() as usize;
                let now_plus = (i ^ (i >> 1)) >> b & 1 == 1;
                if now_plus {
                    sum += 2 * w[b];
                } else {
                    sum -= 2 * w[b];
                }
                *counts.entry(sum).or_insert(0) += 1;
            }
            counts
        })
        .collect();
    let mut merged = BTreeMap::new();
    for part in partial {
        for (s, c) in part {
            *merged.entry(s).or_insert(0) += c;
        }
    }
    merged
}

/// Coordinate-by-coordinate convolution with unbounded sums.
fn convolution_counts(ints: &[BigInt]) -> Vec<(BigInt, u64)> {
    let mut dist: BTreeMap<BigInt, u64> = BTreeMap::from([(BigInt::zero(), 1)]);
    for x in ints {
        let mut next = BTreeMap::new();
        for (s, c) in &dist {
            *next.entry(s + x).or_insert(0) += c;
            *next.entry(s - x).or_insert(0) += c;
        }
        dist = next;
    }
    dist.into_iter().collect()
}

/// Patterns with sum `target`, lexicographic with `+` first.
pub(super) fn patterns_with_sum(ints: &[BigInt], target: &BigInt) -> Vec<Signs> {
    let n = ints.len();
    let signs_of = |p: u64| -> Signs {
        (0..n).map(|i| if p >> (n - 1 - i) & 1 == 0 { 1 } else { -1 }).collect()
    };
    let mut out = Vec::new();
    match (small_weights(ints), target.to_i128()) {
        (Some(w), Some(target)) => {
            for p in 0..1u64 << n {
                let s: i128 = (0..n).map(|i| if p >> (n - 1 - i) & 1 == 0 { w[i] } else { -w[i] }).sum();
                if s == target {
                    out.push(signs_of(p));
                }
            }
        }
        (Some(_), None) => {}
        (None, _) => {
            for p in 0..1u64 << n {
                let e = signs_of(p);
                let s: BigInt = ints.iter().zip(&e).map(|(x, &s)| if s > 0 { x.clone() } else { -x }).sum();
                if s == *target {
                    out.push(e);
                }
            }
        }
    }
    out
}
