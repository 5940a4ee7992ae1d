//! The extremal search over support sizes.
//!
//! Every maximiser of the mid-tail over unit-norm nonnegative weights is an
//! equal-weight vector on `k` coordinates, so the envelope at `t` is the
//! maximum of `mid_tail(k, t)` over `k`. For a finite dimension `n` the
//! search is exhaustive. For the universal envelope it runs upward from
//! `k_min(t)` and stops once the Berry–Esseen bound
//!
//! ```text
//! mid_tail(k, t) ≤ P(S_k ≥ t) ≤ Φ̄(t) + C_BE/√k
//! ```
//!
//! shows that no larger `k` can reach the best value found so far, or at the
//! hard cap, whichever comes first. The certificate on each result records
//! which of the two ended the search.
//!
//! Values for consecutive `k` come from [`TailStream`]s over fixed-size
//! chunks, evaluated in parallel and reduced in `k` order, so the output is
//! independent of the number of worker threads.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::binomdist::{EqualWeightSum, TailStream};
use crate::error::{Error, Result};
use crate::exactnum::{cmp_lattice_lattice, cmp_lattice_threshold, Dyadic, LatticeValue, Ratio, Threshold};
use crate::statbridge::gaussian_upper_tail;

/// Berry–Esseen constant for sums of i.i.d. unit-variance summands.
pub const BERRY_ESSEEN_CONSTANT: f64 = 0.4748;
pub const DEFAULT_K_CAP: u32 = 4096;
pub const DEFAULT_SAFETY_MARGIN: f64 = 1e-9;

/// Support sizes evaluated by one stream.
const CHUNK: u32 = 128;
/// Support sizes evaluated between two stopping-rule checks.
const BLOCK: u32 = 8 * CHUNK;
/// First support-size bound tried by the universal quantile search.
const QUANTILE_START: u32 = 64;

/// Stopping rule for searches over unbounded `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub k_cap: u32,
    pub be_constant: f64,
    /// Added to the left-hand side of the floating-point stopping test.
    pub safety_margin: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            k_cap: DEFAULT_K_CAP,
            be_constant: BERRY_ESSEEN_CONSTANT,
            safety_margin: DEFAULT_SAFETY_MARGIN,
        }
    }
}

impl TruncationPolicy {
    pub fn with_k_cap(k_cap: u32) -> Self {
        TruncationPolicy { k_cap, ..Default::default() }
    }

    /// Upper bound on `P(S_k ≥ t)` valid for every `k' ≥ k`.
    fn tail_bound(&self, gauss: f64, k: u32) -> f64 {
        gauss + self.be_constant / (k as f64).sqrt() + self.safety_margin
    }
}

/// Why a search over `k` ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Finite search over every `k ≤ n`.
    Exhaustive,
    /// The Berry–Esseen bound excludes all larger `k`.
    BerryEsseenClosed,
    /// Stopped at `k_cap` without a closing bound; the result is the best
    /// over `k ≤ k_cap` only.
    HardCapHit,
}

impl Certificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certificate::Exhaustive => "exhaustive",
            Certificate::BerryEsseenClosed => "berry_esseen_closed",
            Certificate::HardCapHit => "hard_cap_hit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeResult {
    pub t: Threshold,
    pub value: Dyadic,
    /// Every searched `k` attaining `value`, ascending.
    pub argmax_k: Vec<u32>,
    pub k_searched: u32,
    pub certificate: Certificate,
}

impl EnvelopeResult {
    /// Smallest maximising support size.
    pub fn k_star(&self) -> u32 {
        self.argmax_k[0]
    }

    pub fn warning(&self) -> Option<String> {
        (self.certificate == Certificate::HardCapHit).then(|| {
            format!(
                "search stopped at k_cap = {} before the Berry-Esseen bound closed; \
                 value is the maximum over k <= {}",
                self.k_searched, self.k_searched
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantileResult {
    pub alpha: Ratio,
    /// Smallest `t` with envelope value `≤ alpha`.
    pub t_star: Threshold,
    /// Envelope value at `t_star`.
    pub value_at: Dyadic,
    /// Envelope value just left of `t_star`.
    pub left_limit: Dyadic,
    /// Smallest `k` whose weak tail at `t_star` exceeds `alpha`.
    pub witness_k_left: u32,
    pub k_searched: u32,
    pub certificate: Certificate,
}

impl QuantileResult {
    pub fn warning(&self) -> Option<String> {
        (self.certificate == Certificate::HardCapHit).then(|| {
            format!("quantile search stopped at k_cap = {} without a closing bound", self.k_searched)
        })
    }
}

fn require_nonnegative(t: &Threshold) -> Result<()> {
    if t.is_negative() {
        return Err(Error::domain(format!("threshold {t} must be nonnegative")));
    }
    Ok(())
}

/// Smallest `k ≥ 1` with `√k ≥ t`; below it every tail vanishes.
pub fn k_min(t: &Threshold) -> Result<u32> {
    require_nonnegative(t)?;
    let c: BigInt = t.square().ceil();
    let k = c.to_u32().ok_or_else(|| Error::domain(format!("threshold {t} too large")))?;
    Ok(k.max(1))
}

/// `f(stream)` for `k ∈ [lo, hi]`, in order.
fn scan<F>(t: &Threshold, lo: u32, hi: u32, f: F) -> Vec<Dyadic>
where
    F: Fn(&TailStream) -> Dyadic + Sync,
{
    if lo > hi {
        return Vec::new();
    }
    let starts: Vec<u32> = (lo..=hi).step_by(CHUNK as usize).collect();
    starts
        .into_par_iter()
        .map(|start| {
            let end = hi.min(start + (CHUNK - 1));
            let mut stream = TailStream::new(start, t).expect("t >= 0 and k >= 1");
            let mut out = Vec::with_capacity((end - start + 1) as usize);
            loop {
                out.push(f(&stream));
                if stream.k() == end {
                    break;
                }
                stream.advance();
            }
            out
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Mid-tails for `k ∈ [lo, hi]` at `t ≥ 0`.
pub fn mid_tails(t: &Threshold, lo: u32, hi: u32) -> Result<Vec<Dyadic>> {
    require_nonnegative(t)?;
    if lo == 0 {
        return Err(Error::domain("support sizes start at 1"));
    }
    Ok(scan(t, lo, hi, TailStream::mid_tail))
}

/// Running exact maximum with ties.
#[derive(Default)]
struct ArgMax {
    value: Option<Dyadic>,
    ks: Vec<u32>,
}

impl ArgMax {
    fn push(&mut self, k: u32, v: Dyadic) {
        match self.value.as_ref().map(|best| v.cmp(best)) {
            None | Some(Ordering::Greater) => {
                self.value = Some(v);
                self.ks = vec![k];
            }
            Some(Ordering::Equal) => self.ks.push(k),
            Some(Ordering::Less) => {}
        }
    }

    fn best(&self) -> Option<&Dyadic> {
        self.value.as_ref()
    }
}

/// Envelope over weight vectors with `n` coordinates: `max_{k ≤ n} mid_tail(k, t)`.
pub fn envelope_mid_tail(n: u32, t: &Threshold) -> Result<EnvelopeResult> {
    if n == 0 {
        return Err(Error::domain("dimension n must be positive"));
    }
    let values = mid_tails(t, 1, n)?;
    let mut best = ArgMax::default();
    for (k, v) in (1..=n).zip(values) {
        best.push(k, v);
    }
    Ok(EnvelopeResult {
        t: t.clone(),
        value: best.value.expect("n >= 1"),
        argmax_k: best.ks,
        k_searched: n,
        certificate: Certificate::Exhaustive,
    })
}

/// Envelope over all dimensions, `sup_k mid_tail(k, t)` for `t > 0`.
pub fn universal_envelope(t: &Threshold, policy: &TruncationPolicy) -> Result<EnvelopeResult> {
    if !t.is_positive() {
        return Err(Error::domain(format!("universal envelope needs t > 0, got {t}")));
    }
    let start = k_min(t)?;
    if start > policy.k_cap {
        return Err(Error::domain(format!(
            "k_cap = {} is below k_min({t}) = {start}",
            policy.k_cap
        )));
    }
    let gauss = gaussian_upper_tail(t.to_f64());
    let mut best = ArgMax::default();
    let mut lo = start;
    loop {
        let hi = policy.k_cap.min(lo.saturating_add(BLOCK - 1));
        let values = scan(t, lo, hi, TailStream::mid_tail);
        for (k, v) in (lo..=hi).zip(values) {
            if let Some(b) = best.best() {
                if policy.tail_bound(gauss, k) < b.to_f64() {
                    return Ok(EnvelopeResult {
                        t: t.clone(),
                        value: best.value.clone().expect("nonempty"),
                        argmax_k: best.ks,
                        k_searched: k - 1,
                        certificate: Certificate::BerryEsseenClosed,
                    });
                }
            }
            best.push(k, v);
        }
        if hi == policy.k_cap {
            return Ok(EnvelopeResult {
                t: t.clone(),
                value: best.value.clone().expect("nonempty"),
                argmax_k: best.ks,
                k_searched: hi,
                certificate: Certificate::HardCapHit,
            });
        }
        lo = hi + 1;
    }
}

/// Sorted, deduplicated atoms of `S_1, …, S_{k_max}` lying in `[lo, hi]`.
///
/// Equal reals from different `k` are kept once, with the smallest `k`.
pub fn atom_grid(k_max: u32, lo: &Threshold, hi: &Threshold) -> Result<Vec<LatticeValue>> {
    if lo > hi {
        return Err(Error::domain(format!("empty interval [{lo}, {hi}]")));
    }
    let mut atoms: Vec<LatticeValue> = (1..=k_max)
        .flat_map(|k| (0..=k).map(move |m| LatticeValue::from_count(m, k)))
        .filter(|v| {
            cmp_lattice_threshold(v, lo) != Ordering::Less
                && cmp_lattice_threshold(v, hi) != Ordering::Greater
        })
        .collect();
    atoms.sort_by(|u, v| cmp_lattice_lattice(u, v).then(u.k().cmp(&v.k())));
    atoms.dedup_by(|later, kept| cmp_lattice_lattice(later, kept) == Ordering::Equal);
    Ok(atoms)
}

fn check_quantile_level(alpha: &Ratio) -> Result<()> {
    let half = Ratio::new(1, 2).expect("nonzero");
    if !alpha.is_positive() || *alpha >= half {
        return Err(Error::domain(format!("alpha = {alpha} must lie in (0, 1/2)")));
    }
    Ok(())
}

/// Largest exceedance edge over `k ∈ [1, edges.len()]` and the smallest `k`
/// attaining it.
fn top_edge(edges: &[LatticeValue]) -> (LatticeValue, u32) {
    let mut top = edges[0];
    for e in &edges[1..] {
        if cmp_lattice_lattice(e, &top) == Ordering::Greater {
            top = *e;
        }
    }
    let witness = edges
        .iter()
        .position(|e| cmp_lattice_lattice(e, &top) == Ordering::Equal)
        .expect("top is one of the edges") as u32
        + 1;
    (top, witness)
}

fn extend_edges(edges: &mut Vec<LatticeValue>, upto: u32, alpha: &Ratio) -> Result<()> {
    let from = edges.len() as u32 + 1;
    let fresh: Result<Vec<LatticeValue>> = (from..=upto)
        .into_par_iter()
        .map(|k| EqualWeightSum::new(k)?.exceedance_edge(alpha))
        .collect();
    edges.extend(fresh?);
    Ok(())
}

/// The envelope jumps below `alpha` at the largest of the per-`k` edges
/// `sup{t : mid_tail(k, t) > α}`. Evaluates both sides of that jump.
fn finish_quantile(
    alpha: &Ratio,
    edges: &[LatticeValue],
    certificate: Certificate,
) -> Result<QuantileResult> {
    let (top, witness) = top_edge(edges);
    let k_searched = edges.len() as u32;
    let t_star = top.to_threshold();
    let max_of = |vals: Vec<Dyadic>| vals.into_iter().max().expect("k_searched >= 1");
    let value_at = max_of(scan(&t_star, 1, k_searched, TailStream::mid_tail));
    let left_limit = max_of(scan(&t_star, 1, k_searched, TailStream::weak_tail));
    if value_at.cmp_ratio(alpha) == Ordering::Greater {
        return Err(Error::NotAttained(format!(
            "envelope at {t_star} is {value_at} > alpha = {alpha} and drops below alpha only to the right"
        )));
    }
    debug_assert_eq!(left_limit.cmp_ratio(alpha), Ordering::Greater);
    Ok(QuantileResult {
        alpha: alpha.clone(),
        t_star,
        value_at,
        left_limit,
        witness_k_left: witness,
        k_searched,
        certificate,
    })
}

/// Smallest `t` with universal envelope `≤ alpha`, for `0 < alpha < ½`.
///
/// The `k` range doubles until the Berry–Esseen bound at the candidate shows
/// that no larger `k` keeps the envelope above `alpha` there.
pub fn quantile_universal(alpha: &Ratio, policy: &TruncationPolicy) -> Result<QuantileResult> {
    check_quantile_level(alpha)?;
    let alpha_f = alpha.to_f64();
    let mut edges = Vec::new();
    let mut k = QUANTILE_START.min(policy.k_cap).max(1);
    loop {
        extend_edges(&mut edges, k, alpha)?;
        let (top, _) = top_edge(&edges);
        let gauss = gaussian_upper_tail(top.to_f64());
        if policy.tail_bound(gauss, k + 1) < alpha_f {
            return finish_quantile(alpha, &edges, Certificate::BerryEsseenClosed);
        }
        if k >= policy.k_cap {
            return finish_quantile(alpha, &edges, Certificate::HardCapHit);
        }
        k = k.saturating_mul(2).min(policy.k_cap);
    }
}

/// Smallest `t` with `envelope_mid_tail(n, t) ≤ alpha`.
pub fn quantile_finite(n: u32, alpha: &Ratio) -> Result<QuantileResult> {
    check_quantile_level(alpha)?;
    if n == 0 {
        return Err(Error::domain("dimension n must be positive"));
    }
    let mut edges = Vec::new();
    extend_edges(&mut edges, n, alpha)?;
    finish_quantile(alpha, &edges, Certificate::Exhaustive)
}
