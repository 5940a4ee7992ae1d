//! Seeded random campaigns over integer weight vectors.
//!
//! Weights are drawn uniformly from `1..=100` by a ChaCha8 stream seeded with
//! `seed_from_u64(seed)`, so every report is reproducible from its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::probe::positive_atoms;
use super::{equalisation_probe, normalized_mid_tail, ProbeOutcome, WeightVector};
use crate::envelope::{envelope_mid_tail, EnvelopeResult};
use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, Ratio, Threshold};

/// Largest dimension accepted by the random searches.
pub const MAX_SEARCH_N: usize = 12;

const WEIGHT_MAX: u64 = 100;

fn draw_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=WEIGHT_MAX)).collect()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("dimension n must be positive"));
    }
    if n > MAX_SEARCH_N {
        return Err(Error::TooLarge { n, limit: MAX_SEARCH_N });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximizerReport {
    pub n: usize,
    pub t: Threshold,
    pub trials: usize,
    pub seed: u64,
    pub envelope: EnvelopeResult,
    pub best_value: Dyadic,
    /// First sampled vector attaining `best_value`.
    pub best_weights: Vec<u64>,
    /// `envelope - best_value`, or `None` if some sample exceeded the envelope.
    pub gap: Option<Dyadic>,
    /// Samples whose mid-tail exceeds the envelope.
    pub violators: Vec<(Vec<u64>, Dyadic)>,
}

/// Samples `trials` weight vectors in dimension `n` and compares their
/// normalised mid-tail at `t ≥ 0` with the `n`-coordinate envelope.
pub fn random_maximizer_search(n: usize, t: &Threshold, trials: usize, seed: u64) -> Result<MaximizerReport> {
    check_n(n)?;
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    let envelope = envelope_mid_tail(n as u32, t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Dyadic, Vec<u64>)> = None;
    let mut violators = Vec::new();
    for _ in 0..trials {
        let w = draw_weights(&mut rng, n);
        let v = normalized_mid_tail(&WeightVector::from_integers(&w)?, t)?;
        if v > envelope.value {
            violators.push((w.clone(), v.clone()));
        }
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, w));
        }
    }
    let (best_value, best_weights) = best.expect("trials >= 1");
    let gap = envelope.value.checked_sub(&best_value);
    Ok(MaximizerReport { n, t: t.clone(), trials, seed, envelope, best_value, best_weights, gap, violators })
}

/// A sampled probe instance: integer weights and a positive atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeInstance {
    pub weights: Vec<u64>,
    pub x: Ratio,
}

impl std::fmt::Display for ProbeInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "w=({}) x={}", w.join(","), self.x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Instances where no pair raises the upper median in the reference
    /// direction.
    pub verdict_failures: Vec<ProbeInstance>,
    /// Instances where neither direction of any pair raises it.
    pub either_direction_failures: Vec<ProbeInstance>,
    /// Instances where no pair has a strict `εⱼ = +1` majority.
    pub bias_failures: Vec<ProbeInstance>,
}

/// Runs the equalisation probe on `trials` random instances: `n` uniform in
/// `n_min..=n_max`, weights not all equal, `x` a uniformly chosen positive atom.
pub fn probe_campaign(n_min: usize, n_max: usize, trials: usize, seed: u64) -> Result<CampaignReport> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::domain(format!("need 2 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    check_n(n_max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CampaignReport {
        n_min,
        n_max,
        trials,
        seed,
        verdict_failures: Vec::new(),
        either_direction_failures: Vec::new(),
        bias_failures: Vec::new(),
    };
    for _ in 0..trials {
        let n = rng.gen_range(n_min..=n_max);
        let weights = loop {
            let w = draw_weights(&mut rng, n);
            if w.iter().any(|&x| x != w[0]) {
                break w;
            }
        };
        let wv = WeightVector::from_integers(&weights)?;
        let atoms = positive_atoms(&wv)?;
        let x = atoms.choose(&mut rng).expect("unequal weights give a positive atom").clone();
        let ProbeOutcome::Probed(p) = equalisation_probe(&wv, &x)? else {
            unreachable!("weights are not all equal")
        };
        let instance = ProbeInstance { weights, x };
        if !p.verdict() {
            report.verdict_failures.push(instance.clone());
        }
        if !p.either_direction_holds() {
            report.either_direction_failures.push(instance.clone());
        }
        if !p.pairs.iter().any(|s| s.bias_holds) {
            report.bias_failures.push(instance);
        }
    }
    Ok(report)
}
