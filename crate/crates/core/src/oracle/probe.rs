//! First-order probe of the equalisation step.
//!
//! For a pair `wᵢ > wⱼ > 0`, the norm-preserving rotation
//! `wᵢ(θ) = wᵢ cos θ + wⱼ sin θ`, `wⱼ(θ) = wⱼ cos θ - wᵢ sin θ` moves each
//! fiber point at rate `wⱼ εᵢ - wᵢ εⱼ`. Taking `θ < 0` flips this to
//! `wᵢ εⱼ - wⱼ εᵢ`, which is positive exactly when `εⱼ = +1`; that is the
//! reference direction, and the verdict is whether the upper median of these
//! rates is positive (the upper median of the moved fiber then exceeds `x`
//! for small `|θ|`).
//!
//! The reference direction relies on most of the fiber having `εⱼ = +1`,
//! which fails for some fibers (e.g. `w = (1, 2)`, `x = 1`). The opposite
//! direction is evaluated too: rates never vanish for `wᵢ ≠ wⱼ`, so at least
//! one of the two directions always raises the upper median.

use std::cmp::Ordering;

use super::{enumerate_dist, fiber, Signs, WeightVector};
use crate::error::{Error, Result};
use crate::exactnum::Ratio;

/// Sign of `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Positive,
    Negative,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Positive => "+theta",
            Direction::Negative => "-theta",
        }
    }
}

/// Upper median: element `⌊m/2⌋ + 1` (one-based) of the sorted values.
pub fn upper_median(values: &[Ratio]) -> Option<Ratio> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort();
    Some(sorted[sorted.len() / 2].clone())
}

/// Rates of one pair in one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairProbe {
    /// Zero-based index of the larger weight.
    pub i: usize,
    /// Zero-based index of the smaller weight.
    pub j: usize,
    pub direction: Direction,
    /// One rate per fiber configuration, in fiber order.
    pub slopes: Vec<Ratio>,
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
    pub upper_median_slope: Ratio,
    pub verdict: bool,
}

impl PairProbe {
    fn new(i: usize, j: usize, direction: Direction, slopes: Vec<Ratio>) -> Self {
        let count = |o: Ordering| slopes.iter().filter(|s| s.signum() as i32 == o as i32).count();
        let (n_neg, n_zero, n_pos) = (count(Ordering::Less), count(Ordering::Equal), count(Ordering::Greater));
        let upper_median_slope = upper_median(&slopes).expect("fiber is nonempty");
        let verdict = upper_median_slope.is_positive();
        PairProbe { i, j, direction, slopes, n_pos, n_neg, n_zero, upper_median_slope, verdict }
    }
}

/// Verdicts of one pair in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSummary {
    pub i: usize,
    pub j: usize,
    /// Upper median positive in the reference direction `θ < 0`.
    pub reference_verdict: bool,
    /// Upper median positive for `θ > 0`.
    pub opposite_verdict: bool,
    /// Strict majority of the fiber has `εⱼ = +1`.
    pub bias_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub x: Ratio,
    pub fiber_size: usize,
    /// Reference direction of the first pair whose verdict is true, or of
    /// the first pair if none is.
    pub chosen: PairProbe,
    pub pairs: Vec<PairSummary>,
}

impl ProbeReport {
    /// Some pair raises the fiber's upper median in the reference direction.
    pub fn verdict(&self) -> bool {
        self.chosen.verdict
    }

    /// Some pair raises it in one of the two directions.
    pub fn either_direction_holds(&self) -> bool {
        self.pairs.iter().any(|p| p.reference_verdict || p.opposite_verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ProbeOutcome {
    /// All positive weights are equal; there is no pair to rotate.
    NotApplicable,
    Probed(ProbeReport),
}

fn reference_slopes(w: &WeightVector, i: usize, j: usize, configs: &[Signs]) -> Vec<Ratio> {
    let (wi, wj) = (&w.weights()[i], &w.weights()[j]);
    configs
        .iter()
        .map(|e| {
            let term = |x: &Ratio, s: i8| if s > 0 { x.clone() } else { -x };
            term(wi, e[j]) - term(wj, e[i])
        })
        .collect()
}

/// Probes every unequal positive pair at the atom `x > 0` of `S(w)`.
pub fn equalisation_probe(w: &WeightVector, x: &Ratio) -> Result<ProbeOutcome> {
    if !x.is_positive() {
        return Err(Error::domain(format!("probe level x = {x} must be positive")));
    }
    if w.is_equalised() {
        return Ok(ProbeOutcome::NotApplicable);
    }
    let f = fiber(w, x)?;
    let ws = w.weights();
    let mut pairs = Vec::new();
    let mut probes = Vec::new();
    for a in 0..ws.len() {
        for b in a + 1..ws.len() {
            if ws[a].is_zero() || ws[b].is_zero() || ws[a] == ws[b] {
                continue;
            }
            let (i, j) = if ws[a] > ws[b] { (a, b) } else { (b, a) };
            let slopes = reference_slopes(w, i, j, &f.configs);
            let opposite = upper_median(&slopes.iter().map(|s| -s).collect::<Vec<_>>())
                .expect("fiber is nonempty")
                .is_positive();
            let reference = PairProbe::new(i, j, Direction::Negative, slopes);
            pairs.push(PairSummary {
                i,
                j,
                reference_verdict: reference.verdict,
                opposite_verdict: opposite,
                bias_holds: reference.n_pos > reference.n_neg,
            });
            probes.push(reference);
        }
    }
    let pick = probes.iter().position(|r| r.verdict).unwrap_or(0);
    let chosen = probes.swap_remove(pick);
    Ok(ProbeOutcome::Probed(ProbeReport { x: x.clone(), fiber_size: f.configs.len(), chosen, pairs }))
}

/// Positive atoms of `S(w)`, ascending.
pub(crate) fn positive_atoms(w: &WeightVector) -> Result<Vec<Ratio>> {
    Ok(enumerate_dist(w)?
        .atoms()
        .iter()
        .filter(|(s, _)| s.is_positive())
        .map(|(s, _)| s.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Ratio {
        Ratio::new(p, q).unwrap()
    }

    fn probed(w: &str, x: Ratio) -> ProbeReport {
        match equalisation_probe(&WeightVector::parse(w).unwrap(), &x).unwrap() {
            ProbeOutcome::Probed(p) => p,
            ProbeOutcome::NotApplicable => panic!("expected a probe for {w}"),
        }
    }

    #[test]
    fn single_configuration_fiber() {
        let p = probed("3/5,4/5", r(7, 5));
        assert_eq!((p.chosen.i, p.chosen.j), (1, 0));
        assert_eq!(p.chosen.slopes, vec![r(1, 5)]);
        assert_eq!((p.chosen.n_pos, p.chosen.n_neg, p.chosen.n_zero), (1, 0, 0));
        assert_eq!(p.chosen.direction, Direction::Negative);
        assert!(p.verdict());
    }

    #[test]
    fn picks_first_pair_whose_reference_direction_works() {
        let p = probed("1,2,4", r(5, 1));
        assert_eq!(p.fiber_size, 1);
        assert_eq!((p.chosen.i, p.chosen.j), (2, 1));
        assert_eq!(p.chosen.slopes, vec![r(2, 1)]);
        assert!(p.verdict());
        assert_eq!(p.pairs.len(), 3);
        assert!(!p.pairs[0].reference_verdict && p.pairs[0].opposite_verdict);
    }

    #[test]
    fn reference_direction_can_fail() {
        // fiber {(-,+)}: eps_j = -1 for the only pair
        let p = probed("1,2", r(1, 1));
        assert!(!p.verdict());
        assert!(!p.pairs[0].bias_holds);
        assert_eq!(p.chosen.slopes, vec![r(-3, 1)]);
        assert!(p.pairs[0].opposite_verdict && p.either_direction_holds());
    }

    #[test]
    fn equal_weights_are_not_applicable() {
        let w = WeightVector::parse("1,1").unwrap();
        assert_eq!(equalisation_probe(&w, &r(2, 1)).unwrap(), ProbeOutcome::NotApplicable);
        let w = WeightVector::parse("0,2,2").unwrap();
        assert_eq!(equalisation_probe(&w, &r(4, 1)).unwrap(), ProbeOutcome::NotApplicable);
    }

    #[test]
    fn errors() {
        let w = WeightVector::parse("1,2").unwrap();
        assert!(equalisation_probe(&w, &r(2, 1)).is_err());
        assert!(equalisation_probe(&w, &r(-1, 1)).is_err());
    }

    #[test]
    fn upper_median_positions() {
        let v: Vec<Ratio> = [3, 1, 2, 4].iter().map(|&x| r(x, 1)).collect();
        assert_eq!(upper_median(&v), Some(r(3, 1)));
        assert_eq!(upper_median(&v[..3]), Some(r(2, 1)));
        assert_eq!(upper_median(&[]), None);
    }
}
