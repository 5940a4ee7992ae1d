//! Brute-force ground truth for arbitrary nonnegative rational weights.
//!
//! The law of `S(w) = Σ wᵢ εᵢ` is obtained by enumerating all `2^n` sign
//! patterns. Weights are never normalised: comparisons against a threshold
//! `t` on the normalised scale are done as `s` vs `t·‖w‖` by sign and
//! squares, which stays rational.

mod enumerate;
mod probe;
mod search;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{parse_ratio, Dyadic, Ratio, Sign, Threshold};

pub use probe::{
    equalisation_probe, upper_median, Direction, PairProbe, PairSummary, ProbeOutcome, ProbeReport,
};
pub use search::{
    probe_campaign, random_maximizer_search, CampaignReport, MaximizerReport, ProbeInstance,
    MAX_SEARCH_N,
};

/// Largest dimension accepted by the enumerating operations.
pub const MAX_ENUMERATION_N: usize = 24;

/// Nonnegative rational weights, not all zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    w: Vec<Ratio>,
}

impl WeightVector {
    pub fn new(w: Vec<Ratio>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::domain("weight vector must be nonempty"));
        }
        if let Some(bad) = w.iter().find(|x| x.is_negative()) {
            return Err(Error::domain(format!("weight {bad} is negative")));
        }
        if w.iter().all(Ratio::is_zero) {
            return Err(Error::domain("weights are all zero"));
        }
        Ok(WeightVector { w })
    }

    pub fn from_integers(w: &[u64]) -> Result<Self> {
        WeightVector::new(w.iter().map(|&x| Ratio::from_integer(x)).collect())
    }

    /// Comma-separated ratios, e.g. `3,4` or `3/5,4/5`.
    pub fn parse(s: &str) -> Result<Self> {
        let w: Result<Vec<Ratio>> = s.split(',').map(parse_ratio).collect();
        WeightVector::new(w?)
    }

    pub fn weights(&self) -> &[Ratio] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// All strictly positive coordinates are equal.
    pub fn is_equalised(&self) -> bool {
        let mut pos = self.w.iter().filter(|x| x.is_positive());
        let first = pos.next().expect("some weight is positive");
        pos.all(|x| x == first)
    }

    pub fn norm_sq(&self) -> Ratio {
        self.w.iter().fold(Ratio::zero(), |acc, x| acc + x.square())
    }

    /// Common denominator `L` and integer weights `L·wᵢ`.
    pub(crate) fn scaled(&self) -> (BigInt, Vec<BigInt>) {
        let l = self.w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = self.w.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        (l, ints)
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.len() > MAX_ENUMERATION_N {
            return Err(Error::TooLarge { n: self.len(), limit: MAX_ENUMERATION_N });
        }
        Ok(())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.w.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact law of `S(w)`: ascending atoms with their probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDist {
    atoms: Vec<(Ratio, Dyadic)>,
    norm_sq: Ratio,
}

/// Orders the raw sum `s` against `t·√norm_sq`.
fn cmp_scaled(s: &Ratio, t: &Threshold, norm_sq: &Ratio) -> Ordering {
    let ss = Sign::of(s.signum());
    match ss.cmp(&t.sign()) {
        Ordering::Equal => {}
        o => return o,
    }
    let mag = s.square().cmp(&(t.square() * norm_sq));
    match ss {
        Sign::Zero => Ordering::Equal,
        Sign::Positive => mag,
        Sign::Negative => mag.reverse(),
    }
}

impl ExactDist {
    pub fn atoms(&self) -> &[(Ratio, Dyadic)] {
        &self.atoms
    }

    pub fn norm_sq(&self) -> &Ratio {
        &self.norm_sq
    }

    pub fn prob(&self, s: &Ratio) -> Dyadic {
        self.atoms
            .binary_search_by(|(x, _)| x.cmp(s))
            .map(|i| self.atoms[i].1.clone())
            .unwrap_or_else(|_| Dyadic::zero())
    }

    pub fn total_mass(&self) -> Dyadic {
        self.atoms.iter().fold(Dyadic::zero(), |acc, (_, p)| acc.add(p))
    }

    pub fn is_symmetric(&self) -> bool {
        self.atoms.iter().all(|(s, p)| self.prob(&-s) == *p)
    }

    /// Atom `s` on the normalised scale, `s/‖w‖`.
    pub fn normalized(&self, s: &Ratio) -> Threshold {
        Threshold::signed_sqrt(Sign::of(s.signum()), s.square() / self.norm_sq.clone())
            .expect("square of a ratio is nonnegative")
    }

    /// `P(S > t‖w‖) + ½ P(S = t‖w‖)`.
    pub fn normalized_mid_tail(&self, t: &Threshold) -> Dyadic {
        let mut above = Dyadic::zero();
        let mut at = Dyadic::zero();
        for (s, p) in &self.atoms {
            match cmp_scaled(s, t, &self.norm_sq) {
                Ordering::Greater => above = above.add(p),
                Ordering::Equal => at = at.add(p),
                Ordering::Less => {}
            }
        }
        above.add(&at.halve())
    }

    /// `sup{t : normalized_mid_tail(t) ≥ α}`: the largest normalised atom
    /// with upper tail `P(S ≥ s) ≥ α`.
    pub fn normalized_mid_quantile(&self, alpha: &Ratio) -> Result<Threshold> {
        if !alpha.is_positive() || *alpha >= Ratio::one() {
            return Err(Error::domain(format!("alpha = {alpha} must lie in (0, 1)")));
        }
        let mut upper = Dyadic::zero();
        for (s, p) in self.atoms.iter().rev() {
            upper = upper.add(p);
            if upper.cmp_ratio(alpha) != Ordering::Less {
                return Ok(self.normalized(s));
            }
        }
        unreachable!("total mass is 1 > alpha")
    }
}

/// Exact law of `S(w)` over all `2^n` equally likely sign patterns.
pub fn enumerate_dist(w: &WeightVector) -> Result<ExactDist> {
    w.check_enumerable()?;
    let (l, ints) = w.scaled();
    let n = w.len() as u64;
    let counts = enumerate::sum_counts(&ints);
    let atoms = counts
        .into_iter()
        .map(|(s, c)| {
            let s = Ratio::new(s, l.clone()).expect("L >= 1");
            (s, Dyadic::new(c, n))
        })
        .collect();
    Ok(ExactDist { atoms, norm_sq: w.norm_sq() })
}

pub fn normalized_mid_tail(w: &WeightVector, t: &Threshold) -> Result<Dyadic> {
    Ok(enumerate_dist(w)?.normalized_mid_tail(t))
}

pub fn normalized_mid_quantile(w: &WeightVector, alpha: &Ratio) -> Result<Threshold> {
    enumerate_dist(w)?.normalized_mid_quantile(alpha)
}

/// Sign vector with entries `±1`.
pub type Signs = Vec<i8>;

pub fn format_signs(e: &[i8]) -> String {
    let parts: Vec<&str> = e.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
    format!("({})", parts.join(","))
}

/// All sign vectors realising the atom `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub x: Ratio,
    /// Lexicographic with `+` before `-`.
    pub configs: Vec<Signs>,
}

pub fn fiber(w: &WeightVector, x: &Ratio) -> Result<Fiber> {
    w.check_enumerable()?;
    let (l, ints) = w.scaled();
    let target = x * &Ratio::from_integer(l);
    let not_atom = || Error::NotAnAtom(x.to_string());
    if !target.is_integer() {
        return Err(not_atom());
    }
    let configs = enumerate::patterns_with_sum(&ints, target.numer());
    if configs.is_empty() {
        return Err(not_atom());
    }
    Ok(Fiber { x: x.clone(), configs })
}

/// Exact `Σ wᵢ εᵢ`.
pub fn signed_sum(w: &WeightVector, e: &[i8]) -> Ratio {
    w.weights()
        .iter()
        .zip(e)
        .fold(Ratio::zero(), |acc, (x, &s)| if s > 0 { acc + x.clone() } else { acc - x.clone() })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomdist::EqualWeightSum;
    use crate::exactnum::parse_threshold;

    fn r(p: i64, q: i64) -> Ratio {
        Ratio::new(p, q).unwrap()
    }

    fn d(n: u64, e: u64) -> Dyadic {
        Dyadic::new(n, e)
    }

    fn t(s: &str) -> Threshold {
        parse_threshold(s).unwrap()
    }

    fn dist(s: &str) -> ExactDist {
        enumerate_dist(&WeightVector::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn small_distributions() {
        let want = [(r(-2, 1), d(1, 2)), (r(0, 1), d(1, 1)), (r(2, 1), d(1, 2))];
        assert_eq!(dist("1,1").atoms(), &want[..]);
        let want: Vec<_> = [(-7, 5), (-1, 5), (1, 5), (7, 5)]
            .iter()
            .map(|&(p, q)| (r(p, q), d(1, 2)))
            .collect();
        assert_eq!(dist("3/5,4/5").atoms(), &want[..]);
        let want = [(r(-3, 1), d(1, 3)), (r(-1, 1), d(3, 3)), (r(1, 1), d(3, 3)), (r(3, 1), d(1, 3))];
        assert_eq!(dist("1,1,1").atoms(), &want[..]);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(WeightVector::parse("0,0").is_err());
        assert!(WeightVector::parse("1,-1").is_err());
        assert!(WeightVector::parse("1,,2").is_err());
        let big = WeightVector::from_integers(&[1; 25]).unwrap();
        assert_eq!(
            enumerate_dist(&big).unwrap_err(),
            Error::TooLarge { n: 25, limit: MAX_ENUMERATION_N }
        );
    }

    #[test]
    fn normalized_tails() {
        let w = WeightVector::parse("3/5,4/5").unwrap();
        assert_eq!(normalized_mid_tail(&w, &t("1")).unwrap(), d(1, 2));
        let w = WeightVector::parse("6/5,8/5").unwrap();
        assert_eq!(normalized_mid_tail(&w, &t("1")).unwrap(), d(1, 2));
        for k in 1..=8u64 {
            let w = WeightVector::from_integers(&vec![1; k as usize]).unwrap();
            let s = EqualWeightSum::new(k as u32).unwrap();
            for ts in ["0", "1/2", "1", "sqrt(2)", "sqrt(3)", "2", "-1"] {
                assert_eq!(normalized_mid_tail(&w, &t(ts)).unwrap(), s.mid_tail(&t(ts)), "k={k} t={ts}");
            }
        }
    }

    #[test]
    fn normalized_quantiles() {
        let w = WeightVector::parse("1,1").unwrap();
        assert_eq!(normalized_mid_quantile(&w, &r(1, 4)).unwrap(), t("sqrt(2)"));
        let w = WeightVector::parse("1").unwrap();
        assert_eq!(normalized_mid_quantile(&w, &r(1, 4)).unwrap(), t("1"));
        // 0 is an atom here, so the supremum at 1/2 is 0
        let w = WeightVector::parse("1,2,3").unwrap();
        assert_eq!(normalized_mid_quantile(&w, &r(1, 2)).unwrap(), Threshold::zero());
        assert!(normalized_mid_quantile(&w, &r(1, 1)).is_err());
    }

    #[test]
    fn fibers() {
        let w = WeightVector::parse("3/5,4/5").unwrap();
        assert_eq!(fiber(&w, &r(7, 5)).unwrap().configs, vec![vec![1, 1]]);
        let w = WeightVector::parse("1,1").unwrap();
        assert_eq!(fiber(&w, &r(0, 1)).unwrap().configs, vec![vec![1, -1], vec![-1, 1]]);
        let w = WeightVector::parse("1,2").unwrap();
        assert_eq!(fiber(&w, &r(3, 1)).unwrap().configs, vec![vec![1, 1]]);
        assert!(matches!(fiber(&w, &r(2, 1)), Err(Error::NotAnAtom(_))));
        assert!(matches!(fiber(&w, &r(1, 2)), Err(Error::NotAnAtom(_))));
        assert_eq!(format_signs(&[1, -1]), "(+,-)");
    }

    #[test]
    fn zero_weights_are_allowed() {
        let a = dist("0,1,1");
        assert_eq!(a.atoms().len(), 3);
        assert_eq!(a.prob(&r(2, 1)), d(1, 2));
        assert!(a.is_symmetric());
    }
}
