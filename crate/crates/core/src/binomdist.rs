//! Law of the equal-weight sum `S_k = (2M - k)/√k`, `M ~ Bin(k, ½)`.
//!
//! All tails are exact dyadics. The boundary index `m*` (the first count
//! whose atom lies strictly above `t`) is found by exact comparison, and the
//! tail is the partial binomial sum from the top down to `m*`.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{cmp_lattice_threshold, Dyadic, LatticeValue, Ratio, Threshold};

/// Equal weights `1/√k` on `k ≥ 1` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EqualWeightSum {
    k: u32,
}

/// Atoms of `S_k` in increasing order with their probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomTable {
    entries: Vec<(LatticeValue, Dyadic)>,
}

impl AtomTable {
    pub fn entries(&self) -> &[(LatticeValue, Dyadic)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> Dyadic {
        self.entries.iter().fold(Dyadic::zero(), |acc, (_, p)| acc.add(p))
    }
}

/// Probability masses over the common denominator `2^k`.
struct TailCounts {
    strict: BigUint,
    at: BigUint,
}

impl EqualWeightSum {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("support size k must be positive"));
        }
        Ok(EqualWeightSum { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn pmf(&self) -> AtomTable {
        let k = self.k;
        let mut c = BigUint::one();
        let mut entries = Vec::with_capacity(k as usize + 1);
        for m in 0..=k {
            entries.push((LatticeValue::from_count(m, k), Dyadic::new(c.clone(), k as u64)));
            c *= k - m;
            c /= m + 1;
        }
        AtomTable { entries }
    }

    /// Smallest count `m ∈ [0, k+1]` whose atom is strictly above `t`.
    pub fn boundary(&self, t: &Threshold) -> u32 {
        let k = self.k;
        let (mut lo, mut hi) = (0u32, k + 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if cmp_lattice_threshold(&LatticeValue::from_count(mid, k), t) == Ordering::Greater {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    /// The count whose atom equals `t`, if `t` is an atom.
    pub fn atom_index(&self, t: &Threshold) -> Option<u32> {
        let m = self.boundary(t);
        let below = m.checked_sub(1)?;
        (cmp_lattice_threshold(&LatticeValue::from_count(below, self.k), t) == Ordering::Equal)
            .then_some(below)
    }

    fn counts(&self, t: &Threshold) -> TailCounts {
        let k = self.k;
        let m_star = self.boundary(t);
        let at_index = self.atom_index(t);
        let mut strict = BigUint::zero();
        let mut at = BigUint::zero();
        // C(k, m) for m = k, k-1, ... down to m* - 1
        let mut c = BigUint::one();
        let mut m = k;
        loop {
            if m >= m_star {
                strict += &c;
            } else {
                if at_index == Some(m) {
                    at = c;
                }
                break;
            }
            if m == 0 {
                break;
            }
            c *= m;
            c /= k - m + 1;
            m -= 1;
        }
        TailCounts { strict, at }
    }

    /// `P(S_k > t)`.
    pub fn strict_tail(&self, t: &Threshold) -> Dyadic {
        Dyadic::new(self.counts(t).strict, self.k as u64)
    }

    /// `P(S_k ≥ t)`.
    pub fn weak_tail(&self, t: &Threshold) -> Dyadic {
        let c = self.counts(t);
        Dyadic::new(c.strict + c.at, self.k as u64)
    }

    /// `P(S_k > t) + ½ P(S_k = t)`.
    pub fn mid_tail(&self, t: &Threshold) -> Dyadic {
        let c = self.counts(t);
        Dyadic::new((c.strict << 1u32) + c.at, self.k as u64 + 1)
    }

    /// Largest count `m` whose upper tail `P(M ≥ m)` satisfies `keep`.
    fn last_count_where(&self, keep: impl Fn(&Dyadic) -> bool) -> u32 {
        let k = self.k;
        let mut upper = BigUint::zero();
        let mut c = BigUint::one();
        let mut m = k;
        loop {
            upper += &c;
            if keep(&Dyadic::new(upper.clone(), k as u64)) || m == 0 {
                return m;
            }
            c *= m;
            c /= k - m + 1;
            m -= 1;
        }
    }

    /// Mid-quantile `sup{t : mid_tail(t) ≥ α}`.
    ///
    /// The supremum is the largest atom `x` with `P(S_k ≥ x) ≥ α`: the
    /// mid-tail equals `P(S_k ≥ x)` on the open interval just left of `x`.
    /// The mid-tail at the returned point may itself be below `α`.
    pub fn mid_quantile(&self, alpha: &Ratio) -> Result<Threshold> {
        check_open_unit(alpha)?;
        let m = self.last_count_where(|p| p.cmp_ratio(alpha) != Ordering::Less);
        Ok(LatticeValue::from_count(m, self.k).to_threshold())
    }

    /// `sup{t : mid_tail(t) > α}`, as the atom where it is reached.
    pub fn exceedance_edge(&self, alpha: &Ratio) -> Result<LatticeValue> {
        check_open_unit(alpha)?;
        let m = self.last_count_where(|p| p.cmp_ratio(alpha) == Ordering::Greater);
        Ok(LatticeValue::from_count(m, self.k))
    }
}

fn check_open_unit(alpha: &Ratio) -> Result<()> {
    if !alpha.is_positive() || *alpha >= Ratio::one() {
        return Err(Error::domain(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    Ok(())
}

pub fn pmf(k: u32) -> Result<AtomTable> {
    Ok(EqualWeightSum::new(k)?.pmf())
}

pub fn strict_tail(k: u32, t: &Threshold) -> Result<Dyadic> {
    Ok(EqualWeightSum::new(k)?.strict_tail(t))
}

pub fn weak_tail(k: u32, t: &Threshold) -> Result<Dyadic> {
    Ok(EqualWeightSum::new(k)?.weak_tail(t))
}

pub fn mid_tail(k: u32, t: &Threshold) -> Result<Dyadic> {
    Ok(EqualWeightSum::new(k)?.mid_tail(t))
}

pub fn mid_quantile(k: u32, alpha: &Ratio) -> Result<Threshold> {
    EqualWeightSum::new(k)?.mid_quantile(alpha)
}

/// Tails of `S_k` at a fixed threshold `t ≥ 0` for `k, k+1, k+2, ...`.
///
/// Each step reuses the previous row through Pascal's rule, so advancing
/// costs a constant number of big-integer operations instead of a fresh
/// partial sum.
#[derive(Debug, Clone)]
pub struct TailStream {
    t: Threshold,
    k: u32,
    /// First count with atom strictly above `t`; `≥ 1` because `t ≥ 0`.
    m: u32,
    /// `C(k, m - 1)`.
    below: BigUint,
    /// `Σ_{j ≥ m} C(k, j)`.
    upper: BigUint,
}

impl TailStream {
    pub fn new(k: u32, t: &Threshold) -> Result<Self> {
        if t.is_negative() {
            return Err(Error::domain("tail stream needs t >= 0"));
        }
        let s = EqualWeightSum::new(k)?;
        let m = s.boundary(t);
        debug_assert!(m >= 1);
        // walk C(k, j) down from j = k: C(k, j-1) = C(k, j) j / (k - j + 1)
        let mut c = BigUint::one();
        let mut upper = BigUint::zero();
        for j in (m..=k).rev() {
            upper += &c;
            c = c * j / (k - j + 1);
        }
        Ok(TailStream { t: t.clone(), k, m, below: c, upper })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    fn atom(&self, m: u32) -> Ordering {
        cmp_lattice_threshold(&LatticeValue::from_count(m, self.k), &self.t)
    }

    fn at_mass(&self) -> Option<&BigUint> {
        (self.atom(self.m - 1) == Ordering::Equal).then_some(&self.below)
    }

    pub fn strict_tail(&self) -> Dyadic {
        Dyadic::new(self.upper.clone(), self.k as u64)
    }

    pub fn weak_tail(&self) -> Dyadic {
        match self.at_mass() {
            Some(c) => Dyadic::new(&self.upper + c, self.k as u64),
            None => self.strict_tail(),
        }
    }

    pub fn mid_tail(&self) -> Dyadic {
        let twice = &self.upper << 1u32;
        match self.at_mass() {
            Some(c) => Dyadic::new(twice + c, self.k as u64 + 1),
            None => Dyadic::new(twice, self.k as u64 + 1),
        }
    }

    /// Moves from `k` to `k + 1`.
    pub fn advance(&mut self) {
        let k = self.k;
        let m = self.m;
        // U(k+1, m) = 2 U(k, m) + C(k, m-1);  C(k+1, m-1) = C(k, m-1)(k+1)/(k-m+2)
        self.upper = (&self.upper << 1u32) + &self.below;
        self.below = &self.below * (k + 1) / (k + 2 - m);
        self.k = k + 1;
        let k = self.k;
        while self.m >= 2 && self.atom(self.m - 1) == Ordering::Greater {
            self.upper += &self.below;
            self.m -= 1;
            // C(k, m-1) = C(k, m) m / (k - m + 1)
            self.below = &self.below * self.m / (k - self.m + 1);
        }
        while self.m <= k && self.atom(self.m) != Ordering::Greater {
            // C(k, m) = C(k, m-1) (k - m + 1) / m
            let c_m = &self.below * (k - self.m + 1) / self.m;
            self.upper -= &c_m;
            self.m += 1;
            self.below = c_m;
        }
    }
}

impl Iterator for TailStream {
    type Item = (u32, Dyadic);

    /// Yields `(k, mid_tail)` and advances.
    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.k, self.mid_tail());
        self.advance();
        Some(out)
    }
}
