use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Ratio;

/// Nonnegative dyadic rational `num / 2^exp`.
///
/// Canonical form: `num` odd, or `num = 0` with `exp = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    exp: u64,
}

impl Dyadic {
    pub fn new(num: impl Into<BigUint>, exp: u64) -> Self {
        let mut num = num.into();
        if num.is_zero() {
            return Dyadic::zero();
        }
        let tz = num.trailing_zeros().unwrap_or(0).min(exp);
        num >>= tz;
        Dyadic { num, exp: exp - tz }
    }

    pub fn zero() -> Self {
        Dyadic { num: BigUint::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigUint::one(), exp: 0 }
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        Dyadic::new(a + b, e)
    }

    /// `self - other`, or `None` when the difference would be negative.
    pub fn checked_sub(&self, other: &Dyadic) -> Option<Dyadic> {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        if a < b {
            None
        } else {
            Some(Dyadic::new(a - b, e))
        }
    }

    pub fn halve(&self) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { num: self.num.clone(), exp: self.exp + 1 }
    }

    /// Exact comparison with a rational.
    pub fn cmp_ratio(&self, r: &Ratio) -> Ordering {
        // num/2^exp vs p/q with q > 0  <=>  num*q vs p*2^exp
        let lhs = BigInt::from(self.num.clone()) * r.denom();
        let rhs = r.numer() << self.exp;
        lhs.cmp(&rhs)
    }

    pub fn to_ratio(&self) -> Ratio {
        Ratio::new(BigInt::from(self.num.clone()), BigInt::one() << self.exp)
            .expect("power of two is nonzero")
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.num.bits();
        let shift = bits.saturating_sub(64);
        let mant = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
        let e = shift as i64 - self.exp as i64;
        if e < -1100 {
            0.0
        } else if e > 1100 {
            f64::INFINITY
        } else {
            mant * 2f64.powi(e as i32)
        }
    }

    /// Decimal expansion with exactly `digits` fractional digits, rounded
    /// half to even.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigUint::from(10u32).pow(digits as u32);
        let scaled = &self.num * &scale;
        let mut q = &scaled >> self.exp;
        if self.exp > 0 {
            let rem = &scaled - (&q << self.exp);
            let twice = rem << 1u32;
            let unit = BigUint::one() << self.exp;
            match twice.cmp(&unit) {
                Ordering::Greater => q += 1u32,
                Ordering::Equal if q.is_odd() => q += 1u32,
                _ => {}
            }
        }
        format_fixed(&q, &scale, digits)
    }

    /// The full, terminating decimal expansion.
    pub fn to_exact_decimal(&self) -> String {
        self.to_decimal(self.exp as usize)
    }
}

fn format_fixed(q: &BigUint, scale: &BigUint, digits: usize) -> String {
    let (int, frac) = q.div_rem(scale);
    if digits == 0 {
        return int.to_string();
    }
    format!("{int}.{:0>width$}", frac.to_string(), width = digits)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigUint::one() << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({}/2^{})", self.num, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u64, e: u64) -> Dyadic {
        Dyadic::new(n, e)
    }

    #[test]
    fn halve_and_add() {
        assert_eq!(d(1, 4).halve(), d(1, 5));
        assert_eq!(d(9, 8).add(&d(1, 8)), d(5, 7));
        assert_eq!(d(5, 7).num(), &BigUint::from(5u32));
        assert_eq!(d(5, 7).exp(), 7);
    }

    #[test]
    fn canonical_zero() {
        let z = d(0, 12);
        assert_eq!(z.exp(), 0);
        assert_eq!(d(3, 2).checked_sub(&d(3, 2)), Some(Dyadic::zero()));
        assert_eq!(d(1, 2).checked_sub(&d(3, 2)), None);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(d(9, 8).to_decimal(6), "0.035156");
        assert_eq!(d(1, 1).to_decimal(6), "0.500000");
        assert_eq!(Dyadic::one().to_decimal(2), "1.00");
        // 0.125 -> 0.12 (tie to even), 0.375 -> 0.38
        assert_eq!(d(1, 3).to_decimal(2), "0.12");
        assert_eq!(d(3, 3).to_decimal(2), "0.38");
        assert_eq!(d(1, 1).to_decimal(0), "0");
        assert_eq!(d(3, 1).to_decimal(0), "2");
        assert_eq!(d(249589, 27).to_decimal(6), "0.001860");
        assert_eq!(d(9, 8).to_exact_decimal(), "0.03515625");
    }

    #[test]
    fn ratio_comparison() {
        let r = Ratio::new(1, 20).unwrap();
        assert_eq!(d(9, 8).cmp_ratio(&r), Ordering::Less);
        assert_eq!(d(1, 2).cmp_ratio(&Ratio::new(1, 4).unwrap()), Ordering::Equal);
        assert_eq!(d(1, 4).cmp_ratio(&r), Ordering::Greater);
    }

    #[test]
    fn float_conversion_handles_huge_exponents() {
        assert_eq!(d(1, 3).to_f64(), 0.125);
        let tiny = Dyadic::new(BigUint::one(), 5000);
        assert_eq!(tiny.to_f64(), 0.0);
        let big = Dyadic::new((BigUint::one() << 4000u32) - 1u32, 4001);
        assert!((big.to_f64() - 0.5).abs() < 1e-15);
    }
}
