use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use super::{exact_sqrt, LatticeValue, Ratio};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: i8) -> Sign {
        match x.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// How a threshold prints: as a rational when its square is a perfect
/// rational square, otherwise as `sqrt(..)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DisplayHint {
    Rational,
    Surd,
}

/// Exact real `sign·√sq` with `sq` a nonnegative rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Threshold {
    sign: Sign,
    sq: Ratio,
    hint: DisplayHint,
}

impl Threshold {
    fn build(sign: Sign, sq: Ratio) -> Threshold {
        debug_assert!(!sq.is_negative());
        let sign = if sq.is_zero() { Sign::Zero } else { sign };
        let hint = if rational_root(&sq).is_some() {
            DisplayHint::Rational
        } else {
            DisplayHint::Surd
        };
        Threshold { sign, sq, hint }
    }

    pub fn zero() -> Threshold {
        Threshold::build(Sign::Zero, Ratio::zero())
    }

    /// The rational `r` itself.
    pub fn from_ratio(r: &Ratio) -> Threshold {
        Threshold::build(Sign::of(r.signum()), r.square())
    }

    pub fn from_integer(n: i64) -> Threshold {
        Threshold::from_ratio(&Ratio::from_integer(n))
    }

    /// `+√r` for `r ≥ 0`.
    pub fn sqrt(r: &Ratio) -> Result<Threshold> {
        if r.is_negative() {
            return Err(Error::domain(format!("sqrt of negative number {r}")));
        }
        Ok(Threshold::build(Sign::Positive, r.clone()))
    }

    /// `sign·√sq`, with `sign` ignored when `sq = 0`.
    pub fn signed_sqrt(sign: Sign, sq: Ratio) -> Result<Threshold> {
        if sq.is_negative() {
            return Err(Error::domain("square must be nonnegative"));
        }
        if sign == Sign::Zero && !sq.is_zero() {
            return Err(Error::domain("zero sign with nonzero magnitude"));
        }
        Ok(Threshold::build(sign, sq))
    }

    pub fn from_lattice(v: &LatticeValue) -> Threshold {
        let a = v.a() as i128;
        let sq = Ratio::new(BigInt::from(a * a), BigInt::from(v.k())).expect("k >= 1");
        Threshold::build(Sign::of(v.a().signum() as i8), sq)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The square `t²`.
    pub fn square(&self) -> &Ratio {
        &self.sq
    }

    pub fn display_hint(&self) -> DisplayHint {
        self.hint
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn neg(&self) -> Threshold {
        Threshold { sign: self.sign.flip(), sq: self.sq.clone(), hint: self.hint }
    }

    /// The threshold as an exact rational, when it is one.
    pub fn as_ratio(&self) -> Option<Ratio> {
        let root = rational_root(&self.sq)?;
        Some(if self.is_negative() { -root } else { root })
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.sq.to_f64().sqrt();
        match self.sign {
            Sign::Negative => -m,
            Sign::Zero => 0.0,
            Sign::Positive => m,
        }
    }
}

pub(crate) fn rational_root(r: &Ratio) -> Option<Ratio> {
    if r.is_negative() {
        return None;
    }
    let p = exact_sqrt(r.numer().magnitude())?;
    let q = exact_sqrt(r.denom().magnitude())?;
    Some(Ratio::new(BigInt::from(p), BigInt::from(q)).expect("nonzero root"))
}

impl Ord for Threshold {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                Sign::Zero => Ordering::Equal,
                Sign::Positive => self.sq.cmp(&other.sq),
                Sign::Negative => other.sq.cmp(&self.sq),
            },
            o => o,
        }
    }
}

impl PartialOrd for Threshold {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints in the parse grammar: `2`, `-3/2`, `sqrt(5)`, `-sqrt(3/2)`.
impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_ratio() {
            return write!(f, "{r}");
        }
        let minus = if self.is_negative() { "-" } else { "" };
        write!(f, "{minus}sqrt({})", self.sq)
    }
}

impl fmt::Debug for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Threshold({self})")
    }
}

impl std::str::FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::parse_threshold(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Ratio {
        Ratio::new(p, q).unwrap()
    }

    #[test]
    fn display_forms() {
        assert_eq!(Threshold::sqrt(&r(4, 1)).unwrap().to_string(), "2");
        assert_eq!(Threshold::sqrt(&r(5, 1)).unwrap().to_string(), "sqrt(5)");
        assert_eq!(Threshold::sqrt(&r(3, 2)).unwrap().neg().to_string(), "-sqrt(3/2)");
        assert_eq!(Threshold::from_ratio(&r(-3, 2)).to_string(), "-3/2");
        assert_eq!(Threshold::zero().to_string(), "0");
    }

    #[test]
    fn ordering_across_signs() {
        let a = Threshold::from_integer(-2);
        let b = Threshold::from_integer(-1);
        let c = Threshold::zero();
        let d = Threshold::sqrt(&r(2, 1)).unwrap();
        let e = Threshold::from_ratio(&r(3, 2));
        let mut v = vec![e.clone(), c.clone(), a.clone(), d.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c, d, e]);
    }

    #[test]
    fn hints() {
        assert_eq!(Threshold::from_integer(3).display_hint(), DisplayHint::Rational);
        assert_eq!(Threshold::sqrt(&r(3, 1)).unwrap().display_hint(), DisplayHint::Surd);
        assert!(Threshold::sqrt(&r(-1, 1)).is_err());
    }
}
