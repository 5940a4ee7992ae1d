use std::cmp::Ordering;

use num_bigint::BigInt;

use super::{Sign, Threshold};
use crate::error::{Error, Result};

/// Atom `a/√k` of the equal-weight sum over `k` coordinates, `a = 2m - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeValue {
    a: i64,
    k: u32,
}

impl LatticeValue {
    pub fn new(a: i64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("lattice value needs k >= 1"));
        }
        if a.unsigned_abs() > k as u64 || (a - k as i64).rem_euclid(2) != 0 {
            return Err(Error::domain(format!("({a}, {k}) is not an atom of S_{k}")));
        }
        Ok(LatticeValue { a, k })
    }

    /// `a/√k` without the parity and range checks of [`LatticeValue::new`].
    ///
    /// The comparison functions are valid for any such pair.
    pub fn raw(a: i64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("lattice value needs k >= 1"));
        }
        Ok(LatticeValue { a, k })
    }

    /// The atom with `m` positive signs out of `k`.
    pub fn from_count(m: u32, k: u32) -> Self {
        debug_assert!(m <= k && k >= 1);
        LatticeValue { a: 2 * m as i64 - k as i64, k }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of positive signs realising this atom.
    pub fn count(&self) -> u32 {
        ((self.a + self.k as i64) / 2) as u32
    }

    pub fn sign(&self) -> Sign {
        Sign::of(self.a.signum() as i8)
    }

    pub fn to_threshold(&self) -> Threshold {
        Threshold::from_lattice(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.a as f64 / (self.k as f64).sqrt()
    }
}

/// Exact order of `a/√k` against `sign·√(p/q)`.
pub fn cmp_lattice_threshold(v: &LatticeValue, t: &Threshold) -> Ordering {
    let sv = v.sign();
    match sv.cmp(&t.sign()) {
        Ordering::Equal => {}
        o => return o,
    }
    if sv == Sign::Zero {
        return Ordering::Equal;
    }
    // compare squares: a²/k vs p/q  <=>  a²·q vs p·k
    let sq = t.square();
    let a2 = BigInt::from(v.a as i128 * v.a as i128);
    let lhs = a2 * sq.denom();
    let rhs = sq.numer() * BigInt::from(v.k);
    let mag = lhs.cmp(&rhs);
    if sv == Sign::Negative {
        mag.reverse()
    } else {
        mag
    }
}

/// Exact order of `a/√k` against `b/√k'`.
pub fn cmp_lattice_lattice(u: &LatticeValue, v: &LatticeValue) -> Ordering {
    let (su, sv) = (u.sign(), v.sign());
    match su.cmp(&sv) {
        Ordering::Equal => {}
        o => return o,
    }
    if su == Sign::Zero {
        return Ordering::Equal;
    }
    // a²·k' vs b²·k fits in i128 since |a| <= k < 2^32
    let lhs = (u.a as i128 * u.a as i128) * v.k as i128;
    let rhs = (v.a as i128 * v.a as i128) * u.k as i128;
    let mag = lhs.cmp(&rhs);
    if su == Sign::Negative {
        mag.reverse()
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Ratio;

    fn lv(a: i64, k: u32) -> LatticeValue {
        LatticeValue::new(a, k).unwrap()
    }

    fn sqrt(n: i64) -> Threshold {
        Threshold::sqrt(&Ratio::from_integer(n)).unwrap()
    }

    #[test]
    fn lattice_vs_threshold() {
        assert_eq!(cmp_lattice_threshold(&lv(2, 2), &sqrt(2)), Ordering::Equal);
        // 9/4 > 2
        let three_halves = LatticeValue::raw(3, 4).unwrap();
        assert_eq!(cmp_lattice_threshold(&three_halves, &sqrt(2)), Ordering::Greater);
        assert_eq!(cmp_lattice_threshold(&lv(-1, 1), &Threshold::zero()), Ordering::Less);
        assert_eq!(cmp_lattice_threshold(&lv(-2, 4), &sqrt(2).neg()), Ordering::Greater);
        assert_eq!(cmp_lattice_threshold(&lv(0, 4), &Threshold::zero()), Ordering::Equal);
    }

    #[test]
    fn lattice_vs_lattice() {
        let three_halves = LatticeValue::raw(3, 4).unwrap();
        assert_eq!(cmp_lattice_lattice(&lv(2, 2), &three_halves), Ordering::Less);
        assert_eq!(cmp_lattice_lattice(&lv(1, 1), &lv(2, 4)), Ordering::Equal);
        assert_eq!(cmp_lattice_lattice(&lv(-3, 9), &lv(0, 4)), Ordering::Less);
        assert_eq!(cmp_lattice_lattice(&lv(-3, 9), &lv(-2, 4)), Ordering::Equal);
    }

    #[test]
    fn rejects_bad_parity() {
        assert!(LatticeValue::new(1, 2).is_err());
        assert!(LatticeValue::new(5, 3).is_err());
        assert!(LatticeValue::new(0, 0).is_err());
        assert_eq!(lv(-1, 3).count(), 1);
    }
}
