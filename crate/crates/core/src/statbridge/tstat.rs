//! The self-normalised sum and Student's T.
//!
//! With `S = Σ xᵢ / ‖x‖₂` over `n` observations, `T = S·√((n−1)/(n−S²))`,
//! which is strictly increasing on `|S| < √n`.

use crate::error::{Error, Result};

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("T needs n >= 2 observations, got {n}")));
    }
    Ok(())
}

/// `T` as a function of `S`; errors at and beyond the pole `S² = n`.
pub fn s_to_t(s: f64, n: u32) -> Result<f64> {
    check_n(n)?;
    let n = f64::from(n);
    // fused n - s² keeps the subtraction's own rounding out of the pole region
    let gap = s.mul_add(-s, n);
    if !s.is_finite() || gap <= 0.0 {
        return Err(Error::domain(format!("|S| = {} is not below sqrt(n) = {}", s.abs(), n.sqrt())));
    }
    Ok(s * ((n - 1.0) / gap).sqrt())
}

/// Inverse of [`s_to_t`]: `S = T·√(n/(n−1+T²))`.
pub fn t_to_s(t: f64, n: u32) -> Result<f64> {
    check_n(n)?;
    if !t.is_finite() {
        return Err(Error::domain("T must be finite"));
    }
    let n = f64::from(n);
    Ok(t * (n / (n - 1.0 + t * t)).sqrt())
}

/// Sub-Gaussian bound `exp(−t²/2)`.
pub fn hoeffding_bound(t: f64) -> f64 {
    (-0.5 * t * t).exp()
}
