//! Complementary error function and the Gaussian upper tail.
//!
//! W. J. Cody's rational Chebyshev approximations (ACM TOMS 1969, netlib
//! `specfun/erf`) on three ranges: `|x| ≤ 0.46875`, `0.46875 < |x| ≤ 4` and
//! `|x| > 4`. The published relative error is below `1e-16` on each range, so
//! the absolute error of `erfc` is far below `1e-12`. The `exp(-x²)` factor is
//! split as `exp(-x̃²)·exp(-(x - x̃)(x + x̃))` with `x̃ = ⌊16x⌋/16` to avoid
//! cancellation in `x²`.

#![allow(clippy::excessive_precision)] // coefficients kept as published

const SMALL: f64 = 0.46875;
const XBIG: f64 = 26.543;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

const A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302_02,
    3_209.377_589_138_469_5,
    0.185_777_706_184_603_15,
];
const B: [f64; 4] = [
    23.601_290_952_344_122,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];
const C: [f64; 9] = [
    0.564_188_496_988_670_09,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_13,
    881.952_221_241_769_1,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_6,
    1_230.339_354_797_997_2,
    2.153_115_354_744_038_5e-8,
];
const D: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_9,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_7,
    4_362.619_090_143_247,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];
const P: [f64; 6] = [
    0.305_326_634_961_232_36,
    0.360_344_899_949_804_45,
    0.125_781_726_111_229_25,
    0.016_083_785_148_742_275,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_097,
];
const Q: [f64; 5] = [
    2.568_520_192_289_822,
    1.872_952_849_923_460_4,
    0.527_905_102_951_428_4,
    0.060_518_341_312_441_32,
    0.002_335_204_976_268_691_8,
];

/// `exp(-y²)` with the square split at a multiple of 1/16.
fn exp_neg_square(y: f64) -> f64 {
    let head = (y * 16.0).trunc() / 16.0;
    let del = (y - head) * (y + head);
    (-head * head).exp() * (-del).exp()
}

/// `erfc(|x|)` for `|x| > SMALL`.
fn erfc_tail(y: f64) -> f64 {
    if y >= XBIG {
        return 0.0;
    }
    if y <= 4.0 {
        let mut num = C[8] * y;
        let mut den = y;
        for i in 0..7 {
            num = (num + C[i]) * y;
            den = (den + D[i]) * y;
        }
        return (num + C[7]) / (den + D[7]) * exp_neg_square(y);
    }
    let z = 1.0 / (y * y);
    let mut num = P[5] * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + P[i]) * z;
        den = (den + Q[i]) * z;
    }
    let r = z * (num + P[4]) / (den + Q[4]);
    (FRAC_1_SQRT_PI - r) / y * exp_neg_square(y)
}

pub fn erfc(x: f64) -> f64 {
    let y = x.abs();
    if y <= SMALL {
        let z = y * y;
        let mut num = A[4] * z;
        let mut den = z;
        for i in 0..3 {
            num = (num + A[i]) * z;
            den = (den + B[i]) * z;
        }
        return 1.0 - x * (num + A[3]) / (den + B[3]);
    }
    let tail = erfc_tail(y);
    if x < 0.0 {
        2.0 - tail
    } else {
        tail
    }
}

/// `1 - Φ(t)` for the standard normal.
pub fn gaussian_upper_tail(t: f64) -> f64 {
    0.5 * erfc(t / std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson quadrature of the normal density over `[t, t + 40]`.
    fn tail_by_quadrature(t: f64) -> f64 {
        let n = 400_000;
        let h = 40.0 / n as f64;
        let f = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut s = f(t) + f(t + 40.0);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(t + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn matches_quadrature() {
        for &t in &[0.0, 0.3, 0.6629, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 5.66, 6.5, 8.0] {
            let q = tail_by_quadrature(t);
            let g = gaussian_upper_tail(t);
            assert!((g - q).abs() < 1e-13, "t={t}: {g} vs {q}");
        }
    }

    #[test]
    fn reference_values() {
        assert_eq!(gaussian_upper_tail(0.0), 0.5);
        assert!((gaussian_upper_tail(1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!((gaussian_upper_tail(2.0) - 0.022_750_131_948_179_21).abs() < 1e-15);
        assert!((erfc(0.5) - 0.479_500_122_186_953_5).abs() < 1e-15);
        assert!((erfc(-1.0) - 1.842_700_792_949_715).abs() < 1e-15);
        assert_eq!(erfc(30.0), 0.0);
    }

    #[test]
    fn reflection() {
        for i in -80..=80 {
            let t = i as f64 / 10.0;
            let s = gaussian_upper_tail(t) + gaussian_upper_tail(-t);
            assert!((s - 1.0).abs() < 1e-12, "t={t}");
        }
    }
}
