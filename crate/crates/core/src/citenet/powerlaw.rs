//! Power-law fitting: log-log least squares for paired series and discrete
//! maximum likelihood for heavy-tailed samples.

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerLawMethod {
    LoglogLs,
    DiscreteMle,
}

impl PowerLawMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            PowerLawMethod::LoglogLs => "loglog_ls",
            PowerLawMethod::DiscreteMle => "discrete_mle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub method: PowerLawMethod,
    /// Lower cutoff (MLE only).
    pub x_min: Option<u64>,
    /// Coefficient of determination on the log scale (least squares only;
    /// `None` when `ln y` is constant).
    pub r_squared: Option<f64>,
    /// `ln` of the prefactor (least squares only).
    pub intercept: Option<f64>,
    /// Closed-form estimate `1 + n / Σ ln(x / (x_min − ½))` (MLE only).
    pub alpha_approx: Option<f64>,
    pub n_samples: usize,
}

/// Fits `y = C·x^α` by least squares on `(ln x, ln y)`.
pub fn fit_power_law_ls(x: &[f64], y: &[f64]) -> Result<PowerLawFit> {
    if x.len() != y.len() {
        return Err(Error::InvalidParameter("x and y differ in length"));
    }
    if x.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: x.len() });
    }
    if let Some(&bad) = x.iter().chain(y).find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::NonPositive(bad));
    }
    let lx: Vec<f64> = x.iter().map(|&v| math::ln(v)).collect();
    let ly: Vec<f64> = y.iter().map(|&v| math::ln(v)).collect();
    let line = math::fit_line(&lx, &ly).ok_or(Error::DegenerateVariance)?;
    Ok(PowerLawFit {
        alpha: line.slope,
        method: PowerLawMethod::LoglogLs,
        x_min: None,
        r_squared: line.r_squared,
        intercept: Some(line.intercept),
        alpha_approx: None,
        n_samples: x.len(),
    })
}

const BERNOULLI_2K: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Hurwitz zeta `ζ(s, q) = Σ_{k≥0} (q + k)^(−s)` for `s > 1`, `q > 0`, by
/// Euler–Maclaurin summation.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    const DIRECT: usize = 12;
    let mut sum = 0.0;
    for k in 0..DIRECT {
        sum += math::powf(q + k as f64, -s);
    }
    let a = q + DIRECT as f64;
    sum += math::powf(a, 1.0 - s) / (s - 1.0) + 0.5 * math::powf(a, -s);
    // Σ B_2k / (2k)! · s(s+1)…(s+2k−2) · a^(−s−2k+1)
    let mut rising = s; // s(s+1)…(s+2k−2)
    let mut factorial = 2.0; // (2k)!
    let mut power = math::powf(a, -s - 1.0);
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let term = b / factorial * rising * power;
        sum += term;
        let k2 = 2.0 * (k as f64 + 1.0);
        rising *= (s + k2 - 1.0) * (s + k2);
        factorial *= (k2 + 1.0) * (k2 + 2.0);
        power /= a * a;
    }
    sum
}

/// Discrete power-law exponent of the samples `≥ x_min` by maximum
/// likelihood.
///
/// Maximizes `−n·ln ζ(α, x_min) − α·Σ ln x_i`, which is concave in `α`, by
/// golden-section search on `(1, 50]`. The closed-form continuous
/// approximation is reported as `alpha_approx`; it is close to the exact
/// estimate for large `x_min` but biased low near `x_min = 1`.
pub fn fit_power_law_mle(samples: &[u64], x_min: u64) -> Result<PowerLawFit> {
    if x_min < 1 {
        return Err(Error::InvalidParameter("x_min must be at least 1"));
    }
    let tail: Vec<u64> = samples.iter().copied().filter(|&x| x >= x_min).collect();
    if tail.len() < 50 {
        return Err(Error::TooFewPoints { needed: 50, got: tail.len() });
    }
    if tail.iter().all(|&x| x == tail[0]) {
        return Err(Error::DegenerateSample);
    }
    let n = tail.len() as f64;
    let sum_ln: f64 = tail.iter().map(|&x| math::ln(x as f64)).sum();
    let shift = x_min as f64 - 0.5;
    let approx_denominator: f64 = tail.iter().map(|&x| math::ln(x as f64 / shift)).sum();
    let alpha_approx = 1.0 + n / approx_denominator;

    let q = x_min as f64;
    let neg_loglik = |alpha: f64| n * math::ln(hurwitz_zeta(alpha, q)) + alpha * sum_ln;
    let alpha = golden_min(neg_loglik, 1.0 + 1e-9, 50.0, 1e-12);
    Ok(PowerLawFit {
        alpha,
        method: PowerLawMethod::DiscreteMle,
        x_min: Some(x_min),
        r_squared: None,
        intercept: None,
        alpha_approx: Some(alpha_approx),
        n_samples: tail.len(),
    })
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (math::sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn zeta_known_values() {
        let pi = core::f64::consts::PI;
        assert!((hurwitz_zeta(2.0, 1.0) - pi * pi / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(4.0, 1.0) - pi.powi(4) / 90.0).abs() < 1e-14);
        // ζ(2, 3) = π²/6 − 1 − 1/4
        assert!((hurwitz_zeta(2.0, 3.0) - (pi * pi / 6.0 - 1.25)).abs() < 1e-14);
        // mpmath: zeta(2.5) = 1.341487257250917...
        assert!((hurwitz_zeta(2.5, 1.0) - 1.341_487_257_250_917).abs() < 1e-13);
    }

    #[test]
    fn ls_exact_exponent() {
        let x: Vec<f64> = (1..=20).map(|i| i as f64 * 10.0).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v.powf(1.41)).collect();
        let fit = fit_power_law_ls(&x, &y).unwrap();
        assert!((fit.alpha - 1.41).abs() < 1e-9);
        assert!((fit.r_squared.unwrap() - 1.0).abs() < 1e-12);
        assert!((fit.intercept.unwrap() - 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn ls_constant_y_is_flat() {
        let fit = fit_power_law_ls(&[1.0, 2.0, 3.0, 4.0], &[5.0; 4]).unwrap();
        assert!(fit.alpha.abs() < 1e-12);
    }

    #[test]
    fn ls_rejects_non_positive() {
        assert_eq!(fit_power_law_ls(&[1.0, 0.0, 2.0], &[1.0; 3]), Err(Error::NonPositive(0.0)));
        assert!(matches!(fit_power_law_ls(&[1.0, 2.0], &[1.0; 2]), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn mle_degenerate_sample() {
        assert_eq!(fit_power_law_mle(&[3; 100], 3), Err(Error::DegenerateSample));
        assert!(matches!(fit_power_law_mle(&[1, 2, 3], 1), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn mle_two_value_sample() {
        let samples: Vec<u64> = (0..100).map(|i| 1 + (i % 2)).collect();
        let fit = fit_power_law_mle(&samples, 1).unwrap();
        // Σ ln(x/0.5) = 50·ln 2 + 50·ln 4 = 50·ln 8
        let hand = 1.0 + 2.0 / 8f64.ln();
        assert!((fit.alpha_approx.unwrap() - hand).abs() < 1e-12);
        // exact MLE solves ζ'(α)/ζ(α) = −(ln 2)/2; frozen from mpmath findroot
        assert!((fit.alpha - 2.353_828_175_624_703).abs() < 1e-7, "{}", fit.alpha);
        assert_eq!(fit.n_samples, 100);
    }

    #[test]
    fn mle_ignores_samples_below_cutoff() {
        let mut samples: Vec<u64> = (0..100).map(|i| 5 + (i % 7)).collect();
        samples.extend(vec![1; 30]);
        let fit = fit_power_law_mle(&samples, 5).unwrap();
        assert_eq!(fit.n_samples, 100);
    }
}
