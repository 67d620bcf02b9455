//! Discrete power-law fitting: maximum-likelihood exponent with the lower
//! cutoff chosen by minimizing the Kolmogorov–Smirnov distance over
//! candidate cutoffs, plus an exact inverse-CDF sampler (the recovery
//! oracle in the tests).

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};

/// Fitted tail of a discrete power law P(f) ∝ f^(−α) for f ≥ xmin.
#[derive(Debug, Clone, Serialize)]
pub struct ZipfFit {
    pub alpha: f64,
    pub xmin: u64,
    pub n_tail: usize,
    pub ks_distance: f64,
}

/// Smallest tail size considered when scanning xmin candidates.
const MIN_TAIL: usize = 10;

/// Fits a discrete power law to positive integer frequencies (needs at
/// least 100 values; a constant sample is degenerate).
pub fn fit_zipf(frequencies: &[u64]) -> Result<ZipfFit> {
    if frequencies.len() < 100 {
        return Err(Error::InvalidInput(format!(
            "fit_zipf needs at least 100 values (got {})",
            frequencies.len()
        )));
    }
    if frequencies.iter().any(|&f| f == 0) {
        return Err(Error::InvalidInput("frequencies must be positive".into()));
    }
    let mut sorted = frequencies.to_vec();
    sorted.sort_unstable();
    if sorted[0] == sorted[sorted.len() - 1] {
        return Err(Error::DegenerateSample("all frequencies are equal".into()));
    }

    let mut unique = sorted.clone();
    unique.dedup();

    let mut best: Option<ZipfFit> = None;
    for &xmin in &unique {
        // Tail starts at the first value ≥ xmin.
        let start = sorted.partition_point(|&v| v < xmin);
        let tail = &sorted[start..];
        if tail.len() < MIN_TAIL || tail[0] == tail[tail.len() - 1] {
            continue;
        }
        let sum_ln: f64 = tail.iter().map(|&v| (v as f64).ln()).sum();
        let alpha = mle_alpha(xmin, tail.len(), sum_ln);
        let ks = ks_distance(tail, alpha, xmin);
        let better = match &best {
            None => true,
            Some(b) => ks < b.ks_distance,
        };
        if better {
            best = Some(ZipfFit { alpha, xmin, n_tail: tail.len(), ks_distance: ks });
        }
    }
    best.ok_or_else(|| Error::DegenerateSample("no viable xmin candidate".into()))
}

/// Maximizes the discrete power-law log-likelihood
/// ℓ(α) = −n·ln ζ(α, xmin) − α·Σ ln x by golden-section search
/// (the likelihood is concave in α).
fn mle_alpha(xmin: u64, n: usize, sum_ln: f64) -> f64 {
    let ll = |alpha: f64| -> f64 {
        -(n as f64) * hurwitz_zeta(alpha, xmin as f64).ln() - alpha * sum_ln
    };
    let (mut lo, mut hi) = (1.0 + 1e-6, 25.0);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = ll(x1);
    let mut f2 = ll(x2);
    while hi - lo > 1e-9 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = ll(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = ll(x1);
        }
    }
    0.5 * (lo + hi)
}

/// KS distance between the tail's empirical CDF and the model CDF,
/// evaluated at the distinct data values.
fn ks_distance(tail: &[u64], alpha: f64, xmin: u64) -> f64 {
    let n = tail.len() as f64;
    let z_norm = hurwitz_zeta(alpha, xmin as f64);
    let mut max_dev = 0.0f64;
    let mut i = 0;
    while i < tail.len() {
        let v = tail[i];
        let mut j = i + 1;
        while j < tail.len() && tail[j] == v {
            j += 1;
        }
        let ecdf = j as f64 / n;
        let model = 1.0 - hurwitz_zeta(alpha, (v + 1) as f64) / z_norm;
        max_dev = max_dev.max((ecdf - model).abs());
        i = j;
    }
    max_dev
}

/// Hurwitz zeta ζ(s, q) = Σ_{k≥0} (q+k)^(−s) for s > 1, q > 0, by direct
/// summation up to q+N ≥ 25 plus an Euler–Maclaurin tail.
pub(crate) fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    debug_assert!(s > 1.0 && q > 0.0);
    let n = if q >= 25.0 { 0 } else { (25.0 - q).ceil() as usize };
    let mut sum = 0.0;
    for k in 0..n {
        sum += (q + k as f64).powf(-s);
    }
    let a = q + n as f64;
    let mut tail = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // Bernoulli corrections B2/2!, B4/4!, B6/6!, B8/8! with rising factorials.
    let mut poch = s;
    tail += poch / 12.0 * a.powf(-s - 1.0);
    poch *= (s + 1.0) * (s + 2.0);
    tail -= poch / 720.0 * a.powf(-s - 3.0);
    poch *= (s + 3.0) * (s + 4.0);
    tail += poch / 30240.0 * a.powf(-s - 5.0);
    poch *= (s + 5.0) * (s + 6.0);
    tail -= poch / 1_209_600.0 * a.powf(-s - 7.0);
    sum + tail
}

/// Draws `n` samples from the discrete power law with exponent `alpha` and
/// lower cutoff `xmin` by exact inversion of the zeta-ratio CDF.
pub fn sample_discrete_power_law(alpha: f64, xmin: u64, n: usize, seed: u64) -> Vec<u64> {
    assert!(alpha > 1.0 && xmin >= 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let z_norm = hurwitz_zeta(alpha, xmin as f64);
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            // Smallest x ≥ xmin with ζ(α, x+1) ≤ (1−u)·ζ(α, xmin).
            let target = (1.0 - u) * z_norm;
            if hurwitz_zeta(alpha, (xmin + 1) as f64) <= target {
                return xmin;
            }
            let mut lo = xmin; // ζ(lo+1) > target
            let mut hi = (2 * xmin).max(xmin + 1);
            while hurwitz_zeta(alpha, (hi + 1) as f64) > target {
                lo = hi;
                hi = hi.saturating_mul(2);
                if hi > 1 << 50 {
                    break;
                }
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if hurwitz_zeta(alpha, (mid + 1) as f64) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) {
        assert!((a - b).abs() <= rel * b.abs(), "{a} vs {b}");
    }

    // Reference values from mpmath.zeta(s, a) at 30 digits.
    #[test]
    fn hurwitz_zeta_reference_values() {
        close(hurwitz_zeta(1.8, 1.0), 1.882229618102822, 1e-12);
        close(hurwitz_zeta(1.8, 10.0), 0.20627343017543559, 1e-12);
        close(hurwitz_zeta(2.5, 1.0), 1.3414872572509172, 1e-12);
        close(hurwitz_zeta(2.5, 5.0), 0.06931053204432188, 1e-12);
        close(hurwitz_zeta(1.2, 1.0), 5.5915824411777508, 1e-12);
        close(hurwitz_zeta(3.5, 100.0), 4.0502916546368129e-6, 1e-12);
    }

    #[test]
    fn sampler_matches_model_head_probabilities() {
        let alpha = 2.5;
        let n = 50_000;
        let samples = sample_discrete_power_law(alpha, 1, n, 7);
        let z = hurwitz_zeta(alpha, 1.0);
        for x in 1..=3u64 {
            let p_model = (x as f64).powf(-alpha) / z;
            let p_emp = samples.iter().filter(|&&v| v == x).count() as f64 / n as f64;
            let sigma = (p_model * (1.0 - p_model) / n as f64).sqrt();
            assert!(
                (p_emp - p_model).abs() < 4.0 * sigma,
                "P({x}): model {p_model}, empirical {p_emp}"
            );
        }
    }

    #[test]
    fn recovers_alpha_2_5() {
        let samples = sample_discrete_power_law(2.5, 1, 100_000, 42);
        let fit = fit_zipf(&samples).unwrap();
        assert!((fit.alpha - 2.5).abs() <= 0.05, "alpha = {}", fit.alpha);
        assert!(fit.alpha > 1.0 && fit.xmin >= 1 && fit.n_tail >= 1);
    }

    #[test]
    fn constant_sample_is_degenerate() {
        let data = vec![7u64; 200];
        assert!(matches!(fit_zipf(&data), Err(Error::DegenerateSample(_))));
    }

    #[test]
    fn short_sample_is_rejected() {
        let data: Vec<u64> = (1..=99).collect();
        assert!(matches!(fit_zipf(&data), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn zero_frequency_is_rejected() {
        let mut data: Vec<u64> = (1..=200).collect();
        data[3] = 0;
        assert!(fit_zipf(&data).is_err());
    }
}
