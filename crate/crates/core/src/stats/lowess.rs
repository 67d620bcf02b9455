//! Cleveland's LOWESS: locally weighted linear regression with tricube
//! weights over the nearest ⌈frac·n⌉ points and optional bisquare
//! robustifying passes.

use crate::error::{Error, Result};

/// Smooths `y` as a function of `x`.
///
/// `frac` is the fraction of points used in each local fit (0 < frac ≤ 1),
/// `iters` the number of robustifying passes after the initial fit.
/// Fitted values are returned in the input order; `x` need not be sorted.
pub fn lowess(x: &[f64], y: &[f64], frac: f64, iters: usize) -> Result<Vec<f64>> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "lowess inputs differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Ok(Vec::new());
    }
    if !(frac > 0.0 && frac <= 1.0) {
        return Err(Error::InvalidInput(format!("lowess frac {frac} not in (0, 1]")));
    }
    if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("lowess inputs must be finite".into()));
    }
    let n = x.len();
    if n == 1 {
        return Ok(y.to_vec());
    }

    // Work on x-sorted copies, restore input order at the end.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap());
    let xs: Vec<f64> = order.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();

    let q = ((frac * n as f64).ceil() as usize).clamp(2, n);
    let mut robustness = vec![1.0; n];
    let mut fitted = vec![0.0; n];

    for pass in 0..=iters {
        let mut lo = 0usize;
        for i in 0..n {
            // Slide the q-point window right while that brings it closer to
            // xs[i]; the optimal start is monotone in i for sorted x.
            while lo + q < n && xs[i] - xs[lo] > xs[lo + q] - xs[i] {
                lo += 1;
            }
            let hi = lo + q;
            let h = (xs[i] - xs[lo]).max(xs[hi - 1] - xs[i]);

            let (mut sw, mut swx, mut swy, mut swxx, mut swxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for j in lo..hi {
                let w = if h > 0.0 {
                    robustness[j] * tricube((xs[j] - xs[i]).abs() / h)
                } else {
                    robustness[j]
                };
                sw += w;
                swx += w * xs[j];
                swy += w * ys[j];
                swxx += w * xs[j] * xs[j];
                swxy += w * xs[j] * ys[j];
            }
            fitted[i] = if sw <= 0.0 {
                // Every window point is a hard outlier: fall back to the mean.
                ys[lo..hi].iter().sum::<f64>() / q as f64
            } else {
                let denom = sw * swxx - swx * swx;
                // Guard against a degenerate design (all x equal in window).
                if denom.abs() <= 1e-12 * sw * swxx.abs().max(1.0) {
                    swy / sw
                } else {
                    let slope = (sw * swxy - swx * swy) / denom;
                    let intercept = (swy - slope * swx) / sw;
                    intercept + slope * xs[i]
                }
            };
        }

        if pass == iters {
            break;
        }
        // Bisquare robustness weights from the residuals.
        let mut abs_res: Vec<f64> = (0..n).map(|i| (ys[i] - fitted[i]).abs()).collect();
        abs_res.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = if n % 2 == 1 {
            abs_res[n / 2]
        } else {
            0.5 * (abs_res[n / 2 - 1] + abs_res[n / 2])
        };
        if median <= 0.0 {
            break; // perfect fit
        }
        let cutoff = 6.0 * median;
        for i in 0..n {
            let u = (ys[i] - fitted[i]).abs() / cutoff;
            robustness[i] = if u < 1.0 { (1.0 - u * u).powi(2) } else { 0.0 };
        }
    }

    let mut out = vec![0.0; n];
    for (pos, &orig) in order.iter().enumerate() {
        out[orig] = fitted[pos];
    }
    Ok(out)
}

fn tricube(u: f64) -> f64 {
    if u < 1.0 {
        let t = 1.0 - u * u * u;
        t * t * t
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_data_is_reproduced_exactly() {
        let x: Vec<f64> = (0..40).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 7.0).collect();
        for (frac, iters) in [(0.3, 0), (0.67, 3), (1.0, 0)] {
            let fit = lowess(&x, &y, frac, iters).unwrap();
            for (f, t) in fit.iter().zip(&y) {
                assert!((f - t).abs() < 1e-9, "frac={frac} iters={iters}: {f} vs {t}");
            }
        }
    }

    #[test]
    fn constant_data_stays_constant() {
        let x: Vec<f64> = (0..25).map(|i| i as f64).collect();
        let y = vec![0.155; 25];
        let fit = lowess(&x, &y, 0.67, 3).unwrap();
        for f in fit {
            assert!((f - 0.155).abs() < 1e-12);
        }
    }

    #[test]
    fn single_point_passthrough() {
        assert_eq!(lowess(&[2.0], &[5.0], 0.67, 3).unwrap(), vec![5.0]);
    }

    #[test]
    fn unsorted_input_matches_sorted() {
        let x = [4.0, 1.0, 3.0, 0.0, 2.0, 5.0];
        let y = [8.5, 2.0, 6.1, 0.3, 3.9, 10.2];
        let fit = lowess(&x, &y, 0.8, 1).unwrap();
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        let ys = [0.3, 2.0, 3.9, 6.1, 8.5, 10.2];
        let fit_sorted = lowess(&xs, &ys, 0.8, 1).unwrap();
        assert!((fit[3] - fit_sorted[0]).abs() < 1e-12);
        assert!((fit[0] - fit_sorted[4]).abs() < 1e-12);
    }
}
