//! Self-contained statistics kernel: chi-square tests, Welch's t,
//! Mann-Whitney U (exact for small samples), Spearman rank correlation,
//! Holm-Šidák correction, dominance effect size, and LOWESS smoothing.
//!
//! All p-values are two-sided. No external numeric dependencies; tail
//! probabilities come from the expansions in [`special`].

mod lowess;
pub(crate) mod special;

pub use lowess::lowess;

use crate::error::{Error, Result};

/// Which effect-size measure a [`TestResult`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectKind {
    CohenD,
    CohenW,
    ClesDominance,
    None,
}

/// Outcome of a hypothesis test.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub effect_size: Option<f64>,
    pub effect_kind: EffectKind,
    pub n1: usize,
    pub n2: usize,
}

impl TestResult {
    pub fn significant(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// Pearson chi-square on a 2×2 contingency table
///
/// ```text
///        with   without
/// grp1    a       b
/// grp2    c       d
/// ```
///
/// without continuity correction. Effect size is Cohen's w = sqrt(χ²/N).
/// Counts may be fractional (percent-as-counts reporting feeds percentages).
pub fn chi_square_2x2(a: f64, b: f64, c: f64, d: f64) -> Result<TestResult> {
    for v in [a, b, c, d] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidInput(format!("negative or non-finite count {v}")));
        }
    }
    let n = a + b + c + d;
    if n <= 0.0 {
        return Err(Error::DegenerateSample("empty contingency table".into()));
    }
    let (r1, r2, c1, c2) = (a + b, c + d, a + c, b + d);
    if r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0 {
        return Err(Error::DegenerateSample("zero marginal in contingency table".into()));
    }
    let det = a * d - b * c;
    let chi2 = n * det * det / (r1 * r2 * c1 * c2);
    Ok(TestResult {
        statistic: chi2,
        p_value: special::chi_square_sf(chi2, 1.0),
        effect_size: Some((chi2 / n).sqrt()),
        effect_kind: EffectKind::CohenW,
        n1: r1.round() as usize,
        n2: r2.round() as usize,
    })
}

/// Chi-square goodness of fit of observed counts against expected shares.
///
/// Expected counts are E_i = N·share_i with N = Σ observed. Shares must be
/// positive; they are normalized to sum to one.
pub fn chi_square_gof(observed: &[f64], expected_shares: &[f64]) -> Result<TestResult> {
    if observed.is_empty() {
        return Err(Error::InvalidInput("empty observed counts".into()));
    }
    if observed.len() != expected_shares.len() {
        return Err(Error::InvalidInput(format!(
            "{} observed cells vs {} expected shares",
            observed.len(),
            expected_shares.len()
        )));
    }
    if observed.iter().any(|&o| !o.is_finite() || o < 0.0) {
        return Err(Error::InvalidInput("negative or non-finite observed count".into()));
    }
    if expected_shares.iter().any(|&s| !s.is_finite() || s <= 0.0) {
        return Err(Error::InvalidInput("expected shares must be positive".into()));
    }
    let n: f64 = observed.iter().sum();
    if n <= 0.0 {
        return Err(Error::DegenerateSample("observed counts sum to zero".into()));
    }
    let share_sum: f64 = expected_shares.iter().sum();
    let chi2: f64 = observed
        .iter()
        .zip(expected_shares)
        .map(|(&o, &s)| {
            let e = n * s / share_sum;
            (o - e) * (o - e) / e
        })
        .sum();
    let df = (observed.len() - 1) as f64;
    let p = if df == 0.0 { 1.0 } else { special::chi_square_sf(chi2, df) };
    Ok(TestResult {
        statistic: chi2,
        p_value: p,
        effect_size: Some((chi2 / n).sqrt()),
        effect_kind: EffectKind::CohenW,
        n1: n.round() as usize,
        n2: 0,
    })
}

/// Welch's unequal-variance two-sample t-test with Welch–Satterthwaite
/// degrees of freedom. Effect size is Cohen's d with pooled SD.
pub fn welch_t(sample1: &[f64], sample2: &[f64]) -> Result<TestResult> {
    let (n1, n2) = (sample1.len(), sample2.len());
    if n1 < 2 || n2 < 2 {
        return Err(Error::InvalidInput(format!(
            "welch_t needs at least 2 values per sample (got {n1}, {n2})"
        )));
    }
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let var = |s: &[f64], m: f64| s.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (s.len() - 1) as f64;
    let (m1, m2) = (mean(sample1), mean(sample2));
    let (v1, v2) = (var(sample1, m1), var(sample2, m2));
    let diff = m1 - m2;

    let pooled_var =
        ((n1 - 1) as f64 * v1 + (n2 - 1) as f64 * v2) / (n1 + n2 - 2) as f64;
    let d = if pooled_var > 0.0 {
        diff / pooled_var.sqrt()
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY * diff.signum()
    };

    let se2 = v1 / n1 as f64 + v2 / n2 as f64;
    let (t, p) = if se2 == 0.0 {
        if diff == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY * diff.signum(), 0.0)
        }
    } else {
        let t = diff / se2.sqrt();
        let df = se2 * se2
            / ((v1 / n1 as f64).powi(2) / (n1 - 1) as f64
                + (v2 / n2 as f64).powi(2) / (n2 - 1) as f64);
        (t, special::student_t_sf_two_sided(t, df))
    };

    Ok(TestResult {
        statistic: t,
        p_value: p,
        effect_size: Some(d),
        effect_kind: EffectKind::CohenD,
        n1,
        n2,
    })
}

/// Detailed Mann-Whitney outcome; [`mann_whitney_u`] condenses it into a
/// [`TestResult`].
#[derive(Debug, Clone)]
pub struct MannWhitney {
    /// U for sample 1: pairs (x, y) with x > y, plus half the ties.
    pub u1: f64,
    pub u2: f64,
    /// Tie-corrected, continuity-corrected standardized statistic.
    /// Positive when sample 1 tends larger.
    pub z: f64,
    pub p_value: f64,
    /// True when the p-value came from exhaustive enumeration.
    pub exact: bool,
    pub n1: usize,
    pub n2: usize,
}

/// Threshold on n1+n2 below which the exact permutation distribution of U
/// is enumerated instead of the normal approximation.
pub const MANN_WHITNEY_EXACT_LIMIT: usize = 12;

/// Mann-Whitney U via midranks with tie correction. The p-value is exact
/// (full enumeration of group assignments) when n1+n2 ≤ 12, otherwise a
/// normal approximation with continuity correction. Two-sided.
pub fn mann_whitney(sample1: &[f64], sample2: &[f64]) -> Result<MannWhitney> {
    let (n1, n2) = (sample1.len(), sample2.len());
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidInput("mann_whitney needs nonempty samples".into()));
    }
    if sample1.iter().chain(sample2).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("mann_whitney samples must be finite".into()));
    }
    let n = n1 + n2;
    let pooled: Vec<f64> = sample1.iter().chain(sample2).copied().collect();
    let ranks = midranks(&pooled);
    let r1: f64 = ranks[..n1].iter().sum();
    let u1 = r1 - (n1 * (n1 + 1)) as f64 / 2.0;
    let u2 = (n1 * n2) as f64 - u1;
    let mu = (n1 * n2) as f64 / 2.0;

    // Tie-corrected variance.
    let tie_sum = tie_correction(&ranks);
    let nf = n as f64;
    let var = (n1 * n2) as f64 / 12.0 * ((nf + 1.0) - tie_sum / (nf * (nf - 1.0)));
    let z = if var > 0.0 {
        let cc = if u1 > mu {
            -0.5
        } else if u1 < mu {
            0.5
        } else {
            0.0
        };
        (u1 - mu + cc) / var.sqrt()
    } else {
        0.0
    };

    let (p, exact) = if n <= MANN_WHITNEY_EXACT_LIMIT {
        (exact_two_sided_p(&pooled, n1, u1), true)
    } else {
        ((2.0 * special::normal_sf(z.abs())).min(1.0), false)
    };

    Ok(MannWhitney { u1, u2, z, p_value: p, exact, n1, n2 })
}

/// Spec-shaped wrapper over [`mann_whitney`]; the statistic is U1.
pub fn mann_whitney_u(sample1: &[f64], sample2: &[f64]) -> Result<TestResult> {
    let mw = mann_whitney(sample1, sample2)?;
    Ok(TestResult {
        statistic: mw.u1,
        p_value: mw.p_value,
        effect_size: None,
        effect_kind: EffectKind::None,
        n1: mw.n1,
        n2: mw.n2,
    })
}

/// Exact two-sided permutation p for U: enumerate every assignment of the
/// pooled values into a group of size n1 and count assignments at least as
/// extreme (in |U − n1·n2/2|) as observed. Works with ties because the
/// pooled multiset is fixed.
fn exact_two_sided_p(pooled: &[f64], n1: usize, u1_observed: f64) -> f64 {
    let n = pooled.len();
    let n2 = n - n1;
    // Track 2U as an integer so tie halves stay exact.
    let observed_dev = (2.0 * u1_observed - (n1 * n2) as f64).abs().round() as i64;
    let mut chosen = Vec::with_capacity(n1);
    let mut extreme = 0u64;
    let mut total = 0u64;
    enumerate_combinations(pooled, n1, 0, &mut chosen, &mut |group1_idx| {
        let mut two_u: i64 = 0;
        for (i, v) in pooled.iter().enumerate() {
            if group1_idx.contains(&i) {
                continue;
            }
            for &g in group1_idx.iter() {
                let x = pooled[g];
                if x > *v {
                    two_u += 2;
                } else if x == *v {
                    two_u += 1;
                }
            }
        }
        total += 1;
        if (two_u - (n1 * n2) as i64).abs() >= observed_dev {
            extreme += 1;
        }
    });
    extreme as f64 / total as f64
}

fn enumerate_combinations(
    pooled: &[f64],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    let remaining = k - chosen.len();
    for i in start..=pooled.len() - remaining {
        chosen.push(i);
        enumerate_combinations(pooled, k, i + 1, chosen, visit);
        chosen.pop();
    }
}

/// Dominance form of the common-language effect size over paired values:
/// the fraction of pairs strictly favoring the dominant side (the side with
/// more wins). Ties count in the denominator only. Empty input yields 0.
pub fn cles_dominance(pairs: &[(f64, f64)]) -> f64 {
    if pairs.is_empty() {
        return 0.0;
    }
    let first = pairs.iter().filter(|(a, b)| a > b).count();
    let second = pairs.iter().filter(|(a, b)| b > a).count();
    first.max(second) as f64 / pairs.len() as f64
}

/// Spearman rank correlation: Pearson correlation of midranks, p-value via
/// the t approximation with n−2 degrees of freedom.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "spearman inputs differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::InvalidInput(format!("spearman needs at least 3 points (got {n})")));
    }
    if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("spearman inputs must be finite".into()));
    }
    let rx = midranks(x);
    let ry = midranks(y);
    let nf = n as f64;
    let mx = rx.iter().sum::<f64>() / nf;
    let my = ry.iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let dx = rx[i] - mx;
        let dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateSample("constant ranks in spearman".into()));
    }
    let rho = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let p = if rho.abs() >= 1.0 {
        0.0
    } else {
        let t = rho * ((nf - 2.0) / (1.0 - rho * rho)).sqrt();
        special::student_t_sf_two_sided(t, nf - 2.0)
    };
    Ok(TestResult {
        statistic: rho,
        p_value: p,
        effect_size: None,
        effect_kind: EffectKind::None,
        n1: n,
        n2: n,
    })
}

/// Holm-Šidák step-down adjustment: sort p ascending, adjust the i-th
/// (1-based) to 1−(1−p)^(m−i+1), enforce monotonicity, clamp to 1, and
/// return in the input order.
pub fn holm_sidak(p_values: &[f64]) -> Vec<f64> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| p_values[i].partial_cmp(&p_values[j]).unwrap());
    let mut adjusted = vec![0.0; m];
    let mut running_max = 0.0f64;
    for (k, &idx) in order.iter().enumerate() {
        let p = p_values[idx].clamp(0.0, 1.0);
        let adj = 1.0 - (1.0 - p).powi((m - k) as i32);
        running_max = running_max.max(adj).min(1.0);
        adjusted[idx] = running_max;
    }
    adjusted
}

/// Midranks of `values` (average rank over ties), 1-based.
fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for k in i..j {
            ranks[order[k]] = rank;
        }
        i = j;
    }
    ranks
}

/// Σ (t³ − t) over tie groups of the pooled ranking.
fn tie_correction(ranks: &[f64]) -> f64 {
    let mut sorted = ranks.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut sum = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        sum += t * t * t - t;
        i = j;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (err {})", (a - b).abs());
    }

    #[test]
    fn chi2_2x2_equal_proportions_is_zero() {
        let r = chi_square_2x2(5.0, 5.0, 5.0, 5.0).unwrap();
        close(r.statistic, 0.0, 1e-12);
        close(r.p_value, 1.0, 1e-12);
        close(r.effect_size.unwrap(), 0.0, 1e-12);
    }

    #[test]
    fn chi2_2x2_textbook_case() {
        // M: 9/20 have the attribute, W: 1/20. Hand value:
        // χ² = 40·(9·19 − 11·1)² / (20·20·10·30) = 8.5333…;
        // scipy chi2_contingency(correction=False): p = 0.0034870048921413857.
        let r = chi_square_2x2(9.0, 11.0, 1.0, 19.0).unwrap();
        close(r.statistic, 8.533333333333333, 1e-12);
        close(r.p_value, 0.0034870048921413857, 1e-12);
        close(r.effect_size.unwrap(), 0.4618802153517006, 1e-12);
        assert_eq!((r.n1, r.n2), (20, 20));
    }

    #[test]
    fn chi2_2x2_degenerate_column_errors() {
        assert!(chi_square_2x2(0.0, 10.0, 0.0, 12.0).is_err());
        assert!(chi_square_2x2(0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn chi2_2x2_invariant_under_swaps() {
        let base = chi_square_2x2(9.0, 11.0, 1.0, 19.0).unwrap();
        let row_swap = chi_square_2x2(1.0, 19.0, 9.0, 11.0).unwrap();
        let col_swap = chi_square_2x2(11.0, 9.0, 19.0, 1.0).unwrap();
        close(base.statistic, row_swap.statistic, 1e-12);
        close(base.statistic, col_swap.statistic, 1e-12);
        close(base.effect_size.unwrap(), row_swap.effect_size.unwrap(), 1e-12);
    }

    #[test]
    fn chi2_gof_hand_value() {
        // (90, 10) against shares (0.845, 0.155):
        // E = (84.5, 15.5), χ² = 5.5²/84.5 + 5.5²/15.5 = 2.30960106890628;
        // scipy chisquare p = 0.12857704545638476.
        let r = chi_square_gof(&[90.0, 10.0], &[0.845, 0.155]).unwrap();
        close(r.statistic, 2.30960106890628, 1e-12);
        close(r.p_value, 0.12857704545638476, 1e-12);
    }

    #[test]
    fn chi2_gof_exact_match_is_zero() {
        let r = chi_square_gof(&[84.5, 15.5], &[0.845, 0.155]).unwrap();
        close(r.statistic, 0.0, 1e-12);
    }

    #[test]
    fn chi2_gof_empty_errors() {
        assert!(chi_square_gof(&[], &[]).is_err());
        assert!(chi_square_gof(&[0.0, 0.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn welch_identical_samples() {
        let r = welch_t(&[2.0, 4.0, 6.0], &[2.0, 4.0, 6.0]).unwrap();
        close(r.statistic, 0.0, 1e-12);
        close(r.effect_size.unwrap(), 0.0, 1e-12);
        close(r.p_value, 1.0, 1e-12);
    }

    #[test]
    fn welch_hand_value() {
        // scipy ttest_ind([1,2,3],[4,5,6], equal_var=False)
        let r = welch_t(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        close(r.statistic, -3.6742346141747673, 1e-12);
        close(r.p_value, 0.021311641128756727, 1e-12);
        close(r.effect_size.unwrap(), -3.0, 1e-12);
    }

    #[test]
    fn welch_sign_flips_on_swap() {
        let a = [1.0, 2.5, 3.0, 4.5];
        let b = [2.0, 6.0, 7.5];
        let r1 = welch_t(&a, &b).unwrap();
        let r2 = welch_t(&b, &a).unwrap();
        close(r1.statistic, -r2.statistic, 1e-12);
        close(r1.p_value, r2.p_value, 1e-12);
        close(r1.effect_size.unwrap(), -r2.effect_size.unwrap(), 1e-12);
    }

    #[test]
    fn welch_zero_variance_equal_means() {
        let r = welch_t(&[3.0, 3.0, 3.0], &[3.0, 3.0]).unwrap();
        close(r.statistic, 0.0, 1e-12);
        close(r.effect_size.unwrap(), 0.0, 1e-12);
    }

    #[test]
    fn welch_small_sample_errors() {
        assert!(welch_t(&[1.0], &[2.0, 3.0]).is_err());
    }

    #[test]
    fn mwu_separated_exact() {
        // U = 0, exact two-sided p = 2/C(6,3) = 0.1.
        let r = mann_whitney(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        close(r.u1, 0.0, 1e-12);
        close(r.u2, 9.0, 1e-12);
        assert!(r.exact);
        close(r.p_value, 0.1, 1e-12);
    }

    #[test]
    fn mwu_exact_matches_scipy() {
        // scipy mannwhitneyu([1,4,6],[2,3,5,7], method="exact")
        let r = mann_whitney(&[1.0, 4.0, 6.0], &[2.0, 3.0, 5.0, 7.0]).unwrap();
        close(r.u1, 5.0, 1e-12);
        close(r.p_value, 0.8571428571428571, 1e-12);
    }

    #[test]
    fn mwu_identical_samples_centered() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let r = mann_whitney(&a, &a).unwrap();
        close(r.u1, 8.0, 1e-12); // n1·n2/2
        close(r.z, 0.0, 1e-12);
    }

    #[test]
    fn mwu_all_tied_z_zero() {
        let r = mann_whitney(&[5.0; 4], &[5.0; 5]).unwrap();
        close(r.z, 0.0, 1e-12);
        close(r.p_value, 1.0, 1e-12);
    }

    #[test]
    fn mwu_asymptotic_with_ties_matches_scipy() {
        // scipy mannwhitneyu(a, b, method="asymptotic", use_continuity=True)
        let a = [1.0, 2.0, 2.0, 3.0, 5.0, 7.0, 8.0, 8.0];
        let b = [2.0, 4.0, 4.0, 6.0, 6.0, 9.0, 10.0, 11.0, 12.0];
        let r = mann_whitney(&a, &b).unwrap();
        assert!(!r.exact);
        close(r.u1, 20.0, 1e-12);
        close(r.p_value, 0.1341522267719355, 1e-12);
    }

    #[test]
    fn mwu_u_sum_identity() {
        let a = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let b = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0];
        let r = mann_whitney(&a, &b).unwrap();
        close(r.u1 + r.u2, (a.len() * b.len()) as f64, 1e-12);
    }

    #[test]
    fn cles_extremes_and_ties() {
        assert_eq!(cles_dominance(&[(2.0, 1.0), (5.0, 4.0), (3.0, 0.0)]), 1.0);
        assert_eq!(cles_dominance(&[(1.0, 1.0), (2.0, 2.0)]), 0.0);
        // 6 wins for side 2, 2 for side 1, 2 ties → 0.6
        let pairs: Vec<(f64, f64)> = vec![
            (1.0, 2.0),
            (1.0, 2.0),
            (1.0, 2.0),
            (1.0, 2.0),
            (1.0, 2.0),
            (1.0, 2.0),
            (2.0, 1.0),
            (2.0, 1.0),
            (3.0, 3.0),
            (4.0, 4.0),
        ];
        close(cles_dominance(&pairs), 0.6, 1e-12);
    }

    #[test]
    fn spearman_monotone() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y = [10.0, 20.0, 25.0, 40.0, 100.0];
        let r = spearman_rho(&x, &y).unwrap();
        close(r.statistic, 1.0, 1e-12);
        close(r.p_value, 0.0, 1e-12);
        let rev: Vec<f64> = y.iter().rev().copied().collect();
        let r = spearman_rho(&x, &rev).unwrap();
        close(r.statistic, -1.0, 1e-12);
    }

    #[test]
    fn spearman_ties_match_scipy() {
        let x = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0];
        let y = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0, 8.0, 2.0, 8.0];
        let r = spearman_rho(&x, &y).unwrap();
        close(r.statistic, 0.13471506281091267, 1e-12);
        close(r.p_value, 0.7106008805223829, 1e-12);
    }

    #[test]
    fn holm_sidak_hand_values() {
        // [0.01, 0.04]: 1−0.99² = 0.0199, then 1−0.96¹ = 0.04, already monotone.
        let adj = holm_sidak(&[0.01, 0.04]);
        close(adj[0], 0.019900000000000084, 1e-12);
        close(adj[1], 0.040000000000000036, 1e-12);
        // Single p unchanged.
        let adj = holm_sidak(&[0.2]);
        close(adj[0], 0.2, 1e-12);
        // All zero stays zero.
        assert_eq!(holm_sidak(&[0.0, 0.0, 0.0]), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn holm_sidak_monotone_and_dominates_raw() {
        let p = [0.03, 0.5, 0.0001, 0.2, 0.04];
        let adj = holm_sidak(&p);
        for (a, raw) in adj.iter().zip(&p) {
            assert!(a >= raw && *a <= 1.0);
        }
        // monotone in the sorted order
        let mut order: Vec<usize> = (0..p.len()).collect();
        order.sort_by(|&i, &j| p[i].partial_cmp(&p[j]).unwrap());
        for w in order.windows(2) {
            assert!(adj[w[0]] <= adj[w[1]]);
        }
    }

    #[test]
    fn midranks_handle_ties() {
        let r = midranks(&[10.0, 20.0, 20.0, 30.0]);
        assert_eq!(r, vec![1.0, 2.5, 2.5, 4.0]);
    }
}
