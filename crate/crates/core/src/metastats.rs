//! Metadata analyses: attribute prevalence by group, scalar comparisons,
//! and birth-year presence curves.

use serde::Serialize;

use crate::corpus::{Corpus, Group};
use crate::error::{Error, Result};
use crate::stats::{self, TestResult};
use crate::CountMode;

/// Prevalence of one attribute in each group plus the chi-square test of
/// the 2×2 (group × has-attribute) contingency.
#[derive(Debug, Clone, Serialize)]
pub struct Prevalence {
    pub attribute: String,
    /// Percent of group-M documents carrying the attribute.
    pub pct_m: f64,
    pub pct_w: f64,
    pub n_m: usize,
    pub n_w: usize,
    pub test: TestResult,
}

/// Builds the 2×2 contingency over documents with known group and tests it.
///
/// `CountMode::PercentAsCounts` re-runs the test treating the two prevalence
/// percentages as counts out of 100 per group, mimicking published tables
/// computed from proportions.
pub fn attribute_prevalence(corpus: &Corpus, attribute: &str, mode: CountMode) -> Result<Prevalence> {
    let (mut with_m, mut with_w, mut n_m, mut n_w) = (0usize, 0usize, 0usize, 0usize);
    for doc in corpus.documents() {
        let has = doc.attributes.contains_key(attribute);
        match doc.group {
            Group::M => {
                n_m += 1;
                if has {
                    with_m += 1;
                }
            }
            Group::W => {
                n_w += 1;
                if has {
                    with_w += 1;
                }
            }
            Group::Unknown => {}
        }
    }
    if n_m == 0 || n_w == 0 {
        return Err(Error::InvalidInput(
            "attribute_prevalence needs at least one document per group".into(),
        ));
    }
    let pct_m = 100.0 * with_m as f64 / n_m as f64;
    let pct_w = 100.0 * with_w as f64 / n_w as f64;
    let with_total = with_m + with_w;
    let test = if with_total == 0 || (with_m == n_m && with_w == n_w) {
        // Attribute absent from (or present in) every document: the
        // contingency is degenerate by definition, not an error here.
        TestResult {
            statistic: 0.0,
            p_value: 1.0,
            effect_size: Some(0.0),
            effect_kind: stats::EffectKind::CohenW,
            n1: n_m,
            n2: n_w,
        }
    } else {
        match mode {
            CountMode::Raw => stats::chi_square_2x2(
                with_m as f64,
                (n_m - with_m) as f64,
                with_w as f64,
                (n_w - with_w) as f64,
            )?,
            CountMode::PercentAsCounts => {
                stats::chi_square_2x2(pct_m, 100.0 - pct_m, pct_w, 100.0 - pct_w)?
            }
        }
    };
    Ok(Prevalence { attribute: attribute.to_string(), pct_m, pct_w, n_m, n_w, test })
}

/// Welch two-sample comparison of a per-document scalar (length, degree, …)
/// between the groups. Thin wrapper over the kernel, kept for symmetry with
/// the report layer.
pub fn scalar_comparison(values_m: &[f64], values_w: &[f64]) -> Result<TestResult> {
    stats::welch_t(values_m, values_w)
}

/// One year of birth-year counts.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct YearPoint {
    pub year: i32,
    pub n_m: usize,
    pub n_w: usize,
    pub fraction_w: f64,
}

/// Per-year group counts over documents with a birth year inside
/// `[lo, hi]`; years with no dated, group-labeled documents are omitted.
pub fn yearly_fraction(corpus: &Corpus, lo: i32, hi: i32) -> Result<Vec<YearPoint>> {
    if lo > hi {
        return Err(Error::InvalidInput(format!("year range [{lo}, {hi}] is inverted")));
    }
    let mut by_year: std::collections::BTreeMap<i32, (usize, usize)> = Default::default();
    for doc in corpus.documents() {
        let Some(year) = doc.birth_year else { continue };
        if year < lo || year > hi {
            continue;
        }
        match doc.group {
            Group::M => by_year.entry(year).or_default().0 += 1,
            Group::W => by_year.entry(year).or_default().1 += 1,
            Group::Unknown => {}
        }
    }
    Ok(by_year
        .into_iter()
        .filter(|(_, (m, w))| m + w > 0)
        .map(|(year, (n_m, n_w))| YearPoint {
            year,
            n_m,
            n_w,
            fraction_w: n_w as f64 / (n_m + n_w) as f64,
        })
        .collect())
}

/// One point of the cumulative presence curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CumulativePoint {
    /// Share of dated biographies born up to and including this year.
    pub cumulative_fraction: f64,
    pub fraction_w: f64,
    pub lowess: f64,
}

/// Relates the cumulative share of dated biographies to each year's
/// fraction of group-W documents, with a LOWESS fit of the fractions.
pub fn cumulative_fraction_curve(
    series: &[YearPoint],
    frac: f64,
    iters: usize,
) -> Result<Vec<CumulativePoint>> {
    if series.is_empty() {
        return Err(Error::InvalidInput("cumulative_fraction_curve needs a nonempty series".into()));
    }
    let total: usize = series.iter().map(|p| p.n_m + p.n_w).sum();
    let mut cumulative = 0usize;
    let mut xs = Vec::with_capacity(series.len());
    let mut ys = Vec::with_capacity(series.len());
    for p in series {
        cumulative += p.n_m + p.n_w;
        xs.push(cumulative as f64 / total as f64);
        ys.push(p.fraction_w);
    }
    let fit = stats::lowess(&xs, &ys, frac, iters)?;
    Ok(xs
        .into_iter()
        .zip(ys)
        .zip(fit)
        .map(|((x, y), l)| CumulativePoint { cumulative_fraction: x, fraction_w: y, lowess: l })
        .collect())
}
