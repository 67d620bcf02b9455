//! Lexical characterization: per-group document-frequency tables, Zipf
//! fits, PMI word association, dictionary-category frequency and
//! burstiness comparisons.

mod dictionary;
mod zipf;

pub use dictionary::{match_dictionary, DictCategory, LexDictionary};
pub use zipf::{fit_zipf, sample_discrete_power_law, ZipfFit};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::{fuse_collocations, tokenize, Corpus, Group, TextField};
use crate::error::{Error, Result};
use crate::stats::{self, TestResult};

/// Per-group document frequencies: how many documents of each group contain
/// each word, with words counted once per document and accepted collocations
/// fused into compound tokens.
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    n_m: usize,
    n_w: usize,
    m: BTreeMap<String, usize>,
    w: BTreeMap<String, usize>,
}

impl FrequencyTable {
    /// (group-M documents, group-W documents) used as denominators.
    pub fn group_sizes(&self) -> (usize, usize) {
        (self.n_m, self.n_w)
    }

    pub fn doc_count(&self, group: Group, word: &str) -> usize {
        match group {
            Group::M => self.m.get(word).copied().unwrap_or(0),
            Group::W => self.w.get(word).copied().unwrap_or(0),
            Group::Unknown => 0,
        }
    }

    /// Fraction of the group's documents containing `word`; `None` when the
    /// word is absent from the group (stored frequencies are all positive).
    pub fn rel_freq(&self, group: Group, word: &str) -> Option<f64> {
        let (count, size) = match group {
            Group::M => (self.m.get(word).copied()?, self.n_m),
            Group::W => (self.w.get(word).copied()?, self.n_w),
            Group::Unknown => return None,
        };
        Some(count as f64 / size as f64)
    }

    pub fn vocab(&self, group: Group) -> &BTreeMap<String, usize> {
        match group {
            Group::W => &self.w,
            _ => &self.m,
        }
    }

    pub fn v_m(&self) -> usize {
        self.m.len()
    }

    pub fn v_w(&self) -> usize {
        self.w.len()
    }

    pub fn v_common(&self) -> usize {
        self.common_words().count()
    }

    /// Words present in both groups, ascending.
    pub fn common_words(&self) -> impl Iterator<Item = &str> {
        self.m.keys().filter(|word| self.w.contains_key(*word)).map(|s| s.as_str())
    }

    /// Words present in either group, ascending.
    pub fn all_words(&self) -> Vec<&str> {
        let mut words: Vec<&str> = self.m.keys().map(|s| s.as_str()).collect();
        words.extend(self.w.keys().map(|s| s.as_str()));
        words.sort_unstable();
        words.dedup();
        words
    }
}

/// Counts each word once per document, per group, over the chosen text
/// field. Only group-labeled documents contribute.
pub fn build_frequency_table(
    corpus: &Corpus,
    field: TextField,
    collocations: &std::collections::BTreeSet<(String, String)>,
) -> Result<FrequencyTable> {
    if corpus.is_empty() {
        return Err(Error::InvalidInput("corpus is empty".into()));
    }
    let mut table = FrequencyTable { n_m: 0, n_w: 0, m: BTreeMap::new(), w: BTreeMap::new() };
    for doc in corpus.documents() {
        let map = match doc.group {
            Group::M => {
                table.n_m += 1;
                &mut table.m
            }
            Group::W => {
                table.n_w += 1;
                &mut table.w
            }
            Group::Unknown => continue,
        };
        let tokens = fuse_collocations(&tokenize(doc.text(field)).tokens, collocations);
        let distinct: std::collections::BTreeSet<String> = tokens.into_iter().collect();
        for word in distinct {
            *map.entry(word).or_insert(0) += 1;
        }
    }
    Ok(table)
}

/// Spearman rank correlation of the two groups' relative frequencies over
/// the common vocabulary.
pub fn rank_correlation_common(table: &FrequencyTable) -> Result<TestResult> {
    let common: Vec<&str> = table.common_words().collect();
    if common.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "rank correlation needs at least 3 common words (have {})",
            common.len()
        )));
    }
    let xs: Vec<f64> = common.iter().map(|w| table.rel_freq(Group::M, w).unwrap()).collect();
    let ys: Vec<f64> = common.iter().map(|w| table.rel_freq(Group::W, w).unwrap()).collect();
    stats::spearman_rho(&xs, &ys)
}

/// Natural-log pointwise mutual information of (group, word) over
/// group-labeled documents: ln p(c,w) / (p(c)·p(w)).
///
/// A word absent from the group yields `f64::NEG_INFINITY` ("not
/// associated"); a word absent from the whole table is an error.
pub fn pmi(table: &FrequencyTable, group: Group, word: &str) -> Result<f64> {
    if group == Group::Unknown {
        return Err(Error::InvalidInput("pmi group must be M or W".into()));
    }
    let df_m = table.doc_count(Group::M, word);
    let df_w = table.doc_count(Group::W, word);
    if df_m + df_w == 0 {
        return Err(Error::WordAbsent { word: word.to_string() });
    }
    let (n_m, n_w) = table.group_sizes();
    let total = (n_m + n_w) as f64;
    let (df_c, n_c) = match group {
        Group::M => (df_m, n_m),
        _ => (df_w, n_w),
    };
    if df_c == 0 {
        return Ok(f64::NEG_INFINITY);
    }
    let p_cw = df_c as f64 / total;
    let p_c = n_c as f64 / total;
    let p_w = (df_m + df_w) as f64 / total;
    Ok((p_cw / (p_c * p_w)).ln())
}

/// A word ranked by its association with a group.
#[derive(Debug, Clone, Serialize)]
pub struct AssociatedWord {
    pub word: String,
    pub pmi: f64,
    /// Relative document frequency in the queried group.
    pub rel_freq: f64,
}

/// The top-k words most associated with `group` by PMI, restricted to words
/// whose relative frequency reaches `min_share` in at least one group
/// (PMI overweights rare words).
pub fn top_associated(
    table: &FrequencyTable,
    group: Group,
    k: usize,
    min_share: f64,
) -> Result<Vec<AssociatedWord>> {
    if !(0.0..=1.0).contains(&min_share) {
        return Err(Error::InvalidInput(format!("min_share {min_share} not in [0, 1]")));
    }
    if group == Group::Unknown {
        return Err(Error::InvalidInput("top_associated group must be M or W".into()));
    }
    let mut rows: Vec<AssociatedWord> = Vec::new();
    for word in table.all_words() {
        let qualifies = table.rel_freq(Group::M, word).unwrap_or(0.0) >= min_share
            || table.rel_freq(Group::W, word).unwrap_or(0.0) >= min_share;
        if !qualifies {
            continue;
        }
        rows.push(AssociatedWord {
            word: word.to_string(),
            pmi: pmi(table, group, word)?,
            rel_freq: table.rel_freq(group, word).unwrap_or(0.0),
        });
    }
    rows.sort_by(|a, b| {
        b.pmi.partial_cmp(&a.pmi).unwrap().then_with(|| a.word.cmp(&b.word))
    });
    rows.truncate(k);
    Ok(rows)
}

/// Burstiness B(w) = E_w(f) / P_w(f ≥ 1): the mean per-document occurrence
/// count over every document in the selection divided by the fraction of
/// documents containing the word, which cancels to the mean count among
/// containing documents. Always ≥ 1.
pub fn burstiness(corpus: &Corpus, word: &str, field: TextField) -> Result<f64> {
    let mut occurrences = 0usize;
    let mut containing = 0usize;
    for doc in corpus.documents() {
        let count = tokenize(doc.text(field)).tokens.iter().filter(|t| *t == word).count();
        if count > 0 {
            containing += 1;
            occurrences += count;
        }
    }
    if containing == 0 {
        return Err(Error::WordAbsent { word: word.to_string() });
    }
    Ok(occurrences as f64 / containing as f64)
}

/// Which per-word measure a category comparison runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CategoryMeasure {
    /// Relative document frequency in overviews.
    FrequencyOverview,
    /// Burstiness in full texts.
    BurstinessFull,
}

impl CategoryMeasure {
    pub fn field(self) -> TextField {
        match self {
            CategoryMeasure::FrequencyOverview => TextField::Overview,
            CategoryMeasure::BurstinessFull => TextField::FullText,
        }
    }
}

/// One dictionary category's between-group comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CategoryComparison {
    pub category: String,
    pub parent: Option<String>,
    /// Distinct matched corpus words measurable in at least one group.
    pub vocab_size: usize,
    pub n_m: usize,
    pub n_w: usize,
    pub median_m: f64,
    pub median_w: f64,
    /// Raw U for the group-M word sample.
    pub u: f64,
    /// Signed standardized statistic; positive when group M tends larger.
    pub z: f64,
    pub p_value: f64,
    /// The group the test favors, reported when p < 0.05.
    pub dominant: Option<Group>,
    /// Fraction of common words whose value is larger for the dominant
    /// group; reported when p < 0.05.
    pub effect_size: Option<f64>,
    /// Top 3 words by the measure, per group, with their values.
    pub top_m: Vec<(String, f64)>,
    pub top_w: Vec<(String, f64)>,
}

/// A category left out of the comparison, with the reason.
#[derive(Debug, Clone, Serialize)]
pub struct SkippedCategory {
    pub category: String,
    pub reason: String,
}

/// Compares the per-word measure distributions of the two groups inside
/// each dictionary category: Mann-Whitney U, medians, dominance effect size
/// when significant, and each group's top-3 words. Categories matching
/// fewer than 3 measurable words in either group are skipped with a notice.
pub fn category_comparison(
    corpus: &Corpus,
    dict: &LexDictionary,
    measure: CategoryMeasure,
) -> Result<(Vec<CategoryComparison>, Vec<SkippedCategory>)> {
    if corpus.is_empty() {
        return Err(Error::InvalidInput("corpus is empty".into()));
    }
    let field = measure.field();

    // Per-word, per-group document frequency and occurrence totals.
    #[derive(Default, Clone, Copy)]
    struct WordStats {
        df_m: usize,
        df_w: usize,
        occ_m: usize,
        occ_w: usize,
    }
    let mut words: BTreeMap<String, WordStats> = BTreeMap::new();
    let (mut n_m, mut n_w) = (0usize, 0usize);
    for doc in corpus.documents() {
        match doc.group {
            Group::M => n_m += 1,
            Group::W => n_w += 1,
            Group::Unknown => continue,
        }
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        let stream = tokenize(doc.text(field));
        for token in &stream.tokens {
            *counts.entry(token.as_str()).or_insert(0) += 1;
        }
        for (token, count) in counts {
            let entry = words.entry(token.to_string()).or_default();
            match doc.group {
                Group::M => {
                    entry.df_m += 1;
                    entry.occ_m += count;
                }
                Group::W => {
                    entry.df_w += 1;
                    entry.occ_w += count;
                }
                Group::Unknown => unreachable!(),
            }
        }
    }
    if n_m == 0 || n_w == 0 {
        return Err(Error::InvalidInput(
            "category_comparison needs documents in both groups".into(),
        ));
    }

    // Word values per category; matching includes ancestor propagation.
    // value in a group is defined iff the word occurs there.
    let mut per_category: BTreeMap<&str, Vec<(&str, Option<f64>, Option<f64>)>> = BTreeMap::new();
    for (word, ws) in &words {
        let cats = dict.matching_categories(word);
        if cats.is_empty() {
            continue;
        }
        let value_m = match measure {
            CategoryMeasure::FrequencyOverview => {
                (ws.df_m > 0).then(|| ws.df_m as f64 / n_m as f64)
            }
            CategoryMeasure::BurstinessFull => {
                (ws.df_m > 0).then(|| ws.occ_m as f64 / ws.df_m as f64)
            }
        };
        let value_w = match measure {
            CategoryMeasure::FrequencyOverview => {
                (ws.df_w > 0).then(|| ws.df_w as f64 / n_w as f64)
            }
            CategoryMeasure::BurstinessFull => {
                (ws.df_w > 0).then(|| ws.occ_w as f64 / ws.df_w as f64)
            }
        };
        if value_m.is_none() && value_w.is_none() {
            continue;
        }
        for cat in cats {
            per_category.entry(cat).or_default().push((word.as_str(), value_m, value_w));
        }
    }

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for category in dict.report_order() {
        let Some(entries) = per_category.get(category.as_str()) else {
            skipped.push(SkippedCategory {
                category: category.clone(),
                reason: "no matched words in the corpus".into(),
            });
            continue;
        };
        let sample_m: Vec<f64> = entries.iter().filter_map(|(_, m, _)| *m).collect();
        let sample_w: Vec<f64> = entries.iter().filter_map(|(_, _, w)| *w).collect();
        if sample_m.len() < 3 || sample_w.len() < 3 {
            skipped.push(SkippedCategory {
                category: category.clone(),
                reason: format!(
                    "needs ≥3 measurable words per group (have {} M, {} W)",
                    sample_m.len(),
                    sample_w.len()
                ),
            });
            continue;
        }
        let mw = stats::mann_whitney(&sample_m, &sample_w)?;
        let significant = mw.p_value < 0.05 && mw.z != 0.0;
        let dominant = significant.then(|| if mw.z > 0.0 { Group::M } else { Group::W });
        let effect_size = dominant.map(|dom| {
            let common: Vec<(f64, f64)> = entries
                .iter()
                .filter_map(|(_, m, w)| m.zip(*w))
                .collect();
            if common.is_empty() {
                return 0.0;
            }
            let wins = common
                .iter()
                .filter(|(m, w)| if dom == Group::M { m > w } else { w > m })
                .count();
            wins as f64 / common.len() as f64
        });

        let top = |side: usize| -> Vec<(String, f64)> {
            let mut vals: Vec<(&str, f64)> = entries
                .iter()
                .filter_map(|(word, m, w)| {
                    let v = if side == 0 { *m } else { *w };
                    v.map(|v| (*word, v))
                })
                .collect();
            vals.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(b.0)));
            vals.truncate(3);
            vals.into_iter().map(|(w, v)| (w.to_string(), v)).collect()
        };

        rows.push(CategoryComparison {
            parent: dict.categories()[&category].parent.clone(),
            category,
            vocab_size: entries.len(),
            n_m: sample_m.len(),
            n_w: sample_w.len(),
            median_m: median(&sample_m),
            median_w: median(&sample_w),
            u: mw.u1,
            z: mw.z,
            p_value: mw.p_value,
            dominant,
            effect_size,
            top_m: top(0),
            top_w: top(1),
        });
    }
    Ok((rows, skipped))
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}
