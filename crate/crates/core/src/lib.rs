//! Quantifies group representation bias in a linked document corpus along
//! three axes: metadata prevalence, lexical characterization, and
//! link-network centrality measured against degree-preserving null models.
//!
//! The crate is organized around the pipeline stages:
//!
//! - [`corpus`] — JSONL ingestion, tokenization, group inference, bigram
//!   collocations.
//! - [`metastats`] — attribute prevalence, scalar comparisons, birth-year
//!   presence curves.
//! - [`lexstats`] — frequency tables, Zipf fits, PMI association, dictionary
//!   category matching, burstiness.
//! - [`netbias`] — link graph construction, five null-model generators,
//!   PageRank, edge-mix and top-r centrality bias measures.
//! - [`stats`] — the self-contained hypothesis-test and smoothing kernel the
//!   other modules build on.

pub mod corpus;
pub mod error;
pub mod lexstats;
pub mod metastats;
pub mod netbias;
pub mod stats;

pub use corpus::{Corpus, CorpusReport, Document, Group, TextField, TokenStream};
pub use error::{Error, Result};
pub use stats::{EffectKind, TestResult};

/// How contingency cells are populated for the chi-square style reports.
///
/// `PercentAsCounts` treats the two per-group percentages as counts out of
/// 100, which reproduces the magnitude regime of published summary tables
/// that were computed from proportions rather than raw population counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    Raw,
    PercentAsCounts,
}
