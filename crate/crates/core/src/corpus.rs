//! Corpus ingestion, validation, tokenization, group labeling, and bigram
//! collocation detection.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Group label of a document. The methodology is prototypically gendered
/// (men/women), hence the variant names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    M,
    W,
    Unknown,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::M => "M",
            Group::W => "W",
            Group::Unknown => "Unknown",
        }
    }

    pub fn is_known(self) -> bool {
        self != Group::Unknown
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn serialize_group<S: Serializer>(group: &Group, s: S) -> std::result::Result<S::Ok, S::Error> {
    match group {
        Group::M => s.serialize_str("M"),
        Group::W => s.serialize_str("W"),
        Group::Unknown => s.serialize_none(),
    }
}

/// Which text of a document an analysis reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextField {
    Overview,
    FullText,
}

/// One corpus item.
#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub id: String,
    #[serde(serialize_with = "serialize_group")]
    pub group: Group,
    pub overview: String,
    pub full_text: String,
    pub attributes: BTreeMap<String, Vec<String>>,
    pub links: Vec<String>,
    pub birth_year: Option<i32>,
}

impl Document {
    /// An empty document with the given id; fields are public, fill in what
    /// the test or caller needs.
    pub fn new(id: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            group: Group::Unknown,
            overview: String::new(),
            full_text: String::new(),
            attributes: BTreeMap::new(),
            links: Vec::new(),
            birth_year: None,
        }
    }

    pub fn text(&self, field: TextField) -> &str {
        match field {
            TextField::Overview => &self.overview,
            TextField::FullText => &self.full_text,
        }
    }
}

/// Wire format of one JSONL record. Unknown extra fields are ignored;
/// real exports are inconsistent.
#[derive(Deserialize)]
struct RawRecord {
    id: String,
    #[serde(default)]
    group: Option<String>,
    #[serde(default)]
    overview: String,
    #[serde(default)]
    full_text: String,
    #[serde(default)]
    attributes: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    links: Vec<String>,
    #[serde(default)]
    birth_year: Option<i32>,
}

impl RawRecord {
    fn into_document(self, line: usize) -> Result<Document> {
        let group = match self.group.as_deref() {
            None => Group::Unknown,
            Some("M") => Group::M,
            Some("W") => Group::W,
            Some(other) => {
                return Err(Error::MalformedRecord {
                    line,
                    msg: format!("group must be \"M\", \"W\", or null, got {other:?}"),
                })
            }
        };
        if self.id.is_empty() {
            return Err(Error::MalformedRecord { line, msg: "empty id".into() });
        }
        Ok(Document {
            id: self.id,
            group,
            overview: self.overview,
            full_text: self.full_text,
            attributes: self.attributes,
            links: self.links,
            birth_year: self.birth_year,
        })
    }
}

/// Validation and normalization counts from corpus construction.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CorpusReport {
    pub documents: usize,
    pub dangling_links: usize,
    pub unknown_group: usize,
    pub self_links_dropped: usize,
    pub duplicate_links_dropped: usize,
}

/// A validated set of documents with an id index.
#[derive(Debug, Clone)]
pub struct Corpus {
    documents: Vec<Document>,
    index: HashMap<String, usize>,
}

impl Corpus {
    /// Validates ids, normalizes links (drops self-links and duplicates),
    /// and counts dangling link targets. Dangling links stay in the
    /// documents; the graph builder drops them.
    pub fn build(mut documents: Vec<Document>) -> Result<(Corpus, CorpusReport)> {
        let mut report = CorpusReport { documents: documents.len(), ..Default::default() };
        let mut index = HashMap::with_capacity(documents.len());
        for (pos, doc) in documents.iter().enumerate() {
            if doc.id.is_empty() {
                return Err(Error::MalformedRecord { line: pos + 1, msg: "empty id".into() });
            }
            if index.insert(doc.id.clone(), pos).is_some() {
                return Err(Error::DuplicateId { id: doc.id.clone(), line: pos + 1 });
            }
        }
        for doc in &mut documents {
            let mut seen = BTreeSet::new();
            let id = doc.id.clone();
            doc.links.retain(|target| {
                if *target == id {
                    report.self_links_dropped += 1;
                    false
                } else if !seen.insert(target.clone()) {
                    report.duplicate_links_dropped += 1;
                    false
                } else {
                    true
                }
            });
            report.dangling_links +=
                doc.links.iter().filter(|t| !index.contains_key(*t)).count();
            if doc.group == Group::Unknown {
                report.unknown_group += 1;
            }
        }
        Ok((Corpus { documents, index }, report))
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.index.get(id).map(|&i| &self.documents[i])
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// (men, women, unknown) document counts.
    pub fn group_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for doc in &self.documents {
            match doc.group {
                Group::M => counts.0 += 1,
                Group::W => counts.1 += 1,
                Group::Unknown => counts.2 += 1,
            }
        }
        counts
    }

    /// Returns a copy with every `Unknown` group replaced by the label
    /// inferred from the full text, plus the number of relabeled documents.
    pub fn with_inferred_groups(&self) -> (Corpus, usize) {
        let mut updated = self.clone();
        let mut changed = 0;
        for doc in &mut updated.documents {
            if doc.group == Group::Unknown {
                let inferred = infer_group(doc);
                if inferred != Group::Unknown {
                    doc.group = inferred;
                    changed += 1;
                }
            }
        }
        (updated, changed)
    }
}

/// Reads a JSONL corpus: one document per line, blank lines skipped.
pub fn ingest(path: &Path) -> Result<(Corpus, CorpusReport)> {
    let file = std::fs::File::open(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let reader = std::io::BufReader::new(file);
    let mut docs = Vec::new();
    let mut lines_by_id: HashMap<String, usize> = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(&line)
            .map_err(|e| Error::MalformedRecord { line: line_no, msg: e.to_string() })?;
        let doc = raw.into_document(line_no)?;
        if let Some(first) = lines_by_id.insert(doc.id.clone(), line_no) {
            return Err(Error::DuplicateId { id: doc.id, line: first.max(line_no) });
        }
        docs.push(doc);
    }
    Corpus::build(docs)
}

/// Ordered lowercase word tokens of one text.
///
/// Tokens are maximal runs of Unicode alphabetic characters, lowercased;
/// punctuation and digits separate tokens and are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenStream {
    pub tokens: Vec<String>,
}

impl TokenStream {
    pub fn bigrams(&self) -> impl Iterator<Item = (&str, &str)> {
        self.tokens.windows(2).map(|w| (w[0].as_str(), w[1].as_str()))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Deterministic Unicode-aware tokenization. Empty text gives an empty
/// stream.
pub fn tokenize(text: &str) -> TokenStream {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphabetic() {
            for lc in ch.to_lowercase() {
                current.push(lc);
            }
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    TokenStream { tokens }
}

const MALE_PRONOUNS: [&str; 4] = ["he", "him", "his", "himself"];
const FEMALE_PRONOUNS: [&str; 4] = ["she", "her", "hers", "herself"];

/// Labels a document by the strict majority of grammatically gendered
/// pronouns in its full text; a tie (including zero counts) is `Unknown`.
pub fn infer_group(doc: &Document) -> Group {
    let stream = tokenize(&doc.full_text);
    let mut male = 0usize;
    let mut female = 0usize;
    for token in &stream.tokens {
        if MALE_PRONOUNS.contains(&token.as_str()) {
            male += 1;
        } else if FEMALE_PRONOUNS.contains(&token.as_str()) {
            female += 1;
        }
    }
    match male.cmp(&female) {
        std::cmp::Ordering::Greater => Group::M,
        std::cmp::Ordering::Less => Group::W,
        std::cmp::Ordering::Equal => Group::Unknown,
    }
}

/// Bigrams whose corpus-wide count reaches `min_count` and whose pointwise
/// mutual information (log base 2, token unigram/bigram distributions over
/// the chosen text field of every document) reaches `min_score`.
pub fn detect_collocations(
    corpus: &Corpus,
    field: TextField,
    min_count: usize,
    min_score: f64,
) -> Result<BTreeSet<(String, String)>> {
    if min_count < 1 {
        return Err(Error::InvalidInput("collocation min_count must be ≥ 1".into()));
    }
    let mut unigrams: HashMap<String, u64> = HashMap::new();
    let mut bigrams: HashMap<(String, String), u64> = HashMap::new();
    let mut total_tokens = 0u64;
    let mut total_bigrams = 0u64;
    for doc in corpus.documents() {
        let stream = tokenize(doc.text(field));
        total_tokens += stream.tokens.len() as u64;
        for token in &stream.tokens {
            *unigrams.entry(token.clone()).or_insert(0) += 1;
        }
        for (a, b) in stream.bigrams() {
            total_bigrams += 1;
            *bigrams.entry((a.to_string(), b.to_string())).or_insert(0) += 1;
        }
    }
    let mut accepted = BTreeSet::new();
    if total_bigrams == 0 {
        return Ok(accepted);
    }
    for ((a, b), count) in &bigrams {
        if *count < min_count as u64 {
            continue;
        }
        let p_ab = *count as f64 / total_bigrams as f64;
        let p_a = unigrams[a] as f64 / total_tokens as f64;
        let p_b = unigrams[b] as f64 / total_tokens as f64;
        let pmi = (p_ab / (p_a * p_b)).log2();
        if pmi >= min_score {
            accepted.insert((a.clone(), b.clone()));
        }
    }
    Ok(accepted)
}

/// Greedy left-to-right fusion of accepted collocations into space-joined
/// compound tokens; consumed tokens are not emitted separately.
pub fn fuse_collocations(tokens: &[String], collocations: &BTreeSet<(String, String)>) -> Vec<String> {
    let mut out = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        if i + 1 < tokens.len()
            && collocations.contains(&(tokens[i].clone(), tokens[i + 1].clone()))
        {
            out.push(format!("{} {}", tokens[i], tokens[i + 1]));
            i += 2;
        } else {
            out.push(tokens[i].clone());
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn doc(id: &str, group: Group, links: &[&str]) -> Document {
        let mut d = Document::new(id);
        d.group = group;
        d.links = links.iter().map(|s| s.to_string()).collect();
        d
    }

    #[test]
    fn tokenize_repeated_phrase() {
        let stream = tokenize("New York, New York");
        assert_eq!(stream.tokens, vec!["new", "york", "new", "york"]);
        let pairs: Vec<(String, String)> = stream
            .bigrams()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                ("new".into(), "york".into()),
                ("york".into(), "new".into()),
                ("new".into(), "york".into())
            ]
        );
    }

    #[test]
    fn tokenize_empty_text() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" 123 !? ").is_empty());
    }

    #[test]
    fn tokenize_splits_on_punctuation() {
        assert_eq!(tokenize("Actor/actress").tokens, vec!["actor", "actress"]);
    }

    #[test]
    fn tokenize_deterministic() {
        let text = "Äpfel, 42 Birnen—und Tomaten!";
        assert_eq!(tokenize(text), tokenize(text));
    }

    #[test]
    fn infer_group_examples() {
        let mut d = Document::new("a");
        d.full_text = "she wrote her memoir".into();
        assert_eq!(infer_group(&d), Group::W);
        d.full_text = "he met she".into();
        assert_eq!(infer_group(&d), Group::Unknown);
        d.full_text = "nothing gendered here".into();
        assert_eq!(infer_group(&d), Group::Unknown);
        d.full_text = "He said that his work stood for itself, she disagreed".into();
        assert_eq!(infer_group(&d), Group::M);
    }

    #[test]
    fn infer_group_order_invariant() {
        let mut a = Document::new("a");
        a.full_text = "she her his he her".into();
        let mut b = Document::new("b");
        b.full_text = "her he his her she".into();
        assert_eq!(infer_group(&a), infer_group(&b));
    }

    #[test]
    fn build_counts_normalization() {
        let docs = vec![
            doc("a", Group::M, &["b", "a", "b", "ghost"]),
            doc("b", Group::W, &["a"]),
            doc("c", Group::Unknown, &[]),
        ];
        let (corpus, report) = Corpus::build(docs).unwrap();
        assert_eq!(report.documents, 3);
        assert_eq!(report.self_links_dropped, 1);
        assert_eq!(report.duplicate_links_dropped, 1);
        assert_eq!(report.dangling_links, 1);
        assert_eq!(report.unknown_group, 1);
        assert_eq!(corpus.get("a").unwrap().links, vec!["b", "ghost"]);
    }

    #[test]
    fn build_rejects_duplicate_ids() {
        let docs = vec![doc("x", Group::M, &[]), doc("x", Group::W, &[])];
        match Corpus::build(docs) {
            Err(Error::DuplicateId { id, line }) => {
                assert_eq!(id, "x");
                assert_eq!(line, 2);
            }
            other => panic!("expected DuplicateId, got {other:?}"),
        }
    }

    #[test]
    fn ingest_three_valid_records() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, r#"{{"id":"a","group":"M","overview":"x","full_text":"he he","attributes":{{}},"links":["b"],"birth_year":1950}}"#).unwrap();
        writeln!(file, r#"{{"id":"b","group":"W","overview":"y","full_text":"she","attributes":{{"spouse":["a"]}},"links":[],"birth_year":null}}"#).unwrap();
        writeln!(file, r#"{{"id":"c","group":null,"overview":"","full_text":"","attributes":{{}},"links":["a","b"],"birth_year":1970}}"#).unwrap();
        let (corpus, report) = ingest(file.path()).unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(report.documents, 3);
        assert_eq!(report.dangling_links, 0);
        assert_eq!(report.unknown_group, 1);
        assert_eq!(corpus.get("a").unwrap().birth_year, Some(1950));
        assert_eq!(corpus.get("b").unwrap().attributes["spouse"], vec!["a"]);
    }

    #[test]
    fn ingest_reports_malformed_line() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, r#"{{"id":"a"}}"#).unwrap();
        writeln!(file, "not json").unwrap();
        match ingest(file.path()) {
            Err(Error::MalformedRecord { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected MalformedRecord, got {other:?}"),
        }
    }

    #[test]
    fn ingest_reports_duplicate_id_line() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, r#"{{"id":"x"}}"#).unwrap();
        writeln!(file, r#"{{"id":"y"}}"#).unwrap();
        writeln!(file, r#"{{"id":"x"}}"#).unwrap();
        match ingest(file.path()) {
            Err(Error::DuplicateId { id, line }) => {
                assert_eq!(id, "x");
                assert_eq!(line, 3);
            }
            other => panic!("expected DuplicateId, got {other:?}"),
        }
    }

    #[test]
    fn ingest_rejects_bad_group() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, r#"{{"id":"a","group":"female"}}"#).unwrap();
        assert!(matches!(ingest(file.path()), Err(Error::MalformedRecord { line: 1, .. })));
    }

    #[test]
    fn collocations_respect_count_floor() {
        let mut d = Document::new("a");
        d.overview = "rare pair".into();
        let (corpus, _) = Corpus::build(vec![d]).unwrap();
        let got = detect_collocations(&corpus, TextField::Overview, 10, 0.0).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn collocations_alwaysadjacent_pair_is_accepted() {
        // Ten docs, each exactly "a b": count(a,b)=10, PMI = log2(1/(0.5·0.5)) = 2.
        let docs: Vec<Document> = (0..10)
            .map(|i| {
                let mut d = Document::new(format!("d{i}"));
                d.overview = "a b".into();
                d
            })
            .collect();
        let (corpus, _) = Corpus::build(docs).unwrap();
        let got = detect_collocations(&corpus, TextField::Overview, 5, 1.0).unwrap();
        assert!(got.contains(&("a".to_string(), "b".to_string())));
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn collocations_uniform_random_corpus_is_empty() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let vocab: Vec<String> = (0..30).map(|i| format!("w{i}")).collect();
        let docs: Vec<Document> = (0..50)
            .map(|i| {
                let mut d = Document::new(format!("d{i}"));
                let words: Vec<&str> =
                    (0..200).map(|_| vocab[rng.gen_range(0..vocab.len())].as_str()).collect();
                d.overview = words.join(" ");
                d
            })
            .collect();
        let (corpus, _) = Corpus::build(docs).unwrap();
        // Brute-force PMI oracle: with uniform independent tokens PMI ≈ 0,
        // so a floor of 3 bits excludes everything.
        let got = detect_collocations(&corpus, TextField::Overview, 1, 3.0).unwrap();
        assert!(got.is_empty(), "unexpected collocations: {got:?}");
    }

    #[test]
    fn fuse_is_greedy_and_non_overlapping() {
        let colloc: BTreeSet<(String, String)> =
            [("new".to_string(), "york".to_string())].into_iter().collect();
        let tokens: Vec<String> =
            ["born", "in", "new", "york", "new", "york", "city"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            fuse_collocations(&tokens, &colloc),
            vec!["born", "in", "new york", "new york", "city"]
        );
    }

    #[test]
    fn with_inferred_groups_fills_unknowns() {
        let mut a = doc("a", Group::Unknown, &[]);
        a.full_text = "she her hers".into();
        let b = doc("b", Group::M, &[]);
        let (corpus, _) = Corpus::build(vec![a, b]).unwrap();
        let (filled, changed) = corpus.with_inferred_groups();
        assert_eq!(changed, 1);
        assert_eq!(filled.get("a").unwrap().group, Group::W);
        assert_eq!(filled.get("b").unwrap().group, Group::M);
    }
}
