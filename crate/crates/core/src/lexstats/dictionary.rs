//! LIWC-style semantic dictionaries: named categories of literal terms and
//! prefix stems, arranged in a parent forest, with a stopword override list
//! standing in for manual cleaning of noisy matches.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::corpus::TokenStream;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct DictCategory {
    pub parent: Option<String>,
    pub literals: BTreeSet<String>,
    pub prefixes: BTreeSet<String>,
}

/// A semantic dictionary.
///
/// File format: UTF-8 lines `category<TAB>parent-or-dash<TAB>term`, where a
/// trailing `*` marks a prefix stem. Blank lines and lines starting with `#`
/// are skipped. Terms are lowercased on load.
#[derive(Debug, Clone, Default)]
pub struct LexDictionary {
    categories: BTreeMap<String, DictCategory>,
    overrides: BTreeSet<String>,
}

impl LexDictionary {
    pub fn parse(text: &str) -> Result<Self> {
        let mut categories: BTreeMap<String, DictCategory> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::DictionaryParse {
                    line: line_no,
                    msg: format!("expected 3 tab-separated fields, got {}", fields.len()),
                });
            }
            let name = fields[0].trim().to_lowercase();
            if name.is_empty() {
                return Err(Error::DictionaryParse { line: line_no, msg: "empty category".into() });
            }
            let parent = match fields[1].trim() {
                "-" | "" => None,
                p => Some(p.to_lowercase()),
            };
            let term = fields[2].trim().to_lowercase();
            if term.is_empty() {
                return Err(Error::DictionaryParse { line: line_no, msg: "empty term".into() });
            }
            let entry = categories.entry(name.clone()).or_default();
            match (&entry.parent, &parent) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::DictionaryParse {
                        line: line_no,
                        msg: format!("category {name:?} declared with parents {a:?} and {b:?}"),
                    });
                }
                (None, Some(_)) => entry.parent = parent.clone(),
                _ => {}
            }
            if let Some(stem) = term.strip_suffix('*') {
                if stem.is_empty() {
                    return Err(Error::DictionaryParse {
                        line: line_no,
                        msg: "empty prefix stem".into(),
                    });
                }
                entry.prefixes.insert(stem.to_string());
            } else {
                entry.literals.insert(term);
            }
        }
        // Parents that never carry terms still exist as propagation targets.
        let missing: Vec<String> = categories
            .values()
            .filter_map(|c| c.parent.clone())
            .filter(|p| !categories.contains_key(p))
            .collect();
        for parent in missing {
            categories.entry(parent).or_default();
        }
        let dict = LexDictionary { categories, overrides: BTreeSet::new() };
        dict.check_forest()?;
        Ok(dict)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    /// Loads the stopword override list: one word per line, `#` comments.
    pub fn load_overrides(&mut self, text: &str) {
        for line in text.lines() {
            let word = line.trim().to_lowercase();
            if !word.is_empty() && !word.starts_with('#') {
                self.overrides.insert(word);
            }
        }
    }

    pub fn overrides(&self) -> &BTreeSet<String> {
        &self.overrides
    }

    pub fn categories(&self) -> &BTreeMap<String, DictCategory> {
        &self.categories
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    /// Category names in report order: top-level categories alphabetically,
    /// each immediately followed by its descendants, depth first.
    pub fn report_order(&self) -> Vec<String> {
        let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        let mut roots = Vec::new();
        for (name, cat) in &self.categories {
            match &cat.parent {
                Some(p) => children.entry(p.as_str()).or_default().push(name.as_str()),
                None => roots.push(name.as_str()),
            }
        }
        let mut order = Vec::with_capacity(self.categories.len());
        fn walk(name: &str, children: &BTreeMap<&str, Vec<&str>>, out: &mut Vec<String>) {
            out.push(name.to_string());
            if let Some(kids) = children.get(name) {
                for kid in kids {
                    walk(kid, children, out);
                }
            }
        }
        for root in roots {
            walk(root, &children, &mut order);
        }
        order
    }

    /// Categories (including ancestors) a token belongs to. Overridden
    /// tokens match nothing; multiple matches within one category count
    /// once (matching is idempotent).
    pub fn matching_categories(&self, token: &str) -> Vec<&str> {
        if self.overrides.contains(token) {
            return Vec::new();
        }
        let mut matched: BTreeSet<&str> = BTreeSet::new();
        for (name, cat) in &self.categories {
            if cat.literals.contains(token)
                || cat.prefixes.iter().any(|stem| token.starts_with(stem.as_str()))
            {
                let mut current = Some(name.as_str());
                while let Some(c) = current {
                    if !matched.insert(c) {
                        break;
                    }
                    current = self.categories.get(c).and_then(|cc| cc.parent.as_deref());
                }
            }
        }
        matched.into_iter().collect()
    }

    fn check_forest(&self) -> Result<()> {
        for start in self.categories.keys() {
            let mut seen = BTreeSet::new();
            let mut current = Some(start.as_str());
            while let Some(c) = current {
                if !seen.insert(c) {
                    return Err(Error::InvalidInput(format!(
                        "dictionary parent links contain a cycle through {c:?}"
                    )));
                }
                current = self.categories.get(c).and_then(|cc| cc.parent.as_deref());
            }
        }
        Ok(())
    }
}

/// Matches every token of a stream against the dictionary. Returns, per
/// category, the multiset of matched tokens (token → occurrence count);
/// matches propagate to parent categories.
pub fn match_dictionary(
    stream: &TokenStream,
    dict: &LexDictionary,
) -> BTreeMap<String, BTreeMap<String, usize>> {
    let mut out: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for token in &stream.tokens {
        for category in dict.matching_categories(token) {
            *out.entry(category.to_string())
                .or_default()
                .entry(token.clone())
                .or_insert(0) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;

    const DEMO: &str = "bio\t-\tlife\n\
                        sexual\tbio\tvirgin*\n\
                        sexual\tbio\tlove\n\
                        work\t-\twork*\n\
                        work\t-\tcareer\n";

    #[test]
    fn parse_and_match_prefixes() {
        let dict = LexDictionary::parse(DEMO).unwrap();
        let stream = tokenize("Virginia loved her work on virginals");
        let matched = match_dictionary(&stream, &dict);
        // "virginia" matches virgin* (sexual) and propagates to bio.
        assert_eq!(matched["sexual"]["virginia"], 1);
        assert_eq!(matched["sexual"]["virginals"], 1);
        assert_eq!(matched["bio"]["virginia"], 1);
        assert_eq!(matched["work"]["work"], 1);
        assert!(!matched.contains_key("career"));
    }

    #[test]
    fn overrides_suppress_false_positives() {
        let mut dict = LexDictionary::parse(DEMO).unwrap();
        dict.load_overrides("virginia\n# comment\n");
        let stream = tokenize("Virginia kept a virginal manuscript");
        let matched = match_dictionary(&stream, &dict);
        assert!(!matched["sexual"].contains_key("virginia"));
        assert_eq!(matched["sexual"]["virginal"], 1);
    }

    #[test]
    fn empty_dictionary_matches_nothing() {
        let dict = LexDictionary::parse("").unwrap();
        let matched = match_dictionary(&tokenize("anything at all"), &dict);
        assert!(matched.is_empty());
    }

    #[test]
    fn matching_equals_naive_double_loop() {
        let dict = LexDictionary::parse(DEMO).unwrap();
        let stream = tokenize(
            "her career in medicine began with work on the love of life; \
             workers loved working and她 wrote of virgin forests",
        );
        let matched = match_dictionary(&stream, &dict);
        // Naive oracle: for every token and category test literals/prefixes
        // directly, then add ancestors.
        let mut oracle: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for token in &stream.tokens {
            let mut cats: BTreeSet<String> = BTreeSet::new();
            for (name, cat) in dict.categories() {
                let hit = cat.literals.contains(token)
                    || cat.prefixes.iter().any(|p| token.starts_with(p.as_str()));
                if hit {
                    cats.insert(name.clone());
                    let mut p = cat.parent.clone();
                    while let Some(pp) = p {
                        p = dict.categories().get(&pp).and_then(|c| c.parent.clone());
                        cats.insert(pp);
                    }
                }
            }
            for c in cats {
                *oracle.entry(c).or_default().entry(token.clone()).or_insert(0) += 1;
            }
        }
        assert_eq!(matched, oracle);
    }

    #[test]
    fn conflicting_parent_is_rejected() {
        let text = "family\tsocial\tson\nfamily\tbio\tmother\n";
        assert!(matches!(
            LexDictionary::parse(text),
            Err(Error::DictionaryParse { line: 2, .. })
        ));
    }

    #[test]
    fn cycle_is_rejected() {
        let text = "a\tb\tx\nb\ta\ty\n";
        assert!(LexDictionary::parse(text).is_err());
    }

    #[test]
    fn malformed_line_is_reported() {
        assert!(matches!(
            LexDictionary::parse("only two\tfields\n"),
            Err(Error::DictionaryParse { line: 1, .. })
        ));
    }

    #[test]
    fn report_order_is_depth_first() {
        let text = "social\t-\tson\nfamily\tsocial\tfather\nbio\t-\tlife\nbody\tbio\thead\n";
        let dict = LexDictionary::parse(text).unwrap();
        assert_eq!(dict.report_order(), vec!["bio", "body", "social", "family"]);
    }
}
