//! Plain-text lexicons: the noun list backing the "how many" subject check
//! and the no-article list used when realizing "what kind" questions.
//!
//! Format: one lowercase token per line, `#` starts a comment line.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

const BUILTIN_NOUNS: &str = include_str!("../data/nouns.txt");
const BUILTIN_NO_ARTICLE: &str = include_str!("../data/no_article.txt");

/// Words ending in 's' that the fallback heuristic must reject: auxiliaries,
/// pronouns, prepositions and common '-ous'/'-s' adjectives.
const NON_NOUN_S_WORDS: &[&str] = &[
    "as", "is", "was", "does", "goes", "says", "gets", "has", "its", "this", "us", "yes", "his",
    "hers", "ours", "theirs", "whose", "always", "perhaps", "plus", "versus", "whereas",
    "besides", "unless", "across", "towards", "curious", "dangerous", "delicious", "famous",
    "nervous", "obvious", "previous", "serious", "various",
];

/// A set of lowercase tokens loaded from a plain-text word list.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    words: HashSet<String>,
}

impl Lexicon {
    /// Parses lexicon text: one token per line, blank lines and `#` comments skipped.
    /// Tokens are lowercased.
    pub fn parse(text: &str) -> Lexicon {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| line.to_lowercase())
            .collect();
        Lexicon { words }
    }

    pub fn from_path(path: &Path) -> Result<Lexicon> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Lexicon::parse(&text))
    }

    /// The shipped no-article list (mass nouns, materials, activities).
    pub fn builtin_no_article() -> Lexicon {
        Lexicon::parse(BUILTIN_NO_ARTICLE)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Pluggable noun check: a word list, or a suffix heuristic when no list is
/// supplied. Stands in for a part-of-speech tagger; export tagger output to a
/// lexicon file to reproduce its decisions.
#[derive(Debug, Clone)]
pub enum NounChecker {
    Lexicon(Lexicon),
    /// Accepts words ending in 's' unless they appear in a built-in
    /// stopword/verb list.
    Heuristic,
}

impl NounChecker {
    /// The shipped default noun list.
    pub fn builtin() -> NounChecker {
        NounChecker::Lexicon(Lexicon::parse(BUILTIN_NOUNS))
    }

    pub fn from_path(path: &Path) -> Result<NounChecker> {
        Ok(NounChecker::Lexicon(Lexicon::from_path(path)?))
    }

    /// True iff `word` is judged a noun. The word is lowercased and stripped
    /// of surrounding punctuation before the check.
    pub fn is_noun(&self, word: &str) -> bool {
        let word = word
            .trim_matches(|c: char| !c.is_alphanumeric())
            .to_lowercase();
        if word.is_empty() {
            return false;
        }
        match self {
            NounChecker::Lexicon(lexicon) => lexicon.contains(&word),
            NounChecker::Heuristic => {
                word.ends_with('s') && !NON_NOUN_S_WORDS.contains(&word.as_str())
            }
        }
    }
}
