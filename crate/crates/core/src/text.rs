//! Tokenization and key canonicalization shared by every text-based analysis.
//!
//! Tokens are lowercase runs of alphanumeric characters. A hyphen joining two
//! alphanumeric characters stays inside the token, so `multi-objective` is a
//! single token while `--x` or `x-` are not.

use alloc::string::String;
use alloc::vec::Vec;

/// English stopwords removed by [`content_tokens`].
pub const STOPWORDS: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and", "any",
    "are", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "et",
    "few", "for", "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers",
    "herself", "him", "himself", "his", "how", "however", "i", "if", "in", "into", "is", "it",
    "its", "itself", "just", "may", "me", "might", "more", "most", "must", "my", "myself", "no",
    "nor", "not", "now", "of", "off", "on", "once", "one", "only", "or", "other", "our", "ours",
    "ourselves", "out", "over", "own", "same", "shall", "she", "should", "so", "some", "such",
    "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there", "therefore",
    "these", "they", "this", "those", "through", "thus", "to", "too", "under", "until", "up",
    "upon", "us", "very", "via", "was", "we", "were", "what", "when", "where", "whereas",
    "which", "while", "who", "whom", "why", "will", "with", "within", "without", "would", "you",
    "your", "yours", "yourself", "yourselves",
];

pub fn is_stopword(token: &str) -> bool {
    STOPWORDS.binary_search(&token).is_ok()
}

/// Splits text into lowercase tokens, keeping hyphenated compounds.
pub fn tokens(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            current.extend(c.to_lowercase());
        } else if c == '-'
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric())
        {
            current.push('-');
        } else if !current.is_empty() {
            out.push(core::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

/// [`tokens`] with stopwords removed.
pub fn content_tokens(text: &str) -> Vec<String> {
    let mut toks = tokens(text);
    toks.retain(|t| !is_stopword(t));
    toks
}

/// True when `phrase` occurs as a contiguous subsequence of `haystack`.
/// An empty phrase never matches.
pub fn contains_phrase<S: AsRef<str>, P: AsRef<str>>(haystack: &[S], phrase: &[P]) -> bool {
    if phrase.is_empty() || phrase.len() > haystack.len() {
        return false;
    }
    haystack
        .windows(phrase.len())
        .any(|w| w.iter().zip(phrase).all(|(a, b)| a.as_ref() == b.as_ref()))
}

/// Canonical key for author, venue, keyword and institution names:
/// case-folded, trimmed, internal whitespace collapsed to single spaces.
pub fn canonical(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for word in name.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}
