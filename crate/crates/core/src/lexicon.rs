//! Shared word inventories and noise-robust decoding.
//!
//! All agents hold the same lexicon(s) of random fixed-length words. A
//! hearer undoes channel noise by mapping each received token to the
//! nearest lexicon word under Levenshtein distance.

use crate::rng::RandomStream;
use rand::Rng;
use std::collections::{HashMap, HashSet};
use std::io::{self, BufRead, Write};
use thiserror::Error;

/// Number of letters words are built from (lowercase ASCII).
pub const ALPHABET_SIZE: u8 = 26;

#[derive(Debug, Error, PartialEq)]
pub enum LexiconError {
    #[error("lexicon size must be at least 1")]
    EmptySize,
    #[error("cannot draw {requested} distinct words of length {word_length} with {excluded} excluded: alphabet capacity is {capacity}")]
    InsufficientAlphabet {
        requested: usize,
        excluded: usize,
        word_length: usize,
        capacity: u128,
    },
    #[error("invalid word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },
    #[error("duplicate word {0:?}")]
    DuplicateWord(String),
    #[error("unknown lexicon kind {0:?}")]
    UnknownKind(String),
    #[error("missing lexicon header line")]
    MissingHeader,
    #[error("io error: {0}")]
    Io(String),
}

impl From<io::Error> for LexiconError {
    fn from(e: io::Error) -> Self {
        LexiconError::Io(e.to_string())
    }
}

/// Sizing for the word inventories an experiment generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LexiconParams {
    /// Unified lexicon size (scenarios without a noun/verb split).
    pub lexicon_size: usize,
    pub noun_lexicon_size: usize,
    pub verb_lexicon_size: usize,
    pub word_length: usize,
}

impl Default for LexiconParams {
    fn default() -> Self {
        LexiconParams {
            lexicon_size: 1000,
            noun_lexicon_size: 500,
            verb_lexicon_size: 500,
            word_length: 3,
        }
    }
}

/// A fixed-length string over the lowercase alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(String);

impl Word {
    /// Validate length and alphabet membership.
    pub fn parse(s: &str, word_length: usize) -> Result<Word, LexiconError> {
        if s.len() != word_length {
            return Err(LexiconError::InvalidWord {
                word: s.to_string(),
                reason: format!("expected {word_length} letters, got {}", s.len()),
            });
        }
        if !s.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(LexiconError::InvalidWord {
                word: s.to_string(),
                reason: "letters must be lowercase a-z".to_string(),
            });
        }
        Ok(Word(s.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Which inventory a lexicon represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexiconKind {
    Unified,
    Noun,
    Verb,
}

impl LexiconKind {
    pub fn label(self) -> &'static str {
        match self {
            LexiconKind::Unified => "unified",
            LexiconKind::Noun => "noun",
            LexiconKind::Verb => "verb",
        }
    }

    pub fn parse(s: &str) -> Result<LexiconKind, LexiconError> {
        match s {
            "unified" => Ok(LexiconKind::Unified),
            "noun" => Ok(LexiconKind::Noun),
            "verb" => Ok(LexiconKind::Verb),
            other => Err(LexiconError::UnknownKind(other.to_string())),
        }
    }
}

/// An ordered list of distinct words. Order matters: nearest-word ties are
/// broken by the lowest list index.
#[derive(Debug, Clone)]
pub struct Lexicon {
    kind: LexiconKind,
    word_length: usize,
    words: Vec<Word>,
    positions: HashMap<String, usize>,
}

impl Lexicon {
    /// Draw `size` distinct uniformly random words, none of them in
    /// `exclude`. Deterministic given the stream.
    pub fn generate(
        kind: LexiconKind,
        size: usize,
        word_length: usize,
        exclude: &HashSet<String>,
        rng: &mut RandomStream,
    ) -> Result<Lexicon, LexiconError> {
        if size == 0 {
            return Err(LexiconError::EmptySize);
        }
        let capacity = (ALPHABET_SIZE as u128)
            .checked_pow(word_length as u32)
            .unwrap_or(u128::MAX);
        if capacity < (size + exclude.len()) as u128 {
            return Err(LexiconError::InsufficientAlphabet {
                requested: size,
                excluded: exclude.len(),
                word_length,
                capacity,
            });
        }
        let mut taken: HashSet<String> = exclude.clone();
        let mut words = Vec::with_capacity(size);
        while words.len() < size {
            let candidate: String = (0..word_length)
                .map(|_| (b'a' + rng.gen_range(0..ALPHABET_SIZE)) as char)
                .collect();
            if taken.insert(candidate.clone()) {
                words.push(Word(candidate));
            }
        }
        Ok(Self::index(kind, word_length, words))
    }

    /// Build from an explicit word list; words must be distinct and share
    /// the given length.
    pub fn from_words(kind: LexiconKind, words: Vec<Word>) -> Result<Lexicon, LexiconError> {
        let word_length = words.first().map_or(0, |w| w.as_str().len());
        if words.is_empty() {
            return Err(LexiconError::EmptySize);
        }
        let mut seen = HashSet::new();
        for w in &words {
            if w.as_str().len() != word_length {
                return Err(LexiconError::InvalidWord {
                    word: w.as_str().to_string(),
                    reason: format!("expected {word_length} letters"),
                });
            }
            if !seen.insert(w.as_str().to_string()) {
                return Err(LexiconError::DuplicateWord(w.as_str().to_string()));
            }
        }
        Ok(Self::index(kind, word_length, words))
    }

    fn index(kind: LexiconKind, word_length: usize, words: Vec<Word>) -> Lexicon {
        let positions = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_str().to_string(), i))
            .collect();
        Lexicon {
            kind,
            word_length,
            words,
            positions,
        }
    }

    pub fn kind(&self) -> LexiconKind {
        self.kind
    }

    pub fn word_length(&self) -> usize {
        self.word_length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &Word {
        &self.words[index]
    }

    pub fn contains(&self, s: &str) -> bool {
        self.positions.contains_key(s)
    }

    /// The lexicon word minimizing Levenshtein distance to `observed`,
    /// with its distance. Ties go to the lowest list index. An exact match
    /// short-circuits: distinct words make the zero-distance hit unique.
    pub fn nearest_word(&self, observed: &str) -> (&Word, usize) {
        if let Some(&i) = self.positions.get(observed) {
            return (&self.words[i], 0);
        }
        let mut best = 0;
        let mut best_distance = usize::MAX;
        for (i, w) in self.words.iter().enumerate() {
            let d = levenshtein(w.as_str(), observed);
            if d < best_distance {
                best = i;
                best_distance = d;
            }
        }
        (&self.words[best], best_distance)
    }

    /// One word per line after a header line naming the kind.
    pub fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{}", self.kind.label())?;
        for w in &self.words {
            writeln!(out, "{w}")?;
        }
        Ok(())
    }

    /// Inverse of [`Lexicon::write_text`].
    pub fn read_text(input: impl BufRead) -> Result<Lexicon, LexiconError> {
        let mut lines = input.lines();
        let header = lines.next().ok_or(LexiconError::MissingHeader)??;
        let kind = LexiconKind::parse(header.trim())?;
        let mut words = Vec::new();
        let mut word_length = None;
        for line in lines {
            let line = line?;
            let s = line.trim();
            if s.is_empty() {
                continue;
            }
            let len = *word_length.get_or_insert(s.len());
            words.push(Word::parse(s, len)?);
        }
        Lexicon::from_words(kind, words)
    }
}

/// Nearest word over the union of a noun and a verb lexicon, and which one
/// it came from. Ties prefer the noun lexicon, then the lower index.
pub fn classify_word<'a>(
    nouns: &'a Lexicon,
    verbs: &'a Lexicon,
    observed: &str,
) -> (&'a Word, LexiconKind) {
    if let Some(&i) = nouns.positions.get(observed) {
        return (&nouns.words[i], LexiconKind::Noun);
    }
    if let Some(&i) = verbs.positions.get(observed) {
        return (&verbs.words[i], LexiconKind::Verb);
    }
    let (noun, noun_distance) = nouns.nearest_word(observed);
    let (verb, verb_distance) = verbs.nearest_word(observed);
    if verb_distance < noun_distance {
        (verb, LexiconKind::Verb)
    } else {
        (noun, LexiconKind::Noun)
    }
}

/// Standard edit distance: insertions, deletions and substitutions at unit
/// cost.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a = a.as_bytes();
    let b = b.as_bytes();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut previous: Vec<usize> = (0..=b.len()).collect();
    let mut current = vec![0; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        current[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let substitution = previous[j] + usize::from(ca != cb);
            current[j + 1] = substitution
                .min(previous[j + 1] + 1)
                .min(current[j] + 1);
        }
        std::mem::swap(&mut previous, &mut current);
    }
    previous[b.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use proptest::prelude::*;
    use rand::Rng;

    fn lexicon_from(words: &[&str]) -> Lexicon {
        Lexicon::from_words(
            LexiconKind::Unified,
            words
                .iter()
                .map(|w| Word::parse(w, w.len()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn generates_distinct_words_of_requested_length() {
        let mut rng = stream(11, &[]);
        let lex = Lexicon::generate(LexiconKind::Unified, 1000, 3, &HashSet::new(), &mut rng)
            .unwrap();
        assert_eq!(lex.len(), 1000);
        let unique: HashSet<&str> = lex.words().iter().map(|w| w.as_str()).collect();
        assert_eq!(unique.len(), 1000);
        assert!(lex
            .words()
            .iter()
            .all(|w| w.as_str().len() == 3 && w.as_str().bytes().all(|b| b.is_ascii_lowercase())));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = Lexicon::generate(
            LexiconKind::Unified,
            200,
            3,
            &HashSet::new(),
            &mut stream(42, &[]),
        )
        .unwrap();
        let b = Lexicon::generate(
            LexiconKind::Unified,
            200,
            3,
            &HashSet::new(),
            &mut stream(42, &[]),
        )
        .unwrap();
        assert_eq!(a.words(), b.words());
    }

    #[test]
    fn zero_size_is_rejected() {
        let err = Lexicon::generate(
            LexiconKind::Unified,
            0,
            3,
            &HashSet::new(),
            &mut stream(1, &[]),
        )
        .unwrap_err();
        assert_eq!(err, LexiconError::EmptySize);
    }

    #[test]
    fn exclusion_is_respected_and_capacity_checked() {
        let exclude: HashSet<String> = ('a'..='t').map(|c| c.to_string()).collect();
        let lex = Lexicon::generate(LexiconKind::Verb, 6, 1, &exclude, &mut stream(5, &[]))
            .unwrap();
        assert!(lex.words().iter().all(|w| !exclude.contains(w.as_str())));

        let err = Lexicon::generate(LexiconKind::Verb, 7, 1, &exclude, &mut stream(5, &[]))
            .unwrap_err();
        assert!(matches!(err, LexiconError::InsufficientAlphabet { .. }));
    }

    #[test]
    fn levenshtein_basic_cases() {
        assert_eq!(levenshtein("abc", "abc"), 0);
        assert_eq!(levenshtein("abc", ""), 3);
        assert_eq!(levenshtein("", "abc"), 3);
        assert_eq!(levenshtein("abc", "axc"), 1);
        assert_eq!(levenshtein("abc", "bca"), 2);
    }

    // Plain recursive definition with memoization; the oracle the DP is
    // checked against.
    fn levenshtein_oracle(a: &[u8], b: &[u8], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        fn go(
            a: &[u8],
            b: &[u8],
            i: usize,
            j: usize,
            memo: &mut HashMap<(usize, usize), usize>,
        ) -> usize {
            if i == 0 {
                return j;
            }
            if j == 0 {
                return i;
            }
            if let Some(&v) = memo.get(&(i, j)) {
                return v;
            }
            let substitution = go(a, b, i - 1, j - 1, memo) + usize::from(a[i - 1] != b[j - 1]);
            let deletion = go(a, b, i - 1, j, memo) + 1;
            let insertion = go(a, b, i, j - 1, memo) + 1;
            let v = substitution.min(deletion).min(insertion);
            memo.insert((i, j), v);
            v
        }
        go(a, b, a.len(), b.len(), memo)
    }

    proptest! {
        #[test]
        fn levenshtein_matches_recursive_oracle(
            a in "[a-c]{0,6}",
            b in "[a-c]{0,6}",
        ) {
            let mut memo = HashMap::new();
            prop_assert_eq!(
                levenshtein(&a, &b),
                levenshtein_oracle(a.as_bytes(), b.as_bytes(), &mut memo)
            );
        }

        #[test]
        fn every_lexicon_word_decodes_to_itself(seed in 0u64..50) {
            let lex = Lexicon::generate(
                LexiconKind::Unified, 50, 3, &HashSet::new(), &mut stream(seed, &[]),
            ).unwrap();
            for w in lex.words() {
                let (found, d) = lex.nearest_word(w.as_str());
                prop_assert_eq!(found, w);
                prop_assert_eq!(d, 0);
            }
        }
    }

    #[test]
    fn nearest_word_recovers_single_corruption() {
        // "aaa" corrupted to "aab"; nothing else within distance 1.
        let lex = lexicon_from(&["aaa", "zzz", "mmm"]);
        let (w, d) = lex.nearest_word("aab");
        assert_eq!(w.as_str(), "aaa");
        assert_eq!(d, 1);
    }

    #[test]
    fn nearest_word_ties_break_by_index() {
        // "aax" is distance 1 from both "aaa" and "aab".
        let lex = lexicon_from(&["zzz", "aab", "aaa"]);
        let (w, d) = lex.nearest_word("aax");
        assert_eq!(d, 1);
        assert_eq!(w.as_str(), "aab", "earlier entry wins the tie");

        let exhaustive: Vec<&Word> = lex
            .words()
            .iter()
            .filter(|w| levenshtein(w.as_str(), "aax") == 1)
            .collect();
        assert_eq!(exhaustive.len(), 2);
        assert_eq!(exhaustive[0].as_str(), "aab");
    }

    #[test]
    fn classify_word_identifies_clean_tokens() {
        let nouns = Lexicon::from_words(
            LexiconKind::Noun,
            vec![Word::parse("dog", 3).unwrap(), Word::parse("cat", 3).unwrap()],
        )
        .unwrap();
        let verbs = Lexicon::from_words(
            LexiconKind::Verb,
            vec![Word::parse("run", 3).unwrap(), Word::parse("eat", 3).unwrap()],
        )
        .unwrap();
        assert_eq!(
            classify_word(&nouns, &verbs, "run"),
            (&verbs.words()[0], LexiconKind::Verb)
        );
        assert_eq!(
            classify_word(&nouns, &verbs, "cat"),
            (&nouns.words()[1], LexiconKind::Noun)
        );
    }

    #[test]
    fn classify_word_tie_prefers_noun() {
        // "aab" is distance 1 from noun "aaa" and verb "abb".
        let nouns = lexicon_from(&["aaa"]);
        let verbs = lexicon_from(&["abb"]);
        assert_eq!(levenshtein("aaa", "aab"), 1);
        assert_eq!(levenshtein("abb", "aab"), 1);
        let (w, kind) = classify_word(&nouns, &verbs, "aab");
        assert_eq!(kind, LexiconKind::Noun);
        assert_eq!(w.as_str(), "aaa");
    }

    #[test]
    fn text_round_trip() {
        let lex = Lexicon::generate(
            LexiconKind::Noun,
            100,
            3,
            &HashSet::new(),
            &mut stream(9, &[]),
        )
        .unwrap();
        let mut buffer = Vec::new();
        lex.write_text(&mut buffer).unwrap();
        let back = Lexicon::read_text(buffer.as_slice()).unwrap();
        assert_eq!(back.kind(), LexiconKind::Noun);
        assert_eq!(back.words(), lex.words());
    }

    #[test]
    fn read_text_rejects_bad_header() {
        let err = Lexicon::read_text("adjective\nabc\n".as_bytes()).unwrap_err();
        assert!(matches!(err, LexiconError::UnknownKind(_)));
    }

    #[test]
    fn from_words_rejects_duplicates() {
        let words = vec![
            Word::parse("abc", 3).unwrap(),
            Word::parse("abc", 3).unwrap(),
        ];
        let err = Lexicon::from_words(LexiconKind::Unified, words).unwrap_err();
        assert_eq!(err, LexiconError::DuplicateWord("abc".to_string()));
    }

    #[test]
    fn forced_single_corruption_recovery_rate_is_stable() {
        // With 1000 of 17,576 possible strings taken, a corrupted word has
        // ~4 other lexicon words at the same distance on average, so the
        // recovery rate conditional on corruption is low; what keeps whole
        // pipeline decoding accurate is that only ~3% of words are touched
        // at the default letter-flip rate.
        let lex = Lexicon::generate(
            LexiconKind::Unified,
            1000,
            3,
            &HashSet::new(),
            &mut stream(77, &[]),
        )
        .unwrap();
        let mut rng = stream(78, &[]);
        let trials = 20_000;
        let mut correct = 0;
        for t in 0..trials {
            let original = lex.word(t % lex.len());
            let mut bytes = original.as_str().as_bytes().to_vec();
            let pos = rng.gen_range(0..bytes.len());
            let offset = rng.gen_range(1..ALPHABET_SIZE);
            bytes[pos] = b'a' + ((bytes[pos] - b'a' + offset) % ALPHABET_SIZE);
            let corrupted = String::from_utf8(bytes).unwrap();
            let (decoded, _) = lex.nearest_word(&corrupted);
            if decoded == original {
                correct += 1;
            }
        }
        let rate = correct as f64 / trials as f64;
        assert!(rate > 0.15 && rate < 0.45, "per-corruption recovery {rate}");
    }
}
