//! Speaker production and scenario-dependent hearer inference.
//!
//! One grammar is embodied by a speaker and a hearer sharing it. The
//! speaker samples words and an order; the hearer sees the noisy tokens
//! and reconstructs a role assignment using whatever information the
//! scenario provides (noun/verb split, case markers, or nothing but the
//! grammar).

use crate::channel::{apply_noise, NoiseParams};
use crate::grammar::{Grammar, ARGMAX_TIE_TOLERANCE};
use crate::lexicon::{classify_word, Lexicon, LexiconError, LexiconKind, LexiconParams};
use crate::order::{role_distance, Role, WordOrder};
use crate::rng::RandomStream;
use rand::Rng;
use std::collections::HashSet;

/// The four information structures the model is tested under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Scenario {
    /// Single lexicon, no markers.
    #[serde(rename = "base")]
    Base,
    /// Separate noun and verb lexicons.
    #[serde(rename = "nv")]
    NounVerb,
    /// Single lexicon, one-letter case marker suffix on every word.
    #[serde(rename = "case")]
    Case,
    /// Split lexicons and case markers.
    #[serde(rename = "nv-case")]
    NounVerbCase,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::Base,
        Scenario::NounVerb,
        Scenario::Case,
        Scenario::NounVerbCase,
    ];

    pub fn attaches_markers(self) -> bool {
        matches!(self, Scenario::Case | Scenario::NounVerbCase)
    }

    pub fn splits_lexicon(self) -> bool {
        matches!(self, Scenario::NounVerb | Scenario::NounVerbCase)
    }

    pub fn label(self) -> &'static str {
        match self {
            Scenario::Base => "base",
            Scenario::NounVerb => "nv",
            Scenario::Case => "case",
            Scenario::NounVerbCase => "nv-case",
        }
    }

    pub fn parse(s: &str) -> Option<Scenario> {
        Scenario::ALL.into_iter().find(|sc| sc.label() == s)
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The lexicon(s) a scenario communicates with.
#[derive(Debug, Clone)]
pub enum LexiconSet {
    Unified(Lexicon),
    Split { nouns: Lexicon, verbs: Lexicon },
}

impl LexiconSet {
    /// Generate the inventory a scenario needs. Split lexicons are drawn
    /// disjoint: verbs exclude every noun.
    pub fn generate(
        scenario: Scenario,
        params: &LexiconParams,
        rng: &mut RandomStream,
    ) -> Result<LexiconSet, LexiconError> {
        if scenario.splits_lexicon() {
            let nouns = Lexicon::generate(
                LexiconKind::Noun,
                params.noun_lexicon_size,
                params.word_length,
                &HashSet::new(),
                rng,
            )?;
            let exclude = nouns
                .words()
                .iter()
                .map(|w| w.as_str().to_string())
                .collect();
            let verbs = Lexicon::generate(
                LexiconKind::Verb,
                params.verb_lexicon_size,
                params.word_length,
                &exclude,
                rng,
            )?;
            Ok(LexiconSet::Split { nouns, verbs })
        } else {
            Ok(LexiconSet::Unified(Lexicon::generate(
                LexiconKind::Unified,
                params.lexicon_size,
                params.word_length,
                &HashSet::new(),
                rng,
            )?))
        }
    }

    pub fn matches(&self, scenario: Scenario) -> bool {
        matches!(self, LexiconSet::Split { .. }) == scenario.splits_lexicon()
    }

    pub fn word_length(&self) -> usize {
        match self {
            LexiconSet::Unified(lexicon) => lexicon.word_length(),
            LexiconSet::Split { nouns, .. } => nouns.word_length(),
        }
    }

    pub fn lexicons(&self) -> Vec<&Lexicon> {
        match self {
            LexiconSet::Unified(lexicon) => vec![lexicon],
            LexiconSet::Split { nouns, verbs } => vec![nouns, verbs],
        }
    }
}

/// Three tokens as sent over the channel, one per sentence position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    pub tokens: [String; 3],
    pub markers_attached: bool,
}

/// Which role each sentence position carries; the speaker's intent and the
/// hearer's output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoleAssignment {
    pub order: WordOrder,
}

impl RoleAssignment {
    pub fn role_at(self, position: usize) -> Role {
        self.order.positions()[position]
    }
}

/// The case-marker suffix letter for a role.
pub fn role_marker(role: Role) -> char {
    match role {
        Role::Subject => 's',
        Role::Verb => 'v',
        Role::Object => 'o',
    }
}

/// Inverse of [`role_marker`]; `None` for any other letter.
pub fn marker_role(letter: u8) -> Option<Role> {
    match letter {
        b's' => Some(Role::Subject),
        b'v' => Some(Role::Verb),
        b'o' => Some(Role::Object),
        _ => None,
    }
}

fn distinct_index(rng: &mut RandomStream, len: usize, taken: &[usize]) -> usize {
    loop {
        let i = rng.gen_range(0..len);
        if !taken.contains(&i) {
            return i;
        }
    }
}

/// Produce an utterance: sample subject, object and verb words (without
/// replacement within a lexicon), sample an order from the grammar, lay the
/// words out accordingly and, in marker scenarios, suffix each token with
/// its role letter. Returns the true assignment alongside.
pub fn speak(
    grammar: &Grammar,
    lexicons: &LexiconSet,
    scenario: Scenario,
    rng: &mut RandomStream,
) -> (Utterance, RoleAssignment) {
    assert!(
        lexicons.matches(scenario),
        "lexicon set does not match scenario {scenario}"
    );
    let (subject, object, verb) = match lexicons {
        LexiconSet::Unified(lexicon) => {
            assert!(lexicon.len() >= 3, "unified lexicon needs at least 3 words");
            let s = rng.gen_range(0..lexicon.len());
            let o = distinct_index(rng, lexicon.len(), &[s]);
            let v = distinct_index(rng, lexicon.len(), &[s, o]);
            (lexicon.word(s), lexicon.word(o), lexicon.word(v))
        }
        LexiconSet::Split { nouns, verbs } => {
            assert!(nouns.len() >= 2, "noun lexicon needs at least 2 words");
            let s = rng.gen_range(0..nouns.len());
            let o = distinct_index(rng, nouns.len(), &[s]);
            let v = rng.gen_range(0..verbs.len());
            (nouns.word(s), nouns.word(o), verbs.word(v))
        }
    };
    let order = grammar.sample_order(rng);
    let tokens = order.positions().map(|role| {
        let word = match role {
            Role::Subject => subject,
            Role::Object => object,
            Role::Verb => verb,
        };
        let mut token = word.as_str().to_string();
        if scenario.attaches_markers() {
            token.push(role_marker(role));
        }
        token
    });
    (
        Utterance {
            tokens,
            markers_attached: scenario.attaches_markers(),
        },
        RoleAssignment { order },
    )
}

/// Choose the grammar-argmax among `candidates`, breaking ties uniformly
/// at random. Always consumes exactly one draw from the stream.
fn restricted_argmax(
    grammar: &Grammar,
    candidates: &[WordOrder],
    rng: &mut RandomStream,
) -> WordOrder {
    let best = candidates
        .iter()
        .map(|o| grammar.probability(*o))
        .fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<WordOrder> = candidates
        .iter()
        .copied()
        .filter(|o| grammar.probability(*o) >= best - ARGMAX_TIE_TOLERANCE)
        .collect();
    tied[rng.gen_range(0..tied.len())]
}

fn marker_letters(tokens: &[String; 3]) -> [Option<Role>; 3] {
    [0, 1, 2].map(|k| marker_role(*tokens[k].as_bytes().last().expect("non-empty token")))
}

/// The assignment dictated by the three marker letters, when they form a
/// permutation of {s, v, o}.
fn order_from_markers(tokens: &[String; 3]) -> Option<WordOrder> {
    let roles = marker_letters(tokens);
    WordOrder::from_positions([roles[0]?, roles[1]?, roles[2]?])
}

/// Orders consistent with every usable marker: a marker is usable when it
/// reads as a role letter that no other position also claims.
fn marker_constrained_candidates(tokens: &[String; 3]) -> Vec<WordOrder> {
    let roles = marker_letters(tokens);
    let usable: Vec<(usize, Role)> = roles
        .iter()
        .enumerate()
        .filter_map(|(k, maybe_role)| maybe_role.map(|role| (k, role)))
        .filter(|(_, role)| roles.iter().flatten().filter(|r| *r == role).count() == 1)
        .collect();
    let candidates: Vec<WordOrder> = WordOrder::ALL
        .into_iter()
        .filter(|order| {
            usable
                .iter()
                .all(|&(position, role)| order.positions()[position] == role)
        })
        .collect();
    if candidates.is_empty() {
        WordOrder::ALL.to_vec()
    } else {
        candidates
    }
}

fn nv_inference(
    grammar: &Grammar,
    nouns: &Lexicon,
    verbs: &Lexicon,
    tokens: &[String; 3],
    rng: &mut RandomStream,
) -> RoleAssignment {
    let stem_length = nouns.word_length();
    let verb_positions: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, token)| {
            classify_word(nouns, verbs, &token[..stem_length]).1 == LexiconKind::Verb
        })
        .map(|(position, _)| position)
        .collect();
    let candidates: Vec<WordOrder> = if let [position] = verb_positions[..] {
        WordOrder::ALL
            .into_iter()
            .filter(|order| order.position_of(Role::Verb) == position)
            .collect()
    } else {
        // No verb, or several: the split carries no usable signal.
        WordOrder::ALL.to_vec()
    };
    RoleAssignment {
        order: restricted_argmax(grammar, &candidates, rng),
    }
}

/// The hearer's inference over a (possibly noisy) utterance.
///
/// Base: decode words, then take the grammar argmax (ties sampled
/// uniformly). Noun/verb split: a uniquely identified verb position
/// restricts the candidate orders. Markers: a clean marker permutation
/// dictates the assignment outright; corrupted markers fall back to the
/// non-conflicting subset (case) or to split-lexicon inference (nv-case).
pub fn hear(
    grammar: &Grammar,
    lexicons: &LexiconSet,
    scenario: Scenario,
    noisy: &Utterance,
    rng: &mut RandomStream,
) -> RoleAssignment {
    assert!(
        lexicons.matches(scenario),
        "lexicon set does not match scenario {scenario}"
    );
    let expected_len = lexicons.word_length() + usize::from(scenario.attaches_markers());
    for token in &noisy.tokens {
        assert!(
            token.len() == expected_len,
            "token {token:?} has length {}, scenario {scenario} requires {expected_len}",
            token.len()
        );
    }
    match (scenario, lexicons) {
        (Scenario::Base, LexiconSet::Unified(lexicon)) => {
            // The decoded words carry no role information in this scenario.
            for token in &noisy.tokens {
                lexicon.nearest_word(token);
            }
            RoleAssignment {
                order: restricted_argmax(grammar, &WordOrder::ALL, rng),
            }
        }
        (Scenario::NounVerb, LexiconSet::Split { nouns, verbs }) => {
            nv_inference(grammar, nouns, verbs, &noisy.tokens, rng)
        }
        (Scenario::Case, LexiconSet::Unified(_)) => {
            if let Some(order) = order_from_markers(&noisy.tokens) {
                return RoleAssignment { order };
            }
            let candidates = marker_constrained_candidates(&noisy.tokens);
            RoleAssignment {
                order: restricted_argmax(grammar, &candidates, rng),
            }
        }
        (Scenario::NounVerbCase, LexiconSet::Split { nouns, verbs }) => {
            if let Some(order) = order_from_markers(&noisy.tokens) {
                return RoleAssignment { order };
            }
            nv_inference(grammar, nouns, verbs, &noisy.tokens, rng)
        }
        _ => unreachable!("lexicon set was checked against the scenario"),
    }
}

/// One full exchange with the same grammar on both sides: speak, corrupt,
/// hear, then score the role distance between intent and inference.
pub fn communication_trial(
    grammar: &Grammar,
    lexicons: &LexiconSet,
    scenario: Scenario,
    noise: &NoiseParams,
    rng: &mut RandomStream,
) -> f64 {
    let (utterance, truth) = speak(grammar, lexicons, scenario, rng);
    let noisy_tokens = apply_noise(&utterance.tokens, noise, rng);
    let noisy = Utterance {
        tokens: noisy_tokens.try_into().expect("token count preserved"),
        markers_attached: utterance.markers_attached,
    };
    let inferred = hear(grammar, lexicons, scenario, &noisy, rng);
    role_distance(truth.order, inferred.order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use std::collections::HashMap;

    fn small_params() -> LexiconParams {
        LexiconParams {
            lexicon_size: 50,
            noun_lexicon_size: 25,
            verb_lexicon_size: 25,
            word_length: 3,
        }
    }

    fn quiet() -> NoiseParams {
        NoiseParams::new(0.0).unwrap()
    }

    #[test]
    fn one_hot_speaker_uses_its_order() {
        let lexicons =
            LexiconSet::generate(Scenario::Base, &small_params(), &mut stream(1, &[])).unwrap();
        let grammar = Grammar::one_hot(WordOrder::Svo);
        let mut rng = stream(2, &[]);
        for _ in 0..50 {
            let (utterance, truth) = speak(&grammar, &lexicons, Scenario::Base, &mut rng);
            assert_eq!(truth.order, WordOrder::Svo);
            let unique: HashSet<&String> = utterance.tokens.iter().collect();
            assert_eq!(unique.len(), 3, "words are sampled without replacement");
        }
    }

    #[test]
    fn split_lexicon_speaker_puts_verb_word_at_verb_position() {
        let params = small_params();
        let lexicons =
            LexiconSet::generate(Scenario::NounVerb, &params, &mut stream(3, &[])).unwrap();
        let LexiconSet::Split { nouns, verbs } = &lexicons else {
            panic!("expected split lexicons")
        };
        let mut rng = stream(4, &[]);
        let grammar = Grammar::uniform();
        for _ in 0..100 {
            let (utterance, truth) = speak(&grammar, &lexicons, Scenario::NounVerb, &mut rng);
            for (position, token) in utterance.tokens.iter().enumerate() {
                if truth.role_at(position) == Role::Verb {
                    assert!(verbs.contains(token));
                } else {
                    assert!(nouns.contains(token));
                }
            }
        }
    }

    #[test]
    fn marker_scenario_suffixes_are_a_role_permutation() {
        let lexicons =
            LexiconSet::generate(Scenario::Case, &small_params(), &mut stream(5, &[])).unwrap();
        let grammar = Grammar::uniform();
        let mut rng = stream(6, &[]);
        for _ in 0..50 {
            let (utterance, truth) = speak(&grammar, &lexicons, Scenario::Case, &mut rng);
            let mut letters: Vec<u8> = utterance
                .tokens
                .iter()
                .map(|t| *t.as_bytes().last().unwrap())
                .collect();
            assert_eq!(utterance.tokens[0].len(), 4);
            letters.sort_unstable();
            assert_eq!(letters, vec![b'o', b's', b'v']);
            assert_eq!(order_from_markers(&utterance.tokens), Some(truth.order));
        }
    }

    #[test]
    fn uniform_speaker_order_frequencies_within_three_sigma() {
        let lexicons =
            LexiconSet::generate(Scenario::Base, &small_params(), &mut stream(7, &[])).unwrap();
        let grammar = Grammar::uniform();
        let mut rng = stream(8, &[]);
        let mut counts = [0u32; 6];
        for _ in 0..60_000 {
            let (_, truth) = speak(&grammar, &lexicons, Scenario::Base, &mut rng);
            counts[truth.order.index()] += 1;
        }
        for c in counts {
            assert!((9726..=10274).contains(&c), "count {c} outside 3-sigma band");
        }
    }

    #[test]
    fn base_hearer_with_one_hot_grammar_ignores_words() {
        let lexicons =
            LexiconSet::generate(Scenario::Base, &small_params(), &mut stream(9, &[])).unwrap();
        let grammar = Grammar::one_hot(WordOrder::Ovs);
        let speaker_grammar = Grammar::uniform();
        let mut rng = stream(10, &[]);
        for _ in 0..50 {
            let (utterance, _) = speak(&speaker_grammar, &lexicons, Scenario::Base, &mut rng);
            let inferred = hear(&grammar, &lexicons, Scenario::Base, &utterance, &mut rng);
            assert_eq!(inferred.order, WordOrder::Ovs);
        }
    }

    #[test]
    fn case_hearer_reads_clean_markers_for_any_grammar() {
        let lexicons =
            LexiconSet::generate(Scenario::Case, &small_params(), &mut stream(11, &[])).unwrap();
        let grammars = [
            Grammar::uniform(),
            Grammar::one_hot(WordOrder::Osv),
            Grammar::new([0.4, 0.1, 0.1, 0.2, 0.1, 0.1]).unwrap(),
        ];
        let mut rng = stream(12, &[]);
        for grammar in &grammars {
            for _ in 0..100 {
                let (utterance, truth) = speak(grammar, &lexicons, Scenario::Case, &mut rng);
                let inferred = hear(grammar, &lexicons, Scenario::Case, &utterance, &mut rng);
                assert_eq!(inferred.order, truth.order);
            }
        }
    }

    #[test]
    fn nv_hearer_restricts_to_detected_verb_position() {
        let params = small_params();
        let lexicons =
            LexiconSet::generate(Scenario::NounVerb, &params, &mut stream(13, &[])).unwrap();
        let LexiconSet::Split { nouns, verbs } = &lexicons else {
            panic!("expected split lexicons")
        };
        let tokens = [
            verbs.word(0).as_str().to_string(),
            nouns.word(0).as_str().to_string(),
            nouns.word(1).as_str().to_string(),
        ];
        let utterance = Utterance {
            tokens,
            markers_attached: false,
        };
        let grammar = Grammar::uniform();
        let mut rng = stream(14, &[]);
        let mut counts: HashMap<WordOrder, u32> = HashMap::new();
        for _ in 0..4000 {
            let inferred = hear(&grammar, &lexicons, Scenario::NounVerb, &utterance, &mut rng);
            *counts.entry(inferred.order).or_default() += 1;
        }
        // Verb heard at position 0: only VSO and VOS remain, tied under the
        // uniform grammar, so roughly a 50/50 split.
        assert_eq!(counts.len(), 2);
        let vso = counts[&WordOrder::Vso] as f64;
        let vos = counts[&WordOrder::Vos] as f64;
        assert!((vso / 4000.0 - 0.5).abs() < 0.05);
        assert!((vos / 4000.0 - 0.5).abs() < 0.05);
    }

    #[test]
    fn partial_markers_constrain_the_candidates() {
        let lexicons =
            LexiconSet::generate(Scenario::Case, &small_params(), &mut stream(15, &[])).unwrap();
        let LexiconSet::Unified(lexicon) = &lexicons else {
            panic!("expected unified lexicon")
        };
        // Markers q (invalid), v, o: position 1 = verb and position 2 =
        // object force SVO no matter what the grammar prefers.
        let tokens = [
            format!("{}q", lexicon.word(0)),
            format!("{}v", lexicon.word(1)),
            format!("{}o", lexicon.word(2)),
        ];
        let utterance = Utterance {
            tokens,
            markers_attached: true,
        };
        let grammar = Grammar::one_hot(WordOrder::Osv);
        let mut rng = stream(16, &[]);
        for _ in 0..20 {
            let inferred = hear(&grammar, &lexicons, Scenario::Case, &utterance, &mut rng);
            assert_eq!(inferred.order, WordOrder::Svo);
        }
    }

    #[test]
    fn unreadable_markers_leave_the_grammar_in_charge() {
        let lexicons =
            LexiconSet::generate(Scenario::Case, &small_params(), &mut stream(31, &[])).unwrap();
        let LexiconSet::Unified(lexicon) = &lexicons else {
            panic!("expected unified lexicon")
        };
        let tokens = [
            format!("{}q", lexicon.word(0)),
            format!("{}x", lexicon.word(1)),
            format!("{}z", lexicon.word(2)),
        ];
        let utterance = Utterance {
            tokens,
            markers_attached: true,
        };
        let grammar = Grammar::one_hot(WordOrder::Sov);
        let mut rng = stream(32, &[]);
        let inferred = hear(&grammar, &lexicons, Scenario::Case, &utterance, &mut rng);
        assert_eq!(inferred.order, WordOrder::Sov);
    }

    #[test]
    fn duplicated_markers_are_dropped() {
        let lexicons =
            LexiconSet::generate(Scenario::Case, &small_params(), &mut stream(17, &[])).unwrap();
        let LexiconSet::Unified(lexicon) = &lexicons else {
            panic!("expected unified lexicon")
        };
        // Markers s, s, o: the duplicated subject markers conflict and are
        // ignored; object at position 2 leaves {SVO, VSO}.
        let tokens = [
            format!("{}s", lexicon.word(0)),
            format!("{}s", lexicon.word(1)),
            format!("{}o", lexicon.word(2)),
        ];
        let utterance = Utterance {
            tokens,
            markers_attached: true,
        };
        let grammar = Grammar::one_hot(WordOrder::Vso);
        let mut rng = stream(18, &[]);
        let inferred = hear(&grammar, &lexicons, Scenario::Case, &utterance, &mut rng);
        assert_eq!(inferred.order, WordOrder::Vso);
    }

    #[test]
    fn nv_case_falls_back_to_split_inference_on_marker_failure() {
        let params = small_params();
        let lexicons =
            LexiconSet::generate(Scenario::NounVerbCase, &params, &mut stream(19, &[])).unwrap();
        let LexiconSet::Split { nouns, verbs } = &lexicons else {
            panic!("expected split lexicons")
        };
        // Two 's' markers break the permutation; the verb stem at position 1
        // still pins the verb, leaving {SVO, OVS}.
        let tokens = [
            format!("{}s", nouns.word(0)),
            format!("{}s", verbs.word(0)),
            format!("{}o", nouns.word(1)),
        ];
        let utterance = Utterance {
            tokens,
            markers_attached: true,
        };
        let grammar = Grammar::uniform();
        let mut rng = stream(20, &[]);
        for _ in 0..200 {
            let inferred = hear(&grammar, &lexicons, Scenario::NounVerbCase, &utterance, &mut rng);
            assert!(
                inferred.order == WordOrder::Svo || inferred.order == WordOrder::Ovs,
                "got {}",
                inferred.order
            );
        }
    }

    #[test]
    #[should_panic(expected = "length")]
    fn hear_rejects_malformed_token_lengths() {
        let lexicons =
            LexiconSet::generate(Scenario::Base, &small_params(), &mut stream(21, &[])).unwrap();
        let utterance = Utterance {
            tokens: ["ab".into(), "abc".into(), "abc".into()],
            markers_attached: false,
        };
        hear(
            &Grammar::uniform(),
            &lexicons,
            Scenario::Base,
            &utterance,
            &mut stream(22, &[]),
        );
    }

    #[test]
    fn noiseless_case_trials_always_score_zero() {
        let lexicons =
            LexiconSet::generate(Scenario::Case, &small_params(), &mut stream(23, &[])).unwrap();
        let mut rng = stream(24, &[]);
        for grammar in [Grammar::uniform(), Grammar::one_hot(WordOrder::Vos)] {
            for _ in 0..500 {
                let d = communication_trial(&grammar, &lexicons, Scenario::Case, &quiet(), &mut rng);
                assert_eq!(d, 0.0);
            }
        }
    }

    #[test]
    fn noiseless_one_hot_base_trials_always_score_zero() {
        let lexicons =
            LexiconSet::generate(Scenario::Base, &small_params(), &mut stream(25, &[])).unwrap();
        let grammar = Grammar::one_hot(WordOrder::Sov);
        let mut rng = stream(26, &[]);
        for _ in 0..500 {
            let d = communication_trial(&grammar, &lexicons, Scenario::Base, &quiet(), &mut rng);
            assert_eq!(d, 0.0);
        }
    }

    #[test]
    fn noiseless_uniform_base_distance_averages_two_thirds() {
        let lexicons =
            LexiconSet::generate(Scenario::Base, &small_params(), &mut stream(27, &[])).unwrap();
        let grammar = Grammar::uniform();
        let mut rng = stream(28, &[]);
        let trials = 20_000;
        let total: f64 = (0..trials)
            .map(|_| communication_trial(&grammar, &lexicons, Scenario::Base, &quiet(), &mut rng))
            .sum();
        let mean = total / trials as f64;
        assert!((mean - 2.0 / 3.0).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn nv_noiseless_never_misplaces_the_verb() {
        let params = small_params();
        let lexicons =
            LexiconSet::generate(Scenario::NounVerb, &params, &mut stream(29, &[])).unwrap();
        let grammar = Grammar::uniform();
        let mut rng = stream(30, &[]);
        for _ in 0..500 {
            let (utterance, truth) = speak(&grammar, &lexicons, Scenario::NounVerb, &mut rng);
            let inferred = hear(&grammar, &lexicons, Scenario::NounVerb, &utterance, &mut rng);
            assert_eq!(
                inferred.order.position_of(Role::Verb),
                truth.order.position_of(Role::Verb)
            );
        }
    }
}
