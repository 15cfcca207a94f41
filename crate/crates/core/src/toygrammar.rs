//! Toy synchronous grammar: transitive clauses over a six-word-per-class
//! lexicon, realized verb-initially (VSO/VOS, optionally case-marked) on the
//! source side and SVO on the target side.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::seed;

/// Subject marker appended to the subject head noun.
pub const SUBJECT_MARKER: &str = "#S";
/// Object marker appended to the object head noun.
pub const OBJECT_MARKER: &str = "#O";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ToyError {
    #[error("lexicon line {line}: {reason}")]
    Lexicon { line: usize, reason: String },
    #[error("requested {requested} sentences but the language has {available}")]
    TooMany { requested: usize, available: usize },
    #[error("split ratios must be non-negative and sum to 1")]
    BadRatios,
    #[error("cannot decode roles: {0}")]
    Decode(String),
}

/// A source word and its target translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexPair {
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyLexicon {
    pub nouns: Vec<LexPair>,
    pub verbs: Vec<LexPair>,
    pub adjectives: Vec<LexPair>,
    pub determiner: LexPair,
}

impl ToyLexicon {
    /// The checked-in lexicon.
    pub fn builtin() -> Self {
        Self::parse(include_str!("../data/toy_lexicon.tsv")).expect("built-in lexicon is valid")
    }

    /// Parses `category<TAB>source<TAB>target` lines (`det`, `noun`, `verb`, `adj`);
    /// `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self, ToyError> {
        let mut lex = ToyLexicon {
            nouns: Vec::new(),
            verbs: Vec::new(),
            adjectives: Vec::new(),
            determiner: LexPair { source: String::new(), target: String::new() },
        };
        let err = |line: usize, reason: &str| ToyError::Lexicon { line, reason: String::from(reason) };
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [cat, source, target] = cols[..] else {
                return Err(err(line_no, "expected 3 tab-separated columns"));
            };
            let pair = LexPair { source: String::from(source), target: String::from(target) };
            match cat {
                "det" => lex.determiner = pair,
                "noun" => lex.nouns.push(pair),
                "verb" => lex.verbs.push(pair),
                "adj" => lex.adjectives.push(pair),
                _ => return Err(err(line_no, "unknown category")),
            }
        }
        lex.check().map_err(|reason| err(0, reason))?;
        Ok(lex)
    }

    /// Checks the 6/6/6 shape and that forms are distinct on each side.
    pub fn check(&self) -> Result<(), &'static str> {
        if self.nouns.len() != 6 || self.verbs.len() != 6 || self.adjectives.len() != 6 {
            return Err("expected exactly 6 nouns, 6 verbs and 6 adjectives");
        }
        if self.determiner.source.is_empty() {
            return Err("missing determiner");
        }
        let all =
            || self.nouns.iter().chain(&self.verbs).chain(&self.adjectives).chain(core::iter::once(&self.determiner));
        let sources: alloc::collections::BTreeSet<&str> = all().map(|p| p.source.as_str()).collect();
        let targets: alloc::collections::BTreeSet<&str> = all().map(|p| p.target.as_str()).collect();
        if sources.len() != 19 || targets.len() != 19 {
            return Err("source and target forms must be distinct");
        }
        if sources.iter().any(|s| s.contains('#') || s.contains(char::is_whitespace)) {
            return Err("source forms may not contain '#' or whitespace");
        }
        Ok(())
    }

    fn noun_phrase_options(&self) -> usize {
        self.nouns.len() * (self.adjectives.len() + 1)
    }
}

/// Optional adjective plus head noun, as lexicon indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NounPhrase {
    pub adjective: Option<usize>,
    pub noun: usize,
}

/// An abstract transitive clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ToySentence {
    pub verb: usize,
    pub subject: NounPhrase,
    pub object: NounPhrase,
}

/// Source-side constituent order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SourceOrder {
    Vso,
    Vos,
}

impl SourceOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceOrder::Vso => "VSO",
            SourceOrder::Vos => "VOS",
        }
    }
}

/// Which source language to realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ToyVariant {
    FixedVso,
    FixedVos,
    /// VSO or VOS drawn uniformly, with `#S`/`#O` on the head nouns.
    MixedCase,
}

impl ToyVariant {
    pub const ALL: [ToyVariant; 3] = [ToyVariant::FixedVso, ToyVariant::FixedVos, ToyVariant::MixedCase];

    pub fn name(self) -> &'static str {
        match self {
            ToyVariant::FixedVso => "vso",
            ToyVariant::FixedVos => "vos",
            ToyVariant::MixedCase => "mixed",
        }
    }
}

impl fmt::Display for ToyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of abstract sentences the lexicon generates.
pub fn language_size(lex: &ToyLexicon) -> usize {
    let np = lex.noun_phrase_options();
    lex.verbs.len() * np * np
}

fn noun_phrase_at(lex: &ToyLexicon, i: usize) -> NounPhrase {
    let per_noun = lex.adjectives.len() + 1;
    let a = i % per_noun;
    NounPhrase { noun: i / per_noun, adjective: a.checked_sub(1) }
}

/// Abstract sentence with id `id` (0-based, `< language_size`).
pub fn sentence_at(lex: &ToyLexicon, id: usize) -> ToySentence {
    let np = lex.noun_phrase_options();
    ToySentence {
        verb: id / (np * np),
        subject: noun_phrase_at(lex, (id / np) % np),
        object: noun_phrase_at(lex, id % np),
    }
}

/// All abstract sentences, in id order.
pub fn enumerate_sentences(lex: &ToyLexicon) -> Vec<ToySentence> {
    (0..language_size(lex)).map(|id| sentence_at(lex, id)).collect()
}

fn source_np(lex: &ToyLexicon, np: NounPhrase, marker: Option<&str>) -> String {
    let mut out = lex.determiner.source.clone();
    if let Some(a) = np.adjective {
        out.push(' ');
        out.push_str(&lex.adjectives[a].source);
    }
    out.push(' ');
    out.push_str(&lex.nouns[np.noun].source);
    if let Some(m) = marker {
        out.push_str(m);
    }
    out
}

fn target_np(lex: &ToyLexicon, np: NounPhrase) -> String {
    match np.adjective {
        Some(a) => format!("{} {} {}", lex.determiner.target, lex.adjectives[a].target, lex.nouns[np.noun].target),
        None => format!("{} {}", lex.determiner.target, lex.nouns[np.noun].target),
    }
}

/// Source string in a given order.
pub fn realize_source(lex: &ToyLexicon, s: &ToySentence, order: SourceOrder, case_marked: bool) -> String {
    let (sm, om) = if case_marked { (Some(SUBJECT_MARKER), Some(OBJECT_MARKER)) } else { (None, None) };
    let subj = source_np(lex, s.subject, sm);
    let obj = source_np(lex, s.object, om);
    let verb = &lex.verbs[s.verb].source;
    match order {
        SourceOrder::Vso => format!("{verb} {subj} {obj}"),
        SourceOrder::Vos => format!("{verb} {obj} {subj}"),
    }
}

/// SVO target string.
pub fn realize_target(lex: &ToyLexicon, s: &ToySentence) -> String {
    format!("{} {} {}", target_np(lex, s.subject), lex.verbs[s.verb].target, target_np(lex, s.object))
}

/// A realized sentence pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyPair {
    pub id: usize,
    pub sentence: ToySentence,
    pub order: SourceOrder,
    pub case_marked: bool,
    pub source: String,
    pub target: String,
}

/// Realizes one abstract sentence. Only `MixedCase` consumes randomness.
pub fn realize_pair<R: Rng + ?Sized>(
    lex: &ToyLexicon,
    s: &ToySentence,
    variant: ToyVariant,
    rng: &mut R,
) -> (String, String, SourceOrder) {
    let (order, marked) = match variant {
        ToyVariant::FixedVso => (SourceOrder::Vso, false),
        ToyVariant::FixedVos => (SourceOrder::Vos, false),
        ToyVariant::MixedCase => (if rng.random_bool(0.5) { SourceOrder::Vso } else { SourceOrder::Vos }, true),
    };
    (realize_source(lex, s, order, marked), realize_target(lex, s), order)
}

/// Draws `n` distinct abstract sentence ids without replacement. Depends only
/// on `seed`, so every variant realizes the same sample.
pub fn sample_ids(lex: &ToyLexicon, n: usize, seed: u64) -> Result<Vec<usize>, ToyError> {
    let available = language_size(lex);
    if n > available {
        return Err(ToyError::TooMany { requested: n, available });
    }
    let mut ids: Vec<usize> = (0..available).collect();
    ids.shuffle(&mut seed::stream(seed, "toy-sample", 0));
    ids.truncate(n);
    Ok(ids)
}

/// Samples and realizes `n` distinct sentence pairs.
pub fn generate_corpus(lex: &ToyLexicon, variant: ToyVariant, n: usize, seed: u64) -> Result<Vec<ToyPair>, ToyError> {
    let ids = sample_ids(lex, n, seed)?;
    Ok(ids
        .into_iter()
        .enumerate()
        .map(|(ordinal, id)| {
            let sentence = sentence_at(lex, id);
            let mut rng = seed::stream(seed, "toy-order", ordinal as u64);
            let (source, target, order) = realize_pair(lex, &sentence, variant, &mut rng);
            ToyPair { id, sentence, order, case_marked: variant == ToyVariant::MixedCase, source, target }
        })
        .collect())
}

/// Train/validation/test partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split<T> {
    pub train: Vec<T>,
    pub valid: Vec<T>,
    pub test: Vec<T>,
}

impl<T> Default for Split<T> {
    fn default() -> Self {
        Split { train: Vec::new(), valid: Vec::new(), test: Vec::new() }
    }
}

/// Split sizes for `n` items: train and validation rounded, test takes the rest.
pub fn split_sizes(n: usize, ratios: (f64, f64, f64)) -> Result<(usize, usize, usize), ToyError> {
    let (a, b, c) = ratios;
    if a < 0.0 || b < 0.0 || c < 0.0 || (a + b + c - 1.0).abs() > 1e-9 {
        return Err(ToyError::BadRatios);
    }
    let train = (libm::round(n as f64 * a) as usize).min(n);
    let valid = (libm::round(n as f64 * b) as usize).min(n - train);
    Ok((train, valid, n - train - valid))
}

/// Random split keyed on abstract sentence id: corpora realizing the same
/// sample get the same partition. Items keep corpus order within each part.
pub fn split_corpus(corpus: &[ToyPair], ratios: (f64, f64, f64), seed: u64) -> Result<Split<ToyPair>, ToyError> {
    let (train_n, valid_n, _) = split_sizes(corpus.len(), ratios)?;
    let mut ids: Vec<usize> = corpus.iter().map(|p| p.id).collect();
    ids.sort_unstable();
    ids.shuffle(&mut seed::stream(seed, "toy-split", 0));
    let part: alloc::collections::BTreeMap<usize, u8> = ids
        .iter()
        .enumerate()
        .map(|(rank, &id)| {
            (
                id,
                if rank < train_n {
                    0
                } else if rank < train_n + valid_n {
                    1
                } else {
                    2
                },
            )
        })
        .collect();
    let mut split = Split::default();
    for pair in corpus {
        match part[&pair.id] {
            0 => split.train.push(pair.clone()),
            1 => split.valid.push(pair.clone()),
            _ => split.test.push(pair.clone()),
        }
    }
    Ok(split)
}

/// Puts case markers in separate tokens (`cat#S` → `cat #S`).
pub fn split_markers(source: &str) -> String {
    source.replace(SUBJECT_MARKER, " #S").replace(OBJECT_MARKER, " #O")
}

/// Roles recovered from a source string: (subject head noun, object head noun).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roles {
    pub subject: String,
    pub object: String,
}

struct ParsedNp<'a> {
    noun: &'a str,
    marker: Option<&'a str>,
}

fn parse_np<'a>(lex: &ToyLexicon, toks: &[&'a str], pos: &mut usize) -> Result<ParsedNp<'a>, ToyError> {
    let decode = |m: &str| ToyError::Decode(String::from(m));
    if toks.get(*pos) != Some(&lex.determiner.source.as_str()) {
        return Err(decode("expected determiner"));
    }
    *pos += 1;
    if toks.get(*pos).is_some_and(|t| lex.adjectives.iter().any(|a| a.source == *t)) {
        *pos += 1;
    }
    let word = *toks.get(*pos).ok_or_else(|| decode("missing noun"))?;
    *pos += 1;
    let (noun, mut marker) = match word.find('#') {
        Some(i) => (&word[..i], Some(&word[i..])),
        None => (word, None),
    };
    if marker.is_none() && toks.get(*pos).is_some_and(|t| *t == SUBJECT_MARKER || *t == OBJECT_MARKER) {
        marker = Some(toks[*pos]);
        *pos += 1;
    }
    if !lex.nouns.iter().any(|n| n.source == noun) {
        return Err(decode("unknown noun"));
    }
    Ok(ParsedNp { noun, marker })
}

/// Decodes argument roles from a generated source string: positionally for
/// fixed-order variants, from the case markers for `MixedCase`. Accepts
/// markers attached or split off by [`split_markers`].
pub fn recover_roles(lex: &ToyLexicon, source: &str, variant: ToyVariant) -> Result<Roles, ToyError> {
    let toks: Vec<&str> = source.split_whitespace().collect();
    if !toks.first().is_some_and(|t| lex.verbs.iter().any(|v| v.source == *t)) {
        return Err(ToyError::Decode(String::from("sentence is not verb-initial")));
    }
    let mut pos = 1;
    let first = parse_np(lex, &toks, &mut pos)?;
    let second = parse_np(lex, &toks, &mut pos)?;
    if pos != toks.len() {
        return Err(ToyError::Decode(String::from("trailing tokens")));
    }
    let roles = |s: &str, o: &str| Roles { subject: String::from(s), object: String::from(o) };
    match variant {
        ToyVariant::FixedVso => Ok(roles(first.noun, second.noun)),
        ToyVariant::FixedVos => Ok(roles(second.noun, first.noun)),
        ToyVariant::MixedCase => match (first.marker, second.marker) {
            (Some(SUBJECT_MARKER), Some(OBJECT_MARKER)) => Ok(roles(first.noun, second.noun)),
            (Some(OBJECT_MARKER), Some(SUBJECT_MARKER)) => Ok(roles(second.noun, first.noun)),
            _ => Err(ToyError::Decode(String::from("case markers missing or inconsistent; roles are ambiguous"))),
        },
    }
}
