//! Artificial case marking: paradigm tables, declension classes and suffixation
//! of argument heads and agreeing verbs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::permuter::TransformedSentence;
use crate::treebank::{detect_number, extract_clauses, DepSentence, DetectedNumber, Number, Token};

/// Core argument role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Nsubj,
    Dobj,
    Iobj,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Nsubj, Role::Dobj, Role::Iobj];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Nsubj => "nsubj",
            Role::Dobj => "dobj",
            Role::Iobj => "iobj",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CaseSystem {
    #[default]
    None,
    /// Suffixes encode role and number.
    Unambiguous,
    /// Suffixes encode number only.
    Syncretic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MorphStyle {
    /// Readable suffixes such as `.nsubj.sg`.
    #[default]
    Overt,
    /// Fused opaque suffixes from the default declension.
    Implicit,
    /// Fused opaque suffixes that also depend on the lemma's declension class.
    ImplicitDeclensions,
}

impl FromStr for CaseSystem {
    type Err = MorphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(CaseSystem::None),
            "unambiguous" => Ok(CaseSystem::Unambiguous),
            "syncretic" => Ok(CaseSystem::Syncretic),
            _ => Err(MorphError::UnknownName(String::from(s))),
        }
    }
}

impl FromStr for MorphStyle {
    type Err = MorphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "overt" => Ok(MorphStyle::Overt),
            "implicit" => Ok(MorphStyle::Implicit),
            "implicit-declensions" | "implicit_declensions" | "declensions" => Ok(MorphStyle::ImplicitDeclensions),
            _ => Err(MorphError::UnknownName(String::from(s))),
        }
    }
}

impl CaseSystem {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseSystem::None => "none",
            CaseSystem::Unambiguous => "unambiguous",
            CaseSystem::Syncretic => "syncretic",
        }
    }
}

impl MorphStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            MorphStyle::Overt => "overt",
            MorphStyle::Implicit => "implicit",
            MorphStyle::ImplicitDeclensions => "implicit-declensions",
        }
    }
}

impl fmt::Display for CaseSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for MorphStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inflection class of a lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Declension {
    #[default]
    First,
    Second,
    Third,
}

impl Declension {
    pub const ALL: [Declension; 3] = [Declension::First, Declension::Second, Declension::Third];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Declension::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MorphError {
    #[error("syncretic case marking is only defined for the overt style")]
    UnsupportedCombination,
    #[error("unknown case system or style {0:?}")]
    UnknownName(String),
    #[error("token {token} is annotated for marking but missing from the transformed sentence")]
    Inconsistent { token: usize },
    #[error("declension file line {line}: {reason}")]
    DeclensionLine { line: usize, reason: &'static str },
}

const OVERT: [(Role, Number, &str); 6] = [
    (Role::Nsubj, Number::Sg, ".nsubj.sg"),
    (Role::Nsubj, Number::Pl, ".nsubj.pl"),
    (Role::Dobj, Number::Sg, ".dobj.sg"),
    (Role::Dobj, Number::Pl, ".dobj.pl"),
    (Role::Iobj, Number::Sg, ".iobj.sg"),
    (Role::Iobj, Number::Pl, ".iobj.pl"),
];

/// Rows in `OVERT` order, columns by declension.
const IMPLICIT: [[&str; 3]; 6] = [
    ["kar", "par", "pa"],
    ["kon", "pon", "po"],
    ["kin", "it", "kit"],
    ["ker", "et", "ket"],
    ["ken", "kez", "ke"],
    ["kre", "kr", "re"],
];

const SYNCRETIC: [(Number, &str); 2] = [(Number::Sg, ".arg.sg"), (Number::Pl, ".arg.pl")];

/// Suffix inventory for one (style, case system) combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadigmTable {
    pub style: MorphStyle,
    pub system: CaseSystem,
    entries: BTreeMap<(Role, Number, Declension), &'static str>,
    syncretic: BTreeMap<Number, &'static str>,
}

/// Builds the suffix table. `Implicit` only fills the first declension;
/// `CaseSystem::None` yields an empty table.
pub fn build_paradigm(style: MorphStyle, system: CaseSystem) -> Result<ParadigmTable, MorphError> {
    let mut table = ParadigmTable { style, system, entries: BTreeMap::new(), syncretic: BTreeMap::new() };
    match system {
        CaseSystem::None => {}
        CaseSystem::Syncretic => {
            if style != MorphStyle::Overt {
                return Err(MorphError::UnsupportedCombination);
            }
            table.syncretic.extend(SYNCRETIC);
        }
        CaseSystem::Unambiguous => {
            for (row, &(role, number, overt)) in OVERT.iter().enumerate() {
                let classes: &[Declension] = match style {
                    MorphStyle::Overt | MorphStyle::ImplicitDeclensions => &Declension::ALL,
                    MorphStyle::Implicit => &[Declension::First],
                };
                for &d in classes {
                    let suffix = match style {
                        MorphStyle::Overt => overt,
                        _ => IMPLICIT[row][d as usize],
                    };
                    table.entries.insert((role, number, d), suffix);
                }
            }
        }
    }
    Ok(table)
}

impl ParadigmTable {
    /// Suffix for an argument head. Declensions absent from the table fall
    /// back to the first.
    pub fn suffix(&self, role: Role, number: Number, declension: Declension) -> Option<&'static str> {
        match self.system {
            CaseSystem::None => None,
            CaseSystem::Syncretic => self.syncretic.get(&number).copied(),
            CaseSystem::Unambiguous => self
                .entries
                .get(&(role, number, declension))
                .or_else(|| self.entries.get(&(role, number, Declension::First)))
                .copied(),
        }
    }

    /// Unambiguous entries for (role, number, declension).
    pub fn entries(&self) -> impl Iterator<Item = ((Role, Number, Declension), &'static str)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Syncretic entries by number.
    pub fn syncretic_entries(&self) -> impl Iterator<Item = (Number, &'static str)> + '_ {
        self.syncretic.iter().map(|(k, v)| (*k, *v))
    }

    /// Recovers (role, number) from an unambiguous suffix given the lemma's declension.
    pub fn decode(&self, suffix: &str, declension: Declension) -> Option<(Role, Number)> {
        let d = if self.style == MorphStyle::ImplicitDeclensions { declension } else { Declension::First };
        self.entries
            .iter()
            .find(|((_, _, class), s)| *class == d && **s == suffix)
            .map(|((role, number, _), _)| (*role, *number))
    }

    /// Recovers the number from a syncretic suffix.
    pub fn decode_number(&self, suffix: &str) -> Option<Number> {
        self.syncretic.iter().find(|(_, s)| **s == suffix).map(|(n, _)| *n)
    }

    fn is_active(&self) -> bool {
        self.system != CaseSystem::None
    }
}

/// Lemma → declension class. Lemmas not in the map belong to the first class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeclensionMap {
    assignment: BTreeMap<String, Declension>,
}

impl DeclensionMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, lemma: &str, class: Declension) {
        self.assignment.insert(String::from(lemma), class);
    }

    pub fn get(&self, lemma: &str) -> Declension {
        self.assignment.get(lemma).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Declension)> {
        self.assignment.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Number of lemmas per class, first to third.
    pub fn class_sizes(&self) -> [usize; 3] {
        let mut sizes = [0; 3];
        for d in self.assignment.values() {
            sizes[*d as usize] += 1;
        }
        sizes
    }

    /// `lemma<TAB>class` lines, sorted by lemma.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (lemma, d) in &self.assignment {
            let _ = writeln!(out, "{lemma}\t{}", d.number());
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, MorphError> {
        let mut map = DeclensionMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (lemma, class) = line
                .split_once('\t')
                .ok_or(MorphError::DeclensionLine { line: i + 1, reason: "expected lemma<TAB>class" })?;
            let class = class
                .trim()
                .parse::<u8>()
                .ok()
                .and_then(Declension::from_number)
                .ok_or(MorphError::DeclensionLine { line: i + 1, reason: "class must be 1, 2 or 3" })?;
            map.insert(lemma, class);
        }
        Ok(map)
    }
}

const CLASS_SHARES: [u32; 3] = [60, 30, 10];

/// Class sizes for `n` lemmas: largest-remainder rounding of 60/30/10, ties
/// going to the lower class.
pub fn declension_class_sizes(n: usize) -> [usize; 3] {
    let mut sizes = [0usize; 3];
    let mut remainders = [(0usize, 0usize); 3];
    for (i, share) in CLASS_SHARES.iter().enumerate() {
        let exact = n * *share as usize;
        sizes[i] = exact / 100;
        remainders[i] = (exact % 100, i);
    }
    let mut left = n - sizes.iter().sum::<usize>();
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, i) in remainders.iter() {
        if left == 0 {
            break;
        }
        sizes[i] += 1;
        left -= 1;
    }
    sizes
}

/// Randomly partitions a lexicon into declension classes with 60/30/10 proportions.
pub fn assign_declensions<'a, I, R>(lexicon: I, rng: &mut R) -> DeclensionMap
where
    I: IntoIterator<Item = &'a str>,
    R: Rng + ?Sized,
{
    let mut lemmas: Vec<&str> = lexicon.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    lemmas.shuffle(rng);
    let [first, second, _] = declension_class_sizes(lemmas.len());
    let mut map = DeclensionMap::new();
    for (i, lemma) in lemmas.into_iter().enumerate() {
        let class = if i < first {
            Declension::First
        } else if i < first + second {
            Declension::Second
        } else {
            Declension::Third
        };
        map.insert(lemma, class);
    }
    map
}

const PRONOUN_BASE: [(&str, &str); 5] = [("her", "she"), ("him", "he"), ("me", "I"), ("us", "we"), ("them", "they")];

/// Nominative base form of a personal pronoun; other tokens keep their form.
pub fn normalize_pronoun(tok: &Token) -> String {
    if tok.upos != "PRON" {
        return tok.form.clone();
    }
    let lower = tok.form.to_lowercase();
    match PRONOUN_BASE.iter().find(|(oblique, _)| *oblique == lower) {
        Some((_, base)) if tok.form.starts_with(char::is_uppercase) && *base != "I" => {
            let mut chars = base.chars();
            chars.next().map(|c| c.to_uppercase().chain(chars).collect()).unwrap_or_default()
        }
        Some((_, base)) => String::from(*base),
        None => tok.form.clone(),
    }
}

/// A nominal core argument to be marked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgumentMark {
    pub head: usize,
    pub role: Role,
    pub number: Number,
    /// The number was not detectable and defaulted to singular.
    pub number_defaulted: bool,
    pub declension: Declension,
}

/// A clause head and its nominal arguments in verb-marker order
/// (direct object, indirect object, subject).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseAgreement {
    pub verb: usize,
    pub args: Vec<ArgumentMark>,
}

/// Nominal core arguments of every clause of a validated sentence.
pub fn case_annotations(sent: &DepSentence, decl: &DeclensionMap) -> Vec<ClauseAgreement> {
    extract_clauses(sent)
        .into_iter()
        .map(|clause| {
            let slots = [(Role::Dobj, &clause.object), (Role::Iobj, &clause.iobject), (Role::Nsubj, &clause.subject)];
            let args = slots
                .into_iter()
                .filter_map(|(role, c)| {
                    let tok = sent.token(c.as_ref()?.head)?;
                    tok.is_nominal().then(|| {
                        let detected = detect_number(tok);
                        ArgumentMark {
                            head: tok.index,
                            role,
                            number: detected.or_singular(),
                            number_defaulted: detected == DetectedNumber::Unknown,
                            declension: decl.get(&tok.lemma),
                        }
                    })
                })
                .collect();
            ClauseAgreement { verb: clause.verb, args }
        })
        .collect()
}

/// Lemmas of all nominal core-argument heads, the lexicon for declension assignment.
pub fn argument_lemmas(sentences: &[DepSentence]) -> BTreeSet<String> {
    let empty = DeclensionMap::new();
    let mut out = BTreeSet::new();
    for s in sentences {
        for clause in case_annotations(s, &empty) {
            for arg in clause.args {
                out.insert(s.tokens[arg.head - 1].lemma.clone());
            }
        }
    }
    out
}

/// Result of [`mark_case`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSentence {
    pub sentence: TransformedSentence,
    /// Argument heads whose number defaulted to singular.
    pub defaulted_numbers: usize,
}

/// Suffix a verb receives for its arguments. Unambiguous systems concatenate
/// one marker per argument in annotation order; the syncretic system marks
/// the subject's number only.
pub fn verb_suffix(table: &ParadigmTable, args: &[ArgumentMark]) -> String {
    match table.system {
        CaseSystem::None => String::new(),
        CaseSystem::Syncretic => args
            .iter()
            .find(|a| a.role == Role::Nsubj)
            .and_then(|a| table.suffix(a.role, a.number, a.declension))
            .map(ToString::to_string)
            .unwrap_or_default(),
        CaseSystem::Unambiguous => args.iter().filter_map(|a| table.suffix(a.role, a.number, a.declension)).collect(),
    }
}

/// Adds case suffixes to argument heads and agreement suffixes to clause heads
/// of a transformed sentence. Pronominal heads are first put in their base form.
pub fn mark_case(
    sent: &DepSentence,
    ts: &TransformedSentence,
    table: &ParadigmTable,
    decl: &DeclensionMap,
) -> Result<MarkedSentence, MorphError> {
    let mut out = ts.clone();
    if !table.is_active() {
        return Ok(MarkedSentence { sentence: out, defaulted_numbers: 0 });
    }
    let mut position = alloc::vec![None; sent.len() + 1];
    for (pos, &src) in ts.provenance.iter().enumerate() {
        match position.get_mut(src) {
            Some(slot) if src > 0 => *slot = Some(pos),
            _ => return Err(MorphError::Inconsistent { token: src }),
        }
    }
    let annotations = case_annotations(sent, decl);
    let mut defaulted = 0;
    for clause in &annotations {
        for arg in &clause.args {
            let pos = position[arg.head].ok_or(MorphError::Inconsistent { token: arg.head })?;
            let mut form = normalize_pronoun(&sent.tokens[arg.head - 1]);
            if let Some(suffix) = table.suffix(arg.role, arg.number, arg.declension) {
                form.push_str(suffix);
            }
            out.tokens[pos] = form;
            defaulted += usize::from(arg.number_defaulted);
        }
    }
    for clause in &annotations {
        let marker = verb_suffix(table, &clause.args);
        if marker.is_empty() {
            continue;
        }
        let pos = position[clause.verb].ok_or(MorphError::Inconsistent { token: clause.verb })?;
        out.tokens[pos].push_str(&marker);
    }
    Ok(MarkedSentence { sentence: out, defaulted_numbers: defaulted })
}

/// Vocabulary size of one corpus and its types unseen in the base corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VocabCount {
    pub types: usize,
    pub novel_types: usize,
}

/// Distinct whitespace-token counts per corpus; novelty is measured against
/// the first corpus.
pub fn vocab_stats<S: AsRef<str>>(corpora: &[&[S]]) -> Vec<VocabCount> {
    let vocabularies: Vec<BTreeSet<&str>> = corpora
        .iter()
        .map(|corpus| corpus.iter().flat_map(|line| line.as_ref().split_whitespace()).collect())
        .collect();
    let Some(base) = vocabularies.first() else { return Vec::new() };
    vocabularies.iter().map(|v| VocabCount { types: v.len(), novel_types: v.difference(base).count() }).collect()
}

impl fmt::Display for Declension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}
