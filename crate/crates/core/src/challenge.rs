//! English–French subject/object-swap challenge set.
//!
//! Every item is a present-tense transitive clause whose subject and object
//! can be exchanged to give another plausible sentence, so the roles are only
//! recoverable from structure.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::treebank::{DepSentence, Number, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChallengeNoun {
    pub english_sg: String,
    pub english_pl: String,
    pub french_sg: String,
    pub french_pl: String,
    pub feminine: bool,
    /// Singular determiner elides to `l'`.
    pub elides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChallengeVerb {
    pub english_base: String,
    pub english_3sg: String,
    pub french_infinitive: String,
    pub french_3sg: String,
    pub french_3pl: String,
    /// Negation `ne` elides to `n'` before this verb.
    pub elides: bool,
}

/// Ten noun pairs and ten verb pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChallengeVocab {
    pub nouns: Vec<ChallengeNoun>,
    pub verbs: Vec<ChallengeVerb>,
}

fn data_rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).map(|l| l.split('\t').collect())
}

impl ChallengeVocab {
    /// The checked-in vocabulary and French morphology tables.
    pub fn builtin() -> Self {
        let nouns = data_rows(include_str!("../data/challenge_nouns.tsv"))
            .map(|c| ChallengeNoun {
                english_sg: String::from(c[0]),
                english_pl: String::from(c[1]),
                french_sg: String::from(c[2]),
                french_pl: String::from(c[3]),
                feminine: c[4] == "f",
                elides: c[5] == "yes",
            })
            .collect();
        let verbs = data_rows(include_str!("../data/challenge_verbs.tsv"))
            .map(|c| ChallengeVerb {
                english_base: String::from(c[0]),
                english_3sg: String::from(c[1]),
                french_infinitive: String::from(c[2]),
                french_3sg: String::from(c[3]),
                french_3pl: String::from(c[4]),
                elides: c[5] == "yes",
            })
            .collect();
        ChallengeVocab { nouns, verbs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Affirmative,
    Negative,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Affirmative => "affirmative",
            Polarity::Negative => "negative",
        }
    }
}

/// A noun lemma (vocabulary index) in a given number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NounForm {
    pub noun: usize,
    pub number: Number,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChallengeItem {
    pub subject: NounForm,
    pub object: NounForm,
    pub verb: usize,
    pub polarity: Polarity,
    pub english: String,
    pub french: String,
}

const NUMBERS: [Number; 2] = [Number::Sg, Number::Pl];
const POLARITIES: [Polarity; 2] = [Polarity::Affirmative, Polarity::Negative];

fn english_noun(vocab: &ChallengeVocab, f: NounForm) -> &str {
    let n = &vocab.nouns[f.noun];
    match f.number {
        Number::Sg => &n.english_sg,
        Number::Pl => &n.english_pl,
    }
}

/// English sentence, e.g. "The teacher does not respect the student."
pub fn english_realize(
    vocab: &ChallengeVocab,
    subject: NounForm,
    object: NounForm,
    verb: usize,
    polarity: Polarity,
) -> String {
    let v = &vocab.verbs[verb];
    let predicate = match (polarity, subject.number) {
        (Polarity::Affirmative, Number::Sg) => v.english_3sg.clone(),
        (Polarity::Affirmative, Number::Pl) => v.english_base.clone(),
        (Polarity::Negative, Number::Sg) => format!("does not {}", v.english_base),
        (Polarity::Negative, Number::Pl) => format!("do not {}", v.english_base),
    };
    format!("The {} {} the {}.", english_noun(vocab, subject), predicate, english_noun(vocab, object))
}

fn french_np(vocab: &ChallengeVocab, f: NounForm, initial: bool) -> String {
    let n = &vocab.nouns[f.noun];
    let (det, noun) = match f.number {
        Number::Pl => ("les ", n.french_pl.as_str()),
        Number::Sg if n.elides => ("l'", n.french_sg.as_str()),
        Number::Sg if n.feminine => ("la ", n.french_sg.as_str()),
        Number::Sg => ("le ", n.french_sg.as_str()),
    };
    let det = if initial {
        let mut c = det.chars();
        c.next().map(|first| first.to_uppercase().chain(c).collect::<String>()).unwrap_or_default()
    } else {
        String::from(det)
    };
    format!("{det}{noun}")
}

/// French sentence, e.g. "L'enseignant ne respecte pas l'étudiant."
pub fn french_realize(
    vocab: &ChallengeVocab,
    subject: NounForm,
    object: NounForm,
    verb: usize,
    polarity: Polarity,
) -> String {
    let v = &vocab.verbs[verb];
    let conjugated = match subject.number {
        Number::Sg => v.french_3sg.as_str(),
        Number::Pl => v.french_3pl.as_str(),
    };
    let predicate = match polarity {
        Polarity::Affirmative => String::from(conjugated),
        Polarity::Negative if v.elides => format!("n'{conjugated} pas"),
        Polarity::Negative => format!("ne {conjugated} pas"),
    };
    format!("{} {} {}.", french_np(vocab, subject, true), predicate, french_np(vocab, object, false))
}

fn item(vocab: &ChallengeVocab, subject: NounForm, object: NounForm, verb: usize, polarity: Polarity) -> ChallengeItem {
    ChallengeItem {
        subject,
        object,
        verb,
        polarity,
        english: english_realize(vocab, subject, object, verb, polarity),
        french: french_realize(vocab, subject, object, verb, polarity),
    }
}

/// The full set: every subject form × every object form of a different lemma
/// × verb × polarity, in that nesting order.
pub fn generate_challenge(vocab: &ChallengeVocab) -> Vec<ChallengeItem> {
    let mut out = Vec::new();
    for s in 0..vocab.nouns.len() {
        for sn in NUMBERS {
            for o in (0..vocab.nouns.len()).filter(|&o| o != s) {
                for on in NUMBERS {
                    for v in 0..vocab.verbs.len() {
                        for p in POLARITIES {
                            let subject = NounForm { noun: s, number: sn };
                            let object = NounForm { noun: o, number: on };
                            out.push(item(vocab, subject, object, v, p));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The item with subject and object exchanged.
pub fn reverse_of(vocab: &ChallengeVocab, it: &ChallengeItem) -> ChallengeItem {
    item(vocab, it.object, it.subject, it.verb, it.polarity)
}

/// Position of an item in [`generate_challenge`] order.
pub fn item_index(
    vocab: &ChallengeVocab,
    subject: NounForm,
    object: NounForm,
    verb: usize,
    polarity: Polarity,
) -> usize {
    let number = |n: Number| usize::from(n == Number::Pl);
    let nouns = vocab.nouns.len();
    let subject_form = subject.noun * 2 + number(subject.number);
    let object_noun = object.noun - usize::from(object.noun > subject.noun);
    let object_form = object_noun * 2 + number(object.number);
    let polarity = usize::from(polarity == Polarity::Negative);
    ((subject_form * (nouns - 1) * 2 + object_form) * vocab.verbs.len() + verb) * 2 + polarity
}

/// Index of the reversed item.
pub fn reverse_index(vocab: &ChallengeVocab, it: &ChallengeItem) -> usize {
    item_index(vocab, it.object, it.subject, it.verb, it.polarity)
}

/// Gold dependency tree of the English side, tokenized with a final period.
pub fn english_tree(vocab: &ChallengeVocab, it: &ChallengeItem, sent_id: &str) -> DepSentence {
    let noun_token = |index: usize, f: NounForm, head: usize, rel: &str| {
        let n = &vocab.nouns[f.noun];
        let (xpos, feats) = match f.number {
            Number::Sg => ("NN", "Number=Sing"),
            Number::Pl => ("NNS", "Number=Plur"),
        };
        Token::new(index, english_noun(vocab, f), &n.english_sg, "NOUN", head, rel).with_xpos(xpos).with_feats(feats)
    };
    let det = |index: usize, form: &str, head: usize| {
        Token::new(index, form, "the", "DET", head, "det").with_xpos("DT").with_feats("Definite=Def|PronType=Art")
    };
    let v = &vocab.verbs[it.verb];
    let finite = match it.subject.number {
        Number::Sg => ("VBZ", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"),
        Number::Pl => ("VBP", "Mood=Ind|Number=Plur|Person=3|Tense=Pres|VerbForm=Fin"),
    };
    let tokens = match it.polarity {
        Polarity::Affirmative => {
            let form = if it.subject.number == Number::Sg { &v.english_3sg } else { &v.english_base };
            alloc::vec![
                det(1, "The", 2),
                noun_token(2, it.subject, 3, "nsubj"),
                Token::new(3, form, &v.english_base, "VERB", 0, "root").with_xpos(finite.0).with_feats(finite.1),
                det(4, "the", 5),
                noun_token(5, it.object, 3, "obj"),
                Token::new(6, ".", ".", "PUNCT", 3, "punct").with_xpos("."),
            ]
        }
        Polarity::Negative => {
            let aux = if it.subject.number == Number::Sg { "does" } else { "do" };
            alloc::vec![
                det(1, "The", 2),
                noun_token(2, it.subject, 5, "nsubj"),
                Token::new(3, aux, "do", "AUX", 5, "aux").with_xpos(finite.0).with_feats(finite.1),
                Token::new(4, "not", "not", "PART", 5, "advmod").with_xpos("RB").with_feats("Polarity=Neg"),
                Token::new(5, &v.english_base, &v.english_base, "VERB", 0, "root")
                    .with_xpos("VB")
                    .with_feats("VerbForm=Inf"),
                det(6, "the", 7),
                noun_token(7, it.object, 5, "obj"),
                Token::new(8, ".", ".", "PUNCT", 5, "punct").with_xpos("."),
            ]
        }
    };
    DepSentence::new(sent_id, tokens)
}
