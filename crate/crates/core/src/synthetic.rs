//! Random English-like dependency trees in UD style.
//!
//! Sentences are simple declarative clauses (pronoun or determiner phrases,
//! present or past verbs, optional indirect object, adverb, prepositional
//! adjunct and one level of clausal complement) with consistent
//! `Number`/`Person`/`Tense` features. They exercise the transformation
//! layer at corpus scale when no parsed corpus is at hand.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::seed;
use crate::treebank::{DepSentence, Features, Token};

const NOUNS: [(&str, &str); 24] = [
    ("woman", "women"),
    ("man", "men"),
    ("child", "children"),
    ("teacher", "teachers"),
    ("student", "students"),
    ("minister", "ministers"),
    ("president", "presidents"),
    ("farmer", "farmers"),
    ("doctor", "doctors"),
    ("friend", "friends"),
    ("sister", "sisters"),
    ("brother", "brothers"),
    ("committee", "committees"),
    ("report", "reports"),
    ("proposal", "proposals"),
    ("letter", "letters"),
    ("book", "books"),
    ("dog", "dogs"),
    ("city", "cities"),
    ("company", "companies"),
    ("member", "members"),
    ("country", "countries"),
    ("law", "laws"),
    ("idea", "ideas"),
];

/// (base, 3sg present, past)
const VERBS: [(&str, &str, &str); 14] = [
    ("see", "sees", "saw"),
    ("support", "supports", "supported"),
    ("invite", "invites", "invited"),
    ("reject", "rejects", "rejected"),
    ("send", "sends", "sent"),
    ("give", "gives", "gave"),
    ("find", "finds", "found"),
    ("thank", "thanks", "thanked"),
    ("help", "helps", "helped"),
    ("follow", "follows", "followed"),
    ("write", "writes", "wrote"),
    ("show", "shows", "showed"),
    ("accept", "accepts", "accepted"),
    ("defend", "defends", "defended"),
];

/// Verbs that take a clausal complement: (base, 3sg, past).
const SAY_VERBS: [(&str, &str, &str); 3] =
    [("say", "says", "said"), ("think", "thinks", "thought"), ("know", "knows", "knew")];

const ADJECTIVES: [&str; 8] = ["new", "old", "young", "small", "important", "good", "European", "local"];
const ADVERBS: [&str; 5] = ["often", "never", "always", "already", "rarely"];
const PREPOSITIONS: [&str; 4] = ["for", "in", "with", "after"];

/// (nominative, accusative, lemma, number, person)
const PRONOUNS: [(&str, &str, &str, &str, &str); 6] = [
    ("he", "him", "he", "Sing", "3"),
    ("she", "her", "she", "Sing", "3"),
    ("they", "them", "they", "Plur", "3"),
    ("I", "me", "I", "Sing", "1"),
    ("we", "us", "we", "Plur", "1"),
    ("it", "it", "it", "Sing", "3"),
];

struct Proto {
    form: String,
    lemma: String,
    upos: &'static str,
    xpos: &'static str,
    feats: String,
    head: Option<usize>,
    deprel: &'static str,
}

struct Builder<'r, R: Rng + ?Sized> {
    rng: &'r mut R,
    toks: Vec<Proto>,
}

/// Agreement features of a noun phrase.
struct NpInfo {
    head: usize,
    plural: bool,
    third_person: bool,
}

impl<R: Rng + ?Sized> Builder<'_, R> {
    fn push(
        &mut self,
        form: &str,
        lemma: &str,
        upos: &'static str,
        xpos: &'static str,
        feats: &str,
        deprel: &'static str,
    ) -> usize {
        self.toks.push(Proto {
            form: String::from(form),
            lemma: String::from(lemma),
            upos,
            xpos,
            feats: String::from(feats),
            head: None,
            deprel,
        });
        self.toks.len() - 1
    }

    fn attach(&mut self, dep: usize, head: usize) {
        self.toks[dep].head = Some(head);
    }

    fn noun_phrase(&mut self, deprel: &'static str, accusative: bool, sentence_initial: bool) -> NpInfo {
        if self.rng.random_bool(0.2) {
            let &(nom, acc, lemma, number, person) = PRONOUNS.choose(self.rng).unwrap();
            let case = if accusative { "Acc" } else { "Nom" };
            let form = if accusative { acc } else { nom };
            let form = if sentence_initial { capitalize(form) } else { String::from(form) };
            let feats = format!("Case={case}|Number={number}|Person={person}|PronType=Prs");
            let head = self.push(&form, lemma, "PRON", "PRP", &feats, deprel);
            return NpInfo { head, plural: number == "Plur", third_person: person == "3" };
        }
        let &(sg, pl) = NOUNS.choose(self.rng).unwrap();
        let plural = self.rng.random_bool(0.35);
        let mut deps = Vec::new();
        if self.rng.random_bool(0.15) {
            let (form, lemma) = if self.rng.random_bool(0.5) { ("her", "she") } else { ("their", "they") };
            let form = if sentence_initial { capitalize(form) } else { String::from(form) };
            deps.push(self.push(&form, lemma, "PRON", "PRP$", "Person=3|Poss=Yes|PronType=Prs", "nmod:poss"));
        } else {
            let form = if sentence_initial { "The" } else { "the" };
            deps.push(self.push(form, "the", "DET", "DT", "Definite=Def|PronType=Art", "det"));
        }
        if self.rng.random_bool(0.3) {
            let adj = *ADJECTIVES.choose(self.rng).unwrap();
            deps.push(self.push(adj, adj, "ADJ", "JJ", "Degree=Pos", "amod"));
        }
        let (form, xpos, number) = if plural { (pl, "NNS", "Plur") } else { (sg, "NN", "Sing") };
        let head = self.push(form, sg, "NOUN", xpos, &format!("Number={number}"), deprel);
        for d in deps {
            self.attach(d, head);
        }
        NpInfo { head, plural, third_person: true }
    }

    fn verb(&mut self, entry: (&str, &str, &str), subject: &NpInfo, deprel: &'static str) -> usize {
        let (base, third, past) = entry;
        if self.rng.random_bool(0.4) {
            return self.push(past, base, "VERB", "VBD", "Mood=Ind|Tense=Past|VerbForm=Fin", deprel);
        }
        if subject.third_person && !subject.plural {
            self.push(third, base, "VERB", "VBZ", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin", deprel)
        } else {
            self.push(base, base, "VERB", "VBP", "Mood=Ind|Tense=Pres|VerbForm=Fin", deprel)
        }
    }

    /// Builds a clause in surface order and returns the verb position.
    fn clause(&mut self, deprel: &'static str, embed: bool, sentence_initial: bool) -> usize {
        let subject = self.noun_phrase("nsubj", false, sentence_initial);
        let adverb = self.rng.random_bool(0.25).then(|| {
            let a = *ADVERBS.choose(self.rng).unwrap();
            self.push(a, a, "ADV", "RB", "_", "advmod")
        });
        if embed {
            let entry = *SAY_VERBS.choose(self.rng).unwrap();
            let verb = self.verb(entry, &subject, deprel);
            self.attach(subject.head, verb);
            if let Some(a) = adverb {
                self.attach(a, verb);
            }
            let inner = self.clause("ccomp", false, false);
            self.attach(inner, verb);
            return verb;
        }
        let entry = *VERBS.choose(self.rng).unwrap();
        let verb = self.verb(entry, &subject, deprel);
        self.attach(subject.head, verb);
        if let Some(a) = adverb {
            self.attach(a, verb);
        }
        if self.rng.random_bool(0.15) {
            let iobj = self.noun_phrase("iobj", true, false);
            self.attach(iobj.head, verb);
        }
        if self.rng.random_bool(0.85) {
            let obj = self.noun_phrase("obj", true, false);
            self.attach(obj.head, verb);
        }
        if self.rng.random_bool(0.3) {
            let p = *PREPOSITIONS.choose(self.rng).unwrap();
            let case = self.push(p, p, "ADP", "IN", "_", "case");
            let np = self.noun_phrase("obl", false, false);
            self.attach(case, np.head);
            self.attach(np.head, verb);
        }
        verb
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

/// One random sentence.
pub fn sentence<R: Rng + ?Sized>(rng: &mut R, sent_id: &str) -> DepSentence {
    let mut b = Builder { rng, toks: Vec::new() };
    let embed = b.rng.random_bool(0.2);
    let root = b.clause("root", embed, true);
    let punct = b.push(".", ".", "PUNCT", ".", "_", "punct");
    b.attach(punct, root);
    let tokens = b
        .toks
        .into_iter()
        .enumerate()
        .map(|(i, p)| Token {
            index: i + 1,
            form: p.form,
            lemma: p.lemma,
            upos: String::from(p.upos),
            xpos: String::from(p.xpos),
            feats: Features::parse(&p.feats),
            head: p.head.map_or(0, |h| h + 1),
            deprel: String::from(p.deprel),
        })
        .collect();
    DepSentence::new(sent_id, tokens)
}

/// `n` sentences; sentence `i` depends only on `(seed, i)`.
pub fn corpus(n: usize, seed: u64) -> Vec<DepSentence> {
    (0..n).map(|i| sentence(&mut seed::stream(seed, "synthetic", i as u64), &format!("syn-{i}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::{extract_clauses, validate};

    #[test]
    fn generated_trees_are_valid() {
        for s in corpus(2_000, 5) {
            assert!(validate(&s).is_empty(), "{}", s.text());
            assert_eq!(s.tokens.last().unwrap().form, ".");
            assert!(!extract_clauses(&s).is_empty());
        }
    }

    #[test]
    fn corpus_is_seeded() {
        assert_eq!(corpus(50, 1), corpus(50, 1));
        assert_ne!(corpus(50, 1), corpus(50, 2));
    }
}
