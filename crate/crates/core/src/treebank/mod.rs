//! Dependency-parsed sentences: representation, validation, number detection
//! and clause extraction.

pub(crate) mod clause;
mod conllu;

pub use clause::{extract_clauses, Clause, Constituent};
pub use conllu::{parse_conllu, to_conllu, ConlluError};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Morphological features of a token (`Key=Value|Key=Value`), kept sorted by key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Features(BTreeMap<String, String>);

impl Features {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses the CoNLL-U FEATS column. `_` is the empty set; malformed
    /// items without `=` are ignored.
    pub fn parse(column: &str) -> Self {
        let mut map = BTreeMap::new();
        if column != "_" {
            for item in column.split('|') {
                if let Some((k, v)) = item.split_once('=') {
                    map.insert(String::from(k), String::from(v));
                }
            }
        }
        Features(map)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn insert(&mut self, key: &str, value: &str) {
        self.0.insert(String::from(key), String::from(value));
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        self.0.remove(key)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl fmt::Display for Features {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// One syntactic word of a parsed sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    /// Language-specific tag (Penn tags for English); `_` when absent.
    pub xpos: String,
    pub feats: Features,
    /// Index of the governing token, 0 for the root.
    pub head: usize,
    pub deprel: String,
}

impl Token {
    pub fn new(index: usize, form: &str, lemma: &str, upos: &str, head: usize, deprel: &str) -> Self {
        Token {
            index,
            form: String::from(form),
            lemma: String::from(lemma),
            upos: String::from(upos),
            xpos: String::from("_"),
            feats: Features::new(),
            head,
            deprel: String::from(deprel),
        }
    }

    pub fn with_xpos(mut self, xpos: &str) -> Self {
        self.xpos = String::from(xpos);
        self
    }

    pub fn with_feats(mut self, feats: &str) -> Self {
        self.feats = Features::parse(feats);
        self
    }

    /// Relation label without its subtype (`nsubj:pass` → `nsubj`).
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }

    pub fn is_punct(&self) -> bool {
        self.upos == "PUNCT" || self.deprel == "punct"
    }

    pub fn is_nominal(&self) -> bool {
        matches!(self.upos.as_str(), "NOUN" | "PROPN" | "PRON")
    }
}

/// A dependency-parsed sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepSentence {
    pub sent_id: String,
    pub tokens: Vec<Token>,
}

impl DepSentence {
    pub fn new(sent_id: &str, tokens: Vec<Token>) -> Self {
        DepSentence { sent_id: String::from(sent_id), tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token at 1-based `index`.
    pub fn token(&self, index: usize) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    /// Root token index (first token with head 0).
    pub fn root(&self) -> Option<usize> {
        self.tokens.iter().find(|t| t.head == 0).map(|t| t.index)
    }

    /// Dependents of every token, in surface order. Slot 0 holds the root(s).
    /// Assumes heads are in range.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.tokens.len() + 1];
        for t in &self.tokens {
            if t.head <= self.tokens.len() {
                children[t.head].push(t.index);
            }
        }
        children
    }

    /// All tokens reachable from `head` through head links, `head` included, sorted.
    pub fn subtree(&self, head: usize) -> Vec<usize> {
        let children = self.children();
        let mut out = Vec::new();
        let mut stack = vec![head];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(children[n].iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// Surface forms joined by single spaces.
    pub fn text(&self) -> String {
        let forms: Vec<&str> = self.tokens.iter().map(|t| t.form.as_str()).collect();
        forms.join(" ")
    }
}

/// A broken well-formedness rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Token at list position `position` (1-based) carries a different index.
    NonContiguousIndex {
        position: usize,
        found: usize,
    },
    EmptyForm {
        token: usize,
    },
    EmptyLemma {
        token: usize,
    },
    SelfHead {
        token: usize,
    },
    DanglingHead {
        token: usize,
        head: usize,
    },
    NoRoot,
    MultipleRoots {
        tokens: Vec<usize>,
    },
    /// `token` lies on a head cycle.
    Cycle {
        token: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonContiguousIndex { position, found } => {
                write!(f, "token {found}: expected index {position}")
            }
            Violation::EmptyForm { token } => write!(f, "token {token}: empty form"),
            Violation::EmptyLemma { token } => write!(f, "token {token}: empty lemma"),
            Violation::SelfHead { token } => write!(f, "token {token}: head points to itself"),
            Violation::DanglingHead { token, head } => {
                write!(f, "token {token}: head {head} does not exist")
            }
            Violation::NoRoot => f.write_str("sentence has no root"),
            Violation::MultipleRoots { tokens } => write!(f, "multiple roots: {tokens:?}"),
            Violation::Cycle { token } => write!(f, "token {token}: head cycle"),
        }
    }
}

/// Checks the structural invariants of a sentence. An empty result means the
/// sentence is a well-formed single-rooted tree.
pub fn validate(sent: &DepSentence) -> Vec<Violation> {
    let n = sent.tokens.len();
    let mut violations = Vec::new();
    for (pos, t) in sent.tokens.iter().enumerate() {
        if t.index != pos + 1 {
            violations.push(Violation::NonContiguousIndex { position: pos + 1, found: t.index });
        }
        if t.form.is_empty() {
            violations.push(Violation::EmptyForm { token: t.index });
        }
        if t.lemma.is_empty() {
            violations.push(Violation::EmptyLemma { token: t.index });
        }
        if t.head == t.index {
            violations.push(Violation::SelfHead { token: t.index });
        } else if t.head > n {
            violations.push(Violation::DanglingHead { token: t.index, head: t.head });
        }
    }
    let roots: Vec<usize> = sent.tokens.iter().filter(|t| t.head == 0).map(|t| t.index).collect();
    match roots.len() {
        0 => violations.push(Violation::NoRoot),
        1 => {}
        _ => violations.push(Violation::MultipleRoots { tokens: roots }),
    }
    if !violations.iter().any(|v| matches!(v, Violation::NonContiguousIndex { .. })) {
        // 0 = unvisited, 1 = on current path, 2 = reaches the root
        let mut state = vec![0u8; n + 1];
        for start in 1..=n {
            let mut path = Vec::new();
            let mut cur = start;
            loop {
                if cur == 0 || cur > n || state[cur] == 2 {
                    break;
                }
                if state[cur] == 1 {
                    let first = path.iter().position(|&p| p == cur).unwrap_or(0);
                    for &tok in &path[first..] {
                        if !violations.contains(&Violation::Cycle { token: tok }) {
                            violations.push(Violation::Cycle { token: tok });
                        }
                    }
                    break;
                }
                state[cur] = 1;
                path.push(cur);
                let head = sent.tokens[cur - 1].head;
                if head == cur {
                    break;
                }
                cur = head;
            }
            for p in path {
                state[p] = 2;
            }
        }
    }
    violations
}

/// Grammatical number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Number {
    Sg,
    Pl,
}

impl Number {
    pub fn as_str(self) -> &'static str {
        match self {
            Number::Sg => "sg",
            Number::Pl => "pl",
        }
    }
}

/// Result of number detection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetectedNumber {
    Sg,
    Pl,
    Unknown,
}

impl DetectedNumber {
    /// Known number, or `Sg` when unknown.
    pub fn or_singular(self) -> Number {
        match self {
            DetectedNumber::Pl => Number::Pl,
            _ => Number::Sg,
        }
    }
}

/// Number of a token from its `Number` feature, falling back on Penn noun tags.
pub fn detect_number(tok: &Token) -> DetectedNumber {
    match tok.feats.get("Number") {
        Some("Sing") => return DetectedNumber::Sg,
        Some("Plur") => return DetectedNumber::Pl,
        _ => {}
    }
    match tok.xpos.as_str() {
        "NNS" | "NNPS" => DetectedNumber::Pl,
        "NN" | "NNP" => DetectedNumber::Sg,
        _ => DetectedNumber::Unknown,
    }
}
