//! Constituent reordering, word shuffling and agreement removal.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::treebank::{clause::clause_at, clause::is_clause_head, DepSentence};

/// A position in a clause linearization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Subject,
    Verb,
    Object,
}

/// One of the six orders of subject, verb and object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum SvoOrder {
    Svo,
    Sov,
    Vso,
    Vos,
    Osv,
    Ovs,
}

impl SvoOrder {
    /// Draw table for random orders; index `i` is drawn with probability 1/6.
    pub const ALL: [SvoOrder; 6] =
        [SvoOrder::Svo, SvoOrder::Sov, SvoOrder::Vso, SvoOrder::Vos, SvoOrder::Osv, SvoOrder::Ovs];

    pub fn slots(self) -> [Slot; 3] {
        use Slot::*;
        match self {
            SvoOrder::Svo => [Subject, Verb, Object],
            SvoOrder::Sov => [Subject, Object, Verb],
            SvoOrder::Vso => [Verb, Subject, Object],
            SvoOrder::Vos => [Verb, Object, Subject],
            SvoOrder::Osv => [Object, Subject, Verb],
            SvoOrder::Ovs => [Object, Verb, Subject],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SvoOrder::Svo => "SVO",
            SvoOrder::Sov => "SOV",
            SvoOrder::Vso => "VSO",
            SvoOrder::Vos => "VOS",
            SvoOrder::Osv => "OSV",
            SvoOrder::Ovs => "OVS",
        }
    }
}

impl fmt::Display for SvoOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown constituent order {0:?}")]
pub struct UnknownOrder(pub String);

impl FromStr for SvoOrder {
    type Err = UnknownOrder;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SvoOrder::ALL
            .into_iter()
            .find(|o| o.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownOrder(String::from(s)))
    }
}

/// How the source side of a sentence is ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(into = "String", try_from = "String"))]
pub enum OrderScheme {
    /// Surface order of the input.
    Original,
    Fixed(SvoOrder),
    /// One order drawn uniformly per sentence, applied to all of its clauses.
    Random,
    /// Uniform permutation of all tokens, punctuation included.
    ShuffleAll,
}

impl OrderScheme {
    /// Every scheme studied: the four fixed orders with a subject-initial or
    /// verb-initial basic order, plus random order and full shuffling.
    pub const GRID: [OrderScheme; 6] = [
        OrderScheme::Fixed(SvoOrder::Svo),
        OrderScheme::Fixed(SvoOrder::Sov),
        OrderScheme::Fixed(SvoOrder::Vso),
        OrderScheme::Fixed(SvoOrder::Vos),
        OrderScheme::Random,
        OrderScheme::ShuffleAll,
    ];
}

impl fmt::Display for OrderScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderScheme::Original => f.write_str("original"),
            OrderScheme::Fixed(o) => f.write_str(o.as_str()),
            OrderScheme::Random => f.write_str("random"),
            OrderScheme::ShuffleAll => f.write_str("shuffle"),
        }
    }
}

/// Accepts `original`, `random`, `shuffle` (or `shuffle_all`) and any of the six order names.
impl FromStr for OrderScheme {
    type Err = UnknownOrder;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "original" => Ok(OrderScheme::Original),
            "random" => Ok(OrderScheme::Random),
            "shuffle" | "shuffle_all" | "shuffle-all" => Ok(OrderScheme::ShuffleAll),
            _ => s.parse().map(OrderScheme::Fixed),
        }
    }
}

impl From<OrderScheme> for String {
    fn from(s: OrderScheme) -> String {
        alloc::format!("{s}")
    }
}

impl TryFrom<String> for OrderScheme {
    type Error = UnknownOrder;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Output tokens and, for each, the 1-based index of the input token it came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformedSentence {
    pub tokens: Vec<String>,
    pub provenance: Vec<usize>,
}

impl TransformedSentence {
    /// The sentence in its input order.
    pub fn original(sent: &DepSentence) -> Self {
        Self::from_indices(sent, (1..=sent.len()).collect())
    }

    pub(crate) fn from_indices(sent: &DepSentence, order: Vec<usize>) -> Self {
        let tokens = order.iter().map(|&i| sent.tokens[i - 1].form.clone()).collect();
        TransformedSentence { tokens, provenance: order }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

const SUPPLETION: [(&str, &str); 4] = [("is", "are"), ("was", "were"), ("has", "have"), ("does", "do")];

fn match_case(template: &str, word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    let upper = template.chars().next().is_some_and(char::is_uppercase);
    for (i, c) in word.chars().enumerate() {
        if i == 0 && upper {
            out.extend(c.to_uppercase());
        } else {
            out.push(c);
        }
    }
    out
}

fn is_present_third_singular(tok: &crate::treebank::Token) -> bool {
    tok.xpos == "VBZ"
        || (tok.feats.get("Tense") == Some("Pres")
            && tok.feats.get("Person") == Some("3")
            && tok.feats.get("Number") == Some("Sing")
            && tok.feats.get("VerbForm") != Some("Part"))
}

/// Replaces 3rd-person-singular verb forms by number-neutral ones.
///
/// `is/was/has/does` map to `are/were/have/do`; other present 3sg forms map to
/// their lemma. Modified tokens lose their `Number` feature.
pub fn remove_agreement(sent: &DepSentence) -> DepSentence {
    let mut out = sent.clone();
    for tok in &mut out.tokens {
        if tok.upos != "VERB" && tok.upos != "AUX" {
            continue;
        }
        let lower = tok.form.to_lowercase();
        let replacement = if let Some((_, neutral)) = SUPPLETION.iter().find(|(f, _)| *f == lower) {
            Some(match_case(&tok.form, neutral))
        } else if lower == "'s" && is_present_third_singular(tok) {
            match tok.lemma.as_str() {
                "be" => Some(String::from("'re")),
                "have" => Some(String::from("'ve")),
                _ => None,
            }
        } else if is_present_third_singular(tok) && !tok.lemma.is_empty() && tok.lemma != "_" {
            Some(match_case(&tok.form, &tok.lemma))
        } else {
            None
        };
        if let Some(form) = replacement {
            tok.form = form;
            tok.feats.remove("Number");
        }
    }
    out
}

/// Draws one of the six orders uniformly.
pub fn draw_order<R: Rng + ?Sized>(rng: &mut R) -> SvoOrder {
    SvoOrder::ALL[rng.random_range(0..SvoOrder::ALL.len())]
}

/// Reorders a validated sentence according to `scheme`. `Random` draws from `rng`;
/// `ShuffleAll` delegates to [`shuffle_all`].
pub fn reorder<R: Rng + ?Sized>(sent: &DepSentence, scheme: OrderScheme, rng: &mut R) -> TransformedSentence {
    match scheme {
        OrderScheme::Original => TransformedSentence::original(sent),
        OrderScheme::Fixed(order) => reorder_fixed(sent, order),
        OrderScheme::Random => reorder_fixed(sent, draw_order(rng)),
        OrderScheme::ShuffleAll => shuffle_all(sent, rng),
    }
}

/// Final punctuation token, if it is a leaf.
fn pinned_final(sent: &DepSentence, children: &[Vec<usize>]) -> Option<usize> {
    let last = sent.tokens.last()?;
    (sent.len() > 1 && last.is_punct() && children[last.index].is_empty()).then_some(last.index)
}

/// Linearizes every clause of a validated sentence in `order`.
///
/// Each clause contributes three slots: the subject subtree, the object
/// subtree and the verb group (the verb with its remaining dependents in their
/// original relative order). Slot contents are linearized recursively, so
/// embedded clauses are reordered before being placed. Absent slots are
/// skipped and sentence-final punctuation stays last.
pub fn reorder_fixed(sent: &DepSentence, order: SvoOrder) -> TransformedSentence {
    let children = sent.children();
    let pinned = pinned_final(sent, &children);
    let mut out = Vec::with_capacity(sent.len());
    let mut roots: Vec<usize> = children[0].iter().copied().filter(|&r| Some(r) != pinned).collect();
    roots.sort_unstable();
    for root in roots {
        emit(sent, &children, order, pinned, root, &mut out);
    }
    out.extend(pinned);
    TransformedSentence::from_indices(sent, out)
}

fn emit(
    sent: &DepSentence,
    children: &[Vec<usize>],
    order: SvoOrder,
    pinned: Option<usize>,
    node: usize,
    out: &mut Vec<usize>,
) {
    let emit_group = |mut items: Vec<usize>, out: &mut Vec<usize>| {
        items.retain(|&i| Some(i) != pinned);
        items.sort_unstable();
        for item in items {
            if item == node {
                out.push(node);
            } else {
                emit(sent, children, order, pinned, item, out);
            }
        }
    };

    if !is_clause_head(sent, children, node) {
        let mut items = vec![node];
        items.extend(children[node].iter().copied());
        emit_group(items, out);
        return;
    }
    let clause = clause_at(sent, children, node);
    for slot in order.slots() {
        match slot {
            Slot::Subject => {
                if let Some(c) = &clause.subject {
                    emit(sent, children, order, pinned, c.head, out);
                }
            }
            Slot::Object => {
                if let Some(c) = &clause.object {
                    emit(sent, children, order, pinned, c.head, out);
                }
            }
            Slot::Verb => {
                let mut items = vec![node];
                items.extend(clause.residue.iter().map(|c| c.head));
                items.extend(clause.iobject.iter().map(|c| c.head));
                emit_group(items, out);
            }
        }
    }
}

/// Uniform (Fisher-Yates) permutation of all tokens.
pub fn shuffle_all<R: Rng + ?Sized>(sent: &DepSentence, rng: &mut R) -> TransformedSentence {
    let mut order: Vec<usize> = (1..=sent.len()).collect();
    order.shuffle(rng);
    TransformedSentence::from_indices(sent, order)
}

/// Space-joined surface forms.
pub fn linearize(ts: &TransformedSentence) -> String {
    ts.tokens.join(" ")
}

/// Glues tokens made only of `. , ; : ! ?` to the preceding token.
pub fn attach_punctuation(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for tok in text.split_whitespace() {
        let is_punct = tok.chars().all(|c| matches!(c, '.' | ',' | ';' | ':' | '!' | '?'));
        if !out.is_empty() && !is_punct {
            out.push(' ');
        }
        out.push_str(tok);
    }
    out
}
