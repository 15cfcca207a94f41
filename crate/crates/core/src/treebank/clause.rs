use alloc::vec::Vec;

use super::DepSentence;

/// A dependent of a clause head together with its full subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub head: usize,
    /// Subtree token indices in surface order, `head` included.
    pub tokens: Vec<usize>,
}

/// A verbal head and its core arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub verb: usize,
    pub subject: Option<Constituent>,
    /// Direct object or clausal complement.
    pub object: Option<Constituent>,
    pub iobject: Option<Constituent>,
    /// Every other dependent of `verb`, in surface order.
    pub residue: Vec<Constituent>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum SlotKind {
    Subject,
    Object,
    IndirectObject,
}

pub(crate) fn slot_kind(deprel: &str) -> Option<SlotKind> {
    match deprel {
        "nsubj" | "nsubj:pass" | "nsubjpass" => Some(SlotKind::Subject),
        "obj" | "dobj" | "ccomp" | "xcomp" => Some(SlotKind::Object),
        "iobj" => Some(SlotKind::IndirectObject),
        _ => None,
    }
}

/// Whether `index` heads a clause: a verb, or any token governing a core argument
/// (copular predicates).
pub(crate) fn is_clause_head(sent: &DepSentence, children: &[Vec<usize>], index: usize) -> bool {
    let Some(tok) = sent.token(index) else { return false };
    tok.upos == "VERB" || children[index].iter().any(|&c| sent.token(c).is_some_and(|t| slot_kind(&t.deprel).is_some()))
}

/// Builds the clause headed by `verb`. The leftmost candidate fills each slot;
/// further candidates stay in the residue.
pub(crate) fn clause_at(sent: &DepSentence, children: &[Vec<usize>], verb: usize) -> Clause {
    let mut clause = Clause { verb, subject: None, object: None, iobject: None, residue: Vec::new() };
    for &dep in &children[verb] {
        let constituent = Constituent { head: dep, tokens: subtree_with(children, dep) };
        let tok = &sent.tokens[dep - 1];
        let slot = match slot_kind(&tok.deprel) {
            Some(SlotKind::Subject) => &mut clause.subject,
            Some(SlotKind::Object) => &mut clause.object,
            Some(SlotKind::IndirectObject) => &mut clause.iobject,
            None => {
                clause.residue.push(constituent);
                continue;
            }
        };
        if slot.is_none() {
            *slot = Some(constituent);
        } else {
            clause.residue.push(constituent);
        }
    }
    clause
}

fn subtree_with(children: &[Vec<usize>], head: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = alloc::vec![head];
    while let Some(n) = stack.pop() {
        out.push(n);
        stack.extend(children[n].iter().copied());
    }
    out.sort_unstable();
    out
}

/// Clauses of a validated sentence, outermost first (pre-order from the root,
/// dependents visited in surface order).
pub fn extract_clauses(sent: &DepSentence) -> Vec<Clause> {
    let children = sent.children();
    let mut clauses = Vec::new();
    let mut stack: Vec<usize> = children[0].iter().rev().copied().collect();
    while let Some(n) = stack.pop() {
        if is_clause_head(sent, &children, n) {
            clauses.push(clause_at(sent, &children, n));
        }
        stack.extend(children[n].iter().rev().copied());
    }
    clauses
}
