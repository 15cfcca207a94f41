//! Golden checks on the hand-annotated UD parse of
//! "The woman says her sisters often invited her for dinner."

use typovar_core::morphology::{build_paradigm, mark_case, CaseSystem, Declension, DeclensionMap, MorphStyle};
use typovar_core::permuter::{attach_punctuation, linearize, remove_agreement, reorder_fixed, SvoOrder};
use typovar_core::treebank::{extract_clauses, parse_conllu, to_conllu, validate, DepSentence};

fn fixture() -> DepSentence {
    let text = include_str!("fixtures/woman_says.conllu");
    parse_conllu(text).unwrap().remove(0)
}

fn forms(sent: &DepSentence, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| sent.tokens[i - 1].form.clone()).collect()
}

#[test]
fn fixture_tree_shape() {
    let s = fixture();
    assert!(validate(&s).is_empty());
    assert_eq!(s.token(s.root().unwrap()).unwrap().form, "says");
    let clauses = extract_clauses(&s);
    assert_eq!(clauses.len(), 2);
    let outer = &clauses[0];
    assert_eq!(s.tokens[outer.verb - 1].form, "says");
    assert_eq!(forms(&s, &outer.subject.as_ref().unwrap().tokens), ["The", "woman"]);
    assert_eq!(
        forms(&s, &outer.object.as_ref().unwrap().tokens),
        ["her", "sisters", "often", "invited", "her", "for", "dinner"]
    );
    let inner = &clauses[1];
    assert_eq!(s.tokens[inner.verb - 1].form, "invited");
    assert_eq!(forms(&s, &inner.subject.as_ref().unwrap().tokens), ["her", "sisters"]);
    assert_eq!(forms(&s, &inner.object.as_ref().unwrap().tokens), ["her"]);
    let residue: Vec<usize> = inner.residue.iter().flat_map(|c| c.tokens.iter().copied()).collect();
    assert_eq!(forms(&s, &residue), ["often", "for", "dinner"]);
}

#[test]
fn conllu_round_trip_on_fixture() {
    let s = fixture();
    let again = parse_conllu(&to_conllu(std::slice::from_ref(&s))).unwrap();
    assert_eq!(again, vec![s]);
}

fn sov(style: MorphStyle, system: CaseSystem) -> String {
    let s = remove_agreement(&fixture());
    let ts = reorder_fixed(&s, SvoOrder::Sov);
    let mut decl = DeclensionMap::new();
    decl.insert("woman", Declension::First);
    decl.insert("sister", Declension::Second);
    decl.insert("she", Declension::Third);
    let table = build_paradigm(style, system).unwrap();
    let marked = mark_case(&s, &ts, &table, &decl).unwrap();
    attach_punctuation(&linearize(&marked.sentence))
}

#[test]
fn sov_variants_match_reference_strings() {
    let s = remove_agreement(&fixture());
    assert_eq!(
        linearize(&reorder_fixed(&s, SvoOrder::Sov)),
        "The woman her sisters her often invited for dinner say ."
    );
    assert_eq!(sov(MorphStyle::Overt, CaseSystem::None), "The woman her sisters her often invited for dinner say.");
    assert_eq!(
        sov(MorphStyle::Overt, CaseSystem::Syncretic),
        "The woman.arg.sg her sisters.arg.pl she.arg.sg often invited.arg.pl for dinner say.arg.sg."
    );
    assert_eq!(
        sov(MorphStyle::Overt, CaseSystem::Unambiguous),
        "The woman.nsubj.sg her sisters.nsubj.pl she.dobj.sg often invited.dobj.sg.nsubj.pl for dinner say.nsubj.sg."
    );
    assert_eq!(
        sov(MorphStyle::Implicit, CaseSystem::Unambiguous),
        "The womankar her sisterskon shekin often invitedkinkon for dinner saykar."
    );
    assert_eq!(
        sov(MorphStyle::ImplicitDeclensions, CaseSystem::Unambiguous),
        "The womankar her sisterspon shekit often invitedkitpon for dinner saykar."
    );
}

#[test]
fn inner_clause_is_reordered_before_placement() {
    let s = remove_agreement(&fixture());
    // VSO: say [The woman] [invited-clause in VSO]
    assert_eq!(
        linearize(&reorder_fixed(&s, SvoOrder::Vso)),
        "say The woman often invited for dinner her sisters her ."
    );
}
