//! Acceptance suite: one PASS/FAIL line per headline criterion.
//!
//! The report goes straight to stderr, so it shows up even when the test
//! harness captures output. A criterion fails if any check fails or if it
//! exceeds its time budget.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use typovar::config::TransformOptions;
use typovar::pipeline::{run_transform, Declensions};
use typovar_core::challenge::{generate_challenge, reverse_of, ChallengeVocab, Polarity};
use typovar_core::metrics::{align_words, bleu, corpus_ribes, normalized_kendall_tau, ribes};
use typovar_core::morphology::{
    build_paradigm, case_annotations, mark_case, normalize_pronoun, CaseSystem, Declension, DeclensionMap, MorphStyle,
    ParadigmTable, Role,
};
use typovar_core::permuter::{remove_agreement, reorder};
use typovar_core::toygrammar::{
    enumerate_sentences, generate_corpus, language_size, realize_source, recover_roles, split_corpus, SourceOrder,
    ToyLexicon, ToySentence, ToyVariant, OBJECT_MARKER, SUBJECT_MARKER,
};
use typovar_core::treebank::{parse_conllu, DepSentence, Number};
use typovar_core::{seed, synthetic, OrderScheme, SvoOrder, TransformSpec, Transformer};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    };
}

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn report(line: String) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

fn run(name: &'static str, budget: Duration, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(()) if elapsed <= budget => (true, String::new()),
        Ok(()) => (false, format!("over time budget of {budget:?}")),
        Err(e) => (false, e),
    };
    let status = if passed { "PASS" } else { "FAIL" };
    report(format!(
        "{status}  {name}  ({:.2} s, budget {:.0} s){}",
        elapsed.as_secs_f64(),
        budget.as_secs_f64(),
        if detail.is_empty() { String::new() } else { format!(": {detail}") }
    ));
    Outcome { name, passed, detail }
}

#[test]
fn acceptance() {
    let outcomes = [
        run("challenge set", Duration::from_secs(1), challenge_set),
        run("woman-says fixture", Duration::from_secs(1), woman_says_fixture),
        run("paradigm fidelity", Duration::from_secs(10), paradigm_fidelity),
        run("toy grammar", Duration::from_secs(5), toy_grammar),
        run("metrics", Duration::from_secs(30), metrics),
        run("determinism and conservation", Duration::from_secs(120), determinism_and_conservation),
    ];
    let failed: Vec<String> =
        outcomes.iter().filter(|o| !o.passed).map(|o| format!("{}: {}", o.name, o.detail)).collect();
    report(format!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len()));
    assert!(failed.is_empty(), "failed criteria: {failed:#?}");
}

fn challenge_set() -> Check {
    let vocab = ChallengeVocab::builtin();
    let items = generate_challenge(&vocab);
    ensure!(items.len() == 7_200, "{} sentences", items.len());
    let negative = items.iter().filter(|i| i.polarity == Polarity::Negative).count();
    ensure!(negative == 3_600 && items.len() - negative == 3_600, "{negative} negative");
    let english: HashSet<&str> = items.iter().map(|i| i.english.as_str()).collect();
    ensure!(english.len() == items.len(), "duplicate English sentences");
    for it in &items {
        let rev = reverse_of(&vocab, it);
        ensure!(english.contains(rev.english.as_str()), "reverse of {:?} missing", it.english);
    }
    let pairs: BTreeMap<&str, &str> = items.iter().map(|i| (i.english.as_str(), i.french.as_str())).collect();
    for (en, fr) in [
        ("The president thanks the minister.", "Le président remercie le ministre."),
        ("The minister thanks the president.", "Le ministre remercie le président."),
    ] {
        ensure!(pairs.get(en) == Some(&fr), "{en:?} -> {:?}", pairs.get(en));
    }
    Ok(())
}

fn woman_says_fixture() -> Check {
    let sentences = parse_conllu(include_str!("fixtures/woman_says.conllu")).map_err(|e| e.to_string())?;
    let mut decl = DeclensionMap::new();
    decl.insert("woman", Declension::First);
    decl.insert("sister", Declension::Second);
    decl.insert("she", Declension::Third);
    let expected = [
        (CaseSystem::None, MorphStyle::Overt, "The woman her sisters her often invited for dinner say."),
        (
            CaseSystem::Syncretic,
            MorphStyle::Overt,
            "The woman.arg.sg her sisters.arg.pl she.arg.sg often invited.arg.pl for dinner say.arg.sg.",
        ),
        (
            CaseSystem::Unambiguous,
            MorphStyle::Overt,
            "The woman.nsubj.sg her sisters.nsubj.pl she.dobj.sg often invited.dobj.sg.nsubj.pl for dinner say.nsubj.sg.",
        ),
        (
            CaseSystem::Unambiguous,
            MorphStyle::Implicit,
            "The womankar her sisterskon shekin often invitedkinkon for dinner saykar.",
        ),
        (
            CaseSystem::Unambiguous,
            MorphStyle::ImplicitDeclensions,
            "The womankar her sisterspon shekit often invitedkitpon for dinner saykar.",
        ),
    ];
    for (case, style, want) in expected {
        let opts = TransformOptions {
            spec: TransformSpec {
                order: OrderScheme::Fixed(SvoOrder::Sov),
                case,
                style,
                seed: 0,
                agreement_removal: true,
            },
            corpus_name: "woman-says".into(),
            attach_punctuation: true,
        };
        let out = run_transform(&sentences, 1, &opts, &decl).map_err(|e| e.to_string())?;
        ensure!(out.source[0] == want, "{case}/{style}: got {:?}", out.source[0]);
    }
    Ok(())
}

/// Every cell of the reference paradigm: overt suffix, then the three implicit declensions.
const PARADIGM: [(Role, Number, &str, [&str; 3]); 6] = [
    (Role::Nsubj, Number::Sg, ".nsubj.sg", ["kar", "par", "pa"]),
    (Role::Nsubj, Number::Pl, ".nsubj.pl", ["kon", "pon", "po"]),
    (Role::Dobj, Number::Sg, ".dobj.sg", ["kin", "it", "kit"]),
    (Role::Dobj, Number::Pl, ".dobj.pl", ["ker", "et", "ket"]),
    (Role::Iobj, Number::Sg, ".iobj.sg", ["ken", "kez", "ke"]),
    (Role::Iobj, Number::Pl, ".iobj.pl", ["kre", "kr", "re"]),
];

fn table(style: MorphStyle, case: CaseSystem) -> Result<ParadigmTable, String> {
    build_paradigm(style, case).map_err(|e| e.to_string())
}

fn paradigm_fidelity() -> Check {
    let overt = table(MorphStyle::Overt, CaseSystem::Unambiguous)?;
    let implicit = table(MorphStyle::Implicit, CaseSystem::Unambiguous)?;
    let declined = table(MorphStyle::ImplicitDeclensions, CaseSystem::Unambiguous)?;
    let syncretic = table(MorphStyle::Overt, CaseSystem::Syncretic)?;

    let mut expected: BTreeSet<&str> = [".arg.sg", ".arg.pl"].into();
    for (role, number, o, implicit_row) in PARADIGM {
        expected.insert(o);
        for (d, s) in Declension::ALL.into_iter().zip(implicit_row) {
            expected.insert(s);
            ensure!(overt.suffix(role, number, d) == Some(o), "overt {role:?} {number:?} {d:?}");
            ensure!(declined.suffix(role, number, d) == Some(s), "declension {role:?} {number:?} {d:?}");
        }
        ensure!(implicit.suffix(role, number, Declension::First) == Some(implicit_row[0]), "implicit {role:?}");
        ensure!(implicit.entries().count() == 6, "implicit table uses more than the first declension");
    }
    let emitted: BTreeSet<&str> = [&overt, &implicit, &declined]
        .iter()
        .flat_map(|t| t.entries().map(|(_, s)| s))
        .chain(syncretic.syncretic_entries().map(|(_, s)| s))
        .collect();
    ensure!(emitted == expected, "emitted suffixes differ from the table: {emitted:?}");
    ensure!(emitted.len() == 26, "{} distinct suffix strings", emitted.len());

    for number in [Number::Sg, Number::Pl] {
        let by_role: BTreeSet<_> = [Role::Nsubj, Role::Dobj, Role::Iobj]
            .into_iter()
            .flat_map(|r| Declension::ALL.map(|d| syncretic.suffix(r, number, d)))
            .collect();
        ensure!(by_role.len() == 1, "syncretic suffix varies by role: {by_role:?}");
    }

    let corpus = synthetic::corpus(10_000, 2024);
    let decl = Declensions::resolve(None, MorphStyle::ImplicitDeclensions, &corpus, 2024).map;
    for t in [&overt, &implicit, &declined] {
        let (recovered, total) = corpus
            .par_iter()
            .enumerate()
            .map(|(i, s)| recover_all(t, &decl, i, s))
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
        ensure!(total > 10_000 && recovered == total, "{:?}: {recovered}/{total} recovered", t.style);
    }
    Ok(())
}

/// Decodes the suffix of every case-marked argument after a random reordering.
fn recover_all(t: &ParadigmTable, decl: &DeclensionMap, i: usize, s: &DepSentence) -> Result<(usize, usize), String> {
    let s = remove_agreement(s);
    let ts = reorder(&s, OrderScheme::Random, &mut seed::stream(5, "paradigm", i as u64));
    let marked = mark_case(&s, &ts, t, decl).map_err(|e| e.to_string())?.sentence;
    let mut ok = 0;
    let mut total = 0;
    for clause in case_annotations(&s, decl) {
        for arg in clause.args {
            total += 1;
            let tok = &s.tokens[arg.head - 1];
            let pos = marked.provenance.iter().position(|&p| p == arg.head).ok_or("argument head lost")?;
            let decoded = marked.tokens[pos]
                .strip_prefix(normalize_pronoun(tok).as_str())
                .and_then(|suffix| t.decode(suffix, decl.get(&tok.lemma)));
            ok += usize::from(decoded == Some((arg.role, arg.number)));
        }
    }
    Ok((ok, total))
}

fn toy_grammar() -> Check {
    let lex = ToyLexicon::builtin();
    ensure!(language_size(&lex) == 10_584, "language size {}", language_size(&lex));
    ensure!(enumerate_sentences(&lex).into_iter().collect::<HashSet<_>>().len() == 10_584, "enumeration repeats");
    let mut targets = Vec::new();
    for variant in ToyVariant::ALL {
        let corpus = generate_corpus(&lex, variant, 10_000, 11).map_err(|e| e.to_string())?;
        let unique: HashSet<(&str, &str)> = corpus.iter().map(|p| (p.source.as_str(), p.target.as_str())).collect();
        ensure!(unique.len() == 10_000, "{variant}: {} unique pairs", unique.len());
        let split = split_corpus(&corpus, (0.8, 0.1, 0.1), 11).map_err(|e| e.to_string())?;
        let sizes = (split.train.len(), split.valid.len(), split.test.len());
        ensure!(sizes == (8_000, 1_000, 1_000), "{variant}: split {sizes:?}");
        for p in &corpus {
            let roles = recover_roles(&lex, &p.source, variant).map_err(|e| format!("{variant}: {e}"))?;
            ensure!(
                roles.subject == lex.nouns[p.sentence.subject.noun].source
                    && roles.object == lex.nouns[p.sentence.object.noun].source,
                "{variant}: wrong roles for {:?}",
                p.source
            );
        }
        targets.push(corpus.into_iter().map(|p| p.target).collect::<Vec<_>>());
    }
    ensure!(targets.windows(2).all(|w| w[0] == w[1]), "target side differs across variants");

    // Swapping the arguments and the order gives the same words once markers are gone.
    let strip = |s: &str| s.replace(SUBJECT_MARKER, "").replace(OBJECT_MARKER, "");
    let mut ambiguous = 0;
    for s in enumerate_sentences(&lex).into_iter().step_by(7) {
        let swapped = ToySentence { subject: s.object, object: s.subject, ..s };
        let a = strip(&realize_source(&lex, &s, SourceOrder::Vso, true));
        let b = strip(&realize_source(&lex, &swapped, SourceOrder::Vos, true));
        ensure!(a == b, "{a:?} vs {b:?}");
        ensure!(recover_roles(&lex, &a, ToyVariant::MixedCase).is_err(), "stripped {a:?} decoded");
        ambiguous += 1;
    }
    ensure!(ambiguous > 1_000, "only {ambiguous} ambiguity probes");
    Ok(())
}

fn sequences(alphabet: &[&'static str], max_len: usize) -> Vec<Vec<&'static str>> {
    let mut all = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|s: &Vec<&str>| alphabet.iter().map(move |a| [s.as_slice(), &[*a]].concat()))
            .collect();
        all.extend(frontier.iter().cloned());
    }
    all
}

fn concordant_fraction(pairs: &[(usize, usize)]) -> Option<f64> {
    let k = pairs.len();
    if k < 2 {
        return None;
    }
    let mut concordant = 0;
    let mut total = 0;
    for a in 0..k {
        for b in a + 1..k {
            total += 1;
            let agree = (pairs[a].0 < pairs[b].0) == (pairs[a].1 < pairs[b].1);
            concordant += usize::from(agree);
        }
    }
    Some(concordant as f64 / total as f64)
}

fn metrics() -> Check {
    let refs = ["the cat sat on the mat .", "a b c d", "one two three four five six"];
    let full = corpus_ribes(&refs, &refs).map_err(|e| e.to_string())?;
    ensure!((full - 100.0).abs() < 1e-9, "RIBES(x, x) = {full}");
    for r in ["a b c d", "w x y z", "the dog bites cats"] {
        let reversed: Vec<&str> = r.split(' ').rev().collect();
        let score = 100.0 * ribes(&reversed.join(" "), r);
        ensure!(score == 0.0, "reversal of {r:?} scores {score}");
    }
    let abdc = 100.0 * ribes("a b d c", "a b c d");
    ensure!((abdc - 83.33).abs() <= 0.01, "RIBES(a b d c) = {abdc}");
    let b = bleu(&refs, &refs).map_err(|e| e.to_string())?;
    ensure!((b - 100.0).abs() < 1e-9, "BLEU(ref, ref) = {b}");

    // Alignment compares tokens only for equality, so the hypothesis can be
    // fixed to its first-occurrence relabeling without losing any case.
    const ALPHABET: [&str; 5] = ["a", "b", "c", "d", "e"];
    let canonical: Vec<Vec<&str>> = sequences(&ALPHABET, 6)
        .into_iter()
        .filter(|s| {
            let mut next = 0;
            s.iter().all(|t| {
                let i = ALPHABET.iter().position(|a| a == t).unwrap();
                next += usize::from(i == next);
                i < next
            })
        })
        .collect();
    let all = sequences(&ALPHABET, 6);
    ensure!(canonical.len() == 278 && all.len() == 19_531, "enumeration sizes");
    let mismatches: usize = canonical
        .par_iter()
        .map(|h| {
            all.iter()
                .filter(|r| {
                    let a = align_words(h, r);
                    normalized_kendall_tau(&a.ranks()) != concordant_fraction(&a.pairs)
                })
                .count()
        })
        .sum();
    ensure!(mismatches == 0, "{mismatches} NKT mismatches against the brute-force oracle");
    Ok(())
}

const CASE_GRID: [(CaseSystem, MorphStyle); 5] = [
    (CaseSystem::None, MorphStyle::Overt),
    (CaseSystem::Syncretic, MorphStyle::Overt),
    (CaseSystem::Unambiguous, MorphStyle::Overt),
    (CaseSystem::Unambiguous, MorphStyle::Implicit),
    (CaseSystem::Unambiguous, MorphStyle::ImplicitDeclensions),
];

/// True when `rest` is a concatenation of suffixes from `table`.
fn segments(rest: &str, suffixes: &[&str]) -> bool {
    rest.is_empty() || suffixes.iter().any(|s| rest.strip_prefix(s).is_some_and(|r| segments(r, suffixes)))
}

fn determinism_and_conservation() -> Check {
    let corpus = synthetic::corpus(60_000, 99);
    let prepared: Vec<DepSentence> = corpus.par_iter().map(remove_agreement).collect();
    for order in OrderScheme::GRID {
        for (case, style) in CASE_GRID {
            let spec = TransformSpec { order, case, style, seed: 42, agreement_removal: true };
            let label = format!("{order}/{case}/{style}");
            let decl = Declensions::resolve(None, style, &corpus, spec.seed).map;
            let opts = TransformOptions { spec, corpus_name: "grid".into(), attach_punctuation: false };
            let run = run_transform(&corpus, corpus.len(), &opts, &decl).map_err(|e| e.to_string())?;

            let transformer = Transformer::new(spec, decl.clone(), "grid").map_err(|e| e.to_string())?;
            let paradigm = build_paradigm(style, case).map_err(|e| e.to_string())?;
            let suffixes: Vec<&str> =
                paradigm.entries().map(|(_, s)| s).chain(paradigm.syncretic_entries().map(|(_, s)| s)).collect();
            corpus.par_iter().zip(&prepared).enumerate().try_for_each(|(i, (s, p))| -> Check {
                let out = transformer.transform(i as u64, s).map_err(|e| e.to_string())?;
                ensure!(out.text == run.source[i], "{label}: sentence {i} differs between runs");
                let mut prov = out.provenance.clone();
                prov.sort_unstable();
                ensure!(prov == (1..=p.len()).collect::<Vec<_>>(), "{label}: sentence {i} is not a permutation");
                for (word, &src) in out.text.split(' ').zip(&out.provenance) {
                    let tok = &p.tokens[src - 1];
                    let base_ok = |base: &str| word.strip_prefix(base).is_some_and(|rest| segments(rest, &suffixes));
                    let ok = if case == CaseSystem::None {
                        word == tok.form
                    } else {
                        base_ok(&tok.form) || base_ok(&normalize_pronoun(tok))
                    };
                    ensure!(ok, "{label}: sentence {i}: {word:?} is not {:?} plus suffixes", tok.form);
                }
                Ok(())
            })?;
            if order == OrderScheme::Random && case == CaseSystem::None {
                for o in SvoOrder::ALL {
                    let share = run.counts.orders.get(o.as_str()).copied().unwrap_or(0) as f64 / corpus.len() as f64;
                    ensure!((share - 1.0 / 6.0).abs() <= 0.01, "{o} drawn with frequency {share:.4}");
                }
            }
        }
    }
    Ok(())
}
