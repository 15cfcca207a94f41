//! File-level invariants of transform, subset and score.

use std::fs;
use std::path::{Path, PathBuf};

use typovar::config::{Settings, TransformOptions};
use typovar::io::{join_lines, sha256_hex};
use typovar::pipeline::{draws_path, run_transform, transform_files, TransformPaths};
use typovar::subset::subset_files;
use typovar::Error;
use typovar_core::morphology::{CaseSystem, DeclensionMap, MorphStyle};
use typovar_core::treebank::{to_conllu, DepSentence, Token};
use typovar_core::{synthetic, OrderScheme, SvoOrder, TransformSpec};

fn write_corpus(dir: &Path, sentences: &[DepSentence]) -> (PathBuf, PathBuf) {
    let src = dir.join("in.conllu");
    let tgt = dir.join("in.tgt");
    fs::write(&src, to_conllu(sentences)).unwrap();
    let lines: Vec<String> = (0..sentences.len()).map(|i| format!("doel zin {i}")).collect();
    fs::write(&tgt, join_lines(&lines)).unwrap();
    (src, tgt)
}

fn paths(dir: &Path, src: &Path, tgt: &Path, tag: &str) -> TransformPaths {
    TransformPaths {
        source: src.to_path_buf(),
        target: tgt.to_path_buf(),
        out_source: dir.join(format!("{tag}.src")),
        out_target: dir.join(format!("{tag}.tgt")),
        manifest: dir.join(format!("{tag}.json")),
        declensions: None,
        save_declensions: None,
    }
}

fn opts(order: OrderScheme, case: CaseSystem, style: MorphStyle) -> TransformOptions {
    TransformOptions {
        spec: TransformSpec { order, case, style, seed: 42, agreement_removal: true },
        corpus_name: "test".into(),
        attach_punctuation: false,
    }
}

/// A corpus with one sentence that fails validation (two roots).
fn corpus_with_invalid() -> Vec<DepSentence> {
    let mut c = synthetic::corpus(300, 5);
    c.insert(
        17,
        DepSentence::new(
            "bad",
            vec![Token::new(1, "two", "two", "NUM", 0, "root"), Token::new(2, "roots", "root", "NOUN", 0, "root")],
        ),
    );
    c
}

#[test]
fn target_is_byte_identical_and_line_counts_are_kept() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = corpus_with_invalid();
    let (src, tgt) = write_corpus(dir.path(), &corpus);
    let tgt_hash = sha256_hex(&fs::read(&tgt).unwrap());
    let cases = [
        (CaseSystem::None, MorphStyle::Overt),
        (CaseSystem::Syncretic, MorphStyle::Overt),
        (CaseSystem::Unambiguous, MorphStyle::Implicit),
        (CaseSystem::Unambiguous, MorphStyle::ImplicitDeclensions),
    ];
    for (n, order) in OrderScheme::GRID.into_iter().chain([OrderScheme::Original]).enumerate() {
        for (m, (case, style)) in cases.into_iter().enumerate() {
            let p = paths(dir.path(), &src, &tgt, &format!("run{n}-{m}"));
            let manifest = transform_files(&p, &opts(order, case, style)).unwrap();
            assert_eq!(sha256_hex(&fs::read(&p.out_target).unwrap()), tgt_hash);
            let out = fs::read_to_string(&p.out_source).unwrap();
            assert_eq!(out.lines().count(), corpus.len());
            assert_eq!(manifest.counts.passed_through, 1);
            assert_eq!(manifest.counts.sentences, corpus.len());
            assert_eq!(out.lines().nth(17), Some("two roots"));
            let draws = fs::read_to_string(draws_path(&p.manifest)).unwrap();
            assert_eq!(draws.lines().count(), corpus.len());
        }
    }
}

#[test]
fn identity_spec_reproduces_tokenized_source() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synthetic::corpus(200, 8);
    let (src, tgt) = write_corpus(dir.path(), &corpus);
    let p = paths(dir.path(), &src, &tgt, "id");
    let o = TransformOptions { spec: TransformSpec::identity(0), corpus_name: "x".into(), attach_punctuation: false };
    transform_files(&p, &o).unwrap();
    let expected: Vec<String> = corpus.iter().map(DepSentence::text).collect();
    assert_eq!(fs::read_to_string(&p.out_source).unwrap(), join_lines(&expected));
}

#[test]
fn manifest_replays_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synthetic::corpus(500, 3);
    let (src, tgt) = write_corpus(dir.path(), &corpus);
    let first = paths(dir.path(), &src, &tgt, "first");
    let o = opts(OrderScheme::Random, CaseSystem::Unambiguous, MorphStyle::ImplicitDeclensions);
    let m1 = transform_files(&first, &o).unwrap();

    let replay_opts = Settings::from_json(&fs::read_to_string(&first.manifest).unwrap()).unwrap().resolve().unwrap();
    assert_eq!(replay_opts, o);
    let second = paths(dir.path(), &src, &tgt, "second");
    let m2 = transform_files(&second, &replay_opts).unwrap();
    assert_eq!(fs::read(&first.out_source).unwrap(), fs::read(&second.out_source).unwrap());
    assert_eq!(fs::read(draws_path(&first.manifest)).unwrap(), fs::read(draws_path(&second.manifest)).unwrap());
    assert_eq!(m1.counts, m2.counts);
    assert_eq!(m1.declensions, m2.declensions);
    assert_eq!(m1.outputs["source"].sha256, m2.outputs["source"].sha256);
    assert_eq!(m1.counts.orders.values().sum::<usize>(), 500);
}

#[test]
fn saved_declensions_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synthetic::corpus(400, 12);
    let (src, tgt) = write_corpus(dir.path(), &corpus);
    let o = opts(OrderScheme::Fixed(SvoOrder::Vos), CaseSystem::Unambiguous, MorphStyle::ImplicitDeclensions);
    let mut a = paths(dir.path(), &src, &tgt, "a");
    a.save_declensions = Some(dir.path().join("decl.tsv"));
    transform_files(&a, &o).unwrap();
    let mut b = paths(dir.path(), &src, &tgt, "b");
    b.declensions = a.save_declensions.clone();
    let mb = transform_files(&b, &TransformOptions { spec: TransformSpec { seed: 7, ..o.spec }, ..o.clone() }).unwrap();
    assert_eq!(mb.declensions.origin, "loaded");
    // Fixed orders draw nothing, so only the declension map could differ.
    assert_eq!(fs::read(&a.out_source).unwrap(), fs::read(&b.out_source).unwrap());
}

#[test]
fn misaligned_inputs_fail_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synthetic::corpus(10, 1);
    let (src, _) = write_corpus(dir.path(), &corpus);
    let short = dir.path().join("short.tgt");
    fs::write(&short, "one\ntwo\n").unwrap();
    let p = paths(dir.path(), &src, &short, "mis");
    let err = transform_files(&p, &opts(OrderScheme::Random, CaseSystem::None, MorphStyle::Overt)).unwrap_err();
    assert!(matches!(err, Error::Data(_)), "{err}");
    assert_eq!(err.exit_code(), 2);
    for f in [&p.out_source, &p.out_target, &p.manifest, &draws_path(&p.manifest)] {
        assert!(!f.exists(), "{} was written", f.display());
    }
}

#[test]
fn parallel_and_sequential_runs_agree() {
    let corpus = synthetic::corpus(2_000, 21);
    let o = opts(OrderScheme::ShuffleAll, CaseSystem::Unambiguous, MorphStyle::Overt);
    let decl = DeclensionMap::new();
    let parallel = run_transform(&corpus, corpus.len(), &o, &decl).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let sequential = pool.install(|| run_transform(&corpus, corpus.len(), &o, &decl).unwrap());
    assert_eq!(parallel, sequential);
    assert!(parallel.draws.iter().all(|d| d.permutation.is_some()));
}

#[test]
fn subsets_share_the_heldout_set_and_are_disjoint() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synthetic::corpus(200, 4);
    let (src, tgt) = write_corpus(dir.path(), &corpus);
    let ids = |d: &Path, f: &str| -> Vec<usize> {
        fs::read_to_string(d.join(f)).unwrap().lines().map(|l| l.parse().unwrap()).collect()
    };
    let small = dir.path().join("small");
    let large = dir.path().join("large");
    subset_files(&[src.clone(), tgt.clone()], 50, 30, 9, &small).unwrap();
    subset_files(&[src.clone(), tgt.clone()], 120, 30, 9, &large).unwrap();
    assert_eq!(ids(&small, "test.ids"), ids(&large, "test.ids"));
    let train = ids(&large, "train.ids");
    assert_eq!(train.len(), 120);
    assert!(ids(&small, "train.ids").iter().all(|i| train.contains(i)));
    assert!(ids(&large, "test.ids").iter().all(|i| !train.contains(i)));

    // Source blocks and target lines stay aligned.
    let blocks =
        typovar_core::treebank::parse_conllu(&fs::read_to_string(large.join("train/in.conllu")).unwrap()).unwrap();
    let targets = fs::read_to_string(large.join("train/in.tgt")).unwrap();
    for ((block, line), id) in blocks.iter().zip(targets.lines()).zip(&train) {
        assert_eq!(block.sent_id, format!("syn-{id}"));
        assert_eq!(line, format!("doel zin {id}"));
    }

    let again = dir.path().join("again");
    subset_files(&[src.clone(), tgt.clone()], 50, 30, 9, &again).unwrap();
    assert_eq!(fs::read(small.join("train/in.tgt")).unwrap(), fs::read(again.join("train/in.tgt")).unwrap());

    let err = subset_files(&[src, tgt], 180, 30, 9, &dir.path().join("big")).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
