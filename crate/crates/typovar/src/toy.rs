//! Writing toy-grammar corpora to disk.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;
use typovar_core::toygrammar::{generate_corpus, split_corpus, split_markers, ToyLexicon, ToyPair, ToyVariant};

use crate::io::{self, FileDigest};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ToyRequest {
    pub variant: ToyVariant,
    pub size: usize,
    pub seed: u64,
    pub ratios: (f64, f64, f64),
    /// Write `#S` / `#O` as separate tokens.
    pub split_markers: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ToySummary {
    pub variant: String,
    pub size: usize,
    pub seed: u64,
    pub train: usize,
    pub valid: usize,
    pub test: usize,
    pub files: Vec<FileDigest>,
}

pub fn parse_variant(name: &str) -> Result<ToyVariant> {
    ToyVariant::ALL
        .into_iter()
        .find(|v| v.name() == name)
        .ok_or_else(|| Error::usage(format!("unknown toy variant {name:?} (expected vso, vos or mixed)")))
}

pub fn load_lexicon(path: Option<&Path>) -> Result<ToyLexicon> {
    let Some(p) = path else { return Ok(ToyLexicon::builtin()) };
    let lex = ToyLexicon::parse(&io::read_text(p)?).map_err(|e| Error::data(format!("{}: {e}", p.display())))?;
    lex.check().map_err(|e| Error::data(format!("{}: {e}", p.display())))?;
    Ok(lex)
}

/// Writes `source.txt`, `target.txt`, `truth.tsv` and
/// `{train,valid,test}.{source,target}.txt` under `out_dir`.
pub fn write_toy(lex: &ToyLexicon, req: &ToyRequest, out_dir: &Path) -> Result<ToySummary> {
    let corpus = generate_corpus(lex, req.variant, req.size, req.seed).map_err(Error::data)?;
    let split = split_corpus(&corpus, req.ratios, req.seed).map_err(Error::data)?;
    let source_of = |p: &ToyPair| if req.split_markers { split_markers(&p.source) } else { p.source.clone() };

    let mut files = Vec::new();
    let mut emit = |name: &str, text: String| -> Result<()> {
        let path = out_dir.join(name);
        io::write_file(&path, &text)?;
        files.push(FileDigest::of(&path, text.as_bytes()));
        Ok(())
    };
    let write_pair = |emit: &mut dyn FnMut(&str, String) -> Result<()>, prefix: &str, pairs: &[ToyPair]| {
        let src: Vec<String> = pairs.iter().map(source_of).collect();
        let tgt: Vec<&str> = pairs.iter().map(|p| p.target.as_str()).collect();
        emit(&format!("{prefix}source.txt"), io::join_lines(&src))?;
        emit(&format!("{prefix}target.txt"), io::join_lines(&tgt))
    };
    write_pair(&mut emit, "", &corpus)?;
    write_pair(&mut emit, "train.", &split.train)?;
    write_pair(&mut emit, "valid.", &split.valid)?;
    write_pair(&mut emit, "test.", &split.test)?;

    let valid_ids: BTreeSet<usize> = split.valid.iter().map(|p| p.id).collect();
    let test_ids: BTreeSet<usize> = split.test.iter().map(|p| p.id).collect();
    let mut truth = String::from("ordinal\tid\tsplit\torder\tsubject\tobject\n");
    for (ordinal, p) in corpus.iter().enumerate() {
        let part = if valid_ids.contains(&p.id) {
            "valid"
        } else if test_ids.contains(&p.id) {
            "test"
        } else {
            "train"
        };
        truth.push_str(&format!(
            "{ordinal}\t{}\t{part}\t{}\t{}\t{}\n",
            p.id,
            p.order.as_str(),
            lex.nouns[p.sentence.subject.noun].source,
            lex.nouns[p.sentence.object.noun].source,
        ));
    }
    emit("truth.tsv", truth)?;

    Ok(ToySummary {
        variant: req.variant.name().to_owned(),
        size: req.size,
        seed: req.seed,
        train: split.train.len(),
        valid: split.valid.len(),
        test: split.test.len(),
        files,
    })
}
