//! End-to-end source transformation of a parallel corpus.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use typovar_core::morphology::{argument_lemmas, assign_declensions, vocab_stats, DeclensionMap, MorphStyle};
use typovar_core::permuter::attach_punctuation;
use typovar_core::seed;
use typovar_core::treebank::DepSentence;
use typovar_core::{OrderScheme, Transformer};

use crate::config::TransformOptions;
use crate::io::{self, FileDigest};
use crate::manifest::{draws_jsonl, tool_version, Counts, DeclensionRecord, Draw, Manifest, Vocabulary};
use crate::{Error, Result};

/// Transformed source lines plus everything the manifest needs to know about them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformRun {
    pub source: Vec<String>,
    pub draws: Vec<Draw>,
    pub counts: Counts,
    pub vocabulary: Vocabulary,
}

/// Declension classes for a run and where they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declensions {
    pub map: DeclensionMap,
    pub origin: &'static str,
}

impl Declensions {
    /// Uses `loaded` when given; otherwise assigns classes to the corpus's
    /// argument lemmas when the style needs them.
    pub fn resolve(
        loaded: Option<DeclensionMap>,
        style: MorphStyle,
        sentences: &[DepSentence],
        seed_value: u64,
    ) -> Self {
        match loaded {
            Some(map) => Declensions { map, origin: "loaded" },
            None if style == MorphStyle::ImplicitDeclensions => {
                let lemmas = argument_lemmas(sentences);
                let mut rng = seed::stream(seed_value, "declensions", 0);
                Declensions { map: assign_declensions(lemmas.iter().map(String::as_str), &mut rng), origin: "assigned" }
            }
            None => Declensions { map: DeclensionMap::new(), origin: "unused" },
        }
    }

    fn record(&self) -> DeclensionRecord {
        DeclensionRecord {
            origin: self.origin.to_owned(),
            sha256: io::sha256_hex(self.map.to_tsv().as_bytes()),
            class_sizes: self.map.class_sizes(),
        }
    }
}

/// Transforms every sentence, in parallel, keeping input order.
///
/// Fails before doing any work when `target_lines` differs from the number of sentences.
pub fn run_transform(
    sentences: &[DepSentence],
    target_lines: usize,
    opts: &TransformOptions,
    declensions: &DeclensionMap,
) -> Result<TransformRun> {
    if sentences.len() != target_lines {
        return Err(Error::data(format!(
            "source has {} sentences but target has {} lines",
            sentences.len(),
            target_lines
        )));
    }
    let transformer = Transformer::new(opts.spec, declensions.clone(), &opts.corpus_name).map_err(Error::usage)?;
    let outcomes = sentences
        .par_iter()
        .enumerate()
        .map(|(i, s)| transformer.transform(i as u64, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Error::data)?;

    let mut counts = Counts { sentences: sentences.len(), ..Counts::default() };
    let mut source = Vec::with_capacity(outcomes.len());
    let mut draws = Vec::with_capacity(outcomes.len());
    for (ordinal, o) in outcomes.into_iter().enumerate() {
        if o.passed_through {
            counts.passed_through += 1;
        } else {
            counts.transformed += 1;
        }
        counts.defaulted_numbers += o.defaulted_numbers;
        if let Some(order) = o.drawn_order {
            *counts.orders.entry(order.to_string()).or_default() += 1;
        }
        let shuffled = opts.spec.order == OrderScheme::ShuffleAll && !o.passed_through;
        draws.push(Draw {
            ordinal,
            order: o.drawn_order,
            permutation: shuffled.then_some(o.provenance),
            passed_through: o.passed_through,
        });
        source.push(if opts.attach_punctuation { attach_punctuation(&o.text) } else { o.text });
    }
    let input: Vec<String> = sentences.iter().map(DepSentence::text).collect();
    let stats = vocab_stats(&[&input[..], &source[..]]);
    let vocabulary =
        Vocabulary { input_types: stats[0].types, output_types: stats[1].types, novel_types: stats[1].novel_types };
    Ok(TransformRun { source, draws, counts, vocabulary })
}

/// Paths for a file-level transform.
#[derive(Clone, Debug)]
pub struct TransformPaths {
    pub source: PathBuf,
    pub target: PathBuf,
    pub out_source: PathBuf,
    pub out_target: PathBuf,
    pub manifest: PathBuf,
    /// Declension classes to use instead of assigning them.
    pub declensions: Option<PathBuf>,
    /// Where to save the declension classes used.
    pub save_declensions: Option<PathBuf>,
}

/// The draws file sits next to the manifest: `run.json` → `run.draws.jsonl`.
pub fn draws_path(manifest: &Path) -> PathBuf {
    let stem = manifest.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    manifest.with_file_name(format!("{stem}.draws.jsonl"))
}

/// Reads, transforms and writes a parallel corpus. Nothing is written unless
/// both inputs parse and are aligned. The target is copied byte for byte.
pub fn transform_files(paths: &TransformPaths, opts: &TransformOptions) -> Result<Manifest> {
    let source_bytes = io::read_bytes(&paths.source)?;
    let target_bytes = io::read_bytes(&paths.target)?;
    let source_text = String::from_utf8(source_bytes.clone())
        .map_err(|e| Error::data(format!("{}: not valid UTF-8 ({e})", paths.source.display())))?;
    let sentences = typovar_core::treebank::parse_conllu(&source_text)
        .map_err(|e| Error::data(format!("{}: {e}", paths.source.display())))?;
    let mut loaded_digest = None;
    let loaded = match &paths.declensions {
        Some(p) => {
            let text = io::read_text(p)?;
            loaded_digest = Some(FileDigest::of(p, text.as_bytes()));
            Some(DeclensionMap::from_tsv(&text).map_err(|e| Error::data(format!("{}: {e}", p.display())))?)
        }
        None => None,
    };
    let declensions = Declensions::resolve(loaded, opts.spec.style, &sentences, opts.spec.seed);
    let run = run_transform(&sentences, io::count_lines(&target_bytes), opts, &declensions.map)?;

    let out_source = io::join_lines(&run.source);
    let draws = draws_jsonl(&run.draws);
    let draws_file = draws_path(&paths.manifest);
    io::write_file(&paths.out_source, &out_source)?;
    io::write_file(&paths.out_target, &target_bytes)?;
    io::write_file(&draws_file, &draws)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("source".to_owned(), FileDigest::of(&paths.source, &source_bytes));
    inputs.insert("target".to_owned(), FileDigest::of(&paths.target, &target_bytes));
    if let Some(d) = loaded_digest {
        inputs.insert("declensions".to_owned(), d);
    }
    let mut outputs = BTreeMap::new();
    outputs.insert("source".to_owned(), FileDigest::of(&paths.out_source, out_source.as_bytes()));
    outputs.insert("target".to_owned(), FileDigest::of(&paths.out_target, &target_bytes));
    outputs.insert("draws".to_owned(), FileDigest::of(&draws_file, draws.as_bytes()));
    if let Some(p) = &paths.save_declensions {
        let tsv = declensions.map.to_tsv();
        io::write_file(p, &tsv)?;
        outputs.insert("declensions".to_owned(), FileDigest::of(p, tsv.as_bytes()));
    }
    let manifest = Manifest {
        tool: tool_version(),
        spec: opts.spec,
        corpus_name: opts.corpus_name.clone(),
        attach_punctuation: opts.attach_punctuation,
        inputs,
        outputs,
        declensions: declensions.record(),
        counts: run.counts,
        vocabulary: run.vocabulary,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    io::write_file(&paths.manifest, json + "\n")?;
    Ok(manifest)
}
