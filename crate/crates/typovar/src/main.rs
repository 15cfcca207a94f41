use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use typovar::config::Settings;
use typovar::pipeline::{transform_files, TransformPaths};
use typovar::toy::{load_lexicon, parse_variant, write_toy, ToyRequest};
use typovar::{challenge, io, score, subset, Result};
use typovar_core::morphology::{CaseSystem, MorphStyle};
use typovar_core::OrderScheme;

/// Synthetic word-order and case-marking variants of parallel corpora.
#[derive(Parser, Debug)]
#[command(name = "typovar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Toy parallel grammar corpora.
    Toy {
        #[command(subcommand)]
        action: ToyAction,
    },
    /// Transform the source side of a parallel corpus.
    Transform(TransformArgs),
    /// English–French subject/object-swap challenge set.
    Challenge {
        #[command(subcommand)]
        action: ChallengeAction,
    },
    /// Draw a training subset and a held-out set from aligned files.
    Subset(SubsetArgs),
    /// Sentence accuracy, BLEU and RIBES of a hypothesis file.
    Score(ScoreArgs),
}

#[derive(Subcommand, Debug)]
enum ToyAction {
    Generate(ToyArgs),
}

#[derive(Subcommand, Debug)]
enum ChallengeAction {
    Generate {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ToyArgs {
    /// vso, vos or mixed.
    #[arg(long)]
    variant: String,
    /// Number of distinct sentence pairs.
    #[arg(long)]
    size: usize,
    #[arg(long)]
    seed: u64,
    /// Train, validation and test fractions.
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [0.8, 0.1, 0.1])]
    ratios: Vec<f64>,
    /// Write case markers as separate tokens.
    #[arg(long)]
    split_markers: bool,
    /// Lexicon TSV replacing the built-in one.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// CoNLL-U parse of the source side.
    #[arg(long)]
    source: PathBuf,
    /// Target side, one sentence per line.
    #[arg(long)]
    target: PathBuf,
    #[arg(long)]
    out_source: PathBuf,
    #[arg(long)]
    out_target: PathBuf,
    /// Manifest JSON; draws go to `<stem>.draws.jsonl` beside it.
    #[arg(long)]
    manifest: PathBuf,
    /// JSON settings or a previous manifest; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// original, SVO, SOV, VSO, VOS, OSV, OVS, random or shuffle.
    #[arg(long)]
    order: Option<OrderScheme>,
    /// none, unambiguous or syncretic.
    #[arg(long)]
    case: Option<CaseSystem>,
    /// overt, implicit or implicit-declensions.
    #[arg(long)]
    style: Option<MorphStyle>,
    #[arg(long)]
    seed: Option<u64>,
    /// true or false (default true).
    #[arg(long)]
    agreement_removal: Option<bool>,
    /// Label for the per-sentence random streams.
    #[arg(long)]
    corpus_name: Option<String>,
    /// Attach punctuation tokens to the preceding word.
    #[arg(long)]
    attach_punctuation: bool,
    /// Declension classes (lemma<TAB>class) to use instead of assigning them.
    #[arg(long)]
    declensions: Option<PathBuf>,
    /// Save the declension classes used.
    #[arg(long)]
    save_declensions: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SubsetArgs {
    /// Line-aligned files; `.conllu` files are split into sentence blocks.
    #[arg(long = "input", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    size: usize,
    #[arg(long)]
    heldout: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[arg(long)]
    hyp: PathBuf,
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-sentence TSV.
    #[arg(long)]
    per_sentence: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Toy { action: ToyAction::Generate(a) } => {
            let lex = load_lexicon(a.lexicon.as_deref())?;
            let req = ToyRequest {
                variant: parse_variant(&a.variant)?,
                size: a.size,
                seed: a.seed,
                ratios: (a.ratios[0], a.ratios[1], a.ratios[2]),
                split_markers: a.split_markers,
            };
            let summary = write_toy(&lex, &req, &a.out_dir)?;
            println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
        }
        Command::Transform(a) => {
            let file = match &a.config {
                Some(p) => Settings::from_json(&io::read_text(p)?)?,
                None => Settings::default(),
            };
            let flags = Settings {
                order: a.order,
                case: a.case,
                style: a.style,
                seed: a.seed,
                agreement_removal: a.agreement_removal,
                corpus_name: a.corpus_name,
                attach_punctuation: a.attach_punctuation.then_some(true),
            };
            let opts = file.overridden_by(flags).resolve()?;
            let paths = TransformPaths {
                source: a.source,
                target: a.target,
                out_source: a.out_source,
                out_target: a.out_target,
                manifest: a.manifest,
                declensions: a.declensions,
                save_declensions: a.save_declensions,
            };
            let m = transform_files(&paths, &opts)?;
            eprintln!(
                "{} sentences ({} transformed, {} passed through)",
                m.counts.sentences, m.counts.transformed, m.counts.passed_through
            );
        }
        Command::Challenge { action: ChallengeAction::Generate { out_dir } } => {
            for f in challenge::write_challenge(&out_dir)? {
                println!("{}\t{}\t{}", f.path, f.lines, f.sha256);
            }
        }
        Command::Subset(a) => {
            let r = subset::subset_files(&a.inputs, a.size, a.heldout, a.seed, &a.out_dir)?;
            eprintln!("{} train / {} held-out of {}", a.size, a.heldout, r.total);
        }
        Command::Score(a) => {
            let report = score::score_files(&a.hyp, &a.reference)?;
            if let Some(p) = &a.per_sentence {
                io::write_file(p, score::per_sentence_tsv(&a.hyp, &a.reference, &report)?)?;
            }
            let json = score::report_json(&report);
            match &a.out {
                Some(p) => io::write_file(p, json)?,
                None => print!("{json}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2))
        }
    }
}
