//! Writing the English–French challenge set.

use std::path::Path;

use typovar_core::challenge::{english_tree, generate_challenge, reverse_index, ChallengeVocab};
use typovar_core::treebank::to_conllu;

use crate::io::{self, FileDigest};
use crate::Result;

/// Writes `challenge.en`, `challenge.fr`, `challenge.tsv` and the English
/// gold trees `challenge.en.conllu` under `out_dir`.
///
/// The TSV's `reverse_line` column gives the 1-based line of the item with
/// subject and object exchanged.
pub fn write_challenge(out_dir: &Path) -> Result<Vec<FileDigest>> {
    let vocab = ChallengeVocab::builtin();
    let items = generate_challenge(&vocab);
    let en: Vec<&str> = items.iter().map(|i| i.english.as_str()).collect();
    let fr: Vec<&str> = items.iter().map(|i| i.french.as_str()).collect();
    let mut meta = String::from("line\tsubject\tsubject_number\tobject\tobject_number\tverb\tpolarity\treverse_line\n");
    for (line, it) in items.iter().enumerate() {
        meta.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            line + 1,
            vocab.nouns[it.subject.noun].english_sg,
            it.subject.number.as_str(),
            vocab.nouns[it.object.noun].english_sg,
            it.object.number.as_str(),
            vocab.verbs[it.verb].english_base,
            it.polarity.as_str(),
            reverse_index(&vocab, it) + 1,
        ));
    }
    let trees: Vec<_> =
        items.iter().enumerate().map(|(i, it)| english_tree(&vocab, it, &format!("challenge-{}", i + 1))).collect();
    let mut files = Vec::new();
    for (name, text) in [
        ("challenge.en", io::join_lines(&en)),
        ("challenge.fr", io::join_lines(&fr)),
        ("challenge.tsv", meta),
        ("challenge.en.conllu", to_conllu(&trees)),
    ] {
        let path = out_dir.join(name);
        io::write_file(&path, &text)?;
        files.push(FileDigest::of(&path, text.as_bytes()));
    }
    Ok(files)
}
