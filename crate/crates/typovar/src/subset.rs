//! Training and held-out subsets drawn jointly from line-aligned files.

use std::path::{Path, PathBuf};

use serde::Serialize;
use typovar_core::transform;

use crate::io::{self, FileDigest};
use crate::{Error, Result};

/// How items are delimited in a corpus file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// One item per line.
    Text,
    /// One item per blank-line-separated block, comments kept.
    Conllu,
}

impl Format {
    /// `.conllu` files are read as blocks, everything else as lines.
    pub fn detect(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("conllu") => Format::Conllu,
            _ => Format::Text,
        }
    }

    pub fn split(self, text: &str) -> Vec<String> {
        match self {
            Format::Text => text.lines().map(str::to_owned).collect(),
            Format::Conllu => {
                let mut items = Vec::new();
                let mut block = String::new();
                for line in text.lines() {
                    if line.trim().is_empty() {
                        if !block.is_empty() {
                            items.push(std::mem::take(&mut block));
                        }
                    } else {
                        block.push_str(line);
                        block.push('\n');
                    }
                }
                if !block.is_empty() {
                    items.push(block);
                }
                items
            }
        }
    }

    /// Inverse of [`Format::split`]. A text item gets its line terminator;
    /// a CoNLL-U block already ends in one and gets the separating blank line.
    pub fn render(self, items: &[&str]) -> String {
        let mut out = String::new();
        for item in items {
            out.push_str(item);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetReport {
    pub seed: u64,
    pub size: usize,
    pub heldout: usize,
    pub total: usize,
    pub inputs: Vec<FileDigest>,
    pub train: Vec<FileDigest>,
    pub test: Vec<FileDigest>,
}

/// Writes `train/<name>` and `test/<name>` under `out_dir` for every input,
/// plus `train.ids` / `test.ids` (0-based item ordinals) and `subset.json`.
pub fn subset_files(
    inputs: &[PathBuf],
    size: usize,
    heldout: usize,
    seed: u64,
    out_dir: &Path,
) -> Result<SubsetReport> {
    if inputs.is_empty() {
        return Err(Error::usage("at least one input file is required"));
    }
    let mut corpora = Vec::with_capacity(inputs.len());
    for p in inputs {
        let text = io::read_text(p)?;
        let format = Format::detect(p);
        let items = format.split(&text);
        corpora.push((p, format, FileDigest::of(p, text.as_bytes()), items));
    }
    let total = corpora[0].3.len();
    if let Some((p, ..)) = corpora.iter().find(|c| c.3.len() != total) {
        return Err(Error::data(format!("{} is not aligned with {}", p.display(), inputs[0].display())));
    }
    let picked = transform::subset(total, size, heldout, seed).map_err(Error::data)?;
    let mut report =
        SubsetReport { seed, size, heldout, total, inputs: Vec::new(), train: Vec::new(), test: Vec::new() };
    for (p, format, digest, items) in corpora {
        let name = p.file_name().ok_or_else(|| Error::usage(format!("{} has no file name", p.display())))?;
        for (dir, ids, out) in
            [("train", &picked.train, &mut report.train), ("test", &picked.heldout, &mut report.test)]
        {
            let chosen: Vec<&str> = ids.iter().map(|&i| items[i].as_str()).collect();
            let text = format.render(&chosen);
            let path = out_dir.join(dir).join(name);
            io::write_file(&path, &text)?;
            out.push(FileDigest::of(&path, text.as_bytes()));
        }
        report.inputs.push(digest);
    }
    let ids = |v: &[usize]| io::join_lines(&v.iter().map(usize::to_string).collect::<Vec<_>>());
    io::write_file(&out_dir.join("train.ids"), ids(&picked.train))?;
    io::write_file(&out_dir.join("test.ids"), ids(&picked.heldout))?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    io::write_file(&out_dir.join("subset.json"), json + "\n")?;
    Ok(report)
}
