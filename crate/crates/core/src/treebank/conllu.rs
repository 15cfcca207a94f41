use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use super::{DepSentence, Features, Token};

/// CoNLL-U syntax errors. Line numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConlluError {
    #[error("line {line}: expected 10 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: non-numeric HEAD {value:?}")]
    BadHead { line: usize, value: String },
    #[error("line {line}: non-numeric ID {value:?}")]
    BadId { line: usize, value: String },
}

/// Parses CoNLL-U text into sentences.
///
/// Multiword-token ranges (`1-2`) and empty nodes (`1.1`) are skipped. The
/// sentence id comes from a `# sent_id = ...` comment when present, otherwise
/// it is the 1-based ordinal of the block.
pub fn parse_conllu(text: &str) -> Result<Vec<DepSentence>, ConlluError> {
    let mut sentences = Vec::new();
    let mut tokens: Vec<Token> = Vec::new();
    let mut sent_id: Option<String> = None;
    let mut in_block = false;

    let flush = |tokens: &mut Vec<Token>, sent_id: &mut Option<String>, out: &mut Vec<DepSentence>| {
        let id = sent_id.take().unwrap_or_else(|| (out.len() + 1).to_string());
        out.push(DepSentence { sent_id: id, tokens: core::mem::take(tokens) });
    };

    for (lineno, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            if in_block {
                flush(&mut tokens, &mut sent_id, &mut sentences);
                in_block = false;
            }
            continue;
        }
        in_block = true;
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "sent_id" {
                    sent_id = Some(String::from(value.trim()));
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(ConlluError::ColumnCount { line: lineno, found: cols.len() });
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let index =
            cols[0].parse::<usize>().map_err(|_| ConlluError::BadId { line: lineno, value: String::from(cols[0]) })?;
        let head = cols[6]
            .parse::<usize>()
            .map_err(|_| ConlluError::BadHead { line: lineno, value: String::from(cols[6]) })?;
        tokens.push(Token {
            index,
            form: String::from(cols[1]),
            lemma: String::from(cols[2]),
            upos: String::from(cols[3]),
            xpos: String::from(cols[4]),
            feats: Features::parse(cols[5]),
            head,
            deprel: String::from(cols[7]),
        });
    }
    if in_block {
        flush(&mut tokens, &mut sent_id, &mut sentences);
    }
    Ok(sentences)
}

/// Serializes sentences to CoNLL-U. DEPS and MISC are written as `_`.
pub fn to_conllu(sentences: &[DepSentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        let _ = writeln!(out, "# sent_id = {}", s.sent_id);
        for t in &s.tokens {
            let xpos = if t.xpos.is_empty() { "_" } else { t.xpos.as_str() };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t_\t_",
                t.index, t.form, t.lemma, t.upos, xpos, t.feats, t.head, t.deprel
            );
        }
        out.push('\n');
    }
    out
}
