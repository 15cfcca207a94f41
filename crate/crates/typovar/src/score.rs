//! Scoring hypothesis files against references.

use std::path::Path;

use typovar_core::metrics::{self, MetricReport};

use crate::io;
use crate::{Error, Result};

pub fn score_files(hyp: &Path, reference: &Path) -> Result<MetricReport> {
    let hyps = io::read_lines(hyp)?;
    let refs = io::read_lines(reference)?;
    metrics::score(&hyps, &refs).map_err(Error::data)
}

pub fn report_json(report: &MetricReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

/// `line<TAB>exact<TAB>ribes` per sentence, 1-based lines, RIBES in [0, 1].
pub fn per_sentence_tsv(hyp: &Path, reference: &Path, report: &MetricReport) -> Result<String> {
    let hyps = io::read_lines(hyp)?;
    let refs = io::read_lines(reference)?;
    let mut out = String::from("line\texact\tribes\n");
    for (i, ((h, r), rb)) in hyps.iter().zip(&refs).zip(&report.per_sentence).enumerate() {
        out.push_str(&format!("{}\t{}\t{:.6}\n", i + 1, u8::from(h == r), rb));
    }
    Ok(out)
}
