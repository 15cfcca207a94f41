//! Run records sufficient to audit and repeat a transform.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use typovar_core::{SvoOrder, TransformSpec};

use crate::io::FileDigest;

/// Random outcome for one sentence, one JSON object per line in the draws file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Draw {
    pub ordinal: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<SvoOrder>,
    /// Input token index of each output token, recorded for full shuffles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub passed_through: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub sentences: usize,
    pub transformed: usize,
    /// Sentences that failed validation and were copied unchanged.
    pub passed_through: usize,
    /// Case-marked arguments whose number was unknown and taken as singular.
    pub defaulted_numbers: usize,
    /// Sentences per drawn order under random ordering.
    pub orders: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub input_types: usize,
    pub output_types: usize,
    /// Output types not seen in the input.
    pub novel_types: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclensionRecord {
    /// `loaded`, `assigned` or `unused`.
    pub origin: String,
    pub sha256: String,
    pub class_sizes: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub spec: TransformSpec,
    pub corpus_name: String,
    pub attach_punctuation: bool,
    pub inputs: BTreeMap<String, FileDigest>,
    pub outputs: BTreeMap<String, FileDigest>,
    pub declensions: DeclensionRecord,
    pub counts: Counts,
    pub vocabulary: Vocabulary,
}

pub fn tool_version() -> String {
    format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"))
}

/// Serializes draws as JSON lines.
pub fn draws_jsonl(draws: &[Draw]) -> String {
    let mut out = String::new();
    for d in draws {
        out.push_str(&serde_json::to_string(d).expect("draw serializes"));
        out.push('\n');
    }
    out
}
