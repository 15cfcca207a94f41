//! Synthetic word-order and case-marking typology for parallel corpora.
//!
//! The crate manufactures source-language variants of dependency-parsed
//! sentences (fixed or random constituent order, shuffled words, artificial
//! case suffixes in overt, implicit and declension-based styles), generates a
//! toy synchronous grammar and a subject/object-swap challenge set, and
//! scores translations with sentence accuracy, BLEU and RIBES.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`); file IO,
//! manifests and the command-line tool live in the `typovar` crate.

#![no_std]
extern crate alloc;

pub mod challenge;
pub mod metrics;
pub mod morphology;
pub mod permuter;
pub mod seed;
pub mod synthetic;
pub mod toygrammar;
pub mod transform;
pub mod treebank;

pub use metrics::MetricReport;
pub use permuter::{OrderScheme, SvoOrder, TransformedSentence};
pub use transform::{TransformSpec, Transformer};
pub use treebank::{DepSentence, Token};
