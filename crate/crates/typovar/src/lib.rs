//! File formats, reproducibility manifests and the command-line driver
//! around [`typovar_core`].
//!
//! Each submodule owns one family of on-disk artifacts:
//! [`pipeline`] turns a CoNLL-U source plus a target text into a transformed
//! parallel corpus, [`subset`] draws training and held-out subsets, [`toy`]
//! and [`challenge`] write generated corpora, and [`score`] evaluates
//! hypothesis files.

pub mod challenge;
pub mod config;
pub mod error;
pub mod io;
pub mod manifest;
pub mod pipeline;
pub mod score;
pub mod subset;
pub mod toy;

pub use error::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;
