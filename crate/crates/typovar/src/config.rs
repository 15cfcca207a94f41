//! Transform settings from a JSON file and command-line flags.
//!
//! A config file holds any subset of the [`TransformSpec`] fields plus
//! `corpus_name` and `attach_punctuation`. A manifest written by a previous
//! run is also accepted: its `spec` object supplies the spec fields.

use serde::Deserialize;
use typovar_core::morphology::{CaseSystem, MorphStyle};
use typovar_core::{OrderScheme, TransformSpec};

use crate::{Error, Result};

/// Partially specified transform settings; later layers override earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
pub struct Settings {
    pub order: Option<OrderScheme>,
    pub case: Option<CaseSystem>,
    pub style: Option<MorphStyle>,
    pub seed: Option<u64>,
    pub agreement_removal: Option<bool>,
    pub corpus_name: Option<String>,
    pub attach_punctuation: Option<bool>,
}

/// Fully resolved settings for one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOptions {
    pub spec: TransformSpec,
    /// Label mixed into every per-sentence random stream.
    pub corpus_name: String,
    /// Glue punctuation tokens to the preceding word in the output.
    pub attach_punctuation: bool,
}

pub const DEFAULT_CORPUS_NAME: &str = "corpus";

impl Settings {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::usage(format!("config is not valid JSON: {e}")))?;
        let bad = |e: serde_json::Error| Error::usage(format!("invalid config: {e}"));
        match value.get("spec") {
            Some(spec) => {
                let mut s: Settings = serde_json::from_value(spec.clone()).map_err(bad)?;
                let top: Settings = serde_json::from_value(value).map_err(bad)?;
                s.corpus_name = top.corpus_name;
                s.attach_punctuation = top.attach_punctuation;
                Ok(s)
            }
            None => serde_json::from_value(value).map_err(bad),
        }
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: Settings) -> Settings {
        Settings {
            order: other.order.or(self.order),
            case: other.case.or(self.case),
            style: other.style.or(self.style),
            seed: other.seed.or(self.seed),
            agreement_removal: other.agreement_removal.or(self.agreement_removal),
            corpus_name: other.corpus_name.or(self.corpus_name),
            attach_punctuation: other.attach_punctuation.or(self.attach_punctuation),
        }
    }

    /// The seed has no default. Agreement removal defaults to on.
    pub fn resolve(self) -> Result<TransformOptions> {
        let seed = self.seed.ok_or_else(|| Error::usage("a seed is required (--seed or \"seed\" in the config)"))?;
        let case = self.case.unwrap_or_default();
        let style = self.style.unwrap_or_default();
        if case == CaseSystem::Syncretic && style != MorphStyle::Overt {
            return Err(Error::usage("the syncretic case system is only defined for the overt style"));
        }
        Ok(TransformOptions {
            spec: TransformSpec {
                order: self.order.unwrap_or(OrderScheme::Original),
                case,
                style,
                seed,
                agreement_removal: self.agreement_removal.unwrap_or(true),
            },
            corpus_name: self.corpus_name.unwrap_or_else(|| DEFAULT_CORPUS_NAME.to_owned()),
            attach_punctuation: self.attach_punctuation.unwrap_or(false),
        })
    }
}
