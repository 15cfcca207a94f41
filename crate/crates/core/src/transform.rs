//! Composition of the per-sentence source transformation and corpus subsetting.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::morphology::{build_paradigm, mark_case, CaseSystem, DeclensionMap, MorphError, MorphStyle, ParadigmTable};
use crate::permuter::{
    draw_order, linearize, remove_agreement, reorder_fixed, shuffle_all, OrderScheme, SvoOrder, TransformedSentence,
};
use crate::seed;
use crate::treebank::{validate, DepSentence};

/// Full description of one synthetic source-language variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransformSpec {
    pub order: OrderScheme,
    pub case: CaseSystem,
    pub style: MorphStyle,
    pub seed: u64,
    pub agreement_removal: bool,
}

impl TransformSpec {
    /// Spec that leaves the source untouched.
    pub fn identity(seed: u64) -> Self {
        TransformSpec {
            order: OrderScheme::Original,
            case: CaseSystem::None,
            style: MorphStyle::Overt,
            seed,
            agreement_removal: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error(transparent)]
    Morph(#[from] MorphError),
    #[error("corpus has {available} items but {needed} are required")]
    Insufficient { available: usize, needed: usize },
}

/// What happened to one sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentenceOutcome {
    /// Space-joined output tokens.
    pub text: String,
    /// Input token index (1-based) of each output token.
    pub provenance: Vec<usize>,
    /// Order applied when the scheme draws one at random.
    pub drawn_order: Option<SvoOrder>,
    /// The sentence failed validation and was copied through.
    pub passed_through: bool,
    /// Argument heads whose number defaulted to singular.
    pub defaulted_numbers: usize,
}

/// Applies a [`TransformSpec`] to sentences of one corpus.
#[derive(Clone, Debug)]
pub struct Transformer {
    spec: TransformSpec,
    table: ParadigmTable,
    declensions: DeclensionMap,
    corpus: String,
}

impl Transformer {
    /// `corpus` names the random stream; sentence `i` of the corpus always
    /// draws from `(spec.seed, corpus, i)`.
    pub fn new(spec: TransformSpec, declensions: DeclensionMap, corpus: &str) -> Result<Self, TransformError> {
        let table = build_paradigm(spec.style, spec.case)?;
        Ok(Transformer { spec, table, declensions, corpus: String::from(corpus) })
    }

    pub fn spec(&self) -> &TransformSpec {
        &self.spec
    }

    /// Agreement removal, reordering or shuffling, then case marking.
    pub fn transform(&self, ordinal: u64, sent: &DepSentence) -> Result<SentenceOutcome, TransformError> {
        if !validate(sent).is_empty() {
            return Ok(SentenceOutcome {
                text: sent.text(),
                provenance: (1..=sent.len()).collect(),
                drawn_order: None,
                passed_through: true,
                defaulted_numbers: 0,
            });
        }
        let prepared = if self.spec.agreement_removal { remove_agreement(sent) } else { sent.clone() };
        let mut rng = seed::stream(self.spec.seed, &self.corpus, ordinal);
        let mut drawn_order = None;
        let ordered = match self.spec.order {
            OrderScheme::Original => TransformedSentence::original(&prepared),
            OrderScheme::Fixed(order) => reorder_fixed(&prepared, order),
            OrderScheme::Random => {
                let order = draw_order(&mut rng);
                drawn_order = Some(order);
                reorder_fixed(&prepared, order)
            }
            OrderScheme::ShuffleAll => shuffle_all(&prepared, &mut rng),
        };
        let marked = mark_case(&prepared, &ordered, &self.table, &self.declensions)?;
        Ok(SentenceOutcome {
            text: linearize(&marked.sentence),
            provenance: marked.sentence.provenance,
            drawn_order,
            passed_through: false,
            defaulted_numbers: marked.defaulted_numbers,
        })
    }
}

/// Disjoint training and held-out index sets, each in corpus order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    pub train: Vec<usize>,
    pub heldout: Vec<usize>,
}

/// Draws a held-out set and a training subset from `total` items.
///
/// One seeded permutation of the corpus is cut into the held-out prefix and
/// the training block after it, so the held-out set is the same for every
/// training size and smaller training sets are contained in larger ones.
pub fn subset(total: usize, size: usize, heldout: usize, seed: u64) -> Result<Subset, TransformError> {
    let needed = size.saturating_add(heldout);
    if needed > total {
        return Err(TransformError::Insufficient { available: total, needed });
    }
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(&mut seed::stream(seed, "subset", 0));
    let mut held: Vec<usize> = order[..heldout].to_vec();
    let mut train: Vec<usize> = order[heldout..needed].to_vec();
    held.sort_unstable();
    train.sort_unstable();
    Ok(Subset { train, heldout: held })
}
