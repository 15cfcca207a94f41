//! Translation quality metrics: exact-match sentence accuracy, corpus BLEU
//! and RIBES. Inputs are whitespace-tokenized strings with one reference per
//! hypothesis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("{hyps} hypotheses but {refs} references")]
    LengthMismatch { hyps: usize, refs: usize },
    #[error("empty corpus")]
    EmptyCorpus,
}

fn check_lengths<A, B>(hyps: &[A], refs: &[B]) -> Result<(), MetricError> {
    if hyps.len() != refs.len() {
        return Err(MetricError::LengthMismatch { hyps: hyps.len(), refs: refs.len() });
    }
    Ok(())
}

fn tokens(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

/// Fraction of hypotheses equal to their reference after whitespace normalization.
/// An empty corpus scores 0.
pub fn sentence_accuracy<H: AsRef<str>, R: AsRef<str>>(hyps: &[H], refs: &[R]) -> Result<f64, MetricError> {
    check_lengths(hyps, refs)?;
    if hyps.is_empty() {
        return Ok(0.0);
    }
    let matches =
        hyps.iter().zip(refs).filter(|(h, r)| h.as_ref().split_whitespace().eq(r.as_ref().split_whitespace())).count();
    Ok(matches as f64 / hyps.len() as f64)
}

pub const BLEU_MAX_ORDER: usize = 4;

/// Sufficient statistics for corpus BLEU.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BleuStats {
    /// Clipped n-gram matches, index 0 = unigrams.
    pub matches: [u64; BLEU_MAX_ORDER],
    /// Hypothesis n-gram counts.
    pub totals: [u64; BLEU_MAX_ORDER],
    pub hyp_len: u64,
    pub ref_len: u64,
}

impl BleuStats {
    pub fn sentence(hyp: &str, reference: &str) -> Self {
        let h = tokens(hyp);
        let r = tokens(reference);
        let mut stats = BleuStats { hyp_len: h.len() as u64, ref_len: r.len() as u64, ..Default::default() };
        for n in 1..=BLEU_MAX_ORDER {
            let ref_counts = ngram_counts(&r, n);
            for (gram, count) in ngram_counts(&h, n) {
                stats.totals[n - 1] += count;
                stats.matches[n - 1] += count.min(ref_counts.get(gram).copied().unwrap_or(0));
            }
        }
        stats
    }

    pub fn add(&mut self, other: &BleuStats) {
        for n in 0..BLEU_MAX_ORDER {
            self.matches[n] += other.matches[n];
            self.totals[n] += other.totals[n];
        }
        self.hyp_len += other.hyp_len;
        self.ref_len += other.ref_len;
    }

    /// Modified n-gram precision for order `n` (1-based), if any hypothesis n-grams exist.
    pub fn precision(&self, n: usize) -> Option<f64> {
        let total = self.totals[n - 1];
        (total > 0).then(|| self.matches[n - 1] as f64 / total as f64)
    }

    /// BLEU on a 0-100 scale. Orders with no hypothesis n-grams at all are
    /// left out of the geometric mean.
    pub fn score(&self) -> f64 {
        if self.hyp_len == 0 {
            return 0.0;
        }
        let mut log_sum = 0.0;
        let mut orders = 0;
        for n in 1..=BLEU_MAX_ORDER {
            match self.precision(n) {
                Some(0.0) => return 0.0,
                Some(p) => {
                    log_sum += libm::log(p);
                    orders += 1;
                }
                None => {}
            }
        }
        let c = self.hyp_len as f64;
        let r = self.ref_len as f64;
        let brevity = if c < r { libm::exp(1.0 - r / c) } else { 1.0 };
        100.0 * brevity * libm::exp(log_sum / f64::from(orders))
    }
}

fn ngram_counts<'a>(toks: &'a [&'a str], n: usize) -> BTreeMap<&'a [&'a str], u64> {
    let mut counts = BTreeMap::new();
    if toks.len() >= n {
        for w in toks.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// Corpus-level BLEU (0-100), n = 1..4, single reference.
pub fn bleu<H: AsRef<str>, R: AsRef<str>>(hyps: &[H], refs: &[R]) -> Result<f64, MetricError> {
    check_lengths(hyps, refs)?;
    if hyps.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    let mut stats = BleuStats::default();
    for (h, r) in hyps.iter().zip(refs) {
        stats.add(&BleuStats::sentence(h.as_ref(), r.as_ref()));
    }
    Ok(stats.score())
}

/// One-to-one word alignment as (hypothesis position, reference position), 0-based,
/// in hypothesis order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alignment {
    pub pairs: Vec<(usize, usize)>,
}

impl Alignment {
    /// Reference positions read in hypothesis order.
    pub fn ranks(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, r)| r).collect()
    }
}

fn occurrences(haystack: &[&str], needle: &[&str]) -> (usize, Option<usize>) {
    let mut count = 0;
    let mut first = None;
    if needle.len() <= haystack.len() {
        for (i, w) in haystack.windows(needle.len()).enumerate() {
            if w == needle {
                count += 1;
                first.get_or_insert(i);
            }
        }
    }
    (count, first)
}

/// Aligns hypothesis words to reference words.
///
/// A word aligns directly when it occurs exactly once on each side. Otherwise
/// n-gram contexts of growing width are tried, left context before right
/// context at each width, until one occurs exactly once on both sides. Words
/// that never disambiguate, or whose reference position is already taken,
/// stay unaligned.
pub fn align_words(hyp: &[&str], reference: &[&str]) -> Alignment {
    let mut used = alloc::vec![false; reference.len()];
    let mut pairs = Vec::new();
    for (i, word) in hyp.iter().enumerate() {
        let (ref_count, ref_first) = occurrences(reference, core::slice::from_ref(word));
        if ref_count == 0 {
            continue;
        }
        let (hyp_count, _) = occurrences(hyp, core::slice::from_ref(word));
        let mut target = None;
        if ref_count == 1 && hyp_count == 1 {
            target = ref_first;
        } else {
            let widest = (i + 1).max(hyp.len() - i + 1);
            for window in 1..widest {
                if window <= i {
                    let gram = &hyp[i - window..=i];
                    if let (1, (1, Some(start))) = (occurrences(hyp, gram).0, occurrences(reference, gram)) {
                        target = Some(start + window);
                        break;
                    }
                }
                if i + window < hyp.len() {
                    let gram = &hyp[i..=i + window];
                    if let (1, (1, Some(start))) = (occurrences(hyp, gram).0, occurrences(reference, gram)) {
                        target = Some(start);
                        break;
                    }
                }
            }
        }
        if let Some(r) = target {
            if !used[r] {
                used[r] = true;
                pairs.push((i, r));
            }
        }
    }
    Alignment { pairs }
}

pub const RIBES_ALPHA: f64 = 0.25;
pub const RIBES_BETA: f64 = 0.10;

/// Normalized Kendall tau: concordant pairs over all pairs, `None` for fewer than 2 ranks.
/// Ranks are distinct; discordant pairs are counted as inversions by merge sort.
pub fn normalized_kendall_tau(ranks: &[usize]) -> Option<f64> {
    let k = ranks.len();
    if k < 2 {
        return None;
    }
    let mut work = ranks.to_vec();
    let mut buf = alloc::vec![0; k];
    let inversions = count_inversions(&mut work, &mut buf);
    let pairs = (k * (k - 1) / 2) as u64;
    Some((pairs - inversions) as f64 / pairs as f64)
}

fn count_inversions(xs: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = count_inversions(&mut xs[..mid], &mut buf[..mid]) + count_inversions(&mut xs[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut o) = (0, mid, 0);
    while i < mid && j < n {
        if xs[i] <= xs[j] {
            buf[o] = xs[i];
            i += 1;
        } else {
            buf[o] = xs[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        o += 1;
    }
    buf[o..o + mid - i].copy_from_slice(&xs[i..mid]);
    o += mid - i;
    buf[o..o + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&buf[..n]);
    inv
}

/// Components of a sentence RIBES score.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RibesBreakdown {
    pub nkt: f64,
    /// Aligned words over hypothesis length.
    pub precision: f64,
    pub brevity_penalty: f64,
    /// NKT · P^α · BP^β in [0, 1].
    pub score: f64,
}

/// Sentence RIBES in [0, 1]. Fewer than two aligned words score 0.
pub fn ribes_breakdown(hyp: &str, reference: &str) -> RibesBreakdown {
    let h = tokens(hyp);
    let r = tokens(reference);
    let zero = RibesBreakdown { nkt: 0.0, precision: 0.0, brevity_penalty: 0.0, score: 0.0 };
    if h.is_empty() {
        return zero;
    }
    let alignment = align_words(&h, &r);
    let Some(nkt) = normalized_kendall_tau(&alignment.ranks()) else {
        return zero;
    };
    let precision = alignment.pairs.len() as f64 / h.len() as f64;
    let brevity_penalty = libm::exp(1.0 - r.len() as f64 / h.len() as f64).min(1.0);
    let score = nkt * libm::pow(precision, RIBES_ALPHA) * libm::pow(brevity_penalty, RIBES_BETA);
    RibesBreakdown { nkt, precision, brevity_penalty, score }
}

pub fn ribes(hyp: &str, reference: &str) -> f64 {
    ribes_breakdown(hyp, reference).score
}

/// Corpus RIBES: mean sentence score × 100.
pub fn corpus_ribes<H: AsRef<str>, R: AsRef<str>>(hyps: &[H], refs: &[R]) -> Result<f64, MetricError> {
    check_lengths(hyps, refs)?;
    if hyps.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    let sum: f64 = hyps.iter().zip(refs).map(|(h, r)| ribes(h.as_ref(), r.as_ref())).sum();
    Ok(100.0 * sum / hyps.len() as f64)
}

/// Corpus scores with per-sentence RIBES.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MetricReport {
    pub accuracy: f64,
    pub bleu: f64,
    pub ribes: f64,
    pub n_sentences: usize,
    /// Sentence RIBES values in [0, 1].
    #[cfg_attr(feature = "serde", serde(skip))]
    pub per_sentence: Vec<f64>,
}

pub fn score<H: AsRef<str>, R: AsRef<str>>(hyps: &[H], refs: &[R]) -> Result<MetricReport, MetricError> {
    check_lengths(hyps, refs)?;
    if hyps.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    let per_sentence: Vec<f64> = hyps.iter().zip(refs).map(|(h, r)| ribes(h.as_ref(), r.as_ref())).collect();
    Ok(MetricReport {
        accuracy: sentence_accuracy(hyps, refs)?,
        bleu: bleu(hyps, refs)?,
        ribes: 100.0 * per_sentence.iter().sum::<f64>() / per_sentence.len() as f64,
        n_sentences: hyps.len(),
        per_sentence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn accuracy_cases() {
        assert_eq!(sentence_accuracy(&["a b", "c"], &["a  b", "c"]), Ok(1.0));
        assert_eq!(sentence_accuracy(&["a", "b"], &["x", "y"]), Ok(0.0));
        assert_eq!(sentence_accuracy(&["a", "b"], &["a", "y"]), Ok(0.5));
        assert_eq!(sentence_accuracy(&["a"], &["a", "b"]), Err(MetricError::LengthMismatch { hyps: 1, refs: 2 }));
    }

    #[test]
    fn bleu_identity_disjoint_and_clipping() {
        let refs = ["the cat sat on the mat", "a b"];
        assert!((bleu(&refs, &refs).unwrap() - 100.0).abs() < 1e-9);
        assert_eq!(bleu(&["x y z"], &["a b c"]), Ok(0.0));
        let stats = BleuStats::sentence("the the the", "the cat");
        assert_eq!(stats.matches[0], 1);
        assert_eq!(stats.totals[0], 3);
        assert_eq!(stats.precision(1), Some(1.0 / 3.0));
        let empty: [&str; 0] = [];
        assert_eq!(bleu(&empty, &empty), Err(MetricError::EmptyCorpus));
    }

    #[test]
    fn bleu_brevity_penalty() {
        // 2-token hypothesis against 4-token reference, all n-grams present.
        let b = bleu(&["a b"], &["a b c d"]).unwrap();
        let expected = 100.0 * libm::exp(1.0 - 4.0 / 2.0);
        assert!((b - expected).abs() < 1e-9, "{b} vs {expected}");
    }

    #[test]
    fn alignment_examples() {
        assert_eq!(align_words(&["a", "b", "c"], &["c", "b", "a"]).pairs, vec![(0, 2), (1, 1), (2, 0)]);
        assert!(align_words(&["a", "a"], &["a"]).pairs.is_empty());
        // Only the first "a" has a context ("x a") unique on both sides; "y a" never
        // occurs in the reference, so the second "a" stays unaligned.
        assert_eq!(align_words(&["x", "a", "y", "a"], &["x", "a", "z", "a"]).pairs, vec![(0, 0), (1, 1)]);
        // Right context disambiguates.
        assert_eq!(
            align_words(&["a", "b", "a", "c"], &["a", "c", "a", "b"]).pairs,
            vec![(0, 2), (1, 3), (2, 0), (3, 1)]
        );
    }

    #[test]
    fn ribes_examples() {
        assert!((ribes("a b c d", "a b c d") - 1.0).abs() < 1e-12);
        assert_eq!(ribes("d c b a", "a b c d"), 0.0);
        let r = ribes_breakdown("a b d c", "a b c d");
        assert!((r.nkt - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(r.precision, 1.0);
        assert_eq!(r.brevity_penalty, 1.0);
        assert!((100.0 * r.score - 83.33).abs() < 0.01);
        assert_eq!(ribes("", "a b"), 0.0);
        assert_eq!(ribes("a", "a"), 0.0);
    }

    #[test]
    fn ribes_penalties() {
        // Half the hypothesis aligns, hypothesis shorter than the reference.
        let r = ribes_breakdown("a b x y", "a b c d e f");
        assert_eq!(r.nkt, 1.0);
        assert_eq!(r.precision, 0.5);
        let bp = libm::exp(1.0 - 6.0 / 4.0);
        assert!((r.brevity_penalty - bp).abs() < 1e-12);
        assert!((r.score - libm::pow(0.5, 0.25) * libm::pow(bp, 0.1)).abs() < 1e-12);
    }

    #[test]
    fn report_on_identical_corpus() {
        let refs = ["the cat sleeps", "a dog barks loudly"];
        let rep = score(&refs, &refs).unwrap();
        assert_eq!(rep.accuracy, 1.0);
        assert!((rep.bleu - 100.0).abs() < 1e-9);
        assert!((rep.ribes - 100.0).abs() < 1e-9);
        assert_eq!(rep.per_sentence.len(), 2);
    }
}
