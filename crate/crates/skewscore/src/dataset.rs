//! Dataset imbalance diagnostics: class perplexity with and without the
//! negative class, the most/least-frequent positive-class ratio, and the
//! negative-class percentage.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::run::ClassLabel;
use crate::weighting::ClassCounts;

/// Imbalance diagnostics of a label sequence.
///
/// `perplexity_without_na` and `ratio` are undefined when the sequence
/// contains no positive class at all.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    /// Positive classes plus the negative class if present.
    pub n_classes: usize,
    pub n_samples: usize,
    /// Percentage of samples carrying the negative label.
    pub pct_na: f64,
    /// Perplexity with the negative class treated as an ordinary class.
    pub perplexity_with_na: f64,
    /// Perplexity over positive classes only.
    pub perplexity_without_na: Option<f64>,
    /// Count ratio between the most and least frequent positive class.
    pub ratio: Option<f64>,
}

/// Perplexity of the class distribution: `2^H` with
/// `H = -Σ p_i·log2(p_i)`. Equals the class count exactly when the
/// distribution is uniform, and 1 for a single class; the result does not
/// depend on the logarithm base.
pub fn perplexity(counts: &ClassCounts) -> f64 {
    let total = counts.total() as f64;
    let entropy: f64 = counts
        .iter()
        .map(|(_, n)| {
            let p = n as f64 / total;
            -p * p.log2()
        })
        .sum();
    entropy.exp2()
}

/// Ratio between the counts of the most and least frequent positive class.
/// The negative class is excluded; a single positive class gives 1.
pub fn imbalance_ratio(counts: &ClassCounts, na_label: Option<&ClassLabel>) -> Result<f64> {
    let positive: Vec<u64> = counts
        .iter()
        .filter(|(c, _)| Some(*c) != na_label)
        .map(|(_, n)| n)
        .collect();
    let max = positive.iter().max().ok_or_else(|| {
        Error::InconsistentInput("no positive class with a nonzero count".into())
    })?;
    let min = positive.iter().min().expect("nonempty");
    Ok(*max as f64 / *min as f64)
}

/// Computes all diagnostics for a label sequence (e.g. the gold labels of
/// one split). Classes never occurring contribute nothing.
pub fn dataset_stats(labels: &[ClassLabel], na_label: Option<&ClassLabel>) -> Result<DatasetStats> {
    if labels.is_empty() {
        return Err(Error::InconsistentInput("empty label sequence".into()));
    }
    let mut tally: BTreeMap<ClassLabel, u64> = BTreeMap::new();
    for label in labels {
        *tally.entry(label.clone()).or_insert(0) += 1;
    }
    let n_samples = labels.len();
    let na_count = na_label.and_then(|na| tally.get(na).copied()).unwrap_or(0);
    let pct_na = 100.0 * na_count as f64 / n_samples as f64;

    let all_counts = ClassCounts::new(tally.clone())?;
    let perplexity_with_na = perplexity(&all_counts);

    let positive: BTreeMap<ClassLabel, u64> = tally
        .iter()
        .filter(|(c, _)| Some(*c) != na_label)
        .map(|(c, &n)| (c.clone(), n))
        .collect();
    let (perplexity_without_na, ratio) = if positive.is_empty() {
        (None, None)
    } else {
        let positive = ClassCounts::new(positive)?;
        (
            Some(perplexity(&positive)),
            Some(imbalance_ratio(&positive, None)?),
        )
    };

    Ok(DatasetStats {
        n_classes: all_counts.len(),
        n_samples,
        pct_na,
        perplexity_with_na,
        perplexity_without_na,
        ratio,
    })
}
