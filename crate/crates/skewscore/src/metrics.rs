//! Per-class confusion counts and F-beta scores.
//!
//! Scores follow the per-class route: a confusion count per class, an
//! F-beta score per class, and a separate pooled (micro) computation.
//! The pooled computation supports the relation-classification convention
//! where true positives of the negative class are not counted, in which
//! case micro-F1 is not equal to accuracy.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::run::{ClassLabel, EvaluationRun};

/// Confusion counts of a single class.
///
/// `support` (gold occurrences) is `true_positives + false_negatives` by
/// construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassConfusion {
    pub true_positives: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
}

impl ClassConfusion {
    pub fn support(&self) -> u64 {
        self.true_positives + self.false_negatives
    }
}

/// Per-class confusion counts for every class appearing in gold or
/// predicted position of a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfusionCounts {
    per_class: BTreeMap<ClassLabel, ClassConfusion>,
}

impl ConfusionCounts {
    pub fn classes(&self) -> impl Iterator<Item = &ClassLabel> {
        self.per_class.keys()
    }

    pub fn get(&self, class: &ClassLabel) -> Option<&ClassConfusion> {
        self.per_class.get(class)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClassLabel, &ClassConfusion)> {
        self.per_class.iter()
    }

    pub fn len(&self) -> usize {
        self.per_class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_class.is_empty()
    }

    /// Sum of supports; equals the number of pairs in the source run.
    pub fn total_support(&self) -> u64 {
        self.per_class.values().map(ClassConfusion::support).sum()
    }
}

/// Computes per-class confusion counts by scanning the run once.
///
/// For each class `c`: `tp = #(gold=c ∧ pred=c)`, `fp = #(gold≠c ∧ pred=c)`,
/// `fn = #(gold=c ∧ pred≠c)`. Classes that occur only in predictions get an
/// entry too (false positives with zero support).
pub fn confusion_counts(run: &EvaluationRun) -> ConfusionCounts {
    let mut per_class: BTreeMap<ClassLabel, ClassConfusion> = BTreeMap::new();
    for pair in run.pairs() {
        if pair.gold == pair.predicted {
            per_class
                .entry(pair.gold.clone())
                .or_default()
                .true_positives += 1;
        } else {
            per_class
                .entry(pair.gold.clone())
                .or_default()
                .false_negatives += 1;
            per_class
                .entry(pair.predicted.clone())
                .or_default()
                .false_positives += 1;
        }
    }
    ConfusionCounts { per_class }
}

/// An F-beta value together with a flag marking the degenerate
/// all-counts-zero case, where the score is defined as 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FBetaScore {
    pub value: f64,
    pub zero_division: bool,
}

/// F-beta from raw confusion counts:
/// `(1+β²)·tp / ((1+β²)·tp + β²·fn + fp)`.
///
/// With `tp = fp = fn = 0` the score is 0 and `zero_division` is set, so
/// aggregates stay defined while reports can surface the degenerate class.
pub fn f_beta(tp: u64, fp: u64, false_negatives: u64, beta: f64) -> Result<FBetaScore> {
    check_beta(beta)?;
    if tp == 0 && fp == 0 && false_negatives == 0 {
        return Ok(FBetaScore {
            value: 0.0,
            zero_division: true,
        });
    }
    let b2 = beta * beta;
    let numer = (1.0 + b2) * tp as f64;
    let denom = (1.0 + b2) * tp as f64 + b2 * false_negatives as f64 + fp as f64;
    let value = if denom == 0.0 { 0.0 } else { numer / denom };
    Ok(FBetaScore {
        value,
        zero_division: false,
    })
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidBeta(beta));
    }
    Ok(())
}

/// Precision, recall and F-beta of one class, plus its gold support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f_beta: f64,
    pub support: u64,
    pub zero_division: bool,
}

/// Applies `f_beta` to every class of a confusion table.
pub fn per_class_f(counts: &ConfusionCounts, beta: f64) -> Result<BTreeMap<ClassLabel, FBetaScore>> {
    counts
        .iter()
        .map(|(class, c)| {
            Ok((
                class.clone(),
                f_beta(c.true_positives, c.false_positives, c.false_negatives, beta)?,
            ))
        })
        .collect()
}

/// Per-class precision, recall and F-beta. Undefined ratios (0/0) are
/// reported as 0.
pub fn per_class_metrics(
    counts: &ConfusionCounts,
    beta: f64,
) -> Result<BTreeMap<ClassLabel, ClassMetrics>> {
    check_beta(beta)?;
    counts
        .iter()
        .map(|(class, c)| {
            let predicted = c.true_positives + c.false_positives;
            let precision = if predicted == 0 {
                0.0
            } else {
                c.true_positives as f64 / predicted as f64
            };
            let recall = if c.support() == 0 {
                0.0
            } else {
                c.true_positives as f64 / c.support() as f64
            };
            let f = f_beta(c.true_positives, c.false_positives, c.false_negatives, beta)?;
            Ok((
                class.clone(),
                ClassMetrics {
                    precision,
                    recall,
                    f_beta: f.value,
                    support: c.support(),
                    zero_division: f.zero_division,
                },
            ))
        })
        .collect()
}

/// Pooled (micro) F-beta over a run.
///
/// With `include_na = false` the negative class contributes no true
/// positives: precision pools over non-negative predictions and recall over
/// non-negative gold labels. The run must carry a negative-class label in
/// that case. With `include_na = true` all classes are pooled; for β = 1
/// the result equals accuracy.
pub fn micro_f(run: &EvaluationRun, beta: f64, include_na: bool) -> Result<FBetaScore> {
    check_beta(beta)?;
    let na = if include_na {
        None
    } else {
        Some(run.na_label().ok_or(Error::MissingNaLabel)?)
    };

    let mut tp = 0u64;
    let mut fp = 0u64;
    let mut false_negatives = 0u64;
    for pair in run.pairs() {
        let gold_positive = na != Some(&pair.gold);
        let pred_positive = na != Some(&pair.predicted);
        if pair.gold == pair.predicted {
            if pred_positive {
                tp += 1;
            }
        } else {
            if pred_positive {
                fp += 1;
            }
            if gold_positive {
                false_negatives += 1;
            }
        }
    }
    f_beta(tp, fp, false_negatives, beta)
}
