//! Class-weighting schemes for combining per-class scores.
//!
//! Every scheme assigns each class a raw weight from its sample count and
//! normalizes the weights to sum to 1:
//!
//! | scheme   | raw weight           |
//! |----------|----------------------|
//! | weighted | `n`                  |
//! | dodrans  | `n^(3/4)`            |
//! | entropy  | `-n·log2(n/N)`       |
//! | macro    | `1`                  |
//! | power(p) | `n^p`, `p ∈ [0, 1]`  |
//!
//! Micro is a pooled computation over the whole run and has no weight
//! vector; [`class_weights`] rejects it.
//!
//! The power family subsumes weighted (p = 1), dodrans (p = 3/4) and macro
//! (p = 0) and makes the space between the extremes explicit.
//!
//! The aggregate score under a weight vector `w` and per-class scores `s`
//! is `Σ w_i·s_i`. Weight vectors can be audited against the
//! degressive-proportionality rules via [`validate_desiderata`]: they must
//! sum to one, larger classes must not get smaller weights, and
//! weight-per-sample must not grow with class size. Entropy weighting
//! deliberately breaks the second rule for classes holding more than an
//! e-th of the samples: such classes stop gaining importance.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::run::{ClassLabel, EvaluationRun};

/// Comparison slack absorbing float rounding in weight computations.
const WEIGHT_EPS: f64 = 1e-12;

/// Gold-support counts per class; all counts are strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCounts {
    counts: BTreeMap<ClassLabel, u64>,
}

impl ClassCounts {
    /// Builds counts from explicit per-class values. Classes with a zero
    /// count are rejected; supply only classes that actually occur.
    pub fn new(counts: BTreeMap<ClassLabel, u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyCounts);
        }
        if counts.values().any(|&n| n == 0) {
            return Err(Error::InconsistentInput(
                "class counts must be strictly positive".into(),
            ));
        }
        Ok(ClassCounts { counts })
    }

    /// Tallies a label sequence, dropping the negative class if given.
    pub fn from_labels<'a, I>(labels: I, na_label: Option<&ClassLabel>) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ClassLabel>,
    {
        let mut counts: BTreeMap<ClassLabel, u64> = BTreeMap::new();
        for label in labels {
            if Some(label) == na_label {
                continue;
            }
            *counts.entry(label.clone()).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return Err(Error::EmptyCounts);
        }
        Ok(ClassCounts { counts })
    }

    /// Counts of the gold labels of a run, excluding the run's negative
    /// class. This is the reference set used for weighting an evaluation.
    pub fn from_gold(run: &EvaluationRun) -> Result<Self> {
        Self::from_labels(run.pairs().iter().map(|p| &p.gold), run.na_label())
    }

    pub fn get(&self, class: &ClassLabel) -> Option<u64> {
        self.counts.get(class).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClassLabel, u64)> {
        self.counts.iter().map(|(c, &n)| (c, n))
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassLabel> {
        self.counts.keys()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// A class-weighting scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightingScheme {
    /// Pooled over all samples; no per-class weight vector exists.
    Micro,
    /// Weights proportional to class counts.
    ClassWeighted,
    /// Weights proportional to `n^(3/4)`.
    Dodrans,
    /// Weights proportional to the class's term in the Shannon entropy of
    /// the label distribution, `-n·log2(n/N)`.
    Entropy,
    /// Equal weight for every class.
    Macro,
    /// Weights proportional to `n^p` with `p ∈ [0, 1]`.
    Power(f64),
}

impl WeightingScheme {
    pub fn name(&self) -> String {
        match self {
            WeightingScheme::Micro => "micro".into(),
            WeightingScheme::ClassWeighted => "weighted".into(),
            WeightingScheme::Dodrans => "dodrans".into(),
            WeightingScheme::Entropy => "entropy".into(),
            WeightingScheme::Macro => "macro".into(),
            WeightingScheme::Power(p) => format!("power({p})"),
        }
    }
}

impl std::fmt::Display for WeightingScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

/// Normalized non-negative per-class weights summing to 1 (within 1e-9).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: BTreeMap<ClassLabel, f64>,
}

impl WeightVector {
    pub fn new(weights: BTreeMap<ClassLabel, f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no classes".into()));
        }
        if weights.values().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(
                "weights must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = weights.values().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(WeightVector { weights })
    }

    pub fn get(&self, class: &ClassLabel) -> Option<f64> {
        self.weights.get(class).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClassLabel, f64)> {
        self.weights.iter().map(|(c, &w)| (c, w))
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassLabel> {
        self.weights.keys()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.weights.values().sum()
    }
}

/// Normalized per-class weights of a scheme over the given counts.
///
/// Proportions for the entropy scheme are taken over the supplied counts
/// only; use [`class_weights_with_na_mass`] to include the negative class
/// in the denominator.
pub fn class_weights(counts: &ClassCounts, scheme: WeightingScheme) -> Result<WeightVector> {
    class_weights_with_na_mass(counts, scheme, 0)
}

/// Like [`class_weights`], but adds `na_count` samples of the negative
/// class to the entropy denominator while still assigning that class no
/// weight. With the negative class included it is usually the largest
/// class, pushing all positive classes below an e-th of the total.
///
/// Schemes other than entropy ignore `na_count` (their raw weights do not
/// depend on the total).
pub fn class_weights_with_na_mass(
    counts: &ClassCounts,
    scheme: WeightingScheme,
    na_count: u64,
) -> Result<WeightVector> {
    let raw: BTreeMap<ClassLabel, f64> = match scheme {
        WeightingScheme::Micro => {
            return Err(Error::UnsupportedScheme(scheme.name()));
        }
        WeightingScheme::ClassWeighted => counts
            .iter()
            .map(|(c, n)| (c.clone(), n as f64))
            .collect(),
        WeightingScheme::Dodrans => counts
            .iter()
            .map(|(c, n)| (c.clone(), (n as f64).powf(0.75)))
            .collect(),
        WeightingScheme::Macro => counts.iter().map(|(c, _)| (c.clone(), 1.0)).collect(),
        WeightingScheme::Power(p) => {
            if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
                return Err(Error::InvalidPower(p));
            }
            counts
                .iter()
                .map(|(c, n)| (c.clone(), (n as f64).powf(p)))
                .collect()
        }
        WeightingScheme::Entropy => {
            let total = (counts.total() + na_count) as f64;
            counts
                .iter()
                .map(|(c, n)| {
                    let p = n as f64 / total;
                    (c.clone(), -(n as f64) * p.log2())
                })
                .collect()
        }
    };

    let sum: f64 = raw.values().sum();
    if sum <= 0.0 {
        // entropy of a single class: p = 1 makes every raw weight zero
        return Err(Error::DegenerateDistribution(format!(
            "{} weights are all zero for this class distribution",
            scheme.name()
        )));
    }
    WeightVector::new(raw.into_iter().map(|(c, w)| (c, w / sum)).collect())
}

/// Weighted sum `Σ w_i·s_i` of per-class scores.
///
/// Every weighted class must have a score; scores for classes without a
/// weight contribute nothing.
pub fn aggregate_score(
    per_class_scores: &BTreeMap<ClassLabel, f64>,
    weights: &WeightVector,
) -> Result<f64> {
    let mut total = 0.0;
    for (class, w) in weights.iter() {
        let s = per_class_scores.get(class).ok_or_else(|| {
            Error::InconsistentInput(format!("no score for weighted class {class:?}"))
        })?;
        total += w * s;
    }
    Ok(total)
}

/// Outcome of one desideratum check over all class pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseCheck {
    pub passed: bool,
    /// Offending `(larger-or-equal-count class, other class)` pairs.
    pub witnesses: Vec<(ClassLabel, ClassLabel)>,
}

/// Outcome of the normalization check.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationCheck {
    pub passed: bool,
    pub weight_sum: f64,
}

/// Degressive-proportionality audit of a weight vector against counts.
#[derive(Debug, Clone, PartialEq)]
pub struct DesiderataReport {
    /// Weights sum to 1.
    pub sum_to_one: NormalizationCheck,
    /// `n_i ≥ n_j` implies `w_i ≥ w_j`.
    pub count_monotone: PairwiseCheck,
    /// `n_i ≥ n_j` implies `w_i/n_i ≤ w_j/n_j`.
    pub degressive: PairwiseCheck,
}

impl DesiderataReport {
    pub fn all_passed(&self) -> bool {
        self.sum_to_one.passed && self.count_monotone.passed && self.degressive.passed
    }
}

/// Checks the three weighting desiderata over every class pair, listing
/// witness pairs for each failure. Both inputs must cover the same classes.
pub fn validate_desiderata(
    counts: &ClassCounts,
    weights: &WeightVector,
) -> Result<DesiderataReport> {
    if !counts.classes().eq(weights.classes()) {
        return Err(Error::InconsistentInput(
            "counts and weights cover different class sets".into(),
        ));
    }

    let entries: Vec<(&ClassLabel, u64, f64)> = counts
        .iter()
        .map(|(c, n)| (c, n, weights.get(c).expect("same class set")))
        .collect();

    let weight_sum: f64 = entries.iter().map(|(_, _, w)| w).sum();
    let sum_to_one = NormalizationCheck {
        passed: (weight_sum - 1.0).abs() <= 1e-9,
        weight_sum,
    };

    let mut monotone_witnesses = Vec::new();
    let mut degressive_witnesses = Vec::new();
    for (i, &(class_i, n_i, w_i)) in entries.iter().enumerate() {
        for &(class_j, n_j, w_j) in entries.iter().skip(i + 1) {
            // orient each pair so the first class has the larger count
            let ((ci, ni, wi), (cj, nj, wj)) = if n_i >= n_j {
                ((class_i, n_i, w_i), (class_j, n_j, w_j))
            } else {
                ((class_j, n_j, w_j), (class_i, n_i, w_i))
            };
            if wi < wj - WEIGHT_EPS {
                monotone_witnesses.push((ci.clone(), cj.clone()));
            }
            if wi / ni as f64 > wj / nj as f64 + WEIGHT_EPS {
                degressive_witnesses.push((ci.clone(), cj.clone()));
            }
        }
    }

    Ok(DesiderataReport {
        sum_to_one,
        count_monotone: PairwiseCheck {
            passed: monotone_witnesses.is_empty(),
            witnesses: monotone_witnesses,
        },
        degressive: PairwiseCheck {
            passed: degressive_witnesses.is_empty(),
            witnesses: degressive_witnesses,
        },
    })
}

/// Classes whose proportion exceeds 1/e in the given distribution.
///
/// Above that proportion the entropy raw weight `-p·log(p)` is decreasing,
/// so entropy weighting stops rewarding further class growth and the
/// count-monotonicity desideratum can fail. Callers use this to attach a
/// warning to entropy-weighted reports.
pub fn entropy_saturated_classes(counts: &ClassCounts, na_count: u64) -> Vec<ClassLabel> {
    let total = (counts.total() + na_count) as f64;
    let threshold = (-1.0f64).exp();
    counts
        .iter()
        .filter(|(_, n)| *n as f64 / total > threshold)
        .map(|(c, _)| c.clone())
        .collect()
}
