//! Statistical comparison of two models over repeated runs: Welch's
//! t-test for the equal-means hypothesis and a standardized effect size
//! for how large the difference is.
//!
//! Two different models never perform exactly the same, so significance
//! alone mostly reflects the number of runs; the effect size carries the
//! magnitude.

use crate::error::{Error, Result};
use crate::special::student_t_two_sided_p;

/// Per-run scores of one model.
#[derive(Debug, Clone, PartialEq)]
pub struct RunGroup {
    model_id: String,
    scores: Vec<f64>,
}

impl RunGroup {
    /// Builds a group; at least two finite scores are required.
    pub fn new(model_id: impl Into<String>, scores: Vec<f64>) -> Result<Self> {
        let model_id = model_id.into();
        if scores.len() < 2 {
            return Err(Error::TooFewRuns(scores.len()));
        }
        if scores.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFiniteScore { model_id });
        }
        Ok(RunGroup { model_id, scores })
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least two scores by construction
    }

    pub fn mean(&self) -> f64 {
        self.scores.iter().sum::<f64>() / self.scores.len() as f64
    }

    /// Unbiased sample variance (divisor n-1). Exactly zero for a constant
    /// score list, so degenerate groups are detected reliably.
    pub fn variance(&self) -> f64 {
        if self.scores.iter().all(|&s| s == self.scores[0]) {
            return 0.0;
        }
        let mean = self.mean();
        let ss: f64 = self.scores.iter().map(|s| (s - mean).powi(2)).sum();
        ss / (self.scores.len() - 1) as f64
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }
}

/// Welch's t-test outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchTest {
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
}

/// Effect-size magnitude labels (Sawilowsky's rule-of-thumb scale).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectSize {
    Negligible,
    VerySmall,
    Small,
    Medium,
    Large,
    VeryLarge,
    Huge,
}

impl std::fmt::Display for EffectSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EffectSize::Negligible => "negligible",
            EffectSize::VerySmall => "very small",
            EffectSize::Small => "small",
            EffectSize::Medium => "medium",
            EffectSize::Large => "large",
            EffectSize::VeryLarge => "very large",
            EffectSize::Huge => "huge",
        };
        f.write_str(s)
    }
}

/// Full two-group comparison: Welch test plus effect size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonResult {
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
    pub cohens_d: f64,
    pub effect_label: EffectSize,
}

/// Standardized mean difference for two equal-sized groups:
/// `√2·(μ₁-μ₂)/√(σ₁²+σ₂²)` with unbiased sample variances.
///
/// The formula assumes the same number of runs per model; unequal group
/// sizes are rejected. Positive values mean `a` scored higher.
pub fn cohens_d(a: &RunGroup, b: &RunGroup) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::UnequalRunCounts {
            a: a.len(),
            b: b.len(),
        });
    }
    let var_sum = a.variance() + b.variance();
    if var_sum == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok(std::f64::consts::SQRT_2 * (a.mean() - b.mean()) / var_sum.sqrt())
}

/// Welch's t-test for the hypothesis that two score samples have equal
/// mean, without assuming equal variances. Returns the statistic, the
/// Welch–Satterthwaite degrees of freedom and the two-sided p-value.
pub fn welch_t_test(a: &RunGroup, b: &RunGroup) -> Result<WelchTest> {
    let (va, vb) = (a.variance(), b.variance());
    if va == 0.0 && vb == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let sa = va / na;
    let sb = vb / nb;
    let se = (sa + sb).sqrt();
    let t = (a.mean() - b.mean()) / se;
    let df = (sa + sb).powi(2) / (sa.powi(2) / (na - 1.0) + sb.powi(2) / (nb - 1.0));
    let p_value = student_t_two_sided_p(t, df);
    Ok(WelchTest { t, df, p_value })
}

/// Maps |d| onto the rule-of-thumb magnitude scale:
/// ≥2.0 huge, ≥1.2 very large, ≥0.8 large, ≥0.5 medium, ≥0.2 small,
/// ≥0.01 very small, else negligible.
pub fn effect_label(d: f64) -> EffectSize {
    let m = d.abs();
    if m >= 2.0 {
        EffectSize::Huge
    } else if m >= 1.2 {
        EffectSize::VeryLarge
    } else if m >= 0.8 {
        EffectSize::Large
    } else if m >= 0.5 {
        EffectSize::Medium
    } else if m >= 0.2 {
        EffectSize::Small
    } else if m >= 0.01 {
        EffectSize::VerySmall
    } else {
        EffectSize::Negligible
    }
}

/// Welch's test and effect size in one call (equal run counts required).
pub fn compare(a: &RunGroup, b: &RunGroup) -> Result<ComparisonResult> {
    let d = cohens_d(a, b)?;
    let welch = welch_t_test(a, b)?;
    Ok(ComparisonResult {
        t: welch.t,
        df: welch.df,
        p_value: welch.p_value,
        cohens_d: d,
        effect_label: effect_label(d),
    })
}
