//! Evaluation of multi-class classifiers on imbalanced datasets.
//!
//! A single score hides how a model behaves across a skewed label
//! distribution. This crate scores predictions under a family of
//! class-weighting schemes between the micro and macro extremes, compares
//! models statistically over repeated runs, and reports how imbalanced a
//! label distribution actually is.
//!
//! * per-class confusion counts and F-beta, with the relation-classification
//!   micro convention that excludes the negative class ([`metrics`])
//! * weighting schemes — weighted, dodrans, entropy, macro and the `n^p`
//!   power family — plus a validator for the degressive-proportionality
//!   rules ([`weighting`])
//! * Welch's t-test and a standardized effect size over run groups
//!   ([`stattest`])
//! * class perplexity, positive-class ratio and negative-class share
//!   ([`dataset`])
//! * TSV/JSONL prediction-file loading ([`io`]) and text/JSON/CSV report
//!   rendering ([`report`])
//!
//! Each capability has a runnable example:
//!
//! ```bash
//! cargo run --example classification_report
//! cargo run --example compare_models
//! cargo run --example weight_schemes
//! cargo run --example desiderata_check
//! cargo run --example dataset_stats
//! cargo run --example power_family
//! ```
//!
//! The same functionality is exposed by the `skewscore` binary
//! (`report`, `compare`, `weights`, `dataset-stats` subcommands).
//!
//! ```
//! use skewscore::{classification_report, EvaluationRun, ReportOptions};
//!
//! let run = EvaluationRun::from_labels(
//!     &["A", "A", "A", "B"],
//!     &["A", "A", "B", "B"],
//!     None,
//!     "demo",
//!     "run-1",
//! )?;
//! let report = classification_report(&run, &ReportOptions::default())?;
//! assert_eq!(report.aggregates[0].scheme, "micro");
//! assert!((report.aggregates[0].score - 0.75).abs() < 1e-12);
//! # Ok::<(), skewscore::Error>(())
//! ```

pub mod cli;
pub mod dataset;
pub mod error;
pub mod io;
pub mod metrics;
pub mod report;
pub mod run;
pub mod special;
pub mod stattest;
pub mod weighting;

pub use dataset::{dataset_stats, imbalance_ratio, perplexity, DatasetStats};
pub use error::{Error, Result};
pub use io::{load_run, load_run_group, RunFileDescriptor, RunFormat};
pub use metrics::{
    confusion_counts, f_beta, micro_f, per_class_f, per_class_metrics, ClassConfusion,
    ClassMetrics, ConfusionCounts, FBetaScore,
};
pub use report::{
    classification_report, comparison_report, report_set, weight_table, ClassificationReport,
    ComparisonReport, ReportOptions, ReportSet, WeightTable,
};
pub use run::{ClassLabel, EvaluationRun, LabeledPair};
pub use stattest::{
    cohens_d, compare, effect_label, welch_t_test, ComparisonResult, EffectSize, RunGroup,
    WelchTest,
};
pub use weighting::{
    aggregate_score, class_weights, class_weights_with_na_mass, validate_desiderata, ClassCounts,
    DesiderataReport, WeightVector, WeightingScheme,
};
