//! Report assembly and rendering.
//!
//! A classification report carries per-class precision/recall/F rows plus
//! one aggregate score per weighting scheme; a comparison report carries
//! per-scheme group statistics, the Welch test and the effect size. All
//! reports render as human-readable text, JSON (full precision) and CSV
//! (one row per cell, full precision). Text output rounds scores to four
//! decimals and percentages to one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dataset::DatasetStats;
use crate::error::{Error, Result};
use crate::metrics::{confusion_counts, micro_f, per_class_metrics};
use crate::run::{ClassLabel, EvaluationRun};
use crate::stattest::{cohens_d, effect_label, welch_t_test, EffectSize, RunGroup};
use crate::weighting::{
    aggregate_score, class_weights_with_na_mass, entropy_saturated_classes, ClassCounts,
    WeightingScheme,
};

/// Options shared by the report and comparison pipelines.
#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// F-score trade-off coefficient.
    pub beta: f64,
    /// Force pooled micro over all classes even when a negative class is
    /// set. Without a negative class pooling is always used.
    pub include_na: bool,
    /// Schemes to report; rendered in canonical order.
    pub schemes: Vec<WeightingScheme>,
    /// Class counts to weight by instead of the evaluated gold labels,
    /// with a name for the config echo (e.g. a train-set counts file).
    pub external_counts: Option<(String, ClassCounts)>,
    /// Include the negative-class count in the entropy denominator.
    pub entropy_na_in_denominator: bool,
    /// Render scores scaled by 100.
    pub percent: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            beta: 1.0,
            include_na: false,
            schemes: default_schemes().to_vec(),
            external_counts: None,
            entropy_na_in_denominator: false,
            percent: false,
        }
    }
}

/// All five schemes in canonical report order.
pub fn default_schemes() -> [WeightingScheme; 5] {
    [
        WeightingScheme::Micro,
        WeightingScheme::ClassWeighted,
        WeightingScheme::Dodrans,
        WeightingScheme::Entropy,
        WeightingScheme::Macro,
    ]
}

/// The four schemes that define a weight vector (everything but micro).
pub fn weight_vector_schemes() -> [WeightingScheme; 4] {
    [
        WeightingScheme::ClassWeighted,
        WeightingScheme::Dodrans,
        WeightingScheme::Entropy,
        WeightingScheme::Macro,
    ]
}

/// Canonical ordering: instance-focused schemes first, class-focused last,
/// power-family entries after the named schemes by descending exponent.
fn scheme_rank(scheme: &WeightingScheme) -> (u8, i64) {
    match scheme {
        WeightingScheme::Micro => (0, 0),
        WeightingScheme::ClassWeighted => (1, 0),
        WeightingScheme::Dodrans => (2, 0),
        WeightingScheme::Entropy => (3, 0),
        WeightingScheme::Macro => (4, 0),
        WeightingScheme::Power(p) => (5, -(p * 1e9) as i64),
    }
}

fn canonical_schemes(schemes: &[WeightingScheme]) -> Vec<WeightingScheme> {
    let mut out: Vec<WeightingScheme> = Vec::new();
    for s in schemes {
        if !out.iter().any(|o| o.name() == s.name()) {
            out.push(*s);
        }
    }
    out.sort_by_key(scheme_rank);
    out
}

fn effective_include_na(run: &EvaluationRun, opts: &ReportOptions) -> bool {
    opts.include_na || run.na_label().is_none()
}

/// Configuration echoed into every classification report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportConfig {
    pub model_id: String,
    pub run_id: String,
    pub beta: f64,
    pub na_label: Option<String>,
    pub include_na: bool,
    pub weight_source: String,
    pub percent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerClassRow {
    pub class: String,
    pub support: u64,
    pub precision: f64,
    pub recall: f64,
    pub f_beta: f64,
    pub zero_division: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateRow {
    pub scheme: String,
    pub score: f64,
}

/// Per-class rows plus one aggregate score per scheme for a single run.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub config: ReportConfig,
    pub per_class: Vec<PerClassRow>,
    pub aggregates: Vec<AggregateRow>,
    pub warnings: Vec<String>,
}

/// Reports for several runs of one model, with per-scheme mean ± std when
/// more than one run is given.
#[derive(Debug, Clone, Serialize)]
pub struct ReportSet {
    pub reports: Vec<ClassificationReport>,
    pub summary: Vec<SchemeSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeSummary {
    pub scheme: String,
    pub mean: f64,
    /// Unbiased sample standard deviation over the run scores.
    pub std: f64,
}

struct SchemeScore {
    score: f64,
    warnings: Vec<String>,
}

/// Computes one scheme's aggregate for a run, in the raw [0, 1] scale.
fn scheme_score(
    run: &EvaluationRun,
    scheme: WeightingScheme,
    opts: &ReportOptions,
) -> Result<SchemeScore> {
    if let WeightingScheme::Micro = scheme {
        let include_na = effective_include_na(run, opts);
        let micro = micro_f(run, opts.beta, include_na)?;
        let warnings = if micro.zero_division {
            vec!["micro: no pooled counts (all samples negative); score reported as 0".into()]
        } else {
            vec![]
        };
        return Ok(SchemeScore {
            score: micro.value,
            warnings,
        });
    }

    let counts = match &opts.external_counts {
        Some((_, counts)) => counts.clone(),
        None => ClassCounts::from_gold(run)?,
    };
    let na_mass = if opts.entropy_na_in_denominator {
        run.na_label()
            .map(|na| run.pairs().iter().filter(|p| &p.gold == na).count() as u64)
            .unwrap_or(0)
    } else {
        0
    };

    let mut warnings = Vec::new();
    if let WeightingScheme::Entropy = scheme {
        let saturated = entropy_saturated_classes(&counts, na_mass);
        if !saturated.is_empty() {
            let names: Vec<&str> = saturated.iter().map(ClassLabel::as_str).collect();
            warnings.push(format!(
                "entropy: class(es) {} hold more than an e-th of the samples; \
                 entropy weights stop growing with class size in this regime",
                names.join(", ")
            ));
        }
    }

    let weights = class_weights_with_na_mass(&counts, scheme, na_mass)?;
    let metrics = per_class_metrics(&confusion_counts(run), opts.beta)?;
    let scores: BTreeMap<ClassLabel, f64> = metrics
        .iter()
        .map(|(c, m)| (c.clone(), m.f_beta))
        .collect();
    Ok(SchemeScore {
        score: aggregate_score(&scores, &weights)?,
        warnings,
    })
}

/// Builds the per-class and per-scheme report for one run.
pub fn classification_report(
    run: &EvaluationRun,
    opts: &ReportOptions,
) -> Result<ClassificationReport> {
    let schemes = canonical_schemes(&opts.schemes);
    let scale = if opts.percent { 100.0 } else { 1.0 };
    let metrics = per_class_metrics(&confusion_counts(run), opts.beta)?;

    let mut warnings = Vec::new();
    let per_class: Vec<PerClassRow> = metrics
        .iter()
        .map(|(class, m)| PerClassRow {
            class: class.as_str().to_owned(),
            support: m.support,
            precision: m.precision * scale,
            recall: m.recall * scale,
            f_beta: m.f_beta * scale,
            zero_division: m.zero_division,
        })
        .collect();
    for (class, m) in &metrics {
        if m.support == 0 && Some(class) != run.na_label() {
            warnings.push(format!(
                "class {} appears only in predictions; it gets no weight in class aggregates",
                class.as_str()
            ));
        }
    }

    let mut aggregates = Vec::new();
    for scheme in &schemes {
        let result = scheme_score(run, *scheme, opts)?;
        for w in result.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        aggregates.push(AggregateRow {
            scheme: scheme.name(),
            score: result.score * scale,
        });
    }

    Ok(ClassificationReport {
        config: ReportConfig {
            model_id: run.model_id().to_owned(),
            run_id: run.run_id().to_owned(),
            beta: opts.beta,
            na_label: run.na_label().map(|l| l.as_str().to_owned()),
            include_na: effective_include_na(run, opts),
            weight_source: opts
                .external_counts
                .as_ref()
                .map(|(name, _)| name.clone())
                .unwrap_or_else(|| "gold".into()),
            percent: opts.percent,
        },
        per_class,
        aggregates,
        warnings,
    })
}

/// Reports every run and, for more than one run, the per-scheme mean ± std.
pub fn report_set(runs: &[EvaluationRun], opts: &ReportOptions) -> Result<ReportSet> {
    if runs.is_empty() {
        return Err(Error::InconsistentInput("no runs to report".into()));
    }
    let reports: Vec<ClassificationReport> = runs
        .iter()
        .map(|r| classification_report(r, opts))
        .collect::<Result<_>>()?;

    let mut summary = Vec::new();
    if runs.len() > 1 {
        for (idx, agg) in reports[0].aggregates.iter().enumerate() {
            let scores: Vec<f64> = reports.iter().map(|r| r.aggregates[idx].score).collect();
            let group = RunGroup::new(reports[0].config.model_id.clone(), scores)?;
            summary.push(SchemeSummary {
                scheme: agg.scheme.clone(),
                mean: group.mean(),
                std: group.std_dev(),
            });
        }
    }
    Ok(ReportSet { reports, summary })
}

/// Configuration echoed into a comparison report.
#[derive(Debug, Clone, Serialize)]
pub struct CompareConfig {
    pub model_a: String,
    pub model_b: String,
    pub runs_a: usize,
    pub runs_b: usize,
    pub beta: f64,
    pub na_label: Option<String>,
    pub include_na: bool,
    pub weight_source: String,
    pub percent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub scheme: String,
    pub mean_a: f64,
    pub std_a: f64,
    pub mean_b: f64,
    pub std_b: f64,
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
    /// Omitted when the two groups have different run counts.
    pub cohens_d: Option<f64>,
    pub effect_label: Option<EffectSize>,
}

/// Per-scheme comparison of two models over repeated runs.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub config: CompareConfig,
    pub rows: Vec<ComparisonRow>,
    pub warnings: Vec<String>,
}

/// Scores every run of both models under every scheme, then tests the
/// per-scheme score samples against each other.
pub fn comparison_report(
    runs_a: &[EvaluationRun],
    runs_b: &[EvaluationRun],
    opts: &ReportOptions,
) -> Result<ComparisonReport> {
    if runs_a.len() < 2 || runs_b.len() < 2 {
        return Err(Error::TooFewRuns(runs_a.len().min(runs_b.len())));
    }
    let schemes = canonical_schemes(&opts.schemes);
    let scale = if opts.percent { 100.0 } else { 1.0 };
    let equal_counts = runs_a.len() == runs_b.len();

    let mut warnings = Vec::new();
    if !equal_counts {
        warnings.push(format!(
            "unequal run counts ({} vs {}): effect size omitted, Welch test still applies",
            runs_a.len(),
            runs_b.len()
        ));
    }

    let mut rows = Vec::new();
    for scheme in &schemes {
        let mut score_group = |runs: &[EvaluationRun]| -> Result<RunGroup> {
            let mut scores = Vec::with_capacity(runs.len());
            for run in runs {
                let s = scheme_score(run, *scheme, opts)?;
                for w in s.warnings {
                    if !warnings.contains(&w) {
                        warnings.push(w);
                    }
                }
                scores.push(s.score);
            }
            RunGroup::new(runs[0].model_id(), scores)
        };
        let group_a = score_group(runs_a)?;
        let group_b = score_group(runs_b)?;

        let welch = welch_t_test(&group_a, &group_b)?;
        let d = if equal_counts {
            Some(cohens_d(&group_a, &group_b)?)
        } else {
            None
        };
        rows.push(ComparisonRow {
            scheme: scheme.name(),
            mean_a: group_a.mean() * scale,
            std_a: group_a.std_dev() * scale,
            mean_b: group_b.mean() * scale,
            std_b: group_b.std_dev() * scale,
            t: welch.t,
            df: welch.df,
            p_value: welch.p_value,
            cohens_d: d,
            effect_label: d.map(effect_label),
        });
    }

    Ok(ComparisonReport {
        config: CompareConfig {
            model_a: runs_a[0].model_id().to_owned(),
            model_b: runs_b[0].model_id().to_owned(),
            runs_a: runs_a.len(),
            runs_b: runs_b.len(),
            beta: opts.beta,
            na_label: runs_a[0].na_label().map(|l| l.as_str().to_owned()),
            include_na: effective_include_na(&runs_a[0], opts),
            weight_source: opts
                .external_counts
                .as_ref()
                .map(|(name, _)| name.clone())
                .unwrap_or_else(|| "gold".into()),
            percent: opts.percent,
        },
        rows,
        warnings,
    })
}

/// Configuration echoed into a weight table.
#[derive(Debug, Clone, Serialize)]
pub struct WeightTableConfig {
    pub source: String,
    pub na_label: Option<String>,
    pub entropy_na_in_denominator: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightRow {
    pub class: String,
    pub count: u64,
    /// Parallel to the table's `schemes` list.
    pub weights: Vec<f64>,
}

/// Class-by-scheme matrix of normalized weights, classes sorted by
/// descending count. Suitable for external plotting.
#[derive(Debug, Clone, Serialize)]
pub struct WeightTable {
    pub config: WeightTableConfig,
    pub schemes: Vec<String>,
    pub rows: Vec<WeightRow>,
    pub warnings: Vec<String>,
}

/// Builds the weight table for the given schemes over positive-class
/// counts. The negative class never appears as a row; with
/// `entropy_na_in_denominator` its count still enters the entropy
/// proportions via `na_count`.
pub fn weight_table(
    counts: &ClassCounts,
    schemes: &[WeightingScheme],
    na_count: u64,
    source: &str,
    na_label: Option<&ClassLabel>,
) -> Result<WeightTable> {
    let schemes = canonical_schemes(schemes);
    let mut warnings = Vec::new();

    let mut vectors = Vec::new();
    for scheme in &schemes {
        if let WeightingScheme::Entropy = scheme {
            let saturated = entropy_saturated_classes(counts, na_count);
            if !saturated.is_empty() {
                let names: Vec<&str> = saturated.iter().map(ClassLabel::as_str).collect();
                warnings.push(format!(
                    "entropy: class(es) {} hold more than an e-th of the samples; \
                     entropy weights stop growing with class size in this regime",
                    names.join(", ")
                ));
            }
        }
        vectors.push(class_weights_with_na_mass(counts, *scheme, na_count)?);
    }

    let mut ordered: Vec<(&ClassLabel, u64)> = counts.iter().collect();
    ordered.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let rows = ordered
        .into_iter()
        .map(|(class, count)| WeightRow {
            class: class.as_str().to_owned(),
            count,
            weights: vectors
                .iter()
                .map(|v| v.get(class).expect("weight for every class"))
                .collect(),
        })
        .collect();

    Ok(WeightTable {
        config: WeightTableConfig {
            source: source.to_owned(),
            na_label: na_label.map(|l| l.as_str().to_owned()),
            entropy_na_in_denominator: na_count > 0,
        },
        schemes: schemes.iter().map(WeightingScheme::name).collect(),
        rows,
        warnings,
    })
}

/// Dataset diagnostics plus the split name they were computed on.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetStatsReport {
    pub split: String,
    pub na_label: Option<String>,
    pub n_classes: usize,
    pub n_samples: usize,
    pub pct_na: f64,
    pub perplexity_with_na: f64,
    pub perplexity_without_na: Option<f64>,
    pub ratio: Option<f64>,
}

impl DatasetStatsReport {
    pub fn new(stats: &DatasetStats, split: &str, na_label: Option<&ClassLabel>) -> Self {
        DatasetStatsReport {
            split: split.to_owned(),
            na_label: na_label.map(|l| l.as_str().to_owned()),
            n_classes: stats.n_classes,
            n_samples: stats.n_samples,
            pct_na: stats.pct_na,
            perplexity_with_na: stats.perplexity_with_na,
            perplexity_without_na: stats.perplexity_without_na,
            ratio: stats.ratio,
        }
    }
}

// ---------------------------------------------------------------------------
// rendering

fn fmt_score(v: f64) -> String {
    format!("{v:.4}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_score).unwrap_or_else(|| "undefined".into())
}

impl ClassificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        out.push_str(&format!("model: {}  run: {}\n", c.model_id, c.run_id));
        out.push_str(&format!(
            "beta: {}  na_label: {}  include_na: {}  weights: {}{}\n\n",
            c.beta,
            c.na_label.as_deref().unwrap_or("-"),
            c.include_na,
            c.weight_source,
            if c.percent { "  scale: percent" } else { "" },
        ));

        let width = self
            .per_class
            .iter()
            .map(|r| r.class.len())
            .chain(["class".len()])
            .max()
            .unwrap_or(5);
        out.push_str(&format!(
            "{:width$}  {:>8}  {:>9}  {:>9}  {:>9}\n",
            "class", "support", "precision", "recall", "f_beta"
        ));
        let mut any_zero_division = false;
        for row in &self.per_class {
            let marker = if row.zero_division {
                any_zero_division = true;
                " *"
            } else {
                ""
            };
            out.push_str(&format!(
                "{:width$}  {:>8}  {:>9}  {:>9}  {:>9}{marker}\n",
                row.class,
                row.support,
                fmt_score(row.precision),
                fmt_score(row.recall),
                fmt_score(row.f_beta),
            ));
        }
        if any_zero_division {
            out.push_str("(* no true positives, false positives or false negatives; score reported as 0)\n");
        }

        out.push('\n');
        out.push_str(&format!("{:10}  {:>9}\n", "scheme", "score"));
        for agg in &self.aggregates {
            out.push_str(&format!("{:10}  {:>9}\n", agg.scheme, fmt_score(agg.score)));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn csv_rows(&self, w: &mut csv::Writer<Vec<u8>>) -> Result<()> {
        for row in &self.per_class {
            let cells = [
                ("support", row.support.to_string()),
                ("precision", row.precision.to_string()),
                ("recall", row.recall.to_string()),
                ("f_beta", row.f_beta.to_string()),
                ("zero_division", row.zero_division.to_string()),
            ];
            for (metric, value) in cells {
                w.write_record([
                    "per_class",
                    &self.config.run_id,
                    &row.class,
                    "",
                    metric,
                    &value,
                ])?;
            }
        }
        for agg in &self.aggregates {
            w.write_record([
                "aggregate",
                &self.config.run_id,
                "",
                &agg.scheme,
                "score",
                &agg.score.to_string(),
            ])?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["record", "run_id", "class", "scheme", "metric", "value"])?;
        self.csv_rows(&mut w)?;
        csv_into_string(w)
    }
}

impl ReportSet {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for report in &self.reports {
            out.push_str(&report.to_text());
            out.push('\n');
        }
        if !self.summary.is_empty() {
            out.push_str(&format!(
                "per-scheme mean ± std over {} runs\n",
                self.reports.len()
            ));
            out.push_str(&format!("{:10}  {:>9}  {:>9}\n", "scheme", "mean", "std"));
            for s in &self.summary {
                out.push_str(&format!(
                    "{:10}  {:>9}  {:>9}\n",
                    s.scheme,
                    fmt_score(s.mean),
                    fmt_score(s.std)
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["record", "run_id", "class", "scheme", "metric", "value"])?;
        for report in &self.reports {
            report.csv_rows(&mut w)?;
        }
        for s in &self.summary {
            w.write_record(["summary", "", "", &s.scheme, "mean", &s.mean.to_string()])?;
            w.write_record(["summary", "", "", &s.scheme, "std", &s.std.to_string()])?;
        }
        csv_into_string(w)
    }
}

impl ComparisonReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        out.push_str(&format!(
            "{} ({} runs) vs {} ({} runs)\n",
            c.model_a, c.runs_a, c.model_b, c.runs_b
        ));
        out.push_str(&format!(
            "beta: {}  na_label: {}  include_na: {}  weights: {}{}\n\n",
            c.beta,
            c.na_label.as_deref().unwrap_or("-"),
            c.include_na,
            c.weight_source,
            if c.percent { "  scale: percent" } else { "" },
        ));
        out.push_str(&format!(
            "{:10}  {:>17}  {:>17}  {:>8}  {:>6}  {:>9}  {:>8}  {}\n",
            "scheme", c.model_a.as_str(), c.model_b.as_str(), "t", "df", "p_value", "d", "effect"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:10}  {:>8} ± {:>6}  {:>8} ± {:>6}  {:>8}  {:>6.1}  {:>9.3e}  {:>8}  {}\n",
                row.scheme,
                fmt_score(row.mean_a),
                fmt_score(row.std_a),
                fmt_score(row.mean_b),
                fmt_score(row.std_b),
                fmt_score(row.t),
                row.df,
                row.p_value,
                row.cohens_d.map(fmt_score).unwrap_or_else(|| "-".into()),
                row.effect_label
                    .map(|l| l.to_string())
                    .unwrap_or_else(|| "-".into()),
            ));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["scheme", "metric", "value"])?;
        for row in &self.rows {
            let mut cells: Vec<(&str, String)> = vec![
                ("mean_a", row.mean_a.to_string()),
                ("std_a", row.std_a.to_string()),
                ("mean_b", row.mean_b.to_string()),
                ("std_b", row.std_b.to_string()),
                ("t", row.t.to_string()),
                ("df", row.df.to_string()),
                ("p_value", row.p_value.to_string()),
            ];
            if let Some(d) = row.cohens_d {
                cells.push(("cohens_d", d.to_string()));
            }
            if let Some(label) = row.effect_label {
                cells.push(("effect_label", label.to_string()));
            }
            for (metric, value) in cells {
                w.write_record([&row.scheme, metric, &value])?;
            }
        }
        csv_into_string(w)
    }
}

impl WeightTable {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "weights from {}  na_label: {}  entropy_na_in_denominator: {}\n\n",
            self.config.source,
            self.config.na_label.as_deref().unwrap_or("-"),
            self.config.entropy_na_in_denominator,
        ));
        let width = self
            .rows
            .iter()
            .map(|r| r.class.len())
            .chain(["class".len()])
            .max()
            .unwrap_or(5);
        out.push_str(&format!("{:width$}  {:>10}", "class", "count"));
        for s in &self.schemes {
            out.push_str(&format!("  {s:>10}"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("{:width$}  {:>10}", row.class, row.count));
            for v in &row.weights {
                out.push_str(&format!("  {:>10}", fmt_score(*v)));
            }
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["class", "count", "scheme", "weight"])?;
        for row in &self.rows {
            for (scheme, weight) in self.schemes.iter().zip(&row.weights) {
                w.write_record([
                    row.class.as_str(),
                    &row.count.to_string(),
                    scheme,
                    &weight.to_string(),
                ])?;
            }
        }
        csv_into_string(w)
    }
}

impl DatasetStatsReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "split: {}  na_label: {}\n",
            self.split,
            self.na_label.as_deref().unwrap_or("-")
        ));
        out.push_str(&format!("classes:               {}\n", self.n_classes));
        out.push_str(&format!("samples:               {}\n", self.n_samples));
        out.push_str(&format!("pct_na:                {:.1}\n", self.pct_na));
        out.push_str(&format!(
            "perplexity_with_na:    {}\n",
            fmt_score(self.perplexity_with_na)
        ));
        out.push_str(&format!(
            "perplexity_without_na: {}\n",
            fmt_opt(self.perplexity_without_na)
        ));
        out.push_str(&format!("ratio:                 {}\n", fmt_opt(self.ratio)));
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["metric", "value"])?;
        w.write_record(["split", &self.split])?;
        w.write_record(["n_classes", &self.n_classes.to_string()])?;
        w.write_record(["n_samples", &self.n_samples.to_string()])?;
        w.write_record(["pct_na", &self.pct_na.to_string()])?;
        w.write_record(["perplexity_with_na", &self.perplexity_with_na.to_string()])?;
        w.write_record([
            "perplexity_without_na",
            &self
                .perplexity_without_na
                .map(|v| v.to_string())
                .unwrap_or_else(|| "undefined".into()),
        ])?;
        w.write_record([
            "ratio",
            &self
                .ratio
                .map(|v| v.to_string())
                .unwrap_or_else(|| "undefined".into()),
        ])?;
        csv_into_string(w)
    }
}

fn csv_into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InconsistentInput(format!("csv writer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InconsistentInput(format!("csv utf-8: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_run() -> EvaluationRun {
        EvaluationRun::from_labels(
            &["A", "A", "A", "B"],
            &["A", "A", "B", "B"],
            None,
            "demo",
            "run1",
        )
        .unwrap()
    }

    fn aggregate(report: &ClassificationReport, scheme: &str) -> f64 {
        report
            .aggregates
            .iter()
            .find(|a| a.scheme == scheme)
            .unwrap_or_else(|| panic!("missing scheme {scheme}"))
            .score
    }

    fn opts_with(schemes: Vec<WeightingScheme>) -> ReportOptions {
        ReportOptions {
            schemes,
            ..Default::default()
        }
    }

    #[test]
    fn fixture_aggregates_hand_checked() {
        let report = classification_report(&fixture_run(), &ReportOptions::default()).unwrap();
        assert!((aggregate(&report, "micro") - 0.75).abs() < 1e-12);
        assert!((aggregate(&report, "weighted") - 0.766_666_666_666_666_7).abs() < 1e-12);
        assert!((aggregate(&report, "dodrans") - 0.759_343_483_329_125_3).abs() < 1e-12);
        assert!((aggregate(&report, "entropy") - 0.717_825_139_546_179_2).abs() < 1e-12);
        assert!((aggregate(&report, "macro") - 0.733_333_333_333_333_4).abs() < 1e-12);
    }

    #[test]
    fn fixture_triggers_entropy_saturation_warning() {
        let report = classification_report(&fixture_run(), &ReportOptions::default()).unwrap();
        assert!(report.warnings.iter().any(|w| w.contains("entropy") && w.contains('A')));
    }

    #[test]
    fn macro_aggregate_is_mean_of_class_scores() {
        let report = classification_report(&fixture_run(), &ReportOptions::default()).unwrap();
        let mean: f64 = report.per_class.iter().map(|r| r.f_beta).sum::<f64>()
            / report.per_class.len() as f64;
        assert!((aggregate(&report, "macro") - mean).abs() < 1e-12);
    }

    #[test]
    fn perfect_run_scores_one_everywhere() {
        let run = EvaluationRun::from_labels(
            &["A", "B", "C"],
            &["A", "B", "C"],
            None,
            "m",
            "r",
        )
        .unwrap();
        let report = classification_report(&run, &ReportOptions::default()).unwrap();
        for agg in &report.aggregates {
            assert!((agg.score - 1.0).abs() < 1e-12, "{}", agg.scheme);
        }
    }

    #[test]
    fn aggregates_stay_in_unit_interval() {
        let run = EvaluationRun::from_labels(
            &["A", "A", "B", "NA", "C"],
            &["B", "A", "B", "C", "NA"],
            Some("NA"),
            "m",
            "r",
        )
        .unwrap();
        let report = classification_report(&run, &ReportOptions::default()).unwrap();
        for agg in &report.aggregates {
            assert!((0.0..=1.0).contains(&agg.score), "{}: {}", agg.scheme, agg.score);
        }
    }

    #[test]
    fn prediction_only_class_is_flagged() {
        let run =
            EvaluationRun::from_labels(&["A", "A"], &["A", "X"], None, "m", "r").unwrap();
        let opts = opts_with(vec![WeightingScheme::Micro, WeightingScheme::Macro]);
        let report = classification_report(&run, &opts).unwrap();
        assert!(report
            .warnings
            .iter()
            .any(|w| w.contains('X') && w.contains("only in predictions")));
        // X contributes no weight: macro is the mean over {A} only
        let a_score = report.per_class.iter().find(|r| r.class == "A").unwrap().f_beta;
        assert!((aggregate(&report, "macro") - a_score).abs() < 1e-12);
    }

    #[test]
    fn percent_scales_scores_only() {
        let opts = ReportOptions {
            percent: true,
            ..Default::default()
        };
        let report = classification_report(&fixture_run(), &opts).unwrap();
        assert!((aggregate(&report, "micro") - 75.0).abs() < 1e-9);
    }

    #[test]
    fn schemes_render_in_canonical_order() {
        let opts = opts_with(vec![
            WeightingScheme::Macro,
            WeightingScheme::Micro,
            WeightingScheme::Entropy,
            WeightingScheme::ClassWeighted,
            WeightingScheme::Dodrans,
        ]);
        let report = classification_report(&fixture_run(), &opts).unwrap();
        let names: Vec<&str> = report.aggregates.iter().map(|a| a.scheme.as_str()).collect();
        assert_eq!(names, ["micro", "weighted", "dodrans", "entropy", "macro"]);
    }

    #[test]
    fn external_counts_change_the_weighting() {
        let counts = ClassCounts::new(
            [(ClassLabel::new("A").unwrap(), 1), (ClassLabel::new("B").unwrap(), 3)]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let opts = ReportOptions {
            schemes: vec![WeightingScheme::ClassWeighted],
            external_counts: Some(("train".into(), counts)),
            ..Default::default()
        };
        let report = classification_report(&fixture_run(), &opts).unwrap();
        // 0.25·0.8 + 0.75·(2/3)
        assert!((aggregate(&report, "weighted") - 0.7).abs() < 1e-12);
        assert_eq!(report.config.weight_source, "train");
    }

    #[test]
    fn report_set_summary_uses_sample_std() {
        let runs = vec![
            EvaluationRun::from_labels(&["A", "A"], &["A", "A"], None, "m", "r1").unwrap(),
            EvaluationRun::from_labels(&["A", "A"], &["A", "B"], None, "m", "r2").unwrap(),
        ];
        let opts = opts_with(vec![WeightingScheme::Micro]);
        let set = report_set(&runs, &opts).unwrap();
        let micro = &set.summary[0];
        assert!((micro.mean - 0.75).abs() < 1e-12);
        // sample std of {1.0, 0.5}
        assert!((micro.std - (0.125f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn comparison_with_unequal_runs_drops_effect_size() {
        let make = |id: &str, n: usize, acc_num: usize| -> Vec<EvaluationRun> {
            (0..n)
                .map(|i| {
                    let gold = vec!["A"; 10];
                    let mut pred = vec!["A"; 10];
                    for slot in pred.iter_mut().take(10 - acc_num - (i % 2)) {
                        *slot = "B";
                    }
                    EvaluationRun::from_labels(&gold, &pred, None, id, &format!("r{i}")).unwrap()
                })
                .collect()
        };
        let a = make("a", 3, 7);
        let b = make("b", 5, 4);
        let opts = opts_with(vec![WeightingScheme::Micro]);
        let report = comparison_report(&a, &b, &opts).unwrap();
        assert!(report.rows[0].cohens_d.is_none());
        assert!(report.warnings.iter().any(|w| w.contains("unequal run counts")));
        assert!(report.rows[0].p_value > 0.0);
    }

    #[test]
    fn identical_groups_compare_as_negligible() {
        // distinct per-run accuracies: a shared, non-constant score sample
        let runs: Vec<EvaluationRun> = (0..3)
            .map(|i| {
                let gold = vec!["A", "A", "B", "B"];
                let pred = if i == 0 {
                    vec!["A", "A", "B", "B"]
                } else if i == 1 {
                    vec!["B", "B", "B", "A"]
                } else {
                    vec!["A", "A", "B", "A"]
                };
                EvaluationRun::from_labels(&gold, &pred, None, "m", &format!("r{i}")).unwrap()
            })
            .collect();
        let opts = opts_with(vec![WeightingScheme::Micro]);
        let report = comparison_report(&runs, &runs, &opts).unwrap();
        assert_eq!(report.rows[0].cohens_d, Some(0.0));
        assert_eq!(report.rows[0].p_value, 1.0);
        assert_eq!(report.rows[0].effect_label, Some(EffectSize::Negligible));
    }

    #[test]
    fn weight_table_sorted_by_descending_count() {
        let counts = ClassCounts::new(
            [
                (ClassLabel::new("small").unwrap(), 1),
                (ClassLabel::new("big").unwrap(), 100),
                (ClassLabel::new("mid").unwrap(), 10),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let table =
            weight_table(&counts, &weight_vector_schemes(), 0, "counts", None).unwrap();
        let order: Vec<&str> = table.rows.iter().map(|r| r.class.as_str()).collect();
        assert_eq!(order, ["big", "mid", "small"]);
        assert_eq!(table.schemes, ["weighted", "dodrans", "entropy", "macro"]);
        // every column is normalized
        for (idx, _) in table.schemes.iter().enumerate() {
            let sum: f64 = table.rows.iter().map(|r| r.weights[idx]).sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn json_round_trips_full_precision() {
        let report = classification_report(&fixture_run(), &ReportOptions::default()).unwrap();
        let json = report.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        for agg in &report.aggregates {
            let parsed = value["aggregates"]
                .as_array()
                .unwrap()
                .iter()
                .find(|v| v["scheme"] == agg.scheme.as_str())
                .unwrap()["score"]
                .as_f64()
                .unwrap();
            assert_eq!(parsed, agg.score, "{}", agg.scheme);
        }
    }

    #[test]
    fn text_and_machine_formats_agree_at_four_decimals() {
        let report = classification_report(&fixture_run(), &ReportOptions::default()).unwrap();
        let text = report.to_text();
        let csv = report.to_csv().unwrap();
        for agg in &report.aggregates {
            let rounded = format!("{:.4}", agg.score);
            assert!(text.contains(&rounded), "text missing {} {}", agg.scheme, rounded);
            let full = agg.score.to_string();
            assert!(csv.contains(&full), "csv missing {} {}", agg.scheme, full);
        }
    }
}
