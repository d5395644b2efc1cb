//! Command-line front end.
//!
//! Four subcommands: `report` (per-run classification reports across
//! schemes), `compare` (two models over repeated runs), `weights`
//! (class-by-scheme weight table) and `dataset-stats` (imbalance
//! diagnostics). Reports go to stdout, errors to stderr; the process exits
//! nonzero on any error.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::dataset_stats;
use crate::error::{Error, Result};
use crate::io::{load_counts, load_labels, load_run, RunFileDescriptor};
use crate::report::{
    classification_report, comparison_report, report_set, weight_table, weight_vector_schemes,
    DatasetStatsReport, ReportOptions,
};
use crate::run::{ClassLabel, EvaluationRun};
use crate::weighting::{ClassCounts, WeightingScheme};

#[derive(Debug, Parser)]
#[command(
    name = "skewscore",
    version,
    about = "Evaluate multi-class predictions on imbalanced datasets under several class-weighting schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classification report(s) for one model's run file(s)
    Report(ReportArgs),
    /// Compare two models' run groups per scheme (Welch test + effect size)
    Compare(CompareArgs),
    /// Normalized per-class weights per scheme, for external plotting
    Weights(WeightsArgs),
    /// Imbalance diagnostics of a label file
    DatasetStats(DatasetStatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Scheme name on the command line: one of the five named schemes or
/// `power:<p>` with `p` in [0, 1].
#[derive(Debug, Clone, Copy)]
struct SchemeArg(WeightingScheme);

impl FromStr for SchemeArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let scheme = match s {
            "micro" => WeightingScheme::Micro,
            "weighted" | "class-weighted" => WeightingScheme::ClassWeighted,
            "dodrans" => WeightingScheme::Dodrans,
            "entropy" => WeightingScheme::Entropy,
            "macro" => WeightingScheme::Macro,
            other => match other.strip_prefix("power:") {
                Some(p) => {
                    let p: f64 = p
                        .parse()
                        .map_err(|_| format!("bad power exponent in {other:?}"))?;
                    if !(0.0..=1.0).contains(&p) {
                        return Err(format!("power exponent must lie in [0, 1], got {p}"));
                    }
                    WeightingScheme::Power(p)
                }
                None => {
                    return Err(format!(
                        "unknown scheme {other:?} (expected micro, weighted, dodrans, entropy, macro or power:<p>)"
                    ))
                }
            },
        };
        Ok(SchemeArg(scheme))
    }
}

#[derive(Debug, Args)]
struct CommonScoreArgs {
    /// Label of the negative class (e.g. no_relation, NA, Other)
    #[arg(long)]
    na_label: Option<String>,

    /// F-score trade-off coefficient
    #[arg(long, default_value_t = 1.0)]
    beta: f64,

    /// Schemes to report (comma-separated; default: all five)
    #[arg(long, value_delimiter = ',')]
    schemes: Vec<SchemeArg>,

    /// Pool the negative class into micro scoring (micro-F1 = accuracy at beta 1)
    #[arg(long)]
    include_na: bool,

    /// Weight classes by external counts (<label>\t<count> per line)
    /// instead of the evaluated gold labels
    #[arg(long, value_name = "FILE")]
    counts_from: Option<PathBuf>,

    /// Include the negative-class count in the entropy denominator
    #[arg(long)]
    entropy_na_denominator: bool,

    /// Report scores scaled by 100
    #[arg(long)]
    percent: bool,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

impl CommonScoreArgs {
    fn na_label(&self) -> Result<Option<ClassLabel>> {
        self.na_label.as_deref().map(ClassLabel::new).transpose()
    }

    fn report_options(&self, default_schemes: &[WeightingScheme]) -> Result<ReportOptions> {
        let schemes = if self.schemes.is_empty() {
            default_schemes.to_vec()
        } else {
            self.schemes.iter().map(|s| s.0).collect()
        };
        let external_counts = self
            .counts_from
            .as_ref()
            .map(|path| Ok::<_, Error>((path.display().to_string(), load_counts(path)?)))
            .transpose()?;
        Ok(ReportOptions {
            beta: self.beta,
            include_na: self.include_na,
            schemes,
            external_counts,
            entropy_na_in_denominator: self.entropy_na_denominator,
            percent: self.percent,
        })
    }
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Prediction file(s): one run per file, TSV (<gold>\t<pred>) or JSONL
    /// ({"gold": ..., "pred": ...})
    #[arg(required = true, value_name = "RUN_FILE")]
    runs: Vec<PathBuf>,

    /// Model identifier echoed into the report
    #[arg(long, default_value = "model")]
    model_id: String,

    #[command(flatten)]
    common: CommonScoreArgs,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Run file(s) of the first model (repeatable)
    #[arg(short = 'a', long = "a", required = true, value_name = "RUN_FILE")]
    group_a: Vec<PathBuf>,

    /// Run file(s) of the second model (repeatable)
    #[arg(short = 'b', long = "b", required = true, value_name = "RUN_FILE")]
    group_b: Vec<PathBuf>,

    /// Name of the first model
    #[arg(long, default_value = "model_a")]
    a_name: String,

    /// Name of the second model
    #[arg(long, default_value = "model_b")]
    b_name: String,

    #[command(flatten)]
    common: CommonScoreArgs,
}

#[derive(Debug, Args)]
struct WeightsArgs {
    /// Counts file (<label>\t<count> per line), or a label file with --from-labels
    #[arg(value_name = "FILE")]
    input: PathBuf,

    /// Treat the input as a label file (one label per line) and tally it
    #[arg(long)]
    from_labels: bool,

    #[command(flatten)]
    common: CommonScoreArgs,
}

#[derive(Debug, Args)]
struct DatasetStatsArgs {
    /// Label file: one gold label per line
    #[arg(value_name = "LABEL_FILE")]
    labels: PathBuf,

    /// Name of the split the labels come from (echoed into the output)
    #[arg(long)]
    split: String,

    /// Label of the negative class
    #[arg(long)]
    na_label: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

fn run_descriptors(paths: &[PathBuf], model_id: &str) -> Vec<RunFileDescriptor> {
    paths
        .iter()
        .map(|path| {
            let run_id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            RunFileDescriptor::new(path, model_id, run_id)
        })
        .collect()
}

fn emit(out: &mut impl Write, format: OutputFormat, text: String, json: String, csv: String) -> Result<()> {
    let rendered = match format {
        OutputFormat::Text => text,
        OutputFormat::Json => json,
        OutputFormat::Csv => csv,
    };
    out.write_all(rendered.as_bytes())?;
    if !rendered.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn cmd_report(args: &ReportArgs, out: &mut impl Write) -> Result<()> {
    let na = args.common.na_label()?;
    let opts = args.common.report_options(&crate::report::default_schemes())?;
    let runs: Vec<EvaluationRun> = run_descriptors(&args.runs, &args.model_id)
        .iter()
        .map(|d| load_run(d, na.as_ref()))
        .collect::<Result<_>>()?;
    if runs.len() == 1 {
        let report = classification_report(&runs[0], &opts)?;
        emit(out, args.common.format, report.to_text(), report.to_json()?, report.to_csv()?)
    } else {
        let set = report_set(&runs, &opts)?;
        emit(out, args.common.format, set.to_text(), set.to_json()?, set.to_csv()?)
    }
}

fn cmd_compare(args: &CompareArgs, out: &mut impl Write) -> Result<()> {
    let na = args.common.na_label()?;
    let opts = args.common.report_options(&crate::report::default_schemes())?;
    let load_group = |paths: &[PathBuf], name: &str| -> Result<Vec<EvaluationRun>> {
        run_descriptors(paths, name)
            .iter()
            .map(|d| load_run(d, na.as_ref()))
            .collect()
    };
    let runs_a = load_group(&args.group_a, &args.a_name)?;
    let runs_b = load_group(&args.group_b, &args.b_name)?;
    let report = comparison_report(&runs_a, &runs_b, &opts)?;
    emit(out, args.common.format, report.to_text(), report.to_json()?, report.to_csv()?)
}

fn cmd_weights(args: &WeightsArgs, out: &mut impl Write) -> Result<()> {
    let na = args.common.na_label()?;
    let schemes: Vec<WeightingScheme> = if args.common.schemes.is_empty() {
        weight_vector_schemes().to_vec()
    } else {
        args.common.schemes.iter().map(|s| s.0).collect()
    };

    let (counts, na_count) = if args.from_labels {
        let labels = load_labels(&args.input)?;
        let na_count = na
            .as_ref()
            .map(|n| labels.iter().filter(|l| *l == n).count() as u64)
            .unwrap_or(0);
        (ClassCounts::from_labels(labels.iter(), na.as_ref())?, na_count)
    } else {
        let mut counts = load_counts(&args.input)?;
        // the negative class never gets a weight row; pull it out of the table
        let mut na_count = 0;
        if let Some(na) = &na {
            if let Some(n) = counts.get(na) {
                na_count = n;
                let remaining = counts
                    .iter()
                    .filter(|(c, _)| *c != na)
                    .map(|(c, n)| (c.clone(), n))
                    .collect();
                counts = ClassCounts::new(remaining)?;
            }
        }
        (counts, na_count)
    };

    let na_mass = if args.common.entropy_na_denominator {
        na_count
    } else {
        0
    };
    let table = weight_table(
        &counts,
        &schemes,
        na_mass,
        &args.input.display().to_string(),
        na.as_ref(),
    )?;
    emit(out, args.common.format, table.to_text(), table.to_json()?, table.to_csv()?)
}

fn cmd_dataset_stats(args: &DatasetStatsArgs, out: &mut impl Write) -> Result<()> {
    let na = args.na_label.as_deref().map(ClassLabel::new).transpose()?;
    let labels = load_labels(&args.labels)?;
    let stats = dataset_stats(&labels, na.as_ref())?;
    let report = DatasetStatsReport::new(&stats, &args.split, na.as_ref());
    emit(out, args.format, report.to_text(), report.to_json()?, report.to_csv()?)
}

/// Runs a parsed command, writing the report to `out`.
pub fn execute(cli: &Cli, out: &mut impl Write) -> Result<()> {
    match &cli.command {
        Command::Report(args) => cmd_report(args, out),
        Command::Compare(args) => cmd_compare(args, out),
        Command::Weights(args) => cmd_weights(args, out),
        Command::DatasetStats(args) => cmd_dataset_stats(args, out),
    }
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
