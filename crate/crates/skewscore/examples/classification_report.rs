//! Score one run under all five weighting schemes.
//!
//! ```bash
//! cargo run --example classification_report
//! ```

use skewscore::{classification_report, EvaluationRun, ReportOptions, Result};

fn main() -> Result<()> {
    // gold/predicted label pairs of a single evaluation run; the negative
    // class is "NA" and is excluded from micro scoring by default
    let gold = [
        "org:founded_by", "org:founded_by", "org:founded_by", "org:founded_by",
        "per:title", "per:title", "NA", "NA", "NA", "NA",
    ];
    let predicted = [
        "org:founded_by", "org:founded_by", "org:founded_by", "per:title",
        "per:title", "NA", "NA", "NA", "NA", "per:title",
    ];
    let run = EvaluationRun::from_labels(&gold, &predicted, Some("NA"), "demo-model", "run-1")?;

    let report = classification_report(&run, &ReportOptions::default())?;
    print!("{}", report.to_text());

    // the same report as machine-readable JSON
    println!("\n--- JSON ---\n{}", report.to_json()?);
    Ok(())
}
