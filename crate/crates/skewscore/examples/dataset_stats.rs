//! Imbalance diagnostics of a label distribution: class perplexity with
//! and without the negative class, the most/least-frequent positive-class
//! ratio, and the negative-class share.
//!
//! ```bash
//! cargo run --example dataset_stats
//! ```

use skewscore::report::DatasetStatsReport;
use skewscore::{dataset_stats, ClassLabel, Result};

fn main() -> Result<()> {
    // 80% negative samples, a dominant positive class and a long tail
    let mut labels: Vec<ClassLabel> = Vec::new();
    for (name, count) in [("NA", 800), ("per:title", 120), ("org:founded_by", 60), ("per:spouse", 18), ("per:charges", 2)] {
        labels.extend(std::iter::repeat_n(ClassLabel::new(name)?, count));
    }

    let na = ClassLabel::new("NA")?;
    let stats = dataset_stats(&labels, Some(&na))?;
    let report = DatasetStatsReport::new(&stats, "synthetic-test", Some(&na));
    print!("{}", report.to_text());

    println!();
    println!("A perplexity far below the positive-class count ({} classes here)",
        stats.n_classes - 1);
    println!("means the distribution is effectively carried by a few classes;");
    println!("single-number scores will mostly reflect those.");
    Ok(())
}
