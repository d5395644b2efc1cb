//! Audit each weighting scheme against the degressive-proportionality
//! rules: weights sum to one, larger classes never get smaller weights,
//! and weight-per-sample never grows with class size.
//!
//! ```bash
//! cargo run --example desiderata_check
//! ```

use skewscore::{class_weights, validate_desiderata, ClassCounts, ClassLabel, Result, WeightingScheme};

fn main() -> Result<()> {
    let counts = ClassCounts::new(
        [("A", 100u64), ("B", 10), ("C", 1)]
            .into_iter()
            .map(|(c, n)| Ok((ClassLabel::new(c)?, n)))
            .collect::<Result<_>>()?,
    )?;

    println!("counts: A=100, B=10, C=1\n");
    println!(
        "{:10}  {:>10}  {:>15}  {:>12}",
        "scheme", "sum-to-one", "count-monotone", "degressive"
    );
    for scheme in [
        WeightingScheme::ClassWeighted,
        WeightingScheme::Dodrans,
        WeightingScheme::Entropy,
        WeightingScheme::Macro,
        WeightingScheme::Power(0.5),
    ] {
        let weights = class_weights(&counts, scheme)?;
        let report = validate_desiderata(&counts, &weights)?;
        let mark = |passed: bool| if passed { "pass" } else { "FAIL" };
        println!(
            "{:10}  {:>10}  {:>15}  {:>12}",
            scheme.name(),
            mark(report.sum_to_one.passed),
            mark(report.count_monotone.passed),
            mark(report.degressive.passed),
        );
        for (bigger, smaller) in &report.count_monotone.witnesses {
            println!(
                "            -> {bigger} outweighed by {smaller} despite having more samples"
            );
        }
    }

    println!();
    println!("Entropy weighting deliberately stops rewarding class growth once a");
    println!("class holds more than an e-th (~36.8%) of the samples: A has 90% of");
    println!("the mass here, so B ends up with the largest weight.");
    Ok(())
}
