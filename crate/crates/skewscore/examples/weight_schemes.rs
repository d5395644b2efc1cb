//! Normalized per-class weights under each scheme for a skewed class
//! distribution, as a plot-ready table.
//!
//! ```bash
//! cargo run --example weight_schemes
//! ```

use skewscore::report::{weight_table, weight_vector_schemes};
use skewscore::{ClassCounts, ClassLabel, Result};

fn main() -> Result<()> {
    // long-tailed counts, roughly log-spaced
    let counts = ClassCounts::new(
        [
            ("org:member_of", 1200),
            ("per:employee_of", 460),
            ("org:founded_by", 160),
            ("per:title", 55),
            ("per:spouse", 18),
            ("org:dissolved", 5),
            ("per:charges", 1),
        ]
        .into_iter()
        .map(|(c, n)| Ok((ClassLabel::new(c)?, n)))
        .collect::<Result<_>>()?,
    )?;

    let table = weight_table(&counts, &weight_vector_schemes(), 0, "example counts", None)?;
    print!("{}", table.to_text());

    println!();
    println!("Weighted mirrors the raw counts; dodrans and entropy sit between");
    println!("weighted and macro, giving the tail classes a real say without");
    println!("ignoring frequency. CSV output for plotting:");
    println!();
    print!("{}", table.to_csv()?);
    Ok(())
}
