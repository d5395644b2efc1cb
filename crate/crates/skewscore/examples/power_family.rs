//! The `n^p` power family interpolates between macro (p = 0) and
//! class-weighted (p = 1) weighting, with dodrans at p = 3/4.
//!
//! ```bash
//! cargo run --example power_family
//! ```

use skewscore::{
    aggregate_score, class_weights, ClassCounts, ClassLabel, Result, WeightingScheme,
};

fn main() -> Result<()> {
    let counts = ClassCounts::new(
        [("head", 900u64), ("body", 90), ("tail", 9)]
            .into_iter()
            .map(|(c, n)| Ok((ClassLabel::new(c)?, n)))
            .collect::<Result<_>>()?,
    )?;
    // a model that is strong on the head class and weak on the tail
    let scores = [("head", 0.95), ("body", 0.70), ("tail", 0.30)]
        .into_iter()
        .map(|(c, s)| Ok((ClassLabel::new(c)?, s)))
        .collect::<Result<_>>()?;

    println!("counts: head=900, body=90, tail=9");
    println!("scores: head=0.95, body=0.70, tail=0.30\n");
    println!("{:>5}  {:>8}  {:>8}  {:>8}  {:>9}", "p", "w_head", "w_body", "w_tail", "aggregate");
    for step in 0..=10 {
        let p = step as f64 / 10.0;
        let weights = class_weights(&counts, WeightingScheme::Power(p))?;
        let aggregate = aggregate_score(&scores, &weights)?;
        println!(
            "{p:>5.2}  {:>8.4}  {:>8.4}  {:>8.4}  {aggregate:>9.4}",
            weights.get(&ClassLabel::new("head")?).unwrap(),
            weights.get(&ClassLabel::new("body")?).unwrap(),
            weights.get(&ClassLabel::new("tail")?).unwrap(),
        );
    }

    println!();
    println!("Sliding p from 1 to 0 moves the aggregate from the head-dominated");
    println!("class-weighted score towards the equal-weight macro score.");
    Ok(())
}
