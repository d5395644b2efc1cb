//! Labels, label pairs and evaluation runs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A class label. Comparison is exact, case-sensitive string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassLabel(String);

impl ClassLabel {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(ClassLabel(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassLabel::new(s)
    }
}

/// One evaluated sample: the gold label and the predicted label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPair {
    pub gold: ClassLabel,
    pub predicted: ClassLabel,
}

impl LabeledPair {
    pub fn new(gold: ClassLabel, predicted: ClassLabel) -> Self {
        LabeledPair { gold, predicted }
    }
}

/// One model run: an ordered sequence of gold/predicted pairs plus the
/// designation of the negative class, if any.
///
/// The negative class ("no relation holds") is called differently across
/// datasets (`no_relation`, `NA`, `Other`); it is supplied per run rather
/// than read from data files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationRun {
    pairs: Vec<LabeledPair>,
    na_label: Option<ClassLabel>,
    model_id: String,
    run_id: String,
}

impl EvaluationRun {
    /// Builds a run. Fails on an empty pair sequence.
    pub fn new(
        pairs: Vec<LabeledPair>,
        na_label: Option<ClassLabel>,
        model_id: impl Into<String>,
        run_id: impl Into<String>,
    ) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyRun);
        }
        Ok(EvaluationRun {
            pairs,
            na_label,
            model_id: model_id.into(),
            run_id: run_id.into(),
        })
    }

    /// Convenience constructor from parallel gold/predicted string slices.
    pub fn from_labels<S: AsRef<str>>(
        gold: &[S],
        predicted: &[S],
        na_label: Option<&str>,
        model_id: &str,
        run_id: &str,
    ) -> Result<Self> {
        if gold.len() != predicted.len() {
            return Err(Error::InconsistentInput(format!(
                "gold and predicted label sequences differ in length ({} vs {})",
                gold.len(),
                predicted.len()
            )));
        }
        let pairs = gold
            .iter()
            .zip(predicted.iter())
            .map(|(g, p)| {
                Ok(LabeledPair::new(
                    ClassLabel::new(g.as_ref())?,
                    ClassLabel::new(p.as_ref())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let na_label = na_label.map(ClassLabel::new).transpose()?;
        EvaluationRun::new(pairs, na_label, model_id, run_id)
    }

    pub fn pairs(&self) -> &[LabeledPair] {
        &self.pairs
    }

    pub fn na_label(&self) -> Option<&ClassLabel> {
        self.na_label.as_ref()
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn run_id(&self) -> &str {
        &self.run_id
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    /// All labels occurring in gold or predicted position.
    pub fn label_universe(&self) -> BTreeSet<ClassLabel> {
        self.pairs
            .iter()
            .flat_map(|p| [p.gold.clone(), p.predicted.clone()])
            .collect()
    }

    /// Checks every gold and predicted label against an allowed label list.
    pub fn check_label_universe<'a, I>(&self, allowed: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a ClassLabel>,
    {
        let allowed: BTreeSet<&ClassLabel> = allowed.into_iter().collect();
        for pair in &self.pairs {
            for label in [&pair.gold, &pair.predicted] {
                if !allowed.contains(label) {
                    return Err(Error::UnknownLabel {
                        label: label.as_str().to_owned(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Fraction of pairs with gold equal to predicted.
    pub fn accuracy(&self) -> f64 {
        let correct = self
            .pairs
            .iter()
            .filter(|p| p.gold == p.predicted)
            .count();
        correct as f64 / self.pairs.len() as f64
    }
}
