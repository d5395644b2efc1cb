//! Loading prediction files and run groups from disk.
//!
//! Two wire formats, both one record per line, UTF-8, LF or CRLF:
//!
//! * TSV: `<gold>\t<pred>` with no header row
//! * JSONL: `{"gold": "...", "pred": "..."}`

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::run::{ClassLabel, EvaluationRun, LabeledPair};
use crate::stattest::RunGroup;
use crate::weighting::ClassCounts;

/// Run-file wire format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunFormat {
    Tsv,
    Jsonl,
}

impl RunFormat {
    /// Infers the format from a file extension.
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("tsv") => Ok(RunFormat::Tsv),
            Some("jsonl") => Ok(RunFormat::Jsonl),
            _ => Err(Error::UnknownFormat {
                path: path.to_owned(),
            }),
        }
    }
}

/// Where to find one run and how to label it.
#[derive(Debug, Clone)]
pub struct RunFileDescriptor {
    pub path: PathBuf,
    /// `None` means: infer from the extension at load time.
    pub format: Option<RunFormat>,
    pub model_id: String,
    pub run_id: String,
}

impl RunFileDescriptor {
    pub fn new(path: impl Into<PathBuf>, model_id: impl Into<String>, run_id: impl Into<String>) -> Self {
        RunFileDescriptor {
            path: path.into(),
            format: None,
            model_id: model_id.into(),
            run_id: run_id.into(),
        }
    }

    pub fn with_format(mut self, format: RunFormat) -> Self {
        self.format = Some(format);
        self
    }

    fn effective_format(&self) -> Result<RunFormat> {
        match self.format {
            Some(f) => Ok(f),
            None => RunFormat::from_path(&self.path),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonlRecord {
    gold: String,
    pred: String,
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Loads one run file into an [`EvaluationRun`]. Line order is preserved;
/// malformed lines are reported with their 1-based line number.
pub fn load_run(desc: &RunFileDescriptor, na_label: Option<&ClassLabel>) -> Result<EvaluationRun> {
    let format = desc.effective_format()?;
    let text = fs::read_to_string(&desc.path)?;
    let mut pairs = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let (gold, pred) = match format {
            RunFormat::Tsv => {
                let mut fields = line.split('\t');
                let gold = fields.next().unwrap_or("");
                let pred = fields.next().ok_or_else(|| {
                    parse_error(&desc.path, line_no, "expected two tab-separated columns")
                })?;
                if fields.next().is_some() {
                    return Err(parse_error(
                        &desc.path,
                        line_no,
                        "expected exactly two tab-separated columns",
                    ));
                }
                (gold.to_owned(), pred.to_owned())
            }
            RunFormat::Jsonl => {
                let record: JsonlRecord = serde_json::from_str(line)
                    .map_err(|e| parse_error(&desc.path, line_no, e.to_string()))?;
                (record.gold, record.pred)
            }
        };
        let gold = ClassLabel::new(gold)
            .map_err(|_| parse_error(&desc.path, line_no, "empty gold label"))?;
        let pred = ClassLabel::new(pred)
            .map_err(|_| parse_error(&desc.path, line_no, "empty predicted label"))?;
        pairs.push(LabeledPair::new(gold, pred));
    }
    if pairs.is_empty() {
        return Err(Error::EmptyFile {
            path: desc.path.display().to_string(),
        });
    }
    EvaluationRun::new(pairs, na_label.cloned(), desc.model_id.clone(), desc.run_id.clone())
}

/// Writes a run as TSV. Labels containing tabs or line breaks cannot be
/// represented in this format and are rejected.
pub fn write_run_tsv(run: &EvaluationRun, mut writer: impl Write) -> Result<()> {
    for pair in run.pairs() {
        for label in [&pair.gold, &pair.predicted] {
            if label.as_str().contains(['\t', '\n', '\r']) {
                return Err(Error::InconsistentInput(format!(
                    "label {:?} contains a tab or line break and cannot be written as TSV",
                    label.as_str()
                )));
            }
        }
        writeln!(writer, "{}\t{}", pair.gold, pair.predicted)?;
    }
    Ok(())
}

/// Writes a run as JSONL.
pub fn write_run_jsonl(run: &EvaluationRun, mut writer: impl Write) -> Result<()> {
    for pair in run.pairs() {
        let record = JsonlRecord {
            gold: pair.gold.as_str().to_owned(),
            pred: pair.predicted.as_str().to_owned(),
        };
        writeln!(writer, "{}", serde_json::to_string(&record)?)?;
    }
    Ok(())
}

/// Loads several run files of one model and reduces each run to a single
/// score. At least two runs are required and all descriptors must carry
/// the same model id; score order follows input order.
pub fn load_run_group<F>(
    descs: &[RunFileDescriptor],
    na_label: Option<&ClassLabel>,
    mut score_extractor: F,
) -> Result<RunGroup>
where
    F: FnMut(&EvaluationRun) -> Result<f64>,
{
    if descs.len() < 2 {
        return Err(Error::TooFewRuns(descs.len()));
    }
    let model_id = descs[0].model_id.clone();
    for desc in descs {
        if desc.model_id != model_id {
            return Err(Error::ModelIdMismatch {
                expected: model_id,
                found: desc.model_id.clone(),
            });
        }
    }
    let scores = descs
        .iter()
        .map(|desc| score_extractor(&load_run(desc, na_label)?))
        .collect::<Result<Vec<_>>>()?;
    RunGroup::new(model_id, scores)
}

/// Loads a label file: one label per line.
pub fn load_labels(path: &Path) -> Result<Vec<ClassLabel>> {
    let text = fs::read_to_string(path)?;
    let mut labels = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let label = ClassLabel::new(line)
            .map_err(|_| parse_error(path, idx + 1, "empty label"))?;
        labels.push(label);
    }
    if labels.is_empty() {
        return Err(Error::EmptyFile {
            path: path.display().to_string(),
        });
    }
    Ok(labels)
}

/// Loads a counts file: `<label>\t<count>` per line, counts positive.
pub fn load_counts(path: &Path) -> Result<ClassCounts> {
    let text = fs::read_to_string(path)?;
    let mut counts = std::collections::BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let (label, count) = line.split_once('\t').ok_or_else(|| {
            parse_error(path, line_no, "expected <label>\\t<count>")
        })?;
        let label = ClassLabel::new(label)
            .map_err(|_| parse_error(path, line_no, "empty label"))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|e| parse_error(path, line_no, format!("bad count: {e}")))?;
        if counts.insert(label.clone(), count).is_some() {
            return Err(parse_error(
                path,
                line_no,
                format!("duplicate label {:?}", label.as_str()),
            ));
        }
    }
    if counts.is_empty() {
        return Err(Error::EmptyFile {
            path: path.display().to_string(),
        });
    }
    ClassCounts::new(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct TempFile {
        path: PathBuf,
    }

    impl TempFile {
        fn new(name: &str, contents: &str) -> Self {
            let path = std::env::temp_dir().join(format!(
                "skewscore-io-{}-{}-{name}",
                std::process::id(),
                std::thread::current().name().unwrap_or("t").replace("::", "-"),
            ));
            let mut f = fs::File::create(&path).unwrap();
            f.write_all(contents.as_bytes()).unwrap();
            TempFile { path }
        }
    }

    impl Drop for TempFile {
        fn drop(&mut self) {
            let _ = fs::remove_file(&self.path);
        }
    }

    fn desc(path: &Path) -> RunFileDescriptor {
        RunFileDescriptor::new(path, "m", "r")
    }

    #[test]
    fn loads_tsv_pairs_in_order() {
        let f = TempFile::new("a.tsv", "per:title\tper:title\nNA\tper:age\n");
        let run = load_run(&desc(&f.path), None).unwrap();
        assert_eq!(run.len(), 2);
        assert_eq!(run.pairs()[0].gold.as_str(), "per:title");
        assert_eq!(run.pairs()[1].predicted.as_str(), "per:age");
    }

    #[test]
    fn loads_jsonl_pairs() {
        let f = TempFile::new("a.jsonl", "{\"gold\":\"NA\",\"pred\":\"per:age\"}\n");
        let run = load_run(&desc(&f.path), None).unwrap();
        assert_eq!(run.pairs()[0].gold.as_str(), "NA");
        assert_eq!(run.pairs()[0].predicted.as_str(), "per:age");
    }

    #[test]
    fn tsv_single_column_is_parse_error_with_line() {
        let f = TempFile::new("b.tsv", "A\tA\nonly_one_column\n");
        match load_run(&desc(&f.path), None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn tsv_three_columns_rejected() {
        let f = TempFile::new("c.tsv", "A\tB\tC\n");
        assert!(matches!(load_run(&desc(&f.path), None), Err(Error::Parse { .. })));
    }

    #[test]
    fn jsonl_bad_line_reports_line_number() {
        let f = TempFile::new("d.jsonl", "{\"gold\":\"A\",\"pred\":\"B\"}\nnot json\n");
        match load_run(&desc(&f.path), None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_file_is_an_error() {
        let f = TempFile::new("e.tsv", "");
        assert!(matches!(load_run(&desc(&f.path), None), Err(Error::EmptyFile { .. })));
    }

    #[test]
    fn crlf_lines_accepted() {
        let f = TempFile::new("f.tsv", "A\tB\r\nB\tB\r\n");
        let run = load_run(&desc(&f.path), None).unwrap();
        assert_eq!(run.len(), 2);
        assert_eq!(run.pairs()[0].predicted.as_str(), "B");
    }

    #[test]
    fn format_inferred_from_extension() {
        assert_eq!(RunFormat::from_path(Path::new("x.tsv")).unwrap(), RunFormat::Tsv);
        assert_eq!(RunFormat::from_path(Path::new("x.jsonl")).unwrap(), RunFormat::Jsonl);
        assert!(RunFormat::from_path(Path::new("x.csv")).is_err());
    }

    #[test]
    fn format_override_beats_extension() {
        let f = TempFile::new("g.txt", "A\tB\n");
        let d = desc(&f.path).with_format(RunFormat::Tsv);
        assert!(load_run(&d, None).is_ok());
    }

    #[test]
    fn na_label_attached_at_load() {
        let f = TempFile::new("h.tsv", "NA\tA\n");
        let na = ClassLabel::new("NA").unwrap();
        let run = load_run(&desc(&f.path), Some(&na)).unwrap();
        assert_eq!(run.na_label(), Some(&na));
    }

    #[test]
    fn group_requires_two_runs() {
        let f = TempFile::new("i.tsv", "A\tA\n");
        let result = load_run_group(&[desc(&f.path)], None, |r| Ok(r.accuracy()));
        assert!(matches!(result, Err(Error::TooFewRuns(1))));
    }

    #[test]
    fn group_requires_one_model_id() {
        let f1 = TempFile::new("j1.tsv", "A\tA\n");
        let f2 = TempFile::new("j2.tsv", "A\tB\n");
        let descs = [
            RunFileDescriptor::new(&f1.path, "m1", "r1"),
            RunFileDescriptor::new(&f2.path, "m2", "r2"),
        ];
        assert!(matches!(
            load_run_group(&descs, None, |r| Ok(r.accuracy())),
            Err(Error::ModelIdMismatch { .. })
        ));
    }

    #[test]
    fn group_scores_follow_input_order() {
        let f1 = TempFile::new("k1.tsv", "A\tA\n");
        let f2 = TempFile::new("k2.tsv", "A\tB\n");
        let descs = [
            RunFileDescriptor::new(&f1.path, "m", "r1"),
            RunFileDescriptor::new(&f2.path, "m", "r2"),
        ];
        let group = load_run_group(&descs, None, |r| Ok(r.accuracy())).unwrap();
        assert_eq!(group.scores(), &[1.0, 0.0]);
    }

    #[test]
    fn counts_file_parses() {
        let f = TempFile::new("l.tsv", "A\t100\nB\t10\nC\t1\n");
        let counts = load_counts(&f.path).unwrap();
        assert_eq!(counts.get(&ClassLabel::new("A").unwrap()), Some(100));
        assert_eq!(counts.total(), 111);
    }

    #[test]
    fn counts_file_rejects_duplicates_and_zeros() {
        let f = TempFile::new("m.tsv", "A\t1\nA\t2\n");
        assert!(matches!(load_counts(&f.path), Err(Error::Parse { line: 2, .. })));
        let g = TempFile::new("n.tsv", "A\t0\n");
        assert!(load_counts(&g.path).is_err());
    }

    #[test]
    fn labels_file_parses() {
        let f = TempFile::new("o.txt", "A\nB\nA\n");
        let labels = load_labels(&f.path).unwrap();
        assert_eq!(labels.len(), 3);
        assert_eq!(labels[2].as_str(), "A");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_run(tsv_safe: bool) -> impl Strategy<Value = EvaluationRun> {
            let label = if tsv_safe {
                "[a-zA-Z0-9:_/ .-]{1,12}"
            } else {
                // JSONL handles any non-empty unicode label
                "\\PC{1,12}"
            };
            prop::collection::vec((label.prop_map(String::from), "[a-z]{1,6}"), 1..40).prop_map(
                |pairs| {
                    let pairs = pairs
                        .into_iter()
                        .map(|(g, p)| {
                            LabeledPair::new(
                                ClassLabel::new(g).unwrap(),
                                ClassLabel::new(p).unwrap(),
                            )
                        })
                        .collect();
                    EvaluationRun::new(pairs, None, "m", "r").unwrap()
                },
            )
        }

        proptest! {
            #[test]
            fn tsv_round_trip(run in arb_run(true)) {
                let mut buf = Vec::new();
                write_run_tsv(&run, &mut buf).unwrap();
                let f = TempFile::new("prop-rt.tsv", std::str::from_utf8(&buf).unwrap());
                let loaded = load_run(&desc(&f.path), None).unwrap();
                prop_assert_eq!(loaded.pairs(), run.pairs());
            }

            #[test]
            fn jsonl_round_trip(run in arb_run(false)) {
                let mut buf = Vec::new();
                write_run_jsonl(&run, &mut buf).unwrap();
                let f = TempFile::new("prop-rt.jsonl", std::str::from_utf8(&buf).unwrap());
                let loaded = load_run(&desc(&f.path), None).unwrap();
                prop_assert_eq!(loaded.pairs(), run.pairs());
            }
        }
    }
}
