//! Batch runs over a directory of definition files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{analyze_file, AnalysisOptions, AnalysisReport};
use crate::verify::VerdictStatus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictCounts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub file: String,
    pub name: Option<String>,
    pub status: EntryStatus,
    pub verdicts: VerdictCounts,
    pub failures: Vec<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub entries: Vec<CorpusEntry>,
}

/// Summary plus the full reports and per-file timings, which are kept out
/// of the summary so that it stays byte-identical across runs.
#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub summary: CorpusSummary,
    pub reports: Vec<Option<AnalysisReport>>,
    pub seconds: BTreeMap<String, f64>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.fail == 0 && self.error == 0
    }

    pub fn to_table(&self) -> String {
        let width = self.entries.iter().map(|e| e.file.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:<6}  {:>4}  {:>4}  {:>7}", "file", "status", "pass", "fail", "skipped");
        for e in &self.entries {
            let status = match e.status {
                EntryStatus::Pass => "pass",
                EntryStatus::Fail => "FAIL",
                EntryStatus::Error => "ERROR",
            };
            let v = &e.verdicts;
            let _ = writeln!(out, "{:<width$}  {:<6}  {:>4}  {:>4}  {:>7}", e.file, status, v.pass, v.fail, v.skipped);
            for f in &e.failures {
                let _ = writeln!(out, "    {f}");
            }
            if let Some(err) = &e.error {
                let _ = writeln!(out, "    {err}");
            }
        }
        let _ = writeln!(out, "{} files: {} pass, {} fail, {} error", self.total, self.pass, self.fail, self.error);
        out
    }
}

/// Definition files (`*.json`) in `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn entry(file: String, outcome: &Result<AnalysisReport>) -> CorpusEntry {
    match outcome {
        Ok(r) => {
            let mut counts = VerdictCounts::default();
            for v in &r.verdicts {
                match v.status {
                    VerdictStatus::Pass => counts.pass += 1,
                    VerdictStatus::Fail => counts.fail += 1,
                    VerdictStatus::Skipped => counts.skipped += 1,
                }
            }
            let mut failures: Vec<String> = r
                .failed_verdicts()
                .iter()
                .map(|v| format!("{}: {}", v.theorem, v.notes.join("; ")))
                .collect();
            if let Some(e) = &r.expected {
                failures.extend(e.mismatches.iter().map(|m| format!("expected {m}")));
            }
            CorpusEntry {
                file,
                name: Some(r.input.name.clone()),
                status: if r.passed() { EntryStatus::Pass } else { EntryStatus::Fail },
                verdicts: counts,
                failures,
                error: None,
            }
        }
        Err(e) => CorpusEntry {
            file,
            name: None,
            status: EntryStatus::Error,
            verdicts: VerdictCounts::default(),
            failures: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

/// Analyzes every definition file in `dir` with `jobs` workers. A failing
/// file is recorded in its entry and does not stop the run; entries keep
/// the sorted file order.
pub fn run_corpus(dir: &Path, opts: &AnalysisOptions, jobs: usize) -> Result<CorpusRun> {
    let files = corpus_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start workers: {e}")))?;
    let outcomes: Vec<(String, Result<AnalysisReport>, f64)> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                match analyze_file(path, opts) {
                    Ok(t) => (name, Ok(t.report), t.timing.seconds),
                    Err(e) => (name, Err(e), 0.0),
                }
            })
            .collect()
    });
    let entries: Vec<CorpusEntry> = outcomes.iter().map(|(f, o, _)| entry(f.clone(), o)).collect();
    let count = |s: EntryStatus| entries.iter().filter(|e| e.status == s).count();
    let summary = CorpusSummary {
        total: entries.len(),
        pass: count(EntryStatus::Pass),
        fail: count(EntryStatus::Fail),
        error: count(EntryStatus::Error),
        entries,
    };
    let seconds = outcomes.iter().map(|(f, _, s)| (f.clone(), *s)).collect();
    let reports = outcomes.into_iter().map(|(_, o, _)| o.ok()).collect();
    Ok(CorpusRun { summary, reports, seconds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("curvereg-corpus-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn empty_directory() {
        let dir = scratch_dir("empty");
        let run = run_corpus(&dir, &AnalysisOptions::default(), 2).unwrap();
        assert_eq!(run.summary.total, 0);
        assert!(run.summary.all_passed());
    }

    #[test]
    fn malformed_file_is_isolated() {
        let dir = scratch_dir("mixed");
        std::fs::write(dir.join("a.json"), r#"{"name": "triangle", "components": ["x", "y", "z"]}"#).unwrap();
        std::fs::write(dir.join("b.json"), r#"{"name": "broken", "components": ["x +"]"#).unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let run = run_corpus(&dir, &AnalysisOptions::default(), 2).unwrap();
        let s = &run.summary;
        assert_eq!((s.total, s.pass, s.error), (2, 1, 1));
        assert_eq!(s.entries[0].file, "a.json");
        assert_eq!(s.entries[1].status, EntryStatus::Error);
        assert!(!s.all_passed());
        assert!(s.to_table().contains("ERROR"));
    }
}
