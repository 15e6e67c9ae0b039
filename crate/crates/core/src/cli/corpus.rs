use super::config::AnalysisConfig;
use super::parse::parse_poly;
use super::report::{analyze, AnalysisReport};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("corpus format error: {0}")]
    Format(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub polynomial: String,
    /// Verdict string, e.g. `RepresentsNegatives` or `MissesNaturalUpTo(1000)`.
    pub expected: String,
    #[serde(default)]
    pub config: Option<AnalysisConfig>,
    /// Golden JSON report, relative to the corpus file.
    #[serde(default)]
    pub golden: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    #[serde(default)]
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Debug)]
pub struct EntryOutcome {
    pub name: String,
    pub report: AnalysisReport,
    pub json: String,
    /// Empty when the entry matches.
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub outcomes: Vec<EntryOutcome>,
}

impl CorpusRun {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.mismatches.is_empty())
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_corpus(path: &Path) -> Result<Corpus, CorpusError> {
    let corpus: Corpus =
        serde_json::from_str(&read(path)?).map_err(|e| CorpusError::Format(e.to_string()))?;
    for e in &corpus.entries {
        if let Some(cfg) = &e.config {
            cfg.validate()
                .map_err(|err| CorpusError::Format(format!("{}: {err}", e.name)))?;
        }
    }
    Ok(corpus)
}

/// First differing line of two texts, for diffs.
fn first_difference(expected: &str, actual: &str) -> String {
    let (mut el, mut al) = (expected.lines(), actual.lines());
    let mut line = 1;
    loop {
        match (el.next(), al.next()) {
            (Some(e), Some(a)) if e == a => line += 1,
            (e, a) => {
                return format!(
                    "line {line}: expected {:?}, got {:?}",
                    e.unwrap_or("<end>"),
                    a.unwrap_or("<end>")
                )
            }
        }
    }
}

/// Analyzes every entry and compares verdicts and golden reports.
pub fn run_corpus(path: &Path) -> Result<CorpusRun, CorpusError> {
    let corpus = load_corpus(path)?;
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut outcomes = Vec::new();
    for entry in corpus.entries {
        let f = parse_poly(&entry.polynomial)
            .map_err(|e| CorpusError::Format(format!("{}: {e}", entry.name)))?;
        let cfg = entry.config.clone().unwrap_or_default();
        let report = analyze(&f, &cfg);
        let json = report.to_json();
        let mut mismatches = Vec::new();
        let verdict = report.verdict.to_string();
        if verdict != entry.expected {
            mismatches.push(format!("verdict: expected {}, got {verdict}", entry.expected));
        }
        if let Some(golden) = &entry.golden {
            match std::fs::read_to_string(base.join(golden)) {
                Ok(expected) if expected != json => mismatches.push(format!(
                    "golden {golden}: {}",
                    first_difference(&expected, &json)
                )),
                Ok(_) => {}
                Err(e) => mismatches.push(format!("golden {golden}: {e}")),
            }
        }
        outcomes.push(EntryOutcome {
            name: entry.name,
            report,
            json,
            mismatches,
        });
    }
    Ok(CorpusRun { outcomes })
}
