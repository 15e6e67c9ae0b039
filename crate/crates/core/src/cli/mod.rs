//! Expression parsing, configuration, the analysis pipeline and reports.

pub mod commands;
pub mod config;
pub mod corpus;
pub mod parse;
pub mod report;

pub use commands::{execute, run, Cli, Command, Output, EXIT_BUDGET, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
pub use config::{AnalysisConfig, ConfigError, ConicSpec, GenusSpec, ParitySpec, Window};
pub use corpus::{load_corpus, run_corpus, Corpus, CorpusEntry, CorpusError, CorpusRun, EntryOutcome};
pub use parse::{
    parse_laurent, parse_poly, parse_rational, parse_rational_function, parse_uni, parse_uni_in,
    ParseError,
};
pub use report::{analyze, AnalysisReport, Section, Verdict};
