use super::config::AnalysisConfig;
use super::corpus::run_corpus;
use super::parse::{parse_laurent, parse_poly, parse_rational_function, parse_uni_in};
use super::report::analyze;
use crate::analyzers::{
    classify_normal_form, conic_specialization_test, genus_report, lattice_witness,
    negative_witness_below, AnalyzerError, DEFAULT_SEARCH_BUDGET,
};
use crate::changevars::{
    abhyankar_moh_normalize, pole_reduce_at_infinity, CongruenceTarget, Domain, ParamCurve,
    PoleOutcome,
};
use crate::exactmath::{BigInt, BigRational};
use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "polysurj", version, about = "Obstructions to Z x Z -> N surjectivity for bivariate polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan, classify, find witnesses and decide a verdict.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "box")]
        box_radius: Option<u64>,
        #[arg(long)]
        naturals: Option<u64>,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Treat the scan box as exhaustive for the naturals bound.
        #[arg(long)]
        exhaustive: bool,
        /// TOML configuration; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<String>,
    },
    /// Genus of the cyclic cover s^n = f(t).
    Genus {
        #[arg(allow_hyphen_values = true)]
        function: String,
        #[arg(long)]
        exponent: Option<u64>,
    },
    /// Hilbert-symbol test of f(T) X^2 + g(T) Y^2 = Z^2 at integer T.
    Conic {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Inclusive range `a..b`.
        #[arg(long, default_value = "1..200")]
        samples: String,
    },
    /// Move the curve (f(t), g(t)) to a normal position.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Treat f, g as Laurent polynomials on the punctured line.
        #[arg(long)]
        punctured: bool,
    },
    /// A point with F < 0 in the class (x0 + N Z) x (y0 + N Z).
    Witness {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// `x0,y0,N`
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a corpus file and compare verdicts and golden reports.
    Corpus {
        file: PathBuf,
        /// Directory for the per-entry JSON reports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command: text for stdout and an exit code.
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

fn input_error(msg: impl std::fmt::Display) -> Output {
    Output {
        stdout: format!("error: {msg}"),
        code: EXIT_INPUT,
    }
}

fn ok_json(v: &Value) -> Output {
    Output {
        stdout: serde_json::to_string_pretty(v).expect("serializable"),
        code: EXIT_OK,
    }
}

fn parse_range(s: &str) -> Option<(i64, i64)> {
    let (a, b) = s.split_once("..")?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().trim_start_matches('=').parse().ok()?);
    (a <= b).then_some((a, b))
}

fn parse_target(s: &str) -> Option<CongruenceTarget> {
    let parts: Vec<BigInt> = s
        .split(',')
        .map(|p| p.trim().parse().ok())
        .collect::<Option<_>>()?;
    let [x0, y0, n] = <[BigInt; 3]>::try_from(parts).ok()?;
    CongruenceTarget::new(BigRational::from_integer(x0), BigRational::from_integer(y0), n).ok()
}

pub fn execute(cli: Cli) -> Output {
    match cli.command {
        Command::Analyze {
            poly,
            box_radius,
            naturals,
            depth,
            budget,
            workers,
            exhaustive,
            config,
            json,
        } => {
            let f = match parse_poly(&poly) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let mut cfg = match config {
                Some(path) => match AnalysisConfig::load(&path) {
                    Ok(c) => c,
                    Err(e) => return input_error(e),
                },
                None => AnalysisConfig::default(),
            };
            cfg.box_radius = box_radius.unwrap_or(cfg.box_radius);
            cfg.naturals = naturals.unwrap_or(cfg.naturals);
            cfg.depth = depth.unwrap_or(cfg.depth);
            cfg.budget = budget.unwrap_or(cfg.budget);
            cfg.workers = workers.or(cfg.workers);
            cfg.exhaustive_box |= exhaustive;
            if let Err(e) = cfg.validate() {
                return input_error(e);
            }
            if f.is_constant() {
                return input_error("polynomial is constant");
            }
            let report = analyze(&f, &cfg);
            let mut stdout = report.summary();
            match json.as_deref() {
                Some("-") => stdout = report.to_json(),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, report.to_json()) {
                        return input_error(format!("cannot write {path}: {e}"));
                    }
                }
                None => {}
            }
            Output {
                stdout,
                code: EXIT_OK,
            }
        }
        Command::Genus { function, exponent } => {
            match parse_rational_function(&function)
                .map_err(|e| e.to_string())
                .and_then(|f| genus_report(&f, exponent).map_err(|e| e.to_string()))
            {
                Ok(r) => ok_json(&serde_json::to_value(r).expect("serializable")),
                Err(e) => input_error(e),
            }
        }
        Command::Conic { f, g, samples } => {
            let Some((a, b)) = parse_range(&samples) else {
                return input_error(format!("bad sample range {samples:?}, expected a..b"));
            };
            let run = || -> Result<_, String> {
                let fr = parse_rational_function(&f).map_err(|e| e.to_string())?;
                let gr = parse_rational_function(&g).map_err(|e| e.to_string())?;
                conic_specialization_test(&fr, &gr, (a..=b).map(BigInt::from)).map_err(|e| e.to_string())
            };
            match run() {
                Ok(r) => ok_json(&serde_json::to_value(r).expect("serializable")),
                Err(e) => input_error(e),
            }
        }
        Command::Normalize { f, g, punctured } => normalize(&f, &g, punctured),
        Command::Witness {
            poly,
            target,
            budget,
        } => {
            let f = match parse_poly(&poly) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let Some(tgt) = parse_target(&target) else {
                return input_error(format!("bad target {target:?}, expected x0,y0,N with N > 0"));
            };
            let budget = budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
            let form = classify_normal_form(&f, &[]);
            let zero = BigRational::zero();
            let found = if form.supports_witnesses() {
                negative_witness_below(&f, &form, &tgt, &zero, budget)
            } else {
                lattice_witness(&f, &tgt, &zero, budget)
            };
            match found {
                Ok(w) => ok_json(&json!({
                    "input": f.to_string(),
                    "classification": form,
                    "witness": w,
                })),
                Err(AnalyzerError::NoWitnessFound(b)) => Output {
                    stdout: format!("no witness found within a budget of {b} points"),
                    code: EXIT_BUDGET,
                },
                Err(e) => input_error(e),
            }
        }
        Command::Corpus { file, out } => {
            let run = match run_corpus(&file) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let mut lines = Vec::new();
            for o in &run.outcomes {
                if let Some(dir) = &out {
                    let path = dir.join(format!("{}.json", o.name));
                    if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &o.json)) {
                        return input_error(format!("cannot write {}: {e}", path.display()));
                    }
                }
                if o.mismatches.is_empty() {
                    lines.push(format!("ok   {}: {}", o.name, o.report.verdict));
                } else {
                    lines.push(format!("FAIL {}", o.name));
                    lines.extend(o.mismatches.iter().map(|m| format!("     {m}")));
                }
            }
            lines.push(format!(
                "{} entries, {} failing",
                run.outcomes.len(),
                run.outcomes.iter().filter(|o| !o.mismatches.is_empty()).count()
            ));
            Output {
                stdout: lines.join("\n"),
                code: if run.passed() { EXIT_OK } else { EXIT_MISMATCH },
            }
        }
    }
}

fn normalize(f: &str, g: &str, punctured: bool) -> Output {
    if punctured {
        let curve = match (parse_laurent(f), parse_laurent(g)) {
            (Ok(f), Ok(g)) => ParamCurve::new(f, g, Domain::Punctured),
            (Err(e), _) | (_, Err(e)) => return input_error(e),
        };
        let r = match curve.and_then(|c| pole_reduce_at_infinity(&c)) {
            Ok(r) => r,
            Err(e) => return input_error(e),
        };
        let outcome = match &r.outcome {
            PoleOutcome::SeparatedPoints => json!({"kind": "SeparatedPoints"}),
            PoleOutcome::LeftInfinityPoint => json!({"kind": "LeftInfinityPoint"}),
            PoleOutcome::DegenerateDoubleCover => json!({"kind": "DegenerateDoubleCover"}),
            PoleOutcome::IrrationalAsymptotic { a, d } => {
                json!({"kind": "IrrationalAsymptotic", "a": a.to_string(), "d": d.to_string()})
            }
        };
        return ok_json(&json!({
            "cov": r.cov,
            "curve": r.curve.to_string(),
            "outcome": outcome,
            "y_pole_trace": r.y_pole_trace.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
    }
    let curve = match (parse_uni_in(f, 't'), parse_uni_in(g, 't')) {
        (Ok(f), Ok(g)) => ParamCurve::affine(&f, &g),
        (Err(e), _) | (_, Err(e)) => return input_error(e),
    };
    match curve.and_then(|c| abhyankar_moh_normalize(&c)) {
        Ok(r) => ok_json(&serde_json::to_value(&r).expect("serializable")),
        Err(e) => input_error(e),
    }
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn run() -> i32 {
    let out = execute(Cli::parse());
    if !out.stdout.is_empty() {
        // A closed pipe is not an error worth reporting.
        let _ = if out.code == EXIT_OK || out.code == EXIT_MISMATCH {
            writeln!(std::io::stdout().lock(), "{}", out.stdout)
        } else {
            writeln!(std::io::stderr().lock(), "{}", out.stdout)
        };
    }
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Output {
        let mut full = vec!["polysurj"];
        full.extend_from_slice(args);
        execute(Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn argument_parsing() {
        assert_eq!(parse_range("2..50"), Some((2, 50)));
        assert_eq!(parse_range("2..=50"), Some((2, 50)));
        assert_eq!(parse_range("5..1"), None);
        assert_eq!(parse_target("3,7,5"), Some(CongruenceTarget::integers(3, 7, 5)));
        assert_eq!(parse_target("-1, 2, 4"), Some(CongruenceTarget::integers(-1, 2, 4)));
        assert_eq!(parse_target("1,2,0"), None);
        assert_eq!(parse_target("1,2"), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exec(&["analyze", "x^(2"]).code, EXIT_INPUT);
        assert_eq!(exec(&["analyze", "x", "--box", "5", "--naturals", "5"]).code, EXIT_OK);
        let w = exec(&["witness", "x", "--target", "3,7,5"]);
        assert_eq!(w.code, EXIT_OK);
        let v: Value = serde_json::from_str(&w.stdout).unwrap();
        assert_eq!(v["witness"]["x"], "-2");
        let w = exec(&["witness", "x^2 + y^2", "--target", "0,0,1", "--budget", "100"]);
        assert_eq!(w.code, EXIT_BUDGET);
        assert_eq!(exec(&["genus", "t*(t-1)", "--exponent", "5"]).code, EXIT_OK);
        assert_eq!(exec(&["genus", "t^3", "--exponent", "3"]).code, EXIT_INPUT);
        assert_eq!(exec(&["conic", "-1", "-1", "--samples", "1..3"]).code, EXIT_OK);
    }

    #[test]
    fn normalize_outputs() {
        let v: Value = serde_json::from_str(&exec(&["normalize", "t", "t^3 + 2*t"]).stdout).unwrap();
        assert_eq!(v["curve"][1], "0");
        assert_eq!(exec(&["normalize", "t^2", "t^3"]).code, EXIT_INPUT);
        let out = exec(&["normalize", "--punctured", "t + t^-1", "t^2 + t^-2"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    }
}
