use super::config::AnalysisConfig;
use super::parse::{parse_rational, parse_rational_function};
use crate::analyzers::{
    arbitrarily_negative_in, classify_with_depth, conic_specialization_test, genus_report,
    image_scan_with_workers, lattice_witness, parity_obstruction, AnalyzerError, ConicReport,
    GenusReport, NormalForm, ParityVerdict, ScanReport, Witness,
};
use crate::changevars::{ChangeOfVars, CongruenceTarget};
use crate::exactmath::{BigInt, BigRational};
use crate::polyalg::BiPoly;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    RepresentsNegatives,
    MissesNaturalUpTo(u64),
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::RepresentsNegatives => f.write_str("RepresentsNegatives"),
            Verdict::MissesNaturalUpTo(m) => write!(f, "MissesNaturalUpTo({m})"),
            Verdict::Inconclusive => f.write_str("Inconclusive"),
        }
    }
}

/// A report section that either ran or was skipped with a reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section<T> {
    Done(T),
    Skipped(String),
}

impl<T> Section<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            Section::Done(t) => Some(t),
            Section::Skipped(_) => None,
        }
    }
}

impl<T: Serialize> Serialize for Section<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Section::Done(t) => t.serialize(s),
            Section::Skipped(reason) => json!({"skipped": reason}).serialize(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub input: String,
    pub config: AnalysisConfig,
    pub scan: ScanReport,
    pub classification: NormalForm,
    pub witnesses: Vec<Witness>,
    /// Why the witness chain is empty or short, if it is.
    pub witness_note: Option<String>,
    pub parity: Option<Section<ParityVerdict>>,
    pub conic: Option<Section<ConicReport>>,
    pub genus: Option<Section<GenusReport>>,
    pub verdict: Verdict,
    pub evidence: Value,
}

impl AnalysisReport {
    pub fn to_json_value(&self) -> Value {
        let mut v = json!({
            "input": self.input,
            "config": self.config.to_report_value(),
            "scan": self.scan,
            "classification": self.classification,
            "witnesses": self.witnesses,
        });
        let map = v.as_object_mut().expect("object");
        if let Some(note) = &self.witness_note {
            map.insert("witness_note".into(), json!(note));
        }
        if let Some(p) = &self.parity {
            map.insert("parity".into(), serde_json::to_value(p).expect("serializable"));
        }
        if let Some(c) = &self.conic {
            map.insert("conic".into(), serde_json::to_value(c).expect("serializable"));
        }
        if let Some(g) = &self.genus {
            map.insert("genus".into(), serde_json::to_value(g).expect("serializable"));
        }
        map.insert("verdict".into(), json!(self.verdict.to_string()));
        map.insert("evidence".into(), self.evidence.clone());
        v
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = Vec::new();
        out.push(format!("input: {}", self.input));
        out.push(format!(
            "scan [-{b}, {b}]^2: min {}, {} negative points, missing naturals <= {}: {}",
            self.scan
                .min_value
                .as_ref()
                .map_or("-".to_string(), |v| v.to_string()),
            self.scan.negative_count,
            self.scan.bound,
            preview(&self.scan.missing),
            b = self.scan.box_radius,
        ));
        out.push(format!("classification: {}", self.classification));
        for w in &self.witnesses {
            out.push(format!("witness: F({}, {}) = {} [{}]", w.x, w.y, w.value, w.method));
        }
        if let Some(note) = &self.witness_note {
            out.push(format!("witnesses: {note}"));
        }
        if let Some(p) = &self.parity {
            out.push(match p {
                Section::Done(v) => format!("parity: {v:?}"),
                Section::Skipped(r) => format!("parity: skipped ({r})"),
            });
        }
        if let Some(c) = &self.conic {
            out.push(match c {
                Section::Done(r) => format!(
                    "conic: {} clean, {} failing, {} skipped",
                    r.clean,
                    r.failures.len(),
                    r.skipped.len()
                ),
                Section::Skipped(r) => format!("conic: skipped ({r})"),
            });
        }
        if let Some(g) = &self.genus {
            out.push(match g {
                Section::Done(r) => format!("genus: n = {}, g = {}", r.exponent, r.genus),
                Section::Skipped(r) => format!("genus: skipped ({r})"),
            });
        }
        out.push(format!("verdict: {}", self.verdict));
        out.join("\n")
    }
}

fn preview(v: &[u64]) -> String {
    const SHOWN: usize = 12;
    let head: Vec<String> = v.iter().take(SHOWN).map(|n| n.to_string()).collect();
    let more = if v.len() > SHOWN {
        format!(", ... ({} total)", v.len())
    } else {
        String::new()
    };
    format!("{{{}{}}}", head.join(", "), more)
}

fn thresholds(depth: u32) -> impl Iterator<Item = BigRational> {
    (0..depth).map(|k| -BigRational::from_integer(num_traits::pow(BigInt::from(10), k as usize)))
}

/// Witness chain: the normal-form generators when a form applies, else the
/// lattice search when the scan saw a negative value. Stops at the first
/// failing level.
fn witness_chain(
    f: &BiPoly,
    form: &NormalForm,
    scan: &ScanReport,
    cfg: &AnalysisConfig,
) -> (Vec<Witness>, Option<String>) {
    let tgt = CongruenceTarget::trivial();
    if form.supports_witnesses() {
        match arbitrarily_negative_in(f, form, cfg.depth, &tgt, cfg.budget) {
            Ok(chain) => return (chain, None),
            Err(AnalyzerError::NoWitnessFound(_)) if !scan.has_negatives() => {
                return (Vec::new(), Some(format!("no witness within budget {}", cfg.budget)))
            }
            Err(_) => {}
        }
    } else if !scan.has_negatives() {
        return (
            Vec::new(),
            Some(format!(
                "{} admits no witness generator and the scan found no negative value",
                form.name()
            )),
        );
    }
    let mut chain = Vec::new();
    for t in thresholds(cfg.depth) {
        match lattice_witness(f, &tgt, &t, cfg.budget) {
            Ok(w) => chain.push(w),
            Err(e) => return (chain, Some(format!("lattice search stopped below {t}: {e}"))),
        }
    }
    (chain, None)
}

fn section<T, E: fmt::Display>(r: Result<T, E>) -> Section<T> {
    match r {
        Ok(t) => Section::Done(t),
        Err(e) => Section::Skipped(e.to_string()),
    }
}

/// Scan, classify, generate witnesses, run the optional checks, decide.
/// Component failures skip their section.
pub fn analyze(f: &BiPoly, cfg: &AnalysisConfig) -> AnalysisReport {
    let scan = image_scan_with_workers(f, cfg.box_radius, cfg.naturals, cfg.workers);
    // Hints are checked by `AnalysisConfig::validate`.
    let hints: Vec<ChangeOfVars> = cfg
        .hints
        .iter()
        .filter_map(|h| ChangeOfVars::from_json(h).ok())
        .collect();
    let classification = if f.is_constant() {
        NormalForm::Unclassified
    } else {
        classify_with_depth(f, &hints, cfg.cov_depth)
    };
    let (witnesses, witness_note) = witness_chain(f, &classification, &scan, cfg);

    let parity = cfg.parity.as_ref().map(|p| {
        section(
            parse_rational(&p.a)
                .map_err(|e| e.to_string())
                .and_then(|a| parity_obstruction(p.l, &a).map_err(|e| e.to_string())),
        )
    });
    let conic = cfg.conic.as_ref().map(|c| {
        section((|| {
            let fr = parse_rational_function(&c.f).map_err(|e| e.to_string())?;
            let gr = parse_rational_function(&c.g).map_err(|e| e.to_string())?;
            let samples = (cfg.conic_window.start..=cfg.conic_window.end).map(BigInt::from);
            conic_specialization_test(&fr, &gr, samples).map_err(|e| e.to_string())
        })())
    });
    let genus = cfg.genus.as_ref().map(|g| {
        section((|| {
            let fr = parse_rational_function(&g.f).map_err(|e| e.to_string())?;
            genus_report(&fr, g.exponent).map_err(|e| e.to_string())
        })())
    });

    let even_squares = matches!(
        parity.as_ref().and_then(|p| p.done()),
        Some(ParityVerdict::EvenSquaresOnly)
    );
    let (verdict, evidence) = if let Some(w) = witnesses.iter().find(|w| w.verify(f, &BigRational::from_integer(0.into()))) {
        (
            Verdict::RepresentsNegatives,
            json!({"witness": w}),
        )
    } else if let (Some(first), true) = (scan.missing.first(), even_squares || cfg.exhaustive_box) {
        let reason = if even_squares { "parity" } else { "exhaustive_box" };
        (
            Verdict::MissesNaturalUpTo(cfg.naturals),
            json!({"missing_natural": first.to_string(), "reason": reason}),
        )
    } else {
        (Verdict::Inconclusive, Value::Null)
    };

    AnalysisReport {
        input: f.to_string(),
        config: cfg.clone(),
        scan,
        classification,
        witnesses,
        witness_note,
        parity,
        conic,
        genus,
        verdict,
        evidence,
    }
}
