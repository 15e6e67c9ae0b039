use super::AnalyzerError;
use crate::exactmath::{hilbert_global_check, BigInt, BigRational, HilbertVerdict, Place};
use crate::polyalg::RationalFunction;
use num_traits::Zero;
use serde::Serialize;
use std::ops::RangeInclusive;

pub const DEFAULT_CONIC_WINDOW: RangeInclusive<i64> = 1..=200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicFailure {
    #[serde(serialize_with = "crate::analyzers::scan::ser_display")]
    pub t: BigInt,
    #[serde(serialize_with = "ser_places")]
    pub places: Vec<Place>,
}

/// Outcome of specializing `f(T) X^2 + g(T) Y^2 = Z^2` at sample points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicReport {
    pub failures: Vec<ConicFailure>,
    #[serde(serialize_with = "crate::analyzers::scan::ser_display")]
    pub clean: usize,
    /// Samples at a zero or pole of `f` or `g`.
    #[serde(serialize_with = "ser_list")]
    pub skipped: Vec<BigInt>,
}

fn ser_places<S: serde::Serializer>(v: &[Place], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn ser_list<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

pub fn conic_specialization_test(
    f: &RationalFunction,
    g: &RationalFunction,
    samples: impl IntoIterator<Item = BigInt>,
) -> Result<ConicReport, AnalyzerError> {
    if f.is_zero() || g.is_zero() {
        return Err(AnalyzerError::ZeroFunction);
    }
    let mut report = ConicReport {
        failures: Vec::new(),
        clean: 0,
        skipped: Vec::new(),
    };
    for t in samples {
        let tq = BigRational::from_integer(t.clone());
        let (a, b) = match (f.eval(&tq), g.eval(&tq)) {
            (Some(a), Some(b)) if !a.is_zero() && !b.is_zero() => (a, b),
            _ => {
                report.skipped.push(t);
                continue;
            }
        };
        match hilbert_global_check(&a, &b)? {
            HilbertVerdict::SolvableEverywhere => report.clean += 1,
            HilbertVerdict::FailsAt(places) => report.failures.push(ConicFailure { t, places }),
        }
    }
    Ok(report)
}
