use crate::exactmath::{BigInt, BigRational};
use crate::polyalg::{BiPoly, IntEvaluator};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Display;

/// At most this many negative-value points are kept in a report.
pub const NEGATIVE_SAMPLE_CAP: usize = 100;

pub(crate) fn ser_display<T: Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_nums<S: serde::Serializer>(v: &[u64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| n.to_string()))
}

fn ser_opt<T: Display, S: serde::Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativePoint {
    #[serde(serialize_with = "ser_display")]
    pub x: i64,
    #[serde(serialize_with = "ser_display")]
    pub y: i64,
    #[serde(serialize_with = "ser_display")]
    pub value: BigRational,
}

/// Exhaustive evaluation of `F` on the box `[-B, B]^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    #[serde(serialize_with = "ser_display")]
    pub box_radius: u64,
    #[serde(serialize_with = "ser_display")]
    pub bound: u64,
    /// First negative points in row-major order (`x`, then `y`, ascending).
    pub negatives: Vec<NegativePoint>,
    #[serde(serialize_with = "ser_display")]
    pub negative_count: u64,
    #[serde(serialize_with = "ser_nums")]
    pub represented: Vec<u64>,
    #[serde(serialize_with = "ser_nums")]
    pub missing: Vec<u64>,
    #[serde(serialize_with = "ser_opt")]
    pub min_value: Option<BigRational>,
    pub min_point: Option<[String; 2]>,
}

impl ScanReport {
    pub fn has_negatives(&self) -> bool {
        self.negative_count > 0
    }
}

struct Row {
    negatives: Vec<NegativePoint>,
    negative_count: u64,
    hits: Vec<u64>,
    min: Option<(BigInt, i64)>,
}

fn scan_row(ev: &IntEvaluator, x: i64, b: i64, m: u64) -> Row {
    let den = ev.denominator();
    let mut row = Row {
        negatives: Vec::new(),
        negative_count: 0,
        hits: Vec::new(),
        min: None,
    };
    for y in -b..=b {
        let num = ev.numerator_at(x, y);
        if row.min.as_ref().map_or(true, |(best, _)| &num < best) {
            row.min = Some((num.clone(), y));
        }
        if num.is_negative() {
            row.negative_count += 1;
            if row.negatives.len() < NEGATIVE_SAMPLE_CAP {
                row.negatives.push(NegativePoint {
                    x,
                    y,
                    value: BigRational::new(num, den.clone()),
                });
            }
            continue;
        }
        let (q, r) = num.div_rem(den);
        if r.is_zero() {
            if let Some(v) = q.to_u64() {
                if v <= m {
                    row.hits.push(v);
                }
            }
        }
    }
    row
}

pub fn image_scan(f: &BiPoly, b: u64, m: u64) -> ScanReport {
    image_scan_with_workers(f, b, m, None)
}

/// `workers = None` uses the global thread pool. The report does not depend
/// on the worker count.
pub fn image_scan_with_workers(f: &BiPoly, b: u64, m: u64, workers: Option<usize>) -> ScanReport {
    let ev = IntEvaluator::new(f);
    let bi = b as i64;
    let run = || -> Vec<Row> {
        (-bi..=bi)
            .into_par_iter()
            .map(|x| scan_row(&ev, x, bi, m))
            .collect()
    };
    let rows = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };

    let mut seen = vec![false; m as usize + 1];
    let mut negatives = Vec::new();
    let mut negative_count = 0;
    let mut min: Option<(BigInt, i64, i64)> = None;
    for (row, x) in rows.into_iter().zip(-bi..=bi) {
        negative_count += row.negative_count;
        for p in row.negatives {
            if negatives.len() < NEGATIVE_SAMPLE_CAP {
                negatives.push(p);
            }
        }
        for v in row.hits {
            seen[v as usize] = true;
        }
        if let Some((num, y)) = row.min {
            if min.as_ref().map_or(true, |(best, _, _)| &num < best) {
                min = Some((num, x, y));
            }
        }
    }
    let (represented, missing): (Vec<u64>, Vec<u64>) = (0..=m).partition(|&v| seen[v as usize]);
    ScanReport {
        box_radius: b,
        bound: m,
        negatives,
        negative_count,
        represented,
        missing,
        min_value: min
            .as_ref()
            .map(|(num, _, _)| BigRational::new(num.clone(), ev.denominator().clone())),
        min_point: min.map(|(_, x, y)| [x.to_string(), y.to_string()]),
    }
}
