//! Obstruction tests: cyclic-cover genus, parity, normal forms, conic
//! specialization, image scanning and negative-value witnesses.

mod classify;
mod conic;
mod genus;
mod scan;
mod witness;

pub use classify::{classify_normal_form, classify_with_depth, NormalForm, DEFAULT_COV_DEPTH};
pub use conic::{conic_specialization_test, ConicFailure, ConicReport, DEFAULT_CONIC_WINDOW};
pub use genus::{
    choose_cover_exponent, cyclic_cover_genus, genus_report, parity_obstruction, CoverSpec,
    GenusReport, HalfLine, OrderEntry, ParityVerdict,
};
pub use scan::{image_scan, image_scan_with_workers, NegativePoint, ScanReport, NEGATIVE_SAMPLE_CAP};
pub use witness::{
    arbitrarily_negative, arbitrarily_negative_in, lattice_witness, negative_witness, negative_witness_below,
    sector_witness, Witness, DEFAULT_SEARCH_BUDGET,
};

use crate::exactmath::ExactMathError;
use crate::polyalg::PolyError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyzerError {
    #[error("function is constant")]
    ConstantFunction,
    #[error("function is zero")]
    ZeroFunction,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("even exponent with negative leading constant: all values are <= 0")]
    NegativeEvenCase,
    #[error("no witness found within a budget of {0} points")]
    NoWitnessFound(u64),
    #[error("unsupported normal form: {0}")]
    UnsupportedForm(String),
    #[error("congruence target must have integer base point and positive modulus")]
    NonIntegralTarget,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exact(#[from] ExactMathError),
}
