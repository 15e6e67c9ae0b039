//! Obstruction analysis for bivariate polynomials over the rationals viewed
//! as maps `Z x Z -> N`.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactmath`]: exact integers, rationals, real quadratic numbers,
//!   factorization and local Hilbert symbols.
//! - [`polyalg`]: univariate, Laurent and bivariate polynomials, rational
//!   functions, Bezout certificates and irreducible factorization over `Q`.
//! - [`changevars`]: elementary planar coordinate changes, line
//!   normalization, pole reduction for punctured lines and transport of
//!   congruence targets.
//! - [`analyzers`]: cyclic-cover genus, parity obstruction, normal-form
//!   classification, conic specialization, image scanning and
//!   negative-value witnesses.
//! - [`cli`]: expression parsing, configuration, reports and corpus runs.

pub mod analyzers;
pub mod changevars;
pub mod cli;
pub mod exactmath;
pub mod polyalg;
