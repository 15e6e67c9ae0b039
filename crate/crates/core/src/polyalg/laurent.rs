use super::{RationalFunction, UniPoly};
use crate::exactmath::{pow_rat, BigInt, BigRational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial in `t`: a sparse map from (possibly negative)
/// exponents to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(
            pairs
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn from_uni(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent present.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present.
    pub fn deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// True when there are no negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.ord().map_or(true, |o| o >= 0)
    }

    pub fn to_uni(&self) -> Option<UniPoly> {
        if !self.is_polynomial() {
            return None;
        }
        let n = self.deg().map_or(0, |d| d as usize + 1);
        Some(UniPoly::from_coeffs(
            (0..n).map(|i| self.coeff(i as i64)).collect(),
        ))
    }

    /// `self` written as `numerator / t^k` with `numerator` a polynomial.
    pub fn to_rational_function(&self) -> RationalFunction {
        let shift = self.ord().map_or(0, |o| (-o).max(0));
        let num = UniPoly::from_coeffs(
            (0..=self.deg().map_or(-1, |d| d + shift))
                .map(|i| self.coeff(i - shift))
                .collect(),
        );
        let den = UniPoly::monomial(BigRational::one(), shift as usize);
        RationalFunction::new(num, den).expect("monomial denominator is nonzero")
    }

    /// `None` at `t = 0` when negative exponents are present.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(t, *e)?;
        }
        Some(acc)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::constant(BigRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `outer(self)`.
    pub fn substitute_into(&self, outer: &UniPoly) -> LaurentPoly {
        outer.coeffs().iter().rev().fold(LaurentPoly::zero(), |acc, c| {
            &(&acc * self) + &LaurentPoly::constant(c.clone())
        })
    }

    pub fn display_var(&self, var: &str) -> String {
        let terms: Vec<(BigRational, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| (c.clone(), super::uni::monomial_text(&[(var, *e)])))
            .collect();
        super::uni::format_terms(&terms)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}
