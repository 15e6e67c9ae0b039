use super::uni::{format_terms, monomial_text};
use super::UniPoly;
use crate::exactmath::{lcm_denominators, BigInt, BigRational};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse bivariate polynomial in `x, y` over `Q`, keyed by the exponent
/// pair `(i, j)` of `x^i y^j`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    /// Terms given as `(i, j, coefficient)`.
    pub fn from_i64(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(i, j, c)| ((i, j), BigRational::from_integer(BigInt::from(c)))),
        )
    }

    /// `p(x)` as a bivariate polynomial.
    pub fn from_uni_x(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// `p(y)` as a bivariate polynomial.
    pub fn from_uni_y(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| ((0, j as u32), c.clone())),
        )
    }

    pub(crate) fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    /// Smallest power of `x` present.
    pub fn min_deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).min()
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        // Horner in y over coefficient polynomials in x.
        self.coeffs_in_y()
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, p| acc * y + p.eval(x))
    }

    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigRational {
        self.eval(
            &BigRational::from_integer(x.clone()),
            &BigRational::from_integer(y.clone()),
        )
    }

    /// `F = sum_j c_j(x) y^j`; index `j` holds `c_j`.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let n = self.deg_y().map_or(0, |d| d as usize + 1);
        let mut cols: Vec<Vec<BigRational>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, BigRational::zero());
            }
            col[i as usize] = c.clone();
        }
        cols.into_iter().map(UniPoly::from_coeffs).collect()
    }

    /// `F = sum_i c_i(y) x^i`; index `i` holds `c_i`.
    pub fn coeffs_in_x(&self) -> Vec<UniPoly> {
        self.swap().coeffs_in_y()
    }

    pub fn from_coeffs_in_y(cols: &[UniPoly]) -> Self {
        let mut out = Self::zero();
        for (j, p) in cols.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    /// `F(y, x)`.
    pub fn swap(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Univariate in `x` when no `y` occurs.
    pub fn as_uni_x(&self) -> Option<UniPoly> {
        (self.deg_y().unwrap_or(0) == 0).then(|| self.coeffs_in_y().pop().unwrap_or_default())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(BigRational::one());
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

    /// Exact composition `F(x_expr, y_expr)`.
    pub fn substitute(&self, x_expr: &BiPoly, y_expr: &BiPoly) -> BiPoly {
        let mut x_pows: Vec<BiPoly> = vec![BiPoly::constant(BigRational::one())];
        let mut y_pows: Vec<BiPoly> = vec![BiPoly::constant(BigRational::one())];
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            while x_pows.len() <= i as usize {
                let next = x_pows.last().unwrap() * x_expr;
                x_pows.push(next);
            }
            while y_pows.len() <= j as usize {
                let next = y_pows.last().unwrap() * y_expr;
                y_pows.push(next);
            }
            let term = (&x_pows[i as usize] * &y_pows[j as usize]).scale(c);
            out = &out + &term;
        }
        out
    }

    /// `lcm` of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        lcm_denominators(self.terms.values())
    }

    /// Formats as canonical text in `x` and `y`: descending total degree,
    /// then descending power of `x`.
    pub fn display(&self) -> String {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let terms: Vec<(BigRational, String)> = keys
            .into_iter()
            .map(|k| {
                (
                    self.terms[k].clone(),
                    monomial_text(&[("x", k.0 as i64), ("y", k.1 as i64)]),
                )
            })
            .collect();
        format_terms(&terms)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

/// Fast evaluator at integer points: `F = P / D` with `P` integral, values
/// computed in checked `i128` with a `BigInt` fallback.
#[derive(Clone, Debug)]
pub struct IntEvaluator {
    denominator: BigInt,
    /// `cols[j]` is the integer coefficient polynomial of `y^j`, ascending in `x`.
    cols: Vec<Vec<BigInt>>,
    cols_small: Option<Vec<Vec<i128>>>,
}

impl IntEvaluator {
    pub fn new(f: &BiPoly) -> Self {
        let denominator = f.denominator_lcm();
        let cols: Vec<Vec<BigInt>> = f
            .coeffs_in_y()
            .iter()
            .map(|p| {
                p.coeffs()
                    .iter()
                    .map(|c| c.numer() * (&denominator / c.denom()))
                    .collect()
            })
            .collect();
        let cols_small = cols
            .iter()
            .map(|col| col.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        IntEvaluator {
            denominator,
            cols,
            cols_small,
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    fn horner_i128(coeffs: &[i128], t: i128) -> Option<i128> {
        coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, c| acc.checked_mul(t)?.checked_add(*c))
    }

    fn horner_big(coeffs: &[BigInt], t: &BigInt) -> BigInt {
        coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// The integer numerator `D * F(x, y)`.
    pub fn numerator_at(&self, x: i64, y: i64) -> BigInt {
        if let Some(cols) = &self.cols_small {
            let fast = (|| {
                let inner: Option<Vec<i128>> = cols
                    .iter()
                    .map(|c| Self::horner_i128(c, x as i128))
                    .collect();
                Self::horner_i128(&inner?, y as i128)
            })();
            if let Some(v) = fast {
                return BigInt::from(v);
            }
        }
        self.numerator_at_big(&BigInt::from(x), &BigInt::from(y))
    }

    pub fn numerator_at_big(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let inner: Vec<BigInt> = self.cols.iter().map(|c| Self::horner_big(c, x)).collect();
        Self::horner_big(&inner, y)
    }

    pub fn value_at(&self, x: i64, y: i64) -> BigRational {
        BigRational::new(self.numerator_at(x, y), self.denominator.clone())
    }

    pub fn value_at_big(&self, x: &BigInt, y: &BigInt) -> BigRational {
        BigRational::new(self.numerator_at_big(x, y), self.denominator.clone())
    }
}

/// Convenience: `F(x_expr, y_expr)`.
pub fn bi_substitute(f: &BiPoly, x_expr: &BiPoly, y_expr: &BiPoly) -> BiPoly {
    f.substitute(x_expr, y_expr)
}
