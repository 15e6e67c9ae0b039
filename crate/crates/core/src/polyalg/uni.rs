use super::PolyError;
use crate::exactmath::{lcm_denominators, BigInt, BigRational, QuadraticNumber};
use crate::exactmath::ExactMathError;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over `Q`, coefficients in ascending degree.
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly { coeffs: vec![c] }.trim()
    }

    /// The indeterminate `t`.
    pub fn var() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        UniPoly { coeffs }.trim()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_quadratic(&self, t: &QuadraticNumber) -> Result<QuadraticNumber, ExactMathError> {
        let mut acc = QuadraticNumber::from_rational(BigRational::zero(), t.radicand().clone())?;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t)?.scalar(c);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            &(&acc * inner) + &UniPoly::constant(c.clone())
        })
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Integer coefficients, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.has_integer_coeffs()
            .then(|| self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// `lcm` of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        lcm_denominators(&self.coeffs)
    }

    /// The primitive integer polynomial with positive leading coefficient
    /// that is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Formats with the given variable name.
    pub fn display_var(&self, var: &str) -> String {
        let terms: Vec<(BigRational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), monomial_text(&[(var, i as i64)])))
            .collect();
        format_terms(&terms)
    }
}

/// Renders `x^a*y^b` style monomials; an empty string for degree zero.
pub(crate) fn monomial_text(parts: &[(&str, i64)]) -> String {
    parts
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| {
            if *e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Joins signed terms into `a*m1 - b*m2 + c` form.
pub(crate) fn format_terms(terms: &[(BigRational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{magnitude}*{mono}"));
        }
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};

    #[test]
    fn canonical_degree() {
        let p = UniPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_i64(&[0, 0]).degree(), None);
        assert_eq!(UniPoly::zero().degree_i64(), -1);
    }

    #[test]
    fn division() {
        let f = UniPoly::from_i64(&[-1, 0, 1]);
        let g = UniPoly::from_i64(&[1, 1]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, UniPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert!(f.div_rem(&UniPoly::zero()).is_err());
        let (q, r) = UniPoly::from_i64(&[1, 0, 1]).div_rem(&UniPoly::from_i64(&[0, 2])).unwrap();
        assert_eq!(q, UniPoly::from_coeffs(vec![rat(0), ratio(1, 2)]));
        assert_eq!(r, UniPoly::one());
    }

    #[test]
    fn display_and_compose() {
        let p = UniPoly::from_coeffs(vec![rat(-7), ratio(3, 2), rat(0), rat(-1)]);
        assert_eq!(p.to_string(), "-t^3 + 3/2*t - 7");
        let sq = UniPoly::from_i64(&[0, 0, 1]).compose(&UniPoly::from_i64(&[1, 1]));
        assert_eq!(sq, UniPoly::from_i64(&[1, 2, 1]));
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    fn primitive_integer_form() {
        let p = UniPoly::from_coeffs(vec![ratio(-1, 2), ratio(-3, 4)]);
        assert_eq!(
            p.primitive_integer(),
            vec![BigInt::from(2), BigInt::from(3)]
        );
    }
}
