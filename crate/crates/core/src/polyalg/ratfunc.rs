use super::{uni_gcd, PolyError, UniPoly};
use crate::exactmath::BigRational;
use num_traits::Zero;
use std::fmt;

/// A reduced quotient of univariate polynomials: the denominator is monic and
/// coprime to the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: UniPoly::one(),
            });
        }
        let g = uni_gcd(&num, &den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc = den.leading_coeff().expect("nonzero").recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `None` at poles.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of nonzero denominators")
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::constant(BigRational::zero());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// `outer(self)`.
    pub fn substitute_into(&self, outer: &UniPoly) -> Self {
        outer
            .coeffs()
            .iter()
            .rev()
            .fold(Self::constant(BigRational::zero()), |acc, c| {
                acc.mul(self).add(&Self::constant(c.clone()))
            })
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.den == UniPoly::one() {
            return self.num.display_var(var);
        }
        format!(
            "({})/({})",
            self.num.display_var(var),
            self.den.display_var(var)
        )
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl From<UniPoly> for RationalFunction {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}
