use super::{squarefree_split, ExactMathError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An element `rational + radical * sqrt(radicand)` of a real quadratic
/// field. The radicand is squarefree and greater than one; binary operations
/// require both operands to share it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rational: BigRational,
    radical: BigRational,
    radicand: BigInt,
}

impl QuadraticNumber {
    pub fn new(
        rational: BigRational,
        radical: BigRational,
        radicand: BigInt,
    ) -> Result<Self, ExactMathError> {
        if radicand <= BigInt::one() {
            return Err(ExactMathError::BadRadicand(radicand));
        }
        let (root, free) = squarefree_split(&radicand)?;
        if !root.is_one() {
            return Err(ExactMathError::BadRadicand(radicand));
        }
        debug_assert_eq!(free, radicand);
        Ok(QuadraticNumber {
            rational,
            radical,
            radicand,
        })
    }

    /// `q` viewed inside `Q(sqrt(radicand))`.
    pub fn from_rational(q: BigRational, radicand: BigInt) -> Result<Self, ExactMathError> {
        Self::new(q, BigRational::zero(), radicand)
    }

    /// `sqrt(radicand)` itself.
    pub fn sqrt_of(radicand: BigInt) -> Result<Self, ExactMathError> {
        Self::new(BigRational::zero(), BigRational::one(), radicand)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<(), ExactMathError> {
        if self.radicand == other.radicand {
            Ok(())
        } else {
            Err(ExactMathError::RadicandMismatch(
                self.radicand.clone(),
                other.radicand.clone(),
            ))
        }
    }

    fn with_parts(&self, rational: BigRational, radical: BigRational) -> Self {
        QuadraticNumber {
            rational,
            radical,
            radicand: self.radicand.clone(),
        }
    }

    pub fn scalar(&self, q: &BigRational) -> Self {
        self.with_parts(&self.rational + q, self.radical.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactMathError> {
        self.same_field(other)?;
        Ok(self.with_parts(&self.rational + &other.rational, &self.radical + &other.radical))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactMathError> {
        self.same_field(other)?;
        Ok(self.with_parts(&self.rational - &other.rational, &self.radical - &other.radical))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactMathError> {
        self.same_field(other)?;
        let d = BigRational::from_integer(self.radicand.clone());
        Ok(self.with_parts(
            &self.rational * &other.rational + &self.radical * &other.radical * d,
            &self.rational * &other.radical + &self.radical * &other.rational,
        ))
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.with_parts(&self.rational * q, &self.radical * q)
    }

    pub fn neg(&self) -> Self {
        self.with_parts(-&self.rational, -&self.radical)
    }

    /// The Galois conjugate `rational - radical * sqrt(radicand)`.
    pub fn conj(&self) -> Self {
        self.with_parts(self.rational.clone(), -&self.radical)
    }

    /// `x * conj(x)`, always rational.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - &self.radical * &self.radical * BigRational::from_integer(self.radicand.clone())
    }

    pub fn recip(&self) -> Result<Self, ExactMathError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactMathError::DivisionByZero);
        }
        Ok(self.conj().mul_rational(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactMathError> {
        self.mul(&other.recip()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self, ExactMathError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = self.with_parts(BigRational::one(), BigRational::zero());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Exact sign: compares `rational^2` against `radical^2 * radicand` when
    /// the two parts have opposite signs.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&BigRational::zero());
        let b = self.radical.cmp(&BigRational::zero());
        match (a, b) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            (x, _) => {
                let lhs = &self.rational * &self.rational;
                let rhs = &self.radical
                    * &self.radical
                    * BigRational::from_integer(self.radicand.clone());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    // Unreachable for a squarefree radicand > 1.
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Result<Ordering, ExactMathError> {
        Ok(self.sub(other)?.signum())
    }

    /// Floating approximation, for display only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.radical.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let sqrt = format!("sqrt({})", self.radicand);
        let radical = if self.radical.is_one() {
            sqrt
        } else if (-&self.radical).is_one() {
            format!("-{sqrt}")
        } else {
            format!("{}*{sqrt}", self.radical)
        };
        if self.rational.is_zero() {
            write!(f, "{radical}")
        } else if radical.starts_with('-') {
            write!(f, "{} - {}", self.rational, &radical[1..])
        } else {
            write!(f, "{} + {}", self.rational, radical)
        }
    }
}

impl QuadraticNumber {
    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> QuadraticNumber {
        QuadraticNumber::new(ratio(a.0, a.1), ratio(b.0, b.1), BigInt::from(d)).unwrap()
    }

    #[test]
    fn rejects_bad_radicands() {
        assert!(QuadraticNumber::new(rat(1), rat(1), BigInt::from(4)).is_err());
        assert!(QuadraticNumber::new(rat(1), rat(1), BigInt::from(1)).is_err());
        assert!(QuadraticNumber::new(rat(1), rat(1), BigInt::from(-3)).is_err());
        assert!(QuadraticNumber::new(rat(1), rat(1), BigInt::from(12)).is_err());
    }

    #[test]
    fn exact_sign_near_cancellation() {
        // 1.414... - 1.414213 > 0 and 1414214/10^6 - sqrt(2) > 0.
        assert!(q((-1414213, 1_000_000), (1, 1), 2).is_positive());
        assert!(q((1414214, 1_000_000), (-1, 1), 2).is_positive());
        assert!(q((1414213, 1_000_000), (-1, 1), 2).is_negative());
        assert!(q((-3, 1), (2, 1), 2).is_negative());
        assert!(q((3, 1), (-2, 1), 2).is_positive());
        assert!(q((0, 1), (0, 1), 2).signum() == Ordering::Equal);
    }

    #[test]
    fn inverse_and_mismatch() {
        let x = q((1, 1), (1, 1), 2);
        let inv = x.recip().unwrap();
        let one = x.mul(&inv).unwrap();
        assert_eq!(one, q((1, 1), (0, 1), 2));
        assert_eq!(inv, q((-1, 1), (1, 1), 2));
        let y = q((1, 1), (1, 1), 3);
        assert!(matches!(x.add(&y), Err(ExactMathError::RadicandMismatch(..))));
    }

    #[test]
    fn display() {
        assert_eq!(q((1, 2), (-1, 1), 2).to_string(), "1/2 - sqrt(2)");
        assert_eq!(q((0, 1), (3, 1), 5).to_string(), "3*sqrt(5)");
    }

    proptest! {
        #[test]
        fn conjugation_is_a_ring_homomorphism(
            a in -50i64..50, b in -50i64..50, c in -50i64..50, e in -50i64..50,
            da in 1i64..9, db in 1i64..9, d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 13])
        ) {
            let x = q((a, da), (b, db), d);
            let y = q((c, db), (e, da), d);
            prop_assert_eq!(x.mul(&y).unwrap().conj(), x.conj().mul(&y.conj()).unwrap());
            prop_assert_eq!(x.add(&y).unwrap().conj(), x.conj().add(&y.conj()).unwrap());
        }

        #[test]
        fn sign_agrees_with_float(a in -10_000i64..10_000, b in -10_000i64..10_000, d in prop::sample::select(vec![2i64, 3, 5, 7])) {
            let x = q((a, 7), (b, 5), d);
            let approx = x.approx();
            if approx.abs() > 1e-9 {
                prop_assert_eq!(x.is_positive(), approx > 0.0);
            }
        }
    }
}
