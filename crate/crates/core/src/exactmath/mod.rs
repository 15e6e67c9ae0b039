//! Exact scalar arithmetic and multiplicative number theory.
//!
//! Integers and rationals are the `num` types; everything number theoretic
//! on top of them (factorization, divisors, Hilbert symbols, real quadratic
//! numbers) lives here.

mod factor;
mod hilbert;
mod quadratic;

pub use factor::{divisors, factorize, is_prime, Factorization, Sign, MILLER_RABIN_LIMIT};
pub use hilbert::{hilbert_global_check, hilbert_symbol, relevant_places, HilbertVerdict, Place};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use quadratic::QuadraticNumber;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("{0} is not a prime place")]
    NotPrime(BigInt),
    #[error("factorization of {0} is beyond the supported range")]
    FactorizationTooHard(BigInt),
    #[error("radicand {0} must be squarefree and greater than 1")]
    BadRadicand(BigInt),
    #[error("quadratic numbers over different radicands ({0} and {1})")]
    RadicandMismatch(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
}

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`; panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// The integer value of `q`, if it is integral.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    is_integral(q).then(|| q.numer().clone())
}

/// Least common multiple of the denominators (1 for an empty input).
pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Floor division on rationals, returning an integer.
pub fn floor_rat(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Ceiling of a rational.
pub fn ceil_rat(q: &BigRational) -> BigInt {
    let (d, m) = q.numer().div_mod_floor(q.denom());
    if m.is_zero() {
        d
    } else {
        d + 1
    }
}

/// Integer power with a signed exponent; `None` if `base` is zero and the
/// exponent is negative.
pub fn pow_rat(base: &BigRational, exp: i64) -> Option<BigRational> {
    if exp >= 0 {
        Some(num_traits::pow(base.clone(), exp as usize))
    } else if base.is_zero() {
        None
    } else {
        Some(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
    }
}

/// Exact integer square root (floor).
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Splits a nonzero integer `n` as `s^2 * f` with `f` squarefree and
/// carrying the sign of `n`.
pub fn squarefree_split(n: &BigInt) -> Result<(BigInt, BigInt), ExactMathError> {
    let fac = factorize(n)?;
    let mut square_root = BigInt::one();
    let mut free = match fac.sign {
        Sign::Positive => BigInt::one(),
        Sign::Negative => -BigInt::one(),
    };
    for (p, e) in &fac.factors {
        square_root *= num_traits::pow(p.clone(), (*e / 2) as usize);
        if e % 2 == 1 {
            free *= p;
        }
    }
    Ok((square_root, free))
}
