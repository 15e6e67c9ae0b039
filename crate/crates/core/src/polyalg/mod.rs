//! Exact polynomial algebra over `Q`: univariate, Laurent and bivariate
//! polynomials, rational functions, gcds, Bezout certificates, integer
//! root finding and factorization over `Z`.

mod bi;
mod integral;
mod laurent;
mod ratfunc;
mod uni;
mod zfactor;

pub use bi::{bi_substitute, BiPoly, IntEvaluator};
pub use integral::{
    bezout_certificate, integer_roots, integral_value_params, BezoutCertificate, IntegralParams,
    MAX_PERIODIC_MODULUS,
};
pub use laurent::LaurentPoly;
pub use ratfunc::RationalFunction;
pub use uni::UniPoly;
pub use zfactor::{
    factor_over_q, squarefree_decomposition, zero_pole_orders, PointClass, MAX_FACTOR_DEGREE,
    MAX_FACTOR_HEIGHT,
};

use crate::exactmath::{BigInt, ExactMathError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomials share the nonconstant factor {0}")]
    NotCoprime(String),
    #[error("both polynomials are constant")]
    BothConstant,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("the zero function has no divisor")]
    ZeroFunction,
    #[error("factorization beyond supported limits: {0}")]
    FactorizationTooHard(String),
    #[error("constant denominator {0} is too large for residue enumeration")]
    ModulusTooLarge(BigInt),
    #[error(transparent)]
    Exact(#[from] ExactMathError),
}

/// Monic gcd; zero when both inputs are zero.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(&r1).expect("nonzero divisor");
        r0 = r1;
        r1 = r;
    }
    r0.monic()
}

/// Extended Euclid: returns `(g, u, v)` with `u*f + v*g_in = g` and `g` monic.
pub fn uni_ext_gcd(f: &UniPoly, g: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly), PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let lc_inv = r0.leading_coeff().expect("nonzero gcd").recip();
    Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;
    use proptest::prelude::*;

    #[test]
    fn ext_gcd_examples() {
        let (g, _, _) =
            uni_ext_gcd(&UniPoly::from_i64(&[-1, 0, 1]), &UniPoly::from_i64(&[1, 1])).unwrap();
        assert_eq!(g, UniPoly::from_i64(&[1, 1]));

        let (g, u, v) =
            uni_ext_gcd(&UniPoly::from_i64(&[1, 0, 1]), &UniPoly::from_i64(&[0, 1])).unwrap();
        assert_eq!(g, UniPoly::one());
        assert_eq!(u, UniPoly::one());
        assert_eq!(v, UniPoly::from_i64(&[0, -1]));

        let f = UniPoly::from_i64(&[3, 0, 2]);
        let (g, u, v) = uni_ext_gcd(&f, &UniPoly::zero()).unwrap();
        assert_eq!(g, f.monic());
        assert_eq!(u, UniPoly::constant(ratio(1, 2)));
        assert!(v.is_zero());

        assert_eq!(
            uni_ext_gcd(&UniPoly::zero(), &UniPoly::zero()),
            Err(PolyError::BothZero)
        );
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-20i64..=20, 0..6).prop_map(|c| UniPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn ext_gcd_identity(f in small_poly(), g in small_poly()) {
            prop_assume!(!(f.is_zero() && g.is_zero()));
            let (d, u, v) = uni_ext_gcd(&f, &g).unwrap();
            prop_assert_eq!(&(&(&u * &f) + &(&v * &g)), &d);
            prop_assert!(f.div_rem(&d).unwrap().1.is_zero());
            prop_assert!(g.div_rem(&d).unwrap().1.is_zero());
            prop_assert!(d.leading_coeff().unwrap() == &crate::exactmath::rat(1));
        }
    }
}
