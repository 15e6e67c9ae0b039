//! Local Hilbert symbols `(a, b)_v` over `Q`.

use super::{factorize, is_prime, ExactMathError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A place of `Q`: a finite prime or the real place. Primes sort before the
/// real place.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Prime(BigInt),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertVerdict {
    SolvableEverywhere,
    FailsAt(Vec<Place>),
}

/// Same square class as `q`, but integral: `num/den ~ num*den`.
fn integral_representative(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

fn split_valuation(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i8;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn residue(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m)).to_u32().expect("small residue")
}

fn symbol_at_two(a: &BigInt, b: &BigInt) -> i8 {
    let two = BigInt::from(2);
    let (alpha, u) = split_valuation(a, &two);
    let (beta, v) = split_valuation(b, &two);
    // epsilon(u) = (u - 1)/2 mod 2, omega(u) = (u^2 - 1)/8 mod 2.
    let eps = |x: &BigInt| u64::from(residue(x, 4) == 3);
    let omega = |x: &BigInt| {
        let r = residue(x, 8);
        u64::from(r == 3 || r == 5)
    };
    let exponent = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

fn symbol_at_odd(a: &BigInt, b: &BigInt, p: &BigInt) -> i8 {
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    let mut s: i8 = 1;
    // (-1)^(alpha*beta*(p-1)/2)
    if alpha % 2 == 1 && beta % 2 == 1 && residue(p, 4) == 3 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= jacobi(&u, p);
    }
    if alpha % 2 == 1 {
        s *= jacobi(&v, p);
    }
    s
}

/// The local Hilbert symbol `(a, b)_v`: `+1` iff `a x^2 + b y^2 = z^2` has a
/// nontrivial solution over the completion of `Q` at `place`.
pub fn hilbert_symbol(
    a: &BigRational,
    b: &BigRational,
    place: &Place,
) -> Result<i8, ExactMathError> {
    if a.is_zero() || b.is_zero() {
        return Err(ExactMathError::ZeroArgument);
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(ExactMathError::NotPrime(p.clone()));
            }
            let a = integral_representative(a);
            let b = integral_representative(b);
            if p == &BigInt::from(2) {
                Ok(symbol_at_two(&a, &b))
            } else {
                Ok(symbol_at_odd(&a, &b, p))
            }
        }
    }
}

/// The places at which `(a, b)_v` can be `-1`: the real place, 2, and the odd
/// primes dividing a numerator or denominator. Primes ascending, real place
/// last.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Result<Vec<Place>, ExactMathError> {
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    primes.insert(BigInt::from(2));
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        primes.extend(factorize(n)?.primes().cloned());
    }
    let mut places: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// Evaluates the symbol at every relevant place and lists the failures.
pub fn hilbert_global_check(
    a: &BigRational,
    b: &BigRational,
) -> Result<HilbertVerdict, ExactMathError> {
    if a.is_zero() || b.is_zero() {
        return Err(ExactMathError::ZeroArgument);
    }
    let mut failing = Vec::new();
    for place in relevant_places(a, b)? {
        if hilbert_symbol(a, b, &place)? == -1 {
            failing.push(place);
        }
    }
    Ok(if failing.is_empty() {
        HilbertVerdict::SolvableEverywhere
    } else {
        HilbertVerdict::FailsAt(failing)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};
    use proptest::prelude::*;

    fn prime(p: i64) -> Place {
        Place::Prime(BigInt::from(p))
    }

    /// Brute-force local solvability: a primitive solution of
    /// `a x^2 + b y^2 = z^2` modulo `p^k`. With squarefree `a, b` this is
    /// equivalent to solvability over `Q_p` for `k = 3` (odd p) or `k = 6`
    /// (p = 2).
    fn locally_solvable_oracle(a: i64, b: i64, p: i64) -> bool {
        let k = if p == 2 { 6 } else { 3 };
        let m = p.pow(k);
        let sq: Vec<i64> = (0..m).map(|z| z * z % m).collect();
        let mut unit_squares = vec![false; m as usize];
        let mut all_squares = vec![false; m as usize];
        for z in 0..m {
            all_squares[sq[z as usize] as usize] = true;
            if z % p != 0 {
                unit_squares[sq[z as usize] as usize] = true;
            }
        }
        for x in 0..m {
            for y in 0..m {
                let val = (a * sq[x as usize] + b * sq[y as usize]).rem_euclid(m) as usize;
                let primitive_xy = x % p != 0 || y % p != 0;
                if (primitive_xy && all_squares[val]) || unit_squares[val] {
                    return true;
                }
            }
        }
        false
    }

    fn squarefree(n: i64) -> bool {
        n != 0 && (2..=n.abs()).all(|d| d * d > n.abs() || n % (d * d) != 0)
    }

    #[test]
    fn worked_values() {
        for place in [prime(2), prime(3), prime(7), Place::Infinity] {
            assert_eq!(hilbert_symbol(&ratio(5, 3), &ratio(-5, 3), &place), Ok(1));
        }
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::Infinity), Ok(-1));
        assert_eq!(hilbert_symbol(&rat(2), &rat(3), &prime(2)), Ok(-1));
        assert!(!locally_solvable_oracle(2, 3, 2));
    }

    #[test]
    fn global_checks() {
        assert_eq!(
            hilbert_global_check(&rat(1), &rat(1)),
            Ok(HilbertVerdict::SolvableEverywhere)
        );
        assert_eq!(
            hilbert_global_check(&rat(-1), &rat(-1)),
            Ok(HilbertVerdict::FailsAt(vec![prime(2), Place::Infinity]))
        );
        assert_eq!(
            hilbert_global_check(&rat(5), &rat(-4)),
            Ok(HilbertVerdict::SolvableEverywhere)
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            hilbert_symbol(&rat(0), &rat(1), &Place::Infinity),
            Err(ExactMathError::ZeroArgument)
        );
        assert_eq!(
            hilbert_symbol(&rat(1), &rat(1), &prime(9)),
            Err(ExactMathError::NotPrime(BigInt::from(9)))
        );
        assert!(hilbert_global_check(&rat(3), &rat(0)).is_err());
    }

    #[test]
    fn agrees_with_brute_force_oracle() {
        for p in [2i64, 3, 5, 7] {
            for a in -15i64..=15 {
                for b in -15i64..=15 {
                    if !squarefree(a) || !squarefree(b) {
                        continue;
                    }
                    let expected = if locally_solvable_oracle(a, b, p) { 1 } else { -1 };
                    assert_eq!(
                        hilbert_symbol(&rat(a), &rat(b), &prime(p)).unwrap(),
                        expected,
                        "({a}, {b})_{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 101] {
            for a in 1..p {
                let euler = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
                let expected = if euler.is_one() { 1 } else { -1 };
                assert_eq!(jacobi(&BigInt::from(a), &BigInt::from(p)), expected);
            }
        }
    }

    fn nonzero_rational() -> impl Strategy<Value = BigRational> {
        (1i64..=1_000_000, 1i64..=1_000_000, any::<bool>()).prop_map(|(n, d, neg)| {
            let r = ratio(n, d);
            if neg {
                -r
            } else {
                r
            }
        })
    }

    proptest! {
        #[test]
        fn bilinear(a in nonzero_rational(), a2 in nonzero_rational(), b in nonzero_rational()) {
            for place in relevant_places(&(&a * &a2), &b).unwrap() {
                let lhs = hilbert_symbol(&(&a * &a2), &b, &place).unwrap();
                let rhs = hilbert_symbol(&a, &b, &place).unwrap() * hilbert_symbol(&a2, &b, &place).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn square_classes_and_symmetry(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
            for place in relevant_places(&a, &b).unwrap() {
                let base = hilbert_symbol(&a, &b, &place).unwrap();
                prop_assert_eq!(hilbert_symbol(&(&a * &c * &c), &b, &place).unwrap(), base);
                prop_assert_eq!(hilbert_symbol(&b, &a, &place).unwrap(), base);
                prop_assert_eq!(hilbert_symbol(&a, &(-&a), &place).unwrap(), 1);
            }
        }

        #[test]
        fn product_formula(a in nonzero_rational(), b in nonzero_rational()) {
            let product: i8 = relevant_places(&a, &b).unwrap().iter()
                .map(|v| hilbert_symbol(&a, &b, v).unwrap())
                .product();
            prop_assert_eq!(product, 1);
        }
    }
}
