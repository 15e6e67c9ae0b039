//! Squarefree decomposition and factorization over `Z` (Zassenhaus:
//! factor modulo a small prime, Hensel lift, recombine), and the divisor
//! of a univariate rational function.

use super::{uni_gcd, PolyError, RationalFunction, UniPoly};
use crate::exactmath::{BigInt, BigRational};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::fmt;

pub const MAX_FACTOR_DEGREE: usize = 30;
pub const MAX_FACTOR_HEIGHT: u64 = 1_000_000;
const MAX_SUBSETS: u64 = 1 << 20;

/// Yun's algorithm: monic squarefree, pairwise coprime `(part, multiplicity)`
/// with `f = lc * prod part^multiplicity`. Constant inputs give an empty list.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let a = f.monic();
    let b = a.derivative();
    let c = uni_gcd(&a, &b);
    let mut w = a.exact_div(&c).expect("gcd divides");
    let mut y = b.exact_div(&c).expect("gcd divides");
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while !w.is_constant() {
        let g = uni_gcd(&w, &z);
        w = w.exact_div(&g).expect("gcd divides");
        y = z.exact_div(&g).expect("gcd divides");
        z = &y - &w.derivative();
        if !g.is_constant() {
            out.push((g, i));
        }
        i += 1;
    }
    out
}

/// Monic irreducible factors over `Q` with multiplicities, ordered by
/// [`class_order`].
pub fn factor_over_q(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for fac in factor_squarefree_integer(&part.primitive_integer())? {
            out.push((UniPoly::from_integers(&fac).monic(), mult));
        }
    }
    out.sort_by(|a, b| class_order(&a.0, &b.0));
    Ok(out)
}

/// Lower degree first; then coefficients from the constant term up,
/// comparing magnitudes with negative before positive on ties.
fn class_order(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            let key = |q: &BigRational| (q.abs(), !q.is_negative());
            match key(x).cmp(&key(y)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// A geometric point class on `P^1`: the roots of a monic irreducible
/// polynomial over `Q`, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    Finite(UniPoly),
    Infinity,
}

impl PointClass {
    /// Number of geometric points in the class.
    pub fn size(&self) -> usize {
        match self {
            PointClass::Finite(p) => p.degree().unwrap_or(0),
            PointClass::Infinity => 1,
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::Finite(p) => write!(f, "{p} = 0"),
            PointClass::Infinity => f.write_str("infinity"),
        }
    }
}

/// Orders of zeros (positive) and poles (negative) of `f`, one entry per
/// point class: numerator classes, then denominator classes, then infinity
/// when its order is nonzero.
pub fn zero_pole_orders(f: &RationalFunction) -> Result<Vec<(PointClass, i64)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroFunction);
    }
    let mut out = Vec::new();
    for (p, m) in factor_over_q(f.numerator())? {
        out.push((PointClass::Finite(p), m as i64));
    }
    for (p, m) in factor_over_q(f.denominator())? {
        out.push((PointClass::Finite(p), -(m as i64)));
    }
    let inf = f.denominator().degree_i64() - f.numerator().degree_i64();
    if inf != 0 {
        out.push((PointClass::Infinity, inf));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[t], p an odd prime below 2^31. Coefficients ascending,
// no trailing zeros.

type Zp = Vec<u64>;

fn zp_trim(mut a: Zp) -> Zp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn zp_from_int(f: &[BigInt], p: u64) -> Zp {
    let pb = BigInt::from(p);
    zp_trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect(),
    )
}

fn zp_inv(a: u64, p: u64) -> u64 {
    zp_pow_scalar(a, p - 2, p)
}

fn zp_pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn zp_sub(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    zp_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn zp_mul(a: &Zp, b: &Zp, p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    zp_trim(out)
}

fn zp_scale(a: &Zp, c: u64, p: u64) -> Zp {
    zp_trim(a.iter().map(|x| x * c % p).collect())
}

fn zp_divrem(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let inv = zp_inv(b[db], p);
    let mut rem = a.clone();
    let mut quot = vec![0u64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db] * inv % p;
        quot[i] = c;
        if c != 0 {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * y % p) % p;
            }
        }
    }
    rem.truncate(db);
    (zp_trim(quot), zp_trim(rem))
}

fn zp_rem(a: &Zp, b: &Zp, p: u64) -> Zp {
    zp_divrem(a, b, p).1
}

fn zp_monic(a: &Zp, p: u64) -> Zp {
    match a.last() {
        Some(&lc) => zp_scale(a, zp_inv(lc, p), p),
        None => Vec::new(),
    }
}

fn zp_gcd(a: &Zp, b: &Zp, p: u64) -> Zp {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_empty() {
        let r = zp_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    zp_monic(&r0, p)
}

/// `(s, t)` with `s*a + t*b = 1`, for coprime `a`, `b`.
fn zp_ext_gcd(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Zp, Zp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Zp, Zp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        let s = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        let t = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    debug_assert_eq!(r0.len(), 1, "inputs must be coprime");
    let inv = zp_inv(r0[0], p);
    (zp_scale(&s0, inv, p), zp_scale(&t0, inv, p))
}

fn zp_derivative(a: &Zp, p: u64) -> Zp {
    zp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn zp_powmod(base: &Zp, exp: &BigUint, modulus: &Zp, p: u64) -> Zp {
    let mut acc: Zp = zp_rem(&vec![1], modulus, p);
    let base = zp_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        acc = zp_rem(&zp_mul(&acc, &acc, p), modulus, p);
        if exp.bit(i) {
            acc = zp_rem(&zp_mul(&acc, &base, p), modulus, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn zp_ddf(f: &Zp, p: u64) -> Vec<(Zp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Zp = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut i = 0;
    while f.len() - 1 >= 2 * (i + 1) {
        i += 1;
        h = zp_powmod(&h, &pe, &f, p);
        let g = zp_gcd(&zp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = zp_divrem(&f, &g, p).0;
            h = zp_rem(&h, &f, p);
            out.push((g, i));
        }
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a monic product of
/// irreducibles of degree `d`.
fn zp_edf(f: &Zp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Zp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
    loop {
        let a: Zp = zp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let mut g = zp_gcd(&a, f, p);
        if g.len() == 1 {
            let b = zp_sub(&zp_powmod(&a, &e, f, p), &vec![1], p);
            g = zp_gcd(&b, f, p);
        }
        if g.len() > 1 && g.len() < f.len() {
            let h = zp_divrem(f, &g, p).0;
            let mut out = zp_edf(&g, d, p, rng);
            out.extend(zp_edf(&h, d, p, rng));
            return out;
        }
    }
}

fn small_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo m.

fn zm_reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&out, m)
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    zm_reduce(&v, m)
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let neg: Vec<BigInt> = b.iter().map(|c| -c).collect();
    zm_add(a, &neg, m)
}

/// Division by a monic polynomial modulo `m`.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), zm_reduce(a, m));
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (zm_reduce(&quot, m), zm_reduce(&rem, m))
}

fn zp_to_zm(a: &Zp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g*h`, `s*g + t*h = 1` modulo `m`
/// to the same relations modulo `m^2`, keeping `h` monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = zm_sub(f, &zm_mul(g, h, m2), m2);
    let (q, r) = zm_divrem_monic(&zm_mul(s, &e, m2), h, m2);
    let g2 = zm_add(g, &zm_add(&zm_mul(t, &e, m2), &zm_mul(&q, g, m2), m2), m2);
    let h2 = zm_add(h, &r, m2);
    let b = zm_sub(
        &zm_add(&zm_mul(s, &g2, m2), &zm_mul(t, &h2, m2), m2),
        &[BigInt::one()],
        m2,
    );
    let (c, d) = zm_divrem_monic(&zm_mul(s, &b, m2), &h2, m2);
    let s2 = zm_sub(s, &d, m2);
    let t2 = zm_sub(t, &zm_add(&zm_mul(t, &b, m2), &zm_mul(&c, &g2, m2), m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic factorization `f = lc * prod factors (mod p)` to
/// monic factors modulo `modulus = p^(2^k)`.
fn multifactor_lift(f: &[BigInt], factors: &[Zp], p: u64, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero").clone();
        let inv = lc
            .modinv(modulus)
            .expect("leading coefficient is a unit modulo p");
        return vec![zm_reduce(
            &f.iter().map(|c| c * &inv).collect::<Vec<_>>(),
            modulus,
        )];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = f
        .last()
        .unwrap()
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .unwrap();
    let g0 = zp_scale(
        &left.iter().fold(vec![1], |acc, u| zp_mul(&acc, u, p)),
        lc_p,
        p,
    );
    let h0 = right.iter().fold(vec![1], |acc, u| zp_mul(&acc, u, p));
    let (s0, t0) = zp_ext_gcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (zp_to_zm(&g0), zp_to_zm(&h0), zp_to_zm(&s0), zp_to_zm(&t0));
    let mut m = BigInt::from(p);
    while &m < modulus {
        m = &m * &m;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
    }
    let mut out = multifactor_lift(&g, left, p, modulus);
    out.extend(multifactor_lift(&h, right, p, modulus));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    let content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    a.into_iter().map(|c| c / &content * &sign).collect()
}

/// Exact quotient over `Z`, if `d` divides `f`.
fn int_exact_div(f: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if !f[0].is_zero() && !(&f[0] % &d[0]).is_zero() {
        return None;
    }
    let (q, r) = UniPoly::from_integers(f)
        .div_rem(&UniPoly::from_integers(d))
        .ok()?;
    if !r.is_zero() {
        return None;
    }
    q.integer_coeffs()
}

/// Irreducible factors over `Z` of a primitive squarefree polynomial with
/// positive leading coefficient.
fn factor_squarefree_integer(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>, PolyError> {
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let height = f.iter().map(|c| c.abs()).max().unwrap();
    if n > MAX_FACTOR_DEGREE || height > BigInt::from(MAX_FACTOR_HEIGHT) {
        return Err(PolyError::FactorizationTooHard(format!(
            "degree {n}, height {height}"
        )));
    }
    let lc = f[n].clone();

    // Pick the prime with the fewest modular factors among a few candidates.
    let mut best: Option<(u64, Vec<(Zp, usize)>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 5 {
        p += 1;
        if !small_is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = zp_from_int(f, p);
        if zp_gcd(&fp, &zp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        tried += 1;
        let ddf = zp_ddf(&zp_monic(&fp, p), p);
        let count: usize = ddf.iter().map(|(g, d)| (g.len() - 1) / d).sum();
        if best.as_ref().map_or(true, |(_, b)| {
            count < b.iter().map(|(g, d)| (g.len() - 1) / d).sum()
        }) {
            best = Some((p, ddf));
        }
        if count == 1 {
            break;
        }
    }
    let (p, ddf) = best.expect("some prime works");
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let modular: Vec<Zp> = ddf
        .iter()
        .flat_map(|(g, d)| zp_edf(g, *d, p, &mut rng))
        .collect();
    if modular.len() == 1 {
        return Ok(vec![f.to_vec()]);
    }

    // Coefficients of any factor, scaled to leading coefficient lc, are
    // bounded by |lc| * 2^n * ||f||_1.
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = lc.abs() * (BigInt::one() << n) * norm1;
    let mut modulus = BigInt::from(p);
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
    }
    let mut lifted = multifactor_lift(f, &modular, p, &modulus);

    let mut factors = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    let mut budget = MAX_SUBSETS;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if budget == 0 {
                return Err(PolyError::FactorizationTooHard(
                    "recombination search exhausted".into(),
                ));
            }
            budget -= 1;
            let lc_rest = rest.last().unwrap().clone();
            let prod = idx
                .iter()
                .fold(vec![lc_rest], |acc, &i| zm_mul(&acc, &lifted[i], &modulus));
            let cand = primitive(symmetric(&prod, &modulus));
            if cand.len() > 1 {
                if let Some(q) = int_exact_div(&rest, &cand) {
                    factors.push(cand);
                    rest = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            // Next combination of `size` indices from `0..r`.
            let mut k = size;
            while k > 0 && idx[k - 1] == r - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        factors.push(primitive(rest));
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn yun_multiplicities() {
        // t^3 (t - 1)^2 (t + 2)
        let f = &(&up(&[0, 0, 0, 1]) * &up(&[-1, 1]).pow(2)) * &up(&[2, 1]);
        let parts = squarefree_decomposition(&f);
        assert_eq!(
            parts,
            vec![(up(&[2, 1]), 1), (up(&[-1, 1]), 2), (up(&[0, 1]), 3)]
        );
    }

    #[test]
    fn factors_known_polynomials() {
        // (t^2 + 1)(t^2 - 2)(2t + 3)
        let f = &(&up(&[1, 0, 1]) * &up(&[-2, 0, 1])) * &up(&[3, 2]);
        let got = factor_over_q(&f).unwrap();
        let polys: Vec<UniPoly> = got.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(polys.len(), 3);
        assert!(polys.contains(&up(&[1, 0, 1])));
        assert!(polys.contains(&up(&[-2, 0, 1])));
        assert!(polys.contains(&up(&[3, 2]).monic()));

        // t^4 + 1 is irreducible over Q but splits modulo every prime.
        assert_eq!(factor_over_q(&up(&[1, 0, 0, 0, 1])).unwrap(), vec![(up(&[1, 0, 0, 0, 1]), 1)]);

        // t^8 - 1 = (t-1)(t+1)(t^2+1)(t^4+1)
        let got = factor_over_q(&up(&[-1, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn too_large_inputs_are_rejected() {
        let mut c = vec![0i64; 32];
        c[0] = 1;
        c[31] = 1;
        assert!(matches!(
            factor_over_q(&up(&c)),
            Err(PolyError::FactorizationTooHard(_))
        ));
        assert!(matches!(
            factor_over_q(&up(&[1, 7, 2_000_001])),
            Err(PolyError::FactorizationTooHard(_))
        ));
    }

    #[test]
    fn zero_pole_examples() {
        let t = RationalFunction::var();
        assert_eq!(
            zero_pole_orders(&t).unwrap(),
            vec![(PointClass::Finite(up(&[0, 1])), 1), (PointClass::Infinity, -1)]
        );
        let f = RationalFunction::from_poly(up(&[0, -1, 1]));
        assert_eq!(
            zero_pole_orders(&f).unwrap(),
            vec![
                (PointClass::Finite(up(&[0, 1])), 1),
                (PointClass::Finite(up(&[-1, 1])), 1),
                (PointClass::Infinity, -2)
            ]
        );
        let f = RationalFunction::new(up(&[0, 0, 1]), up(&[-1, 0, 1])).unwrap();
        assert_eq!(
            zero_pole_orders(&f).unwrap(),
            vec![
                (PointClass::Finite(up(&[0, 1])), 2),
                (PointClass::Finite(up(&[-1, 1])), -1),
                (PointClass::Finite(up(&[1, 1])), -1)
            ]
        );
        assert_eq!(
            zero_pole_orders(&RationalFunction::constant(rat(0))),
            Err(PolyError::ZeroFunction)
        );
    }

    fn factor_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-9i64..=9, 2..=4), 1..=4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_of_factors_reconstructs(parts in factor_strategy()) {
            let polys: Vec<UniPoly> = parts.iter().map(|c| up(c)).filter(|p| !p.is_constant()).collect();
            prop_assume!(!polys.is_empty());
            let f = polys.iter().fold(UniPoly::one(), |acc, p| &acc * p);
            let got = factor_over_q(&f).unwrap();
            let rebuilt = got.iter().fold(UniPoly::one(), |acc, (p, m)| &acc * &p.pow(*m));
            prop_assert_eq!(rebuilt, f.monic());
            // Every returned factor is irreducible at least as far as having
            // no rational root when its degree exceeds one.
            for (p, _) in &got {
                if p.degree().unwrap() > 1 {
                    prop_assert!(super::super::integer_roots(&UniPoly::from_integers(&p.primitive_integer()))
                        .unwrap()
                        .is_empty());
                }
            }
            // At least as many factors as nonconstant input pieces.
            let total: u32 = got.iter().map(|(_, m)| *m).sum();
            prop_assert!(total as usize >= polys.len());
        }

        #[test]
        fn degree_sum_law(num in prop::collection::vec(-9i64..=9, 1..=6), den in prop::collection::vec(-9i64..=9, 1..=6)) {
            let n = up(&num);
            let d = up(&den);
            prop_assume!(!n.is_zero() && !d.is_zero());
            let f = RationalFunction::new(n, d).unwrap();
            let orders = zero_pole_orders(&f).unwrap();
            let total: i64 = orders.iter().map(|(c, o)| c.size() as i64 * o).sum();
            prop_assert_eq!(total, 0);
        }
    }
}
