//! Integer factorization: trial division up to 10^6, then Brent's variant of
//! Pollard rho backed by a Miller-Rabin test whose base set is deterministic
//! below [`MILLER_RABIN_LIMIT`].

use super::ExactMathError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

const TRIAL_LIMIT: u64 = 1_000_000;

/// The first thirteen primes form a deterministic Miller-Rabin witness set
/// for every odd composite below this value.
pub const MILLER_RABIN_LIMIT: &str = "3317044064679887385961981";

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// `sign * prod p^e` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: Sign,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self) -> BigInt {
        let magnitude = self
            .factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
        match self.sign {
            Sign::Positive => magnitude,
            Sign::Negative => -magnitude,
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

fn mr_limit() -> &'static BigInt {
    static LIMIT: OnceLock<BigInt> = OnceLock::new();
    LIMIT.get_or_init(|| MILLER_RABIN_LIMIT.parse().expect("valid literal"))
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality of `n`. Deterministic below [`MILLER_RABIN_LIMIT`]; above it the
/// same thirteen bases are used as a strong probable-prime test.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    is_prime_big(n)
}

fn rho_u64(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(128.min(r - k)) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn split_cofactor(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut stack = vec![small];
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime_u64(m) {
                out.push(BigInt::from(m));
            } else {
                let d = rho_u64(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        return;
    }
    if is_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_cofactor(d, out);
    split_cofactor(rest, out);
}

/// Prime factorization of a nonzero integer.
///
/// Cofactors left after trial division must lie below
/// [`MILLER_RABIN_LIMIT`]; larger cofactors fail with `FactorizationTooHard`.
pub fn factorize(n: &BigInt) -> Result<Factorization, ExactMathError> {
    if n.is_zero() {
        return Err(ExactMathError::ZeroInput);
    }
    let sign = if n.is_negative() {
        Sign::Negative
    } else {
        Sign::Positive
    };
    let mut m = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();

    if let Some(mut small) = m.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > small {
                break;
            }
            while small % p == 0 {
                primes.push(BigInt::from(p));
                small /= p;
            }
        }
        if small > 1 {
            if small < TRIAL_LIMIT * TRIAL_LIMIT {
                primes.push(BigInt::from(small));
            } else {
                split_cofactor(BigInt::from(small), &mut primes);
            }
        }
    } else {
        for &p in small_primes() {
            let pb = BigInt::from(p);
            if &pb * &pb > m {
                break;
            }
            loop {
                let (q, r) = m.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                primes.push(pb.clone());
                m = q;
            }
        }
        if !m.is_one() {
            if m < BigInt::from(TRIAL_LIMIT * TRIAL_LIMIT) {
                primes.push(m);
            } else if &m >= mr_limit() {
                return Err(ExactMathError::FactorizationTooHard(n.clone()));
            } else {
                split_cofactor(m, &mut primes);
            }
        }
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

/// Positive divisors of `|n|` in ascending order.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ExactMathError> {
    let fac = factorize(n)?;
    let mut out = vec![BigInt::one()];
    for (p, e) in &fac.factors {
        let current = out.len();
        let mut power = BigInt::one();
        for _ in 0..*e {
            power *= p;
            for i in 0..current {
                out.push(&out[i] * &power);
            }
        }
    }
    out.sort();
    Ok(out)
}
