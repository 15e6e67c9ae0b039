//! Bezout certificates and integer parameters with integral quotient.

use super::{uni_ext_gcd, PolyError, UniPoly};
use crate::exactmath::{divisors, lcm_denominators, BigInt, BigRational};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Integer polynomials `r`, `s` and a nonzero integer `n` with
/// `r*f + s*g = n` identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutCertificate {
    #[serde(serialize_with = "ser_poly")]
    pub r: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub s: UniPoly,
    #[serde(serialize_with = "ser_display")]
    pub n: BigInt,
}

fn ser_poly<S: serde::Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl BezoutCertificate {
    /// Checks `r*f + s*g == n` exactly.
    pub fn verify(&self, f: &UniPoly, g: &UniPoly) -> bool {
        let lhs = &(&self.r * f) + &(&self.s * g);
        lhs == UniPoly::constant(BigRational::from_integer(self.n.clone()))
    }
}

pub fn bezout_certificate(f: &UniPoly, g: &UniPoly) -> Result<BezoutCertificate, PolyError> {
    if f.is_constant() && g.is_constant() {
        return Err(PolyError::BothConstant);
    }
    let (d, u, v) = uni_ext_gcd(f, g)?;
    if !d.is_constant() {
        return Err(PolyError::NotCoprime(d.to_string()));
    }
    let l = lcm_denominators(u.coeffs().iter().chain(v.coeffs()));
    let scale = BigRational::from_integer(l.clone());
    let cert = BezoutCertificate {
        r: u.scale(&scale),
        s: v.scale(&scale),
        n: l,
    };
    assert!(cert.verify(f, g), "Bezout resubstitution failed");
    Ok(cert)
}

/// Integers `t` at which `f(t)/g(t)` is an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntegralParams {
    AllIntegers,
    /// `t` works iff `t mod modulus` lies in `residues`.
    Periodic {
        #[serde(serialize_with = "ser_display")]
        modulus: BigInt,
        #[serde(serialize_with = "ser_ints")]
        residues: Vec<BigInt>,
    },
    Finite(#[serde(serialize_with = "ser_ints")] Vec<BigInt>),
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl IntegralParams {
    pub fn contains(&self, t: &BigInt) -> bool {
        match self {
            IntegralParams::AllIntegers => true,
            IntegralParams::Periodic { modulus, residues } => {
                residues.binary_search(&t.mod_floor(modulus)).is_ok()
            }
            IntegralParams::Finite(ts) => ts.binary_search(t).is_ok(),
        }
    }
}

/// Largest constant denominator for which residues are enumerated.
pub const MAX_PERIODIC_MODULUS: u64 = 10_000_000;

fn to_integer_pair(f: &UniPoly, g: &UniPoly) -> (Vec<BigInt>, Vec<BigInt>) {
    let l = lcm_denominators(f.coeffs().iter().chain(g.coeffs()));
    let conv = |p: &UniPoly| -> Vec<BigInt> {
        p.coeffs()
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect()
    };
    (conv(f), conv(g))
}

fn horner(coeffs: &[BigInt], t: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * t + c)
}

pub fn integral_value_params(f: &UniPoly, g: &UniPoly) -> Result<IntegralParams, PolyError> {
    if g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let (fi, gi) = to_integer_pair(f, g);
    if g.is_constant() {
        let m = gi[0].abs();
        if m.is_one() {
            return Ok(IntegralParams::AllIntegers);
        }
        let content = fi.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if (&content % &m).is_zero() {
            return Ok(IntegralParams::AllIntegers);
        }
        let bound = m
            .to_u64()
            .filter(|&b| b <= MAX_PERIODIC_MODULUS)
            .ok_or_else(|| PolyError::ModulusTooLarge(m.clone()))?;
        let residues: Vec<BigInt> = (0..bound)
            .map(BigInt::from)
            .filter(|t| (horner(&fi, t) % &m).is_zero())
            .collect();
        return Ok(if residues.is_empty() {
            IntegralParams::Finite(Vec::new())
        } else {
            IntegralParams::Periodic {
                modulus: m,
                residues,
            }
        });
    }
    let cert = bezout_certificate(f, g)?;
    let solver = MonotoneSolver::new(&gi, &cert.n);
    let mut found = Vec::new();
    for d in divisors(&cert.n)? {
        for target in [d.clone(), -d] {
            for t in solver.solve(&target) {
                let gv = horner(&gi, &t);
                if !gv.is_zero() && (horner(&fi, &t) % &gv).is_zero() {
                    found.push(t);
                }
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(IntegralParams::Finite(found))
}

/// Sorted distinct integer roots of a nonzero polynomial.
pub fn integer_roots(p: &UniPoly) -> Result<Vec<BigInt>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut coeffs = p.primitive_integer();
    let mut roots = Vec::new();
    let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(BigInt::zero());
        coeffs.drain(..lead_zeros);
    }
    if coeffs.len() > 1 {
        let bound = cauchy_bound(&coeffs);
        for d in divisors(&coeffs[0])? {
            if d > bound {
                break;
            }
            for t in [d.clone(), -d] {
                if horner(&coeffs, &t).is_zero() {
                    roots.push(t);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// `1 + max |a_i / a_n|`, rounded up; bounds the absolute value of every root.
fn cauchy_bound(coeffs: &[BigInt]) -> BigInt {
    let lc = coeffs.last().expect("nonzero").abs();
    let m = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigInt::one() + m.div_ceil(&lc)
}

/// Sturm sequence of a squarefree integer polynomial.
struct Sturm {
    seq: Vec<UniPoly>,
}

impl Sturm {
    fn new(p: &UniPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero");
            seq.push(-r);
        }
        seq.pop();
        Sturm { seq }
    }

    fn sign_changes(&self, t: &BigInt) -> usize {
        let tq = BigRational::from_integer(t.clone());
        let signs: Vec<bool> = self
            .seq
            .iter()
            .map(|q| q.eval(&tq))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(a, b]`.
    fn count(&self, a: &BigInt, b: &BigInt) -> usize {
        self.sign_changes(a) - self.sign_changes(b)
    }
}

/// Solves `g(t) = c` over the integers for many right-hand sides with
/// `|c| <= max_rhs`, by binary search on integer intervals where `g` is
/// monotone.
struct MonotoneSolver {
    g: Vec<BigInt>,
    /// Consecutive breakpoints delimit intervals on which `g` is monotone.
    breakpoints: Vec<BigInt>,
}

impl MonotoneSolver {
    fn new(g: &[BigInt], max_rhs: &BigInt) -> Self {
        let lc = g.last().expect("nonconstant").abs();
        let m = g[..g.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
            + max_rhs.abs();
        let bound = BigInt::one() + m.div_ceil(&lc);
        let mut breakpoints = vec![-bound.clone(), bound.clone()];
        let gp = UniPoly::from_integers(g).derivative();
        if !gp.is_constant() {
            let sqfree = gp
                .exact_div(&super::uni_gcd(&gp, &gp.derivative()))
                .expect("gcd divides");
            let sturm = Sturm::new(&sqfree);
            let r = cauchy_bound(&sqfree.primitive_integer());
            let mut stack = vec![(-r.clone() - 1, r)];
            while let Some((a, b)) = stack.pop() {
                if sturm.count(&a, &b) == 0 {
                    continue;
                }
                if &b - &a == BigInt::one() {
                    breakpoints.push(a);
                    breakpoints.push(b);
                } else {
                    let mid = (&a + &b).div_floor(&BigInt::from(2));
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
        breakpoints.retain(|t| t.abs() <= bound);
        breakpoints.sort();
        breakpoints.dedup();
        MonotoneSolver {
            g: g.to_vec(),
            breakpoints,
        }
    }

    fn solve(&self, c: &BigInt) -> Vec<BigInt> {
        let mut out = Vec::new();
        for w in self.breakpoints.windows(2) {
            let (mut lo, mut hi) = (w[0].clone(), w[1].clone());
            let vlo = horner(&self.g, &lo) - c;
            let vhi = horner(&self.g, &hi) - c;
            if vlo.is_zero() {
                out.push(lo.clone());
            }
            if vhi.is_zero() {
                out.push(hi.clone());
            }
            if vlo.is_zero() || vhi.is_zero() || vlo.signum() == vhi.signum() {
                continue;
            }
            let increasing = vlo.is_negative();
            while &hi - &lo > BigInt::one() {
                let mid = (&lo + &hi).div_floor(&BigInt::from(2));
                let v = horner(&self.g, &mid) - c;
                if v.is_zero() {
                    out.push(mid);
                    break;
                }
                if v.is_negative() == increasing {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bezout_examples() {
        let c = bezout_certificate(&UniPoly::from_i64(&[1, 0, 1]), &UniPoly::from_i64(&[0, 1]))
            .unwrap();
        assert_eq!((c.r, c.s, c.n), (UniPoly::one(), UniPoly::from_i64(&[0, -1]), BigInt::one()));

        let c = bezout_certificate(&UniPoly::from_i64(&[3, 1]), &UniPoly::from_i64(&[1, 1]))
            .unwrap();
        assert_eq!(c.r, UniPoly::one());
        assert_eq!(c.s, UniPoly::from_i64(&[-1]));
        assert_eq!(c.n, BigInt::from(2));

        assert!(matches!(
            bezout_certificate(&UniPoly::from_i64(&[-1, 0, 1]), &UniPoly::from_i64(&[1, 1])),
            Err(PolyError::NotCoprime(_))
        ));
    }

    #[test]
    fn integral_params_examples() {
        let p = integral_value_params(&UniPoly::from_i64(&[3, 1]), &UniPoly::from_i64(&[1, 1]))
            .unwrap();
        assert_eq!(p, IntegralParams::Finite(ints(&[-3, -2, 0, 1])));

        let p = integral_value_params(&UniPoly::from_i64(&[1, 0, 1]), &UniPoly::from_i64(&[0, 1]))
            .unwrap();
        assert_eq!(p, IntegralParams::Finite(ints(&[-1, 1])));

        let p = integral_value_params(&UniPoly::from_i64(&[0, 0, 1]), &UniPoly::one()).unwrap();
        assert_eq!(p, IntegralParams::AllIntegers);
    }

    #[test]
    fn constant_denominator_gives_residue_classes() {
        // t / 2 is integral exactly on even t.
        let p = integral_value_params(&UniPoly::from_i64(&[0, 1]), &UniPoly::from_i64(&[2]))
            .unwrap();
        assert_eq!(
            p,
            IntegralParams::Periodic {
                modulus: BigInt::from(2),
                residues: ints(&[0])
            }
        );
        // (t^2 + 1) / 3 is never integral.
        let p = integral_value_params(&UniPoly::from_i64(&[1, 0, 1]), &UniPoly::from_i64(&[3]))
            .unwrap();
        assert_eq!(p, IntegralParams::Finite(vec![]));
        // t(t + 1) / 2 is always integral.
        let p = integral_value_params(&UniPoly::from_i64(&[0, 1, 1]), &UniPoly::from_i64(&[2]))
            .unwrap();
        assert_eq!(
            p,
            IntegralParams::Periodic {
                modulus: BigInt::from(2),
                residues: ints(&[0, 1])
            }
        );
    }

    #[test]
    fn integer_roots_examples() {
        assert_eq!(integer_roots(&UniPoly::from_i64(&[-4, 0, 1])).unwrap(), ints(&[-2, 2]));
        assert_eq!(integer_roots(&UniPoly::from_i64(&[1, 0, 1])).unwrap(), ints(&[]));
        let p = UniPoly::from_i64(&[2, -3, -3, 2]);
        let oracle: Vec<BigInt> = (-10i64..=10)
            .map(BigInt::from)
            .filter(|t| p.eval(&BigRational::from_integer(t.clone())).is_zero())
            .collect();
        assert_eq!(integer_roots(&p).unwrap(), oracle);
        assert_eq!(oracle, ints(&[-1, 2]));
        assert_eq!(integer_roots(&UniPoly::zero()), Err(PolyError::ZeroPolynomial));
        assert_eq!(integer_roots(&UniPoly::from_i64(&[0, 0, 1, 1])).unwrap(), ints(&[-1, 0]));
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-20i64..=20, 1..=max_deg + 1).prop_map(|c| UniPoly::from_i64(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn bezout_resubstitutes(f in small_poly(6), g in small_poly(6)) {
            prop_assume!(!(f.is_constant() && g.is_constant()));
            prop_assume!(super::super::uni_gcd(&f, &g).is_constant());
            prop_assume!(!f.is_zero() || !g.is_zero());
            let c = bezout_certificate(&f, &g).unwrap();
            prop_assert!(c.r.has_integer_coeffs() && c.s.has_integer_coeffs());
            prop_assert!(!c.n.is_zero());
            let lhs = &(&c.r * &f) + &(&c.s * &g);
            prop_assert_eq!(lhs, UniPoly::constant(BigRational::from_integer(c.n.clone())));
        }

        #[test]
        fn integral_params_match_scan(f in small_poly(3), g in small_poly(3)) {
            prop_assume!(!g.is_zero());
            prop_assume!(super::super::uni_gcd(&f, &g).is_constant());
            let params = integral_value_params(&f, &g).unwrap();
            for t in -500i64..=500 {
                let tq = BigRational::from_integer(BigInt::from(t));
                let gv = g.eval(&tq);
                let integral = !gv.is_zero() && (f.eval(&tq) / gv).is_integer();
                prop_assert_eq!(integral, params.contains(&BigInt::from(t)), "t = {}", t);
            }
        }
    }
}
