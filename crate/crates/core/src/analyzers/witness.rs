use super::{AnalyzerError, NormalForm};
use crate::changevars::CongruenceTarget;
use crate::exactmath::{ceil_rat, floor_rat, isqrt, BigInt, BigRational, QuadraticNumber};
use crate::polyalg::{BiPoly, IntEvaluator, UniPoly};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// Default number of candidate points examined before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// An integer point in a congruence class where `F` is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: BigInt,
    pub y: BigInt,
    /// `F(x, y)`; rational when `F` has rational coefficients.
    pub value: BigRational,
    pub target: CongruenceTarget,
    pub method: &'static str,
}

impl Witness {
    /// Exact recheck against `f`: integral point, in the target, value
    /// below `threshold`.
    pub fn verify(&self, f: &BiPoly, threshold: &BigRational) -> bool {
        let pt = (
            BigRational::from_integer(self.x.clone()),
            BigRational::from_integer(self.y.clone()),
        );
        self.target.contains(&pt) && f.eval(&pt.0, &pt.1) == self.value && &self.value < threshold
    }
}

#[derive(Serialize)]
struct WitnessRepr {
    x: String,
    y: String,
    value: String,
    target: [String; 3],
    method: &'static str,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WitnessRepr {
            x: self.x.to_string(),
            y: self.y.to_string(),
            value: self.value.to_string(),
            target: [
                self.target.x0.to_string(),
                self.target.y0.to_string(),
                self.target.n.to_string(),
            ],
            method: self.method,
        }
        .serialize(s)
    }
}

fn q(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Smallest `v0 + n*i` strictly above `r`.
fn first_above(v0: &BigRational, n: &BigInt, r: &BigRational) -> BigRational {
    let i = floor_rat(&((r - v0) / q(n))) + 1;
    v0 + q(&(n * i))
}

/// Largest `v0 + n*i` strictly below `r`.
fn last_below(v0: &BigRational, n: &BigInt, r: &BigRational) -> BigRational {
    let i = ceil_rat(&((r - v0) / q(n))) - 1;
    v0 + q(&(n * i))
}

/// `0, 1, -1, 2, -2, ...`
fn zigzag(k: u64) -> BigInt {
    let h = BigInt::from(k.div_ceil(2));
    if k % 2 == 1 {
        h
    } else {
        -h
    }
}

fn check_target(tgt: &CongruenceTarget) -> Result<(), AnalyzerError> {
    if tgt.x0.is_integer() && tgt.y0.is_integer() && tgt.n.is_positive() {
        Ok(())
    } else {
        Err(AnalyzerError::NonIntegralTarget)
    }
}

/// A witness for `F < 0` in the class `tgt`.
pub fn negative_witness(
    f: &BiPoly,
    form: &NormalForm,
    tgt: &CongruenceTarget,
) -> Result<Witness, AnalyzerError> {
    negative_witness_below(f, form, tgt, &BigRational::zero(), DEFAULT_SEARCH_BUDGET)
}

/// A witness for `F < threshold` in the class `tgt`. Works in the
/// normal-form coordinates, maps the point back and re-verifies; falls back
/// to the lattice search if the structured search fails.
pub fn negative_witness_below(
    f: &BiPoly,
    form: &NormalForm,
    tgt: &CongruenceTarget,
    threshold: &BigRational,
    budget: u64,
) -> Result<Witness, AnalyzerError> {
    check_target(tgt)?;
    let cov = form
        .cov()
        .ok_or_else(|| AnalyzerError::UnsupportedForm(form.name().into()))?;
    let local = cov.pull_target(tgt);
    let found = match form {
        NormalForm::AxisLinear { .. } => axis_point(&local, threshold),
        NormalForm::LinearInSecond { f1, f2, .. } => linear_point(f1, f2, &local, threshold, budget),
        NormalForm::TorusMonomial {
            a,
            b,
            scale,
            shift,
            ..
        } => monomial_point(
            *a,
            0,
            *b,
            &UniPoly::zero(),
            scale,
            shift,
            &local,
            threshold,
            budget,
        ),
        NormalForm::TwistedMonomial {
            a,
            l,
            b,
            p,
            scale,
            shift,
            ..
        } => monomial_point(*a, *l, *b, p, scale, shift, &local, threshold, budget),
        _ => None,
    };
    let method = form.name();
    if let Some(uv) = found {
        let (x, y) = cov.inverse().apply_point(&uv);
        if x.is_integer() && y.is_integer() {
            let w = Witness {
                value: f.eval(&x, &y),
                x: x.to_integer(),
                y: y.to_integer(),
                target: tgt.clone(),
                method,
            };
            if w.verify(f, threshold) {
                return Ok(w);
            }
        }
    }
    lattice_witness(f, tgt, threshold, budget)
}

fn axis_point(
    t: &CongruenceTarget,
    threshold: &BigRational,
) -> Option<(BigRational, BigRational)> {
    Some((last_below(&t.x0, &t.n, threshold), t.y0.clone()))
}

/// `f1(u) v + f2(u) < threshold`: first `u` on the lattice with
/// `f1(u) != 0`, then `v` past the root of the linear inequality.
fn linear_point(
    f1: &UniPoly,
    f2: &UniPoly,
    t: &CongruenceTarget,
    threshold: &BigRational,
    budget: u64,
) -> Option<(BigRational, BigRational)> {
    (0..budget).find_map(|k| {
        let u = &t.x0 + q(&(&t.n * zigzag(k)));
        let c = f1.eval(&u);
        if c.is_zero() {
            return None;
        }
        let r = (threshold - f2.eval(&u)) / &c;
        let v = if c.is_positive() {
            last_below(&t.y0, &t.n, &r)
        } else {
            first_above(&t.y0, &t.n, &r)
        };
        Some((u, v))
    })
}

/// Lattice point with the given strict sign, `k` steps further out.
fn signed_point(v0: &BigRational, n: &BigInt, positive: bool, from: &BigRational, k: u64) -> BigRational {
    let step = q(&(n * BigInt::from(k)));
    if positive {
        first_above(v0, n, from) + step
    } else {
        last_below(v0, n, from) - step
    }
}

/// `scale u^a w^b + shift < threshold` with `w = u^l v + p(u)`. One of
/// `a, b` is odd, which fixes the signs of `u` and `w` making the monomial
/// negative; magnitudes then grow along the lattice.
#[allow(clippy::too_many_arguments)]
fn monomial_point(
    a: u32,
    l: u32,
    b: u32,
    p: &UniPoly,
    scale: &BigRational,
    shift: &BigRational,
    t: &CongruenceTarget,
    threshold: &BigRational,
    budget: u64,
) -> Option<(BigRational, BigRational)> {
    let neg = scale.is_positive();
    let (u_pos, w_pos) = if b % 2 == 1 { (true, !neg) } else { (!neg, true) };
    let zero = BigRational::zero();
    for k in 0..budget {
        let u = signed_point(&t.x0, &t.n, u_pos, &zero, k);
        let ul = num_traits::pow(u.clone(), l as usize);
        let root = -p.eval(&u) / &ul;
        // w = ul * (v - root) has sign w_pos when v lies on the right side.
        let v_above = w_pos == ul.is_positive();
        let v = signed_point(&t.y0, &t.n, v_above, &root, k);
        let w = &ul * &v + p.eval(&u);
        let value = scale * num_traits::pow(u.clone(), a as usize) * num_traits::pow(w, b as usize) + shift;
        if &value < threshold {
            return Some((u, v));
        }
    }
    None
}

/// Expanding square shells over the lattice `tgt` in the original
/// coordinates, at most `budget` points.
pub fn lattice_witness(
    f: &BiPoly,
    tgt: &CongruenceTarget,
    threshold: &BigRational,
    budget: u64,
) -> Result<Witness, AnalyzerError> {
    check_target(tgt)?;
    let ev = IntEvaluator::new(f);
    let (x0, y0, n) = (tgt.x0.to_integer(), tgt.y0.to_integer(), &tgt.n);
    let mut seen = 0u64;
    let mut r = 0i64;
    while seen < budget {
        for i in -r..=r {
            let edge = i.abs() == r;
            let js: Box<dyn Iterator<Item = i64>> = if edge {
                Box::new(-r..=r)
            } else {
                Box::new([-r, r].into_iter())
            };
            for j in js {
                if seen >= budget {
                    break;
                }
                seen += 1;
                let x = &x0 + n * BigInt::from(i);
                let y = &y0 + n * BigInt::from(j);
                let value = ev.value_at_big(&x, &y);
                if &value < threshold {
                    return Ok(Witness {
                        x,
                        y,
                        value,
                        target: tgt.clone(),
                        method: "lattice",
                    });
                }
            }
            if r == 0 {
                break;
            }
        }
        r += 1;
    }
    Err(AnalyzerError::NoWitnessFound(budget))
}

/// Witnesses with values below `-1, -10, ..., -10^(depth-1)`, each found for
/// the shifted threshold on the whole lattice.
pub fn arbitrarily_negative(
    f: &BiPoly,
    form: &NormalForm,
    depth: u32,
) -> Result<Vec<Witness>, AnalyzerError> {
    arbitrarily_negative_in(f, form, depth, &CongruenceTarget::trivial(), DEFAULT_SEARCH_BUDGET)
}

pub fn arbitrarily_negative_in(
    f: &BiPoly,
    form: &NormalForm,
    depth: u32,
    tgt: &CongruenceTarget,
    budget: u64,
) -> Result<Vec<Witness>, AnalyzerError> {
    (0..depth)
        .map(|k| {
            let offset = BigRational::from_integer(num_traits::pow(BigInt::from(10), k as usize));
            negative_witness_below(f, form, tgt, &-offset, budget)
        })
        .collect()
}

/// `floor(q)` for a real quadratic number.
fn floor_quadratic(a: &QuadraticNumber) -> BigInt {
    let alpha = a.rational_part();
    let beta = a.radical_part();
    let l = alpha.denom().lcm(beta.denom());
    let big_a = alpha.numer() * (&l / alpha.denom());
    let big_b = beta.numer() * (&l / beta.denom());
    let sq = &big_b * &big_b * a.radicand();
    let s = isqrt(&sq);
    let exact = &s * &s == sq;
    let top = match (big_b.sign(), exact) {
        (num_bigint::Sign::Minus, false) => big_a - s - 1,
        (num_bigint::Sign::Minus, true) => big_a - s,
        _ => big_a + s,
    };
    top.div_floor(&l)
}

/// Searches near the branch `y ~ A x^d` for `F < threshold`: for lattice
/// `x` of growing size, the lattice `y` within `width` steps of
/// `floor(A x^d)`.
pub fn sector_witness(
    f: &BiPoly,
    a: &QuadraticNumber,
    d: u32,
    tgt: &CongruenceTarget,
    threshold: &BigRational,
    width: u32,
    budget: u64,
) -> Result<Witness, AnalyzerError> {
    check_target(tgt)?;
    let ev = IntEvaluator::new(f);
    let (x0, y0, n) = (tgt.x0.to_integer(), tgt.y0.to_integer(), &tgt.n);
    let mut seen = 0u64;
    let mut k = 0u64;
    while seen < budget {
        let x = &x0 + n * zigzag(k);
        k += 1;
        let centre = floor_quadratic(&a.mul_rational(&num_traits::pow(q(&x), d as usize)));
        let base = &y0 + n * (&centre - &y0).div_floor(n);
        let w = width as i64;
        for j in (0..=2 * w).map(|j| if j % 2 == 0 { j / 2 } else { -(j + 1) / 2 }) {
            if seen >= budget {
                break;
            }
            seen += 1;
            let y = &base + n * BigInt::from(j);
            let value = ev.value_at_big(&x, &y);
            if value.cmp(threshold) == Ordering::Less {
                return Ok(Witness {
                    x,
                    y,
                    value,
                    target: tgt.clone(),
                    method: "sector",
                });
            }
        }
    }
    Err(AnalyzerError::NoWitnessFound(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzers::{classify_normal_form, image_scan};
    use crate::changevars::{ChangeOfVars, ElementaryOp};
    use crate::cli::parse_poly;
    use crate::exactmath::{rat, ratio};
    use proptest::prelude::*;

    fn setup(s: &str) -> (BiPoly, NormalForm) {
        let f = parse_poly(s).unwrap();
        let form = classify_normal_form(&f, &[]);
        (f, form)
    }

    fn point(w: &Witness) -> (i64, i64) {
        (w.x.to_string().parse().unwrap(), w.y.to_string().parse().unwrap())
    }

    #[test]
    fn worked_examples() {
        let (f, form) = setup("x");
        let w = negative_witness(&f, &form, &CongruenceTarget::integers(3, 7, 5)).unwrap();
        assert_eq!((point(&w), w.value.clone()), ((-2, 7), rat(-2)));

        let (f, form) = setup("(x^2 - x)*y + 1");
        let w = negative_witness(&f, &form, &CongruenceTarget::integers(0, 0, 3)).unwrap();
        assert_eq!((point(&w), w.value.clone()), ((3, -3), rat(-17)));

        let (f, form) = setup("x*y - 1");
        let w = negative_witness(&f, &form, &CongruenceTarget::integers(0, 0, 2)).unwrap();
        assert_eq!((point(&w), w.value.clone()), ((2, -2), rat(-5)));
    }

    #[test]
    fn chains_reach_thresholds() {
        for s in ["x", "x - 5", "x*y - 1", "x^2*y^3 + 1", "x^2*(x*y + 1)^3 + 1", "(x^2 - x)*y + 7"] {
            let (f, form) = setup(s);
            let chain = arbitrarily_negative(&f, &form, 6).unwrap();
            assert_eq!(chain.len(), 6);
            for (k, w) in chain.iter().enumerate() {
                let t = -BigRational::from_integer(num_traits::pow(BigInt::from(10), k));
                assert!(w.verify(&f, &t), "{s}: {k}");
                assert_ne!(w.method, "lattice", "{s}");
            }
        }
    }

    #[test]
    fn nonnegative_and_unsupported() {
        let (f, form) = setup("x^2 + y^2");
        assert!(matches!(
            negative_witness(&f, &form, &CongruenceTarget::trivial()),
            Err(AnalyzerError::UnsupportedForm(_))
        ));
        assert_eq!(
            lattice_witness(&f, &CongruenceTarget::trivial(), &rat(0), 10_000),
            Err(AnalyzerError::NoWitnessFound(10_000))
        );
        let (f, _) = setup("-x^2 - y^2 - 1");
        let w = lattice_witness(&f, &CongruenceTarget::integers(4, -3, 7), &rat(0), 10).unwrap();
        assert_eq!(point(&w), (4, -3));
        let bad = CongruenceTarget::new(ratio(1, 2), rat(0), BigInt::from(3)).unwrap();
        assert_eq!(
            lattice_witness(&f, &bad, &rat(0), 10),
            Err(AnalyzerError::NonIntegralTarget)
        );
    }

    #[test]
    fn hidden_forms_map_back() {
        for s in [
            "x^2*(y + x^2)^3 - 4",
            "(y - 1)^3*(x + y^2)^2 + 5",
            "1/3*x*(x^2*y + x^3 + x + 2)^2",
            "x*y + x^3 + 2",
            "-3*y + x^4 - 2",
        ] {
            let (f, form) = setup(s);
            for (x0, y0, n) in [(0, 0, 1), (1, 2, 3), (-4, 5, 7)] {
                let tgt = CongruenceTarget::integers(x0, y0, n);
                let w = negative_witness_below(&f, &form, &tgt, &rat(-1000), 100_000).unwrap();
                assert!(w.verify(&f, &rat(-1000)), "{s} {tgt}");
                assert_ne!(w.method, "lattice", "{s} {tgt}");
            }
        }
    }

    #[test]
    fn quadratic_floor() {
        let sqrt2 = QuadraticNumber::sqrt_of(BigInt::from(2)).unwrap();
        assert_eq!(floor_quadratic(&sqrt2), BigInt::from(1));
        assert_eq!(floor_quadratic(&sqrt2.neg()), BigInt::from(-2));
        let x = QuadraticNumber::new(ratio(1, 3), ratio(-5, 2), BigInt::from(2)).unwrap();
        // 1/3 - 5/2 * 1.41421... = -3.2022...
        assert_eq!(floor_quadratic(&x), BigInt::from(-4));
        let r = QuadraticNumber::from_rational(ratio(-7, 2), BigInt::from(2)).unwrap();
        assert_eq!(floor_quadratic(&r), BigInt::from(-4));
    }

    #[test]
    fn sector_finds_pell_points() {
        // Negative only where y^2 - 2x^2 = +-1.
        let f = parse_poly("(y^2 - 2*x^2)^2 - 2").unwrap();
        let sqrt2 = QuadraticNumber::sqrt_of(BigInt::from(2)).unwrap();
        let w = sector_witness(&f, &sqrt2, 1, &CongruenceTarget::trivial(), &rat(0), 2, 1000).unwrap();
        assert!(w.verify(&f, &rat(0)));
        let (x, y) = point(&w);
        assert!((y * y - 2 * x * x).abs() <= 1);
        // Restricted to odd y and x = 0 mod 2 : (2, 3) has 9 - 8 = 1.
        let tgt = CongruenceTarget::integers(0, 1, 2);
        let w = sector_witness(&f, &sqrt2, 1, &tgt, &rat(0), 2, 1000).unwrap();
        assert!(w.verify(&f, &rat(0)));
    }

    #[test]
    fn scan_negatives_imply_witness() {
        for s in ["x", "x*y - 1", "x^2*y^3 + 1", "(x^2 - x)*y + 7", "-x^2 - y^2 - 1", "y^2 - x^3"] {
            let (f, form) = setup(s);
            let scan = image_scan(&f, 10, 5);
            if scan.has_negatives() {
                let w = if form.supports_witnesses() {
                    negative_witness(&f, &form, &CongruenceTarget::trivial())
                } else {
                    lattice_witness(&f, &CongruenceTarget::trivial(), &rat(0), DEFAULT_SEARCH_BUDGET)
                };
                assert!(w.unwrap().verify(&f, &rat(0)), "{s}");
            }
        }
    }

    #[test]
    fn swapped_form_uses_swapped_target() {
        let f = parse_poly("y - 3").unwrap();
        let form = NormalForm::AxisLinear {
            cov: ChangeOfVars::new(vec![
                ElementaryOp::Swap,
                ElementaryOp::AddYPolyToX(UniPoly::from_i64(&[-3])),
            ]),
        };
        assert!(form.matches(&f));
        let w = negative_witness(&f, &form, &CongruenceTarget::integers(8, 9, 10)).unwrap();
        assert_eq!(point(&w), (8, -1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn random_targets_verify(x0 in -60i64..60, y0 in -60i64..60, n in 1i64..=50) {
            let tgt = CongruenceTarget::integers(x0, y0, n);
            for s in ["x", "x - 5", "(x^2 - x)*y + 7", "x*y - 1", "x^2*y^3 + 1", "x^2*(x*y + 1)^3 + 1"] {
                let (f, form) = setup(s);
                let w = negative_witness(&f, &form, &tgt).unwrap();
                prop_assert!(w.verify(&f, &rat(0)), "{} {}", s, tgt);
            }
        }
    }
}
