//! Pole bookkeeping for a rational curve with two punctures, and the
//! reduction that separates the punctures on the line at infinity.

use super::{ChangeOfVars, ChangeVarsError, Domain, ElementaryOp, ParamCurve};
use crate::exactmath::{squarefree_split, BigInt, BigRational, QuadraticNumber};
use crate::polyalg::{factor_over_q, RationalFunction, UniPoly};
use num_traits::{One, Signed, Zero};
use std::fmt;

const MAX_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum P1Point {
    Finite(BigRational),
    Infinity,
}

/// The two points removed from `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Punctures {
    Rational(P1Point, P1Point),
    /// The two real roots of a monic irreducible quadratic.
    Conjugate(UniPoly),
}

/// `t -> (x(t), y(t))` on `P^1` minus two punctures.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoleCurve {
    pub x: RationalFunction,
    pub y: RationalFunction,
    pub punctures: Punctures,
}

impl PoleCurve {
    pub fn new(
        x: RationalFunction,
        y: RationalFunction,
        punctures: Punctures,
    ) -> Result<Self, ChangeVarsError> {
        match &punctures {
            Punctures::Rational(a, b) if a == b => {
                return Err(ChangeVarsError::BadPunctures("punctures coincide".into()))
            }
            Punctures::Conjugate(q) => {
                let ok = q.degree() == Some(2)
                    && q.leading_coeff().is_some_and(|c| c.is_one())
                    && discriminant(q).is_positive()
                    && factor_over_q(q).map(|f| f.len() == 1).unwrap_or(false);
                if !ok {
                    return Err(ChangeVarsError::BadPunctures(format!(
                        "{q} is not a monic irreducible quadratic with real roots"
                    )));
                }
            }
            _ => {}
        }
        if x.is_constant() && y.is_constant() {
            return Err(ChangeVarsError::ConstantCurve);
        }
        Ok(PoleCurve { x, y, punctures })
    }

    /// A Laurent curve on `t != 0`, punctured at `0` and `∞`.
    pub fn from_laurent(c: &ParamCurve) -> Self {
        PoleCurve {
            x: c.f.to_rational_function(),
            y: c.g.to_rational_function(),
            punctures: Punctures::Rational(P1Point::Finite(BigRational::zero()), P1Point::Infinity),
        }
    }

    fn apply(&self, op: &ElementaryOp) -> Self {
        let (x, y) = (&self.x, &self.y);
        let (x, y) = match op {
            ElementaryOp::Swap => (y.clone(), x.clone()),
            ElementaryOp::ScaleX(q) => (x.scale(q), y.clone()),
            ElementaryOp::ScaleY(q) => (x.clone(), y.scale(q)),
            ElementaryOp::AddXPolyToY(p) => (x.clone(), y.add(&x.substitute_into(p))),
            ElementaryOp::AddYPolyToX(p) => (x.add(&y.substitute_into(p)), y.clone()),
        };
        PoleCurve {
            x,
            y,
            punctures: self.punctures.clone(),
        }
    }

    pub fn apply_cov(&self, cov: &ChangeOfVars) -> Self {
        cov.ops.iter().fold(self.clone(), |c, op| c.apply(op))
    }
}

impl fmt::Display for PoleCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn discriminant(q: &UniPoly) -> BigRational {
    let b = q.coeff(1);
    let c = q.coeff(0);
    &b * &b - c * BigRational::from_integer(BigInt::from(4))
}

/// Local behaviour of a coordinate function at a puncture: pole order
/// (zero when regular) and the leading coefficient, or the value when
/// regular.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Local {
    pole: u32,
    coeff: QuadraticNumber,
}

/// Where a puncture lands in the projective closure of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Image {
    Affine,
    /// `(1:0:0)`
    XDirection,
    /// `(0:1:0)`
    YDirection,
    /// `(1:s:0)`
    Slope(QuadraticNumber),
}

/// Arithmetic context for the punctures: rationals embed with radicand 2
/// and zero radical part when the punctures are rational.
struct Context {
    radicand: BigInt,
}

impl Context {
    fn lift(&self, q: BigRational) -> QuadraticNumber {
        QuadraticNumber::from_rational(q, self.radicand.clone()).expect("valid radicand")
    }
}

fn multiplicity(den: &UniPoly, factor: &UniPoly) -> (u32, UniPoly) {
    let mut m = 0;
    let mut rest = den.clone();
    while let Ok(q) = rest.exact_div(factor) {
        if rest.is_constant() {
            break;
        }
        rest = q;
        m += 1;
    }
    (m, rest)
}

fn local_at_rational(r: &RationalFunction, pt: &P1Point, ctx: &Context) -> Local {
    let (n, d) = (r.numerator(), r.denominator());
    match pt {
        P1Point::Infinity => {
            let excess = n.degree_i64() - d.degree_i64();
            if n.is_zero() || excess < 0 {
                Local {
                    pole: 0,
                    coeff: ctx.lift(BigRational::zero()),
                }
            } else {
                let lc = n.leading_coeff().unwrap() / d.leading_coeff().unwrap();
                Local {
                    pole: excess as u32,
                    coeff: ctx.lift(lc),
                }
            }
        }
        P1Point::Finite(a) => {
            let lin = UniPoly::from_coeffs(vec![-a.clone(), BigRational::one()]);
            let (m, rest) = multiplicity(d, &lin);
            Local {
                pole: m,
                coeff: ctx.lift(n.eval(a) / rest.eval(a)),
            }
        }
    }
}

fn local_at_root(r: &RationalFunction, q: &UniPoly, theta: &QuadraticNumber, root_gap: &QuadraticNumber) -> Local {
    let (n, d) = (r.numerator(), r.denominator());
    let (m, rest) = multiplicity(d, q);
    let num = n.eval_quadratic(theta).expect("same field");
    let den = rest
        .eval_quadratic(theta)
        .expect("same field")
        .mul(&root_gap.pow(m as i64).expect("nonzero gap"))
        .expect("same field");
    Local {
        pole: m,
        coeff: num.div(&den).expect("regular denominator"),
    }
}

fn image(lx: &Local, ly: &Local) -> Image {
    match (lx.pole, ly.pole) {
        (0, 0) => Image::Affine,
        (a, b) if a > b => Image::XDirection,
        (a, b) if a < b => Image::YDirection,
        _ => Image::Slope(ly.coeff.div(&lx.coeff).expect("nonzero leading coefficient")),
    }
}

/// Local data of `(x, y)` at both punctures.
fn locals(c: &PoleCurve) -> Result<[(Local, Local); 2], ChangeVarsError> {
    Ok(match &c.punctures {
        Punctures::Rational(a, b) => {
            let ctx = Context {
                radicand: BigInt::from(2),
            };
            [
                (local_at_rational(&c.x, a, &ctx), local_at_rational(&c.y, a, &ctx)),
                (local_at_rational(&c.x, b, &ctx), local_at_rational(&c.y, b, &ctx)),
            ]
        }
        Punctures::Conjugate(q) => {
            // q = t^2 + b t + c, roots (-b ± sqrt(disc)) / 2.
            let disc = discriminant(q);
            let (s, radicand) = squarefree_split(&(disc.numer() * disc.denom()))
                .map_err(|e| ChangeVarsError::BadPunctures(e.to_string()))?;
            let sqrt_disc = QuadraticNumber::new(
                BigRational::zero(),
                BigRational::new(s, disc.denom().clone()),
                radicand,
            )
            .map_err(|e| ChangeVarsError::BadPunctures(e.to_string()))?;
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let theta = sqrt_disc
                .mul_rational(&half)
                .scalar(&(-q.coeff(1) * &half));
            let at_theta = (
                local_at_root(&c.x, q, &theta, &sqrt_disc),
                local_at_root(&c.y, q, &theta, &sqrt_disc),
            );
            let conj = |l: &Local| Local {
                pole: l.pole,
                coeff: l.coeff.conj(),
            };
            let at_bar = (conj(&at_theta.0), conj(&at_theta.1));
            [at_theta, at_bar]
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoleOutcome {
    /// The punctures map to distinct points of the line at infinity.
    SeparatedPoints,
    /// A puncture maps to a finite point of the plane.
    LeftInfinityPoint,
    /// Asymptotically `y ~ A x^d` with `A` irrational.
    IrrationalAsymptotic { a: QuadraticNumber, d: u32 },
    /// `x` has no pole at either puncture.
    DegenerateDoubleCover,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReduction {
    /// Maps the input curve onto `curve`.
    pub cov: ChangeOfVars,
    pub curve: PoleCurve,
    pub outcome: PoleOutcome,
    /// Pole order of `y` at the processed puncture, before each step.
    pub y_pole_trace: Vec<u32>,
}

/// Subtracts `A x^d` from `y` while the punctures share a point at
/// infinity and the asymptotic coefficient `A` is rational.
pub fn pole_reduce(c: &PoleCurve) -> Result<PoleReduction, ChangeVarsError> {
    let mut cov = ChangeOfVars::identity();
    let mut curve = c.clone();
    let mut trace = Vec::new();
    for _ in 0..MAX_STEPS {
        let loc = locals(&curve)?;
        let images = [image(&loc[0].0, &loc[0].1), image(&loc[1].0, &loc[1].1)];
        if images.contains(&Image::Affine) {
            return Ok(done(&cov, &curve, &trace, PoleOutcome::LeftInfinityPoint));
        }
        if images[0] != images[1] {
            return Ok(done(&cov, &curve, &trace, PoleOutcome::SeparatedPoints));
        }
        if images[0] == Image::XDirection {
            cov.push(ElementaryOp::Swap);
            curve = curve.apply(&ElementaryOp::Swap);
            continue;
        }
        // Largest y-pole among punctures where x has a pole; first on ties.
        let pick = loc
            .iter()
            .rev()
            .filter(|(lx, _)| lx.pole > 0)
            .max_by_key(|(_, ly)| ly.pole);
        let Some((lx, ly)) = pick else {
            return Ok(done(&cov, &curve, &trace, PoleOutcome::DegenerateDoubleCover));
        };
        if ly.pole % lx.pole != 0 {
            return Err(ChangeVarsError::NonIntegralExponent {
                m_x: lx.pole,
                m_y: ly.pole,
            });
        }
        let d = ly.pole / lx.pole;
        let a = ly
            .coeff
            .div(&lx.coeff.pow(d as i64).expect("nonzero"))
            .expect("same field");
        trace.push(ly.pole);
        let Some(ar) = a.as_rational().cloned() else {
            return Ok(done(&cov, &curve, &trace, PoleOutcome::IrrationalAsymptotic { a, d }));
        };
        let op = ElementaryOp::AddXPolyToY(UniPoly::monomial(-ar, d as usize));
        curve = curve.apply(&op);
        cov.push(op);
    }
    Err(ChangeVarsError::IterationLimit(MAX_STEPS))
}

fn done(cov: &ChangeOfVars, curve: &PoleCurve, trace: &[u32], outcome: PoleOutcome) -> PoleReduction {
    PoleReduction {
        cov: cov.clone(),
        curve: curve.clone(),
        outcome,
        y_pole_trace: trace.to_vec(),
    }
}

/// [`pole_reduce`] for a Laurent curve on the punctured line.
pub fn pole_reduce_at_infinity(c: &ParamCurve) -> Result<PoleReduction, ChangeVarsError> {
    if c.domain != Domain::Punctured {
        return Err(ChangeVarsError::NotLaurent);
    }
    pole_reduce(&PoleCurve::from_laurent(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};
    use crate::polyalg::LaurentPoly;

    fn lp(v: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_i64(v)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(UniPoly::from_i64(n), UniPoly::from_i64(d)).unwrap()
    }

    #[test]
    fn laurent_examples() {
        let c = ParamCurve::new(lp(&[(1, 1)]), lp(&[(2, 1), (-1, 1)]), Domain::Punctured).unwrap();
        let r = pole_reduce_at_infinity(&c).unwrap();
        assert_eq!(r.outcome, PoleOutcome::SeparatedPoints);
        assert_eq!(r.cov.ops, vec![ElementaryOp::AddXPolyToY(UniPoly::from_i64(&[0, 0, -1]))]);
        assert_eq!(r.curve.y, rf(&[1], &[0, 1]));

        let c = ParamCurve::new(lp(&[(1, 1)]), lp(&[(-1, 1)]), Domain::Punctured).unwrap();
        let r = pole_reduce_at_infinity(&c).unwrap();
        assert_eq!(r.outcome, PoleOutcome::SeparatedPoints);
        assert!(r.cov.is_empty());

        let affine = ParamCurve::new(lp(&[(1, 1)]), lp(&[]), Domain::Affine).unwrap();
        assert_eq!(pole_reduce_at_infinity(&affine), Err(ChangeVarsError::NotLaurent));
    }

    #[test]
    fn pole_order_of_y_decreases() {
        // (t, t^3 + 2 t^2 + 1/t): two steps, then separated.
        let c = ParamCurve::new(lp(&[(1, 1)]), lp(&[(3, 1), (2, 2), (-1, 1)]), Domain::Punctured)
            .unwrap();
        let r = pole_reduce_at_infinity(&c).unwrap();
        assert_eq!(r.outcome, PoleOutcome::SeparatedPoints);
        assert_eq!(r.y_pole_trace, vec![3, 2]);
        assert!(r.y_pole_trace.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn swap_and_non_integral_exponent() {
        // (t^2 + 1/t^2, t): x dominates at both punctures.
        let c = ParamCurve::new(lp(&[(2, 1), (-2, 1)]), lp(&[(1, 1)]), Domain::Punctured).unwrap();
        let r = pole_reduce_at_infinity(&c);
        // After the swap, x = t has pole 1 at infinity only and y has poles 2, 2.
        let r = r.unwrap();
        assert_eq!(r.cov.ops[0], ElementaryOp::Swap);

        // (t^2, t^3 + 1/t): pole orders 2 and 3 at infinity.
        let c = ParamCurve::new(lp(&[(2, 1)]), lp(&[(3, 1), (-1, 1)]), Domain::Punctured).unwrap();
        assert_eq!(
            pole_reduce_at_infinity(&c),
            Err(ChangeVarsError::NonIntegralExponent { m_x: 2, m_y: 3 })
        );
    }

    #[test]
    fn finite_image_and_degenerate() {
        // (t + 1/t, 1): y bounded; both punctures go to (1:0:0) then swap,
        // after which x is constant.
        let c = ParamCurve::new(lp(&[(1, 1), (-1, 1)]), lp(&[(0, 1)]), Domain::Punctured).unwrap();
        let r = pole_reduce_at_infinity(&c).unwrap();
        assert_eq!(r.outcome, PoleOutcome::DegenerateDoubleCover);

        // (t, t^2): regular at 0, so that puncture has an affine image.
        let c = ParamCurve::new(lp(&[(1, 1)]), lp(&[(2, 1)]), Domain::Punctured).unwrap();
        assert_eq!(pole_reduce_at_infinity(&c).unwrap().outcome, PoleOutcome::LeftInfinityPoint);
    }

    fn conj_punctures() -> Punctures {
        Punctures::Conjugate(UniPoly::from_i64(&[-2, 0, 1]))
    }

    #[test]
    fn conjugate_punctures_separated() {
        let c = PoleCurve::new(rf(&[1], &[-2, 0, 1]), rf(&[0, 1], &[-2, 0, 1]), conj_punctures())
            .unwrap();
        let r = pole_reduce(&c).unwrap();
        assert_eq!(r.outcome, PoleOutcome::SeparatedPoints);
    }

    #[test]
    fn conjugate_punctures_irrational_asymptotic() {
        // x = t/(t^2-2), y = t/(t^2-2)^2: at t = ±sqrt 2, y ~ (±sqrt 2 / 2) x^2.
        let base = PoleCurve::new(
            rf(&[0, 1], &[-2, 0, 1]),
            rf(&[0, 1], &[4, 0, -4, 0, 1]),
            conj_punctures(),
        )
        .unwrap();
        let expected_a = QuadraticNumber::new(rat(0), ratio(1, 2), BigInt::from(2)).unwrap();
        let r = pole_reduce(&base).unwrap();
        assert_eq!(
            r.outcome,
            PoleOutcome::IrrationalAsymptotic {
                a: expected_a.clone(),
                d: 2
            }
        );
        assert!(r.cov.is_empty());

        // Hide it behind y -> y + x^3; the reducer must undo exactly that step.
        let step = ElementaryOp::AddXPolyToY(UniPoly::from_i64(&[0, 0, 0, 1]));
        let hidden = base.apply(&step);
        let r = pole_reduce(&hidden).unwrap();
        assert_eq!(r.cov.ops, vec![step.inverse()]);
        assert_eq!(r.curve, base);
        assert_eq!(r.outcome, PoleOutcome::IrrationalAsymptotic { a: expected_a, d: 2 });
    }

    #[test]
    fn rejects_bad_punctures() {
        assert!(PoleCurve::new(rf(&[0, 1], &[1]), rf(&[1], &[0, 1]), Punctures::Conjugate(UniPoly::from_i64(&[-4, 0, 1]))).is_err());
        assert!(PoleCurve::new(rf(&[0, 1], &[1]), rf(&[1], &[0, 1]), Punctures::Conjugate(UniPoly::from_i64(&[1, 0, 1]))).is_err());
        assert!(PoleCurve::new(
            rf(&[0, 1], &[1]),
            rf(&[1], &[0, 1]),
            Punctures::Rational(P1Point::Infinity, P1Point::Infinity)
        )
        .is_err());
    }
}
