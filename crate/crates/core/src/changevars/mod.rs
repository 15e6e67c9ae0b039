//! Planar changes of variables.
//!
//! Convention: a [`ChangeOfVars`] acts on points. Its action on a
//! polynomial `F` is `F ∘ cov⁻¹`, so that
//! `cov.apply_poly(F)(cov.apply_point(P)) == F(P)` for every point `P`.
//! Curves are pushed forward: `cov.apply_curve(φ)(t) == cov.apply_point(φ(t))`.

mod am;
mod poles;

pub use am::{abhyankar_moh_normalize, AmNormalization};
pub use poles::{
    pole_reduce, pole_reduce_at_infinity, P1Point, PoleCurve, PoleOutcome, PoleReduction,
    Punctures,
};

use crate::cli::parse::{parse_rational, parse_uni_in, ParseError};
use crate::exactmath::{lcm_denominators, BigInt, BigRational};
use crate::polyalg::{BiPoly, LaurentPoly, UniPoly};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChangeVarsError {
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("both coordinates are constant")]
    ConstantCurve,
    #[error("affine curves must not contain negative powers of t")]
    NotAffine,
    #[error("curve is not an embedded line: {0}")]
    NotEmbeddedLine(String),
    #[error("expected a Laurent (punctured) curve")]
    NotLaurent,
    #[error("pole orders {m_x} (x) and {m_y} (y) are not divisible")]
    NonIntegralExponent { m_x: u32, m_y: u32 },
    #[error("punctures are invalid: {0}")]
    BadPunctures(String),
    #[error("reduction did not finish within {0} steps")]
    IterationLimit(usize),
    #[error("invalid change of variables: {0}")]
    BadOp(String),
}

/// One invertible planar map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryOp {
    /// `(x, y) -> (y, x)`
    Swap,
    /// `(x, y) -> (q x, y)`
    ScaleX(BigRational),
    /// `(x, y) -> (x, q y)`
    ScaleY(BigRational),
    /// `(x, y) -> (x, y + p(x))`
    AddXPolyToY(UniPoly),
    /// `(x, y) -> (x + p(y), y)`
    AddYPolyToX(UniPoly),
}

impl ElementaryOp {
    pub fn scale_x(q: BigRational) -> Result<Self, ChangeVarsError> {
        if q.is_zero() {
            return Err(ChangeVarsError::ZeroScale);
        }
        Ok(ElementaryOp::ScaleX(q))
    }

    pub fn scale_y(q: BigRational) -> Result<Self, ChangeVarsError> {
        if q.is_zero() {
            return Err(ChangeVarsError::ZeroScale);
        }
        Ok(ElementaryOp::ScaleY(q))
    }

    pub fn inverse(&self) -> Self {
        match self {
            ElementaryOp::Swap => ElementaryOp::Swap,
            ElementaryOp::ScaleX(q) => ElementaryOp::ScaleX(q.recip()),
            ElementaryOp::ScaleY(q) => ElementaryOp::ScaleY(q.recip()),
            ElementaryOp::AddXPolyToY(p) => ElementaryOp::AddXPolyToY(-p),
            ElementaryOp::AddYPolyToX(p) => ElementaryOp::AddYPolyToX(-p),
        }
    }

    pub fn apply_point(&self, pt: &(BigRational, BigRational)) -> (BigRational, BigRational) {
        let (x, y) = pt;
        match self {
            ElementaryOp::Swap => (y.clone(), x.clone()),
            ElementaryOp::ScaleX(q) => (x * q, y.clone()),
            ElementaryOp::ScaleY(q) => (x.clone(), y * q),
            ElementaryOp::AddXPolyToY(p) => (x.clone(), y + p.eval(x)),
            ElementaryOp::AddYPolyToX(p) => (x + p.eval(y), y.clone()),
        }
    }

    /// The coordinate functions of this map as polynomials in `(x, y)`.
    fn as_substitution(&self) -> (BiPoly, BiPoly) {
        let (x, y) = (BiPoly::x(), BiPoly::y());
        match self {
            ElementaryOp::Swap => (y, x),
            ElementaryOp::ScaleX(q) => (x.scale(q), y),
            ElementaryOp::ScaleY(q) => (x, y.scale(q)),
            ElementaryOp::AddXPolyToY(p) => (x, &y + &BiPoly::from_uni_x(p)),
            ElementaryOp::AddYPolyToX(p) => (&x + &BiPoly::from_uni_y(p), y),
        }
    }

    /// `F ∘ self⁻¹`.
    pub fn apply_poly(&self, f: &BiPoly) -> BiPoly {
        let (sx, sy) = self.inverse().as_substitution();
        f.substitute(&sx, &sy)
    }

    pub fn apply_laurent(&self, f: &LaurentPoly, g: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        match self {
            ElementaryOp::Swap => (g.clone(), f.clone()),
            ElementaryOp::ScaleX(q) => (f.scale(q), g.clone()),
            ElementaryOp::ScaleY(q) => (f.clone(), g.scale(q)),
            ElementaryOp::AddXPolyToY(p) => (f.clone(), g + &f.substitute_into(p)),
            ElementaryOp::AddYPolyToX(p) => (f + &g.substitute_into(p), g.clone()),
        }
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryOp::Swap => write!(f, "(x, y) -> (y, x)"),
            ElementaryOp::ScaleX(q) => write!(f, "x -> {q}*x"),
            ElementaryOp::ScaleY(q) => write!(f, "y -> {q}*y"),
            ElementaryOp::AddXPolyToY(p) => write!(f, "y -> y + ({})", p.display_var("x")),
            ElementaryOp::AddYPolyToX(p) => write!(f, "x -> x + ({})", p.display_var("y")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op")]
enum OpRepr {
    #[serde(rename = "swap")]
    Swap,
    #[serde(rename = "scaleX")]
    ScaleX { factor: String },
    #[serde(rename = "scaleY")]
    ScaleY { factor: String },
    #[serde(rename = "addXtoY")]
    AddXtoY { poly: String },
    #[serde(rename = "addYtoX")]
    AddYtoX { poly: String },
}

impl Serialize for ElementaryOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            ElementaryOp::Swap => OpRepr::Swap,
            ElementaryOp::ScaleX(q) => OpRepr::ScaleX {
                factor: q.to_string(),
            },
            ElementaryOp::ScaleY(q) => OpRepr::ScaleY {
                factor: q.to_string(),
            },
            ElementaryOp::AddXPolyToY(p) => OpRepr::AddXtoY {
                poly: p.display_var("x"),
            },
            ElementaryOp::AddYPolyToX(p) => OpRepr::AddYtoX {
                poly: p.display_var("y"),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElementaryOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = OpRepr::deserialize(d)?;
        let conv = |e: ParseError| D::Error::custom(e.to_string());
        let nonzero = |q: BigRational| {
            if q.is_zero() {
                Err(D::Error::custom("scale factor must be nonzero"))
            } else {
                Ok(q)
            }
        };
        Ok(match repr {
            OpRepr::Swap => ElementaryOp::Swap,
            OpRepr::ScaleX { factor } => {
                ElementaryOp::ScaleX(nonzero(parse_rational(&factor).map_err(conv)?)?)
            }
            OpRepr::ScaleY { factor } => {
                ElementaryOp::ScaleY(nonzero(parse_rational(&factor).map_err(conv)?)?)
            }
            OpRepr::AddXtoY { poly } => {
                ElementaryOp::AddXPolyToY(parse_uni_in(&poly, 'x').map_err(conv)?)
            }
            OpRepr::AddYtoX { poly } => {
                ElementaryOp::AddYPolyToX(parse_uni_in(&poly, 'y').map_err(conv)?)
            }
        })
    }
}

/// A finite sequence of elementary operations, applied first to last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChangeOfVars {
    pub ops: Vec<ElementaryOp>,
}

impl ChangeOfVars {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(ops: Vec<ElementaryOp>) -> Self {
        ChangeOfVars { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: ElementaryOp) {
        self.ops.push(op);
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &ChangeOfVars) -> ChangeOfVars {
        let mut ops = self.ops.clone();
        ops.extend(other.ops.iter().cloned());
        ChangeOfVars { ops }
    }

    pub fn inverse(&self) -> Self {
        ChangeOfVars {
            ops: self.ops.iter().rev().map(|o| o.inverse()).collect(),
        }
    }

    pub fn apply_point(&self, pt: &(BigRational, BigRational)) -> (BigRational, BigRational) {
        self.ops.iter().fold(pt.clone(), |p, op| op.apply_point(&p))
    }

    /// `F ∘ self⁻¹`.
    pub fn apply_poly(&self, f: &BiPoly) -> BiPoly {
        self.ops.iter().fold(f.clone(), |acc, op| op.apply_poly(&acc))
    }

    pub fn apply_curve(&self, c: &ParamCurve) -> ParamCurve {
        let (f, g) = self
            .ops
            .iter()
            .fold((c.f.clone(), c.g.clone()), |(f, g), op| op.apply_laurent(&f, &g));
        ParamCurve {
            f,
            g,
            domain: c.domain,
        }
    }

    /// The target a point must meet so that its image under `self⁻¹`
    /// meets `tgt`.
    pub fn pull_target(&self, tgt: &CongruenceTarget) -> CongruenceTarget {
        self.ops
            .iter()
            .fold(tgt.clone(), |t, op| transport_target(&t, &op.inverse()))
    }

    pub fn from_json(text: &str) -> Result<Self, ChangeVarsError> {
        serde_json::from_str(text).map_err(|e| ChangeVarsError::BadOp(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl fmt::Display for ChangeOfVars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            return f.write_str("identity");
        }
        let parts: Vec<String> = self.ops.iter().map(|o| o.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

pub fn apply_point(cov: &ChangeOfVars, pt: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    cov.apply_point(pt)
}

pub fn apply_curve(cov: &ChangeOfVars, c: &ParamCurve) -> ParamCurve {
    cov.apply_curve(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// The affine line: polynomial coordinates.
    Affine,
    /// The line minus `0` (and `∞`): Laurent coordinates.
    Punctured,
}

/// `t -> (f(t), g(t))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamCurve {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    pub domain: Domain,
}

impl ParamCurve {
    pub fn new(f: LaurentPoly, g: LaurentPoly, domain: Domain) -> Result<Self, ChangeVarsError> {
        if f.is_constant() && g.is_constant() {
            return Err(ChangeVarsError::ConstantCurve);
        }
        if domain == Domain::Affine && !(f.is_polynomial() && g.is_polynomial()) {
            return Err(ChangeVarsError::NotAffine);
        }
        Ok(ParamCurve { f, g, domain })
    }

    pub fn affine(f: &UniPoly, g: &UniPoly) -> Result<Self, ChangeVarsError> {
        Self::new(LaurentPoly::from_uni(f), LaurentPoly::from_uni(g), Domain::Affine)
    }

    pub fn eval(&self, t: &BigRational) -> Option<(BigRational, BigRational)> {
        Some((self.f.eval(t)?, self.g.eval(t)?))
    }

    pub fn degrees(&self) -> DegreePair {
        let deg = |p: &LaurentPoly| p.deg().map(|d| d.max(0) as u32);
        DegreePair {
            a: deg(&self.f),
            b: deg(&self.g),
        }
    }
}

impl fmt::Display for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// Degrees of the two coordinates; `None` stands for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DegreePair {
    pub a: Option<u32>,
    pub b: Option<u32>,
}

impl DegreePair {
    fn min_max(&self) -> (Option<u32>, Option<u32>) {
        (self.a.min(self.b), self.a.max(self.b))
    }

    /// `min` and `max` are both componentwise no larger.
    pub fn precedes(&self, other: &DegreePair) -> bool {
        let (a, b) = self.min_max();
        let (c, d) = other.min_max();
        a <= c && b <= d
    }
}

impl PartialOrd for DegreePair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.precedes(other), other.precedes(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

/// The set `(x0 + nZ) × (y0 + nZ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceTarget {
    pub x0: BigRational,
    pub y0: BigRational,
    pub n: BigInt,
}

impl CongruenceTarget {
    pub fn new(x0: BigRational, y0: BigRational, n: BigInt) -> Result<Self, ChangeVarsError> {
        if !n.is_positive() {
            return Err(ChangeVarsError::BadOp("modulus must be positive".into()));
        }
        Ok(CongruenceTarget { x0, y0, n })
    }

    pub fn integers(x0: i64, y0: i64, n: i64) -> Self {
        CongruenceTarget::new(
            BigRational::from_integer(x0.into()),
            BigRational::from_integer(y0.into()),
            BigInt::from(n),
        )
        .expect("positive modulus")
    }

    /// The whole plane (`n = 1`, base point at the origin).
    pub fn trivial() -> Self {
        Self::integers(0, 0, 1)
    }

    pub fn contains(&self, pt: &(BigRational, BigRational)) -> bool {
        let n = BigRational::from_integer(self.n.clone());
        let ok = |v: &BigRational, v0: &BigRational| ((v - v0) / &n).is_integer();
        ok(&pt.0, &self.x0) && ok(&pt.1, &self.y0)
    }

    /// Base point with coordinates reduced into `[0, n)` when integral.
    pub fn normalized(&self) -> Self {
        let red = |v: &BigRational| {
            if v.is_integer() {
                BigRational::from_integer(v.numer().mod_floor(&self.n))
            } else {
                v.clone()
            }
        };
        CongruenceTarget {
            x0: red(&self.x0),
            y0: red(&self.y0),
            n: self.n.clone(),
        }
    }
}

impl fmt::Display for CongruenceTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) mod {}", self.x0, self.y0, self.n)
    }
}

/// Modulus growth for adding `p(v)` when `v ≡ v0`: `b^(deg p - 1)` times
/// the lcm of the denominators of the nonconstant coefficients, where `b`
/// is the denominator of `v0`.
fn add_poly_modulus_factor(p: &UniPoly, v0: &BigRational) -> BigInt {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return BigInt::one();
    }
    let coeff_den = lcm_denominators(p.coeffs().iter().skip(1));
    num_traits::pow(v0.denom().clone(), deg - 1) * coeff_den
}

/// A target for source points whose image under `op` meets `tgt`.
pub fn transport_target(tgt: &CongruenceTarget, op: &ElementaryOp) -> CongruenceTarget {
    let CongruenceTarget { x0, y0, n } = tgt;
    match op {
        ElementaryOp::Swap => CongruenceTarget {
            x0: y0.clone(),
            y0: x0.clone(),
            n: n.clone(),
        },
        ElementaryOp::ScaleX(q) => CongruenceTarget {
            x0: x0 / q,
            y0: y0.clone(),
            n: n * q.denom(),
        },
        ElementaryOp::ScaleY(q) => CongruenceTarget {
            x0: x0.clone(),
            y0: y0 / q,
            n: n * q.denom(),
        },
        ElementaryOp::AddXPolyToY(p) => CongruenceTarget {
            x0: x0.clone(),
            y0: y0 - p.eval(x0),
            n: n * add_poly_modulus_factor(p, x0),
        },
        ElementaryOp::AddYPolyToX(p) => CongruenceTarget {
            x0: x0 - p.eval(y0),
            y0: y0.clone(),
            n: n * add_poly_modulus_factor(p, y0),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};
    use proptest::prelude::*;

    fn pt(x: i64, y: i64) -> (BigRational, BigRational) {
        (rat(x), rat(y))
    }

    #[test]
    fn point_examples() {
        assert_eq!(ElementaryOp::Swap.apply_point(&pt(2, 5)), pt(5, 2));
        let op = ElementaryOp::AddXPolyToY(UniPoly::from_i64(&[0, 0, 1]));
        assert_eq!(op.apply_point(&pt(3, 1)), pt(3, 10));
        let op = ElementaryOp::ScaleX(ratio(1, 2));
        assert_eq!(op.inverse().apply_point(&op.apply_point(&pt(7, 9))), pt(7, 9));
    }

    #[test]
    fn curve_examples() {
        let lp = |v: &[(i64, i64)]| LaurentPoly::from_i64(v);
        let c = ParamCurve::new(lp(&[(1, 1)]), lp(&[(3, 1), (1, 2)]), Domain::Affine).unwrap();
        let cov = ChangeOfVars::new(vec![ElementaryOp::AddXPolyToY(UniPoly::from_i64(&[0, 0, 0, -1]))]);
        assert_eq!(cov.apply_curve(&c).g, lp(&[(1, 2)]));

        let c = ParamCurve::new(lp(&[(1, 1)]), LaurentPoly::zero(), Domain::Affine).unwrap();
        let s = ChangeOfVars::new(vec![ElementaryOp::Swap]).apply_curve(&c);
        assert_eq!((s.f, s.g), (LaurentPoly::zero(), lp(&[(1, 1)])));

        let c = ParamCurve::new(lp(&[(1, 1)]), lp(&[(2, 1), (-1, 1)]), Domain::Punctured).unwrap();
        let cov = ChangeOfVars::new(vec![ElementaryOp::AddXPolyToY(UniPoly::from_i64(&[0, 0, -1]))]);
        assert_eq!(cov.apply_curve(&c).g, lp(&[(-1, 1)]));

        assert_eq!(
            ParamCurve::new(lp(&[(-1, 1)]), lp(&[]), Domain::Affine),
            Err(ChangeVarsError::NotAffine)
        );
    }

    #[test]
    fn transport_examples() {
        let t = CongruenceTarget::integers(3, 8, 5);
        let s = transport_target(&t, &ElementaryOp::Swap);
        assert_eq!((s.x0, s.y0, s.n), (rat(8), rat(3), BigInt::from(5)));

        let t = CongruenceTarget::integers(4, 1, 5);
        let s = transport_target(&t, &ElementaryOp::ScaleX(ratio(2, 3)));
        assert_eq!((s.x0, s.y0, s.n), (rat(6), rat(1), BigInt::from(15)));

        let t = CongruenceTarget::new(ratio(1, 2), rat(0), BigInt::from(3)).unwrap();
        let s = transport_target(&t, &ElementaryOp::AddXPolyToY(UniPoly::from_i64(&[0, 0, 1])));
        assert_eq!((s.x0, s.y0, s.n), (ratio(1, 2), ratio(-1, 4), BigInt::from(6)));
    }

    #[test]
    fn json_round_trip() {
        let cov = ChangeOfVars::new(vec![
            ElementaryOp::Swap,
            ElementaryOp::ScaleX(ratio(2, 3)),
            ElementaryOp::ScaleY(rat(-1)),
            ElementaryOp::AddXPolyToY(UniPoly::from_i64(&[0, 0, 0, -1])),
            ElementaryOp::AddYPolyToX(UniPoly::from_i64(&[0, 0, 1])),
        ]);
        let text = cov.to_json();
        assert_eq!(
            text,
            r#"[{"op":"swap"},{"op":"scaleX","factor":"2/3"},{"op":"scaleY","factor":"-1"},{"op":"addXtoY","poly":"-x^3"},{"op":"addYtoX","poly":"y^2"}]"#
        );
        assert_eq!(ChangeOfVars::from_json(&text).unwrap(), cov);
        assert!(ChangeOfVars::from_json(r#"[{"op":"scaleX","factor":"0"}]"#).is_err());
        assert!(ChangeOfVars::from_json(r#"[{"op":"addXtoY","poly":"y"}]"#).is_err());
    }

    #[test]
    fn degree_pair_order() {
        let p = |a: Option<u32>, b: Option<u32>| DegreePair { a, b };
        assert!(p(Some(1), Some(3)).precedes(&p(Some(3), Some(2))));
        assert!(p(None, Some(1)) < p(Some(1), Some(0)));
        assert_eq!(p(Some(1), Some(4)).partial_cmp(&p(Some(2), Some(3))), None);
    }

    pub(crate) fn op_strategy() -> impl Strategy<Value = ElementaryOp> {
        let q = (-6i64..=6, 1i64..=4)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| ratio(n, d));
        let poly = prop::collection::vec((-5i64..=5, 1i64..=3), 0..=5).prop_map(|c| {
            UniPoly::from_coeffs(c.into_iter().map(|(n, d)| ratio(n, d)).collect())
        });
        prop_oneof![
            Just(ElementaryOp::Swap),
            q.clone().prop_map(ElementaryOp::ScaleX),
            q.prop_map(ElementaryOp::ScaleY),
            poly.clone().prop_map(ElementaryOp::AddXPolyToY),
            poly.prop_map(ElementaryOp::AddYPolyToX),
        ]
    }

    fn cov_strategy() -> impl Strategy<Value = ChangeOfVars> {
        prop::collection::vec(op_strategy(), 0..=5).prop_map(ChangeOfVars::new)
    }

    fn rational_point() -> impl Strategy<Value = (BigRational, BigRational)> {
        ((-50i64..=50, 1i64..=9), (-50i64..=50, 1i64..=9))
            .prop_map(|((a, b), (c, d))| (ratio(a, b), ratio(c, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn round_trip_on_points(cov in cov_strategy(), pts in prop::collection::vec(rational_point(), 100)) {
            let inv = cov.inverse();
            for p in &pts {
                prop_assert_eq!(&inv.apply_point(&cov.apply_point(p)), p);
            }
        }

        #[test]
        fn transport_is_sound(op in op_strategy(), x0 in -6i64..=6, y0 in -6i64..=6, xd in 1i64..=3, n in 1i64..=6, ks in prop::collection::vec((-4i64..=4, -4i64..=4), 8)) {
            let tgt = CongruenceTarget::new(ratio(x0, xd), rat(y0), BigInt::from(n)).unwrap();
            let src = transport_target(&tgt, &op);
            let m = BigRational::from_integer(src.n.clone());
            for (i, j) in ks {
                let p = (&src.x0 + &m * rat(i), &src.y0 + &m * rat(j));
                prop_assert!(tgt.contains(&op.apply_point(&p)));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn polynomial_action_matches_points(cov in prop::collection::vec(op_strategy(), 0..=3), p in rational_point()) {
            let cov = ChangeOfVars::new(cov);
            let f = BiPoly::from_i64(&[(2, 1, 3), (0, 2, -1), (1, 0, 2), (0, 0, 5)]);
            let g = cov.apply_poly(&f);
            let q = cov.apply_point(&p);
            prop_assert_eq!(g.eval(&q.0, &q.1), f.eval(&p.0, &p.1));
        }
    }
}
