use crate::changevars::{ChangeOfVars, ElementaryOp};
use crate::exactmath::BigRational;
use crate::polyalg::{BiPoly, UniPoly};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;

/// Syntactic normal forms. For every variant carrying a `cov`,
/// `cov.apply_poly(F)` equals [`NormalForm::shape`] exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `F` becomes the coordinate `x`.
    AxisLinear { cov: ChangeOfVars },
    /// `scale * x^a * y^b + shift`.
    TorusMonomial {
        a: u32,
        b: u32,
        scale: BigRational,
        shift: BigRational,
        cov: ChangeOfVars,
    },
    /// `scale * x^a * (x^l * y + p(x))^b + shift` with `deg p < l`, `p(0) != 0`.
    TwistedMonomial {
        a: u32,
        l: u32,
        b: u32,
        p: UniPoly,
        scale: BigRational,
        shift: BigRational,
        cov: ChangeOfVars,
    },
    /// `f1(x) * y + f2(x)` with `deg f2 < deg f1`.
    LinearInSecond {
        f1: UniPoly,
        f2: UniPoly,
        cov: ChangeOfVars,
    },
    /// `alpha * y^n + beta * x^m + gamma` with coprime `n, m >= 2`.
    CuspidalExcluded { n: u32, m: u32 },
    Unclassified,
}

impl NormalForm {
    pub fn cov(&self) -> Option<&ChangeOfVars> {
        match self {
            NormalForm::AxisLinear { cov }
            | NormalForm::TorusMonomial { cov, .. }
            | NormalForm::TwistedMonomial { cov, .. }
            | NormalForm::LinearInSecond { cov, .. } => Some(cov),
            NormalForm::CuspidalExcluded { .. } | NormalForm::Unclassified => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormalForm::AxisLinear { .. } => "AxisLinear",
            NormalForm::TorusMonomial { .. } => "TorusMonomial",
            NormalForm::TwistedMonomial { .. } => "TwistedMonomial",
            NormalForm::LinearInSecond { .. } => "LinearInSecond",
            NormalForm::CuspidalExcluded { .. } => "CuspidalExcluded",
            NormalForm::Unclassified => "Unclassified",
        }
    }

    /// Whether witness generators apply.
    pub fn supports_witnesses(&self) -> bool {
        self.cov().is_some()
    }

    /// The normal shape as a polynomial, for forms that carry a cov.
    pub fn shape(&self) -> Option<BiPoly> {
        match self {
            NormalForm::AxisLinear { .. } => Some(BiPoly::x()),
            NormalForm::TorusMonomial {
                a,
                b,
                scale,
                shift,
                ..
            } => Some(&BiPoly::monomial(scale.clone(), *a, *b) + &BiPoly::constant(shift.clone())),
            NormalForm::TwistedMonomial {
                a,
                l,
                b,
                p,
                scale,
                shift,
                ..
            } => {
                let inner = &BiPoly::monomial(BigRational::one(), *l, 1) + &BiPoly::from_uni_x(p);
                let body = &BiPoly::monomial(scale.clone(), *a, 0) * &inner.pow(*b);
                Some(&body + &BiPoly::constant(shift.clone()))
            }
            NormalForm::LinearInSecond { f1, f2, .. } => {
                Some(&(&BiPoly::from_uni_x(f1) * &BiPoly::y()) + &BiPoly::from_uni_x(f2))
            }
            NormalForm::CuspidalExcluded { .. } | NormalForm::Unclassified => None,
        }
    }

    /// Exact check that `cov` carries `f` onto the shape.
    pub fn matches(&self, f: &BiPoly) -> bool {
        match (self.cov(), self.shape()) {
            (Some(cov), Some(shape)) => cov.apply_poly(f) == shape,
            _ => true,
        }
    }

    pub fn to_json_value(&self) -> Value {
        let s = |v: &dyn fmt::Display| Value::String(v.to_string());
        let mut obj = match self {
            NormalForm::AxisLinear { .. } => json!({}),
            NormalForm::TorusMonomial {
                a,
                b,
                scale,
                shift,
                ..
            } => json!({"a": s(a), "b": s(b), "scale": s(scale), "shift": s(shift)}),
            NormalForm::TwistedMonomial {
                a,
                l,
                b,
                p,
                scale,
                shift,
                ..
            } => json!({
                "a": s(a), "l": s(l), "b": s(b), "p": p.display_var("x"),
                "scale": s(scale), "shift": s(shift)
            }),
            NormalForm::LinearInSecond { f1, f2, .. } => {
                json!({"f1": f1.display_var("x"), "f2": f2.display_var("x")})
            }
            NormalForm::CuspidalExcluded { n, m } => json!({"n": s(n), "m": s(m)}),
            NormalForm::Unclassified => json!({}),
        };
        let map = obj.as_object_mut().expect("object");
        map.insert("kind".into(), Value::String(self.name().into()));
        if let Some(cov) = self.cov() {
            map.insert("cov".into(), serde_json::to_value(cov).expect("serializable"));
        }
        if let Some(shape) = self.shape() {
            map.insert("shape".into(), Value::String(shape.to_string()));
        }
        obj
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::CuspidalExcluded { n, m } => write!(f, "CuspidalExcluded(n={n}, m={m})"),
            NormalForm::Unclassified => f.write_str("Unclassified"),
            other => {
                write!(f, "{}: {}", other.name(), other.shape().expect("shape"))?;
                match other.cov() {
                    Some(cov) if !cov.is_empty() => write!(f, " via {cov}"),
                    _ => Ok(()),
                }
            }
        }
    }
}

/// Default bound on the length of searched changes of variables.
pub const DEFAULT_COV_DEPTH: usize = 3;

pub fn classify_normal_form(f: &BiPoly, hints: &[ChangeOfVars]) -> NormalForm {
    classify_with_depth(f, hints, DEFAULT_COV_DEPTH)
}

/// Tries, in order: a coordinate linear in one variable, a literal
/// monomial, linearity in one variable, a guided monomial search, the
/// supplied hints, the cusp pattern. Every candidate is revalidated.
pub fn classify_with_depth(f: &BiPoly, hints: &[ChangeOfVars], depth: usize) -> NormalForm {
    if f.is_constant() {
        return NormalForm::Unclassified;
    }
    let ok = |form: &NormalForm| form.cov().map_or(false, |c| c.len() <= depth) && form.matches(f);
    let searched = [
        axis_linear(f),
        literal_monomial(f),
        linear_in_second(f),
        guided_monomial(f, true),
        with_swap(f, |g| guided_monomial(g, true)),
    ];
    for form in searched.into_iter().flatten() {
        if ok(&form) {
            return form;
        }
    }
    for hint in hints {
        let moved = hint.apply_poly(f);
        let inner = classify_with_depth(&moved, &[], depth);
        if let Some(form) = compose(hint, inner) {
            if form.matches(f) {
                return form;
            }
        }
    }
    cuspidal(f).unwrap_or(NormalForm::Unclassified)
}

fn with_cov(form: NormalForm, new: ChangeOfVars) -> NormalForm {
    match form {
        NormalForm::AxisLinear { .. } => NormalForm::AxisLinear { cov: new },
        NormalForm::TorusMonomial {
            a, b, scale, shift, ..
        } => NormalForm::TorusMonomial {
            a,
            b,
            scale,
            shift,
            cov: new,
        },
        NormalForm::TwistedMonomial {
            a,
            l,
            b,
            p,
            scale,
            shift,
            ..
        } => NormalForm::TwistedMonomial {
            a,
            l,
            b,
            p,
            scale,
            shift,
            cov: new,
        },
        NormalForm::LinearInSecond { f1, f2, .. } => NormalForm::LinearInSecond { f1, f2, cov: new },
        other => other,
    }
}

/// `first` followed by the form's own cov.
fn compose(first: &ChangeOfVars, form: NormalForm) -> Option<NormalForm> {
    let cov = first.then(form.cov()?);
    Some(with_cov(form, cov))
}

/// Runs `search` on the swapped polynomial and prepends the swap.
fn with_swap(f: &BiPoly, search: impl Fn(&BiPoly) -> Option<NormalForm>) -> Option<NormalForm> {
    let swap = ChangeOfVars::new(vec![ElementaryOp::Swap]);
    compose(&swap, search(&swap.apply_poly(f))?)
}

/// `c * x + p(y)` or `c * y + p(x)`.
fn axis_linear(f: &BiPoly) -> Option<NormalForm> {
    fn direct(f: &BiPoly) -> Option<NormalForm> {
        if f.deg_x() != Some(1) {
            return None;
        }
        let cols = f.coeffs_in_x();
        if !cols[1].is_constant() {
            return None;
        }
        let c = cols[1].constant_term();
        let p = &cols[0].scale(&(BigRational::one() / &c));
        let mut ops = Vec::new();
        if !p.is_zero() {
            ops.push(ElementaryOp::AddYPolyToX(p.clone()));
        }
        if !c.is_one() {
            ops.push(ElementaryOp::ScaleX(c));
        }
        Some(NormalForm::AxisLinear {
            cov: ChangeOfVars::new(ops),
        })
    }
    direct(f).or_else(|| with_swap(f, direct))
}

/// `scale * x^a * y^b + shift` as written.
fn literal_monomial(f: &BiPoly) -> Option<NormalForm> {
    let shift = f.constant_term();
    let mut terms = f.terms().filter(|((i, j), _)| (*i, *j) != (0, 0));
    let ((a, b), scale) = terms.next()?;
    if terms.next().is_some() || a == 0 || b == 0 || a.gcd(&b) != 1 {
        return None;
    }
    Some(NormalForm::TorusMonomial {
        a,
        b,
        scale: scale.clone(),
        shift,
        cov: ChangeOfVars::identity(),
    })
}

/// `f1(x) y + f2(x)` after `y -> y + q(x)` with `f2 = q f1 + r`; also with
/// the roles of `x` and `y` swapped.
fn linear_in_second(f: &BiPoly) -> Option<NormalForm> {
    fn direct(f: &BiPoly) -> Option<NormalForm> {
        if f.deg_y() != Some(1) {
            return None;
        }
        let cols = f.coeffs_in_y();
        let (f1, f2) = (&cols[1], &cols[0]);
        if f1.is_constant() {
            return None;
        }
        let (q, r) = f2.div_rem(f1).ok()?;
        let cov = if q.is_zero() {
            ChangeOfVars::identity()
        } else {
            ChangeOfVars::new(vec![ElementaryOp::AddXPolyToY(q)])
        };
        Some(NormalForm::LinearInSecond {
            f1: f1.clone(),
            f2: r,
            cov,
        })
    }
    direct(f).or_else(|| with_swap(f, direct))
}

/// Divides every term by `x^k`; `None` if some term has lower `x`-degree.
fn div_x_power(f: &BiPoly, k: u32) -> Option<BiPoly> {
    if f.terms().any(|((i, _), _)| i < k) {
        return None;
    }
    Some(BiPoly::from_terms(
        f.terms().map(|((i, j), c)| ((i - k, j), c.clone())),
    ))
}

fn uni_div_x_power(p: &UniPoly, k: usize) -> Option<UniPoly> {
    let c = p.coeffs();
    if c.iter().take(k).any(|v| !v.is_zero()) {
        return None;
    }
    Some(UniPoly::from_coeffs(c.iter().skip(k).cloned().collect()))
}

fn x_order(p: &UniPoly) -> usize {
    p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0)
}

/// Reads off `s x^a (x^l y + P(x))^b + c` from the top `y`-coefficient and
/// the `y^(b-1)` coefficient, then reduces `P` modulo `x^l` and absorbs
/// common `x`-factors. With `translate`, a top coefficient `s (x - r)^e`
/// is first moved to `s x^e`.
fn guided_monomial(f: &BiPoly, translate: bool) -> Option<NormalForm> {
    let shift = f.constant_term();
    let h0 = f - &BiPoly::constant(shift.clone());
    let b = h0.deg_y().filter(|&b| b >= 1)?;
    let top = h0.coeffs_in_y()[b as usize].clone();
    let e = top.degree()?;
    let s = top.leading_coeff()?.clone();
    if top.coeffs()[..e].iter().any(|c| !c.is_zero()) {
        if !translate || e == 0 {
            return None;
        }
        let r = -&top.coeffs()[e - 1] / (&s * BigRational::from_integer(e.into()));
        let expected = UniPoly::from_coeffs(vec![-r.clone(), BigRational::one()])
            .pow(e as u32)
            .scale(&s);
        if expected != top {
            return None;
        }
        let shift_x = ChangeOfVars::new(vec![ElementaryOp::AddYPolyToX(UniPoly::constant(-r))]);
        return compose(&shift_x, guided_monomial(&shift_x.apply_poly(f), false)?);
    }
    let h = h0.scale(&(BigRational::one() / &s));
    let a = h.min_deg_x().filter(|&a| a >= 1)?;
    let e = e as u32;
    if e < a || (e - a) % b != 0 {
        return None;
    }
    let l = (e - a) / b;
    let k = div_x_power(&h, a)?;
    let c = k.coeffs_in_y()[(b - 1) as usize].clone();
    let big_p = uni_div_x_power(&c, (l * (b - 1)) as usize)?
        .scale(&(BigRational::one() / BigRational::from_integer(b.into())));
    let inner = &BiPoly::monomial(BigRational::one(), l, 1) + &BiPoly::from_uni_x(&big_p);
    if inner.pow(b) != k {
        return None;
    }
    // P = x^l q + p with deg p < l.
    let coeffs = big_p.coeffs();
    let split = (l as usize).min(coeffs.len());
    let p = UniPoly::from_coeffs(coeffs[..split].to_vec());
    let q = UniPoly::from_coeffs(coeffs[split..].to_vec());
    let cov = if q.is_zero() {
        ChangeOfVars::identity()
    } else {
        ChangeOfVars::new(vec![ElementaryOp::AddXPolyToY(q)])
    };
    if p.is_zero() {
        let a = a + l * b;
        return (a.gcd(&b) == 1).then(|| NormalForm::TorusMonomial {
            a,
            b,
            scale: s,
            shift,
            cov,
        });
    }
    let j = x_order(&p) as u32;
    let (a, l) = (a + j * b, l - j);
    if a.gcd(&b) != 1 {
        return None;
    }
    Some(NormalForm::TwistedMonomial {
        a,
        l,
        b,
        p: uni_div_x_power(&p, j as usize)?,
        scale: s,
        shift,
        cov,
    })
}

fn cuspidal(f: &BiPoly) -> Option<NormalForm> {
    let mut n = None;
    let mut m = None;
    for ((i, j), _) in f.terms() {
        match (i, j) {
            (0, 0) => {}
            (0, j) if n.is_none() => n = Some(j),
            (i, 0) if m.is_none() => m = Some(i),
            _ => return None,
        }
    }
    let (n, m) = (n?, m?);
    (n >= 2 && m >= 2 && n.gcd(&m) == 1).then_some(NormalForm::CuspidalExcluded { n, m })
}
