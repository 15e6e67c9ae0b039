use super::{ChangeOfVars, ChangeVarsError, DegreePair, Domain, ElementaryOp, ParamCurve};
use crate::polyalg::{LaurentPoly, UniPoly};
use serde::Serialize;

/// Result of moving an embedded line to the `x`-axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmNormalization {
    /// Maps the input curve onto `curve`.
    pub cov: ChangeOfVars,
    /// `(a t + b, 0)` with `a != 0`.
    pub curve: ParamCurve,
    /// Coordinate degrees before each step, ending with the final pair.
    pub trace: Vec<DegreePair>,
}

#[derive(Serialize)]
struct AmRepr<'a> {
    cov: &'a ChangeOfVars,
    curve: [String; 2],
    trace: Vec<[Option<u32>; 2]>,
}

impl Serialize for AmNormalization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AmRepr {
            cov: &self.cov,
            curve: [self.curve.f.to_string(), self.curve.g.to_string()],
            trace: self.trace.iter().map(|d| [d.a, d.b]).collect(),
        }
        .serialize(s)
    }
}

fn degree(p: &LaurentPoly) -> Option<u32> {
    p.deg().map(|d| d as u32)
}

/// Leading-term cancellation for a polynomial embedding of the affine line:
/// repeatedly subtracts `A * (other coordinate)^k` from the coordinate of
/// higher degree (from `g` on ties) until the curve is `(a t + b, 0)`.
pub fn abhyankar_moh_normalize(c: &ParamCurve) -> Result<AmNormalization, ChangeVarsError> {
    if !(c.f.is_polynomial() && c.g.is_polynomial()) {
        return Err(ChangeVarsError::NotAffine);
    }
    let mut cov = ChangeOfVars::identity();
    let mut curve = ParamCurve {
        domain: Domain::Affine,
        ..c.clone()
    };
    let mut trace = Vec::new();
    let start = degree(&curve.f).unwrap_or(0) + degree(&curve.g).unwrap_or(0);
    for _ in 0..=start + 4 {
        let pair = curve.degrees();
        trace.push(pair);
        let op = match (pair.a, pair.b) {
            (Some(1), None) => break,
            (Some(1), Some(0)) => {
                ElementaryOp::AddXPolyToY(UniPoly::constant(-curve.g.coeff(0)))
            }
            (None | Some(0), Some(1)) => ElementaryOp::Swap,
            (Some(a), Some(b)) if a >= 1 && b >= 1 => {
                let (lead_f, lead_g) = (
                    curve.f.leading_coeff().unwrap(),
                    curve.g.leading_coeff().unwrap(),
                );
                if a > b {
                    if a % b != 0 {
                        return Err(not_line(a, b));
                    }
                    let k = (a / b) as usize;
                    let coeff = lead_f / num_traits::pow(lead_g.clone(), k);
                    ElementaryOp::AddYPolyToX(UniPoly::monomial(-coeff, k))
                } else {
                    if b % a != 0 {
                        return Err(not_line(a, b));
                    }
                    let k = (b / a) as usize;
                    let coeff = lead_g / num_traits::pow(lead_f.clone(), k);
                    ElementaryOp::AddXPolyToY(UniPoly::monomial(-coeff, k))
                }
            }
            (a, b) => {
                return Err(ChangeVarsError::NotEmbeddedLine(format!(
                    "coordinate degrees {} and {} admit no reduction",
                    fmt_deg(a),
                    fmt_deg(b)
                )))
            }
        };
        let next = ChangeOfVars::new(vec![op.clone()]).apply_curve(&curve);
        let before = pair.a.unwrap_or(0) + pair.b.unwrap_or(0);
        let after = next.degrees();
        let reduced = after.a.unwrap_or(0) + after.b.unwrap_or(0) < before
            || matches!(op, ElementaryOp::Swap)
            || after.b.is_none();
        if !reduced {
            return Err(ChangeVarsError::NotEmbeddedLine(
                "leading-term cancellation failed".into(),
            ));
        }
        cov.push(op);
        curve = next;
    }
    if curve.degrees() != (DegreePair { a: Some(1), b: None }) {
        return Err(ChangeVarsError::IterationLimit(trace.len()));
    }
    Ok(AmNormalization { cov, curve, trace })
}

fn fmt_deg(d: Option<u32>) -> String {
    d.map_or("-inf".into(), |v| v.to_string())
}

fn not_line(a: u32, b: u32) -> ChangeVarsError {
    ChangeVarsError::NotEmbeddedLine(format!("neither of the degrees {a} and {b} divides the other"))
}
