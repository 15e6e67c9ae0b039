use super::AnalyzerError;
use crate::exactmath::{is_prime, BigInt, BigRational};
use crate::polyalg::{zero_pole_orders, PointClass, RationalFunction};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// The curve `s^n = f(t)` with `n` an odd prime dividing no zero or pole
/// order of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    f: RationalFunction,
    n: u64,
    orders: Vec<(PointClass, i64)>,
}

impl CoverSpec {
    pub fn new(f: RationalFunction, n: u64) -> Result<Self, AnalyzerError> {
        if f.is_constant() {
            return Err(AnalyzerError::ConstantFunction);
        }
        if n < 3 || !is_prime(&BigInt::from(n)) {
            return Err(AnalyzerError::InvariantViolated(format!(
                "cover exponent {n} is not an odd prime"
            )));
        }
        let orders = zero_pole_orders(&f)?;
        if let Some((p, o)) = orders.iter().find(|(_, o)| o % n as i64 == 0) {
            return Err(AnalyzerError::InvariantViolated(format!(
                "{n} divides the order {o} at {p}"
            )));
        }
        Ok(CoverSpec { f, n, orders })
    }

    pub fn function(&self) -> &RationalFunction {
        &self.f
    }

    pub fn exponent(&self) -> u64 {
        self.n
    }

    /// Zero and pole orders per point class, infinity last when nonzero.
    pub fn orders(&self) -> &[(PointClass, i64)] {
        &self.orders
    }

    /// Number of geometric branch points.
    pub fn branch_points(&self) -> usize {
        self.orders.iter().map(|(c, _)| c.size()).sum()
    }
}

/// The smallest prime `n >= 3` dividing no zero or pole order of `f`.
pub fn choose_cover_exponent(f: &RationalFunction) -> Result<u64, AnalyzerError> {
    if f.is_constant() {
        return Err(AnalyzerError::ConstantFunction);
    }
    let orders = zero_pole_orders(f)?;
    let mut n = 3u64;
    loop {
        if is_prime(&BigInt::from(n)) && orders.iter().all(|(_, o)| o % n as i64 != 0) {
            return Ok(n);
        }
        n += 2;
    }
}

/// Genus of the cyclic cover: every branch point is totally ramified, so
/// `2g - 2 = -2n + k(n - 1)`.
pub fn cyclic_cover_genus(spec: &CoverSpec) -> Result<u64, AnalyzerError> {
    let k = spec.branch_points() as u64;
    if k < 2 {
        return Err(AnalyzerError::InvariantViolated(format!(
            "only {k} branch points"
        )));
    }
    let twice = (k - 2) * (spec.n - 1);
    if twice.is_odd() {
        return Err(AnalyzerError::InvariantViolated("odd 2g".into()));
    }
    Ok(twice / 2)
}

/// Genus computation for reports.
#[derive(Clone, Debug, Serialize)]
pub struct GenusReport {
    pub function: String,
    pub exponent: String,
    pub orders: Vec<OrderEntry>,
    pub branch_points: String,
    pub genus: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderEntry {
    pub point: String,
    pub degree: String,
    pub order: String,
}

pub fn genus_report(f: &RationalFunction, n: Option<u64>) -> Result<GenusReport, AnalyzerError> {
    let n = match n {
        Some(n) => n,
        None => choose_cover_exponent(f)?,
    };
    let spec = CoverSpec::new(f.clone(), n)?;
    let g = cyclic_cover_genus(&spec)?;
    Ok(GenusReport {
        function: f.to_string(),
        exponent: n.to_string(),
        orders: spec
            .orders()
            .iter()
            .map(|(c, o)| OrderEntry {
                point: c.to_string(),
                degree: c.size().to_string(),
                order: o.to_string(),
            })
            .collect(),
        branch_points: spec.branch_points().to_string(),
        genus: g.to_string(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfLine {
    /// `t < 0`
    Negative,
    /// `t > 0`
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "half_line", rename_all = "snake_case")]
pub enum ParityVerdict {
    /// `t^l / A` only takes nonnegative values.
    EvenSquaresOnly,
    /// `t^l / A` is negative on the given half-line.
    OddNegativeValues(HalfLine),
}

/// Sign behaviour of `t^l / A` along a curve on which `F` restricts to it.
pub fn parity_obstruction(l: u64, a: &BigRational) -> Result<ParityVerdict, AnalyzerError> {
    if l == 0 || a.is_zero() {
        return Err(AnalyzerError::InvariantViolated(
            "parity needs l >= 1 and A != 0".into(),
        ));
    }
    if l.is_odd() {
        Ok(ParityVerdict::OddNegativeValues(if a.is_positive() {
            HalfLine::Negative
        } else {
            HalfLine::Positive
        }))
    } else if a.is_positive() {
        Ok(ParityVerdict::EvenSquaresOnly)
    } else {
        Err(AnalyzerError::NegativeEvenCase)
    }
}
