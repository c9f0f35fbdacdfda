//! Closed forms for Mellin transforms of products of up to four modified
//! Bessel factors, and for quartic Airy products.
//!
//! Every evaluator returns an [`EvalResult`] carrying the formula label it
//! used. Generic parameters go through the G-function, ₆F̃₅ and F_C engines in
//! [`mellin`]; the equal-order families with elementary or digamma answers
//! live in [`families`]; Airy products in [`airy`]. [`evaluate`] picks a route
//! from an [`IntegralSpec`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub mod airy;
mod dispatch;
pub mod families;
pub mod mellin;

pub use airy::{airy_quartic, airy_s57, hyp_difference_d, AiryKind, AiryPattern, AirySpec};
pub use dispatch::evaluate;
pub use families::{
    i2k2_family, ik3_table, ikk2_family, k2k2_family, k4_table, I2K2Branch, IKK2Branch, K2K2Branch,
    IK3_TABLE, K4_TABLE,
};
pub use mellin::{
    kk_pair_mellin, product_i_single_k_mellin, quartic_i2k2_mellin, quartic_ik3_mellin,
    quartic_k_mellin,
};

/// Distance from a removable or pole singularity of a csc/sec prefactor
/// below which evaluation is refused.
pub const SINGULAR_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BesselKind {
    I,
    K,
}

impl fmt::Display for BesselKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BesselKind::I => "I",
            BesselKind::K => "K",
        })
    }
}

/// One factor I_ν(c x) or K_ν(c x). `exact` keeps a rational order p/q when
/// the order came from exact input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselFactor {
    pub kind: BesselKind,
    pub order: f64,
    pub scale: f64,
    pub exact: Option<(i64, i64)>,
}

impl BesselFactor {
    pub fn new(kind: BesselKind, order: f64, scale: f64) -> Self {
        Self {
            kind,
            order,
            scale,
            exact: None,
        }
    }

    pub fn i(order: f64, scale: f64) -> Self {
        Self::new(BesselKind::I, order, scale)
    }

    pub fn k(order: f64, scale: f64) -> Self {
        Self::new(BesselKind::K, order, scale)
    }

    /// Order p/q, kept exactly.
    pub fn rational(kind: BesselKind, p: i64, q: i64, scale: f64) -> Self {
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()).max(1) as i64;
        let (p, q) = if q < 0 {
            (-p / g, -q / g)
        } else {
            (p / g, q / g)
        };
        Self {
            kind,
            order: p as f64 / q as f64,
            scale,
            exact: Some((p, q)),
        }
    }

    /// Order that controls the behaviour at 0: |ν| for K, and for I the order
    /// itself unless it is a negative integer (I₋ₙ = Iₙ).
    pub fn small_x_exponent(&self) -> f64 {
        match self.kind {
            BesselKind::K => -self.order.abs(),
            BesselKind::I if self.order < 0.0 && self.order == self.order.round() => -self.order,
            BesselKind::I => self.order,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// ∫₀^∞ x^{s−1} Π factors dx.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralSpec {
    pub s: f64,
    pub factors: Vec<BesselFactor>,
}

impl IntegralSpec {
    pub fn new(s: f64, factors: Vec<BesselFactor>) -> Result<Self> {
        if factors.is_empty() || factors.len() > 4 {
            return Err(Error::Domain(format!(
                "need 1 to 4 factors, got {}",
                factors.len()
            )));
        }
        if let Some(f) = factors
            .iter()
            .find(|f| !(f.scale > 0.0) || !f.scale.is_finite())
        {
            return Err(Error::Domain(format!(
                "scale must be positive, got {}",
                f.scale
            )));
        }
        if !s.is_finite() || factors.iter().any(|f| !f.order.is_finite()) {
            return Err(Error::Domain("non-finite exponent or order".into()));
        }
        Ok(Self { s, factors })
    }

    pub fn count(&self, kind: BesselKind) -> usize {
        self.factors.iter().filter(|f| f.kind == kind).count()
    }

    pub fn scale_sum(&self, kind: BesselKind) -> f64 {
        self.factors
            .iter()
            .filter(|f| f.kind == kind)
            .map(|f| f.scale)
            .sum()
    }

    /// Net exponential decay rate at infinity, Σ K-scales − Σ I-scales.
    pub fn decay_rate(&self) -> f64 {
        self.scale_sum(BesselKind::K) - self.scale_sum(BesselKind::I)
    }

    /// Power of x multiplying the exponential at infinity, including x^{s−1}.
    pub fn tail_power(&self) -> f64 {
        self.s - 1.0 - 0.5 * self.factors.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Convergence {
    Ok,
    Fail(String),
}

impl Convergence {
    pub fn is_ok(&self) -> bool {
        matches!(self, Convergence::Ok)
    }
}

/// Whether ∫₀^∞ x^{s−1} Π factors dx converges at both ends.
///
/// At infinity the factors behave like e^{±c x}/√x, so the net rate must be
/// positive; with equal scale sums the algebraic tail x^{s−1−N/2} must be
/// integrable and at least one K present. At zero, I_ν ~ x^ν and K_ν ~ x^{−|ν|}
/// (logarithmic for ν = 0).
pub fn check_convergence(spec: &IntegralSpec) -> Convergence {
    let n_k = spec.count(BesselKind::K);
    if n_k == 0 {
        return Convergence::Fail("no K factor: the integrand grows at infinity".into());
    }
    let rate = spec.decay_rate();
    let tol = 1e-12 * spec.scale_sum(BesselKind::K);
    if rate < -tol {
        return Convergence::Fail(format!(
            "divergent growth: Σ K-scales − Σ I-scales = {rate} < 0"
        ));
    }
    if rate.abs() <= tol && spec.tail_power() >= -1.0 {
        return Convergence::Fail(format!(
            "equal scale sums need s < {} for an integrable power tail, got s = {}",
            0.5 * spec.factors.len() as f64,
            spec.s
        ));
    }
    let lead: f64 = spec
        .factors
        .iter()
        .map(BesselFactor::small_x_exponent)
        .sum();
    if spec.s + lead <= 0.0 {
        return Convergence::Fail(format!(
            "non-integrable at 0: need s > {}, got s = {}",
            -lead, spec.s
        ));
    }
    Convergence::Ok
}

/// A closed-form value with its provenance and an error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub formula_id: String,
    pub est_error: f64,
    pub diagnostics: BTreeMap<String, f64>,
}

impl EvalResult {
    pub(crate) fn new(formula_id: &str, value: f64, est_error: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Overflow(format!("{formula_id} produced {value}")));
        }
        Ok(Self {
            value,
            formula_id: formula_id.to_string(),
            est_error: est_error.abs().max(f64::EPSILON * value.abs()),
            diagnostics: BTreeMap::new(),
        })
    }

    /// Elementary expression: a few ulps per operation.
    pub(crate) fn elementary(formula_id: &str, value: f64) -> Result<Self> {
        Self::new(formula_id, value, 64.0 * f64::EPSILON * value.abs())
    }

    pub(crate) fn with(mut self, key: &str, v: f64) -> Self {
        self.diagnostics.insert(key.to_string(), v);
        self
    }
}

/// Refuse α within [`SINGULAR_GUARD`] of any of `points`.
pub(crate) fn guard_singular(alpha: f64, points: &[f64], what: &str) -> Result<()> {
    if let Some(p) = points.iter().find(|&&p| (alpha - p).abs() < SINGULAR_GUARD) {
        return Err(Error::NearSingularParameter(format!(
            "{what}: α = {alpha} is within {SINGULAR_GUARD} of the singular value {p}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: f64, f: &[BesselFactor]) -> IntegralSpec {
        IntegralSpec::new(s, f.to_vec()).unwrap()
    }

    #[test]
    fn convergence_verdicts() {
        let k0 = BesselFactor::k(0.0, 1.0);
        assert!(check_convergence(&spec(2.0, &[k0; 4])).is_ok());
        let ikkk = [BesselFactor::i(0.0, 1.0), k0, k0, k0];
        assert!(check_convergence(&spec(1.0, &ikkk)).is_ok());
        let grow = [BesselFactor::i(0.3, 2.0), BesselFactor::k(0.3, 1.0)];
        assert!(!check_convergence(&spec(1.0, &grow)).is_ok());
    }

    #[test]
    fn equal_scale_boundary() {
        let f = [
            BesselFactor::i(0.2, 1.0),
            BesselFactor::i(0.2, 1.0),
            BesselFactor::k(0.2, 1.0),
            BesselFactor::k(0.2, 1.0),
        ];
        assert!(check_convergence(&spec(1.5, &f)).is_ok());
        assert!(!check_convergence(&spec(2.0, &f)).is_ok());
    }

    #[test]
    fn small_x_bound() {
        let f = [BesselFactor::k(0.4, 1.0); 4];
        assert!(check_convergence(&spec(1.7, &f)).is_ok());
        assert!(!check_convergence(&spec(1.6, &f)).is_ok());
        // I₋₂ behaves like x²
        let f = [BesselFactor::i(-2.0, 1.0), BesselFactor::k(1.5, 3.0)];
        assert!(check_convergence(&spec(-0.4, &f)).is_ok());
    }

    #[test]
    fn rational_orders_normalize() {
        let f = BesselFactor::rational(BesselKind::I, 2, -6, 1.0);
        assert_eq!(f.exact, Some((-1, 3)));
        assert_eq!(f.order, -1.0 / 3.0);
    }

    #[test]
    fn spec_validation() {
        assert!(IntegralSpec::new(1.0, vec![]).is_err());
        assert!(IntegralSpec::new(1.0, vec![BesselFactor::k(0.0, -1.0)]).is_err());
        assert!(IntegralSpec::new(1.0, vec![BesselFactor::k(0.0, 1.0); 5]).is_err());
    }
}
