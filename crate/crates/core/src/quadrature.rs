//! Double-exponential quadrature for ∫₀^∞ of Bessel and Airy products.
//!
//! (0, c] is mapped by x = c/(1 + e^{−π sinh t}) (tanh-sinh, which clusters
//! nodes at the x^p·logᵏ x singularity at 0), and [c, ∞) by
//! x = c + e^{(π/2) sinh t} (exp-sinh). The step halves each level, reusing
//! earlier nodes. Integrands are evaluated in log space from exponentially
//! scaled kernels, so I_ν(x)K_ν(x)³ at large x never forms e^{x} alone.
//!
//! What is cut off at either end is bounded from the analytic envelope of
//! the integrand and reported as `tail_bound`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bessel::{airy_ai_scaled, airy_bi_scaled, bessel_i_scaled, bessel_k_scaled};
use crate::closed_form::{
    check_convergence, AiryKind, AirySpec, BesselKind, Convergence, IntegralSpec,
};
use crate::{Error, Result};

/// Nodes whose contribution is below e^{−40} of the largest are dropped.
const TRUNCATION: f64 = 4.248_354_255_291_589e-18;
const BASE_STEP: f64 = 0.5;
/// Initial scan spacing, BASE_STEP/2³: the scan doubles as level 3.
const SCAN_LEVEL: u32 = 3;
const MAX_T: f64 = 8.0;
const QUIET_NODES: usize = 4;
/// Relative floor added to the tail bound for rounding in the node sums.
const ROUNDING: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_levels: u32,
    pub split_point: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_levels: 12,
            split_point: 1.0,
        }
    }
}

impl QuadratureOptions {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Domain(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_levels > 16 {
            return Err(Error::Domain(format!(
                "max_levels ≤ 16, got {}",
                self.max_levels
            )));
        }
        if !(self.split_point > 0.0 && self.split_point.is_finite()) {
            return Err(Error::Domain(format!(
                "split point must be positive, got {}",
                self.split_point
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Last inter-level change plus `tail_bound`.
    pub err_estimate: f64,
    pub evaluations: usize,
    /// Bound on the truncated end pieces, plus a rounding floor.
    pub tail_bound: f64,
    /// |I_k − I_{k−1}| for each level after the first.
    pub level_deltas: Vec<f64>,
    /// Largest abscissa kept.
    pub upper_cut: f64,
}

/// Something the oracle can integrate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OracleSpec {
    Bessel(IntegralSpec),
    Airy(AirySpec),
}

impl From<IntegralSpec> for OracleSpec {
    fn from(s: IntegralSpec) -> Self {
        OracleSpec::Bessel(s)
    }
}

impl From<AirySpec> for OracleSpec {
    fn from(s: AirySpec) -> Self {
        OracleSpec::Airy(s)
    }
}

/// Behaviour of the integrand at the ends: f ~ C x^{p0} near 0 and
/// f ~ C x^{p} e^{−r x^β} at infinity.
#[derive(Debug, Clone, Copy)]
struct Envelope {
    p0: f64,
    p: f64,
    r: f64,
    beta: f64,
}

impl OracleSpec {
    fn envelope(&self) -> Envelope {
        match self {
            OracleSpec::Bessel(s) => Envelope {
                p0: s.s - 1.0 + s.factors.iter().map(|f| f.small_x_exponent()).sum::<f64>(),
                p: s.tail_power(),
                r: s.decay_rate().max(0.0),
                beta: 1.0,
            },
            OracleSpec::Airy(s) => Envelope {
                p0: 0.0,
                p: -1.0,
                r: airy_rate(s),
                beta: 1.5,
            },
        }
    }

    fn convergence(&self) -> Convergence {
        match self {
            OracleSpec::Bessel(s) => check_convergence(s),
            OracleSpec::Airy(s) => {
                if airy_rate(s) > 0.0 {
                    Convergence::Ok
                } else {
                    Convergence::Fail("Airy product does not decay: Bi growth not dominated".into())
                }
            }
        }
    }
}

/// (2/3)(Σ_Ai c^{3/2} − Σ_Bi c^{3/2}).
fn airy_rate(s: &AirySpec) -> f64 {
    let mut r = 0.0;
    for (k, &c) in s.kinds.iter().zip(&s.scales) {
        let w = c * c.sqrt();
        r += match k {
            AiryKind::Ai => w,
            AiryKind::Bi => -w,
        };
    }
    2.0 / 3.0 * r
}

/// (ln|f(x)|, sign f(x)).
fn ln_integrand(spec: &OracleSpec, x: f64) -> Result<(f64, f64)> {
    let mut ln = 0.0;
    let mut sign = 1.0;
    let mut push = |v: f64| {
        ln += v.abs().ln();
        sign *= v.signum();
    };
    match spec {
        OracleSpec::Bessel(s) => {
            for f in &s.factors {
                let y = f.scale * x;
                push(match f.kind {
                    BesselKind::I => bessel_i_scaled(f.order, y)?,
                    BesselKind::K => bessel_k_scaled(f.order, y)?,
                });
            }
            ln += (s.s - 1.0) * x.ln() - s.decay_rate() * x;
        }
        OracleSpec::Airy(s) => {
            let mut zeta = 0.0;
            for (k, &c) in s.kinds.iter().zip(&s.scales) {
                let y = c * x;
                let z = 2.0 / 3.0 * y * y.sqrt();
                match k {
                    AiryKind::Ai => {
                        push(airy_ai_scaled(y)?);
                        zeta -= z;
                    }
                    AiryKind::Bi => {
                        push(airy_bi_scaled(y)?);
                        zeta += z;
                    }
                }
            }
            ln += zeta;
        }
    }
    Ok((ln, sign))
}

/// The integrand at x > 0.
pub fn integrand(spec: &OracleSpec, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("integrand needs x > 0, got {x}")));
    }
    let (ln, sign) = ln_integrand(spec, x)?;
    if sign == 0.0 {
        return Ok(0.0);
    }
    Ok(sign * ln.exp())
}

#[derive(Debug, Clone, Copy)]
enum Map {
    /// (lo, hi) by tanh-sinh
    Finite(f64, f64),
    /// [c, ∞) by exp-sinh
    Half(f64),
}

impl Map {
    /// (x, dx/dt), or None where the map has degenerated in floating point.
    fn node(self, t: f64) -> Option<(f64, f64)> {
        match self {
            Map::Finite(lo, hi) => {
                let e = (-std::f64::consts::PI * t.sinh()).exp();
                let d = 1.0 + e;
                let x = lo + (hi - lo) / d;
                let w = (hi - lo) * std::f64::consts::PI * t.cosh() * e / (d * d);
                (x > lo && x < hi && w.is_finite() && w > 0.0).then_some((x, w))
            }
            Map::Half(c) => {
                let ex = (std::f64::consts::FRAC_PI_2 * t.sinh()).exp();
                let x = c + ex;
                let w = std::f64::consts::FRAC_PI_2 * t.cosh() * ex;
                (x > c && x.is_finite() && w.is_finite() && w > 0.0).then_some((x, w))
            }
        }
    }
}

/// One mapped segment with its node cache (keyed by index on the finest grid).
struct Segment {
    map: Map,
    lo_idx: i64,
    hi_idx: i64,
    cache: HashMap<i64, f64>,
    /// (x, f(x)) at the extreme kept nodes.
    left_end: (f64, f64),
    right_end: (f64, f64),
}

const FINEST: u32 = 16 + SCAN_LEVEL;

fn t_of(idx: i64) -> f64 {
    idx as f64 * BASE_STEP / (1u64 << FINEST) as f64
}

fn stride(level: u32) -> i64 {
    1i64 << (FINEST - level)
}

impl Segment {
    fn term(
        &mut self,
        f: &dyn Fn(f64) -> Result<f64>,
        idx: i64,
        evals: &mut usize,
    ) -> Result<Option<(f64, f64, f64)>> {
        let Some((x, w)) = self.map.node(t_of(idx)) else {
            return Ok(None);
        };
        if let Some(&v) = self.cache.get(&idx) {
            return Ok(Some((x, v, v * w)));
        }
        let v = f(x)?;
        *evals += 1;
        self.cache.insert(idx, v);
        Ok(Some((x, v, v * w)))
    }

    /// Walk outward from t = 0 at the scan spacing and fix the index range.
    fn scan(map: Map, f: &dyn Fn(f64) -> Result<f64>, evals: &mut usize) -> Result<Self> {
        let mut seg = Segment {
            map,
            lo_idx: 0,
            hi_idx: 0,
            cache: HashMap::new(),
            left_end: (f64::NAN, 0.0),
            right_end: (f64::NAN, 0.0),
        };
        let step = stride(SCAN_LEVEL);
        let n_max = (MAX_T / t_of(step)).ceil() as i64;
        let mut peak = 0.0f64;
        let mut ends = [(0i64, (f64::NAN, 0.0)); 2];
        let centre = seg.term(f, 0, evals)?;
        if let Some((x, v, t)) = centre {
            peak = t.abs();
            ends = [(0, (x, v)); 2];
        }
        for (side, dir) in [(0usize, -1i64), (1, 1)] {
            let mut quiet = 0;
            for j in 1..=n_max {
                let idx = dir * j * step;
                let got = match seg.term(f, idx, evals) {
                    Ok(g) => g,
                    // a kernel giving out far from the bulk ends the walk
                    Err(Error::Overflow(_)) | Err(Error::Domain(_))
                        if quiet > 0 || j > n_max / 2 =>
                    {
                        None
                    }
                    Err(e) => return Err(e),
                };
                let Some((x, v, t)) = got else { break };
                peak = peak.max(t.abs());
                ends[side] = (idx, (x, v));
                if t.abs() <= TRUNCATION * peak {
                    quiet += 1;
                    if quiet >= QUIET_NODES {
                        break;
                    }
                } else {
                    quiet = 0;
                }
            }
        }
        seg.lo_idx = ends[0].0;
        seg.hi_idx = ends[1].0;
        seg.left_end = ends[0].1;
        seg.right_end = ends[1].1;
        Ok(seg)
    }

    /// h Σ f(x(t)) x'(t) over level `level` nodes only (odd multiples of the
    /// stride for level > 0).
    fn level_sum(
        &mut self,
        f: &dyn Fn(f64) -> Result<f64>,
        level: u32,
        evals: &mut usize,
    ) -> Result<f64> {
        let st = stride(level);
        let first = (self.lo_idx.div_euclid(st)) * st;
        let mut sum = 0.0;
        let mut idx = first;
        while idx <= self.hi_idx {
            let fresh = level == 0 || (idx / st) % 2 != 0;
            if idx >= self.lo_idx && fresh {
                if let Some((_, _, t)) = self.term(f, idx, evals)? {
                    sum += t;
                }
            }
            idx += st;
        }
        Ok(sum)
    }
}

fn upper_tail(env: &Envelope, (x, fx): (f64, f64)) -> f64 {
    if !x.is_finite() || fx == 0.0 {
        return 0.0;
    }
    let d = env.r * env.beta * x.powf(env.beta - 1.0) - env.p / x;
    if env.r > 0.0 && d > 0.0 {
        fx.abs() / d
    } else if env.p < -1.0 {
        fx.abs() * x / (-env.p - 1.0)
    } else {
        f64::INFINITY
    }
}

fn lower_tail(env: &Envelope, (x, fx): (f64, f64)) -> f64 {
    if !x.is_finite() || fx == 0.0 {
        return 0.0;
    }
    if env.p0 > -1.0 {
        fx.abs() * x / (env.p0 + 1.0)
    } else {
        f64::INFINITY
    }
}

struct Outcome {
    value: f64,
    delta: f64,
    deltas: Vec<f64>,
    evals: usize,
}

fn run_levels(
    f: &dyn Fn(f64) -> Result<f64>,
    segs: &mut [Segment],
    opts: &QuadratureOptions,
    tail: f64,
) -> Result<Outcome> {
    let mut evals = 0;
    let mut sums = vec![0.0; segs.len()];
    let mut prev = f64::NAN;
    let mut deltas = Vec::new();
    for level in 0..=opts.max_levels {
        let h = BASE_STEP / (1u64 << level) as f64;
        let mut total = 0.0;
        for (seg, s) in segs.iter_mut().zip(sums.iter_mut()) {
            *s += seg.level_sum(f, level, &mut evals)?;
            total += h * *s;
        }
        if level > 0 {
            let d = (total - prev).abs();
            deltas.push(d);
            let tol = (opts.rel_tol * total.abs()).max(opts.abs_tol);
            if level >= SCAN_LEVEL && d + tail <= tol {
                return Ok(Outcome {
                    value: total,
                    delta: d,
                    deltas,
                    evals,
                });
            }
        }
        prev = total;
    }
    Err(Error::ToleranceNotMet(format!(
        "quadrature after {} levels: last change {:e}, value {prev}, tail bound {tail:e}",
        opts.max_levels,
        deltas.last().copied().unwrap_or(f64::NAN)
    )))
}

/// ∫₀^∞ of the spec's integrand.
pub fn integrate(spec: &OracleSpec, opts: &QuadratureOptions) -> Result<QuadratureResult> {
    opts.validate()?;
    if let Convergence::Fail(why) = spec.convergence() {
        return Err(Error::DivergentSpec(why));
    }
    let env = spec.envelope();
    let f = |x: f64| integrand(spec, x);
    let mut evals = 0;
    let c = opts.split_point;
    let left = Segment::scan(Map::Finite(0.0, c), &f, &mut evals)?;
    let right = Segment::scan(Map::Half(c), &f, &mut evals)?;
    let upper_cut = right.right_end.0;
    let cut = 10.0 * (lower_tail(&env, left.left_end) + upper_tail(&env, right.right_end));
    let mut segs = [left, right];
    let out = run_levels(&f, &mut segs, opts, cut)?;
    let tail_bound = cut + ROUNDING * out.value.abs();
    Ok(QuadratureResult {
        value: out.value,
        err_estimate: out.delta + tail_bound,
        evaluations: evals + out.evals,
        tail_bound,
        level_deltas: out.deltas,
        upper_cut,
    })
}

/// ∫_lo^hi of the spec's integrand by tanh-sinh, 0 ≤ lo < hi < ∞.
pub fn integrate_segment(
    spec: &OracleSpec,
    lo: f64,
    hi: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureResult> {
    opts.validate()?;
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Domain(format!(
            "need 0 ≤ lo < hi < ∞, got [{lo}, {hi}]"
        )));
    }
    let env = spec.envelope();
    let f = |x: f64| integrand(spec, x);
    let mut evals = 0;
    let seg = Segment::scan(Map::Finite(lo, hi), &f, &mut evals)?;
    let cut = if lo == 0.0 {
        10.0 * lower_tail(&env, seg.left_end)
    } else {
        0.0
    };
    let mut segs = [seg];
    let out = run_levels(&f, &mut segs, opts, cut)?;
    let tail_bound = cut + ROUNDING * out.value.abs();
    Ok(QuadratureResult {
        value: out.value,
        err_estimate: out.delta + tail_bound,
        evaluations: evals + out.evals,
        tail_bound,
        level_deltas: out.deltas,
        upper_cut: hi,
    })
}
