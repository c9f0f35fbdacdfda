//! Generalized hypergeometric series pFq (plain and regularized) and the
//! ₂F₁ toolkit: Gauss's unit-argument value, the 1/z connection formula,
//! the logarithmic z → 1⁻ expansion and the elementary reductions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::special::{
    digamma, gamma_ratio, is_nonpositive_integer, pochhammer, rgamma, EULER_GAMMA,
};
use crate::{Error, Result};

const MAX_TERMS: usize = 100_000;
const TERM_TOL: f64 = 1e-17;
const TAIL_TOL: f64 = 1e-15;

/// Parameters of ₚF_q(a; b; z).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypSeriesSpec {
    pub a_params: Vec<f64>,
    pub b_params: Vec<f64>,
    pub z: f64,
    pub regularized: bool,
}

/// A summed series with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    pub tail: f64,
}

impl HypSeriesSpec {
    pub fn new(a_params: Vec<f64>, b_params: Vec<f64>, z: f64) -> Self {
        Self {
            a_params,
            b_params,
            z,
            regularized: false,
        }
    }

    pub fn regularized(a_params: Vec<f64>, b_params: Vec<f64>, z: f64) -> Self {
        Self {
            a_params,
            b_params,
            z,
            regularized: true,
        }
    }

    pub fn p(&self) -> usize {
        self.a_params.len()
    }

    pub fn q(&self) -> usize {
        self.b_params.len()
    }

    fn validate(&self) -> Result<()> {
        if self.p() > self.q() + 1 {
            return Err(Error::Domain(format!(
                "{}F{} has p > q + 1",
                self.p(),
                self.q()
            )));
        }
        if !self.z.is_finite() {
            return Err(Error::Domain("non-finite argument".into()));
        }
        if !self.regularized {
            if let Some(b) = self.b_params.iter().find(|&&b| is_nonpositive_integer(b)) {
                return Err(Error::Domain(format!(
                    "denominator parameter {b} is a pole"
                )));
            }
        }
        Ok(())
    }

    fn terminates(&self) -> bool {
        self.a_params.iter().any(|&a| is_nonpositive_integer(a))
    }
}

fn ratio(a: &[f64], b: &[f64], z: f64, k: usize) -> f64 {
    let kf = k as f64;
    let mut r = z / (kf + 1.0);
    for &x in a {
        r *= x + kf;
    }
    for &x in b {
        r /= x + kf;
    }
    r
}

/// Sum from index `k0` with first term `t0` until the tail is negligible.
fn sum_to_tolerance(a: &[f64], b: &[f64], z: f64, k0: usize, t0: f64) -> Result<SeriesSum> {
    let mut sum = t0;
    let mut t = t0;
    let mut small = 0;
    for k in k0..k0 + MAX_TERMS {
        let next = t * ratio(a, b, z, k);
        sum += next;
        if next == 0.0 {
            return Ok(SeriesSum {
                value: sum,
                terms: k - k0 + 2,
                tail: 0.0,
            });
        }
        let scale = sum.abs().max(1e-300);
        if next.abs() <= TERM_TOL * scale {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 2 {
            let r = (next / t).abs();
            if r < 1.0 {
                let tail = next.abs() * r / (1.0 - r);
                if tail <= TAIL_TOL * scale {
                    return Ok(SeriesSum {
                        value: sum,
                        terms: k - k0 + 2,
                        tail,
                    });
                }
            }
        }
        t = next;
    }
    Err(Error::ToleranceNotMet(format!(
        "{}F{} at z = {z} after {MAX_TERMS} terms",
        a.len(),
        b.len()
    )))
}

/// Partial sums Σ_{k0 ≤ k < n} t_k for each n in `cuts` (increasing).
fn partial_sums(a: &[f64], b: &[f64], z: f64, k0: usize, t0: f64, cuts: &[usize]) -> Vec<f64> {
    let mut out = Vec::with_capacity(cuts.len());
    let mut sum = 0.0;
    let mut t = t0;
    let mut k = k0;
    for &n in cuts {
        while k < n {
            sum += t;
            t *= ratio(a, b, z, k);
            k += 1;
        }
        out.push(sum);
    }
    out
}

/// z = 1, p = q + 1, excess σ > 0: Richardson on doubled partial sums.
fn sum_unit_boundary(a: &[f64], b: &[f64], k0: usize, t0: f64, sigma: f64) -> SeriesSum {
    let scale = a.iter().chain(b).fold(1.0f64, |m, x| m.max(x.abs()));
    let n0 = (64.0f64.max(8.0 * scale)).ceil() as usize + k0;
    let levels = 9;
    let cuts: Vec<usize> = (0..levels).map(|j| n0 << j).collect();
    let sums = partial_sums(a, b, 1.0, k0, t0, &cuts);
    let mut table = vec![sums];
    for i in 1..levels {
        let prev = &table[i - 1];
        let w = 2f64.powf(sigma + (i - 1) as f64);
        let row: Vec<f64> = (1..prev.len())
            .map(|j| (w * prev[j] - prev[j - 1]) / (w - 1.0))
            .collect();
        table.push(row);
    }
    let best = table[levels - 1][0];
    let prev = *table[levels - 2].last().unwrap();
    SeriesSum {
        value: best,
        terms: *cuts.last().unwrap() - k0,
        tail: (best - prev).abs(),
    }
}

/// z = −1, p = q + 1: repeated averaging of consecutive partial sums.
fn sum_alternating_boundary(a: &[f64], b: &[f64], k0: usize, t0: f64) -> SeriesSum {
    let scale = a.iter().chain(b).fold(1.0f64, |m, x| m.max(x.abs()));
    let n0 = (64.0f64.max(8.0 * scale)).ceil() as usize + k0;
    let depth = 24;
    let cuts: Vec<usize> = (0..=depth).map(|j| n0 + j).collect();
    let mut s = partial_sums(a, b, -1.0, k0, t0, &cuts);
    let mut last_delta = f64::INFINITY;
    while s.len() > 1 {
        last_delta = (s[1] - s[0]).abs();
        s = s.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    SeriesSum {
        value: s[0],
        terms: n0 + depth - k0,
        tail: last_delta,
    }
}

/// Evaluate the series with diagnostics.
pub fn pfq_sum(spec: &HypSeriesSpec) -> Result<SeriesSum> {
    spec.validate()?;
    let a = &spec.a_params;
    let b = &spec.b_params;
    let z = spec.z;

    // Start index and leading term; regularized series with b_j ∈ {0, −1, …}
    // have vanishing terms below 1 − b_j.
    let mut k0 = 0usize;
    if spec.regularized {
        for &bj in b {
            if is_nonpositive_integer(bj) {
                k0 = k0.max((1.0 - bj) as usize);
            }
        }
    }
    let t0 = if spec.regularized {
        if k0 > 0 && z == 0.0 {
            return Ok(SeriesSum {
                value: 0.0,
                terms: 0,
                tail: 0.0,
            });
        }
        let mut t = 1.0;
        for &ai in a {
            t *= pochhammer(ai, k0 as u32)?;
        }
        for j in 1..=k0 {
            t *= z / j as f64;
        }
        for &bj in b {
            t *= rgamma(bj + k0 as f64);
        }
        t
    } else {
        1.0
    };
    if z == 0.0 || t0 == 0.0 {
        return Ok(SeriesSum {
            value: t0,
            terms: 1,
            tail: 0.0,
        });
    }

    let boundary = spec.p() == spec.q() + 1 && !spec.terminates();
    if boundary && z.abs() > 1.0 {
        return Err(Error::SeriesDivergence(format!(
            "{}F{} at |z| = {} > 1",
            spec.p(),
            spec.q(),
            z.abs()
        )));
    }
    if boundary && z.abs() == 1.0 {
        let sigma = b.iter().sum::<f64>() - a.iter().sum::<f64>();
        if z == 1.0 {
            if sigma <= 0.0 {
                return Err(Error::SeriesDivergence(format!(
                    "{}F{} at z = 1 with parameter excess {sigma} ≤ 0",
                    spec.p(),
                    spec.q()
                )));
            }
            return Ok(sum_unit_boundary(a, b, k0, t0, sigma));
        }
        if sigma <= -1.0 {
            return Err(Error::SeriesDivergence(format!(
                "{}F{} at z = −1 with parameter excess {sigma} ≤ −1",
                spec.p(),
                spec.q()
            )));
        }
        return Ok(sum_alternating_boundary(a, b, k0, t0));
    }
    sum_to_tolerance(a, b, z, k0, t0)
}

/// ₚF_q(a; b; z), or its regularized form.
///
/// Matching parameter pairs are cancelled first. A non-terminating ₂F₁ at
/// −1 ≤ z < 0 goes through Pfaff's transformation to w = z/(z−1) ∈ (0, ½],
/// which avoids summing an alternating series with large terms.
pub fn pfq(spec: &HypSeriesSpec) -> Result<f64> {
    spec.validate()?;
    let mut spec = spec.clone();
    let mut factor = 1.0;
    while let Ok(c) = pfq_cancel(&spec) {
        // a regularized pair at a nonpositive integer does not cancel
        if c.factor == 0.0 {
            break;
        }
        factor *= c.factor;
        spec = c.spec;
    }
    let z = spec.z;
    if spec.p() == 2 && spec.q() == 1 && (-1.0..0.0).contains(&z) && !spec.terminates() {
        let (a, b, c) = (spec.a_params[0], spec.a_params[1], spec.b_params[0]);
        let w = HypSeriesSpec {
            a_params: vec![a, c - b],
            z: z / (z - 1.0),
            ..spec
        };
        return Ok(factor * (1.0 - z).powf(-a) * pfq_sum(&w)?.value);
    }
    Ok(factor * pfq_sum(&spec)?.value)
}

/// A reduced series and the scalar it must be multiplied by.
#[derive(Debug, Clone, PartialEq)]
pub struct Cancelled {
    pub spec: HypSeriesSpec,
    pub factor: f64,
}

impl Cancelled {
    pub fn value(&self) -> Result<f64> {
        Ok(self.factor * pfq(&self.spec)?)
    }
}

/// Remove one numerator/denominator pair that match exactly.
pub fn pfq_cancel(spec: &HypSeriesSpec) -> Result<Cancelled> {
    for (i, &ai) in spec.a_params.iter().enumerate() {
        if let Some(j) = spec.b_params.iter().position(|&bj| bj == ai) {
            let mut reduced = spec.clone();
            reduced.a_params.remove(i);
            reduced.b_params.remove(j);
            let factor = if spec.regularized { rgamma(ai) } else { 1.0 };
            return Ok(Cancelled {
                spec: reduced,
                factor,
            });
        }
    }
    Err(Error::NoCancellation)
}

/// ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)).
pub fn gauss_2f1_unit(a: f64, b: f64, c: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("c = {c} is a pole")));
    }
    if c - a - b <= 0.0 {
        return Err(Error::Domain(format!(
            "need c − a − b > 0, got {}",
            c - a - b
        )));
    }
    gamma_ratio(&[c, c - a - b], &[c - a, c - b])
}

/// The two terms of the 1/z connection formula for ₂F₁(a, b; c; z), |z| > 1.
///
/// For z > 1 the powers use arg(−z) = +π, which is the continuation onto the
/// lower lip of the cut [1, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionTerms {
    pub first: Complex64,
    pub second: Complex64,
}

impl InversionTerms {
    pub fn value(&self) -> Complex64 {
        self.first + self.second
    }
}

pub fn gauss_2f1_inversion(a: f64, b: f64, c: f64, z: f64) -> Result<InversionTerms> {
    if z.abs() <= 1.0 {
        return Err(Error::Domain(format!("inversion needs |z| > 1, got {z}")));
    }
    if (a - b) == (a - b).round() {
        return Err(Error::Domain(format!("a − b = {} is an integer", a - b)));
    }
    let w = 1.0 / z;
    let c1 = gamma_ratio(&[c, b - a], &[b, c - a])?;
    let c2 = gamma_ratio(&[c, a - b], &[a, c - b])?;
    let f1 = pfq(&HypSeriesSpec::new(
        vec![a, a - c + 1.0],
        vec![a - b + 1.0],
        w,
    ))?;
    let f2 = pfq(&HypSeriesSpec::new(
        vec![b, b - c + 1.0],
        vec![b - a + 1.0],
        w,
    ))?;
    let pow = |e: f64| -> Complex64 {
        if z < 0.0 {
            Complex64::new((-z).powf(-e), 0.0)
        } else {
            // (z e^{iπ})^{−e}
            Complex64::from_polar(z.powf(-e), -PI * e)
        }
    };
    Ok(InversionTerms {
        first: pow(a) * (c1 * f1),
        second: pow(b) * (c2 * f2),
    })
}

/// Leading behaviour of ₂F₁(a, b; a+b; z) as z → 1⁻.
pub fn gauss_2f1_log_asymptotic(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(z < 1.0) {
        return Err(Error::Domain(format!("need z < 1, got {z}")));
    }
    let g = gamma_ratio(&[a + b], &[a, b])?;
    Ok(-g * ((-z).ln_1p() + digamma(a)? + digamma(b)? + 2.0 * EULER_GAMMA))
}

/// ₂F₁(a, b; a+b; z) for 0 ≤ z < 1 by the logarithmic expansion in 1 − z:
///
/// Γ(a+b)/(Γ(a)Γ(b)) Σ (a)_k (b)_k / k!² [2ψ(k+1) − ψ(a+k) − ψ(b+k) − ln(1−z)] (1−z)^k.
///
/// Converges geometrically in 1 − z, so it complements the power series near
/// z = 1 where the latter needs O(1/(1−z)) terms.
pub fn gauss_2f1_degenerate(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("need 0 ≤ z < 1, got {z}")));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Err(Error::Unsupported("terminating degenerate ₂F₁".into()));
    }
    let w = 1.0 - z;
    let lw = (-z).ln_1p();
    let (mut pa, mut pb, mut p1) = (digamma(a)?, digamma(b)?, -EULER_GAMMA);
    let mut c = 1.0;
    let mut sum = 0.0;
    for k in 0..MAX_TERMS {
        let t = c * (2.0 * p1 - pa - pb - lw);
        sum += t;
        if k > 2 && t.abs() <= TERM_TOL * sum.abs() {
            return Ok(gamma_ratio(&[a + b], &[a, b])? * sum);
        }
        let kf = k as f64;
        c *= (a + kf) * (b + kf) / ((kf + 1.0) * (kf + 1.0)) * w;
        pa += 1.0 / (a + kf);
        pb += 1.0 / (b + kf);
        p1 += 1.0 / (kf + 1.0);
    }
    Err(Error::ToleranceNotMet(format!("degenerate ₂F₁ at z = {z}")))
}

/// ₂F₁(a, b; c; z) for real z < 1, switching to [`gauss_2f1_degenerate`]
/// when c = a + b and z > 1/2.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z > 0.5 && z < 1.0 && (c - a - b).abs() <= 1e-15 * c.abs().max(1.0) {
        return gauss_2f1_degenerate(a, b, z);
    }
    pfq(&HypSeriesSpec::new(vec![a, b], vec![c], z))
}

/// Elementary closed forms of ₂F₁(a, 1; a+1; z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elementary2F1 {
    /// ₂F₁(n+½, 1; n+3/2; z)
    Tanh(u32),
    /// ₂F₁(n, 1; n+1; z), n ≥ 1
    Log(u32),
    /// ₂F₁(1/6, 1; 7/6; z)
    Sixth,
    /// ₂F₁(5/6, 1; 11/6; z)
    FiveSixths,
    /// ₂F₁(1/4, 1; 5/4; z)
    Quarter,
    /// ₂F₁(3/4, 1; 7/4; z)
    ThreeQuarters,
}

impl Elementary2F1 {
    /// (a, b, c) of the underlying ₂F₁.
    pub fn params(self) -> (f64, f64, f64) {
        let a = match self {
            Elementary2F1::Tanh(n) => n as f64 + 0.5,
            Elementary2F1::Log(n) => n as f64,
            Elementary2F1::Sixth => 1.0 / 6.0,
            Elementary2F1::FiveSixths => 5.0 / 6.0,
            Elementary2F1::Quarter => 0.25,
            Elementary2F1::ThreeQuarters => 0.75,
        };
        (a, 1.0, a + 1.0)
    }
}

/// Two-argument inverse tangent tan⁻¹(x, y): the angle of the point (x, y).
pub fn two_arg_arctan(x: f64, y: f64) -> f64 {
    y.atan2(x)
}

pub fn elementary_2f1(kind: Elementary2F1, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!(
            "elementary ₂F₁ needs 0 < z < 1, got {z}"
        )));
    }
    if kind == Elementary2F1::Log(0) {
        return Err(Error::Domain("log family needs n ≥ 1".into()));
    }
    // The closed forms subtract a series head or divide by a power of z and
    // cancel as z → 0. There a·Σ zᵏ/(a+k) converges geometrically instead.
    if z <= 0.5 {
        let (a, _, _) = kind.params();
        let (mut sum, mut zk, mut k) = (0.0, 1.0, 0.0);
        while zk > f64::EPSILON * sum * (1.0 - z) || k == 0.0 {
            sum += zk / (a + k);
            zk *= z;
            k += 1.0;
        }
        return Ok(a * sum);
    }
    Ok(match kind {
        Elementary2F1::Tanh(n) => {
            let r = z.sqrt();
            let head: f64 = (0..n).map(|k| z.powi(k as i32) / (2 * k + 1) as f64).sum();
            (2 * n + 1) as f64 / z.powi(n as i32) * (r.atanh() / r - head)
        }
        Elementary2F1::Log(n) => {
            let head: f64 = (1..n).map(|k| z.powi(k as i32) / k as f64).sum();
            n as f64 / z.powi(n as i32) * (-(-z).ln_1p() - head)
        }
        Elementary2F1::Sixth | Elementary2F1::FiveSixths => {
            let u = z.powf(1.0 / 6.0);
            let u2 = u * u;
            let l = (u2 + u + 1.0).ln() - (u2 - u + 1.0).ln();
            let ang = 2.0 * 3f64.sqrt() * two_arg_arctan(1.0 - u2, 3f64.sqrt() * u);
            if kind == Elementary2F1::Sixth {
                (4.0 * u.atanh() + ang + l) / (12.0 * u)
            } else {
                5.0 * (4.0 * u.atanh() - ang + l) / (12.0 * u.powi(5))
            }
        }
        Elementary2F1::Quarter => {
            let q = z.powf(0.25);
            (q.atanh() + q.atan()) / (2.0 * q)
        }
        Elementary2F1::ThreeQuarters => {
            let q = z.powf(0.25);
            3.0 * (q.atanh() - q.atan()) / (2.0 * q.powi(3))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn pfaff_route_is_well_conditioned() {
        // mpmath, 30 digits; the direct series has terms near 4e4
        let s = HypSeriesSpec::new(
            vec![2.423181880507967, 0.1, 2.9196332965660705],
            vec![0.2, 0.1],
            -0.8682077818612334,
        );
        assert!(rel(pfq(&s).unwrap(), -0.228_730_795_196_312_924_2) < 1e-14);
        let s = HypSeriesSpec::new(vec![1.0, 1.0], vec![2.0], -1.0);
        assert!(rel(pfq(&s).unwrap(), std::f64::consts::LN_2) < 1e-15);
    }

    #[test]
    fn zero_argument() {
        let s = HypSeriesSpec::new(vec![0.3, 1.2], vec![2.5], 0.0);
        assert_eq!(pfq(&s).unwrap(), 1.0);
        let s = HypSeriesSpec::regularized(vec![0.3, 1.2], vec![2.5], 0.0);
        assert!(rel(pfq(&s).unwrap(), rgamma(2.5)) < 1e-15);
    }

    #[test]
    fn elementary_spot_values() {
        let s = HypSeriesSpec::new(vec![1.0, 0.5], vec![1.5], 0.25);
        assert!(rel(pfq(&s).unwrap(), 2.0 * 0.5f64.atanh()) < 1e-15);
        // ₁F₁(a; a; z) = e^z
        let s = HypSeriesSpec::new(vec![0.7], vec![0.7], -3.0);
        assert!(rel(pfq(&s).unwrap(), (-3f64).exp()) < 1e-13);
        // ₀F₁(; 3/2; x²/4) = sinh x / x
        let s = HypSeriesSpec::new(vec![], vec![1.5], 4.0);
        assert!(rel(pfq(&s).unwrap(), 4f64.sinh() / 4.0) < 1e-14);
    }

    #[test]
    fn central_binomial_fourth_powers() {
        let z = 0.25;
        let s = HypSeriesSpec::new(vec![0.5; 4], vec![1.0; 3], z);
        let mut c: f64 = 1.0;
        let mut direct = 0.0;
        for k in 0..200 {
            direct += c.powi(4) * z.powi(k);
            c *= (k as f64 + 0.5) / (k as f64 + 1.0);
        }
        assert!(rel(pfq(&s).unwrap(), direct) < 1e-14);
    }

    #[test]
    fn regularized_with_pole_parameter() {
        // ₂F̃₁(a, b; −1; z) = (a)₂(b)₂ z² ₂F₁(a+2, b+2; 3; z)/2
        let (a, b, z) = (0.3, 0.8, 0.2);
        let s = HypSeriesSpec::regularized(vec![a, b], vec![-1.0], z);
        let inner = pfq(&HypSeriesSpec::new(vec![a + 2.0, b + 2.0], vec![3.0], z)).unwrap();
        let want = a * (a + 1.0) * b * (b + 1.0) * z * z * inner / 2.0;
        assert!(rel(pfq(&s).unwrap(), want) < 1e-14);
        let plain = HypSeriesSpec::new(vec![a, b], vec![-1.0], z);
        assert!(pfq(&plain).is_err());
    }

    #[test]
    fn divergence_and_terminating() {
        let s = HypSeriesSpec::new(vec![0.5, 0.5], vec![1.0], 1.5);
        assert!(matches!(pfq(&s), Err(Error::SeriesDivergence(_))));
        let s = HypSeriesSpec::new(vec![0.5, 0.5], vec![0.5], 1.0);
        assert!(matches!(pfq(&s), Err(Error::SeriesDivergence(_))));
        // ₂F₁(−2, b; c; z) is a quadratic and fine anywhere
        let (b, c, z) = (0.7, 1.9, 5.0);
        let s = HypSeriesSpec::new(vec![-2.0, b], vec![c], z);
        let want = 1.0 - 2.0 * b / c * z + b * (b + 1.0) / (c * (c + 1.0)) * z * z;
        assert!(rel(pfq(&s).unwrap(), want) < 1e-14);
    }

    #[test]
    fn unit_argument_boundary_sums() {
        for (a, b, c) in [
            (0.5, 0.5, 2.0),
            (0.3, 0.2, 1.6),
            (0.25, 0.75, 1.4),
            (1.0, 0.5, 2.1),
        ] {
            let s = HypSeriesSpec::new(vec![a, b], vec![c], 1.0);
            let g = gauss_2f1_unit(a, b, c).unwrap();
            assert!(rel(pfq(&s).unwrap(), g) < 1e-10, "({a}, {b}, {c})");
        }
        assert!(rel(gauss_2f1_unit(0.5, 0.5, 2.0).unwrap(), 4.0 / PI) < 1e-15);
        assert_eq!(gauss_2f1_unit(0.0, 0.4, 1.3).unwrap(), 1.0);
        assert!(gauss_2f1_unit(0.5, 0.5, 1.0).is_err());
        // z = −1: ₂F₁(1, 1; 2; −1) = ln 2
        let s = HypSeriesSpec::new(vec![1.0, 1.0], vec![2.0], -1.0);
        assert!(rel(pfq(&s).unwrap(), std::f64::consts::LN_2) < 1e-13);
    }

    #[test]
    fn near_unit_direct_sum() {
        // ₂F₁(1, 1; 2; z) = −ln(1−z)/z with a slowly decaying series
        let z = 0.999;
        let s = HypSeriesSpec::new(vec![1.0, 1.0], vec![2.0], z);
        let sum = pfq_sum(&s).unwrap();
        assert!(rel(sum.value, -(-z).ln_1p() / z) < 1e-13);
        assert!(sum.terms > 10_000);
    }

    #[test]
    fn cancellation() {
        let al = 0.23;
        let s = HypSeriesSpec::new(
            vec![1.0 - al, 1.0 + al, 1.0, 0.5],
            vec![1.0 - al, 1.0 + al, 1.5],
            0.4,
        );
        let once = pfq_cancel(&s).unwrap();
        let twice = pfq_cancel(&once.spec).unwrap();
        assert_eq!(twice.spec.a_params, vec![1.0, 0.5]);
        assert_eq!(twice.spec.b_params, vec![1.5]);
        assert!(rel(twice.value().unwrap(), pfq(&s).unwrap()) < 1e-14);
        let r = HypSeriesSpec::regularized(vec![2.5, 0.3], vec![2.5], 0.1);
        let c = pfq_cancel(&r).unwrap();
        assert!(rel(c.factor, rgamma(2.5)) < 1e-15);
        assert!(rel(c.value().unwrap(), pfq(&r).unwrap()) < 1e-14);
        let none = HypSeriesSpec::new(vec![0.3], vec![0.4], 0.1);
        assert_eq!(pfq_cancel(&none), Err(Error::NoCancellation));
    }

    #[test]
    fn inversion_against_pfaff_for_negative_argument() {
        let (a, b, c) = (0.3, 0.8, 1.7);
        for z in [-1.5, -4.0, -20.0] {
            let t = gauss_2f1_inversion(a, b, c, z).unwrap();
            let w = z / (z - 1.0);
            let pfaff =
                (1.0 - z).powf(-a) * pfq(&HypSeriesSpec::new(vec![a, c - b], vec![c], w)).unwrap();
            assert!(t.value().im.abs() < 1e-15);
            assert!(rel(t.value().re, pfaff) < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn inversion_reproduces_polynomials_past_one() {
        // a = −2 makes ₂F₁ a polynomial, real on both sides of z = 1.
        let (a, b, c) = (-2.0, 0.35, 1.45);
        for z in [1.21, 4.0] {
            let t = gauss_2f1_inversion(a, b, c, z).unwrap();
            let direct = pfq(&HypSeriesSpec::new(vec![a, b], vec![c], z)).unwrap();
            assert!(t.value().im.abs() < 1e-12 * direct.abs());
            assert!(rel(t.value().re, direct) < 1e-12, "z = {z}");
        }
        assert!(gauss_2f1_inversion(0.5, 1.5, 2.0, 3.0).is_err());
    }

    #[test]
    fn degenerate_expansion_near_one() {
        for (a, b, z) in [(1.0, 0.8, 0.6), (0.5, 1.0, 0.9), (1.0 / 6.0, 1.0, 0.75)] {
            let series = pfq(&HypSeriesSpec::new(vec![a, b], vec![a + b], z)).unwrap();
            assert!(
                rel(gauss_2f1_degenerate(a, b, z).unwrap(), series) < 1e-13,
                "{a} {b} {z}"
            );
        }
        // ₂F₁(1, ½; 3/2; z) = atanh(√z)/√z, far beyond the plain series' reach
        let z: f64 = 1.0 - 1e-9;
        // atanh(√z) written through 1 − z, which is exact here
        let r = z.sqrt();
        let want = 0.5 * ((1.0 + r) * (1.0 + r) / (1.0 - z)).ln() / r;
        assert!(rel(gauss_2f1(1.0, 0.5, 1.5, z).unwrap(), want) < 1e-12);
    }

    #[test]
    fn log_asymptotic() {
        let z = 0.999;
        let s = HypSeriesSpec::new(vec![0.5, 1.0], vec![1.5], z);
        let exact = pfq(&s).unwrap();
        let approx = gauss_2f1_log_asymptotic(0.5, 1.0, z).unwrap();
        assert!(rel(approx, exact) < 0.02);
        let z = 1.0 - 1e-10;
        let v = gauss_2f1_log_asymptotic(0.5, 0.5, z).unwrap();
        let want = -((1.0 - z).ln() + 2.0 * digamma(0.5).unwrap() + 2.0 * EULER_GAMMA) / PI;
        assert!(rel(v, want) < 1e-12);
    }

    #[test]
    fn elementary_forms_match_series() {
        let kinds = [
            Elementary2F1::Tanh(0),
            Elementary2F1::Tanh(1),
            Elementary2F1::Tanh(2),
            Elementary2F1::Log(1),
            Elementary2F1::Log(2),
            Elementary2F1::Log(3),
            Elementary2F1::Sixth,
            Elementary2F1::FiveSixths,
            Elementary2F1::Quarter,
            Elementary2F1::ThreeQuarters,
        ];
        for kind in kinds {
            let (a, b, c) = kind.params();
            for z in [0.1, 0.3, 0.5, 0.7, 0.95] {
                let e = elementary_2f1(kind, z).unwrap();
                let s = pfq(&HypSeriesSpec::new(vec![a, b], vec![c], z)).unwrap();
                assert!(rel(e, s) < 1e-11, "{kind:?} at {z}: {e} vs {s}");
            }
        }
        assert!(elementary_2f1(Elementary2F1::Sixth, 1.0).is_err());
        assert!(
            rel(
                elementary_2f1(Elementary2F1::Tanh(0), 0.36).unwrap(),
                0.6f64.atanh() / 0.6
            ) < 1e-15
        );
        assert!(
            rel(
                elementary_2f1(Elementary2F1::Log(1), 0.36).unwrap(),
                -(0.64f64.ln()) / 0.36
            ) < 1e-15
        );
    }

    #[test]
    fn two_argument_arctan_quadrants() {
        assert!((two_arg_arctan(1.0, 1.0) - PI / 4.0).abs() < 1e-16);
        assert!((two_arg_arctan(-1.0, 1.0) - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((two_arg_arctan(0.0, 2.0) - PI / 2.0).abs() < 1e-16);
    }
}
