//! Equal-order quartic families with the orders tied together:
//!
//! - K_α(ax)² K_α(bx)² at s = 1 and s = 2
//! - I_α(ax) K_α(ax) K_α(bx)² at s = 1 and s = 2
//! - I_α(ax)² K_α(bx)² at s = 1 and s = 2
//!
//! The caller names the branch. Each branch checks its own window and refuses
//! parameters sitting on a removable singularity of its prefactor.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use super::{guard_singular, EvalResult};
use crate::hypergeometric::{gauss_2f1, pfq_sum, HypSeriesSpec};
use crate::special::{digamma, gamma_ratio, li2, li3, EULER_GAMMA, ZETA3};
use crate::{Error, Result};

const ORDER_TOL: f64 = 1e-12;

/// Reciprocals m of the K⁴ digamma table orders α = 1/m.
pub const K4_TABLE: [u32; 6] = [3, 4, 6, 8, 10, 12];

/// Orders of the I·K³ table, as (p, q).
pub const IK3_TABLE: [(i64, i64); 5] = [(1, 2), (1, 3), (-1, 3), (1, 4), (-1, 4)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum K2K2Branch {
    Slv1,
    Forab,
    Foraa,
    Li2,
    Fox1,
    Kab13,
    /// α = 1/4 at mixed scales, a single inverse hyperbolic cotangent.
    KQuarter,
    /// a = b, α = 1/m from [`K4_TABLE`].
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IKK2Branch {
    Sch1,
    Forab2,
    Foraa2,
    Lili,
    Lilix,
    Fox2,
    /// α ∈ {1/2, ±1/4} at mixed scales.
    Elementary,
    /// a = b, α from [`IK3_TABLE`].
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum I2K2Branch {
    Haw,
    F21ab,
    /// α = n or n + 1/2 with n ≥ 0.
    Elementary,
    Ox1,
    /// Same value as `Ox1`, plus the explicit binomial⁴ partial sum.
    Ox2,
}

fn scales(a: f64, b: f64) -> Result<()> {
    if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "scales must be positive, got a = {a}, b = {b}"
        )))
    }
}

fn window(alpha: f64, lo: f64, hi: f64, what: &str) -> Result<()> {
    if alpha > lo && alpha < hi {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} needs {lo} < α < {hi}, got {alpha}"
        )))
    }
}

fn order_is(alpha: f64, want: f64, what: &str) -> Result<()> {
    if (alpha - want).abs() <= ORDER_TOL {
        Ok(())
    } else {
        Err(Error::BranchMismatch(format!(
            "{what} is the α = {want} case, got α = {alpha}"
        )))
    }
}

fn equal_scales(a: f64, b: f64, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::BranchMismatch(format!(
            "{what} needs a = b, got a = {a}, b = {b}"
        )))
    }
}

fn distinct_scales(a: f64, b: f64, what: &str) -> Result<()> {
    if a != b {
        Ok(())
    } else {
        Err(Error::BranchMismatch(format!(
            "{what} needs a ≠ b; use the a = b branch"
        )))
    }
}

fn csc_pi(x: f64) -> f64 {
    1.0 / (PI * x).sin()
}

fn acoth(x: f64) -> f64 {
    (1.0 / x).atanh()
}

/// ₚF_q value and its term count.
fn series(a: &[f64], b: &[f64], z: f64) -> Result<(f64, usize)> {
    let s = pfq_sum(&HypSeriesSpec::new(a.to_vec(), b.to_vec(), z))?;
    Ok((s.value, s.terms))
}

/// Sum of terms with a cancellation-aware error estimate.
fn assembled(id: &str, scale: f64, parts: &[f64]) -> Result<EvalResult> {
    let v = scale * parts.iter().sum::<f64>();
    let mass = scale.abs() * parts.iter().map(|p| p.abs()).sum::<f64>();
    EvalResult::new(id, v, mass * (1e-15 + 64.0 * f64::EPSILON))
}

/// ψ(½ − α) + ψ(½ + α) + 4 ln 2 + 2γ.
fn foraa_bracket(alpha: f64) -> Result<f64> {
    Ok(digamma(0.5 - alpha)? + digamma(0.5 + alpha)? + 4.0 * LN_2 + 2.0 * EULER_GAMMA)
}

/// ∫₀^∞ x K_{1/m}(ax)⁴ dx for m in [`K4_TABLE`].
pub fn k4_table(m: u32, a: f64) -> Result<EvalResult> {
    scales(a, a)?;
    let p2 = PI * PI;
    let v = match m {
        3 => p2 * 3f64.ln() / 4.0,
        4 => p2 * LN_2 / 4.0,
        6 => p2 * (27.0f64 / 16.0).ln() / 4.0,
        8 => p2 / 4.0 * (2.0 + SQRT_2) * (2.0 * LN_2 - SQRT_2 * acoth(SQRT_2)),
        10 => {
            let r5 = 5f64.sqrt();
            p2 / 16.0 * (3.0 + r5) * ((3125.0f64 / 256.0).ln() - 2.0 * r5 * acoth(r5))
        }
        12 => {
            let r3 = 3f64.sqrt();
            p2 / 4.0 * (2.0 + r3) * (108f64.ln() - 4.0 * r3 * acoth(r3))
        }
        _ => {
            return Err(Error::BranchMismatch(format!(
                "no K⁴ table entry for α = 1/{m}"
            )))
        }
    };
    // the m ≥ 8 rows cancel: (2+√2)(…) is a small difference of O(1) terms
    EvalResult::new(
        "k4-table",
        v / (a * a),
        256.0 * f64::EPSILON * (v / (a * a)).abs(),
    )
}

/// ∫₀^∞ x I_α(x) K_{|α|}(x)³ dx / a² for α = p/q in [`IK3_TABLE`].
pub fn ik3_table(p: i64, q: i64, a: f64) -> Result<EvalResult> {
    scales(a, a)?;
    let r3 = 3f64.sqrt();
    let v = match (p, q) {
        (1, 2) => PI * LN_2 / 4.0,
        (1, 3) => PI / 8.0 * (PI - r3 * 3f64.ln()),
        (-1, 3) => PI / 8.0 * (PI + r3 * 3f64.ln()),
        (1, 4) => PI * SQRT_2 / 16.0 * (PI - 2.0 * LN_2),
        (-1, 4) => PI * SQRT_2 / 16.0 * (PI + 2.0 * LN_2),
        _ => {
            return Err(Error::BranchMismatch(format!(
                "no I·K³ table entry for α = {p}/{q}"
            )))
        }
    };
    EvalResult::elementary("ik3-table", v / (a * a))
}

fn table_m(alpha: f64) -> Option<u32> {
    K4_TABLE
        .iter()
        .copied()
        .find(|&m| (alpha - 1.0 / m as f64).abs() <= ORDER_TOL)
}

fn ik3_entry(alpha: f64) -> Option<(i64, i64)> {
    IK3_TABLE
        .iter()
        .copied()
        .find(|&(p, q)| (alpha - p as f64 / q as f64).abs() <= ORDER_TOL)
}

/// ∫₀^∞ x^{s−1} K_α(ax)² K_α(bx)² dx; s = 1 for `Slv1`, s = 2 otherwise.
pub fn k2k2_family(branch: K2K2Branch, alpha: f64, a: f64, b: f64) -> Result<EvalResult> {
    scales(a, b)?;
    // the integrand depends on |α| and is symmetric in (a, b)
    let (a, b) = (a.min(b), a.max(b));
    match branch {
        K2K2Branch::Slv1 => {
            window(alpha, -0.25, 0.25, "slv1")?;
            guard_singular(alpha, &[0.0], "slv1")?;
            let z = (a / b) * (a / b);
            let half = |al: f64| -> Result<(f64, usize)> {
                let g = gamma_ratio(&[2.0 * al + 0.5], &[0.5 - al, 1.0 + al, 1.0 + al, 1.0 + al])?;
                let (h, n) = series(
                    &[0.5, al + 0.5, al + 0.5, 2.0 * al + 0.5],
                    &[2.0 * al + 1.0, al + 1.0, al + 1.0],
                    z,
                )?;
                Ok((csc_pi(al) * g * (a / (2.0 * b)).powf(2.0 * al) * h, n))
            };
            let (t1, n1) = half(alpha)?;
            // csc(πα) multiplies both halves; half(−α) carries csc(−πα)
            let (t2, n2) = half(-alpha)?;
            let t2 = -t2;
            let (h3, n3) = series(
                &[0.5, 0.5, alpha + 0.5, 0.5 - alpha],
                &[1.0, 1.0 - alpha, 1.0 + alpha],
                z,
            )?;
            let t3 = -2.0 / (PI * alpha) * h3;
            let scale = PI.powi(4) / (8.0 * b) * csc_pi(2.0 * alpha);
            Ok(assembled("slv1", scale, &[t1, t2, t3])?
                .with("series_terms", n1.max(n2).max(n3) as f64))
        }
        K2K2Branch::Forab => {
            window(alpha, -0.5, 0.5, "forab")?;
            guard_singular(alpha, &[0.0], "forab")?;
            distinct_scales(a, b, "forab")?;
            let r = a / b;
            let z = r * r;
            let t1 = r.powf(2.0 + 2.0 * alpha) / (1.0 + 2.0 * alpha)
                * gauss_2f1(1.0, 0.5 + alpha, 1.5 + alpha, z)?;
            let t2 = r.powf(2.0 - 2.0 * alpha) / (1.0 - 2.0 * alpha)
                * gauss_2f1(1.0, 0.5 - alpha, 1.5 - alpha, z)?;
            let t3 = -2.0 * r * r.atanh();
            let c = csc_pi(alpha);
            assembled("forab", PI * PI / (8.0 * a * a) * c * c, &[t1, t2, t3])
        }
        K2K2Branch::Foraa => {
            window(alpha, -0.5, 0.5, "foraa")?;
            guard_singular(alpha, &[0.0], "foraa")?;
            equal_scales(a, b, "foraa")?;
            let c = csc_pi(alpha);
            let br = foraa_bracket(alpha)?;
            let v = -PI * PI / (16.0 * a * a) * c * c * br;
            // the bracket is a difference of O(1) digammas vanishing at α = 0
            EvalResult::new(
                "foraa",
                v,
                64.0 * f64::EPSILON * (PI * PI / 16.0) * c * c * 8.0 / (a * a),
            )
        }
        K2K2Branch::Li2 => {
            order_is(alpha, 0.0, "li2")?;
            let r = a / b;
            let mut parts = vec![li3(r)?, -li3(-r)?];
            if r < 1.0 {
                let l = r.ln();
                parts.push(l * l * r.atanh());
                parts.push(-l * (li2(r)? - li2(-r)?));
            }
            assembled("li2", 1.0 / (2.0 * a * b), &parts)
        }
        K2K2Branch::Fox1 => {
            order_is(alpha, 0.0, "fox1")?;
            equal_scales(a, b, "fox1")?;
            EvalResult::elementary("fox1", 7.0 * ZETA3 / (8.0 * a * a))
        }
        K2K2Branch::Kab13 => {
            order_is(alpha.abs(), 1.0 / 3.0, "kab13")?;
            let x = (a * b).cbrt() / (a.cbrt().powi(2) + b.cbrt().powi(2));
            EvalResult::elementary("kab13", PI * PI / (2.0 * a * b) * x.atanh())
        }
        K2K2Branch::KQuarter => {
            order_is(alpha.abs(), 0.25, "K^(1/4) coth form")?;
            let q = (a / b).sqrt();
            EvalResult::elementary(
                "k14-acoth",
                PI * PI / (2.0 * a * b) * acoth(q + 1.0 + 1.0 / q),
            )
        }
        K2K2Branch::Table => {
            equal_scales(a, b, "K⁴ table")?;
            let m = table_m(alpha.abs()).ok_or_else(|| {
                Error::BranchMismatch(format!("α = {alpha} is not a K⁴ table order"))
            })?;
            k4_table(m, a)
        }
    }
}

/// ∫₀^∞ x^{s−1} I_α(ax) K_α(ax) K_α(bx)² dx; s = 1 for `Sch1`, s = 2 otherwise.
pub fn ikk2_family(branch: IKK2Branch, alpha: f64, a: f64, b: f64) -> Result<EvalResult> {
    scales(a, b)?;
    match branch {
        IKK2Branch::Sch1 => {
            window(alpha, -0.25, 0.5, "sch1")?;
            guard_singular(alpha, &[0.0], "sch1")?;
            if a > b {
                return Err(Error::Domain(format!(
                    "sch1 needs a ≤ b, got a = {a}, b = {b}"
                )));
            }
            let z = (a / b) * (a / b);
            let (h1, n1) = series(
                &[0.5, 0.5, alpha + 0.5, 0.5 - alpha],
                &[1.0, alpha + 1.0, 1.0 - alpha],
                z,
            )?;
            let (h2, n2) = series(
                &[0.5, alpha + 0.5, alpha + 0.5, 2.0 * alpha + 0.5],
                &[alpha + 1.0, alpha + 1.0, 2.0 * alpha + 1.0],
                z,
            )?;
            let g = gamma_ratio(
                &[alpha + 0.5, 2.0 * alpha + 0.5],
                &[alpha + 1.0, alpha + 1.0, alpha + 1.0],
            )?;
            let t1 = h1 / ((PI * alpha).cos() * alpha);
            let t2 = -g * csc_pi(alpha) * (a / (2.0 * b)).powf(2.0 * alpha) * h2;
            Ok(assembled("sch1", PI * PI / (8.0 * b), &[t1, t2])?
                .with("series_terms", n1.max(n2) as f64))
        }
        IKK2Branch::Forab2 => {
            window(alpha, -0.5, 1.0, "forab2")?;
            guard_singular(alpha, &[0.0], "forab2")?;
            distinct_scales(a, b, "forab2")?;
            let zz = a / b;
            let scale = PI * csc_pi(alpha) / (4.0 * b * b);
            if zz < 1.0 {
                let t1 = zz.atanh() / zz;
                let t2 = -zz.powf(2.0 * alpha) / (1.0 + 2.0 * alpha)
                    * gauss_2f1(1.0, 0.5 + alpha, 1.5 + alpha, zz * zz)?;
                assembled("forab2", scale, &[t1, t2])
            } else {
                // tan(πα) and 1/(1 − 2α) blow up together at α = ½
                guard_singular(alpha, &[0.5], "forab2 with a > b")?;
                let w = 1.0 / zz;
                let t1 = w * w.atanh();
                let t2 = w * PI / 2.0 * (PI * alpha).tan();
                let t3 = -zz.powf(2.0 * alpha - 2.0) / (1.0 - 2.0 * alpha)
                    * gauss_2f1(1.0, 0.5 - alpha, 1.5 - alpha, w * w)?;
                assembled("forab2", scale, &[t1, t2, t3])
            }
        }
        IKK2Branch::Foraa2 => {
            window(alpha, -0.5, 1.0, "foraa2")?;
            guard_singular(alpha, &[0.0], "foraa2")?;
            equal_scales(a, b, "foraa2")?;
            let br = digamma(0.5 + alpha)? + 2.0 * LN_2 + EULER_GAMMA;
            let scale = PI / 8.0 * csc_pi(alpha) / (a * a);
            EvalResult::new(
                "foraa2",
                scale * br,
                64.0 * f64::EPSILON * scale.abs() * 4.0,
            )
        }
        IKK2Branch::Lili => {
            order_is(alpha, 0.0, "lili")?;
            if a > b {
                return Err(Error::BranchMismatch("lili needs a ≤ b; use lilix".into()));
            }
            let r = a / b;
            let mut parts = vec![li2(r)?, -li2(-r)?];
            if r < 1.0 {
                parts.push(-2.0 * r.ln() * r.atanh());
            }
            assembled("lili", 1.0 / (4.0 * a * b), &parts)
        }
        IKK2Branch::Lilix => {
            order_is(alpha, 0.0, "lilix")?;
            if a < b {
                return Err(Error::BranchMismatch("lilix needs a ≥ b; use lili".into()));
            }
            let w = b / a;
            let mut parts = vec![PI * PI / 2.0, -li2(w)?, li2(-w)?];
            if w < 1.0 {
                parts.push(2.0 * w.ln() * w.atanh());
            }
            assembled("lilix", 1.0 / (4.0 * a * b), &parts)
        }
        IKK2Branch::Fox2 => {
            order_is(alpha, 0.0, "fox2")?;
            equal_scales(a, b, "fox2")?;
            EvalResult::elementary("fox2", PI * PI / (16.0 * a * a))
        }
        IKK2Branch::Elementary => {
            let r = a / b;
            let q = r.sqrt();
            let pre = PI / (4.0 * a * b);
            if (alpha - 0.5).abs() <= ORDER_TOL {
                EvalResult::elementary("ikk2-elementary", pre * r.ln_1p())
            } else if (alpha.abs() - 0.25).abs() <= ORDER_TOL {
                let c = acoth(q + 1.0 + 1.0 / q);
                let c = if alpha > 0.0 { -c } else { c };
                assembled("ikk2-elementary", pre * SQRT_2, &[q.atan(), c])
            } else {
                Err(Error::BranchMismatch(format!(
                    "no elementary I·K·K² form for α = {alpha}"
                )))
            }
        }
        IKK2Branch::Table => {
            equal_scales(a, b, "I·K³ table")?;
            let (p, q) = ik3_entry(alpha).ok_or_else(|| {
                Error::BranchMismatch(format!("α = {alpha} is not an I·K³ table order"))
            })?;
            ik3_table(p, q, a)
        }
    }
}

/// Σ_k C(2k,k)⁴ (a/(16b))^{2k}, summed term by term.
fn binomial4_sum(r: f64) -> (f64, usize) {
    let x = (r / 16.0) * (r / 16.0);
    let mut t = 1.0;
    let mut sum = 1.0;
    for k in 0..100_000usize {
        let kf = k as f64;
        let c = 2.0 * (2.0 * kf + 1.0) / (kf + 1.0);
        t *= c * c * c * c * x;
        sum += t;
        if t <= 1e-17 * sum {
            return (sum, k + 2);
        }
    }
    (sum, 100_000)
}

/// ∫₀^∞ x^{s−1} I_α(ax)² K_α(bx)² dx; s = 1 for `Haw`/`Ox1`/`Ox2`, s = 2
/// otherwise.
pub fn i2k2_family(branch: I2K2Branch, alpha: f64, a: f64, b: f64) -> Result<EvalResult> {
    scales(a, b)?;
    let r = a / b;
    match branch {
        I2K2Branch::Haw => {
            if alpha <= -0.25 {
                return Err(Error::Domain(format!(
                    "haw needs α > −1/4 for convergence at 0, got {alpha}"
                )));
            }
            if b < a {
                return Err(Error::Domain(format!(
                    "haw needs b ≥ a, got a = {a}, b = {b}"
                )));
            }
            let g = gamma_ratio(
                &[alpha + 0.5, 2.0 * alpha + 0.5],
                &[alpha + 1.0, alpha + 1.0, alpha + 1.0],
            )?;
            let (h, n) = series(
                &[alpha + 0.5, 2.0 * alpha + 0.5, alpha + 0.5, 0.5],
                &[alpha + 1.0, 2.0 * alpha + 1.0, alpha + 1.0],
                r * r,
            )?;
            let v = PI / (4.0 * b) * (r / 2.0).powf(2.0 * alpha) * g * h;
            Ok(EvalResult::new("haw", v, v.abs() * 1e-14)?.with("series_terms", n as f64))
        }
        I2K2Branch::F21ab => {
            if alpha <= -0.5 {
                return Err(Error::Domain(format!("2f1ab needs α > −1/2, got {alpha}")));
            }
            if b <= a {
                return Err(Error::Domain(format!(
                    "2f1ab needs b > a, got a = {a}, b = {b}"
                )));
            }
            let f = gauss_2f1(alpha + 0.5, 1.0, alpha + 1.5, r * r)?;
            let v = r.powf(2.0 * alpha) / (2.0 * b * b * (1.0 + 2.0 * alpha)) * f;
            EvalResult::new("2f1ab", v, v.abs() * 1e-14)
        }
        I2K2Branch::Elementary => {
            if b <= a {
                return Err(Error::Domain(format!("needs b > a, got a = {a}, b = {b}")));
            }
            let twice = 2.0 * alpha;
            if alpha < 0.0 || (twice - twice.round()).abs() > ORDER_TOL {
                return Err(Error::BranchMismatch(format!(
                    "elementary I²K² forms need α = n or n + 1/2 with n ≥ 0, got {alpha}"
                )));
            }
            let twice = twice.round() as u32;
            let n = twice / 2;
            let z = r * r;
            if twice.is_multiple_of(2) {
                let head: f64 = (0..n).map(|k| z.powi(k as i32) / (2 * k + 1) as f64).sum();
                assembled("i2k2-integer", 1.0 / (2.0 * b * b), &[r.atanh() / r, -head])
            } else {
                let head: f64 = (1..=n).map(|k| z.powi(k as i32) / k as f64).sum();
                assembled(
                    "i2k2-half-integer",
                    1.0 / (4.0 * a * b),
                    &[-(-z).ln_1p(), -head],
                )
            }
        }
        I2K2Branch::Ox1 | I2K2Branch::Ox2 => {
            order_is(alpha, 0.0, "ox1")?;
            if b < a {
                return Err(Error::Domain(format!(
                    "ox1 needs b ≥ a, got a = {a}, b = {b}"
                )));
            }
            let (h, n) = series(&[0.5; 4], &[1.0; 3], r * r)?;
            let pre = PI * PI / (4.0 * b);
            let res =
                EvalResult::new("ox1", pre * h, pre * h * 1e-14)?.with("series_terms", n as f64);
            if branch == I2K2Branch::Ox1 {
                return Ok(res);
            }
            let (s, k) = binomial4_sum(r);
            let mut res = res
                .with("ox2_partial_sum", pre * s)
                .with("ox2_terms", k as f64);
            res.formula_id = "ox2".into();
            Ok(res)
        }
    }
}
