//! Generic-order Mellin transforms: the K·K pair, the three quartic shapes
//! K²K², I·K·K², I²K², and Π I · K through Lauricella's F_C.

use std::f64::consts::PI;

use super::EvalResult;
use crate::hypergeometric::{pfq_sum, HypSeriesSpec};
use crate::lauricella::{lauricella_fc, LauricellaSpec};
use crate::meijer::{g_reduce_all, g_slater_sum, MeijerGSpec, SlaterSum};
use crate::special::{gamma, gamma_ratio, ln_gamma_sign, rgamma};
use crate::{Error, Result};

/// Relative accuracy assumed for each summed series.
const SERIES_TOL: f64 = 1e-15;

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

fn need_s_above(s: f64, bound: f64) -> Result<()> {
    if s > bound {
        Ok(())
    } else {
        Err(Error::Domain(format!("need s > {bound}, got s = {s}")))
    }
}

/// ∫₀^∞ x^{s−1} K_μ(ax) K_ν(ax) dx
/// = 2^{s−3} / (a^s Γ(s)) · Γ((s+μ+ν)/2) Γ((s−μ+ν)/2) Γ((s+μ−ν)/2) Γ((s−μ−ν)/2).
pub fn kk_pair_mellin(s: f64, mu: f64, nu: f64, a: f64) -> Result<EvalResult> {
    positive("a", a)?;
    need_s_above(s, mu.abs() + nu.abs())?;
    let g = gamma_ratio(
        &[
            (s + mu + nu) / 2.0,
            (s - mu + nu) / 2.0,
            (s + mu - nu) / 2.0,
            (s - mu - nu) / 2.0,
        ],
        &[s],
    )?;
    let v = 2f64.powf(s - 3.0) * a.powf(-s) * g;
    EvalResult::new("mellin1", v, 32.0 * f64::EPSILON * v.abs())
}

/// The a-row shared by the K²K² and I·K·K² G-functions (γ, δ belong to the
/// factors at scale b).
fn quartic_a_row(s: f64, gam: f64, del: f64) -> Vec<f64> {
    vec![
        (2.0 - gam - del) / 2.0,
        (2.0 + gam - del) / 2.0,
        (2.0 - gam + del) / 2.0,
        (2.0 + gam + del) / 2.0,
        s / 2.0,
        (s + 1.0) / 2.0,
    ]
}

fn slater_result(id: &str, pref: f64, spec: &MeijerGSpec) -> Result<EvalResult> {
    let (reduced, count) = g_reduce_all(spec)?;
    let SlaterSum { value, terms } = g_slater_sum(&reduced)?;
    let mass: f64 = terms.iter().map(|t| t.value().abs()).sum();
    let longest = terms.iter().map(|t| t.series_terms).max().unwrap_or(0);
    let err = pref.abs() * mass * (SERIES_TOL + 64.0 * f64::EPSILON);
    Ok(EvalResult::new(id, pref * value, err)?
        .with("g_reductions", count as f64)
        .with("g_order_m", reduced.m as f64)
        .with("g_order_q", reduced.q() as f64)
        .with("series_terms", longest as f64))
}

/// ∫₀^∞ x^{s−1} K_α(ax) K_β(ax) K_γ(bx) K_δ(bx) dx
/// = π/(8a^s) G^{4,4}_{6,6}((a/b)²), with (α, β, a) and (γ, δ, b) swapped
/// first so that a ≤ b.
pub fn quartic_k_mellin(
    s: f64,
    alpha: f64,
    beta: f64,
    gam: f64,
    del: f64,
    a: f64,
    b: f64,
) -> Result<EvalResult> {
    positive("a", a)?;
    positive("b", b)?;
    need_s_above(s, alpha.abs() + beta.abs() + gam.abs() + del.abs())?;
    let (alpha, beta, gam, del, a, b) = if a <= b {
        (alpha, beta, gam, del, a, b)
    } else {
        (gam, del, alpha, beta, b, a)
    };
    let brow = vec![
        (s + alpha + beta) / 2.0,
        (s - alpha + beta) / 2.0,
        (s + alpha - beta) / 2.0,
        (s - alpha - beta) / 2.0,
        0.5,
        1.0,
    ];
    let z = (a / b) * (a / b);
    let g = MeijerGSpec::new(4, 4, quartic_a_row(s, gam, del), brow, z)?;
    slater_result("for1", PI / (8.0 * a.powf(s)), &g)
}

/// ∫₀^∞ x^{s−1} I_α(ax) K_β(ax) K_γ(bx) K_δ(bx) dx
/// = 1/(8a^s) G^{2,6}_{6,6}((a/b)²), for a ≤ b.
pub fn quartic_ik3_mellin(
    s: f64,
    alpha: f64,
    beta: f64,
    gam: f64,
    del: f64,
    a: f64,
    b: f64,
) -> Result<EvalResult> {
    positive("a", a)?;
    positive("b", b)?;
    need_s_above(s, beta.abs() + gam.abs() + del.abs() - alpha)?;
    if a > b {
        return Err(Error::Unsupported(format!(
            "I·K·K² with a = {a} > b = {b}: the G-argument (a/b)² exceeds 1"
        )));
    }
    let brow = vec![
        (s + alpha + beta) / 2.0,
        (s + alpha - beta) / 2.0,
        (s - alpha + beta) / 2.0,
        (s - alpha - beta) / 2.0,
        0.5,
        1.0,
    ];
    let z = (a / b) * (a / b);
    let g = MeijerGSpec::new(2, 6, quartic_a_row(s, gam, del), brow, z)?;
    slater_result("k3igen", 1.0 / (8.0 * a.powf(s)), &g)
}

/// ∫₀^∞ x^{s−1} I_α(ax) I_β(ax) K_γ(bx) K_δ(bx) dx for b ≥ a, as
///
/// (a/b)^{λ+s} / (4a^s) · Γ((λ+1)/2) Γ((λ+2)/2) Π Γ((s+λ±γ±δ)/2)
///   · ₆F̃₅(A; α+1, β+1, λ+1, (s+λ)/2, (s+λ+1)/2; (a/b)²),   λ = α + β,
///
/// where A lists the six gamma arguments. At a = b the series sits on its
/// unit circle and converges only for s < 2.
pub fn quartic_i2k2_mellin(
    s: f64,
    alpha: f64,
    beta: f64,
    gam: f64,
    del: f64,
    a: f64,
    b: f64,
) -> Result<EvalResult> {
    positive("a", a)?;
    positive("b", b)?;
    let lam = alpha + beta;
    need_s_above(s, gam.abs() + del.abs() - lam)?;
    if b < a {
        return Err(Error::Domain(format!(
            "I²K² diverges for b = {b} < a = {a}"
        )));
    }
    if b == a && s >= 2.0 {
        return Err(Error::Domain(format!(
            "I²K² with a = b needs s < 2, got {s}"
        )));
    }
    let num = vec![
        (lam + 1.0) / 2.0,
        (lam + 2.0) / 2.0,
        (s + lam + gam + del) / 2.0,
        (s + lam - gam + del) / 2.0,
        (s + lam + gam - del) / 2.0,
        (s + lam - gam - del) / 2.0,
    ];
    let den = vec![
        alpha + 1.0,
        beta + 1.0,
        lam + 1.0,
        (s + lam) / 2.0,
        (s + lam + 1.0) / 2.0,
    ];
    let mut ln_g = 0.0;
    let mut sign = 1.0;
    for &x in &num {
        let (l, sg) = ln_gamma_sign(x)?;
        ln_g += l;
        sign *= sg;
    }
    let r = a / b;
    let pref = sign * (ln_g + (lam + s) * r.ln() - s * a.ln()).exp() / 4.0;
    let series = pfq_sum(&HypSeriesSpec::regularized(num, den, r * r))?;
    let v = pref * series.value;
    let err = v.abs() * (SERIES_TOL + 64.0 * f64::EPSILON) + pref.abs() * series.tail;
    Ok(EvalResult::new("iikkgen", v, err)?.with("series_terms", series.terms as f64))
}

/// ∫₀^∞ x^{s−1} Π_k I_{α_k}(a_k x) · K_β(bx) dx for b > Σ a_k, 1 ≤ n ≤ 3:
///
/// 2^{s−2} b^{−s} Π[(a_k/b)^{α_k} / Γ(α_k+1)] Γ((s+Σα+β)/2) Γ((s+Σα−β)/2)
///   · F_C((s+Σα+β)/2, (s+Σα−β)/2; α_k+1; (a_k/b)²).
///
/// Negative integer orders are replaced by their absolute value (I₋ₙ = Iₙ).
pub fn product_i_single_k_mellin(
    s: f64,
    orders: &[f64],
    scales: &[f64],
    beta: f64,
    b: f64,
) -> Result<EvalResult> {
    let n = orders.len();
    if !(1..=3).contains(&n) || scales.len() != n {
        return Err(Error::Domain(format!(
            "need 1 to 3 I factors with matching scales, got {n} orders and {} scales",
            scales.len()
        )));
    }
    positive("b", b)?;
    for &c in scales {
        positive("scale", c)?;
    }
    let orders: Vec<f64> = orders
        .iter()
        .map(|&o| if o < 0.0 && o == o.round() { -o } else { o })
        .collect();
    let total: f64 = scales.iter().sum();
    if total >= b {
        return Err(Error::Domain(format!(
            "need b > Σ a_k (interior only): b = {b}, Σ a_k = {total}"
        )));
    }
    let sum_alpha: f64 = orders.iter().sum();
    need_s_above(s, beta.abs() - sum_alpha)?;
    let big_a = (s + sum_alpha + beta) / 2.0;
    let big_b = (s + sum_alpha - beta) / 2.0;
    let mut pref = 2f64.powf(s - 2.0) * b.powf(-s) * gamma(big_a)? * gamma(big_b)?;
    for (&al, &c) in orders.iter().zip(scales) {
        pref *= (c / b).powf(al) * rgamma(al + 1.0);
    }
    let spec = LauricellaSpec::new(
        big_a,
        big_b,
        orders.iter().map(|al| al + 1.0).collect(),
        scales.iter().map(|c| (c / b) * (c / b)).collect(),
    );
    let fc = lauricella_fc(&spec)?;
    let v = pref * fc.value;
    let err = v.abs() * (SERIES_TOL * fc.shells as f64 + 64.0 * f64::EPSILON);
    Ok(EvalResult::new("thm1.2for", v, err)?
        .with("fc_shells", fc.shells as f64)
        .with("near_boundary", if fc.near_boundary { 1.0 } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn pair_values() {
        assert!(rel(kk_pair_mellin(2.0, 0.0, 0.0, 1.0).unwrap().value, 0.5) < 1e-15);
        // Γ(1)Γ(½)²Γ(0)… avoided: (1, ½, ½) has s = |μ| + |ν|, out of range
        assert!(kk_pair_mellin(1.0, 0.5, 0.5, 1.0).is_err());
        let v = kk_pair_mellin(1.5, 0.3, 0.2, 2.0).unwrap().value;
        assert!(rel(v, kk_pair_mellin(1.5, -0.2, 0.3, 2.0).unwrap().value) < 1e-15);
    }

    #[test]
    fn generic_quartic_k_reference() {
        // quadrature reference, 25 digits
        let r = quartic_k_mellin(1.3, 0.21, 0.17, 0.11, 0.07, 1.0, 2.0).unwrap();
        let want = std::f64::consts::PI / 8.0 * 17.790_127_679_487_491_570_17;
        assert!(rel(r.value, want) < 1e-12, "{}", r.value);
        assert_eq!(r.formula_id, "for1");
        let sw = quartic_k_mellin(1.3, 0.11, 0.07, 0.21, 0.17, 2.0, 1.0).unwrap();
        assert!(rel(sw.value, r.value) < 1e-14);
    }

    #[test]
    fn ik3_rejects_a_above_b() {
        let e = quartic_ik3_mellin(1.2, 0.3, 0.25, 0.2, 0.15, 2.0, 1.0);
        assert!(matches!(e, Err(Error::Unsupported(_))));
        let e = quartic_ik3_mellin(0.3, 0.3, 0.25, 0.2, 0.15, 1.0, 2.0);
        assert!(matches!(e, Err(Error::Domain(_))));
    }

    #[test]
    fn i2k2_small_a_leading_term() {
        // a → 0: the series is 1/ΠΓ(den) and the value follows the prefactor
        let (s, al, be, ga, de) = (1.1, 0.2, 0.4, 0.1, 0.3);
        let a = 1e-6;
        let lam = al + be;
        let v = quartic_i2k2_mellin(s, al, be, ga, de, a, 1.0)
            .unwrap()
            .value;
        let lead = (a.powf(lam) / 4.0)
            * gamma_ratio(
                &[
                    (lam + 1.0) / 2.0,
                    (lam + 2.0) / 2.0,
                    (s + lam + ga + de) / 2.0,
                    (s + lam - ga + de) / 2.0,
                    (s + lam + ga - de) / 2.0,
                    (s + lam - ga - de) / 2.0,
                ],
                &[
                    al + 1.0,
                    be + 1.0,
                    lam + 1.0,
                    (s + lam) / 2.0,
                    (s + lam + 1.0) / 2.0,
                ],
            )
            .unwrap();
        assert!(rel(v, lead) < 1e-10, "{v} vs {lead}");
    }

    #[test]
    fn single_k_reference_values() {
        let r = product_i_single_k_mellin(1.5, &[0.3], &[1.0], 0.2, 3.0).unwrap();
        assert!(
            rel(r.value, 0.136_480_564_584_309_466_807_486) < 1e-13,
            "{}",
            r.value
        );
        let t = 1.0 / 3.0;
        let r = product_i_single_k_mellin(2.0, &[t, t, -t], &[1.0; 3], t, 4.0).unwrap();
        assert!(
            rel(r.value, 0.045_655_046_723_031_684_479_034_2) < 1e-13,
            "{}",
            r.value
        );
    }

    #[test]
    fn single_k_boundary_rejected() {
        let e = product_i_single_k_mellin(2.0, &[0.0, 0.0], &[1.0, 1.0], 0.0, 2.0);
        assert!(matches!(e, Err(Error::Domain(_))));
    }
}
