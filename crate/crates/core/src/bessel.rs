//! Modified Bessel functions I_ν, K_ν of real order and positive argument,
//! and the Airy functions Ai, Bi on the positive axis.
//!
//! K is computed for the reduced order μ ∈ [−½, ½] (Temme's series for
//! x < 2, Steed's continued fraction otherwise) and carried to ν by upward
//! recurrence. I comes from the ascending series for x ≤ 15, from the
//! Hankel expansion for large x, and in between from the ratio continued
//! fraction normalized by the Wronskian. Exponentially scaled variants
//! (`e^{−x} I`, `e^{x} K`) are exposed for overflow-safe products.

use std::f64::consts::PI;

use crate::special::{ln_gamma_sign, sin_pi};
use crate::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const SERIES_MAX_X: f64 = 15.0;

// Taylor coefficients of 1/Γ(z) about 0: 1/Γ(z) = Σ c_k z^k, k ≥ 1.
const RGAMMA_TAYLOR: [f64; 30] = [
    1.0,
    0.577_215_664_901_532_860_607,
    -0.655_878_071_520_253_881_077,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_502,
    -0.042_197_734_555_544_336_748_2,
    -0.009_621_971_527_876_973_562_11,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_11,
    -0.000_215_241_674_114_950_972_816,
    0.000_128_050_282_388_116_186_153,
    -0.000_020_134_854_780_788_238_655_7,
    -0.000_001_250_493_482_142_670_657_35,
    0.000_001_133_027_231_981_695_882_37,
    -2.056_338_416_977_607_103_45e-7,
    6.116_095_104_481_415_817_86e-9,
    5.002_007_644_469_222_930_06e-9,
    -1.181_274_570_487_020_144_59e-9,
    1.043_426_711_691_100_510_49e-10,
    7.782_263_439_905_071_254_05e-12,
    -3.696_805_618_642_205_708_19e-12,
    5.100_370_287_454_475_979_02e-13,
    -2.058_326_053_566_506_783_22e-14,
    -5.348_122_539_423_017_982_37e-15,
    1.226_778_628_238_260_790_16e-15,
    -1.181_259_301_697_458_769_51e-16,
    1.186_692_254_751_600_332_58e-18,
    1.412_380_655_318_031_781_56e-18,
    -2.298_745_684_435_370_206_59e-19,
    1.714_406_321_927_337_433_38e-20,
];

/// (Γ₁(μ), Γ₂(μ), 1/Γ(1+μ), 1/Γ(1−μ)) for |μ| ≤ ½.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    // k even contributes to Γ₁, k odd to Γ₂ (k counted from 1)
    let mut pow_even = 1.0; // μ^{k−2} for even k
    let mut pow_odd = 1.0; // μ^{k−1} for odd k
    for (i, c) in RGAMMA_TAYLOR.iter().enumerate() {
        let k = i + 1;
        if k % 2 == 0 {
            gam1 -= c * pow_even;
            pow_even *= mu * mu;
        } else {
            gam2 += c * pow_odd;
            pow_odd *= mu * mu;
        }
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// K_μ(x), K_{μ+1}(x) for |μ| ≤ ½ and 0 < x < 2 (unscaled).
fn temme_k_pair(mu: f64, x: f64) -> (f64, f64) {
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..MAXIT {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

/// e^x K_μ(x), e^x K_{μ+1}(x) for |μ| ≤ ½ and x ≥ 2.
fn steed_k_pair_scaled(mu: f64, x: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAXIT {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let kmu = (PI / (2.0 * x)).sqrt() / s;
    let k1 = kmu * (mu + x + 0.5 - h) / x;
    (kmu, k1)
}

/// e^x K_μ, e^x K_{μ+1} for |μ| ≤ ½.
fn k_pair_scaled(mu: f64, x: f64) -> (f64, f64) {
    if x < 2.0 {
        let (k0, k1) = temme_k_pair(mu, x);
        let e = x.exp();
        (k0 * e, k1 * e)
    } else {
        steed_k_pair_scaled(mu, x)
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Bessel argument must be positive and finite, got {x}"
        )))
    }
}

fn split_order(nu: f64) -> (usize, f64) {
    let nl = (nu + 0.5).floor();
    (nl as usize, nu - nl)
}

/// e^x K_ν(x).
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    check_arg(x)?;
    if !nu.is_finite() {
        return Err(Error::Domain(format!("non-finite order {nu}")));
    }
    let nu = nu.abs();
    let (nl, mu) = split_order(nu);
    let (mut km, mut kp) = k_pair_scaled(mu, x);
    for i in 1..=nl {
        let next = 2.0 * (mu + i as f64) / x * kp + km;
        km = kp;
        kp = next;
        if !km.is_finite() {
            return Err(Error::Overflow(format!("K_{nu}({x})")));
        }
    }
    Ok(km)
}

/// K_ν(x).
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let v = bessel_k_scaled(nu, x)? * (-x).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("K_{nu}({x})")))
    }
}

/// e^{−x} I_ν(x) by the ascending series, ν ≥ 0.
fn i_series_scaled(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = if nu == 0.0 {
        -x
    } else {
        let (lg, _) = ln_gamma_sign(nu + 1.0).expect("positive argument");
        nu * half.ln() - lg - x
    };
    let mut term = lead.exp();
    if term == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut sum = term;
    for k in 1..MAXIT {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term < EPS * sum {
            break;
        }
    }
    sum
}

/// Hankel expansions: (e^{−x}√(2πx) I_ν, e^{x}√(2x/π) K_ν) partial sums.
fn hankel_sums(nu: f64, x: f64) -> (f64, f64) {
    let m = 4.0 * nu * nu;
    let mut ak = 1.0;
    let mut si = 1.0;
    let mut sk = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        ak *= (m - odd * odd) / (8.0 * k as f64 * x);
        if ak.abs() >= last || ak == 0.0 {
            break;
        }
        last = ak.abs();
        sk += ak;
        si += if k % 2 == 1 { -ak } else { ak };
        if ak.abs() < EPS * sk.abs().min(si.abs()) {
            break;
        }
    }
    (si, sk)
}

fn use_hankel(nu: f64, x: f64) -> bool {
    x >= 50.0 && x >= 1.5 * nu * nu
}

/// e^{−x} I_ν(x) for ν ≥ 0 via CF1 and the Wronskian.
fn i_cf1_scaled(nu: f64, x: f64) -> Result<f64> {
    let (nl, mu) = split_order(nu);
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ToleranceNotMet(format!(
            "I ratio fraction at ν={nu}, x={x}"
        )));
    }
    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let mut ril1 = ril;
    let mut fact = nu * xi;
    for _ in (1..=nl).rev() {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if ril.abs() > 1e250 {
            ril *= 1e-250;
            ripl *= 1e-250;
            ril1 *= 1e-250;
        }
    }
    let f = ripl / ril;
    let (kmu, k1) = k_pair_scaled(mu, x);
    let kmup = mu * xi * kmu - k1;
    let rimu = xi / (f * kmu - kmup);
    Ok(rimu * ril1 / ril)
}

fn i_scaled_nonneg(nu: f64, x: f64) -> Result<f64> {
    if x <= SERIES_MAX_X {
        Ok(i_series_scaled(nu, x))
    } else if use_hankel(nu, x) {
        let (si, _) = hankel_sums(nu, x);
        Ok(si / (2.0 * PI * x).sqrt())
    } else {
        i_cf1_scaled(nu, x)
    }
}

/// e^{−x} I_ν(x). Negative non-integer orders go through the I/K connection.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    check_arg(x)?;
    if !nu.is_finite() {
        return Err(Error::Domain(format!("non-finite order {nu}")));
    }
    if nu >= 0.0 || nu == nu.round() {
        return i_scaled_nonneg(nu.abs(), x);
    }
    let p = -nu;
    let i = i_scaled_nonneg(p, x)?;
    let k = bessel_k_scaled(p, x)?;
    Ok(i + 2.0 / PI * sin_pi(p) * k * (-2.0 * x).exp())
}

/// I_ν(x).
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    let v = bessel_i_scaled(nu, x)? * x.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("I_{nu}({x})")))
    }
}

/// I_{−ν}(x) assembled as I_ν(x) + (2/π) sin(πν) K_ν(x).
pub fn bessel_i_minus_via_k(nu: f64, x: f64) -> Result<f64> {
    let i = bessel_i(nu, x)?;
    let s = sin_pi(nu);
    if s == 0.0 {
        return Ok(i);
    }
    Ok(i + 2.0 / PI * s * bessel_k(nu, x)?)
}

fn airy_zeta(x: f64) -> f64 {
    2.0 / 3.0 * x * x.sqrt()
}

const AI0: f64 = 0.355_028_053_887_817_239_3;
const AIP0: f64 = -0.258_819_403_792_806_798_4;
const BI0: f64 = 0.614_926_627_446_000_735_2;
const BIP0: f64 = 0.448_288_357_353_826_357_9;
/// Below this the Bessel route would underflow ζ; two Taylor terms are exact
/// to rounding (the next term is O(x³)).
const AIRY_TAYLOR: f64 = 1e-10;

/// Ai(x)·e^{ζ}, ζ = (2/3)x^{3/2}.
pub fn airy_ai_scaled(x: f64) -> Result<f64> {
    if (0.0..AIRY_TAYLOR).contains(&x) {
        return Ok((AI0 + AIP0 * x) * airy_zeta(x).exp());
    }
    check_arg(x)?;
    let z = airy_zeta(x);
    Ok((x / 3.0).sqrt() / PI * bessel_k_scaled(1.0 / 3.0, z)?)
}

/// Bi(x)·e^{−ζ}, ζ = (2/3)x^{3/2}.
pub fn airy_bi_scaled(x: f64) -> Result<f64> {
    if (0.0..AIRY_TAYLOR).contains(&x) {
        return Ok((BI0 + BIP0 * x) * (-airy_zeta(x)).exp());
    }
    check_arg(x)?;
    let z = airy_zeta(x);
    let i = bessel_i_scaled(1.0 / 3.0, z)?;
    let k = bessel_k_scaled(1.0 / 3.0, z)?;
    // I_{−1/3} = I_{1/3} + (√3/π) K_{1/3}
    Ok((x / 3.0).sqrt() * (2.0 * i + 3f64.sqrt() / PI * k * (-2.0 * z).exp()))
}

/// Ai(x) for x ≥ 0.
pub fn airy_ai(x: f64) -> Result<f64> {
    Ok(airy_ai_scaled(x)? * (-airy_zeta(x)).exp())
}

/// Bi(x) for x ≥ 0.
pub fn airy_bi(x: f64) -> Result<f64> {
    let v = airy_bi_scaled(x)? * airy_zeta(x).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("Bi({x})")))
    }
}
