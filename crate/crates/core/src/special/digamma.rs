use std::f64::consts::PI;

use super::{cos_pi, is_nonpositive_integer, sin_pi, EULER_GAMMA};
use crate::{Error, Result};

/// A rational point p/q strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalArg {
    p: i64,
    q: i64,
}

impl RationalArg {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 0 || p >= q {
            return Err(Error::Domain(format!("need 0 < p < q, got {p}/{q}")));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

// B_{2k}/(2k) for k = 1..8
const ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// ψ(x) = Γ′(x)/Γ(x) for real x off the poles.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("digamma of non-finite {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.0 {
        // ψ(x) = ψ(1−x) − π cot(πx)
        return Ok(digamma(1.0 - x)? - PI * cos_pi(x) / sin_pi(x));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut pow = inv2;
    for c in ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - series)
}

/// Gauss's finite formula for ψ(p/q).
pub fn digamma_rational(r: RationalArg) -> f64 {
    let (p, q) = (r.p, r.q);
    let qf = q as f64;
    let mut sum = 0.0;
    for k in 1..q {
        let phase = ((2 * k * p) % (2 * q)) as f64 / qf;
        // ln(2 − 2cos(2πk/q)) = 2 ln(2 sin(πk/q))
        let l = 2.0 * (2.0 * sin_pi(k as f64 / qf)).ln();
        sum += cos_pi(phase) * l;
    }
    -EULER_GAMMA - qf.ln() - 0.5 * PI * cos_pi(p as f64 / qf) / sin_pi(p as f64 / qf) + 0.5 * sum
}

/// ψ(1/2 − 1/m) + ψ(1/2 + 1/m) by the finite trigonometric sum.
pub fn psi_half_pair_sum(m: u32) -> Result<f64> {
    if m < 3 {
        return Err(Error::Domain(format!(
            "psi_half_pair_sum needs m ≥ 3, got {m}"
        )));
    }
    let mf = m as f64;
    let mut sum = 0.0;
    for k in 1..2 * m {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = cos_pi(2.0 * ((k % m) as f64) / mf);
        let l = 2.0 * (2.0 * sin_pi(k as f64 / (2.0 * mf))).ln();
        sum += sign * c * l;
    }
    Ok(-2.0 * EULER_GAMMA - 2.0 * (2.0 * mf).ln() + sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn classical_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(0.5).unwrap() + EULER_GAMMA + 2.0 * LN_2).abs() < 1e-15);
        assert_eq!(digamma(-2.0), Err(Error::Pole(-2.0)));
    }

    #[test]
    fn reference_values() {
        let cases = [
            (0.1, -10.423_754_940_411_076_795_17),
            (2.5, 0.703_156_640_645_243_187_225_7),
            (-0.5, 0.036_489_973_978_576_520_559_02),
            (-3.7, -0.845_076_858_870_416_718_071_8),
            (50.0, 3.901_989_673_427_892_196_954),
        ];
        for (x, want) in cases {
            let got = digamma(x).unwrap();
            assert!((got - want).abs() < 1e-13, "psi({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn gauss_formula_small_denominators() {
        let third = RationalArg::new(1, 3).unwrap();
        let want = -EULER_GAMMA - 1.5 * 3f64.ln() - PI / (2.0 * 3f64.sqrt());
        assert!((digamma_rational(third) - want).abs() < 1e-14);
        let quarter = RationalArg::new(1, 4).unwrap();
        let want = -EULER_GAMMA - 3.0 * LN_2 - PI / 2.0;
        assert!((digamma_rational(quarter) - want).abs() < 1e-14);
        let half = RationalArg::new(1, 2).unwrap();
        assert!((digamma_rational(half) + EULER_GAMMA + 2.0 * LN_2).abs() < 1e-14);
    }

    #[test]
    fn rational_matches_general() {
        for q in 2..=12 {
            for p in 1..q {
                let r = RationalArg::new(p, q).unwrap();
                let d = digamma(r.value()).unwrap();
                assert!((digamma_rational(r) - d).abs() < 1e-11, "{p}/{q}");
            }
        }
    }

    #[test]
    fn pair_sum_matches_digamma() {
        for m in 3..=16u32 {
            let a = 1.0 / m as f64;
            let want = digamma(0.5 - a).unwrap() + digamma(0.5 + a).unwrap();
            assert!(
                (psi_half_pair_sum(m).unwrap() - want).abs() < 1e-12,
                "m = {m}"
            );
        }
        // m = 3 pairs 1/6 with 5/6.
        let s = digamma_rational(RationalArg::new(1, 6).unwrap())
            + digamma_rational(RationalArg::new(5, 6).unwrap());
        assert!((psi_half_pair_sum(3).unwrap() - s).abs() < 1e-13);
        assert!(psi_half_pair_sum(2).is_err());
    }

    #[test]
    fn rejects_bad_rationals() {
        assert!(RationalArg::new(0, 3).is_err());
        assert!(RationalArg::new(3, 3).is_err());
        assert!(RationalArg::new(-1, 3).is_err());
    }
}
