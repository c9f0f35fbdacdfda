//! ∫₀^∞ of quartic products of Ai and Bi with two scales.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::EvalResult;
use crate::hypergeometric::{gauss_2f1, two_arg_arctan};
use crate::lauricella::{lauricella_fc, LauricellaSpec};
use crate::special::{gamma_ratio, rgamma};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AiryKind {
    Ai,
    Bi,
}

/// Four Airy factors Ai/Bi(c_i x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirySpec {
    pub kinds: [AiryKind; 4],
    pub scales: [f64; 4],
}

/// Supported shapes, with a the scale of the Bi factors (or of the first Ai
/// pair) and b the scale of the remaining Ai factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AiryPattern {
    /// Ai(ax)² Ai(bx)²
    Ai2Ai2,
    /// Bi(ax) Ai(ax) Ai(bx)²
    BiAiAi2,
    /// Bi(ax)² Ai(bx)²
    Bi2Ai2,
    /// Bi(ax)³ Ai(bx)
    Bi3Ai,
}

impl AirySpec {
    pub fn new(kinds: [AiryKind; 4], scales: [f64; 4]) -> Result<Self> {
        if let Some(c) = scales.iter().find(|c| !(**c > 0.0) || !c.is_finite()) {
            return Err(Error::Domain(format!(
                "Airy scale must be positive, got {c}"
            )));
        }
        Ok(Self { kinds, scales })
    }

    /// The spec for a pattern at scales (a, b).
    pub fn from_pattern(p: AiryPattern, a: f64, b: f64) -> Result<Self> {
        use AiryKind::*;
        let (kinds, scales) = match p {
            AiryPattern::Ai2Ai2 => ([Ai, Ai, Ai, Ai], [a, a, b, b]),
            AiryPattern::BiAiAi2 => ([Bi, Ai, Ai, Ai], [a, a, b, b]),
            AiryPattern::Bi2Ai2 => ([Bi, Bi, Ai, Ai], [a, a, b, b]),
            AiryPattern::Bi3Ai => ([Bi, Bi, Bi, Ai], [a, a, a, b]),
        };
        Self::new(kinds, scales)
    }

    /// Identify the pattern and its (a, b), independent of factor order.
    pub fn pattern(&self) -> Result<(AiryPattern, f64, f64)> {
        let mut bi: Vec<f64> = Vec::new();
        let mut ai: Vec<f64> = Vec::new();
        for (k, &c) in self.kinds.iter().zip(&self.scales) {
            match k {
                AiryKind::Bi => bi.push(c),
                AiryKind::Ai => ai.push(c),
            }
        }
        bi.sort_by(f64::total_cmp);
        ai.sort_by(f64::total_cmp);
        let all_eq = |v: &[f64]| v.windows(2).all(|w| w[0] == w[1]);
        let bad = || {
            Error::Domain(format!(
                "unsupported Airy product {:?} at {:?}",
                self.kinds, self.scales
            ))
        };
        match bi.len() {
            0 => {
                // two equal pairs, in either order
                if ai[0] == ai[1] && ai[2] == ai[3] {
                    Ok((AiryPattern::Ai2Ai2, ai[0], ai[2]))
                } else {
                    Err(bad())
                }
            }
            1 => {
                let a = bi[0];
                let pos = ai.iter().position(|&c| c == a).ok_or_else(bad)?;
                let mut rest = ai.clone();
                rest.remove(pos);
                if all_eq(&rest) {
                    Ok((AiryPattern::BiAiAi2, a, rest[0]))
                } else {
                    Err(bad())
                }
            }
            2 if all_eq(&bi) && all_eq(&ai) => Ok((AiryPattern::Bi2Ai2, bi[0], ai[0])),
            3 if all_eq(&bi) => Ok((AiryPattern::Bi3Ai, bi[0], ai[0])),
            _ => Err(bad()),
        }
    }
}

/// The triple F_C kernel of the Bi³Ai integral:
///
/// I(p,q,r) = (6πb)⁻¹ (a/b)^{3/2+3P/2} Γ(P/2+7/6) Γ(P/2+5/6) / (Γ(p+1)Γ(q+1)Γ(r+1))
///            · F_C(P/2+7/6, P/2+5/6; p+1, q+1, r+1; (a/b)³, (a/b)³, (a/b)³),
///
/// with P = p + q + r.
fn bi3ai_kernel(p: f64, q: f64, r: f64, a: f64, b: f64) -> Result<(f64, usize, bool)> {
    let big_p = p + q + r;
    let x = a / b;
    let (ca, cb) = (big_p / 2.0 + 7.0 / 6.0, big_p / 2.0 + 5.0 / 6.0);
    let pref = x.powf(1.5 + 1.5 * big_p) / (6.0 * PI * b)
        * gamma_ratio(&[ca, cb], &[])?
        * rgamma(p + 1.0)
        * rgamma(q + 1.0)
        * rgamma(r + 1.0);
    let z = x * x * x;
    let fc = lauricella_fc(&LauricellaSpec::new(
        ca,
        cb,
        vec![p + 1.0, q + 1.0, r + 1.0],
        vec![z; 3],
    ))?;
    Ok((pref * fc.value, fc.shells, fc.near_boundary))
}

/// Closed form for the supported quartic Airy products.
pub fn airy_quartic(spec: &AirySpec) -> Result<EvalResult> {
    let (pattern, a, b) = spec.pattern()?;
    let root = 1.0 / (12.0 * PI * PI * (a * b).sqrt());
    match pattern {
        AiryPattern::Ai2Ai2 => {
            let id = if a == b { "ai4" } else { "ai22" };
            EvalResult::elementary(id, root * ((a * b).sqrt() / (a + b)).atanh())
        }
        AiryPattern::BiAiAi2 => {
            let id = if a == b { "ai3bi" } else { "lion" };
            EvalResult::elementary(id, root * two_arg_arctan(b - a, (3.0 * a * b).sqrt()))
        }
        AiryPattern::Bi2Ai2 => {
            if b <= a {
                return Err(Error::Domain(format!(
                    "Bi²Ai² diverges unless b > a (a = {a}, b = {b})"
                )));
            }
            let x = a / b;
            EvalResult::elementary(
                "lion2",
                root * (x.powf(1.5).atanh() + 3.0 * x.sqrt().atanh()),
            )
        }
        AiryPattern::Bi3Ai => {
            if b <= 3f64.powf(2.0 / 3.0) * a {
                return Err(Error::Domain(format!(
                    "Bi³Ai series needs b > 3^(2/3) a (a = {a}, b = {b})"
                )));
            }
            let t = 1.0 / 3.0;
            let mut total = 0.0;
            let mut mass = 0.0;
            let mut shells = 0usize;
            let mut near = false;
            for (w, p, q, r) in [
                (1.0, t, t, t),
                (3.0, t, t, -t),
                (3.0, t, -t, -t),
                (1.0, -t, -t, -t),
            ] {
                let (v, n, nb) = bi3ai_kernel(p, q, r, a, b)?;
                total += w * v;
                mass += (w * v).abs();
                shells = shells.max(n);
                near |= nb;
            }
            let err = mass * 1e-15 * shells as f64;
            Ok(EvalResult::new("lion3", total, err)?
                .with("fc_shells", shells as f64)
                .with("near_boundary", if near { 1.0 } else { 0.0 }))
        }
    }
}

/// The hypergeometric form of ∫ Bi(ax)Ai(ax)Ai(bx)² dx for a < b:
/// √3/(60π²b) · [5 ₂F₁(1/6, 1; 7/6; z) − (a/b)² ₂F₁(5/6, 1; 11/6; z)], z = (a/b)³.
pub fn airy_s57(a: f64, b: f64) -> Result<EvalResult> {
    if !(a > 0.0 && b > a) {
        return Err(Error::Domain(format!(
            "s57 needs 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    let x = a / b;
    let z = x * x * x;
    let t1 = 5.0 * gauss_2f1(1.0 / 6.0, 1.0, 7.0 / 6.0, z)?;
    let t2 = -x * x * gauss_2f1(5.0 / 6.0, 1.0, 11.0 / 6.0, z)?;
    let scale = 3f64.sqrt() / (60.0 * PI * PI * b);
    let v = scale * (t1 + t2);
    EvalResult::new("s57", v, scale * (t1.abs() + t2.abs()) * 1e-14)
}

/// D(z) = 5/(√3 z^{1/6}) · tan⁻¹(√3 z^{1/6} / (1 − z^{1/3})), the elementary
/// value of 5 ₂F₁(1/6, 1; 7/6; z) − z^{2/3} ₂F₁(5/6, 1; 11/6; z).
pub fn hyp_difference_d(z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("D(z) needs 0 < z < 1, got {z}")));
    }
    let u = z.powf(1.0 / 6.0);
    let r3 = 3f64.sqrt();
    Ok(5.0 / (r3 * u) * (r3 * u / (1.0 - u * u)).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use AiryKind::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn pattern_recognition_ignores_order() {
        let s = AirySpec::new([Ai, Ai, Ai, Bi], [2.0, 1.0, 2.0, 1.0]).unwrap();
        assert_eq!(s.pattern().unwrap(), (AiryPattern::BiAiAi2, 1.0, 2.0));
        let s = AirySpec::new([Ai, Bi, Bi, Bi], [4.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(s.pattern().unwrap(), (AiryPattern::Bi3Ai, 1.0, 4.0));
        let s = AirySpec::new([Ai, Ai, Ai, Ai], [1.0, 2.0, 3.0, 3.0]).unwrap();
        assert!(s.pattern().is_err());
        let s = AirySpec::new([Bi; 4], [1.0; 4]).unwrap();
        assert!(s.pattern().is_err());
    }

    #[test]
    fn equal_scale_limits() {
        let r =
            airy_quartic(&AirySpec::from_pattern(AiryPattern::Ai2Ai2, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(r.formula_id, "ai4");
        assert!(rel(r.value, 3f64.ln() / (24.0 * PI * PI)) < 1e-15);
        let r =
            airy_quartic(&AirySpec::from_pattern(AiryPattern::BiAiAi2, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(r.formula_id, "ai3bi");
        assert!(rel(r.value, 1.0 / (24.0 * PI)) < 1e-15);
    }

    #[test]
    fn reference_values() {
        let r =
            airy_quartic(&AirySpec::from_pattern(AiryPattern::BiAiAi2, 1.0, 2.0).unwrap()).unwrap();
        assert!(rel(r.value, 0.007_064_184_600_177_851_318_771_854) < 1e-14);
        let r =
            airy_quartic(&AirySpec::from_pattern(AiryPattern::Bi3Ai, 1.0, 4.0).unwrap()).unwrap();
        assert!(
            rel(r.value, 0.030_728_260_644_599_142_969_305) < 1e-13,
            "{}",
            r.value
        );
    }

    #[test]
    fn s57_equals_lion() {
        for (a, b) in [(1.0, 2.0), (0.7, 1.3), (0.2, 3.0)] {
            let s57 = airy_s57(a, b).unwrap().value;
            let lion = airy_quartic(&AirySpec::from_pattern(AiryPattern::BiAiAi2, a, b).unwrap())
                .unwrap()
                .value;
            assert!(rel(s57, lion) < 1e-12, "({a}, {b}): {s57} vs {lion}");
        }
    }

    #[test]
    fn d_matches_hypergeometric_difference() {
        for z in [0.1, 0.5, 0.9] {
            let f = 5.0 * gauss_2f1(1.0 / 6.0, 1.0, 7.0 / 6.0, z).unwrap()
                - z.powf(2.0 / 3.0) * gauss_2f1(5.0 / 6.0, 1.0, 11.0 / 6.0, z).unwrap();
            assert!(rel(hyp_difference_d(z).unwrap(), f) < 1e-12, "z = {z}");
        }
        assert!((hyp_difference_d(1e-12).unwrap() - 5.0).abs() < 1e-3);
        assert!(hyp_difference_d(1.0).is_err());
    }

    #[test]
    fn scale_constraints() {
        let s = AirySpec::from_pattern(AiryPattern::Bi2Ai2, 2.0, 1.0).unwrap();
        assert!(matches!(airy_quartic(&s), Err(Error::Domain(_))));
        let s = AirySpec::from_pattern(AiryPattern::Bi3Ai, 1.0, 2.0).unwrap();
        assert!(matches!(airy_quartic(&s), Err(Error::Domain(_))));
    }
}
