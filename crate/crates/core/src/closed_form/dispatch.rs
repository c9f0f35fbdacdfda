//! Route an [`IntegralSpec`] to the closed form that covers it.
//!
//! Equal-order quartic shapes go to their families (exact special values
//! first, then the digamma/hypergeometric forms); anything else falls back to
//! the generic Mellin evaluators.

use super::families::{
    i2k2_family, ikk2_family, k2k2_family, I2K2Branch, IKK2Branch, K2K2Branch, IK3_TABLE, K4_TABLE,
};
use super::mellin::{
    kk_pair_mellin, product_i_single_k_mellin, quartic_i2k2_mellin, quartic_ik3_mellin,
    quartic_k_mellin,
};
use super::{check_convergence, BesselFactor, BesselKind, Convergence, EvalResult, IntegralSpec};
use crate::{Error, Result};

const TOL: f64 = 1e-12;

fn eq(x: f64, y: f64) -> bool {
    (x - y).abs() <= TOL
}

/// I₋ₙ = Iₙ; leave every other order untouched.
fn i_order(f: &BesselFactor) -> f64 {
    if f.order < 0.0 && f.order == f.order.round() {
        -f.order
    } else {
        f.order
    }
}

fn unsupported(spec: &IntegralSpec) -> Error {
    let shape: Vec<String> = spec
        .factors
        .iter()
        .map(|f| format!("{}({}, {})", f.kind, f.order, f.scale))
        .collect();
    Error::Unsupported(format!(
        "no closed form for x^{} · {}",
        spec.s,
        shape.join(" · ")
    ))
}

/// Evaluate the closed form for `spec`.
pub fn evaluate(spec: &IntegralSpec) -> Result<EvalResult> {
    if let Convergence::Fail(why) = check_convergence(spec) {
        return Err(Error::DivergentSpec(why));
    }
    let is: Vec<&BesselFactor> = spec
        .factors
        .iter()
        .filter(|f| f.kind == BesselKind::I)
        .collect();
    let mut ks: Vec<&BesselFactor> = spec
        .factors
        .iter()
        .filter(|f| f.kind == BesselKind::K)
        .collect();
    ks.sort_by(|x, y| x.scale.total_cmp(&y.scale));
    let s = spec.s;
    match (is.len(), ks.len()) {
        (0, 2) if ks[0].scale == ks[1].scale => {
            kk_pair_mellin(s, ks[0].order, ks[1].order, ks[0].scale)
        }
        (1..=3, 1) => {
            let orders: Vec<f64> = is.iter().map(|f| i_order(f)).collect();
            let scales: Vec<f64> = is.iter().map(|f| f.scale).collect();
            product_i_single_k_mellin(s, &orders, &scales, ks[0].order, ks[0].scale)
        }
        (0, 4) => quartic_k(s, &ks, spec),
        (1, 3) => quartic_ik3(s, is[0], &ks, spec),
        (2, 2) => quartic_i2k2(s, &is, &ks, spec),
        _ => Err(unsupported(spec)),
    }
}

fn quartic_k(s: f64, ks: &[&BesselFactor], spec: &IntegralSpec) -> Result<EvalResult> {
    if ks[0].scale != ks[1].scale || ks[2].scale != ks[3].scale {
        return Err(unsupported(spec));
    }
    let (a, b) = (ks[0].scale, ks[2].scale);
    let al = ks[0].order.abs();
    if ks.iter().all(|k| eq(k.order.abs(), al)) {
        let branch = if eq(s, 2.0) {
            if a == b {
                if al == 0.0 {
                    Some(K2K2Branch::Fox1)
                } else if K4_TABLE.iter().any(|&m| eq(al, 1.0 / m as f64)) {
                    Some(K2K2Branch::Table)
                } else {
                    (al < 0.5).then_some(K2K2Branch::Foraa)
                }
            } else if al == 0.0 {
                Some(K2K2Branch::Li2)
            } else if eq(al, 1.0 / 3.0) {
                Some(K2K2Branch::Kab13)
            } else if eq(al, 0.25) {
                Some(K2K2Branch::KQuarter)
            } else {
                (al < 0.5).then_some(K2K2Branch::Forab)
            }
        } else if eq(s, 1.0) && al > 0.0 && al < 0.25 {
            Some(K2K2Branch::Slv1)
        } else {
            None
        };
        if let Some(br) = branch {
            return k2k2_family(br, al, a, b);
        }
    }
    quartic_k_mellin(s, ks[0].order, ks[1].order, ks[2].order, ks[3].order, a, b)
}

fn quartic_ik3(
    s: f64,
    i: &BesselFactor,
    ks: &[&BesselFactor],
    spec: &IntegralSpec,
) -> Result<EvalResult> {
    let a = i.scale;
    let pos = ks
        .iter()
        .position(|k| k.scale == a)
        .ok_or_else(|| unsupported(spec))?;
    let mut rest: Vec<&BesselFactor> = ks.to_vec();
    let partner = rest.remove(pos);
    if rest[0].scale != rest[1].scale {
        return Err(unsupported(spec));
    }
    let b = rest[0].scale;
    let al = i_order(i);
    let same = [partner, rest[0], rest[1]]
        .iter()
        .all(|k| eq(k.order.abs(), al.abs()));
    if same {
        let branch = if eq(s, 2.0) {
            if a == b {
                if al == 0.0 {
                    Some(IKK2Branch::Fox2)
                } else if IK3_TABLE.iter().any(|&(p, q)| eq(al, p as f64 / q as f64)) {
                    Some(IKK2Branch::Table)
                } else {
                    (al > -0.5 && al < 1.0).then_some(IKK2Branch::Foraa2)
                }
            } else if al == 0.0 {
                Some(if a < b {
                    IKK2Branch::Lili
                } else {
                    IKK2Branch::Lilix
                })
            } else if eq(al, 0.5) || eq(al.abs(), 0.25) {
                Some(IKK2Branch::Elementary)
            } else {
                (al > -0.5 && al < 1.0).then_some(IKK2Branch::Forab2)
            }
        } else if eq(s, 1.0) && al > -0.25 && al < 0.5 && al != 0.0 && a <= b {
            Some(IKK2Branch::Sch1)
        } else {
            None
        };
        if let Some(br) = branch {
            return ikk2_family(br, al, a, b);
        }
    }
    quartic_ik3_mellin(s, al, partner.order, rest[0].order, rest[1].order, a, b)
}

fn quartic_i2k2(
    s: f64,
    is: &[&BesselFactor],
    ks: &[&BesselFactor],
    spec: &IntegralSpec,
) -> Result<EvalResult> {
    if is[0].scale != is[1].scale || ks[0].scale != ks[1].scale {
        return Err(unsupported(spec));
    }
    let (a, b) = (is[0].scale, ks[0].scale);
    let (a1, a2) = (i_order(is[0]), i_order(is[1]));
    let same = eq(a1, a2) && ks.iter().all(|k| eq(k.order.abs(), a1.abs()));
    if same {
        let al = a1;
        let twice = 2.0 * al;
        let branch = if eq(s, 2.0) && b > a {
            if al >= 0.0 && eq(twice, twice.round()) {
                Some(I2K2Branch::Elementary)
            } else {
                (al > -0.5).then_some(I2K2Branch::F21ab)
            }
        } else if eq(s, 1.0) && b >= a {
            if al == 0.0 {
                Some(I2K2Branch::Ox1)
            } else {
                (al > -0.25).then_some(I2K2Branch::Haw)
            }
        } else {
            None
        };
        if let Some(br) = branch {
            return i2k2_family(br, al, a, b);
        }
    }
    quartic_i2k2_mellin(s, a1, a2, ks[0].order, ks[1].order, a, b)
}
