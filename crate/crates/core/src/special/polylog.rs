use std::f64::consts::PI;

use super::ZETA3;
use crate::{Error, Result};

const ZETA2: f64 = PI * PI / 6.0;

// ζ(3−k)/k! for k = 3, 4, …, 20 (odd ζ at negative odd integers; zero entries omitted by index).
fn zeta_neg_over_fact(k: usize) -> f64 {
    // ζ(−n) = −B_{n+1}/(n+1)
    const B: [(usize, f64); 10] = [
        (2, 1.0 / 6.0),
        (4, -1.0 / 30.0),
        (6, 1.0 / 42.0),
        (8, -1.0 / 30.0),
        (10, 5.0 / 66.0),
        (12, -691.0 / 2730.0),
        (14, 7.0 / 6.0),
        (16, -3617.0 / 510.0),
        (18, 43867.0 / 798.0),
        (20, -174_611.0 / 330.0),
    ];
    let mut fact = 1.0;
    for j in 2..=k {
        fact *= j as f64;
    }
    let zeta = if k == 3 {
        -0.5
    } else {
        let n = k - 3;
        B.iter()
            .find(|(i, _)| *i == n + 1)
            .map(|(_, b)| -b / (n + 1) as f64)
            .unwrap_or(0.0)
    };
    zeta / fact
}

fn power_series(z: f64, s: i32) -> f64 {
    let mut sum = 0.0;
    let mut zk = z;
    for k in 1..200 {
        let t = zk / (k as f64).powi(s);
        sum += t;
        if t.abs() < 1e-18 * sum.abs() {
            break;
        }
        zk *= z;
    }
    sum
}

/// Dilogarithm on [−1, 1].
pub fn li2(z: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!("Li2 needs |z| ≤ 1, got {z}")));
    }
    Ok(if z == 1.0 {
        ZETA2
    } else if z == -1.0 {
        -ZETA2 / 2.0
    } else if z.abs() <= 0.5 {
        power_series(z, 2)
    } else if z > 0.5 {
        ZETA2 - z.ln() * (-z).ln_1p() - power_series(1.0 - z, 2)
    } else {
        // Landen: argument z/(z−1) ∈ (1/3, 1/2)
        let l = (-z).ln_1p();
        -power_series(z / (z - 1.0), 2) - 0.5 * l * l
    })
}

/// Trilogarithm on [−1, 1].
pub fn li3(z: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!("Li3 needs |z| ≤ 1, got {z}")));
    }
    if z.abs() <= 0.5 {
        return Ok(power_series(z, 3));
    }
    if z < 0.0 {
        return Ok(0.25 * li3(z * z)? - li3(-z)?);
    }
    if z == 1.0 {
        return Ok(ZETA3);
    }
    // expansion in μ = ln z about μ = 0
    let mu = z.ln();
    let mut sum = ZETA3 + ZETA2 * mu + 0.5 * mu * mu * (1.5 - (-mu).ln());
    let mut pow = mu * mu;
    for k in 3..=20 {
        pow *= mu;
        sum += zeta_neg_over_fact(k) * pow;
    }
    Ok(sum)
}

/// Li_s(z) for s ∈ {2, 3}.
pub fn polylog(s: u32, z: f64) -> Result<f64> {
    match s {
        2 => li2(z),
        3 => li3(z),
        _ => Err(Error::Domain(format!("polylog order {s} not supported"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!((li2(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((li2(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-15);
        assert!((li3(1.0).unwrap() - ZETA3).abs() < 1e-15);
        assert!((li3(-1.0).unwrap() + 0.75 * ZETA3).abs() < 1e-15);
        assert_eq!(li2(0.0).unwrap(), 0.0);
    }

    #[test]
    fn reference_values() {
        let l2 = [
            (0.3, 0.326_129_510_075_476_069_53),
            (0.75, 0.978_469_392_930_306_103_743_1),
            (0.999, 1.637_022_605_276_117_742_696),
            (-0.7, -0.605_158_402_337_705_283_974_4),
            (-0.3, -0.280_074_333_759_582_904_230_2),
        ];
        for (z, want) in l2 {
            assert!((li2(z).unwrap() - want).abs() < 1e-14, "Li2({z})");
        }
        let l3 = [
            (0.3, 0.312_400_177_892_892_620_757_3),
            (0.75, 0.844_425_808_862_204_448_504_3),
            (0.999, 1.200_415_353_995_464_345_189),
            (-0.7, -0.648_666_321_285_235_493_506_7),
            (-0.999, -0.900_720_145_665_427_239_57),
        ];
        for (z, want) in l3 {
            assert!((li3(z).unwrap() - want).abs() < 1e-14, "Li3({z})");
        }
    }

    #[test]
    fn continuity_across_switch_points() {
        for f in [li2 as fn(f64) -> Result<f64>, li3] {
            for z in [0.5, -0.5] {
                let lo = f(z - 1e-12).unwrap();
                let hi = f(z + 1e-12).unwrap();
                assert!((lo - hi).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn domain() {
        assert!(li2(1.5).is_err());
        assert!(polylog(4, 0.5).is_err());
        assert_eq!(polylog(2, 0.3).unwrap(), li2(0.3).unwrap());
    }
}
