//! Lauricella F_C in one to three variables,
//!
//! F_C(a, b; c; z) = Σ (a)_{|k|} (b)_{|k|} Π z_i^{k_i} / ((c_i)_{k_i} k_i!),
//!
//! summed shell by shell in the total degree |k|. Each term is obtained from
//! a neighbour in the previous shell, so no Pochhammer product is ever formed
//! from scratch.

use serde::{Deserialize, Serialize};

use crate::special::is_nonpositive_integer;
use crate::{Error, Result};

const MAX_DEGREE: usize = 400;
const SHELL_TOL: f64 = 1e-15;
const QUIET_SHELLS: usize = 3;
const NEAR_BOUNDARY: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LauricellaSpec {
    pub a: f64,
    pub b: f64,
    pub c: Vec<f64>,
    pub z: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LauricellaSum {
    pub value: f64,
    /// Highest total degree summed.
    pub shells: usize,
    /// Σ√|z_i| > 0.95.
    pub near_boundary: bool,
}

impl LauricellaSpec {
    pub fn new(a: f64, b: f64, c: Vec<f64>, z: Vec<f64>) -> Self {
        Self { a, b, c, z }
    }

    /// Σ √|z_i|; the series converges when this is below 1.
    pub fn radius(&self) -> f64 {
        self.z.iter().map(|z| z.abs().sqrt()).sum()
    }

    fn validate(&self) -> Result<()> {
        let n = self.c.len();
        if !(1..=3).contains(&n) || self.z.len() != n {
            return Err(Error::Domain(format!(
                "F_C needs 1 to 3 variables with matching c and z, got {} and {}",
                n,
                self.z.len()
            )));
        }
        if let Some(c) = self.c.iter().find(|&&c| is_nonpositive_integer(c)) {
            return Err(Error::Domain(format!("c = {c} is a pole")));
        }
        if self.radius() >= 1.0 {
            return Err(Error::Domain(format!(
                "outside the convergence region: Σ√|z| = {}",
                self.radius()
            )));
        }
        Ok(())
    }
}

struct Padded {
    a: f64,
    b: f64,
    c: [f64; 3],
    z: [f64; 3],
    n: usize,
}

impl Padded {
    fn new(spec: &LauricellaSpec) -> Self {
        let mut c = [1.0; 3];
        let mut z = [0.0; 3];
        let n = spec.c.len();
        c[..n].copy_from_slice(&spec.c);
        z[..n].copy_from_slice(&spec.z);
        Self {
            a: spec.a,
            b: spec.b,
            c,
            z,
            n: spec.c.len(),
        }
    }

    /// Terms of shell d+1 from shell d. Shell d is stored as a (d+1)×(d+1)
    /// grid indexed by (k1, k2); k3 = d − k1 − k2.
    fn next_shell(&self, prev: &[f64], d: usize) -> Vec<f64> {
        let w = d + 2;
        let mut next = vec![0.0; w * w];
        let pw = d + 1;
        let common = (self.a + d as f64) * (self.b + d as f64);
        for k1 in 0..=d + 1 {
            let k2_lo = if self.n < 3 { d + 1 - k1 } else { 0 };
            let k2_hi = if self.n < 2 { 0 } else { d + 1 - k1 };
            for k2 in k2_lo..=k2_hi {
                let k3 = d + 1 - k1 - k2;
                // step back along the last nonzero coordinate
                let (src, i, ki) = if k3 > 0 {
                    (k1 * pw + k2, 2, k3 - 1)
                } else if k2 > 0 {
                    (k1 * pw + k2 - 1, 1, k2 - 1)
                } else {
                    ((k1 - 1) * pw, 0, k1 - 1)
                };
                let kf = ki as f64;
                next[k1 * w + k2] =
                    prev[src] * common * self.z[i] / ((self.c[i] + kf) * (kf + 1.0));
            }
        }
        next
    }
}

fn sum_shells(spec: &LauricellaSpec, max_degree: usize, stop_early: bool) -> Result<LauricellaSum> {
    spec.validate()?;
    let p = Padded::new(spec);
    let mut shell = vec![1.0];
    let mut sum = 1.0;
    let mut quiet = 0;
    for d in 0..max_degree {
        shell = p.next_shell(&shell, d);
        let s: f64 = shell.iter().sum();
        sum += s;
        if stop_early {
            if s.abs() < SHELL_TOL * sum.abs() {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= QUIET_SHELLS {
                return Ok(LauricellaSum {
                    value: sum,
                    shells: d + 1,
                    near_boundary: spec.radius() > NEAR_BOUNDARY,
                });
            }
        }
    }
    if stop_early {
        return Err(Error::ToleranceNotMet(format!(
            "F_C not converged by degree {max_degree} (Σ√|z| = {})",
            spec.radius()
        )));
    }
    Ok(LauricellaSum {
        value: sum,
        shells: max_degree,
        near_boundary: spec.radius() > NEAR_BOUNDARY,
    })
}

/// F_C summed until three consecutive shells fall below 1e-15 of the total.
pub fn lauricella_fc(spec: &LauricellaSpec) -> Result<LauricellaSum> {
    sum_shells(spec, MAX_DEGREE, true)
}

/// F_C truncated after total degree `degree` (no stopping rule).
pub fn lauricella_fc_through(spec: &LauricellaSpec, degree: usize) -> Result<f64> {
    Ok(sum_shells(spec, degree, false)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeometric::{pfq, HypSeriesSpec};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn zero_arguments() {
        let s = LauricellaSpec::new(0.7, 1.3, vec![1.2, 0.4, 2.0], vec![0.0; 3]);
        assert_eq!(lauricella_fc(&s).unwrap().value, 1.0);
    }

    #[test]
    fn one_variable_is_gauss() {
        for z in [0.1, -0.4, 0.8] {
            let s = LauricellaSpec::new(0.7, 1.3, vec![1.9], vec![z]);
            let g = pfq(&HypSeriesSpec::new(vec![0.7, 1.3], vec![1.9], z)).unwrap();
            assert!(rel(lauricella_fc(&s).unwrap().value, g) < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn two_variables_reference() {
        // 30-digit reference by direct double summation.
        let s = LauricellaSpec::new(0.6, 1.1, vec![1.3, 0.8], vec![0.2, 0.15]);
        let v = lauricella_fc(&s).unwrap().value;
        assert!(rel(v, 1.437_436_391_965_317_179_699) < 1e-13, "{v}");
    }

    #[test]
    fn domain_checks() {
        let s = LauricellaSpec::new(1.0, 1.0, vec![1.0, 1.0], vec![0.3, 0.3]);
        assert!(matches!(lauricella_fc(&s), Err(Error::Domain(_))));
        let s = LauricellaSpec::new(1.0, 1.0, vec![-1.0], vec![0.1]);
        assert!(matches!(lauricella_fc(&s), Err(Error::Domain(_))));
        let s = LauricellaSpec::new(1.0, 1.0, vec![1.0; 4], vec![0.01; 4]);
        assert!(matches!(lauricella_fc(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn near_boundary_flag() {
        let z = (0.96f64 / 3.0).powi(2);
        let s = LauricellaSpec::new(0.5, 0.4, vec![1.2, 1.1, 1.3], vec![z; 3]);
        let r = lauricella_fc(&s).unwrap();
        assert!(r.near_boundary);
        assert!(r.shells > 100);
    }
}
