//! Meijer G-functions with simple poles, evaluated as a finite sum of
//! hypergeometric series (Slater's expansion), plus the two order-reduction
//! rules that strip a matching numerator/denominator pair.
//!
//! Only p ≤ q and real z > 0 are handled. Contour integration is out of scope.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::hypergeometric::{pfq_sum, HypSeriesSpec};
use crate::special::{is_nonpositive_integer, ln_gamma_sign, sin_pi};
use crate::{Error, Result};

/// Two b-parameters closer than this to an integer spacing are treated as
/// coincident poles.
const INTEGER_GAP_TOL: f64 = 1e-10;

/// G^{m,n}_{p,q}(z | a; b).
///
/// `a_params[..n]` and `b_params[..m]` are the blocks entering the numerator
/// gammas of the Mellin–Barnes integrand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeijerGSpec {
    pub m: usize,
    pub n: usize,
    pub a_params: Vec<f64>,
    pub b_params: Vec<f64>,
    pub z: f64,
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a_params: Vec<f64>, b_params: Vec<f64>, z: f64) -> Result<Self> {
        let spec = Self {
            m,
            n,
            a_params,
            b_params,
            z,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn p(&self) -> usize {
        self.a_params.len()
    }

    pub fn q(&self) -> usize {
        self.b_params.len()
    }

    fn validate(&self) -> Result<()> {
        let (p, q) = (self.p(), self.q());
        if self.m > q || self.n > p {
            return Err(Error::Domain(format!(
                "G^{{{},{}}}_{{{p},{q}}} needs m ≤ q and n ≤ p",
                self.m, self.n
            )));
        }
        if p > q {
            return Err(Error::Unsupported(format!("G with p = {p} > q = {q}")));
        }
        if !(self.z > 0.0) || !self.z.is_finite() {
            return Err(Error::Domain(format!("G needs z > 0, got {}", self.z)));
        }
        Ok(())
    }
}

fn same(x: f64, y: f64) -> bool {
    (x - y).abs() <= 4.0 * f64::EPSILON * x.abs().max(y.abs()).max(1.0)
}

/// Remove one matching pair, lowering p and q by one.
///
/// An a in the first n slots that equals a b in slots m+1..q cancels with n
/// reduced; an a in slots n+1..p that equals a b in slots 1..m cancels with m
/// reduced. Equality is exact up to a few ulps so that parameters produced by
/// different arithmetic paths still match.
pub fn g_reduce(spec: &MeijerGSpec) -> Result<MeijerGSpec> {
    spec.validate()?;
    let (m, n) = (spec.m, spec.n);
    for i in 0..n {
        if let Some(j) = (m..spec.q()).find(|&j| same(spec.a_params[i], spec.b_params[j])) {
            let mut out = spec.clone();
            out.a_params.remove(i);
            out.b_params.remove(j);
            out.n -= 1;
            return Ok(out);
        }
    }
    for i in n..spec.p() {
        if let Some(j) = (0..m).find(|&j| same(spec.a_params[i], spec.b_params[j])) {
            let mut out = spec.clone();
            out.a_params.remove(i);
            out.b_params.remove(j);
            out.m -= 1;
            return Ok(out);
        }
    }
    Err(Error::NoReduction)
}

/// Apply [`g_reduce`] until no pair is left. Returns the spec and the number
/// of pairs removed.
pub fn g_reduce_all(spec: &MeijerGSpec) -> Result<(MeijerGSpec, usize)> {
    let mut cur = spec.clone();
    let mut count = 0;
    loop {
        match g_reduce(&cur) {
            Ok(next) => {
                cur = next;
                count += 1;
            }
            Err(Error::NoReduction) => return Ok((cur, count)),
            Err(e) => return Err(e),
        }
    }
}

/// One term of the expansion, kept as sign·exp(ln_abs)·series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlaterTerm {
    pub ln_abs_prefactor: f64,
    pub sign: f64,
    /// Regularized series value (denominator gammas already divided out).
    pub series: f64,
    pub series_terms: usize,
}

impl SlaterTerm {
    pub fn value(&self) -> f64 {
        if self.sign == 0.0 || self.series == 0.0 {
            return 0.0;
        }
        self.sign * (self.ln_abs_prefactor + self.series.abs().ln()).exp() * self.series.signum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlaterSum {
    pub value: f64,
    pub terms: Vec<SlaterTerm>,
}

fn nearest_integer_gap(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// The h-th term. With Γ(b_j − b_h)Γ(1 + b_h − b_j) = π / sin π(b_j − b_h),
/// the numerator gammas of the other m−1 poles pair off against the
/// regularization of the series, which keeps the prefactor well scaled and
/// lets denominators 1 + b_h − b_j at nonpositive integers (j > m) be handled
/// by the regularized series directly.
fn slater_term(spec: &MeijerGSpec, h: usize) -> Result<SlaterTerm> {
    let (m, n) = (spec.m, spec.n);
    let a = &spec.a_params;
    let b = &spec.b_params;
    let bh = b[h];

    let mut ln_abs = bh * spec.z.ln();
    let mut sign = 1.0;
    for (j, &bj) in b.iter().enumerate().take(m) {
        if j != h {
            let s = sin_pi(bj - bh);
            ln_abs += PI.ln() - s.abs().ln();
            sign *= s.signum();
        }
    }
    for &aj in &a[..n] {
        let x = 1.0 + bh - aj;
        if is_nonpositive_integer(x) {
            return Err(Error::NonGenericParameters(format!(
                "pole of Γ(1 + b_h − a_j) at b_h = {bh}, a_j = {aj}: poles not separated"
            )));
        }
        let (l, s) = ln_gamma_sign(x)?;
        ln_abs += l;
        sign *= s;
    }
    for &aj in &a[n..] {
        let x = aj - bh;
        if is_nonpositive_integer(x) {
            return Ok(SlaterTerm {
                ln_abs_prefactor: f64::NEG_INFINITY,
                sign: 0.0,
                series: 0.0,
                series_terms: 0,
            });
        }
        let (l, s) = ln_gamma_sign(x)?;
        ln_abs -= l;
        sign *= s;
    }

    let num: Vec<f64> = a.iter().map(|&aj| 1.0 + bh - aj).collect();
    let den: Vec<f64> = b
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != h)
        .map(|(_, &bj)| 1.0 + bh - bj)
        .collect();
    // (−1)^{p−m−n} has the parity of p + m + n
    let x = if (spec.p() + spec.m + spec.n).is_multiple_of(2) {
        spec.z
    } else {
        -spec.z
    };
    let series = pfq_sum(&HypSeriesSpec::regularized(num, den, x))?;
    Ok(SlaterTerm {
        ln_abs_prefactor: ln_abs,
        sign,
        series: series.value,
        series_terms: series.terms,
    })
}

/// Slater's expansion with per-term diagnostics.
pub fn g_slater_sum(spec: &MeijerGSpec) -> Result<SlaterSum> {
    spec.validate()?;
    let bm = &spec.b_params[..spec.m];
    for (i, &x) in bm.iter().enumerate() {
        for &y in &bm[i + 1..] {
            if nearest_integer_gap(x - y) < INTEGER_GAP_TOL {
                return Err(Error::NonGenericParameters(format!(
                    "b-parameters {x} and {y} differ by an integer"
                )));
            }
        }
    }
    let terms = (0..spec.m)
        .map(|h| slater_term(spec, h))
        .collect::<Result<Vec<_>>>()?;
    let value = terms.iter().map(SlaterTerm::value).sum();
    Ok(SlaterSum { value, terms })
}

/// G^{m,n}_{p,q}(z) as a sum of m series of type ₚF_{q−1}((−1)^{p−m−n} z).
pub fn g_slater(spec: &MeijerGSpec) -> Result<f64> {
    Ok(g_slater_sum(spec)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_k;
    use crate::special::gamma;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn g(m: usize, n: usize, a: &[f64], b: &[f64], z: f64) -> MeijerGSpec {
        MeijerGSpec::new(m, n, a.to_vec(), b.to_vec(), z).unwrap()
    }

    #[test]
    fn exponential() {
        for z in [0.1, 1.0, 4.5] {
            let v = g_slater(&g(1, 0, &[], &[0.3], z)).unwrap();
            assert!(rel(v, z.powf(0.3) * (-z).exp()) < 1e-12, "{z}");
        }
    }

    #[test]
    fn algebraic_g11() {
        let (a, b) = (0.2, 0.65);
        for z in [0.3, 0.9] {
            let v = g_slater(&g(1, 1, &[a], &[b], z)).unwrap();
            let want = gamma(1.0 - a + b).unwrap() * z.powf(b) * (1.0 + z).powf(a - b - 1.0);
            assert!(rel(v, want) < 1e-13, "{v} vs {want}");
        }
    }

    #[test]
    fn logarithm() {
        let v = g_slater(&g(1, 2, &[1.0, 1.0], &[1.0, 0.0], 0.6)).unwrap();
        assert!(rel(v, 1.6f64.ln()) < 1e-14);
    }

    #[test]
    fn bessel_k_as_g20() {
        let (b1, b2, z) = (0.35, -0.4, 2.3f64);
        let v = g_slater(&g(2, 0, &[], &[b1, b2], z)).unwrap();
        let want = 2.0 * z.powf((b1 + b2) / 2.0) * bessel_k(b1 - b2, 2.0 * z.sqrt()).unwrap();
        // the two terms are ±19.4 and cancel to 0.071
        assert!(rel(v, want) < 1e-11, "{v} vs {want}");
    }

    fn generic_g44() -> MeijerGSpec {
        let (s, al, be, ga, de) = (1.3, 0.21, 0.17, 0.11, 0.07);
        let a = [
            (2.0 - ga - de) / 2.0,
            (2.0 + ga - de) / 2.0,
            (2.0 - ga + de) / 2.0,
            (2.0 + ga + de) / 2.0,
            s / 2.0,
            (s + 1.0) / 2.0,
        ];
        let b = [
            (s + al + be) / 2.0,
            (s - al + be) / 2.0,
            (s + al - be) / 2.0,
            (s - al - be) / 2.0,
            0.5,
            1.0,
        ];
        g(4, 4, &a, &b, 0.25)
    }

    #[test]
    fn generic_g44_reference() {
        let v = g_slater(&generic_g44()).unwrap();
        assert!(rel(v, 17.790_127_679_487_491_570_17) < 1e-12, "{v}");
    }

    #[test]
    fn reduction_rules() {
        // a₁ = b₃ (b₃ outside the first m): lowers n.
        let s = g(2, 1, &[0.3, 0.9], &[0.1, 0.45, 0.3], 0.7);
        let r = g_reduce(&s).unwrap();
        assert_eq!((r.m, r.n, r.p(), r.q()), (2, 0, 1, 2));
        assert_eq!(r.a_params, vec![0.9]);
        let want = 0.432_983_231_811_828_739_498_4;
        assert!(rel(g_slater(&s).unwrap(), want) < 1e-13);
        assert!(rel(g_slater(&r).unwrap(), want) < 1e-13);

        // a₂ = b₁ (a₂ outside the first n): lowers m.
        let s = g(2, 1, &[0.6, 0.1], &[0.1, 0.45, 0.8], 0.7);
        let r = g_reduce(&s).unwrap();
        assert_eq!((r.m, r.n, r.p(), r.q()), (1, 1, 1, 2));
        let want = 0.251_910_601_402_212_252_175_4;
        assert!(rel(g_slater(&s).unwrap(), want) < 1e-13);
        assert!(rel(g_slater(&r).unwrap(), want) < 1e-13);
    }

    #[test]
    fn no_reduction() {
        assert!(matches!(g_reduce(&generic_g44()), Err(Error::NoReduction)));
        // a match in the wrong blocks does not count
        let s = g(1, 1, &[0.4], &[0.4, 0.9], 0.5);
        assert!(matches!(g_reduce(&s), Err(Error::NoReduction)));
    }

    #[test]
    fn reduce_all_counts_pairs() {
        let s = g(2, 2, &[0.3, 0.55, 0.7], &[0.1, 0.7, 0.3, 0.55], 0.4);
        let (r, k) = g_reduce_all(&s).unwrap();
        assert_eq!(k, 3);
        assert_eq!((r.m, r.n, r.p(), r.q()), (1, 0, 0, 1));
        assert!(rel(g_slater(&r).unwrap(), g_slater(&s).unwrap()) < 1e-12);
    }

    #[test]
    fn non_generic_rejected() {
        let s = g(2, 0, &[], &[0.5, 1.5], 1.0);
        assert!(matches!(g_slater(&s), Err(Error::NonGenericParameters(_))));
        let s = g(2, 0, &[], &[0.25, 0.25 + 1e-12], 1.0);
        assert!(matches!(g_slater(&s), Err(Error::NonGenericParameters(_))));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            MeijerGSpec::new(3, 0, vec![], vec![0.1, 0.2], 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            MeijerGSpec::new(0, 0, vec![0.1, 0.2], vec![0.3], 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            MeijerGSpec::new(1, 0, vec![], vec![0.3], -1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn p_equals_q_outside_unit_disk_diverges() {
        let mut s = generic_g44();
        s.z = 1.5;
        assert!(matches!(g_slater(&s), Err(Error::SeriesDivergence(_))));
    }
}
