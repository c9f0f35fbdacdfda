//! Scalar kernels: gamma family, digamma (including Gauss's formula at
//! rational points) and the di/trilogarithm on [−1, 1].

mod digamma;
mod gamma;
mod polylog;

pub use digamma::{digamma, digamma_rational, psi_half_pair_sum, RationalArg};
pub use gamma::{cos_pi, gamma, gamma_ratio, ln_gamma, ln_gamma_sign, pochhammer, rgamma, sin_pi};
pub use polylog::{li2, li3, polylog};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;
pub const ZETA3: f64 = 1.202_056_903_159_594_285_4;

/// True when `x` is 0, −1, −2, …
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}
