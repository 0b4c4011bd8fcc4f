//! Gamma-family functions and the closed-form integrals used as oracles.
//!
//! Everything that multiplies Gamma values is kept in log space; the
//! exceptional domains push arguments well past the point where the plain
//! products overflow.

use alloc::format;

use crate::catalog::CartanDomain;
use crate::error::{Error, Result};

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("log_gamma requires x > 0 (got {x})")));
    }
    Ok(libm::lgamma(x))
}

/// `ln B(a, b)` for `a, b > 0`.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("log_beta requires positive arguments (got {a}, {b})")));
    }
    Ok(libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b))
}

/// Natural log of the Selberg integral
///
/// ```text
/// S_r(α₀, β₀, γ₀) = ∫_{[0,1]^r} ∏ x_j^{α₀-1} (1-x_j)^{β₀-1} ∏_{j<k} |x_j - x_k|^{2γ₀} dx
///                 = ∏_{j=0}^{r-1} Γ(α₀+jγ₀) Γ(β₀+jγ₀) Γ(1+(j+1)γ₀)
///                                 / [Γ(α₀+β₀+(r+j-1)γ₀) Γ(1+γ₀)]
/// ```
pub fn selberg_integral_log(r: u32, alpha0: f64, beta0: f64, gamma0: f64) -> Result<f64> {
    if r < 1 {
        return Err(Error::InvalidArgument("Selberg integral requires r ≥ 1".into()));
    }
    let rf = f64::from(r);
    if !(alpha0 > 0.0 && beta0 > 0.0 && gamma0 >= 0.0)
        || !(alpha0 + beta0 + (rf - 1.0) * gamma0 > 0.0)
        || !(alpha0 + beta0 + gamma0).is_finite()
    {
        return Err(Error::InvalidArgument(format!(
            "Selberg integral requires α₀ > 0, β₀ > 0, γ₀ ≥ 0 (got {alpha0}, {beta0}, {gamma0})"
        )));
    }
    let lg = libm::lgamma;
    let mut acc = 0.0;
    for j in 0..r {
        let jf = f64::from(j);
        acc += lg(alpha0 + jf * gamma0) + lg(beta0 + jf * gamma0) + lg(1.0 + (jf + 1.0) * gamma0)
            - lg(alpha0 + beta0 + (rf + jf - 1.0) * gamma0)
            - lg(1.0 + gamma0);
    }
    Ok(acc)
}

/// `base^k` by binary powering; `f64::powi` is not available without `std`.
pub(crate) fn powi(base: f64, mut k: u32) -> f64 {
    let (mut acc, mut sq) = (1.0, base);
    while k > 0 {
        if k & 1 == 1 {
            acc *= sq;
        }
        sq *= sq;
        k >>= 1;
    }
    acc
}

/// Normalizing constant `c_λ` of the weighted measure
/// `dv_λ = c_λ h(z,z)^{λ-p} dz`, stored as its natural log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaProductConstant {
    pub value_log: f64,
    pub lambda: f64,
    pub domain: CartanDomain,
}

impl GammaProductConstant {
    pub fn value(&self) -> f64 {
        libm::exp(self.value_log)
    }
}

/// `c_λ = π^{-n} ∏_{j=1}^{r} Γ(λ - (j-1)a/2) / Γ(λ - n/r - (j-1)a/2)`, valid for `λ > p - 1`.
///
/// At `λ = p` this is `1/vol(D)` for the Lebesgue measure.
pub fn weighted_volume_constant(d: &CartanDomain, lambda: f64) -> Result<GammaProductConstant> {
    d.check_weight(lambda)?;
    let half_a = f64::from(d.a) / 2.0;
    let n_over_r = f64::from(d.dim) / f64::from(d.rank);
    let mut acc = -f64::from(d.dim) * LN_PI;
    for j in 0..d.rank {
        let shift = f64::from(j) * half_a;
        // The smallest denominator argument is λ - (p - 1) > 0.
        acc += libm::lgamma(lambda - shift) - libm::lgamma(lambda - n_over_r - shift);
    }
    if !acc.is_finite() {
        return Err(Error::Numeric(format!("weighted volume constant overflowed at λ = {lambda}")));
    }
    Ok(GammaProductConstant { value_log: acc, lambda, domain: *d })
}

/// Regularized incomplete Beta function `I_x(a, b)`.
///
/// Continued fraction evaluated with the modified Lentz method; the symmetry
/// `I_x(a,b) = 1 - I_{1-x}(b,a)` keeps the fraction in its fast-converging
/// region.
pub fn incomplete_beta_regularized(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "incomplete Beta requires a, b > 0 and 0 ≤ x ≤ 1 (got {a}, {b}, {x})"
        )));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(x);
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        return Ok(1.0 - incomplete_beta_cf(b, a, 1.0 - x)?);
    }
    incomplete_beta_cf(a, b, x)
}

fn incomplete_beta_cf(a: f64, b: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    const MAX_ITER: u32 = 500;

    let ln_front = a * libm::log(x) + b * libm::log1p(-x) - log_beta(a, b)?;
    let front = libm::exp(ln_front) / a;

    let mut c = 1.0;
    let mut d = 1.0 - (a + b) * x / (a + 1.0);
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = f64::from(m);
        let m2 = 2.0 * m;
        // even step
        let num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        // odd step
        let num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok(front * h);
        }
    }
    Err(Error::Numeric(format!("incomplete Beta continued fraction did not converge for a={a}, b={b}, x={x}")))
}
