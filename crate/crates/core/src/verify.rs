//! Operator-level cross-checks on the disk and on the ball `𝔹² ⊂ ℂ²`.
//!
//! These routines never go through the reduced coordinates of the spectrum
//! module. On the disk the Toeplitz matrix in the monomial basis is computed
//! directly from the polar form of the weighted measure. On `𝔹²` the
//! substitution `u_j = |z_j|²` turns the ball into the simplex
//! `{u₁ + u₂ < 1}` and the matrix elements of `z^β` into simplex integrals,
//! evaluated with a genuinely two-dimensional rule.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{CartanDomain, DomainSpec};
use crate::error::{Error, Result};
use crate::quadrature::{jacobi_rule, legendre_rule};
use crate::special::{log_beta, powi, weighted_volume_constant};
use crate::spectrum::{eigenvalue, MultiIndex};
use crate::symbol::RadialSymbol;

fn require_rank_one(psi: &RadialSymbol) -> Result<()> {
    if psi.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: psi.arity() });
    }
    Ok(())
}

/// Diagonal of `T_ψ` on the weighted Bergman space of the disk in the
/// orthogonal basis `z^k`, `k = 0..=k_max`:
///
/// ```text
/// ⟨ψ z^k, z^k⟩ / ⟨z^k, z^k⟩ = ∫₀¹ ρ^k (1-ρ)^{λ-2} ψ(ρ) dρ / B(k+1, λ-1)
/// ```
///
/// with `ρ = |z|²`. The numerator uses composite Gauss–Legendre in
/// `v = (1-ρ)^{1/q}`, which smooths the endpoint factor `(1-ρ)^{λ-2}`, with a
/// panel edge at each breakpoint of `ψ`.
pub fn disk_diag(lambda: f64, psi: &RadialSymbol, k_max: u32, n: usize) -> Result<Vec<f64>> {
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(Error::WeightOutOfRange { lambda, bound: 1.0 });
    }
    require_rank_one(psi)?;
    let q = libm::ceil(4.0 / (lambda - 1.0)).max(1.0);
    let gl = legendre_rule(n)?;

    let mut edges: Vec<f64> = vec![0.0, 0.25, 0.5, 0.75, 1.0];
    for &c in psi.breakpoints() {
        if c > 0.0 && c < 1.0 {
            edges.push(libm::pow(1.0 - c, 1.0 / q));
        }
    }
    edges.sort_by(|a, b| a.total_cmp(b));
    edges.dedup();

    // Sample points (ρ, weight·ψ(ρ)) shared by every k.
    let mut samples = Vec::with_capacity(n * (edges.len() - 1));
    for seg in edges.windows(2) {
        let (lo, hi) = (seg[0], seg[1]);
        for (&s, &w) in gl.nodes.iter().zip(&gl.weights) {
            let v = lo + (hi - lo) * s;
            let vq = libm::pow(v, q);
            let rho = 1.0 - vq;
            // (1-ρ)^{λ-2} dρ = q v^{q(λ-1)-1} dv
            let jac = q * libm::pow(v, q * (lambda - 1.0) - 1.0);
            samples.push((rho, w * (hi - lo) * jac * psi.eval(&[rho])));
        }
    }
    (0..=k_max)
        .map(|k| {
            let num: f64 = samples.iter().map(|&(rho, w)| w * powi(rho, k)).sum();
            let den = libm::exp(log_beta(f64::from(k) + 1.0, lambda - 1.0)?);
            let v = num / den;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Numeric(format!("disk matrix element for k = {k} is not finite")))
            }
        })
        .collect()
}

/// Block of `T_ψ` on the homogeneous polynomials of one degree on `𝔹²`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBlockReport {
    pub lambda: f64,
    pub degree: u32,
    /// Multi-indices `β = (degree - j, j)` labelling rows and columns.
    pub betas: Vec<[u32; 2]>,
    /// `⟨ψ z^β, z^{β'}⟩ / (‖z^β‖ ‖z^{β'}‖)`.
    pub entries: Vec<Vec<f64>>,
    pub max_offdiag: f64,
    /// `max_β |R(β) - R(β₀)| / R(β₀)`.
    pub diag_spread: f64,
    /// `c_(degree)` from the spectrum module on `typeI:1,2`.
    pub formula_value: f64,
    /// `max_β |R(β) - formula_value|`.
    pub diag_vs_formula: f64,
}

impl OperatorBlockReport {
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let k = self.entries.len();
        (0..k).all(|i| (0..k).all(|j| (self.entries[i][j] - self.entries[j][i]).abs() <= tol))
    }
}

/// Ratio `R(β) = ∫ ψ(u₁+u₂) u^β (1-u₁-u₂)^{λ-3} du / ∫ u^β (1-u₁-u₂)^{λ-3} du`
/// over the simplex, by the iterated rule `u₂ = (1-u₁) w`.
fn simplex_ratio(lambda: f64, psi: &RadialSymbol, beta: [u32; 2], n: usize) -> Result<f64> {
    let (b1, b2) = (f64::from(beta[0]), f64::from(beta[1]));
    let outer = jacobi_rule(n, b1, b2 + lambda - 2.0)?;
    let inner = jacobi_rule(n, b2, lambda - 3.0)?;
    let mut num = 0.0;
    for (&u1, &wo) in outer.nodes.iter().zip(&outer.weights) {
        let row: f64 =
            inner.nodes.iter().zip(&inner.weights).map(|(&w, &wi)| wi * psi.eval(&[u1 + (1.0 - u1) * w])).sum();
        num += wo * row;
    }
    let den = outer.mass() * inner.mass();
    Ok(num / den)
}

/// Builds the degree-`degree` block of `T_ψ` on `A²_λ(𝔹²)`. `psi` is a
/// rank-one symbol read as a function of `|z|² = u₁ + u₂`.
pub fn ball2_block(lambda: f64, psi: &RadialSymbol, degree: u32, n: usize) -> Result<OperatorBlockReport> {
    if !(lambda > 2.0) || !lambda.is_finite() {
        return Err(Error::WeightOutOfRange { lambda, bound: 2.0 });
    }
    require_rank_one(psi)?;
    let betas: Vec<[u32; 2]> = (0..=degree).map(|j| [degree - j, j]).collect();
    let diag = betas.iter().map(|&b| simplex_ratio(lambda, psi, b, n)).collect::<Result<Vec<_>>>()?;
    let k = betas.len();
    let mut entries = vec![vec![0.0; k]; k];
    for (i, &v) in diag.iter().enumerate() {
        // Off-diagonal elements vanish by the angular integrals.
        entries[i][i] = v;
    }
    let reference = diag[0];
    let diag_spread =
        diag.iter().map(|v| (v - reference).abs()).fold(0.0, f64::max) / reference.abs().max(f64::MIN_POSITIVE);

    let ball = CartanDomain::new(DomainSpec::TypeI { m: 1, n: 2 })?;
    let formula_value = eigenvalue(&ball, lambda, psi, &MultiIndex::new(vec![degree])?, n)?.value;
    let diag_vs_formula = diag.iter().map(|v| (v - formula_value).abs()).fold(0.0, f64::max);
    Ok(OperatorBlockReport {
        lambda,
        degree,
        betas,
        entries,
        max_offdiag: 0.0,
        diag_spread,
        formula_value,
        diag_vs_formula,
    })
}

/// Monte Carlo estimate of one matrix element `⟨ψ z^β, z^{β'}⟩_λ` on `𝔹²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McPairEstimate {
    pub beta: [u32; 2],
    pub beta_prime: [u32; 2],
    pub re: f64,
    pub im: f64,
    /// Standard error of the complex estimate, `√(σ_re² + σ_im²) / √samples`.
    pub std_err: f64,
}

impl McPairEstimate {
    pub fn abs(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    /// Number of standard errors between the estimate and zero.
    pub fn sigmas(&self) -> f64 {
        if self.std_err > 0.0 {
            self.abs() / self.std_err
        } else if self.abs() == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McOffDiagReport {
    pub lambda: f64,
    pub samples: usize,
    pub seed: u64,
    pub pairs: Vec<McPairEstimate>,
    /// Largest `|estimate|` over the requested pairs.
    pub max_abs: f64,
}

impl McOffDiagReport {
    pub fn within_sigmas(&self, k: f64) -> bool {
        self.pairs.iter().all(|p| p.sigmas() <= k)
    }
}

fn cpow(z: (f64, f64), k: u32) -> (f64, f64) {
    let mut acc = (1.0, 0.0);
    for _ in 0..k {
        acc = (acc.0 * z.0 - acc.1 * z.1, acc.0 * z.1 + acc.1 * z.0);
    }
    acc
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Plain Monte Carlo estimates of the matrix elements `⟨ψ z^β, z^{β'}⟩_λ`
/// over the full ball, with `ψ` read as a function of `|z|²`. Points are
/// drawn uniformly by rejection from `[-1,1]⁴` with a ChaCha8 stream seeded
/// by `seed`.
pub fn monte_carlo_offdiag_smoke(
    lambda: f64,
    psi: &RadialSymbol,
    pairs: &[([u32; 2], [u32; 2])],
    samples: usize,
    seed: u64,
) -> Result<McOffDiagReport> {
    if !(lambda > 2.0) || !lambda.is_finite() {
        return Err(Error::WeightOutOfRange { lambda, bound: 2.0 });
    }
    require_rank_one(psi)?;
    if samples < 2 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least two samples".into()));
    }
    let ball = CartanDomain::new(DomainSpec::TypeI { m: 1, n: 2 })?;
    // E_uniform[f] · vol(𝔹²) · c_λ, vol(𝔹²) = π²/2
    let pi = core::f64::consts::PI;
    let scale = weighted_volume_constant(&ball, lambda)?.value() * pi * pi / 2.0;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sums = vec![[0.0f64; 4]; pairs.len()];
    for _ in 0..samples {
        let (z1, z2) = loop {
            let p: [f64; 4] = core::array::from_fn(|_| 2.0 * rng.random::<f64>() - 1.0);
            if p.iter().map(|v| v * v).sum::<f64>() < 1.0 {
                break ((p[0], p[1]), (p[2], p[3]));
            }
        };
        let u = z1.0 * z1.0 + z1.1 * z1.1 + z2.0 * z2.0 + z2.1 * z2.1;
        let radial = psi.eval(&[u]) * libm::pow(1.0 - u, lambda - 3.0);
        for (acc, (b, bp)) in sums.iter_mut().zip(pairs) {
            let zb = cmul(cpow(z1, b[0]), cpow(z2, b[1]));
            let zbp = cmul(cpow(z1, bp[0]), cpow(z2, bp[1]));
            let (re, im) = cmul(zb, (zbp.0, -zbp.1));
            let (re, im) = (radial * re, radial * im);
            acc[0] += re;
            acc[1] += im;
            acc[2] += re * re;
            acc[3] += im * im;
        }
    }
    let nf = samples as f64;
    let estimates: Vec<McPairEstimate> = sums
        .iter()
        .zip(pairs)
        .map(|(s, &(beta, beta_prime))| {
            let (mre, mim) = (s[0] / nf, s[1] / nf);
            let var_re = (s[2] / nf - mre * mre).max(0.0) * nf / (nf - 1.0);
            let var_im = (s[3] / nf - mim * mim).max(0.0) * nf / (nf - 1.0);
            McPairEstimate {
                beta,
                beta_prime,
                re: scale * mre,
                im: scale * mim,
                std_err: scale * libm::sqrt((var_re + var_im) / nf),
            }
        })
        .collect();
    let max_abs = estimates.iter().map(McPairEstimate::abs).fold(0.0, f64::max);
    Ok(McOffDiagReport { lambda, samples, seed, pairs: estimates, max_abs })
}
