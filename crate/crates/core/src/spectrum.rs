//! Signatures and the eigenvalues `c_α(T_ψ)`.
//!
//! On the isotypic component `P^α` a radial Toeplitz operator is the scalar
//!
//! ```text
//!        ∫ ψ(x) ∏ x_j^{α_j+b} ∏ (1-x_j)^{λ-p} ∏_{j<k} |x_j-x_k|^a dx
//! c_α = ──────────────────────────────────────────────────────────────
//!          ∫ ∏ x_j^{α_j+b} ∏ (1-x_j)^{λ-p} ∏_{j<k} |x_j-x_k|^a dx
//! ```
//!
//! over `[0,1)^r`. Only this ratio is meaningful: the normalizations of the
//! spherical polynomials cancel and are never computed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::catalog::CartanDomain;
use crate::error::{Error, Result};
use crate::quadrature::{DensityGrid, DensityMethod};
use crate::special::selberg_integral_log;
use crate::symbol::{check_symmetric, RadialSymbol};

/// Number of sample points used when screening symbols for symmetry.
pub const SYMMETRY_SAMPLES: usize = 64;
/// Relative tolerance of the symmetry screen.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// A weakly decreasing tuple `α₁ ≥ … ≥ α_r ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("signature must have at least one part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("signature {parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    /// `(m, …, m)` of length `r`.
    pub fn rectangular(r: usize, m: u32) -> Self {
        Self(alloc::vec![m; r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|α| = Σ α_j`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Dash-joined parts, e.g. `3-1-0`.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// All signatures of length `r` with parts `≤ alpha_max`, ordered by `|α|`
/// and then lexicographically descending. There are `C(alpha_max + r, r)`.
pub fn enumerate_signatures(r: usize, alpha_max: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    let mut current = alloc::vec![0u32; r];
    fill(&mut out, &mut current, 0, alpha_max);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut [u32], pos: usize, cap: u32) {
    if pos == current.len() {
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for v in 0..=cap {
        current[pos] = v;
        fill(out, current, pos + 1, v);
    }
}

/// One computed eigenvalue and how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueRecord {
    pub domain: CartanDomain,
    pub lambda: f64,
    pub alpha: MultiIndex,
    pub value: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub nodes: usize,
    /// `|c_α(N) - c_α(⌈3N/2⌉)|`.
    pub err_estimate: f64,
    pub symbol_name: String,
}

fn refined_nodes(n: usize) -> usize {
    (3 * n).div_ceil(2).max(n + 1)
}

fn ratio_at(d: &CartanDomain, lambda: f64, psi: &RadialSymbol, alpha: &MultiIndex, n: usize) -> Result<(f64, f64)> {
    let grid = DensityGrid::new(d, lambda, alpha.parts(), n, DensityMethod::for_domain(d), psi.breakpoints())?;
    grid.integrate_pair(psi)
}

fn validate(d: &CartanDomain, lambda: f64, psi: &RadialSymbol) -> Result<()> {
    d.check_weight(lambda)?;
    if psi.arity() != d.rank() {
        return Err(Error::ArityMismatch { expected: d.rank(), found: psi.arity() });
    }
    if !check_symmetric(psi, SYMMETRY_SAMPLES, SYMMETRY_TOL) {
        return Err(Error::AsymmetricSymbol(psi.name().into()));
    }
    Ok(())
}

fn eigenvalue_unchecked(
    d: &CartanDomain,
    lambda: f64,
    psi: &RadialSymbol,
    alpha: &MultiIndex,
    n: usize,
) -> Result<EigenvalueRecord> {
    if alpha.len() != d.rank() {
        return Err(Error::ArityMismatch { expected: d.rank(), found: alpha.len() });
    }
    let (numerator, denominator) = ratio_at(d, lambda, psi, alpha, n)?;
    if !(denominator > 0.0) {
        return Err(Error::Numeric(format!("non-positive density integral {denominator} for α = {alpha}")));
    }
    let value = numerator / denominator;
    let (num2, den2) = ratio_at(d, lambda, psi, alpha, refined_nodes(n))?;
    let err_estimate = (value - num2 / den2).abs();
    if !value.is_finite() || !err_estimate.is_finite() {
        return Err(Error::Numeric(format!("eigenvalue for α = {alpha} is not finite")));
    }
    Ok(EigenvalueRecord {
        domain: *d,
        lambda,
        alpha: alpha.clone(),
        value,
        numerator,
        denominator,
        nodes: n,
        err_estimate,
        symbol_name: psi.name().into(),
    })
}

/// `c_α(T_ψ)` at `n` nodes per axis, with a refinement error estimate.
///
/// The symbol must be symmetric; asymmetric input is rejected.
pub fn eigenvalue(
    d: &CartanDomain,
    lambda: f64,
    psi: &RadialSymbol,
    alpha: &MultiIndex,
    n: usize,
) -> Result<EigenvalueRecord> {
    validate(d, lambda, psi)?;
    eigenvalue_unchecked(d, lambda, psi, alpha, n)
}

/// One record per signature from [`enumerate_signatures`], in that order.
pub fn eigenvalue_table(
    d: &CartanDomain,
    lambda: f64,
    psi: &RadialSymbol,
    alpha_max: u32,
    n: usize,
) -> Result<Vec<EigenvalueRecord>> {
    validate(d, lambda, psi)?;
    let signatures = enumerate_signatures(d.rank(), alpha_max);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        signatures.par_iter().map(|alpha| eigenvalue_unchecked(d, lambda, psi, alpha, n)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        signatures.iter().map(|alpha| eigenvalue_unchecked(d, lambda, psi, alpha, n)).collect()
    }
}

/// Quadrature value, closed form and relative error for the denominator at a
/// rectangular signature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangularCheck {
    pub quadrature: f64,
    pub closed_form: f64,
    pub rel_error: f64,
}

/// Compares the density integral at `α = (m, …, m)` with the Selberg closed
/// form `S_r(m+b+1, λ-p+1, a/2)`.
pub fn rectangular_denominator_check(d: &CartanDomain, lambda: f64, m: u32, n: usize) -> Result<RectangularCheck> {
    d.check_weight(lambda)?;
    let alpha = MultiIndex::rectangular(d.rank(), m);
    let grid = DensityGrid::new(d, lambda, alpha.parts(), n, DensityMethod::for_domain(d), &[])?;
    let quadrature = grid.integrate(None)?;
    let log_closed =
        selberg_integral_log(d.rank, f64::from(m + d.b + 1), lambda - f64::from(d.genus) + 1.0, f64::from(d.a) / 2.0)?;
    let closed_form = libm::exp(log_closed);
    if !(closed_form > 0.0 && closed_form.is_finite()) {
        return Err(Error::Numeric(format!("Selberg closed form out of range (log = {log_closed})")));
    }
    Ok(RectangularCheck { quadrature, closed_form, rel_error: (quadrature - closed_form).abs() / closed_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{builtin_symbol, parse_symbol, Builtin};

    fn parts(v: &[MultiIndex]) -> Vec<Vec<u32>> {
        v.iter().map(|m| m.parts().to_vec()).collect()
    }

    #[test]
    fn signature_enumeration() {
        assert_eq!(parts(&enumerate_signatures(2, 1)), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert_eq!(parts(&enumerate_signatures(1, 3)), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(
            parts(&enumerate_signatures(3, 1)),
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]
        );
        assert_eq!(
            parts(&enumerate_signatures(2, 2)),
            vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![1, 1], vec![2, 1], vec![2, 2]]
        );
    }

    #[test]
    fn signature_counts_are_binomial() {
        fn binom(n: u64, k: u64) -> u64 {
            (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
        }
        for r in 1..6usize {
            for m in 0..6u32 {
                let sigs = enumerate_signatures(r, m);
                assert_eq!(sigs.len() as u64, binom(u64::from(m) + r as u64, r as u64));
                assert!(sigs.iter().all(|s| s.parts().windows(2).all(|w| w[0] >= w[1])));
            }
        }
    }

    #[test]
    fn multi_index_validation() {
        assert!(MultiIndex::new(vec![1, 2]).is_err());
        assert!(MultiIndex::new(vec![]).is_err());
        assert_eq!(MultiIndex::new(vec![3, 1, 0]).unwrap().to_string(), "3-1-0");
    }

    #[test]
    fn constant_symbol_gives_one() {
        let d = CartanDomain::parse("typeV").unwrap();
        let one = builtin_symbol(Builtin::Const(1.0), 2).unwrap();
        let rec = eigenvalue(&d, 13.0, &one, &MultiIndex::new(vec![1, 0]).unwrap(), 24).unwrap();
        assert!((rec.value - 1.0).abs() < 1e-14);
        assert!(rec.denominator > 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let d = CartanDomain::parse("typeIII:2").unwrap();
        let asym = parse_symbol("x2", 2).unwrap();
        let a0 = MultiIndex::new(vec![0, 0]).unwrap();
        assert!(matches!(eigenvalue(&d, 4.0, &asym, &a0, 8), Err(Error::AsymmetricSymbol(_))));
        let sym = parse_symbol("x1+x2", 2).unwrap();
        assert!(matches!(eigenvalue(&d, 2.0, &sym, &a0, 8), Err(Error::WeightOutOfRange { .. })));
        let wrong = parse_symbol("x1", 1).unwrap();
        assert!(matches!(eigenvalue(&d, 4.0, &wrong, &a0, 8), Err(Error::ArityMismatch { .. })));
        let a1 = MultiIndex::new(vec![1]).unwrap();
        assert!(matches!(eigenvalue(&d, 4.0, &sym, &a1, 8), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn disk_table() {
        let disk = CartanDomain::parse("typeI:1,1").unwrap();
        let x = parse_symbol("x1", 1).unwrap();
        let rows = eigenvalue_table(&disk, 2.0, &x, 2, 16).unwrap();
        let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
        for (v, want) in values.iter().zip([0.5, 2.0 / 3.0, 0.75]) {
            assert!((v - want).abs() < 1e-14, "{v} vs {want}");
        }
    }

    #[test]
    fn refinement_count() {
        assert_eq!(refined_nodes(1), 2);
        assert_eq!(refined_nodes(2), 3);
        assert_eq!(refined_nodes(48), 72);
        assert_eq!(refined_nodes(5), 8);
    }
}
