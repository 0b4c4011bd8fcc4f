//! Gauss–Jacobi rules on `[0, 1]` and the `r`-dimensional radial density
//! integrals built from them.
//!
//! Rules for the weight `x^κ (1-x)^μ` come from the three-term recurrence of
//! the shifted Jacobi polynomials: the nodes are the eigenvalues of the
//! symmetric Jacobi matrix, polished by Newton steps on the recurrence, and
//! the weights are Christoffel numbers `1 / Σ_k p̂_k(x_i)²`.
//!
//! The radial density
//!
//! ```text
//! ∏ x_j^{κ_j} ∏ (1-x_j)^μ ∏_{j<k} |x_j - x_k|^a,   κ_j = α_j + b,  μ = λ - p
//! ```
//!
//! is integrated in one of two ways. When `a` is even (or `r = 1`) the
//! Vandermonde power is a polynomial and a tensor product of per-axis Jacobi
//! rules is exact for polynomial symbols. When `a` is odd, `|x_j - x_k|^a`
//! has a kink on every diagonal, so the cube is split into the `r!` chambers
//! `y_{π(1)} > … > y_{π(r)}` of `y = 1 - x`, each mapped onto the unit cube by
//! `y_i = t_1 ⋯ t_i`. On a chamber the Vandermonde factor, `x^κ`, and the
//! Jacobian are polynomial in `t` up to pure powers of `t_i`, which go into
//! the Jacobi weights, so exactness is recovered. In both layouts the
//! possibly singular factor `(1-x)^μ` lives in the weights and is never
//! sampled near `x = 1`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::CartanDomain;
use crate::error::{Error, Result};
use crate::special::{log_beta, powi};
use crate::symbol::RadialSymbol;

/// Gauss rule for `∫₀¹ f(x) x^κ (1-x)^μ dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kappa: f64,
    pub mu: f64,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Sum of the weights, `B(κ+1, μ+1)` for an exact rule.
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Monic recurrence `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}` of the Jacobi
/// polynomials orthogonal on `[0,1]` for `x^κ (1-x)^μ`. Returns `(a_0..a_{n-1},
/// b_0..b_{n})` with `b_0` unused.
fn shifted_jacobi_recurrence(n: usize, kappa: f64, mu: f64) -> (Vec<f64>, Vec<f64>) {
    // On [-1,1] with (1-t)^α (1+t)^β: α ↔ μ, β ↔ κ; then x = (1+t)/2.
    let (al, be) = (mu, kappa);
    let s = al + be;
    let mut diag = Vec::with_capacity(n);
    let mut off = vec![0.0; n + 1];
    for k in 0..n {
        let kf = k as f64;
        let a =
            if k == 0 { (be - al) / (s + 2.0) } else { (be * be - al * al) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0)) };
        diag.push(0.5 * (1.0 + a));
    }
    for (k, slot) in off.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let b = if k == 1 {
            4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
        } else {
            let t = 2.0 * kf + s;
            4.0 * kf * (kf + al) * (kf + be) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0))
        };
        *slot = 0.25 * b;
    }
    (diag, off)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `sub[1..]`, by implicit QL with Wilkinson shifts.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, sub: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&sub[1..n]);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Numeric(format!("tridiagonal QL failed to converge (n = {n})")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Values `q_0..q_n` of the orthonormal recurrence scaled so `q_0 = 1`, and
/// the derivative of `q_n`.
fn orthonormal_values(x: f64, diag: &[f64], off: &[f64], out: &mut [f64]) -> f64 {
    let n = diag.len();
    let (mut q_prev, mut q) = (0.0, 1.0);
    let (mut dq_prev, mut dq) = (0.0, 0.0);
    out[0] = 1.0;
    for k in 0..n {
        let sb_next = libm::sqrt(off[k + 1]);
        let sb = if k == 0 { 0.0 } else { libm::sqrt(off[k]) };
        let q_next = ((x - diag[k]) * q - sb * q_prev) / sb_next;
        let dq_next = (q + (x - diag[k]) * dq - sb * dq_prev) / sb_next;
        q_prev = q;
        q = q_next;
        dq_prev = dq;
        dq = dq_next;
        out[k + 1] = q;
    }
    dq
}

/// Gauss–Jacobi rule with `n` nodes for the weight `x^κ (1-x)^μ` on `[0,1]`.
///
/// Exact for polynomials of degree `≤ 2n - 1`.
pub fn jacobi_rule(n: usize, kappa: f64, mu: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument("quadrature order must be at least 1".into()));
    }
    if !(kappa > -1.0 && mu > -1.0) || !kappa.is_finite() || !mu.is_finite() {
        return Err(Error::InvalidArgument(format!("Jacobi exponents must exceed -1 (got κ = {kappa}, μ = {mu})")));
    }
    let mass = libm::exp(log_beta(kappa + 1.0, mu + 1.0)?);
    let (diag, off) = shifted_jacobi_recurrence(n, kappa, mu);
    let coupling: Vec<f64> = off.iter().map(|&b| libm::sqrt(b)).collect();
    let mut nodes = tridiagonal_eigenvalues(diag.clone(), &coupling)?;
    let mut scratch = vec![0.0; n + 1];
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let dq = orthonormal_values(*x, &diag, &off, &mut scratch);
            let step = scratch[n] / dq;
            let candidate = *x - step;
            if !(candidate > 0.0 && candidate < 1.0) || !step.is_finite() {
                break;
            }
            *x = candidate;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
        orthonormal_values(*x, &diag, &off, &mut scratch);
        let christoffel: f64 = scratch[..n].iter().map(|q| q * q).sum();
        weights.push(mass / christoffel);
    }
    let ok = nodes.windows(2).all(|w| w[0] < w[1])
        && nodes.iter().all(|&x| x > 0.0 && x < 1.0)
        && weights.iter().all(|&w| w > 0.0 && w.is_finite());
    if !ok {
        return Err(Error::Numeric(format!("Gauss–Jacobi rule degenerate for n = {n}, κ = {kappa}, μ = {mu}")));
    }
    Ok(QuadratureRule { nodes, weights, kappa, mu })
}

/// Shifted Gauss–Legendre rule on `[0,1]`.
pub fn legendre_rule(n: usize) -> Result<QuadratureRule> {
    jacobi_rule(n, 0.0, 0.0)
}

#[cfg(feature = "std")]
mod cache {
    use super::*;
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};

    type Key = (usize, u64, u64);

    static RULES: OnceLock<RwLock<HashMap<Key, Arc<QuadratureRule>>>> = OnceLock::new();

    pub fn cached_rule(n: usize, kappa: f64, mu: f64) -> Result<Arc<QuadratureRule>> {
        let key = (n, kappa.to_bits(), mu.to_bits());
        let map = RULES.get_or_init(Default::default);
        if let Some(rule) = map.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(jacobi_rule(n, kappa, mu)?);
        let mut guard = map.write().unwrap_or_else(|e| e.into_inner());
        Ok(Arc::clone(guard.entry(key).or_insert(rule)))
    }
}

#[cfg(not(feature = "std"))]
mod cache {
    use super::*;

    pub fn cached_rule(n: usize, kappa: f64, mu: f64) -> Result<Arc<QuadratureRule>> {
        jacobi_rule(n, kappa, mu).map(Arc::new)
    }
}

/// Gauss–Jacobi rule keyed by `(n, κ, μ)`, shared process-wide under the
/// `std` feature.
pub fn cached_rule(n: usize, kappa: f64, mu: f64) -> Result<Arc<QuadratureRule>> {
    cache::cached_rule(n, kappa, mu)
}

/// One coordinate of a tensor grid: nodes in `(0,1)` with the factor
/// `x^κ (1-x)^μ` folded into the weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl AxisRule {
    /// Composite rule split at `breakpoints`. The first segment carries `x^κ`
    /// in its Jacobi weight and the last segment carries `(1-x)^μ`; on the
    /// remaining pieces both factors are smooth and sampled.
    pub fn new(n: usize, kappa: f64, mu: f64, breakpoints: &[f64]) -> Result<Self> {
        let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&c| c > 0.0 && c < 1.0).collect();
        cuts.sort_by(|a, b| a.total_cmp(b));
        cuts.dedup();
        if cuts.is_empty() {
            let rule = cached_rule(n, kappa, mu)?;
            return Ok(Self { nodes: rule.nodes.clone(), weights: rule.weights.clone() });
        }
        let mut edges = Vec::with_capacity(cuts.len() + 2);
        edges.push(0.0);
        edges.extend(cuts);
        edges.push(1.0);
        let mut nodes = Vec::with_capacity(n * (edges.len() - 1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for seg in edges.windows(2) {
            let (lo, hi) = (seg[0], seg[1]);
            let len = hi - lo;
            if lo == 0.0 {
                let rule = cached_rule(n, kappa, 0.0)?;
                let scale = libm::pow(hi, kappa + 1.0);
                for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let x = hi * s;
                    nodes.push(x);
                    weights.push(w * scale * libm::pow(1.0 - x, mu));
                }
            } else if hi == 1.0 {
                let rule = cached_rule(n, 0.0, mu)?;
                let scale = libm::pow(len, mu + 1.0);
                for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let x = lo + len * s;
                    nodes.push(x);
                    weights.push(w * scale * libm::pow(x, kappa));
                }
            } else {
                let rule = cached_rule(n, 0.0, 0.0)?;
                for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let x = lo + len * s;
                    nodes.push(x);
                    weights.push(w * len * libm::pow(x, kappa) * libm::pow(1.0 - x, mu));
                }
            }
        }
        Ok(Self { nodes, weights })
    }
}

/// Tensor product of per-axis rules; axis `j` carries `κ_j = α_j + b` and
/// `μ = λ - p`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorGrid {
    pub kappas: Vec<f64>,
    pub mu: f64,
    pub axes: Vec<AxisRule>,
}

impl TensorGrid {
    pub fn new(d: &CartanDomain, lambda: f64, exponents: &[u32], n: usize, breakpoints: &[f64]) -> Result<Self> {
        let mu = lambda - f64::from(d.genus);
        let kappas: Vec<f64> = exponents.iter().map(|&e| f64::from(e + d.b)).collect();
        let axes = kappas.iter().map(|&k| AxisRule::new(n, k, mu, breakpoints)).collect::<Result<Vec<_>>>()?;
        Ok(Self { kappas, mu, axes })
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn points(&self) -> usize {
        self.axes.iter().map(|a| a.nodes.len()).product()
    }
}

/// How the cube `[0,1)^r` is laid out for quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMethod {
    /// Plain tensor product of Jacobi rules. Exact for polynomial symbols
    /// when `a` is even.
    Tensor,
    /// Sum over the `r!` ordered chambers. Exact for polynomial symbols for
    /// every `a`.
    OrderedChambers,
}

impl DensityMethod {
    pub fn for_domain(d: &CartanDomain) -> Self {
        if d.rank == 1 || d.a.is_multiple_of(2) {
            DensityMethod::Tensor
        } else {
            DensityMethod::OrderedChambers
        }
    }
}

#[derive(Debug, Clone)]
struct ChamberLayout {
    /// Rules for `t_1..t_r`, weight `t_i^{e_i}`.
    axes: Vec<Arc<QuadratureRule>>,
    /// `κ` of the original coordinates.
    kappas: Vec<u32>,
}

#[derive(Debug, Clone)]
enum Layout {
    Tensor(TensorGrid),
    Chambers(ChamberLayout),
}

/// Quadrature layout for one `(domain, λ, α, n)`, shared between the
/// numerator and denominator of an eigenvalue.
#[derive(Debug, Clone)]
pub struct DensityGrid {
    domain: CartanDomain,
    nodes: usize,
    layout: Layout,
}

impl DensityGrid {
    pub fn new(
        d: &CartanDomain,
        lambda: f64,
        exponents: &[u32],
        n: usize,
        method: DensityMethod,
        breakpoints: &[f64],
    ) -> Result<Self> {
        d.check_weight(lambda)?;
        let r = d.rank();
        if exponents.len() != r {
            return Err(Error::ArityMismatch { expected: r, found: exponents.len() });
        }
        if n == 0 {
            return Err(Error::InvalidArgument("quadrature order must be at least 1".into()));
        }
        if r > 6 {
            log::warn!("rank {r} tensor quadrature with {n} nodes per axis evaluates {n}^{r} points");
        }
        let layout = match method {
            DensityMethod::Tensor => Layout::Tensor(TensorGrid::new(d, lambda, exponents, n, breakpoints)?),
            DensityMethod::OrderedChambers => {
                let mu = lambda - f64::from(d.genus);
                let a = f64::from(d.a);
                let axes = (1..=r)
                    .map(|i| {
                        let tail = (r - i) as f64;
                        let e = mu * (tail + 1.0) + tail + a * tail * (tail + 1.0) / 2.0;
                        cached_rule(n, e, 0.0)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let kappas = exponents.iter().map(|&e| e + d.b).collect();
                Layout::Chambers(ChamberLayout { axes, kappas })
            }
        };
        Ok(Self { domain: *d, nodes: n, layout })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn method(&self) -> DensityMethod {
        match self.layout {
            Layout::Tensor(_) => DensityMethod::Tensor,
            Layout::Chambers(_) => DensityMethod::OrderedChambers,
        }
    }

    pub fn tensor_grid(&self) -> Option<&TensorGrid> {
        match &self.layout {
            Layout::Tensor(g) => Some(g),
            Layout::Chambers(_) => None,
        }
    }

    fn check_symbol(&self, psi: Option<&RadialSymbol>) -> Result<()> {
        if let Some(s) = psi {
            if s.arity() != self.domain.rank() {
                return Err(Error::ArityMismatch { expected: self.domain.rank(), found: s.arity() });
            }
        }
        Ok(())
    }

    /// `∫ ψ · density`, or the bare density integral when `psi` is `None`.
    pub fn integrate(&self, psi: Option<&RadialSymbol>) -> Result<f64> {
        self.check_symbol(psi)?;
        let value = match psi {
            None => self.sweep(None).1,
            Some(_) => self.sweep(psi).0,
        };
        finite(value)
    }

    /// `(∫ ψ · density, ∫ density)` from a single sweep of the grid.
    pub fn integrate_pair(&self, psi: &RadialSymbol) -> Result<(f64, f64)> {
        self.check_symbol(Some(psi))?;
        let (num, den) = self.sweep(Some(psi));
        Ok((finite(num)?, finite(den)?))
    }

    fn sweep(&self, psi: Option<&RadialSymbol>) -> (f64, f64) {
        let a = self.domain.a as i32;
        match &self.layout {
            Layout::Tensor(grid) => {
                let r = grid.rank();
                let mut x = vec![0.0; r];
                let mut acc = (0.0, 0.0);
                tensor_level(grid, a, psi, 0, 1.0, &mut x, &mut acc);
                acc
            }
            Layout::Chambers(ch) => chamber_sweep(ch, a, psi),
        }
    }
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("radial density integral is not finite ({v})")))
    }
}

fn tensor_level(
    grid: &TensorGrid,
    a: i32,
    psi: Option<&RadialSymbol>,
    level: usize,
    prefix: f64,
    x: &mut [f64],
    acc: &mut (f64, f64),
) {
    let axis = &grid.axes[level];
    let last = level + 1 == x.len();
    for (&node, &w) in axis.nodes.iter().zip(&axis.weights) {
        let mut v = 1.0;
        for &prev in &x[..level] {
            v *= (prev - node).abs();
        }
        let factor = prefix * w * powi(v, a as u32);
        x[level] = node;
        if last {
            acc.1 += factor;
            if let Some(s) = psi {
                acc.0 += factor * s.eval(x);
            }
        } else {
            tensor_level(grid, a, psi, level + 1, factor, x, acc);
        }
    }
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn chamber_sweep(ch: &ChamberLayout, a: i32, psi: Option<&RadialSymbol>) -> (f64, f64) {
    let r = ch.kappas.len();
    let mut perm: Vec<usize> = (0..r).collect();
    // Without a symbol only the arrangement of κ matters, so identical
    // arrangements are integrated once and weighted by their count.
    let mut work: Vec<(Vec<usize>, f64)> = Vec::new();
    loop {
        if psi.is_some() {
            work.push((perm.clone(), 1.0));
        } else {
            let arrangement: Vec<u32> = perm.iter().map(|&j| ch.kappas[j]).collect();
            match work.iter_mut().find(|(p, _)| p.iter().map(|&j| ch.kappas[j]).eq(arrangement.iter().copied())) {
                Some(entry) => entry.1 += 1.0,
                None => work.push((perm.clone(), 1.0)),
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut total = (0.0, 0.0);
    let mut t = vec![0.0; r];
    let mut y = vec![0.0; r];
    let mut x = vec![0.0; r];
    for (perm, count) in &work {
        let kappas: Vec<i32> = perm.iter().map(|&j| ch.kappas[j] as i32).collect();
        let mut acc = (0.0, 0.0);
        chamber_level(ch, a, psi, perm, &kappas, 0, 1.0, &mut t, &mut y, &mut x, &mut acc);
        total.0 += count * acc.0;
        total.1 += count * acc.1;
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn chamber_level(
    ch: &ChamberLayout,
    a: i32,
    psi: Option<&RadialSymbol>,
    perm: &[usize],
    kappas: &[i32],
    level: usize,
    prefix: f64,
    t: &mut [f64],
    y: &mut [f64],
    x: &mut [f64],
    acc: &mut (f64, f64),
) {
    let rule = &ch.axes[level];
    let last = level + 1 == t.len();
    let y_prev = if level == 0 { 1.0 } else { y[level - 1] };
    for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
        t[level] = node;
        let yi = y_prev * node;
        y[level] = yi;
        let xi = 1.0 - yi;
        x[perm[level]] = xi;
        // (y_j - y_i)/y_j = 1 - t_{j+1}⋯t_i for every earlier j
        let mut pairs = 1.0;
        let mut ratio = 1.0;
        for j in (0..level).rev() {
            ratio *= t[j + 1];
            pairs *= 1.0 - ratio;
        }
        let factor = prefix * w * powi(xi, kappas[level] as u32) * powi(pairs, a as u32);
        if last {
            acc.1 += factor;
            if let Some(s) = psi {
                acc.0 += factor * s.eval(x);
            }
        } else {
            chamber_level(ch, a, psi, perm, kappas, level + 1, factor, t, y, x, acc);
        }
    }
}

/// `∫_{[0,1)^r} ψ(x) ∏ x_j^{α_j+b} ∏ (1-x_j)^{λ-p} ∏_{j<k} |x_j - x_k|^a dx`.
///
/// `exponents` are the per-axis `α_j` (any order; signatures need not be
/// decreasing here). With `psi = None` the symbol factor is 1. The layout is
/// chosen by [`DensityMethod::for_domain`].
pub fn radial_density_integral(
    d: &CartanDomain,
    lambda: f64,
    exponents: &[u32],
    psi: Option<&RadialSymbol>,
    n: usize,
) -> Result<f64> {
    radial_density_integral_with(DensityMethod::for_domain(d), d, lambda, exponents, psi, n)
}

/// [`radial_density_integral`] with an explicit layout.
pub fn radial_density_integral_with(
    method: DensityMethod,
    d: &CartanDomain,
    lambda: f64,
    exponents: &[u32],
    psi: Option<&RadialSymbol>,
    n: usize,
) -> Result<f64> {
    let breakpoints = psi.map(|s| s.breakpoints()).unwrap_or(&[]);
    DensityGrid::new(d, lambda, exponents, n, method, breakpoints)?.integrate(psi)
}

/// Smallest per-axis node count for which the default layout integrates a
/// polynomial symbol of total degree `degree` exactly.
pub fn exact_nodes(d: &CartanDomain, exponents: &[u32], degree: u32) -> usize {
    let r = d.rank();
    let a = d.a as usize;
    let per_axis = match DensityMethod::for_domain(d) {
        DensityMethod::Tensor => degree as usize + a * (r - 1),
        DensityMethod::OrderedChambers => {
            let mut kappas: Vec<usize> = exponents.iter().map(|&e| (e + d.b) as usize).collect();
            kappas.sort_unstable_by(|p, q| q.cmp(p));
            (1..=r)
                .map(|i| {
                    let tail: usize = kappas[..=r - i].iter().sum();
                    degree as usize + tail + a * (i - 1) * (r - i + 1)
                })
                .max()
                .unwrap_or(0)
        }
    };
    per_axis / 2 + 1
}
