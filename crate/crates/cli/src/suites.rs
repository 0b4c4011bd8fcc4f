//! Fixed verification suites driven by `cartan-spectra verify`.

use cartan_core::spectrum::rectangular_denominator_check;
use cartan_core::verify::{ball2_block, disk_diag, monte_carlo_offdiag_smoke, OperatorBlockReport};
use cartan_core::{builtin_symbol, eigenvalue, parse_symbol, Builtin, CartanDomain, MultiIndex, RadialSymbol};
use clap::ValueEnum;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 1729;
pub const MC_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Selberg,
    Disk,
    Ball2,
    Mc,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Check { name, measured, tolerance }
    }

    pub fn pass(&self) -> bool {
        self.measured <= self.tolerance
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub suite: &'static str,
    pub case: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

impl CaseResult {
    fn new(suite: &'static str, case: String, checks: Vec<Check>, report: Option<serde_json::Value>) -> Self {
        let pass = checks.iter().all(Check::pass);
        CaseResult { suite, case, checks, pass, report }
    }

    /// `PASS  <case>  name=measured (≤ tol) ...`
    pub fn line(&self) -> String {
        let mut s = format!("{}  {} {}", if self.pass { "PASS" } else { "FAIL" }, self.suite, self.case);
        for c in &self.checks {
            s.push_str(&format!("  {}={:.3e} (≤ {:.0e})", c.name, c.measured, c.tolerance));
        }
        s
    }
}

/// Serializable mirror of [`OperatorBlockReport`].
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub lambda: f64,
    pub degree: u32,
    pub betas: Vec<[u32; 2]>,
    pub entries: Vec<Vec<f64>>,
    pub max_offdiag: f64,
    pub diag_spread: f64,
    pub formula_value: f64,
    pub diag_vs_formula: f64,
}

impl From<&OperatorBlockReport> for BlockReport {
    fn from(r: &OperatorBlockReport) -> Self {
        BlockReport {
            lambda: r.lambda,
            degree: r.degree,
            betas: r.betas.clone(),
            entries: r.entries.clone(),
            max_offdiag: r.max_offdiag,
            diag_spread: r.diag_spread,
            formula_value: r.formula_value,
            diag_vs_formula: r.diag_vs_formula,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct McPair {
    beta: [u32; 2],
    beta_prime: [u32; 2],
    re: f64,
    im: f64,
    std_err: f64,
}

pub fn run(suite: Suite, seed: Option<u64>) -> cartan_core::Result<Vec<CaseResult>> {
    match suite {
        Suite::Selberg => selberg(),
        Suite::Disk => disk(),
        Suite::Ball2 => ball2(),
        Suite::Mc => mc(seed.unwrap_or(DEFAULT_SEED), MC_SAMPLES),
    }
}

pub const SELBERG_DOMAINS: [&str; 7] =
    ["typeIII:2", "typeIII:3", "typeI:2,2", "typeI:2,4", "typeIV:5", "typeV", "typeVI"];

pub fn selberg() -> cartan_core::Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for spec in SELBERG_DOMAINS {
        let d = CartanDomain::parse(spec)?;
        let n = if spec == "typeVI" { 40 } else { 32 };
        for offset in [0.5, 3.0] {
            let lambda = f64::from(d.genus) + offset;
            for m in [0, 1, 2, 4] {
                let chk = rectangular_denominator_check(&d, lambda, m, n)?;
                out.push(CaseResult::new(
                    "selberg",
                    format!("{spec} λ={lambda} m={m} N={n}"),
                    vec![Check::new("rel_error", chk.rel_error, 1e-9)],
                    None,
                ));
            }
        }
    }
    Ok(out)
}

fn disk_symbols() -> cartan_core::Result<Vec<(RadialSymbol, f64)>> {
    Ok(vec![
        (builtin_symbol(Builtin::Const(1.0), 1)?, 1e-8),
        (parse_symbol("x1", 1)?, 1e-8),
        (builtin_symbol(Builtin::BallIndicator(0.5), 1)?, 1e-4),
    ])
}

pub fn disk() -> cartan_core::Result<Vec<CaseResult>> {
    let disk = CartanDomain::parse("typeI:1,1")?;
    let mut out = Vec::new();
    for (psi, tol) in disk_symbols()? {
        for lambda in [2.0, 3.5] {
            let direct = disk_diag(lambda, &psi, 10, 64)?;
            let mut worst = 0.0f64;
            for (k, v) in direct.iter().enumerate() {
                let alpha = MultiIndex::new(vec![k as u32])?;
                let rec = eigenvalue(&disk, lambda, &psi, &alpha, 48)?;
                worst = worst.max((rec.value - v).abs());
            }
            out.push(CaseResult::new(
                "disk",
                format!("ψ={} λ={lambda} k≤10", psi.name()),
                vec![Check::new("max_abs_diff", worst, tol)],
                None,
            ));
        }
    }
    Ok(out)
}

pub fn ball2() -> cartan_core::Result<Vec<CaseResult>> {
    let symbols = [builtin_symbol(Builtin::Const(1.0), 1)?, parse_symbol("x1", 1)?, parse_symbol("x1^2", 1)?];
    let mut out = Vec::new();
    for psi in &symbols {
        for lambda in [3.5, 4.0, 6.0] {
            for degree in 0..=4 {
                let rep = ball2_block(lambda, psi, degree, 64)?;
                let json = serde_json::to_value(BlockReport::from(&rep)).expect("plain data serializes");
                out.push(CaseResult::new(
                    "ball2",
                    format!("ψ={} λ={lambda} degree={degree}", psi.name()),
                    vec![
                        Check::new("diag_spread", rep.diag_spread, 1e-8),
                        Check::new("diag_vs_formula", rep.diag_vs_formula, 1e-6),
                    ],
                    Some(json),
                ));
            }
        }
    }
    Ok(out)
}

pub fn mc(seed: u64, samples: usize) -> cartan_core::Result<Vec<CaseResult>> {
    let cases = [
        (builtin_symbol(Builtin::Const(1.0), 1)?, [1, 0], [0, 1]),
        (parse_symbol("x1", 1)?, [2, 0], [1, 1]),
        (builtin_symbol(Builtin::BallIndicator(0.5), 1)?, [1, 0], [0, 0]),
    ];
    let lambda = 4.0;
    let mut out = Vec::new();
    for (i, (psi, beta, beta_prime)) in cases.into_iter().enumerate() {
        // One independent stream per case keeps cases reorderable.
        let case_seed = seed.wrapping_add(i as u64);
        let rep = monte_carlo_offdiag_smoke(lambda, &psi, &[(beta, beta_prime)], samples, case_seed)?;
        let p = &rep.pairs[0];
        let pair = McPair { beta: p.beta, beta_prime: p.beta_prime, re: p.re, im: p.im, std_err: p.std_err };
        out.push(CaseResult::new(
            "mc",
            format!("ψ={} λ={lambda} β={beta:?} β'={beta_prime:?} samples={samples} seed={case_seed}", psi.name()),
            vec![Check::new("sigmas", p.sigmas(), 3.0)],
            Some(serde_json::to_value(pair).expect("plain data serializes")),
        ));
    }
    Ok(out)
}
