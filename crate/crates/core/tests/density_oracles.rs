//! Density integrals against oracles that do not share code with the
//! quadrature engine: term-by-term monomial expansion for even `a`, Aomoto's
//! extension of the Selberg integral for signatures `(1,…,1,0,…,0)`, and the
//! volume ratio of the weighted measure.

use std::collections::BTreeMap;

use cartan_core::quadrature::{radial_density_integral_with, DensityMethod};
use cartan_core::special::{log_beta, selberg_integral_log, weighted_volume_constant};
use cartan_core::{builtin_symbol, radial_density_integral, Builtin, CartanDomain};

type Poly = BTreeMap<Vec<u32>, f64>;

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            *out.entry(e).or_insert(0.0) += c1 * c2;
        }
    }
    out
}

fn one(r: usize) -> Poly {
    Poly::from([(vec![0; r], 1.0)])
}

fn binom(n: u32, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * f64::from(n + 1 - i) / f64::from(i))
}

/// `∏_{j<k} (x_j - x_k)^a` for even `a`, expanded.
fn vandermonde_power(r: usize, a: u32) -> Poly {
    let mut acc = one(r);
    for j in 0..r {
        for k in j + 1..r {
            let mut factor = Poly::new();
            for i in 0..=a {
                let mut e = vec![0; r];
                e[j] = i;
                e[k] = a - i;
                let sign = if (a - i).is_multiple_of(2) { 1.0 } else { -1.0 };
                factor.insert(e, sign * binom(a, i));
            }
            acc = mul(&acc, &factor);
        }
    }
    acc
}

fn power_sum(r: usize, m: u32) -> Poly {
    let mut p = Poly::new();
    for j in 0..r {
        let mut e = vec![0; r];
        e[j] = m;
        *p.entry(e).or_insert(0.0) += 1.0;
    }
    p
}

/// `∫ poly(x) ∏ x_j^{κ_j} (1-x_j)^μ dx` term by term.
fn integrate_poly(poly: &Poly, kappas: &[f64], mu: f64) -> f64 {
    poly.iter()
        .map(|(e, c)| {
            let log: f64 =
                e.iter().zip(kappas).map(|(&ej, &k)| log_beta(f64::from(ej) + k + 1.0, mu + 1.0).unwrap()).sum();
            c * log.exp()
        })
        .sum()
}

fn kappas(d: &CartanDomain, alpha: &[u32]) -> Vec<f64> {
    alpha.iter().map(|&a| f64::from(a + d.b)).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn quarter_plane_example() {
    // r=2, a=2, b=0, μ=0, α=(1,0): ∫∫ x₁(x₁-x₂)² = 1/4 - 1/3 + 1/6
    let d = CartanDomain::parse("typeI:2,2").unwrap();
    let got = radial_density_integral(&d, f64::from(d.genus), &[1, 0], None, 8).unwrap();
    assert!(rel(got, 1.0 / 12.0) < 1e-14, "{got}");
    let v = vandermonde_power(2, 2);
    let oracle = integrate_poly(&v, &[1.0, 0.0], 0.0);
    assert!(rel(oracle, 1.0 / 12.0) < 1e-15);
}

#[test]
fn even_multiplicity_against_monomial_expansion() {
    let cases: &[(&str, f64, &[u32])] = &[
        ("typeI:2,2", 0.5, &[3, 1]),
        ("typeI:2,3", 2.25, &[2, 0]),
        ("typeI:3,3", 1.5, &[2, 1, 0]),
        ("typeII:5", 0.75, &[4, 2]),
        ("typeV", 1.0, &[1, 0]),
    ];
    for &(spec, offset, alpha) in cases {
        let d = CartanDomain::parse(spec).unwrap();
        let lambda = f64::from(d.genus) + offset;
        let mu = lambda - f64::from(d.genus);
        let v = vandermonde_power(d.rank(), d.a);
        let k = kappas(&d, alpha);
        let den = integrate_poly(&v, &k, mu);
        let num = integrate_poly(&mul(&v, &power_sum(d.rank(), 2)), &k, mu);
        let psi = builtin_symbol(Builtin::PowerSum(2), d.rank()).unwrap();
        let got_den = radial_density_integral(&d, lambda, alpha, None, 40).unwrap();
        let got_num = radial_density_integral(&d, lambda, alpha, Some(&psi), 40).unwrap();
        assert!(rel(got_den, den) < 1e-11, "{spec} den {got_den} vs {den}");
        assert!(rel(got_num, num) < 1e-11, "{spec} num {got_num} vs {num}");
    }
}

/// `∫ x₁⋯x_k · Selberg integrand = S_r ∏_{i=1}^k (α₀ + (r-i)γ) / (α₀ + β₀ + (2r-i-1)γ)`.
fn aomoto(r: u32, k: u32, alpha0: f64, beta0: f64, gamma: f64) -> f64 {
    let mut log = selberg_integral_log(r, alpha0, beta0, gamma).unwrap();
    for i in 1..=k {
        let i = f64::from(i);
        let rf = f64::from(r);
        log += (alpha0 + (rf - i) * gamma).ln() - (alpha0 + beta0 + (2.0 * rf - i - 1.0) * gamma).ln();
    }
    log.exp()
}

#[test]
fn step_signatures_against_aomoto() {
    // Expanding the Vandermonde power cancels too badly for typeVI (degree 24
    // with binomial(8, 4) coefficients), so the large cases live here.
    for spec in ["typeIII:2", "typeIII:3", "typeIV:5", "typeIV:7", "typeIII:4", "typeV", "typeVI"] {
        let d = CartanDomain::parse(spec).unwrap();
        let r = d.rank;
        for offset in [0.5, 3.0] {
            let lambda = f64::from(d.genus) + offset;
            let alpha0 = f64::from(d.b + 1);
            let beta0 = lambda - f64::from(d.genus) + 1.0;
            let gamma = f64::from(d.a) / 2.0;
            for k in 0..=r {
                let alpha: Vec<u32> = (0..r).map(|j| u32::from(j < k)).collect();
                let got = radial_density_integral(&d, lambda, &alpha, None, 32).unwrap();
                let want = aomoto(r, k, alpha0, beta0, gamma);
                assert!(rel(got, want) < 1e-10, "{spec} λ={lambda} k={k}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn tensor_and_chambers_agree_for_even_a() {
    let psi2 = builtin_symbol(Builtin::Elementary(2), 2).unwrap();
    let psi3 = builtin_symbol(Builtin::PowerSum(3), 3).unwrap();
    let cases = [("typeI:2,3", &psi2, vec![3, 1]), ("typeII:5", &psi2, vec![2, 2]), ("typeVI", &psi3, vec![2, 1, 0])];
    for (spec, psi, alpha) in cases {
        let d = CartanDomain::parse(spec).unwrap();
        let lambda = f64::from(d.genus) + 1.25;
        let t = radial_density_integral_with(DensityMethod::Tensor, &d, lambda, &alpha, Some(psi), 40).unwrap();
        let c =
            radial_density_integral_with(DensityMethod::OrderedChambers, &d, lambda, &alpha, Some(psi), 40).unwrap();
        assert!(rel(c, t) < 1e-11, "{spec}: tensor {t} chambers {c}");
    }
}

#[test]
fn chambers_beat_tensor_for_odd_a() {
    // The tensor layout sees the kink of |x₁ - x₂| and converges slowly.
    let d = CartanDomain::parse("typeIII:2").unwrap();
    let lambda = 4.0;
    let want = (selberg_integral_log(2, 1.0, 2.0, 0.5).unwrap()).exp();
    let c = radial_density_integral_with(DensityMethod::OrderedChambers, &d, lambda, &[0, 0], None, 16).unwrap();
    let t = radial_density_integral_with(DensityMethod::Tensor, &d, lambda, &[0, 0], None, 16).unwrap();
    assert!(rel(c, want) < 1e-13);
    assert!(rel(t, want) > 1e-6);
}

#[test]
fn volume_constant_ratio_matches_density() {
    // c_λ ∫_D h^{λ-p} = 1 and the K-part of the integral does not depend on
    // λ, so c_{λ+1} / c_λ equals the ratio of the reduced density integrals.
    for spec in ["typeIII:1", "typeI:1,3", "typeI:2,3", "typeIII:3", "typeIV:5", "typeII:4", "typeV"] {
        let d = CartanDomain::parse(spec).unwrap();
        let zero = vec![0; d.rank()];
        for offset in [0.3, 2.0] {
            let lambda = f64::from(d.genus) - 1.0 + offset;
            let c0 = weighted_volume_constant(&d, lambda).unwrap().value_log;
            let c1 = weighted_volume_constant(&d, lambda + 1.0).unwrap().value_log;
            let i0 = radial_density_integral(&d, lambda, &zero, None, 40).unwrap();
            let i1 = radial_density_integral(&d, lambda + 1.0, &zero, None, 40).unwrap();
            let got = i0 / i1;
            let want = (c1 - c0).exp();
            assert!(rel(got, want) < 1e-10, "{spec} λ={lambda}: {got} vs {want}");
        }
    }
}

#[test]
fn permuted_exponents_give_the_same_integral() {
    let d = CartanDomain::parse("typeIII:3").unwrap();
    let psi = builtin_symbol(Builtin::Elementary(2), 3).unwrap();
    let base = radial_density_integral(&d, 5.5, &[3, 1, 0], Some(&psi), 24).unwrap();
    for perm in [[1, 3, 0], [0, 1, 3], [3, 0, 1], [1, 0, 3], [0, 3, 1]] {
        let v = radial_density_integral(&d, 5.5, &perm, Some(&psi), 24).unwrap();
        assert!(rel(v, base) < 1e-12, "{perm:?}: {v} vs {base}");
    }
}
