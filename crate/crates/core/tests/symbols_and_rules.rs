use cartan_core::quadrature::{exact_nodes, AxisRule};
use cartan_core::special::log_beta;
use cartan_core::{
    builtin_symbol, check_symmetric, eigenvalue, jacobi_rule, parse_symbol, Builtin, CartanDomain, MultiIndex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn parsed_and_builtin_symbols_agree() {
    let cases: &[(&str, Builtin, usize)] = &[
        ("x1 + x2 + x3", Builtin::PowerSum(1), 3),
        ("x1^3 + x2^3", Builtin::PowerSum(3), 2),
        ("x1*x2 + x1*x3 + x2*x3", Builtin::Elementary(2), 3),
        ("x1*x2*x3", Builtin::Elementary(3), 3),
        ("x1*x2*x3", Builtin::DetPower(1.0), 3),
        ("pow(x1*x2, 0.5)", Builtin::DetPower(0.5), 2),
        ("sqrt(x1)", Builtin::DetPower(0.5), 1),
        ("2.5", Builtin::Const(2.5), 4),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(text, kind, r) in cases {
        let parsed = parse_symbol(text, r).unwrap();
        let built = builtin_symbol(kind, r).unwrap();
        for _ in 0..1000 {
            let x: Vec<f64> = (0..r).map(|_| rng.random::<f64>()).collect();
            let (p, b) = (parsed.eval(&x), built.eval(&x));
            assert!((p - b).abs() <= 1e-14 * (1.0 + b.abs()), "{text} at {x:?}: {p} vs {b}");
        }
    }
}

#[test]
fn ball_indicator_is_a_symmetric_step() {
    let ind = builtin_symbol(Builtin::BallIndicator(0.3), 2).unwrap();
    assert_eq!(ind.breakpoints(), &[0.3]);
    assert_eq!(ind.eval(&[0.1, 0.29]), 1.0);
    assert_eq!(ind.eval(&[0.31, 0.0]), 0.0);
    assert!(check_symmetric(&ind, 64, 0.0));
}

#[test]
fn asymmetric_and_mismatched_symbols_are_rejected() {
    let d = CartanDomain::parse("typeIII:2").unwrap();
    let alpha = MultiIndex::new(vec![1, 0]).unwrap();
    let skew = parse_symbol("x2", 2).unwrap();
    assert!(matches!(eigenvalue(&d, 4.0, &skew, &alpha, 8), Err(cartan_core::Error::AsymmetricSymbol(_))));
    let wrong = parse_symbol("x1", 1).unwrap();
    assert!(matches!(
        eigenvalue(&d, 4.0, &wrong, &alpha, 8),
        Err(cartan_core::Error::ArityMismatch { expected: 2, found: 1 })
    ));
    let ok = parse_symbol("x1 + x2", 2).unwrap();
    assert!(matches!(eigenvalue(&d, 2.0, &ok, &alpha, 8), Err(cartan_core::Error::WeightOutOfRange { .. })));
}

#[test]
fn jacobi_rules_in_the_singular_regime() {
    // Exponents close to -1 concentrate mass at the ends; moments still hold.
    for (kappa, mu) in [(-0.9, 0.0), (0.0, -0.95), (-0.99, -0.99), (25.0, 0.5), (0.5, 60.0)] {
        let rule = jacobi_rule(12, kappa, mu).unwrap();
        for k in 0..24 {
            let got = rule.integrate(|x| x.powi(k));
            let want = log_beta(kappa + f64::from(k) + 1.0, mu + 1.0).unwrap().exp();
            assert!((got - want).abs() <= 1e-12 * want, "κ={kappa} μ={mu} k={k}: {got} vs {want}");
        }
    }
}

#[test]
fn split_axis_integrates_a_step() {
    // ∫₀^c x^κ (1-x)^μ dx through a breakpoint at c, checked against the
    // closed form for integer exponents.
    let (kappa, mu, c) = (2.0, 1.0, 0.4);
    let axis = AxisRule::new(16, kappa, mu, &[c]).unwrap();
    let got: f64 = axis.nodes.iter().zip(&axis.weights).filter(|(x, _)| **x < c).map(|(_, w)| w).sum();
    let want = c.powi(3) / 3.0 - c.powi(4) / 4.0;
    assert!((got - want).abs() < 1e-15, "{got} vs {want}");
}

#[test]
fn refinement_is_stable_for_polynomial_symbols() {
    let psi = builtin_symbol(Builtin::PowerSum(3), 3).unwrap();
    for spec in ["typeIII:3", "typeI:3,4", "typeVI"] {
        let d = CartanDomain::parse(spec).unwrap();
        let alpha = MultiIndex::new(vec![2, 1, 1]).unwrap();
        let n = exact_nodes(&d, alpha.parts(), 3);
        let lambda = f64::from(d.genus) + 0.75;
        let a = eigenvalue(&d, lambda, &psi, &alpha, n).unwrap();
        let b = eigenvalue(&d, lambda, &psi, &alpha, 2 * n).unwrap();
        assert!((a.value - b.value).abs() < 1e-12, "{spec}: {} vs {}", a.value, b.value);
        assert!(a.err_estimate < 1e-12, "{spec}: {}", a.err_estimate);
    }
}
