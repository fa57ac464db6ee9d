mod common;

use common::Scalars;
use kgs::functional::{EnergyParams, Functional};
use kgs::graph::families;
use kgs::space::ProblemKind;
use proptest::prelude::*;
use rand::Rng;

fn random_instance(seed: u64) -> (kgs::graph::WeightedGraph, EnergyParams) {
    let mut rng = families::rng(seed);
    let n = rng.random_range(4..30);
    let a = rng.random_range(0.2..3.0);
    let b = rng.random_range(0.0..2.0);
    let lambda = rng.random_range(-2.0..2.0);
    let eta = rng.random_range(0.0..10.0);
    if rng.random_bool(0.5) {
        let (g, dom) = families::random_dirichlet(n, rng.random_range(1..n), seed);
        (
            g,
            EnergyParams::new(a, b, lambda, eta, ProblemKind::Dirichlet(dom)).unwrap(),
        )
    } else {
        let g = families::random_whole_graph(n, seed);
        (
            g,
            EnergyParams::new(a, b, lambda, eta, ProblemKind::WholeGraph).unwrap(),
        )
    }
}

fn admissible(p: &EnergyParams, n: usize, rng: &mut impl Rng) -> kgs::graph::GraphFunction {
    match &p.kind {
        ProblemKind::Dirichlet(dom) => families::random_admissible(dom, rng),
        ProblemKind::WholeGraph => families::random_function(n, rng),
    }
}

fn domain(p: &EnergyParams) -> Option<&kgs::graph::Domain> {
    match &p.kind {
        ProblemKind::Dirichlet(d) => Some(d),
        ProblemKind::WholeGraph => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn energy_and_residual_match_edge_sums(seed in any::<u64>()) {
        let (g, p) = random_instance(seed);
        let f = Functional::new(&g, &p).unwrap();
        let s = Scalars { a: p.a, b: p.b, lambda: p.lambda, eta: p.eta };
        let mut rng = families::rng(seed ^ 7);
        let u = admissible(&p, g.len(), &mut rng);
        let e = f.energy(&u).unwrap();
        prop_assert!(common::rel_err(e, common::energy(&g, domain(&p), &s, u.values())) <= 1e-11);
        let r = f.residual(&u).unwrap();
        for (x, expect) in common::residual(&g, domain(&p), &s, u.values()) {
            prop_assert!((r[x] - expect).abs() <= 1e-11 * (1.0 + expect.abs()));
        }
    }

    #[test]
    fn split_pairing_and_quarter_identities(seed in any::<u64>()) {
        let (g, p) = random_instance(seed);
        let f = Functional::new(&g, &p).unwrap();
        let mut rng = families::rng(seed ^ 11);
        let u = admissible(&p, g.len(), &mut rng);
        let s = f.splits(&u).unwrap();
        let e = f.energy(&u).unwrap();
        prop_assert_eq!(e, 0.5 * s.i_lambda + 0.25 * s.i_eta);
        let duu = f.d_energy(&u, &u).unwrap();
        let scale = s.i_lambda.abs() + s.i_eta.abs() + p.lambda.abs() * s.l2_sq + p.eta * s.l4_pow4 + 1.0;
        prop_assert!((duu - (s.i_lambda + s.i_eta)).abs() <= 1e-12 * scale);
        prop_assert!((e - 0.25 * duu - 0.25 * s.i_lambda).abs() <= 1e-12 * scale);
    }

    #[test]
    fn weak_form_is_mu_pairing_with_residual(seed in any::<u64>()) {
        let (g, p) = random_instance(seed);
        let f = Functional::new(&g, &p).unwrap();
        let mut rng = families::rng(seed ^ 13);
        let u = admissible(&p, g.len(), &mut rng);
        let r = f.grad_vector(&u).unwrap();
        for i in 0..f.space().dim() {
            let e = f.space().spike(i);
            let x = f.space().free()[i];
            let weak = f.d_energy(&u, &e).unwrap();
            prop_assert!((weak - g.measure()[x] * r[x]).abs() <= 1e-11 * (1.0 + weak.abs()));
        }
    }
}

/// Central differences at ε = 1e-5 against the analytic derivative.
#[test]
fn finite_differences_match_derivative() {
    let eps = 1e-5;
    let mut worst = 0.0_f64;
    for seed in 0..100u64 {
        let (g, p) = random_instance(1000 + seed);
        let f = Functional::new(&g, &p).unwrap();
        let mut rng = families::rng(seed);
        let u = admissible(&p, g.len(), &mut rng);
        let v = admissible(&p, g.len(), &mut rng);
        let analytic = f.d_energy(&u, &v).unwrap();
        let plus = f.energy(&u.add_scaled(eps, &v)).unwrap();
        let minus = f.energy(&u.add_scaled(-eps, &v)).unwrap();
        let fd = (plus - minus) / (2.0 * eps);
        worst = worst.max(common::rel_err(fd, analytic));
    }
    assert!(worst <= 1e-6, "worst relative error {worst}");
}
