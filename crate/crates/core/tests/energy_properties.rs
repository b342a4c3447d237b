use std::f64::consts::PI;

use approx::assert_relative_eq;
use casimir_core::energy::polylog_node_value;
use casimir_core::{
    energy_ratio, energy_ratio_polylog, energy_ratio_quadrature, ideal_stack_ratio, li4, log_grid,
    sweep, Material, Method, MethodChoice, QuadratureSpec, Slot, StackSpec, StackTemplate,
};
use num_complex::Complex64;
use proptest::prelude::*;

const GRAPHENE: f64 = casimir_core::GRAPHENE_SIGMA;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn li4r(x: f64) -> f64 {
    li4(Complex64::new(x, 0.0)).unwrap().re
}

#[test]
fn two_plate_node_matches_closed_form() {
    for sigma in [0.01, GRAPHENE, 1.0, 40.0] {
        let m = Material::conductivity(sigma).unwrap();
        let stack = StackSpec::uniform(vec![m, m]).unwrap();
        for t in [0.03, 0.2, 0.5, 0.9, 1.0] {
            let tm = sigma / (sigma + 2.0 * t);
            let te = sigma / (sigma + 2.0 / t);
            let expect = 45.0 / PI.powi(4) * (li4r(tm * tm) + li4r(te * te));
            assert_relative_eq!(polylog_node_value(&stack, t).unwrap(), expect, max_relative = 1e-12);
        }
    }
}

#[test]
fn three_plate_node_matches_quadratic_roots() {
    for sigma in [GRAPHENE, 0.5, 7.0] {
        let m = Material::conductivity(sigma).unwrap();
        let stack = StackSpec::uniform(vec![m; 3]).unwrap();
        for t in [0.05, 0.3, 0.77, 1.0] {
            let mut expect = 0.0;
            for r in [sigma / (sigma + 2.0 * t), -sigma * t / (sigma * t + 2.0)] {
                let tr = 1.0 - r.abs();
                let a = -2.0 * r * r;
                let b = r.powi(4) - r * r * tr * tr;
                let root = (a * a - 4.0 * b).sqrt();
                expect += li4r(2.0 * b / (root - a)) + li4r(-2.0 * b / (root + a));
            }
            expect *= 45.0 / PI.powi(4);
            assert_relative_eq!(polylog_node_value(&stack, t).unwrap(), expect, max_relative = 1e-11);
        }
    }
}

#[test]
fn ideal_stacks_by_quadrature() {
    use Material::{PerfectElectric as PE, PerfectMagnetic as PM};
    for plates in [vec![PM, PE, PE, PE], vec![PE, PM, PE, PE], vec![PE, PE, PM, PM, PE]] {
        let stack = StackSpec::uniform(plates).unwrap();
        let exact = ideal_stack_ratio(&stack).unwrap();
        let q = energy_ratio_quadrature(&stack, &spec()).unwrap();
        assert!((q.ratio - *exact.numer() as f64 / *exact.denom() as f64).abs() < 1e-6);
    }
}

#[test]
fn opaque_stacks_are_pairwise_additive() {
    use Material::{PerfectElectric as PE, PerfectMagnetic as PM};
    // a pair at gap g scales as 1/g³
    let plates = vec![PE, PM, PM, PE];
    let gaps = vec![0.7, 1.3, 2.1];
    let stack = StackSpec::new(plates.clone(), gaps.clone()).unwrap();
    let mut pairwise = 0.0;
    for (pair, g) in plates.windows(2).zip(&gaps) {
        let unit = if pair[0] == pair[1] { 1.0 } else { -0.875 };
        pairwise += unit / g.powi(3);
    }
    let q = energy_ratio_quadrature(&stack, &spec()).unwrap();
    assert!((q.ratio - pairwise).abs() < 1e-8, "{} vs {pairwise}", q.ratio);
}

#[test]
fn reversal_invariance_with_uneven_gaps() {
    let stack = StackSpec::new(
        vec![
            Material::graphene(),
            Material::PerfectMagnetic,
            Material::conductivity(3.0).unwrap(),
            Material::delta_plate(2.0, 0.0).unwrap(),
        ],
        vec![0.5, 1.7, 0.9],
    )
    .unwrap();
    let forward = energy_ratio_quadrature(&stack, &spec()).unwrap().ratio;
    let backward = energy_ratio_quadrature(&stack.reversed(), &spec()).unwrap().ratio;
    assert!((forward - backward).abs() < 1e-8);
}

#[test]
fn opposite_sign_pairs_repel() {
    let pe_pm = StackSpec::uniform(vec![Material::PerfectElectric, Material::PerfectMagnetic]).unwrap();
    assert!(energy_ratio(&pe_pm, MethodChoice::Auto, &spec()).unwrap().ratio < 0.0);
    for sigma in log_grid(1e-2, 1e3, 12).unwrap() {
        let stack = StackSpec::uniform(vec![Material::PerfectMagnetic, Material::conductivity(sigma).unwrap()]).unwrap();
        let r = energy_ratio(&stack, MethodChoice::Auto, &spec()).unwrap();
        assert!(r.ratio < 0.0, "sigma {sigma}: {}", r.ratio);
    }
}

#[test]
fn equal_sigma_stacks_grow_with_sigma() {
    let grid = [1e-2, 1e-1, 1.0, 10.0, 100.0];
    for n in 2..=4 {
        let template = StackTemplate::uniform(vec![Slot::FreeSigma; n]).unwrap();
        let rows = sweep(&template, &grid, MethodChoice::Auto, &spec()).unwrap();
        assert!(rows.windows(2).all(|w| w[1].result.ratio > w[0].result.ratio));
    }
}

#[test]
fn generic_plates_route_to_quadrature() {
    let stack = StackSpec::uniform(vec![Material::delta_plate(1.5, 0.5).unwrap(), Material::graphene()]).unwrap();
    let auto = energy_ratio(&stack, MethodChoice::Auto, &spec()).unwrap();
    assert_eq!(auto.method, Method::Quadrature);
    assert_eq!(auto, energy_ratio_quadrature(&stack, &spec()).unwrap());
}

#[test]
fn transparent_stack_has_no_energy() {
    let template = StackTemplate::uniform(vec![Slot::FreeSigma; 3]).unwrap();
    let rows = sweep(&template, &[0.0, 1e-3], MethodChoice::Quadrature, &spec()).unwrap();
    assert_eq!(rows[0].result.ratio, 0.0);
    assert!(rows[1].result.ratio > 0.0);
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let template = StackTemplate::uniform(vec![
        Slot::Fixed(Material::PerfectMagnetic),
        Slot::FreeSigma,
        Slot::FreeSigma,
    ])
    .unwrap();
    let grid = log_grid(1e-2, 1e3, 16).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sweep(&template, &grid, MethodChoice::Auto, &spec()).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.len(), grid.len());
    for (a, b) in one.iter().zip(&four) {
        assert_eq!(a.sigma.to_bits(), b.sigma.to_bits());
        assert_eq!(a.result.ratio.to_bits(), b.result.ratio.to_bits());
        assert_eq!(a.result.error_estimate.to_bits(), b.result.error_estimate.to_bits());
    }
}

fn material() -> impl Strategy<Value = Material> {
    prop_oneof![
        Just(Material::PerfectElectric),
        Just(Material::PerfectMagnetic),
        (-2.0f64..3.0).prop_map(|e| Material::conductivity(10f64.powf(e)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polylog_is_reversal_invariant(plates in prop::collection::vec(material(), 2..=6)) {
        let stack = StackSpec::uniform(plates).unwrap();
        let a = energy_ratio_polylog(&stack, &spec()).unwrap();
        let b = energy_ratio_polylog(&stack.reversed(), &spec()).unwrap();
        prop_assert!((a.ratio - b.ratio).abs() < 1e-8);
        prop_assert!((a.per_plate * stack.plate_count() as f64 - a.ratio).abs() <= 1e-15 * a.ratio.abs());
        prop_assert!(a.error_estimate >= 0.0);
    }

    #[test]
    fn paths_agree_on_small_stacks(plates in prop::collection::vec(material(), 2..=4)) {
        let stack = StackSpec::uniform(plates).unwrap();
        let p = energy_ratio_polylog(&stack, &spec()).unwrap();
        let q = energy_ratio_quadrature(&stack, &spec()).unwrap();
        prop_assert!((p.ratio - q.ratio).abs() < 1e-6);
    }
}
