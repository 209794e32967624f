use proptest::prelude::*;
use rdyn::lattes::{lattes_map, lattice_invariants, line_field_residual, semiconjugacy_residual, Lattice};
use rdyn::Complex64;

type C64 = Complex64;

#[test]
fn degrees_are_n_squared() {
    let l = Lattice::new(C64::new(0.2, 1.1)).unwrap();
    for n in [2u32, 4] {
        assert_eq!(lattes_map(n, &l).unwrap().degree(), (n * n) as usize);
    }
}

#[test]
fn invariants_converge_in_truncation() {
    let i = C64::new(0.0, 1.0);
    let a = lattice_invariants(i, 200).unwrap();
    let b = lattice_invariants(i, 400).unwrap();
    assert!((a.g2 - b.g2).norm() < 1e-9, "{} vs {}", a.g2, b.g2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residuals_on_random_lattices(re in -0.5f64..0.5, im in 0.8f64..2.0, seed in 0u64..1000) {
        let l = Lattice::new(C64::new(re, im)).unwrap();
        let f = lattes_map(2, &l).unwrap();
        prop_assert!(semiconjugacy_residual(&f, 2, &l, 2000, seed).unwrap() < 1e-8);
        prop_assert!(line_field_residual(&f, 2, &l, 2000, seed).unwrap() < 1e-8);
    }

    #[test]
    fn wp_satisfies_its_ode(re in -0.5f64..0.5, im in 0.8f64..2.0, x in 0.05f64..0.45, y in 0.05f64..0.45) {
        let tau = C64::new(re, im);
        let l = Lattice::new(tau).unwrap();
        let z = x + y * tau;
        let (p, _) = l.wp_both(z).unwrap();
        let r = l.ode_residual(z).unwrap();
        prop_assert!(r.norm() < 1e-8, "{} at p={}", r, p);
    }
}
