use proptest::prelude::*;
use rdyn::rays::{alpha_fixed_point, green_dynamical, puzzle_build, Angle, PuzzleConfig, RaySchedule};
use rdyn::{spherical_distance, Complex64, SpherePoint};

type C64 = Complex64;

#[test]
fn sevenths_form_a_doubling_cycle() {
    let t = Angle::rational(1, 7).unwrap();
    assert_eq!(t.double(), Angle::rational(2, 7).unwrap());
    assert_eq!(t.double().double(), Angle::rational(4, 7).unwrap());
    assert_eq!(t.double().double().double(), t);
    assert_eq!(t.orbit_type(), Some((0, 3)));
}

#[test]
fn rays_satisfy_the_functional_equation() {
    for c in [C64::new(0.0, 1.0), C64::new(-1.0, 0.0)] {
        let sched = RaySchedule::anchored(c, std::f64::consts::LN_2, 8).unwrap();
        let j_max = sched.index_of(1e-3);
        for (p, q) in [(1, 7), (1, 3), (0, 1), (5, 12), (3, 10)] {
            let t = Angle::rational(p, q).unwrap();
            let ray = sched.vertices(t, j_max);
            let image = sched.vertices(t.double(), j_max);
            assert!(ray.failure.is_none() && image.failure.is_none());
            let mut worst: f64 = 0.0;
            for j in sched.steps..ray.vertices.len() {
                let v = ray.vertices[j];
                let w = image.vertices[j - sched.steps];
                worst = worst.max(spherical_distance(SpherePoint::Finite(v * v + c), SpherePoint::Finite(w)));
            }
            assert!(worst < 1e-6, "c = {c}, t = {t}: {worst:e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn green_doubles(cr in -2.0f64..0.5, ci in -1.5f64..1.5, r in 2.5f64..10.0, a in 0.0f64..std::f64::consts::TAU) {
        let c = C64::new(cr, ci);
        let z = C64::from_polar(r, a);
        let g = green_dynamical(c, z, 1000).g;
        prop_assume!(g > 0.0);
        let g1 = green_dynamical(c, z * z + c, 1000).g;
        prop_assert!((g1 - 2.0 * g).abs() < 1e-8, "{} vs {}", g1, 2.0 * g);
    }
}

#[test]
fn alpha_is_fixed() {
    for c in [C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(-0.12, 0.75), C64::new(0.2, 0.1)] {
        let a = alpha_fixed_point(c).unwrap();
        let z = a.point;
        assert!((z * z + c - z).norm() < 1e-12);
    }
}

#[test]
fn three_tiles_cover_the_disk() {
    let puzzle = puzzle_build(C64::new(0.0, 1.0), &PuzzleConfig::sevenths(1)).unwrap();
    assert_eq!(puzzle.levels[0].len(), 3);
    let total: f64 = puzzle.levels[0].iter().map(|p| p.area()).sum();
    assert!((total - puzzle.disk_area(0)).abs() < 0.01 * puzzle.disk_area(0));
}
