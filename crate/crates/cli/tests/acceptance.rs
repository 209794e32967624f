//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are still run and still print
//! FAIL when they fail; they only stop the process from exiting non-zero.
//! Any other failure fails the target.

use rand::Rng;
use rdyn::expansion::expansion_integral;
use rdyn::hyperbolic::{hyperbolicity_certificate, postcritical_approx, Fate, Status};
use rdyn::lattes::{lattes_map, line_field_residual, repelling_density_probe, semiconjugacy_residual, Lattice};
use rdyn::quad::bifurcation::bifurcation_scan;
use rdyn::quad::challenge::CAVEAT;
use rdyn::quad::mandelbrot::real_slice_scan;
use rdyn::quad::{challenge_report, component_centers, period_transitions, superstable_cascade, window_scan};
use rdyn::rays::{equipotential, piece_diameters, puzzle_build, trace_ray, Angle, PuzzleConfig};
use rdyn::render::{box_dimension, boundary_bitmap, render_julia_escape, Bitmap, Coloring, Viewport, DEFAULT_SCALES};
use rdyn::rng::stream_rng;
use rdyn::{spherical_distance, Complex64, Poly, RationalMap, SpherePoint};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

type C64 = Complex64;
type Check = Result<(bool, String), String>;

/// Criterion 9 asks for 95% coverage of a 50x50 grid by repelling points of
/// period at most 4. A degree-4 map has only 317 such points, so at most
/// 317 of the 2500 cells can be hit.
const KNOWN_UNATTAINABLE: &[usize] = &[9];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn within(limit_secs: u64, t: Duration) -> bool {
    t <= Duration::from_secs(limit_secs)
}

// 1 -------------------------------------------------------------------------
fn expansion_identity() -> Check {
    let mut worst: f64 = 0.0;
    let mut slowest = Duration::ZERO;
    let mut notes = Vec::new();
    for (name, cc) in [("0", c(0.0, 0.0)), ("-1", c(-1.0, 0.0)), ("i", c(0.0, 1.0))] {
        let f = RationalMap::quadratic(cc);
        for n in 1..=3 {
            let t0 = Instant::now();
            let est = expansion_integral(&f, n, 10_000_000, 2024).map_err(|e| e.to_string())?;
            slowest = slowest.max(t0.elapsed());
            let exact = (1u64 << n) as f64;
            let rel = (est - exact).abs() / exact;
            worst = worst.max(rel);
            notes.push(format!("c={name},n={n}:{est:.4}"));
        }
    }
    let ok = worst < 0.02 && within(60, slowest);
    Ok((ok, format!("worst relative error {worst:.4} (< 0.02), slowest run {:.1}s; {}", slowest.as_secs_f64(), notes.join(" "))))
}

// 2 -------------------------------------------------------------------------
fn random_map(k: u64) -> RationalMap {
    let mut rng = stream_rng(0xACCE, k);
    loop {
        let d: usize = rng.random_range(2..=4);
        let mut coeffs = || {
            (0..=d)
                .map(|_| c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                .collect::<Vec<_>>()
        };
        let (p, q) = (coeffs(), coeffs());
        if let Ok(f) = RationalMap::new(Poly::new(p), Poly::new(q)) {
            if f.degree() == d {
                return f;
            }
        }
    }
}

fn attracting_bound() -> Check {
    let t0 = Instant::now();
    let mut worst = 0usize;
    let mut max_seen = 0usize;
    for k in 0..200 {
        let f = random_map(k);
        let cert = hyperbolicity_certificate(&f, 100_000).map_err(|e| e.to_string())?;
        let n = cert.n_attracting + usize::from(cert.infinity_attracts && f.is_polynomial());
        max_seen = max_seen.max(n);
        if n > 2 * f.degree() - 2 {
            worst += 1;
        }
    }
    let t = t0.elapsed();
    Ok((
        worst == 0 && within(300, t),
        format!("{worst} of 200 maps exceed 2d-2 (largest N seen {max_seen}), {:.1}s", t.as_secs_f64()),
    ))
}

// 3 -------------------------------------------------------------------------
fn real_slice() -> Check {
    let t0 = Instant::now();
    let step = 1e-3;
    let scan = real_slice_scan(-2.2, 0.5, step, 10_000);
    let bounded: Vec<f64> = scan.iter().filter(|s| s.1).map(|s| s.0).collect();
    let (lo, hi) = (bounded[0], *bounded.last().unwrap());
    let contiguous = bounded.len() == scan.iter().skip_while(|s| !s.1).take_while(|s| s.1).count();
    let t = t0.elapsed();
    let ok = (lo + 2.0).abs() <= step && (hi - 0.25).abs() <= step && contiguous && within(60, t);
    Ok((ok, format!("bounded set [{lo:.4}, {hi:.4}], contiguous {contiguous}, {:.1}s", t.as_secs_f64())))
}

// 4 -------------------------------------------------------------------------
fn bifurcation_structure() -> Check {
    let t0 = Instant::now();
    let rows = bifurcation_scan(-1.3, -0.6, 1e-3, 200_000, 64);
    let tr = period_transitions(&rows);
    let find = |above: usize, below: usize| tr.iter().find(|t| t.period_above == above && t.period_below == below).map(|t| t.c);
    let (a, b) = (find(1, 2), find(2, 4));
    let t = t0.elapsed();
    let ok = matches!(a, Some(x) if (x + 0.75).abs() <= 1e-3)
        && matches!(b, Some(x) if (x + 1.25).abs() <= 1e-3)
        && within(120, t);
    Ok((ok, format!("1->2 at {a:?} (-0.750), 2->4 at {b:?} (-1.250), {:.1}s", t.as_secs_f64())))
}

// 5 -------------------------------------------------------------------------
fn feigenbaum() -> Check {
    let t0 = Instant::now();
    let r = superstable_cascade(12).map_err(|e| e.to_string())?;
    let deltas_ok = (8..=r.superstable_params.len()).all(|k| r.delta_at(k).is_some_and(|d| (4.6..=4.8).contains(&d)));
    let t = t0.elapsed();
    let ok = r.failed_at.is_none()
        && r.superstable_params.len() == 12
        && (r.accumulation + 1.401155).abs() <= 5e-5
        && deltas_ok
        && within(300, t);
    Ok((
        ok,
        format!(
            "accumulation {:.8} (-1.401155 +- 5e-5), delta_8 {:.4}, delta_12 {:.4}, {:.1}s",
            r.accumulation,
            r.delta_at(8).unwrap_or(f64::NAN),
            r.delta_at(12).unwrap_or(f64::NAN),
            t.as_secs_f64()
        ),
    ))
}

// 6 -------------------------------------------------------------------------
fn period_three_window() -> Check {
    let t0 = Instant::now();
    let windows = window_scan(-1.80, -1.70, 1e-4, 100_000);
    let center = component_centers(3)
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|z| z.im == 0.0)
        .ok_or("no real period-3 center")?
        .re;
    let w = windows.iter().filter(|w| w.period == 3).max_by(|a, b| (a.c_hi - a.c_lo).total_cmp(&(b.c_hi - b.c_lo)));
    let t = t0.elapsed();
    let Some(w) = w else {
        return Ok((false, "no period-3 window found".into()));
    };
    let ok = (w.c_hi + 1.75).abs() <= 2e-4
        && (center + 1.754878).abs() <= 1e-6
        && w.c_lo <= center
        && center <= w.c_hi
        && within(300, t);
    Ok((
        ok,
        format!("window [{:.4}, {:.4}], center {center:.7}, {:.1}s", w.c_lo, w.c_hi, t.as_secs_f64()),
    ))
}

// 7 -------------------------------------------------------------------------
fn yoccoz_puzzle() -> Check {
    let t0 = Instant::now();
    let ci = c(0.0, 1.0);
    // alpha from the quadratic formula: the fixed point of smaller |multiplier|
    let disc = (c(1.0, 0.0) - 4.0 * ci).sqrt();
    let roots = [(1.0 + disc) / 2.0, (1.0 - disc) / 2.0];
    let alpha = *roots.iter().min_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
    if (alpha - c(-0.300243, 0.624810)).norm() > 1e-6 {
        return Err(format!("oracle alpha {alpha} is off"));
    }
    let mut landing_err: f64 = 0.0;
    for k in [1, 2, 4] {
        let ray = trace_ray(ci, Angle::rational(k, 7).unwrap(), 1e-8, 8).map_err(|e| e.to_string())?;
        let z = ray.landing.ok_or(format!("R_{k}/7 has no landing"))?;
        landing_err = landing_err.max((z - alpha).norm());
    }
    let puzzle = puzzle_build(ci, &PuzzleConfig::sevenths(8)).map_err(|e| e.to_string())?;
    let d0 = puzzle.levels[0].len();
    let diams = piece_diameters(&puzzle, c(0.0, 0.0), 8).map_err(|e| e.to_string())?;
    let decreasing = diams.windows(2).all(|w| w[1] < w[0]);
    let ratio = diams[8] / diams[0];
    let t = t0.elapsed();
    let ok = landing_err < 1e-4 && d0 == 3 && decreasing && ratio < 0.25 && within(300, t);
    Ok((
        ok,
        format!(
            "landing error {landing_err:.2e}, depth-0 pieces {d0}, strictly decreasing {decreasing}, final/initial {ratio:.4}, {:.1}s",
            t.as_secs_f64()
        ),
    ))
}

// 8 -------------------------------------------------------------------------
fn ray_dynamics() -> Check {
    let mut worst_ray: f64 = 0.0;
    let mut worst_eq: f64 = 0.0;
    let steps = 8;
    for cc in [c(0.0, 1.0), c(-1.0, 0.0)] {
        for (p, q) in [(0, 1), (1, 7), (2, 7), (4, 7), (1, 3), (1, 5), (3, 10), (5, 12)] {
            let t = Angle::rational(p, q).unwrap();
            let ray = trace_ray(cc, t, 1e-6, steps).map_err(|e| e.to_string())?;
            let image = trace_ray(cc, t.double(), 1e-6, steps).map_err(|e| e.to_string())?;
            for j in steps..ray.vertices.len().min(image.vertices.len() + steps) {
                let v = ray.vertices[j];
                let w = image.vertices[j - steps];
                let d = spherical_distance(SpherePoint::Finite(v * v + cc), SpherePoint::Finite(w));
                worst_ray = worst_ray.max(d);
            }
        }
        let n = 240;
        for level in [0.05, 0.2, 0.6] {
            let a = equipotential(cc, level, n).map_err(|e| e.to_string())?;
            let b = equipotential(cc, 2.0 * level, n).map_err(|e| e.to_string())?;
            if !a.failures.is_empty() || !b.failures.is_empty() {
                return Ok((false, format!("equipotential samples failed at level {level}")));
            }
            for k in 0..n {
                let z = a.points[k];
                let w = b.points[(2 * k) % n];
                worst_eq = worst_eq.max(spherical_distance(SpherePoint::Finite(z * z + cc), SpherePoint::Finite(w)));
            }
        }
    }
    let ok = worst_ray < 1e-6 && worst_eq < 1e-6;
    Ok((ok, format!("rays {worst_ray:.2e}, equipotentials {worst_eq:.2e} (< 1e-6)")))
}

// 9 -------------------------------------------------------------------------
fn lattes_verification() -> Check {
    let t0 = Instant::now();
    let mut worst_s: f64 = 0.0;
    let mut worst_l: f64 = 0.0;
    let mut coverages = Vec::new();
    for tau in [c(0.0, 1.0), c(0.3, 1.2)] {
        let l = Lattice::new(tau).map_err(|e| e.to_string())?;
        let f = lattes_map(2, &l).map_err(|e| e.to_string())?;
        worst_s = worst_s.max(semiconjugacy_residual(&f, 2, &l, 10_000, 9).map_err(|e| e.to_string())?);
        worst_l = worst_l.max(line_field_residual(&f, 2, &l, 10_000, 9).map_err(|e| e.to_string())?);
        coverages.push(repelling_density_probe(&f, 4, 50).map_err(|e| e.to_string())?.coverage);
    }
    let t = t0.elapsed();
    let cov_ok = coverages.iter().all(|&x| x >= 0.95);
    let ok = worst_s < 1e-8 && worst_l < 1e-8 && cov_ok && within(600, t);
    Ok((
        ok,
        format!(
            "semiconjugacy {worst_s:.1e}, line field {worst_l:.1e} (< 1e-8); probe coverage {:.4}, {:.4} (>= 0.95); {:.1}s",
            coverages[0],
            coverages[1],
            t.as_secs_f64()
        ),
    ))
}

// 10 ------------------------------------------------------------------------
fn misiurewicz() -> Check {
    let f = RationalMap::quadratic(c(0.0, 1.0));
    let cert = hyperbolicity_certificate(&f, 1_000_000).map_err(|e| e.to_string())?;
    let pc = postcritical_approx(&f, 64).map_err(|e| e.to_string())?;
    let expect = [c(0.0, 1.0), c(-1.0, 1.0), c(0.0, -1.0)];
    let exact_set = pc.points.len() == 3
        && expect.iter().all(|e| pc.points.iter().any(|p| *p == SpherePoint::Finite(*e)));
    let modulus = cert.fates.iter().find_map(|cf| match &cf.fate {
        Fate::LandsOnNonAttracting(cyc) => Some(cyc.multiplier.norm()),
        _ => None,
    });
    let mod_ok = modulus.is_some_and(|m| (m - 4.0 * 2f64.sqrt()).abs() <= 1e-9);
    let ok = cert.status == Status::NotCertified && exact_set && mod_ok;
    let pts: Vec<String> = pc.points.iter().map(|p| p.to_string()).collect();
    Ok((
        ok,
        format!("status {:?}, postcritical {{{}}}, |multiplier| {modulus:?} (4*sqrt 2)", cert.status, pts.join(", ")),
    ))
}

// 11 ------------------------------------------------------------------------
fn challenge() -> Check {
    let r = challenge_report(-1.99999, 10_000_000);
    let text = r.to_string();
    let lyap = r.lyapunov.unwrap_or(f64::NAN);
    let ok = r.bounded && r.cycle.is_none() && lyap > 0.0 && text.contains(CAVEAT) && text.contains("NOT");
    Ok((ok, format!("bounded {}, cycle {:?}, lyapunov {lyap:.4}, caveat stated", r.bounded, r.cycle.map(|c| c.period))))
}

// 12 ------------------------------------------------------------------------
fn dimension() -> Check {
    let n = 1024;
    let mut seg = Bitmap::empty(n, n);
    for i in 0..n {
        seg.set(i, n / 3);
    }
    let square = Bitmap::new(n, n, vec![true; n * n]).map_err(|e| e.to_string())?;
    let v = Viewport::new(-1.5, 1.5, -1.5, 1.5, n, n).map_err(|e| e.to_string())?;
    let circle = boundary_bitmap(&render_julia_escape(c(0.0, 0.0), &v, 1000, Coloring::Binary));
    let vb = Viewport::new(-2.0, 2.0, -2.0, 2.0, n, n).map_err(|e| e.to_string())?;
    let basilica = boundary_bitmap(&render_julia_escape(c(-1.0, 0.0), &vb, 1000, Coloring::Binary));
    let dim = |b: &Bitmap| box_dimension(b, &DEFAULT_SCALES).map(|d| d.estimate).map_err(|e| e.to_string());
    let (ds, dq, dc, db) = (dim(&seg)?, dim(&square)?, dim(&circle)?, dim(&basilica)?);
    let ok = (ds - 1.0).abs() <= 0.05 && (dq - 2.0).abs() <= 0.05 && (dc - 1.0).abs() <= 0.05 && db > 1.0 && db < 2.0;
    Ok((
        ok,
        format!(
            "segment {ds:.3}, square {dq:.3}, J(z^2) {dc:.3}, basilica {db:.3}; \
             the dimension-two boundary of M is not reproducible at desk scale"
        ),
    ))
}

// 13 ------------------------------------------------------------------------
fn cli_runs() -> Vec<(&'static str, Vec<&'static str>, Vec<&'static str>)> {
    vec![
        ("julia", vec!["julia", "--c", "-1,0", "--size", "128x128", "--out", "j.pgm"], vec!["j.pgm"]),
        (
            "julia inverse",
            vec!["julia", "--c", "-0.12,0.75", "--size", "128x128", "--method", "inverse", "--iters", "200000", "--seed", "5", "--out", "ji.ppm"],
            vec!["ji.ppm"],
        ),
        ("mandel", vec!["mandel", "--size", "140x120", "--iters", "500", "--out", "m.pgm"], vec!["m.pgm"]),
        (
            "bifurcate",
            vec!["bifurcate", "--range", "-2,0.25", "--size", "100x120", "--transient", "500", "--count", "100", "--out", "b.pgm"],
            vec!["b.pgm"],
        ),
        (
            "bifurcate csv",
            vec!["bifurcate", "--range", "-1.5,-0.5", "--size", "20x30", "--transient", "500", "--count", "20", "--out", "b.csv"],
            vec!["b.csv"],
        ),
        ("cascade", vec!["cascade", "--kmax", "9", "--out", "c.csv"], vec!["c.csv"]),
        (
            "windows",
            vec!["windows", "--range", "-1.76,-1.74", "--step", "1e-3", "--budget", "20000", "--out", "w.csv"],
            vec!["w.csv"],
        ),
        ("classify", vec!["classify", "--c", "0,1"], vec![]),
        ("cycles", vec!["cycles", "--c", "-1,0", "--maxperiod", "4"], vec![]),
        ("ray", vec!["ray", "--c", "0,1", "--angle", "1/7", "--gmin", "1e-6", "--out", "r.csv"], vec!["r.csv"]),
        ("puzzle", vec!["puzzle", "--c", "0,1", "--depth", "3", "--out", "p.csv"], vec!["p.csv"]),
        ("lattes", vec!["lattes", "--tau", "0.3,1.2", "--n", "2", "--probe", "--grid", "12", "--maxperiod", "2"], vec![]),
        ("dimension", vec!["dimension", "--in", "j.pgm", "--set", "boundary"], vec![]),
        ("challenge", vec!["challenge", "--budget", "200000"], vec![]),
        ("logview", vec!["logview", "--size", "200x50", "--iters", "500", "--out", "l.pgm"], vec!["l.pgm"]),
        ("expansion", vec!["expansion", "--c", "0,1", "--n", "2", "--samples", "100000", "--seed", "3"], vec![]),
    ]
}

fn run_all(dir: &Path, threads: &str) -> Result<Vec<(String, Vec<u8>)>, String> {
    let exe = env!("CARGO_BIN_EXE_rdyn");
    let mut out = Vec::new();
    for (name, args, files) in cli_runs() {
        let o = Command::new(exe)
            .current_dir(dir)
            .arg("--threads")
            .arg(threads)
            .args(&args)
            .output()
            .map_err(|e| e.to_string())?;
        if !o.status.success() {
            return Err(format!("{name} failed: {}", String::from_utf8_lossy(&o.stderr)));
        }
        out.push((format!("{name} stdout"), o.stdout));
        for f in files {
            out.push((format!("{name} {f}"), std::fs::read(dir.join(f)).map_err(|e| e.to_string())?));
        }
    }
    Ok(out)
}

fn determinism() -> Check {
    let dirs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    let a = run_all(dirs[0].path(), "1")?;
    let b = run_all(dirs[1].path(), "8")?;
    let c = run_all(dirs[2].path(), "8")?;
    let mut diffs = Vec::new();
    for ((x, y), z) in a.iter().zip(&b).zip(&c) {
        if x.1 != y.1 || y.1 != z.1 {
            diffs.push(x.0.clone());
        }
    }
    let n = cli_runs().len();
    Ok((
        diffs.is_empty(),
        if diffs.is_empty() {
            format!("{n} commands, {} outputs identical across --threads 1 / 8 / 8", a.len())
        } else {
            format!("differences in: {}", diffs.join(", "))
        },
    ))
}

fn main() {
    let criteria: Vec<(usize, &str, fn() -> Check)> = vec![
        (1, "expansion identity", expansion_identity),
        (2, "attracting-cycle bound", attracting_bound),
        (3, "real slice", real_slice),
        (4, "bifurcation structure", bifurcation_structure),
        (5, "Feigenbaum accumulation", feigenbaum),
        (6, "period-3 window", period_three_window),
        (7, "Yoccoz puzzle at c = i", yoccoz_puzzle),
        (8, "ray dynamics", ray_dynamics),
        (9, "Lattes verification", lattes_verification),
        (10, "Misiurewicz diagnostic", misiurewicz),
        (11, "challenge question", challenge),
        (12, "dimension calibration", dimension),
        (13, "determinism", determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let t0 = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let tag = if pass { "PASS" } else { "FAIL" };
        let known = !pass && KNOWN_UNATTAINABLE.contains(&id);
        println!(
            "{tag} {id:>2} {name}: {detail}{} [{:.1}s]",
            if known { " (known unattainable)" } else { "" },
            t0.elapsed().as_secs_f64()
        );
        if !pass && !known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
