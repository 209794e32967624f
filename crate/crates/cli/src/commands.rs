//! Subcommand bodies. Each returns the text for stdout; files are written
//! here. Nothing printed depends on the thread count.

use crate::parse::viewport;
use crate::{ColoringArg, Command, Method, OrientationArg, SetArg};
use rdyn::cycles::find_cycles;
use rdyn::expansion::expansion_integral;
use rdyn::hyperbolic::{hyperbolicity_certificate, postcritical_approx, Fate, Status};
use rdyn::lattes::{lattes_map, line_field_residual, repelling_density_probe, semiconjugacy_residual, Lattice};
use rdyn::quad::challenge::period_three_center;
use rdyn::quad::{attractor_sample, challenge_report, superstable_cascade, window_scan};
use rdyn::rays::{piece_diameters, puzzle_build, trace_ray, LandingMethod, PuzzleConfig};
use rdyn::render::{
    box_dimension, boundary_bitmap, csv_string, fmt_real, render_bifurcation, render_julia_escape, render_julia_inverse,
    render_logview, render_mandelbrot, write_text, Bitmap, BifurcationView, Channels, Coloring, Orientation,
    RasterImage,
};
use rdyn::{Complex64, DynError, RationalMap, Result};
use std::fmt::Write as _;
use std::path::Path;

const JULIA_ITERS: usize = 1000;
const INVERSE_POINTS: usize = 1_000_000;
/// Depth of the printed postcritical approximation.
const POSTCRITICAL_DEPTH: usize = 64;

fn coloring(c: ColoringArg) -> Coloring {
    match c {
        ColoringArg::Binary => Coloring::Binary,
        ColoringArg::Bands => Coloring::Bands,
    }
}

fn has_ext(path: &Path, ext: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case(ext))
}

/// Writes a grayscale image as PGM, or as PPM when the path ends in `.ppm`.
fn save(img: RasterImage, path: &Path) -> Result<String> {
    let img = if has_ext(path, "ppm") { to_rgb(img) } else { img };
    img.write(path)?;
    Ok(format!("wrote {} ({}x{})\n", path.display(), img.width, img.height))
}

fn to_rgb(img: RasterImage) -> RasterImage {
    let data = img.data.iter().flat_map(|&v| [v, v, v]).collect();
    RasterImage {
        channels: Channels::Rgb,
        data,
        ..img
    }
}

fn cpx(z: Complex64) -> String {
    format!("{},{}", fmt_real(z.re), fmt_real(z.im))
}

pub fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Julia {
            c,
            view,
            size,
            iters,
            out,
            method,
            seed,
            coloring: col,
        } => {
            let v = viewport(view, size)?;
            let img = match method {
                Method::Escape => render_julia_escape(c, &v, iters.unwrap_or(JULIA_ITERS), coloring(col)),
                Method::Inverse => {
                    render_julia_inverse(&RationalMap::quadratic(c), iters.unwrap_or(INVERSE_POINTS), seed, &v)?
                }
            };
            save(img, &out)
        }
        Command::Mandel {
            view,
            size,
            iters,
            out,
            coloring: col,
        } => save(render_mandelbrot(&viewport(view, size)?, iters, coloring(col)), &out),
        Command::Logview {
            c0,
            view,
            size,
            iters,
            out,
            coloring: col,
        } => save(render_logview(c0, &viewport(view, size)?, iters, coloring(col)), &out),
        Command::Bifurcate {
            range,
            size,
            transient,
            count,
            out,
            xrange,
            orientation,
        } => bifurcate(range, size, transient, count, &out, xrange, orientation),
        Command::Cascade { kmax, out } => cascade(kmax, &out),
        Command::Windows { range, step, out, budget } => {
            if !(step > 0.0) {
                return Err(DynError::InvalidArgument(format!("step must be positive, got {step}")));
            }
            let w = window_scan(range.0, range.1, step, budget);
            let rows: Vec<Vec<f64>> = w.iter().map(|r| vec![r.c_lo, r.c_hi, r.period as f64]).collect();
            let mut text = String::from("c_lo,c_hi,period\n");
            for r in &w {
                writeln!(text, "{},{},{}", fmt_real(r.c_lo), fmt_real(r.c_hi), r.period).unwrap();
            }
            write_text(&out, &text)?;
            Ok(format!("wrote {} ({} windows)\n", out.display(), rows.len()))
        }
        Command::Classify { c, budget } => classify(c, budget),
        Command::Cycles { c, maxperiod } => {
            if maxperiod == 0 {
                return Err(DynError::InvalidArgument("maxperiod must be at least 1".into()));
            }
            let f = RationalMap::quadratic(c);
            let mut s = String::from("period,point,multiplier_re,multiplier_im,abs_multiplier,class\n");
            for cyc in find_cycles(&f, maxperiod)? {
                for p in &cyc.points {
                    writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        cyc.period,
                        p,
                        fmt_real(cyc.multiplier.re),
                        fmt_real(cyc.multiplier.im),
                        fmt_real(cyc.multiplier.norm()),
                        cyc.class.name()
                    )
                    .unwrap();
                }
            }
            Ok(s)
        }
        Command::Ray {
            c,
            angle,
            gmin,
            out,
            steps,
        } => {
            let ray = trace_ray(c, angle, gmin, steps)?;
            write_text(&out, &ray.to_csv())?;
            let mut s = format!("wrote {} ({} vertices)\n", out.display(), ray.vertices.len());
            match (ray.landing, ray.landing_method) {
                (Some(z), Some(m)) => {
                    let how = match m {
                        LandingMethod::Cauchy => "tail converged",
                        LandingMethod::PeriodicRefinement => "periodic refinement",
                    };
                    writeln!(s, "landing {} ({how})", cpx(z)).unwrap();
                }
                _ => s.push_str("landing not established\n"),
            }
            if let Some(f) = ray.failure {
                writeln!(s, "stopped early: {f}").unwrap();
            }
            Ok(s)
        }
        Command::Puzzle {
            c,
            depth,
            out,
            angles,
            z0,
        } => {
            let config = PuzzleConfig {
                angles,
                ..PuzzleConfig::sevenths(depth)
            };
            let p = puzzle_build(c, &config)?;
            write_text(&out, &p.pieces_csv())?;
            let mut s = format!("wrote {}\nalpha {}\n", out.display(), cpx(p.alpha));
            for (d, level) in p.levels.iter().enumerate() {
                writeln!(s, "depth {d}: {} pieces", level.len()).unwrap();
            }
            match piece_diameters(&p, z0, depth) {
                Ok(diams) => {
                    for (d, x) in diams.iter().enumerate() {
                        writeln!(s, "diameter at z0, depth {d}: {}", fmt_real(*x)).unwrap();
                    }
                }
                Err(e) => writeln!(s, "nest at z0 unavailable: {e}").unwrap(),
            }
            Ok(s)
        }
        Command::Lattes {
            tau,
            n,
            probe,
            samples,
            seed,
            grid,
            maxperiod,
        } => lattes(tau, n, probe, samples, seed, grid, maxperiod),
        Command::Dimension { input, scales, set } => {
            let img = RasterImage::read(&input)?;
            let bitmap = match set {
                SetArg::Black => Bitmap::from_black(&img),
                SetArg::Boundary => boundary_bitmap(&img),
            };
            let d = box_dimension(&bitmap, &scales.0)?;
            let mut s = format!("estimate {:.6}\nside,boxes\n", d.estimate);
            for (side, n) in &d.counts {
                writeln!(s, "{side},{n}").unwrap();
            }
            s.push_str(
                "note: box counting on a finite raster is a desk-scale proxy for Hausdorff dimension; \
                 it cannot reproduce the dimension-two result for the boundary of the Mandelbrot set\n",
            );
            Ok(s)
        }
        Command::Challenge { budget, c } => {
            let mut s = format!("{}\n", challenge_report(c, budget));
            let c3 = period_three_center();
            let ctrl = challenge_report(c3, budget.min(100_000));
            match ctrl.cycle {
                Some(cyc) => writeln!(s, "control c = {}: attracting cycle of period {} found", fmt_real(c3), cyc.period),
                None => writeln!(s, "control c = {}: no attracting cycle found", fmt_real(c3)),
            }
            .unwrap();
            Ok(s)
        }
        Command::Expansion { c, n, samples, seed } => {
            if n == 0 {
                return Err(DynError::InvalidArgument("n must be at least 1".into()));
            }
            let est = expansion_integral(&RationalMap::quadratic(c), n, samples, seed)?;
            let exact = (1u64 << n) as f64;
            Ok(format!(
                "estimate {}\nd^n {}\nrelative error {:.6}\n",
                fmt_real(est),
                exact,
                (est - exact).abs() / exact
            ))
        }
    }
}

fn bifurcate(
    range: (f64, f64),
    size: (usize, usize),
    transient: usize,
    count: usize,
    out: &Path,
    xrange: (f64, f64),
    orientation: OrientationArg,
) -> Result<String> {
    let view = BifurcationView {
        x_min: xrange.0,
        x_max: xrange.1,
        orientation: match orientation {
            OrientationArg::Down => Orientation::DecreasingUp,
            OrientationArg::Up => Orientation::IncreasingUp,
        },
        ..BifurcationView::new(range.0, range.1, size.0, size.1)
    };
    if has_ext(out, "csv") {
        let params: Vec<f64> = (0..view.height).map(|j| view.row_param(j)).collect();
        let samples = rdyn::par::map_slice(&params, |&c| attractor_sample(Complex64::new(c, 0.0), transient, count));
        let rows: Vec<Vec<f64>> = samples
            .iter()
            .flat_map(|s| s.points.iter().map(move |z| vec![s.c.re, z.re]))
            .collect();
        write_text(out, &csv_string(&["c", "x"], &rows))?;
        return Ok(format!("wrote {} ({} rows)\n", out.display(), rows.len()));
    }
    save(render_bifurcation(&view, transient, count), out)
}

fn cascade(kmax: usize, out: &Path) -> Result<String> {
    let r = superstable_cascade(kmax)?;
    let mut text = String::from("k,s_k,delta_k\n");
    for (i, s) in r.superstable_params.iter().enumerate() {
        let k = i + 1;
        let delta = r.delta_at(k).map(fmt_real).unwrap_or_default();
        writeln!(text, "{k},{},{delta}", fmt_real(*s)).unwrap();
    }
    write_text(out, &text)?;
    let mut s = format!("wrote {}\naccumulation {}\n", out.display(), fmt_real(r.accumulation));
    if let Some(k) = r.failed_at {
        writeln!(s, "bracketing failed at level {k}").unwrap();
    }
    Ok(s)
}

fn classify(c: Complex64, budget: usize) -> Result<String> {
    let f = RationalMap::quadratic(c);
    let cert = hyperbolicity_certificate(&f, budget)?;
    let mut s = String::new();
    let status = match cert.status {
        Status::Hyperbolic => "hyperbolic",
        Status::NotCertified => "not certified",
    };
    writeln!(s, "status {status}").unwrap();
    writeln!(s, "attracting cycles (finite) {}", cert.n_attracting).unwrap();
    writeln!(s, "infinity attracts {}", cert.infinity_attracts).unwrap();
    for a in &cert.attractors {
        writeln!(
            s,
            "attractor period {} multiplier {} |multiplier| {} ({})",
            a.period,
            cpx(a.multiplier),
            fmt_real(a.multiplier.norm()),
            a.class.name()
        )
        .unwrap();
    }
    for cf in &cert.fates {
        let fate = match &cf.fate {
            Fate::Attracted(cyc) => format!("attracted to period-{} cycle", cyc.period),
            Fate::Infinity => "escapes to infinity".to_string(),
            Fate::LandsOnNonAttracting(cyc) => format!(
                "lands on {} period-{} cycle, |multiplier| {}",
                cyc.class.name(),
                cyc.period,
                fmt_real(cyc.multiplier.norm())
            ),
            Fate::Unresolved(why) => format!("unresolved: {why}"),
        };
        writeln!(s, "critical point {} (multiplicity {}): {fate}", cf.point, cf.multiplicity).unwrap();
    }
    let pc = postcritical_approx(&f, POSTCRITICAL_DEPTH)?;
    let pts: Vec<String> = pc.points.iter().map(|p| p.to_string()).collect();
    writeln!(s, "postcritical set (depth {}) {{{}}}", pc.depth, pts.join(", ")).unwrap();
    Ok(s)
}

fn lattes(tau: Complex64, n: u32, probe: bool, samples: usize, seed: u64, grid: usize, maxperiod: usize) -> Result<String> {
    let l = Lattice::new(tau)?;
    let f = lattes_map(n, &l)?;
    let mut s = String::new();
    writeln!(s, "g2 {}\ng3 {}", cpx(l.g2), cpx(l.g3)).unwrap();
    writeln!(s, "degree {}", f.degree()).unwrap();
    let sc = semiconjugacy_residual(&f, n, &l, samples, seed)?;
    let lf = line_field_residual(&f, n, &l, samples, seed)?;
    writeln!(s, "semiconjugacy residual {sc:e}").unwrap();
    writeln!(s, "line field residual {lf:e}").unwrap();
    if probe {
        let p = repelling_density_probe(&f, maxperiod, grid)?;
        writeln!(
            s,
            "probe coverage {:.6} ({}/{} cells, {} repelling points, periods <= {maxperiod})",
            p.coverage, p.covered, p.cells, p.repelling_points
        )
        .unwrap();
        if !p.failed_periods.is_empty() {
            writeln!(s, "probe cycle search failed at periods {:?}", p.failed_periods).unwrap();
        }
    }
    Ok(s)
}
