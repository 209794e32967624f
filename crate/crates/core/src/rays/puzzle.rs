//! Yoccoz puzzle pieces cut out by rays landing at `α` and its preimages.
//!
//! At depth `d` the boundary angles are `A_d = {t : 2^d t ∈ A_0}` and the
//! pieces live inside the equipotential `G = level / 2^d`. The equipotential
//! circle is split by `A_d` into arcs; walking an arc counterclockwise, then
//! down its end ray to the landing point and back out along the previous ray
//! (cyclically) landing there, traces one face. The faces are the pieces.

use super::angle::Angle;
use super::trace::{pull_back_checked, trace_with, RayPolyline, RaySchedule, DEFAULT_STEPS_PER_HALVING, LANDING_TOL};
use crate::error::{DynError, Result};
use crate::par::map_slice;
use crate::render::fmt_real;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::HashMap;

type C64 = Complex64;

/// Points closer than this to a piece boundary cannot be located.
pub const BOUNDARY_BAND: f64 = 1e-7;
/// Landing points closer than this are treated as one point.
const SAME_LANDING_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct PuzzleConfig {
    /// Angles of the rays landing at `α`, closed under doubling.
    pub angles: Vec<Angle>,
    /// Potential of the depth-0 equipotential.
    pub level: f64,
    pub depth_max: usize,
    pub steps: usize,
    /// Potential down to which rays are traced.
    pub g_min: f64,
    /// Equipotential samples per full turn at depth 0 (doubled each depth).
    pub arc_samples: usize,
}

impl PuzzleConfig {
    /// Rays `1/7, 2/7, 4/7` and the equipotential `G = log 2`.
    pub fn sevenths(depth_max: usize) -> PuzzleConfig {
        PuzzleConfig {
            angles: [1, 2, 4].iter().map(|&k| Angle::Rational { num: k, den: 7 }).collect(),
            level: 2f64.ln(),
            depth_max,
            steps: DEFAULT_STEPS_PER_HALVING,
            g_min: 1e-8,
            arc_samples: 128,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PuzzlePiece {
    pub depth: usize,
    pub label: usize,
    pub parent: Option<usize>,
    /// Label of the depth `d - 1` piece that this one maps onto.
    pub image: Option<usize>,
    /// Equipotential arcs `(from, to)` in boundary order.
    pub arcs: Vec<(Angle, Angle)>,
    /// Closed polygon, counterclockwise (first vertex not repeated).
    pub boundary: Vec<C64>,
}

impl PuzzlePiece {
    pub fn diameter(&self) -> f64 {
        let b = &self.boundary;
        let mut d: f64 = 0.0;
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                d = d.max((b[i] - b[j]).norm());
            }
        }
        d
    }

    /// Shoelace area (positive for counterclockwise boundaries).
    pub fn area(&self) -> f64 {
        polygon_area(&self.boundary)
    }

    /// Winding number of the boundary around `z`, or an error when `z` is
    /// within [`BOUNDARY_BAND`] of it.
    pub fn winding(&self, z: C64) -> Result<i32> {
        winding_number(&self.boundary, z)
    }
}

pub fn polygon_area(b: &[C64]) -> f64 {
    let n = b.len();
    (0..n)
        .map(|i| {
            let (p, q) = (b[i], b[(i + 1) % n]);
            p.re * q.im - q.re * p.im
        })
        .sum::<f64>()
        / 2.0
}

fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Winding number of a closed polygon around `z`.
pub fn winding_number(poly: &[C64], z: C64) -> Result<i32> {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if segment_distance(z, a, b) < BOUNDARY_BAND {
            return Err(DynError::Ambiguous(format!("{z} lies on a piece boundary")));
        }
        let cross = (b.re - a.re) * (z.im - a.im) - (z.re - a.re) * (b.im - a.im);
        if a.im <= z.im {
            if b.im > z.im && cross > 0.0 {
                w += 1;
            }
        } else if b.im <= z.im && cross < 0.0 {
            w -= 1;
        }
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct Puzzle {
    pub c: C64,
    pub alpha: C64,
    pub config: PuzzleConfig,
    /// `levels[d]` holds the depth-`d` pieces.
    pub levels: Vec<Vec<PuzzlePiece>>,
    /// The depth-`d` equipotential polygon (counterclockwise).
    pub disks: Vec<Vec<C64>>,
    /// Traced rays for every boundary angle, keyed by `(num, den)`.
    pub rays: HashMap<(u64, u64), RayPolyline>,
    /// Landing point of every boundary ray.
    pub landings: HashMap<(u64, u64), C64>,
}

fn key(t: Angle) -> Result<(u64, u64)> {
    match t {
        Angle::Rational { num, den } => Ok((num, den)),
        Angle::Real(_) => Err(DynError::InvalidArgument("puzzle angles must be rational".into())),
    }
}

fn sorted(mut v: Vec<Angle>) -> Vec<Angle> {
    v.sort_by(|a, b| a.cmp_value(b));
    v.dedup_by(|a, b| a.cmp_value(b) == Ordering::Equal);
    v
}

/// Index `i` of the arc `[A[i], A[i+1])` (cyclic) containing `t`.
fn arc_containing(angles: &[Angle], t: f64) -> usize {
    let i = angles.partition_point(|a| a.value() <= t);
    if i == 0 {
        angles.len() - 1
    } else {
        i - 1
    }
}

fn arc_mid(a: Angle, b: Angle) -> f64 {
    let (x, mut y) = (a.value(), b.value());
    if y <= x {
        y += 1.0;
    }
    ((x + y) / 2.0).rem_euclid(1.0)
}

/// Whether `t` lies strictly inside the counterclockwise arc from `a` to `b`.
fn strictly_inside(a: Angle, b: Angle, t: Angle) -> bool {
    let ab = a.cmp_value(&b);
    let at = a.cmp_value(&t);
    let tb = t.cmp_value(&b);
    if ab == Ordering::Less {
        at == Ordering::Less && tb == Ordering::Less
    } else {
        at == Ordering::Less || tb == Ordering::Less
    }
}

/// Builds the puzzle pieces of depths `0..=depth_max`.
pub fn puzzle_build(c: C64, config: &PuzzleConfig) -> Result<Puzzle> {
    let base = sorted(config.angles.clone());
    if base.len() < 2 {
        return Err(DynError::Puzzle("need at least two rays".into()));
    }
    for t in &base {
        key(*t)?;
        let d = t.double();
        if !base.iter().any(|s| s.cmp_value(&d) == Ordering::Equal) {
            return Err(DynError::Puzzle(format!("angle set not closed under doubling ({t} -> {d})")));
        }
    }
    let sched = RaySchedule::anchored(c, config.level, config.steps)?;
    // boundary angles by depth
    let mut depth_angles = vec![base.clone()];
    for d in 0..config.depth_max {
        let mut next = Vec::new();
        for t in &depth_angles[d] {
            next.extend(t.halves()?);
        }
        depth_angles.push(sorted(next));
    }
    let all = depth_angles.last().unwrap().clone();
    let traced: Vec<Result<RayPolyline>> = map_slice(&all, |&t| trace_with(&sched, t, config.g_min));
    let mut rays = HashMap::new();
    for (t, r) in all.iter().zip(traced) {
        let r = r?;
        if let Some(f) = &r.failure {
            return Err(DynError::Puzzle(format!("ray {t}: {f}")));
        }
        rays.insert(key(*t)?, r);
    }
    // the base rays must land together at a repelling fixed point
    let mut base_land = Vec::new();
    for t in &base {
        match rays[&key(*t)?].landing {
            Some(z) => base_land.push(z),
            None => return Err(DynError::Puzzle(format!("ray {t} does not land"))),
        }
    }
    let alpha = base_land[0];
    let spread = base_land.iter().map(|z| (z - alpha).norm()).fold(0.0, f64::max);
    if spread > LANDING_TOL {
        return Err(DynError::Puzzle(format!("base rays land {spread:e} apart")));
    }
    if (alpha * alpha + c - alpha).norm() > 1e-9 || (2.0 * alpha).norm() <= 1.0 {
        return Err(DynError::Puzzle(format!("landing point {alpha} is not a repelling fixed point")));
    }
    // landing points by pulling back along the doubling
    let mut landings: HashMap<(u64, u64), C64> = HashMap::new();
    for t in &base {
        landings.insert(key(*t)?, alpha);
    }
    for d in 1..depth_angles.len() {
        for t in &depth_angles[d] {
            let k = key(*t)?;
            if landings.contains_key(&k) {
                continue;
            }
            let img = landings[&key(t.double())?];
            let tail = *rays[&k].vertices.last().unwrap();
            let z = pull_back_checked(c, img, tail)
                .ok_or_else(|| DynError::Puzzle(format!("landing branch of ray {t} is ambiguous")))?;
            landings.insert(k, z);
        }
    }
    let mut levels: Vec<Vec<PuzzlePiece>> = Vec::new();
    let mut disks = Vec::new();
    for d in 0..=config.depth_max {
        let above_angles = if d > 0 { Some(&depth_angles[d - 1]) } else { None };
        let (pieces, disk) = build_level(config, &sched, d, &depth_angles[d], &rays, &landings, levels.last(), above_angles)?;
        levels.push(pieces);
        disks.push(disk);
    }
    Ok(Puzzle {
        c,
        alpha,
        config: config.clone(),
        levels,
        disks,
        rays,
        landings,
    })
}

#[allow(clippy::too_many_arguments)]
fn build_level(
    config: &PuzzleConfig,
    sched: &RaySchedule,
    d: usize,
    angles: &[Angle],
    rays: &HashMap<(u64, u64), RayPolyline>,
    landings: &HashMap<(u64, u64), C64>,
    above: Option<&Vec<PuzzlePiece>>,
    above_angles: Option<&Vec<Angle>>,
) -> Result<(Vec<PuzzlePiece>, Vec<C64>)> {
    let n = angles.len();
    // group angle indices by landing point
    let mut groups: Vec<(C64, Vec<usize>)> = Vec::new();
    let mut group_of = vec![0usize; n];
    for (i, t) in angles.iter().enumerate() {
        let z = landings[&key(*t)?];
        match groups.iter().position(|(w, _)| (w - z).norm() < SAME_LANDING_TOL) {
            Some(g) => {
                groups[g].1.push(i);
                group_of[i] = g;
            }
            None => {
                group_of[i] = groups.len();
                groups.push((z, vec![i]));
            }
        }
    }
    // face traversal over arcs
    let next_arc = |i: usize| -> usize {
        let e = (i + 1) % n;
        let members = &groups[group_of[e]].1;
        let pos = members.iter().position(|&m| m == e).expect("member of its own group");
        members[(pos + members.len() - 1) % members.len()]
    };
    let mut seen = vec![false; n];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            face.push(i);
            i = next_arc(i);
        }
        if i != start {
            return Err(DynError::Puzzle(format!("inconsistent ray landing pattern at depth {d}")));
        }
        faces.push(face);
    }
    // equipotential samples at this depth
    let level = config.level / (d as f64).exp2();
    let j_level = sched.index_of(level);
    let m = (config.arc_samples as u64) << d;
    let ks: Vec<u64> = (0..m).collect();
    let samples: Vec<Result<C64>> = map_slice(&ks, |&k| sched.point(Angle::rational(k, m)?, j_level));
    let mut circle = Vec::with_capacity(samples.len());
    for s in samples {
        circle.push(s.map_err(|e| DynError::Puzzle(format!("equipotential at depth {d}: {e}")))?);
    }
    let mut marks: Vec<(f64, C64)> = angles.iter().map(|t| (t.value(), rays[&key(*t).unwrap()].vertices[j_level])).collect();
    marks.extend(circle.iter().enumerate().map(|(k, z)| (k as f64 / m as f64, *z)));
    marks.sort_by(|a, b| a.0.total_cmp(&b.0));
    let disk: Vec<C64> = marks.into_iter().map(|x| x.1).collect();
    let mut pieces = Vec::with_capacity(faces.len());
    for (label, face) in faces.iter().enumerate() {
        let mut boundary = Vec::new();
        let mut arcs = Vec::new();
        for &i in face {
            let (a, b) = (angles[i], angles[(i + 1) % n]);
            arcs.push((a, b));
            let ray_a = &rays[&key(a)?];
            boundary.push(ray_a.vertices[j_level]);
            // arc samples in counterclockwise order from a to b
            let start = (a.value() * m as f64).floor() as u64 + 1;
            for s in 0..m {
                let k = (start + s) % m;
                let t = Angle::rational(k, m)?;
                if !strictly_inside(a, b, t) {
                    break;
                }
                boundary.push(circle[k as usize]);
            }
            let ray_b = &rays[&key(b)?];
            boundary.extend(ray_b.vertices[j_level..].iter().copied());
            boundary.push(landings[&key(b)?]);
            let next = angles[next_arc(i)];
            let ray_n = &rays[&key(next)?];
            boundary.extend(ray_n.vertices[j_level + 1..].iter().rev().copied());
        }
        pieces.push(PuzzlePiece {
            depth: d,
            label,
            parent: None,
            image: None,
            arcs,
            boundary,
        });
    }
    if let (Some(above), Some(above_angles)) = (above, above_angles) {
        let arc_owner = |t: f64| -> usize {
            let i = arc_containing(above_angles, t);
            above.iter().position(|p| p.arcs.iter().any(|(a, _)| a.cmp_value(&above_angles[i]) == Ordering::Equal)).expect("arc belongs to a piece")
        };
        for p in pieces.iter_mut() {
            let mids: Vec<f64> = p.arcs.iter().map(|(a, b)| arc_mid(*a, *b)).collect();
            let parents: Vec<usize> = mids.iter().map(|&t| arc_owner(t)).collect();
            let images: Vec<usize> = mids.iter().map(|&t| arc_owner((2.0 * t).rem_euclid(1.0))).collect();
            if parents.iter().any(|&q| q != parents[0]) {
                return Err(DynError::Puzzle(format!("depth-{d} piece {} straddles two parents", p.label)));
            }
            if images.iter().any(|&q| q != images[0]) {
                return Err(DynError::Puzzle(format!("depth-{d} piece {} has no single image", p.label)));
            }
            p.parent = Some(parents[0]);
            p.image = Some(images[0]);
        }
    }
    Ok((pieces, disk))
}

impl Puzzle {
    /// Labels of the pieces containing `z0` at depths `0..=depth_max`.
    pub fn nest(&self, z0: C64, depth_max: usize) -> Result<Vec<usize>> {
        if depth_max >= self.levels.len() {
            return Err(DynError::InvalidArgument(format!(
                "puzzle built to depth {}, asked for {depth_max}",
                self.levels.len() - 1
            )));
        }
        let mut out: Vec<usize> = Vec::new();
        for d in 0..=depth_max {
            let mut found = Vec::new();
            for p in &self.levels[d] {
                if p.winding(z0)? != 0 {
                    found.push(p.label);
                }
            }
            match found.as_slice() {
                [l] => {
                    if d > 0 && self.levels[d][*l].parent != Some(out[d - 1]) {
                        return Err(DynError::Puzzle(format!("nest broken at depth {d}")));
                    }
                    out.push(*l);
                }
                [] => return Err(DynError::InvalidArgument(format!("{z0} is outside every depth-{d} piece"))),
                _ => return Err(DynError::Puzzle(format!("{z0} lies in {} depth-{d} pieces", found.len()))),
            }
        }
        Ok(out)
    }

    /// CSV rows `depth,label,parent,diameter` for every piece.
    pub fn pieces_csv(&self) -> String {
        let mut s = String::from("depth,label,parent,diameter\n");
        for level in &self.levels {
            for p in level {
                let parent = p.parent.map(|x| x.to_string()).unwrap_or_default();
                s.push_str(&format!("{},{},{},{}\n", p.depth, p.label, parent, fmt_real(p.diameter())));
            }
        }
        s
    }

    /// Area enclosed by the depth-`d` equipotential.
    pub fn disk_area(&self, d: usize) -> f64 {
        polygon_area(&self.disks[d])
    }
}

/// Diameters of the nested pieces around `z0`, depth `0..=depth_max`.
pub fn piece_diameters(puzzle: &Puzzle, z0: C64, depth_max: usize) -> Result<Vec<f64>> {
    let nest = puzzle.nest(z0, depth_max)?;
    Ok(nest.iter().enumerate().map(|(d, &l)| puzzle.levels[d][l].diameter()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci() -> C64 {
        C64::new(0.0, 1.0)
    }

    #[test]
    fn piece_counts_for_c_i() {
        let p = puzzle_build(ci(), &PuzzleConfig::sevenths(3)).unwrap();
        let counts: Vec<usize> = p.levels.iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![3, 5, 9, 17]);
        assert!((p.alpha - C64::new(-0.300243, 0.624810)).norm() < 1e-6);
    }

    #[test]
    fn pieces_tile_the_disk() {
        let p = puzzle_build(ci(), &PuzzleConfig::sevenths(2)).unwrap();
        for d in 0..=2 {
            let total: f64 = p.levels[d].iter().map(|x| x.area()).sum();
            let disk = p.disk_area(d);
            assert!(p.levels[d].iter().all(|x| x.area() > 0.0));
            assert!((total - disk).abs() < 0.01 * disk, "depth {d}: {total} vs {disk}");
        }
    }

    #[test]
    fn depth_one_boundaries_map_to_depth_zero() {
        let c = ci();
        let p = puzzle_build(c, &PuzzleConfig::sevenths(1)).unwrap();
        for piece in &p.levels[1] {
            let target = &p.levels[0][piece.image.unwrap()];
            for z in &piece.boundary {
                let w = z * z + c;
                let d = target.boundary.iter().map(|b| (b - w).norm()).fold(f64::INFINITY, f64::min);
                assert!(d < 1e-6, "piece {}: {d}", piece.label);
            }
        }
    }

    #[test]
    fn diameters_shrink_at_critical_point() {
        let p = puzzle_build(ci(), &PuzzleConfig::sevenths(4)).unwrap();
        let d = piece_diameters(&p, C64::new(0.0, 0.0), 4).unwrap();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    }

    #[test]
    fn boundary_point_is_ambiguous() {
        let p = puzzle_build(ci(), &PuzzleConfig::sevenths(0)).unwrap();
        assert!(matches!(p.nest(p.alpha, 0), Err(DynError::Ambiguous(_))));
    }

    #[test]
    fn open_angle_set_rejected() {
        let mut cfg = PuzzleConfig::sevenths(0);
        cfg.angles.pop();
        assert!(puzzle_build(ci(), &cfg).is_err());
    }
}
