//! Constructibility verdicts and local flat-foldability of crease patterns.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::crease::{Assignment, CreasePattern, VertexCheck};
use crate::critical::critical_angles_closed;
use crate::error::Error;
use crate::geom::{ccw_sweep, Tolerance};
use crate::params::{derive, GadgetParams, PerSide};

/// Angular shift of an ear circumcenter caused by moving the tongue tip by
/// `offset` away from the pivot direction; `apex_ratio` must exceed 1.
pub fn circum_shift(offset: f64, apex_ratio: f64) -> f64 {
    (offset.sin() / (apex_ratio - offset.cos())).atan()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideVerdict {
    pub pass: bool,
    /// Positive when satisfied with room to spare.
    pub margin: f64,
}

/// Checks half tongue angle against the critical angle on each side.
pub fn constructible_by_tongue_angle(
    params: &GadgetParams,
    tongue_left: f64,
    tol: &Tolerance,
) -> Result<PerSide<SideVerdict>, Error> {
    let d = derive(params, tol)?;
    let crit = critical_angles_closed(params, &d);
    let tongue = PerSide::new(tongue_left, d.gap_angle - tongue_left);
    Ok(PerSide::from_fn(|s| {
        let margin = crit[s] - tongue[s] / 2.0;
        SideVerdict { pass: margin >= -tol.angle_eps && tongue[s] > 0.0, margin }
    }))
}

/// The same verdict expressed through the tongue offset from the pivot direction.
pub fn constructible_by_tongue_offset(
    params: &GadgetParams,
    offset_left: f64,
    tol: &Tolerance,
) -> Result<PerSide<SideVerdict>, Error> {
    let d = derive(params, tol)?;
    let r = d.apex_ratio;
    let offset = PerSide::new(offset_left, -offset_left);
    Ok(PerSide::from_fn(|s| {
        let lifted = ((r + 1.0) / (r - 1.0) * (offset[s] / 2.0).tan()).atan();
        let margin = params.side_angle[s] + d.gap_share[s] / 2.0 + lifted - FRAC_PI_2;
        SideVerdict { pass: margin >= -tol.angle_eps && offset[s] < d.gap_share[s], margin }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Interior,
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexFoldability {
    pub vertex: usize,
    pub kind: VertexKind,
    pub alternating_sum: f64,
    pub expected: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FoldabilityReport {
    pub entries: Vec<VertexFoldability>,
}

impl FoldabilityReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VertexFoldability> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn worst_residual(&self) -> f64 {
        self.entries.iter().map(|e| (e.alternating_sum - e.expected).abs()).fold(0.0, f64::max)
    }
}

/// Directions that count as one crease when closer than this.
const SAME_DIRECTION: f64 = 1e-7;

/// Sorted, deduplicated fold directions leaving vertex `v`.
fn fold_directions(cp: &CreasePattern, v: usize) -> Vec<f64> {
    let at = cp.vertices[v];
    let mut dirs: Vec<f64> = cp
        .neighbors(v)
        .into_iter()
        .filter(|(_, a)| a.is_fold())
        .map(|(w, _)| (cp.vertices[w] - at).angle().rem_euclid(2.0 * PI))
        .collect();
    dirs.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(dirs.len());
    for d in dirs {
        if out.last().is_none_or(|&p| d - p > SAME_DIRECTION) {
            out.push(d);
        }
    }
    if out.len() > 1 && out[0] + 2.0 * PI - out[out.len() - 1] <= SAME_DIRECTION {
        out.pop();
    }
    out
}

/// Alternating sector sums around every checked vertex.
pub fn kawasaki_check(cp: &CreasePattern, tol: &Tolerance) -> Result<FoldabilityReport, Error> {
    let mut entries = Vec::new();
    for (v, check) in cp.checks.iter().enumerate() {
        let has_boundary = cp.neighbors(v).iter().any(|(_, a)| *a == Assignment::Boundary);
        match check {
            VertexCheck::Exempt => {}
            VertexCheck::Interior => {
                if has_boundary {
                    continue;
                }
                let dirs = fold_directions(cp, v);
                if dirs.is_empty() {
                    continue;
                }
                if dirs.len() % 2 == 1 {
                    let p = cp.vertices[v];
                    return Err(Error::NonManifold { vertex: v, x: p.x, y: p.y, creases: dirs.len() });
                }
                let n = dirs.len();
                let sum: f64 = (0..n)
                    .map(|i| {
                        let sector = ccw_sweep(dirs[i], dirs[(i + 1) % n]);
                        if i % 2 == 0 {
                            sector
                        } else {
                            -sector
                        }
                    })
                    .sum();
                let sum = if n == 0 { 0.0 } else { sum };
                entries.push(VertexFoldability {
                    vertex: v,
                    kind: VertexKind::Interior,
                    alternating_sum: sum,
                    expected: 0.0,
                    pass: sum.abs() <= tol.angle_eps,
                });
            }
            VertexCheck::Wedge(w) => {
                let dirs = fold_directions(cp, v);
                let sum = wedge_sum(&dirs, w.bounds[0].angle(), w.bounds[1].angle(), w.inside.angle());
                let (sum, pass) = match sum {
                    Some(s) => (s, (s - w.expected).abs() <= tol.angle_eps),
                    None => (f64::NAN, false),
                };
                entries.push(VertexFoldability {
                    vertex: v,
                    kind: VertexKind::Boundary,
                    alternating_sum: sum,
                    expected: w.expected,
                    pass,
                });
            }
        }
    }
    Ok(FoldabilityReport { entries })
}

/// Alternating sum of the sectors between two bounding creases, on the side
/// containing `inside`; `None` when a bound is not an actual crease.
fn wedge_sum(dirs: &[f64], bound_a: f64, bound_b: f64, inside: f64) -> Option<f64> {
    let present = |b: f64| dirs.iter().any(|&d| ccw_sweep(d, b).min(ccw_sweep(b, d)) <= 1e-6);
    if !present(bound_a) || !present(bound_b) {
        return None;
    }
    let (start, end) =
        if ccw_sweep(bound_a, inside) < ccw_sweep(bound_a, bound_b) { (bound_a, bound_b) } else { (bound_b, bound_a) };
    let span = ccw_sweep(start, end);
    let mut cuts: Vec<f64> =
        dirs.iter().map(|&d| ccw_sweep(start, d)).filter(|&x| x > 1e-6 && x < span - 1e-6).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.push(span);
    let anchor = ccw_sweep(start, inside);
    let mut prev = 0.0;
    let mut sum = 0.0;
    let mut anchor_parity = 0;
    for (i, &c) in cuts.iter().enumerate() {
        let sector = c - prev;
        sum += if i % 2 == 0 { sector } else { -sector };
        if anchor >= prev && anchor < c {
            anchor_parity = i % 2;
        }
        prev = c;
    }
    Some(if anchor_parity == 0 { sum } else { -sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crease::{CreaseBuilder, Metadata, Wedge};
    use crate::geom::Point2;
    use crate::params::Side;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    #[test]
    fn circum_shift_basics() {
        assert_eq!(circum_shift(0.0, 3.0), 0.0);
        assert!(circum_shift(0.3, 1.5) > 0.0 && circum_shift(-0.3, 1.5) < 0.0);
    }

    #[test]
    fn circum_shift_cube_left_critical() {
        // Tongue angle 2·atan(1/2), offset = 45° − that.
        let offset = deg(45.0) - 2.0 * 0.5f64.atan();
        assert!((offset.to_degrees() + 8.130_102).abs() < 1e-5);
        let rho = circum_shift(offset, 2f64.sqrt());
        assert!((rho.to_degrees() + 18.434_949).abs() < 1e-5);
    }

    #[test]
    fn full_offset_shift_identity() {
        // At offset = share, offset + shift = 90° − tilt.
        let p = GadgetParams::new(1.7, 1.4, 1.5).with_tilts(0.15, 0.05);
        let d = derive(&p, &Tolerance::default()).unwrap();
        for s in Side::BOTH {
            let g = d.gap_share[s];
            let lhs = g + circum_shift(g, d.apex_ratio);
            assert!((lhs - (FRAC_PI_2 - p.tilt[s])).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_verdicts() {
        let p = GadgetParams::from_degrees(90.0, 90.0, 90.0);
        let tol = Tolerance::default();
        let v = constructible_by_tongue_angle(&p, deg(45.0), &tol).unwrap();
        assert!(v.l.pass && v.r.pass);
        let v = constructible_by_tongue_angle(&p, deg(55.0), &tol).unwrap();
        assert!(!v.l.pass && v.r.pass);
        let v = constructible_by_tongue_offset(&p, 0.0, &tol).unwrap();
        assert!(v.l.pass && v.r.pass);
        assert!((v.l.margin - deg(22.5)).abs() < 1e-12);
    }

    #[test]
    fn untilted_zero_offset_reduces_to_side_plus_half_share() {
        let p = GadgetParams::from_degrees(90.0, 45.0, 120.0);
        let v = constructible_by_tongue_offset(&p, 0.0, &Tolerance::default()).unwrap();
        assert!((v.l.margin - deg(45.0 + 26.25 - 90.0)).abs() < 1e-12);
        assert!(!v.l.pass && v.r.pass);
    }

    #[test]
    fn left_critical_margin_vanishes() {
        let p = GadgetParams::from_degrees(90.0, 45.0, 120.0);
        let tol = Tolerance::default();
        let z = crate::critical::critical_angles(&p, &tol).unwrap();
        let v = constructible_by_tongue_angle(&p, 2.0 * z.l, &tol).unwrap();
        assert!(v.l.margin.abs() < 1e-15 && v.l.pass);
    }

    fn star(angles_deg: &[f64]) -> CreasePattern {
        let mut b = CreaseBuilder::new();
        for (i, a) in angles_deg.iter().enumerate() {
            let asg = if i == 0 { Assignment::Valley } else { Assignment::Mountain };
            b.segment(Point2::new(0.0, 0.0), Point2::from_angle(deg(*a)), asg);
            b.mark(Point2::from_angle(deg(*a)), VertexCheck::Exempt);
        }
        b.finish(Metadata::default()).unwrap()
    }

    #[test]
    fn flat_vertex_passes_and_perturbed_fails() {
        let tol = Tolerance::default();
        let cp = star(&[0.0, 70.0, 180.0, 290.0]);
        let r = kawasaki_check(&cp, &tol).unwrap();
        let centre = cp.find_vertex(Point2::new(0.0, 0.0), 1e-12).unwrap();
        assert!(r.entries.iter().find(|e| e.vertex == centre).unwrap().pass);
        let bad = star(&[0.0, 71.0, 180.0, 290.0]);
        let r = kawasaki_check(&bad, &tol).unwrap();
        let e = r.entries.iter().find(|e| e.vertex == bad.find_vertex(Point2::new(0.0, 0.0), 1e-12).unwrap()).unwrap();
        assert!(!e.pass);
        assert!((e.alternating_sum.abs() - deg(2.0)).abs() < 1e-12);
    }

    #[test]
    fn odd_vertex_is_an_error() {
        let cp = star(&[0.0, 120.0, 240.0]);
        assert!(matches!(kawasaki_check(&cp, &Tolerance::default()), Err(Error::NonManifold { .. })));
    }

    #[test]
    fn wedge_sums_signed_by_inside_sector() {
        let dirs: Vec<f64> = [0.0, 30.0, 100.0, 180.0].iter().map(|d: &f64| d.to_radians()).collect();
        // Arc 0..180 through 90: sectors 30, 70, 80 with 30 - 70 + 80 = 40; inside at 50° lies in the 70 sector.
        let s = wedge_sum(&dirs, 0.0, PI, deg(50.0)).unwrap();
        assert!((s + deg(40.0)).abs() < 1e-12);
        let s = wedge_sum(&dirs, PI, 0.0, deg(10.0)).unwrap();
        assert!((s - deg(40.0)).abs() < 1e-12);
        assert!(wedge_sum(&dirs, 0.0, deg(90.0), deg(50.0)).is_none());
        let mut cp = star(&[0.0, 30.0, 100.0, 180.0]);
        let c = cp.find_vertex(Point2::new(0.0, 0.0), 1e-12).unwrap();
        cp.checks[c] = VertexCheck::Wedge(Wedge {
            bounds: [Point2::from_angle(0.0), Point2::from_angle(PI)],
            inside: Point2::from_angle(deg(10.0)),
            expected: deg(40.0),
        });
        let r = kawasaki_check(&cp, &Tolerance::default()).unwrap();
        assert!(r.entries.iter().find(|e| e.vertex == c).unwrap().pass);
    }
}
