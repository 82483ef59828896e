//! Proportional division of the flat-back gadget into stacked levels.
//!
//! Level `n` (1-based) is the gadget between the level apex `A(n)` and the one
//! below it; level 0 is the pivot. Each level carries its own tongue angle.

use crate::crease::{Assignment, CreaseBuilder, CreasePattern, Metadata, VertexCheck, Wedge};
use crate::critical::critical_angles_closed;
use crate::error::Error;
use crate::frame::Frame;
use crate::geom::{intersect, line_intersection, Point2, Ray2, Segment, Tolerance};
use crate::improved::admissible_interval;
use crate::params::{derive, validate, GadgetParams, PerSide, Side, ValidationMode};
use crate::report::CheckReport;

/// Merge distance used when two constructed points should be identified.
const IDENTIFY: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct DivisionSpec {
    /// Level heights from the bottom; they must add up to the number of levels.
    pub proportions: Vec<f64>,
    /// Left tongue angle of every level, bottom first.
    pub tongue_angles: Vec<f64>,
    /// Per level: invert the optional fold pair of a level without a tongue tip.
    /// The first entry is ignored.
    pub inverted: Vec<bool>,
}

impl DivisionSpec {
    /// Equal levels, all with the same tongue angle.
    pub fn uniform(levels: usize, tongue_left: f64) -> Self {
        Self::with_proportions(vec![1.0; levels], tongue_left)
    }

    pub fn with_proportions(proportions: Vec<f64>, tongue_left: f64) -> Self {
        let n = proportions.len();
        DivisionSpec { proportions, tongue_angles: vec![tongue_left; n], inverted: vec![false; n] }
    }

    /// Proportions rescaled so that they sum to the level count.
    pub fn from_ratios(ratios: &[f64], tongue_left: f64) -> Self {
        let total: f64 = ratios.iter().sum();
        let n = ratios.len() as f64;
        Self::with_proportions(ratios.iter().map(|x| x * n / total).collect(), tongue_left)
    }

    pub fn levels(&self) -> usize {
        self.proportions.len()
    }

    /// Cumulative heights, starting with 0 for the pivot.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut q = vec![0.0];
        for p in &self.proportions {
            q.push(q.last().unwrap() + p);
        }
        q
    }

    pub fn tongue_angles_of(&self, params: &GadgetParams, level: usize) -> PerSide<f64> {
        let left = self.tongue_angles[level - 1];
        PerSide::new(left, params.gap_angle() - left)
    }

    /// Shape checks that need no geometry.
    pub fn check_shape(&self, params: &GadgetParams, tol: &Tolerance) -> Result<(), Error> {
        let d = self.levels();
        if d < 2 {
            return Err(Error::InvalidDivision(format!("need at least 2 levels, got {d}")));
        }
        if self.tongue_angles.len() != d || self.inverted.len() != d {
            return Err(Error::InvalidDivision(format!(
                "{d} levels but {} tongue angles and {} inversion flags",
                self.tongue_angles.len(),
                self.inverted.len()
            )));
        }
        if let Some(p) = self.proportions.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::InvalidDivision(format!("proportion {p} is not positive")));
        }
        let sum: f64 = self.proportions.iter().sum();
        if (sum - d as f64).abs() > 1e-9 {
            return Err(Error::InvalidDivision(format!("proportions sum to {sum}, expected {d}")));
        }
        let window = admissible_interval(params, tol)?;
        for (i, &phi) in self.tongue_angles.iter().enumerate() {
            if !window.contains(phi, tol.angle_eps) {
                return Err(Error::InvalidDivision(format!(
                    "level {}: tongue angle {:.9} rad outside the admissible window [{:.9}, {:.9}]",
                    i + 1,
                    phi,
                    window.lo,
                    window.hi
                )));
            }
        }
        Ok(())
    }
}

/// Apex-to-tongue-point length per unit of level height.
pub fn tongue_point_coefficient(params: &GadgetParams, tongue_left: f64) -> f64 {
    let gap = params.gap_angle();
    let ratio = 1.0 / (gap / 2.0).cos();
    let offset = gap / 2.0 - tongue_left;
    let den = 2.0 * (ratio * offset.cos() - 1.0);
    if den <= 0.0 {
        f64::INFINITY
    } else {
        (ratio * ratio - 1.0) / den
    }
}

/// Reach of the reflected pleat along the ear axis per unit of level height.
pub fn ear_foot_coefficient(params: &GadgetParams, tongue: f64, side: Side) -> f64 {
    let beta = params.side_angle[side];
    let cot_beta = beta.cos() / beta.sin();
    (params.gap_angle() / 2.0).tan() / 2.0 * (1.0 / (tongue / 2.0).tan() - cot_beta)
}

/// Whether the level has its own tongue tip (and the mirrored one below it).
pub fn tip_exists(params: &GadgetParams, spec: &DivisionSpec, level: usize) -> bool {
    if level == 1 {
        return true;
    }
    let q = spec.cumulative();
    q[level] < tongue_point_coefficient(params, spec.tongue_angles[level - 1]) * spec.proportions[level - 1]
}

/// Whether the reflected pleat of the level meets the ear axis.
pub fn foot_exists(params: &GadgetParams, spec: &DivisionSpec, level: usize, side: Side) -> bool {
    if level == 1 {
        return true;
    }
    let q = spec.cumulative();
    let tongue = spec.tongue_angles_of(params, level)[side];
    q[level] < ear_foot_coefficient(params, tongue, side) * spec.proportions[level - 1]
}

/// Margin of the level inequality between consecutive tongue angles.
pub fn level_inequality_margin(params: &GadgetParams, spec: &DivisionSpec, level: usize, side: Side) -> f64 {
    let here = spec.tongue_angles_of(params, level)[side];
    let below = spec.tongue_angles_of(params, level - 1)[side];
    let bound = 1.0 / (1.0 / (below / 2.0).tan() + 2.0 / (params.gap_angle() / 2.0).tan());
    (here / 2.0).tan() - bound
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisionLevel {
    pub apex: Point2,
    pub corner: PerSide<Point2>,
    pub ear_center: PerSide<Point2>,
    pub tongue_angle: PerSide<f64>,
    /// Where the tongue line meets the segment between the ear centers.
    pub tongue_point: Point2,
    pub tip: Option<Point2>,
    /// Tip mirrored into the level below, on the segment from the lower apex to the tongue point.
    pub mirror_tip: Option<Point2>,
    pub ear_foot: PerSide<Option<Point2>>,
    /// Where the lower level's pleat meets the axis from the lower apex to this level's ear center.
    pub mirror_foot: PerSide<Option<Point2>>,
    /// Where the pleats meet the ear ray when there is no foot.
    pub pleat_meet: PerSide<Option<Point2>>,
    /// Where the creases from both tips meet the ear segment.
    pub tip_hinge: PerSide<Option<Point2>>,
    /// Where the reflected pleats meet the ear segment.
    pub foot_hinge: PerSide<Option<Point2>>,
    pub critical: PerSide<bool>,
    pub inverted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisionGeometry {
    pub pivot: Point2,
    pub levels: Vec<DivisionLevel>,
    pub cumulative: Vec<f64>,
    pub proportions: Vec<f64>,
    pub ridge_dir: PerSide<Point2>,
    pub pleat_dir: PerSide<Point2>,
    /// Pleat direction reflected across the ridge.
    pub reflected_pleat_dir: PerSide<Point2>,
    pub apex_ratio: f64,
}

impl DivisionGeometry {
    pub fn level(&self, n: usize) -> &DivisionLevel {
        &self.levels[n - 1]
    }

    fn apex_below(&self, n: usize) -> Point2 {
        if n == 1 {
            self.pivot
        } else {
            self.levels[n - 2].apex
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Division {
    pub geometry: DivisionGeometry,
    pub pattern: CreasePattern,
}

fn ray_hits_segment(origin: Point2, dir: Point2, a: Point2, b: Point2, tol: &Tolerance) -> Option<Point2> {
    let ray = Ray2 { origin, direction: dir.normalized() };
    match intersect(ray.into(), Segment::new(a, b).into(), tol) {
        Ok(Some(x)) if x.dist(origin) > tol.length_eps => Some(x),
        _ => None,
    }
}

fn meet(p: Point2, u: Point2, q: Point2, v: Point2, what: &str) -> Result<Point2, Error> {
    line_intersection(p, u, q, v)
        .map(|(x, _, _)| x)
        .ok_or_else(|| Error::InvalidDivision(format!("{what}: lines are parallel")))
}

/// Places every point of the division.
pub fn division_geometry(
    params: &GadgetParams,
    spec: &DivisionSpec,
    tol: &Tolerance,
) -> Result<DivisionGeometry, Error> {
    let report = validate(params, ValidationMode::Conventional, tol);
    if !report.passed() {
        return Err(Error::InvalidParams(report));
    }
    spec.check_shape(params, tol)?;
    let d = spec.levels();
    let scaled = params.with_edge_length(d as f64);
    let f = Frame::new(&scaled);
    let derived = derive(&scaled, tol)?;
    let crit = critical_angles_closed(&scaled, &derived);
    let q = spec.cumulative();
    let df = d as f64;
    let apex_at = |n: usize| f.pivot + (f.apex - f.pivot) * (q[n] / df);
    let corner_at = |n: usize, s: Side| apex_at(n) + (f.corner[s] - f.apex) * (q[n] / df);
    let reflected = PerSide::from_fn(|s| f.pleat_dir[s].reflect_across(f.ridge_dir[s]));

    let mut levels: Vec<DivisionLevel> = Vec::with_capacity(d);
    for n in 1..=d {
        let apex = apex_at(n);
        let corner = PerSide::from_fn(|s| corner_at(n, s));
        let tongue_angle = spec.tongue_angles_of(params, n);
        let mut ear_center = corner;
        for s in Side::BOTH {
            let mid = if n == 1 { f.pivot } else { corner_at(n - 1, s) }.midpoint(corner[s]);
            ear_center[s] = meet(apex, f.from_apex(s, tongue_angle[s] / 2.0), mid, f.ridge_dir[s], "ear center")?;
        }
        let ear_dir = ear_center.r - ear_center.l;
        let tongue_dir = f.from_apex(Side::L, tongue_angle.l);
        let tongue_point = meet(apex, tongue_dir, ear_center.l, ear_dir, "tongue point")?;
        let below = if n == 1 { f.pivot } else { levels[n - 2].apex };
        let (tip, mirror_tip) = if q[n] < tongue_point.dist(apex) - 1e-12 {
            let lower = (n >= 2).then(|| below + (tongue_point - below).normalized() * q[n - 1]);
            (Some(apex + tongue_dir * q[n]), lower)
        } else if n == 1 {
            return Err(Error::InvalidDivision("the bottom level has no tongue tip".into()));
        } else {
            (None, None)
        };
        let critical = PerSide::from_fn(|s| (tongue_angle[s] / 2.0 - crit[s]).abs() <= tol.angle_eps);
        let mut level = DivisionLevel {
            apex,
            corner,
            ear_center,
            tongue_angle,
            tongue_point,
            tip,
            mirror_tip,
            ear_foot: PerSide::new(None, None),
            mirror_foot: PerSide::new(None, None),
            pleat_meet: PerSide::new(None, None),
            tip_hinge: PerSide::new(None, None),
            foot_hinge: PerSide::new(None, None),
            critical,
            inverted: n >= 2 && spec.inverted[n - 1],
        };
        for s in Side::BOTH {
            let foot = if n == 1 && critical[s] {
                Some(ear_center[s])
            } else {
                ray_hits_segment(corner[s], reflected[s], apex, ear_center[s], tol)
            };
            level.ear_foot[s] = foot;
            if foot.is_none() {
                level.pleat_meet[s] = Some(meet(corner[s], reflected[s], ear_center[s], f.ridge_dir[s], "pleat meet")?);
            }
            if n >= 2 {
                let lower_corner = levels[n - 2].corner[s];
                level.mirror_foot[s] = ray_hits_segment(lower_corner, f.pleat_dir[s], below, ear_center[s], tol);
                if level.mirror_foot[s].is_some() != foot.is_some() {
                    return Err(Error::InvalidDivision(format!(
                        "level {n}: ear foot and mirrored foot disagree on the {s} side"
                    )));
                }
            }
        }
        if n >= 2 {
            fill_hinges(&mut level, spec.proportions[n - 1], &f, reflected, n, tol)?;
        }
        levels.push(level);
    }
    Ok(DivisionGeometry {
        pivot: f.pivot,
        levels,
        cumulative: q,
        proportions: spec.proportions.clone(),
        ridge_dir: f.ridge_dir,
        pleat_dir: f.pleat_dir,
        reflected_pleat_dir: reflected,
        apex_ratio: derived.apex_ratio,
    })
}

fn fill_hinges(
    level: &mut DivisionLevel,
    height: f64,
    f: &Frame,
    reflected: PerSide<Point2>,
    n: usize,
    tol: &Tolerance,
) -> Result<(), Error> {
    let (el, er) = (level.ear_center.l, level.ear_center.r);
    let ear_dir = er - el;
    let on_ear_segment = |x: Point2| {
        let t = (x - el).dot(ear_dir) / ear_dir.dot(ear_dir);
        (-1e-9..=1.0 + 1e-9).contains(&t)
    };
    for s in Side::BOTH {
        let ear = level.ear_center[s];
        let fold_dir = reflected[s].reflect_across(ear - level.apex);
        match (level.tip, level.ear_foot[s]) {
            (Some(tip), foot) => {
                // The tip crease is parallel to the ear crease of a level-sized copy of the bottom tip.
                let local_tip = level.apex + f.from_apex(Side::L, level.tongue_angle.l) * height;
                let hinge = meet(tip, ear - local_tip, el, ear_dir, "tip hinge")?;
                if !on_ear_segment(hinge) {
                    return Err(Error::InvalidDivision(format!("level {n}: tip hinge falls off the ear segment")));
                }
                level.tip_hinge[s] = Some(hinge);
                if foot.is_none() {
                    let m = meet(tip, fold_dir, el, ear_dir, "foot hinge")?;
                    level.foot_hinge[s] = Some(if level.critical[s] || m.dist(hinge) <= IDENTIFY { hinge } else { m });
                }
            }
            (None, Some(foot)) => {
                level.foot_hinge[s] = Some(if foot.dist(ear) <= tol.length_eps {
                    ear
                } else {
                    meet(foot, fold_dir, el, ear_dir, "foot hinge")?
                });
            }
            (None, None) => {}
        }
    }
    Ok(())
}

/// Builds the division and its crease pattern.
pub fn build_division(params: &GadgetParams, spec: &DivisionSpec, tol: &Tolerance) -> Result<Division, Error> {
    use Assignment::{Mountain as M, Valley as V};
    let g = division_geometry(params, spec, tol)?;
    let d = spec.levels();
    for n in 2..=d {
        let lv = g.level(n);
        let mountain_axis = lv.tip.is_some() || !lv.inverted;
        if mountain_axis {
            for s in Side::BOTH {
                let margin = level_inequality_margin(params, spec, n, s);
                if margin < -tol.angle_eps {
                    return Err(Error::LevelInequality { level: n, side: s, margin });
                }
            }
        }
    }

    let top = g.level(d);
    let mut b = CreaseBuilder::new();
    b.mark(top.apex, VertexCheck::Exempt);
    for s in Side::BOTH {
        b.ray(top.apex, g.pleat_dir[s], M);
        b.ray(top.corner[s], g.pleat_dir[s], V);
        for lv in &g.levels {
            b.segment(lv.apex, lv.corner[s], M);
            b.ray(lv.corner[s], g.ridge_dir[s], M);
            b.ray(lv.ear_center[s], g.ridge_dir[s], V);
            b.segment(lv.apex, lv.ear_center[s], V);
        }
    }

    let first = g.level(1);
    let tip1 = first.tip.expect("the bottom tip always exists");
    b.segment(first.apex, tip1, M);
    b.segment(first.ear_center.l, first.ear_center.r, V);
    for s in Side::BOTH {
        let foot = first.ear_foot[s].expect("the bottom foot always exists");
        b.segment(first.corner[s], foot, M).segment(tip1, foot, V);
        if foot.dist(first.ear_center[s]) > IDENTIFY {
            b.segment(tip1, first.ear_center[s], M);
        } else {
            b.mark(
                foot,
                VertexCheck::Wedge(Wedge {
                    bounds: [first.corner[s] - foot, tip1 - foot],
                    inside: g.ridge_dir[s],
                    expected: 0.0,
                }),
            );
        }
    }
    b.mark(
        tip1,
        VertexCheck::Wedge(Wedge {
            bounds: [first.ear_foot.l.unwrap() - tip1, first.ear_foot.r.unwrap() - tip1],
            inside: g.pivot - tip1,
            expected: params.top_angle,
        }),
    );

    for n in 2..=d {
        let lv = g.level(n);
        let lower = g.level(n - 1);
        let below = g.apex_below(n);
        for s in Side::BOTH {
            let axis = if lv.tip.is_some() || !lv.inverted { M } else { V };
            b.segment(below, lv.ear_center[s], axis);
            match (lv.ear_foot[s], lv.mirror_foot[s]) {
                (Some(foot), Some(mirror)) => {
                    b.segment(lv.corner[s], foot, M).segment(lower.corner[s], mirror, V);
                }
                _ => {
                    let j = lv.pleat_meet[s].expect("pleat meet exists without a foot");
                    b.segment(lv.corner[s], j, M).segment(lower.corner[s], j, V);
                }
            }
            if let (Some(tip), Some(mirror_tip)) = (lv.tip, lv.mirror_tip) {
                let hinge = lv.tip_hinge[s].unwrap();
                b.segment(tip, hinge, M).segment(mirror_tip, hinge, V);
                match (lv.ear_foot[s], lv.mirror_foot[s]) {
                    (Some(foot), Some(mirror)) => {
                        b.segment(tip, foot, V).segment(mirror_tip, mirror, M);
                    }
                    _ => {
                        let m = lv.foot_hinge[s].unwrap();
                        if m.dist(hinge) > IDENTIFY {
                            b.segment(tip, m, V).segment(mirror_tip, m, M);
                        }
                    }
                }
            } else if let (Some(foot), Some(mirror)) = (lv.ear_foot[s], lv.mirror_foot[s]) {
                let m = lv.foot_hinge[s].unwrap();
                b.segment(mirror, m, M).segment(foot, m, V);
            }
        }
        if let (Some(tip), Some(mirror_tip)) = (lv.tip, lv.mirror_tip) {
            b.segment(lv.apex, tip, M).segment(below, mirror_tip, V);
            b.segment(lv.ear_center.l, lv.ear_center.r, V);
            let toward = |at: Point2, foot: PerSide<Option<Point2>>| {
                PerSide::from_fn(|s| foot[s].or(lv.foot_hinge[s]).or(lv.tip_hinge[s]).unwrap() - at)
            };
            for (at, foot) in [(tip, lv.ear_foot), (mirror_tip, lv.mirror_foot)] {
                let bounds = toward(at, foot);
                b.mark(
                    at,
                    VertexCheck::Wedge(Wedge {
                        bounds: [bounds.l, bounds.r],
                        inside: lv.tongue_point - at,
                        expected: params.top_angle,
                    }),
                );
            }
        } else {
            b.segment(lv.apex, lv.tongue_point, M).segment(below, lv.tongue_point, V);
            b.segment(lv.ear_center.l, lv.ear_center.r, if lv.inverted { M } else { V });
        }
    }

    let mut meta = Metadata::for_gadget("division", params)
        .with_parameter("levels", d as f64)
        .with_flag("critical_left", first.critical.l.to_string())
        .with_flag("critical_right", first.critical.r.to_string());
    for (i, lv) in g.levels.iter().enumerate() {
        meta = meta
            .with_parameter(&format!("proportion_{}", i + 1), spec.proportions[i])
            .with_parameter(&format!("tongue_left_deg_{}", i + 1), lv.tongue_angle.l.to_degrees());
    }
    let inverted: Vec<String> = (2..=d).filter(|&n| g.level(n).inverted).map(|n| n.to_string()).collect();
    meta = meta.with_flag("inverted_levels", inverted.join(","));
    let pattern = b.finish(meta)?;
    Ok(Division { geometry: g, pattern })
}

/// Length identities of the tongue points and agreement with the closed-form predicates.
pub fn division_checks(params: &GadgetParams, spec: &DivisionSpec, g: &DivisionGeometry) -> CheckReport {
    let mut r = CheckReport::default();
    let scale = 1e-9 * spec.levels() as f64;
    for n in 1..=spec.levels() {
        let lv = g.level(n);
        let p = spec.proportions[n - 1];
        let q = &g.cumulative;
        let coef = tongue_point_coefficient(params, lv.tongue_angle.l);
        let upper = lv.apex.dist(lv.tongue_point);
        let lower = g.apex_below(n).dist(lv.tongue_point);
        r.push(
            format!("tongue-point-from-apex-{n}"),
            (upper - coef * p).abs() <= scale,
            format!("{upper:.12} vs {:.12}", coef * p),
        );
        r.push(
            format!("tongue-point-from-lower-apex-{n}"),
            (lower - (coef - 1.0) * p).abs() <= scale,
            format!("{lower:.12} vs {:.12}", (coef - 1.0) * p),
        );
        r.push(
            format!("tongue-point-shift-{n}"),
            ((lower - q[n - 1]) - (upper - q[n])).abs() <= scale,
            format!("{:.12} vs {:.12}", lower - q[n - 1], upper - q[n]),
        );
        for s in Side::BOTH {
            let run = lv.apex.dist(lv.corner[s]);
            r.push(format!("corner-distance-{n}-{s}"), (run - q[n]).abs() <= scale, format!("{run:.12} vs {}", q[n]));
        }
        if n >= 2 {
            r.push(
                format!("tip-predicate-{n}"),
                tip_exists(params, spec, n) == lv.tip.is_some(),
                format!("constructed {}", lv.tip.is_some()),
            );
            for s in Side::BOTH {
                let coef = ear_foot_coefficient(params, lv.tongue_angle[s], s) * p;
                let boundary = (q[n] - coef).abs() <= scale;
                r.push(
                    format!("foot-predicate-{n}-{s}"),
                    boundary || foot_exists(params, spec, n, s) == lv.ear_foot[s].is_some(),
                    format!("constructed {}", lv.ear_foot[s].is_some()),
                );
            }
        }
    }
    r
}
