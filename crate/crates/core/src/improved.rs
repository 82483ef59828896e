//! The flat-back gadget: ears on both sides and a tongue whose tip can slide
//! along the arc between the corners.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::crease::{Assignment, CreaseBuilder, CreasePattern, Metadata, VertexCheck, Wedge};
use crate::critical::{critical_angles_closed, saturated};
use crate::error::Error;
use crate::frame::Frame;
use crate::geom::{angle_between, circumcenter, line_intersection, signed_angle, Point2, Tolerance};
use crate::params::{derive, DerivedQuantities, GadgetParams, PerSide, Side};
use crate::report::CheckReport;
use crate::validator::{circum_shift, constructible_by_tongue_angle};

/// How the tongue tip is placed on the arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TonguePlacement {
    /// Left tongue angle, measured at the apex from the left edge.
    ByTongueAngle(f64),
    /// Left offset of the tip from the apex-to-pivot direction.
    ByTongueOffset(f64),
    /// Slack on one side; the tip follows.
    BySlack(Side, f64),
    Balanced,
    LeftCritical,
    RightCritical,
    Orthogonal,
}

/// Which of the two legal assignments to use on a tilted, non-critical side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiltedAssignment {
    /// Corner-to-ear and corner-to-foot creases are mountains.
    #[default]
    Primary,
    /// Corner-to-hinge and hinge-to-ear creases are mountains.
    Alternate,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ImprovedOptions {
    pub variant: TiltedAssignment,
    pub debug_lines: bool,
}

/// Closed interval of left tongue angles, with flags for excluded ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TongueInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl TongueInterval {
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo - eps };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi + eps };
        above && below
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }
}

/// Range of slack angles one side can be given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlackRange {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl SlackRange {
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo - eps };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi + eps };
        above && below
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub tongue_angle_left: f64,
    /// The placement rule was applied outside the setting it was designed for.
    pub extended: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovedGeometry {
    pub apex: Point2,
    pub corner: PerSide<Point2>,
    pub pivot: Point2,
    pub tongue_tip: Point2,
    pub ear_center: PerSide<Point2>,
    /// Where the pivot-to-tip segment meets the segment between the ear centers.
    pub tongue_mid: Point2,
    pub ear_foot: PerSide<Point2>,
    /// Present only on tilted sides.
    pub ear_hinge: PerSide<Option<Point2>>,
    pub tongue_angle: PerSide<f64>,
    pub tongue_offset: PerSide<f64>,
    pub critical: PerSide<bool>,
    pub ridge_dir: PerSide<Point2>,
    pub pleat_dir: PerSide<Point2>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImprovedGadget {
    pub geometry: ImprovedGeometry,
    pub pattern: CreasePattern,
    pub variant: TiltedAssignment,
}

/// Left tongue angles for which both ears can be built.
pub fn admissible_interval(params: &GadgetParams, tol: &Tolerance) -> Result<TongueInterval, Error> {
    let d = derive(params, tol)?;
    let z = critical_angles_closed(params, &d);
    let from_right = d.gap_angle - 2.0 * z.r;
    let from_left = 2.0 * z.l;
    Ok(TongueInterval {
        lo: from_right.max(0.0),
        hi: from_left.min(d.gap_angle),
        lo_open: from_right <= 0.0,
        hi_open: from_left >= d.gap_angle,
    })
}

/// Slack range on `side`, before the other side is known.
pub fn slack_range(params: &GadgetParams, side: Side, tol: &Tolerance) -> Result<SlackRange, Error> {
    derive(params, tol)?;
    let (beta, tilt) = (params.side_angle[side], params.tilt[side]);
    let cap = beta - tilt;
    let hi = if saturated(params, side.other()) {
        cap
    } else {
        params.side_angle.l + params.side_angle.r + params.gap_angle() / 2.0 - PI
    };
    let (lo, lo_open) = if saturated(params, side) {
        (beta + params.gap_angle() / 2.0 + params.tilt[side.other()] - PI, true)
    } else {
        (0.0, false)
    };
    Ok(SlackRange { lo: lo.max(0.0), hi: hi.min(cap), lo_open, hi_open: hi >= cap })
}

/// Turns a placement rule into a left tongue angle.
pub fn resolve(placement: TonguePlacement, params: &GadgetParams, tol: &Tolerance) -> Result<Resolved, Error> {
    let d = derive(params, tol)?;
    let range = admissible_interval(params, tol)?;
    let outside = |phi: f64| {
        let v = constructible_by_tongue_angle(params, phi, tol).ok()?;
        let side = if !v.l.pass {
            Side::L
        } else if !v.r.pass {
            Side::R
        } else {
            return None;
        };
        Some(Error::Inadmissible { side, margin: v[side].margin, lo: range.lo, hi: range.hi })
    };
    let checked = |phi: f64, extended: bool| match outside(phi) {
        Some(e) => Err(e),
        None => Ok(Resolved { tongue_angle_left: phi, extended }),
    };
    match placement {
        TonguePlacement::ByTongueAngle(phi) => checked(phi, false),
        TonguePlacement::ByTongueOffset(offset) => checked(d.gap_share.l - offset, false),
        TonguePlacement::LeftCritical => checked(range.hi, false),
        TonguePlacement::RightCritical => checked(range.lo, false),
        TonguePlacement::Orthogonal => checked(d.gap_share.l, false),
        TonguePlacement::Balanced => checked(range.clamp(d.gap_angle / 2.0), !params.untilted()),
        TonguePlacement::BySlack(side, slack) => {
            let phi = tongue_angle_for_slack(params, &d, side, slack, tol)?;
            checked(phi, false)
        }
    }
}

fn tongue_angle_for_slack(
    params: &GadgetParams,
    d: &DerivedQuantities,
    side: Side,
    slack: f64,
    tol: &Tolerance,
) -> Result<f64, Error> {
    let range = slack_range(params, side, tol)?;
    if !range.contains(slack, tol.angle_eps) {
        return Err(Error::SlackOutOfRange {
            side,
            value: slack,
            lo: range.lo,
            hi: range.hi,
            lo_bracket: if range.lo_open { '(' } else { '[' },
            hi_bracket: if range.hi_open { ')' } else { ']' },
        });
    }
    let f = Frame::new(params);
    let dir = f.from_corner(side, PI - params.side_angle[side] + params.tilt[side] + slack);
    let (ear, _, _) = line_intersection(f.corner[side], dir, f.bisector_anchor(side), f.ridge_dir[side])
        .ok_or_else(|| Error::Unavailable(format!("slack ray on the {side} side misses the inner pleat")))?;
    let half = angle_between(f.apex, f.corner[side], ear);
    Ok(match side {
        Side::L => 2.0 * half,
        Side::R => d.gap_angle - 2.0 * half,
    })
}

/// Ear geometry for a given left tongue angle.
pub fn improved_geometry(params: &GadgetParams, tongue_left: f64, tol: &Tolerance) -> Result<ImprovedGeometry, Error> {
    let d = derive(params, tol)?;
    let verdict = constructible_by_tongue_angle(params, tongue_left, tol)?;
    for s in Side::BOTH {
        if !verdict[s].pass {
            let range = admissible_interval(params, tol)?;
            return Err(Error::Inadmissible { side: s, margin: verdict[s].margin, lo: range.lo, hi: range.hi });
        }
    }
    let crit = critical_angles_closed(params, &d);
    let f = Frame::new(params);
    let tongue_angle = PerSide::new(tongue_left, d.gap_angle - tongue_left);
    let tongue_offset = PerSide::from_fn(|s| d.gap_share[s] - tongue_angle[s]);
    let critical = PerSide::from_fn(|s| (tongue_angle[s] / 2.0 - crit[s]).abs() <= tol.angle_eps);
    let tip = f.apex + f.from_apex(Side::L, tongue_left) * params.edge_length;
    let mut ear_center = PerSide::new(tip, tip);
    for s in Side::BOTH {
        ear_center[s] = circumcenter(f.corner[s], f.pivot, tip, tol)?;
    }
    let on_ear_axis = |s: Side, angle_at_corner: f64| -> Result<Point2, Error> {
        let dir = f.from_corner(s, angle_at_corner);
        line_intersection(f.corner[s], dir, f.apex, ear_center[s] - f.apex)
            .map(|(p, _, _)| p)
            .ok_or_else(|| Error::Unavailable(format!("ear crease on the {s} side is parallel to the ear axis")))
    };
    let mut ear_foot = PerSide::new(tip, tip);
    let mut ear_hinge = PerSide::new(None, None);
    for s in Side::BOTH {
        let hinge = if params.tilt[s] > 0.0 {
            let at_corner = angle_between(f.corner[s], f.apex, ear_center[s]) - params.tilt[s];
            Some(on_ear_axis(s, at_corner)?)
        } else {
            None
        };
        ear_hinge[s] = hinge;
        ear_foot[s] = match (critical[s], hinge) {
            (true, Some(h)) => h,
            (true, None) => ear_center[s],
            (false, _) => on_ear_axis(s, PI - params.side_angle[s])?,
        };
    }
    let (tongue_mid, _, _) = line_intersection(f.pivot, tip - f.pivot, ear_center.l, ear_center.r - ear_center.l)
        .ok_or_else(|| Error::Unavailable("ear centers are aligned with the tongue".into()))?;
    Ok(ImprovedGeometry {
        apex: f.apex,
        corner: f.corner,
        pivot: f.pivot,
        tongue_tip: tip,
        ear_center,
        tongue_mid,
        ear_foot,
        ear_hinge,
        tongue_angle,
        tongue_offset,
        critical,
        ridge_dir: f.ridge_dir,
        pleat_dir: f.pleat_dir,
    })
}

pub fn build_improved(
    params: &GadgetParams,
    tongue_left: f64,
    options: ImprovedOptions,
    tol: &Tolerance,
) -> Result<ImprovedGadget, Error> {
    use Assignment::{Mountain as M, Valley as V};
    let g = improved_geometry(params, tongue_left, tol)?;
    let (a, tip) = (g.apex, g.tongue_tip);
    let mut b = CreaseBuilder::new();
    b.segment(a, tip, M);
    b.segment(g.ear_center.l, g.ear_center.r, V);
    b.mark(a, VertexCheck::Exempt);
    for s in Side::BOTH {
        let (corner, ear, foot) = (g.corner[s], g.ear_center[s], g.ear_foot[s]);
        b.ray(a, g.pleat_dir[s], M);
        b.ray(corner, g.ridge_dir[s], M);
        b.segment(a, corner, M);
        b.ray(corner, g.pleat_dir[s], V);
        b.ray(ear, g.ridge_dir[s], V);
        match (g.critical[s], g.ear_hinge[s]) {
            (false, None) => {
                b.segment(corner, foot, M).segment(tip, ear, M);
                b.segment(a, ear, V).segment(tip, foot, V);
            }
            (true, None) => {
                b.segment(corner, ear, M);
                b.segment(a, ear, V).segment(tip, ear, V);
            }
            (false, Some(hinge)) => {
                b.segment(tip, hinge, M).segment(tip, foot, V);
                match options.variant {
                    TiltedAssignment::Primary => {
                        b.segment(corner, ear, M).segment(corner, foot, M);
                        b.segment(a, ear, V).segment(corner, hinge, V);
                    }
                    TiltedAssignment::Alternate => {
                        b.segment(corner, hinge, M).segment(ear, hinge, M);
                        b.segment(a, hinge, V).segment(corner, foot, V).segment(corner, ear, V);
                    }
                }
            }
            (true, Some(_)) => {
                b.segment(corner, ear, M).segment(tip, foot, M);
                b.segment(a, ear, V).segment(corner, foot, V);
            }
        }
        b.mark(
            corner,
            VertexCheck::Wedge(Wedge {
                bounds: [g.pleat_dir[s], foot - corner],
                inside: g.ridge_dir[s],
                expected: 0.0,
            }),
        );
        let inside = if g.critical[s] && g.ear_hinge[s].is_none() { g.ridge_dir[s] } else { ear - foot };
        b.mark(foot, VertexCheck::Wedge(Wedge { bounds: [corner - foot, tip - foot], inside, expected: 0.0 }));
        if options.debug_lines {
            b.segment(corner, g.pivot, Assignment::Flat);
        }
    }
    b.mark(
        tip,
        VertexCheck::Wedge(Wedge {
            bounds: [g.ear_foot.l - tip, g.ear_foot.r - tip],
            inside: g.pivot - tip,
            expected: params.top_angle,
        }),
    );
    if options.debug_lines {
        b.segment(a, g.pivot, Assignment::Flat);
        b.segment(g.pivot, tip, Assignment::Flat);
    }
    let variant = match options.variant {
        TiltedAssignment::Primary => "primary",
        TiltedAssignment::Alternate => "alternate",
    };
    let meta = Metadata::for_gadget("improved", params)
        .with_parameter("tongue_left_deg", g.tongue_angle.l.to_degrees())
        .with_flag("critical_left", g.critical.l.to_string())
        .with_flag("critical_right", g.critical.r.to_string())
        .with_flag("tilted_assignment", variant)
        .with_flag("debug_lines", options.debug_lines.to_string());
    let pattern = b.finish(meta)?;
    Ok(ImprovedGadget { geometry: g, pattern, variant: options.variant })
}

/// Resolves a placement and builds the gadget.
pub fn build_improved_with(
    params: &GadgetParams,
    placement: TonguePlacement,
    options: ImprovedOptions,
    tol: &Tolerance,
) -> Result<(Resolved, ImprovedGadget), Error> {
    let r = resolve(placement, params, tol)?;
    let g = build_improved(params, r.tongue_angle_left, options, tol)?;
    Ok((r, g))
}

/// Shift of the ear center seen from the pivot, per side.
pub fn circum_shifts(params: &GadgetParams, geom: &ImprovedGeometry, tol: &Tolerance) -> Result<PerSide<f64>, Error> {
    let d = derive(params, tol)?;
    Ok(PerSide::from_fn(|s| circum_shift(geom.tongue_offset[s], d.apex_ratio)))
}

/// Slack from the closed form.
pub fn slack(params: &GadgetParams, geom: &ImprovedGeometry, tol: &Tolerance) -> Result<PerSide<f64>, Error> {
    let d = derive(params, tol)?;
    let shift = circum_shifts(params, geom, tol)?;
    Ok(PerSide::from_fn(|s| {
        params.side_angle[s] + d.gap_share[s] / 2.0 + geom.tongue_offset[s] / 2.0 + shift[s] - FRAC_PI_2
    }))
}

/// Slack measured at the tongue tip.
pub fn measured_slack(geom: &ImprovedGeometry) -> PerSide<f64> {
    PerSide::from_fn(|s| {
        if geom.critical[s] {
            return 0.0;
        }
        let far = geom.ear_hinge[s].unwrap_or(geom.ear_center[s]);
        angle_between(geom.tongue_tip, far, geom.ear_foot[s])
    })
}

/// Angle identities of the ear triangles, each measured against its formula.
pub fn ear_angle_checks(params: &GadgetParams, geom: &ImprovedGeometry, tol: &Tolerance) -> Result<CheckReport, Error> {
    let d = derive(params, tol)?;
    let shift = circum_shifts(params, geom, tol)?;
    let mut r = CheckReport::default();
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9;
    let push = |r: &mut CheckReport, name: String, measured: f64, formula: f64| {
        r.push(
            name,
            close(measured, formula),
            format!("measured {:.9} deg, formula {:.9} deg", measured.to_degrees(), formula.to_degrees()),
        );
    };
    for s in Side::BOTH {
        let (a, b, c, e) = (geom.apex, geom.corner[s], geom.pivot, geom.ear_center[s]);
        let (share, offset, tilt) = (d.gap_share[s], geom.tongue_offset[s], params.tilt[s]);
        let corner_turn = angle_between(b, a, e) - angle_between(b, a, c);
        let at_ear = angle_between(e, a, b);
        // Measured toward the other ear: the pivot-to-tip line can meet the ear line outside the segment.
        let toward_mid = angle_between(e, c, geom.ear_center[s.other()]);
        let tag = s.name();
        push(&mut r, format!("corner-turn-{tag}"), corner_turn, share / 2.0 + offset / 2.0 + shift[s]);
        push(&mut r, format!("ear-apex-angle-{tag}"), at_ear, FRAC_PI_2 - share - tilt - shift[s]);
        push(&mut r, format!("ear-mid-angle-{tag}"), toward_mid, share / 2.0 + tilt - offset / 2.0);
        push(&mut r, format!("ear-angles-sum-{tag}"), corner_turn + at_ear + toward_mid, FRAC_PI_2);
        push(
            &mut r,
            format!("apex-corner-ear-{tag}"),
            angle_between(b, a, e),
            FRAC_PI_2 + share / 2.0 + tilt + offset / 2.0 + shift[s],
        );
        // The shift equals the angle at the pivot between apex and tip, signed like the offset.
        let measured_shift = -s.turn() * signed_angle(c, a, geom.tongue_tip).unwrap_or(0.0);
        push(&mut r, format!("circum-shift-{tag}"), measured_shift, shift[s]);
        push(&mut r, format!("ear-axis-halves-tongue-{tag}"), angle_between(a, b, e), geom.tongue_angle[s] / 2.0);
    }
    Ok(r)
}
