//! The pyramid-supported gadget.

use std::f64::consts::PI;

use crate::crease::{Assignment, CreaseBuilder, CreasePattern, Metadata, VertexCheck, Wedge};
use crate::error::Error;
use crate::frame::Frame;
use crate::geom::{angle_between, line_intersection, signed_angle, Point2, Ray2, Tolerance};
use crate::params::{validate, GadgetParams, PerSide, Side, ValidationMode};
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConventionalGeometry {
    pub apex: Point2,
    pub corner: PerSide<Point2>,
    pub pivot: Point2,
    /// Base corners of the supporting pyramid.
    pub base: PerSide<Point2>,
    pub side_crease: PerSide<Ray2>,
    pub outer_pleat: PerSide<Ray2>,
    pub ridge: PerSide<Ray2>,
    pub inner_pleat: PerSide<Ray2>,
    pub top_angle: f64,
    pub gap_angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BuildOptions {
    /// Keep construction lines as flat edges.
    pub debug_lines: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConventionalGadget {
    pub geometry: ConventionalGeometry,
    pub pattern: CreasePattern,
}

pub fn conventional_geometry(params: &GadgetParams, tol: &Tolerance) -> Result<ConventionalGeometry, Error> {
    let report = validate(params, ValidationMode::Conventional, tol);
    if !report.passed() {
        return Err(Error::InvalidParams(report));
    }
    let f = Frame::new(params);
    let mut base = PerSide::new(f.pivot, f.pivot);
    for s in Side::BOTH {
        let dir = f.from_corner(s, PI - params.side_angle[s]);
        let (x, t, _) = line_intersection(f.corner[s], dir, f.bisector_anchor(s), f.ridge_dir[s])
            .filter(|&(_, t, _)| t > 0.0)
            .ok_or_else(|| Error::Unavailable(format!("pyramid base corner on the {s} side does not exist")))?;
        debug_assert!(t > 0.0);
        base[s] = x;
    }
    let ray = |o: Point2, d: Point2| Ray2 { origin: o, direction: d };
    Ok(ConventionalGeometry {
        apex: f.apex,
        corner: f.corner,
        pivot: f.pivot,
        base,
        side_crease: PerSide::from_fn(|s| ray(f.apex, f.pleat_dir[s])),
        outer_pleat: PerSide::from_fn(|s| ray(f.corner[s], f.pleat_dir[s])),
        ridge: PerSide::from_fn(|s| ray(f.corner[s], f.ridge_dir[s])),
        inner_pleat: PerSide::from_fn(|s| ray(base[s], f.ridge_dir[s])),
        top_angle: params.top_angle,
        gap_angle: f.gap_angle,
    })
}

pub fn build_conventional(
    params: &GadgetParams,
    options: BuildOptions,
    tol: &Tolerance,
) -> Result<ConventionalGadget, Error> {
    use Assignment::{Mountain as M, Valley as V};
    let g = conventional_geometry(params, tol)?;
    let mut b = CreaseBuilder::new();
    for s in Side::BOTH {
        b.ray(g.apex, g.side_crease[s].direction, M);
        b.ray(g.corner[s], g.ridge[s].direction, M);
        b.segment(g.apex, g.corner[s], M);
        b.segment(g.corner[s], g.base[s], M);
        b.ray(g.corner[s], g.outer_pleat[s].direction, V);
        b.ray(g.base[s], g.inner_pleat[s].direction, V);
        b.segment(g.apex, g.base[s], V);
        b.mark(
            g.corner[s],
            VertexCheck::Wedge(Wedge {
                bounds: [g.outer_pleat[s].direction, g.base[s] - g.corner[s]],
                inside: g.ridge[s].direction,
                expected: 0.0,
            }),
        );
        // The flat part below the pyramid folds the base triangle's angle into the rim.
        let other = g.base[s.other()];
        b.mark(
            g.base[s],
            VertexCheck::Wedge(Wedge {
                bounds: [g.corner[s] - g.base[s], other - g.base[s]],
                inside: g.pivot - g.base[s],
                expected: angle_between(g.base[s], g.pivot, other),
            }),
        );
        if options.debug_lines {
            b.segment(g.corner[s], g.pivot, Assignment::Flat);
        }
    }
    b.segment(g.base.l, g.base.r, V);
    b.mark(g.apex, VertexCheck::Exempt);
    if options.debug_lines {
        b.segment(g.apex, g.pivot, Assignment::Flat);
    }
    let meta = Metadata::for_gadget("conventional", params).with_flag("debug_lines", options.debug_lines.to_string());
    let pattern = b.finish(meta)?;
    Ok(ConventionalGadget { geometry: g, pattern })
}

/// Folding feasibility of the supporting pyramid.
pub fn pyramid_checks(g: &ConventionalGeometry) -> CheckReport {
    let mut r = CheckReport::default();
    let at_pivot = angle_between(g.corner.l, g.apex, g.base.l)
        + angle_between(g.corner.r, g.apex, g.base.r)
        + angle_between(g.pivot, g.base.l, g.base.r);
    r.push("solid-angle-at-pivot", at_pivot < 2.0 * PI, format!("{:.6} deg < 360 deg", at_pivot.to_degrees()));
    let sides = angle_between(g.apex, g.corner.l, g.base.l) + angle_between(g.apex, g.corner.r, g.base.r);
    let between = angle_between(g.apex, g.base.l, g.base.r);
    r.push(
        "apex-triangle-inequality",
        sides > between,
        format!("{:.6} deg > {:.6} deg", sides.to_degrees(), between.to_degrees()),
    );
    let ordered = signed_angle(g.apex, g.base.l, g.base.r).map(|a| a > 0.0).unwrap_or(false);
    let apex_to_meet = PerSide::from_fn(|s| {
        let corner_to_base = angle_between(g.corner[s], g.apex, g.base[s]);
        (g.gap_angle / 2.0, corner_to_base)
    });
    let below = apex_to_meet.l.0 < apex_to_meet.l.1 && apex_to_meet.r.0 < apex_to_meet.r.1;
    r.push(
        "base-corners-ordered",
        ordered && below,
        format!(
            "half gap {:.6} deg below corner angles {:.6} / {:.6} deg",
            apex_to_meet.l.0.to_degrees(),
            apex_to_meet.l.1.to_degrees(),
            apex_to_meet.r.1.to_degrees()
        ),
    );
    r
}
