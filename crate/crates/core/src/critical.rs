//! Critical angles: the largest half tongue angle each side tolerates.

use std::f64::consts::PI;

use crate::error::Error;
use crate::frame::Frame;
use crate::geom::{angle_between, line_intersection, Point2, Tolerance};
use crate::params::{derive, DerivedQuantities, GadgetParams, PerSide, Side};
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalAngleConstruction {
    /// Where the two corner-to-pivot bisectors meet; on the symmetry axis of the corners.
    pub bisector_meet: Point2,
    /// Where the critical ray from each corner stops.
    pub critical_point: PerSide<Point2>,
    pub critical_angle: PerSide<f64>,
}

/// True when the side saturates at half the gap angle.
pub fn saturated(params: &GadgetParams, side: Side) -> bool {
    params.side_angle[side] + params.gap_angle() / 2.0 + params.tilt[side.other()] >= PI
}

/// Critical angles by ruler-and-compass construction.
pub fn critical_angles_geometric(params: &GadgetParams, tol: &Tolerance) -> Result<CriticalAngleConstruction, Error> {
    derive(params, tol)?;
    let f = Frame::new(params);
    let (meet, _, _) =
        line_intersection(f.bisector_anchor(Side::L), f.ridge_dir.l, f.bisector_anchor(Side::R), f.ridge_dir.r)
            .ok_or_else(|| Error::Unavailable("corner bisectors are parallel".into()))?;
    let mut point = PerSide::new(meet, meet);
    for s in Side::BOTH {
        let corner = f.corner[s];
        let dir = f.from_corner(s, PI - params.side_angle[s] + params.tilt[s]);
        let on_axis = line_intersection(corner, dir, f.apex, meet - f.apex)
            .filter(|&(_, t, u)| t > 0.0 && (-1e-12..=1.0 + 1e-12).contains(&u));
        point[s] = match on_axis {
            Some((x, _, _)) => x,
            None => line_intersection(corner, dir, meet, f.ridge_dir[s])
                .filter(|&(_, t, u)| t > 0.0 && u >= -1e-9)
                .map(|(x, _, _)| x)
                .ok_or_else(|| Error::Unavailable(format!("critical ray on the {s} side misses")))?,
        };
    }
    let critical_angle = PerSide::from_fn(|s| angle_between(f.apex, f.corner[s], point[s]));
    Ok(CriticalAngleConstruction { bisector_meet: meet, critical_point: point, critical_angle })
}

/// Critical angles from the closed form, written with cotangents so right angles stay finite.
pub fn critical_angles_closed(params: &GadgetParams, derived: &DerivedQuantities) -> PerSide<f64> {
    PerSide::from_fn(|s| {
        if saturated(params, s) {
            return derived.gap_angle / 2.0;
        }
        let tan_tilt = derived.tan_tilt[s];
        let num = 1.0 - tan_tilt * derived.cot_half_gap_tilted;
        let den = 1.0 / derived.tan_half_gap
            + derived.cot_half_gap_tilted
            + (1.0 + tan_tilt / derived.tan_half_gap) * derived.cot_side_minus_tilt[s];
        num.atan2(den)
    })
}

/// Convenience: validated closed-form critical angles.
pub fn critical_angles(params: &GadgetParams, tol: &Tolerance) -> Result<PerSide<f64>, Error> {
    let d = derive(params, tol)?;
    Ok(critical_angles_closed(params, &d))
}

/// The sum bound and the per-side half-share equivalence.
pub fn check_critical_theorems(params: &GadgetParams, tol: &Tolerance) -> Result<CheckReport, Error> {
    let d = derive(params, tol)?;
    let z = critical_angles_closed(params, &d);
    let half = d.gap_angle / 2.0;
    let mut report = CheckReport::default();
    let sum = z.l + z.r;
    report.push(
        "critical-sum-exceeds-half-gap",
        sum > half,
        format!("{:.6} deg > {:.6} deg", sum.to_degrees(), half.to_degrees()),
    );
    for s in Side::BOTH {
        let share = d.gap_share[s];
        let lhs_margin = PI / 2.0 - (params.side_angle[s] + share / 2.0);
        let rhs_margin = share / 2.0 - z[s];
        let marginal = lhs_margin.abs() <= tol.angle_eps || rhs_margin.abs() <= tol.angle_eps;
        let holds = marginal || (lhs_margin >= 0.0) == (rhs_margin >= 0.0);
        report.push(
            format!("half-share-equivalence-{}", s.name()),
            holds,
            format!("side + share/2 <= 90 deg is {}, critical <= share/2 is {}", lhs_margin >= 0.0, rhs_margin >= 0.0),
        );
    }
    report.inform(
        "critical-sum-exceeds-gap",
        sum > d.gap_angle,
        format!(
            "{:.6} deg vs gap {:.6} deg (stronger reading, not required)",
            sum.to_degrees(),
            d.gap_angle.to_degrees()
        ),
    );
    Ok(report)
}
