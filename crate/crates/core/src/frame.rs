//! Canonical placement of a gadget in the plane.
//!
//! The apex sits at the origin and the bottom gap angle is bisected by the
//! negative y axis, with the left corner in the half-plane x < 0. Mirroring
//! left and right is then a literal negation of x.

use std::f64::consts::FRAC_PI_2;

use crate::geom::{line_intersection, Point2, ORIGIN};
use crate::params::{GadgetParams, PerSide, Side};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub apex: Point2,
    /// Far end of each apex edge.
    pub corner: PerSide<Point2>,
    /// Direction angle of apex-to-corner.
    pub edge_angle: PerSide<f64>,
    /// Unit direction of the outgoing ridge crease leaving each corner.
    pub ridge_dir: PerSide<Point2>,
    /// Unit direction of the side creases (from the apex) and outer pleats (from the corners).
    pub pleat_dir: PerSide<Point2>,
    /// Common point of the two perpendiculars to the ridges through the corners.
    pub pivot: Point2,
    pub gap_angle: f64,
}

impl Frame {
    pub fn new(params: &GadgetParams) -> Frame {
        let gap = params.gap_angle();
        let edge_angle = PerSide::from_fn(|s| -FRAC_PI_2 + s.turn() * gap / 2.0);
        let corner = edge_angle.map(|_, &a| Point2::from_angle(a) * params.edge_length);
        let ridge_angle = PerSide::from_fn(|s| edge_angle[s] + s.turn() * params.tilt[s]);
        let ridge_dir = ridge_angle.map(|_, &a| Point2::from_angle(a));
        let inward_normal = PerSide::from_fn(|s| Point2::from_angle(ridge_angle[s] - s.turn() * FRAC_PI_2));
        let pivot = line_intersection(corner.l, inward_normal.l, corner.r, inward_normal.r)
            .map(|(p, _, _)| p)
            .unwrap_or(Point2::new(f64::NAN, f64::NAN));
        let pleat_dir = PerSide::from_fn(|s| Point2::from_angle(edge_angle[s] + s.turn() * params.side_angle[s]));
        Frame { apex: ORIGIN, corner, edge_angle, ridge_dir, pleat_dir, pivot, gap_angle: gap }
    }

    /// Unit direction leaving the corner at `angle` from corner-to-apex, turned into the gap.
    pub fn from_corner(&self, side: Side, angle: f64) -> Point2 {
        let back = (self.apex - self.corner[side]).angle();
        Point2::from_angle(back + side.turn() * angle)
    }

    /// Unit direction leaving the apex at `angle` from the apex edge, turned into the gap.
    pub fn from_apex(&self, side: Side, angle: f64) -> Point2 {
        Point2::from_angle(self.edge_angle[side] - side.turn() * angle)
    }

    /// A point on the perpendicular bisector of corner-to-pivot; its direction is the ridge direction.
    pub fn bisector_anchor(&self, side: Side) -> Point2 {
        self.corner[side].midpoint(self.pivot)
    }
}
