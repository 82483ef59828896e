//! Gadget input angles, their feasibility conditions and derived scalars.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::Tolerance;

/// Which half of the gadget a quantity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::L, Side::R];

    pub fn other(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }

    /// Orientation sign: the left half turns clockwise, the right half counter-clockwise.
    pub fn turn(self) -> f64 {
        match self {
            Side::L => -1.0,
            Side::R => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::L => "left",
            Side::R => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A value for each side.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PerSide<T> {
    pub l: T,
    pub r: T,
}

impl<T> PerSide<T> {
    pub fn new(l: T, r: T) -> Self {
        PerSide { l, r }
    }

    pub fn from_fn(mut f: impl FnMut(Side) -> T) -> Self {
        let l = f(Side::L);
        let r = f(Side::R);
        PerSide { l, r }
    }

    pub fn map<U>(&self, mut f: impl FnMut(Side, &T) -> U) -> PerSide<U> {
        PerSide { l: f(Side::L, &self.l), r: f(Side::R, &self.r) }
    }

    pub fn swapped(self) -> Self {
        PerSide { l: self.r, r: self.l }
    }
}

impl<T> Index<Side> for PerSide<T> {
    type Output = T;
    fn index(&self, s: Side) -> &T {
        match s {
            Side::L => &self.l,
            Side::R => &self.r,
        }
    }
}

impl<T> IndexMut<Side> for PerSide<T> {
    fn index_mut(&mut self, s: Side) -> &mut T {
        match s {
            Side::L => &mut self.l,
            Side::R => &mut self.r,
        }
    }
}

/// Input angles of one gadget, in radians.
///
/// `top_angle` is the inner angle of the top face at the apex, `side_angle` the
/// angle of each side face at the apex, and `tilt` how far each outgoing ridge
/// is turned outward from the straight continuation of the apex edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GadgetParams {
    pub top_angle: f64,
    pub side_angle: PerSide<f64>,
    pub tilt: PerSide<f64>,
    pub edge_length: f64,
}

impl GadgetParams {
    pub fn new(top_angle: f64, side_left: f64, side_right: f64) -> Self {
        GadgetParams {
            top_angle,
            side_angle: PerSide::new(side_left, side_right),
            tilt: PerSide::new(0.0, 0.0),
            edge_length: 1.0,
        }
    }

    pub fn from_degrees(top: f64, side_left: f64, side_right: f64) -> Self {
        Self::new(top.to_radians(), side_left.to_radians(), side_right.to_radians())
    }

    pub fn with_tilts(mut self, left: f64, right: f64) -> Self {
        self.tilt = PerSide::new(left, right);
        self
    }

    pub fn with_edge_length(mut self, length: f64) -> Self {
        self.edge_length = length;
        self
    }

    /// The angle between the two apex edges on the bottom side.
    pub fn gap_angle(&self) -> f64 {
        2.0 * PI - self.top_angle - self.side_angle.l - self.side_angle.r
    }

    pub fn tilt_sum(&self) -> f64 {
        self.tilt.l + self.tilt.r
    }

    pub fn untilted(&self) -> bool {
        self.tilt.l == 0.0 && self.tilt.r == 0.0
    }

    /// The same gadget seen in a mirror: left and right exchanged.
    pub fn mirrored(&self) -> Self {
        GadgetParams { side_angle: self.side_angle.swapped(), tilt: self.tilt.swapped(), ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// Pyramid-supported gadget: no tilt allowed.
    Conventional,
    /// Flat-back gadget.
    Improved,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub id: &'static str,
    pub description: &'static str,
    /// Signed slack in radians (or length units); positive means satisfied.
    pub margin: f64,
    pub pass: bool,
    /// |margin| is below the angle tolerance.
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConditionReport {
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> =
            self.failures().map(|c| format!("{} ({}, margin {:.3e})", c.id, c.description, c.margin)).collect();
        if failed.is_empty() {
            f.write_str("all conditions hold")
        } else {
            write!(f, "violated: {}", failed.join("; "))
        }
    }
}

/// Checks the feasibility conditions of the chosen construction.
pub fn validate(params: &GadgetParams, mode: ValidationMode, tol: &Tolerance) -> ConditionReport {
    let top = params.top_angle;
    let (sl, sr) = (params.side_angle.l, params.side_angle.r);
    let total = top + sl + sr;
    let mut out = Vec::new();
    let mut push = |id, description, margin: f64, strict: bool| {
        let pass = margin.is_finite() && if strict { margin > 0.0 } else { margin >= 0.0 };
        out.push(Condition { id, description, margin, pass, marginal: margin.abs() < tol.angle_eps });
    };
    push("edge-length-positive", "apex edge length is positive", params.edge_length, true);
    push("top-angle-range", "0 < top angle < pi", top.min(PI - top), true);
    push("sides-exceed-top", "top angle < left side + right side", sl + sr - top, true);
    push("left-below-top-plus-right", "left side < top + right side", top + sr - sl, true);
    push("right-below-top-plus-left", "right side < top + left side", top + sl - sr, true);
    push("total-below-full-turn", "top + left side + right side < 2 pi", 2.0 * PI - total, true);
    match mode {
        ValidationMode::Conventional => {
            push("total-above-half-turn", "top + left side + right side > pi", total - PI, true);
            let tilt = params.tilt.l.abs().max(params.tilt.r.abs());
            push("tilt-zero", "both tilts vanish", -tilt, false);
        }
        ValidationMode::Improved => {
            for s in Side::BOTH {
                let (t, b) = (params.tilt[s], params.side_angle[s]);
                let (nonneg, below_side, below_right) = match s {
                    Side::L => ("tilt-nonnegative-left", "tilt-below-side-left", "tilt-below-right-angle-left"),
                    Side::R => ("tilt-nonnegative-right", "tilt-below-side-right", "tilt-below-right-angle-right"),
                };
                push(nonneg, "tilt >= 0", t, false);
                push(below_side, "tilt < side angle", b - t, true);
                push(below_right, "tilt < pi/2", FRAC_PI_2 - t, true);
            }
            push(
                "gap-plus-tilts-below-half-turn",
                "gap angle + both tilts < pi",
                PI - params.gap_angle() - params.tilt_sum(),
                true,
            );
        }
    }
    ConditionReport { conditions: out }
}

/// Scalars every later construction needs.
///
/// The tangent bundle is stored together with the cotangents of the factors
/// that blow up at right angles; formulas use the cotangent form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub gap_angle: f64,
    /// Angle between an apex edge and the apex-to-pivot segment.
    pub gap_share: PerSide<f64>,
    /// Length of apex-to-pivot over apex edge length.
    pub apex_ratio: f64,
    /// Extrusion height over apex edge length.
    pub height_ratio: f64,
    pub tan_half_gap: f64,
    pub tan_half_gap_tilted: f64,
    pub cot_half_gap_tilted: f64,
    pub tan_side_minus_tilt: PerSide<f64>,
    pub cot_side_minus_tilt: PerSide<f64>,
    pub tan_tilt: PerSide<f64>,
}

/// Extrusion height over edge length for the given top and side angles.
pub fn height_ratio(top: f64, side_l: f64, side_r: f64) -> f64 {
    let (cl, cr) = (side_l.cos(), side_r.cos());
    let st = top.sin();
    let v = 1.0 - (cl * cl + cr * cr - 2.0 * top.cos() * cl * cr) / (st * st);
    v.max(0.0).sqrt()
}

/// Angle between edge `side` and the apex-to-pivot segment, from the tangent formula.
pub fn gap_share(gap: f64, tilt_own: f64, tilt_other: f64) -> f64 {
    // Multiply numerator and denominator by cos(own)·cos(other) > 0 to stay finite.
    let (so, co) = tilt_own.sin_cos();
    let (sx, cx) = tilt_other.sin_cos();
    let (sg, cg) = gap.sin_cos();
    let num = (1.0 - cg) * cx * co + sg * sx * co;
    let den = sg * cx * co + cg * sx * co + so * cx;
    num.atan2(den)
}

/// Validates in improved mode and computes every derived scalar.
pub fn derive(params: &GadgetParams, tol: &Tolerance) -> Result<DerivedQuantities, Error> {
    let report = validate(params, ValidationMode::Improved, tol);
    if !report.passed() {
        return Err(Error::InvalidParams(report));
    }
    Ok(derive_unchecked(params))
}

pub(crate) fn derive_unchecked(params: &GadgetParams) -> DerivedQuantities {
    let gap = params.gap_angle();
    let tilt = params.tilt;
    let share = PerSide::from_fn(|s| gap_share(gap, tilt[s], tilt[s.other()]));
    let (sl, cl) = share.l.sin_cos();
    let apex_ratio = 1.0 / (cl - sl * tilt.l.tan());
    let tilted = 0.5 * gap + tilt.l + tilt.r;
    let side_minus = PerSide::from_fn(|s| params.side_angle[s] - tilt[s]);
    DerivedQuantities {
        gap_angle: gap,
        gap_share: share,
        apex_ratio,
        height_ratio: height_ratio(params.top_angle, params.side_angle.l, params.side_angle.r),
        tan_half_gap: (0.5 * gap).tan(),
        tan_half_gap_tilted: tilted.tan(),
        cot_half_gap_tilted: tilted.cos() / tilted.sin(),
        tan_side_minus_tilt: side_minus.map(|_, a| a.tan()),
        cot_side_minus_tilt: side_minus.map(|_, a| a.cos() / a.sin()),
        tan_tilt: tilt.map(|_, a| a.tan()),
    }
}
