//! How far a gadget's pleats reach along the bottom edges, relative to the
//! extrusion height, and the regular-prism height optimization.

use std::f64::consts::PI;

use crate::conventional::conventional_geometry;
use crate::critical::critical_angles_closed;
use crate::error::Error;
use crate::geom::Tolerance;
use crate::improved::{improved_geometry, slack, ImprovedGeometry};
use crate::params::{derive, GadgetParams, PerSide, Side};
use crate::report::CheckReport;
use crate::validator::circum_shift;

/// Which closed form gave the inner coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerBranch {
    /// The outer pleat meets the inner pleat ray.
    AlongInnerPleat,
    /// The outer pleat meets the segment between the ear centers.
    AcrossEars,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceReport {
    /// Only defined for untilted gadgets.
    pub conventional: Option<PerSide<f64>>,
    pub inner: PerSide<f64>,
    pub outer: PerSide<f64>,
    /// Slack minus tilt; its sign picks the inner branch.
    pub slack_excess: PerSide<f64>,
    pub inner_branch: PerSide<InnerBranch>,
    pub height_ratio: f64,
}

/// Conventional coefficient of one side.
pub fn kappa_conv(params: &GadgetParams, side: Side, tol: &Tolerance) -> Result<f64, Error> {
    if !params.untilted() {
        return Err(Error::Unavailable("the conventional coefficient needs zero tilts".into()));
    }
    let d = derive(params, tol)?;
    Ok(d.tan_half_gap / (2.0 * d.height_ratio * params.side_angle[side].sin()))
}

/// Outer coefficient from the closed form.
pub fn kappa_out(params: &GadgetParams, geom: &ImprovedGeometry, side: Side, tol: &Tolerance) -> Result<f64, Error> {
    let d = derive(params, tol)?;
    let beta = params.side_angle[side];
    let half = geom.tongue_angle[side] / 2.0;
    // sin/tan written as sin·cos/sin to stay finite near zero tongue angles.
    let reach = half.sin() / (beta.sin() * half.cos() - beta.cos() * half.sin());
    Ok(reach / d.height_ratio)
}

/// Outer coefficient measured as corner-to-foot distance.
pub fn kappa_out_measured(
    params: &GadgetParams,
    geom: &ImprovedGeometry,
    side: Side,
    tol: &Tolerance,
) -> Result<f64, Error> {
    let d = derive(params, tol)?;
    Ok(geom.corner[side].dist(geom.ear_foot[side]) / (d.height_ratio * params.edge_length))
}

/// Inner coefficient and the branch used.
pub fn kappa_in(
    params: &GadgetParams,
    geom: &ImprovedGeometry,
    side: Side,
    tol: &Tolerance,
) -> Result<(f64, InnerBranch, f64), Error> {
    let d = derive(params, tol)?;
    let excess = slack(params, geom, tol)?[side] - params.tilt[side];
    let (beta, tilt, other_tilt) = (params.side_angle[side], params.tilt[side], params.tilt[side.other()]);
    let twice = if excess <= 0.0 {
        let g = d.gap_angle;
        (other_tilt.cos() - (g + other_tilt).cos()) / ((beta - tilt).sin() * (g + params.tilt_sum()).sin())
    } else {
        inner_across_ears(beta, d.gap_share[side], geom.tongue_offset[side], d.apex_ratio)
    };
    let branch = if excess <= 0.0 { InnerBranch::AlongInnerPleat } else { InnerBranch::AcrossEars };
    Ok((twice / (2.0 * d.height_ratio), branch, excess))
}

fn inner_across_ears(beta: f64, share: f64, offset: f64, ratio: f64) -> f64 {
    let shift = circum_shift(offset, ratio);
    (ratio * ratio - 2.0 * ratio * offset.cos() + 1.0).sqrt() / (PI - beta - share - shift).cos()
}

/// Polynomial form of twice the inner reach for untilted gadgets; `None` when the denominator is tiny.
pub fn inner_reach_polynomial(params: &GadgetParams, side: Side, tongue: f64) -> Option<f64> {
    let c = (params.gap_angle() / 2.0).tan();
    let beta = params.side_angle[side];
    let (s, co) = tongue.sin_cos();
    let den = beta.cos() * (1.0 - co) + beta.sin() * (s - c);
    (den.abs() > 1e-6).then(|| -(c * c + 2.0 - 2.0 * co - 2.0 * c * s) / den)
}

/// All coefficients of an improved gadget.
pub fn interference(params: &GadgetParams, tongue_left: f64, tol: &Tolerance) -> Result<InterferenceReport, Error> {
    let d = derive(params, tol)?;
    let geom = improved_geometry(params, tongue_left, tol)?;
    let conventional = if params.untilted() {
        Some(PerSide::new(kappa_conv(params, Side::L, tol)?, kappa_conv(params, Side::R, tol)?))
    } else {
        None
    };
    let l = kappa_in(params, &geom, Side::L, tol)?;
    let r = kappa_in(params, &geom, Side::R, tol)?;
    Ok(InterferenceReport {
        conventional,
        inner: PerSide::new(l.0, r.0),
        outer: PerSide::new(kappa_out(params, &geom, Side::L, tol)?, kappa_out(params, &geom, Side::R, tol)?),
        slack_excess: PerSide::new(l.2, r.2),
        inner_branch: PerSide::new(l.1, r.1),
        height_ratio: d.height_ratio,
    })
}

/// Inner and outer coefficients never exceed the conventional one; they
/// match it exactly on a critical side.
pub fn downward_compatibility(params: &GadgetParams, tongue_left: f64, tol: &Tolerance) -> Result<CheckReport, Error> {
    if !params.untilted() {
        return Err(Error::Unavailable("downward compatibility is stated for zero tilts".into()));
    }
    let d = derive(params, tol)?;
    let rep = interference(params, tongue_left, tol)?;
    let conv = rep.conventional.expect("untilted");
    let crit = critical_angles_closed(params, &d);
    let tongue = PerSide::new(tongue_left, d.gap_angle - tongue_left);
    let mut out = CheckReport::default();
    for s in Side::BOTH {
        let tag = s.name();
        let slackness = 1e-9 * conv[s].max(1.0);
        let critical = (tongue[s] / 2.0 - crit[s]).abs() <= tol.angle_eps;
        for (what, k) in [("inner", rep.inner[s]), ("outer", rep.outer[s])] {
            out.push(
                format!("{what}-within-conventional-{tag}"),
                k <= conv[s] + slackness,
                format!("{k:.12} <= {:.12}", conv[s]),
            );
            let equal = (conv[s] - k).abs() <= slackness;
            out.push(
                format!("{what}-equal-iff-critical-{tag}"),
                equal == critical,
                format!("equal {equal}, critical {critical}"),
            );
        }
    }
    Ok(out)
}

/// One column of the regular-prism table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrismOptimum {
    pub n: u32,
    pub kappa_min: f64,
    /// Tangent of half the left tongue angle at the optimum.
    pub tangent_argmin: f64,
    pub tongue_argmin_deg: f64,
    pub offset_argmin_deg: f64,
    /// Value at the orthogonal placement.
    pub kappa_orthogonal: f64,
    pub kappa_conv: f64,
}

impl PrismOptimum {
    /// Named values in table order.
    pub fn columns(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("kappa_min", self.kappa_min),
            ("t_argmin", self.tangent_argmin),
            ("psi_argmin_deg", self.offset_argmin_deg),
            ("kappa_0", self.kappa_orthogonal),
            ("kappa_conv", self.kappa_conv),
            ("inv_kappa_min", 1.0 / self.kappa_min),
            ("inv_kappa_0", 1.0 / self.kappa_orthogonal),
            ("inv_kappa_conv", 1.0 / self.kappa_conv),
            ("ratio_min_0", self.kappa_orthogonal / self.kappa_min),
            ("ratio_min_conv", self.kappa_conv / self.kappa_min),
        ]
    }
}

/// Parameters of the gadget used n times around a regular n-gon prism.
pub fn prism_params(n: u32) -> GadgetParams {
    let n = n as f64;
    GadgetParams::new((1.0 - 2.0 / n) * PI, PI / 2.0, PI / 2.0)
}

/// Sum of the left inner and right outer coefficients as a function of
/// the tangent of half the left tongue angle.
pub fn prism_objective(n: u32, t: f64) -> f64 {
    let c = (PI / n as f64).tan();
    let inner = 0.5 * ((c * c + 4.0) * t * t - 4.0 * c * t + c * c) / (c * t * t - 2.0 * t + c);
    let outer = (c - t) / (1.0 + c * t);
    inner + outer
}

/// Admissible tangent range and the orthogonal tangent.
pub fn prism_range(n: u32) -> (f64, f64, f64) {
    let c = (PI / n as f64).tan();
    (c / (c * c + 2.0), c / 2.0, ((c * c + 1.0).sqrt() - 1.0) / c)
}

/// Derivative-free minimization on a closed interval; the ends are compared too.
pub fn golden_section(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, max_iter: usize) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..max_iter {
        if b - a <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    [(mid, f(mid)), (lo, f(lo)), (hi, f(hi))].into_iter().min_by(|p, q| p.1.total_cmp(&q.1)).expect("three candidates")
}

pub fn optimize_prism(n: u32) -> Result<PrismOptimum, Error> {
    if n < 3 {
        return Err(Error::Unavailable(format!("a prism needs at least 3 sides, got {n}")));
    }
    let (lo, hi, ortho) = prism_range(n);
    let (t, k) = golden_section(|t| prism_objective(n, t), lo, hi, 1e-12, 200);
    let tongue = 2.0 * t.atan();
    let half_gap = PI / n as f64;
    Ok(PrismOptimum {
        n,
        kappa_min: k,
        tangent_argmin: t,
        tongue_argmin_deg: tongue.to_degrees(),
        offset_argmin_deg: (half_gap - tongue).to_degrees(),
        kappa_orthogonal: prism_objective(n, ortho),
        kappa_conv: half_gap.tan(),
    })
}

/// Rounds to `digits` significant figures.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let scale = 10f64.powi(digits - 1 - x.abs().log10().floor() as i32);
    (x * scale).round() / scale
}

/// Formats with `digits` significant figures, without trailing exponent noise.
pub fn format_sig(x: f64, digits: i32) -> String {
    let r = round_sig(x, digits);
    let mag = if r == 0.0 { 0 } else { r.abs().log10().floor() as i32 };
    let decimals = (digits - 1 - mag).max(0) as usize;
    format!("{r:.decimals$}")
}

/// Corner-to-base distance of the matching conventional gadget, for cross-checks.
pub fn conventional_reach(params: &GadgetParams, side: Side, tol: &Tolerance) -> Result<f64, Error> {
    let g = conventional_geometry(params, tol)?;
    Ok(g.corner[side].dist(g.base[side]))
}
