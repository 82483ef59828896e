//! Planar primitives shared by every construction.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate overlap")]
    DegenerateOverlap,
    #[error("collinear")]
    Collinear,
    #[error("zero-length leg")]
    ZeroLengthLeg,
    #[error("non-finite coordinate")]
    NonFinite,
}

/// Absolute tolerances used by comparisons throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub angle_eps: f64,
    pub length_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { angle_eps: 1e-9, length_eps: 1e-9 }
    }
}

impl Tolerance {
    pub fn with_angle_eps(angle_eps: f64) -> Self {
        Tolerance { angle_eps, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Unit vector pointing at `angle` radians from +x.
    pub fn from_angle(angle: f64) -> Self {
        Point2::new(angle.cos(), angle.sin())
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Point2 {
        self * (1.0 / self.norm())
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Mirror image of the vector `self` across the line spanned by `axis`.
    pub fn reflect_across(self, axis: Point2) -> Point2 {
        let a = axis.normalized();
        a * (2.0 * self.dot(a)) - self
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Directed half-line with a unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray2 {
    pub origin: Point2,
    pub direction: Point2,
}

impl Ray2 {
    pub fn new(origin: Point2, direction: Point2) -> Result<Self, GeomError> {
        let n = direction.norm();
        if !origin.is_finite() || !direction.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if n == 0.0 {
            return Err(GeomError::ZeroLengthLeg);
        }
        Ok(Ray2 { origin, direction: direction * (1.0 / n) })
    }

    pub fn from_angle(origin: Point2, angle: f64) -> Self {
        Ray2 { origin, direction: Point2::from_angle(angle) }
    }

    pub fn at(&self, t: f64) -> Point2 {
        self.origin + self.direction * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }
}

/// Anything `intersect` accepts: a ray or a bounded segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Linear {
    Ray(Ray2),
    Segment(Segment),
}

impl From<Ray2> for Linear {
    fn from(r: Ray2) -> Self {
        Linear::Ray(r)
    }
}

impl From<Segment> for Linear {
    fn from(s: Segment) -> Self {
        Linear::Segment(s)
    }
}

impl Linear {
    /// Origin, spanning vector and admissible parameter range.
    fn parametric(&self) -> (Point2, Point2, f64, f64) {
        match *self {
            Linear::Ray(r) => (r.origin, r.direction, 0.0, f64::INFINITY),
            Linear::Segment(s) => (s.a, s.b - s.a, 0.0, 1.0),
        }
    }
}

/// Intersection of two infinite lines `p + s·u` and `q + t·v`.
/// Returns the point together with both line parameters, or `None` when parallel.
pub fn line_intersection(p: Point2, u: Point2, q: Point2, v: Point2) -> Option<(Point2, f64, f64)> {
    let den = u.cross(v);
    if den.abs() <= 1e-15 * u.norm() * v.norm() {
        return None;
    }
    let w = q - p;
    let s = w.cross(v) / den;
    let t = w.cross(u) / den;
    Some((p + u * s, s, t))
}

/// Unique intersection of two rays or segments.
pub fn intersect(a: Linear, b: Linear, tol: &Tolerance) -> Result<Option<Point2>, GeomError> {
    let (p, u, a_lo, a_hi) = a.parametric();
    let (q, v, b_lo, b_hi) = b.parametric();
    if !p.is_finite() || !u.is_finite() || !q.is_finite() || !v.is_finite() {
        return Err(GeomError::NonFinite);
    }
    let (un, vn) = (u.norm(), v.norm());
    if un == 0.0 || vn == 0.0 {
        return Err(GeomError::ZeroLengthLeg);
    }
    match line_intersection(p, u, q, v) {
        Some((x, s, t)) => {
            let inside = |k: f64, lo: f64, hi: f64, len: f64| {
                let slack = tol.length_eps / len;
                k >= lo - slack && k <= hi + slack
            };
            if inside(s, a_lo, a_hi, un) && inside(t, b_lo, b_hi, vn) {
                Ok(Some(x))
            } else {
                Ok(None)
            }
        }
        None => {
            // Parallel: disjoint unless collinear.
            if ((q - p).cross(u) / un).abs() > tol.length_eps {
                return Ok(None);
            }
            // Project b's extent onto a's parameter, in units of length along u.
            let dir = u * (1.0 / un);
            let proj = |k: f64| (q + v * k - p).dot(dir);
            let (b0, b1) = if b_hi.is_finite() {
                (proj(b_lo), proj(b_hi))
            } else if v.dot(u) > 0.0 {
                (proj(b_lo), f64::INFINITY)
            } else {
                (f64::NEG_INFINITY, proj(b_lo))
            };
            let (b0, b1) = if b0 <= b1 { (b0, b1) } else { (b1, b0) };
            let lo = b0.max(a_lo * un);
            let hi = b1.min(if a_hi.is_finite() { a_hi * un } else { f64::INFINITY });
            if hi < lo - tol.length_eps {
                Ok(None)
            } else if hi - lo <= tol.length_eps {
                Ok(Some(p + dir * (0.5 * (lo + hi))))
            } else {
                Err(GeomError::DegenerateOverlap)
            }
        }
    }
}

/// Point equidistant from three non-collinear points.
pub fn circumcenter(p: Point2, q: Point2, r: Point2, tol: &Tolerance) -> Result<Point2, GeomError> {
    let b = q - p;
    let c = r - p;
    let cross = b.cross(c);
    if (0.5 * cross).abs() <= tol.length_eps * tol.length_eps {
        return Err(GeomError::Collinear);
    }
    let d = 2.0 * cross;
    let bb = b.dot(b);
    let cc = c.dot(c);
    let ux = (c.y * bb - b.y * cc) / d;
    let uy = (b.x * cc - c.x * bb) / d;
    Ok(p + Point2::new(ux, uy))
}

/// Signed angle turning from `from − at` to `to − at`, in (−π, π].
pub fn signed_angle(at: Point2, from: Point2, to: Point2) -> Result<f64, GeomError> {
    let u = from - at;
    let v = to - at;
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(GeomError::ZeroLengthLeg);
    }
    let a = u.cross(v).atan2(u.dot(v));
    Ok(if a <= -PI { PI } else { a })
}

/// Unsigned angle ∠(from, at, to) in [0, π]; callers guarantee distinct points.
pub fn angle_between(at: Point2, from: Point2, to: Point2) -> f64 {
    let u = from - at;
    let v = to - at;
    u.cross(v).atan2(u.dot(v)).abs()
}

/// Counter-clockwise sweep from direction angle `a` to `b`, in [0, 2π).
pub fn ccw_sweep(a: f64, b: f64) -> f64 {
    let s = (b - a).rem_euclid(2.0 * PI);
    if s >= 2.0 * PI {
        0.0
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn axis_aligned_rays_meet() {
        let a = Ray2::new(ORIGIN, Point2::new(1.0, 1.0)).unwrap();
        let b = Ray2::new(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)).unwrap();
        let x = intersect(a.into(), b.into(), &tol()).unwrap().unwrap();
        assert!(x.dist(Point2::new(1.0, 1.0)) < 1e-12);
    }

    #[test]
    fn parallel_rays_miss() {
        let a = Ray2::new(ORIGIN, Point2::new(1.0, 0.0)).unwrap();
        let b = Ray2::new(Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)).unwrap();
        assert_eq!(intersect(a.into(), b.into(), &tol()).unwrap(), None);
    }

    #[test]
    fn perpendicular_foot_matches_linear_solve() {
        let t = 52.5f64.to_radians();
        let dir = Point2::from_angle(t);
        let a = Ray2::new(ORIGIN, dir).unwrap();
        let p = Point2::new(1.0, 0.0);
        let normal = Point2::new(-dir.y, dir.x);
        let toward_line = if p.dot(normal) > 0.0 { -normal } else { normal };
        let drop = Ray2::new(p, toward_line).unwrap();
        let x = intersect(a.into(), drop.into(), &tol()).unwrap().unwrap();
        // Independent oracle: solve [dir·x = dir·p (foot), normal·x = 0].
        let expect = dir * dir.dot(p);
        assert!(x.dist(expect) < 1e-12);
        assert!(x.cross(dir).abs() < 1e-12);
        assert!((x - p).dot(dir).abs() < 1e-12);
    }

    #[test]
    fn segments_outside_range_miss() {
        let a = Segment::new(ORIGIN, Point2::new(1.0, 0.0));
        let b = Segment::new(Point2::new(2.0, -1.0), Point2::new(2.0, 1.0));
        assert_eq!(intersect(a.into(), b.into(), &tol()).unwrap(), None);
    }

    #[test]
    fn collinear_overlap_is_an_error() {
        let a = Segment::new(ORIGIN, Point2::new(2.0, 0.0));
        let b = Segment::new(Point2::new(1.0, 0.0), Point2::new(3.0, 0.0));
        assert_eq!(intersect(a.into(), b.into(), &tol()), Err(GeomError::DegenerateOverlap));
        let touch = Segment::new(Point2::new(2.0, 0.0), Point2::new(3.0, 0.0));
        let x = intersect(a.into(), touch.into(), &tol()).unwrap().unwrap();
        assert!(x.dist(Point2::new(2.0, 0.0)) < 1e-12);
    }

    #[test]
    fn circumcenter_examples() {
        let c = circumcenter(ORIGIN, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), &tol()).unwrap();
        assert!(c.dist(Point2::new(0.5, 0.5)) < 1e-12);
        let s3 = 3f64.sqrt();
        let c = circumcenter(ORIGIN, Point2::new(2.0, 0.0), Point2::new(1.0, s3), &tol()).unwrap();
        assert!(c.dist(Point2::new(1.0, 1.0 / s3)) < 1e-12);
        let err = circumcenter(ORIGIN, Point2::new(1.0, 0.0), Point2::new(2.0, 0.0), &tol());
        assert_eq!(err, Err(GeomError::Collinear));
    }

    #[test]
    fn signed_angle_examples() {
        let x = Point2::new(1.0, 0.0);
        assert!((signed_angle(ORIGIN, x, Point2::new(0.0, 1.0)).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(signed_angle(ORIGIN, x, x).unwrap(), 0.0);
        let g = 105f64.to_radians();
        let a = signed_angle(ORIGIN, x, Point2::new(g.cos(), -g.sin())).unwrap();
        assert!((a + g).abs() < 1e-12);
        assert_eq!(signed_angle(ORIGIN, ORIGIN, x), Err(GeomError::ZeroLengthLeg));
        assert_eq!(signed_angle(ORIGIN, x, Point2::new(-1.0, 0.0)).unwrap(), PI);
    }
}
