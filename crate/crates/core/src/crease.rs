//! Crease patterns as planar straight-line graphs, and the builder that
//! turns loose segments and rays into one.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::{line_intersection, Point2};
use crate::params::GadgetParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Assignment {
    Mountain,
    Valley,
    Boundary,
    Flat,
}

impl Assignment {
    pub fn letter(self) -> &'static str {
        match self {
            Assignment::Mountain => "M",
            Assignment::Valley => "V",
            Assignment::Boundary => "B",
            Assignment::Flat => "F",
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "M" => Some(Assignment::Mountain),
            "V" => Some(Assignment::Valley),
            "B" => Some(Assignment::Boundary),
            "F" => Some(Assignment::Flat),
            _ => None,
        }
    }

    /// Mountain and valley swapped; other kinds unchanged.
    pub fn inverted(self) -> Self {
        match self {
            Assignment::Mountain => Assignment::Valley,
            Assignment::Valley => Assignment::Mountain,
            a => a,
        }
    }

    pub fn is_fold(self) -> bool {
        matches!(self, Assignment::Mountain | Assignment::Valley)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub assignment: Assignment,
}

/// A vertex on the rim of the flat-folded region: only the sectors between
/// `bounds` on the side containing `inside` are checked, the one containing
/// `inside` counted positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wedge {
    pub bounds: [Point2; 2],
    pub inside: Point2,
    pub expected: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VertexCheck {
    /// All sectors around the vertex; the alternating sum must vanish.
    Interior,
    Wedge(Wedge),
    /// Not part of the flat-folded region (apex, clip points, frame corners).
    Exempt,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Metadata {
    pub construction: String,
    pub parameters: BTreeMap<String, f64>,
    pub flags: BTreeMap<String, String>,
}

impl Metadata {
    /// Records the gadget inputs in degrees.
    pub fn for_gadget(construction: &str, p: &GadgetParams) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("top_angle_deg".to_string(), p.top_angle.to_degrees());
        parameters.insert("side_left_deg".to_string(), p.side_angle.l.to_degrees());
        parameters.insert("side_right_deg".to_string(), p.side_angle.r.to_degrees());
        parameters.insert("tilt_left_deg".to_string(), p.tilt.l.to_degrees());
        parameters.insert("tilt_right_deg".to_string(), p.tilt.r.to_degrees());
        parameters.insert("edge_length".to_string(), p.edge_length);
        Metadata { construction: construction.to_string(), parameters, flags: BTreeMap::new() }
    }

    pub fn with_parameter(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn with_flag(mut self, key: &str, value: impl Into<String>) -> Self {
        self.flags.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CreasePattern {
    pub vertices: Vec<Point2>,
    pub edges: Vec<Edge>,
    pub checks: Vec<VertexCheck>,
    pub metadata: Metadata,
}

/// Grid used for canonical vertex order.
pub const ORDER_GRID: f64 = 1e-9;

fn order_key(p: Point2) -> (i64, i64) {
    ((p.x / ORDER_GRID).round() as i64, (p.y / ORDER_GRID).round() as i64)
}

impl CreasePattern {
    pub fn count(&self, assignment: Assignment) -> usize {
        self.edges.iter().filter(|e| e.assignment == assignment).count()
    }

    /// Neighbouring vertices with the assignment of the connecting edge.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, Assignment)> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some((e.b, e.assignment))
                } else if e.b == v {
                    Some((e.a, e.assignment))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn find_vertex(&self, p: Point2, tol: f64) -> Option<usize> {
        self.vertices.iter().position(|q| q.dist(p) <= tol)
    }

    pub fn edge_between(&self, p: Point2, q: Point2, tol: f64) -> Option<&Edge> {
        let (i, j) = (self.find_vertex(p, tol)?, self.find_vertex(q, tol)?);
        self.edges.iter().find(|e| (e.a == i && e.b == j) || (e.a == j && e.b == i))
    }

    /// Total fold length per assignment, useful for coarse comparisons.
    pub fn length_of(&self, assignment: Assignment) -> f64 {
        self.edges
            .iter()
            .filter(|e| e.assignment == assignment)
            .map(|e| self.vertices[e.a].dist(self.vertices[e.b]))
            .sum()
    }

    pub fn bounding_box(&self) -> Option<(Point2, Point2)> {
        bbox(self.vertices.iter().copied())
    }

    /// Sorts vertices by rounded coordinates and edges by endpoint indices.
    pub fn canonicalize(&mut self) {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&i| order_key(self.vertices[i]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        self.vertices = order.iter().map(|&i| self.vertices[i]).collect();
        self.checks = order.iter().map(|&i| self.checks[i]).collect();
        for e in &mut self.edges {
            let (a, b) = (new_index[e.a], new_index[e.b]);
            e.a = a.min(b);
            e.b = a.max(b);
        }
        self.edges.sort();
        self.edges.dedup();
    }

    /// Structural problems: zero-length or duplicate edges, crossings, vertices inside edges.
    pub fn pslg_violations(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = HashMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            if e.a == e.b || self.vertices[e.a].dist(self.vertices[e.b]) <= tol {
                out.push(format!("edge {k} has zero length"));
            }
            let key = (e.a.min(e.b), e.a.max(e.b));
            if let Some(prev) = seen.insert(key, k) {
                out.push(format!("edges {prev} and {k} duplicate each other"));
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            let (p, q) = (self.vertices[e.a], self.vertices[e.b]);
            for (v, &x) in self.vertices.iter().enumerate() {
                if v != e.a && v != e.b && point_inside_segment(x, p, q, tol) {
                    out.push(format!("vertex {v} lies inside edge {k}"));
                }
            }
            for (m, f) in self.edges.iter().enumerate().skip(k + 1) {
                let (r, s) = (self.vertices[f.a], self.vertices[f.b]);
                if proper_crossing(p, q, r, s, tol).is_some() {
                    out.push(format!("edges {k} and {m} cross"));
                }
            }
        }
        out
    }

    /// Equality up to vertex order, with coordinates matched within `tol`.
    pub fn isomorphic_to(&self, other: &CreasePattern, tol: f64) -> bool {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut used = vec![false; other.vertices.len()];
        for (i, p) in self.vertices.iter().enumerate() {
            let hit = other.vertices.iter().enumerate().find(|(j, q)| !used[*j] && p.dist(**q) <= tol);
            match hit {
                Some((j, _)) => {
                    map[i] = j;
                    used[j] = true;
                }
                None => return false,
            }
        }
        let mut mine: Vec<(usize, usize, Assignment)> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (map[e.a], map[e.b]);
                (a.min(b), a.max(b), e.assignment)
            })
            .collect();
        let mut theirs: Vec<(usize, usize, Assignment)> =
            other.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b), e.assignment)).collect();
        mine.sort();
        theirs.sort();
        mine == theirs
    }
}

fn bbox(points: impl Iterator<Item = Point2>) -> Option<(Point2, Point2)> {
    let mut it = points.peekable();
    it.peek()?;
    let (mut lo, mut hi) =
        (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in it {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    Some((lo, hi))
}

fn point_inside_segment(x: Point2, p: Point2, q: Point2, tol: f64) -> bool {
    let d = q - p;
    let len = d.norm();
    if len <= tol {
        return false;
    }
    let along = (x - p).dot(d) / len;
    along > tol && along < len - tol && ((x - p).cross(d) / len).abs() <= tol
}

fn proper_crossing(p: Point2, q: Point2, r: Point2, s: Point2, tol: f64) -> Option<Point2> {
    let (u, v) = (q - p, s - r);
    let (lu, lv) = (u.norm(), v.norm());
    // Each segment must straddle the other's line; this also rules out collinear pieces.
    let side = |o: Point2, d: Point2, len: f64, x: Point2| (x - o).cross(d) / len;
    let straddles = |o, d, len, a, b| {
        let (sa, sb) = (side(o, d, len, a), side(o, d, len, b));
        sa.abs() > tol && sb.abs() > tol && sa.signum() != sb.signum()
    };
    if !straddles(p, u, lu, r, s) || !straddles(r, v, lv, p, q) {
        return None;
    }
    let (x, a, b) = line_intersection(p, u, r, v)?;
    let inner = |t: f64, len: f64| t * len > tol && (1.0 - t) * len > tol;
    (inner(a, lu) && inner(b, lv)).then_some(x)
}

/// Collects segments and rays, clips rays to a frame, splits everything at
/// intersections and produces a canonical crease pattern.
#[derive(Debug, Clone, Default)]
pub struct CreaseBuilder {
    segments: Vec<(Point2, Point2, Assignment)>,
    rays: Vec<(Point2, Point2, Assignment)>,
    marks: Vec<(Point2, VertexCheck)>,
    extra_points: Vec<Point2>,
}

impl CreaseBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn segment(&mut self, p: Point2, q: Point2, assignment: Assignment) -> &mut Self {
        self.segments.push((p, q, assignment));
        self
    }

    pub fn ray(&mut self, origin: Point2, direction: Point2, assignment: Assignment) -> &mut Self {
        self.rays.push((origin, direction.normalized(), assignment));
        self
    }

    pub fn mark(&mut self, p: Point2, check: VertexCheck) -> &mut Self {
        self.marks.push((p, check));
        self
    }

    /// Includes a point in the frame's extent without drawing anything there.
    pub fn include(&mut self, p: Point2) -> &mut Self {
        self.extra_points.push(p);
        self
    }

    pub fn finish(&self, metadata: Metadata) -> Result<CreasePattern, Error> {
        let all = self
            .segments
            .iter()
            .flat_map(|(p, q, _)| [*p, *q])
            .chain(self.rays.iter().map(|(p, _, _)| *p))
            .chain(self.marks.iter().map(|(p, _)| *p))
            .chain(self.extra_points.iter().copied());
        let Some((lo, hi)) = bbox(all) else {
            return Ok(CreasePattern { metadata, ..Default::default() });
        };
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-6);
        let merge = 1e-8 * extent.max(1.0);
        let mut graph = Graph { points: Vec::new(), edges: Vec::new(), merge };

        for &(p, q, a) in &self.segments {
            if p.dist(q) > merge {
                let (i, j) = (graph.vertex(p), graph.vertex(q));
                graph.edges.push((i, j, a));
            }
        }
        let mut frame_points = Vec::new();
        if !self.rays.is_empty() {
            // Frame: construction box inflated by 50% of its larger side.
            let pad = 0.25 * extent;
            let (flo, fhi) = (lo - Point2::new(pad, pad), hi + Point2::new(pad, pad));
            for &(o, d, a) in &self.rays {
                let t = exit_distance(o, d, flo, fhi);
                let end = o + d * t;
                let (i, j) = (graph.vertex(o), graph.vertex(end));
                graph.edges.push((i, j, a));
                frame_points.push(j);
            }
            let corners = [flo, Point2::new(fhi.x, flo.y), fhi, Point2::new(flo.x, fhi.y)];
            for k in 0..4 {
                let (i, j) = (graph.vertex(corners[k]), graph.vertex(corners[(k + 1) % 4]));
                graph.edges.push((i, j, Assignment::Boundary));
                frame_points.push(i);
            }
        }
        graph.normalize()?;

        let mut checks = vec![VertexCheck::Interior; graph.points.len()];
        for &i in &frame_points {
            checks[i] = VertexCheck::Exempt;
        }
        for (v, check) in checks.iter_mut().enumerate() {
            if graph.edges.iter().any(|&(a, b, asg)| (a == v || b == v) && asg == Assignment::Boundary) {
                *check = VertexCheck::Exempt;
            }
        }
        for &(p, c) in &self.marks {
            let i = graph
                .find(p)
                .ok_or_else(|| Error::Unavailable(format!("marked point ({:.6}, {:.6}) is not a vertex", p.x, p.y)))?;
            checks[i] = c;
        }
        let mut cp = CreasePattern {
            vertices: graph.points,
            edges: graph.edges.into_iter().map(|(a, b, assignment)| Edge { a, b, assignment }).collect(),
            checks,
            metadata,
        };
        cp.canonicalize();
        Ok(cp)
    }
}

fn exit_distance(o: Point2, d: Point2, lo: Point2, hi: Point2) -> f64 {
    let mut t = f64::INFINITY;
    if d.x > 0.0 {
        t = t.min((hi.x - o.x) / d.x);
    } else if d.x < 0.0 {
        t = t.min((lo.x - o.x) / d.x);
    }
    if d.y > 0.0 {
        t = t.min((hi.y - o.y) / d.y);
    } else if d.y < 0.0 {
        t = t.min((lo.y - o.y) / d.y);
    }
    t
}

struct Graph {
    points: Vec<Point2>,
    edges: Vec<(usize, usize, Assignment)>,
    merge: f64,
}

impl Graph {
    fn find(&self, p: Point2) -> Option<usize> {
        self.points.iter().position(|q| q.dist(p) <= self.merge)
    }

    fn vertex(&mut self, p: Point2) -> usize {
        self.find(p).unwrap_or_else(|| {
            self.points.push(p);
            self.points.len() - 1
        })
    }

    fn normalize(&mut self) -> Result<(), Error> {
        loop {
            let before = self.points.len();
            let n = self.edges.len();
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b, _) = self.edges[i];
                    let (c, d, _) = self.edges[j];
                    let (p, q, r, s) = (self.points[a], self.points[b], self.points[c], self.points[d]);
                    if let Some(x) = proper_crossing(p, q, r, s, self.merge) {
                        self.vertex(x);
                    }
                }
            }
            let mut split = Vec::with_capacity(self.edges.len());
            let mut changed = self.points.len() != before;
            for &(a, b, asg) in &self.edges {
                let (p, q) = (self.points[a], self.points[b]);
                let dir = q - p;
                let len2 = dir.dot(dir);
                let mut on: Vec<(f64, usize)> = self
                    .points
                    .iter()
                    .enumerate()
                    .filter(|&(k, &x)| k != a && k != b && point_inside_segment(x, p, q, self.merge))
                    .map(|(k, &x)| ((x - p).dot(dir) / len2, k))
                    .collect();
                if on.is_empty() {
                    split.push((a, b, asg));
                    continue;
                }
                changed = true;
                on.sort_by(|x, y| x.0.total_cmp(&y.0));
                let chain: Vec<usize> =
                    std::iter::once(a).chain(on.into_iter().map(|(_, k)| k)).chain(std::iter::once(b)).collect();
                for w in chain.windows(2) {
                    split.push((w[0], w[1], asg));
                }
            }
            let mut unique: BTreeMap<(usize, usize), Assignment> = BTreeMap::new();
            for (a, b, asg) in split {
                if a == b {
                    continue;
                }
                let key = (a.min(b), a.max(b));
                match unique.get(&key) {
                    // Construction lines yield to anything drawn on top of them.
                    Some(&Assignment::Flat) => {
                        unique.insert(key, asg);
                    }
                    Some(_) if asg == Assignment::Flat => {}
                    Some(&prev) if prev != asg => {
                        let (p, q) = (self.points[key.0], self.points[key.1]);
                        return Err(Error::AssignmentConflict(p.x, p.y, q.x, q.y));
                    }
                    _ => {
                        unique.insert(key, asg);
                    }
                }
            }
            self.edges = unique.into_iter().map(|((a, b), asg)| (a, b, asg)).collect();
            if !changed {
                return Ok(());
            }
        }
    }
}
