//! FOLD 1.1 import and export.
//!
//! Vertex checks and construction metadata travel in `origon:` extension
//! fields so that a pattern survives a round trip unchanged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::crease::{Assignment, CreasePattern, Edge, Metadata, VertexCheck, Wedge};
use crate::error::Error;
use crate::geom::Point2;

pub const FILE_SPEC: f64 = 1.1;
pub const CREATOR: &str = "origon";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum CheckRecord {
    Interior,
    Exempt,
    Wedge { bounds: [[f64; 2]; 2], inside: [f64; 2], expected: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MetadataRecord {
    construction: String,
    parameters: BTreeMap<String, f64>,
    flags: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct FoldDocument {
    file_spec: f64,
    file_creator: String,
    file_classes: Vec<String>,
    frame_classes: Vec<String>,
    frame_attributes: Vec<String>,
    vertices_coords: Vec<[f64; 2]>,
    edges_vertices: Vec<[usize; 2]>,
    edges_assignment: Vec<String>,
    #[serde(rename = "origon:vertex_checks")]
    vertex_checks: Vec<CheckRecord>,
    #[serde(rename = "origon:metadata")]
    metadata: MetadataRecord,
}

fn pair(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

fn point([x, y]: [f64; 2]) -> Point2 {
    Point2::new(x, y)
}

fn check_record(c: &VertexCheck) -> CheckRecord {
    match c {
        VertexCheck::Interior => CheckRecord::Interior,
        VertexCheck::Exempt => CheckRecord::Exempt,
        VertexCheck::Wedge(w) => CheckRecord::Wedge {
            bounds: [pair(w.bounds[0]), pair(w.bounds[1])],
            inside: pair(w.inside),
            expected: w.expected,
        },
    }
}

/// Serializes a pattern; the output depends only on the pattern.
pub fn to_fold(cp: &CreasePattern) -> String {
    let mut cp = cp.clone();
    cp.canonicalize();
    let doc = FoldDocument {
        file_spec: FILE_SPEC,
        file_creator: CREATOR.to_string(),
        file_classes: vec!["singleModel".to_string()],
        frame_classes: vec!["creasePattern".to_string()],
        frame_attributes: vec!["2D".to_string()],
        vertices_coords: cp.vertices.iter().map(|&p| pair(p)).collect(),
        edges_vertices: cp.edges.iter().map(|e| [e.a, e.b]).collect(),
        edges_assignment: cp.edges.iter().map(|e| e.assignment.letter().to_string()).collect(),
        vertex_checks: cp.checks.iter().map(check_record).collect(),
        metadata: MetadataRecord {
            construction: cp.metadata.construction.clone(),
            parameters: cp.metadata.parameters.clone(),
            flags: cp.metadata.flags.clone(),
        },
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("FOLD documents always serialize");
    out.push('\n');
    out
}

/// Structural checks a FOLD crease pattern must pass, independent of this crate's extensions.
pub fn check_fold_schema(value: &Value) -> Result<(), Error> {
    let bad = |m: String| Err(Error::Fold(m));
    let Some(obj) = value.as_object() else {
        return bad("top level is not an object".into());
    };
    match obj.get("file_spec").and_then(Value::as_f64) {
        Some(v) if v >= 1.0 => {}
        _ => return bad("file_spec missing or not a version number".into()),
    }
    if let Some(classes) = obj.get("frame_classes") {
        let ok = classes.as_array().is_some_and(|a| a.iter().all(Value::is_string));
        if !ok {
            return bad("frame_classes is not a list of strings".into());
        }
    }
    let Some(coords) = obj.get("vertices_coords").and_then(Value::as_array) else {
        return bad("vertices_coords missing".into());
    };
    for (i, c) in coords.iter().enumerate() {
        let ok = c.as_array().is_some_and(|a| (2..=3).contains(&a.len()) && a.iter().all(Value::is_number));
        if !ok {
            return bad(format!("vertices_coords[{i}] is not a 2D or 3D coordinate"));
        }
    }
    let Some(edges) = obj.get("edges_vertices").and_then(Value::as_array) else {
        return bad("edges_vertices missing".into());
    };
    for (i, e) in edges.iter().enumerate() {
        let ids: Option<Vec<u64>> = e.as_array().map(|a| a.iter().filter_map(Value::as_u64).collect());
        match ids {
            Some(ids) if ids.len() == 2 && e.as_array().unwrap().len() == 2 => {
                if ids.iter().any(|&v| v as usize >= coords.len()) {
                    return bad(format!("edges_vertices[{i}] refers to a missing vertex"));
                }
            }
            _ => return bad(format!("edges_vertices[{i}] is not a pair of vertex indices")),
        }
    }
    if let Some(asg) = obj.get("edges_assignment") {
        let Some(asg) = asg.as_array() else {
            return bad("edges_assignment is not a list".into());
        };
        if asg.len() != edges.len() {
            return bad(format!("{} assignments for {} edges", asg.len(), edges.len()));
        }
        for (i, a) in asg.iter().enumerate() {
            if !matches!(a.as_str(), Some("M" | "V" | "B" | "F" | "U" | "C" | "J")) {
                return bad(format!("edges_assignment[{i}] is not a FOLD assignment"));
            }
        }
    }
    Ok(())
}

/// Parses a FOLD document written by [`to_fold`], or any FOLD crease pattern
/// with M/V/B/F assignments (vertex checks then default to interior).
pub fn from_fold(text: &str) -> Result<CreasePattern, Error> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Fold(e.to_string()))?;
    check_fold_schema(&value)?;
    let obj = value.as_object().unwrap();
    let coords: Vec<[f64; 2]> = obj["vertices_coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let a = c.as_array().unwrap();
            [a[0].as_f64().unwrap(), a[1].as_f64().unwrap()]
        })
        .collect();
    let pairs: Vec<[usize; 2]> =
        serde_json::from_value(obj["edges_vertices"].clone()).map_err(|e| Error::Fold(e.to_string()))?;
    let letters: Vec<String> = match obj.get("edges_assignment") {
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| Error::Fold(e.to_string()))?,
        None => vec!["F".to_string(); pairs.len()],
    };
    let mut edges = Vec::with_capacity(pairs.len());
    for ([a, b], letter) in pairs.into_iter().zip(&letters) {
        let assignment =
            Assignment::from_letter(letter).ok_or_else(|| Error::Fold(format!("unsupported assignment {letter:?}")))?;
        edges.push(Edge { a, b, assignment });
    }
    let checks = match obj.get("origon:vertex_checks") {
        Some(v) => {
            let records: Vec<CheckRecord> =
                serde_json::from_value(v.clone()).map_err(|e| Error::Fold(e.to_string()))?;
            if records.len() != coords.len() {
                return Err(Error::Fold(format!("{} vertex checks for {} vertices", records.len(), coords.len())));
            }
            records
                .into_iter()
                .map(|r| match r {
                    CheckRecord::Interior => VertexCheck::Interior,
                    CheckRecord::Exempt => VertexCheck::Exempt,
                    CheckRecord::Wedge { bounds, inside, expected } => VertexCheck::Wedge(Wedge {
                        bounds: [point(bounds[0]), point(bounds[1])],
                        inside: point(inside),
                        expected,
                    }),
                })
                .collect()
        }
        None => {
            // Vertices on boundary edges are not checked.
            let mut c = vec![VertexCheck::Interior; coords.len()];
            for e in &edges {
                if e.assignment == Assignment::Boundary {
                    c[e.a] = VertexCheck::Exempt;
                    c[e.b] = VertexCheck::Exempt;
                }
            }
            c
        }
    };
    let metadata = match obj.get("origon:metadata") {
        Some(v) => {
            let m: MetadataRecord = serde_json::from_value(v.clone()).map_err(|e| Error::Fold(e.to_string()))?;
            Metadata { construction: m.construction, parameters: m.parameters, flags: m.flags }
        }
        None => Metadata::default(),
    };
    Ok(CreasePattern { vertices: coords.into_iter().map(point).collect(), edges, checks, metadata })
}
