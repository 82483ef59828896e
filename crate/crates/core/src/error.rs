use thiserror::Error;

use crate::geom::GeomError;
use crate::params::{ConditionReport, Side};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(ConditionReport),

    #[error(
        "tongue angle not admissible on the {side} side (margin {margin:.3e} rad); admissible left tongue angles: [{lo:.9}, {hi:.9}] rad"
    )]
    Inadmissible { side: Side, margin: f64, lo: f64, hi: f64 },

    #[error("slack angle {value:.9} rad out of range on the {side} side; admissible: {lo_bracket}{lo:.9}, {hi:.9}{hi_bracket} rad")]
    SlackOutOfRange { side: Side, value: f64, lo: f64, hi: f64, lo_bracket: char, hi_bracket: char },

    #[error("{0}")]
    Unavailable(String),

    #[error("level {level}: tongue angle on the {side} side breaks the level inequality by {margin:.3e}")]
    LevelInequality { level: usize, side: Side, margin: f64 },

    #[error("invalid division: {0}")]
    InvalidDivision(String),

    #[error("geometry: {0}")]
    Geometry(#[from] GeomError),

    #[error("vertex {vertex} at ({x:.6}, {y:.6}) has an odd number ({creases}) of creases")]
    NonManifold { vertex: usize, x: f64, y: f64, creases: usize },

    #[error("conflicting assignments for the edge between ({0:.6}, {1:.6}) and ({2:.6}, {3:.6})")]
    AssignmentConflict(f64, f64, f64, f64),

    #[error("FOLD: {0}")]
    Fold(String),
}
