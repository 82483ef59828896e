//! Fixtures shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::path::PathBuf;

use origon_core::conventional::{build_conventional, BuildOptions};
use origon_core::critical::critical_angles;
use origon_core::division::{build_division, DivisionSpec};
use origon_core::improved::{
    admissible_interval, build_improved_with, ImprovedOptions, TiltedAssignment, TonguePlacement,
};
use origon_core::params::validate;
use origon_core::{CreasePattern, GadgetParams, Tolerance, ValidationMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn tol() -> Tolerance {
    Tolerance::default()
}

/// Smallest margin, in radians, every angular feasibility condition must clear.
/// Thinner gadgets have sub-micron features where double precision cannot
/// resolve angles to 1e-9.
pub const CONDITION_MARGIN: f64 = 2.0 * std::f64::consts::PI / 180.0;

/// Fraction of the tongue window kept clear at each end for interior samples.
pub const WINDOW_INSET: f64 = 0.01;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn well_conditioned(p: &GadgetParams, mode: ValidationMode) -> bool {
    let rep = validate(p, mode, &tol());
    rep.conditions
        .iter()
        .filter(|c| c.id != "edge-length-positive" && c.id != "tilt-zero" && !c.id.starts_with("tilt-nonnegative"))
        .all(|c| c.margin >= CONDITION_MARGIN)
}

/// Untilted gadget valid for every construction.
pub fn untilted(rng: &mut impl Rng) -> GadgetParams {
    loop {
        let d = |r: &mut dyn rand::RngCore| r.random_range(5.0..175.0);
        let p = GadgetParams::from_degrees(d(rng), d(rng), d(rng));
        if well_conditioned(&p, ValidationMode::Conventional) {
            return p;
        }
    }
}

/// Flat-back gadget with independent tilts, at least one of them positive.
pub fn tilted(rng: &mut impl Rng) -> GadgetParams {
    loop {
        let base = {
            let d = |r: &mut dyn rand::RngCore| r.random_range(5.0..175.0);
            GadgetParams::from_degrees(d(rng), d(rng), d(rng))
        };
        let cap = |b: f64| b.min(std::f64::consts::FRAC_PI_2) - CONDITION_MARGIN;
        let (cl, cr) = (cap(base.side_angle.l), cap(base.side_angle.r));
        if cl <= 0.0 || cr <= 0.0 {
            continue;
        }
        let (tl, tr) = (rng.random_range(0.0..cl), rng.random_range(0.0..cr));
        let p = base.with_tilts(tl, tr);
        if well_conditioned(&p, ValidationMode::Improved) && admissible_interval(&p, &tol()).is_ok() {
            return p;
        }
    }
}

/// Either kind, half the time tilted.
pub fn any_params(rng: &mut impl Rng) -> GadgetParams {
    if rng.random_bool(0.5) {
        untilted(rng)
    } else {
        tilted(rng)
    }
}

/// Left tongue angle inside the window, away from its ends.
pub fn interior_tongue(p: &GadgetParams, rng: &mut impl Rng) -> f64 {
    let w = admissible_interval(p, &tol()).unwrap();
    let span = w.hi - w.lo;
    w.lo + span * rng.random_range(WINDOW_INSET..1.0 - WINDOW_INSET)
}

/// Interior most of the time, exactly at one end otherwise.
pub fn tongue_with_ends(p: &GadgetParams, rng: &mut impl Rng) -> f64 {
    let w = admissible_interval(p, &tol()).unwrap();
    match rng.random_range(0..10) {
        0 if !w.hi_open => w.hi,
        1 if !w.lo_open => w.lo,
        _ => interior_tongue(p, rng),
    }
}

pub fn random_division(rng: &mut impl Rng) -> (GadgetParams, DivisionSpec) {
    let p = untilted(rng);
    let levels = rng.random_range(2..=4);
    let ratios: Vec<f64> = (0..levels).map(|_| rng.random_range(0.3..1.3)).collect();
    let phi = tongue_with_ends(&p, rng);
    let mut spec = DivisionSpec::from_ratios(&ratios, phi);
    for n in 1..levels {
        spec.inverted[n] = rng.random_bool(0.3);
    }
    (p, spec)
}

pub struct GoldenCase {
    pub name: &'static str,
    /// Which assignment-table column the case exercises.
    pub covers: &'static str,
    pub pattern: CreasePattern,
}

fn improved(p: GadgetParams, placement: TonguePlacement, variant: TiltedAssignment) -> CreasePattern {
    build_improved_with(&p, placement, ImprovedOptions { variant, debug_lines: false }, &tol()).unwrap().1.pattern
}

fn division(p: GadgetParams, spec: DivisionSpec) -> CreasePattern {
    build_division(&p, &spec, &tol()).unwrap().pattern
}

pub fn golden_cases() -> Vec<GoldenCase> {
    use TiltedAssignment::{Alternate, Primary};
    let cube = GadgetParams::from_degrees(90.0, 90.0, 90.0);
    let asym = GadgetParams::from_degrees(90.0, 45.0, 120.0);
    let tilted = GadgetParams::new(1.7, 1.5, 1.4).with_tilts(0.1, 0.2);
    let tilted_mid = {
        let w = admissible_interval(&tilted, &tol()).unwrap();
        0.5 * (w.lo + w.hi)
    };
    let asym_critical = 2.0 * critical_angles(&asym, &tol()).unwrap().l;
    let eighteen = 18f64.to_radians();
    let mut inverted = DivisionSpec::uniform(3, eighteen);
    inverted.inverted[2] = true;
    let case = |name, covers, pattern| GoldenCase { name, covers, pattern };
    vec![
        case(
            "conventional-cube",
            "pyramid gadget",
            build_conventional(&cube, BuildOptions::default(), &tol()).unwrap().pattern,
        ),
        case(
            "conventional-asymmetric",
            "pyramid gadget",
            build_conventional(&asym, BuildOptions::default(), &tol()).unwrap().pattern,
        ),
        case(
            "improved-cube-orthogonal",
            "untilted, below critical",
            improved(cube, TonguePlacement::Orthogonal, Primary),
        ),
        case(
            "improved-cube-left-critical",
            "untilted, critical",
            improved(cube, TonguePlacement::LeftCritical, Primary),
        ),
        case(
            "improved-asymmetric-18",
            "untilted, below critical",
            improved(asym, TonguePlacement::ByTongueAngle(eighteen), Primary),
        ),
        case(
            "improved-asymmetric-balanced",
            "untilted, below critical",
            improved(asym, TonguePlacement::Balanced, Primary),
        ),
        case(
            "improved-tilted-primary",
            "tilted, below critical, primary",
            improved(tilted, TonguePlacement::ByTongueAngle(tilted_mid), Primary),
        ),
        case(
            "improved-tilted-alternate",
            "tilted, below critical, alternate",
            improved(tilted, TonguePlacement::ByTongueAngle(tilted_mid), Alternate),
        ),
        case("improved-tilted-critical", "tilted, critical", improved(tilted, TonguePlacement::LeftCritical, Primary)),
        case(
            "division-asymmetric-eighteen",
            "division, all four tip/foot cases",
            division(asym, DivisionSpec::uniform(3, eighteen)),
        ),
        case(
            "division-asymmetric-critical",
            "division, critical",
            division(asym, DivisionSpec::uniform(3, asym_critical)),
        ),
        case(
            "division-cube-two",
            "division, below critical",
            division(cube, DivisionSpec::uniform(2, cube.gap_angle() / 2.0)),
        ),
        case("division-inverted", "division, inverted optional pair", division(asym, inverted)),
        case(
            "division-unequal",
            "division, unequal levels",
            division(cube, DivisionSpec::from_ratios(&[2.0, 1.0, 1.5], cube.gap_angle() / 2.0)),
        ),
    ]
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(format!("{name}.fold"))
}
