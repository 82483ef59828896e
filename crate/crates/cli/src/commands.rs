use std::fs;
use std::path::Path;

use origon_core::conventional::{build_conventional, pyramid_checks, BuildOptions};
use origon_core::critical::{check_critical_theorems, critical_angles};
use origon_core::division::{
    build_division, division_checks, ear_foot_coefficient, tongue_point_coefficient, DivisionSpec,
};
use origon_core::fold::{from_fold, to_fold};
use origon_core::improved::{
    admissible_interval, build_improved, resolve, slack, ImprovedOptions, TiltedAssignment, TonguePlacement,
};
use origon_core::interference::{downward_compatibility, format_sig, interference, optimize_prism, InnerBranch};
use origon_core::params::{derive, validate};
use origon_core::svg::{to_svg, SvgStyle};
use origon_core::validator::kawasaki_check;
use origon_core::{CreasePattern, Error, GadgetParams, Side, Tolerance, ValidationMode};

use crate::args::*;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments that clap cannot catch; exit code 2.
    Usage(String),
    /// The input was understood but something failed; exit code 1.
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

/// `Ok(false)` means a check ran and did not pass.
pub type Outcome = Result<bool, CliError>;

pub fn tolerance_from_env() -> Result<Tolerance, CliError> {
    match std::env::var("ORIGON_ANGLE_EPS") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(eps) if eps > 0.0 && eps.is_finite() => Ok(Tolerance::with_angle_eps(eps)),
            _ => Err(CliError::Usage(format!("ORIGON_ANGLE_EPS must be a positive number, got {s:?}"))),
        },
        Err(_) => Ok(Tolerance::default()),
    }
}

pub fn run(cli: Cli) -> Outcome {
    let tol = tolerance_from_env()?;
    match cli.command {
        Command::Check(a) => check(&a, &tol),
        Command::Conventional(a) => conventional(&a, &tol),
        Command::Improved(a) => improved(&a, &tol),
        Command::CriticalAngles(a) => critical(&a, &tol),
        Command::Interference(a) => interference_cmd(&a, &tol),
        Command::OptimizePrism(a) => prism(&a),
        Command::Divide(a) => divide(&a, &tol),
        Command::CheckCp(a) => check_cp(&a, &tol),
        Command::Export(a) => export(&a),
    }
}

fn params_of(g: &GadgetArgs) -> GadgetParams {
    GadgetParams::from_degrees(g.alpha, g.beta_l, g.beta_r).with_tilts(g.delta_l.to_radians(), g.delta_r.to_radians())
}

fn deg(x: f64) -> String {
    format!("{:.6}", x.to_degrees())
}

fn placement_of(p: &Placement) -> TonguePlacement {
    if let Some(phi) = p.phi_l {
        TonguePlacement::ByTongueAngle(phi.to_radians())
    } else if let Some(psi) = p.psi_l {
        TonguePlacement::ByTongueOffset(psi.to_radians())
    } else if let Some((side, value)) = p.epsilon {
        let side = if side == 'L' { Side::L } else { Side::R };
        TonguePlacement::BySlack(side, value.to_radians())
    } else {
        match p.select.expect("clap requires one placement") {
            Selection::Balanced => TonguePlacement::Balanced,
            Selection::LeftCritical => TonguePlacement::LeftCritical,
            Selection::RightCritical => TonguePlacement::RightCritical,
            Selection::Orthogonal => TonguePlacement::Orthogonal,
        }
    }
}

fn write_outputs(cp: &CreasePattern, out: &OutputArgs) -> Result<(), CliError> {
    let write = |path: &Path, text: String| -> Result<(), CliError> {
        fs::write(path, text).map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        Ok(())
    };
    if let Some(path) = &out.out {
        write(path, to_fold(cp))?;
    }
    if let Some(path) = &out.svg {
        write(path, to_svg(cp, &SvgStyle::default()))?;
    }
    Ok(())
}

/// Prints the fold check of a pattern and returns whether it passed.
fn report_pattern(cp: &CreasePattern, tol: &Tolerance) -> Result<bool, CliError> {
    use origon_core::Assignment::*;
    println!(
        "creases: {} mountain, {} valley, {} boundary, {} flat; {} vertices",
        cp.count(Mountain),
        cp.count(Valley),
        cp.count(Boundary),
        cp.count(Flat),
        cp.vertices.len()
    );
    let pslg = cp.pslg_violations(tol.length_eps);
    for v in &pslg {
        println!("[FAIL] structure: {v}");
    }
    let rep = kawasaki_check(cp, tol)?;
    for f in rep.failures() {
        let p = cp.vertices[f.vertex];
        println!(
            "[FAIL] kawasaki at ({:.6}, {:.6}): sum {:.3e} expected {:.3e}",
            p.x, p.y, f.alternating_sum, f.expected
        );
    }
    let pass = pslg.is_empty() && rep.passed();
    println!(
        "[{}] kawasaki: {} checked vertices, worst residual {:.3e}",
        if rep.passed() { "ok  " } else { "FAIL" },
        rep.entries.len(),
        rep.worst_residual()
    );
    Ok(pass)
}

fn check(a: &CheckArgs, tol: &Tolerance) -> Outcome {
    let p = params_of(&a.gadget);
    let mode = match a.construction {
        Construction::Conventional => ValidationMode::Conventional,
        Construction::Improved => ValidationMode::Improved,
    };
    let rep = validate(&p, mode, tol);
    for c in &rep.conditions {
        let tag = if c.pass { "ok  " } else { "FAIL" };
        // The edge-length margin is a length; every other margin is an angle.
        let margin =
            if c.id == "edge-length-positive" { format!("{:.6}", c.margin) } else { format!("{} deg", deg(c.margin)) };
        println!("[{tag}] {}: {} (margin {margin})", c.id, c.description);
    }
    if rep.passed() {
        let d = derive(&p, tol)?;
        println!("gap angle: {} deg", deg(d.gap_angle));
        println!("gap shares: L {} deg, R {} deg", deg(d.gap_share.l), deg(d.gap_share.r));
        println!("apex ratio: {:.9}", d.apex_ratio);
        println!("height ratio: {:.9}", d.height_ratio);
    }
    Ok(rep.passed())
}

fn conventional(a: &ConventionalArgs, tol: &Tolerance) -> Outcome {
    let p = params_of(&a.gadget);
    let g = build_conventional(&p, BuildOptions { debug_lines: a.debug_lines }, tol)?;
    let pyramid = pyramid_checks(&g.geometry);
    print!("{pyramid}");
    let folds = report_pattern(&g.pattern, tol)?;
    write_outputs(&g.pattern, &a.output)?;
    Ok(folds && pyramid.passed())
}

fn improved(a: &ImprovedArgs, tol: &Tolerance) -> Outcome {
    let p = params_of(&a.gadget);
    let r = resolve(placement_of(&a.placement), &p, tol)?;
    let options = ImprovedOptions {
        variant: match a.variant {
            Variant::Primary => TiltedAssignment::Primary,
            Variant::Alternate => TiltedAssignment::Alternate,
        },
        debug_lines: a.debug_lines,
    };
    let g = build_improved(&p, r.tongue_angle_left, options, tol)?;
    let geo = &g.geometry;
    println!("tongue angle: L {} deg, R {} deg", deg(geo.tongue_angle.l), deg(geo.tongue_angle.r));
    println!("tongue offset: L {} deg, R {} deg", deg(geo.tongue_offset.l), deg(geo.tongue_offset.r));
    let s = slack(&p, geo, tol)?;
    println!("slack: L {} deg, R {} deg", deg(s.l), deg(s.r));
    println!("critical: L {}, R {}", geo.critical.l, geo.critical.r);
    if r.extended {
        println!("note: the placement rule was applied outside the untilted setting it was designed for");
    }
    let folds = report_pattern(&g.pattern, tol)?;
    write_outputs(&g.pattern, &a.output)?;
    Ok(folds)
}

fn critical(a: &GadgetArgs, tol: &Tolerance) -> Outcome {
    let p = params_of(a);
    let z = critical_angles(&p, tol)?;
    println!("critical angle: L {} deg, R {} deg", deg(z.l), deg(z.r));
    println!("twice critical: L {} deg, R {} deg", deg(2.0 * z.l), deg(2.0 * z.r));
    let w = admissible_interval(&p, tol)?;
    let bracket = |open: bool, c: [char; 2]| if open { c[0] } else { c[1] };
    println!(
        "admissible left tongue angles: {}{}, {}{} deg",
        bracket(w.lo_open, ['(', '[']),
        deg(w.lo),
        deg(w.hi),
        bracket(w.hi_open, [')', ']'])
    );
    let rep = check_critical_theorems(&p, tol)?;
    print!("{rep}");
    Ok(rep.passed())
}

fn interference_cmd(a: &InterferenceArgs, tol: &Tolerance) -> Outcome {
    let p = params_of(&a.gadget);
    let r = resolve(placement_of(&a.placement), &p, tol)?;
    let k = interference(&p, r.tongue_angle_left, tol)?;
    println!("tongue angle: L {} deg", deg(r.tongue_angle_left));
    if let Some(c) = k.conventional {
        println!("conventional: L {:.9}, R {:.9}", c.l, c.r);
    }
    let branch = |b: InnerBranch| match b {
        InnerBranch::AlongInnerPleat => "along inner pleat",
        InnerBranch::AcrossEars => "across ears",
    };
    for s in Side::BOTH {
        println!(
            "{s}: inner {:.9} ({}), outer {:.9}, slack excess {} deg",
            k.inner[s],
            branch(k.inner_branch[s]),
            k.outer[s],
            deg(k.slack_excess[s])
        );
    }
    println!("height ratio: {:.9}", k.height_ratio);
    if p.untilted() {
        let rep = downward_compatibility(&p, r.tongue_angle_left, tol)?;
        print!("{rep}");
        return Ok(rep.passed());
    }
    Ok(true)
}

pub const TABLE_SIDES: [u32; 6] = [3, 4, 5, 6, 8, 12];

fn prism(a: &PrismArgs) -> Outcome {
    let ns = if a.n.is_empty() { TABLE_SIDES.to_vec() } else { a.n.clone() };
    let rows = ns.iter().map(|&n| optimize_prism(n)).collect::<Result<Vec<_>, _>>()?;
    let names: Vec<&str> = rows[0].columns().iter().map(|(k, _)| *k).collect();
    if a.csv {
        println!("n,{}", names.join(","));
        for r in &rows {
            let vals: Vec<String> = r.columns().iter().map(|(_, v)| format!("{v:.12}")).collect();
            println!("{},{}", r.n, vals.join(","));
        }
    } else {
        println!("{:>3} {}", "n", names.iter().map(|k| format!("{k:>15}")).collect::<String>());
        for r in &rows {
            let vals: String = r
                .columns()
                .iter()
                .map(|(k, v)| {
                    let s = if k.contains("argmin") { format!("{v:.4}") } else { format_sig(*v, 4) };
                    format!("{s:>15}")
                })
                .collect();
            println!("{:>3} {vals}", r.n);
        }
    }
    Ok(true)
}

fn divide(a: &DivideArgs, tol: &Tolerance) -> Outcome {
    let p = params_of(&a.gadget);
    let d = a.levels;
    if d < 2 {
        return Err(CliError::Usage(format!("--d must be at least 2, got {d}")));
    }
    let ratios = if a.ratios.is_empty() { vec![1.0; d] } else { a.ratios.clone() };
    if ratios.len() != d {
        return Err(CliError::Usage(format!("--ratios has {} entries for {d} levels", ratios.len())));
    }
    let r = resolve(placement_of(&a.placement), &p, tol)?;
    let mut spec = DivisionSpec::from_ratios(&ratios, r.tongue_angle_left);
    for &(n, phi) in &a.phi_level {
        if n == 0 || n > d {
            return Err(CliError::Usage(format!("--phi-level {n}: levels run from 1 to {d}")));
        }
        spec.tongue_angles[n - 1] = phi.to_radians();
    }
    for &n in &a.invert {
        if n < 2 || n > d {
            return Err(CliError::Usage(format!("--invert {n}: only levels 2 to {d} can be inverted")));
        }
        spec.inverted[n - 1] = true;
    }
    let div = build_division(&p, &spec, tol)?;
    let q = &div.geometry.cumulative;
    for (i, lv) in div.geometry.levels.iter().enumerate() {
        let n = i + 1;
        let reach = tongue_point_coefficient(&p, lv.tongue_angle.l);
        let foot = |s: Side| ear_foot_coefficient(&p, lv.tongue_angle[s], s);
        println!(
            "level {n}: height {:.6}, top {:.6}, tongue {} deg, tip coefficient {}, tip {}, foot coefficients L {} R {}, feet L {} R {}{}",
            spec.proportions[i],
            q[n],
            deg(lv.tongue_angle.l),
            format_sig(reach, 5),
            if lv.tip.is_some() { "yes" } else { "no" },
            format_sig(foot(Side::L), 5),
            format_sig(foot(Side::R), 5),
            if lv.ear_foot.l.is_some() { "yes" } else { "no" },
            if lv.ear_foot.r.is_some() { "yes" } else { "no" },
            if lv.inverted { ", inverted" } else { "" }
        );
    }
    let rep = division_checks(&p, &spec, &div.geometry);
    for c in rep.checks.iter().filter(|c| !c.pass) {
        println!("[FAIL] {}: {}", c.name, c.detail);
    }
    let folds = report_pattern(&div.pattern, tol)?;
    write_outputs(&div.pattern, &a.output)?;
    Ok(folds && rep.passed())
}

fn read_fold(path: &Path) -> Result<CreasePattern, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Failed(format!("cannot read {}: {e}", path.display())))?;
    Ok(from_fold(&text)?)
}

fn check_cp(a: &CheckCpArgs, tol: &Tolerance) -> Outcome {
    let cp = read_fold(&a.file)?;
    if !cp.metadata.construction.is_empty() {
        println!("construction: {}", cp.metadata.construction);
    }
    report_pattern(&cp, tol)
}

fn export(a: &ExportArgs) -> Outcome {
    let cp = read_fold(&a.file)?;
    if a.output.out.is_none() && a.output.svg.is_none() {
        print!("{}", to_svg(&cp, &SvgStyle::default()));
    } else {
        write_outputs(&cp, &a.output)?;
    }
    Ok(true)
}
