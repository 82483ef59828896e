use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "origon", version, about = "Build, check and analyze origami-extrusion 3D gadgets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the feasibility conditions of a gadget.
    Check(CheckArgs),
    /// Build the pyramid-supported gadget.
    Conventional(ConventionalArgs),
    /// Build the flat-back gadget.
    Improved(ImprovedArgs),
    /// Print the critical angles and the admissible tongue window.
    CriticalAngles(GadgetArgs),
    /// Interference coefficients of the flat-back gadget.
    Interference(InterferenceArgs),
    /// Minimize the interference coefficient of a regular prism.
    OptimizePrism(PrismArgs),
    /// Divide the flat-back gadget into stacked levels.
    Divide(DivideArgs),
    /// Check local flat-foldability of a FOLD crease pattern.
    CheckCp(CheckCpArgs),
    /// Convert a FOLD crease pattern to SVG (and canonical FOLD).
    Export(ExportArgs),
}

/// Gadget angles, in degrees.
#[derive(Debug, Args, Clone)]
pub struct GadgetArgs {
    /// Top angle at the apex.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Left side angle.
    #[arg(long = "beta-l", allow_negative_numbers = true)]
    pub beta_l: f64,
    /// Right side angle.
    #[arg(long = "beta-r", allow_negative_numbers = true)]
    pub beta_r: f64,
    /// Left tilt of the outgoing ridge.
    #[arg(long = "delta-l", default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta_l: f64,
    /// Right tilt of the outgoing ridge.
    #[arg(long = "delta-r", default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta_r: f64,
}

#[derive(Debug, Args, Clone, Default)]
pub struct OutputArgs {
    /// Write the crease pattern as FOLD.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the crease pattern as SVG.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Construction {
    Conventional,
    Improved,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub gadget: GadgetArgs,
    /// Which construction's conditions to check.
    #[arg(long, value_enum, default_value = "improved")]
    pub construction: Construction,
}

#[derive(Debug, Args)]
pub struct ConventionalArgs {
    #[command(flatten)]
    pub gadget: GadgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Keep construction lines as flat edges.
    #[arg(long)]
    pub debug_lines: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Selection {
    Balanced,
    LeftCritical,
    RightCritical,
    Orthogonal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Primary,
    Alternate,
}

/// One way of placing the tongue tip.
#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false)]
pub struct Placement {
    /// Left tongue angle in degrees.
    #[arg(long = "phi-l", allow_negative_numbers = true)]
    pub phi_l: Option<f64>,
    /// Left tongue offset from the apex-to-pivot line, in degrees.
    #[arg(long = "psi-l", allow_negative_numbers = true)]
    pub psi_l: Option<f64>,
    /// Slack on one side, as SIDE:DEGREES with SIDE in {L, R}.
    #[arg(long, value_parser = parse_slack)]
    pub epsilon: Option<(char, f64)>,
    /// A named placement.
    #[arg(long, value_enum)]
    pub select: Option<Selection>,
}

#[derive(Debug, Args)]
pub struct ImprovedArgs {
    #[command(flatten)]
    pub gadget: GadgetArgs,
    #[command(flatten)]
    pub placement: Placement,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Assignment on tilted, non-critical sides.
    #[arg(long, value_enum, default_value = "primary")]
    pub variant: Variant,
    #[arg(long)]
    pub debug_lines: bool,
}

#[derive(Debug, Args)]
pub struct InterferenceArgs {
    #[command(flatten)]
    pub gadget: GadgetArgs,
    #[command(flatten)]
    pub placement: Placement,
}

#[derive(Debug, Args)]
pub struct PrismArgs {
    /// Number of prism sides; repeat or separate with commas. Defaults to 3,4,5,6,8,12.
    #[arg(long = "n", value_delimiter = ',')]
    pub n: Vec<u32>,
    /// Print CSV instead of a table.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct DivideArgs {
    #[command(flatten)]
    pub gadget: GadgetArgs,
    /// Number of levels.
    #[arg(long = "d")]
    pub levels: usize,
    /// Level height ratios from the bottom; rescaled to sum to the level count.
    #[arg(long, value_delimiter = ',')]
    pub ratios: Vec<f64>,
    #[command(flatten)]
    pub placement: Placement,
    /// Tongue angle of one level, as N=DEGREES.
    #[arg(long = "phi-level", value_parser = parse_level)]
    pub phi_level: Vec<(usize, f64)>,
    /// Invert the optional fold pair of level N.
    #[arg(long)]
    pub invert: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckCpArgs {
    /// FOLD file to check.
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// FOLD file to read.
    pub file: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_slack(s: &str) -> Result<(char, f64), String> {
    let (side, value) = s.split_once(':').ok_or("expected SIDE:DEGREES")?;
    let side = match side.trim().to_ascii_uppercase().as_str() {
        "L" => 'L',
        "R" => 'R',
        other => return Err(format!("unknown side {other:?}; use L or R")),
    };
    let value = value.trim().parse().map_err(|e| format!("bad angle: {e}"))?;
    Ok((side, value))
}

fn parse_level(s: &str) -> Result<(usize, f64), String> {
    let (n, value) = s.split_once('=').ok_or("expected N=DEGREES")?;
    let n = n.trim().parse().map_err(|e| format!("bad level: {e}"))?;
    let value = value.trim().parse().map_err(|e| format!("bad angle: {e}"))?;
    Ok((n, value))
}
