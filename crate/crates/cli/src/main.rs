//! `unidesign`: zonal polynomials, certified zeros, and unitary designs
//! from the command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Command, RunConfig, VerifyMode};

#[derive(Parser, Debug)]
#[command(name = "unidesign", version, about = "Exact unitary t-designs and their verification")]
struct Cli {
    /// JSON run configuration; flags given on the command line override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Zonal spherical polynomials.
    #[command(subcommand)]
    Zonal(ZonalCmd),
    /// Common zeros of zonal polynomials.
    #[command(subcommand)]
    Zeros(ZerosCmd),
    /// Build, verify, export and sample designs.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Run the U(1) -> U(2) -> U(4) chain.
    Pipeline(PipelineArgs),
    /// Recursive upper bounds on minimal design sizes.
    Bounds(BoundsArgs),
}

#[derive(Subcommand, Debug)]
enum ZonalCmd {
    /// Coefficients in the S* and monomial bases as exact fractions.
    Print(ZonalArgs),
    /// Floating-point values at a point of [0,1]^m.
    Eval(ZonalArgs),
}

#[derive(Subcommand, Debug)]
enum ZerosCmd {
    /// Certified common zeros (m <= 2).
    Find(ZonalArgs),
    /// Values on a regular grid, as CSV.
    Loci(ZonalArgs),
}

#[derive(Subcommand, Debug)]
enum DesignCmd {
    /// Inductive product design on U(n) from a design on U(m), n = 2m.
    Build(BuildArgs),
    /// Check the design property up to degree t.
    Verify(VerifyArgs),
    /// Write every element in the binary matrix format.
    Export(ExportArgs),
    /// Write independently drawn elements in the binary matrix format.
    Sample(SampleArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    /// Verification tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Certification tolerance for zeros.
    #[arg(long)]
    cert_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct ZonalArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Partition as comma-separated parts, e.g. 2,1; repeat for several.
    #[arg(long = "kappa", value_parser = parse_parts)]
    kappas: Vec<Vec<u32>>,
    /// Comma-separated coordinates.
    #[arg(long, value_delimiter = ',')]
    y: Vec<f64>,
    /// Grid points per axis for `loci`.
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<u32>,
    /// Manifest of the design on U(m); the t+1 roots of unity when omitted and m = 1.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Grouping plan file; the shipped plan when omitted.
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Recipe manifest.
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<VerifyMode>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    probes: Option<usize>,
    #[arg(long)]
    samples: Option<u64>,
    /// Expand recipes above the enumeration limit.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ExportArgs {
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct SampleArgs {
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[arg(long)]
    t: Option<u32>,
    /// Final dimension: 1, 2 or 4.
    #[arg(long)]
    target: Option<usize>,
    /// Directory for manifests and reports.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    probes: Option<usize>,
    #[arg(long)]
    samples: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<u32>,
}

fn parse_parts(s: &str) -> Result<Vec<u32>, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad part {p:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Ok(parts)
}

fn set<T>(slot: &mut Option<T>, v: Option<T>) {
    if v.is_some() {
        *slot = v;
    }
}

fn apply_common(cfg: &mut RunConfig, c: Common) {
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    set(&mut cfg.tolerances.verification, c.tol);
    set(&mut cfg.tolerances.certification, c.cert_tol);
}

fn apply_zonal(cfg: &mut RunConfig, a: ZonalArgs) {
    set(&mut cfg.m, a.m);
    set(&mut cfg.n, a.n);
    if !a.kappas.is_empty() {
        cfg.kappas = a.kappas;
    }
    if !a.y.is_empty() {
        cfg.y = a.y;
    }
    set(&mut cfg.steps, a.steps);
    apply_common(cfg, a.common);
}

fn command_of(top: &Top) -> Command {
    match top {
        Top::Zonal(ZonalCmd::Print(_)) => Command::ZonalPrint,
        Top::Zonal(ZonalCmd::Eval(_)) => Command::ZonalEval,
        Top::Zeros(ZerosCmd::Find(_)) => Command::ZerosFind,
        Top::Zeros(ZerosCmd::Loci(_)) => Command::ZerosLoci,
        Top::Design(DesignCmd::Build(_)) => Command::DesignBuild,
        Top::Design(DesignCmd::Verify(_)) => Command::DesignVerify,
        Top::Design(DesignCmd::Export(_)) => Command::DesignExport,
        Top::Design(DesignCmd::Sample(_)) => Command::DesignSample,
        Top::Pipeline(_) => Command::Pipeline,
        Top::Bounds(_) => Command::Bounds,
    }
}

fn load_config(path: Option<&PathBuf>, command: Command) -> Result<RunConfig, String> {
    let Some(path) = path else {
        return Ok(RunConfig::new(command));
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if cfg.command != command {
        return Err(format!(
            "config is for {:?} but the {:?} subcommand was given",
            cfg.command, command
        ));
    }
    Ok(cfg)
}

fn to_config(cli: Cli) -> Result<RunConfig, String> {
    let mut cfg = load_config(cli.config.as_ref(), command_of(&cli.command))?;
    match cli.command {
        Top::Zonal(ZonalCmd::Print(a) | ZonalCmd::Eval(a)) | Top::Zeros(ZerosCmd::Find(a) | ZerosCmd::Loci(a)) => {
            apply_zonal(&mut cfg, a)
        }
        Top::Design(DesignCmd::Build(a)) => {
            set(&mut cfg.n, a.n);
            set(&mut cfg.m, a.m);
            set(&mut cfg.t, a.t);
            set(&mut cfg.input, a.base);
            set(&mut cfg.plan, a.plan);
            set(&mut cfg.output, a.out);
            apply_common(&mut cfg, a.common);
        }
        Top::Design(DesignCmd::Verify(a)) => {
            set(&mut cfg.input, a.input);
            if let Some(mode) = a.mode {
                cfg.mode = mode;
            }
            set(&mut cfg.t, a.t);
            set(&mut cfg.probes, a.probes);
            set(&mut cfg.samples, a.samples);
            cfg.force |= a.force;
            apply_common(&mut cfg, a.common);
        }
        Top::Design(DesignCmd::Export(a)) => {
            set(&mut cfg.input, a.input);
            set(&mut cfg.output, a.out);
            cfg.force |= a.force;
        }
        Top::Design(DesignCmd::Sample(a)) => {
            set(&mut cfg.input, a.input);
            set(&mut cfg.output, a.out);
            set(&mut cfg.count, a.count);
            if let Some(s) = a.seed {
                cfg.seed = s;
            }
        }
        Top::Pipeline(a) => {
            set(&mut cfg.t, a.t);
            set(&mut cfg.n, a.target);
            set(&mut cfg.output, a.out);
            set(&mut cfg.probes, a.probes);
            set(&mut cfg.samples, a.samples);
            apply_common(&mut cfg, a.common);
        }
        Top::Bounds(a) => {
            set(&mut cfg.n, a.n);
            set(&mut cfg.m, a.m);
            set(&mut cfg.t, a.t);
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = match to_config(cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part_parsing() {
        assert_eq!(parse_parts("2,1").unwrap(), vec![2, 1]);
        assert_eq!(parse_parts("(2, 2)").unwrap(), vec![2, 2]);
        assert_eq!(parse_parts("1,0").unwrap(), vec![1]);
        assert!(parse_parts("2,x").is_err());
    }

    #[test]
    fn flags_override_config_defaults() {
        let cli = Cli::try_parse_from(["unidesign", "bounds", "--n", "4", "--m", "2", "--t", "4"]).unwrap();
        let cfg = to_config(cli).unwrap();
        assert_eq!((cfg.n, cfg.m, cfg.t), (Some(4), Some(2), Some(4)));
    }
}
