//! The validated record every command is dispatched from.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use unidesign::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ZonalPrint,
    ZonalEval,
    ZerosFind,
    ZerosLoci,
    DesignBuild,
    DesignVerify,
    DesignExport,
    DesignSample,
    Pipeline,
    Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    #[default]
    Auto,
    Exact,
    Probe,
    Sampled,
}

/// Partial override of [`Tolerances`]; absent fields keep their defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub unitarity: Option<f64>,
    pub structural: Option<f64>,
    pub verification: Option<f64>,
    pub branch_cut: Option<f64>,
    pub confluent: Option<f64>,
    pub dedup: Option<f64>,
    pub certification: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, mut t: Tolerances) -> Tolerances {
        let pairs = [
            (&mut t.unitarity, self.unitarity),
            (&mut t.structural, self.structural),
            (&mut t.verification, self.verification),
            (&mut t.branch_cut, self.branch_cut),
            (&mut t.confluent, self.confluent),
            (&mut t.dedup, self.dedup),
            (&mut t.certification, self.certification),
        ];
        for (slot, value) in pairs {
            if let Some(v) = value {
                *slot = v;
            }
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub t: Option<u32>,
    /// Partitions, each as its list of parts.
    #[serde(default)]
    pub kappas: Vec<Vec<u32>>,
    /// Points of `[0,1]^m` for evaluation, or the approximate zero to select.
    #[serde(default)]
    pub y: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    #[serde(default)]
    pub mode: VerifyMode,
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default)]
    pub plan: Option<PathBuf>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub probes: Option<usize>,
    #[serde(default)]
    pub samples: Option<u64>,
    #[serde(default)]
    pub force: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            m: None,
            t: None,
            kappas: Vec::new(),
            y: Vec::new(),
            seed: 0,
            tolerances: ToleranceOverrides::default(),
            mode: VerifyMode::Auto,
            input: None,
            plan: None,
            output: None,
            count: None,
            steps: None,
            probes: None,
            samples: None,
            force: false,
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tolerances.apply(Tolerances::default())
    }

    /// Checks that every field the command reads is present and in range.
    pub fn validate(&self) -> Result<(), String> {
        let need = |name: &str, v: Option<usize>| v.ok_or_else(|| format!("{name} is required"));
        for (name, v) in [
            ("unitarity", self.tolerances.unitarity),
            ("structural", self.tolerances.structural),
            ("verification", self.tolerances.verification),
            ("branch_cut", self.tolerances.branch_cut),
            ("confluent", self.tolerances.confluent),
            ("dedup", self.tolerances.dedup),
            ("certification", self.tolerances.certification),
        ] {
            if let Some(x) = v {
                if !(x.is_finite() && x > 0.0) {
                    return Err(format!("tolerance {name} must be positive, got {x}"));
                }
            }
        }
        if self.kappas.iter().flatten().any(|&p| p == 0) || self.kappas.iter().any(|k| k.windows(2).any(|w| w[0] < w[1])) {
            return Err("each kappa must be a weakly decreasing list of positive parts".into());
        }
        match self.command {
            Command::ZonalPrint | Command::ZonalEval | Command::ZerosFind | Command::ZerosLoci => {
                let m = need("m", self.m)?;
                let n = need("n", self.n)?;
                if m == 0 || 2 * m > n {
                    return Err(format!("need 1 ≤ m ≤ n/2, got m={m}, n={n}"));
                }
                if self.kappas.is_empty() {
                    return Err("at least one kappa is required".into());
                }
                if let Some(k) = self.kappas.iter().find(|k| k.len() > m) {
                    return Err(format!("kappa {k:?} has more than m={m} parts"));
                }
                if self.command == Command::ZonalEval && self.y.len() != m {
                    return Err(format!("y must have m={m} coordinates"));
                }
                if self.y.iter().any(|v| !(0.0..=1.0).contains(v)) {
                    return Err("y coordinates must lie in [0, 1]".into());
                }
                if self.command == Command::ZerosFind && m > 2 {
                    return Err("zero certification supports m ≤ 2".into());
                }
            }
            Command::DesignBuild => {
                let n = need("n", self.n)?;
                let m = need("m", self.m)?;
                if m == 0 || 2 * m > n {
                    return Err(format!("need 1 ≤ m ≤ n/2, got m={m}, n={n}"));
                }
                self.t.ok_or("t is required")?;
                if m > 1 && self.input.is_none() {
                    return Err("a base manifest (input) is required when m > 1".into());
                }
            }
            Command::DesignVerify | Command::DesignExport | Command::DesignSample => {
                if self.input.is_none() {
                    return Err("input manifest is required".into());
                }
                if self.command == Command::DesignVerify {
                    self.t.ok_or("t is required")?;
                }
                if self.command != Command::DesignVerify && self.output.is_none() {
                    return Err("output path is required".into());
                }
                if self.command == Command::DesignSample {
                    need("count", self.count)?;
                }
            }
            Command::Pipeline => {
                let n = need("n", self.n)?;
                if ![1, 2, 4].contains(&n) {
                    return Err(format!("target dimension must be 1, 2 or 4, got {n}"));
                }
                self.t.ok_or("t is required")?;
            }
            Command::Bounds => {
                let n = need("n", self.n)?;
                self.t.ok_or("t is required")?;
                if n == 0 {
                    return Err("n must be positive".into());
                }
                let m = if n == 1 { self.m.unwrap_or(1) } else { need("m", self.m)? };
                if n > 1 && (m == 0 || 2 * m > n) {
                    return Err(format!("need 1 ≤ m ≤ n/2, got m={m}, n={n}"));
                }
            }
        }
        Ok(())
    }
}
