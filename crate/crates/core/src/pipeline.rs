//! The chain `U(1) → U(2) → U(4)` with verification at each stage.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Tolerances;
use crate::designset::{
    build_inductive, builtin_plan, resolve_plan, roots_of_unity_design, shrink_multiplicity, shrink_phase,
    DesignRecipe, GroupingPlan, RecipeNode, UnitaryMultiset,
};
use crate::error::{Error, Result};
use crate::verify::{probe_check_all, sampled_check_all, verify_exact, VerificationReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineOptions {
    pub t: u32,
    /// Final dimension: 1, 2 or 4.
    pub target_n: usize,
    pub seed: u64,
    pub n_probes: usize,
    pub n_samples: u64,
    /// Residual bound for the probe check of recipes too large to expand.
    pub probe_tol: f64,
    pub tolerances: Tolerances,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            t: 4,
            target_n: 4,
            seed: 0,
            n_probes: 8,
            n_samples: 1_000_000,
            probe_tol: 1e-6,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Stage {
    pub name: String,
    pub recipe: Arc<DesignRecipe>,
    pub reports: Vec<VerificationReport>,
    /// Multiplicity divisor measured after expansion, when expanded.
    pub measured_divisor: Option<u64>,
    /// Size of the phase-class reduction, when computed.
    pub phase_shrunk: Option<UnitaryMultiset>,
}

impl Stage {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    /// Structural divisor of the product under a shrunk node.
    pub fn structural_divisor(&self) -> Option<String> {
        match self.recipe.node() {
            RecipeNode::Shrunk { child, .. } => Some(child.structural_divisor().to_string()),
            _ => None,
        }
    }

    pub fn summary(&self) -> Value {
        serde_json::json!({
            "stage": self.name,
            "dim": self.recipe.dim(),
            "cardinality": self.recipe.cardinality().to_string(),
            "measured_divisor": self.measured_divisor,
            "structural_divisor": self.structural_divisor(),
            "phase_shrunk_cardinality": self.phase_shrunk.as_ref().map(|x| x.cardinality()),
            "pass": self.pass(),
        })
    }
}

pub fn builtin_resolved_plan(n: usize, m: usize, t: u32, tol: &Tolerances) -> Result<GroupingPlan> {
    let spec = builtin_plan(n, m, t)
        .ok_or_else(|| Error::Invalid(format!("no shipped grouping plan for (n, m, t) = ({n}, {m}, {t})")))?;
    resolve_plan(&spec, tol.certification)
}

fn stage_error(stage: &str, e: Error) -> Error {
    Error::Invalid(format!("stage {stage}: {e}"))
}

/// Five phases (or `t+1` in general) on `U(1)`.
pub fn stage_u1(opts: &PipelineOptions) -> Result<Stage> {
    let x1 = roots_of_unity_design(opts.t);
    let report = verify_exact(&x1, opts.t, opts.tolerances.verification)?;
    Ok(Stage {
        name: "u1".into(),
        recipe: DesignRecipe::explicit(x1, "X1"),
        reports: vec![report],
        measured_divisor: None,
        phase_shrunk: None,
    })
}

/// Lifts `U(1)` to `U(2)`, expands the product, and divides out the
/// measured common multiplicity.
pub fn stage_u2(opts: &PipelineOptions, u1: &Stage) -> Result<Stage> {
    let tol = &opts.tolerances;
    let plan = builtin_resolved_plan(2, 1, opts.t, tol).map_err(|e| stage_error("u2", e))?;
    let product = build_inductive(2, 1, opts.t, u1.recipe.clone(), u1.recipe.clone(), &plan, tol.structural)
        .map_err(|e| stage_error("u2", e))?;
    let expanded = product.to_multiset(false)?;
    let shrunk = shrink_multiplicity(&expanded, tol.dedup);
    let recipe = DesignRecipe::shrunk(product, shrunk.divisor)?;
    let mut report = verify_exact(&shrunk.set, opts.t, tol.verification)?;
    report.cardinality = recipe.cardinality().to_string();
    let phase = shrink_phase(&shrunk.set, opts.t, tol.dedup);
    let mut balanced = verify_exact(&phase.set, opts.t, tol.verification)?;
    balanced.entries.retain(|e| {
        let (r, s) = e.label.split_once(',').unwrap_or_default();
        r.trim_start_matches("r=") == s.trim_start_matches("s=")
    });
    balanced.pass = balanced.entries.iter().all(|e| e.pass);
    Ok(Stage {
        name: "u2".into(),
        recipe,
        reports: vec![report, balanced],
        measured_divisor: Some(shrunk.divisor),
        phase_shrunk: Some(phase.set),
    })
}

/// Lifts `U(2)` to `U(4)` lazily; the product is divided by its
/// structural divisor and checked through probes and samples.
pub fn stage_u4(opts: &PipelineOptions, u2: &Stage) -> Result<Stage> {
    let tol = &opts.tolerances;
    let plan = builtin_resolved_plan(4, 2, opts.t, tol).map_err(|e| stage_error("u4", e))?;
    let product = build_inductive(4, 2, opts.t, u2.recipe.clone(), u2.recipe.clone(), &plan, tol.structural)
        .map_err(|e| stage_error("u4", e))?;
    let divisor = product
        .structural_divisor()
        .to_u64()
        .ok_or_else(|| stage_error("u4", Error::Invalid("structural divisor overflows u64".into())))?;
    let recipe = DesignRecipe::shrunk(product, divisor)?;
    let reports = verify_lazy(&recipe, opts)?;
    Ok(Stage {
        name: "u4".into(),
        recipe,
        reports,
        measured_divisor: None,
        phase_shrunk: None,
    })
}

/// Probe and sampled checks for a recipe too large to expand.
pub fn verify_lazy(recipe: &DesignRecipe, opts: &PipelineOptions) -> Result<Vec<VerificationReport>> {
    let t = opts.t;
    Ok(vec![
        probe_check_all(recipe, t as usize, opts.n_probes, opts.probe_tol, opts.seed)?,
        sampled_check_all(recipe, t, opts.n_samples, opts.seed)?,
    ])
}

pub fn run_pipeline(opts: &PipelineOptions) -> Result<Vec<Stage>> {
    if ![1, 2, 4].contains(&opts.target_n) {
        return Err(Error::OutOfRange(format!("target dimension {} is not 1, 2 or 4", opts.target_n)));
    }
    let mut stages = vec![stage_u1(opts)?];
    if opts.target_n >= 2 {
        stages.push(stage_u2(opts, &stages[0])?);
    }
    if opts.target_n >= 4 {
        stages.push(stage_u4(opts, &stages[1])?);
    }
    Ok(stages)
}

/// Writes `<stage>.manifest.json` and `<stage>.report.json` for each stage
/// and returns the manifest of the last one.
pub fn write_stages(stages: &[Stage], dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let mut last = dir.join("manifest.json");
    for s in stages {
        let manifest = dir.join(format!("{}.manifest.json", s.name));
        fs::write(&manifest, serde_json::to_string_pretty(&s.recipe.to_manifest())?)?;
        let report = serde_json::json!({ "summary": s.summary(), "reports": s.reports });
        fs::write(dir.join(format!("{}.report.json", s.name)), serde_json::to_string_pretty(&report)?)?;
        last = manifest;
    }
    Ok(last)
}

/// Copy of `recipe` in which factor `index` of the (possibly shrunk)
/// top-level product is replaced.
pub fn replace_factor(
    recipe: &Arc<DesignRecipe>,
    index: usize,
    replacement: Arc<DesignRecipe>,
) -> Result<Arc<DesignRecipe>> {
    match recipe.node() {
        RecipeNode::Shrunk { child, .. } => replace_factor(child, index, replacement),
        RecipeNode::Product(children) => {
            if index >= children.len() {
                return Err(Error::OutOfRange(format!("factor {index} of {}", children.len())));
            }
            let mut children = children.clone();
            children[index] = replacement;
            DesignRecipe::product(children)
        }
        _ => Err(Error::Invalid("recipe is not a product".into())),
    }
}

/// `|X|` as an exact power of `base`, if it is one.
pub fn cardinality_exponent(recipe: &DesignRecipe, base: u32) -> Option<u32> {
    crate::bounds::as_power(recipe.cardinality(), base)
}
