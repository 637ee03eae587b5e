use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use unidesign::bounds::bound_table;
use unidesign::config::{ENUMERATION_LIMIT, PAIR_LIMIT};
use unidesign::designset::{
    build_inductive, resolve_plan, roots_of_unity_design, shrink_multiplicity, DesignRecipe, PlanSpec,
};
use unidesign::linalg::io::write_matrix;
use unidesign::pipeline::{builtin_resolved_plan, run_pipeline, write_stages, PipelineOptions};
use unidesign::poly::BiPoly;
use unidesign::repindex::Partition;
use unidesign::verify::{probe_check_all, sampled_check_all, verify_exact, VerificationReport};
use unidesign::zerofind::common_zeros;
use unidesign::zonal::{zonal_eval, SymmetricPoly, ZonalBuilder};
use unidesign::{ComplexMatrix, Error};

use crate::config::{Command, RunConfig, VerifyMode};

const DEFAULT_PROBES: usize = 8;
const DEFAULT_SAMPLES: u64 = 1_000_000;
const DEFAULT_STEPS: usize = 41;

/// Runs a validated configuration. `Ok(false)` means a check failed.
pub fn run(cfg: &RunConfig) -> Result<bool> {
    match cfg.command {
        Command::ZonalPrint => zonal_print(cfg),
        Command::ZonalEval => zonal_evaluate(cfg),
        Command::ZerosFind => zeros_find(cfg),
        Command::ZerosLoci => zeros_loci(cfg),
        Command::DesignBuild => design_build(cfg),
        Command::DesignVerify => design_verify(cfg),
        Command::DesignExport => design_export(cfg),
        Command::DesignSample => design_sample(cfg),
        Command::Pipeline => pipeline(cfg),
        Command::Bounds => bounds(cfg),
    }
}

fn write_stdout(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match output {
        Some(path) => fs::write(path, text).with_context(|| path.display().to_string())?,
        None => write_stdout(&text)?,
    }
    Ok(())
}

fn partitions(cfg: &RunConfig) -> Result<Vec<Partition>> {
    cfg.kappas
        .iter()
        .map(|k| Partition::new(k.clone()).ok_or_else(|| anyhow!("{k:?} is not a partition")))
        .collect()
}

fn zonal_family(cfg: &RunConfig) -> Result<Vec<(Partition, SymmetricPoly)>> {
    let (m, n) = (cfg.m.unwrap(), cfg.n.unwrap());
    let mut builder = ZonalBuilder::new(m);
    partitions(cfg)?
        .into_iter()
        .map(|k| {
            let z = builder.zonal(&k, n)?;
            Ok((k, z))
        })
        .collect()
}

fn zonal_print(cfg: &RunConfig) -> Result<bool> {
    let out: Vec<Value> = zonal_family(cfg)?
        .iter()
        .map(|(k, z)| {
            let s_star: serde_json::Map<String, Value> =
                z.coeffs().iter().map(|(s, c)| (s.to_string(), json!(c.to_string()))).collect();
            let monomial: Vec<Value> = z
                .to_monomial()
                .terms()
                .map(|(e, c)| json!({ "exponent": e, "coefficient": c.to_string() }))
                .collect();
            json!({
                "kappa": k.parts(),
                "m": z.m(),
                "n": cfg.n,
                "degree": z.degree(),
                "s_star": s_star,
                "monomial": monomial,
            })
        })
        .collect();
    emit(&out, cfg.output.as_deref())?;
    Ok(true)
}

fn zonal_evaluate(cfg: &RunConfig) -> Result<bool> {
    let out: Vec<Value> = zonal_family(cfg)?
        .iter()
        .map(|(k, z)| json!({ "kappa": k.parts(), "y": cfg.y, "value": zonal_eval(z, &cfg.y) }))
        .collect();
    emit(&out, cfg.output.as_deref())?;
    Ok(true)
}

fn zeros_find(cfg: &RunConfig) -> Result<bool> {
    let kappas = partitions(cfg)?;
    let tol = cfg.tolerances().certification;
    let certs = match common_zeros(&kappas, cfg.m.unwrap(), cfg.n.unwrap(), tol) {
        Ok(c) => c,
        Err(Error::NoZeroFound(msg)) => {
            eprintln!("no certified zero: {msg}");
            Vec::new()
        }
        Err(e) => return Err(e.into()),
    };
    emit(&certs, cfg.output.as_deref())?;
    Ok(!certs.is_empty())
}

fn zeros_loci(cfg: &RunConfig) -> Result<bool> {
    let steps = cfg.steps.unwrap_or(DEFAULT_STEPS).max(2);
    let grid: Vec<f64> = (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect();
    let m = cfg.m.unwrap();
    let mut text = String::from(if m == 1 { "kappa,y1,value\n" } else { "kappa,y1,y2,value\n" });
    for (k, z) in zonal_family(cfg)? {
        let label = k.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        match m {
            1 => {
                for &y1 in &grid {
                    text += &format!("{label},{y1},{}\n", zonal_eval(&z, &[y1]));
                }
            }
            2 => {
                let bi = BiPoly::from_multi(&z.to_monomial());
                for &y1 in &grid {
                    for &y2 in &grid {
                        text += &format!("{label},{y1},{y2},{}\n", bi.eval_f64(y1, y2));
                    }
                }
            }
            _ => bail!("loci grids are two-dimensional at most; got m = {m}"),
        }
    }
    match cfg.output.as_deref() {
        Some(path) => fs::write(path, text).with_context(|| path.display().to_string())?,
        None => write_stdout(&text)?,
    }
    Ok(true)
}

fn load_recipe(path: &Path) -> Result<Arc<DesignRecipe>> {
    let text = fs::read_to_string(path).with_context(|| path.display().to_string())?;
    let value: Value = serde_json::from_str(&text).with_context(|| path.display().to_string())?;
    DesignRecipe::from_manifest(&value).with_context(|| format!("loading {}", path.display()))
}

fn design_build(cfg: &RunConfig) -> Result<bool> {
    let (n, m, t) = (cfg.n.unwrap(), cfg.m.unwrap(), cfg.t.unwrap());
    if n != 2 * m {
        bail!("the inductive build uses the same base on both blocks, so n must equal 2m");
    }
    let tol = cfg.tolerances();
    let base = match &cfg.input {
        Some(path) => load_recipe(path)?,
        None => DesignRecipe::explicit(roots_of_unity_design(t), "X1"),
    };
    let plan = match &cfg.plan {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| path.display().to_string())?;
            let spec: PlanSpec = serde_json::from_str(&text).with_context(|| path.display().to_string())?;
            resolve_plan(&spec, tol.certification)?
        }
        None => builtin_resolved_plan(n, m, t, &tol)?,
    };
    let product = build_inductive(n, m, t, base.clone(), base, &plan, tol.structural)?;
    let divisor = product
        .structural_divisor()
        .to_u64()
        .ok_or_else(|| anyhow!("structural divisor overflows u64"))?;
    let recipe = DesignRecipe::shrunk(product, divisor)?;
    let manifest = recipe.to_manifest();
    let summary = json!({
        "dim": recipe.dim(),
        "cardinality": recipe.cardinality().to_string(),
        "divisor": divisor,
        "groups": plan.groups.len(),
        "manifest": cfg.output,
    });
    match cfg.output.as_deref() {
        Some(path) => {
            emit(&manifest, Some(path))?;
            emit(&summary, None)?;
        }
        None => emit(&manifest, None)?,
    }
    Ok(true)
}

fn verify_enumerated(recipe: &DesignRecipe, cfg: &RunConfig) -> Result<VerificationReport> {
    let set = recipe.to_multiset(cfg.force)?;
    let merged = shrink_multiplicity(&set, cfg.tolerances().dedup).set;
    let mut report = verify_exact(&merged, cfg.t.unwrap(), cfg.tolerances().verification)?;
    report.cardinality = recipe.cardinality().to_string();
    Ok(report)
}

fn design_verify(cfg: &RunConfig) -> Result<bool> {
    let recipe = load_recipe(cfg.input.as_deref().unwrap())?;
    let t = cfg.t.unwrap();
    let tol = cfg.tolerances().verification;
    let probes = cfg.probes.unwrap_or(DEFAULT_PROBES);
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let reports = match cfg.mode {
        VerifyMode::Exact => vec![verify_enumerated(&recipe, cfg)?],
        VerifyMode::Probe => vec![probe_check_all(&recipe, t as usize, probes, tol, cfg.seed)?],
        VerifyMode::Sampled => vec![sampled_check_all(&recipe, t, samples, cfg.seed)?],
        VerifyMode::Auto => {
            let size = recipe.cardinality().to_u64().unwrap_or(u64::MAX);
            let enumerable = size <= ENUMERATION_LIMIT && size.saturating_mul(size) <= PAIR_LIMIT;
            if enumerable {
                vec![verify_enumerated(&recipe, cfg)?]
            } else {
                let mut out = Vec::new();
                match probe_check_all(&recipe, t as usize, probes, tol, cfg.seed) {
                    Ok(r) => out.push(r),
                    Err(Error::ChildTooLarge(msg)) => eprintln!("probe check skipped: {msg}"),
                    Err(e) => return Err(e.into()),
                }
                out.push(sampled_check_all(&recipe, t, samples, cfg.seed)?);
                out
            }
        }
    };
    let pass = reports.iter().all(|r| r.pass);
    if let [single] = reports.as_slice() {
        emit(single, cfg.output.as_deref())?;
    } else {
        emit(&reports, cfg.output.as_deref())?;
    }
    Ok(pass)
}

fn write_matrices<'a>(path: &Path, matrices: impl Iterator<Item = &'a ComplexMatrix>) -> Result<u64> {
    let file = File::create(path).with_context(|| path.display().to_string())?;
    let mut w = BufWriter::new(file);
    let mut count = 0u64;
    for u in matrices {
        write_matrix(&mut w, u)?;
        count += 1;
    }
    w.flush()?;
    Ok(count)
}

fn design_export(cfg: &RunConfig) -> Result<bool> {
    let recipe = load_recipe(cfg.input.as_deref().unwrap())?;
    let out = cfg.output.as_deref().unwrap();
    let elements: Vec<ComplexMatrix> = recipe.enumerate(cfg.force)?.collect();
    let count = write_matrices(out, elements.iter())?;
    emit(&json!({ "dim": recipe.dim(), "written": count, "output": out }), None)?;
    Ok(true)
}

fn design_sample(cfg: &RunConfig) -> Result<bool> {
    let recipe = load_recipe(cfg.input.as_deref().unwrap())?;
    let out = cfg.output.as_deref().unwrap();
    let set = recipe.sample(cfg.count.unwrap(), cfg.seed)?;
    let count = write_matrices(out, set.expanded())?;
    emit(&json!({ "dim": recipe.dim(), "written": count, "seed": cfg.seed, "output": out }), None)?;
    Ok(true)
}

fn pipeline(cfg: &RunConfig) -> Result<bool> {
    let defaults = PipelineOptions::default();
    let opts = PipelineOptions {
        t: cfg.t.unwrap(),
        target_n: cfg.n.unwrap(),
        seed: cfg.seed,
        n_probes: cfg.probes.unwrap_or(defaults.n_probes),
        n_samples: cfg.samples.unwrap_or(defaults.n_samples),
        probe_tol: defaults.probe_tol,
        tolerances: cfg.tolerances(),
    };
    let stages = run_pipeline(&opts)?;
    let manifest = match cfg.output.as_deref() {
        Some(dir) => Some(write_stages(&stages, dir)?),
        None => None,
    };
    let pass = stages.iter().all(|s| s.pass());
    let summary = json!({
        "stages": stages.iter().map(|s| s.summary()).collect::<Vec<_>>(),
        "manifest": manifest,
        "pass": pass,
    });
    emit(&summary, None)?;
    Ok(pass)
}

fn bounds(cfg: &RunConfig) -> Result<bool> {
    let (n, t) = (cfg.n.unwrap(), cfg.t.unwrap());
    let value = if n == 1 {
        json!({ "n": 1, "t": t, "bound": (t + 1).to_string(), "exponent": 1 })
    } else {
        let m = cfg.m.unwrap();
        let table = bound_table(n, m, t).ok_or_else(|| anyhow!("no bound for (n, m, t) = ({n}, {m}, {t})"))?;
        serde_json::to_value(table)?
    };
    emit(&value, cfg.output.as_deref())?;
    Ok(true)
}
