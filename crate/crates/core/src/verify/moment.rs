//! Moment operators `M_X = (1/|X|) Σ_{U∈X} U^{⊗r} ⊗ Ū^{⊗s}` applied through
//! the recipe tree, so giant products are never expanded.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::weingarten::haar_moment_apply;
use super::{ReportEntry, VerificationMode, VerificationReport};
use crate::config::ENUMERATION_LIMIT;
use crate::designset::{DesignRecipe, RecipeNode};
use crate::error::{Error, Result};
use crate::linalg::random::random_probe;
use crate::linalg::{tensor_moment_apply, ComplexMatrix, ProbeVector};

/// Largest dense child moment (rows) built for a block split.
const DENSE_LIMIT: usize = 4096;

/// Dense moments of recipe subtrees, keyed by node address and `(r, s)`.
#[derive(Default)]
pub struct MomentCache {
    dense: HashMap<(usize, usize, usize), Arc<DMatrix<Complex64>>>,
}

impl MomentCache {
    pub fn new() -> Self {
        Self::default()
    }
}

fn key(recipe: &DesignRecipe, r: usize, s: usize) -> (usize, usize, usize) {
    (recipe as *const DesignRecipe as usize, r, s)
}

fn weight(child: &DesignRecipe, parent: &DesignRecipe) -> f64 {
    // ratio of big integers, computed in floating point after scaling
    let shift = parent.cardinality().bits().saturating_sub(900);
    let c = (child.cardinality() >> shift).to_f64().unwrap_or(f64::NAN);
    let p = (parent.cardinality() >> shift).to_f64().unwrap_or(f64::NAN);
    c / p
}

/// `M_X v`, or `M_X† v` when `adjoint` is set.
pub fn apply_moment(
    recipe: &DesignRecipe,
    v: &ProbeVector,
    adjoint: bool,
    cache: &mut MomentCache,
) -> Result<ProbeVector> {
    if v.n != recipe.dim() {
        return Err(Error::DimensionMismatch { expected: recipe.dim(), found: v.n });
    }
    match recipe.node() {
        RecipeNode::Explicit { set, label, .. } => {
            if set.distinct() as u64 > ENUMERATION_LIMIT {
                return Err(Error::ChildTooLarge(format!("{label}: {} elements", set.distinct())));
            }
            let mut out = ProbeVector::zeros(v.n, v.r, v.s);
            let total = set.cardinality() as f64;
            for (u, k) in set.iter() {
                let w = if adjoint {
                    tensor_moment_apply(&u.adjoint(), v.r, v.s, v)?
                } else {
                    tensor_moment_apply(u, v.r, v.s, v)?
                };
                out.axpy(Complex64::new(k as f64 / total, 0.0), &w);
            }
            Ok(out)
        }
        RecipeNode::Product(children) => {
            let mut w = v.clone();
            if adjoint {
                for c in children {
                    w = apply_moment(c, &w, true, cache)?;
                }
            } else {
                for c in children.iter().rev() {
                    w = apply_moment(c, &w, false, cache)?;
                }
            }
            Ok(w)
        }
        RecipeNode::Union(children) => {
            let mut out = ProbeVector::zeros(v.n, v.r, v.s);
            for c in children {
                let w = apply_moment(c, v, adjoint, cache)?;
                out.axpy(Complex64::new(weight(c, recipe), 0.0), &w);
            }
            Ok(out)
        }
        RecipeNode::LeftTranslate { g, child } => {
            if adjoint {
                let w = tensor_moment_apply(&g.adjoint(), v.r, v.s, v)?;
                apply_moment(child, &w, true, cache)
            } else {
                let w = apply_moment(child, v, false, cache)?;
                tensor_moment_apply(g, v.r, v.s, &w)
            }
        }
        RecipeNode::Inverse(child) => apply_moment(child, v, !adjoint, cache),
        RecipeNode::Shrunk { child, .. } => apply_moment(child, v, adjoint, cache),
        RecipeNode::BlockEmbed { left, right } => {
            // diag(g,h) = diag(g,I)·diag(I,h); the two averages commute
            let mut w = v.clone();
            apply_block(&mut w, right, left.dim(), adjoint, cache)?;
            apply_block(&mut w, left, 0, adjoint, cache)?;
            Ok(w)
        }
    }
}

/// Applies the moment of `child`, embedded on coordinates
/// `offset..offset+child.dim()` and the identity elsewhere.
///
/// The embedded operator preserves each assignment of tensor modes to
/// "inside" or "outside" the block, and within one assignment acts as the
/// child's `(α, β)` moment on the inside modes.
fn apply_block(
    v: &mut ProbeVector,
    child: &DesignRecipe,
    offset: usize,
    adjoint: bool,
    cache: &mut MomentCache,
) -> Result<()> {
    let n = v.n;
    let m = child.dim();
    let modes = v.r + v.s;
    let strides: Vec<usize> = (0..modes).map(|k| n.pow((modes - 1 - k) as u32)).collect();
    for mask in 1u32..(1 << modes) {
        let inside: Vec<usize> = (0..modes).filter(|k| mask >> k & 1 == 1).collect();
        let outside: Vec<usize> = (0..modes).filter(|k| mask >> k & 1 == 0).collect();
        let alpha = inside.iter().filter(|&&k| k < v.r).count();
        let beta = inside.len() - alpha;
        let dense = dense_moment(child, alpha, beta, cache)?;
        let dense = if adjoint { Arc::new(dense.adjoint()) } else { dense };
        let inner = offsets(&inside, &strides, m, |d| offset + d);
        let outer = offsets(&outside, &strides, n - m, |d| if d < offset { d } else { d + m });
        let mut x = DMatrix::<Complex64>::zeros(inner.len(), outer.len());
        for (j, &o) in outer.iter().enumerate() {
            for (i, &a) in inner.iter().enumerate() {
                x[(i, j)] = v.data[o + a];
            }
        }
        let y = &*dense * x;
        for (j, &o) in outer.iter().enumerate() {
            for (i, &a) in inner.iter().enumerate() {
                v.data[o + a] = y[(i, j)];
            }
        }
    }
    Ok(())
}

/// Flat offsets of every digit assignment to `modes`, each digit in
/// `0..size` mapped to a coordinate by `coord`; first mode most significant.
fn offsets(modes: &[usize], strides: &[usize], size: usize, coord: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = vec![0usize];
    for &k in modes {
        out = out
            .iter()
            .flat_map(|&base| (0..size).map(|d| base + coord(d) * strides[k]).collect::<Vec<_>>())
            .collect();
    }
    out
}

/// The `m^{r+s}`-square matrix of `M_X` for a recipe on `U(m)`.
pub fn dense_moment(
    recipe: &DesignRecipe,
    r: usize,
    s: usize,
    cache: &mut MomentCache,
) -> Result<Arc<DMatrix<Complex64>>> {
    if let Some(hit) = cache.dense.get(&key(recipe, r, s)) {
        return Ok(hit.clone());
    }
    let m = recipe.dim();
    let size = m.pow((r + s) as u32);
    if size > DENSE_LIMIT {
        return Err(Error::ChildTooLarge(format!("dense moment of size {size} on U({m})")));
    }
    let out = match recipe.node() {
        RecipeNode::Explicit { set, label, .. } => {
            if set.distinct() as u64 > ENUMERATION_LIMIT {
                return Err(Error::ChildTooLarge(format!("{label}: {} elements", set.distinct())));
            }
            let total = set.cardinality() as f64;
            let mut acc = DMatrix::<Complex64>::zeros(size, size);
            for (u, k) in set.iter() {
                acc += kron_power(u, r, s) * Complex64::new(k as f64 / total, 0.0);
            }
            acc
        }
        RecipeNode::Product(children) => {
            let mut acc = DMatrix::<Complex64>::identity(size, size);
            for c in children {
                acc *= &*dense_moment(c, r, s, cache)?;
            }
            acc
        }
        RecipeNode::Shrunk { child, .. } => (*dense_moment(child, r, s, cache)?).clone(),
        RecipeNode::Inverse(child) => dense_moment(child, r, s, cache)?.adjoint(),
        _ => {
            let mut acc = DMatrix::<Complex64>::zeros(size, size);
            for col in 0..size {
                let mut e = ProbeVector::zeros(m, r, s);
                e.data[col] = Complex64::new(1.0, 0.0);
                let w = apply_moment(recipe, &e, false, cache)?;
                for (row, z) in w.data.iter().enumerate() {
                    acc[(row, col)] = *z;
                }
            }
            acc
        }
    };
    let out = Arc::new(out);
    cache.dense.insert(key(recipe, r, s), out.clone());
    Ok(out)
}

fn kron_power(u: &ComplexMatrix, r: usize, s: usize) -> DMatrix<Complex64> {
    let ubar = u.map(|z| z.conj());
    let mut op = DMatrix::<Complex64>::identity(1, 1);
    for _ in 0..r {
        op = op.kronecker(u);
    }
    for _ in 0..s {
        op = op.kronecker(&ubar);
    }
    op
}

fn probe_entry(
    recipe: &DesignRecipe,
    r: usize,
    s: usize,
    n_probes: usize,
    tol: f64,
    seed: u64,
    cache: &mut MomentCache,
) -> Result<ReportEntry> {
    let n = recipe.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..n_probes {
        let v = random_probe(n, r, s, &mut rng);
        let got = apply_moment(recipe, &v, false, cache)?;
        let want = haar_moment_apply(n, r, s, &v)?;
        worst = worst.max(got.distance(&want) / v.norm());
    }
    let target = super::haar_target(n, r as u32, s as u32);
    Ok(ReportEntry::new(format!("r={r},s={s}"), worst, 0.0, tol).with_haar(target))
}

/// Relative residual `max ‖M_X v − M_Haar v‖ / ‖v‖` over Gaussian probes.
pub fn probe_check(
    recipe: &DesignRecipe,
    r: usize,
    s: usize,
    n_probes: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let mut cache = MomentCache::new();
    let entry = probe_entry(recipe, r, s, n_probes, tol, seed, &mut cache)?;
    Ok(probe_report(recipe, vec![entry], n_probes, seed))
}

/// [`probe_check`] for every `0 ≤ r, s ≤ t`, sharing child moments.
pub fn probe_check_all(
    recipe: &DesignRecipe,
    t: usize,
    n_probes: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let mut cache = MomentCache::new();
    let mut entries = Vec::new();
    for r in 0..=t {
        for s in 0..=t {
            let sub = seed.wrapping_add((r * 64 + s) as u64);
            entries.push(probe_entry(recipe, r, s, n_probes, tol, sub, &mut cache)?);
        }
    }
    Ok(probe_report(recipe, entries, n_probes, seed))
}

fn probe_report(recipe: &DesignRecipe, entries: Vec<ReportEntry>, n_probes: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new(
        VerificationMode::ProbeFactorized,
        recipe.dim(),
        recipe.cardinality().to_string(),
        entries,
    );
    report.probes = Some(n_probes);
    report.seed = Some(seed);
    report
}
