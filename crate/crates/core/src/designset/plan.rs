use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{DesignRecipe, UnitaryMultiset};
use crate::error::{Error, Result};
use crate::grassmann::zonal_at_unitary;
use crate::repindex::{enumerate_box, spherical_split, Partition};
use crate::zerofind::{common_zeros, nearest, omega_from_certificate, ZeroCertificate};

/// Grouping of spherical weights as stored in plan files: each group names
/// its `κ`s and an approximate location selecting one of their common zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpec {
    pub n: usize,
    pub m: usize,
    pub t: u32,
    pub groups: Vec<PlanSpecGroup>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpecGroup {
    pub upsilon: Vec<Partition>,
    pub near: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PlanGroup {
    pub upsilon: Vec<Partition>,
    pub omega: UnitaryMultiset,
    pub certificate: Option<ZeroCertificate>,
}

#[derive(Debug, Clone)]
pub struct GroupingPlan {
    pub n: usize,
    pub m: usize,
    pub t: u32,
    pub groups: Vec<PlanGroup>,
}

const U2_T4: &str = include_str!("../../data/plans/u2_m1_t4.json");
const U4_T4: &str = include_str!("../../data/plans/u4_m2_t4.json");

/// Shipped plans: `(n, m, t) = (2, 1, 4)` and `(4, 2, 4)`.
pub fn builtin_plan(n: usize, m: usize, t: u32) -> Option<PlanSpec> {
    let text = match (n, m, t) {
        (2, 1, 4) => U2_T4,
        (4, 2, 4) => U4_T4,
        _ => return None,
    };
    Some(serde_json::from_str(text).expect("shipped plan files parse"))
}

/// Finds and certifies the zero selected by each group.
pub fn resolve_plan(spec: &PlanSpec, tol: f64) -> Result<GroupingPlan> {
    let mut groups = Vec::with_capacity(spec.groups.len());
    for g in &spec.groups {
        let certs = common_zeros(&g.upsilon, spec.m, spec.n, tol)?;
        let cert = nearest(&certs, &g.near)
            .ok_or_else(|| Error::NoZeroFound(format!("{:?}", g.upsilon)))?
            .clone();
        groups.push(PlanGroup {
            upsilon: g.upsilon.clone(),
            omega: omega_from_certificate(&cert, spec.n)?,
            certificate: Some(cert),
        });
    }
    Ok(GroupingPlan { n: spec.n, m: spec.m, t: spec.t, groups })
}

/// Nontrivial `κ` of the spherical weights in `∎ₙ^{t,t}`.
pub fn required_kappas(n: usize, m: usize, t: u32) -> BTreeSet<Partition> {
    spherical_split(n, m, &enumerate_box(n, t, t))
        .spherical
        .into_iter()
        .map(|(_, k)| k)
        .filter(|k| !k.is_empty())
        .collect()
}

/// `Y·(Ω₁·Y)⋯(Ω_l·Y)` with `Y = diag(Y_left, Y_right)`.
pub fn build_inductive(
    n: usize,
    m: usize,
    t: u32,
    y_left: Arc<DesignRecipe>,
    y_right: Arc<DesignRecipe>,
    plan: &GroupingPlan,
    tol: f64,
) -> Result<Arc<DesignRecipe>> {
    if y_left.dim() != m || y_right.dim() != n - m {
        return Err(Error::DimensionMismatch { expected: m, found: y_left.dim() });
    }
    if (plan.n, plan.m, plan.t) != (n, m, t) {
        return Err(Error::Invalid(format!(
            "plan is for (n, m, t) = ({}, {}, {}), not ({n}, {m}, {t})",
            plan.n, plan.m, plan.t
        )));
    }
    let required = required_kappas(n, m, t);
    let mut covered = BTreeSet::new();
    for g in &plan.groups {
        for k in &g.upsilon {
            if !covered.insert(k.clone()) {
                return Err(Error::Invalid(format!("{k} appears in two groups")));
            }
        }
    }
    if let Some(missing) = required.iter().find(|k| !covered.contains(*k)) {
        return Err(Error::CoverageGap(missing.parts().to_vec()));
    }
    if let Some(extra) = covered.iter().find(|k| !required.contains(*k)) {
        return Err(Error::Invalid(format!("{extra} is not a spherical weight of the box")));
    }
    for g in &plan.groups {
        let uncertified = || Error::UncertifiedOmega(g.upsilon.iter().map(|k| k.parts().to_vec()).collect());
        let cert = g.certificate.as_ref().ok_or_else(uncertified)?;
        if cert.kappa_list.iter().collect::<BTreeSet<_>>() != g.upsilon.iter().collect::<BTreeSet<_>>() {
            return Err(uncertified());
        }
        for (omega, _) in g.omega.iter() {
            for k in &g.upsilon {
                if zonal_at_unitary(k, m, n, omega)?.abs() > tol {
                    return Err(uncertified());
                }
            }
        }
    }
    let y = DesignRecipe::block_embed(y_left, y_right);
    let mut factors = vec![y.clone()];
    for g in &plan.groups {
        let label = format!(
            "omega[{}]",
            g.upsilon.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        );
        factors.push(DesignRecipe::explicit_certified(g.omega.clone(), label, g.certificate.clone()));
        factors.push(y.clone());
    }
    if factors.len() == 1 {
        return Ok(y);
    }
    DesignRecipe::product(factors)
}
