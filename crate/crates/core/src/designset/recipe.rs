use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{shrink_multiplicity, MatrixIndex, UnitaryMultiset};
use crate::config::ENUMERATION_LIMIT;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::zerofind::ZeroCertificate;

/// Tolerance for matching elements when a recipe is expanded or inspected.
const MATCH_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub enum RecipeNode {
    Explicit {
        set: UnitaryMultiset,
        label: String,
        certificate: Option<ZeroCertificate>,
    },
    Product(Vec<Arc<DesignRecipe>>),
    Union(Vec<Arc<DesignRecipe>>),
    BlockEmbed {
        left: Arc<DesignRecipe>,
        right: Arc<DesignRecipe>,
    },
    LeftTranslate {
        g: ComplexMatrix,
        child: Arc<DesignRecipe>,
    },
    Inverse(Arc<DesignRecipe>),
    /// The child with every multiplicity divided by `divisor`.
    Shrunk {
        child: Arc<DesignRecipe>,
        divisor: u64,
    },
}

/// A multiset of unitaries described by how it is built rather than by its
/// elements.
#[derive(Debug, Clone)]
pub struct DesignRecipe {
    node: RecipeNode,
    dim: usize,
    cardinality: BigUint,
}

impl DesignRecipe {
    pub fn explicit(set: UnitaryMultiset, label: impl Into<String>) -> Arc<Self> {
        Self::explicit_certified(set, label, None)
    }

    pub fn explicit_certified(
        set: UnitaryMultiset,
        label: impl Into<String>,
        certificate: Option<ZeroCertificate>,
    ) -> Arc<Self> {
        Arc::new(Self {
            dim: set.dim(),
            cardinality: BigUint::from(set.cardinality()),
            node: RecipeNode::Explicit {
                set,
                label: label.into(),
                certificate,
            },
        })
    }

    fn same_dim(children: &[Arc<DesignRecipe>]) -> Result<usize> {
        let Some(first) = children.first() else {
            return Err(Error::Invalid("a recipe node needs children".into()));
        };
        for c in children {
            if c.dim != first.dim {
                return Err(Error::DimensionMismatch { expected: first.dim, found: c.dim });
            }
        }
        Ok(first.dim)
    }

    pub fn product(children: Vec<Arc<DesignRecipe>>) -> Result<Arc<Self>> {
        let dim = Self::same_dim(&children)?;
        let cardinality = children.iter().fold(BigUint::one(), |acc, c| acc * &c.cardinality);
        Ok(Arc::new(Self { node: RecipeNode::Product(children), dim, cardinality }))
    }

    pub fn union(children: Vec<Arc<DesignRecipe>>) -> Result<Arc<Self>> {
        let dim = Self::same_dim(&children)?;
        let cardinality = children.iter().fold(BigUint::zero(), |acc, c| acc + &c.cardinality);
        Ok(Arc::new(Self { node: RecipeNode::Union(children), dim, cardinality }))
    }

    pub fn block_embed(left: Arc<DesignRecipe>, right: Arc<DesignRecipe>) -> Arc<Self> {
        Arc::new(Self {
            dim: left.dim + right.dim,
            cardinality: &left.cardinality * &right.cardinality,
            node: RecipeNode::BlockEmbed { left, right },
        })
    }

    pub fn left_translate(g: ComplexMatrix, child: Arc<DesignRecipe>) -> Result<Arc<Self>> {
        if g.nrows() != child.dim || g.ncols() != child.dim {
            return Err(Error::DimensionMismatch { expected: child.dim, found: g.nrows() });
        }
        linalg::check_unitary(&g, 1e-9)?;
        Ok(Arc::new(Self {
            dim: child.dim,
            cardinality: child.cardinality.clone(),
            node: RecipeNode::LeftTranslate { g, child },
        }))
    }

    pub fn inverse(child: Arc<DesignRecipe>) -> Arc<Self> {
        Arc::new(Self {
            dim: child.dim,
            cardinality: child.cardinality.clone(),
            node: RecipeNode::Inverse(child),
        })
    }

    pub fn shrunk(child: Arc<DesignRecipe>, divisor: u64) -> Result<Arc<Self>> {
        let d = BigUint::from(divisor);
        if divisor == 0 || !(&child.cardinality % &d).is_zero() {
            return Err(Error::Invalid(format!(
                "divisor {divisor} does not divide cardinality {}",
                child.cardinality
            )));
        }
        Ok(Arc::new(Self {
            dim: child.dim,
            cardinality: &child.cardinality / d,
            node: RecipeNode::Shrunk { child, divisor },
        }))
    }

    pub fn node(&self) -> &RecipeNode {
        &self.node
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cardinality(&self) -> &BigUint {
        &self.cardinality
    }

    fn small_cardinality(&self, force: bool) -> Result<u64> {
        let limit = if force { u64::MAX } else { ENUMERATION_LIMIT };
        match self.cardinality.to_u64() {
            Some(c) if c <= limit => Ok(c),
            _ => Err(Error::TooLarge {
                what: "recipe enumeration",
                size: self.cardinality.to_string(),
                limit: limit.to_string(),
            }),
        }
    }

    /// Streams every element, with multiplicity, in lexicographic order of
    /// the recipe tree. Refuses above the enumeration limit unless forced.
    pub fn enumerate(&self, force: bool) -> Result<Box<dyn Iterator<Item = ComplexMatrix> + '_>> {
        self.small_cardinality(force)?;
        Ok(match &self.node {
            RecipeNode::Explicit { set, .. } => Box::new(set.expanded().cloned()),
            RecipeNode::Product(children) => {
                let lists = children
                    .iter()
                    .map(|c| c.materialize(force))
                    .collect::<Result<Vec<_>>>()?;
                Box::new(Odometer::new(lists).map(|picks| {
                    picks
                        .into_iter()
                        .reduce(|acc, u| acc * u)
                        .expect("products have children")
                }))
            }
            RecipeNode::Union(children) => {
                let streams = children.iter().map(|c| c.enumerate(force)).collect::<Result<Vec<_>>>()?;
                Box::new(streams.into_iter().flatten())
            }
            RecipeNode::BlockEmbed { left, right } => {
                let lists = vec![left.materialize(force)?, right.materialize(force)?];
                Box::new(Odometer::new(lists).map(|p| linalg::block_diag(&p[0], &p[1])))
            }
            RecipeNode::LeftTranslate { g, child } => Box::new(child.enumerate(force)?.map(move |u| g * u)),
            RecipeNode::Inverse(child) => Box::new(child.enumerate(force)?.map(|u| u.adjoint())),
            RecipeNode::Shrunk { child, divisor } => {
                let set = shrink_divided(&child.to_multiset(force)?, *divisor)?;
                Box::new(set.into_iter().flat_map(|(u, k)| std::iter::repeat_n(u, k as usize)))
            }
        })
    }

    fn materialize(&self, force: bool) -> Result<Vec<ComplexMatrix>> {
        self.small_cardinality(force)
            .map_err(|_| Error::ChildTooLarge(format!("child of size {}", self.cardinality)))?;
        Ok(self.enumerate(force)?.collect())
    }

    /// The denoted multiset. Explicit and shrunk nodes keep multiplicities;
    /// other nodes list every element once per occurrence.
    pub fn to_multiset(&self, force: bool) -> Result<UnitaryMultiset> {
        match &self.node {
            RecipeNode::Explicit { set, .. } => Ok(set.clone()),
            RecipeNode::Shrunk { child, divisor } => {
                UnitaryMultiset::new(self.dim, shrink_divided(&child.to_multiset(force)?, *divisor)?)
            }
            _ => UnitaryMultiset::from_matrices(self.dim, self.enumerate(force)?.collect()),
        }
    }

    /// One element drawn uniformly (with multiplicity) from the multiset.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> ComplexMatrix {
        match &self.node {
            RecipeNode::Explicit { set, .. } => {
                let mut pick = rng.random_range(0..set.cardinality());
                for (u, k) in set.iter() {
                    if pick < k {
                        return u.clone();
                    }
                    pick -= k;
                }
                unreachable!("pick below cardinality")
            }
            RecipeNode::Product(children) => children
                .iter()
                .map(|c| c.sample_one(rng))
                .reduce(|acc, u| acc * u)
                .expect("products have children"),
            RecipeNode::Union(children) => {
                let total = self.cardinality.to_f64().unwrap_or(f64::MAX);
                let mut pick = rng.random::<f64>() * total;
                for c in children {
                    let w = c.cardinality.to_f64().unwrap_or(f64::MAX);
                    if pick < w {
                        return c.sample_one(rng);
                    }
                    pick -= w;
                }
                children.last().expect("unions have children").sample_one(rng)
            }
            RecipeNode::BlockEmbed { left, right } => {
                let (a, b) = (left.sample_one(rng), right.sample_one(rng));
                linalg::block_diag(&a, &b)
            }
            RecipeNode::LeftTranslate { g, child } => g * child.sample_one(rng),
            RecipeNode::Inverse(child) => child.sample_one(rng).adjoint(),
            // dividing every multiplicity by the same factor keeps the law
            RecipeNode::Shrunk { child, .. } => child.sample_one(rng),
        }
    }

    pub fn sample(&self, count: usize, seed: u64) -> Result<UnitaryMultiset> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        UnitaryMultiset::from_matrices(self.dim, (0..count).map(|_| self.sample_one(&mut rng)).collect())
    }

    /// Largest `k` such that multiplying by `e^{2πi/k}` maps the multiset
    /// onto itself, as far as the structure shows.
    pub fn scalar_symmetry(&self) -> u64 {
        match &self.node {
            RecipeNode::Explicit { set, .. } => explicit_scalar_symmetry(set),
            RecipeNode::Product(children) => children.iter().fold(1, |acc, c| acc.lcm(&c.scalar_symmetry())),
            RecipeNode::Union(children) => children.iter().fold(0, |acc, c| acc.gcd(&c.scalar_symmetry())),
            RecipeNode::BlockEmbed { left, right } => left.scalar_symmetry().gcd(&right.scalar_symmetry()),
            RecipeNode::LeftTranslate { child, .. } | RecipeNode::Inverse(child) | RecipeNode::Shrunk { child, .. } => {
                child.scalar_symmetry()
            }
        }
    }

    /// A number that divides every multiplicity of the expanded multiset.
    /// For a product whose factors are invariant under scalars of orders
    /// `k₁,…,k_p`, the tuples with scalar product 1 act freely on index
    /// tuples without changing the product, which contributes
    /// `∏kᵢ / lcm(kᵢ)`.
    pub fn structural_divisor(&self) -> BigUint {
        match &self.node {
            RecipeNode::Explicit { set, .. } => BigUint::from(set.multiplicity_gcd()),
            RecipeNode::Product(children) => {
                let ks: Vec<u64> = children.iter().map(|c| c.scalar_symmetry()).collect();
                let lcm = ks.iter().fold(1u64, |acc, k| acc.lcm(k));
                let prod = ks.iter().fold(BigUint::one(), |acc, &k| acc * k);
                let inner = children.iter().fold(BigUint::one(), |acc, c| acc * c.structural_divisor());
                prod / lcm * inner
            }
            RecipeNode::Union(children) => children
                .iter()
                .fold(BigUint::zero(), |acc, c| acc.gcd(&c.structural_divisor())),
            RecipeNode::BlockEmbed { left, right } => left.structural_divisor() * right.structural_divisor(),
            RecipeNode::LeftTranslate { child, .. } | RecipeNode::Inverse(child) => child.structural_divisor(),
            RecipeNode::Shrunk { child, divisor } => child.structural_divisor() / BigUint::from(*divisor),
        }
    }

    /// Certificates attached to explicit leaves, in tree order, each once.
    pub fn certificates(&self) -> Vec<ZeroCertificate> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        self.visit(&mut |node| {
            if let RecipeNode::Explicit { certificate: Some(c), .. } = &node.node {
                let ptr = node as *const DesignRecipe;
                if !seen.contains(&ptr) {
                    seen.push(ptr);
                    out.push(c.clone());
                }
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut dyn FnMut(&'a DesignRecipe)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn children(&self) -> Vec<&Arc<DesignRecipe>> {
        match &self.node {
            RecipeNode::Explicit { .. } => Vec::new(),
            RecipeNode::Product(c) | RecipeNode::Union(c) => c.iter().collect(),
            RecipeNode::BlockEmbed { left, right } => vec![left, right],
            RecipeNode::LeftTranslate { child, .. } | RecipeNode::Inverse(child) | RecipeNode::Shrunk { child, .. } => {
                vec![child]
            }
        }
    }

    /// JSON manifest: a node table with shared subtrees stored once.
    pub fn to_manifest(self: &Arc<Self>) -> Value {
        let mut ids: HashMap<*const DesignRecipe, usize> = HashMap::new();
        let mut nodes = Vec::new();
        let root = manifest_node(self, &mut ids, &mut nodes);
        json!({
            "dim": self.dim,
            "cardinality": self.cardinality.to_string(),
            "root": root,
            "nodes": nodes,
        })
    }

    pub fn from_manifest(value: &Value) -> Result<Arc<Self>> {
        let nodes = value["nodes"]
            .as_array()
            .ok_or_else(|| Error::Invalid("manifest without node table".into()))?;
        let mut built: Vec<Arc<DesignRecipe>> = Vec::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if node["id"].as_u64() != Some(i as u64) {
                return Err(Error::Invalid(format!("node {i} out of order")));
            }
            let children: Vec<Arc<DesignRecipe>> = node["children"]
                .as_array()
                .map(|a| a.as_slice())
                .unwrap_or_default()
                .iter()
                .map(|c| {
                    c.as_u64()
                        .and_then(|j| built.get(j as usize).cloned())
                        .ok_or_else(|| Error::Invalid(format!("node {i} has a dangling child")))
                })
                .collect::<Result<_>>()?;
            let params = &node["params"];
            let kind = node["kind"].as_str().unwrap_or_default();
            let one_child = || {
                children
                    .first()
                    .cloned()
                    .ok_or_else(|| Error::Invalid(format!("node {i} ({kind}) needs a child")))
            };
            let recipe = match kind {
                "explicit" => {
                    let dim = params["dim"].as_u64().ok_or_else(|| Error::Invalid("explicit node without dim".into()))?;
                    let elements = params["elements"]
                        .as_array()
                        .ok_or_else(|| Error::Invalid("explicit node without elements".into()))?
                        .iter()
                        .map(|e| Ok((matrix_from_json(&e["matrix"], dim as usize)?, e["mult"].as_u64().unwrap_or(1))))
                        .collect::<Result<Vec<_>>>()?;
                    let certificate = match &params["certificate"] {
                        Value::Null => None,
                        c => Some(serde_json::from_value(c.clone())?),
                    };
                    let label = params["label"].as_str().unwrap_or_default();
                    DesignRecipe::explicit_certified(UnitaryMultiset::new(dim as usize, elements)?, label, certificate)
                }
                "product" => DesignRecipe::product(children)?,
                "union" => DesignRecipe::union(children)?,
                "block" => {
                    if children.len() != 2 {
                        return Err(Error::Invalid(format!("block node {i} needs two children")));
                    }
                    DesignRecipe::block_embed(children[0].clone(), children[1].clone())
                }
                "left-translate" => {
                    let child = one_child()?;
                    DesignRecipe::left_translate(matrix_from_json(&params["g"], child.dim)?, child)?
                }
                "inverse" => DesignRecipe::inverse(one_child()?),
                "shrunk" => {
                    let d = params["divisor"].as_u64().ok_or_else(|| Error::Invalid("shrunk node without divisor".into()))?;
                    DesignRecipe::shrunk(one_child()?, d)?
                }
                other => return Err(Error::Invalid(format!("unknown node kind {other:?}"))),
            };
            built.push(recipe);
        }
        let root = value["root"]
            .as_u64()
            .and_then(|r| built.get(r as usize).cloned())
            .ok_or_else(|| Error::Invalid("manifest root missing".into()))?;
        if let Some(c) = value["cardinality"].as_str() {
            if c != root.cardinality.to_string() {
                return Err(Error::Invalid(format!("manifest cardinality {c} does not match {}", root.cardinality)));
            }
        }
        Ok(root)
    }
}

fn manifest_node(
    recipe: &Arc<DesignRecipe>,
    ids: &mut HashMap<*const DesignRecipe, usize>,
    nodes: &mut Vec<Value>,
) -> usize {
    let ptr = Arc::as_ptr(recipe);
    if let Some(&id) = ids.get(&ptr) {
        return id;
    }
    let children: Vec<usize> = recipe.children().into_iter().map(|c| manifest_node(c, ids, nodes)).collect();
    let (kind, params) = match &recipe.node {
        RecipeNode::Explicit { set, label, certificate } => (
            "explicit",
            json!({
                "dim": set.dim(),
                "label": label,
                "certificate": certificate,
                "elements": set.iter().map(|(u, k)| json!({"matrix": matrix_to_json(u), "mult": k})).collect::<Vec<_>>(),
            }),
        ),
        RecipeNode::Product(_) => ("product", json!({})),
        RecipeNode::Union(_) => ("union", json!({})),
        RecipeNode::BlockEmbed { .. } => ("block", json!({})),
        RecipeNode::LeftTranslate { g, .. } => ("left-translate", json!({"g": matrix_to_json(g)})),
        RecipeNode::Inverse(_) => ("inverse", json!({})),
        RecipeNode::Shrunk { divisor, .. } => ("shrunk", json!({"divisor": divisor})),
    };
    let id = nodes.len();
    nodes.push(json!({
        "id": id,
        "kind": kind,
        "dim": recipe.dim,
        "cardinality": recipe.cardinality.to_string(),
        "params": params,
        "children": children,
    }));
    ids.insert(ptr, id);
    id
}

pub(crate) fn matrix_to_json(u: &ComplexMatrix) -> Value {
    Value::Array(
        (0..u.nrows())
            .map(|i| Value::Array((0..u.ncols()).map(|j| json!([u[(i, j)].re, u[(i, j)].im])).collect()))
            .collect(),
    )
}

pub(crate) fn matrix_from_json(v: &Value, dim: usize) -> Result<ComplexMatrix> {
    let bad = || Error::Invalid("malformed matrix".into());
    let rows = v.as_array().ok_or_else(bad)?;
    if rows.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rows.len() });
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(bad)?;
        if row.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
        }
        for (j, z) in row.iter().enumerate() {
            let re = z[0].as_f64().ok_or_else(bad)?;
            let im = z[1].as_f64().ok_or_else(bad)?;
            out[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(out)
}

/// Merges equal elements and divides multiplicities by `divisor`, which
/// must divide the measured common multiplicity.
fn shrink_divided(set: &UnitaryMultiset, divisor: u64) -> Result<Vec<(ComplexMatrix, u64)>> {
    let merged = shrink_multiplicity(set, MATCH_TOL);
    if !merged.divisor.is_multiple_of(divisor) {
        return Err(Error::Invalid(format!(
            "declared divisor {divisor} does not divide measured divisor {}",
            merged.divisor
        )));
    }
    let scale = merged.divisor / divisor;
    Ok(merged.set.iter().map(|(u, k)| (u.clone(), k * scale)).collect())
}

fn explicit_scalar_symmetry(set: &UnitaryMultiset) -> u64 {
    let mut index = MatrixIndex::new(set.dim(), MATCH_TOL);
    for (u, _) in set.iter() {
        index.insert(u);
    }
    let mult = |u: &ComplexMatrix| index.find(u).map(|i| set.elements()[i].1);
    let max_k = set.distinct().min(120) as u64;
    (1..=max_k)
        .rev()
        .find(|&k| {
            let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / k as f64);
            set.iter().all(|(u, m)| mult(&(u * zeta)) == Some(m))
        })
        .unwrap_or(1)
}

/// Lexicographic walk over index tuples, first list most significant.
struct Odometer {
    lists: Vec<Vec<ComplexMatrix>>,
    idx: Vec<usize>,
    done: bool,
}

impl Odometer {
    fn new(lists: Vec<Vec<ComplexMatrix>>) -> Self {
        let done = lists.iter().any(|l| l.is_empty());
        Self { idx: vec![0; lists.len()], lists, done }
    }
}

impl Iterator for Odometer {
    type Item = Vec<ComplexMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().zip(&self.lists).map(|(&i, l)| l[i].clone()).collect();
        let mut pos = self.lists.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.lists[pos].len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(out)
    }
}
