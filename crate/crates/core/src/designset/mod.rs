//! Finite multisets of unitaries, the multiset algebra used by the
//! inductive construction, and lazy recipes for designs too large to list.

mod index;
mod plan;
mod recipe;

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};

pub use index::{phase_canonical, MatrixIndex};
pub use plan::{build_inductive, builtin_plan, required_kappas, resolve_plan, GroupingPlan, PlanGroup, PlanSpec, PlanSpecGroup};
pub use recipe::{DesignRecipe, RecipeNode};

/// Unitarity tolerance applied when a multiset is assembled.
const MEMBER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMultiset {
    dim: usize,
    elements: Vec<(ComplexMatrix, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl UnitaryMultiset {
    pub fn new(dim: usize, elements: Vec<(ComplexMatrix, u64)>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Invalid("a multiset needs at least one element".into()));
        }
        for (u, mult) in &elements {
            if u.nrows() != dim || u.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: u.nrows() });
            }
            if *mult == 0 {
                return Err(Error::Invalid("multiplicities must be positive".into()));
            }
            linalg::check_unitary(u, MEMBER_TOL)?;
        }
        Ok(Self { dim, elements })
    }

    pub fn from_matrices(dim: usize, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(dim, matrices.into_iter().map(|u| (u, 1)).collect())
    }

    pub fn singleton(u: ComplexMatrix) -> Result<Self> {
        let dim = u.nrows();
        Self::new(dim, vec![(u, 1)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `|X|`, counted with multiplicity.
    pub fn cardinality(&self) -> u64 {
        self.elements.iter().map(|(_, k)| k).sum()
    }

    /// Number of stored (matrix, multiplicity) entries.
    pub fn distinct(&self) -> usize {
        self.elements.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComplexMatrix, u64)> {
        self.elements.iter().map(|(u, k)| (u, *k))
    }

    pub fn elements(&self) -> &[(ComplexMatrix, u64)] {
        &self.elements
    }

    /// Each matrix repeated by its multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.elements
            .iter()
            .flat_map(|(u, k)| std::iter::repeat_n(u, *k as usize))
    }

    pub fn multiplicity_gcd(&self) -> u64 {
        self.elements.iter().fold(0, |g, (_, k)| g.gcd(k))
    }

    /// Checks closure under products and adjoints, matching at `tol`.
    pub fn check_group(&self, tol: f64) -> Result<()> {
        let mut index = MatrixIndex::new(self.dim, tol);
        for (u, _) in &self.elements {
            index.insert(u);
        }
        for (i, (u, _)) in self.elements.iter().enumerate() {
            if index.find(&u.adjoint()).is_none() {
                return Err(Error::NotAGroup(format!("inverse of element {i} missing")));
            }
            for (j, (v, _)) in self.elements.iter().enumerate() {
                if index.find(&(u * v)).is_none() {
                    return Err(Error::NotAGroup(format!("product of elements {i} and {j} missing")));
                }
            }
        }
        Ok(())
    }
}

pub fn mset_product(x: &UnitaryMultiset, y: &UnitaryMultiset) -> Result<UnitaryMultiset> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch { expected: x.dim, found: y.dim });
    }
    let mut out = Vec::with_capacity(x.distinct() * y.distinct());
    for (a, ka) in x.iter() {
        for (b, kb) in y.iter() {
            out.push((a * b, ka * kb));
        }
    }
    UnitaryMultiset::new(x.dim, out)
}

pub fn mset_union(x: &UnitaryMultiset, y: &UnitaryMultiset) -> Result<UnitaryMultiset> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch { expected: x.dim, found: y.dim });
    }
    let mut out = x.elements.clone();
    out.extend(y.elements.iter().cloned());
    UnitaryMultiset::new(x.dim, out)
}

pub fn mset_translate(g: &ComplexMatrix, x: &UnitaryMultiset, side: Side) -> Result<UnitaryMultiset> {
    if g.nrows() != x.dim {
        return Err(Error::DimensionMismatch { expected: x.dim, found: g.nrows() });
    }
    let out = x
        .iter()
        .map(|(u, k)| match side {
            Side::Left => (g * u, k),
            Side::Right => (u * g, k),
        })
        .collect();
    UnitaryMultiset::new(x.dim, out)
}

pub fn mset_inverse(x: &UnitaryMultiset) -> UnitaryMultiset {
    UnitaryMultiset {
        dim: x.dim,
        elements: x.iter().map(|(u, k)| (u.adjoint(), k)).collect(),
    }
}

/// `{diag(x, y)}` on `U(m + m')`.
pub fn mset_block(x: &UnitaryMultiset, y: &UnitaryMultiset) -> UnitaryMultiset {
    let mut out = Vec::with_capacity(x.distinct() * y.distinct());
    for (a, ka) in x.iter() {
        for (b, kb) in y.iter() {
            out.push((linalg::block_diag(a, b), ka * kb));
        }
    }
    UnitaryMultiset {
        dim: x.dim + y.dim,
        elements: out,
    }
}

/// The `t+1` roots of unity on `U(1)`.
pub fn roots_of_unity_design(t: u32) -> UnitaryMultiset {
    let k = t as usize + 1;
    let elements = (0..k)
        .map(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
            (ComplexMatrix::from_element(1, 1, z), 1)
        })
        .collect();
    UnitaryMultiset { dim: 1, elements }
}

/// Quaternion `a + bi + cj + dk` as an `SU(2)` matrix.
fn quaternion(a: f64, b: f64, c: f64, d: f64) -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(a, b), Complex64::new(c, d), Complex64::new(-c, d), Complex64::new(a, -b)],
    )
}

/// Generators `i` and `(φ + φ⁻¹i + j)/2` of the binary icosahedral group,
/// the image of `SL(2,5)` in `SU(2)`.
pub fn binary_icosahedral_generators() -> Vec<ComplexMatrix> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    vec![quaternion(0.0, 1.0, 0.0, 0.0), quaternion(phi / 2.0, 0.5 / phi, 0.5, 0.0)]
}

/// Breadth-first closure of the generators under multiplication.
pub fn group_closure(generators: &[ComplexMatrix], tol: f64, max_size: usize) -> Result<UnitaryMultiset> {
    let Some(first) = generators.first() else {
        return Err(Error::Invalid("no generators".into()));
    };
    let dim = first.nrows();
    for g in generators {
        if g.nrows() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: g.nrows() });
        }
        linalg::check_unitary(g, MEMBER_TOL)?;
    }
    let mut index = MatrixIndex::new(dim, tol);
    let mut found = vec![linalg::identity(dim)];
    index.insert(&found[0]);
    let mut frontier = 0;
    while frontier < found.len() {
        let current = found[frontier].clone();
        frontier += 1;
        for g in generators {
            let next = &current * g;
            if index.find(&next).is_none() {
                if found.len() == max_size {
                    return Err(Error::Overflow { limit: max_size });
                }
                index.insert(&next);
                found.push(next);
            }
        }
    }
    UnitaryMultiset::from_matrices(dim, found)
}

/// Result of merging equal elements and dividing out the common
/// multiplicity.
#[derive(Debug, Clone)]
pub struct Shrunk {
    pub set: UnitaryMultiset,
    pub divisor: u64,
}

/// Merges elements equal to `tol` in max-norm, then divides every
/// multiplicity by their gcd `D`.
pub fn shrink_multiplicity(x: &UnitaryMultiset, tol: f64) -> Shrunk {
    let mut index = MatrixIndex::new(x.dim, tol);
    let mut merged: Vec<(ComplexMatrix, u64)> = Vec::new();
    for (u, k) in x.iter() {
        match index.find(u) {
            Some(i) => merged[i].1 += k,
            None => {
                index.insert(u);
                merged.push((u.clone(), k));
            }
        }
    }
    let divisor = merged.iter().fold(0u64, |g, (_, k)| g.gcd(k));
    for (_, k) in merged.iter_mut() {
        *k /= divisor;
    }
    Shrunk {
        set: UnitaryMultiset { dim: x.dim, elements: merged },
        divisor,
    }
}

/// Phase-class reduction. The output is a (non-strong) `t`-design whenever
/// the input is one.
#[derive(Debug, Clone)]
pub struct PhaseShrunk {
    pub set: UnitaryMultiset,
    /// Number of phase classes.
    pub classes: usize,
    /// Common divisor of the class sizes.
    pub divisor: u64,
    pub t: u32,
    /// Always false: only the balanced `(t,t)` moments survive.
    pub strong: bool,
}

/// Groups elements that agree up to a global phase and keeps one
/// representative per class with multiplicity `|class| / k`, where `k` is
/// the gcd of the class sizes.
pub fn shrink_phase(x: &UnitaryMultiset, t: u32, tol: f64) -> PhaseShrunk {
    let mut index = MatrixIndex::new(x.dim, tol);
    let mut reps: Vec<(ComplexMatrix, u64)> = Vec::new();
    for (u, k) in x.iter() {
        let canon = phase_canonical(u);
        match index.find(&canon) {
            Some(i) => reps[i].1 += k,
            None => {
                index.insert(&canon);
                reps.push((u.clone(), k));
            }
        }
    }
    let divisor = reps.iter().fold(0u64, |g, (_, k)| g.gcd(k));
    for (_, k) in reps.iter_mut() {
        *k /= divisor;
    }
    PhaseShrunk {
        classes: reps.len(),
        set: UnitaryMultiset { dim: x.dim, elements: reps },
        divisor,
        t,
        strong: false,
    }
}

/// Counts how often each element occurs, matching at `tol`.
pub fn multiplicity_histogram(x: &UnitaryMultiset, tol: f64) -> HashMap<u64, usize> {
    let merged = shrink_multiplicity(x, tol);
    let mut hist = HashMap::new();
    for (_, k) in merged.set.iter() {
        *hist.entry(k * merged.divisor).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::haar_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_set(n: usize, k: usize, seed: u64) -> UnitaryMultiset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        UnitaryMultiset::from_matrices(n, (0..k).map(|_| haar_unitary(n, &mut rng)).collect()).unwrap()
    }

    #[test]
    fn cardinalities_multiply_and_add() {
        let (x, y) = (random_set(2, 3, 1), random_set(2, 4, 2));
        assert_eq!(mset_product(&x, &y).unwrap().cardinality(), 12);
        assert_eq!(mset_union(&x, &y).unwrap().cardinality(), 7);
        let x1 = roots_of_unity_design(4);
        let block = mset_block(&x1, &x1);
        assert_eq!(block.cardinality(), 25);
        assert_eq!(block.dim(), 2);
        assert!(block.iter().all(|(u, _)| u[(0, 1)].norm() == 0.0 && u[(1, 0)].norm() == 0.0));
    }

    #[test]
    fn inverse_is_involution() {
        let x = random_set(3, 5, 3);
        assert_eq!(mset_inverse(&mset_inverse(&x)), x);
        assert!(mset_product(&x, &random_set(2, 1, 4)).is_err());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(roots_of_unity_design(4).cardinality(), 5);
        assert_eq!(roots_of_unity_design(0).elements()[0].0[(0, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn closures() {
        let c4 = group_closure(
            &[ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
            ]))],
            1e-10,
            100,
        )
        .unwrap();
        assert_eq!(c4.cardinality(), 4);
        let g = group_closure(&binary_icosahedral_generators(), 1e-10, 1000).unwrap();
        assert_eq!(g.cardinality(), 120);
        g.check_group(1e-9).unwrap();
        assert!(matches!(
            group_closure(&binary_icosahedral_generators(), 1e-10, 50),
            Err(Error::Overflow { limit: 50 })
        ));
        assert!(matches!(random_set(2, 3, 9).check_group(1e-9), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn multiplicity_shrink() {
        let x = random_set(2, 6, 5);
        let same = shrink_multiplicity(&x, 1e-10);
        assert_eq!((same.set.cardinality(), same.divisor), (6, 1));
        let doubled = mset_union(&x, &x).unwrap();
        let halved = shrink_multiplicity(&doubled, 1e-10);
        assert_eq!((halved.set.cardinality(), halved.divisor), (6, 2));
    }

    #[test]
    fn phase_shrink() {
        let u = haar_unitary(2, &mut ChaCha8Rng::seed_from_u64(8));
        let phases: Vec<ComplexMatrix> = [1.0, 0.0, -1.0, 0.0]
            .iter()
            .zip([0.0, 1.0, 0.0, -1.0])
            .map(|(&re, im)| &u * Complex64::new(re, im))
            .collect();
        let x = UnitaryMultiset::from_matrices(2, phases).unwrap();
        let y = shrink_phase(&x, 4, 1e-10);
        assert_eq!((y.set.cardinality(), y.divisor, y.strong), (1, 4, false));
        assert!(linalg::max_abs_diff(&y.set.elements()[0].0, &u) < 1e-15);
        let free = random_set(2, 5, 6);
        assert_eq!(shrink_phase(&free, 4, 1e-10).set.cardinality(), 5);
    }
}
