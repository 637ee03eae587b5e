//! Indices of irreducible representations of U(n).
//!
//! A [`DominantWeight`] labels an irrep of U(n); a [`Partition`] labels a
//! zonal polynomial in `m` variables (the positive half of a spherical
//! weight).

use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer partition, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from non-increasing parts; zeros at the end are
    /// dropped. Returns `None` if the parts increase somewhere.
    pub fn new(parts: impl Into<Vec<u32>>) -> Option<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `m`.
    pub fn padded(&self, m: usize) -> Vec<u32> {
        (0..m).map(|i| self.part(i)).collect()
    }

    /// Componentwise containment `self ≤ other`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().enumerate().all(|(i, &p)| p <= other.part(i))
    }

    /// `self + e_i` if it is still a partition with at most `m` parts.
    pub fn add_box(&self, i: usize, m: usize) -> Option<Partition> {
        if i >= m {
            return None;
        }
        let mut parts = self.padded(m);
        parts[i] += 1;
        if i > 0 && parts[i] > parts[i - 1] {
            return None;
        }
        Partition::new(parts)
    }

    /// Number of standard Young tableaux of this shape (hook-length formula).
    pub fn standard_tableaux(&self) -> u128 {
        let n = self.weight() as u128;
        let mut num: u128 = (1..=n).product();
        let conj = self.conjugate();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.part(j) as usize - i - 1;
                num /= (arm + leg + 1) as u128;
            }
        }
        num
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts: Vec<u32> = (0..cols)
            .map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v.clone()).ok_or_else(|| format!("parts must be non-increasing: {v:?}"))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Highest weight of an irrep of U(n): `n` non-increasing integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct DominantWeight(Vec<i32>);

impl DominantWeight {
    pub fn new(entries: impl Into<Vec<i32>>) -> Option<Self> {
        let entries = entries.into();
        if entries.is_empty() || entries.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Self(entries))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn lambda_plus(&self) -> u32 {
        self.0.iter().filter(|&&x| x > 0).map(|&x| x as u32).sum()
    }

    pub fn lambda_minus(&self) -> u32 {
        self.0.iter().filter(|&&x| x < 0).map(|&x| (-x) as u32).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Assembles `(α, 0, …, 0, -β reversed)` from the positive part α and
    /// the negative part β.
    pub fn from_parts(n: usize, positive: &Partition, negative: &Partition) -> Option<Self> {
        if positive.len() + negative.len() > n {
            return None;
        }
        let mut e = vec![0i32; n];
        for (i, &p) in positive.parts().iter().enumerate() {
            e[i] = p as i32;
        }
        for (i, &q) in negative.parts().iter().enumerate() {
            e[n - 1 - i] = -(q as i32);
        }
        Some(Self(e))
    }
}

impl TryFrom<Vec<i32>> for DominantWeight {
    type Error = String;
    fn try_from(v: Vec<i32>) -> Result<Self, Self::Error> {
        DominantWeight::new(v.clone()).ok_or_else(|| format!("weight must be non-empty and non-increasing: {v:?}"))
    }
}

impl From<DominantWeight> for Vec<i32> {
    fn from(w: DominantWeight) -> Self {
        w.0
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `k` with at most `max_parts` parts, in decreasing
/// lexicographic order.
pub fn partitions(k: u32, max_parts: usize) -> Vec<Partition> {
    fn rec(rest: u32, max_part: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            prefix.push(p);
            rec(rest - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Non-empty partitions of weight at most `t` with at most `m` parts: the
/// positive halves of the nontrivial spherical weights in `∎ₙ^{t,t}`.
pub fn spherical_kappas(m: usize, t: u32) -> Vec<Partition> {
    (1..=t).flat_map(|k| partitions(k, m)).collect()
}

/// All dominant weights of U(n) with `λ⁺ ≤ s` and `λ⁻ ≤ t`, zero included,
/// sorted.
pub fn enumerate_box(n: usize, s: u32, t: u32) -> Vec<DominantWeight> {
    let mut out = Vec::new();
    for a in 0..=s {
        for alpha in partitions(a, n) {
            for b in 0..=t {
                for beta in partitions(b, n - alpha.len()) {
                    if let Some(w) = DominantWeight::from_parts(n, &alpha, &beta) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The diagonal subset `λ⁺ = λ⁻ ≤ t`.
pub fn enumerate_diag(n: usize, t: u32) -> Vec<DominantWeight> {
    enumerate_box(n, t, t)
        .into_iter()
        .filter(|w| w.lambda_plus() == w.lambda_minus())
        .collect()
}

/// Outcome of [`spherical_split`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SphericalSplit {
    pub spherical: Vec<(DominantWeight, Partition)>,
    pub nonspherical: Vec<DominantWeight>,
}

/// The partition κ with `λ = (κ₁,…,κ_m, 0,…,0, -κ_m,…,-κ₁)`, if any.
pub fn spherical_kappa(w: &DominantWeight, m: usize) -> Option<Partition> {
    let e = w.entries();
    let n = e.len();
    if 2 * m > n {
        return None;
    }
    for i in 0..m {
        if e[i] < 0 || e[n - 1 - i] != -e[i] {
            return None;
        }
    }
    if e[m..n - m].iter().any(|&x| x != 0) {
        return None;
    }
    Partition::new(e[..m].iter().map(|&x| x as u32).collect::<Vec<_>>())
}

/// Splits weights into U(m)×U(n-m)-spherical ones (with their κ) and the
/// rest.
pub fn spherical_split(n: usize, m: usize, weights: &[DominantWeight]) -> SphericalSplit {
    assert!(m >= 1 && 2 * m <= n, "need 1 <= m <= n/2");
    let mut split = SphericalSplit::default();
    for w in weights {
        match spherical_kappa(w, m) {
            Some(k) => split.spherical.push((w.clone(), k)),
            None => split.nonspherical.push(w.clone()),
        }
    }
    split
}

/// `Σ f_λ²` over partitions λ ⊢ t with at most `d` rows: the Haar value
/// of `∫ |tr U|^{2t} dU` on U(d), and the dimension of the commutant of
/// `U^{⊗t}`.
pub fn haar_moment_constant(d: usize, t: u32) -> u128 {
    partitions(t, d)
        .iter()
        .map(|p| {
            let f = p.standard_tableaux();
            f * f
        })
        .sum()
}

/// Number of semistandard tableaux of shape σ with entries in `1..=m`, i.e.
/// `s_σ(1,…,1)`, by the hook-content formula.
pub fn ssyt_count(sigma: &Partition, m: usize) -> u128 {
    if sigma.len() > m {
        return 0;
    }
    let conj = sigma.conjugate();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (i, &row) in sigma.parts().iter().enumerate() {
        for j in 0..row as usize {
            num *= (m + j - i) as u128;
            let hook = (row as usize - j - 1) + (conj.part(j) as usize - i - 1) + 1;
            den *= hook as u128;
        }
    }
    num / den
}
