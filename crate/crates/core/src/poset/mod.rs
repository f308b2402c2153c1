//! Finite posets with a dense order table.
//!
//! Elements are addressed by index `0..len()`; the index order is the order in
//! which labels were supplied, and every enumeration in this crate walks
//! indices in increasing order so results are reproducible.

pub mod catalog;
mod decomposition;
mod search;

pub use catalog::connected_posets;
pub use decomposition::{lambda_decomposition, LambdaDecomposition, Side};
pub use search::{enumerate_automorphisms, enumerate_involutions, poset_involutions_equivalent};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("relation is not a partial order: {0}")]
    NotAnOrder(String),
    #[error("map is not a bijection on the ground set")]
    NotBijective,
    #[error("map does not preserve the order")]
    NotOrderPreserving,
    #[error("map is not an order-reversing involution")]
    NotAnInvolution,
    #[error("no λ-decomposition satisfies the closure conditions")]
    Decomposition,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of the given cover pairs.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in covers {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| PosetError::UnknownLabel(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| PosetError::UnknownLabel(b.as_ref().to_string()))?;
            leq[ia * n + ib] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Self { labels, leq })
    }

    /// Builds a poset from a full relation table, checking the order axioms.
    pub fn from_relation(labels: Vec<String>, leq: Vec<bool>) -> Result<Self, PosetError> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(PosetError::NotAnOrder("table has the wrong size".into()));
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.clone(), ()).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(PosetError::NotAnOrder(format!("`{}` is not reflexive", labels[i])));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::Cycle(labels[i].clone(), labels[j].clone()));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(PosetError::NotAnOrder(format!(
                            "transitivity fails on `{}` ≤ `{}` ≤ `{}`",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, leq })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `[x, y]`, empty when `x ≰ y`.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        if !self.leq(x, y) {
            return Vec::new();
        }
        (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect()
    }

    /// All pairs `(x, y)` with `x ≤ y`, in lexicographic index order.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Hasse diagram edges `(x, y)` with `x ⋖ y`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn down_degree(&self, x: usize) -> usize {
        (0..self.len()).filter(|&y| self.lt(y, x)).count()
    }

    pub fn up_degree(&self, x: usize) -> usize {
        (0..self.len()).filter(|&y| self.lt(x, y)).count()
    }

    /// Connected components of the comparability graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..n {
                    if comp[y] == usize::MAX && self.comparable(x, y) {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; labels of `other` get `suffix` appended when they clash.
    pub fn disjoint_union(&self, other: &FinitePoset, suffix: &str) -> FinitePoset {
        let n = self.len();
        let m = other.len();
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push_str(suffix);
            }
            labels.push(l);
        }
        let total = n + m;
        let mut leq = vec![false; total * total];
        for x in 0..n {
            for y in 0..n {
                leq[x * total + y] = self.leq(x, y);
            }
        }
        for x in 0..m {
            for y in 0..m {
                leq[(n + x) * total + n + y] = other.leq(x, y);
            }
        }
        FinitePoset { labels, leq }
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.labels[x], self.labels[y]))
            .collect();
        write!(f, "Poset{{{}; {}}}", self.labels.join(","), covers.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    Automorphism,
    Involution,
}

/// A bijection of the ground set, tagged as an order automorphism or an
/// order-reversing involution.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetMap {
    images: Vec<usize>,
    kind: MapKind,
}

impl PosetMap {
    pub fn identity(poset: &FinitePoset) -> Self {
        Self {
            images: (0..poset.len()).collect(),
            kind: MapKind::Automorphism,
        }
    }

    pub fn automorphism(poset: &FinitePoset, images: Vec<usize>) -> Result<Self, PosetError> {
        check_bijection(poset, &images)?;
        let n = poset.len();
        for x in 0..n {
            for y in 0..n {
                if poset.leq(x, y) != poset.leq(images[x], images[y]) {
                    return Err(PosetError::NotOrderPreserving);
                }
            }
        }
        Ok(Self {
            images,
            kind: MapKind::Automorphism,
        })
    }

    pub fn involution(poset: &FinitePoset, images: Vec<usize>) -> Result<Self, PosetError> {
        check_bijection(poset, &images)?;
        let n = poset.len();
        for x in 0..n {
            if images[images[x]] != x {
                return Err(PosetError::NotAnInvolution);
            }
            for y in 0..n {
                if poset.leq(x, y) != poset.leq(images[y], images[x]) {
                    return Err(PosetError::NotAnInvolution);
                }
            }
        }
        Ok(Self {
            images,
            kind: MapKind::Involution,
        })
    }

    /// Parses a label → label map.
    pub fn from_labels<'a, I>(poset: &FinitePoset, pairs: I, kind: MapKind) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut images = vec![usize::MAX; poset.len()];
        for (from, to) in pairs {
            let x = poset
                .index_of(from)
                .ok_or_else(|| PosetError::UnknownLabel(from.to_string()))?;
            let y = poset
                .index_of(to)
                .ok_or_else(|| PosetError::UnknownLabel(to.to_string()))?;
            images[x] = y;
        }
        match kind {
            MapKind::Automorphism => Self::automorphism(poset, images),
            MapKind::Involution => Self::involution(poset, images),
        }
    }

    pub(crate) fn from_parts_unchecked(images: Vec<usize>, kind: MapKind) -> Self {
        Self { images, kind }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self {
            images: inv,
            kind: self.kind,
        }
    }

    /// `self ∘ other` as a raw bijection (kind of `self` retained only when the
    /// composite of two automorphisms is taken).
    pub fn compose(&self, other: &PosetMap) -> Vec<usize> {
        other.images.iter().map(|&y| self.images[y]).collect()
    }

    /// `α ∘ λ ∘ α⁻¹` for an automorphism `self`.
    pub fn conjugate(&self, lambda: &PosetMap) -> PosetMap {
        let inv = self.inverse();
        let images = (0..self.images.len())
            .map(|x| self.images[lambda.images[inv.images[x]]])
            .collect();
        PosetMap {
            images,
            kind: lambda.kind,
        }
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&x| self.images[x] == x).collect()
    }

    pub fn to_labels(&self, poset: &FinitePoset) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(x, &y)| (poset.label(x).to_string(), poset.label(y).to_string()))
            .collect()
    }
}

fn check_bijection(poset: &FinitePoset, images: &[usize]) -> Result<(), PosetError> {
    let n = poset.len();
    if images.len() != n {
        return Err(PosetError::NotBijective);
    }
    let mut hit = vec![false; n];
    for &y in images {
        if y >= n || hit[y] {
            return Err(PosetError::NotBijective);
        }
        hit[y] = true;
    }
    Ok(())
}
