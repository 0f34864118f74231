//! Stateless encodings that collapse a collection of hypervectors into one.
//!
//! Empty inputs are rejected: the zero vector they would produce has no
//! cosine similarity to anything.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypervector::Hypervector;
use crate::ops::{self, add_assign, mul_permuted_assign};
use crate::scalar::Scalar;

fn first<'a, T>(values: &'a [Hypervector<T>], what: &'static str) -> Result<&'a Hypervector<T>> {
    values.first().ok_or(Error::Empty(what))
}

/// Bundle of all values.
pub fn multiset<T: Scalar>(values: &[Hypervector<T>]) -> Result<Hypervector<T>> {
    let dim = first(values, "multiset values")?.dim();
    ops::bundle_all(values, dim)
}

/// `⊕ K_i ⊗ V_i`.
pub fn hash_table<T: Scalar>(
    keys: &[Hypervector<T>],
    values: &[Hypervector<T>],
) -> Result<Hypervector<T>> {
    if keys.len() != values.len() {
        return Err(Error::invalid(format!(
            "hash table needs as many keys as values ({} vs {})",
            keys.len(),
            values.len()
        )));
    }
    let mut acc = Hypervector::zeros(first(keys, "hash table entries")?.dim());
    for (k, v) in keys.iter().zip(values) {
        add_assign(&mut acc, &ops::bind(k, v)?)?;
    }
    Ok(acc)
}

/// Bundling-based sequence `⊕ Π^{m-i}(V_i)`: the last element is unpermuted.
pub fn sequence<T: Scalar>(values: &[Hypervector<T>]) -> Result<Hypervector<T>> {
    let mut acc = Hypervector::zeros(first(values, "sequence values")?.dim());
    let m = values.len();
    for (i, v) in values.iter().enumerate() {
        add_assign(&mut acc, &ops::permute(v, (m - 1 - i) as i64))?;
    }
    Ok(acc)
}

/// Binding-based sequence `⊗ Π^{m-i}(V_i)`.
pub fn bound_sequence<T: Scalar>(values: &[Hypervector<T>]) -> Result<Hypervector<T>> {
    let dim = first(values, "sequence values")?.dim();
    let m = values.len();
    let mut acc = Hypervector::ones(dim);
    for (i, v) in values.iter().enumerate() {
        acc.check_dim(v)?;
        mul_permuted_assign(acc.as_mut_slice(), v.as_slice(), m - 1 - i);
    }
    Ok(acc)
}

/// Multiset of all `m - n + 1` windows of `n` consecutive tokens, each window
/// encoded as `⊗_{j=0}^{n-1} Π^{n-j-1}(V_{i+j})`.
pub fn ngrams<T: Scalar>(tokens: &[Hypervector<T>], n: usize) -> Result<Hypervector<T>> {
    if n == 0 {
        return Err(Error::invalid("n-gram size must be at least 1"));
    }
    let dim = first(tokens, "n-gram tokens")?.dim();
    if tokens.len() < n {
        return Err(Error::invalid(format!(
            "{} tokens are too few for {n}-grams",
            tokens.len()
        )));
    }
    let mut acc = Hypervector::zeros(dim);
    let mut window = Hypervector::ones(dim);
    for start in 0..=tokens.len() - n {
        window.as_mut_slice().fill(T::one());
        for (j, v) in tokens[start..start + n].iter().enumerate() {
            window.check_dim(v)?;
            mul_permuted_assign(window.as_mut_slice(), v.as_slice(), n - j - 1);
        }
        add_assign(&mut acc, &window)?;
    }
    Ok(acc)
}

/// Edges over vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub edges: Vec<(usize, usize)>,
    pub directed: bool,
}

impl EdgeList {
    pub fn undirected(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self {
            edges: edges.into_iter().collect(),
            directed: false,
        }
    }

    pub fn directed(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self {
            edges: edges.into_iter().collect(),
            directed: true,
        }
    }
}

/// Bound pair for one edge: `V_i ⊗ V_j`, or `V_i ⊗ Π(V_j)` when directed.
pub fn edge<T: Scalar>(
    from: &Hypervector<T>,
    to: &Hypervector<T>,
    directed: bool,
) -> Result<Hypervector<T>> {
    from.check_dim(to)?;
    let mut term = from.clone();
    mul_permuted_assign(term.as_mut_slice(), to.as_slice(), usize::from(directed));
    Ok(term)
}

/// Multiset of edges.
pub fn graph<T: Scalar>(edges: &EdgeList, vertices: &[Hypervector<T>]) -> Result<Hypervector<T>> {
    if edges.edges.is_empty() {
        return Err(Error::Empty("graph edges"));
    }
    let lookup = |i: usize| {
        vertices.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: vertices.len(),
        })
    };
    let mut acc = Hypervector::zeros(lookup(0)?.dim());
    for &(i, j) in &edges.edges {
        add_assign(&mut acc, &edge(lookup(i)?, lookup(j)?, edges.directed)?)?;
    }
    Ok(acc)
}
