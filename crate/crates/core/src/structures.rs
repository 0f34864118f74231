//! Stateful data structures, each backed by a single accumulated hypervector.
//!
//! Construction never involves cleanup, so building a structure incrementally
//! gives exactly the same accumulator as the matching function in
//! [`crate::encodings`]. Queries that return stored items clean up against an
//! [`ItemMemory`] supplied at construction.
//!
//! Reliable retrieval degrades as the load approaches the order of `√d`
//! items; capacity is not enforced.
//!
//! Structures are single-writer and do no internal locking.

use crate::basis::{ItemMemory, Recall};
use crate::encodings;
use crate::error::{Error, Result};
use crate::hypervector::Hypervector;
use crate::ops::{self, add_assign, sub_assign};
use crate::scalar::Scalar;

/// Key-value store: the accumulator is `⊕ key ⊗ value`.
#[derive(Debug, Clone, PartialEq)]
pub struct HashTable<T> {
    acc: Hypervector<T>,
    len: usize,
}

impl<T: Scalar> HashTable<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            acc: Hypervector::zeros(dim),
            len: 0,
        }
    }

    pub fn add(&mut self, key: &Hypervector<T>, value: &Hypervector<T>) -> Result<()> {
        self.acc.check_dim(key)?;
        add_assign(&mut self.acc, &ops::bind(key, value)?)?;
        self.len += 1;
        Ok(())
    }

    /// Subtracts a previously added pair.
    pub fn remove(&mut self, key: &Hypervector<T>, value: &Hypervector<T>) -> Result<()> {
        if self.len == 0 {
            return Err(Error::Empty("hash table"));
        }
        self.acc.check_dim(key)?;
        sub_assign(&mut self.acc, &ops::bind(key, value)?)?;
        self.len -= 1;
        Ok(())
    }

    /// Noisy value stored under `key`: `acc ⊗ key`. Clean it up against the
    /// value basis to recover the stored item.
    pub fn get(&self, key: &Hypervector<T>) -> Result<Hypervector<T>> {
        if self.len == 0 {
            return Err(Error::Empty("hash table"));
        }
        ops::bind(&self.acc, key)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> &Hypervector<T> {
        &self.acc
    }
}

/// Bag of hypervectors with membership and multiplicity queries.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiset<T> {
    acc: Hypervector<T>,
    len: usize,
}

impl<T: Scalar> Multiset<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            acc: Hypervector::zeros(dim),
            len: 0,
        }
    }

    pub fn add(&mut self, v: &Hypervector<T>) -> Result<()> {
        add_assign(&mut self.acc, v)?;
        self.len += 1;
        Ok(())
    }

    pub fn remove(&mut self, v: &Hypervector<T>) -> Result<()> {
        if self.len == 0 {
            return Err(Error::Empty("multiset"));
        }
        sub_assign(&mut self.acc, v)?;
        self.len -= 1;
        Ok(())
    }

    /// Cosine similarity of `v` with the set; values near 1 indicate
    /// membership.
    pub fn similarity(&self, v: &Hypervector<T>) -> Result<f64> {
        ops::cosine(&self.acc, v)
    }

    /// Estimated number of occurrences of `v`: `dot(acc, v) / ‖v‖²`.
    pub fn multiplicity(&self, v: &Hypervector<T>) -> Result<f64> {
        let n = v.norm_sq();
        if n == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(ops::dot(&self.acc, v)? / n)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> &Hypervector<T> {
        &self.acc
    }
}

/// Bundling-based sequence usable as a stack or a queue.
///
/// Element `i` of `m` (0-based) sits at permutation depth `m - 1 - i`, so the
/// accumulator always equals [`encodings::sequence`] of the logical contents.
/// Pops subtract the cleaned-up element; if cleanup picks the wrong item the
/// accumulator no longer matches the logical contents.
#[derive(Debug, Clone)]
pub struct Sequence<'m, T> {
    acc: Hypervector<T>,
    len: usize,
    memory: &'m ItemMemory<T>,
}

impl<'m, T: Scalar> Sequence<'m, T> {
    pub fn new(dim: usize, memory: &'m ItemMemory<T>) -> Self {
        Self {
            acc: Hypervector::zeros(dim),
            len: 0,
            memory,
        }
    }

    /// Accumulates `values` in order, without cleanup.
    pub fn from_values(values: &[Hypervector<T>], memory: &'m ItemMemory<T>) -> Result<Self> {
        Ok(Self {
            acc: encodings::sequence(values)?,
            len: values.len(),
            memory,
        })
    }

    /// `S ← Π(S) ⊕ V`.
    pub fn push_end(&mut self, v: &Hypervector<T>) -> Result<()> {
        self.acc.check_dim(v)?;
        self.acc = ops::permute(&self.acc, 1);
        add_assign(&mut self.acc, v)?;
        self.len += 1;
        Ok(())
    }

    /// `S ← Π^m(V) ⊕ S`, with `m` the length before the push.
    pub fn push_start(&mut self, v: &Hypervector<T>) -> Result<()> {
        self.acc.check_dim(v)?;
        add_assign(&mut self.acc, &ops::permute(v, self.len as i64))?;
        self.len += 1;
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len,
            })
        }
    }

    /// Element at 0-based `index`: `cleanup(Π^{-(m-1-index)}(S))`.
    pub fn lookup(&self, index: usize) -> Result<Recall<'m, T>> {
        self.check_index(index)?;
        let depth = (self.len - 1 - index) as i64;
        self.memory.cleanup(&ops::permute(&self.acc, -depth))
    }

    /// Removes and returns the last element: `S ← Π^{-1}(S ⊖ lookup(S, m))`.
    pub fn pop_end(&mut self) -> Result<Recall<'m, T>> {
        if self.len == 0 {
            return Err(Error::Empty("sequence"));
        }
        let last = self.lookup(self.len - 1)?;
        sub_assign(&mut self.acc, last.vector)?;
        self.acc = ops::permute(&self.acc, -1);
        self.len -= 1;
        Ok(last)
    }

    /// Removes and returns the first element: `S ← S ⊖ Π^{m-1}(lookup(S, 1))`.
    /// The remaining elements keep their depths, which already match the
    /// shorter sequence.
    pub fn pop_start(&mut self) -> Result<Recall<'m, T>> {
        if self.len == 0 {
            return Err(Error::Empty("sequence"));
        }
        let first = self.lookup(0)?;
        sub_assign(
            &mut self.acc,
            &ops::permute(first.vector, (self.len - 1) as i64),
        )?;
        self.len -= 1;
        Ok(first)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> &Hypervector<T> {
        &self.acc
    }
}

/// Which neighbors a graph query targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Targets of edges leaving the vertex.
    Out,
    /// Sources of edges entering the vertex.
    In,
    /// Either endpoint; only valid for undirected graphs.
    Undirected,
}

/// Graph over labeled vertices: a multiset of edge terms.
#[derive(Debug, Clone)]
pub struct Graph<'m, T> {
    acc: Hypervector<T>,
    directed: bool,
    edges: usize,
    vertices: &'m ItemMemory<T>,
}

impl<'m, T: Scalar> Graph<'m, T> {
    pub fn new(vertices: &'m ItemMemory<T>, directed: bool) -> Result<Self> {
        let dim = vertices.dim().ok_or(Error::Empty("vertex memory"))?;
        Ok(Self {
            acc: Hypervector::zeros(dim),
            directed,
            edges: 0,
            vertices,
        })
    }

    /// Adds `from ⊗ to` (undirected) or `from ⊗ Π(to)` (directed).
    pub fn add_edge(&mut self, from: &str, to: &str) -> Result<()> {
        let term = encodings::edge(
            self.vertices.get(from)?,
            self.vertices.get(to)?,
            self.directed,
        )?;
        add_assign(&mut self.acc, &term)?;
        self.edges += 1;
        Ok(())
    }

    /// Unbound query vector whose nearest vertices are the neighbors.
    ///
    /// Directed graphs store `a ⊗ Π(b)` for an edge `a → b`, so out-neighbors
    /// of `v` are `Π^{-1}(S ⊗ v)` and in-neighbors are `S ⊗ Π(v)`.
    pub fn neighbor_query(&self, vertex: &str, direction: Direction) -> Result<Hypervector<T>> {
        if self.edges == 0 {
            return Err(Error::Empty("graph"));
        }
        let v = self.vertices.get(vertex)?;
        if !self.directed {
            return ops::bind(&self.acc, v);
        }
        match direction {
            Direction::Out => Ok(ops::permute(&ops::bind(&self.acc, v)?, -1)),
            Direction::In => ops::bind(&self.acc, &ops::permute(v, 1)),
            Direction::Undirected => Err(Error::invalid(
                "directed graphs must be queried for in- or out-neighbors",
            )),
        }
    }

    /// Every vertex ranked by similarity to the neighbor query, most similar
    /// first; equal similarities keep insertion order.
    pub fn neighbors(&self, vertex: &str, direction: Direction) -> Result<Vec<(&'m str, f64)>> {
        let query = self.neighbor_query(vertex, direction)?;
        let sims = self.vertices.similarities(&query)?;
        let mut ranked: Vec<(&'m str, f64)> = self
            .vertices
            .labels()
            .iter()
            .map(String::as_str)
            .zip(sims)
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
        Ok(ranked)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn value(&self) -> &Hypervector<T> {
        &self.acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::random_hv;
    use crate::encodings::{graph, EdgeList};
    use crate::ops::{bind, cosine, permute};
    use crate::rng::Seed;

    type Hv = Hypervector<f64>;

    fn memory(count: usize, dim: usize, seed: u64) -> ItemMemory<f64> {
        let b = random_hv(count, dim, &mut Seed(seed).rng()).unwrap();
        ItemMemory::indexed(&b)
    }

    #[test]
    fn hash_table_single_entry_is_exact() {
        let mem = memory(2, 128, 1);
        let (k, v) = (&mem.vectors()[0], &mem.vectors()[1]);
        let mut t = HashTable::new(128);
        assert!(matches!(t.get(k), Err(Error::Empty(_))));
        t.add(k, v).unwrap();
        assert_eq!(&t.get(k).unwrap(), v);
        t.remove(k, v).unwrap();
        assert!(t.value().is_zero());
        assert!(t.add(&Hv::ones(3), v).is_err());
    }

    #[test]
    fn hash_table_add_remove_restores_state() {
        let mem = memory(6, 256, 2);
        let v = mem.vectors();
        let mut t = HashTable::new(256);
        t.add(&v[0], &v[1]).unwrap();
        t.add(&v[2], &v[3]).unwrap();
        let before = t.clone();
        t.add(&v[4], &v[5]).unwrap();
        t.remove(&v[4], &v[5]).unwrap();
        assert_eq!(t, before);
    }

    #[test]
    fn hash_table_wrong_key_is_dissimilar() {
        let mem = memory(7, 10_000, 3);
        let v = mem.vectors();
        let mut t = HashTable::new(10_000);
        for i in 0..3 {
            t.add(&v[i], &v[i + 3]).unwrap();
        }
        let q = t.get(&v[6]).unwrap();
        for stored in &v[3..6] {
            assert!(cosine(&q, stored).unwrap().abs() < 0.1);
        }
    }

    #[test]
    fn multiset_struct_matches_functional_and_counts() {
        let mem = memory(3, 10_000, 4);
        let v = mem.vectors();
        let mut m = Multiset::new(10_000);
        for x in [&v[0], &v[0], &v[1]] {
            m.add(x).unwrap();
        }
        assert_eq!(
            m.value(),
            &encodings::multiset(&[v[0].clone(), v[0].clone(), v[1].clone()]).unwrap()
        );
        assert!((m.multiplicity(&v[0]).unwrap() - 2.0).abs() < 0.1);
        assert!((m.multiplicity(&v[2]).unwrap()).abs() < 0.1);
        assert!(m.similarity(&v[0]).unwrap() > m.similarity(&v[2]).unwrap());
        m.remove(&v[1]).unwrap();
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn sequence_push_agrees_with_encoding() {
        let mem = memory(3, 64, 5);
        let v = mem.vectors();
        let mut s = Sequence::new(64, &mem);
        s.push_end(&v[0]).unwrap();
        assert_eq!(s.value(), &v[0]);
        s.push_end(&v[1]).unwrap();
        assert_eq!(s.value(), &encodings::sequence(&v[..2]).unwrap());

        let mut s = Sequence::new(64, &mem);
        s.push_start(&v[1]).unwrap();
        assert_eq!(s.value(), &v[1]);
        s.push_start(&v[0]).unwrap();
        assert_eq!(s.value(), &encodings::sequence(&v[..2]).unwrap());
    }

    #[test]
    fn interleaved_pushes_match_encoding_exhaustively() {
        // every start/end choice pattern for up to 4 elements
        let mem = memory(4, 97, 6);
        let v = mem.vectors();
        for n in 1..=4usize {
            for pattern in 0..(1u32 << n) {
                let mut s = Sequence::new(97, &mem);
                let mut logical: std::collections::VecDeque<Hv> = Default::default();
                for (i, x) in v[..n].iter().enumerate() {
                    if pattern >> i & 1 == 1 {
                        s.push_start(x).unwrap();
                        logical.push_front(x.clone());
                    } else {
                        s.push_end(x).unwrap();
                        logical.push_back(x.clone());
                    }
                }
                let logical: Vec<Hv> = logical.into_iter().collect();
                assert_eq!(s.value(), &encodings::sequence(&logical).unwrap());
                assert_eq!(s.len(), n);
            }
        }
    }

    #[test]
    fn sequence_lookup_and_pops() {
        let mem = memory(3, 10_000, 7);
        let v = mem.vectors();
        let s = Sequence::from_values(&v[..1], &mem).unwrap();
        assert_eq!(s.lookup(0).unwrap().vector, &v[0]);
        assert!(matches!(s.lookup(1), Err(Error::IndexOutOfRange { .. })));

        let s = Sequence::from_values(v, &mem).unwrap();
        assert_eq!(s.lookup(1).unwrap().index, 1);

        let mut s = Sequence::new(10_000, &mem);
        s.push_end(&v[0]).unwrap();
        assert_eq!(s.pop_end().unwrap().index, 0);
        assert!(s.value().is_zero());
        assert!(matches!(s.pop_end(), Err(Error::Empty(_))));
        assert!(matches!(s.pop_start(), Err(Error::Empty(_))));
        assert_eq!(s.len(), 0);

        s.push_end(&v[0]).unwrap();
        s.push_end(&v[1]).unwrap();
        assert_eq!(s.pop_end().unwrap().index, 1);
        assert_eq!(s.value(), &v[0]);

        let mut s = Sequence::from_values(v, &mem).unwrap();
        assert_eq!(s.pop_start().unwrap().index, 0);
        assert_eq!(s.value(), &encodings::sequence(&v[1..]).unwrap());
        assert_eq!(s.lookup(0).unwrap().index, 1);
    }

    #[test]
    fn queue_discipline_is_fifo() {
        let mem = memory(3, 10_000, 8);
        let mut s = Sequence::new(10_000, &mem);
        for x in mem.vectors() {
            s.push_end(x).unwrap();
        }
        let order: Vec<usize> = (0..3).map(|_| s.pop_start().unwrap().index).collect();
        assert_eq!(order, vec![0, 1, 2]);
        assert!(s.value().is_zero());
    }

    #[test]
    fn graph_struct_matches_encoding() {
        let mem = memory(4, 128, 9);
        let edges = [(0usize, 1usize), (1, 2), (3, 0)];
        for directed in [false, true] {
            let mut g = Graph::new(&mem, directed).unwrap();
            for &(a, b) in &edges {
                g.add_edge(&a.to_string(), &b.to_string()).unwrap();
            }
            let list = EdgeList {
                edges: edges.to_vec(),
                directed,
            };
            assert_eq!(g.value(), &graph(&list, mem.vectors()).unwrap());
        }
        let mut g = Graph::new(&mem, false).unwrap();
        assert!(matches!(g.add_edge("0", "9"), Err(Error::UnknownLabel(_))));
        assert!(matches!(
            g.neighbors("0", Direction::Undirected),
            Err(Error::Empty(_))
        ));
        g.add_edge("1", "0").unwrap();
        assert_eq!(
            g.value(),
            &bind(&mem.vectors()[0], &mem.vectors()[1]).unwrap()
        );
    }

    #[test]
    fn triangle_neighbors_rank_first() {
        let mem = memory(6, 10_000, 10);
        let mut g = Graph::new(&mem, false).unwrap();
        for (a, b) in [("0", "1"), ("1", "2"), ("2", "0")] {
            g.add_edge(a, b).unwrap();
        }
        for (v, others) in [("0", ["1", "2"]), ("1", ["0", "2"]), ("2", ["0", "1"])] {
            let ranked = g.neighbors(v, Direction::Undirected).unwrap();
            let mut top: Vec<&str> = ranked[..2].iter().map(|r| r.0).collect();
            top.sort();
            assert_eq!(top, others);
        }
    }

    #[test]
    fn directed_single_edge_queries() {
        let mem = memory(5, 10_000, 11);
        let mut g = Graph::new(&mem, true).unwrap();
        g.add_edge("1", "2").unwrap();
        assert_eq!(g.neighbors("1", Direction::Out).unwrap()[0].0, "2");
        assert_eq!(g.neighbors("2", Direction::In).unwrap()[0].0, "1");
        assert!(g.neighbors("1", Direction::Undirected).is_err());
        let v = mem.vectors();
        assert_eq!(
            g.neighbor_query("1", Direction::Out).unwrap(),
            permute(&bind(g.value(), &v[1]).unwrap(), -1)
        );
    }
}
