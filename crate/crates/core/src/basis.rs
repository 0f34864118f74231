//! Basis-hypervector generators, scalar embeddings, random projection and the
//! associative item memory used for cleanup.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypervector::Hypervector;
use crate::ops;
use crate::rng::HdRng;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Random,
    Level,
    Circular,
}

impl BasisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::Random => "random",
            BasisKind::Level => "level",
            BasisKind::Circular => "circular",
        }
    }
}

impl std::str::FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(BasisKind::Random),
            "level" => Ok(BasisKind::Level),
            "circular" => Ok(BasisKind::Circular),
            other => Err(Error::invalid(format!("unknown basis kind `{other}`"))),
        }
    }
}

/// An ordered set of bipolar basis-hypervectors of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet<T> {
    kind: BasisKind,
    vectors: Vec<Hypervector<T>>,
}

impl<T: Scalar> BasisSet<T> {
    pub fn generate(kind: BasisKind, count: usize, dim: usize, rng: &mut HdRng) -> Result<Self> {
        match kind {
            BasisKind::Random => random_hv(count, dim, rng),
            BasisKind::Level => level_hv(count, dim, rng),
            BasisKind::Circular => circular_hv(count, dim, rng),
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn vectors(&self) -> &[Hypervector<T>] {
        &self.vectors
    }

    pub fn get(&self, index: usize) -> Result<&Hypervector<T>> {
        self.vectors.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.vectors.len(),
        })
    }

    /// `m × m` matrix of pairwise cosine similarities.
    pub fn similarity_matrix(&self) -> Vec<Vec<f64>> {
        self.vectors
            .iter()
            .map(|a| {
                ops::cosine_batch(a, &self.vectors)
                    .expect("basis vectors are bipolar and share a dimension")
            })
            .collect()
    }
}

impl<T> std::ops::Index<usize> for BasisSet<T> {
    type Output = Hypervector<T>;

    fn index(&self, index: usize) -> &Hypervector<T> {
        &self.vectors[index]
    }
}

fn check_shape(count: usize, dim: usize, min_count: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if count < min_count {
        return Err(Error::invalid(format!(
            "basis size must be at least {min_count}, got {count}"
        )));
    }
    Ok(())
}

/// `m` independent uniformly random bipolar hypervectors.
pub fn random_hv<T: Scalar>(count: usize, dim: usize, rng: &mut HdRng) -> Result<BasisSet<T>> {
    check_shape(count, dim, 1)?;
    Ok(BasisSet {
        kind: BasisKind::Random,
        vectors: (0..count).map(|_| Hypervector::random(dim, rng)).collect(),
    })
}

/// Splits `len` items into `parts` contiguous ranges whose sizes differ by at
/// most one; the earliest ranges take the remainder.
fn chunk_bounds(len: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let base = len / parts;
    let extra = len % parts;
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let size = base + usize::from(i < extra);
            let r = start..start + size;
            start += size;
            r
        })
        .collect()
}

fn shuffled_indices(dim: usize, rng: &mut HdRng) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(rng);
    idx
}

/// Level-hypervectors interpolating between two random endpoints.
///
/// `L_1` and `L_m` are drawn uniformly. A random permutation of the
/// coordinates is split into `m - 1` chunks; `L_{i+1}` is `L_i` with chunk `i`
/// overwritten by the values of `L_m`. The expected similarity is
/// `1 - |i - j| / (m - 1)` and the last level equals `L_m` exactly.
pub fn level_hv<T: Scalar>(count: usize, dim: usize, rng: &mut HdRng) -> Result<BasisSet<T>> {
    check_shape(count, dim, 2)?;
    let first = Hypervector::<T>::random(dim, rng);
    let last = Hypervector::<T>::random(dim, rng);
    let order = shuffled_indices(dim, rng);

    let mut vectors = Vec::with_capacity(count);
    let mut current = first;
    for chunk in chunk_bounds(dim, count - 1) {
        vectors.push(current.clone());
        for &k in &order[chunk] {
            current.as_mut_slice()[k] = last.as_slice()[k];
        }
    }
    debug_assert_eq!(current, last);
    vectors.push(current);
    Ok(BasisSet {
        kind: BasisKind::Level,
        vectors,
    })
}

/// Generates the `m + 1` states of the circular walk; the last state equals
/// the first.
fn circular_states<T: Scalar>(count: usize, dim: usize, rng: &mut HdRng) -> Vec<Hypervector<T>> {
    let start = Hypervector::<T>::random(dim, rng);
    let order = shuffled_indices(dim, rng);
    let half = count / 2;
    let chunks = chunk_bounds(dim / 2, half);

    // forward flips chunks 0..half, then backward re-flips them in the same
    // order
    let mut states = Vec::with_capacity(count + 1);
    let mut current = start;
    states.push(current.clone());
    for chunk in chunks.iter().chain(chunks.iter()) {
        for &k in &order[chunk.clone()] {
            let x = &mut current.as_mut_slice()[k];
            *x = -*x;
        }
        states.push(current.clone());
    }
    states
}

/// Circular-hypervectors placed on a ring of `m` positions.
///
/// Half of the coordinates, chosen at random, are split into `m / 2` chunks.
/// The forward transitions flip the chunks one by one, reaching the antipode
/// after `m / 2` steps; the backward transitions flip them back in the same
/// order. Expected similarity is `1 - 2 * circdist(i, j) / m`. `m` must be
/// even.
pub fn circular_hv<T: Scalar>(count: usize, dim: usize, rng: &mut HdRng) -> Result<BasisSet<T>> {
    check_shape(count, dim, 2)?;
    if !count.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "circular basis size must be even, got {count}: the forward and \
             backward halves of the ring need the same number of steps"
        )));
    }
    let mut vectors = circular_states(count, dim, rng);
    vectors.truncate(count);
    Ok(BasisSet {
        kind: BasisKind::Circular,
        vectors,
    })
}

/// Minimal cyclic distance between positions `i` and `j` on a ring of `m`.
pub fn circular_distance(i: usize, j: usize, m: usize) -> usize {
    let d = i.abs_diff(j) % m;
    d.min(m - d)
}

/// Maps `x` in `[low, high]` to a level index in `0..m`; values outside the
/// interval clamp to the nearest end.
pub fn value_to_index(x: f64, low: f64, high: f64, count: usize) -> usize {
    debug_assert!(low < high && count >= 1);
    let t = ((x - low) / (high - low) * count as f64).floor();
    if t.is_nan() || t < 0.0 {
        0
    } else {
        (t as usize).min(count - 1)
    }
}

/// Level basis over a real interval.
#[derive(Debug, Clone)]
pub struct LevelEmbedding<T> {
    basis: BasisSet<T>,
    low: f64,
    high: f64,
}

impl<T: Scalar> LevelEmbedding<T> {
    pub fn new(count: usize, dim: usize, low: f64, high: f64, rng: &mut HdRng) -> Result<Self> {
        if low.is_nan() || high.is_nan() || low >= high {
            return Err(Error::invalid(format!(
                "level embedding needs low < high, got [{low}, {high}]"
            )));
        }
        Ok(Self {
            basis: level_hv(count, dim, rng)?,
            low,
            high,
        })
    }

    pub fn index(&self, x: f64) -> usize {
        value_to_index(x, self.low, self.high, self.basis.len())
    }

    pub fn embed(&self, x: f64) -> &Hypervector<T> {
        &self.basis[self.index(x)]
    }

    pub fn basis(&self) -> &BasisSet<T> {
        &self.basis
    }
}

/// Circular basis over angles with the given period (e.g. `2π`).
#[derive(Debug, Clone)]
pub struct CircularEmbedding<T> {
    basis: BasisSet<T>,
    period: f64,
}

impl<T: Scalar> CircularEmbedding<T> {
    pub fn new(count: usize, dim: usize, period: f64, rng: &mut HdRng) -> Result<Self> {
        if period.is_nan() || period <= 0.0 {
            return Err(Error::invalid("circular period must be positive"));
        }
        Ok(Self {
            basis: circular_hv(count, dim, rng)?,
            period,
        })
    }

    pub fn index(&self, angle: f64) -> usize {
        let m = self.basis.len();
        let t = (angle.rem_euclid(self.period) / self.period * m as f64).floor();
        if t.is_nan() {
            0
        } else {
            (t as usize) % m
        }
    }

    pub fn embed(&self, angle: f64) -> &Hypervector<T> {
        &self.basis[self.index(angle)]
    }

    pub fn basis(&self) -> &BasisSet<T> {
        &self.basis
    }
}

/// Random projection of real vectors followed by sign quantization.
///
/// The `d × m` matrix has rows drawn uniformly from the unit sphere in `R^m`
/// (isotropic Gaussian, then normalized).
#[derive(Debug, Clone)]
pub struct ProjectionEncoder<T> {
    rows: usize,
    cols: usize,
    matrix: Vec<T>,
}

impl<T: Scalar> ProjectionEncoder<T> {
    pub fn new(dim: usize, input_len: usize, rng: &mut HdRng) -> Result<Self> {
        if dim == 0 || input_len == 0 {
            return Err(Error::invalid(
                "projection needs nonzero dimension and input length",
            ));
        }
        let mut matrix = Vec::with_capacity(dim * input_len);
        let mut row = vec![0.0f64; input_len];
        for _ in 0..dim {
            let norm = loop {
                for x in row.iter_mut() {
                    *x = StandardNormal.sample(rng);
                }
                let n = row.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n > 0.0 {
                    break n;
                }
            };
            matrix.extend(row.iter().map(|x| T::from_f64_lossy(x / norm)));
        }
        Ok(Self {
            rows: dim,
            cols: input_len,
            matrix,
        })
    }

    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn input_len(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.matrix[i * self.cols..(i + 1) * self.cols]
    }

    /// `sign(Φ x)`, with zero projections mapped to `+1`.
    pub fn project(&self, x: &[T]) -> Result<Hypervector<T>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        if x.iter().all(|v| v.is_zero()) {
            return Err(Error::ZeroNorm);
        }
        let projected = (0..self.rows)
            .map(|i| T::from_f64_lossy(ops::dot_slices(self.row(i), x)))
            .collect();
        Ok(ops::quantize(&Hypervector::from_vec(projected)))
    }
}

/// Result of an associative lookup.
#[derive(Debug, Clone, Copy)]
pub struct Recall<'a, T> {
    pub index: usize,
    pub label: &'a str,
    pub vector: &'a Hypervector<T>,
    pub similarity: f64,
}

/// Labeled hypervectors with exhaustive nearest-neighbor lookup by cosine.
#[derive(Debug, Clone, Default)]
pub struct ItemMemory<T> {
    labels: Vec<String>,
    vectors: Vec<Hypervector<T>>,
    norms_sq: Vec<f64>,
    by_label: HashMap<String, usize>,
}

impl<T: Scalar> ItemMemory<T> {
    pub fn new() -> Self {
        Self {
            labels: Vec::new(),
            vectors: Vec::new(),
            norms_sq: Vec::new(),
            by_label: HashMap::new(),
        }
    }

    /// Memory over a basis set, labeling entries with `labels` in order.
    pub fn from_basis<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        basis: &BasisSet<T>,
    ) -> Result<Self> {
        let mut mem = Self::new();
        let mut labels = labels.into_iter();
        for v in basis.vectors() {
            let label = labels
                .next()
                .ok_or_else(|| Error::invalid("fewer labels than basis vectors"))?;
            mem.insert(label, v.clone())?;
        }
        if labels.next().is_some() {
            return Err(Error::invalid("more labels than basis vectors"));
        }
        Ok(mem)
    }

    /// Memory over a basis set, labeled by index (`"0"`, `"1"`, ...).
    pub fn indexed(basis: &BasisSet<T>) -> Self {
        Self::from_basis((0..basis.len()).map(|i| i.to_string()), basis)
            .expect("index labels are unique and match the basis size")
    }

    pub fn insert(&mut self, label: impl Into<String>, vector: Hypervector<T>) -> Result<usize> {
        let label = label.into();
        if let Some(first) = self.vectors.first() {
            first.check_dim(&vector)?;
        }
        if self.by_label.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        let index = self.vectors.len();
        self.by_label.insert(label.clone(), index);
        self.labels.push(label);
        self.norms_sq.push(vector.norm_sq());
        self.vectors.push(vector);
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.vectors.first().map(Hypervector::dim)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vectors(&self) -> &[Hypervector<T>] {
        &self.vectors
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn get(&self, label: &str) -> Result<&Hypervector<T>> {
        self.index_of(label)
            .map(|i| &self.vectors[i])
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    /// Cosine similarity of `query` to every entry, in insertion order.
    /// Zero-norm entries score 0.
    pub fn similarities(&self, query: &Hypervector<T>) -> Result<Vec<f64>> {
        let qn = query.norm_sq();
        if qn == 0.0 {
            return Err(Error::ZeroNorm);
        }
        self.vectors
            .iter()
            .zip(&self.norms_sq)
            .map(|(v, &n)| {
                query.check_dim(v)?;
                Ok(if n == 0.0 {
                    0.0
                } else {
                    ops::cosine_from_parts(ops::dot_slices(query.as_slice(), v.as_slice()), qn, n)
                })
            })
            .collect()
    }

    /// The entry most similar to `noisy`; ties go to the earliest entry.
    pub fn cleanup(&self, noisy: &Hypervector<T>) -> Result<Recall<'_, T>> {
        if self.is_empty() {
            return Err(Error::Empty("item memory"));
        }
        let sims = self.similarities(noisy)?;
        let (index, similarity) = argmax(&sims);
        Ok(Recall {
            index,
            label: &self.labels[index],
            vector: &self.vectors[index],
            similarity,
        })
    }
}

/// Index and value of the maximum; the lowest index wins ties.
pub(crate) fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;

    type Hv = Hypervector<f64>;

    #[test]
    fn chunk_sizes_differ_by_at_most_one() {
        let c = chunk_bounds(10, 3);
        assert_eq!(c, vec![0..4, 4..7, 7..10]);
        let c = chunk_bounds(2, 4);
        assert_eq!(c, vec![0..1, 1..2, 2..2, 2..2]);
    }

    #[test]
    fn random_basis_shape_and_errors() {
        let b = random_hv::<f64>(1, 4, &mut Seed(1).rng()).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_bipolar());
        assert!(random_hv::<f64>(0, 4, &mut Seed(1).rng()).is_err());
        assert!(random_hv::<f64>(3, 0, &mut Seed(1).rng()).is_err());
        let b = random_hv::<f64>(3, 10_000, &mut Seed(2).rng()).unwrap();
        let m = b.similarity_matrix();
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, 1.0);
                } else {
                    assert!(x.abs() < 0.05);
                }
            }
        }
    }

    #[test]
    fn level_endpoints_and_profile() {
        assert!(level_hv::<f64>(1, 100, &mut Seed(1).rng()).is_err());
        let two = level_hv::<f64>(2, 10_000, &mut Seed(1).rng()).unwrap();
        assert!(ops::cosine(&two[0], &two[1]).unwrap().abs() < 0.05);

        let b = level_hv::<f64>(10, 10_000, &mut Seed(4).rng()).unwrap();
        assert!(b.vectors().iter().all(Hv::is_bipolar));
        let c15 = ops::cosine(&b[0], &b[4]).unwrap();
        assert!((c15 - (1.0 - 4.0 / 9.0)).abs() < 0.05, "{c15}");
        let m = b.similarity_matrix();
        for (peak, row) in m.iter().enumerate() {
            assert_eq!(row[peak], 1.0);
            for j in peak + 1..row.len() {
                assert!(row[j] <= row[j - 1]);
            }
            for j in 1..=peak {
                assert!(row[j] >= row[j - 1]);
            }
        }
    }

    #[test]
    fn circular_profile_and_cycle() {
        assert!(circular_hv::<f64>(5, 100, &mut Seed(1).rng()).is_err());
        let b = circular_hv::<f64>(4, 10_000, &mut Seed(3).rng()).unwrap();
        assert!(ops::cosine(&b[0], &b[2]).unwrap().abs() < 0.05);
        let c12 = ops::cosine(&b[0], &b[1]).unwrap();
        let c14 = ops::cosine(&b[0], &b[3]).unwrap();
        assert!((c12 - c14).abs() < 0.05);

        for m in [2usize, 4, 10] {
            let states = circular_states::<f64>(m, 1001, &mut Seed(9).rng());
            assert_eq!(states.len(), m + 1);
            assert_eq!(states[0], states[m]);
        }
    }

    #[test]
    fn circular_distance_wraps() {
        assert_eq!(circular_distance(0, 9, 10), 1);
        assert_eq!(circular_distance(2, 7, 10), 5);
        assert_eq!(circular_distance(3, 3, 10), 0);
    }

    #[test]
    fn value_to_index_examples() {
        assert_eq!(value_to_index(149.0, 0.0, 200.0, 10), 7);
        assert_eq!(value_to_index(0.0, 0.0, 200.0, 10), 0);
        assert_eq!(value_to_index(200.0, 0.0, 200.0, 10), 9);
        assert_eq!(value_to_index(-5.0, 0.0, 200.0, 10), 0);
        assert_eq!(value_to_index(1e9, 0.0, 200.0, 10), 9);
        assert_eq!(value_to_index(f64::NAN, 0.0, 1.0, 3), 0);
    }

    #[test]
    fn embeddings_select_basis_members() {
        let mut rng = Seed(5).rng();
        let w = LevelEmbedding::<f64>::new(10, 64, 0.0, 200.0, &mut rng).unwrap();
        assert_eq!(w.embed(149.0), &w.basis()[7]);
        assert!(LevelEmbedding::<f64>::new(10, 64, 1.0, 1.0, &mut rng).is_err());

        let c = CircularEmbedding::<f64>::new(4, 64, std::f64::consts::TAU, &mut rng).unwrap();
        assert_eq!(c.index(0.0), 0);
        assert_eq!(c.index(std::f64::consts::PI), 2);
        assert_eq!(c.index(std::f64::consts::TAU), 0);
        assert_eq!(c.index(-0.1), 3);
    }

    #[test]
    fn projection_rows_are_unit_norm() {
        let p = ProjectionEncoder::<f64>::new(200, 7, &mut Seed(1).rng()).unwrap();
        for i in 0..p.dim() {
            let n: f64 = p.row(i).iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-6);
        }
        let p32 = ProjectionEncoder::<f32>::new(200, 7, &mut Seed(1).rng()).unwrap();
        for i in 0..p32.dim() {
            let n: f64 = p32
                .row(i)
                .iter()
                .map(|&x| (x as f64).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!((n - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn projection_sign_laws() {
        let p = ProjectionEncoder::<f64>::new(1000, 5, &mut Seed(2).rng()).unwrap();
        let x = [0.3, -1.2, 0.5, 2.0, -0.7];
        let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let nx: Vec<f64> = x.iter().map(|v| -v).collect();
        let e = p.project(&x).unwrap();
        assert!(e.is_bipolar());
        assert_eq!(p.project(&x2).unwrap(), e);
        assert_eq!(p.project(&nx).unwrap(), e.negate());
        assert!(matches!(
            p.project(&[1.0; 4]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(p.project(&[0.0; 5]), Err(Error::ZeroNorm)));
    }

    #[test]
    fn item_memory_cleanup() {
        let basis = random_hv::<f64>(5, 10_000, &mut Seed(6).rng()).unwrap();
        let mem = ItemMemory::from_basis(["a", "b", "c", "d", "e"], &basis).unwrap();
        let hit = mem.cleanup(&basis[2]).unwrap();
        assert_eq!((hit.index, hit.label, hit.similarity), (2, "c", 1.0));

        let mut noisy = basis[3].clone();
        for x in noisy.as_mut_slice().iter_mut().step_by(10) {
            *x = -*x;
        }
        let hit = mem.cleanup(&noisy).unwrap();
        assert_eq!(hit.label, "d");
        assert!((hit.similarity - 0.8).abs() < 1e-9);
        // idempotent
        assert_eq!(mem.cleanup(hit.vector).unwrap().index, 3);

        assert!(matches!(
            ItemMemory::<f64>::new().cleanup(&basis[0]),
            Err(Error::Empty(_))
        ));
        assert!(matches!(
            mem.cleanup(&Hypervector::zeros(10_000)),
            Err(Error::ZeroNorm)
        ));
    }

    #[test]
    fn item_memory_ties_and_labels() {
        let v = Hv::from_vec(vec![1.0, 1.0]);
        let mut mem = ItemMemory::new();
        mem.insert("x", v.clone()).unwrap();
        mem.insert("y", v.clone()).unwrap();
        assert_eq!(mem.cleanup(&v).unwrap().label, "x");
        assert!(matches!(
            mem.insert("x", v.clone()),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(mem.insert("z", Hv::ones(3)).is_err());
        assert!(matches!(mem.get("q"), Err(Error::UnknownLabel(_))));
    }
}
