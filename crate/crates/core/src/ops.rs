//! The bipolar Multiply-Add-Permute operation set and similarity measures.
//!
//! All functions are pure: they never modify their operands.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::hypervector::Hypervector;
use crate::rng::{HdRng, Seed};
use crate::scalar::Scalar;

/// How [`majority`] resolves coordinates whose operand sum is zero.
// the generator is larger than a vector header, but tie-breaks are built once
// per bundling run and never stored in bulk
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum TieBreak<T> {
    /// Always `+1`.
    Bias,
    /// A coin flip drawn from the contained generator, one draw per tie.
    Random(HdRng),
    /// The coordinate of a fixed bipolar vector.
    Auxiliary(Hypervector<T>),
}

impl<T: Scalar> TieBreak<T> {
    pub fn random(seed: Seed) -> Self {
        TieBreak::Random(seed.rng())
    }

    pub fn name(&self) -> &'static str {
        match self {
            TieBreak::Bias => "Bias",
            TieBreak::Random(_) => "Random",
            TieBreak::Auxiliary(_) => "Auxiliary",
        }
    }

    fn resolve(&mut self, coordinate: usize) -> T {
        match self {
            TieBreak::Bias => T::one(),
            TieBreak::Random(rng) => {
                if rng.next_u32() & 1 == 1 {
                    T::one()
                } else {
                    -T::one()
                }
            }
            TieBreak::Auxiliary(aux) => aux.as_slice()[coordinate],
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if let TieBreak::Auxiliary(aux) = self {
            if aux.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: aux.dim(),
                });
            }
            if let Some(coordinate) = aux.first_non_bipolar() {
                return Err(Error::NotBipolar {
                    operand: usize::MAX,
                    coordinate,
                });
            }
        }
        Ok(())
    }
}

fn zip_map<T: Scalar>(
    a: &Hypervector<T>,
    b: &Hypervector<T>,
    f: impl Fn(T, T) -> T,
) -> Result<Hypervector<T>> {
    a.check_dim(b)?;
    Ok(Hypervector::from_vec(
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(&x, &y)| f(x, y))
            .collect(),
    ))
}

/// Element-wise multiplication. Self-inverse on bipolar vectors.
pub fn bind<T: Scalar>(a: &Hypervector<T>, b: &Hypervector<T>) -> Result<Hypervector<T>> {
    zip_map(a, b, |x, y| x * y)
}

/// Element-wise addition, unquantized.
pub fn bundle<T: Scalar>(a: &Hypervector<T>, b: &Hypervector<T>) -> Result<Hypervector<T>> {
    zip_map(a, b, |x, y| x + y)
}

/// Removes `v` from the bundle `s`: element-wise difference.
pub fn bundle_inverse<T: Scalar>(s: &Hypervector<T>, v: &Hypervector<T>) -> Result<Hypervector<T>> {
    zip_map(s, v, |x, y| x - y)
}

/// Sum of any number of operands. An empty slice yields the zero vector of
/// dimension `dim`, which has no defined cosine similarity.
pub fn bundle_all<T: Scalar>(operands: &[Hypervector<T>], dim: usize) -> Result<Hypervector<T>> {
    let mut acc = Hypervector::zeros(dim);
    for v in operands {
        add_assign(&mut acc, v)?;
    }
    Ok(acc)
}

pub(crate) fn add_assign<T: Scalar>(acc: &mut Hypervector<T>, v: &Hypervector<T>) -> Result<()> {
    acc.check_dim(v)?;
    for (a, &x) in acc.as_mut_slice().iter_mut().zip(v.as_slice()) {
        *a = *a + x;
    }
    Ok(())
}

pub(crate) fn sub_assign<T: Scalar>(acc: &mut Hypervector<T>, v: &Hypervector<T>) -> Result<()> {
    acc.check_dim(v)?;
    for (a, &x) in acc.as_mut_slice().iter_mut().zip(v.as_slice()) {
        *a = *a - x;
    }
    Ok(())
}

/// Normalizes a signed shift to a rightward rotation amount in `0..dim`.
pub(crate) fn rotation(dim: usize, shifts: i64) -> usize {
    if dim == 0 {
        return 0;
    }
    shifts.rem_euclid(dim as i64) as usize
}

/// Cyclic shift to the right by `shifts` coordinates: element `k` moves to
/// position `(k + shifts) mod d`. Negative shifts rotate left.
pub fn permute<T: Scalar>(a: &Hypervector<T>, shifts: i64) -> Hypervector<T> {
    let mut data = a.as_slice().to_vec();
    data.rotate_right(rotation(a.dim(), shifts));
    Hypervector::from_vec(data)
}

/// `acc[k] *= v[(k - shifts) mod d]`, i.e. `acc ⊗= permute(v, shifts)` without
/// materializing the permuted vector.
pub(crate) fn mul_permuted_assign<T: Scalar>(acc: &mut [T], v: &[T], shifts: usize) {
    let dim = v.len();
    let s = shifts % dim.max(1);
    let (head, tail) = acc.split_at_mut(s);
    for (a, &x) in head.iter_mut().zip(&v[dim - s..]) {
        *a = *a * x;
    }
    for (a, &x) in tail.iter_mut().zip(&v[..dim - s]) {
        *a = *a * x;
    }
}

/// Element-wise sign into `{-1, +1}`; zero maps to `+1`.
pub fn quantize<T: Scalar>(a: &Hypervector<T>) -> Hypervector<T> {
    Hypervector::from_vec(
        a.as_slice()
            .iter()
            .map(|&x| if x < T::zero() { -T::one() } else { T::one() })
            .collect(),
    )
}

pub fn negate<T: Scalar>(a: &Hypervector<T>) -> Hypervector<T> {
    a.negate()
}

/// Inner product accumulated in `f64`, in a fixed order.
pub fn dot<T: Scalar>(a: &Hypervector<T>, b: &Hypervector<T>) -> Result<f64> {
    a.check_dim(b)?;
    Ok(dot_slices(a.as_slice(), b.as_slice()))
}

pub(crate) fn dot_slices<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    const LANES: usize = 8;
    let mut lanes = [0.0f64; LANES];
    let mut ca = a.chunks_exact(LANES);
    let mut cb = b.chunks_exact(LANES);
    for (xa, xb) in ca.by_ref().zip(cb.by_ref()) {
        for l in 0..LANES {
            lanes[l] += xa[l].as_f64() * xb[l].as_f64();
        }
    }
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x.as_f64() * y.as_f64())
        .sum();
    lanes.iter().sum::<f64>() + tail
}

/// Cosine similarity in `[-1, 1]`.
pub fn cosine<T: Scalar>(a: &Hypervector<T>, b: &Hypervector<T>) -> Result<f64> {
    a.check_dim(b)?;
    let na = a.norm_sq();
    let nb = b.norm_sq();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(cosine_from_parts(
        dot_slices(a.as_slice(), b.as_slice()),
        na,
        nb,
    ))
}

/// Cosine from a dot product and two squared norms. Taking one square root of
/// the product keeps `cosine(a, a)` exactly 1 for integer-valued vectors.
pub(crate) fn cosine_from_parts(dot: f64, norm_sq_a: f64, norm_sq_b: f64) -> f64 {
    (dot / (norm_sq_a * norm_sq_b).sqrt()).clamp(-1.0, 1.0)
}

/// Cosine similarity of `query` against every candidate. The query norm is
/// computed once; a zero-norm candidate is an error.
pub fn cosine_batch<T: Scalar>(
    query: &Hypervector<T>,
    candidates: &[Hypervector<T>],
) -> Result<Vec<f64>> {
    let qn = query.norm_sq();
    if qn == 0.0 {
        return Err(Error::ZeroNorm);
    }
    candidates
        .iter()
        .map(|c| {
            query.check_dim(c)?;
            let cn = c.norm_sq();
            if cn == 0.0 {
                return Err(Error::ZeroNorm);
            }
            Ok(cosine_from_parts(
                dot_slices(query.as_slice(), c.as_slice()),
                qn,
                cn,
            ))
        })
        .collect()
}

fn check_bipolar_operands<T: Scalar>(operands: &[&Hypervector<T>]) -> Result<usize> {
    let first = operands.first().ok_or(Error::Empty("majority operands"))?;
    for (i, v) in operands.iter().enumerate() {
        first.check_dim(v)?;
        if let Some(coordinate) = v.first_non_bipolar() {
            return Err(Error::NotBipolar {
                operand: i,
                coordinate,
            });
        }
    }
    Ok(first.dim())
}

/// Element-wise majority of bipolar operands. Coordinates whose sum is zero
/// are resolved by `tie`; a `Random` tie-break advances its generator once per
/// tied coordinate, in coordinate order.
pub fn majority<T: Scalar>(
    operands: &[&Hypervector<T>],
    tie: &mut TieBreak<T>,
) -> Result<Hypervector<T>> {
    let dim = check_bipolar_operands(operands)?;
    tie.validate(dim)?;
    Ok(majority_unchecked(operands, dim, tie))
}

fn majority_unchecked<T: Scalar>(
    operands: &[&Hypervector<T>],
    dim: usize,
    tie: &mut TieBreak<T>,
) -> Hypervector<T> {
    let data = (0..dim)
        .map(|k| {
            let s: T = operands.iter().map(|v| v.as_slice()[k]).sum();
            if s > T::zero() {
                T::one()
            } else if s < T::zero() {
                -T::one()
            } else {
                tie.resolve(k)
            }
        })
        .collect();
    Hypervector::from_vec(data)
}

/// Left fold of the two-argument majority: `r = majority([r, next])`.
/// Unlike [`bundle`] this is not associative.
pub fn iterative_majority<T: Scalar>(
    operands: &[&Hypervector<T>],
    tie: &mut TieBreak<T>,
) -> Result<Hypervector<T>> {
    let dim = check_bipolar_operands(operands)?;
    tie.validate(dim)?;
    let mut acc = operands[0].clone();
    for next in &operands[1..] {
        acc = majority_unchecked(&[&acc, next], dim, tie);
    }
    Ok(acc)
}
