use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::HdRng;
use crate::scalar::Scalar;

/// Dimensionality used by the experiments unless overridden.
pub const DEFAULT_DIM: usize = 10_000;

/// A dense hypervector of fixed dimension.
///
/// Generators and quantization produce bipolar vectors (every element `-1` or
/// `+1`); bundling produces integer-valued accumulators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hypervector<T> {
    data: Vec<T>,
}

impl<T: Scalar> Hypervector<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![T::zero(); dim],
        }
    }

    pub fn ones(dim: usize) -> Self {
        Self {
            data: vec![T::one(); dim],
        }
    }

    pub fn from_vec(data: Vec<T>) -> Self {
        Self { data }
    }

    /// Builds a bipolar vector from signs; `true` maps to `+1`.
    pub fn from_signs(signs: impl IntoIterator<Item = bool>) -> Self {
        Self {
            data: signs
                .into_iter()
                .map(|s| if s { T::one() } else { -T::one() })
                .collect(),
        }
    }

    /// Uniformly random bipolar vector. Consumes one `u64` per 64 coordinates.
    pub fn random(dim: usize, rng: &mut HdRng) -> Self {
        let mut data = Vec::with_capacity(dim);
        while data.len() < dim {
            let bits = rng.next_u64();
            let take = (dim - data.len()).min(64);
            data.extend((0..take).map(|b| {
                if bits >> b & 1 == 1 {
                    T::one()
                } else {
                    -T::one()
                }
            }));
        }
        Self { data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn is_bipolar(&self) -> bool {
        self.first_non_bipolar().is_none()
    }

    pub(crate) fn first_non_bipolar(&self) -> Option<usize> {
        self.data
            .iter()
            .position(|&x| x != T::one() && x != -T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn negate(&self) -> Self {
        Self {
            data: self.data.iter().map(|&x| -x).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        crate::ops::dot_slices(&self.data, &self.data)
    }

    /// Converts the element type, e.g. `f32` accumulators to `f64`.
    pub fn cast<U: Scalar>(&self) -> Hypervector<U> {
        Hypervector {
            data: self
                .data
                .iter()
                .map(|x| U::from_f64_lossy(x.as_f64()))
                .collect(),
        }
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

impl<T> AsRef<[T]> for Hypervector<T> {
    fn as_ref(&self) -> &[T] {
        &self.data
    }
}

impl<T: Scalar> From<Vec<T>> for Hypervector<T> {
    fn from(data: Vec<T>) -> Self {
        Self { data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;

    #[test]
    fn random_is_bipolar_and_reproducible() {
        for dim in [1usize, 4, 63, 64, 65, 1000] {
            let a = Hypervector::<f32>::random(dim, &mut Seed(3).rng());
            let b = Hypervector::<f32>::random(dim, &mut Seed(3).rng());
            assert_eq!(a.dim(), dim);
            assert!(a.is_bipolar());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn random_coordinate_means_are_near_zero() {
        // empirical per-coordinate mean over 10000 draws
        let dim = 64;
        let mut rng = Seed(11).rng();
        let mut sums = vec![0.0f64; dim];
        for _ in 0..10_000 {
            let v = Hypervector::<f64>::random(dim, &mut rng);
            for (s, x) in sums.iter_mut().zip(v.as_slice()) {
                *s += x;
            }
        }
        for s in sums {
            assert!((s / 10_000.0).abs() < 0.05, "mean {}", s / 10_000.0);
        }
    }

    #[test]
    fn bipolar_detection() {
        let v = Hypervector::from_vec(vec![1.0f64, -1.0, 2.0]);
        assert_eq!(v.first_non_bipolar(), Some(2));
        assert!(Hypervector::<f64>::from_signs([true, false]).is_bipolar());
        assert!(!Hypervector::<f64>::zeros(3).is_bipolar());
    }
}
