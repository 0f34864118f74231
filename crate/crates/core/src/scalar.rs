//! Element type abstraction.
//!
//! Every hypervector in this crate is generic over its element type. Bipolar
//! values (`-1`, `+1`) and the integer-valued accumulators produced by
//! bundling are represented exactly by both `f32` (up to 2^24) and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A floating-point element type usable as a hypervector coordinate.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Width in bytes of the little-endian encoding.
    const WIDTH: usize;
    /// Short name used in metadata (`"f32"`, `"f64"`).
    const NAME: &'static str;

    fn write_le(self, out: &mut Vec<u8>);

    /// Decodes one element. `bytes` must hold exactly [`Scalar::WIDTH`] bytes.
    fn read_le(bytes: &[u8]) -> Self;

    #[inline]
    fn as_f64(self) -> f64 {
        // Both supported types convert infallibly.
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(Self::nan)
    }
}

impl Scalar for f32 {
    const WIDTH: usize = 4;
    const NAME: &'static str = "f32";

    fn write_le(self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Self {
        let mut buf = [0u8; 4];
        buf.copy_from_slice(bytes);
        f32::from_le_bytes(buf)
    }
}

impl Scalar for f64 {
    const WIDTH: usize = 8;
    const NAME: &'static str = "f64";

    fn write_le(self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Self {
        let mut buf = [0u8; 8];
        buf.copy_from_slice(bytes);
        f64::from_le_bytes(buf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn le_roundtrip_is_bit_exact() {
        for v in [0.0f32, -1.0, 1.0, 3.5, f32::MIN_POSITIVE, -0.0] {
            let mut buf = Vec::new();
            v.write_le(&mut buf);
            assert_eq!(buf.len(), f32::WIDTH);
            assert_eq!(f32::read_le(&buf).to_bits(), v.to_bits());
        }
        for v in [0.0f64, -1.0, 1.0, 1e300, -0.0] {
            let mut buf = Vec::new();
            v.write_le(&mut buf);
            assert_eq!(f64::read_le(&buf).to_bits(), v.to_bits());
        }
    }
}
