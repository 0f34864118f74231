//! Centroid classification.
//!
//! Each class keeps the raw, unquantized sum of its encoded samples. A query
//! is assigned to the class whose vector is most similar by cosine; the lowest
//! class index wins ties. Compose with [`crate::ops::quantize`] to simulate
//! low-precision models.

use std::collections::HashSet;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::basis::argmax;
use crate::error::{Error, Result};
use crate::hypervector::Hypervector;
use crate::ops::{self, add_assign};
use crate::scalar::Scalar;

pub const MODEL_MAGIC: &[u8; 8] = b"HDCMODEL";
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct CentroidModel<T> {
    labels: Vec<String>,
    class_vectors: Vec<Hypervector<T>>,
    counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub class: usize,
    /// Cosine similarity to every class vector, in class order.
    pub similarities: Vec<f64>,
}

impl<T: Scalar> CentroidModel<T> {
    /// An untrained model with zero class vectors.
    pub fn new(labels: Vec<String>, dim: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("class labels"));
        }
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let k = labels.len();
        Ok(Self {
            labels,
            class_vectors: vec![Hypervector::zeros(dim); k],
            counts: vec![0; k],
        })
    }

    /// Single-pass training: `M_i = ⊕ samples labeled i`. Every class must
    /// receive at least one sample.
    pub fn fit<'a>(
        labels: Vec<String>,
        dim: usize,
        samples: impl IntoIterator<Item = (&'a Hypervector<T>, usize)>,
    ) -> Result<Self> {
        let mut model = Self::new(labels, dim)?;
        for (sample, class) in samples {
            model.add(sample, class)?;
        }
        if let Some(empty) = model.counts.iter().position(|&c| c == 0) {
            return Err(Error::invalid(format!(
                "class `{}` has no training samples",
                model.labels[empty]
            )));
        }
        Ok(model)
    }

    pub fn add(&mut self, sample: &Hypervector<T>, class: usize) -> Result<()> {
        let k = self.labels.len();
        let target = self
            .class_vectors
            .get_mut(class)
            .ok_or(Error::IndexOutOfRange {
                index: class,
                len: k,
            })?;
        add_assign(target, sample)?;
        self.counts[class] += 1;
        Ok(())
    }

    /// Adds the class sums of a model trained on another partition of the
    /// data. Labels must match exactly.
    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::invalid("cannot merge models with different labels"));
        }
        for ((dst, src), (c, oc)) in self
            .class_vectors
            .iter_mut()
            .zip(&other.class_vectors)
            .zip(self.counts.iter_mut().zip(&other.counts))
        {
            add_assign(dst, src)?;
            *c += oc;
        }
        Ok(())
    }

    /// Similarity to every class and the argmax. A class with a zero vector
    /// scores 0.
    pub fn predict(&self, query: &Hypervector<T>) -> Result<Prediction> {
        let qn = query.norm_sq();
        if qn == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let similarities = self
            .class_vectors
            .iter()
            .map(|m| {
                query.check_dim(m)?;
                let mn = m.norm_sq();
                Ok(if mn == 0.0 {
                    0.0
                } else {
                    ops::cosine_from_parts(ops::dot_slices(query.as_slice(), m.as_slice()), qn, mn)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let (class, _) = argmax(&similarities);
        Ok(Prediction {
            class,
            similarities,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, class: usize) -> &str {
        &self.labels[class]
    }

    pub fn class_vectors(&self) -> &[Hypervector<T>] {
        &self.class_vectors
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.class_vectors[0].dim()
    }

    /// Writes the binary layout (all integers little-endian):
    ///
    /// ```text
    /// magic   8 bytes  "HDCMODEL"
    /// version u32      1
    /// width   u32      bytes per element (4 for f32, 8 for f64)
    /// d       u64
    /// k       u64
    /// counts  k × u64
    /// vectors k × d elements, class-major
    /// ```
    ///
    /// Labels live in the JSON sidecar.
    pub fn write_binary(&self, mut w: impl Write) -> std::io::Result<()> {
        let dim = self.dim();
        let k = self.num_classes();
        let mut buf = Vec::with_capacity(32 + 8 * k + k * dim * T::WIDTH);
        buf.extend_from_slice(MODEL_MAGIC);
        buf.extend_from_slice(&MODEL_VERSION.to_le_bytes());
        buf.extend_from_slice(&(T::WIDTH as u32).to_le_bytes());
        buf.extend_from_slice(&(dim as u64).to_le_bytes());
        buf.extend_from_slice(&(k as u64).to_le_bytes());
        for c in &self.counts {
            buf.extend_from_slice(&c.to_le_bytes());
        }
        for v in &self.class_vectors {
            for &x in v.as_slice() {
                x.write_le(&mut buf);
            }
        }
        w.write_all(&buf)
    }

    /// Reads the binary layout written by [`Self::write_binary`], attaching
    /// `labels` (one per class).
    pub fn read_binary(mut r: impl Read, labels: Vec<String>) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)
            .map_err(|e| Error::Format(format!("read failed: {e}")))?;
        let mut cur = Cursor {
            bytes: &bytes,
            pos: 0,
        };
        if cur.take(8)? != MODEL_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = cur.u32()?;
        if version != MODEL_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let width = cur.u32()? as usize;
        if width != T::WIDTH {
            return Err(Error::Format(format!(
                "element width {width} does not match {}",
                T::NAME
            )));
        }
        let dim = usize::try_from(cur.u64()?).map_err(|_| Error::Format("d too large".into()))?;
        let k = usize::try_from(cur.u64()?).map_err(|_| Error::Format("k too large".into()))?;
        if k != labels.len() {
            return Err(Error::Format(format!(
                "{k} classes but {} labels",
                labels.len()
            )));
        }
        let counts = (0..k).map(|_| cur.u64()).collect::<Result<Vec<_>>>()?;
        let mut class_vectors = Vec::with_capacity(k);
        for _ in 0..k {
            let raw = cur.take(dim * width)?;
            class_vectors.push(Hypervector::from_vec(
                raw.chunks_exact(width).map(T::read_le).collect(),
            ));
        }
        if cur.pos != bytes.len() {
            return Err(Error::Format("trailing bytes".into()));
        }
        let mut model = Self::new(labels, dim)?;
        model.class_vectors = class_vectors;
        model.counts = counts;
        Ok(model)
    }

    /// Writes `path` (binary) and `path.json` (metadata).
    pub fn save(&self, path: &Path, encoder: serde_json::Value, seed: Option<u64>) -> Result<()> {
        let mut bin = Vec::new();
        self.write_binary(&mut bin)
            .map_err(|e| Error::io(path, e))?;
        fs::write(path, bin).map_err(|e| Error::io(path, e))?;
        let meta = ModelMetadata {
            format_version: MODEL_VERSION,
            scalar: T::NAME.to_owned(),
            dim: self.dim(),
            labels: self.labels.clone(),
            counts: self.counts.clone(),
            encoder,
            seed,
        };
        let side = sidecar_path(path);
        let json = serde_json::to_string_pretty(&meta).map_err(|e| Error::Format(e.to_string()))?;
        fs::write(&side, json + "\n").map_err(|e| Error::io(&side, e))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<(Self, ModelMetadata)> {
        let side = sidecar_path(path);
        let json = fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
        let meta: ModelMetadata =
            serde_json::from_str(&json).map_err(|e| Error::Format(e.to_string()))?;
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let model = Self::read_binary(std::io::BufReader::new(file), meta.labels.clone())?;
        Ok((model, meta))
    }
}

/// JSON sidecar describing a saved model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelMetadata {
    pub format_version: u32,
    pub scalar: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    /// Free-form description of the encoder that produced the samples.
    pub encoder: serde_json::Value,
    pub seed: Option<u64>,
}

/// `model.bin` → `model.bin.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Format("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        let mut b = [0u8; 4];
        b.copy_from_slice(self.take(4)?);
        Ok(u32::from_le_bytes(b))
    }

    fn u64(&mut self) -> Result<u64> {
        let mut b = [0u8; 8];
        b.copy_from_slice(self.take(8)?);
        Ok(u64::from_le_bytes(b))
    }
}
