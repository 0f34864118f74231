//! Labeled text corpora, character n-gram text encoding and synthetic
//! classification data.
//!
//! A corpus directory is laid out as `<root>/<split>/<label>/*.txt`, UTF-8,
//! one sample per line. Blank lines are skipped. Samples are ordered by path
//! (lexicographically) and then by line number.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::encodings;
use crate::error::{Error, Result};
use crate::hypervector::Hypervector;
use crate::rng::Seed;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn dir_name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextSample {
    pub text: String,
    /// Index into [`TextCorpus::labels`].
    pub label: usize,
}

/// One split of a labeled text corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextCorpus {
    pub split: Split,
    /// Sorted label names (the label directory names).
    pub labels: Vec<String>,
    pub samples: Vec<TextSample>,
}

impl TextCorpus {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn label_name(&self, sample: &TextSample) -> &str {
        &self.labels[sample.label]
    }
}

/// Train and test splits of one corpus directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub train: TextCorpus,
    pub test: TextCorpus,
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        out.push(entry.map_err(|e| Error::io(dir, e))?.path());
    }
    out.sort();
    Ok(out)
}

/// Loads `<root>/<split>/<label>/*.txt`.
pub fn load_split(root: &Path, split: Split) -> Result<TextCorpus> {
    let dir = root.join(split.dir_name());
    if !dir.is_dir() {
        return Err(Error::io(
            &dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "split directory not found"),
        ));
    }
    let label_dirs: Vec<PathBuf> = sorted_entries(&dir)?
        .into_iter()
        .filter(|p| p.is_dir())
        .collect();
    let mut labels = Vec::new();
    let mut samples = Vec::new();
    for label_dir in label_dirs {
        let label = label_dir
            .file_name()
            .and_then(|n| n.to_str())
            .ok_or(Error::Decode {
                path: label_dir.clone(),
            })?
            .to_owned();
        let index = labels.len();
        labels.push(label);
        for file in sorted_entries(&label_dir)? {
            if !file.is_file() || file.extension().and_then(|e| e.to_str()) != Some("txt") {
                continue;
            }
            let bytes = fs::read(&file).map_err(|e| Error::io(&file, e))?;
            let text =
                String::from_utf8(bytes).map_err(|_| Error::Decode { path: file.clone() })?;
            samples.extend(
                text.lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(|l| TextSample {
                        text: l.to_owned(),
                        label: index,
                    }),
            );
        }
    }
    if samples.is_empty() {
        return Err(Error::Empty("corpus split has no samples"));
    }
    Ok(TextCorpus {
        split,
        labels,
        samples,
    })
}

pub fn load_corpus(root: &Path) -> Result<Corpus> {
    if !root.is_dir() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotFound, "corpus root not found"),
        ));
    }
    Ok(Corpus {
        train: load_split(root, Split::Train)?,
        test: load_split(root, Split::Test)?,
    })
}

/// Lowercases and collapses whitespace runs into single spaces, trimming both
/// ends.
pub fn normalize_text(text: &str) -> String {
    let lower = text.to_lowercase();
    let mut out = String::with_capacity(lower.len());
    for word in lower.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Character n-gram encoder with a lazily grown symbol memory.
///
/// Each character's random hypervector comes from the ChaCha stream selected
/// by its code point under a fixed seed, so the mapping does not depend on
/// the order characters are first seen.
#[derive(Debug, Clone)]
pub struct TextEncoder<T> {
    dim: usize,
    ngram: usize,
    seed: Seed,
    symbols: HashMap<char, Hypervector<T>>,
}

impl<T: Scalar> TextEncoder<T> {
    pub fn new(dim: usize, ngram: usize, seed: Seed) -> Result<Self> {
        if dim == 0 || ngram == 0 {
            return Err(Error::invalid("dimension and n-gram size must be positive"));
        }
        Ok(Self {
            dim,
            ngram,
            seed,
            symbols: HashMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ngram(&self) -> usize {
        self.ngram
    }

    pub fn symbol(&mut self, c: char) -> &Hypervector<T> {
        let (dim, seed) = (self.dim, self.seed);
        self.symbols
            .entry(c)
            .or_insert_with(|| Hypervector::random(dim, &mut seed.stream(u64::from(c))))
    }

    /// N-gram encoding of the normalized text, or `None` when it has fewer
    /// characters than the n-gram size.
    pub fn encode(&mut self, text: &str) -> Option<Hypervector<T>> {
        let chars: Vec<char> = normalize_text(text).chars().collect();
        if chars.len() < self.ngram {
            return None;
        }
        let tokens: Vec<Hypervector<T>> = chars.iter().map(|&c| self.symbol(c).clone()).collect();
        Some(encodings::ngrams(&tokens, self.ngram).expect("token count checked"))
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }
}

/// Parameters of a synthetic classification task.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub classes: usize,
    pub samples_per_class: usize,
    pub dim: usize,
    /// Probability of flipping each coordinate of the prototype, in `[0, 0.5)`.
    pub flip_probability: f64,
    pub seed: Seed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset<T> {
    /// `(sample, class)` pairs, grouped by class.
    pub samples: Vec<(Hypervector<T>, usize)>,
    /// Ground-truth class prototypes.
    pub prototypes: Vec<Hypervector<T>>,
}

/// Random bipolar prototypes and noisy copies with i.i.d. coordinate flips.
pub fn synth_classification<T: Scalar>(spec: &SyntheticSpec) -> Result<SyntheticDataset<T>> {
    if !(0.0..0.5).contains(&spec.flip_probability) {
        return Err(Error::invalid(format!(
            "flip probability must be in [0, 0.5), got {}",
            spec.flip_probability
        )));
    }
    if spec.classes == 0 || spec.dim == 0 {
        return Err(Error::invalid("classes and dimension must be positive"));
    }
    let mut rng = spec.seed.rng();
    let prototypes: Vec<Hypervector<T>> = (0..spec.classes)
        .map(|_| Hypervector::random(spec.dim, &mut rng))
        .collect();
    let mut samples = Vec::with_capacity(spec.classes * spec.samples_per_class);
    for (class, proto) in prototypes.iter().enumerate() {
        for _ in 0..spec.samples_per_class {
            let mut s = proto.clone();
            if spec.flip_probability > 0.0 {
                for x in s.as_mut_slice() {
                    if rng.random_bool(spec.flip_probability) {
                        *x = -*x;
                    }
                }
            }
            samples.push((s, class));
        }
    }
    Ok(SyntheticDataset {
        samples,
        prototypes,
    })
}
