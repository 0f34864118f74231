//! Desk-scale experiments: basis similarity profiles, majority-bundling
//! divergence, the fruit-record walkthrough and language identification.
//!
//! Every function here is deterministic given its seed.

use serde::{Deserialize, Serialize};

use crate::basis::{circular_hv, level_hv, random_hv, value_to_index, BasisKind, BasisSet};
use crate::data::{Corpus, TextEncoder};
use crate::error::{Error, Result};
use crate::hypervector::Hypervector;
use crate::learn::CentroidModel;
use crate::ops::{self, add_assign, majority, TieBreak};
use crate::rng::Seed;
use crate::scalar::Scalar;
use crate::structures::HashTable;

/// Pairwise cosine matrix of a freshly generated basis set.
pub fn similarity_profile<T: Scalar>(
    kind: BasisKind,
    count: usize,
    dim: usize,
    seed: Seed,
) -> Result<Vec<Vec<f64>>> {
    let basis = BasisSet::<T>::generate(kind, count, dim, &mut seed.rng())?;
    Ok(basis.similarity_matrix())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Bias,
    Random,
    Auxiliary,
    /// Exact element-wise addition.
    Addition,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Bias,
        Strategy::Random,
        Strategy::Auxiliary,
        Strategy::Addition,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Bias => "Bias",
            Strategy::Random => "Random",
            Strategy::Auxiliary => "Auxiliary",
            Strategy::Addition => "Addition",
        }
    }
}

/// Reference vector the bundled results are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Baseline {
    /// The exact sum (equivalently the mean, as cosine ignores scale).
    Mean,
    /// The exact sum quantized to bipolar, zeros mapping to `+1`.
    Quantized,
}

impl Baseline {
    pub fn as_str(self) -> &'static str {
        match self {
            Baseline::Mean => "mean",
            Baseline::Quantized => "quantized",
        }
    }
}

impl std::str::FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Baseline::Mean),
            "quantized" => Ok(Baseline::Quantized),
            other => Err(Error::invalid(format!("unknown baseline `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BundleErrorConfig {
    /// Largest number of bundled operands; rows cover `2..=max_operands`.
    pub max_operands: usize,
    pub dim: usize,
    pub repetitions: usize,
    pub seed: Seed,
    pub baseline: Baseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BundleErrorRow {
    pub operands: usize,
    pub strategy: Strategy,
    pub mean_cosine: f64,
}

/// Cosine between iteratively majority-bundled vectors and the exact
/// baseline, averaged over repetitions, for every prefix length.
///
/// Repetition `r` draws its operands and auxiliary vector from
/// `seed.derive(r)` and its random tie-breaks from a separate stream of the
/// same seed.
pub fn bundle_error<T: Scalar>(config: &BundleErrorConfig) -> Result<Vec<BundleErrorRow>> {
    if config.max_operands < 2 {
        return Err(Error::invalid("bundling needs at least 2 operands"));
    }
    if config.repetitions == 0 || config.dim == 0 {
        return Err(Error::invalid("repetitions and dimension must be positive"));
    }
    let rows_per_strategy = config.max_operands - 1;
    let mut totals = vec![[0.0f64; 4]; rows_per_strategy];

    for rep in 0..config.repetitions {
        let rep_seed = config.seed.derive(rep as u64);
        let mut rng = rep_seed.rng();
        let aux = Hypervector::<T>::random(config.dim, &mut rng);
        let mut ties = [
            TieBreak::Bias,
            TieBreak::Random(rep_seed.stream(1)),
            TieBreak::Auxiliary(aux),
        ];
        let first = Hypervector::<T>::random(config.dim, &mut rng);
        let mut sum = first.clone();
        let mut states = [first.clone(), first.clone(), first];

        for n in 2..=config.max_operands {
            let next = Hypervector::<T>::random(config.dim, &mut rng);
            add_assign(&mut sum, &next)?;
            let reference = match config.baseline {
                Baseline::Mean => sum.clone(),
                Baseline::Quantized => ops::quantize(&sum),
            };
            // an exactly cancelling sum (possible at tiny dimensions) has no
            // direction: nothing is similar to it except itself
            let zero = reference.is_zero();
            let row = &mut totals[n - 2];
            for (s, (state, tie)) in states.iter_mut().zip(ties.iter_mut()).enumerate() {
                *state = majority(&[state, &next], tie)?;
                if !zero {
                    row[s] += ops::cosine(state, &reference)?;
                }
            }
            row[3] += if zero {
                1.0
            } else {
                ops::cosine(&reference, &reference)?
            };
        }
    }

    let reps = config.repetitions as f64;
    Ok(totals
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            Strategy::ALL
                .iter()
                .zip(row)
                .map(move |(&strategy, &total)| BundleErrorRow {
                    operands: i + 2,
                    strategy,
                    mean_cosine: total / reps,
                })
        })
        .collect())
}

pub const FRUITS: [&str; 3] = ["apple", "lemon", "mango"];
pub const SEASONS: [&str; 4] = ["winter", "spring", "summer", "fall"];
pub const VARIABLES: [&str; 3] = ["fruit", "weight", "season"];
pub const WEIGHT_LEVELS: usize = 10;
pub const WEIGHT_RANGE: (f64, f64) = (0.0, 200.0);

/// A fruit record: fruit index, weight and season index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FruitRecord {
    pub fruit: usize,
    pub weight: f64,
    pub season: usize,
}

/// apple/149.0/fall, lemon/70.5/winter, mango/173.2/summer.
pub const RECORDS: [FruitRecord; 3] = [
    FruitRecord {
        fruit: 0,
        weight: 149.0,
        season: 3,
    },
    FruitRecord {
        fruit: 1,
        weight: 70.5,
        season: 0,
    },
    FruitRecord {
        fruit: 2,
        weight: 173.2,
        season: 2,
    },
];

/// Similarities of one hash-table query result to every member of the
/// queried variable's basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordQuery {
    pub record: usize,
    /// Index into [`VARIABLES`].
    pub variable: usize,
    /// Index of the basis member that was stored.
    pub stored: usize,
    pub similarities: Vec<f64>,
}

impl RecordQuery {
    pub fn argmax(&self) -> usize {
        crate::basis::argmax(&self.similarities).0
    }

    /// Member labels for this query's variable.
    pub fn member_labels(&self) -> Vec<String> {
        match self.variable {
            0 => FRUITS.iter().map(|s| s.to_string()).collect(),
            1 => {
                let (lo, hi) = WEIGHT_RANGE;
                let step = (hi - lo) / WEIGHT_LEVELS as f64;
                (0..WEIGHT_LEVELS)
                    .map(|i| format!("{}-{}", lo + step * i as f64, lo + step * (i + 1) as f64))
                    .collect()
            }
            _ => SEASONS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Encodes the three fruit records as hash tables over random fruit, level
/// weight and circular season bases, queries every key of every record and
/// compares the result with the queried basis.
pub fn record_demo<T: Scalar>(dim: usize, seed: Seed) -> Result<Vec<RecordQuery>> {
    let mut rng = seed.rng();
    let fruits = random_hv::<T>(FRUITS.len(), dim, &mut rng)?;
    let weights = level_hv::<T>(WEIGHT_LEVELS, dim, &mut rng)?;
    let seasons = circular_hv::<T>(SEASONS.len(), dim, &mut rng)?;
    let keys = random_hv::<T>(VARIABLES.len(), dim, &mut rng)?;
    let bases = [&fruits, &weights, &seasons];

    let mut out = Vec::new();
    for (r, rec) in RECORDS.iter().enumerate() {
        let stored = [
            rec.fruit,
            value_to_index(rec.weight, WEIGHT_RANGE.0, WEIGHT_RANGE.1, WEIGHT_LEVELS),
            rec.season,
        ];
        let mut table = HashTable::new(dim);
        for v in 0..VARIABLES.len() {
            table.add(&keys[v], &bases[v][stored[v]])?;
        }
        for v in 0..VARIABLES.len() {
            let result = table.get(&keys[v])?;
            out.push(RecordQuery {
                record: r,
                variable: v,
                stored: stored[v],
                similarities: ops::cosine_batch(&result, bases[v].vectors())?,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LangIdConfig {
    pub ngram: usize,
    pub dim: usize,
    pub seed: Seed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LangIdReport {
    pub labels: Vec<String>,
    pub ngram: usize,
    pub dim: usize,
    pub seed: u64,
    pub train_samples: usize,
    pub test_samples: usize,
    /// Sentences shorter than the n-gram size, per split.
    pub skipped_train: usize,
    pub skipped_test: usize,
    pub correct: usize,
    pub accuracy: f64,
    /// `confusion[true][predicted]` counts.
    pub confusion: Vec<Vec<u64>>,
}

/// Trains a centroid model on character n-gram encodings of the training
/// split and evaluates it on the test split.
///
/// Each sentence is encoded as the multiset of its n-grams and quantized to
/// bipolar before bundling, so every sentence carries equal weight in its
/// class vector.
pub fn language_identification<T: Scalar>(
    corpus: &Corpus,
    config: &LangIdConfig,
) -> Result<(LangIdReport, CentroidModel<T>)> {
    let mut encoder = TextEncoder::<T>::new(config.dim, config.ngram, config.seed)?;
    let labels = corpus.train.labels.clone();

    let mut model = CentroidModel::new(labels.clone(), config.dim)?;
    let mut skipped_train = 0;
    for sample in &corpus.train.samples {
        match encoder.encode(&sample.text) {
            Some(hv) => model.add(&ops::quantize(&hv), sample.label)?,
            None => skipped_train += 1,
        }
    }
    if let Some(empty) = model.counts().iter().position(|&c| c == 0) {
        return Err(Error::invalid(format!(
            "class `{}` has no usable training sentences",
            labels[empty]
        )));
    }

    // test labels are matched to training classes by name
    let class_of: Vec<usize> = corpus
        .test
        .labels
        .iter()
        .map(|l| {
            labels
                .iter()
                .position(|t| t == l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))
        })
        .collect::<Result<_>>()?;

    let k = labels.len();
    let mut confusion = vec![vec![0u64; k]; k];
    let mut skipped_test = 0;
    let mut correct = 0;
    let mut evaluated = 0;
    for sample in &corpus.test.samples {
        let Some(hv) = encoder.encode(&sample.text) else {
            skipped_test += 1;
            continue;
        };
        let truth = class_of[sample.label];
        let predicted = model.predict(&ops::quantize(&hv))?.class;
        confusion[truth][predicted] += 1;
        evaluated += 1;
        if predicted == truth {
            correct += 1;
        }
    }
    if evaluated == 0 {
        return Err(Error::Empty("no test sentence is long enough to encode"));
    }

    let report = LangIdReport {
        labels,
        ngram: config.ngram,
        dim: config.dim,
        seed: config.seed.0,
        train_samples: corpus.train.len() - skipped_train,
        test_samples: evaluated,
        skipped_train,
        skipped_test,
        correct,
        accuracy: correct as f64 / evaluated as f64,
        confusion,
    };
    Ok((report, model))
}
