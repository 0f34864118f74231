//! Hyperdimensional computing with bipolar Multiply-Add-Permute hypervectors.
//!
//! The crate is organized bottom-up:
//!
//! - [`ops`]: bind, bundle, permute, quantize, majority and similarity.
//! - [`basis`]: random, level and circular basis sets, scalar embeddings,
//!   random projection and the [`ItemMemory`] used for cleanup.
//! - [`encodings`]: multisets, hash tables, sequences, n-grams and graphs.
//! - [`structures`]: stateful versions of the encodings with queries.
//! - [`learn`]: centroid classification and model persistence.
//! - [`data`]: text corpora, character n-gram encoding and synthetic data.
//! - [`experiments`]: similarity profiles, majority-bundling divergence,
//!   the fruit-record walkthrough and language identification.
//!
//! Everything is generic over the element type ([`Scalar`]); [`Hv32`] and
//! [`Hv64`] name the two concrete hypervector types.

pub mod basis;
pub mod data;
pub mod encodings;
pub mod error;
pub mod experiments;
pub mod hypervector;
pub mod learn;
pub mod ops;
pub mod rng;
pub mod scalar;
pub mod structures;

pub use basis::{BasisKind, BasisSet, ItemMemory, Recall};
pub use error::{Error, Result};
pub use hypervector::{Hypervector, DEFAULT_DIM};
pub use learn::CentroidModel;
pub use ops::TieBreak;
pub use rng::{HdRng, Seed};
pub use scalar::Scalar;

/// Hypervector with `f32` elements, the default precision.
pub type Hv32 = Hypervector<f32>;
/// Hypervector with `f64` elements.
pub type Hv64 = Hypervector<f64>;

pub type Basis32 = BasisSet<f32>;
pub type Basis64 = BasisSet<f64>;
pub type ItemMemory32 = ItemMemory<f32>;
pub type ItemMemory64 = ItemMemory<f64>;
pub type CentroidModel32 = CentroidModel<f32>;
pub type CentroidModel64 = CentroidModel<f64>;
