//! Toolkit for building, profiling and classifying corpora of human-written
//! and machine-generated argumentative essays.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`, which is what the command-line
//! tool uses.

pub mod annotate;
pub mod detector;
mod error;
pub mod keyness;
pub mod lexmetrics;
pub mod pipeline;
mod scalar;
pub mod syntax;
pub mod text;

pub use error::{Error, ErrorClass, Result};
pub use scalar::{mean, Scalar};













pub type LexicalProfile = lexmetrics::LexicalProfile<f64>;
pub type SyntacticProfile = syntax::SyntacticProfile<f64>;
pub type DescriptiveStats = lexmetrics::DescriptiveStats<f64>;
pub type KeynessEntry = keyness::KeynessEntry<f64>;
pub type FeatureVector = detector::FeatureVector<f64>;
pub type MarginModel = detector::MarginModel<f64>;
pub type EvalReport = detector::EvalReport<f64>;

pub type LexicalProfileF32 = lexmetrics::LexicalProfile<f32>;
pub type SyntacticProfileF32 = syntax::SyntacticProfile<f32>;
pub type MarginModelF32 = detector::MarginModel<f32>;
