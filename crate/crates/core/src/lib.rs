//! Feature extraction for digital ink.
//!
//! Gestures are sequences of strokes of `(x, y, p, t)` samples. On top of the
//! shared [`geometry`] primitives the crate computes four published syntactic
//! feature sets (Sonntag, Rubine, Willems–Niels, HBF49), semantic features of
//! the Clock Drawing Test, and a linear symbol classifier.

pub mod cdt;
pub mod features;
pub mod geometry;
pub mod ink;
pub mod recognizer;
pub mod io;

pub use features::{extract, FeatureRequest, FeatureSet, FeatureVector, Params};
pub use ink::{Gesture, InkError, Sample, Stroke};
