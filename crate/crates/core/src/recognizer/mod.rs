//! Linear discriminant classifier over feature vectors.
//!
//! Features are standardized with training statistics, features that are
//! constant in training are dropped, and each class gets a linear
//! discriminant from its mean and the pooled within-class covariance.
//! A sample is rejected when its squared Mahalanobis distance to the winning
//! class mean exceeds the 99% chi-square quantile for the dimension.

mod synth;

pub use synth::{synthesize, SymbolClass, UnknownClass, MAX_JITTER, SYNTH_DT, SYNTH_PRESSURE, SYNTH_SAMPLES};

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

use crate::features::{catalog, extract, FeatureError, FeatureRequest, FeatureSet};
use crate::ink::Gesture;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrainError {
    #[error("degenerate training set: {0}")]
    DegenerateTrainingSet(String),
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Feature ids used when none are given: all of Rubine and HBF49.
pub fn default_features() -> Vec<String> {
    catalog()
        .iter()
        .filter(|d| matches!(d.set, FeatureSet::Rubine | FeatureSet::Hbf49))
        .map(|d| d.id.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDiscriminant {
    pub label: String,
    pub weights: Vec<f64>,
    pub bias: f64,
    /// Class mean in standardized coordinates.
    pub mean: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
}

impl Standardizer {
    fn apply(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(x.len(), x.iter().zip(&self.mean).zip(&self.sd).map(|((v, m), s)| (v - m) / s))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierModel {
    /// Feature ids in catalog order; constant training features are not listed.
    pub features: Vec<String>,
    /// Sorted by label.
    pub classes: Vec<ClassDiscriminant>,
    pub standardizer: Standardizer,
    /// Rejection bound on the squared Mahalanobis distance.
    pub reject_threshold: f64,
    /// Inverse of the regularized pooled covariance, row-major.
    pub precision: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: String,
    /// Winning discriminant minus the runner-up.
    pub margin: f64,
    pub rejected: bool,
}

/// Trains on gestures. See [`train_vectors`].
pub fn train<S: AsRef<str>>(samples: &[(Gesture, String)], features: &[S]) -> Result<ClassifierModel, TrainError> {
    let req = FeatureRequest::ids(features)?;
    let ids: Vec<String> = req.descriptors().map(|d| d.id.clone()).collect();
    let rows: Vec<(Vec<f64>, String)> = samples
        .iter()
        .map(|(g, label)| (extract(g, &req).values().to_vec(), label.clone()))
        .collect();
    train_vectors(&rows, &ids)
}

/// Trains on precomputed feature rows whose columns are `ids`.
pub fn train_vectors(rows: &[(Vec<f64>, String)], ids: &[String]) -> Result<ClassifierModel, TrainError> {
    let degenerate = |why: &str| TrainError::DegenerateTrainingSet(why.to_string());
    let mut by_class: BTreeMap<&str, Vec<&[f64]>> = BTreeMap::new();
    for (x, label) in rows {
        assert_eq!(x.len(), ids.len(), "row width differs from feature count");
        by_class.entry(label).or_default().push(x);
    }
    if by_class.len() < 2 {
        return Err(degenerate("fewer than two classes"));
    }
    if let Some((label, _)) = by_class.iter().find(|(_, v)| v.len() < 2) {
        return Err(degenerate(&format!("class '{label}' has fewer than two samples")));
    }

    let n = rows.len() as f64;
    let mut keep = Vec::new();
    let (mut mean, mut sd) = (Vec::new(), Vec::new());
    for j in 0..ids.len() {
        let m = rows.iter().fold(0.0, |a, (x, _)| a + x[j]) / n;
        let s = (rows.iter().fold(0.0, |a, (x, _)| a + (x[j] - m) * (x[j] - m)) / n).sqrt();
        if s > 1e-12 * m.abs().max(1.0) {
            keep.push(j);
            mean.push(m);
            sd.push(s);
        }
    }
    let dim = keep.len();
    if dim == 0 {
        return Err(degenerate("every feature is constant"));
    }
    let standardizer = Standardizer { mean, sd };
    let project = |x: &[f64]| standardizer.apply(&keep.iter().map(|&j| x[j]).collect::<Vec<_>>());

    let mut means = Vec::new();
    let mut pooled = DMatrix::<f64>::zeros(dim, dim);
    for xs in by_class.values() {
        let zs: Vec<DVector<f64>> = xs.iter().map(|x| project(x)).collect();
        let mu = zs.iter().fold(DVector::zeros(dim), |a, z| a + z) / zs.len() as f64;
        for z in &zs {
            let d = z - &mu;
            pooled += &d * d.transpose();
        }
        means.push(mu);
    }
    for i in 0..means.len() {
        for j in i + 1..means.len() {
            if (&means[i] - &means[j]).norm() <= 1e-12 {
                return Err(degenerate("two classes have identical means"));
            }
        }
    }
    pooled /= n - by_class.len() as f64;
    let ridge = 1e-6 * pooled.trace() / dim as f64;
    for i in 0..dim {
        pooled[(i, i)] += ridge;
    }
    let chol = pooled.cholesky().ok_or_else(|| degenerate("pooled covariance is singular"))?;
    let precision = chol.inverse();

    let classes = by_class
        .keys()
        .zip(&means)
        .map(|(label, mu)| {
            let w = &precision * mu;
            ClassDiscriminant {
                label: label.to_string(),
                bias: -0.5 * mu.dot(&w),
                weights: w.iter().copied().collect(),
                mean: mu.iter().copied().collect(),
            }
        })
        .collect();
    let chi2 = ChiSquared::new(dim as f64).expect("positive dimension");
    Ok(ClassifierModel {
        features: keep.iter().map(|&j| ids[j].clone()).collect(),
        classes,
        standardizer,
        reject_threshold: chi2.inverse_cdf(0.99),
        precision: precision.transpose().iter().copied().collect(),
    })
}

impl ClassifierModel {
    pub fn dim(&self) -> usize {
        self.features.len()
    }

    /// Classifies a gesture.
    pub fn predict(&self, g: &Gesture) -> Result<Prediction, FeatureError> {
        let req = FeatureRequest::ids(&self.features)?;
        let v = extract(g, &req);
        let x: Vec<f64> = self.features.iter().map(|id| v.get(id).expect("requested id")).collect();
        Ok(self.predict_vector(&x))
    }

    /// Classifies raw feature values listed in [`Self::features`] order.
    pub fn predict_vector(&self, x: &[f64]) -> Prediction {
        assert_eq!(x.len(), self.dim(), "feature count differs from the model");
        let z = self.standardizer.apply(x);
        let score = |c: &ClassDiscriminant| c.weights.iter().zip(z.iter()).fold(c.bias, |a, (w, v)| a + w * v);
        // classes are sorted, so a strict comparison keeps the smallest label on ties
        let mut best = (0, f64::NEG_INFINITY);
        let mut second = f64::NEG_INFINITY;
        for (i, c) in self.classes.iter().enumerate() {
            let s = score(c);
            if s > best.1 {
                second = best.1;
                best = (i, s);
            } else if s > second {
                second = s;
            }
        }
        let winner = &self.classes[best.0];
        let d = z - DVector::from_column_slice(&winner.mean);
        let p = DMatrix::from_row_slice(self.dim(), self.dim(), &self.precision);
        let mahalanobis = d.dot(&(p * &d));
        Prediction {
            label: winner.label.clone(),
            margin: best.1 - second,
            rejected: mahalanobis > self.reject_threshold,
        }
    }
}
