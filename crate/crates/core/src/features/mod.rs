//! Feature catalog and extraction.
//!
//! Every feature is a function of one gesture. Values that cannot be computed
//! (too few samples, a zero denominator, a non-finite result) come back as 0
//! with the feature id listed as degenerate, so tables stay rectangular.

mod audit;
mod catalog;
mod context;
pub mod hbf49;
pub mod rubine;
pub mod sonntag;
pub mod willems;

use std::collections::HashSet;

use thiserror::Error;

pub use audit::{invariance_flags_audit, random_gesture, AuditReport, Transform, Violation};
pub use catalog::{catalog, descriptor, Category, FeatureDescriptor, FeatureSet};
pub(crate) use context::Context;

use crate::ink::Gesture;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeatureError {
    #[error("unknown feature id '{0}'")]
    UnknownFeatureId(String),
    #[error("'{0}' is a semantic feature; it needs a labelled document, not a single gesture")]
    NotPerGesture(String),
    #[error("bad parameter override '{0}'")]
    BadOverride(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainCodeMode {
    /// Bin-centre components weighted by the share of segments in each class.
    #[default]
    Weighted,
    /// Bin-centre components alone; the same 16 constants for every gesture.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DownstrokeMode {
    /// Downstroke length divided by the trajectory length.
    #[default]
    Proportion,
    /// Downstroke length.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HuMode {
    /// Centred coordinates divided by the mean centroidal radius first.
    #[default]
    Scaled,
    /// Raw centred coordinates.
    Literal,
}

/// Tunable constants. Defaults reproduce the published settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    /// Stride of the k-angles.
    pub k: usize,
    /// Straight-line window, in samples.
    pub window: usize,
    /// Straight-line threshold, in radians.
    pub threshold: f64,
    /// Touch tolerance for connected components; `None` means 1% of the box diagonal.
    pub epsilon: Option<f64>,
    pub chaincode: ChainCodeMode,
    pub downstroke: DownstrokeMode,
    pub hu: HuMode,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            k: 2,
            window: crate::geometry::LINE_WINDOW,
            threshold: crate::geometry::LINE_THRESHOLD,
            epsilon: None,
            chaincode: ChainCodeMode::Weighted,
            downstroke: DownstrokeMode::Proportion,
            hu: HuMode::Scaled,
        }
    }
}

impl Params {
    /// Applies one `key=value` override.
    pub fn apply(&mut self, spec: &str) -> Result<(), FeatureError> {
        let bad = || FeatureError::BadOverride(spec.to_string());
        let (key, value) = spec.split_once('=').ok_or_else(bad)?;
        match key.trim() {
            "k" => self.k = value.parse().ok().filter(|&k: &usize| k >= 1).ok_or_else(bad)?,
            "window" => self.window = value.parse().ok().filter(|&w: &usize| w >= 2).ok_or_else(bad)?,
            "threshold" => self.threshold = value.parse().ok().filter(|t: &f64| t.is_finite()).ok_or_else(bad)?,
            "epsilon" => {
                self.epsilon = Some(value.parse().ok().filter(|e: &f64| e.is_finite() && *e >= 0.0).ok_or_else(bad)?)
            }
            "willems.chaincode" => {
                self.chaincode = match value {
                    "weighted" => ChainCodeMode::Weighted,
                    "literal" => ChainCodeMode::Literal,
                    _ => return Err(bad()),
                }
            }
            "hbf49.f13" => {
                self.downstroke = match value {
                    "proportion" => DownstrokeMode::Proportion,
                    "literal" => DownstrokeMode::Literal,
                    _ => return Err(bad()),
                }
            }
            "hbf49.hu" => {
                self.hu = match value {
                    "scaled" => HuMode::Scaled,
                    "literal" => HuMode::Literal,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(bad()),
        }
        Ok(())
    }
}

/// Which features to compute, in catalog order, and with which parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRequest {
    indices: Vec<usize>,
    pub params: Params,
}

impl FeatureRequest {
    /// All features of the four syntactic sets.
    pub fn all() -> Self {
        FeatureRequest::sets(&FeatureSet::SYNTACTIC).expect("syntactic sets")
    }

    pub fn sets(sets: &[FeatureSet]) -> Result<Self, FeatureError> {
        if sets.contains(&FeatureSet::Semantic) {
            return Err(FeatureError::NotPerGesture("semantic".into()));
        }
        let indices = catalog()
            .iter()
            .enumerate()
            .filter(|(_, d)| sets.contains(&d.set))
            .map(|(i, _)| i)
            .collect();
        Ok(FeatureRequest { indices, params: Params::default() })
    }

    /// Specific ids. Output order is catalog order whatever the input order.
    pub fn ids<S: AsRef<str>>(ids: &[S]) -> Result<Self, FeatureError> {
        let mut wanted = HashSet::new();
        for id in ids {
            let id = id.as_ref();
            let d = descriptor(id).ok_or_else(|| FeatureError::UnknownFeatureId(id.to_string()))?;
            if d.set == FeatureSet::Semantic {
                return Err(FeatureError::NotPerGesture(id.to_string()));
            }
            wanted.insert(id.to_string());
        }
        let indices = catalog()
            .iter()
            .enumerate()
            .filter(|(_, d)| wanted.contains(&d.id))
            .map(|(i, _)| i)
            .collect();
        Ok(FeatureRequest { indices, params: Params::default() })
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    pub fn descriptors(&self) -> impl Iterator<Item = &'static FeatureDescriptor> + '_ {
        self.indices.iter().map(|&i| &catalog()[i])
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Named feature values with degeneracy flags. Values are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub(crate) ids: Vec<String>,
    pub(crate) values: Vec<f64>,
    pub(crate) degenerate: Vec<bool>,
}

impl FeatureVector {
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn degenerate_flags(&self) -> &[bool] {
        &self.degenerate
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn position(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.position(id).map(|i| self.values[i])
    }

    pub fn is_degenerate(&self, id: &str) -> bool {
        self.position(id).is_some_and(|i| self.degenerate[i])
    }

    pub fn degenerate_ids(&self) -> Vec<&str> {
        self.ids
            .iter()
            .zip(&self.degenerate)
            .filter(|(_, &d)| d)
            .map(|(id, _)| id.as_str())
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64, bool)> {
        self.ids
            .iter()
            .zip(&self.values)
            .zip(&self.degenerate)
            .map(|((id, &v), &d)| (id.as_str(), v, d))
    }
}

fn compute_set(ctx: &Context, set: FeatureSet) -> Vec<Option<f64>> {
    match set {
        FeatureSet::Sonntag => sonntag::compute(ctx),
        FeatureSet::Rubine => rubine::compute(ctx),
        FeatureSet::Willems => willems::compute(ctx),
        FeatureSet::Hbf49 => hbf49::compute(ctx),
        FeatureSet::Semantic => unreachable!("semantic features are rejected by FeatureRequest"),
    }
}

/// Computes the requested features of one gesture.
pub fn extract(g: &Gesture, req: &FeatureRequest) -> FeatureVector {
    let ctx = Context::new(g, &req.params);
    let n = g.sample_count();
    let mut cache: Vec<(FeatureSet, usize, Vec<Option<f64>>)> = Vec::new();
    let mut out = FeatureVector {
        ids: Vec::with_capacity(req.len()),
        values: Vec::with_capacity(req.len()),
        degenerate: Vec::with_capacity(req.len()),
    };
    for &idx in &req.indices {
        let d = &catalog()[idx];
        let slot = match cache.iter().position(|c| c.0 == d.set) {
            Some(s) => s,
            None => {
                let (start, len) = catalog::set_span(d.set);
                let values = compute_set(&ctx, d.set);
                debug_assert_eq!(values.len(), len);
                cache.push((d.set, start, values));
                cache.len() - 1
            }
        };
        let (_, start, values) = &cache[slot];
        let value = values[idx - start].filter(|v| v.is_finite() && n >= d.min_samples);
        out.ids.push(d.id.clone());
        out.values.push(value.unwrap_or(0.0));
        out.degenerate.push(value.is_none());
    }
    out
}

/// Convenience wrapper: extract features by id with default parameters.
pub fn extract_ids<S: AsRef<str>>(g: &Gesture, ids: &[S]) -> Result<FeatureVector, FeatureError> {
    Ok(extract(g, &FeatureRequest::ids(ids)?))
}

pub(crate) fn mean(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, &x| a + x) / v.len() as f64
}

/// Population standard deviation.
pub(crate) fn sd(v: &[f64]) -> f64 {
    let m = mean(v);
    (v.iter().fold(0.0, |a, &x| a + (x - m) * (x - m)) / v.len() as f64).sqrt()
}

pub(crate) fn sum(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |a, x| a + x)
}

/// `Some(num / den)` unless `den` is exactly zero.
pub(crate) fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ink::Sample;

    fn g_line() -> Gesture {
        Gesture::from_samples(vec![
            Sample::new(0., 0., 0.5, 0.),
            Sample::new(1.5, 2., 0.5, 50.),
            Sample::new(3., 4., 0.5, 100.),
        ])
        .unwrap()
    }

    #[test]
    fn single_sample_velocity_is_degenerate() {
        let g = Gesture::from_samples(vec![Sample::new(1., 1., 0.5, 0.)]).unwrap();
        let v = extract_ids(&g, &["willems.f25"]).unwrap();
        assert_eq!(v.get("willems.f25"), Some(0.0));
        assert!(v.is_degenerate("willems.f25"));
    }

    #[test]
    fn duration_of_line() {
        let v = extract_ids(&g_line(), &["rubine.f13"]).unwrap();
        assert_eq!(v.get("rubine.f13"), Some(100.0));
    }

    #[test]
    fn full_request_has_all_syntactic_values() {
        let v = extract(&g_line(), &FeatureRequest::all());
        assert_eq!(v.len(), 15 + 13 + 89 + 49);
        assert!(v.values().iter().all(|x| x.is_finite()));
    }

    #[test]
    fn unknown_and_semantic_ids() {
        assert_eq!(
            FeatureRequest::ids(&["rubine.f99"]).unwrap_err(),
            FeatureError::UnknownFeatureId("rubine.f99".into())
        );
        assert!(matches!(FeatureRequest::ids(&["semantic.f5"]), Err(FeatureError::NotPerGesture(_))));
    }

    #[test]
    fn request_order_is_catalog_order() {
        let r = FeatureRequest::ids(&["hbf49.f2", "rubine.f1", "sonntag.f3"]).unwrap();
        let ids: Vec<&str> = r.descriptors().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["sonntag.f3", "rubine.f1", "hbf49.f2"]);
    }

    #[test]
    fn overrides() {
        let mut p = Params::default();
        p.apply("k=3").unwrap();
        p.apply("willems.chaincode=literal").unwrap();
        p.apply("hbf49.f13=literal").unwrap();
        p.apply("epsilon=0.5").unwrap();
        assert_eq!((p.k, p.chaincode, p.downstroke, p.epsilon), (3, ChainCodeMode::Literal, DownstrokeMode::Literal, Some(0.5)));
        assert!(p.apply("k=0").is_err());
        assert!(p.apply("nope=1").is_err());
        assert!(p.apply("threshold").is_err());
    }

    #[test]
    fn stats_helpers() {
        assert_eq!(mean(&[1., 2., 3.]), 2.0);
        assert_eq!(sd(&[2., 4.]), 1.0);
        assert_eq!(ratio(1.0, 0.0), None);
    }
}
