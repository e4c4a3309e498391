//! Validated ink data model: samples, strokes and gestures.

use std::ops::Range;

use thiserror::Error;

/// One captured pen position. `y` grows downward, `t` is in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub t: f64,
}

impl Sample {
    pub const fn new(x: f64, y: f64, p: f64, t: f64) -> Self {
        Sample { x, y, p, t }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.p, self.t]
    }
}

impl From<[f64; 4]> for Sample {
    fn from(a: [f64; 4]) -> Self {
        Sample::new(a[0], a[1], a[2], a[3])
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InkError {
    #[error("gesture has no strokes or an empty stroke")]
    EmptyGesture,
    #[error("timestamps not strictly increasing at stroke {stroke}, sample {index}")]
    NonMonotonicTime { stroke: usize, index: usize },
    #[error("pressure {value} out of [0, 1] at stroke {stroke}, sample {index}")]
    PressureOutOfRange { stroke: usize, index: usize, value: f64 },
    #[error("non-finite value at stroke {stroke}, sample {index}")]
    NonFiniteValue { stroke: usize, index: usize },
}

/// Samples between one pen-down and the following pen-up.
#[derive(Debug, Clone, PartialEq)]
pub struct Stroke {
    samples: Vec<Sample>,
}

impl Stroke {
    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        &self.samples[self.samples.len() - 1]
    }
}

/// An ordered, validated set of strokes. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Gesture {
    strokes: Vec<Stroke>,
}

impl Gesture {
    /// Validates raw strokes and builds a gesture from them.
    pub fn new(strokes: Vec<Vec<Sample>>) -> Result<Self, InkError> {
        if strokes.is_empty() || strokes.iter().any(|s| s.is_empty()) {
            return Err(InkError::EmptyGesture);
        }
        let mut prev_end: Option<f64> = None;
        for (si, st) in strokes.iter().enumerate() {
            for (i, s) in st.iter().enumerate() {
                if !(s.x.is_finite() && s.y.is_finite() && s.p.is_finite() && s.t.is_finite()) {
                    return Err(InkError::NonFiniteValue { stroke: si, index: i });
                }
                if !(0.0..=1.0).contains(&s.p) {
                    return Err(InkError::PressureOutOfRange { stroke: si, index: i, value: s.p });
                }
                if i > 0 && st[i - 1].t >= s.t {
                    return Err(InkError::NonMonotonicTime { stroke: si, index: i });
                }
            }
            if let Some(end) = prev_end {
                if end >= st[0].t {
                    return Err(InkError::NonMonotonicTime { stroke: si, index: 0 });
                }
            }
            prev_end = Some(st[st.len() - 1].t);
        }
        Ok(Gesture {
            strokes: strokes.into_iter().map(|samples| Stroke { samples }).collect(),
        })
    }

    /// Single-stroke convenience constructor.
    pub fn from_samples(samples: Vec<Sample>) -> Result<Self, InkError> {
        Gesture::new(vec![samples])
    }

    pub fn strokes(&self) -> &[Stroke] {
        &self.strokes
    }

    /// Number of strokes.
    pub fn stroke_count(&self) -> usize {
        self.strokes.len()
    }

    /// Total sample count over all strokes.
    pub fn sample_count(&self) -> usize {
        self.strokes.iter().map(Stroke::len).sum()
    }

    pub fn flatten(&self) -> FlatPointSequence {
        flatten(self)
    }

    /// Copy with every (x, y) passed through `f`. Pressure and time are kept.
    pub fn map_xy(&self, f: impl Fn(f64, f64) -> (f64, f64)) -> Gesture {
        let strokes = self
            .strokes
            .iter()
            .map(|st| Stroke {
                samples: st
                    .samples
                    .iter()
                    .map(|s| {
                        let (x, y) = f(s.x, s.y);
                        Sample { x, y, ..*s }
                    })
                    .collect(),
            })
            .collect();
        Gesture { strokes }
    }

    pub fn to_raw(&self) -> Vec<Vec<[f64; 4]>> {
        self.strokes
            .iter()
            .map(|st| st.samples.iter().map(|s| s.to_array()).collect())
            .collect()
    }
}

/// Builds a gesture from `[x, y, p, t]` tuples grouped into strokes.
pub fn validate(raw: &[Vec<[f64; 4]>]) -> Result<Gesture, InkError> {
    Gesture::new(
        raw.iter()
            .map(|st| st.iter().copied().map(Sample::from).collect())
            .collect(),
    )
}

/// All samples of a gesture in stroke order, with the index range of each stroke.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatPointSequence {
    samples: Vec<Sample>,
    ranges: Vec<Range<usize>>,
}

impl FlatPointSequence {
    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn stroke_ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }
}

impl std::ops::Index<usize> for FlatPointSequence {
    type Output = Sample;

    fn index(&self, i: usize) -> &Sample {
        &self.samples[i]
    }
}

pub fn flatten(g: &Gesture) -> FlatPointSequence {
    let mut samples = Vec::with_capacity(g.sample_count());
    let mut ranges = Vec::with_capacity(g.stroke_count());
    for st in g.strokes() {
        let start = samples.len();
        samples.extend_from_slice(st.samples());
        ranges.push(start..samples.len());
    }
    FlatPointSequence { samples, ranges }
}
