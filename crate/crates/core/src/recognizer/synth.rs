//! Synthetic samples of the eleven symbol classes.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::geometry::{bounding_box, polyline_length, resample_equidistant, Point};
use crate::ink::{Gesture, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolClass {
    Arrow,
    Circle,
    Rectangle,
    Triangle,
    Diamond,
    OverlappingRectangles,
    Cube,
    Pentagrams,
    Checkmark,
    Checkmarks,
    SendSymbol,
}

impl SymbolClass {
    pub const ALL: [SymbolClass; 11] = [
        SymbolClass::Arrow,
        SymbolClass::Circle,
        SymbolClass::Rectangle,
        SymbolClass::Triangle,
        SymbolClass::Diamond,
        SymbolClass::OverlappingRectangles,
        SymbolClass::Cube,
        SymbolClass::Pentagrams,
        SymbolClass::Checkmark,
        SymbolClass::Checkmarks,
        SymbolClass::SendSymbol,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SymbolClass::Arrow => "arrow",
            SymbolClass::Circle => "circle",
            SymbolClass::Rectangle => "rectangle",
            SymbolClass::Triangle => "triangle",
            SymbolClass::Diamond => "diamond",
            SymbolClass::OverlappingRectangles => "overlapping-rectangles",
            SymbolClass::Cube => "cube",
            SymbolClass::Pentagrams => "pentagrams",
            SymbolClass::Checkmark => "checkmark",
            SymbolClass::Checkmarks => "checkmarks",
            SymbolClass::SendSymbol => "send-symbol",
        }
    }

    /// Control polylines of the ideal shape, one per stroke, in a 100-unit box with y down.
    fn template(self) -> Vec<Vec<(f64, f64)>> {
        let rect = |x0: f64, y0: f64, x1: f64, y1: f64| vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)];
        let check = |x0: f64, s: f64| vec![(x0, 60.0), (x0 + 0.3 * s, 100.0), (x0 + s, 20.0)];
        match self {
            SymbolClass::Arrow => vec![vec![(0.0, 50.0), (100.0, 50.0)], vec![(75.0, 30.0), (100.0, 50.0), (75.0, 70.0)]],
            SymbolClass::Circle => vec![(0..CIRCLE_VERTICES)
                .map(|i| {
                    let a = 2.0 * PI * (i % (CIRCLE_VERTICES - 1)) as f64 / (CIRCLE_VERTICES - 1) as f64;
                    (50.0 + 50.0 * a.sin(), 50.0 - 50.0 * a.cos())
                })
                .collect()],
            SymbolClass::Rectangle => vec![rect(0.0, 20.0, 100.0, 80.0)],
            SymbolClass::Triangle => vec![vec![(50.0, 0.0), (100.0, 90.0), (0.0, 90.0), (50.0, 0.0)]],
            SymbolClass::Diamond => vec![vec![(50.0, 0.0), (100.0, 50.0), (50.0, 100.0), (0.0, 50.0), (50.0, 0.0)]],
            SymbolClass::OverlappingRectangles => vec![rect(0.0, 0.0, 60.0, 60.0), rect(40.0, 40.0, 100.0, 100.0)],
            SymbolClass::Cube => vec![
                rect(0.0, 30.0, 70.0, 100.0),
                rect(30.0, 0.0, 100.0, 70.0),
                vec![(0.0, 30.0), (30.0, 0.0)],
                vec![(70.0, 30.0), (100.0, 0.0)],
                vec![(70.0, 100.0), (100.0, 70.0)],
                vec![(0.0, 100.0), (30.0, 70.0)],
            ],
            SymbolClass::Pentagrams => vec![(0..=5)
                .map(|i| {
                    let a = 2.0 * PI * ((2 * i) % 5) as f64 / 5.0;
                    (50.0 + 50.0 * a.sin(), 50.0 - 50.0 * a.cos())
                })
                .collect()],
            SymbolClass::Checkmark => vec![check(0.0, 100.0)],
            SymbolClass::Checkmarks => vec![check(0.0, 45.0), check(55.0, 45.0)],
            SymbolClass::SendSymbol => vec![vec![(0.0, 0.0), (100.0, 50.0), (0.0, 100.0), (25.0, 50.0), (0.0, 0.0)]],
        }
    }
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown symbol class '{0}'")]
pub struct UnknownClass(pub String);

impl FromStr for SymbolClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SymbolClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownClass(s.to_string()))
    }
}

const CIRCLE_VERTICES: usize = 60;
/// Samples per gesture, shared between strokes by length.
pub const SYNTH_SAMPLES: usize = 60;
pub const SYNTH_DT: f64 = 5.0;
pub const SYNTH_PRESSURE: f64 = 0.5;
pub const MAX_JITTER: f64 = 0.2;

/// A reproducible drawing of `class`.
///
/// Each template control point moves by Gaussian noise with standard deviation
/// `jitter` times the template's bounding-box diagonal, then every stroke is
/// resampled so the gesture has about 60 samples. Closed strokes stay closed.
///
/// Panics unless `jitter` is in `[0, 0.2]`.
pub fn synthesize(class: SymbolClass, seed: u64, jitter: f64) -> Gesture {
    assert!((0.0..=MAX_JITTER).contains(&jitter), "jitter {jitter} outside [0, {MAX_JITTER}]");
    let template = class.template();
    let all: Vec<Point> = template.iter().flatten().map(|&(x, y)| Point::new(x, y)).collect();
    let sd = jitter * bounding_box(&all).diagonal();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (class as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let noise = Normal::new(0.0, sd).expect("finite sd");

    let strokes: Vec<Vec<Point>> = template
        .iter()
        .map(|ctrl| {
            let closed = ctrl.len() > 2 && ctrl[0] == ctrl[ctrl.len() - 1];
            let mut pts: Vec<Point> = ctrl
                .iter()
                .map(|&(x, y)| Point::new(x + noise.sample(&mut rng), y + noise.sample(&mut rng)))
                .collect();
            if closed {
                let n = pts.len();
                pts[n - 1] = pts[0];
            }
            pts
        })
        .collect();

    let total: f64 = strokes.iter().map(|s| polyline_length(s)).sum();
    let mut t = 0.0;
    let out = strokes
        .iter()
        .map(|pts| {
            let share = (SYNTH_SAMPLES as f64 * polyline_length(pts) / total).round() as usize;
            let resampled = resample_equidistant(pts, share.max(2) - 1).unwrap_or_else(|_| pts.clone());
            resampled
                .into_iter()
                .map(|p| {
                    let s = Sample::new(p.x, p.y, SYNTH_PRESSURE, t);
                    t += SYNTH_DT;
                    s
                })
                .collect()
        })
        .collect();
    Gesture::new(out).expect("synthetic strokes are valid")
}
