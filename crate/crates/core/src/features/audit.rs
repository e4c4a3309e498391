//! Empirical check of the catalog's invariance flags.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{catalog, extract, FeatureRequest};
use crate::ink::{Gesture, Sample};

/// A similarity transform of the xy plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Translate { dx: f64, dy: f64 },
    /// Uniform scale about the origin.
    Scale(f64),
    /// Rotation about the origin, radians.
    Rotate(f64),
}

impl Transform {
    pub fn apply(&self, g: &Gesture) -> Gesture {
        match *self {
            Transform::Translate { dx, dy } => g.map_xy(|x, y| (x + dx, y + dy)),
            Transform::Scale(s) => g.map_xy(|x, y| (s * x, s * y)),
            Transform::Rotate(a) => {
                let (s, c) = a.sin_cos();
                g.map_xy(|x, y| (c * x - s * y, s * x + c * y))
            }
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Transform::Translate { .. } => "translation",
            Transform::Scale(_) => "scale",
            Transform::Rotate(_) => "rotation",
        }
    }

    fn tolerance(&self) -> f64 {
        match self {
            Transform::Translate { .. } => 1e-9,
            _ => 1e-6,
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Translate { dx, dy } => write!(f, "translate({dx}, {dy})"),
            Transform::Scale(s) => write!(f, "scale({s})"),
            Transform::Rotate(a) => write!(f, "rotate({a})"),
        }
    }
}

/// A flagged-invariant feature that changed under a transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub feature: String,
    pub transform: Transform,
    /// Seed of the offending [`random_gesture`].
    pub seed: u64,
    pub original: f64,
    pub transformed: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} not {}-invariant: {} -> {} under {} (gesture seed {})",
            self.feature,
            self.transform.kind(),
            self.original,
            self.transformed,
            self.transform,
            self.seed
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AuditReport {
    pub gestures: usize,
    /// Number of (feature, gesture, transform) comparisons made.
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A reproducible multi-stroke random walk, 1–3 strokes of 8–40 samples in roughly [0, 100]².
pub fn random_gesture(seed: u64) -> Gesture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bend = Normal::new(0.0, 0.4).expect("valid sd");
    let mut t = 0.0;
    let strokes = (0..rng.random_range(1..=3))
        .map(|_| {
            let (mut x, mut y) = (rng.random_range(10.0..90.0), rng.random_range(10.0..90.0));
            let mut heading = rng.random_range(0.0..2.0 * PI);
            let n = rng.random_range(8..=40);
            let mut out = Vec::with_capacity(n);
            for _ in 0..n {
                out.push(Sample::new(x, y, rng.random_range(0.2..1.0), t));
                heading += bend.sample(&mut rng);
                let step = rng.random_range(1.0..5.0);
                x += step * heading.cos();
                y += step * heading.sin();
                t += rng.random_range(5.0..15.0);
            }
            t += rng.random_range(50.0..300.0);
            out
        })
        .collect();
    Gesture::new(strokes).expect("random walk is a valid gesture")
}

const AUDIT_GESTURES: usize = 100;
const AUDIT_SEED: u64 = 0x1f2e3d4c;

/// Checks every invariance flag of the syntactic catalog on 100 random gestures.
pub fn invariance_flags_audit() -> AuditReport {
    audit_with(AUDIT_GESTURES, AUDIT_SEED)
}

pub(crate) fn audit_with(count: usize, seed: u64) -> AuditReport {
    let req = FeatureRequest::all();
    let descriptors: Vec<_> = req.descriptors().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AuditReport { gestures: count, ..Default::default() };
    for _ in 0..count {
        let gseed: u64 = rng.random();
        let g = random_gesture(gseed);
        let base = extract(&g, &req);
        let transforms = [
            Transform::Translate { dx: rng.random_range(-500.0..500.0), dy: rng.random_range(-500.0..500.0) },
            Transform::Scale(10f64.powf(rng.random_range(-1.0..=1.0))),
            Transform::Rotate(rng.random_range(0.0..2.0 * PI)),
        ];
        for tr in transforms {
            let moved = extract(&tr.apply(&g), &req);
            for (i, d) in descriptors.iter().enumerate() {
                let flagged = match tr {
                    Transform::Translate { .. } => d.translation_invariant,
                    Transform::Scale(_) => d.scale_invariant,
                    Transform::Rotate(_) => d.rotation_invariant,
                };
                if !flagged {
                    continue;
                }
                report.checks += 1;
                let (a, b) = (base.values()[i], moved.values()[i]);
                let same_flag = base.degenerate_flags()[i] == moved.degenerate_flags()[i];
                if !same_flag || (a - b).abs() > tr.tolerance() * a.abs().max(1.0) {
                    report.violations.push(Violation {
                        feature: d.id.clone(),
                        transform: tr,
                        seed: gseed,
                        original: a,
                        transformed: b,
                    });
                }
            }
        }
    }
    debug_assert!(catalog().len() >= descriptors.len());
    report
}
