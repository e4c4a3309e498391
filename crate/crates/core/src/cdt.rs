//! Clock Drawing Test: semantic features over role-labelled gestures.
//!
//! A document labels its gestures with roles: `clockface`, `hour_hand`,
//! `minute_hand` and `digit_1` … `digit_12`. Angles are clock angles in
//! degrees, 0 at twelve o'clock and growing clockwise on a y-down canvas.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::features::{catalog, FeatureSet, FeatureVector};
use crate::geometry::{centroid, distance, points, Point};
use crate::io::{InkDocument, Region};
use crate::ink::{Gesture, Sample};

pub const ROLE_FACE: &str = "clockface";
pub const ROLE_HOUR: &str = "hour_hand";
pub const ROLE_MINUTE: &str = "minute_hand";

/// Ideal digit centres sit at this fraction of the face radius.
pub const DIGIT_RADIUS: f64 = 0.75;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CdtError {
    #[error("no gesture labelled '{0}'")]
    MissingRole(String),
    #[error("role '{0}' is given to more than one gesture")]
    DuplicateRole(String),
    #[error("annotation names unknown gesture '{0}'")]
    UnknownGesture(String),
    #[error("degenerate {0}")]
    DegenerateGeometry(&'static str),
}

fn digit_role(d: u8) -> String {
    format!("digit_{d}")
}

/// Which gesture plays which part of the clock.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockAnnotation {
    pub clockface: String,
    pub hour_hand: String,
    pub minute_hand: String,
    /// Digit value (1–12) to gesture id; digits may be missing.
    pub digits: BTreeMap<u8, String>,
}

impl ClockAnnotation {
    /// Reads roles from a gesture-id → label map. Labels that are not clock roles are ignored.
    pub fn from_labels(labels: &BTreeMap<String, String>) -> Result<Self, CdtError> {
        let mut face = None;
        let mut hour = None;
        let mut minute = None;
        let mut digits = BTreeMap::new();
        for (id, role) in labels {
            let slot = match role.as_str() {
                ROLE_FACE => &mut face,
                ROLE_HOUR => &mut hour,
                ROLE_MINUTE => &mut minute,
                other => {
                    let digit = other
                        .strip_prefix("digit_")
                        .and_then(|d| d.parse::<u8>().ok())
                        .filter(|d| (1..=12).contains(d));
                    if let Some(d) = digit {
                        if digits.insert(d, id.clone()).is_some() {
                            return Err(CdtError::DuplicateRole(role.clone()));
                        }
                    }
                    continue;
                }
            };
            if slot.replace(id.clone()).is_some() {
                return Err(CdtError::DuplicateRole(role.clone()));
            }
        }
        Ok(ClockAnnotation {
            clockface: face.ok_or_else(|| CdtError::MissingRole(ROLE_FACE.into()))?,
            hour_hand: hour.ok_or_else(|| CdtError::MissingRole(ROLE_HOUR.into()))?,
            minute_hand: minute.ok_or_else(|| CdtError::MissingRole(ROLE_MINUTE.into()))?,
            digits,
        })
    }

    /// The inverse of [`Self::from_labels`].
    pub fn to_labels(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        out.insert(self.clockface.clone(), ROLE_FACE.to_string());
        out.insert(self.hour_hand.clone(), ROLE_HOUR.to_string());
        out.insert(self.minute_hand.clone(), ROLE_MINUTE.to_string());
        for (&d, id) in &self.digits {
            out.insert(id.clone(), digit_role(d));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

/// Algebraic least-squares circle through the face samples.
pub fn fit_clockface(face: &Gesture) -> Result<Circle, CdtError> {
    let degenerate = CdtError::DegenerateGeometry("clock face");
    let pts = points(face.flatten().samples());
    if pts.len() < 3 {
        return Err(degenerate);
    }
    // centre and scale first so the normal equations stay well conditioned
    let mu = centroid(&pts);
    let spread = (pts.iter().map(|&p| (p - mu).dot(p - mu)).sum::<f64>() / pts.len() as f64).sqrt();
    if spread == 0.0 {
        return Err(degenerate);
    }
    let u: Vec<Point> = pts.iter().map(|&p| Point::new((p.x - mu.x) / spread, (p.y - mu.y) / spread)).collect();
    let m = DMatrix::from_fn(u.len(), 3, |i, j| match j {
        0 => u[i].x,
        1 => u[i].y,
        _ => 1.0,
    });
    let rhs = DVector::from_fn(u.len(), |i, _| -(u[i].x * u[i].x + u[i].y * u[i].y));
    let qr = m.col_piv_qr();
    let r = qr.r();
    // pivoting puts the smallest diagonal entry last; a tiny one means collinear samples
    if r[(2, 2)].abs() <= 1e-10 * r[(0, 0)].abs() {
        return Err(degenerate);
    }
    let mut sol = qr.q().transpose() * rhs;
    if !r.solve_upper_triangular_mut(&mut sol) {
        return Err(degenerate);
    }
    qr.p().inv_permute_rows(&mut sol);
    let (cx, cy) = (-sol[0] / 2.0, -sol[1] / 2.0);
    let r2 = cx * cx + cy * cy - sol[2];
    if r2 <= 0.0 {
        return Err(degenerate);
    }
    Ok(Circle {
        center: Point::new(mu.x + spread * cx, mu.y + spread * cy),
        radius: spread * r2.sqrt(),
    })
}

/// Clock angle of a direction vector, degrees in [0, 360).
pub fn clock_angle(dx: f64, dy: f64) -> f64 {
    let a = dx.atan2(-dy).to_degrees().rem_euclid(360.0);
    if a >= 360.0 {
        0.0
    } else {
        a
    }
}

/// Smallest difference between two clock angles, in [0, 180].
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % 360.0;
    d.min(360.0 - d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HandGeometry {
    pub length: f64,
    /// Clock angle of the vector from the inner to the outer endpoint.
    pub orientation: f64,
}

/// Length and direction of a hand, measured from its endpoint nearest `center`.
pub fn hand_geometry(hand: &Gesture, center: Point) -> Result<HandGeometry, CdtError> {
    let s = hand.flatten();
    let s = s.samples();
    let (a, b) = (Point::from(s[0]), Point::from(s[s.len() - 1]));
    let (da, db) = (distance(a, center), distance(b, center));
    // ties go to the lexicographically smaller point so sample order never matters
    let a_inner = da < db || (da == db && (a.x, a.y) <= (b.x, b.y));
    let (inner, outer) = if a_inner { (a, b) } else { (b, a) };
    let length = distance(inner, outer);
    if length == 0.0 {
        return Err(CdtError::DegenerateGeometry("clock hand"));
    }
    Ok(HandGeometry { length, orientation: clock_angle(outer.x - inner.x, outer.y - inner.y) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClockFeatures {
    /// Centroid of every sample of the clock's gestures.
    pub centroid: Point,
    pub face: Circle,
    /// Distance between the start and end of the face stroke, over the radius.
    pub face_gap: f64,
    /// Centroid to face centre, over the radius.
    pub center_offset: f64,
    pub hour: HandGeometry,
    pub minute: HandGeometry,
    pub hand_ratio: f64,
    /// Angle between the hands, degrees in [0, 180].
    pub alpha: f64,
    /// Digit centroid to its ideal position, over the radius.
    pub digit_displacement: BTreeMap<u8, f64>,
}

/// Ideal centre of digit `d` on a face.
pub fn ideal_digit_position(face: &Circle, d: u8, radius_factor: f64) -> Point {
    let a = f64::from(d) * PI / 6.0;
    let r = radius_factor * face.radius;
    Point::new(face.center.x + r * a.sin(), face.center.y - r * a.cos())
}

fn resolve<'a>(doc: &'a InkDocument, id: &str) -> Result<&'a Gesture, CdtError> {
    doc.gesture(id).ok_or_else(|| CdtError::UnknownGesture(id.to_string()))
}

pub fn clock_features(doc: &InkDocument, ann: &ClockAnnotation) -> Result<ClockFeatures, CdtError> {
    clock_features_with(doc, ann, DIGIT_RADIUS)
}

/// [`clock_features`] with a custom ideal-digit radius factor.
pub fn clock_features_with(doc: &InkDocument, ann: &ClockAnnotation, digit_radius: f64) -> Result<ClockFeatures, CdtError> {
    let face_g = resolve(doc, &ann.clockface)?;
    let hour_g = resolve(doc, &ann.hour_hand)?;
    let minute_g = resolve(doc, &ann.minute_hand)?;
    let digits: Vec<(u8, &Gesture)> = ann
        .digits
        .iter()
        .map(|(&d, id)| resolve(doc, id).map(|g| (d, g)))
        .collect::<Result<_, _>>()?;

    let face = fit_clockface(face_g)?;
    let r = face.radius;
    let mut all = points(face_g.flatten().samples());
    all.extend(points(hour_g.flatten().samples()));
    all.extend(points(minute_g.flatten().samples()));
    for (_, g) in &digits {
        all.extend(points(g.flatten().samples()));
    }
    let c = centroid(&all);
    let fs = face_g.flatten();
    let fs = fs.samples();
    let face_gap = distance(Point::from(fs[0]), Point::from(fs[fs.len() - 1])) / r;

    let hour = hand_geometry(hour_g, face.center)?;
    let minute = hand_geometry(minute_g, face.center)?;
    let digit_displacement = digits
        .iter()
        .map(|&(d, g)| {
            let at = centroid(&points(g.flatten().samples()));
            (d, distance(at, ideal_digit_position(&face, d, digit_radius)) / r)
        })
        .collect();
    Ok(ClockFeatures {
        centroid: c,
        face,
        face_gap,
        center_offset: distance(c, face.center) / r,
        hour,
        minute,
        hand_ratio: hour.length / minute.length,
        alpha: angular_distance(hour.orientation, minute.orientation),
        digit_displacement,
    })
}

/// The 19 `semantic.*` catalog values. Missing digits are 0 and flagged degenerate.
pub fn semantic_features(f: &ClockFeatures) -> FeatureVector {
    let mut values: Vec<Option<f64>> = vec![
        Some(f.center_offset),
        Some(f.hour.length),
        Some(f.minute.length),
        Some(f.hand_ratio),
        Some(f.alpha),
        Some(f.hour.orientation),
        Some(f.minute.orientation),
    ];
    values.extend((1..=12).map(|d| f.digit_displacement.get(&d).copied()));
    let ids: Vec<String> = catalog()
        .iter()
        .filter(|d| d.set == FeatureSet::Semantic)
        .map(|d| d.id.clone())
        .collect();
    debug_assert_eq!(ids.len(), values.len());
    FeatureVector {
        ids,
        degenerate: values.iter().map(|v| v.is_none()).collect(),
        values: values.into_iter().map(|v| v.unwrap_or(0.0)).collect(),
    }
}

/// Thresholds of the six-point scoring rubric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rubric {
    /// Largest face gap, in radii, that still counts as closed.
    pub max_face_gap: f64,
    pub max_center_offset: f64,
    pub max_digit_displacement: f64,
    /// Allowed error of each hand against the requested time, degrees.
    pub time_tolerance: f64,
    pub alpha_range: (f64, f64),
    pub hour: u32,
    pub minute: u32,
}

impl Default for Rubric {
    fn default() -> Self {
        Rubric {
            max_face_gap: 0.1,
            max_center_offset: 0.1,
            max_digit_displacement: 0.25,
            time_tolerance: 15.0,
            alpha_range: (70.0, 100.0),
            hour: 11,
            minute: 10,
        }
    }
}

impl Rubric {
    /// Expected (hour, minute) hand angles.
    pub fn expected_angles(&self) -> (f64, f64) {
        let m = f64::from(self.minute % 60);
        (f64::from(self.hour % 12) * 30.0 + m * 0.5, m * 6.0)
    }
}

pub const CRITERIA: [&str; 6] = ["face_closed", "center_offset", "digits", "hand_ratio", "time", "hand_angle"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdtScore {
    pub score: u8,
    /// Names of the failed criteria, in rubric order.
    pub findings: Vec<String>,
}

pub fn score_cdt(f: &ClockFeatures) -> CdtScore {
    score_cdt_with(f, &Rubric::default())
}

pub fn score_cdt_with(f: &ClockFeatures, rubric: &Rubric) -> CdtScore {
    let (want_h, want_m) = rubric.expected_angles();
    let passed = [
        f.face_gap <= rubric.max_face_gap,
        f.center_offset <= rubric.max_center_offset,
        f.digit_displacement.values().all(|&d| d <= rubric.max_digit_displacement),
        f.hand_ratio < 1.0,
        angular_distance(f.hour.orientation, want_h) <= rubric.time_tolerance
            && angular_distance(f.minute.orientation, want_m) <= rubric.time_tolerance,
        (rubric.alpha_range.0..=rubric.alpha_range.1).contains(&f.alpha),
    ];
    CdtScore {
        score: passed.iter().filter(|&&p| p).count() as u8,
        findings: CRITERIA
            .iter()
            .zip(passed)
            .filter(|(_, p)| !p)
            .map(|(c, _)| c.to_string())
            .collect(),
    }
}

/// A single flaw to build into [`synthetic_clock`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClockDefect {
    /// Hour hand drawn with the minute hand's length and vice versa.
    SwappedHands,
    /// Digit 9 drawn half a radius below its place.
    DisplacedDigit9,
    /// Face circle drawn a fifth of a radius to the left of the hands and digits.
    OffCenterFace,
}

const SYNTH_CENTER: (f64, f64) = (100.0, 100.0);
const SYNTH_RADIUS: f64 = 80.0;

struct Pen {
    t: f64,
}

impl Pen {
    fn stroke(&mut self, pts: impl IntoIterator<Item = (f64, f64)>) -> Gesture {
        let s: Vec<Sample> = pts
            .into_iter()
            .map(|(x, y)| {
                self.t += 5.0;
                Sample::new(x, y, 0.5, self.t)
            })
            .collect();
        self.t += 200.0;
        Gesture::from_samples(s).expect("synthetic stroke is valid")
    }
}

/// A clock showing 11:10, labelled with roles, optionally with one defect.
pub fn synthetic_clock(defect: Option<ClockDefect>) -> InkDocument {
    let (cx, cy) = SYNTH_CENTER;
    let r = SYNTH_RADIUS;
    let at = |angle_deg: f64, dist: f64| {
        let a = angle_deg.to_radians();
        (cx + dist * a.sin(), cy - dist * a.cos())
    };
    let mut pen = Pen { t: 0.0 };
    let mut doc = InkDocument::new("CDT");
    doc.regions.push(Region {
        id: "clock".into(),
        role: "clock".into(),
        bbox: [cx - 1.25 * r, cy - 1.25 * r, cx + 1.25 * r, cy + 1.25 * r],
    });
    let add = |doc: &mut InkDocument, id: &str, role: String, g: Gesture| {
        doc.push(id, g);
        doc.gestures.last_mut().expect("just pushed").region = Some("clock".into());
        doc.labels.insert(id.to_string(), role);
    };

    let shift = if defect == Some(ClockDefect::OffCenterFace) { -0.2 * r } else { 0.0 };
    let face = pen.stroke((0..=64).map(|i| {
        let (x, y) = at(f64::from(i % 64) * 360.0 / 64.0, r);
        (x + shift, y)
    }));
    add(&mut doc, "face", ROLE_FACE.into(), face);

    let (mut lh, mut lm) = (0.5 * r, 0.8 * r);
    if defect == Some(ClockDefect::SwappedHands) {
        std::mem::swap(&mut lh, &mut lm);
    }
    let (ah, am) = Rubric::default().expected_angles();
    let hand = |pen: &mut Pen, angle: f64, len: f64| pen.stroke((0..20).map(|i| at(angle, len * f64::from(i) / 19.0)));
    let hour = hand(&mut pen, ah, lh);
    add(&mut doc, "hour", ROLE_HOUR.into(), hour);
    let minute = hand(&mut pen, am, lm);
    add(&mut doc, "minute", ROLE_MINUTE.into(), minute);

    for d in 1..=12u8 {
        let (x, mut y) = at(f64::from(d) * 30.0, DIGIT_RADIUS * r);
        if d == 9 && defect == Some(ClockDefect::DisplacedDigit9) {
            y += 0.5 * r;
        }
        // a small closed loop stands in for the glyph; its centroid is the digit centre
        let glyph = pen.stroke((0..12).map(|i| {
            let a = f64::from(i) * PI / 6.0;
            (x + 0.05 * r * a.cos(), y + 0.05 * r * a.sin())
        }));
        add(&mut doc, &format!("digit{d}"), digit_role(d), glyph);
    }
    doc
}
