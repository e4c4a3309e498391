use std::ops::Range;

use super::{points, polyline_length, vertex_angle};
use crate::ink::Gesture;

pub const LINE_WINDOW: usize = 5;
/// About 15 degrees.
pub const LINE_THRESHOLD: f64 = 0.26;

#[derive(Debug, Clone, PartialEq)]
pub struct StraightLine {
    pub stroke: usize,
    /// Sample indices within the stroke.
    pub range: Range<usize>,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StraightLineSet {
    pub lines: Vec<StraightLine>,
}

impl StraightLineSet {
    pub fn lengths(&self) -> Vec<f64> {
        self.lines.iter().map(|l| l.length).collect()
    }
}

/// Maximal straight runs within each stroke.
///
/// A window of `window` consecutive samples is straight when the turning
/// angles at its interior samples add up to at most `threshold`. Overlapping
/// straight windows merge into one line.
pub fn detect_straight_lines(g: &Gesture, window: usize, threshold: f64) -> StraightLineSet {
    let window = window.max(2);
    let mut lines = Vec::new();
    for (si, st) in g.strokes().iter().enumerate() {
        let pts = points(st.samples());
        let r = pts.len();
        if r < window {
            continue;
        }
        let mut ang = vec![0.0; r];
        for (i, a) in ang.iter_mut().enumerate().take(r - 1).skip(1) {
            *a = vertex_angle(&pts, i, 1).unwrap_or(0.0);
        }
        let straight: Vec<bool> = (0..=r - window)
            .map(|j| ang[j + 1..j + window - 1].iter().fold(0.0, |a, &v| a + v) <= threshold)
            .collect();
        let mut j = 0;
        while j < straight.len() {
            if straight[j] {
                let start = j;
                while j + 1 < straight.len() && straight[j + 1] {
                    j += 1;
                }
                let (lo, hi) = (start, j + window - 1);
                lines.push(StraightLine { stroke: si, range: lo..hi + 1, length: polyline_length(&pts[lo..=hi]) });
            }
            j += 1;
        }
    }
    StraightLineSet { lines }
}
