use super::{bounding_box, polyline_length, resample_equidistant, Point};

pub const CUP_SEGMENTS: usize = 64;
/// Minimum reversal, as a fraction of the bounding-box height.
pub const CUP_PROMINENCE: f64 = 0.05;

/// Turning points of the vertical motion along the resampled trajectory.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CupSet {
    /// `(resampled index, arc-length fraction)` of each cup.
    pub cups: Vec<(usize, f64)>,
}

impl CupSet {
    pub fn count(&self) -> usize {
        self.cups.len()
    }

    pub fn first_offset(&self) -> f64 {
        self.cups.first().map_or(0.0, |c| c.1)
    }

    pub fn last_offset(&self) -> f64 {
        self.cups.last().map_or(0.0, |c| c.1)
    }
}

/// Resamples `pts` into [`CUP_SEGMENTS`] pieces and records every y extremum
/// followed by a reversal of at least `CUP_PROMINENCE * height`.
pub fn detect_cups(pts: &[Point]) -> CupSet {
    if pts.is_empty() {
        return CupSet::default();
    }
    let h = bounding_box(pts).height();
    if h == 0.0 || polyline_length(pts) == 0.0 {
        return CupSet::default();
    }
    let ys: Vec<f64> = resample_equidistant(pts, CUP_SEGMENTS)
        .expect("non-zero length")
        .iter()
        .map(|p| p.y)
        .collect();
    let delta = CUP_PROMINENCE * h;
    let mut found = Vec::new();
    let (mut hi, mut lo) = (0, 0);
    let mut dir = 0i8;
    let mut cand = 0;
    for (j, &y) in ys.iter().enumerate().skip(1) {
        match dir {
            0 => {
                if y > ys[hi] {
                    hi = j;
                }
                if y < ys[lo] {
                    lo = j;
                }
                if ys[hi] - ys[lo] >= delta {
                    (dir, cand) = if hi > lo { (1, hi) } else { (-1, lo) };
                }
            }
            1 => {
                if y > ys[cand] {
                    cand = j;
                } else if ys[cand] - y >= delta {
                    found.push(cand);
                    (dir, cand) = (-1, j);
                }
            }
            _ => {
                if y < ys[cand] {
                    cand = j;
                } else if y - ys[cand] >= delta {
                    found.push(cand);
                    (dir, cand) = (1, j);
                }
            }
        }
    }
    CupSet {
        cups: found.into_iter().map(|j| (j, j as f64 / CUP_SEGMENTS as f64)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horizontal_line_has_no_cups() {
        let pts: Vec<Point> = (0..10).map(|i| Point::new(i as f64, 3.0)).collect();
        let c = detect_cups(&pts);
        assert_eq!((c.count(), c.first_offset(), c.last_offset()), (0, 0.0, 0.0));
    }

    #[test]
    fn single_bend() {
        let pts = [Point::new(0., 0.), Point::new(1., 1.), Point::new(2., 0.)];
        let c = detect_cups(&pts);
        assert_eq!(c.count(), 1);
        assert_eq!(c.first_offset(), 0.5);
    }
}
