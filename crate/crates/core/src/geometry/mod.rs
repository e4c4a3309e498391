//! Computational-geometry and kinematics primitives shared by the feature sets.
//!
//! Sums are plain left folds starting at `0.0` so results are reproducible
//! bit for bit across callers.

mod cups;
mod hull;
mod lines;
mod pca;
mod topology;

pub use cups::{detect_cups, CupSet, CUP_PROMINENCE, CUP_SEGMENTS};
pub use hull::{convex_hull, ConvexHull};
pub use lines::{detect_straight_lines, StraightLine, StraightLineSet, LINE_THRESHOLD, LINE_WINDOW};
pub use pca::{principal_axes, PrincipalAxes};
pub use topology::{
    connected_components, count_crossings, default_touch_tolerance, segments_intersect, stroke_distance,
    CONNECT_FRACTION,
};

use thiserror::Error;

use crate::ink::{FlatPointSequence, Sample};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum GeometryError {
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("degenerate geometry")]
    DegenerateGeometry,
    #[error("not enough samples")]
    InsufficientSamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl From<&Sample> for Point {
    fn from(s: &Sample) -> Point {
        Point::new(s.x, s.y)
    }
}

impl From<Sample> for Point {
    fn from(s: Sample) -> Point {
        Point::new(s.x, s.y)
    }
}

pub fn points(samples: &[Sample]) -> Vec<Point> {
    samples.iter().map(Point::from).collect()
}

/// Drops consecutive samples at the same position.
pub fn dedup(pts: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts {
        match out.last() {
            Some(q) if q.x == p.x && q.y == p.y => {}
            _ => out.push(p),
        }
    }
    out
}

pub fn distance(q: Point, r: Point) -> f64 {
    let dx = r.x - q.x;
    let dy = r.y - q.y;
    (dx * dx + dy * dy).sqrt()
}

/// Length of the polyline through `pts`.
pub fn polyline_length(pts: &[Point]) -> f64 {
    pts.windows(2).fold(0.0, |acc, w| acc + distance(w[0], w[1]))
}

/// Length of the polyline from index `i` to index `j` inclusive.
pub fn path_length(pts: &[Point], i: usize, j: usize) -> Result<f64, GeometryError> {
    if i > j || j >= pts.len() {
        return Err(GeometryError::IndexOutOfRange);
    }
    Ok(polyline_length(&pts[i..=j]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BoundingBox {
    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn diagonal(&self) -> f64 {
        let (w, h) = (self.width(), self.height());
        (w * w + h * h).sqrt()
    }

    pub fn center(&self) -> Point {
        Point::new(self.xmin + 0.5 * self.width(), self.ymin + 0.5 * self.height())
    }
}

/// Panics on an empty slice.
pub fn bounding_box(pts: &[Point]) -> BoundingBox {
    let mut b = BoundingBox { xmin: pts[0].x, xmax: pts[0].x, ymin: pts[0].y, ymax: pts[0].y };
    for p in &pts[1..] {
        b.xmin = b.xmin.min(p.x);
        b.xmax = b.xmax.max(p.x);
        b.ymin = b.ymin.min(p.y);
        b.ymax = b.ymax.max(p.y);
    }
    b
}

pub fn centroid(pts: &[Point]) -> Point {
    let n = pts.len() as f64;
    let sx = pts.iter().fold(0.0, |a, p| a + p.x);
    let sy = pts.iter().fold(0.0, |a, p| a + p.y);
    Point::new(sx / n, sy / n)
}

/// Unsigned angle in `[0, π]` between the arms `p[i-k] -> p[i]` and `p[i] -> p[i+k]`.
pub fn vertex_angle(pts: &[Point], i: usize, k: usize) -> Result<f64, GeometryError> {
    if k == 0 || i < k || i + k >= pts.len() {
        return Err(GeometryError::IndexOutOfRange);
    }
    let a = pts[i] - pts[i - k];
    let b = pts[i + k] - pts[i];
    if (a.x == 0.0 && a.y == 0.0) || (b.x == 0.0 && b.y == 0.0) {
        return Err(GeometryError::DegenerateGeometry);
    }
    // arccos of the normalised dot product, in a form that stays accurate near 0 and π
    let cross = a.x * b.y - a.y * b.x;
    let dot = a.x * b.x + a.y * b.y;
    Ok(cross.abs().atan2(dot))
}

/// Signed turn at `p1` in `(-π, π]`: atan2 of the cross term
/// `Δx_i Δy_{i-1} − Δx_{i-1} Δy_i` against the dot product.
pub fn turn(p0: Point, p1: Point, p2: Point) -> Result<f64, GeometryError> {
    let (dx0, dy0) = (p1.x - p0.x, p1.y - p0.y);
    let (dx1, dy1) = (p2.x - p1.x, p2.y - p1.y);
    if (dx0 == 0.0 && dy0 == 0.0) || (dx1 == 0.0 && dy1 == 0.0) {
        return Err(GeometryError::DegenerateGeometry);
    }
    let num = dx1 * dy0 - dx0 * dy1;
    let den = dx1 * dx0 + dy1 * dy0;
    Ok(half_open(num.atan2(den)))
}

pub fn signed_turn_angle(pts: &[Point], i: usize) -> Result<f64, GeometryError> {
    if i == 0 || i + 1 >= pts.len() {
        return Err(GeometryError::IndexOutOfRange);
    }
    turn(pts[i - 1], pts[i], pts[i + 1])
}

fn half_open(a: f64) -> f64 {
    if a == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        a
    }
}

/// Direction of `(dx, dy)` in `(-π, π]`.
pub fn direction(dx: f64, dy: f64) -> f64 {
    half_open(dy.atan2(dx))
}

/// Direction of `(dx, dy)` in `[0, 2π)`.
pub fn full_angle(dx: f64, dy: f64) -> f64 {
    let a = dy.atan2(dx);
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Octant 1..=8 of an angle in `[0, 2π)`, each octant half-open on the right.
pub fn octant(nu: f64) -> usize {
    use std::f64::consts::PI;
    (1..=8)
        .find(|&o| PI / 4.0 * (o - 1) as f64 <= nu && nu < PI / 4.0 * o as f64)
        .unwrap_or(8)
}

/// Walks a polyline by arc length. Queries must be non-decreasing.
pub(crate) struct ArcWalker<'a> {
    pts: &'a [Point],
    seg: usize,
    acc: f64,
}

impl<'a> ArcWalker<'a> {
    pub(crate) fn new(pts: &'a [Point]) -> Self {
        ArcWalker { pts, seg: 0, acc: 0.0 }
    }

    pub(crate) fn point_at(&mut self, d: f64) -> Point {
        let pts = self.pts;
        while self.seg + 1 < pts.len() {
            let (a, b) = (pts[self.seg], pts[self.seg + 1]);
            let len = distance(a, b);
            if len > 0.0 && self.acc + len >= d {
                let u = (d - self.acc) / len;
                return Point::new(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y));
            }
            self.acc += len;
            self.seg += 1;
        }
        pts[pts.len() - 1]
    }
}

/// Point at arc length `d` from the start of the polyline.
pub fn point_at_length(pts: &[Point], d: f64) -> Point {
    ArcWalker::new(pts).point_at(d)
}

/// `m + 1` points at arc lengths `0, L/m, …, L`. The endpoints are copied exactly.
pub fn resample_equidistant(pts: &[Point], m: usize) -> Result<Vec<Point>, GeometryError> {
    if m == 0 || pts.is_empty() {
        return Err(GeometryError::InsufficientSamples);
    }
    let total = polyline_length(pts);
    if total == 0.0 {
        return Err(GeometryError::DegenerateGeometry);
    }
    let mut walker = ArcWalker::new(pts);
    let mut out = Vec::with_capacity(m + 1);
    out.push(pts[0]);
    for k in 1..m {
        out.push(walker.point_at(total * k as f64 / m as f64));
    }
    out.push(pts[pts.len() - 1]);
    Ok(out)
}

/// Central-difference velocity at sample `i`, units per ms.
pub fn velocity(s: &FlatPointSequence, i: usize) -> Result<Point, GeometryError> {
    let s = s.samples();
    if i == 0 || i + 1 >= s.len() {
        return Err(GeometryError::InsufficientSamples);
    }
    let dt = s[i + 1].t - s[i - 1].t;
    Ok(Point::new((s[i + 1].x - s[i - 1].x) / dt, (s[i + 1].y - s[i - 1].y) / dt))
}

/// Central difference of velocities at sample `i`, units per ms².
pub fn acceleration(s: &FlatPointSequence, i: usize) -> Result<Point, GeometryError> {
    if i < 2 || i + 2 >= s.len() {
        return Err(GeometryError::InsufficientSamples);
    }
    let v0 = velocity(s, i - 1)?;
    let v1 = velocity(s, i + 1)?;
    let dt = s[i + 1].t - s[i - 1].t;
    Ok(Point::new((v1.x - v0.x) / dt, (v1.y - v0.y) / dt))
}

/// Scalar speed `(|s_{i+1} − s_i| + |s_i − s_{i−1}|) / (t_{i+1} − t_{i−1})`.
pub fn speed(s: &FlatPointSequence, i: usize) -> Result<f64, GeometryError> {
    speed_at(s.samples(), i)
}

pub(crate) fn speed_at(s: &[Sample], i: usize) -> Result<f64, GeometryError> {
    if i == 0 || i + 1 >= s.len() {
        return Err(GeometryError::InsufficientSamples);
    }
    let (a, b, c) = (Point::from(s[i - 1]), Point::from(s[i]), Point::from(s[i + 1]));
    Ok((distance(b, c) + distance(b, a)) / (s[i + 1].t - s[i - 1].t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ink::Gesture;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn distances() {
        assert_eq!(distance(p(0., 0.), p(3., 4.)), 5.0);
        assert_eq!(distance(p(1., 1.), p(1., 1.)), 0.0);
        assert_eq!(distance(p(-1., 0.), p(1., 0.)), 2.0);
    }

    #[test]
    fn path_lengths() {
        let sq = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.), p(0., 0.)];
        assert_eq!(path_length(&sq, 0, 4).unwrap(), 4.0);
        assert_eq!(path_length(&sq, 2, 2).unwrap(), 0.0);
        assert_eq!(path_length(&[p(0., 0.), p(1., 0.), p(2., 0.)], 0, 2).unwrap(), 2.0);
        assert_eq!(path_length(&sq, 3, 1), Err(GeometryError::IndexOutOfRange));
        assert_eq!(path_length(&sq, 0, 5), Err(GeometryError::IndexOutOfRange));
    }

    #[test]
    fn boxes() {
        assert_eq!(bounding_box(&[p(0., 0.), p(2., 3.)]).area(), 6.0);
        let b = bounding_box(&[p(4., 5.)]);
        assert_eq!((b.width(), b.height(), b.area()), (0.0, 0.0, 0.0));
    }

    #[test]
    fn centroids() {
        let c = centroid(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]);
        assert_eq!(c, p(0.5, 0.5));
        assert_eq!(centroid(&[p(3., -2.)]), p(3., -2.));
        assert_eq!(centroid(&[p(0., 0.), p(2., 0.), p(4., 0.)]), p(2., 0.));
    }

    #[test]
    fn vertex_angles() {
        assert_eq!(vertex_angle(&[p(0., 0.), p(1., 0.), p(2., 0.)], 1, 1).unwrap(), 0.0);
        assert!((vertex_angle(&[p(0., 0.), p(1., 0.), p(1., 1.)], 1, 1).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(vertex_angle(&[p(0., 0.), p(1., 0.), p(0., 0.)], 1, 1).unwrap(), PI);
        assert_eq!(
            vertex_angle(&[p(0., 0.), p(0., 0.), p(1., 0.)], 1, 1),
            Err(GeometryError::DegenerateGeometry)
        );
        assert_eq!(vertex_angle(&[p(0., 0.), p(1., 0.)], 1, 1), Err(GeometryError::IndexOutOfRange));
    }

    #[test]
    fn turn_sign_flips_under_mirror() {
        let a = signed_turn_angle(&[p(0., 0.), p(1., 0.), p(1., 1.)], 1).unwrap();
        let b = signed_turn_angle(&[p(0., 0.), p(1., 0.), p(1., -1.)], 1).unwrap();
        assert!((a.abs() - PI / 2.0).abs() < 1e-15);
        assert_eq!(a, -b);
        assert_eq!(signed_turn_angle(&[p(0., 0.), p(1., 0.), p(3., 0.)], 1).unwrap(), 0.0);
        assert_eq!(signed_turn_angle(&[p(0., 0.), p(1., 0.), p(0., 0.)], 1).unwrap(), PI);
    }

    #[test]
    fn resampling() {
        let line = [p(0., 0.), p(2.5, 0.), p(6., 0.)];
        let r = resample_equidistant(&line, 6).unwrap();
        assert_eq!(r.len(), 7);
        for (k, q) in r.iter().enumerate() {
            assert!((q.x - k as f64).abs() < 1e-12 && q.y == 0.0);
        }
        let r = resample_equidistant(&line, 1).unwrap();
        assert_eq!(r, vec![p(0., 0.), p(6., 0.)]);
        assert_eq!(resample_equidistant(&[p(1., 1.), p(1., 1.)], 3), Err(GeometryError::DegenerateGeometry));
    }

    #[test]
    fn octants_are_half_open() {
        assert_eq!(octant(0.0), 1);
        assert_eq!(octant(PI / 4.0), 2);
        assert_eq!(octant(PI / 2.0), 3);
        assert_eq!(octant(PI), 5);
        assert_eq!(octant(2.0 * PI - 1e-9), 8);
        assert_eq!(full_angle(0.0, -1.0), 1.5 * PI);
        assert_eq!(direction(-1.0, -0.0), PI);
    }

    fn line_gesture(n: usize, dt: f64) -> FlatPointSequence {
        let samples = (0..n)
            .map(|i| Sample::new(i as f64, 0.0, 0.5, dt * i as f64))
            .collect();
        Gesture::from_samples(samples).unwrap().flatten()
    }

    #[test]
    fn kinematics_on_uniform_motion() {
        let s = line_gesture(10, 10.0);
        assert_eq!(speed(&s, 1).unwrap(), 0.1);
        assert_eq!(velocity(&s, 4).unwrap(), p(0.1, 0.0));
        for i in 2..8 {
            assert_eq!(acceleration(&s, i).unwrap(), p(0.0, 0.0));
        }
        assert_eq!(speed(&s, 0), Err(GeometryError::InsufficientSamples));
        assert_eq!(acceleration(&s, 1), Err(GeometryError::InsufficientSamples));
        assert_eq!(acceleration(&s, 8), Err(GeometryError::InsufficientSamples));
    }

    #[test]
    fn dedup_collapses_runs_only() {
        let d = dedup(&[p(0., 0.), p(0., 0.), p(1., 0.), p(0., 0.)]);
        assert_eq!(d, vec![p(0., 0.), p(1., 0.), p(0., 0.)]);
    }
}
