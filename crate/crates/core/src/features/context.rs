use std::cell::OnceCell;

use super::Params;
use crate::geometry::{
    self, bounding_box, centroid, convex_hull, dedup, distance, points, polyline_length, principal_axes, BoundingBox,
    ConvexHull, CupSet, Point, PrincipalAxes, StraightLineSet,
};
use crate::ink::{FlatPointSequence, Gesture, Sample};

/// Shared intermediate results for one extraction call.
pub(crate) struct Context<'a> {
    pub g: &'a Gesture,
    pub params: &'a Params,
    pub flat: FlatPointSequence,
    pub pts: Vec<Point>,
    pub bbox: BoundingBox,
    pub length: f64,
    hull: OnceCell<ConvexHull>,
    pca: OnceCell<Option<PrincipalAxes>>,
    centroid: OnceCell<Point>,
    radii: OnceCell<Vec<f64>>,
    dedup: OnceCell<Vec<Point>>,
    angles: OnceCell<Vec<f64>>,
    k_angles: OnceCell<Vec<Option<f64>>>,
    speeds: OnceCell<Vec<f64>>,
    lines: OnceCell<StraightLineSet>,
    cups: OnceCell<CupSet>,
    crossings: OnceCell<usize>,
    components: OnceCell<usize>,
}

impl<'a> Context<'a> {
    pub fn new(g: &'a Gesture, params: &'a Params) -> Self {
        let flat = g.flatten();
        let pts = points(flat.samples());
        let bbox = bounding_box(&pts);
        let length = polyline_length(&pts);
        Context {
            g,
            params,
            flat,
            pts,
            bbox,
            length,
            hull: OnceCell::new(),
            pca: OnceCell::new(),
            centroid: OnceCell::new(),
            radii: OnceCell::new(),
            dedup: OnceCell::new(),
            angles: OnceCell::new(),
            k_angles: OnceCell::new(),
            speeds: OnceCell::new(),
            lines: OnceCell::new(),
            cups: OnceCell::new(),
            crossings: OnceCell::new(),
            components: OnceCell::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.pts.len()
    }

    pub fn m(&self) -> usize {
        self.g.stroke_count()
    }

    pub fn samples(&self) -> &[Sample] {
        self.flat.samples()
    }

    pub fn first(&self) -> Point {
        self.pts[0]
    }

    pub fn last(&self) -> Point {
        self.pts[self.pts.len() - 1]
    }

    pub fn hull(&self) -> &ConvexHull {
        self.hull.get_or_init(|| convex_hull(&self.pts))
    }

    pub fn pca(&self) -> Option<&PrincipalAxes> {
        self.pca.get_or_init(|| principal_axes(&self.pts).ok()).as_ref()
    }

    pub fn centroid(&self) -> Point {
        *self.centroid.get_or_init(|| centroid(&self.pts))
    }

    /// Distance of every sample to the centroid.
    pub fn radii(&self) -> &[f64] {
        self.radii.get_or_init(|| {
            let mu = self.centroid();
            self.pts.iter().map(|&p| distance(p, mu)).collect()
        })
    }

    /// Flat sequence without consecutive repeated positions.
    pub fn dedup(&self) -> &[Point] {
        self.dedup.get_or_init(|| dedup(&self.pts))
    }

    /// Unsigned angle at each interior vertex of [`Self::dedup`]; entry `i` is vertex `i + 1`.
    pub fn angles(&self) -> &[f64] {
        self.angles.get_or_init(|| {
            let d = self.dedup();
            (1..d.len().saturating_sub(1))
                .map(|i| geometry::vertex_angle(d, i, 1).expect("dedup arms are non-zero"))
                .collect()
        })
    }

    /// k-strided angle at every vertex of [`Self::dedup`], `None` where undefined.
    pub fn k_angles(&self) -> &[Option<f64>] {
        self.k_angles.get_or_init(|| {
            let d = self.dedup();
            let k = self.params.k;
            (0..d.len()).map(|i| geometry::vertex_angle(d, i, k).ok()).collect()
        })
    }

    /// Willems scalar speed at samples `1..n-1`.
    pub fn speeds(&self) -> &[f64] {
        self.speeds.get_or_init(|| {
            let s = self.samples();
            (1..s.len().saturating_sub(1))
                .map(|i| geometry::speed_at(s, i).expect("interior sample"))
                .collect()
        })
    }

    pub fn lines(&self) -> &StraightLineSet {
        self.lines
            .get_or_init(|| geometry::detect_straight_lines(self.g, self.params.window, self.params.threshold))
    }

    pub fn cups(&self) -> &CupSet {
        self.cups.get_or_init(|| geometry::detect_cups(&self.pts))
    }

    pub fn crossings(&self) -> usize {
        *self.crossings.get_or_init(|| geometry::count_crossings(self.g))
    }

    pub fn components(&self) -> usize {
        *self.components.get_or_init(|| {
            let eps = self
                .params
                .epsilon
                .unwrap_or(geometry::CONNECT_FRACTION * self.bbox.diagonal());
            geometry::connected_components(self.g, eps)
        })
    }

    /// Unit vector components of `s_2 − s_0`.
    pub fn initial_vector(&self) -> Option<(f64, f64)> {
        if self.n() < 3 {
            return None;
        }
        let (a, b) = (self.pts[0], self.pts[2]);
        let d = distance(a, b);
        (d > 0.0).then(|| ((b.x - a.x) / d, (b.y - a.y) / d))
    }

    /// Mean direction of the flat segments.
    pub fn average_direction(&self) -> Option<f64> {
        if self.n() < 2 {
            return None;
        }
        let dirs: Vec<f64> = self
            .pts
            .windows(2)
            .map(|w| geometry::direction(w[1].x - w[0].x, w[1].y - w[0].y))
            .collect();
        Some(super::mean(&dirs))
    }
}
