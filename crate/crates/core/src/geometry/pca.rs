use super::{bounding_box, centroid, GeometryError, Point};

/// Principal directions of a point set and the extents of the aligned box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalAxes {
    pub p1: Point,
    pub p2: Point,
    /// Larger extent of the aligned box.
    pub alpha: f64,
    /// Smaller extent of the aligned box.
    pub beta: f64,
    /// Center of the aligned box.
    pub center: Point,
    v_mid: f64,
}

impl PrincipalAxes {
    /// `|p2 · (q − c)|`, the offset of `q` from the box center across the main axis.
    pub fn offset_across(&self, q: Point) -> f64 {
        (self.p2.dot(q) - self.v_mid).abs()
    }
}

/// Fails only when every point coincides.
pub fn principal_axes(pts: &[Point]) -> Result<PrincipalAxes, GeometryError> {
    if pts.is_empty() {
        return Err(GeometryError::InsufficientSamples);
    }
    let b = bounding_box(pts);
    if b.width() == 0.0 && b.height() == 0.0 {
        return Err(GeometryError::DegenerateGeometry);
    }
    let mu = centroid(pts);
    let n = pts.len() as f64;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for q in pts {
        let (dx, dy) = (q.x - mu.x, q.y - mu.y);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let (sxx, syy, sxy) = (sxx / n, syy / n, sxy / n);
    let half = 0.5 * (sxx - syy);
    let spread = (half * half + sxy * sxy).sqrt();

    // near-isotropic covariance has no preferred direction; pin it
    let mut p1 = if 2.0 * spread <= 1e-9 * (sxx + syy) {
        Point::new(1.0, 0.0)
    } else {
        let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
        Point::new(theta.cos(), theta.sin())
    };
    if p1.x < -1e-12 || (p1.x.abs() <= 1e-12 && p1.y < 0.0) {
        p1 = Point::new(-p1.x, -p1.y);
    }
    let p2 = Point::new(-p1.y, p1.x);

    let (mut umin, mut umax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for q in pts {
        let u = p1.x * q.x + p1.y * q.y;
        let v = p2.x * q.x + p2.y * q.y;
        umin = umin.min(u);
        umax = umax.max(u);
        vmin = vmin.min(v);
        vmax = vmax.max(v);
    }
    let (eu, ev) = (umax - umin, vmax - vmin);
    let (um, vm) = ((umax + umin) / 2.0, (vmax + vmin) / 2.0);
    Ok(PrincipalAxes {
        p1,
        p2,
        alpha: eu.max(ev),
        beta: eu.min(ev),
        center: Point::new(um * p1.x + vm * p2.x, um * p1.y + vm * p2.y),
        v_mid: vm,
    })
}
