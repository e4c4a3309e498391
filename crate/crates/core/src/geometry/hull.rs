use std::cmp::Ordering;

use super::{distance, Point};

/// Convex hull with counter-clockwise vertices, collinear points dropped.
///
/// The vertex list starts at the lexicographically smallest `(x, y)` point.
/// A collinear input yields its two extreme points, area 0 and a perimeter of
/// twice the segment length.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexHull {
    pub vertices: Vec<Point>,
    pub area: f64,
    pub perimeter: f64,
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn lex(a: &Point, b: &Point) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

/// Graham scan.
pub fn convex_hull(pts: &[Point]) -> ConvexHull {
    let mut ps: Vec<Point> = pts.to_vec();
    ps.sort_by(lex);
    ps.dedup();
    if ps.len() <= 1 {
        return ConvexHull { vertices: ps, area: 0.0, perimeter: 0.0 };
    }

    // pivot: lowest y, then lowest x
    let pi = (0..ps.len())
        .min_by(|&i, &j| ps[i].y.total_cmp(&ps[j].y).then(ps[i].x.total_cmp(&ps[j].x)))
        .unwrap();
    let pivot = ps.swap_remove(pi);
    // polar angle from the pivot lies in [0, π); an explicit key keeps the order total
    // where floating-point cross products of near-collinear points are not transitive
    let mut keyed: Vec<(f64, f64, Point)> = ps
        .into_iter()
        .map(|p| ((p.y - pivot.y).atan2(p.x - pivot.x), distance(pivot, p), p))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let ps = keyed.into_iter().map(|(_, _, p)| p);

    let mut stack = vec![pivot];
    for p in ps {
        while stack.len() >= 2 && cross(stack[stack.len() - 2], stack[stack.len() - 1], p) <= 0.0 {
            stack.pop();
        }
        stack.push(p);
    }

    let start = (0..stack.len()).min_by(|&i, &j| lex(&stack[i], &stack[j])).unwrap();
    stack.rotate_left(start);

    let h = &stack;
    if h.len() == 2 {
        return ConvexHull { perimeter: 2.0 * distance(h[0], h[1]), vertices: stack, area: 0.0 };
    }
    let mut area2 = 0.0;
    let mut perimeter = 0.0;
    for i in 0..h.len() {
        let j = (i + 1) % h.len();
        area2 += h[i].x * h[j].y - h[j].x * h[i].y;
    }
    for i in 0..h.len() {
        perimeter += distance(h[i], h[(i + 1) % h.len()]);
    }
    ConvexHull { area: area2.abs() / 2.0, perimeter, vertices: stack }
}
