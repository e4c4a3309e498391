use super::{bounding_box, dedup, distance, points, Point};
use crate::ink::Gesture;

/// Touch tolerance as a fraction of the bounding-box diagonal.
pub const CONNECT_FRACTION: f64 = 0.01;

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    a.x.min(b.x) <= p.x && p.x <= a.x.max(b.x) && a.y.min(b.y) <= p.y && p.y <= a.y.max(b.y)
}

/// True when the closed segments share at least one point.
pub fn segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    let d1 = orient(b1, b2, a1);
    let d2 = orient(b1, b2, a2);
    let d3 = orient(a1, a2, b1);
    let d4 = orient(a1, a2, b2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(b1, b2, a1))
        || (d2 == 0.0 && on_segment(b1, b2, a2))
        || (d3 == 0.0 && on_segment(a1, a2, b1))
        || (d4 == 0.0 && on_segment(a1, a2, b2))
}

struct Seg {
    stroke: usize,
    index: usize,
    closed: bool,
    count: usize,
    a: Point,
    b: Point,
}

/// Intersecting pairs of pen-down segments.
///
/// Segments sharing a vertex inside one stroke are skipped: consecutive
/// segments, and the first and last segment of a closed stroke.
pub fn count_crossings(g: &Gesture) -> usize {
    let mut segs = Vec::new();
    for (si, st) in g.strokes().iter().enumerate() {
        let pts = dedup(&points(st.samples()));
        let closed = pts.len() > 2 && pts[0] == pts[pts.len() - 1];
        let count = pts.len().saturating_sub(1);
        for k in 0..count {
            segs.push(Seg { stroke: si, index: k, closed, count, a: pts[k], b: pts[k + 1] });
        }
    }
    let mut total = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (s, t) = (&segs[i], &segs[j]);
            if s.stroke == t.stroke && (t.index == s.index + 1 || (s.closed && s.index == 0 && t.index == s.count - 1)) {
                continue;
            }
            if segments_intersect(s.a, s.b, t.a, t.b) {
                total += 1;
            }
        }
    }
    total
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let ll = dx * dx + dy * dy;
    if ll == 0.0 {
        return distance(p, a);
    }
    let u = (((p.x - a.x) * dx + (p.y - a.y) * dy) / ll).clamp(0.0, 1.0);
    distance(p, Point::new(a.x + u * dx, a.y + u * dy))
}

/// Minimum distance between two polylines (a single point counts as a polyline).
pub fn stroke_distance(p: &[Point], q: &[Point]) -> f64 {
    match (p.len(), q.len()) {
        (1, 1) => distance(p[0], q[0]),
        (1, _) => q.windows(2).map(|w| point_segment_distance(p[0], w[0], w[1])).fold(f64::INFINITY, f64::min),
        (_, 1) => stroke_distance(q, p),
        _ => {
            let mut best = f64::INFINITY;
            for a in p.windows(2) {
                for b in q.windows(2) {
                    if segments_intersect(a[0], a[1], b[0], b[1]) {
                        return 0.0;
                    }
                    best = best
                        .min(point_segment_distance(a[0], b[0], b[1]))
                        .min(point_segment_distance(a[1], b[0], b[1]))
                        .min(point_segment_distance(b[0], a[0], a[1]))
                        .min(point_segment_distance(b[1], a[0], a[1]));
                }
            }
            best
        }
    }
}

pub fn default_touch_tolerance(g: &Gesture) -> f64 {
    CONNECT_FRACTION * bounding_box(&points(g.flatten().samples())).diagonal()
}

/// Groups of strokes linked by a distance of at most `eps`.
pub fn connected_components(g: &Gesture, eps: f64) -> usize {
    let strokes: Vec<Vec<Point>> = g.strokes().iter().map(|s| points(s.samples())).collect();
    let m = strokes.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for i in 0..m {
        for j in i + 1..m {
            if find(&mut parent, i) != find(&mut parent, j) && stroke_distance(&strokes[i], &strokes[j]) <= eps {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[rj] = ri;
            }
        }
    }
    (0..m).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ink::Sample;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn gesture(strokes: &[&[(f64, f64)]]) -> Gesture {
        let mut t = 0.0;
        Gesture::new(
            strokes
                .iter()
                .map(|st| {
                    st.iter()
                        .map(|&(x, y)| {
                            t += 10.0;
                            Sample::new(x, y, 0.5, t)
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn intersection_cases() {
        assert!(segments_intersect(p(0., 0.), p(1., 1.), p(0., 1.), p(1., 0.)));
        assert!(!segments_intersect(p(0., 0.), p(1., 0.), p(0., 1.), p(1., 1.)));
        assert!(segments_intersect(p(0., 0.), p(2., 0.), p(1., 0.), p(3., 0.)));
        assert!(!segments_intersect(p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.)));
    }

    #[test]
    fn crossings_of_simple_shapes() {
        let x = gesture(&[&[(0., 0.), (2., 2.)], &[(0., 2.), (2., 0.)]]);
        assert_eq!(count_crossings(&x), 1);
        let open_square = gesture(&[&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]]);
        assert_eq!(count_crossings(&open_square), 0);
        let closed_square = gesture(&[&[(0., 0.), (1., 0.), (1., 1.), (0., 1.), (0., 0.)]]);
        assert_eq!(count_crossings(&closed_square), 0);
    }

    #[test]
    fn components() {
        let one = gesture(&[&[(0., 0.), (1., 0.)]]);
        assert_eq!(connected_components(&one, default_touch_tolerance(&one)), 1);
        let far = gesture(&[&[(0., 0.), (1., 0.)], &[(10., 10.), (11., 10.)]]);
        assert_eq!(connected_components(&far, default_touch_tolerance(&far)), 2);
        let x = gesture(&[&[(0., 0.), (2., 2.)], &[(0., 2.), (2., 0.)]]);
        assert_eq!(connected_components(&x, default_touch_tolerance(&x)), 1);
        let dots = gesture(&[&[(0., 0.)], &[(0., 0.5)], &[(0., 10.)]]);
        assert_eq!(connected_components(&dots, 0.5), 2);
    }
}
