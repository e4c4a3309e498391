//! HBF49: 49 features for handwritten gesture and symbol recognition.

use std::f64::consts::PI;

use super::{extract, mean, ratio, sum, Context, DownstrokeMode, FeatureRequest, FeatureSet, FeatureVector, HuMode};
use crate::geometry::{distance, full_angle, octant, point_at_length, Point};
use crate::ink::Gesture;

/// Weight of the unit-stride angle in the smoothed angle of f28–f31.
pub const SMOOTHING_GAMMA: f64 = 0.25;

pub(crate) fn compute(ctx: &Context) -> Vec<Option<f64>> {
    let mut f: Vec<Option<f64>> = vec![None; 49];
    let mut set = |i: usize, v: Option<f64>| f[i - 1] = v;
    let pts = &ctx.pts;
    let n = ctx.n();
    let strokes = ctx.g.stroke_count();
    let b = ctx.bbox;
    let (w, h) = (b.width(), b.height());
    let c = b.center();
    let l = h.max(w);
    let len = ctx.length;
    let (first, last) = (ctx.first(), ctx.last());

    for (i, p) in [(1, first), (3, last)] {
        set(i, (l != 0.0).then(|| (p.x - c.x) / l + 0.5));
        set(i + 1, (l != 0.0).then(|| (p.y - c.y) / l + 0.5));
    }
    let f5 = distance(first, last);
    set(5, Some(f5));
    set(6, ratio(last.x - first.x, f5));
    set(7, ratio(last.y - first.y, f5));
    set(8, ratio(f5, len));
    if let Some((x, y)) = ctx.initial_vector() {
        set(9, Some(x));
        set(10, Some(y));
    }
    if len != 0.0 {
        let sm = point_at_length(pts, len / 2.0);
        set(11, ratio(sm.x - (first.x + last.x) / 2.0, w));
        set(12, ratio(sm.y - (first.y + last.y) / 2.0, h));
    }
    let down = sum(pts.windows(2).filter(|s| s[1].y - s[0].y > 0.0).map(|s| distance(s[0], s[1])));
    set(
        13,
        match ctx.params.downstroke {
            DownstrokeMode::Literal => Some(down),
            DownstrokeMode::Proportion => ratio(down, len),
        },
    );
    set(14, Some(strokes as f64));
    set(15, (w != 0.0 || h != 0.0).then(|| h.atan2(w)));
    set(16, Some(len));
    set(17, ratio(w + h, len));
    set(18, Some(mean(ctx.radii())));
    set(19, ctx.average_direction());

    let dedup = ctx.dedup();
    let th = ctx.angles();
    if dedup.len() >= 3 {
        set(20, Some(sum(th.iter().copied())));
        set(21, Some(sum(th.iter().map(|a| a.sin() * a.sin()))));
    }
    let thk = ctx.k_angles();
    let defined: Vec<f64> = thk.iter().flatten().copied().collect();
    if !defined.is_empty() {
        set(22, Some(sum(defined.iter().map(|a| a.sin() * a.sin()))));
        set(23, Some(defined.iter().copied().fold(f64::NEG_INFINITY, f64::max)));
    }

    // segment directions, octant pairs
    let na = n - strokes;
    let mut hist = [0usize; 9];
    for st in ctx.g.strokes() {
        for s in st.samples().windows(2) {
            hist[octant(full_angle(s[1].x - s[0].x, s[1].y - s[0].y))] += 1;
        }
    }
    for (j, (o1, o2)) in [(1, 5), (2, 6), (3, 7), (4, 8)].into_iter().enumerate() {
        set(24 + j, (na != 0).then(|| (hist[o1] + hist[o2]) as f64 / na as f64));
    }

    // smoothed local angles, 4 bins over [0, π]
    let mut bins = [0.0f64; 4];
    let mut vertices = 0usize;
    for i in 1..dedup.len().saturating_sub(1) {
        let t1 = th[i - 1];
        let psi = match thk[i] {
            Some(tk) => SMOOTHING_GAMMA * t1 + (1.0 - SMOOTHING_GAMMA) * tk,
            None => t1,
        };
        let pos = (psi - PI / 8.0) / (PI / 4.0);
        if pos <= 0.0 {
            bins[0] += 1.0;
        } else if pos >= 3.0 {
            bins[3] += 1.0;
        } else {
            let j = pos.floor() as usize;
            let fr = pos - j as f64;
            bins[j] += 1.0 - fr;
            bins[j + 1] += fr;
        }
        vertices += 1;
    }
    for (j, &v) in bins.iter().enumerate() {
        set(28 + j, (na != 0 && vertices != 0).then(|| v / na as f64));
    }

    // fuzzy 3x3 zoning
    let mut cells = [[0.0f64; 3]; 3];
    for p in pts {
        let wx = axis_weights(p.x, b.xmin, w);
        let wy = axis_weights(p.y, b.ymin, h);
        for r in 0..3 {
            for c in 0..3 {
                cells[r][c] += wy[r] * wx[c];
            }
        }
    }
    for r in 0..3 {
        for c in 0..3 {
            set(32 + 3 * r + c, Some(cells[r][c] / n as f64));
        }
    }

    let hu = hu_moments(pts, ctx.params.hu);
    for j in 0..7 {
        set(41 + j, hu.map(|h| h[j]));
    }
    let area = ctx.hull().area;
    set(48, ratio(area, w * h));
    set(49, ratio(len * len, area));
    f
}

/// Membership of one coordinate in the three zones of an axis.
fn axis_weights(v: f64, lo: f64, extent: f64) -> [f64; 3] {
    let u = if extent == 0.0 { 1.0 } else { 3.0 * (v - lo) / extent - 0.5 };
    let u = u.clamp(0.0, 2.0);
    let j = (u.floor() as usize).min(1);
    let fr = u - j as f64;
    let mut out = [0.0; 3];
    out[j] += 1.0 - fr;
    out[j + 1] += fr;
    out
}

fn ipow(x: f64, p: usize) -> f64 {
    let mut r = 1.0;
    for _ in 0..p {
        r *= x;
    }
    r
}

/// The seven Hu invariants of the sample point set.
///
/// `None` in scaled mode when every sample sits on the centroid.
fn hu_moments(pts: &[Point], mode: HuMode) -> Option<[f64; 7]> {
    let n = pts.len() as f64;
    let mu = crate::geometry::centroid(pts);
    let scale = match mode {
        HuMode::Literal => 1.0,
        HuMode::Scaled => {
            let r: Vec<f64> = pts.iter().map(|&p| distance(p, mu)).collect();
            let s = mean(&r);
            if s == 0.0 {
                return None;
            }
            s
        }
    };
    let mut nu = [[0.0f64; 4]; 4];
    for (p, row) in nu.iter_mut().enumerate() {
        for (q, v) in row.iter_mut().enumerate() {
            let m = sum(pts
                .iter()
                .map(|pt| ipow((pt.x - mu.x) / scale, p) * ipow((pt.y - mu.y) / scale, q)));
            *v = m / n.powf(1.0 + (p + q) as f64 / 2.0);
        }
    }
    Some(hu_invariants(&nu))
}

fn hu_invariants(nu: &[[f64; 4]; 4]) -> [f64; 7] {
    let sq = |x: f64| x * x;
    let (n20, n02, n11) = (nu[2][0], nu[0][2], nu[1][1]);
    let (n30, n03, n21, n12) = (nu[3][0], nu[0][3], nu[2][1], nu[1][2]);
    let a = n30 + n12;
    let b = n21 + n03;
    let c = n30 - 3.0 * n12;
    let d = 3.0 * n21 - n03;
    [
        n20 + n02,
        sq(n20 - n02) + 4.0 * sq(n11),
        sq(c) + sq(d),
        sq(a) + sq(b),
        c * a * (sq(a) - 3.0 * sq(b)) + d * b * (3.0 * sq(a) - sq(b)),
        (n20 - n02) * (sq(a) - sq(b)) + 4.0 * n11 * a * b,
        d * a * (sq(a) - 3.0 * sq(b)) - c * b * (3.0 * sq(a) - sq(b)),
    ]
}

fn block(g: &Gesture, range: std::ops::RangeInclusive<usize>) -> FeatureVector {
    let ids: Vec<String> = range.map(|n| format!("hbf49.f{n}")).collect();
    extract(g, &FeatureRequest::ids(&ids).expect("hbf49 ids"))
}

pub fn hbf_all(g: &Gesture) -> FeatureVector {
    extract(g, &FeatureRequest::sets(&[FeatureSet::Hbf49]).expect("syntactic set"))
}

/// f1–f10.
pub fn hbf_position_block(g: &Gesture) -> FeatureVector {
    block(g, 1..=10)
}

/// f11–f13.
pub fn hbf_inflexion_downstroke(g: &Gesture) -> FeatureVector {
    block(g, 11..=13)
}

/// f14–f19.
pub fn hbf_global_block(g: &Gesture) -> FeatureVector {
    block(g, 14..=19)
}

/// f20–f23.
pub fn hbf_angular_block(g: &Gesture) -> FeatureVector {
    block(g, 20..=23)
}

/// f24–f31.
pub fn hbf_direction_histograms(g: &Gesture) -> FeatureVector {
    block(g, 24..=31)
}

/// f32–f40, row-major with row 1 at the smallest y.
pub fn hbf_zoning_block(g: &Gesture) -> FeatureVector {
    block(g, 32..=40)
}

/// f41–f47.
pub fn hbf_hu_block(g: &Gesture) -> FeatureVector {
    block(g, 41..=47)
}

/// f48 and f49.
pub fn hbf_hull_block(g: &Gesture) -> FeatureVector {
    block(g, 48..=49)
}
