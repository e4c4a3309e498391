//! Willems–Niels feature set, 89 values.

use std::f64::consts::PI;

use super::{extract, mean, ratio, sd, sum, ChainCodeMode, Context, FeatureRequest, FeatureSet, FeatureVector};
use crate::geometry::{distance, full_angle, octant, points, polyline_length};
use crate::ink::Gesture;

struct Out(Vec<Option<f64>>);

impl Out {
    fn put(&mut self, number: usize, v: Option<f64>) {
        self.0[number - 1] = v;
    }

    fn set(&mut self, number: usize, v: f64) {
        self.0[number - 1] = Some(v);
    }

    fn none(&mut self, numbers: &[usize]) {
        for &i in numbers {
            self.0[i - 1] = None;
        }
    }
}

pub(crate) fn compute(ctx: &Context) -> Vec<Option<f64>> {
    let mut f = Out(vec![None; 89]);
    let s = ctx.samples();
    let n = ctx.n();
    let (first, last) = (ctx.first(), ctx.last());
    let b0 = ctx.bbox;
    let (a, b) = (b0.width(), b0.height());
    let len = ctx.length;
    let hull = ctx.hull();
    let radii = ctx.radii();
    let f68 = mean(radii);

    // geometry
    f.set(1, len);
    f.set(2, hull.area);
    f.put(3, ratio(hull.perimeter * hull.perimeter, hull.area));
    let (ap, bp) = if a > b { (a, b) } else { (b, a) };
    if ap != 0.0 {
        f.set(4, (1.0 - (bp * bp) / (ap * ap)).sqrt());
        f.set(5, bp / ap);
    }
    f.put(6, ratio(distance(first, last), len));
    f.put(7, ratio(sum(radii.iter().map(|&r| (r - f68) * (r - f68))), n as f64 * f68 * f68));

    // curvature and perpendicularity
    if ctx.dedup().len() >= 3 {
        let psi = ctx.angles();
        let sin2: Vec<f64> = psi.iter().map(|x| x.sin() * x.sin()).collect();
        f.set(8, sum(psi.iter().copied()));
        f.set(9, mean(psi));
        f.set(10, sd(psi));
        f.set(13, sum(sin2.iter().copied()));
        f.set(14, mean(&sin2));
        f.set(15, sd(&sin2));
        f.set(62, sum(psi.iter().map(|x| x.abs())));
        f.set(63, sum(psi.iter().map(|x| x * x)));
    }
    let psik: Vec<f64> = ctx.k_angles().iter().flatten().copied().collect();
    if !psik.is_empty() {
        let sin2: Vec<f64> = psik.iter().map(|x| x.sin() * x.sin()).collect();
        f.set(21, psik.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        f.set(64, sum(sin2.iter().copied()));
        f.set(65, mean(&sin2));
        f.set(66, sd(&sin2));
    }

    // time
    let pen_down = sum(ctx.g.strokes().iter().map(|st| st.last().t - st.first().t));
    let total = s[n - 1].t - s[0].t;
    f.put(11, ratio(total - pen_down, pen_down));
    f.put(12, ctx.average_direction());
    f.set(24, total);
    if n >= 3 {
        let v = ctx.speeds();
        f.set(25, mean(v));
        f.set(26, sd(v));
        f.set(27, v.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    }
    if n >= 5 {
        let v = ctx.speeds();
        let acc: Vec<f64> = (2..n - 2)
            .map(|i| ((v[i] - v[i - 2]) / (s[i + 1].t - s[i - 1].t)).abs())
            .collect();
        f.set(28, mean(&acc));
        f.set(29, sd(&acc));
        f.set(30, acc.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        f.set(31, acc.iter().copied().fold(f64::INFINITY, f64::min));
    }

    // principal axes
    if let Some(p) = ctx.pca() {
        f.set(16, p.offset_across(ctx.centroid()));
        f.set(17, p.alpha);
        f.set(18, p.p1.y);
        f.set(19, p.p1.x);
        f.put(20, ratio(hull.area, p.alpha * p.beta));
        f.put(67, ratio(p.beta, p.alpha));
    }

    // pressure
    let pressure: Vec<f64> = s.iter().map(|x| x.p).collect();
    f.set(22, mean(&pressure));
    f.set(23, sd(&pressure));

    // cups and offsets
    let cups = ctx.cups();
    f.set(32, cups.count() as f64);
    f.set(33, cups.first_offset());
    f.set(34, cups.last_offset());
    f.put(35, ratio(first.x - b0.xmin, a));
    f.put(36, ratio(last.x - b0.xmin, a));
    f.put(37, ratio(first.y - b0.ymin, b));
    f.put(38, ratio(last.y - b0.ymin, b));

    // straight lines
    let lines = ctx.lines().lengths();
    f.set(39, lines.len() as f64);
    if !lines.is_empty() {
        f.set(40, mean(&lines));
        f.set(41, sd(&lines));
        f.put(43, ratio(lines.iter().copied().fold(f64::NEG_INFINITY, f64::max), len));
    }
    f.put(42, ratio(sum(lines.iter().copied()), len));
    f.set(44, ctx.m() as f64);

    // octants around the box center
    let c = b0.center();
    let mut counts = [0usize; 9];
    for p in &ctx.pts {
        let (dx, dy) = (p.x - c.x, p.y - c.y);
        if dx == 0.0 && dy == 0.0 {
            continue;
        }
        counts[octant(full_angle(dx, dy))] += 1;
    }
    if n >= 2 {
        for o in 1..=8 {
            f.set(44 + o, counts[o] as f64 / (n - 1) as f64);
        }
    }
    f.set(53, ctx.components() as f64);
    f.set(54, ctx.crossings() as f64);

    if let Some((cx, cy)) = ctx.initial_vector() {
        f.set(55, cx);
        f.set(56, cy);
    }
    f.set(57, (a * a + b * b).sqrt());
    f.put(58, (a != 0.0 || b != 0.0).then(|| b.atan2(a)));
    let f59 = distance(first, last);
    f.set(59, f59);
    f.put(60, ratio(last.x - first.x, f59));
    f.put(61, ratio(last.y - first.y, f59));
    f.set(68, f68);
    f.set(69, sd(radii));

    // chain codes
    let mut classes = [0usize; 9];
    let mut segments = 0usize;
    for st in ctx.g.strokes() {
        for w in st.samples().windows(2) {
            let (dx, dy) = (w[1].x - w[0].x, w[1].y - w[0].y);
            if dx == 0.0 && dy == 0.0 {
                continue;
            }
            classes[octant(full_angle(dx, dy))] += 1;
            segments += 1;
        }
    }
    for c in 1..=8 {
        let centre = (c as f64 - 0.5) * PI / 4.0;
        match ctx.params.chaincode {
            ChainCodeMode::Literal => {
                f.set(68 + 2 * c, centre.sin());
                f.set(69 + 2 * c, centre.cos());
            }
            ChainCodeMode::Weighted if segments > 0 => {
                let w = classes[c] as f64 / segments as f64;
                f.set(68 + 2 * c, w * centre.sin());
                f.set(69 + 2 * c, w * centre.cos());
            }
            ChainCodeMode::Weighted => f.none(&[68 + 2 * c, 69 + 2 * c]),
        }
    }

    // per-stroke statistics
    let lengths: Vec<f64> = ctx.g.strokes().iter().map(|st| polyline_length(&points(st.samples()))).collect();
    f.set(86, mean(&lengths));
    f.set(87, sd(&lengths));
    if ctx.g.strokes().iter().all(|st| st.len() >= 2) {
        let dirs: Vec<f64> = ctx
            .g
            .strokes()
            .iter()
            .map(|st| {
                let d: Vec<f64> = st
                    .samples()
                    .windows(2)
                    .map(|w| crate::geometry::direction(w[1].x - w[0].x, w[1].y - w[0].y))
                    .collect();
                mean(&d)
            })
            .collect();
        f.set(88, mean(&dirs));
        f.set(89, sd(&dirs));
    }
    f.0
}

fn block(g: &Gesture, numbers: &[usize]) -> FeatureVector {
    let ids: Vec<String> = numbers.iter().map(|n| format!("willems.f{n}")).collect();
    extract(g, &FeatureRequest::ids(&ids).expect("willems ids"))
}

fn span(a: usize, b: usize) -> impl Iterator<Item = usize> {
    a..=b
}

pub fn wn_all(g: &Gesture) -> FeatureVector {
    extract(g, &FeatureRequest::sets(&[FeatureSet::Willems]).expect("syntactic set"))
}

/// f1–f7 and f55–f61.
pub fn wn_geometry_block(g: &Gesture) -> FeatureVector {
    block(g, &span(1, 7).chain(span(55, 61)).collect::<Vec<_>>())
}

/// f8–f10, f13–f15, f21 and f62–f66.
pub fn wn_curvature_block(g: &Gesture) -> FeatureVector {
    block(g, &[8, 9, 10, 13, 14, 15, 21, 62, 63, 64, 65, 66])
}

/// f16–f20 and f67.
pub fn wn_principal_block(g: &Gesture) -> FeatureVector {
    block(g, &[16, 17, 18, 19, 20, 67])
}

/// f11 and f24–f31.
pub fn wn_temporal_block(g: &Gesture) -> FeatureVector {
    block(g, &std::iter::once(11).chain(span(24, 31)).collect::<Vec<_>>())
}

/// f22 and f23.
pub fn wn_pressure_block(g: &Gesture) -> FeatureVector {
    block(g, &[22, 23])
}

/// f32–f38 and f44.
pub fn wn_events_block(g: &Gesture) -> FeatureVector {
    block(g, &span(32, 38).chain(std::iter::once(44)).collect::<Vec<_>>())
}

/// f39–f43.
pub fn wn_lines_block(g: &Gesture) -> FeatureVector {
    block(g, &span(39, 43).collect::<Vec<_>>())
}

/// f45–f54.
pub fn wn_structure_block(g: &Gesture) -> FeatureVector {
    block(g, &span(45, 54).collect::<Vec<_>>())
}

/// f7, f68 and f69.
pub fn wn_centroidal_block(g: &Gesture) -> FeatureVector {
    block(g, &[7, 68, 69])
}

/// f70–f85.
pub fn wn_chaincode_block(g: &Gesture) -> FeatureVector {
    block(g, &span(70, 85).collect::<Vec<_>>())
}

/// f12 and f86–f89.
pub fn wn_stroke_stats_block(g: &Gesture) -> FeatureVector {
    block(g, &std::iter::once(12).chain(span(86, 89)).collect::<Vec<_>>())
}
