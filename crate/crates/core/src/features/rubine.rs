//! Rubine's 13 gesture features, evaluated on the flattened sequence.

use super::{extract, ratio, sum, Context, FeatureRequest, FeatureSet, FeatureVector};
use crate::geometry::{distance, turn, GeometryError};
use crate::ink::{Gesture, Sample};

pub(crate) fn compute(ctx: &Context) -> Vec<Option<f64>> {
    let (w, h) = (ctx.bbox.width(), ctx.bbox.height());
    let (first, last) = (ctx.first(), ctx.last());
    let mut f = Vec::with_capacity(13);
    match ctx.initial_vector() {
        Some((c, s)) => f.extend([Some(c), Some(s)]),
        None => f.extend([None, None]),
    }
    f.push(Some((w * w + h * h).sqrt()));
    f.push((w != 0.0 || h != 0.0).then(|| h.atan2(w)));
    let f5 = distance(first, last);
    f.push(Some(f5));
    f.push(ratio(last.x - first.x, f5));
    f.push(ratio(last.y - first.y, f5));
    f.push(Some(ctx.length));
    let d = ctx.dedup();
    if d.len() < 3 {
        f.extend([None, None, None]);
    } else {
        let th: Vec<f64> = d
            .windows(3)
            .map(|w| turn(w[0], w[1], w[2]).expect("dedup arms are non-zero"))
            .collect();
        f.push(Some(sum(th.iter().copied())));
        f.push(Some(sum(th.iter().map(|a| a.abs()))));
        f.push(Some(sum(th.iter().map(|a| a * a))));
    }
    f.push(speed_profile(ctx.samples()).ok().map(|p| p.into_iter().fold(f64::NEG_INFINITY, f64::max)));
    let s = ctx.samples();
    f.push(Some(s[s.len() - 1].t - s[0].t));
    f
}

fn speed_profile(s: &[Sample]) -> Result<Vec<f64>, GeometryError> {
    if s.len() < 2 {
        return Err(GeometryError::InsufficientSamples);
    }
    Ok(s.windows(2)
        .map(|w| {
            let (dx, dy, dt) = (w[1].x - w[0].x, w[1].y - w[0].y, w[1].t - w[0].t);
            (dx * dx + dy * dy) / (dt * dt)
        })
        .collect())
}

pub fn rubine_all(g: &Gesture) -> FeatureVector {
    extract(g, &FeatureRequest::sets(&[FeatureSet::Rubine]).expect("syntactic set"))
}

/// Squared speed between consecutive samples of the flattened sequence.
pub fn rubine_speed_profile(g: &Gesture) -> Result<Vec<f64>, GeometryError> {
    speed_profile(g.flatten().samples())
}
