//! Sonntag et al. mode-detection features: 14 features, 15 values.

use super::{extract, ratio, sum, Context, FeatureRequest, FeatureSet, FeatureVector};
use crate::geometry::{self, distance, resample_equidistant, GeometryError};
use crate::ink::Gesture;

pub(crate) fn compute(ctx: &Context) -> Vec<Option<f64>> {
    let n = ctx.n() as f64;
    let hull = ctx.hull();
    let (area, perim) = (hull.area, hull.perimeter);
    let radii = ctx.radii();
    let mr = super::mean(radii);

    let mut f = Vec::with_capacity(15);
    f.push(Some(ctx.m() as f64));
    f.push(Some(ctx.length));
    f.push(Some(area));
    f.push(Some(perim));
    f.push(ratio(perim * perim, area));
    match ctx.pca().filter(|a| a.alpha != 0.0) {
        Some(a) => {
            let r = a.beta / a.alpha;
            f.push(Some((1.0 - r * r).sqrt()));
            f.push(Some(r));
        }
        None => f.extend([None, None]),
    }
    f.push(ratio(sum(radii.iter().map(|&r| (r - mr) * (r - mr))), n * mr * mr));
    f.push(ratio(area, ctx.pca().map_or(0.0, |a| a.alpha * a.beta)));
    f.push(ratio(distance(ctx.first(), ctx.last()), perim));
    if ctx.dedup().len() < 3 {
        f.extend([None, None, None]);
    } else {
        let phi = ctx.angles();
        f.push(Some(sum(phi.iter().copied())));
        f.push(Some(sum(phi.iter().map(|a| a.sin() * a.sin()))));
        f.push(Some(sum(phi.iter().map(|a| {
            let s = a.sin();
            s * s * s
        }))));
    }
    match resampled_turns(&ctx.pts) {
        Ok(t) => {
            f.push(Some(sum(t.iter().map(|a| a.sin()))));
            f.push(Some(sum(t.iter().map(|a| a.cos()))));
        }
        Err(_) => f.extend([None, None]),
    }
    f
}

fn resampled_turns(pts: &[geometry::Point]) -> Result<Vec<f64>, GeometryError> {
    let r = resample_equidistant(pts, 6)?;
    Ok((1..6)
        .map(|i| geometry::turn(r[i - 1], r[i], r[i + 1]).unwrap_or(0.0))
        .collect())
}

/// All 15 values of the set.
pub fn sw_all(g: &Gesture) -> FeatureVector {
    extract(g, &FeatureRequest::sets(&[FeatureSet::Sonntag]).expect("syntactic set"))
}

/// Sine and cosine sums of the five turns of the 6-segment resampling.
pub fn sw_resampled_angles(g: &Gesture) -> Result<(f64, f64), GeometryError> {
    let t = resampled_turns(&geometry::points(g.flatten().samples()))?;
    Ok((sum(t.iter().map(|a| a.sin())), sum(t.iter().map(|a| a.cos()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ink::Sample;

    fn stroke(pts: &[(f64, f64)]) -> Gesture {
        Gesture::from_samples(
            pts.iter()
                .enumerate()
                .map(|(i, &(x, y))| Sample::new(x, y, 0.5, 10.0 * i as f64))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn closed_square() {
        let v = sw_all(&stroke(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.), (0., 0.)]));
        assert_eq!(v.get("sonntag.f1"), Some(1.0));
        assert_eq!(v.get("sonntag.f10"), Some(0.0));
        assert!(!v.is_degenerate("sonntag.f10"));
    }

    #[test]
    fn collinear_has_no_curvature() {
        let v = sw_all(&stroke(&[(0., 0.), (1., 0.), (2., 0.)]));
        for id in ["sonntag.f11", "sonntag.f12", "sonntag.f13"] {
            assert_eq!(v.get(id), Some(0.0));
            assert!(!v.is_degenerate(id));
        }
    }

    #[test]
    fn straight_line_resampled() {
        assert_eq!(sw_resampled_angles(&stroke(&[(0., 0.), (3., 0.), (7., 0.)])).unwrap(), (0.0, 5.0));
        let (s, c) = 1.1f64.sin_cos();
        let (a, b) = sw_resampled_angles(&stroke(&[(0., 0.), (3. * c, 3. * s), (7. * c, 7. * s)])).unwrap();
        assert!(a.abs() < 1e-12 && (b - 5.0).abs() < 1e-12);
        assert_eq!(sw_resampled_angles(&stroke(&[(1., 1.)])), Err(GeometryError::DegenerateGeometry));
    }
}
