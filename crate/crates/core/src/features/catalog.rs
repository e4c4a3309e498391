//! Identity, category and invariance flags of every feature.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeatureSet {
    Sonntag,
    Rubine,
    Willems,
    Hbf49,
    Semantic,
}

impl FeatureSet {
    pub const SYNTACTIC: [FeatureSet; 4] = [FeatureSet::Sonntag, FeatureSet::Rubine, FeatureSet::Willems, FeatureSet::Hbf49];

    pub fn name(self) -> &'static str {
        match self {
            FeatureSet::Sonntag => "sonntag",
            FeatureSet::Rubine => "rubine",
            FeatureSet::Willems => "willems",
            FeatureSet::Hbf49 => "hbf49",
            FeatureSet::Semantic => "semantic",
        }
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureSet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sonntag" => Ok(FeatureSet::Sonntag),
            "rubine" => Ok(FeatureSet::Rubine),
            "willems" => Ok(FeatureSet::Willems),
            "hbf49" => Ok(FeatureSet::Hbf49),
            "semantic" => Ok(FeatureSet::Semantic),
            _ => Err(format!("unknown feature set '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Angle,
    Space,
    Centroidal,
    Temporal,
    Pressure,
    Trajectory,
    Meta,
    Semantic,
}

impl Category {
    pub const ALL: [Category; 8] = [
        Category::Angle,
        Category::Space,
        Category::Centroidal,
        Category::Temporal,
        Category::Pressure,
        Category::Trajectory,
        Category::Meta,
        Category::Semantic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Angle => "angle",
            Category::Space => "space",
            Category::Centroidal => "centroidal",
            Category::Temporal => "temporal",
            Category::Pressure => "pressure",
            Category::Trajectory => "trajectory",
            Category::Meta => "meta",
            Category::Semantic => "semantic",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown category '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureDescriptor {
    /// `<set>.f<N>` with an optional `.sin` / `.cos` part.
    pub id: String,
    pub set: FeatureSet,
    /// Feature number within its set.
    pub number: usize,
    pub name: &'static str,
    pub category: Category,
    pub translation_invariant: bool,
    pub scale_invariant: bool,
    pub rotation_invariant: bool,
    /// Below this many samples the value is 0 and flagged degenerate.
    pub min_samples: usize,
}

// invariance shorthands
const TSR: &str = "tsr";
const TS: &str = "ts";
const TR: &str = "tr";
const T: &str = "t";

use Category::{Angle as A, Centroidal as C, Meta as M, Pressure as P, Semantic as X, Space as S, Temporal as Tm,
    Trajectory as Tr};

type Row = (&'static str, &'static str, Category, &'static str, usize);

const SONNTAG: &[Row] = &[
    ("f1", "Number of strokes", M, TSR, 1),
    ("f2", "Length", S, TR, 1),
    ("f3", "Convex hull area", S, TR, 1),
    ("f4", "Convex hull perimeter", S, TR, 1),
    ("f5", "Compactness", S, TSR, 3),
    ("f6", "Eccentricity", S, TSR, 2),
    ("f7", "Ratio of principal axes", S, TSR, 2),
    ("f8", "Circular variance", A, TSR, 1),
    ("f9", "Rectangularity", A, TSR, 3),
    ("f10", "Closure", Tr, TSR, 2),
    ("f11", "Curvature", A, TSR, 3),
    ("f12", "Perpendicularity", A, TSR, 3),
    ("f13", "Signed perpendicularity", A, TSR, 3),
    ("f14.sin", "Angles after resampling (sine sum)", A, TSR, 2),
    ("f14.cos", "Angles after resampling (cosine sum)", A, TSR, 2),
];

const RUBINE: &[Row] = &[
    ("f1", "Cosine of initial angle", A, TS, 3),
    ("f2", "Sine of initial angle", A, TS, 3),
    ("f3", "Length of bounding box diagonal", S, T, 1),
    ("f4", "Angle of bounding box diagonal", A, TS, 1),
    ("f5", "Distance between first and last point", S, TR, 1),
    ("f6", "Cosine of first to last point angle", A, TS, 2),
    ("f7", "Sine of first to last point angle", A, TS, 2),
    ("f8", "Total gesture length", S, TR, 1),
    ("f9", "Total angle traversed", A, TSR, 3),
    ("f10", "Sum of absolute angles", A, TSR, 3),
    ("f11", "Sum of squared angles", A, TSR, 3),
    ("f12", "Maximum speed squared", Tm, TR, 2),
    ("f13", "Duration", Tm, TSR, 1),
];

const WILLEMS: &[Row] = &[
    ("f1", "Length", S, TR, 1),
    ("f2", "Convex hull area", S, TR, 1),
    ("f3", "Compactness", S, TSR, 3),
    ("f4", "Eccentricity of co-ordinate axes", S, TS, 1),
    ("f5", "Ratio of co-ordinate axes", S, TS, 1),
    ("f6", "Closure", Tr, TSR, 2),
    ("f7", "Circular variance", A, TSR, 1),
    ("f8", "Curvature", A, TSR, 3),
    ("f9", "Average curvature", A, TSR, 3),
    ("f10", "Standard deviation of curvature", A, TSR, 3),
    ("f11", "Pen up/down ratio", Tm, TSR, 1),
    ("f12", "Average direction", Tr, TS, 2),
    ("f13", "Perpendicularity", A, TSR, 3),
    ("f14", "Average perpendicularity", A, TSR, 3),
    ("f15", "Standard deviation of perpendicularity", A, TSR, 3),
    ("f16", "Centroid offset", C, TR, 2),
    ("f17", "Length of first principal axis", S, TR, 2),
    ("f18", "Sine orientation of principal axis", A, TS, 2),
    ("f19", "Cosine orientation of principal axis", A, TS, 2),
    ("f20", "Rectangularity", A, TSR, 3),
    ("f21", "Maximum angular difference", A, TSR, 5),
    ("f22", "Average pressure", P, TSR, 1),
    ("f23", "Standard deviation of pressure", P, TSR, 1),
    ("f24", "Duration", Tm, TSR, 1),
    ("f25", "Average velocity", Tm, TR, 3),
    ("f26", "Standard deviation of velocity", Tm, TR, 3),
    ("f27", "Maximum velocity", Tm, TR, 3),
    ("f28", "Average acceleration", Tm, TR, 5),
    ("f29", "Standard deviation of acceleration", Tm, TR, 5),
    ("f30", "Maximum acceleration", Tm, TR, 5),
    ("f31", "Minimum acceleration", Tm, TR, 5),
    ("f32", "Number of cups", Tr, TS, 3),
    ("f33", "Offset of the first cup", Tr, TS, 3),
    ("f34", "Offset of the last cup", Tr, TS, 3),
    ("f35", "Initial horizontal offset", S, TS, 1),
    ("f36", "Final horizontal offset", S, TS, 1),
    ("f37", "Initial vertical offset", S, TS, 1),
    ("f38", "Final vertical offset", S, TS, 1),
    ("f39", "Number of straight lines", M, TSR, 2),
    ("f40", "Average length of straight lines", S, TR, 2),
    ("f41", "Standard deviation of straight line length", M, TR, 2),
    ("f42", "Straight line ratio", M, TSR, 2),
    ("f43", "Largest straight line ratio", M, TSR, 2),
    ("f44", "Number of pen down events", Tr, TSR, 1),
    ("f45", "Sample ratio octant 1", S, TS, 2),
    ("f46", "Sample ratio octant 2", S, TS, 2),
    ("f47", "Sample ratio octant 3", S, TS, 2),
    ("f48", "Sample ratio octant 4", S, TS, 2),
    ("f49", "Sample ratio octant 5", S, TS, 2),
    ("f50", "Sample ratio octant 6", S, TS, 2),
    ("f51", "Sample ratio octant 7", S, TS, 2),
    ("f52", "Sample ratio octant 8", S, TS, 2),
    ("f53", "Number of connected components", M, TSR, 1),
    ("f54", "Number of crossings", M, TSR, 1),
    ("f55", "Cosine of initial angle", A, TS, 3),
    ("f56", "Sine of initial angle", A, TS, 3),
    ("f57", "Length of bounding box diagonal", S, T, 1),
    ("f58", "Angle of bounding box diagonal", A, TS, 1),
    ("f59", "Length between first and last point", S, TR, 1),
    ("f60", "Cosine of first to last point", A, TS, 2),
    ("f61", "Sine of first to last point", A, TS, 2),
    ("f62", "Absolute curvature", A, TSR, 3),
    ("f63", "Squared curvature", A, TSR, 3),
    ("f64", "Macro perpendicularity", A, TSR, 5),
    ("f65", "Average macro perpendicularity", A, TSR, 5),
    ("f66", "Standard deviation of macro perpendicularity", A, TSR, 5),
    ("f67", "Ratio of principal axes", S, TSR, 2),
    ("f68", "Average centroidal radius", C, TR, 1),
    ("f69", "Standard deviation of centroidal radius", C, TR, 1),
    ("f70", "Chain code sine, class 1", Tr, TS, 2),
    ("f71", "Chain code cosine, class 1", Tr, TS, 2),
    ("f72", "Chain code sine, class 2", Tr, TS, 2),
    ("f73", "Chain code cosine, class 2", Tr, TS, 2),
    ("f74", "Chain code sine, class 3", Tr, TS, 2),
    ("f75", "Chain code cosine, class 3", Tr, TS, 2),
    ("f76", "Chain code sine, class 4", Tr, TS, 2),
    ("f77", "Chain code cosine, class 4", Tr, TS, 2),
    ("f78", "Chain code sine, class 5", Tr, TS, 2),
    ("f79", "Chain code cosine, class 5", Tr, TS, 2),
    ("f80", "Chain code sine, class 6", Tr, TS, 2),
    ("f81", "Chain code cosine, class 6", Tr, TS, 2),
    ("f82", "Chain code sine, class 7", Tr, TS, 2),
    ("f83", "Chain code cosine, class 7", Tr, TS, 2),
    ("f84", "Chain code sine, class 8", Tr, TS, 2),
    ("f85", "Chain code cosine, class 8", Tr, TS, 2),
    ("f86", "Average stroke length", S, TR, 1),
    ("f87", "Standard deviation of stroke length", S, TR, 1),
    ("f88", "Average stroke direction", Tr, TS, 2),
    ("f89", "Standard deviation of stroke direction", Tr, TS, 2),
];

const HBF49: &[Row] = &[
    ("f1", "Horizontal position of first point", S, TS, 1),
    ("f2", "Vertical position of first point", S, TS, 1),
    ("f3", "Horizontal position of last point", S, TS, 1),
    ("f4", "Vertical position of last point", S, TS, 1),
    ("f5", "First to last point vector length", S, TR, 1),
    ("f6", "First to last point vector, x component", A, TS, 2),
    ("f7", "First to last point vector, y component", A, TS, 2),
    ("f8", "Closure", Tr, TSR, 2),
    ("f9", "Initial vector, x component", A, TS, 3),
    ("f10", "Initial vector, y component", A, TS, 3),
    ("f11", "Horizontal inflexion", Tr, TS, 2),
    ("f12", "Vertical inflexion", Tr, TS, 2),
    ("f13", "Downstroke proportion", Tr, TS, 2),
    ("f14", "Number of strokes", M, TSR, 1),
    ("f15", "Angle of bounding box diagonal", A, TS, 1),
    ("f16", "Trajectory length", S, TR, 1),
    ("f17", "Ratio of half-perimeter to trajectory length", Tr, TS, 2),
    ("f18", "Deviation", C, TR, 1),
    ("f19", "Average direction", Tr, TS, 2),
    ("f20", "Curvature", A, TSR, 3),
    ("f21", "Perpendicularity", A, TSR, 3),
    ("f22", "k-Perpendicularity", A, TSR, 5),
    ("f23", "Maximum k-angle", A, TSR, 5),
    ("f24", "Dominant direction, horizontal", A, TS, 2),
    ("f25", "Dominant direction, rising diagonal", A, TS, 2),
    ("f26", "Dominant direction, vertical", A, TS, 2),
    ("f27", "Dominant direction, falling diagonal", A, TS, 2),
    ("f28", "Local direction change, bin 1", A, TSR, 3),
    ("f29", "Local direction change, bin 2", A, TSR, 3),
    ("f30", "Local direction change, bin 3", A, TSR, 3),
    ("f31", "Local direction change, bin 4", A, TSR, 3),
    ("f32", "Zoning cell 1,1", S, TS, 1),
    ("f33", "Zoning cell 1,2", S, TS, 1),
    ("f34", "Zoning cell 1,3", S, TS, 1),
    ("f35", "Zoning cell 2,1", S, TS, 1),
    ("f36", "Zoning cell 2,2", S, TS, 1),
    ("f37", "Zoning cell 2,3", S, TS, 1),
    ("f38", "Zoning cell 3,1", S, TS, 1),
    ("f39", "Zoning cell 3,2", S, TS, 1),
    ("f40", "Zoning cell 3,3", S, TS, 1),
    ("f41", "Hu moment 1", C, TSR, 1),
    ("f42", "Hu moment 2", C, TSR, 1),
    ("f43", "Hu moment 3", C, TSR, 1),
    ("f44", "Hu moment 4", C, TSR, 1),
    ("f45", "Hu moment 5", C, TSR, 1),
    ("f46", "Hu moment 6", C, TSR, 1),
    ("f47", "Hu moment 7", C, TSR, 1),
    ("f48", "Normalised convex hull area", S, TS, 3),
    ("f49", "Convex hull compactness", S, TSR, 3),
];

const SEMANTIC: &[Row] = &[
    ("f1", "Clock center offset", X, TS, 1),
    ("f2", "Hour hand length", X, T, 1),
    ("f3", "Minute hand length", X, T, 1),
    ("f4", "Hand length ratio", X, TS, 1),
    ("f5", "Angle between hands", X, TSR, 1),
    ("f6", "Hour hand orientation", X, TS, 1),
    ("f7", "Minute hand orientation", X, TS, 1),
    ("f8", "Displacement of digit 1", X, TS, 1),
    ("f9", "Displacement of digit 2", X, TS, 1),
    ("f10", "Displacement of digit 3", X, TS, 1),
    ("f11", "Displacement of digit 4", X, TS, 1),
    ("f12", "Displacement of digit 5", X, TS, 1),
    ("f13", "Displacement of digit 6", X, TS, 1),
    ("f14", "Displacement of digit 7", X, TS, 1),
    ("f15", "Displacement of digit 8", X, TS, 1),
    ("f16", "Displacement of digit 9", X, TS, 1),
    ("f17", "Displacement of digit 10", X, TS, 1),
    ("f18", "Displacement of digit 11", X, TS, 1),
    ("f19", "Displacement of digit 12", X, TS, 1),
];

fn build() -> Vec<FeatureDescriptor> {
    let sets: [(FeatureSet, &[Row]); 5] = [
        (FeatureSet::Sonntag, SONNTAG),
        (FeatureSet::Rubine, RUBINE),
        (FeatureSet::Willems, WILLEMS),
        (FeatureSet::Hbf49, HBF49),
        (FeatureSet::Semantic, SEMANTIC),
    ];
    let mut out = Vec::new();
    for (set, rows) in sets {
        for &(local, name, category, inv, min_samples) in rows {
            let number = local[1..]
                .split('.')
                .next()
                .and_then(|n| n.parse().ok())
                .expect("feature number");
            out.push(FeatureDescriptor {
                id: format!("{}.{}", set.name(), local),
                set,
                number,
                name,
                category,
                translation_invariant: inv.contains('t'),
                scale_invariant: inv.contains('s'),
                rotation_invariant: inv.contains('r'),
                min_samples,
            });
        }
    }
    out
}

/// Every feature, ordered by set and then by number.
pub fn catalog() -> &'static [FeatureDescriptor] {
    static CATALOG: OnceLock<Vec<FeatureDescriptor>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn descriptor(id: &str) -> Option<&'static FeatureDescriptor> {
    catalog().iter().find(|d| d.id == id)
}

/// Catalog position of the first feature of `set` and the number of features in it.
pub(crate) fn set_span(set: FeatureSet) -> (usize, usize) {
    let cat = catalog();
    let start = cat.iter().position(|d| d.set == set).expect("set present");
    let len = cat[start..].iter().take_while(|d| d.set == set).count();
    (start, len)
}
