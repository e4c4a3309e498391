//! XForm JSON documents and feature-table export.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::FeatureVector;
use crate::ink::{validate, Gesture, InkError};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("gesture '{id}': {source}")]
    Gesture {
        id: String,
        #[source]
        source: InkError,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub id: String,
    pub role: String,
    /// `[xmin, ymin, xmax, ymax]`
    pub bbox: [f64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentGesture {
    pub id: String,
    pub region: Option<String>,
    pub gesture: Gesture,
}

/// Regions, gestures and labels of one captured test.
#[derive(Debug, Clone, PartialEq)]
pub struct InkDocument {
    pub version: u32,
    pub test: String,
    pub regions: Vec<Region>,
    pub gestures: Vec<DocumentGesture>,
    pub labels: BTreeMap<String, String>,
}

impl InkDocument {
    pub fn new(test: impl Into<String>) -> Self {
        InkDocument {
            version: 1,
            test: test.into(),
            regions: Vec::new(),
            gestures: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, gesture: Gesture) {
        self.gestures.push(DocumentGesture { id: id.into(), region: None, gesture });
    }

    pub fn gesture(&self, id: &str) -> Option<&Gesture> {
        self.gestures.iter().find(|g| g.id == id).map(|g| &g.gesture)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegion {
    id: String,
    role: String,
    bbox: [f64; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGesture {
    id: String,
    region: Option<String>,
    strokes: Vec<Vec<[f64; 4]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: u32,
    test: String,
    regions: Vec<RawRegion>,
    gestures: Vec<RawGesture>,
    labels: BTreeMap<String, String>,
}

pub fn read_document(bytes: &[u8]) -> Result<InkDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_slice(bytes).map_err(|e| DocumentError::Parse(e.to_string()))?;
    if raw.version != 1 {
        return Err(DocumentError::Parse(format!("unsupported version {}", raw.version)));
    }
    let mut region_ids = HashSet::new();
    for r in &raw.regions {
        if !region_ids.insert(r.id.as_str()) {
            return Err(DocumentError::Parse(format!("duplicate region id '{}'", r.id)));
        }
    }
    let mut gesture_ids = HashSet::new();
    let mut gestures = Vec::with_capacity(raw.gestures.len());
    for g in raw.gestures {
        if !gesture_ids.insert(g.id.clone()) {
            return Err(DocumentError::Parse(format!("duplicate gesture id '{}'", g.id)));
        }
        if let Some(r) = &g.region {
            if !region_ids.contains(r.as_str()) {
                return Err(DocumentError::Parse(format!("gesture '{}' references unknown region '{}'", g.id, r)));
            }
        }
        let gesture = validate(&g.strokes).map_err(|source| DocumentError::Gesture { id: g.id.clone(), source })?;
        gestures.push(DocumentGesture { id: g.id, region: g.region, gesture });
    }
    if let Some(k) = raw.labels.keys().find(|k| !gesture_ids.contains(*k)) {
        return Err(DocumentError::Parse(format!("label for unknown gesture '{k}'")));
    }
    Ok(InkDocument {
        version: raw.version,
        test: raw.test,
        regions: raw
            .regions
            .into_iter()
            .map(|r| Region { id: r.id, role: r.role, bbox: r.bbox })
            .collect(),
        gestures,
        labels: raw.labels,
    })
}

/// Compact JSON with shortest round-trip numbers and a trailing newline.
pub fn write_document(doc: &InkDocument) -> Vec<u8> {
    let raw = RawDocument {
        version: doc.version,
        test: doc.test.clone(),
        regions: doc
            .regions
            .iter()
            .map(|r| RawRegion { id: r.id.clone(), role: r.role.clone(), bbox: r.bbox })
            .collect(),
        gestures: doc
            .gestures
            .iter()
            .map(|g| RawGesture { id: g.id.clone(), region: g.region.clone(), strokes: g.gesture.to_raw() })
            .collect(),
        labels: doc.labels.clone(),
    };
    let mut out = serde_json::to_vec(&raw).expect("document serializes");
    out.push(b'\n');
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub gesture_id: String,
    pub values: Vec<f64>,
    pub degenerate: Vec<bool>,
}

/// Rows of feature values sharing one column set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureTable {
    pub features: Vec<String>,
    pub rows: Vec<FeatureRow>,
}

impl FeatureTable {
    /// Panics if the vectors do not share the same ids.
    pub fn from_vectors(rows: Vec<(String, FeatureVector)>) -> Self {
        let features: Vec<String> = rows.first().map(|(_, v)| v.ids().to_vec()).unwrap_or_default();
        let rows = rows
            .into_iter()
            .map(|(gesture_id, v)| {
                assert_eq!(v.ids(), &features[..], "feature columns differ between rows");
                FeatureRow { gesture_id, values: v.values().to_vec(), degenerate: v.degenerate_flags().to_vec() }
            })
            .collect();
        FeatureTable { features, rows }
    }
}

/// Fixed 12 decimal places; negative zero prints as zero.
pub fn format_value(v: f64) -> String {
    let s = format!("{v:.12}");
    if s == "-0.000000000000" {
        "0.000000000000".to_string()
    } else {
        s
    }
}

pub fn write_feature_table(t: &FeatureTable, format: TableFormat) -> Vec<u8> {
    match format {
        TableFormat::Csv => write_csv(t),
        TableFormat::Json => {
            let mut out = serde_json::to_vec(t).expect("table serializes");
            out.push(b'\n');
            out
        }
    }
}

fn write_csv(t: &FeatureTable) -> Vec<u8> {
    let flagged: Vec<bool> = (0..t.features.len())
        .map(|j| t.rows.iter().any(|r| r.degenerate[j]))
        .collect();
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let mut header = vec!["gesture_id".to_string()];
    for (id, &f) in t.features.iter().zip(&flagged) {
        header.push(id.clone());
        if f {
            header.push(format!("{id}.degenerate"));
        }
    }
    w.write_record(&header).expect("write to memory");
    for r in &t.rows {
        let mut rec = vec![r.gesture_id.clone()];
        for j in 0..t.features.len() {
            rec.push(format_value(r.values[j]));
            if flagged[j] {
                rec.push(r.degenerate[j].to_string());
            }
        }
        w.write_record(&rec).expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}

pub fn read_feature_table(bytes: &[u8], format: TableFormat) -> Result<FeatureTable, DocumentError> {
    match format {
        TableFormat::Json => serde_json::from_slice(bytes).map_err(|e| DocumentError::Parse(e.to_string())),
        TableFormat::Csv => read_csv(bytes),
    }
}

fn read_csv(bytes: &[u8]) -> Result<FeatureTable, DocumentError> {
    let bad = |m: &str| DocumentError::Parse(m.to_string());
    let parse = |e: csv::Error| DocumentError::Parse(e.to_string());
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(bytes);
    let mut records = r.records();
    let header = records.next().ok_or_else(|| bad("empty table"))?.map_err(parse)?;
    if header.get(0) != Some("gesture_id") {
        return Err(bad("header must start with gesture_id"));
    }
    // per feature: whether a flag column follows it
    let mut features: Vec<String> = Vec::new();
    let mut flags: Vec<bool> = Vec::new();
    for col in header.iter().skip(1) {
        match col.strip_suffix(".degenerate") {
            Some(base) if features.last().map(String::as_str) == Some(base) => {
                *flags.last_mut().expect("feature precedes flag") = true
            }
            Some(_) => return Err(bad("flag column without its feature")),
            None => {
                features.push(col.to_string());
                flags.push(false);
            }
        }
    }
    let mut rows = Vec::new();
    for rec in records {
        let cells = rec.map_err(parse)?;
        if cells.len() != header.len() {
            return Err(bad("row width differs from header"));
        }
        let mut values = Vec::with_capacity(features.len());
        let mut degenerate = Vec::with_capacity(features.len());
        let mut c = 1;
        for &flag in &flags {
            values.push(cells[c].parse::<f64>().map_err(|e| DocumentError::Parse(e.to_string()))?);
            c += 1;
            if flag {
                degenerate.push(match &cells[c] {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad("flag must be true or false")),
                });
                c += 1;
            } else {
                degenerate.push(false);
            }
        }
        rows.push(FeatureRow { gesture_id: cells[0].to_string(), values, degenerate });
    }
    Ok(FeatureTable { features, rows })
}
