//! `inkfeat` command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 I/O failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use inkfeat::cdt::{self, ClockAnnotation, ClockFeatures};
use inkfeat::features::{catalog, extract, Category, FeatureRequest, FeatureSet, FeatureVector, Params};
use inkfeat::io::{read_document, write_document, write_feature_table, FeatureTable, InkDocument, TableFormat};
use inkfeat::recognizer::{default_features, synthesize, train_vectors, ClassifierModel, Prediction, SymbolClass, MAX_JITTER};

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Io(m) => m,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn invalid(m: impl ToString) -> CliError {
    CliError::Invalid(m.to_string())
}

#[derive(Parser)]
#[command(name = "inkfeat", version, about = "Feature extraction for digital ink")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate documents; prints nothing on success.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Compute a feature table, one row per gesture.
    Extract {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Feature set (sonntag, rubine, willems, hbf49 or all); repeatable.
        #[arg(long = "set")]
        sets: Vec<String>,
        /// Comma-separated feature ids; overrides --set.
        #[arg(long, value_delimiter = ',')]
        features: Vec<String>,
        /// Parameter override such as `k=3` or `hbf49.hu=literal`; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List catalog features: id, set, category and invariance flags.
    Catalog {
        #[arg(long)]
        category: Option<String>,
    },
    /// Train a linear classifier on the labelled gestures of the documents.
    Train {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Comma-separated feature ids; defaults to rubine and hbf49.
        #[arg(long, value_delimiter = ',')]
        features: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every gesture of the documents.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a Clock Drawing Test document.
    Cdt {
        path: PathBuf,
        /// JSON object of gesture id to role; defaults to the document labels.
        #[arg(long)]
        annotations: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a document of synthetic symbols.
    Synth {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        jitter: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<InkDocument> {
    let bytes = read_bytes(path)?;
    read_document(&bytes).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    let res = match out {
        Some(p) => fs::write(p, bytes).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(bytes).map_err(|e| e.to_string()),
    };
    res.map_err(CliError::Io)
}

fn json_bytes<T: Serialize>(v: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serializable");
    out.push(b'\n');
    out
}

/// Thread pool honouring `INKFEAT_THREADS`.
fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("INKFEAT_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| invalid(format!("INKFEAT_THREADS must be a positive integer, got '{v}'")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| invalid(e.to_string()))
}

/// Every gesture of every document, with its "<file>#<id>" row id.
fn rows(docs: &[(String, InkDocument)]) -> Vec<(String, &inkfeat::Gesture, Option<&String>)> {
    docs.iter()
        .flat_map(|(file, d)| {
            d.gestures
                .iter()
                .map(move |g| (format!("{file}#{}", g.id), &g.gesture, d.labels.get(&g.id)))
        })
        .collect()
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<(String, InkDocument)>> {
    paths.iter().map(|p| Ok((file_name(p), load(p)?))).collect()
}

fn cmd_validate(paths: &[PathBuf]) -> Result<()> {
    let mut worst: Option<CliError> = None;
    for p in paths {
        if let Err(e) = load(p) {
            eprintln!("{}", e.message());
            if worst.as_ref().is_none_or(|w| e.code() > w.code()) {
                worst = Some(e);
            }
        }
    }
    match worst {
        None => Ok(()),
        Some(CliError::Io(_)) => Err(CliError::Io(String::new())),
        Some(CliError::Invalid(_)) => Err(CliError::Invalid(String::new())),
    }
}

fn feature_request(sets: &[String], features: &[String], params: &[String]) -> Result<FeatureRequest> {
    let mut req = if !features.is_empty() {
        FeatureRequest::ids(features).map_err(invalid)?
    } else if sets.is_empty() || sets.iter().any(|s| s == "all") {
        FeatureRequest::all()
    } else {
        let sets: Vec<FeatureSet> = sets.iter().map(|s| s.parse()).collect::<std::result::Result<_, _>>().map_err(invalid)?;
        FeatureRequest::sets(&sets).map_err(invalid)?
    };
    let mut p = Params::default();
    for spec in params {
        p.apply(spec).map_err(invalid)?;
    }
    req.params = p;
    Ok(req)
}

fn extract_all(docs: &[(String, InkDocument)], req: &FeatureRequest) -> Result<Vec<(String, FeatureVector)>> {
    let rows = rows(docs);
    Ok(pool()?.install(|| rows.par_iter().map(|(id, g, _)| (id.clone(), extract(g, req))).collect()))
}

fn cmd_extract(paths: &[PathBuf], sets: &[String], features: &[String], params: &[String], format: Format, out: Option<&Path>) -> Result<()> {
    let req = feature_request(sets, features, params)?;
    let docs = load_all(paths)?;
    let table = FeatureTable::from_vectors(extract_all(&docs, &req)?);
    emit(&write_feature_table(&table, format.into()), out)
}

fn flags(d: &inkfeat::features::FeatureDescriptor) -> String {
    [(d.translation_invariant, 'T'), (d.scale_invariant, 'S'), (d.rotation_invariant, 'R')]
        .iter()
        .map(|&(on, c)| if on { c } else { '-' })
        .collect()
}

fn cmd_catalog(category: Option<&str>) -> Result<()> {
    let category: Option<Category> = category.map(str::parse).transpose().map_err(invalid)?;
    let mut out = String::new();
    for d in catalog().iter().filter(|d| category.is_none_or(|c| d.category == c)) {
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", d.id, d.set, d.category, flags(d), d.name));
    }
    emit(out.as_bytes(), None)
}

fn cmd_train(paths: &[PathBuf], features: &[String], out: Option<&Path>) -> Result<()> {
    let ids = if features.is_empty() { default_features() } else { features.to_vec() };
    let req = FeatureRequest::ids(&ids).map_err(invalid)?;
    let ids: Vec<String> = req.descriptors().map(|d| d.id.clone()).collect();
    let docs = load_all(paths)?;
    let labelled: Vec<_> = rows(&docs).into_iter().filter_map(|(_, g, l)| l.map(|l| (g, l.clone()))).collect();
    let samples: Vec<(Vec<f64>, String)> =
        pool()?.install(|| labelled.par_iter().map(|(g, l)| (extract(g, &req).values().to_vec(), l.clone())).collect());
    let model = train_vectors(&samples, &ids).map_err(invalid)?;
    emit(&json_bytes(&model), out)
}

fn cmd_predict(model: &Path, paths: &[PathBuf], out: Option<&Path>) -> Result<()> {
    let model: ClassifierModel =
        serde_json::from_slice(&read_bytes(model)?).map_err(|e| invalid(format!("{}: {e}", model.display())))?;
    let docs = load_all(paths)?;
    let rows = rows(&docs);
    let preds: Vec<(String, Prediction)> = pool()?.install(|| {
        rows.par_iter()
            .map(|(id, g, _)| model.predict(g).map(|p| (id.clone(), p)))
            .collect::<std::result::Result<_, _>>()
            .map_err(invalid)
    })?;
    let preds: BTreeMap<String, Prediction> = preds.into_iter().collect();
    emit(&json_bytes(&preds), out)
}

#[derive(Serialize)]
struct HandReport {
    length: f64,
    orientation: f64,
}

#[derive(Serialize)]
struct CdtReport {
    score: u8,
    findings: Vec<String>,
    center: [f64; 2],
    radius: f64,
    centroid: [f64; 2],
    face_gap: f64,
    center_offset: f64,
    hour_hand: HandReport,
    minute_hand: HandReport,
    hand_ratio: f64,
    alpha: f64,
    digit_displacement: BTreeMap<u8, f64>,
    semantic: BTreeMap<String, f64>,
}

fn cdt_report(f: &ClockFeatures) -> CdtReport {
    let s = cdt::score_cdt(f);
    let sem = cdt::semantic_features(f);
    CdtReport {
        score: s.score,
        findings: s.findings,
        center: [f.face.center.x, f.face.center.y],
        radius: f.face.radius,
        centroid: [f.centroid.x, f.centroid.y],
        face_gap: f.face_gap,
        center_offset: f.center_offset,
        hour_hand: HandReport { length: f.hour.length, orientation: f.hour.orientation },
        minute_hand: HandReport { length: f.minute.length, orientation: f.minute.orientation },
        hand_ratio: f.hand_ratio,
        alpha: f.alpha,
        digit_displacement: f.digit_displacement.clone(),
        semantic: sem.iter().filter(|&(_, _, deg)| !deg).map(|(id, v, _)| (id.to_string(), v)).collect(),
    }
}

fn cmd_cdt(path: &Path, annotations: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let doc = load(path)?;
    let labels: BTreeMap<String, String> = match annotations {
        Some(p) => serde_json::from_slice(&read_bytes(p)?).map_err(|e| invalid(format!("{}: {e}", p.display())))?,
        None => doc.labels.clone(),
    };
    let ann = ClockAnnotation::from_labels(&labels).map_err(invalid)?;
    let f = cdt::clock_features(&doc, &ann).map_err(invalid)?;
    emit(&json_bytes(&cdt_report(&f)), out)
}

fn cmd_synth(class: &str, n: usize, seed: u64, jitter: f64, out: Option<&Path>) -> Result<()> {
    let class: SymbolClass = class.parse().map_err(invalid)?;
    if !(0.0..=MAX_JITTER).contains(&jitter) {
        return Err(invalid(format!("--jitter must be within [0, {MAX_JITTER}]")));
    }
    let mut doc = InkDocument::new("symbols");
    for i in 0..n {
        let id = format!("{class}-{i:04}");
        doc.push(id.clone(), synthesize(class, seed.wrapping_add(i as u64), jitter));
        doc.labels.insert(id, class.name().to_string());
    }
    emit(&write_document(&doc), out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { paths } => cmd_validate(&paths),
        Command::Extract { paths, sets, features, params, format, out } => {
            cmd_extract(&paths, &sets, &features, &params, format, out.as_deref())
        }
        Command::Catalog { category } => cmd_catalog(category.as_deref()),
        Command::Train { paths, features, out } => cmd_train(&paths, &features, out.as_deref()),
        Command::Predict { model, paths, out } => cmd_predict(&model, &paths, out.as_deref()),
        Command::Cdt { path, annotations, out } => cmd_cdt(&path, annotations.as_deref(), out.as_deref()),
        Command::Synth { class, n, seed, jitter, out } => cmd_synth(&class, n, seed, jitter, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version are not failures; every other parse problem is a usage error
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message().is_empty() {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(e.code())
        }
    }
}
