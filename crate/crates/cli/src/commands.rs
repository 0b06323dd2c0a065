//! Command implementations. Each returns the text to emit or a [`Failure`].

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use foldmaps_core::encoding::{
    complex_vector_from_json, complex_vector_to_json, degree_estimate_to_json, matrix_from_json,
    matrix_to_json, parse_json, real_vector_from_json, real_vector_to_json, realization_to_json,
    to_json_string,
};
use foldmaps_core::numtopo::{degree_estimate, CpmModel, EstimateConfig, SphereModel, Su3Model};
use foldmaps_core::sphere_cpm::{sphere_power, CpmFold};
use foldmaps_core::su3::{power_map, realize_degree, PsiMap};
use foldmaps_core::verify::{run_suite, Suite};
use foldmaps_core::weyl::{
    catalog, grid_data, lookup, parity_grid, CatalogEntry, CohomOneData, Parity, TableRow,
    CSV_HEADER,
};
use foldmaps_core::{DegreeEstimate, Error, Verdict};
use serde_json::{json, Map, Value};

use crate::maps::{Manifold, MapSpec};

#[derive(Debug)]
pub enum Failure {
    /// Exit 1: a verification suite reported failing checks.
    Failed(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3: the estimate was computed and printed but is not conclusive.
    Inconclusive(String),
    /// Exit 4: input off its manifold or an internal self-check failed.
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Inconclusive(_) => 3,
            Failure::Domain(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Failed(m)
            | Failure::Usage(m)
            | Failure::Inconclusive(m)
            | Failure::Domain(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Consistency(_) | Error::NonRegularValue(_) => {
                Failure::Domain(e.to_string())
            }
            Error::InvalidDimension { .. }
            | Error::InvalidParameter(_)
            | Error::OverflowGuard { .. }
            | Error::Parse { .. } => Failure::Usage(e.to_string()),
        }
    }
}

/// Settings shared by every command after merging flags and config file.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub seed: u64,
    pub samples: usize,
    pub step: f64,
    pub reproducible: bool,
}

/// Output of a command: the text, plus a failure to report after it is written.
pub struct Output {
    pub text: String,
    pub failure: Option<Failure>,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            failure: None,
        }
    }
}

fn stamp(settings: &Settings, mut obj: Map<String, Value>) -> String {
    if !settings.reproducible {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        obj.insert("generated_at".into(), json!(now));
    }
    to_json_string(&Value::Object(obj)) + "\n"
}

fn into_object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

pub fn verify(suite: Suite, settings: &Settings) -> Output {
    let report = run_suite(suite, settings.seed);
    let mut obj = into_object(report.to_json());
    obj.insert("suite".into(), json!(suite.name()));
    obj.insert("seed".into(), json!(settings.seed));
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    Output {
        text: stamp(settings, obj),
        failure: (failed > 0)
            .then(|| Failure::Failed(format!("{failed} of {} checks failed", report.checks.len()))),
    }
}

pub fn estimate(
    manifold: Manifold,
    map: MapSpec,
    config: &EstimateConfig,
) -> Result<DegreeEstimate, Failure> {
    if !map.acts_on(manifold) {
        return Err(Failure::Usage(format!(
            "map {map} does not act on {manifold}"
        )));
    }
    let result = match (manifold, map) {
        (Manifold::Su3, MapSpec::Psi(k)) => {
            let psi = PsiMap::new(k)?;
            degree_estimate(&|b| psi.apply(b), &Su3Model::new(), config, None)
        }
        (Manifold::Su3, MapSpec::Rho(k)) => {
            degree_estimate(&|b| power_map(k, b), &Su3Model::new(), config, None)
        }
        (Manifold::Sphere(n), MapSpec::Power(k)) => {
            degree_estimate(&|p| sphere_power(k, p), &SphereModel::new(n)?, config, None)
        }
        (Manifold::Projective(m), MapSpec::Fold(k)) => {
            let fold = CpmFold::new(k)?;
            degree_estimate(&|z| fold.apply(z), &CpmModel::new(m)?, config, None)
        }
        _ => unreachable!("acts_on covers every pairing"),
    };
    Ok(result?)
}

pub fn degree(manifold: Manifold, map: MapSpec, settings: &Settings) -> Result<Output, Failure> {
    let config = EstimateConfig {
        step: settings.step,
        ..EstimateConfig::new(settings.samples, settings.seed)
    };
    if !(config.step > 0.0 && config.step < 0.1) {
        return Err(Failure::Usage(format!(
            "step {} outside (0, 0.1)",
            config.step
        )));
    }
    let est = estimate(manifold, map, &config)?;
    let mut obj = Map::new();
    obj.insert("manifold".into(), json!(manifold.to_string()));
    obj.insert("map".into(), json!(map.to_string()));
    obj.insert("seed".into(), json!(settings.seed));
    obj.insert("step".into(), json!(settings.step));
    obj.extend(degree_estimate_to_json(&est));
    let failure = (est.verdict == Verdict::Inconclusive).then(|| {
        Failure::Inconclusive(format!(
            "mean {:.6} is more than {:.3} from {}",
            est.mean,
            est.tolerance(),
            est.rounded
        ))
    });
    Ok(Output {
        text: stamp(settings, obj),
        failure,
    })
}

pub fn apply(map: MapSpec, input: &Path, output: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let value = parse_json(&text)?;
    let result = match map {
        MapSpec::Psi(k) => matrix_to_json(&PsiMap::new(k)?.apply(&matrix_from_json(&value)?)?),
        MapSpec::Rho(k) => matrix_to_json(&power_map(k, &matrix_from_json(&value)?)?),
        MapSpec::Power(k) => {
            real_vector_to_json(&sphere_power(k, &real_vector_from_json(&value)?)?)
        }
        MapSpec::Fold(k) => {
            complex_vector_to_json(&CpmFold::new(k)?.apply(&complex_vector_from_json(&value)?)?)
        }
    };
    std::fs::write(output, to_json_string(&result) + "\n")
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", output.display())))
}

pub fn realize(d: i64, settings: &Settings) -> Output {
    Output::ok(stamp(
        settings,
        into_object(realization_to_json(d, &realize_degree(d))),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

/// What the table sweeps over.
pub enum TableSource {
    Catalog(Vec<CatalogEntry>),
    Grid {
        weyl: Vec<u32>,
        parities: Option<(Parity, Parity)>,
    },
}

pub const DEFAULT_J: [i64; 12] = [-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6];

pub fn catalog_entries(names: &[String]) -> Result<Vec<CatalogEntry>, Failure> {
    if names.is_empty() {
        return Ok(catalog());
    }
    names
        .iter()
        .map(|n| lookup(n).map_err(Failure::from))
        .collect()
}

fn numeric_map(manifold: Manifold, k: i64) -> Option<MapSpec> {
    let map = match manifold {
        Manifold::Su3 => MapSpec::Psi(k),
        Manifold::Sphere(_) => MapSpec::Power(k),
        Manifold::Projective(_) => MapSpec::Fold(k),
    };
    let odd_required = matches!(map, MapSpec::Psi(_) | MapSpec::Fold(_));
    (!odd_required || k % 2 != 0).then_some(map)
}

fn table_rows(
    source: &TableSource,
    js: &[i64],
    numeric: bool,
    settings: &Settings,
) -> Result<Vec<TableRow>, Failure> {
    let mut items: Vec<(String, CohomOneData, Option<Manifold>)> = Vec::new();
    match source {
        TableSource::Catalog(entries) => {
            for e in entries {
                let model = e.model.as_deref().and_then(|m| m.parse().ok());
                items.push((e.name.clone(), e.data, model));
            }
        }
        TableSource::Grid { weyl, parities } => {
            for &w in weyl {
                let pairs = match parities {
                    Some(p) => vec![*p],
                    None => parity_grid(w),
                };
                for (p0, p1) in pairs {
                    items.push((
                        format!("grid-{}-{}", p0.as_str(), p1.as_str()),
                        grid_data(w, p0, p1),
                        None,
                    ));
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (stream, (name, data, model)) in items.iter().enumerate() {
        for (offset, &j) in js.iter().enumerate() {
            let mut row = TableRow::compute(name, data, j)?;
            let numeric_target = model.and_then(|m| numeric_map(m, row.k).map(|s| (m, s)));
            if let (true, Some((m, s)), Some(_)) = (numeric, numeric_target, row.deg_oracle) {
                let config = EstimateConfig {
                    stream: (stream * js.len() + offset) as u64,
                    step: settings.step,
                    ..EstimateConfig::new(settings.samples, settings.seed)
                };
                let est = estimate(m, s, &config)?;
                let tolerance = est.tolerance();
                row = row.with_numeric(est.mean, tolerance);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

fn row_json(r: &TableRow) -> Value {
    json!({
        "example": r.example,
        "weyl_order": r.data.weyl_order,
        "codim0": r.data.codim0,
        "codim1": r.data.codim1,
        "j": r.j,
        "k": r.k,
        "deg_formula": r.deg_formula,
        "deg_oracle": r.deg_oracle,
        "deg_numeric": r.deg_numeric,
        "L_formula": r.l_formula,
        "L_oracle": r.l_oracle,
        "flags": r.flags,
    })
}

pub fn table(
    source: &TableSource,
    js: &[i64],
    numeric: bool,
    format: TableFormat,
    settings: &Settings,
) -> Result<Output, Failure> {
    if js.contains(&0) {
        return Err(Failure::Usage("j = 0 is not a fold parameter".into()));
    }
    let rows = table_rows(source, js, numeric, settings)?;
    let text = match format {
        TableFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &rows {
                out.push_str(&r.to_csv());
                out.push('\n');
            }
            out
        }
        TableFormat::Json => {
            let mut obj = Map::new();
            obj.insert(
                "rows".into(),
                Value::Array(rows.iter().map(row_json).collect()),
            );
            stamp(settings, obj)
        }
    };
    Ok(Output::ok(text))
}
