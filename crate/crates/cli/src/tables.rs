//! `reproduce-tables`: the R^3 and R^4 comparison tables and the
//! K-icosahedron convergence traces.
//!
//! Files written to the output directory:
//!
//! * `table1.csv`: `polytope,vertices,mode,N,I_31,I_32,ref_31,ref_32`
//! * `table2.csv`: `polytope,vertices,mode,N,I_43,ref_43`
//! * `figure1.csv`: `k,mode,m,I,reference,lower,upper`, bands at +-0.5%
//! * `tables.json`: the same numbers grouped by body and mode
//!
//! Each row for `N < N_max` is the partial mean of the run of length `N_max`.

use std::collections::BTreeMap;
use std::fs;

use haarqmc::reference::{lookup, RANDOM_POLYTOPE_SEED};
use haarqmc::{from_label, run as run_experiment, ConvergenceTrace, ExperimentSpec, Mode, OrthoSequenceSpec, Polytope};
use serde::Serialize;

use crate::config::TablesConfig;
use crate::output::{csv_line, format_float, write_atomic};
use crate::{CliError, Result};

pub const TABLE1_SAMPLES: [u64; 3] = [10, 100, 1000];
pub const TABLE2_SAMPLES: [u64; 4] = [10, 100, 1000, 10_000];
pub const MODES: [Mode; 2] = [Mode::Random, Mode::Qmc];
/// Relative half-width of the reference band in `figure1.csv`.
pub const BAND: f64 = 0.005;

pub const TABLE1_HEADER: &str = "polytope,vertices,mode,N,I_31,I_32,ref_31,ref_32";
pub const TABLE2_HEADER: &str = "polytope,vertices,mode,N,I_43,ref_43";
pub const FIGURE1_HEADER: &str = "k,mode,m,I,reference,lower,upper";

pub fn table1_labels() -> Vec<String> {
    let mut labels: Vec<String> = ["3-simplex", "3-cube", "k-icosahedron"].map(String::from).into();
    for count in [50, 150] {
        labels.push(format!("r-polytope-3d-{count}v-seed{RANDOM_POLYTOPE_SEED}"));
    }
    labels
}

pub fn table2_labels() -> Vec<String> {
    vec![
        "4-simplex".into(),
        "4-cube".into(),
        format!("r-polytope-4d-50v-seed{RANDOM_POLYTOPE_SEED}"),
    ]
}

#[derive(Debug, Serialize)]
struct Row {
    polytope: String,
    vertices: usize,
    mode: Mode,
    /// `N -> I_{n,k}^N` per `k`.
    values: BTreeMap<usize, BTreeMap<u64, f64>>,
    references: BTreeMap<usize, Option<f64>>,
}

#[derive(Debug, Serialize)]
struct Summary {
    seed: u64,
    permutation_seed: u64,
    table1: Vec<Row>,
    table2: Vec<Row>,
}

fn experiment(
    config: &TablesConfig,
    polytope: &Polytope,
    k: usize,
    mode: Mode,
    points: Vec<u64>,
) -> Result<ConvergenceTrace> {
    let samples = *points.last().expect("non-empty trace");
    let spec = ExperimentSpec {
        sequence: Some(OrthoSequenceSpec::scrambled(polytope.n, config.permutation_seed)),
        ..ExperimentSpec::new(polytope.clone(), k, samples, mode)
            .with_seed(config.seed)
            .with_trace_points(points)
    };
    Ok(run_experiment(&spec)?)
}

fn row(
    config: &TablesConfig,
    label: &str,
    ks: &[usize],
    mode: Mode,
    samples: &[u64],
    full_trace: bool,
) -> Result<(Row, Vec<ConvergenceTrace>)> {
    let polytope = from_label(label)?;
    let last = *samples.last().expect("sample counts");
    let points: Vec<u64> = if full_trace {
        (1..=last).collect()
    } else {
        samples.to_vec()
    };
    let mut values = BTreeMap::new();
    let mut references = BTreeMap::new();
    let mut traces = Vec::new();
    for &k in ks {
        let trace = experiment(config, &polytope, k, mode, points.clone())?;
        let at = samples
            .iter()
            .map(|&m| {
                Ok((
                    m,
                    trace
                        .value_at(m)
                        .ok_or_else(|| CliError::Usage(format!("missing trace point {m}")))?,
                ))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        values.insert(k, at);
        references.insert(k, lookup(label, k).map(|r| r.value));
        traces.push(trace);
    }
    let row = Row {
        polytope: label.to_string(),
        vertices: polytope.vertices.len(),
        mode,
        values,
        references,
    };
    Ok((row, traces))
}

fn optional(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

fn table_csv(header: &str, rows: &[Row], ks: &[usize]) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        for m in r.values[&ks[0]].keys() {
            let mut fields = vec![
                r.polytope.clone(),
                r.vertices.to_string(),
                r.mode.to_string(),
                m.to_string(),
            ];
            fields.extend(ks.iter().map(|k| format_float(r.values[k][m])));
            fields.extend(ks.iter().map(|k| optional(r.references[k])));
            out.push_str(&csv_line(fields));
        }
    }
    out
}

fn figure_csv(traces: &[ConvergenceTrace]) -> String {
    let mut out = format!("{FIGURE1_HEADER}\n");
    for t in traces {
        let reference = lookup(&t.polytope, t.k).map(|r| r.value);
        for p in &t.points {
            out.push_str(&csv_line([
                t.k.to_string(),
                t.mode.to_string(),
                p.m.to_string(),
                format_float(p.value),
                optional(reference),
                optional(reference.map(|r| r * (1.0 - BAND))),
                optional(reference.map(|r| r * (1.0 + BAND))),
            ]));
        }
    }
    out
}

/// Runs all cells and writes the files; returns a short listing for stdout.
pub fn run(config: &TablesConfig) -> Result<String> {
    fs::create_dir_all(&config.output_dir).map_err(|source| CliError::Io {
        path: config.output_dir.clone(),
        source,
    })?;
    let mut table1 = Vec::new();
    let mut figure = Vec::new();
    for label in table1_labels() {
        for mode in MODES {
            let icosahedron = label == "k-icosahedron";
            let (row, traces) = row(config, &label, &[1, 2], mode, &TABLE1_SAMPLES, icosahedron)?;
            table1.push(row);
            if icosahedron {
                figure.extend(traces);
            }
        }
    }
    // group by k, then mode
    figure.sort_by_key(|t| (t.k, t.mode));
    let mut table2 = Vec::new();
    for label in table2_labels() {
        for mode in MODES {
            table2.push(row(config, &label, &[3], mode, &TABLE2_SAMPLES, false)?.0);
        }
    }

    let files = [
        ("table1.csv", table_csv(TABLE1_HEADER, &table1, &[1, 2])),
        ("table2.csv", table_csv(TABLE2_HEADER, &table2, &[3])),
        ("figure1.csv", figure_csv(&figure)),
    ];
    let summary = Summary {
        seed: config.seed,
        permutation_seed: config.permutation_seed,
        table1,
        table2,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    let mut listing = String::new();
    for (name, contents) in files
        .iter()
        .map(|(n, c)| (*n, c.as_str()))
        .chain([("tables.json", json.as_str())])
    {
        let path = config.output_dir.join(name);
        write_atomic(&path, contents)?;
        listing.push_str(&format!("{}\n", path.display()));
    }
    Ok(listing)
}
