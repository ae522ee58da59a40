//! Crofton-formula estimation of intrinsic volumes.
//!
//! For a convex body `K` in `R^n` and `1 <= k <= n-1`, the mean of
//! `f(L) = vol_{n-k}(K | L^perp)` over the invariant measure on `G(n,k)`,
//! multiplied by `c_{k,n}`, is the intrinsic volume `V_{n-k}(K)`. The mean is
//! approximated by `I_{n,k}^N = (1/N) sum f(y_m)` along a random or
//! quasi-random sequence of subspaces `y_m = beta_k(G_m)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{crofton_constant, hull_measure, project, Polytope};
use crate::grassmann::beta_k;
use crate::lowdisc::SequenceKind;
use crate::orthogonal::{random_ortho, OrthoMatrix, OrthoSequence, OrthoSequenceSpec};

/// Default seed for the pseudo-random baseline.
pub const DEFAULT_RANDOM_SEED: u64 = 20_140_501;

/// Default digit-permutation seed for the scrambled Halton inputs.
pub const DEFAULT_PERMUTATION_SEED: u64 = 0;

/// How the subspaces `y_m` are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Haar-random `O(n)` elements from a seeded ChaCha8 stream.
    #[serde(alias = "r")]
    Random,
    /// Quasi-random `O(n)` sequence with the Veech generator at every level.
    #[serde(alias = "qr")]
    Qmc,
    /// Quasi-random sequence without the generator step.
    #[serde(alias = "qr-noveech")]
    QmcNoveech,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Random, Mode::Qmc, Mode::QmcNoveech];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Random => "random",
            Mode::Qmc => "qmc",
            Mode::QmcNoveech => "qmc-noveech",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "random" | "r" => Ok(Mode::Random),
            "qmc" | "qr" => Ok(Mode::Qmc),
            "qmc-noveech" | "qr-noveech" => Ok(Mode::QmcNoveech),
            _ => domain(format!("unknown mode `{s}` (expected random, qmc or qmc-noveech)")),
        }
    }
}

/// One estimation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub polytope: Polytope,
    pub k: usize,
    /// Number of samples `N`.
    pub samples: u64,
    pub mode: Mode,
    /// Seed of the random baseline; ignored by the quasi-random modes.
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Inputs of the quasi-random modes; derived from the mode when absent.
    #[serde(default)]
    pub sequence: Option<OrthoSequenceSpec>,
    /// Sample counts at which the partial mean is recorded. `N` itself is
    /// always recorded.
    #[serde(default)]
    pub trace_points: Vec<u64>,
}

fn default_seed() -> u64 {
    DEFAULT_RANDOM_SEED
}

impl ExperimentSpec {
    pub fn new(polytope: Polytope, k: usize, samples: u64, mode: Mode) -> Self {
        Self {
            polytope,
            k,
            samples,
            mode,
            seed: DEFAULT_RANDOM_SEED,
            sequence: None,
            trace_points: Vec::new(),
        }
    }

    pub fn with_trace_points(mut self, points: impl IntoIterator<Item = u64>) -> Self {
        self.trace_points = points.into_iter().collect();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn n(&self) -> usize {
        self.polytope.n
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n < 2 {
            return domain("estimation needs an ambient dimension n >= 2");
        }
        if self.k < 1 || self.k >= n {
            return domain(format!("k = {} outside 1..={}", self.k, n - 1));
        }
        if n - self.k > 3 {
            return domain(format!(
                "projections of dimension {} are not supported (max 3)",
                n - self.k
            ));
        }
        if self.samples < 1 {
            return domain("sample count N must be >= 1");
        }
        if self.trace_points.windows(2).any(|w| w[0] >= w[1]) {
            return domain("trace points must be strictly increasing");
        }
        if self.trace_points.first() == Some(&0) || self.trace_points.last().is_some_and(|&t| t > self.samples) {
            return domain(format!("trace points must lie in 1..={}", self.samples));
        }
        if let Some(seq) = &self.sequence {
            seq.validate()?;
            if seq.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: seq.n,
                });
            }
        }
        Ok(())
    }

    /// The quasi-random inputs actually used by the quasi modes.
    pub fn sequence_spec(&self) -> OrthoSequenceSpec {
        let mut spec = self.sequence.clone().unwrap_or_else(|| {
            OrthoSequenceSpec::new(self.n(), SequenceKind::ScrambledHalton, DEFAULT_PERMUTATION_SEED, true)
        });
        spec.veech = self.mode == Mode::Qmc;
        spec
    }
}

/// Source of `O(n)` elements for any [`Mode`].
#[derive(Debug, Clone)]
pub enum OrthoSource {
    Quasi(Box<OrthoSequence>),
    Random { n: usize, rng: Box<ChaCha8Rng> },
}

impl OrthoSource {
    pub fn for_experiment(spec: &ExperimentSpec) -> Result<Self> {
        Ok(match spec.mode {
            Mode::Random => OrthoSource::Random {
                n: spec.n(),
                rng: Box::new(ChaCha8Rng::seed_from_u64(spec.seed)),
            },
            Mode::Qmc | Mode::QmcNoveech => OrthoSource::Quasi(Box::new(OrthoSequence::new(spec.sequence_spec())?)),
        })
    }

    pub fn next_element(&mut self) -> Result<OrthoMatrix> {
        match self {
            OrthoSource::Quasi(seq) => seq.next_element(),
            OrthoSource::Random { n, rng } => random_ortho(*n, rng.as_mut()),
        }
    }

    /// Re-orthonormalizations performed by a quasi-random source.
    pub fn repairs(&self) -> u64 {
        match self {
            OrthoSource::Quasi(seq) => seq.repairs(),
            OrthoSource::Random { .. } => 0,
        }
    }
}

/// Compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// `f(L) = vol(K | L^perp)` for `L = beta_k(g)`, projecting onto the last
/// `n - k` columns of `g`.
pub fn projection_volume(polytope: &Polytope, g: &OrthoMatrix, k: usize) -> Result<f64> {
    let l = beta_k(g, k)?;
    Ok(hull_measure(&project(polytope, &l.complement())?))
}

/// Partial mean `I^m` after `m` samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub m: u64,
    pub value: f64,
}

/// Output of [`run`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub mode: Mode,
    pub polytope: String,
    pub n: usize,
    pub k: usize,
    /// Requested trace points plus `N`.
    pub points: Vec<TracePoint>,
    /// `I_{n,k}^N`.
    pub estimate: f64,
    /// `c_{k,n} I_{n,k}^N`, the estimate of `V_{n-k}`.
    pub intrinsic_volume: f64,
    pub min_sample: f64,
    pub max_sample: f64,
    pub repairs: u64,
}

impl ConvergenceTrace {
    pub fn value_at(&self, m: u64) -> Option<f64> {
        self.points.iter().find(|p| p.m == m).map(|p| p.value)
    }
}

/// Runs one experiment; deterministic in `spec`.
pub fn run(spec: &ExperimentSpec) -> Result<ConvergenceTrace> {
    run_with(spec, |_, _| {})
}

/// Like [`run`], also handing every sample `(m, f(y_m))` to `observe`.
pub fn run_with<F: FnMut(u64, f64)>(spec: &ExperimentSpec, mut observe: F) -> Result<ConvergenceTrace> {
    spec.validate()?;
    let (n, k) = (spec.n(), spec.k);
    let mut source = OrthoSource::for_experiment(spec)?;
    let mut sum = KahanSum::default();
    let mut marks = spec.trace_points.iter().copied().peekable();
    let mut points = Vec::with_capacity(spec.trace_points.len() + 1);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for m in 1..=spec.samples {
        let g = source.next_element()?;
        let f = projection_volume(&spec.polytope, &g, k)?;
        observe(m, f);
        lo = lo.min(f);
        hi = hi.max(f);
        sum.add(f);
        if marks.peek() == Some(&m) {
            marks.next();
            points.push(TracePoint {
                m,
                value: sum.value() / m as f64,
            });
        }
    }
    let estimate = sum.value() / spec.samples as f64;
    if points.last().map(|p| p.m) != Some(spec.samples) {
        points.push(TracePoint {
            m: spec.samples,
            value: estimate,
        });
    }
    Ok(ConvergenceTrace {
        mode: spec.mode,
        polytope: spec.polytope.label.clone(),
        n,
        k,
        points,
        estimate,
        intrinsic_volume: crofton_constant(n as u32, k as u32)? * estimate,
        min_sample: lo,
        max_sample: hi,
        repairs: source.repairs(),
    })
}

/// `c_{k,n} I` for the final estimate of `trace`.
pub fn intrinsic_volume(trace: &ConvergenceTrace, n: usize, k: usize) -> Result<f64> {
    Ok(crofton_constant(n as u32, k as u32)? * trace.estimate)
}

/// One line of a comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub mode: Mode,
    pub m: u64,
    pub value: f64,
    pub intrinsic_volume: f64,
    pub abs_err: Option<f64>,
}

/// Partial means of several runs on the same body at their shared trace points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub polytope: String,
    pub n: usize,
    pub k: usize,
    pub reference: Option<f64>,
    pub rows: Vec<ComparisonRow>,
}

pub const CSV_HEADER: &str = "mode,m,I,c*I,abs_err";

/// Floats with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl ComparisonReport {
    /// CSV with header `mode,m,I,c*I,abs_err`; `abs_err` is empty without a reference.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let err = r.abs_err.map(format_float).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.mode,
                r.m,
                format_float(r.value),
                format_float(r.intrinsic_volume),
                err
            ));
        }
        out
    }
}

/// Runs every spec and tabulates the partial means at the trace points they
/// all share, with absolute errors against `reference` (a value of
/// `I_{n,k}`, not of the intrinsic volume).
pub fn compare(specs: &[ExperimentSpec], reference: Option<f64>) -> Result<ComparisonReport> {
    let first = specs
        .first()
        .ok_or_else(|| Error::Incompatible("nothing to compare".into()))?;
    for s in specs {
        if s.polytope != first.polytope || s.k != first.k {
            return Err(Error::Incompatible(format!(
                "`{}` (k={}) vs `{}` (k={})",
                s.polytope.label, s.k, first.polytope.label, first.k
            )));
        }
    }
    let traces = specs.iter().map(run).collect::<Result<Vec<_>>>()?;
    compare_traces(&traces, reference)
}

/// [`compare`] on already computed traces.
pub fn compare_traces(traces: &[ConvergenceTrace], reference: Option<f64>) -> Result<ComparisonReport> {
    let first = traces
        .first()
        .ok_or_else(|| Error::Incompatible("nothing to compare".into()))?;
    if let Some(t) = traces
        .iter()
        .find(|t| (t.polytope.as_str(), t.n, t.k) != (first.polytope.as_str(), first.n, first.k))
    {
        return Err(Error::Incompatible(format!(
            "`{}` (n={}, k={}) vs `{}` (n={}, k={})",
            t.polytope, t.n, t.k, first.polytope, first.n, first.k
        )));
    }
    let shared: Vec<u64> = first
        .points
        .iter()
        .map(|p| p.m)
        .filter(|m| traces.iter().all(|t| t.value_at(*m).is_some()))
        .collect();
    if shared.is_empty() {
        return Err(Error::Incompatible("runs share no trace points".into()));
    }
    let c = crofton_constant(first.n as u32, first.k as u32)?;
    let mut rows = Vec::new();
    for t in traces {
        for &m in &shared {
            let value = t.value_at(m).expect("shared trace point");
            rows.push(ComparisonRow {
                mode: t.mode,
                m,
                value,
                intrinsic_volume: c * value,
                abs_err: reference.map(|r| (value - r).abs()),
            });
        }
    }
    Ok(ComparisonReport {
        polytope: first.polytope.clone(),
        n: first.n,
        k: first.k,
        reference,
        rows,
    })
}
