//! `gen`: sequence prefixes as CSV.

use clap::ValueEnum;
use haarqmc::lowdisc::{QuasiSequence, SequenceSpec};
use haarqmc::orthogonal::random_sphere_point;
use haarqmc::sphere::cube_dims_for_sphere;
use haarqmc::{
    beta_k, occurrence_positions, r_sequence, random_ortho, sphere_sequence, GeneratorSpec, Mode, OrthoMatrix,
    OrthoSequence, OrthoSequenceSpec, SequenceKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::GenConfig;
use crate::output::{csv_line, format_float, write_atomic};
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Points of S^{n-1}: `m,x1,..,xn`.
    Sphere,
    /// Elements of O(n), row-major: `m,g1_1,g1_2,..,gn_n`.
    Ortho,
    /// Orthonormal bases of k-subspaces, row-major n x k: `m,b1_1,..,bn_k`.
    Grassmann,
    /// Generator triplets `m,q_m,r_m`.
    Udsg,
}

fn header(prefix: &str, rows: usize, cols: usize) -> String {
    let names = (1..=rows).flat_map(|i| (1..=cols).map(move |j| format!("{prefix}{i}_{j}")));
    csv_line(std::iter::once("m".to_string()).chain(names))
}

fn record(m: u64, values: impl IntoIterator<Item = f64>) -> String {
    csv_line(std::iter::once(m.to_string()).chain(values.into_iter().map(format_float)))
}

/// Source of `O(n)` elements for the `gen` commands.
enum Elements {
    Quasi(Box<OrthoSequence>),
    Random(usize, Box<ChaCha8Rng>),
}

impl Elements {
    fn new(config: &GenConfig) -> Result<Self> {
        Ok(match config.mode {
            Mode::Random => Elements::Random(config.n, Box::new(ChaCha8Rng::seed_from_u64(config.seed))),
            mode => {
                let spec = OrthoSequenceSpec::new(
                    config.n,
                    SequenceKind::ScrambledHalton,
                    config.permutation_seed,
                    mode == Mode::Qmc,
                );
                Elements::Quasi(Box::new(OrthoSequence::new(spec)?))
            }
        })
    }

    fn next(&mut self) -> Result<OrthoMatrix> {
        Ok(match self {
            Elements::Quasi(seq) => seq.next_element()?,
            Elements::Random(n, rng) => random_ortho(*n, rng.as_mut())?,
        })
    }
}

fn sphere(config: &GenConfig) -> Result<String> {
    let n = config.n;
    if n < 2 {
        return Err(CliError::Usage(format!("sphere points need n >= 2, got {n}")));
    }
    let mut out = csv_line(std::iter::once("m".to_string()).chain((1..=n).map(|i| format!("x{i}"))));
    let seq = QuasiSequence::new(SequenceSpec::scrambled_halton(
        cube_dims_for_sphere(n),
        config.permutation_seed,
    ))?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for m in 1..=config.count {
        let p = match config.mode {
            Mode::Random => random_sphere_point(n, &mut rng),
            Mode::Qmc | Mode::QmcNoveech => sphere_sequence(n, &seq, m)?,
        };
        out.push_str(&record(m, p.into_inner()));
    }
    Ok(out)
}

fn ortho(config: &GenConfig) -> Result<String> {
    let mut source = Elements::new(config)?;
    let mut out = header("g", config.n, config.n);
    for m in 1..=config.count {
        out.push_str(&record(m, source.next()?.row_major()));
    }
    Ok(out)
}

fn grassmann(config: &GenConfig) -> Result<String> {
    let (n, k) = (config.n, config.k);
    let mut source = Elements::new(config)?;
    let mut out = header("b", n, k);
    for m in 1..=config.count {
        let basis = beta_k(&source.next()?, k)?.basis().clone();
        out.push_str(&record(
            m,
            (0..n).flat_map(|i| (0..k).map(move |j| (i, j))).map(|ij| basis[ij]),
        ));
    }
    Ok(out)
}

fn udsg(config: &GenConfig) -> Result<String> {
    let count = usize::try_from(config.count).map_err(|_| CliError::Usage("count too large".into()))?;
    let spec = GeneratorSpec::default();
    let q = occurrence_positions(spec, count)?;
    let r = r_sequence(spec, count)?;
    let mut out = csv_line(["m", "q_m", "r_m"]);
    for (m, (q, r)) in q.iter().zip(&r).enumerate() {
        out.push_str(&csv_line([(m + 1).to_string(), q.to_string(), r.to_string()]));
    }
    Ok(out)
}

pub fn run(kind: GenKind, config: &GenConfig) -> Result<String> {
    let csv = match kind {
        GenKind::Sphere => sphere(config)?,
        GenKind::Ortho => ortho(config)?,
        GenKind::Grassmann => grassmann(config)?,
        GenKind::Udsg => udsg(config)?,
    };
    match &config.output {
        Some(path) => {
            write_atomic(path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}
