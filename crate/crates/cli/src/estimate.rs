//! `estimate`: one experiment, trace as CSV.

use haarqmc::estimator::compare_traces;
use haarqmc::reference::lookup;
use haarqmc::{run as run_experiment, ExperimentSpec};

use crate::config::RunConfig;
use crate::output::write_atomic;
use crate::Result;

/// Runs the experiment and returns the CSV (`mode,m,I,c*I,abs_err`).
/// With an output path the CSV goes to the file and nothing is returned.
pub fn run(config: RunConfig) -> Result<String> {
    let (polytope, labelled) = config.load_polytope()?;
    let reference = if labelled {
        lookup(&polytope.label, config.k).map(|r| r.value)
    } else {
        None
    };
    let spec = ExperimentSpec {
        sequence: config.sequence.clone(),
        ..ExperimentSpec::new(polytope, config.k, config.samples, config.mode)
            .with_seed(config.seed)
            .with_trace_points(config.trace_points())
    };
    let trace = run_experiment(&spec)?;
    let csv = compare_traces(&[trace], reference)?.to_csv();
    match &config.output {
        Some(path) => {
            write_atomic(path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}
