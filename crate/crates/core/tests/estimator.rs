//! End-to-end behaviour of the Crofton estimator.

use haarqmc::estimator::{run_with, CSV_HEADER};
use haarqmc::geometry::{builtin, random_spherical_polytope, unit_cube};
use haarqmc::reference::{lookup, RANDOM_POLYTOPE_SEED};
use haarqmc::{compare, run, Error, ExperimentSpec, Mode, Polytope};

fn table1_bodies() -> Vec<Polytope> {
    vec![
        builtin("3-simplex").unwrap(),
        builtin("3-cube").unwrap(),
        builtin("k-icosahedron").unwrap(),
        random_spherical_polytope(3, 50, RANDOM_POLYTOPE_SEED).unwrap(),
        random_spherical_polytope(3, 150, RANDOM_POLYTOPE_SEED).unwrap(),
    ]
}

#[test]
fn doubling_scales_exactly() {
    let cube = unit_cube(3);
    let big = cube.scaled(2.0);
    for mode in Mode::ALL {
        for (k, factor) in [(1, 4.0), (2, 2.0)] {
            let small = run(&ExperimentSpec::new(cube.clone(), k, 97, mode)).unwrap();
            let large = run(&ExperimentSpec::new(big.clone(), k, 97, mode)).unwrap();
            assert_eq!(large.estimate, factor * small.estimate, "{mode} k={k}");
        }
    }
}

#[test]
fn identical_specs_give_identical_traces() {
    for mode in Mode::ALL {
        let spec = ExperimentSpec::new(builtin("k-icosahedron").unwrap(), 2, 300, mode).with_trace_points([1, 10, 100]);
        assert_eq!(run(&spec).unwrap(), run(&spec).unwrap());
    }
    let spec = ExperimentSpec::new(unit_cube(3), 1, 200, Mode::Random);
    assert_ne!(
        run(&spec).unwrap().estimate,
        run(&spec.clone().with_seed(5)).unwrap().estimate
    );
}

#[test]
fn partial_means_and_bounds() {
    for mode in Mode::ALL {
        let spec = ExperimentSpec::new(builtin("3-simplex").unwrap(), 1, 500, mode).with_trace_points([1, 7, 100, 499]);
        let mut samples = Vec::new();
        let trace = run_with(&spec, |_, f| samples.push(f)).unwrap();
        assert!(samples.iter().all(|&f| f >= 0.0));
        for p in &trace.points {
            let mean = samples[..p.m as usize].iter().sum::<f64>() / p.m as f64;
            assert!((p.value - mean).abs() < 1e-13, "{mode} m={}", p.m);
        }
        assert_eq!(trace.points.last().unwrap().m, 500);
        assert!(trace.estimate >= 0.0 && trace.estimate <= trace.max_sample);
        assert!(trace.min_sample <= trace.estimate);
        assert_eq!(trace.repairs, 0);
    }
}

#[test]
fn cube_intrinsic_volumes() {
    let trace = run(&ExperimentSpec::new(unit_cube(3), 1, 1000, Mode::Qmc)).unwrap();
    // 2 V_2 is the surface area 6
    assert!((trace.intrinsic_volume - 3.0).abs() < 0.04);
    let trace = run(&ExperimentSpec::new(unit_cube(3), 2, 1000, Mode::Qmc)).unwrap();
    assert!((trace.intrinsic_volume - 3.0).abs() < 0.04);
}

#[test]
fn simplex_shadow_at_one_thousand() {
    let trace = run(&ExperimentSpec::new(builtin("3-simplex").unwrap(), 1, 1000, Mode::Qmc)).unwrap();
    assert!((trace.estimate - 0.5915).abs() < 0.01, "{}", trace.estimate);
}

#[test]
fn qmc_and_random_agree_on_table1_bodies() {
    for body in table1_bodies() {
        for k in [1, 2] {
            let r = run(&ExperimentSpec::new(body.clone(), k, 10_000, Mode::Random))
                .unwrap()
                .estimate;
            let q = run(&ExperimentSpec::new(body.clone(), k, 10_000, Mode::Qmc))
                .unwrap()
                .estimate;
            assert!((q / r - 1.0).abs() < 0.03, "{} k={k}: qmc {q} random {r}", body.label);
        }
    }
}

#[test]
fn icosahedron_comparison_table() {
    let body = builtin("k-icosahedron").unwrap();
    let reference = lookup("k-icosahedron", 1).unwrap().value;
    let specs: Vec<_> = [Mode::Random, Mode::Qmc]
        .into_iter()
        .map(|mode| ExperimentSpec::new(body.clone(), 1, 1000, mode).with_trace_points([10, 100, 1000]))
        .collect();
    let report = compare(&specs, Some(reference)).unwrap();
    assert_eq!(report.rows.len(), 6);
    let csv = report.to_csv();
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert_eq!(csv.lines().count(), 7);
    for row in report.rows.iter().filter(|r| r.m == 1000) {
        assert!(row.abs_err.unwrap() / reference < 0.01, "{row:?}");
    }
}

#[test]
fn cube_error_columns() {
    let specs: Vec<_> = [Mode::Random, Mode::Qmc]
        .into_iter()
        .map(|mode| ExperimentSpec::new(unit_cube(3), 1, 1000, mode).with_trace_points([10, 100]))
        .collect();
    let report = compare(&specs, Some(1.5)).unwrap();
    for row in report.rows.iter().filter(|r| r.m == 1000) {
        assert!(row.abs_err.unwrap() < 0.03, "{row:?}");
    }
}

#[test]
fn compare_rejects_mismatched_runs() {
    let a = ExperimentSpec::new(unit_cube(3), 1, 10, Mode::Random).with_trace_points([5]);
    let b = ExperimentSpec::new(unit_cube(3), 2, 10, Mode::Qmc);
    assert!(matches!(compare(&[a.clone(), b], None), Err(Error::Incompatible(_))));
    let c = ExperimentSpec::new(unit_cube(3), 1, 20, Mode::Qmc).with_trace_points([7]);
    assert!(matches!(compare(&[a, c], None), Err(Error::Incompatible(_))));
    assert!(compare(&[], None).is_err());
}

#[test]
fn invalid_specs_are_rejected() {
    let cube = unit_cube(3);
    assert!(run(&ExperimentSpec::new(cube.clone(), 0, 10, Mode::Qmc)).is_err());
    assert!(run(&ExperimentSpec::new(cube.clone(), 3, 10, Mode::Qmc)).is_err());
    assert!(run(&ExperimentSpec::new(cube.clone(), 1, 0, Mode::Qmc)).is_err());
    assert!(run(&ExperimentSpec::new(cube.clone(), 1, 10, Mode::Qmc).with_trace_points([11])).is_err());
    assert!(run(&ExperimentSpec::new(cube, 1, 10, Mode::Qmc).with_trace_points([5, 3])).is_err());
    // projections beyond three dimensions are out of scope
    assert!(run(&ExperimentSpec::new(unit_cube(5), 1, 10, Mode::Qmc)).is_err());
}
