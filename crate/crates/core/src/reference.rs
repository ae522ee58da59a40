//! Reference values of `I_{n,k}` for the built-in test bodies.
//!
//! Closed forms are used where they exist. The remaining values are
//! pseudo-random baseline runs with `N = 10^6` samples
//! (`Mode::Random`, seed [`DEFAULT_RANDOM_SEED`](crate::estimator::DEFAULT_RANDOM_SEED)),
//! computed once and frozen here. Regenerate them with
//! `haarqmc estimate --polytope <label> --k <k> --samples 1000000 --mode random`.

use std::f64::consts::PI;

/// Seed of the random polytopes used in the comparison tables.
pub const RANDOM_POLYTOPE_SEED: u64 = 1;

/// Where a reference value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    /// Frozen `N = 10^6` random-baseline estimate.
    Baseline,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub polytope: &'static str,
    pub k: usize,
    pub value: f64,
    pub provenance: Provenance,
}

const fn baseline(polytope: &'static str, k: usize, value: f64) -> Reference {
    Reference {
        polytope,
        k,
        value,
        provenance: Provenance::Baseline,
    }
}

/// Frozen `N = 10^6` random-baseline estimates.
pub const BASELINES: [Reference; 10] = [
    baseline("3-simplex", 1, 0.5913508031451602),
    baseline("3-simplex", 2, 1.1129562471207273),
    baseline("k-icosahedron", 1, 455.26403185724024),
    baseline("k-icosahedron", 2, 25.035686756108703),
    baseline("4-simplex", 3, 1.112276670999315),
    baseline("r-polytope-3d-50v-seed1", 1, 2.7684795087473115),
    baseline("r-polytope-3d-50v-seed1", 2, 1.917114677026056),
    baseline("r-polytope-3d-150v-seed1", 1, 3.0137043839928204),
    baseline("r-polytope-3d-150v-seed1", 2, 1.9724443256613728),
    baseline("r-polytope-4d-50v-seed1", 3, 1.8023016888980352),
];

/// Mean projection area of the standard 3-simplex: surface area / 4.
pub fn simplex3_mean_shadow() -> f64 {
    (1.5 + 3f64.sqrt() / 2.0) / 4.0
}

/// Closed-form `I_{n,k}` where known: unit cubes (`V_1(cube^n) = n`,
/// `V_2(cube^3) = 3`) and the 3-simplex for `k = 1`.
pub fn analytic(polytope: &str, k: usize) -> Option<f64> {
    match (polytope, k) {
        ("3-cube", 1) | ("3-cube", 2) => Some(1.5),
        // V_1 = 4 = c_{3,4} I with c_{3,4} = 3 pi / 4
        ("4-cube", 3) => Some(16.0 / (3.0 * PI)),
        ("3-simplex", 1) => Some(simplex3_mean_shadow()),
        _ => None,
    }
}

/// Frozen baseline for `(polytope, k)`, if one was computed.
pub fn baseline_value(polytope: &str, k: usize) -> Option<f64> {
    BASELINES
        .iter()
        .find(|r| r.polytope == polytope && r.k == k)
        .map(|r| r.value)
}

/// Best available reference: analytic first, then the frozen baseline.
pub fn lookup(polytope: &str, k: usize) -> Option<Reference> {
    let polytope_static = BASELINES
        .iter()
        .map(|r| r.polytope)
        .chain(["3-cube", "4-cube"])
        .find(|&p| p == polytope)?;
    if let Some(value) = analytic(polytope, k) {
        return Some(Reference {
            polytope: polytope_static,
            k,
            value,
            provenance: Provenance::Analytic,
        });
    }
    BASELINES.iter().find(|r| r.polytope == polytope && r.k == k).copied()
}
