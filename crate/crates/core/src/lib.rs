//! Quasi-random sequences on the orthogonal group and Grassmannians, and
//! Crofton-formula estimates of intrinsic volumes of convex polytopes.
//!
//! The pipeline is
//! [`lowdisc`] (points of `[0,1)^d`) → [`sphere`] (points of `S^{n-1}`) →
//! [`orthogonal`] (elements of `O(n)`, optionally post-processed by the
//! [`udsg`] generator) → [`grassmann`] (subspaces) → [`estimator`], which
//! averages projection volumes from [`geometry`].

pub mod error;
pub mod estimator;
pub mod geometry;
pub mod grassmann;
pub mod lowdisc;
pub mod orthogonal;
pub mod reference;
pub mod sphere;
pub mod udsg;

pub use error::{Error, Result};
pub use estimator::{compare, intrinsic_volume, run, ConvergenceTrace, ExperimentSpec, Mode};
pub use geometry::{
    ball_volume, builtin, crofton_constant, from_label, hull_measure, project, Polytope, ProjectedPoints,
};
pub use grassmann::{beta_k, complement, Subspace};
pub use lowdisc::{point_at, radical_inverse, QuasiSequence, SequenceKind, SequenceSpec, UnitPoint};
pub use orthogonal::{
    convolution_index, coset_rep, o2_element, ortho_element, random_ortho, t_inverse, OrthoMatrix, OrthoSequence,
    OrthoSequenceSpec,
};
pub use sphere::{sphere_sequence, to_sphere_even, to_sphere_odd, SpherePoint};
pub use udsg::{champernowne_digit, occurrence_positions, r_sequence, GeneratorSpec};
