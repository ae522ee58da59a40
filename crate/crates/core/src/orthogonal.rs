//! Uniformly distributed sequences in the orthogonal group `O(n)`.
//!
//! The construction is the subgroup algorithm run on quasi-random inputs:
//! `O(n)` is assembled from `S^{n-1}` (coset representatives, chosen as
//! Householder reflections sending `e_1` to `x`) and `O(n-1)` (embedded as the
//! stabilizer of `e_1`). Inputs at each level are paired by the convolution
//! indexing, and each level's output is optionally passed through the Veech
//! generator. [`random_ortho`] runs the same recursion on pseudo-random inputs.

use std::collections::HashMap;
use std::f64::consts::TAU;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lowdisc::{primes_from, QuasiSequence, SequenceKind, SequenceSpec, UnitPoint};
use crate::sphere::{cube_dims_for_sphere, sphere_sequence, SpherePoint};
use crate::udsg::{Gaps, GeneratorSpec};

/// Max-entry tolerance on `G^T G - I` for an orthogonal matrix.
pub const ORTHO_TOLERANCE: f64 = 1e-10;

/// `|x - e_1|` below which the coset representative is exactly `I`.
pub const NORTH_TOLERANCE: f64 = 1e-12;

/// An `n x n` orthogonal matrix, `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoMatrix(DMatrix<f64>);

impl OrthoMatrix {
    /// Accepts `m` if it is square and orthogonal within [`ORTHO_TOLERANCE`].
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let defect = orthogonality_defect(&m);
        if defect.is_nan() || defect > ORTHO_TOLERANCE {
            return domain(format!("matrix is not orthogonal (defect {defect:e})"));
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    /// `max |G^T G - I|`.
    pub fn defect(&self) -> f64 {
        orthogonality_defect(&self.0)
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// First column, i.e. the image of `e_1`.
    pub fn first_column(&self) -> Vec<f64> {
        self.0.column(0).iter().copied().collect()
    }

    /// Row-major entries.
    pub fn row_major(&self) -> Vec<f64> {
        self.0.transpose().as_slice().to_vec()
    }

    /// Block-diagonal `diag(1, self)`, the copy of `O(n)` inside `O(n+1)` fixing `e_1`.
    pub fn embed(&self) -> OrthoMatrix {
        let n = self.n();
        let mut m = DMatrix::zeros(n + 1, n + 1);
        m[(0, 0)] = 1.0;
        m.view_mut((1, 1), (n, n)).copy_from(&self.0);
        OrthoMatrix(m)
    }

    pub fn mul(&self, other: &OrthoMatrix) -> OrthoMatrix {
        OrthoMatrix(&self.0 * &other.0)
    }
}

pub fn orthogonality_defect(m: &DMatrix<f64>) -> f64 {
    let gram = m.transpose() * m;
    let n = gram.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - target).abs());
        }
    }
    worst
}

/// Modified Gram-Schmidt on the columns.
fn reorthonormalize(m: &mut DMatrix<f64>) {
    let n = m.ncols();
    for j in 0..n {
        for i in 0..j {
            let proj = m.column(i).dot(&m.column(j));
            let ci = m.column(i).clone_owned();
            m.column_mut(j).axpy(-proj, &ci, 1.0);
        }
        let norm = m.column(j).norm();
        m.column_mut(j).unscale_mut(norm);
    }
}

/// `[[cos a, sin a], [-t sin a, t cos a]]`, with `t = +1` if `rotation` else `-1`.
pub fn o2_matrix(angle: f64, rotation: bool) -> OrthoMatrix {
    let t = if rotation { 1.0 } else { -1.0 };
    let (s, c) = angle.sin_cos();
    OrthoMatrix(DMatrix::from_row_slice(2, 2, &[c, s, -t * s, t * c]))
}

/// `O(2)` element from a 2-D cube point: angle `2 pi u_1`, determinant
/// `+1` when `u_2 < 1/2` and `-1` otherwise.
pub fn o2_element(u: &UnitPoint) -> Result<OrthoMatrix> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: u.dim(),
        });
    }
    let c = u.coords();
    Ok(o2_matrix(TAU * c[0], c[1] < 0.5))
}

/// Coset representative of `x` in `O(n)/O(n-1)`: the reflection
/// `I - 2 v v^T / (v^T v)` with `v = e_1 - x`, or `I` when `x = e_1`.
/// Maps `e_1` to `x`.
pub fn coset_rep(x: &SpherePoint) -> OrthoMatrix {
    let n = x.dim();
    let mut v = DMatrix::from_iterator(n, 1, x.coords().iter().map(|c| -c));
    v[(0, 0)] += 1.0;
    let c = v.norm_squared();
    if c.sqrt() < NORTH_TOLERANCE {
        return OrthoMatrix::identity(n);
    }
    let mut m = DMatrix::identity(n, n);
    m.ger(-2.0 / c, &v.column(0), &v.column(0), 1.0);
    OrthoMatrix(m)
}

/// `T^{-1}(x, h) = coset_rep(x) * diag(1, h)`.
pub fn t_inverse(x: &SpherePoint, h: &OrthoMatrix) -> Result<OrthoMatrix> {
    if h.n() + 1 != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim() - 1,
            found: h.n(),
        });
    }
    Ok(coset_rep(x).mul(&h.embed()))
}

/// The pair `(i, j)` visited at step `m` of the convolution of two sequences.
///
/// With `(k-1)^2 < m <= k^2`, odd offsets `m = (k-1)^2 + 2i - 1` give
/// `(k, i)` and even offsets `m = (k-1)^2 + 2i` give `(i, k)`; the first
/// `k^2` steps visit every pair in `{1..k}^2` once.
pub fn convolution_index(m: u64) -> Result<(u64, u64)> {
    if m < 1 {
        return domain("convolution index m must be >= 1");
    }
    let mut k = (m as f64).sqrt() as u64;
    while k * k < m {
        k += 1;
    }
    while k > 1 && (k - 1) * (k - 1) >= m {
        k -= 1;
    }
    let offset = m - (k - 1) * (k - 1);
    Ok(if offset % 2 == 1 {
        (k, offset.div_ceil(2))
    } else {
        (offset / 2, k)
    })
}

/// Parameters of a quasi-random sequence in `O(n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthoSequenceSpec {
    pub n: usize,
    /// 2-D sequence driving the `O(2)` base case.
    pub base: SequenceSpec,
    /// `spheres[i - 3]` drives `S^{i-1}` at level `i = 3..=n`.
    pub spheres: Vec<SequenceSpec>,
    /// Pass every level `i >= 3` through the Veech generator.
    pub veech: bool,
    #[serde(default)]
    pub generator: GeneratorSpec,
}

impl OrthoSequenceSpec {
    /// Assigns consecutive primes: `(2, 3)` to the `O(2)` base, then the next
    /// unused ones to each sphere level in increasing `i`.
    pub fn new(n: usize, kind: SequenceKind, permutation_seed: u64, veech: bool) -> Self {
        let mut offset = 0;
        let mut take = |dims: usize| {
            let spec = SequenceSpec {
                permutation_seed,
                ..SequenceSpec::with_bases(kind, primes_from(offset, dims))
            };
            offset += dims;
            spec
        };
        let base = take(2);
        let spheres = (3..=n.max(2)).map(|i| take(cube_dims_for_sphere(i))).collect();
        Self {
            n,
            base,
            spheres,
            veech,
            generator: GeneratorSpec::default(),
        }
    }

    /// Scrambled Halton inputs with Veech post-processing.
    pub fn scrambled(n: usize, permutation_seed: u64) -> Self {
        Self::new(n, SequenceKind::ScrambledHalton, permutation_seed, true)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return domain("O(n) sequences need n >= 2");
        }
        self.base.validate()?;
        if self.base.dims != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.base.dims,
            });
        }
        if self.spheres.len() != self.n - 2 {
            return Err(Error::DimensionMismatch {
                expected: self.n - 2,
                found: self.spheres.len(),
            });
        }
        for (i, s) in (3..).zip(&self.spheres) {
            s.validate()?;
            if s.dims != cube_dims_for_sphere(i) {
                return Err(Error::DimensionMismatch {
                    expected: cube_dims_for_sphere(i),
                    found: s.dims,
                });
            }
        }
        self.generator.validate()
    }
}

#[derive(Debug, Clone)]
struct Level {
    dim: usize,
    sphere: QuasiSequence,
    z: HashMap<u64, OrthoMatrix>,
    /// `w_1, w_2, ..` of this level when the generator is on.
    prefix: Vec<OrthoMatrix>,
}

/// A quasi-random sequence in `O(n)` with random access and streaming.
///
/// Lower recursion levels are memoized. Every matrix product passes an
/// orthogonality check; a product drifting beyond [`ORTHO_TOLERANCE`] is
/// re-orthonormalized and counted in [`OrthoSequence::repairs`].
#[derive(Debug, Clone)]
pub struct OrthoSequence {
    spec: OrthoSequenceSpec,
    base: QuasiSequence,
    levels: Vec<Level>,
    gaps: Gaps,
    r: Vec<u64>,
    repairs: u64,
    // streaming state
    cursor: u64,
    acc: Option<OrthoMatrix>,
}

impl OrthoSequence {
    pub fn new(spec: OrthoSequenceSpec) -> Result<Self> {
        spec.validate()?;
        let base = QuasiSequence::new(spec.base.clone())?;
        let levels = (3..)
            .zip(&spec.spheres)
            .map(|(dim, s)| {
                Ok(Level {
                    dim,
                    sphere: QuasiSequence::new(s.clone())?,
                    z: HashMap::new(),
                    prefix: Vec::new(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            gaps: Gaps::new(spec.generator)?,
            base,
            levels,
            r: Vec::new(),
            repairs: 0,
            cursor: 0,
            acc: None,
            spec,
        })
    }

    pub fn spec(&self) -> &OrthoSequenceSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// Number of re-orthonormalizations applied so far.
    pub fn repairs(&self) -> u64 {
        self.repairs
    }

    /// Element `m` (1-based). With the generator on this recomputes the
    /// product `z_{r_1} .. z_{r_m}` of the top level, O(m).
    pub fn element(&mut self, m: u64) -> Result<OrthoMatrix> {
        if m < 1 {
            return domain("sequence index must be >= 1");
        }
        let top = self.spec.n;
        if top == 2 {
            return self.o2(m);
        }
        if !self.spec.veech {
            return self.z_fresh(top, m);
        }
        let mut w = OrthoMatrix::identity(top);
        for i in 1..=m {
            w = self.veech_step(&w, top, i)?;
        }
        Ok(w)
    }

    /// Next element of the stream, starting at `m = 1`.
    pub fn next_element(&mut self) -> Result<OrthoMatrix> {
        let m = self.cursor + 1;
        let top = self.spec.n;
        let out = if top > 2 && self.spec.veech {
            let prev = self.acc.take().unwrap_or_else(|| OrthoMatrix::identity(top));
            let w = self.veech_step(&prev, top, m)?;
            self.acc = Some(w.clone());
            w
        } else {
            self.element(m)?
        };
        self.cursor = m;
        Ok(out)
    }

    /// Index of the last streamed element.
    pub fn position(&self) -> u64 {
        self.cursor
    }

    fn o2(&self, m: u64) -> Result<OrthoMatrix> {
        o2_element(&self.base.point(m)?)
    }

    fn gap(&mut self, i: u64) -> u64 {
        while (self.r.len() as u64) < i {
            let r = self.gaps.next().expect("Champernowne digits never run out");
            self.r.push(r);
        }
        self.r[i as usize - 1]
    }

    fn level_mut(&mut self, dim: usize) -> &mut Level {
        &mut self.levels[dim - 3]
    }

    /// `w_i = w_{i-1} z_{r_i}` at level `dim`.
    fn veech_step(&mut self, prev: &OrthoMatrix, dim: usize, i: u64) -> Result<OrthoMatrix> {
        let r = self.gap(i);
        let z = self.z_cached(dim, r)?;
        Ok(self.checked(prev.mul(&z)))
    }

    fn checked(&mut self, mut m: OrthoMatrix) -> OrthoMatrix {
        if m.defect() > ORTHO_TOLERANCE {
            reorthonormalize(&mut m.0);
            self.repairs += 1;
        }
        m
    }

    /// Output of level `dim` at index `m`, memoized.
    fn level_element(&mut self, dim: usize, m: u64) -> Result<OrthoMatrix> {
        if dim == 2 {
            return self.o2(m);
        }
        if !self.spec.veech {
            return self.z_cached(dim, m);
        }
        while (self.level_mut(dim).prefix.len() as u64) < m {
            let i = self.level_mut(dim).prefix.len() as u64 + 1;
            let prev = self
                .level_mut(dim)
                .prefix
                .last()
                .cloned()
                .unwrap_or_else(|| OrthoMatrix::identity(dim));
            let w = self.veech_step(&prev, dim, i)?;
            self.level_mut(dim).prefix.push(w);
        }
        Ok(self.level_mut(dim).prefix[m as usize - 1].clone())
    }

    fn z_cached(&mut self, dim: usize, j: u64) -> Result<OrthoMatrix> {
        if let Some(z) = self.level_mut(dim).z.get(&j) {
            return Ok(z.clone());
        }
        let z = self.z_fresh(dim, j)?;
        self.level_mut(dim).z.insert(j, z.clone());
        Ok(z)
    }

    /// `z_j = T^{-1}(x_a, h_b)` with `(a, b) = convolution_index(j)`.
    fn z_fresh(&mut self, dim: usize, j: u64) -> Result<OrthoMatrix> {
        let (a, b) = convolution_index(j)?;
        let level = &self.levels[dim - 3];
        let x = sphere_sequence(level.dim, &level.sphere, a)?;
        let h = self.level_element(dim - 1, b)?;
        Ok(self.checked(t_inverse(&x, &h)?))
    }
}

impl Iterator for OrthoSequence {
    type Item = Result<OrthoMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_element())
    }
}

/// Free-function form of [`OrthoSequence::element`].
pub fn ortho_element(spec: &OrthoSequenceSpec, m: u64) -> Result<OrthoMatrix> {
    OrthoSequence::new(spec.clone())?.element(m)
}

/// Uniform random point of `S^{n-1}` (normalized standard normal vector).
pub fn random_sphere_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpherePoint {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(p) = SpherePoint::normalize(v) {
            return p;
        }
    }
}

/// Haar-random element of `O(n)` by the subgroup algorithm.
pub fn random_ortho<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<OrthoMatrix> {
    if n < 2 {
        return domain("O(n) sampling needs n >= 2");
    }
    let angle = rng.random::<f64>() * TAU;
    let mut g = o2_matrix(angle, rng.random::<bool>());
    for dim in 3..=n {
        let x = random_sphere_point(dim, rng);
        g = t_inverse(&x, &g)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn max_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).abs().max()
    }

    #[test]
    fn o2_examples() {
        assert_eq!(o2_matrix(0.0, true), OrthoMatrix::identity(2));
        assert_eq!(
            o2_matrix(0.0, false).0,
            DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
        );
        let q = o2_matrix(std::f64::consts::FRAC_PI_2, true);
        assert!(max_diff(&q.0, &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])) < 1e-15);
        let u = UnitPoint::new(vec![0.25, 0.75]).unwrap();
        assert!((o2_element(&u).unwrap().determinant() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn coset_rep_examples() {
        assert_eq!(coset_rep(&SpherePoint::north(4)), OrthoMatrix::identity(4));
        let south = SpherePoint::new(vec![-1.0, 0.0, 0.0]).unwrap();
        let mut expect = DMatrix::identity(3, 3);
        expect[(0, 0)] = -1.0;
        assert!(max_diff(&coset_rep(&south).0, &expect) < 1e-15);
        let y = SpherePoint::new(vec![0.0, 1.0]).unwrap();
        assert!(max_diff(&coset_rep(&y).0, &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn coset_rep_near_north_is_identity() {
        let x = SpherePoint::normalize(vec![1.0, 1e-14, 0.0]).unwrap();
        assert_eq!(coset_rep(&x), OrthoMatrix::identity(3));
    }

    #[test]
    fn convolution_listing() {
        let expect = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3), (3, 2), (2, 3), (3, 3)];
        for (m, &pair) in (1..).zip(&expect) {
            assert_eq!(convolution_index(m).unwrap(), pair);
        }
        assert!(convolution_index(0).is_err());
    }

    #[test]
    fn convolution_is_a_bijection_on_squares() {
        let k = 20u64;
        let mut seen = vec![false; (k * k) as usize];
        for m in 1..=k * k {
            let (i, j) = convolution_index(m).unwrap();
            assert!(i <= k && j <= k);
            let slot = ((i - 1) * k + (j - 1)) as usize;
            assert!(!seen[slot]);
            seen[slot] = true;
        }
    }

    #[test]
    fn convolution_index_large_squares() {
        for k in [1_000_000u64, 3_037_000_499] {
            assert_eq!(convolution_index(k * k).unwrap(), (k, k));
            assert_eq!(convolution_index(k * k + 1).unwrap(), (k + 1, 1));
        }
    }

    #[test]
    fn t_inverse_examples() {
        let e1 = SpherePoint::north(3);
        assert_eq!(
            t_inverse(&e1, &OrthoMatrix::identity(2)).unwrap(),
            OrthoMatrix::identity(3)
        );
        let x = SpherePoint::normalize(vec![0.3, -0.5, 0.8]).unwrap();
        assert_eq!(t_inverse(&x, &OrthoMatrix::identity(2)).unwrap(), coset_rep(&x));
        assert!(matches!(
            t_inverse(&x, &OrthoMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn t_inverse_sends_e1_to_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x = random_sphere_point(4, &mut rng);
            let h = random_ortho(3, &mut rng).unwrap();
            let g = t_inverse(&x, &h).unwrap();
            for (a, b) in g.first_column().iter().zip(x.coords()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn embed_fixes_e1() {
        let h = o2_matrix(0.7, false);
        let e = h.embed();
        assert_eq!(e.n(), 3);
        assert_eq!(e.first_column(), vec![1.0, 0.0, 0.0]);
        assert_eq!(e.0[(0, 1)], 0.0);
        assert_eq!(e.0[(2, 2)], h.0[(1, 1)]);
    }

    #[test]
    fn ortho_matrix_validation() {
        assert!(OrthoMatrix::new(DMatrix::from_element(2, 2, 1.0)).is_err());
        assert!(OrthoMatrix::new(DMatrix::zeros(2, 3)).is_err());
        assert!(OrthoMatrix::new(o2_matrix(1.0, true).0).is_ok());
    }

    #[test]
    fn base_case_sequence() {
        let mut spec = OrthoSequenceSpec::new(2, SequenceKind::Halton, 0, true);
        spec.base = SequenceSpec::with_bases(SequenceKind::Halton, vec![2, 3]);
        let mut seq = OrthoSequence::new(spec).unwrap();
        // u_1 = (1/2, 1/3): rotation by pi
        let g = seq.element(1).unwrap();
        assert!(max_diff(&g.0, &DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -1.0])) < 1e-15);
    }

    #[test]
    fn first_element_without_generator() {
        let spec = OrthoSequenceSpec::new(3, SequenceKind::ScrambledHalton, 4, false);
        let mut seq = OrthoSequence::new(spec.clone()).unwrap();
        let sphere = QuasiSequence::new(spec.spheres[0].clone()).unwrap();
        let x1 = sphere_sequence(3, &sphere, 1).unwrap();
        let h1 = o2_element(&QuasiSequence::new(spec.base.clone()).unwrap().point(1).unwrap()).unwrap();
        assert_eq!(seq.element(1).unwrap(), t_inverse(&x1, &h1).unwrap());
    }

    #[test]
    fn spec_assigns_distinct_primes() {
        let spec = OrthoSequenceSpec::scrambled(5, 1);
        assert_eq!(spec.base.bases, vec![2, 3]);
        assert_eq!(spec.spheres[0].bases, vec![5, 7, 11, 13]);
        assert_eq!(spec.spheres[1].bases, vec![17, 19, 23, 29]);
        assert_eq!(spec.spheres[2].dims, 6);
        spec.validate().unwrap();
        let mut bad = spec.clone();
        bad.spheres.pop();
        assert!(bad.validate().is_err());
        assert!(OrthoSequenceSpec::scrambled(1, 0).validate().is_err());
    }

    #[test]
    fn streaming_matches_random_access() {
        for veech in [false, true] {
            let spec = OrthoSequenceSpec::new(4, SequenceKind::ScrambledHalton, 2, veech);
            let mut stream = OrthoSequence::new(spec.clone()).unwrap();
            let mut random = OrthoSequence::new(spec).unwrap();
            for m in 1..=200 {
                assert_eq!(stream.next_element().unwrap(), random.element(m).unwrap(), "m={m}");
            }
        }
    }

    #[test]
    fn reorthonormalize_repairs_drift() {
        let mut m = o2_matrix(0.3, true).embed().0;
        m[(1, 2)] += 1e-7;
        reorthonormalize(&mut m);
        assert!(orthogonality_defect(&m) < 1e-14);
    }

    #[test]
    fn random_ortho_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=6 {
            for _ in 0..200 {
                let g = random_ortho(n, &mut rng).unwrap();
                assert!(g.defect() < ORTHO_TOLERANCE);
                assert!((g.determinant().abs() - 1.0).abs() < 1e-8);
            }
        }
        assert!(random_ortho(1, &mut rng).is_err());
    }
}
