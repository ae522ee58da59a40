//! Unit-cube points to the sphere by the Box-Muller construction.
//!
//! A point `(p_1, q_1, .., p_k, q_k)` of `[0,1)^{2k}` becomes the Gaussian-like
//! vector with components `sqrt(-log p_i) cos 2 pi q_i` and
//! `sqrt(-log p_i) sin 2 pi q_i`, which is then normalized. Dropping the first
//! cosine component gives odd-dimensional spheres.

use std::f64::consts::TAU;

use crate::error::{domain, Error, Result};
use crate::lowdisc::{QuasiSequence, UnitPoint};

/// Clamp for the radial inputs `p_i`, keeping `log p_i` finite.
pub const LOG_GUARD: f64 = 1.0 / 9_007_199_254_740_992.0; // 2^-53

/// Tolerance on `| |x| - 1 |` for a vector accepted as a sphere point.
pub const UNIT_TOLERANCE: f64 = 1e-8;

/// A unit vector of `R^n`, `n >= 2`: a point of `S^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    /// Accepts `coords` if its norm is within [`UNIT_TOLERANCE`] of one.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return domain("sphere points need at least two coordinates");
        }
        let dev = (norm(&coords) - 1.0).abs();
        if dev.is_nan() || dev > UNIT_TOLERANCE {
            return Err(Error::NotUnit(dev));
        }
        Ok(Self(coords))
    }

    /// Normalizes a non-zero vector onto the sphere.
    pub fn normalize(mut coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return domain("sphere points need at least two coordinates");
        }
        let r = norm(&coords);
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Degenerate(format!("cannot normalize vector of norm {r}")));
        }
        coords.iter_mut().for_each(|c| *c /= r);
        Ok(Self(coords))
    }

    /// The basis vector `e_1` of `R^n`.
    pub fn north(n: usize) -> Self {
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        Self(v)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Ambient dimension `n` (the sphere is `S^{n-1}`).
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn box_muller(u: &UnitPoint) -> Result<Vec<f64>> {
    let c = u.coords();
    if c.len() % 2 != 0 {
        return domain(format!("Box-Muller needs an even dimension, got {}", c.len()));
    }
    let mut out = Vec::with_capacity(c.len());
    for pair in c.chunks_exact(2) {
        let p = pair[0].clamp(LOG_GUARD, 1.0 - LOG_GUARD);
        let radius = (-p.ln()).sqrt();
        let (sin, cos) = (TAU * pair[1]).sin_cos();
        out.push(radius * cos);
        out.push(radius * sin);
    }
    Ok(out)
}

/// `[0,1)^{2k}` to `S^{2k-1}`.
pub fn to_sphere_even(u: &UnitPoint) -> Result<SpherePoint> {
    if u.dim() < 2 {
        return domain("to_sphere_even needs dimension >= 2");
    }
    SpherePoint::normalize(box_muller(u)?)
}

/// `[0,1)^{2k}` to `S^{2k-2}`, omitting the first cosine component.
pub fn to_sphere_odd(u: &UnitPoint) -> Result<SpherePoint> {
    if u.dim() < 4 {
        return domain("to_sphere_odd needs dimension >= 4");
    }
    let mut v = box_muller(u)?;
    v.remove(0);
    SpherePoint::normalize(v)
}

/// Unit-cube dimension consumed per point of `S^{n-1}`.
pub fn cube_dims_for_sphere(n: usize) -> usize {
    n + n % 2
}

/// The `index`-th point of `S^{n-1}` driven by `seq`.
pub fn sphere_sequence(n: usize, seq: &QuasiSequence, index: u64) -> Result<SpherePoint> {
    if n < 2 {
        return domain("sphere dimension n must be >= 2");
    }
    let needed = cube_dims_for_sphere(n);
    if seq.dims() != needed {
        return Err(Error::DimensionMismatch {
            expected: needed,
            found: seq.dims(),
        });
    }
    let u = seq.point(index)?;
    from_cube(n, &u)
}

/// Dispatches a cube point of dimension `n + n mod 2` onto `S^{n-1}`.
pub fn from_cube(n: usize, u: &UnitPoint) -> Result<SpherePoint> {
    if n % 2 == 0 {
        to_sphere_even(u)
    } else {
        to_sphere_odd(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowdisc::SequenceSpec;

    const E_INV: f64 = 0.36787944117144233;

    fn unit(c: &[f64]) -> UnitPoint {
        UnitPoint::new(c.to_vec()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-12, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn even_examples() {
        assert_close(to_sphere_even(&unit(&[E_INV, 0.0])).unwrap().coords(), &[1.0, 0.0]);
        assert_close(to_sphere_even(&unit(&[E_INV, 0.25])).unwrap().coords(), &[0.0, 1.0]);
        let h = 0.5f64.sqrt();
        assert_close(
            to_sphere_even(&unit(&[E_INV, 0.0, E_INV, 0.0])).unwrap().coords(),
            &[h, 0.0, h, 0.0],
        );
    }

    #[test]
    fn odd_examples() {
        assert_close(
            to_sphere_odd(&unit(&[E_INV, 0.0, E_INV, 0.0])).unwrap().coords(),
            &[0.0, 1.0, 0.0],
        );
        let h = 0.5f64.sqrt();
        assert_close(
            to_sphere_odd(&unit(&[E_INV, 0.25, E_INV, 0.0])).unwrap().coords(),
            &[h, h, 0.0],
        );
    }

    #[test]
    fn zero_radial_input_is_clamped() {
        let p = to_sphere_even(&unit(&[0.0, 0.3, 0.0, 0.7])).unwrap();
        assert!((norm(p.coords()) - 1.0).abs() < 1e-12);
        assert!(p.coords().iter().all(|c| c.is_finite()));
    }

    #[test]
    fn rejects_wrong_dimensions() {
        assert!(to_sphere_even(&unit(&[0.5, 0.5, 0.5])).is_err());
        assert!(to_sphere_odd(&unit(&[0.5, 0.5])).is_err());
        let seq = QuasiSequence::new(SequenceSpec::halton(3)).unwrap();
        assert!(matches!(
            sphere_sequence(3, &seq, 1),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn dispatch_by_parity() {
        let s2 = QuasiSequence::new(SequenceSpec::halton(2)).unwrap();
        assert_eq!(
            sphere_sequence(2, &s2, 5).unwrap(),
            to_sphere_even(&s2.point(5).unwrap()).unwrap()
        );
        let s4 = QuasiSequence::new(SequenceSpec::halton(4)).unwrap();
        let p = sphere_sequence(3, &s4, 5).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p, to_sphere_odd(&s4.point(5).unwrap()).unwrap());
    }

    #[test]
    fn halton_points_have_unit_norm() {
        for n in 2..=7 {
            let seq = QuasiSequence::new(SequenceSpec::scrambled_halton(cube_dims_for_sphere(n), 5)).unwrap();
            for i in 1..=1000 {
                let p = sphere_sequence(n, &seq, i).unwrap();
                assert_eq!(p.dim(), n);
                assert!((norm(p.coords()) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sphere_point_validation() {
        assert!(matches!(SpherePoint::new(vec![1.0, 1.0]), Err(Error::NotUnit(_))));
        assert!(SpherePoint::new(vec![0.6, 0.8]).is_ok());
        assert!(SpherePoint::normalize(vec![0.0, 0.0]).is_err());
    }
}
