//! Polytopes, orthogonal projections, hull measures and Crofton constants.

pub mod hull;
mod polytope;

pub use polytope::{
    builtin, from_label, kirkman_icosahedron, random_spherical_polytope, standard_simplex, unit_cube, Polytope,
    BUILTIN_LABELS,
};

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::grassmann::Subspace;

/// Coordinates of projected vertices in an orthonormal basis of the target
/// subspace, `1 <= d <= 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedPoints {
    d: usize,
    points: Vec<Vec<f64>>,
}

impl ProjectedPoints {
    pub fn new(d: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return domain(format!("projection dimension {d} outside 1..=3"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
        Ok(Self { d, points })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

/// Maps each vertex `v` to `B^T v`, where `B` is the basis of `target`.
pub fn project(polytope: &Polytope, target: &Subspace) -> Result<ProjectedPoints> {
    if target.ambient_dim() != polytope.n {
        return Err(Error::DimensionMismatch {
            expected: polytope.n,
            found: target.ambient_dim(),
        });
    }
    let basis = target.basis();
    let d = target.dim();
    let points = polytope
        .vertices
        .iter()
        .map(|v| {
            (0..d)
                .map(|j| basis.column(j).iter().zip(v).map(|(b, x)| b * x).sum())
                .collect()
        })
        .collect();
    ProjectedPoints::new(d, points)
}

/// `d`-dimensional volume of the convex hull of the points; 0 when they are
/// contained in a lower-dimensional flat.
pub fn hull_measure(pts: &ProjectedPoints) -> f64 {
    match pts.d {
        1 => hull::interval_length(&pts.points.iter().map(|p| p[0]).collect::<Vec<_>>()),
        2 => hull::hull_area(&pts.points.iter().map(|p| [p[0], p[1]]).collect::<Vec<_>>()),
        3 => hull::hull_volume(&pts.points.iter().map(|p| [p[0], p[1], p[2]]).collect::<Vec<_>>()),
        _ => unreachable!("ProjectedPoints keeps 1 <= d <= 3"),
    }
}

/// Volume `b_j` of the unit ball in `R^j`, via `b_j = (2 pi / j) b_{j-2}`.
pub fn ball_volume(j: u32) -> f64 {
    match j {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / f64::from(j) * ball_volume(j - 2),
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `c_{k,n} = C(n, k) b_n / (b_k b_{n-k})`, for `0 <= k <= n - 1`.
pub fn crofton_constant(n: u32, k: u32) -> Result<f64> {
    if n < 1 || k >= n {
        return domain(format!("Crofton constant needs 0 <= k < n, got n={n}, k={k}"));
    }
    Ok(binomial(n, k) * ball_volume(n) / (ball_volume(k) * ball_volume(n - k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::beta_k;
    use crate::orthogonal::OrthoMatrix;
    use nalgebra::DMatrix;

    #[test]
    fn ball_volumes() {
        assert_eq!(ball_volume(0), 1.0);
        assert_eq!(ball_volume(1), 2.0);
        assert!((ball_volume(2) - PI).abs() < 1e-15);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((ball_volume(5) - 8.0 * PI * PI / 15.0).abs() < 1e-14);
    }

    #[test]
    fn crofton_constants() {
        assert!((crofton_constant(3, 1).unwrap() - 2.0).abs() < 1e-14);
        assert!((crofton_constant(3, 2).unwrap() - 2.0).abs() < 1e-14);
        assert!((crofton_constant(4, 3).unwrap() - 3.0 * PI / 4.0).abs() < 1e-14);
        assert_eq!(crofton_constant(5, 0).unwrap(), 1.0);
        assert!(crofton_constant(3, 3).is_err());
        assert!(crofton_constant(0, 0).is_err());
    }

    fn coordinate_subspace(n: usize, cols: &[usize]) -> Subspace {
        let mut b = DMatrix::zeros(n, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            b[(c, j)] = 1.0;
        }
        Subspace::from_basis(b).unwrap()
    }

    #[test]
    fn cube_shadows() {
        let cube = unit_cube(3);
        let square = project(&cube, &coordinate_subspace(3, &[0, 1])).unwrap();
        assert_eq!(square.points().len(), 8);
        assert_eq!(hull_measure(&square), 1.0);
        let segment = project(&cube, &coordinate_subspace(3, &[0])).unwrap();
        assert_eq!(hull_measure(&segment), 1.0);
    }

    #[test]
    fn cube_shadow_along_diagonal_is_hexagon() {
        // frame whose first column is the main diagonal
        let d = 1.0 / 3f64.sqrt();
        let a = 1.0 / 2f64.sqrt();
        let b = 1.0 / 6f64.sqrt();
        let frame = DMatrix::from_row_slice(3, 3, &[d, a, b, d, -a, b, d, 0.0, -2.0 * b]);
        let line = beta_k(&OrthoMatrix::new(frame).unwrap(), 1).unwrap();
        let shadow = project(&unit_cube(3), &line.complement()).unwrap();
        assert!((hull_measure(&shadow) - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn project_dimension_checks() {
        let cube = unit_cube(4);
        assert!(matches!(
            project(&cube, &coordinate_subspace(3, &[0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ProjectedPoints::new(4, vec![]).is_err());
        assert!(ProjectedPoints::new(2, vec![vec![1.0]]).is_err());
    }

    #[test]
    fn three_dimensional_shadow_of_tesseract() {
        let shadow = project(&unit_cube(4), &coordinate_subspace(4, &[0, 1, 3])).unwrap();
        assert!((hull_measure(&shadow) - 1.0).abs() < 1e-14);
    }
}
