//! Subspaces of `R^n` and the map `O(n) -> G(n,k)`, `G -> G L_k`, with
//! `L_k = span(e_1, .., e_k)`.

use nalgebra::DMatrix;

use crate::error::{domain, Error, Result};
use crate::orthogonal::{OrthoMatrix, ORTHO_TOLERANCE};

/// A `k`-dimensional subspace of `R^n` with an orthonormal basis.
///
/// Bases are not canonical; compare subspaces through [`Subspace::projector`].
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
    /// Orthonormal basis of the orthogonal complement, when known.
    complement: Option<DMatrix<f64>>,
}

impl Subspace {
    /// Wraps an `n x k` matrix with orthonormal columns, `1 <= k <= n-1`.
    pub fn from_basis(basis: DMatrix<f64>) -> Result<Self> {
        let (n, k) = basis.shape();
        if k < 1 || k >= n {
            return domain(format!("subspace dimension {k} outside 1..={}", n.saturating_sub(1)));
        }
        let gram = basis.transpose() * &basis;
        let defect = (gram - DMatrix::<f64>::identity(k, k)).abs().max();
        if defect.is_nan() || defect > ORTHO_TOLERANCE {
            return domain(format!("basis columns are not orthonormal (defect {defect:e})"));
        }
        Ok(Self {
            basis,
            complement: None,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Orthogonal projector `B B^T`, independent of the basis.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// The orthogonal complement. Reuses the remaining frame columns when the
    /// subspace came from [`beta_k`]; otherwise completes the basis by
    /// Gram-Schmidt on the coordinate vectors.
    pub fn complement(&self) -> Subspace {
        let comp = match &self.complement {
            Some(c) => c.clone(),
            None => complete_basis(&self.basis),
        };
        Subspace {
            basis: comp,
            complement: Some(self.basis.clone()),
        }
    }
}

/// Orthonormal basis of the complement of the span of `basis`, choosing at
/// each step the coordinate vector with the largest residual.
fn complete_basis(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, k) = basis.shape();
    let mut found: Vec<nalgebra::DVector<f64>> = basis.column_iter().map(|c| c.clone_owned()).collect();
    let mut out = Vec::with_capacity(n - k);
    while out.len() < n - k {
        let mut best: Option<nalgebra::DVector<f64>> = None;
        for j in 0..n {
            let mut v = nalgebra::DVector::zeros(n);
            v[j] = 1.0;
            // two passes of Gram-Schmidt for stability
            for _ in 0..2 {
                for f in &found {
                    let p = f.dot(&v);
                    v.axpy(-p, f, 1.0);
                }
            }
            if best.as_ref().map_or(true, |b| v.norm() > b.norm()) {
                best = Some(v);
            }
        }
        let v = best.expect("n >= 1").normalize();
        found.push(v.clone());
        out.push(v);
    }
    DMatrix::from_columns(&out)
}

/// `beta_k(G) = G L_k`: the span of the first `k` columns of `g`.
pub fn beta_k(g: &OrthoMatrix, k: usize) -> Result<Subspace> {
    let n = g.n();
    if k < 1 || k >= n {
        return domain(format!("k = {k} outside 1..={}", n - 1));
    }
    let m = g.matrix();
    Ok(Subspace {
        basis: m.columns(0, k).clone_owned(),
        complement: Some(m.columns(k, n - k).clone_owned()),
    })
}

/// Free-function form of [`Subspace::complement`].
pub fn complement(l: &Subspace) -> Subspace {
    l.complement()
}

/// `max |P_a - P_b|`; zero exactly when the subspaces coincide.
pub fn projector_distance(a: &Subspace, b: &Subspace) -> Result<f64> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok((a.projector() - b.projector()).abs().max())
}

/// Principal angles between two subspaces of the same ambient space, in
/// increasing order, from the singular values of `A^T B`.
pub fn principal_angles(a: &Subspace, b: &Subspace) -> Result<Vec<f64>> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    let cross = a.basis.transpose() * &b.basis;
    let mut angles: Vec<f64> = cross
        .singular_values()
        .iter()
        .map(|s| s.clamp(-1.0, 1.0).acos())
        .collect();
    angles.sort_by(|x, y| x.total_cmp(y));
    Ok(angles)
}
