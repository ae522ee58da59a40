use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::orthogonal::random_sphere_point;

/// Labels accepted by [`builtin`].
pub const BUILTIN_LABELS: [&str; 5] = ["3-cube", "3-simplex", "k-icosahedron", "4-cube", "4-simplex"];

/// A convex polytope given by a vertex list; the body is its convex hull.
///
/// JSON form: `{"n": 3, "label": "...", "vertices": [[x, y, z], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct Polytope {
    pub n: usize,
    pub label: String,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawPolytope {
    n: usize,
    label: String,
    vertices: Vec<Vec<f64>>,
}

impl TryFrom<RawPolytope> for Polytope {
    type Error = Error;

    fn try_from(raw: RawPolytope) -> Result<Self> {
        Polytope::new(raw.n, raw.label, raw.vertices)
    }
}

impl Polytope {
    /// Checks vertex dimensions and finiteness. At least one vertex is
    /// required; full-dimensional bodies need `n + 1`.
    pub fn new(n: usize, label: impl Into<String>, vertices: Vec<Vec<f64>>) -> Result<Self> {
        if n < 1 {
            return domain("polytope dimension must be >= 1");
        }
        if vertices.is_empty() {
            return domain("polytope has no vertices");
        }
        for v in &vertices {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return domain("vertex coordinates must be finite");
            }
        }
        Ok(Self {
            n,
            label: label.into(),
            vertices,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("invalid polytope JSON: {e}")))
    }

    /// Multiplies every vertex by `factor`.
    pub fn scaled(&self, factor: f64) -> Polytope {
        Polytope {
            n: self.n,
            label: format!("{}*{factor}", self.label),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|c| c * factor).collect())
                .collect(),
        }
    }
}

/// `{0,1}^n`.
pub fn unit_cube(n: usize) -> Polytope {
    let vertices = (0..1usize << n)
        .map(|bits| (0..n).map(|i| ((bits >> i) & 1) as f64).collect())
        .collect();
    Polytope {
        n,
        label: format!("{n}-cube"),
        vertices,
    }
}

/// `conv{0, e_1, .., e_n}`.
pub fn standard_simplex(n: usize) -> Polytope {
    let mut vertices = vec![vec![0.0; n]];
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        vertices.push(e);
    }
    Polytope {
        n,
        label: format!("{n}-simplex"),
        vertices,
    }
}

/// Kirkman's icosahedron: `(+-9, +-6, +-6)`, `(+-12, +-4, 0)`, `(0, +-12, +-8)`, `(+-6, 0, +-12)`.
pub fn kirkman_icosahedron() -> Polytope {
    let mut vertices = Vec::with_capacity(20);
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                vertices.push(vec![9.0 * sx, 6.0 * sy, 6.0 * sz]);
            }
        }
    }
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            vertices.push(vec![12.0 * s1, 4.0 * s2, 0.0]);
        }
    }
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            vertices.push(vec![0.0, 12.0 * s1, 8.0 * s2]);
        }
    }
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            vertices.push(vec![6.0 * s1, 0.0, 12.0 * s2]);
        }
    }
    Polytope {
        n: 3,
        label: "k-icosahedron".into(),
        vertices,
    }
}

/// Named test bodies; labels are case-insensitive.
pub fn builtin(label: &str) -> Result<Polytope> {
    match label.to_ascii_lowercase().as_str() {
        "3-cube" => Ok(unit_cube(3)),
        "4-cube" => Ok(unit_cube(4)),
        "3-simplex" => Ok(standard_simplex(3)),
        "4-simplex" => Ok(standard_simplex(4)),
        "k-icosahedron" => Ok(kirkman_icosahedron()),
        _ => Err(Error::UnknownPolytope(label.into())),
    }
}

/// Builtins plus random polytopes named `r-polytope-{n}d-{count}v-seed{seed}`.
pub fn from_label(label: &str) -> Result<Polytope> {
    if let Ok(p) = builtin(label) {
        return Ok(p);
    }
    let unknown = || Error::UnknownPolytope(label.into());
    let rest = label.to_ascii_lowercase();
    let rest = rest.strip_prefix("r-polytope-").ok_or_else(unknown)?;
    let (n, rest) = rest.split_once("d-").ok_or_else(unknown)?;
    let (count, seed) = rest.split_once("v-seed").ok_or_else(unknown)?;
    let n = n.parse().map_err(|_| unknown())?;
    let count = count.parse().map_err(|_| unknown())?;
    let seed = seed.parse().map_err(|_| unknown())?;
    random_spherical_polytope(n, count, seed)
}

/// Convex hull of `count` uniform random points on `S^{n-1}`, `n` in {3, 4}.
/// The seed is recorded in the label.
pub fn random_spherical_polytope(n: usize, count: usize, seed: u64) -> Result<Polytope> {
    if !(3..=4).contains(&n) {
        return domain(format!(
            "random spherical polytopes are built in R^3 and R^4, not R^{n}"
        ));
    }
    if count < n + 1 {
        return domain(format!("need at least {} vertices, got {count}", n + 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = (0..count)
        .map(|_| random_sphere_point(n, &mut rng).into_inner())
        .collect();
    Polytope::new(n, format!("r-polytope-{n}d-{count}v-seed{seed}"), vertices)
}
