//! Convex hull measures in dimensions 1 to 3.

use std::collections::HashSet;

/// Relative tolerance; scaled by the coordinate extent (for distances) or its
/// square (for cross products).
pub const HULL_TOLERANCE: f64 = 1e-12;

/// Largest coordinate extent of the point set, at least `f64::MIN_POSITIVE`.
fn extent<const D: usize>(points: &[[f64; D]]) -> f64 {
    let mut worst = 0.0f64;
    for axis in 0..D {
        let lo = points.iter().map(|p| p[axis]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p[axis]).fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max(hi - lo);
    }
    worst.max(f64::MIN_POSITIVE)
}

/// Length of the hull of points on a line.
pub fn interval_length(points: &[f64]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let lo = points.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull vertices by Andrew's monotone chain, with
/// collinear points dropped.
pub fn hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let s = extent(&pts);
    let eps = HULL_TOLERANCE * s * s;
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Area of the convex hull; 0 for collinear input.
pub fn hull_area(points: &[[f64; 2]]) -> f64 {
    let hull = hull_2d(points);
    if hull.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * twice.abs()
}

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone)]
struct Face {
    v: [usize; 3],
    /// Unit outward normal.
    normal: V3,
    offset: f64,
    alive: bool,
}

impl Face {
    fn new(points: &[V3], v: [usize; 3]) -> Self {
        let n = cross(sub(points[v[1]], points[v[0]]), sub(points[v[2]], points[v[0]]));
        let len = norm(n);
        let normal = if len > 0.0 {
            [n[0] / len, n[1] / len, n[2] / len]
        } else {
            [0.0; 3]
        };
        Face {
            v,
            normal,
            offset: dot(normal, points[v[0]]),
            alive: true,
        }
    }

    fn height(&self, p: V3) -> f64 {
        dot(self.normal, p) - self.offset
    }
}

/// Triangulated boundary of a full-dimensional 3-D convex hull.
#[derive(Debug, Clone)]
pub struct Hull3 {
    points: Vec<V3>,
    faces: Vec<[usize; 3]>,
    interior: V3,
}

impl Hull3 {
    /// Incremental hull; `None` when the points are coplanar within tolerance.
    pub fn new(points: &[V3]) -> Option<Self> {
        if points.len() < 4 {
            return None;
        }
        let pts = points.to_vec();
        let eps = HULL_TOLERANCE * extent(&pts);

        // initial tetrahedron: extreme pair, farthest from their line, farthest from their plane
        let axis = (0..3)
            .max_by(|&a, &b| {
                let span = |ax: usize| {
                    let lo = pts.iter().map(|p| p[ax]).fold(f64::INFINITY, f64::min);
                    let hi = pts.iter().map(|p| p[ax]).fold(f64::NEG_INFINITY, f64::max);
                    hi - lo
                };
                span(a).total_cmp(&span(b))
            })
            .unwrap();
        let i0 = (0..pts.len()).min_by(|&a, &b| pts[a][axis].total_cmp(&pts[b][axis]))?;
        let i1 = (0..pts.len()).max_by(|&a, &b| pts[a][axis].total_cmp(&pts[b][axis]))?;
        let dir = sub(pts[i1], pts[i0]);
        let line_dist = |p: V3| norm(cross(dir, sub(p, pts[i0]))) / norm(dir).max(f64::MIN_POSITIVE);
        let i2 = (0..pts.len()).max_by(|&a, &b| line_dist(pts[a]).total_cmp(&line_dist(pts[b])))?;
        if line_dist(pts[i2]) <= eps {
            return None;
        }
        let base = Face::new(&pts, [i0, i1, i2]);
        let i3 = (0..pts.len()).max_by(|&a, &b| base.height(pts[a]).abs().total_cmp(&base.height(pts[b]).abs()))?;
        if base.height(pts[i3]).abs() <= eps {
            return None;
        }

        let seed = [i0, i1, i2, i3];
        let interior = {
            let mut c = [0.0; 3];
            for &i in &seed {
                for (ax, cv) in c.iter_mut().enumerate() {
                    *cv += pts[i][ax] / 4.0;
                }
            }
            c
        };
        let mut faces: Vec<Face> = Vec::new();
        for tri in [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]] {
            let mut f = Face::new(&pts, tri);
            if f.height(interior) > 0.0 {
                f = Face::new(&pts, [tri[0], tri[2], tri[1]]);
            }
            faces.push(f);
        }

        for (p_idx, &p) in pts.iter().enumerate() {
            if seed.contains(&p_idx) {
                continue;
            }
            let visible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| f.alive && f.height(p) > eps)
                .map(|(i, _)| i)
                .collect();
            if visible.is_empty() {
                continue;
            }
            // ordered edge list keeps face order, and so the volume sum, reproducible
            let mut edges = Vec::with_capacity(3 * visible.len());
            for &fi in &visible {
                let v = faces[fi].v;
                for e in 0..3 {
                    edges.push((v[e], v[(e + 1) % 3]));
                }
                faces[fi].alive = false;
            }
            let lookup: HashSet<(usize, usize)> = edges.iter().copied().collect();
            for &(a, b) in edges.iter().filter(|&&(a, b)| !lookup.contains(&(b, a))) {
                faces.push(Face::new(&pts, [a, b, p_idx]));
            }
        }

        Some(Hull3 {
            faces: faces.into_iter().filter(|f| f.alive).map(|f| f.v).collect(),
            points: pts,
            interior,
        })
    }

    /// Sum of the tetrahedra spanned by each boundary triangle and an interior point.
    pub fn volume(&self) -> f64 {
        let c = self.interior;
        self.faces
            .iter()
            .map(|f| {
                let a = sub(self.points[f[0]], c);
                let b = sub(self.points[f[1]], c);
                let d = sub(self.points[f[2]], c);
                dot(a, cross(b, d)) / 6.0
            })
            .sum()
    }

    pub fn surface_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let p = &self.points;
                0.5 * norm(cross(sub(p[f[1]], p[f[0]]), sub(p[f[2]], p[f[0]])))
            })
            .sum()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.faces
    }
}

/// Volume of the 3-D convex hull; 0 for coplanar input.
pub fn hull_volume(points: &[V3]) -> f64 {
    Hull3::new(points).map_or(0.0, |h| h.volume())
}
