use serde::{Deserialize, Serialize};

use crate::{Matrix, Result, Vector, VolumeError};

/// Convex bodies symmetric about the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexBody {
    Box { half_widths: Vec<f64> },
    Ball { dim: usize, radius: f64 },
    /// Convex hull of `±v` for the given generators, stored with its facet
    /// normals `a` (the body is `max_a |a·x| <= 1`).
    Polytope { generators: Vec<Vec<f64>>, facets: Vec<Vec<f64>> },
}

const FACET_TOL: f64 = 1e-9;

impl ConvexBody {
    pub fn cube(dim: usize) -> Self {
        ConvexBody::Box {
            half_widths: vec![1.0; dim],
        }
    }

    pub fn unit_ball(dim: usize) -> Self {
        ConvexBody::Ball { dim, radius: 1.0 }
    }

    /// `conv(±v_1, ..., ±v_k)`; must be full-dimensional.
    pub fn symmetric_polytope(generators: Vec<Vec<f64>>) -> Result<Self> {
        let d = generators.first().map_or(0, |v| v.len());
        if d == 0 || generators.iter().any(|v| v.len() != d) {
            return Err(VolumeError::InvalidBody("generators must share a positive dimension".into()));
        }
        let vertices: Vec<Vector> = generators
            .iter()
            .flat_map(|v| {
                let v = Vector::from_column_slice(v);
                [v.clone(), -v]
            })
            .collect();
        let mut facets: Vec<Vector> = Vec::new();
        let mut subset: Vec<usize> = (0..d).collect();
        // every facet misses the origin, so it is {a·x = 1} through d vertices
        loop {
            let rows = Matrix::from_fn(d, d, |i, j| vertices[subset[i]][j]);
            if let Some(inv) = rows.clone().try_inverse() {
                let a = inv * Vector::from_element(d, 1.0);
                let supporting = vertices.iter().all(|v| a.dot(v) <= 1.0 + FACET_TOL);
                if supporting && !facets.iter().any(|f| (f - &a).norm() < 1e-7) {
                    facets.push(a);
                }
            }
            if !next_subset(&mut subset, vertices.len()) {
                break;
            }
        }
        if facets.len() < 2 * d {
            return Err(VolumeError::InvalidBody("polytope is not full-dimensional".into()));
        }
        Ok(ConvexBody::Polytope {
            generators,
            facets: facets.iter().map(|a| a.iter().copied().collect()).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Box { half_widths } => half_widths.len(),
            ConvexBody::Ball { dim, .. } => *dim,
            ConvexBody::Polytope { generators, .. } => generators[0].len(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            ConvexBody::Box { half_widths } => x.iter().zip(half_widths).all(|(xi, h)| xi.abs() <= *h),
            ConvexBody::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>() <= radius * radius,
            ConvexBody::Polytope { facets, .. } => facets
                .iter()
                .all(|a| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>().abs() <= 1.0),
        }
    }

    /// Half-widths of the smallest centered box containing `M·C`.
    pub fn half_widths_under(&self, m: &Matrix) -> Vec<f64> {
        let d = self.dim();
        match self {
            ConvexBody::Box { half_widths } => (0..d)
                .map(|i| (0..d).map(|j| m[(i, j)].abs() * half_widths[j]).sum())
                .collect(),
            ConvexBody::Ball { radius, .. } => (0..d).map(|i| m.row(i).norm() * radius).collect(),
            ConvexBody::Polytope { generators, .. } => (0..d)
                .map(|i| {
                    generators
                        .iter()
                        .map(|v| (0..d).map(|j| m[(i, j)] * v[j]).sum::<f64>().abs())
                        .fold(0.0, f64::max)
                })
                .collect(),
        }
    }

    pub fn half_widths(&self) -> Vec<f64> {
        self.half_widths_under(&Matrix::identity(self.dim(), self.dim()))
    }

    /// Exact volume where a closed form exists.
    pub fn exact_volume(&self) -> Option<f64> {
        match self {
            ConvexBody::Box { half_widths } => Some(half_widths.iter().map(|h| 2.0 * h).product()),
            ConvexBody::Ball { dim, radius } => {
                // V_d = pi^{d/2} / Gamma(d/2 + 1)
                let d = *dim as f64;
                let gamma = match dim % 2 {
                    0 => (1..=dim / 2).map(|k| k as f64).product::<f64>(),
                    _ => {
                        (0..=dim / 2).map(|k| k as f64 + 0.5).product::<f64>() * std::f64::consts::PI.sqrt()
                    }
                };
                Some(std::f64::consts::PI.powf(d / 2.0) / gamma * radius.powf(d))
            }
            ConvexBody::Polytope { .. } => None,
        }
    }
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
