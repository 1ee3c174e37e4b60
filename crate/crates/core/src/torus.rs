//! The split torus `a` as a linear slice of an ambient coordinate space.
//!
//! Forms are stored in ambient coordinates. Two forms agree on the slice iff
//! they differ by a combination of the constraints, so every form has a
//! canonical representative: its reduction modulo the constraint row space,
//! which vanishes on the pivot columns. The remaining (free) columns give
//! intrinsic coordinates on `a`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::linalg::Rref;
use crate::scalar::Scalar;

struct Inner<T> {
    ambient: usize,
    labels: Vec<String>,
    constraints: Vec<LinearForm<T>>,
    rref: Rref<T>,
    free: Vec<usize>,
    lift: Vec<Vec<T>>,
}

/// Cheaply clonable handle; all modules and functions built on the same
/// torus share one allocation.
#[derive(Clone)]
pub struct TorusSpace<T> {
    inner: Arc<Inner<T>>,
}

impl<T: Scalar> TorusSpace<T> {
    /// Slice of `T^ambient` cut out by `constraints`, which must be linearly
    /// independent. Labels default to `y0, y1, ...` when empty.
    pub fn new(ambient: usize, labels: Vec<String>, constraints: Vec<LinearForm<T>>) -> Result<Self> {
        for c in &constraints {
            if c.arity() != ambient {
                return Err(Error::ArityMismatch {
                    expected: ambient,
                    found: c.arity(),
                });
            }
        }
        let labels = if labels.is_empty() {
            (0..ambient).map(|i| format!("y{i}")).collect()
        } else if labels.len() != ambient {
            return Err(Error::ArityMismatch {
                expected: ambient,
                found: labels.len(),
            });
        } else {
            labels
        };
        let rows: Vec<Vec<T>> = constraints.iter().map(|c| c.coeffs().to_vec()).collect();
        let rref = Rref::new(&rows, ambient);
        if rref.rank() != constraints.len() {
            return Err(Error::DependentConstraints);
        }
        let free = rref.free_columns();
        let lift = rref.null_space();
        Ok(TorusSpace {
            inner: Arc::new(Inner {
                ambient,
                labels,
                constraints,
                rref,
                free,
                lift,
            }),
        })
    }

    /// The whole of `T^n`.
    pub fn full(n: usize) -> Self {
        Self::new(n, Vec::new(), Vec::new()).expect("no constraints")
    }

    pub fn with_labels(n: usize, labels: Vec<String>) -> Result<Self> {
        Self::new(n, labels, Vec::new())
    }

    /// Dimension of `a`.
    pub fn dim(&self) -> usize {
        self.inner.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.inner.ambient
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn constraints(&self) -> &[LinearForm<T>] {
        &self.inner.constraints
    }

    /// Ambient columns used as intrinsic coordinates.
    pub fn free_columns(&self) -> &[usize] {
        &self.inner.free
    }

    /// Whether an ambient point satisfies every constraint.
    pub fn contains(&self, y: &[T]) -> bool {
        y.len() == self.ambient_dim()
            && self
                .inner
                .constraints
                .iter()
                .all(|c| c.eval_unchecked(y).sign() == 0)
    }

    /// Validates an ambient point for evaluation.
    pub fn check_point(&self, y: &[T]) -> Result<()> {
        if y.len() != self.ambient_dim() {
            return Err(Error::ArityMismatch {
                expected: self.ambient_dim(),
                found: y.len(),
            });
        }
        if !self.contains(y) {
            return Err(Error::OutsideTorus);
        }
        Ok(())
    }

    /// Canonical representative of a form modulo the constraints.
    pub fn reduce(&self, f: &LinearForm<T>) -> LinearForm<T> {
        if self.inner.constraints.is_empty() {
            return f.clone();
        }
        LinearForm::new(self.inner.rref.reduce(f.coeffs()))
    }

    /// Whether the form vanishes identically on the slice.
    pub fn vanishes(&self, f: &LinearForm<T>) -> bool {
        self.reduce(f).is_zero()
    }

    /// The form in intrinsic coordinates (length `dim`).
    pub fn intrinsic_form(&self, f: &LinearForm<T>) -> LinearForm<T> {
        let r = self.reduce(f);
        LinearForm::new(self.inner.free.iter().map(|&c| r.coeffs()[c].clone()).collect())
    }

    /// Intrinsic coordinates of an ambient point on the slice.
    pub fn to_intrinsic(&self, y: &[T]) -> Vec<T> {
        self.inner.free.iter().map(|&c| y[c].clone()).collect()
    }

    /// The unique point of the slice with the given intrinsic coordinates.
    pub fn lift(&self, z: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.ambient_dim()];
        for (zk, basis) in z.iter().zip(&self.inner.lift) {
            if zk.sign() == 0 {
                continue;
            }
            for (yi, bi) in y.iter_mut().zip(basis) {
                if bi.sign() != 0 {
                    *yi = yi.clone() + zk.clone() * bi.clone();
                }
            }
        }
        y
    }

    /// Whether `self` and `other` are the same slice of the same ambient
    /// space (labels are documentation and ignored).
    pub fn same_space(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ambient == other.inner.ambient && self.inner.rref == other.inner.rref)
    }

    pub fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Whether the slice is mapped to itself by a signed permutation of the
    /// ambient coordinates (see [`LinearForm::compose_signed_permutation`]).
    pub fn invariant_under(&self, perm: &[usize], signs: &[i8]) -> bool {
        self.inner
            .constraints
            .iter()
            .all(|c| self.inner.rref.contains(c.compose_signed_permutation(perm, signs).coeffs()))
    }
}

impl<T: Scalar> PartialEq for TorusSpace<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other)
    }
}

impl<T: fmt::Debug> fmt::Debug for TorusSpace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusSpace")
            .field("ambient", &self.inner.ambient)
            .field("dim", &self.inner.free.len())
            .field("constraints", &self.inner.constraints)
            .finish()
    }
}
