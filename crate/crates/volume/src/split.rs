use crate::{Matrix, Result, VolumeError};

const TOL: f64 = 1e-8;

/// A real matrix diagonalizable over the reals, with its eigenvalues.
#[derive(Clone, Debug)]
pub struct SplitMatrix {
    matrix: Matrix,
    eigenvalues: Vec<f64>,
}

/// `1/2 sum |lambda_i|`.
pub fn rho(eigenvalues: &[f64]) -> f64 {
    0.5 * eigenvalues.iter().map(|l| l.abs()).sum::<f64>()
}

impl SplitMatrix {
    /// Rejects non-square input, complex eigenvalues and nontrivial Jordan
    /// blocks (geometric multiplicity below algebraic multiplicity).
    pub fn new(matrix: Matrix) -> Result<Self> {
        let d = matrix.nrows();
        if matrix.ncols() != d || d == 0 {
            return Err(VolumeError::DimensionMismatch("matrix must be square and nonempty".into()));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(VolumeError::InvalidParameters("matrix entries must be finite".into()));
        }
        let scale = matrix.norm().max(1.0);
        let complex = matrix.complex_eigenvalues();
        if complex.iter().any(|z| z.im.abs() > TOL * scale) {
            return Err(VolumeError::NonSplit("complex eigenvalues".into()));
        }
        let mut eig: Vec<f64> = complex.iter().map(|z| z.re).collect();
        eig.sort_by(f64::total_cmp);
        let mut i = 0;
        while i < d {
            let mut j = i;
            while j + 1 < d && (eig[j + 1] - eig[i]).abs() <= 1e-6 * scale {
                j += 1;
            }
            let lambda = eig[i..=j].iter().sum::<f64>() / (j - i + 1) as f64;
            let shifted = &matrix - Matrix::identity(d, d) * lambda;
            let sv = shifted.singular_values();
            let nullity = sv.iter().filter(|s| **s <= 1e-6 * scale).count();
            if nullity < j - i + 1 {
                return Err(VolumeError::NonSplit(format!(
                    "eigenvalue {lambda} has a nontrivial Jordan block"
                )));
            }
            for e in &mut eig[i..=j] {
                *e = lambda;
            }
            i = j + 1;
        }
        Ok(SplitMatrix { matrix, eigenvalues: eig })
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(Matrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries)))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Sorted eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn rho(&self) -> f64 {
        rho(&self.eigenvalues)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// `e^{tA}`, rejecting overflow.
    pub fn exp(&self, t: f64) -> Result<Matrix> {
        let m = (&self.matrix * t).exp();
        if m.iter().all(|x| x.is_finite()) {
            Ok(m)
        } else {
            Err(VolumeError::NonFinite(t))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_is_rejected() {
        let m = Matrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(SplitMatrix::new(m), Err(VolumeError::NonSplit(_))));
        let nil = Matrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(SplitMatrix::new(nil), Err(VolumeError::NonSplit(_))));
    }

    #[test]
    fn rotation_is_rejected() {
        let m = Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!(matches!(SplitMatrix::new(m), Err(VolumeError::NonSplit(_))));
    }

    #[test]
    fn symmetric_matrix_is_split() {
        let m = Matrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let s = SplitMatrix::new(m).unwrap();
        assert!((s.eigenvalues()[0] + 1.0).abs() < 1e-9);
        assert!((s.rho() - 1.0).abs() < 1e-9);
    }
}
