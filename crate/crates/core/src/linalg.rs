//! Dense linear algebra over a [`Scalar`] field: row reduction, rank,
//! null spaces and square-matrix helpers. Rows are plain `Vec<T>`.

use crate::scalar::Scalar;

/// Square or rectangular dense matrix stored row-major.
pub type Matrix<T> = Vec<Vec<T>>;

/// Result of reducing a list of row vectors to reduced row echelon form.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref<T> {
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<T: Scalar> Rref<T> {
    pub fn new(rows: &[Vec<T>], ncols: usize) -> Self {
        let mut m: Vec<Vec<T>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            // Largest magnitude pivot; for exact types any nonzero would do.
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if m[i][c].sign() != 0
                    && best.map_or(true, |b| m[i][c].abs() > m[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(p) = best else { continue };
            m.swap(r, p);
            let inv = T::one() / m[r][c].clone();
            for x in m[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..m.len() {
                if i != r && m[i][c].sign() != 0 {
                    let factor = m[i][c].clone();
                    for j in 0..ncols {
                        if m[r][j].sign() != 0 {
                            let v = m[i][j].clone() - factor.clone() * m[r][j].clone();
                            m[i][j] = v;
                        }
                    }
                    if !T::EXACT {
                        m[i][c] = T::zero();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Rref { rows: m, pivots, ncols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the row span: the returned vector vanishes on every
    /// pivot column and is the unique such representative of `v + span`.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if out[c].sign() != 0 {
                let f = out[c].clone();
                for j in 0..self.ncols {
                    if row[j].sign() != 0 {
                        out[j] = out[j].clone() - f.clone() * row[j].clone();
                    }
                }
                if !T::EXACT {
                    out[c] = T::zero();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.sign() == 0)
    }

    /// Columns that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Basis of `{x : row . x = 0 for all rows}`, one vector per free column,
    /// each with a 1 in its free column and 0 in the other free columns.
    pub fn null_space(&self) -> Vec<Vec<T>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![T::zero(); self.ncols];
                v[f] = T::one();
                for (row, &c) in self.rows.iter().zip(&self.pivots) {
                    v[c] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    Rref::new(rows, ncols).rank()
}

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn zeros<T: Scalar>(rows: usize, cols: usize) -> Matrix<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out: Matrix<T> = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].sign() == 0 {
                continue;
            }
            for j in 0..m {
                if b[l][j].sign() != 0 {
                    out[i][j] = out[i][j].clone() + a[i][l].clone() * b[l][j].clone();
                }
            }
        }
    }
    out
}

pub fn mat_sub<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.clone() - q.clone()).collect())
        .collect()
}

/// `[a, b] = ab - ba`.
pub fn commutator<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.len();
    let aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let red = Rref::new(&aug, 2 * n);
    if red.rank() < n || red.pivots[n - 1] >= n {
        return None;
    }
    Some(red.rows.iter().map(|r| r[n..].to_vec()).collect())
}

pub fn is_diagonal<T: Scalar>(a: &Matrix<T>) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.sign() == 0))
}

/// Flattens a matrix into a row vector (for span computations).
pub fn flatten<T: Scalar>(a: &Matrix<T>) -> Vec<T> {
    a.iter().flat_map(|r| r.iter().cloned()).collect()
}
