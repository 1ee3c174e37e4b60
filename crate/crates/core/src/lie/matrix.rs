//! Weights of a pair given by explicit matrix bases.
//!
//! After the change of basis `P`, the torus is diagonal and `ad(Y)` acts on
//! the matrix unit `E_ab` by `y_a - y_b`, so a weight space of an
//! `a`-stable subspace is its projection onto the positions carrying that
//! weight. Ambient torus coordinates are the diagonal entries `d_1..d_n`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::lie::blocks::{BlockPattern, DiagonalKind, TorusMode};
use crate::linalg::{commutator, flatten, identity, inverse, is_diagonal, mat_mul, rank, zeros, Matrix, Rref};
use crate::pair::PairSpec;
use crate::scalar::int;
use crate::torus::TorusSpace;
use crate::weights::WeightModule;
use crate::{QPair, Rational};

pub type QMatrix = Matrix<Rational>;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPairInput {
    pub ambient_dim: usize,
    pub g_basis: Vec<QMatrix>,
    pub h_basis: Vec<QMatrix>,
    pub torus_basis: Vec<QMatrix>,
    /// `P` such that `P^-1 Y P` is diagonal for every torus element.
    pub diagonalizer: QMatrix,
}

fn span_rank(ms: &[QMatrix], n: usize) -> usize {
    let rows: Vec<Vec<Rational>> = ms.iter().map(flatten).collect();
    rank(&rows, n * n)
}

fn in_span(span: &Rref<Rational>, m: &QMatrix) -> bool {
    span.contains(&flatten(m))
}

impl MatrixPairInput {
    /// Checks shapes, `h ⊂ g`, bracket closure of `h`, and that the torus
    /// is commuting, inside `h` and diagonalized by `P`.
    pub fn validate(&self) -> Result<()> {
        let n = self.ambient_dim;
        let square = |m: &QMatrix| m.len() == n && m.iter().all(|r| r.len() == n);
        let all = self.g_basis.iter().chain(&self.h_basis).chain(&self.torus_basis);
        if !all.chain(std::iter::once(&self.diagonalizer)).all(square) {
            return Err(Error::Malformed(format!("every matrix must be {n}x{n}")));
        }
        let g_span = Rref::new(&self.g_basis.iter().map(flatten).collect::<Vec<_>>(), n * n);
        if !self.h_basis.iter().all(|h| in_span(&g_span, h)) {
            return Err(Error::InvalidParameters("h is not contained in g".into()));
        }
        let h_span = Rref::new(&self.h_basis.iter().map(flatten).collect::<Vec<_>>(), n * n);
        for (i, a) in self.h_basis.iter().enumerate() {
            for (j, b) in self.h_basis.iter().enumerate().skip(i + 1) {
                if !in_span(&h_span, &commutator(a, b)) {
                    return Err(Error::NotBracketClosed(format!(
                        "[h_{i}, h_{j}] is not in the span of h"
                    )));
                }
            }
        }
        let pinv = inverse(&self.diagonalizer)
            .ok_or_else(|| Error::BadTorus("change of basis is singular".into()))?;
        for (i, t) in self.torus_basis.iter().enumerate() {
            if !in_span(&h_span, t) {
                return Err(Error::BadTorus(format!("torus element {i} is not in h")));
            }
            if !is_diagonal(&mat_mul(&pinv, &mat_mul(t, &self.diagonalizer))) {
                return Err(Error::BadTorus(format!(
                    "torus element {i} is not diagonalized by the change of basis"
                )));
            }
            for s in &self.torus_basis[i + 1..] {
                if commutator(t, s).iter().flatten().any(|x| x != &int::<Rational>(0)) {
                    return Err(Error::BadTorus("torus elements do not commute".into()));
                }
            }
        }
        Ok(())
    }
}

/// Joint weight decomposition of `h` and `g/h` under the torus.
pub fn extract_weights(input: &MatrixPairInput) -> Result<QPair> {
    input.validate()?;
    let n = input.ambient_dim;
    let p = &input.diagonalizer;
    let pinv = inverse(p).expect("validated");
    let conj = |m: &QMatrix| mat_mul(&pinv, &mat_mul(m, p));
    let diag_rows: Vec<Vec<Rational>> = input
        .torus_basis
        .iter()
        .map(|t| {
            let d = conj(t);
            (0..n).map(|a| d[a][a].clone()).collect()
        })
        .collect();
    let constraints: Vec<LinearForm<Rational>> = Rref::new(&diag_rows, n)
        .null_space()
        .into_iter()
        .map(LinearForm::new)
        .collect();
    let labels = (1..=n).map(|a| format!("d{a}")).collect();
    let space = TorusSpace::new(n, labels, constraints)?;

    // positions grouped by the weight of E_ab on the slice
    let mut classes: BTreeMap<Vec<Rational>, (LinearForm<Rational>, Vec<(usize, usize)>)> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let w = if a == b {
                LinearForm::zero(n)
            } else {
                LinearForm::difference(n, a, b)
            };
            let key = space.reduce(&w).into_coeffs();
            classes.entry(key).or_insert_with(|| (w, Vec::new())).1.push((a, b));
        }
    }
    let h: Vec<QMatrix> = input.h_basis.iter().map(conj).collect();
    let g: Vec<QMatrix> = input.g_basis.iter().map(conj).collect();
    let dim_h = span_rank(&h, n);
    let dim_g = span_rank(&g, n);
    let project = |ms: &[QMatrix], pos: &[(usize, usize)]| {
        let rows: Vec<Vec<Rational>> = ms
            .iter()
            .map(|m| pos.iter().map(|&(a, b)| m[a][b].clone()).collect())
            .collect();
        rank(&rows, pos.len())
    };
    let mut h_w = Vec::new();
    let mut q_w = Vec::new();
    let (mut sum_h, mut sum_g) = (0, 0);
    for (form, pos) in classes.values() {
        let mh = project(&h, pos);
        let mg = project(&g, pos);
        sum_h += mh;
        sum_g += mg;
        if mh > mg {
            return Err(Error::WeightDimensionMismatch(
                "a weight space of h is larger than that of g".into(),
            ));
        }
        if mh > 0 {
            h_w.push((form.clone(), mh as u64));
        }
        if mg > mh {
            q_w.push((form.clone(), (mg - mh) as u64));
        }
    }
    if sum_h != dim_h {
        return Err(Error::WeightDimensionMismatch(format!(
            "weight spaces of h add up to {sum_h}, dim h = {dim_h}"
        )));
    }
    if sum_g != dim_g {
        return Err(Error::WeightDimensionMismatch(format!(
            "weight spaces of g add up to {sum_g}, dim g = {dim_g}"
        )));
    }
    PairSpec::new(
        WeightModule::new(space.clone(), "g/h", q_w)?,
        WeightModule::new(space, "h", h_w)?,
        None,
        format!("matrix pair in gl({n})"),
    )
}

fn unit(n: usize, a: usize, b: usize) -> QMatrix {
    let mut m = zeros(n, n);
    m[a][b] = int(1);
    m
}

fn sl_diagonal(n: usize, coords: &[usize]) -> Vec<QMatrix> {
    coords
        .windows(2)
        .map(|w| {
            let mut m = unit(n, w[0], w[0]);
            m[w[1]][w[1]] = int(-1);
            m
        })
        .collect()
}

/// Matrix bases for a block pattern: `g = sl(n)`, `h` spanned by the matrix
/// units of the pattern and the diagonal part for the given torus mode.
pub fn sl_block_matrices(pattern: &BlockPattern, mode: TorusMode) -> MatrixPairInput {
    let n = pattern.n();
    let block = pattern.block_of();
    let mut g_basis = sl_diagonal(n, &(0..n).collect::<Vec<_>>());
    let mut h_basis = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                g_basis.push(unit(n, a, b));
                if pattern.contains_position(a, b) {
                    h_basis.push(unit(n, a, b));
                }
            }
        }
    }
    let full = |b: usize| pattern.kinds()[b] == DiagonalKind::Full;
    let torus = match mode {
        TorusMode::Derived => (0..pattern.sizes().len())
            .filter(|&b| full(b))
            .flat_map(|b| sl_diagonal(n, &(0..n).filter(|&a| block[a] == b).collect::<Vec<_>>()))
            .collect(),
        TorusMode::Full => sl_diagonal(n, &(0..n).filter(|&a| full(block[a])).collect::<Vec<_>>()),
    };
    h_basis.extend(torus.iter().cloned());
    MatrixPairInput {
        ambient_dim: n,
        g_basis,
        h_basis,
        torus_basis: torus,
        diagonalizer: identity(n),
    }
}

/// `prod sp(n_i) ⊂ sp(n)` as `2n x 2n` matrices preserving
/// `sum x_a ∧ x_{n+a}`, with the diagonal torus `E_aa - E_{n+a,n+a}`.
pub fn sp_product_matrices(parts: &[usize]) -> MatrixPairInput {
    let n: usize = parts.iter().sum();
    let m = 2 * n;
    let factor: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(i).take(k))
        .collect();
    let coord = |x: usize| x % n;
    // Omega = [[0, I], [-I, 0]]; X -> X - Omega^-1 X^T Omega lands in sp.
    let omega_sign = |x: usize| if x < n { 1i64 } else { -1 };
    let partner = |x: usize| if x < n { x + n } else { x - n };
    let mut g_basis = Vec::new();
    let mut h_basis = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let mut x = unit(m, a, b);
            // Omega^-1 E_ba Omega = s E_{partner(b), partner(a)}
            let s = omega_sign(a) * omega_sign(b);
            x[partner(b)][partner(a)] -= Rational::from_integer(s.into());
            if x.iter().flatten().all(|v| v == &int::<Rational>(0)) {
                continue;
            }
            if factor[coord(a)] == factor[coord(b)] {
                h_basis.push(x.clone());
            }
            g_basis.push(x);
        }
    }
    let torus = (0..n)
        .map(|a| {
            let mut t = unit(m, a, a);
            t[n + a][n + a] = int(-1);
            t
        })
        .collect();
    MatrixPairInput {
        ambient_dim: m,
        g_basis,
        h_basis,
        torus_basis: torus,
        diagonalizer: identity(m),
    }
}

/// Quaternion `a + bi + cj + dk` as left multiplication on `R^4`.
fn left_mult(q: [i64; 4]) -> [[i64; 4]; 4] {
    let [a, b, c, d] = q;
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

/// `sp(1) + sp(1,1) ⊂ sp(2,1)` inside `gl(3, H) ⊂ gl(12, R)`, with the split
/// torus spanned by `E_23 + E_32`.
pub fn sp21_pair() -> MatrixPairInput {
    const N: usize = 12;
    let j = [1i64, 1, -1];
    let units = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    let place = |m: &mut QMatrix, a: usize, b: usize, q: [i64; 4], s: i64| {
        let l = left_mult(q);
        for (r, row) in l.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                m[4 * a + r][4 * b + c] += Rational::from_integer((s * x).into());
            }
        }
    };
    // X = u E_ab - J conj(u) E_ba J
    let element = |a: usize, b: usize, u: [i64; 4]| {
        let mut m = zeros(N, N);
        place(&mut m, a, b, u, 1);
        let conj = [u[0], -u[1], -u[2], -u[3]];
        place(&mut m, b, a, conj, -j[a] * j[b]);
        m
    };
    let mut g_basis = Vec::new();
    let mut h_basis = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for u in units {
                let x = element(a, b, u);
                if x.iter().flatten().all(|v| v == &int::<Rational>(0)) {
                    continue;
                }
                if (a == 0) == (b == 0) {
                    h_basis.push(x.clone());
                }
                g_basis.push(x);
            }
        }
    }
    let torus = element(1, 2, units[0]);
    let mut p = zeros(N, N);
    for k in 0..4 {
        p[k][k] = int(1);
        p[4 + k][4 + k] = int(1);
        p[8 + k][4 + k] = int(1);
        p[4 + k][8 + k] = int(1);
        p[8 + k][8 + k] = int(-1);
    }
    MatrixPairInput {
        ambient_dim: N,
        g_basis,
        h_basis,
        torus_basis: vec![torus],
        diagonalizer: p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::blocks::build_sl_block;

    #[test]
    fn block_pattern_matches_direct_weights() {
        let p = BlockPattern::table2("H11", 2, 1, 2).unwrap();
        for mode in [TorusMode::Derived, TorusMode::Full] {
            let direct = build_sl_block(&p, mode).unwrap();
            let extracted = extract_weights(&sl_block_matrices(&p, mode)).unwrap();
            assert!(direct.space().same_space(extracted.space()));
            assert!(direct.h_module().same_weights(extracted.h_module()));
            assert!(direct.g_module().same_weights(extracted.g_module()));
        }
    }

    #[test]
    fn sp_product_dimensions() {
        let spec = extract_weights(&sp_product_matrices(&[1, 1])).unwrap();
        assert_eq!(spec.total_dim(), 10);
        assert_eq!(spec.h_module().total_dim(), 6);
    }

    #[test]
    fn sp21_dimensions() {
        let spec = extract_weights(&sp21_pair()).unwrap();
        assert_eq!(spec.h_module().total_dim(), 13);
        assert_eq!(spec.g_module().total_dim(), 8);
        assert_eq!(spec.space().dim(), 1);
    }

    #[test]
    fn rejects_unclosed_h() {
        let n = 3;
        let input = MatrixPairInput {
            ambient_dim: n,
            g_basis: sl_block_matrices(&BlockPattern::table1("H4", 2, 1).unwrap(), TorusMode::Derived).g_basis,
            h_basis: vec![unit(n, 0, 1), unit(n, 1, 2)],
            torus_basis: vec![],
            diagonalizer: identity(n),
        };
        assert!(matches!(extract_weights(&input), Err(Error::NotBracketClosed(_))));
    }

    #[test]
    fn rejects_torus_outside_h() {
        let p = BlockPattern::table1("H1", 1, 2).unwrap();
        let mut input = sl_block_matrices(&p, TorusMode::Derived);
        input.torus_basis = sl_diagonal(3, &[0, 1]);
        assert!(matches!(extract_weights(&input), Err(Error::BadTorus(_))));
    }
}
