use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{dot, int, lex_cmp, Scalar};

/// A linear functional on the ambient coordinate space, i.e. a weight.
#[derive(Clone, PartialEq)]
pub struct LinearForm<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> LinearForm<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(arity: usize) -> Self {
        LinearForm::new(vec![T::zero(); arity])
    }

    /// The coordinate functional `e_i`.
    pub fn coordinate(arity: usize, i: usize) -> Self {
        let mut f = Self::zero(arity);
        f.coeffs[i] = T::one();
        f
    }

    /// `e_a - e_b`.
    pub fn difference(arity: usize, a: usize, b: usize) -> Self {
        let mut f = Self::zero(arity);
        f.coeffs[a] = f.coeffs[a].clone() + T::one();
        f.coeffs[b] = f.coeffs[b].clone() - T::one();
        f
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinearForm::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.sign() == 0)
    }

    pub fn eval(&self, y: &[T]) -> Result<T> {
        if y.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: y.len(),
            });
        }
        Ok(dot(&self.coeffs, y))
    }

    /// Evaluation without the arity check, for hot loops with validated input.
    pub(crate) fn eval_unchecked(&self, y: &[T]) -> T {
        dot(&self.coeffs, y)
    }

    pub fn scale(&self, s: &T) -> Self {
        LinearForm::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Pulls the form back along a coordinate map `y -> (sign_i * y[perm_i])`,
    /// i.e. returns `alpha o g` for the signed permutation `g`.
    pub fn compose_signed_permutation(&self, perm: &[usize], signs: &[i8]) -> Self {
        // (alpha o g)(y) = sum_i alpha_i * signs[i] * y[perm[i]]
        let mut out = vec![T::zero(); self.arity()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = if signs[i] < 0 { -c.clone() } else { c.clone() };
            out[perm[i]] = out[perm[i]].clone() + v;
        }
        LinearForm::new(out)
    }

    /// Splits `self = k * h` with `h` a canonical hyperplane normal: positive
    /// first nonzero coefficient and, for exact scalars, primitive integers.
    /// Returns `None` for the zero form.
    pub fn hyperplane_normal(&self) -> Option<(LinearForm<T>, T)> {
        let first = self.coeffs.iter().position(|c| c.sign() != 0)?;
        let mut h = self.coeffs.clone();
        T::normalize_direction(&mut h);
        if h[first].sign() < 0 {
            for x in h.iter_mut() {
                *x = -x.clone();
            }
        }
        let k = self.coeffs[first].clone() / h[first].clone();
        Some((LinearForm::new(h), k))
    }

    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.coeffs, &other.coeffs)
    }
}

impl<T: Scalar> Add for &LinearForm<T> {
    type Output = LinearForm<T>;
    fn add(self, rhs: &LinearForm<T>) -> LinearForm<T> {
        LinearForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &LinearForm<T> {
    type Output = LinearForm<T>;
    fn sub(self, rhs: &LinearForm<T>) -> LinearForm<T> {
        LinearForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &LinearForm<T> {
    type Output = LinearForm<T>;
    fn neg(self) -> LinearForm<T> {
        LinearForm::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: fmt::Debug> fmt::Debug for LinearForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "]")
    }
}
