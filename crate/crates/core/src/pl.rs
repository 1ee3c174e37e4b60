use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::scalar::Scalar;
use crate::torus::TorusSpace;

/// `f(Y) = sum c_i |alpha_i(Y)| + l(Y)` on a torus slice.
///
/// Terms are kept as given (sums concatenate, so cancelling terms survive
/// until [`PLFunction::canonical`] merges them).
#[derive(Clone, Debug)]
pub struct PLFunction<T> {
    space: TorusSpace<T>,
    abs_terms: Vec<(T, LinearForm<T>)>,
    linear: LinearForm<T>,
}

impl<T: Scalar> PLFunction<T> {
    pub fn new(
        space: TorusSpace<T>,
        abs_terms: Vec<(T, LinearForm<T>)>,
        linear: LinearForm<T>,
    ) -> Result<Self> {
        let n = space.ambient_dim();
        for form in abs_terms.iter().map(|(_, f)| f).chain(std::iter::once(&linear)) {
            if form.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: form.arity(),
                });
            }
        }
        Ok(Self::from_parts(space, abs_terms, linear))
    }

    pub(crate) fn from_parts(
        space: TorusSpace<T>,
        abs_terms: Vec<(T, LinearForm<T>)>,
        linear: LinearForm<T>,
    ) -> Self {
        PLFunction {
            space,
            abs_terms,
            linear,
        }
    }

    pub fn zero(space: TorusSpace<T>) -> Self {
        let linear = LinearForm::zero(space.ambient_dim());
        Self::from_parts(space, Vec::new(), linear)
    }

    pub fn space(&self) -> &TorusSpace<T> {
        &self.space
    }

    pub fn abs_terms(&self) -> &[(T, LinearForm<T>)] {
        &self.abs_terms
    }

    pub fn linear_term(&self) -> &LinearForm<T> {
        &self.linear
    }

    /// Exact value at an ambient point of the slice.
    pub fn evaluate(&self, y: &[T]) -> Result<T> {
        self.space.check_point(y)?;
        Ok(self.evaluate_unchecked(y))
    }

    pub(crate) fn evaluate_unchecked(&self, y: &[T]) -> T {
        let mut acc = self.linear.eval_unchecked(y);
        for (c, a) in &self.abs_terms {
            let v = a.eval_unchecked(y);
            if v.sign() != 0 {
                acc = acc + c.clone() * v.abs();
            }
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        let mut terms = self.abs_terms.clone();
        terms.extend(other.abs_terms.iter().cloned());
        Ok(Self::from_parts(
            self.space.clone(),
            terms,
            &self.linear + &other.linear,
        ))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_parts(
            self.space.clone(),
            self.abs_terms
                .iter()
                .map(|(c, a)| (c.clone() * s.clone(), a.clone()))
                .collect(),
            self.linear.scale(s),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    /// The unique normal form of the function on the slice: one term per
    /// hyperplane (canonical reduced normal, see
    /// [`LinearForm::hyperplane_normal`]), nonzero coefficients, sorted by
    /// normal, and a reduced linear term. Two functions agree everywhere on
    /// the slice iff their canonical forms are equal.
    pub fn canonical(&self) -> Self {
        let mut terms: Vec<(T, LinearForm<T>)> = Vec::new();
        for (c, a) in &self.abs_terms {
            let Some((h, k)) = self.space.reduce(a).hyperplane_normal() else {
                continue;
            };
            let c = c.clone() * k.abs();
            match terms.binary_search_by(|(_, g)| g.lex_cmp(&h)) {
                Ok(i) => terms[i].0 = terms[i].0.clone() + c,
                Err(i) => terms.insert(i, (c, h)),
            }
        }
        terms.retain(|(c, _)| c.sign() != 0);
        Self::from_parts(self.space.clone(), terms, self.space.reduce(&self.linear))
    }

    /// Functional equality on the slice.
    pub fn equals(&self, other: &Self) -> bool {
        if !self.space.same_space(&other.space) {
            return false;
        }
        let a = self.canonical();
        let b = other.canonical();
        a.linear == b.linear && a.abs_terms == b.abs_terms
    }

    /// Even functions: the linear term vanishes on the slice.
    pub fn is_even(&self) -> bool {
        self.space.vanishes(&self.linear)
    }

    /// The function `Y -> f(g Y)` for a signed permutation `g` of the
    /// ambient coordinates.
    pub fn compose_signed_permutation(&self, perm: &[usize], signs: &[i8]) -> Self {
        Self::from_parts(
            self.space.clone(),
            self.abs_terms
                .iter()
                .map(|(c, a)| (c.clone(), a.compose_signed_permutation(perm, signs)))
                .collect(),
            self.linear.compose_signed_permutation(perm, signs),
        )
    }
}

/// Structural equality: same slice and identical term lists. Use
/// [`PLFunction::equals`] for equality as functions.
impl<T: Scalar> PartialEq for PLFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_space(&other.space)
            && self.abs_terms == other.abs_terms
            && self.linear == other.linear
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn evaluates_sum_of_absolute_values() {
        let t = TorusSpace::full(2);
        let f = PLFunction::new(
            t,
            vec![(q(1), LinearForm::from_ints(&[1, -1]))],
            LinearForm::zero(2),
        )
        .unwrap();
        assert_eq!(f.evaluate(&[q(0), q(0)]).unwrap(), q(0));
        assert_eq!(f.evaluate(&[q(1), q(3)]).unwrap(), q(2));
    }

    #[test]
    fn canonical_merges_opposite_forms() {
        let t = TorusSpace::full(1);
        let f = PLFunction::new(
            t.clone(),
            vec![
                (q(1), LinearForm::from_ints(&[1])),
                (q(1), LinearForm::from_ints(&[-2])),
            ],
            LinearForm::zero(1),
        )
        .unwrap();
        let c = f.canonical();
        assert_eq!(c.abs_terms(), &[(q(3), LinearForm::from_ints(&[1]))]);
        let g = PLFunction::new(t, vec![(q(3), LinearForm::from_ints(&[-1]))], LinearForm::zero(1))
            .unwrap();
        assert!(f.equals(&g));
    }

    #[test]
    fn difference_cancels_to_zero() {
        let t = TorusSpace::full(2);
        let f = PLFunction::new(
            t.clone(),
            vec![(q(2), LinearForm::from_ints(&[1, 1]))],
            LinearForm::from_ints(&[1, 0]),
        )
        .unwrap();
        let z = f.sub(&f).unwrap();
        assert!(z.canonical().abs_terms().is_empty());
        assert!(z.equals(&PLFunction::zero(t)));
    }
}
