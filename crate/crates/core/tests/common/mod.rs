#![allow(dead_code)]

use proptest::prelude::*;
use rho_core::{LinearForm, QForm, QPL, QTorus, Rational, Scalar, TorusSpace};

pub fn q(n: i64) -> Rational {
    Rational::from_frac(n, 1)
}

pub fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// The full space `Q^n`, or the hyperplane `sum y_i = 0` when `slice`.
pub fn space(n: usize, slice: bool) -> QTorus {
    let constraints = if slice && n >= 2 { vec![LinearForm::from_ints(&vec![1; n])] } else { vec![] };
    TorusSpace::new(n, Vec::new(), constraints).unwrap()
}

pub fn form(v: &[i64]) -> QForm {
    LinearForm::from_ints(v)
}

/// Functions of dimension at most 4 with at most 6 abs-terms, coefficients
/// in `[-3, 3]` and small integer forms.
pub fn pl_function() -> impl Strategy<Value = QPL> {
    (1usize..=4, any::<bool>()).prop_flat_map(|(n, slice)| {
        let term = (-3i64..=3, prop::collection::vec(-2i64..=2, n));
        (
            prop::collection::vec(term, 0..=6),
            prop::collection::vec(-2i64..=2, n),
            Just(n),
            Just(slice),
        )
            .prop_map(|(terms, lin, n, slice)| {
                let terms = terms.into_iter().map(|(c, a)| (q(c), form(&a))).collect();
                QPL::new(space(n, slice), terms, form(&lin)).unwrap()
            })
    })
}

/// Integer points of the slice, from small integer vectors of the ambient
/// space (projected onto `sum = 0` by `y -> n y - sum(y)`).
pub fn point_on(space: &QTorus, raw: &[i64]) -> Vec<Rational> {
    let n = space.ambient_dim();
    let raw = &raw[..n];
    if space.constraints().is_empty() {
        qs(raw)
    } else {
        let s: i64 = raw.iter().sum();
        raw.iter().map(|&x| q(n as i64 * x - s)).collect()
    }
}
