//! Coordinate symmetries of a PL function and its torus slice.
//!
//! Detection is verified, never assumed: a transposition or sign flip of
//! ambient coordinates is accepted only if it maps the slice to itself and
//! leaves the canonical form of the function unchanged. Accepted
//! transpositions generate a product of symmetric groups acting on
//! coordinate classes (hyperoctahedral when every coordinate of a class can
//! also be negated), whose fundamental domain is the sorted cone
//! `x_{c_1} <= x_{c_2} <= ...` (with `0 <= x_{c_1}` in the signed case).

use serde::{Deserialize, Serialize};

use crate::form::LinearForm;
use crate::pl::PLFunction;
use crate::scalar::Scalar;
use crate::torus::TorusSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryClass {
    /// Ambient coordinates permuted among themselves, ascending.
    pub coordinates: Vec<usize>,
    /// Whether each coordinate of the class may also be negated.
    pub signed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryGroup {
    pub classes: Vec<SymmetryClass>,
}

fn transposition(n: usize, a: usize, b: usize) -> (Vec<usize>, Vec<i8>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(a, b);
    (perm, vec![1; n])
}

fn flip(n: usize, a: usize) -> (Vec<usize>, Vec<i8>) {
    let mut signs = vec![1; n];
    signs[a] = -1;
    ((0..n).collect(), signs)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Whether `y -> f(g y)` equals `f` on the slice and `g` preserves it.
pub fn is_symmetry<T: Scalar>(f: &PLFunction<T>, perm: &[usize], signs: &[i8]) -> bool {
    let n = f.space().ambient_dim();
    if perm.len() != n || signs.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    f.space().invariant_under(perm, signs) && f.compose_signed_permutation(perm, signs).equals(f)
}

impl SymmetryGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.is_empty()
    }

    /// The largest group of coordinate transpositions and sign flips that
    /// this module can certify for `f`.
    pub fn detect<T: Scalar>(f: &PLFunction<T>) -> Self {
        let space = f.space();
        let n = space.ambient_dim();
        let canon = f.canonical();
        let fixes = |perm: &[usize], signs: &[i8]| {
            space.invariant_under(perm, signs)
                && canon.compose_signed_permutation(perm, signs).equals(&canon)
        };
        // Coordinates that vanish on the slice carry no information.
        let live: Vec<bool> = (0..n)
            .map(|i| !space.vanishes(&LinearForm::coordinate(n, i)))
            .collect();
        let mut parent: Vec<usize> = (0..n).collect();
        for a in 0..n {
            for b in a + 1..n {
                if !live[a] || !live[b] || find(&mut parent, a) == find(&mut parent, b) {
                    continue;
                }
                let (perm, signs) = transposition(n, a, b);
                if fixes(&perm, &signs) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let flippable: Vec<bool> = (0..n)
            .map(|a| {
                live[a] && {
                    let (perm, signs) = flip(n, a);
                    fixes(&perm, &signs)
                }
            })
            .collect();
        let mut classes = Vec::new();
        for root in 0..n {
            if !live[root] || find(&mut parent, root) != root {
                continue;
            }
            let coordinates: Vec<usize> = (0..n).filter(|&c| find(&mut parent, c) == root).collect();
            let signed = coordinates.iter().all(|&c| flippable[c]);
            if coordinates.len() > 1 || signed {
                classes.push(SymmetryClass {
                    coordinates,
                    signed,
                });
            }
        }
        SymmetryGroup { classes }
    }

    /// Generating signed permutations: adjacent transpositions inside each
    /// class and one sign flip per signed class.
    pub fn generators(&self, n: usize) -> Vec<(Vec<usize>, Vec<i8>)> {
        let mut out = Vec::new();
        for class in &self.classes {
            for w in class.coordinates.windows(2) {
                out.push(transposition(n, w[0], w[1]));
            }
            if class.signed {
                out.push(flip(n, class.coordinates[0]));
            }
        }
        out
    }

    /// Halfspaces `form >= 0` cutting out a fundamental domain.
    pub fn fundamental_region<T: Scalar>(&self, space: &TorusSpace<T>) -> Vec<LinearForm<T>> {
        let n = space.ambient_dim();
        let mut out = Vec::new();
        for class in &self.classes {
            if class.signed {
                out.push(LinearForm::coordinate(n, class.coordinates[0]));
            }
            for w in class.coordinates.windows(2) {
                out.push(LinearForm::difference(n, w[1], w[0]));
            }
        }
        out.retain(|f| !space.vanishes(f));
        out
    }

    /// A nonzero invariant linear functional on the slice, used to halve the
    /// fundamental domain of an even function. Sums over unsigned classes
    /// and fixed coordinates are invariant; signed classes have none.
    pub fn invariant_functional<T: Scalar>(&self, space: &TorusSpace<T>) -> Option<LinearForm<T>> {
        let n = space.ambient_dim();
        let mut moved = vec![None; n];
        for (k, class) in self.classes.iter().enumerate() {
            for &c in &class.coordinates {
                moved[c] = Some(k);
            }
        }
        let mut candidates = Vec::new();
        for c in 0..n {
            match moved[c] {
                None => candidates.push(LinearForm::coordinate(n, c)),
                Some(k) if self.classes[k].coordinates[0] == c && !self.classes[k].signed => {
                    let mut f = LinearForm::zero(n);
                    for &d in &self.classes[k].coordinates {
                        f = &f + &LinearForm::coordinate(n, d);
                    }
                    candidates.push(f);
                }
                Some(_) => {}
            }
        }
        candidates.into_iter().find(|f| !space.vanishes(f))
    }
}
