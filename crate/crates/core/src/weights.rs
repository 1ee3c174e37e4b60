use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::pl::PLFunction;
use crate::scalar::{int, Scalar};
use crate::torus::TorusSpace;

/// The weights of `a` on a finite-dimensional module, with multiplicities.
///
/// Entries are merged by equality on the torus slice and kept sorted by the
/// lexicographic order of their canonical (reduced) coefficients; the stored
/// representative of a class is its lexicographically smallest ambient form.
#[derive(Clone, Debug)]
pub struct WeightModule<T> {
    space: TorusSpace<T>,
    name: String,
    weights: Vec<(LinearForm<T>, u64)>,
}

struct Key<T>(Vec<T>);

impl<T: Scalar> PartialEq for Key<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<T: Scalar> Eq for Key<T> {}
impl<T: Scalar> PartialOrd for Key<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Key<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        crate::scalar::lex_cmp(&self.0, &other.0)
    }
}

impl<T: Scalar> WeightModule<T> {
    pub fn new(
        space: TorusSpace<T>,
        name: impl Into<String>,
        entries: impl IntoIterator<Item = (LinearForm<T>, u64)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Key<T>, (LinearForm<T>, u64)> = BTreeMap::new();
        for (form, m) in entries {
            if form.arity() != space.ambient_dim() {
                return Err(Error::ArityMismatch {
                    expected: space.ambient_dim(),
                    found: form.arity(),
                });
            }
            if m == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            let key = Key(space.reduce(&form).into_coeffs());
            match merged.get_mut(&key) {
                Some((rep, total)) => {
                    *total += m;
                    if form.lex_cmp(rep).is_lt() {
                        *rep = form;
                    }
                }
                None => {
                    merged.insert(key, (form, m));
                }
            }
        }
        Ok(WeightModule {
            space,
            name: name.into(),
            weights: merged.into_values().collect(),
        })
    }

    pub fn empty(space: TorusSpace<T>, name: impl Into<String>) -> Self {
        WeightModule {
            space,
            name: name.into(),
            weights: Vec::new(),
        }
    }

    pub fn space(&self) -> &TorusSpace<T> {
        &self.space
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn weights(&self) -> &[(LinearForm<T>, u64)] {
        &self.weights
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `sum m_alpha`, the dimension of the module.
    pub fn total_dim(&self) -> u64 {
        self.weights.iter().map(|(_, m)| m).sum()
    }

    /// Multiplicity of a weight (0 when absent).
    pub fn multiplicity(&self, form: &LinearForm<T>) -> u64 {
        let key = self.space.reduce(form);
        self.weights
            .iter()
            .find(|(w, _)| self.space.reduce(w) == key)
            .map_or(0, |(_, m)| *m)
    }

    /// Total multiplicity of weights vanishing on the slice.
    pub fn zero_multiplicity(&self) -> u64 {
        self.weights
            .iter()
            .filter(|(w, _)| self.space.vanishes(w))
            .map(|(_, m)| m)
            .sum()
    }

    /// The sum `sum m_alpha alpha`, i.e. the trace of the action.
    pub fn trace_form(&self) -> LinearForm<T> {
        let mut acc = LinearForm::zero(self.space.ambient_dim());
        for (w, m) in &self.weights {
            acc = &acc + &w.scale(&int(*m as i64));
        }
        acc
    }

    fn rebuild(&self, name: String, entries: Vec<(LinearForm<T>, u64)>) -> Result<Self> {
        WeightModule::new(self.space.clone(), name, entries)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        let entries = self.weights.iter().chain(&other.weights).cloned().collect();
        self.rebuild(format!("{} + {}", self.name, other.name), entries)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        let mut entries = Vec::with_capacity(self.weights.len() * other.weights.len());
        for (a, m) in &self.weights {
            for (b, n) in &other.weights {
                entries.push((a + b, m * n));
            }
        }
        self.rebuild(format!("{} (x) {}", self.name, other.name), entries)
    }

    fn square(&self, symmetric: bool, tag: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, (a, m)) in self.weights.iter().enumerate() {
            let diag = if symmetric { m * (m + 1) / 2 } else { m * (m - 1) / 2 };
            if diag > 0 {
                entries.push((a.scale(&int(2)), diag));
            }
            for (b, n) in &self.weights[i + 1..] {
                entries.push((a + b, m * n));
            }
        }
        self.rebuild(format!("{tag}({})", self.name), entries)
    }

    /// Weights of the exterior square.
    pub fn exterior_square(&self) -> Result<Self> {
        self.square(false, "L2")
    }

    /// Weights of the symmetric square.
    pub fn symmetric_square(&self) -> Result<Self> {
        self.square(true, "S2")
    }

    pub fn dual(&self) -> Self {
        let entries = self.weights.iter().map(|(w, m)| (-w, *m)).collect();
        self.rebuild(format!("{}*", self.name), entries)
            .expect("negation preserves validity")
    }

    /// Every multiplicity multiplied by `k` (the module `V^k`).
    pub fn repeated(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        let entries = self.weights.iter().map(|(w, m)| (w.clone(), m * k)).collect();
        self.rebuild(self.name.clone(), entries)
    }

    /// Drops every weight vanishing on the slice.
    pub fn without_zero_weights(&self) -> Self {
        WeightModule {
            space: self.space.clone(),
            name: self.name.clone(),
            weights: self
                .weights
                .iter()
                .filter(|(w, _)| !self.space.vanishes(w))
                .cloned()
                .collect(),
        }
    }

    /// Removes `m` copies of `form`; fails if fewer are present.
    pub fn remove(&self, form: &LinearForm<T>, m: u64) -> Result<Self> {
        if self.multiplicity(form) < m {
            return Err(Error::WeightDimensionMismatch(format!(
                "cannot remove {m} copies of {form:?} from {}",
                self.name
            )));
        }
        let key = self.space.reduce(form);
        let weights = self
            .weights
            .iter()
            .filter_map(|(w, k)| {
                if self.space.reduce(w) != key {
                    Some((w.clone(), *k))
                } else if *k > m {
                    Some((w.clone(), k - m))
                } else {
                    None
                }
            })
            .collect();
        Ok(WeightModule {
            space: self.space.clone(),
            name: self.name.clone(),
            weights,
        })
    }

    /// Removes every weight of `other` (with multiplicity) from `self`.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        let mut out = self.clone();
        for (w, m) in &other.weights {
            out = out.remove(w, *m)?;
        }
        Ok(out)
    }

    /// `rho^+_V(Y) = sum over alpha(Y) > 0 of m_alpha alpha(Y)`.
    pub fn rho_plus(&self, y: &[T]) -> Result<T> {
        self.space.check_point(y)?;
        let mut acc = T::zero();
        for (w, m) in &self.weights {
            let v = w.eval_unchecked(y);
            if v.sign() > 0 {
                acc = acc + v * int::<T>(*m as i64);
            }
        }
        Ok(acc)
    }

    /// `rho_V = 1/2 sum m_alpha |alpha|` as a PL function.
    pub fn rho_function(&self) -> PLFunction<T> {
        let half = T::from_frac(1, 2);
        let terms = self
            .weights
            .iter()
            .filter(|(w, _)| !self.space.vanishes(w))
            .map(|(w, m)| (half.clone() * int::<T>(*m as i64), w.clone()))
            .collect();
        PLFunction::from_parts(self.space.clone(), terms, LinearForm::zero(self.space.ambient_dim()))
    }

    /// Same multiset of weights on the same slice (names ignored).
    pub fn same_weights(&self, other: &Self) -> bool {
        self.space.same_space(&other.space)
            && self.weights.len() == other.weights.len()
            && self.weights.iter().zip(&other.weights).all(|((a, m), (b, n))| {
                m == n && self.space.reduce(a) == self.space.reduce(b)
            })
    }
}
