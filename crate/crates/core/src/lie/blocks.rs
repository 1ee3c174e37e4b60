//! Block subgroups of `sl(n)`: a block-diagonal shape whose diagonal blocks
//! are either full (`*`) or the identity, plus a set of strictly upper
//! off-diagonal blocks.

use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::pair::PairSpec;
use crate::scalar::int;
use crate::torus::TorusSpace;
use crate::weights::WeightModule;
use crate::{QModule, QPair, QTorus, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagonalKind {
    Full,
    Identity,
}

/// How the center of the full diagonal blocks is treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TorusMode {
    /// Full blocks are `sl(n_i)`: the torus is trace-free inside every full
    /// block. The block centers only change `H` by an abelian quotient,
    /// which does not affect temperedness.
    #[default]
    Derived,
    /// Full blocks are `gl(n_i)` intersected with `sl(n)`: the torus is
    /// every trace-free diagonal matrix vanishing on the identity blocks.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPattern {
    sizes: Vec<usize>,
    kinds: Vec<DiagonalKind>,
    upper: Vec<(usize, usize)>,
}

use DiagonalKind::{Full as F, Identity as I};

impl BlockPattern {
    /// Validates sizes (positive), kinds (one per block) and the upper
    /// blocks (`i < j`, closed under `(i,j),(j,k) -> (i,k)`, which the
    /// bracket of off-diagonal blocks requires).
    pub fn new(sizes: Vec<usize>, kinds: Vec<DiagonalKind>, upper: Vec<(usize, usize)>) -> Result<Self> {
        if sizes.len() != kinds.len() {
            return Err(Error::InvalidPattern(format!(
                "{} sizes but {} diagonal kinds",
                sizes.len(),
                kinds.len()
            )));
        }
        if sizes.is_empty() {
            return Err(Error::InvalidPattern("no blocks".into()));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidPattern(format!("block {i} has size 0")));
        }
        let mut upper = upper;
        upper.sort_unstable();
        upper.dedup();
        for &(i, j) in &upper {
            if i >= j || j >= sizes.len() {
                return Err(Error::InvalidPattern(format!("bad upper block ({i},{j})")));
            }
        }
        for &(i, j) in &upper {
            for &(j2, k) in &upper {
                if j == j2 && upper.binary_search(&(i, k)).is_err() {
                    return Err(Error::NotBracketClosed(format!(
                        "[({i},{j}), ({j},{k})] lands in block ({i},{k}), which is not in h"
                    )));
                }
            }
        }
        Ok(BlockPattern { sizes, kinds, upper })
    }

    /// Like [`BlockPattern::new`] but silently drops empty blocks (and the
    /// upper blocks touching them), renumbering the rest.
    pub fn new_dropping_empty(
        sizes: Vec<usize>,
        kinds: Vec<DiagonalKind>,
        upper: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if sizes.len() != kinds.len() {
            return Self::new(sizes, kinds, upper);
        }
        let keep: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] > 0).collect();
        let renum = |i: usize| keep.iter().position(|&k| k == i);
        let upper = upper
            .into_iter()
            .filter_map(|(i, j)| Some((renum(i)?, renum(j)?)))
            .collect();
        Self::new(
            keep.iter().map(|&i| sizes[i]).collect(),
            keep.iter().map(|&i| kinds[i]).collect(),
            upper,
        )
    }

    /// Patterns `H1`-`H4` for `sl(p + q)`.
    pub fn table1(name: &str, p: usize, q: usize) -> Result<Self> {
        let (kinds, upper): (Vec<DiagonalKind>, Vec<(usize, usize)>) = match preset_index(name)? {
            1 => (vec![F, I], vec![]),
            2 => (vec![F, I], vec![(0, 1)]),
            3 => (vec![F, F], vec![(0, 1)]),
            4 => (vec![F, F], vec![]),
            _ => return Err(Error::UnknownFamily(format!("table1 {name}"))),
        };
        Self::new_dropping_empty(vec![p, q], kinds, upper)
    }

    /// Patterns `H1`-`H12` for `sl(p + q + r)`.
    pub fn table2(name: &str, p: usize, q: usize, r: usize) -> Result<Self> {
        let (kinds, upper): (Vec<DiagonalKind>, Vec<(usize, usize)>) = match preset_index(name)? {
            1 => (vec![F, I, I], vec![(0, 2)]),
            2 => (vec![I, F, I], vec![(0, 2)]),
            3 => (vec![I, F, I], vec![(0, 1), (0, 2)]),
            4 => (vec![F, F, F], vec![(0, 1), (0, 2), (1, 2)]),
            5 => (vec![F, F, I], vec![]),
            6 => (vec![F, F, I], vec![(0, 2)]),
            7 => (vec![F, F, I], vec![(0, 1), (0, 2)]),
            8 => (vec![F, I, F], vec![(0, 2)]),
            9 => (vec![I, F, F], vec![(0, 1), (0, 2)]),
            10 => (vec![F, F, F], vec![]),
            11 => (vec![F, F, F], vec![(0, 2)]),
            12 => (vec![F, F, F], vec![(0, 1), (0, 2)]),
            _ => return Err(Error::UnknownFamily(format!("table2 {name}"))),
        };
        Self::new_dropping_empty(vec![p, q, r], kinds, upper)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn kinds(&self) -> &[DiagonalKind] {
        &self.kinds
    }

    pub fn upper(&self) -> &[(usize, usize)] {
        &self.upper
    }

    /// `n = sum of the block sizes`.
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Block index of every coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat(b).take(s))
            .collect()
    }

    /// Whether the matrix unit `E_ab` (`a != b`) lies in `h`.
    pub fn contains_position(&self, a: usize, b: usize) -> bool {
        let block = self.block_of();
        let (i, j) = (block[a], block[b]);
        (i == j && self.kinds[i] == F) || self.upper.binary_search(&(i, j)).is_ok()
    }

    /// Coordinate labels `x1.., y1.., z1..` (or `b4_1..` past three blocks).
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.n());
        for (b, &s) in self.sizes.iter().enumerate() {
            let stem = match (self.sizes.len(), b) {
                (n, b) if n <= 3 => ["x", "y", "z"][b].to_string(),
                (_, b) => format!("b{}_", b + 1),
            };
            for k in 1..=s {
                out.push(format!("{stem}{k}"));
            }
        }
        out
    }

    /// Dimension of the zero-weight part of `h` (its Cartan part).
    pub fn h_zero_weights(&self, mode: TorusMode) -> usize {
        let full: Vec<usize> = (0..self.sizes.len())
            .filter(|&i| self.kinds[i] == F)
            .map(|i| self.sizes[i])
            .collect();
        match mode {
            TorusMode::Derived => full.iter().map(|s| s - 1).sum(),
            TorusMode::Full => full.iter().sum::<usize>().saturating_sub(1),
        }
    }

    /// The split torus of `h`: diagonal, zero on identity blocks and
    /// trace-free per full block ([`TorusMode::Derived`]) or overall.
    pub fn torus(&self, mode: TorusMode) -> Result<QTorus> {
        let n = self.n();
        let block = self.block_of();
        let mut constraints = Vec::new();
        for a in 0..n {
            if self.kinds[block[a]] == I {
                constraints.push(LinearForm::coordinate(n, a));
            }
        }
        let indicator = |pred: &dyn Fn(usize) -> bool| {
            LinearForm::new((0..n).map(|a| if pred(a) { int(1) } else { int(0) }).collect())
        };
        match mode {
            TorusMode::Derived => {
                for b in 0..self.sizes.len() {
                    if self.kinds[b] == F {
                        constraints.push(indicator(&|a| block[a] == b));
                    }
                }
            }
            TorusMode::Full => {
                if self.kinds.contains(&F) {
                    constraints.push(indicator(&|a| self.kinds[block[a]] == F));
                }
            }
        }
        TorusSpace::new(n, self.labels(), constraints)
    }

    /// Name-like summary such as `[x3 | y1 | z2] upper (0,2)`.
    pub fn describe(&self) -> String {
        let blocks: Vec<String> = self
            .sizes
            .iter()
            .zip(&self.kinds)
            .map(|(s, k)| match k {
                F => format!("*{s}"),
                I => format!("I{s}"),
            })
            .collect();
        let upper: Vec<String> = self.upper.iter().map(|(i, j)| format!("({i},{j})")).collect();
        format!("[{}] upper {{{}}}", blocks.join(" | "), upper.join(","))
    }
}

fn preset_index(name: &str) -> Result<usize> {
    let t = name.trim();
    let digits = t.strip_prefix('H').or_else(|| t.strip_prefix('h')).unwrap_or(t);
    digits
        .parse::<usize>()
        .map_err(|_| Error::UnknownFamily(name.to_string()))
}

fn positions_module(
    space: &QTorus,
    name: &str,
    positions: impl IntoIterator<Item = (usize, usize)>,
    zeros: usize,
) -> Result<QModule> {
    let n = space.ambient_dim();
    let mut entries: Vec<(LinearForm<Rational>, u64)> = positions
        .into_iter()
        .map(|(a, b)| (LinearForm::difference(n, a, b), 1))
        .collect();
    if zeros > 0 {
        entries.push((LinearForm::zero(n), zeros as u64));
    }
    WeightModule::new(space.clone(), name, entries)
}

fn off_diagonal(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
}

/// Weights of `h` and `sl(n)/h` for a block pattern.
pub fn build_sl_block(pattern: &BlockPattern, mode: TorusMode) -> Result<QPair> {
    let space = pattern.torus(mode)?;
    let n = pattern.n();
    let h_zero = pattern.h_zero_weights(mode);
    let h = positions_module(
        &space,
        "h",
        off_diagonal(n).filter(|&(a, b)| pattern.contains_position(a, b)),
        h_zero,
    )?;
    let q = positions_module(
        &space,
        "g/h",
        off_diagonal(n).filter(|&(a, b)| !pattern.contains_position(a, b)),
        n - 1 - h_zero,
    )?;
    let mode_name = match mode {
        TorusMode::Derived => "derived",
        TorusMode::Full => "full",
    };
    PairSpec::new(q, h, None, format!("sl({n}) block {} {mode_name}", pattern.describe()))
}

/// Table 1 predicate for temperedness.
pub fn table1_predicate(name: &str, p: usize, q: usize) -> Result<bool> {
    Ok(match preset_index(name)? {
        1 => p <= q + 1,
        2 => p == 1,
        3 => p == 1 && q == 1,
        4 => p <= q + 1 && q <= p + 1,
        _ => return Err(Error::UnknownFamily(format!("table1 {name}"))),
    })
}

/// Table 2 predicate for temperedness.
pub fn table2_predicate(name: &str, p: usize, q: usize, r: usize) -> Result<bool> {
    Ok(match preset_index(name)? {
        1 => p <= q + 1,
        2 => q <= p + r + 1,
        3 => q <= r + 1,
        4 => p == 1 && q == 1 && r == 1,
        5 => p <= q + r + 1 && q <= p + r + 1,
        6 => p <= q + 1 && q <= p + r + 1,
        7 => p == 1 && q <= r + 1,
        8 => p <= q + 1 && r <= q + 1,
        9 => q <= r + 1 && r <= q + 1,
        10 => p <= q + r + 1 && q <= p + r + 1 && r <= p + q + 1,
        11 => p <= q + 1 && q <= p + r + 1 && r <= q + 1,
        12 => p == 1 && q <= r + 1 && r <= q + 1,
        _ => return Err(Error::UnknownFamily(format!("table2 {name}"))),
    })
}

pub const TABLE1_NAMES: [&str; 4] = ["H1", "H2", "H3", "H4"];
pub const TABLE2_NAMES: [&str; 12] = [
    "H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9", "H10", "H11", "H12",
];

/// `h = s + v` inside a parabolic `p = l + u` containing `h`, all on the
/// derived torus of the pattern. The parabolic is block upper triangular
/// for the flag given by the full blocks, with identity blocks split into
/// single coordinates.
#[derive(Clone, Debug)]
pub struct LeviDecomposition {
    pub s: QModule,
    pub l_mod_s: QModule,
    pub u_mod_v: QModule,
    pub v: QModule,
    pub u: QModule,
}

pub fn levi_decomposition(pattern: &BlockPattern) -> Result<LeviDecomposition> {
    let space = pattern.torus(TorusMode::Derived)?;
    let n = pattern.n();
    let block = pattern.block_of();
    let mut flag = Vec::with_capacity(n);
    let mut next = 0;
    for a in 0..n {
        if a > 0 && (block[a] != block[a - 1] || pattern.kinds[block[a]] == I) {
            next += 1;
        }
        flag.push(next);
    }
    let s_zero = pattern.h_zero_weights(TorusMode::Derived);
    let in_s = |a: usize, b: usize| block[a] == block[b] && pattern.kinds[block[a]] == F;
    let in_v = |a: usize, b: usize| pattern.upper.binary_search(&(block[a], block[b])).is_ok();
    let s = positions_module(&space, "s", off_diagonal(n).filter(|&(a, b)| in_s(a, b)), s_zero)?;
    let l_mod_s = positions_module(
        &space,
        "l/s",
        off_diagonal(n).filter(|&(a, b)| flag[a] == flag[b] && !in_s(a, b)),
        n - 1 - s_zero,
    )?;
    let u = positions_module(&space, "u", off_diagonal(n).filter(|&(a, b)| flag[a] < flag[b]), 0)?;
    let v = positions_module(&space, "v", off_diagonal(n).filter(|&(a, b)| in_v(a, b)), 0)?;
    let u_mod_v = positions_module(
        &space,
        "u/v",
        off_diagonal(n).filter(|&(a, b)| flag[a] < flag[b] && !in_v(a, b)),
        0,
    )?;
    Ok(LeviDecomposition {
        s,
        l_mod_s,
        u_mod_v,
        v,
        u,
    })
}

impl LeviDecomposition {
    /// `rho_{l/s} + 2 rho_{u/v} - rho_s`.
    pub fn deficit(&self) -> Result<crate::QPL> {
        self.l_mod_s
            .rho_function()
            .add(&self.u_mod_v.rho_function().scale(&int(2)))?
            .sub(&self.s.rho_function())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_nonnegative;

    #[test]
    fn rejects_unclosed_upper_blocks() {
        let e = BlockPattern::new(vec![1, 1, 1], vec![F, F, F], vec![(0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(e, Error::NotBracketClosed(_)));
    }

    #[test]
    fn dimensions_add_up_to_sl_n() {
        for name in TABLE2_NAMES {
            for mode in [TorusMode::Derived, TorusMode::Full] {
                let p = BlockPattern::table2(name, 2, 3, 1).unwrap();
                let spec = build_sl_block(&p, mode).unwrap();
                assert_eq!(spec.total_dim(), 35, "{name}");
            }
        }
    }

    #[test]
    fn table1_h2_deficit_at_two_one() {
        // deficit = -1/2 sum_{i != j} |x_i - x_j| on the torus of sl(2).
        let p = BlockPattern::table1("H2", 2, 1).unwrap();
        let spec = build_sl_block(&p, TorusMode::Derived).unwrap();
        let y = [int(1), int(-1), int(0)];
        assert_eq!(spec.deficit().evaluate(&y).unwrap(), int(-2));
        assert!(!is_nonnegative(&spec.deficit()).unwrap().is_nonnegative());
    }

    #[test]
    fn levi_identity_for_h2() {
        let p = BlockPattern::table1("H2", 3, 2).unwrap();
        let spec = build_sl_block(&p, TorusMode::Derived).unwrap();
        let levi = levi_decomposition(&p).unwrap();
        assert!(spec.deficit().equals(&levi.deficit().unwrap()));
        assert!(levi.s.direct_sum(&levi.v).unwrap().same_weights(spec.h_module()));
    }

    #[test]
    fn empty_blocks_are_dropped() {
        let p = BlockPattern::table2("H12", 0, 2, 3).unwrap();
        assert_eq!(p.sizes(), &[2, 3]);
        assert!(p.upper().is_empty());
    }
}
