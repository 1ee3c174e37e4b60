//! Product embeddings in classical algebras, built from the weights of the
//! standard representation on a split torus of `h`.

use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::lie::blocks::{build_sl_block, BlockPattern, DiagonalKind, TorusMode};
use crate::pair::PairSpec;
use crate::torus::TorusSpace;
use crate::weights::WeightModule;
use crate::{QModule, QPair, QTorus};

fn check_parts(parts: &[usize]) -> Result<()> {
    if parts.len() < 2 {
        return Err(Error::InvalidParameters(
            "need at least two parts (a single part gives H = G)".into(),
        ));
    }
    if parts.contains(&0) {
        return Err(Error::InvalidParameters("parts must be positive".into()));
    }
    Ok(())
}

/// `prod SL(n_i) ⊂ SL(n)` embedded block-diagonally.
pub fn product_in_sl(parts: &[usize]) -> Result<QPair> {
    check_parts(parts)?;
    let pattern = BlockPattern::new(parts.to_vec(), vec![DiagonalKind::Full; parts.len()], vec![])?;
    Ok(build_sl_block(&pattern, TorusMode::Derived)?.with_metadata(format!("sl product {parts:?}")))
}

/// Standard representation `±e_k` (one pair per coordinate in `coords`)
/// plus `zeros` zero weights.
fn standard(space: &QTorus, coords: impl IntoIterator<Item = usize>, zeros: u64) -> Result<QModule> {
    let n = space.ambient_dim();
    let mut w = Vec::new();
    for k in coords {
        let e = LinearForm::coordinate(n, k);
        w.push((-&e, 1));
        w.push((e, 1));
    }
    if zeros > 0 {
        w.push((LinearForm::zero(n), zeros));
    }
    WeightModule::new(space.clone(), "V", w)
}

fn labelled(n: usize, stems: &[(usize, &str)]) -> Result<QTorus> {
    let labels = stems
        .iter()
        .flat_map(|&(count, stem)| (1..=count).map(move |k| format!("{stem}{k}")))
        .collect();
    TorusSpace::new(n, labels, Vec::new())
}

/// `prod Sp(n_i) ⊂ Sp(n)`: `h = sum S^2 V_i`, `g/h = sum_{i<j} V_i ⊗ V_j`.
pub fn product_in_sp(parts: &[usize]) -> Result<QPair> {
    check_parts(parts)?;
    let n: usize = parts.iter().sum();
    let stems: Vec<(usize, String)> = parts.iter().enumerate().map(|(i, &m)| (m, format!("t{}_", i + 1))).collect();
    let stems: Vec<(usize, &str)> = stems.iter().map(|(m, s)| (*m, s.as_str())).collect();
    let space = labelled(n, &stems)?;
    let mut start = 0;
    let mut vs = Vec::new();
    for &m in parts {
        vs.push(standard(&space, start..start + m, 0)?);
        start += m;
    }
    let mut h = WeightModule::empty(space.clone(), "h");
    let mut q = WeightModule::empty(space.clone(), "g/h");
    for (i, vi) in vs.iter().enumerate() {
        h = h.direct_sum(&vi.symmetric_square()?)?;
        for vj in &vs[i + 1..] {
            q = q.direct_sum(&vi.tensor(vj)?)?;
        }
    }
    PairSpec::new(q.renamed("g/h"), h.renamed("h"), None, format!("sp product {parts:?}"))
}

/// `so(p1,q1) + so(p2,q2) ⊂ so(p1+p2, q1+q2)`. The torus is a maximal split
/// torus of `h`, of dimension `min(p1,q1) + min(p2,q2)`.
pub fn so_pair(p1: usize, q1: usize, p2: usize, q2: usize) -> Result<QPair> {
    if p1 + q1 == 0 || p2 + q2 == 0 {
        return Err(Error::InvalidParameters("each factor needs p_i + q_i >= 1".into()));
    }
    let (r1, r2) = (p1.min(q1), p2.min(q2));
    let space = labelled(r1 + r2, &[(r1, "s"), (r2, "t")])?;
    let v1 = standard(&space, 0..r1, p1.abs_diff(q1) as u64)?;
    let v2 = standard(&space, r1..r1 + r2, p2.abs_diff(q2) as u64)?;
    let h = v1.exterior_square()?.direct_sum(&v2.exterior_square()?)?;
    let q = v1.tensor(&v2)?;
    PairSpec::new(
        q.renamed("g/h"),
        h.renamed("h"),
        None,
        format!("so({p1},{q1}) + so({p2},{q2}) in so({},{})", p1 + p2, q1 + q2),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalInSl {
    /// `so(p,q) ⊂ sl(p+q)`
    Orthogonal { p: usize, q: usize },
    /// `sp(m) ⊂ sl(2m)`
    Symplectic { m: usize },
}

/// `h = Λ²V, g/h = S²V` minus a zero weight (orthogonal case) or
/// `h = S²V, g/h = Λ²V` minus a zero weight (symplectic case), `V` the
/// standard representation of `g`.
pub fn classical_in_sl(kind: ClassicalInSl) -> Result<QPair> {
    let one_zero = |space: &QTorus| LinearForm::zero(space.ambient_dim());
    match kind {
        ClassicalInSl::Orthogonal { p, q } => {
            if p + q < 2 {
                return Err(Error::InvalidParameters("need p + q >= 2".into()));
            }
            let r = p.min(q);
            let space = labelled(r, &[(r, "s")])?;
            let v = standard(&space, 0..r, p.abs_diff(q) as u64)?;
            let h = v.exterior_square()?;
            let quot = v.symmetric_square()?.remove(&one_zero(&space), 1)?;
            PairSpec::new(quot.renamed("g/h"), h.renamed("h"), None, format!("so({p},{q}) in sl({})", p + q))
        }
        ClassicalInSl::Symplectic { m } => {
            if m == 0 {
                return Err(Error::InvalidParameters("need m >= 1".into()));
            }
            let space = labelled(m, &[(m, "s")])?;
            let v = standard(&space, 0..m, 0)?;
            let h = v.symmetric_square()?;
            let quot = v.exterior_square()?.remove(&one_zero(&space), 1)?;
            PairSpec::new(quot.renamed("g/h"), h.renamed("h"), None, format!("sp({m}) in sl({})", 2 * m))
        }
    }
}

/// The complex algebras of a split pair viewed as real algebras: the split
/// torus is unchanged and every multiplicity doubles.
pub fn realify(spec: &QPair) -> Result<QPair> {
    let double = |m: &QModule| m.repeated(2).map(|d| d.renamed(m.name()));
    let v = spec.v_module().map(double).transpose()?;
    PairSpec::new(
        double(spec.g_module())?,
        double(spec.h_module())?,
        v,
        format!("complex {}", spec.metadata()),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexFamily {
    /// `sl(m,C) + sl(n,C) ⊂ sl(m+n,C)`
    Sl,
    /// `so(m,C) + so(n,C) ⊂ so(m+n,C)`
    So,
    /// `sp(m,C) + sp(n,C) ⊂ sp(m+n,C)`
    Sp,
}

/// Realified complex product pair, built from a split real form of `h`.
pub fn complex_pair(family: ComplexFamily, m: usize, n: usize) -> Result<QPair> {
    let split = match family {
        ComplexFamily::Sl => product_in_sl(&[m, n])?,
        ComplexFamily::Sp => product_in_sp(&[m, n])?,
        ComplexFamily::So => {
            if m + n < 3 {
                return Err(Error::InvalidParameters("need m + n >= 3".into()));
            }
            if m == 0 || n == 0 {
                return Err(Error::InvalidParameters("parts must be positive".into()));
            }
            so_pair(m.div_ceil(2), m / 2, n.div_ceil(2), n / 2)?
        }
    };
    realify(&split)
}

/// Closed forms for the classical examples.
pub mod predicates {
    use super::ComplexFamily;

    /// `2 n_1 <= n + 1`, `n_1` the largest part.
    pub fn sl_product(parts: &[usize]) -> bool {
        2 * parts.iter().max().copied().unwrap_or(0) <= parts.iter().sum::<usize>() + 1
    }

    /// `2 n_1 <= n`.
    pub fn sp_product(parts: &[usize]) -> bool {
        2 * parts.iter().max().copied().unwrap_or(0) <= parts.iter().sum::<usize>()
    }

    /// `|p1 + q1 - p2 - q2| <= 2` (stated for `p_i, q_i >= 1`).
    pub fn so_pair(p1: usize, q1: usize, p2: usize, q2: usize) -> bool {
        (p1 + q1).abs_diff(p2 + q2) <= 2
    }

    pub fn complex(family: ComplexFamily, m: usize, n: usize) -> bool {
        match family {
            ComplexFamily::Sl => m.abs_diff(n) <= 1,
            ComplexFamily::So => m.abs_diff(n) <= 2,
            ComplexFamily::Sp => m == n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_nonnegative;

    fn tempered(spec: &QPair) -> bool {
        is_nonnegative(&spec.deficit()).unwrap().is_nonnegative()
    }

    #[test]
    fn sp_dimensions() {
        for parts in [vec![1, 1], vec![2, 1], vec![1, 2, 1]] {
            let n: u64 = parts.iter().sum::<usize>() as u64;
            assert_eq!(product_in_sp(&parts).unwrap().total_dim(), n * (2 * n + 1));
        }
    }

    #[test]
    fn so_pair_multiplicities() {
        let spec = so_pair(2, 1, 1, 2).unwrap();
        assert_eq!(spec.h_module().total_dim(), 3 + 3);
        assert_eq!(spec.total_dim(), 15);
    }

    #[test]
    fn small_verdicts() {
        assert!(tempered(&product_in_sl(&[2, 1]).unwrap()));
        assert!(!tempered(&product_in_sl(&[3, 1]).unwrap()));
        assert!(tempered(&product_in_sp(&[1, 1, 1]).unwrap()));
        assert!(!tempered(&product_in_sp(&[2, 1]).unwrap()));
        assert!(tempered(&so_pair(1, 1, 1, 1).unwrap()));
        assert!(!tempered(&so_pair(2, 2, 1, 0).unwrap()));
        assert!(tempered(&classical_in_sl(ClassicalInSl::Orthogonal { p: 2, q: 1 }).unwrap()));
        for m in 1..=2 {
            assert!(!tempered(&classical_in_sl(ClassicalInSl::Symplectic { m }).unwrap()));
        }
    }

    #[test]
    fn sp1_in_sl2_has_empty_quotient() {
        let spec = classical_in_sl(ClassicalInSl::Symplectic { m: 1 }).unwrap();
        assert!(spec.g_module().is_empty());
    }

    #[test]
    fn sp1_squared_in_sp2_fails_at_the_diagonal() {
        // rho_h = 2|t1| + 2|t2|, rho_{g/h} = |t1 + t2| + |t1 - t2|
        let spec = product_in_sp(&[1, 1]).unwrap();
        let y = [crate::scalar::int(1), crate::scalar::int(1)];
        assert_eq!(spec.h_module().rho_plus(&y).unwrap(), crate::scalar::int(4));
        assert_eq!(spec.deficit().evaluate(&y).unwrap(), crate::scalar::int(-2));
        // the same pair as so(2,2) in so(3,2)
        assert!(!tempered(&so_pair(2, 2, 1, 0).unwrap()));
    }

    #[test]
    fn complex_examples() {
        use ComplexFamily::*;
        for (fam, m, n, want) in [(Sl, 2, 1, true), (Sl, 3, 1, false), (So, 3, 1, true), (So, 4, 1, false), (Sp, 1, 1, false), (Sp, 2, 1, false)] {
            assert_eq!(tempered(&complex_pair(fam, m, n).unwrap()), want, "{fam:?} {m} {n}");
        }
    }
}
