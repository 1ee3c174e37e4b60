//! Tensor products of degenerate principal series of `SL(n, R)` reduce to
//! `L^2(G/H)` for `H = w^-1 P w ∩ P'` on the open double coset. The three
//! reductions below are data: each maps a question to a block pattern.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::blocks::{build_sl_block, BlockPattern, TorusMode};
use crate::temper::{check_with, Verdict};
use crate::verify::CheckOptions;
use crate::QPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TensorQuestion {
    /// `Π_{k,n-k} ⊗ Π_{n-l,l}`
    TwoFactor { k: usize, l: usize, n: usize },
    /// `Π_{a,b,c} ⊗ Π_{b+c,a}`
    ThreeTwo { a: usize, b: usize, c: usize },
    /// `Π_{a,b,c} ⊗ Π_{c,b,a}`
    ThreeThree { a: usize, b: usize, c: usize },
}

impl TensorQuestion {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            TensorQuestion::TwoFactor { k, l, n } => k >= 1 && l >= 1 && k < n && l < n,
            TensorQuestion::ThreeTwo { a, b, c } | TensorQuestion::ThreeThree { a, b, c } => {
                a >= 1 && b >= 1 && c >= 1
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("invalid partition in {self:?}")))
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            TensorQuestion::TwoFactor { n, .. } => n,
            TensorQuestion::ThreeTwo { a, b, c } | TensorQuestion::ThreeThree { a, b, c } => a + b + c,
        }
    }

    /// The table preset and its `(p, q, r)`.
    pub fn mapped(&self) -> (&'static str, [usize; 3]) {
        match *self {
            TensorQuestion::TwoFactor { k, l, n } => ("H12", [k.abs_diff(l), k.min(l), n - k.max(l)]),
            TensorQuestion::ThreeTwo { a, b, c } => ("H11", [b, a, c]),
            TensorQuestion::ThreeThree { a, b, c } => ("H10", [a, b, c]),
        }
    }

    pub fn pattern(&self) -> Result<BlockPattern> {
        self.validate()?;
        let (name, [p, q, r]) = self.mapped();
        BlockPattern::table2(name, p, q, r)
    }

    pub fn pair(&self) -> Result<QPair> {
        let (name, pqr) = self.mapped();
        Ok(build_sl_block(&self.pattern()?, TorusMode::Derived)?
            .with_metadata(format!("{} -> {name} {pqr:?}", self.describe())))
    }

    /// Closed-form answer for the question.
    pub fn predicted(&self) -> bool {
        match *self {
            TensorQuestion::TwoFactor { k, l, n } => k.abs_diff(l) <= 1 && (k + l).abs_diff(n) <= 1,
            TensorQuestion::ThreeTwo { a, b, c } => b.max(c) <= a + 1 && a <= b + c + 1,
            TensorQuestion::ThreeThree { a, b, c } => 2 * a.max(b).max(c) <= a + b + c + 1,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            TensorQuestion::TwoFactor { k, l, n } => format!("Pi_{{{k},{}}} x Pi_{{{},{l}}}", n - k, n - l),
            TensorQuestion::ThreeTwo { a, b, c } => format!("Pi_{{{a},{b},{c}}} x Pi_{{{},{a}}}", b + c),
            TensorQuestion::ThreeThree { a, b, c } => format!("Pi_{{{a},{b},{c}}} x Pi_{{{c},{b},{a}}}"),
        }
    }

    /// Every valid question with the given `n`.
    pub fn all_for(n: usize) -> Vec<TensorQuestion> {
        let mut out = Vec::new();
        for k in 1..n {
            for l in 1..n {
                out.push(TensorQuestion::TwoFactor { k, l, n });
            }
        }
        for a in 1..n {
            for b in 1..n - a {
                let c = n - a - b;
                out.push(TensorQuestion::ThreeTwo { a, b, c });
                out.push(TensorQuestion::ThreeThree { a, b, c });
            }
        }
        out
    }
}

pub fn tensor_product_check(question: &TensorQuestion, options: CheckOptions) -> Result<Verdict> {
    check_with(&question.pair()?, options)
}
