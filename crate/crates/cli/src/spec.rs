//! The `check` input document: exactly one of a named family, a tensor
//! product question, raw weight data or matrix data.

use serde::{Deserialize, Serialize};

use rho_core::lie::{
    build_sl_block, classical_in_sl, complex_pair, extract_weights, product_in_sl, product_in_sp, so_pair,
    sp21_pair, BlockPattern, ClassicalInSl, ComplexFamily, TorusMode,
};
use rho_core::temper::TensorQuestion;
use rho_core::wire::{MatrixDoc, PairDoc, SCHEMA_VERSION};
use rho_core::{Error, QPair, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorQuestion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusChoice {
    /// Trace zero on each diagonal block.
    #[default]
    Derived,
    /// Trace zero overall.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyDoc {
    /// Table presets; two sizes select `H1`-`H4` of `sl(p+q)`, three select
    /// `H1`-`H12` of `sl(p+q+r)`.
    SlBlock {
        pattern: String,
        sizes: Vec<usize>,
        #[serde(default)]
        torus: TorusChoice,
    },
    SlProduct { parts: Vec<usize> },
    SpProduct { parts: Vec<usize> },
    SoPair { p1: usize, q1: usize, p2: usize, q2: usize },
    OrthogonalInSl { p: usize, q: usize },
    SymplecticInSl { m: usize },
    Complex { family: String, m: usize, n: usize },
    /// `sp(1) + sp(1,1) ⊂ sp(2,1)` in matrix form.
    Sp21,
}

impl FamilyDoc {
    pub fn build(&self) -> Result<QPair> {
        match self {
            FamilyDoc::SlBlock { pattern, sizes, torus } => {
                let pat = match sizes[..] {
                    [p, q] => BlockPattern::table1(pattern, p, q)?,
                    [p, q, r] => BlockPattern::table2(pattern, p, q, r)?,
                    _ => return Err(Error::InvalidParameters("sizes must have two or three entries".into())),
                };
                let mode = match torus {
                    TorusChoice::Derived => TorusMode::Derived,
                    TorusChoice::Full => TorusMode::Full,
                };
                let label = format!("{pattern} {sizes:?}");
                Ok(build_sl_block(&pat, mode)?.with_metadata(label))
            }
            FamilyDoc::SlProduct { parts } => product_in_sl(parts),
            FamilyDoc::SpProduct { parts } => product_in_sp(parts),
            FamilyDoc::SoPair { p1, q1, p2, q2 } => so_pair(*p1, *q1, *p2, *q2),
            FamilyDoc::OrthogonalInSl { p, q } => classical_in_sl(ClassicalInSl::Orthogonal { p: *p, q: *q }),
            FamilyDoc::SymplecticInSl { m } => classical_in_sl(ClassicalInSl::Symplectic { m: *m }),
            FamilyDoc::Complex { family, m, n } => {
                let fam = match family.as_str() {
                    "sl" => ComplexFamily::Sl,
                    "so" => ComplexFamily::So,
                    "sp" => ComplexFamily::Sp,
                    other => return Err(Error::UnknownFamily(format!("complex {other}"))),
                };
                complex_pair(fam, *m, *n)
            }
            FamilyDoc::Sp21 => Ok(extract_weights(&sp21_pair())?.with_metadata("sp(1)+sp(1,1) in sp(2,1)")),
        }
    }
}

impl SpecFile {
    pub fn from_pair(pair: &QPair) -> Self {
        SpecFile {
            schema_version: SCHEMA_VERSION,
            family: None,
            tensor: None,
            pair: Some(PairDoc::from_pair(pair)),
            matrix: None,
        }
    }

    /// Checks the version and that exactly one mode is present.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let modes = [self.family.is_some(), self.tensor.is_some(), self.pair.is_some(), self.matrix.is_some()];
        match modes.iter().filter(|m| **m).count() {
            1 => Ok(()),
            0 => Err(Error::Malformed("need one of family, tensor, pair, matrix".into())),
            _ => Err(Error::Malformed("only one of family, tensor, pair, matrix may be given".into())),
        }
    }

    pub fn build(&self) -> Result<QPair> {
        self.validate()?;
        if let Some(f) = &self.family {
            f.build()
        } else if let Some(t) = &self.tensor {
            t.pair()
        } else if let Some(p) = &self.pair {
            p.to_pair()
        } else {
            let m = self.matrix.as_ref().expect("validated");
            extract_weights(&m.to_input())
        }
    }
}
