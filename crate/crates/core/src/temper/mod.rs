//! Verdicts for pairs, parameter scans against closed-form predicates, and
//! the tensor product dictionary.

pub mod scan;
pub mod tensor;

use crate::error::{Error, Result};
use crate::verify::{is_nonnegative_with, CheckOptions, Evidence, Stats};
use crate::QPair;

pub use scan::{partitions, run_cases, run_scan, Case, ScanFamily, ScanPoint, ScanReport};
pub use tensor::{tensor_product_check, TensorQuestion};

/// `tempered` holds iff `evidence` is a certificate for the deficit
/// `rho_{g/h} + 2 rho_V - rho_h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub tempered: bool,
    pub evidence: Evidence,
    pub stats: Stats,
    pub metadata: String,
}

/// Decides `rho_h <= rho_{g/h}` (plus `2 rho_V` when the pair carries a
/// module) by enumerating every chamber.
pub fn check(spec: &QPair) -> Result<Verdict> {
    check_with(spec, CheckOptions::full())
}

pub fn check_with(spec: &QPair, options: CheckOptions) -> Result<Verdict> {
    let outcome = is_nonnegative_with(&spec.deficit(), options)?;
    Ok(Verdict {
        tempered: outcome.is_nonnegative(),
        evidence: outcome.evidence,
        stats: outcome.stats,
        metadata: spec.metadata().to_string(),
    })
}

/// Like [`check`] but insists on an explicit module `V`.
pub fn check_with_module(spec: &QPair, options: CheckOptions) -> Result<Verdict> {
    if spec.v_module().is_none() {
        return Err(Error::MissingModule);
    }
    check_with(spec, options)
}
