//! Monte Carlo checks of two geometric facts behind the rho criterion:
//!
//! * for a split element `A` and a compact neighborhood `C` of `0`,
//!   `e^{-t Tr(A)/2} vol(e^{tA} C ∩ C)` decays like `e^{-t rho(A)}` with
//!   `rho(A) = 1/2 sum |lambda_i|`;
//! * for symmetric convex bodies, `vol((B + v) ∩ B') <= vol(B ∩ B')`.
//!
//! Everything is `f64`; estimates are hit-or-miss counts in a bounding box,
//! split into a fixed number of chunks with derived seeds so results do not
//! depend on the thread count.

mod body;
mod decay;
mod sampling;
mod split;
mod translate;

pub use body::ConvexBody;
pub use decay::{mc_intersection_volume, verify_decay, DecayFit, DecayOptions};
pub use sampling::Estimate;
pub use split::{rho, SplitMatrix};
pub use translate::{check_brunn_translate, random_symmetric_polytope, translate_suite, SuiteReport, TranslateCheck};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VolumeError {
    #[error("non-split direction: {0}")]
    NonSplit(String),
    #[error("matrix exponential is not finite at t = {0}")]
    NonFinite(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("volume below the Monte Carlo floor at t = {t}: {hits} hits in {samples} samples; shrink the t range")]
    TooFewHits { t: f64, hits: u64, samples: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T, E = VolumeError> = std::result::Result<T, E>;

pub type Vector = nalgebra::DVector<f64>;
pub type Matrix = nalgebra::DMatrix<f64>;
