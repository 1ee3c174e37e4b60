//! Exact decision engine for the inequality `rho_h <= rho_{g/h} + 2 rho_V`
//! on a split torus.
//!
//! The pipeline is:
//!
//! 1. a generator in [`lie`] (or a hand-written [`PairSpec`]) produces the
//!    weights of the torus on `h`, `g/h` and an optional module `V`;
//! 2. [`PairSpec::deficit`] assembles `rho_{g/h} + 2 rho_V - rho_h` as a
//!    piecewise-linear function;
//! 3. [`verify::is_nonnegative`] decides global nonnegativity exactly by
//!    enumerating the chambers of the weight hyperplane arrangement and
//!    checking extreme rays, returning a certificate or a witness;
//! 4. [`temper`] wraps this into verdicts, table scans and the tensor
//!    product dictionary.
//!
//! Every math type is generic over [`Scalar`]; the decision path runs on
//! [`Rational`].

pub mod error;
pub mod form;
pub mod lie;
pub mod linalg;
pub mod pair;
pub mod pl;
pub mod scalar;
pub mod temper;
pub mod torus;
pub mod verify;
pub mod weights;
pub mod wire;

pub use error::{Error, Result};
pub use form::LinearForm;
pub use pair::PairSpec;
pub use pl::PLFunction;
pub use scalar::{Scalar, ScalarParseError};
pub use torus::TorusSpace;
pub use weights::WeightModule;

/// Arbitrary-precision rational, the scalar of every exact computation.
pub type Rational = num_rational::BigRational;

pub type QForm = LinearForm<Rational>;
pub type QTorus = TorusSpace<Rational>;
pub type QModule = WeightModule<Rational>;
pub type QPL = PLFunction<Rational>;
pub type QPair = PairSpec<Rational>;

pub type F64Form = LinearForm<f64>;
pub type F64Torus = TorusSpace<f64>;
pub type F64Module = WeightModule<f64>;
pub type F64PL = PLFunction<f64>;

pub type F32PL = PLFunction<f32>;
