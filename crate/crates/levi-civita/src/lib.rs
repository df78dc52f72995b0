//! Computable analysis on the Levi-Civita field.
//!
//! The Levi-Civita field is the smallest real-closed, sequentially
//! complete non-Archimedean ordered extension of the reals. Its elements
//! are real-coefficient series over rational exponents with left-finite
//! support; this crate works with the finitely-supported fragment and
//! tracks, for every value, the exponent horizon below which its
//! coefficients are exact.
//!
//! On top of the field arithmetic the crate provides:
//!
//! * power series with weak-convergence-aware evaluation, canonical
//!   extensions of `exp`/`sin`/`cos`, and exact derivative extraction at
//!   real points through infinitesimal probes ([`series`]);
//! * intervals with Levi-Civita endpoints, finite unions with the uniform
//!   measure, piecewise-simple functions and integration by antiderivative
//!   evaluation ([`measure`]);
//! * `L^p` norms, Hölder defects, and limit detection for sequences under
//!   both the strong and the weak topology ([`lp`]);
//! * measurable representatives of the Dirac and Heaviside distributions,
//!   their nonlinear products, moment identities and derivative pairings
//!   ([`dist`]);
//! * polynomial and step-function approximants that represent real
//!   functions as weakly Cauchy sequences ([`approx`]);
//! * a small expression language for stating computations textually
//!   ([`parse`]), used by the `lc` command-line tool.
//!
//! Each major capability has a runnable demo under `examples/`.
//!
//! ```
//! use levi_civita::{LcNumber, Valuation};
//!
//! // 1/(1+d) to horizon 4: the geometric series in the infinitesimal d.
//! let x = &LcNumber::one() + &LcNumber::d();
//! let inv = x.inv(Valuation::finite(4)).unwrap();
//! assert_eq!(inv.to_string(), "1 - d + d^2 - d^3 [horizon 4]");
//! ```

pub mod approx;
pub mod dist;
pub mod error;
pub mod exponent;
pub mod lp;
pub mod measure;
pub mod number;
pub mod parse;
pub mod series;

pub use error::{Error, Result};
pub use exponent::{Exponent, Valuation};
pub use number::{ComparisonOutcome, LcNumber, Relations};
pub use series::{Elementary, PowerSeries, SeriesKind};
