//! Exact entropy bounds and Haar-weight linear programs for diagonal flows on
//! compact quotients of `SL_n(R)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`root_system`]: type `A_{n-1}` roots, Cartan elements and the Weyl action.
//! * [`entropy`]: Lyapunov spectra, Haar entropy, the half-maximal-exponent
//!   entropy lower bound, per-support entropy caps and the dispersive exponent.
//! * [`supports`]: admissible supports of ergodic components.
//! * [`lp`] and [`rigidity`]: an exact rational simplex solver and the
//!   entropy game built on top of it.
//! * [`cotlar_stein`]: floating-point checks of the almost-orthogonality and
//!   non-stationary phase estimates.
//! * [`cli`]: the `haargap` command-line front end.
//!
//! Everything except [`cotlar_stein`] is exact rational arithmetic.

pub mod cli;
pub mod cotlar_stein;
pub mod entropy;
pub mod error;
pub mod lp;
pub mod rational;
pub mod rigidity;
pub mod root_system;
pub mod supports;

pub use error::{Error, Result};
pub use rational::Rational;
pub use root_system::{CartanElement, Root, RootSystem};
