//! Exact-arithmetic balancing-family sequences, the reset-chain transition
//! matrices built from them, and three independent ways of computing their
//! stationary distributions.
//!
//! * [`sequence`]: balancing, Lucas-balancing, cobalancing, Lucas-cobalancing,
//!   Pell and balancing-like numbers from one recurrence engine.
//! * [`quad_ring`]: exact `Z[√2]` arithmetic for `β = 3 - 2√2` and the
//!   infinite chain.
//! * [`chain`]: the transition-matrix families and their validation.
//! * [`steady_state`]: exact solve, power iteration, n-step powers, simulation.
//! * [`verifier`]: closed-form predictions checked against the exact solver.
//! * [`io`]: CSV/JSON interchange with exact `num/den` strings.
//! * [`cli`]: the `balchains` command line.

pub mod chain;
pub mod cli;
pub mod error;
pub mod io;
pub mod quad_ring;
pub mod rational;
pub mod sequence;
pub mod steady_state;
pub mod verifier;

pub use chain::{build, validate, ChainFamily, StochasticMatrix, ValidationReport};
pub use error::{Error, Result};
pub use quad_ring::QuadInt;
pub use rational::{Integer, Rational};
pub use sequence::SequenceKind;
pub use steady_state::{solve_exact, SteadyStateVector};
