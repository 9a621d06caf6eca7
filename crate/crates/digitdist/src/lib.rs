//! Digit-sum statistics in arithmetic progressions, checked against
//! brute-force oracles at desk scale.
//!
//! The crate revolves around the sequence `e(ℓ·s_q(n)/b)` built from the
//! base-`q` sum-of-digits function `s_q` (the classical Thue–Morse sequence
//! is `q = b = 2`). Everything that can be computed exactly is computed
//! exactly: progression counts, discrepancies and Farey data use integer or
//! rational arithmetic, Gowers-type averages use group-ring arithmetic over
//! the `b`-th roots of unity, and only final magnitudes are evaluated in
//! floating point. Exponents that would underflow any float (some are of
//! order `exp(-10^7)`) are carried in natural-log space.
//!
//! Modules map one-to-one onto the subject areas:
//!
//! - [`digitcore`]: `s_q`, truncated digit sums, phase residues, exact
//!   rational floor and nearest-integer helpers.
//! - [`counting`]: progression counts `N_{y,z}(a,b;r,m)`, per-modulus error
//!   terms and their sum over a modulus range.
//! - [`expsum`]: the twisted exponential sum `S_0(N,D,ξ)`, both van der
//!   Corput inequality checkers, carry-propagation exception counts and the
//!   congruence-solution count.
//! - [`gowers`]: the transition graph on shift-residue vectors, its exact
//!   root-of-unity edge weights, synchronization, the long-loop switching
//!   cancellation, the contraction constant `M` and the Gowers-type average
//!   `A(ρ, r₀)` computed both by recursion and by direct summation.
//! - [`farey`]: Stern–Brocot based Farey rounding, shift parameters built
//!   from iterated Farey approximations, exact discrepancy of rationals and
//!   discrepancy-based counting bounds.
//! - [`exponents`]: every explicit exponent formula (λ, θ_q, Θ_q, η_q, γ_q,
//!   ξ variants, η(ε), η(δ₁,δ₂), η(ρ₁,ρ₂), η₀, η₁) plus the parameter
//!   selector with its inequality chain.
//! - [`cli`]: the `digitdist` command-line front end with deterministic
//!   JSON/CSV/SVG artifact emission.
//!
//! Run `cargo run --example gowers_oracle` (or any other example) for a
//! guided tour; the `digitdist` binary exposes the same operations as
//! subcommands.

pub mod budget;
pub mod cli;
pub mod counting;
pub mod digitcore;
pub mod expsum;
pub mod exponents;
pub mod farey;
pub mod gowers;
pub mod numeric;
pub mod report;

pub use budget::Budget;
pub use digitcore::{DigitParams, PhaseResidue};

/// Crate-wide error type.
///
/// `Precondition` marks rejected inputs (CLI exit code 1); `Invariant` marks
/// a structural assertion the implementation itself guarantees (exit code 2),
/// so an `Invariant` error signals a bug, not bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("work budget exceeded: needs {needed} units, budget is {budget} (raise DIGITDIST_BUDGET or --budget)")]
    Budget { needed: u128, budget: u128 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// CLI exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}
