//! Gowers-norm machinery: the transition graph with exact root-of-unity
//! weights, the recursion for the average `A(ρ, r₀)`, its brute-force
//! counterpart, loop switching, the contraction constant and the decay
//! exponent `η₀` they certify.

mod average;
mod graph;
mod paths;
mod phase;

pub use average::{gowers_average_all, gowers_average_brute, gowers_average_recursive, Variant};
pub use graph::{
    contraction, delta, reachable_box_bound, reachable_set, s_tilde, sync_steps, synchronize_check,
    Contraction, Edge, Node, TransitionGraph,
};
pub use paths::{
    block_len, first_zero_block, konieczny_letters, konieczny_path, sample_admissible_word,
    switch_word, switching_cancellation, word_weight, KoniecznyPath, Letter,
};
pub use phase::{cyclotomic, PhaseVector};

use crate::{Error, Result};

/// The decay exponent `η₀` certified by the contraction argument.
#[derive(Debug, Clone, Copy)]
pub struct Eta0 {
    /// Synchronization steps `K`.
    pub sync: u32,
    /// The exponent `(k+1)(K + b(k+1))` of the denominator power.
    pub exponent: u64,
    /// Natural log of the closed form
    /// `1 / (log(q) (K + (k+1)b) q^{(k+1)(K+b(k+1))})`.
    pub log_closed: f64,
    /// Natural log of the sharper value
    /// `−log(1 − q^{−(k+1)(K+b(k+1))}) / (log(q)(K + b(k+1)))`.
    pub log_sharper: f64,
}

/// Evaluate `η₀` in natural-log space (the linear value underflows quickly
/// as `k` grows).
pub fn eta0_bound(q: u32, b: u32, k: u32) -> Result<Eta0> {
    if q < 2 || b < 2 {
        return Err(Error::precondition("need q, b >= 2"));
    }
    if k < 2 {
        return Err(Error::precondition(format!("eta0 needs k >= 2, got {k}")));
    }
    let sync = sync_steps(q, k);
    let denom_steps = (sync + b * (k + 1)) as f64;
    let exponent = (k as u64 + 1) * (sync as u64 + b as u64 * (k as u64 + 1));
    let lq = (q as f64).ln();
    let tail = -lq.ln() - denom_steps.ln();

    // log(−log(1 − q^{−E})) evaluated stably: for tiny x = q^{−E},
    // −log(1−x) = x(1 + x/2 + …), so the log is log(x) + x/2 + O(x²).
    let log_x = -(exponent as f64) * lq;
    let log_neg_log = if log_x < -40.0 {
        log_x + (log_x.exp()) / 2.0
    } else {
        let x = log_x.exp();
        (-f64::ln_1p(-x)).ln()
    };
    // shared tail keeps log_sharper >= log_closed exact in floating point
    let log_closed = tail + log_x;
    let log_sharper = tail + log_neg_log;
    Ok(Eta0 {
        sync,
        exponent,
        log_closed,
        log_sharper,
    })
}
