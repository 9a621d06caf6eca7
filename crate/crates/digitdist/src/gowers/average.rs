//! The Gowers-type average `A(ρ, r₀)` computed two ways.
//!
//! Direct definition:
//!
//! ```text
//! A(ρ, r₀) = q^{-(k+1)ρ} Σ_{n, h₀..h_{k−1} < q^ρ} Π_w t_q^{(w)}(n + w·h + r₀_w)
//! ```
//!
//! and the graph recursion `A(ρ, r₀) = Σ_{r₁} p_{r₀,r₁} A(ρ−1, r₁)` with the
//! exact edge weights of the transition graph. The direct sum tallies terms
//! by phase residue, so both routes produce exact group-ring elements and
//! can be compared exactly, not just numerically. The `Truncated` variant
//! replaces `s_q` by the `ρ`-digit truncation `s^ρ`; it obeys the same
//! recursion with base case `A(0, ·) = 1`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::budget::Budget;
use crate::digitcore::{digit_sum_u64, DigitParams};
use crate::gowers::graph::{Node, TransitionGraph};
use crate::gowers::phase::PhaseVector;
use crate::{Error, Result};

/// Which digit-sum enters the phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// The full sum of digits `s_q`.
    Full,
    /// The truncation `s^ρ` at the current recursion depth.
    Truncated,
}

/// Base-case value `A(0, r)`: the single `(n, h) = 0` term.
fn base_case(params: &DigitParams, node: &Node, variant: Variant) -> PhaseVector {
    match variant {
        // s^0 ≡ 0, so every phase is trivial
        Variant::Truncated => PhaseVector::basis(params, &params.phase(0)),
        Variant::Full => {
            let mut t = 0i64;
            for (w, &rw) in node.coords().iter().enumerate() {
                let s = digit_sum_u64(rw as u64, params.q() as u64) as i64;
                if (w as u32).count_ones() % 2 == 0 {
                    t += s;
                } else {
                    t -= s;
                }
            }
            PhaseVector::basis(params, &params.phase(t))
        }
    }
}

/// All values `A(ρ, ·)` over the reachable set, by iterating the recursion
/// `ρ` times from the base case. Exact group-ring arithmetic throughout.
pub fn gowers_average_all(graph: &TransitionGraph, rho: u32, variant: Variant) -> Vec<PhaseVector> {
    let params = graph.params();
    let n = graph.node_count();
    let letters = BigInt::from(params.q()).pow(graph.k() + 1);
    let inv = BigRational::new(BigInt::one(), letters);

    let mut cur: Vec<PhaseVector> = (0..n)
        .map(|i| base_case(params, graph.node(i), variant))
        .collect();
    for _ in 0..rho {
        let mut next: Vec<PhaseVector> = vec![PhaseVector::zero(params); n];
        for (r0, out) in next.iter_mut().enumerate() {
            for e in graph.edges_from(r0) {
                let scale = &inv * BigRational::from(BigInt::from(e.count));
                out.add_shifted_scaled(&cur[e.target], e.phase_t, &scale);
            }
        }
        cur = next;
    }
    cur
}

/// `A(ρ, r₀)` by the graph recursion; `r₀` must be a reachable vertex.
pub fn gowers_average_recursive(
    graph: &TransitionGraph,
    rho: u32,
    r0: &Node,
    variant: Variant,
) -> Result<PhaseVector> {
    let idx = graph
        .node_index(r0)
        .ok_or_else(|| Error::precondition("start vertex is not in the reachable set"))?;
    Ok(gowers_average_all(graph, rho, variant).swap_remove(idx))
}

/// `A(ρ, r₀)` by direct enumeration of all `q^{(k+1)ρ}` terms.
///
/// Terms are tallied per phase residue with pure integer arithmetic; the
/// result is the exact group-ring element with coefficients
/// `count_t / q^{(k+1)ρ}`.
pub fn gowers_average_brute(
    params: &DigitParams,
    k: u32,
    rho: u32,
    r0: &Node,
    variant: Variant,
    budget: &Budget,
) -> Result<PhaseVector> {
    if r0.k() != k {
        return Err(Error::precondition("start vertex dimension mismatch"));
    }
    let q = params.q() as u64;
    let terms = budget.checked_pow(q, (k + 1) * rho)?;
    let side = q.pow(rho);
    let b = params.b() as u64;
    let cube = 1usize << k;

    // digit-sum table over every reachable argument n + w·h + r₀_w
    let max_r = r0.coords().iter().copied().max().unwrap_or(0) as u64;
    let max_arg = (side - 1) * (k as u64 + 1) + max_r;
    let table: Vec<u32> = match variant {
        Variant::Full => (0..=max_arg).map(|x| digit_sum_u64(x, q) as u32).collect(),
        Variant::Truncated => {
            let modulus = q.pow(rho);
            (0..=max_arg)
                .map(|x| digit_sum_u64(x % modulus, q) as u32)
                .collect()
        }
    };

    // odometer over (h₀, …, h_{k−1}) below a fixed n; level i adds h_i to
    // the w with bit i set
    fn walk(
        level: usize,
        k: usize,
        side: u64,
        partial: &mut Vec<Vec<u64>>,
        table: &[u32],
        b: u64,
        counts: &mut [u64],
    ) {
        let cube = 1usize << k;
        if level == k + 1 {
            // leaf: tally the signed digit-sum residue
            let vals = &partial[level];
            let mut t = 0i64;
            for (w, &arg) in vals.iter().enumerate().take(cube) {
                let s = table[arg as usize] as i64;
                if (w as u32).count_ones() % 2 == 0 {
                    t += s;
                } else {
                    t -= s;
                }
            }
            counts[t.rem_euclid(b as i64) as usize] += 1;
            return;
        }
        for v in 0..side {
            {
                let (lo, hi) = partial.split_at_mut(level + 1);
                let src = &lo[level];
                let dst = &mut hi[0];
                let bit = level - 1;
                for w in 0..cube {
                    dst[w] = src[w] + if (w >> bit) & 1 == 1 { v } else { 0 };
                }
            }
            walk(level + 1, k, side, partial, table, b, counts);
        }
    }

    // partition the n-range across workers; the per-residue tallies are
    // exact integers, so the merged result is order-independent
    use rayon::prelude::*;
    let counts: Vec<u64> = (0..side)
        .into_par_iter()
        .fold(
            || vec![0u64; b as usize],
            |mut counts, n| {
                let mut partial: Vec<Vec<u64>> = vec![vec![0u64; cube]; k as usize + 2];
                partial[1] = r0.coords().iter().map(|&x| x as u64 + n).collect();
                walk(1, k as usize, side, &mut partial, &table, b, &mut counts);
                counts
            },
        )
        .reduce(
            || vec![0u64; b as usize],
            |mut a, bq| {
                for (x, y) in a.iter_mut().zip(bq) {
                    *x += y;
                }
                a
            },
        );
    debug_assert_eq!(counts.iter().sum::<u64>() as u128, terms);

    let denom = BigInt::from(q).pow((k + 1) * rho);
    let mut out = PhaseVector::zero(params);
    for (t, &c) in counts.iter().enumerate() {
        if c != 0 {
            let coeff = BigRational::new(BigInt::from(c), denom.clone());
            let mut basis = PhaseVector::basis(params, &params.phase(t as i64));
            basis.scale_assign(&coeff);
            out.add_assign(&basis);
        }
    }
    Ok(out)
}
