//! Exact discrepancy of a rational rotation.
//!
//! For rational `α = u/v` the points `{nα}`, `n < N`, sit on the grid
//! `ℤ/v`, so the supremum over positioned intervals is attained (in the
//! limit) at interval endpoints drawn from the occupied grid positions. Two
//! families of candidates cover the supremum exactly: shortest half-open
//! intervals swallowing a closed arc of points (overfull) and longest
//! intervals inside an open arc (underfull). All comparisons are exact
//! integer arithmetic; the result is the exact rational `D_N(α)`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, ToPrimitive, Zero};
#[cfg(test)]
use num::One;

use crate::budget::Budget;
use crate::{Error, Result};

fn position_counts(alpha: &BigRational, n_points: u64) -> Result<(u64, Vec<(u64, u64)>)> {
    let v = alpha
        .denom()
        .to_u64()
        .ok_or_else(|| Error::precondition("discrepancy needs denominator fitting u64"))?;
    let u = alpha.numer().mod_floor(alpha.denom()).to_u64().expect("reduced");
    let cycle = v.min(n_points);
    let full = n_points / v;
    let rem = n_points % v;
    let mut pts: Vec<(u64, u64)> = (0..cycle)
        .map(|j| {
            let pos = (j as u128 * u as u128 % v as u128) as u64;
            let extra = u64::from(j < rem);
            (pos, full + extra)
        })
        .filter(|&(_, c)| c > 0)
        .collect();
    pts.sort_unstable();
    Ok((v, pts))
}

/// Exact `D_N(α)` for rational `α`.
pub fn discrepancy(alpha: &BigRational, n_points: u64, budget: &Budget) -> Result<BigRational> {
    if n_points == 0 {
        return Err(Error::precondition("need N >= 1"));
    }
    let (v, pts) = position_counts(alpha, n_points)?;
    let k = pts.len();
    budget.check((k as u128).saturating_mul(k as u128))?;

    // doubled positions and prefix counts for cyclic arcs
    let ext_pos: Vec<u64> = (0..2 * k).map(|i| pts[i % k].0 + (i / k) as u64 * v).collect();
    let mut prefix = vec![0u64; 2 * k + 1];
    for i in 0..2 * k {
        prefix[i + 1] = prefix[i] + pts[i % k].1;
    }

    let n_i = n_points as i128;
    let v_i = v as i128;
    let mut best: i128 = 0; // numerator of D over the common denominator N·v
    for i in 0..k {
        for j in i..i + k {
            let len = (ext_pos[j] - ext_pos[i]) as i128;
            let closed = (prefix[j + 1] - prefix[i]) as i128;
            // overfull: count/N − len/v
            best = best.max(closed * v_i - len * n_i);
            if j > i {
                // underfull: len/v − (open count)/N
                let open = closed - pts[i % k].1 as i128 - pts[j % k].1 as i128;
                best = best.max(len * n_i - open * v_i);
            }
        }
    }
    Ok(BigRational::new(
        BigInt::from(best),
        BigInt::from(n_i) * BigInt::from(v_i),
    ))
}

/// Definitional reference: enumerate interval endpoints over the raw point
/// multiset (no distinct-position compression) and count by binary search.
/// Quadratic in `N`; used as the independent oracle for [`discrepancy`].
pub fn discrepancy_brute_reference(
    alpha: &BigRational,
    n_points: u64,
    budget: &Budget,
) -> Result<BigRational> {
    if n_points == 0 {
        return Err(Error::precondition("need N >= 1"));
    }
    let v = alpha
        .denom()
        .to_u64()
        .ok_or_else(|| Error::precondition("denominator too large"))?;
    let u = alpha.numer().mod_floor(alpha.denom()).to_u64().expect("reduced");
    budget.check((n_points as u128).saturating_mul(n_points as u128))?;

    let mut raw: Vec<u64> = (0..n_points)
        .map(|j| (j as u128 * u as u128 % v as u128) as u64)
        .collect();
    raw.sort_unstable();
    let count_le = |x: u64| raw.partition_point(|&p| p <= x) as i128;
    let count_lt = |x: u64| raw.partition_point(|&p| p < x) as i128;
    let closed_arc = |a: u64, b: u64| -> i128 {
        if a <= b {
            count_le(b) - count_lt(a)
        } else {
            (n_points as i128 - count_lt(a)) + count_le(b)
        }
    };

    let n_i = n_points as i128;
    let v_i = v as i128;
    let mut best: i128 = 0;
    for &p1 in raw.iter() {
        for &p2 in raw.iter() {
            let len = ((p2 as i128 - p1 as i128).rem_euclid(v_i)) as u64;
            let closed = closed_arc(p1, p2);
            best = best.max(closed * v_i - len as i128 * n_i);
            if p1 != p2 {
                let open = closed - (count_le(p1) - count_lt(p1)) - (count_le(p2) - count_lt(p2));
                best = best.max(len as i128 * n_i - open * v_i);
            }
        }
    }
    // single-position overfull arcs are covered by p1 == p2 above (len 0)
    Ok(BigRational::new(
        BigInt::from(best),
        BigInt::from(n_i) * BigInt::from(v_i),
    ))
}

/// `Σ_{d < q^m} D_N(d/q^m)` with the empirical constant of the
/// `(N + q^m)/N (log⁺N)²` envelope.
#[derive(Debug, Clone)]
pub struct DiscrepancySum {
    pub total: BigRational,
    /// `total · N / ((N + q^m)(log⁺N)²)`.
    pub normalized: f64,
}

pub fn discrepancy_sum(q: u32, m_exp: u32, n_points: u64, budget: &Budget) -> Result<DiscrepancySum> {
    let q_m = budget.checked_pow(q as u64, m_exp)?;
    let per_term = (n_points.min(q_m as u64) as u128).pow(2);
    budget.check((q_m).saturating_mul(per_term.max(1)))?;
    let q_m = q_m as u64;
    let denom = BigInt::from(q).pow(m_exp);

    use rayon::prelude::*;
    let terms: Vec<BigRational> = (0..q_m)
        .into_par_iter()
        .map(|d| {
            let alpha = BigRational::new(BigInt::from(d), denom.clone());
            discrepancy(&alpha, n_points, budget)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigRational::zero();
    for t in &terms {
        total += t;
    }

    let log_plus = (n_points as f64).ln().max(1.0);
    let normalized = total.to_f64().unwrap_or(f64::NAN) * n_points as f64
        / ((n_points as f64 + q_m as f64) * log_plus * log_plus);
    Ok(DiscrepancySum { total, normalized })
}
