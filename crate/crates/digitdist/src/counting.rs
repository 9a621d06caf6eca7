//! Counting in arithmetic progressions: `N_{y,z}(a,b;r,m)`, the per-modulus
//! worst-case error `E(m)`, the error sum over `m ≤ x^{1−ε}`, and residuals
//! normalized by the Gelfond exponent `N^λ`.
//!
//! Counting is exact integer work throughout; errors `|N − (z−y)/(bm)|`
//! are carried as exact rationals with denominator `bm`.

use num::bigint::{BigInt, ToBigInt};
use num::rational::BigRational;
use num::{BigUint, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::digitcore::{digit_sum, digit_sum_u64, DigitParams};
use crate::{Error, Result};

/// One progression-count question: how many `n ∈ [y, z)` have
/// `s_q(n) ≡ a (mod b)` and `n ≡ r (mod m)`.
#[derive(Debug, Clone)]
pub struct ProgressionQuery {
    pub params: DigitParams,
    pub y: BigUint,
    pub z: BigUint,
    pub a: u32,
    pub m: u64,
    pub r: u64,
}

impl ProgressionQuery {
    pub fn new(params: DigitParams, y: BigUint, z: BigUint, a: u32, m: u64, r: u64) -> Result<Self> {
        if y >= z {
            return Err(Error::precondition(format!("need y < z, got y={y}, z={z}")));
        }
        if a >= params.b() {
            return Err(Error::precondition(format!("residue a={a} not below b={}", params.b())));
        }
        if m == 0 {
            return Err(Error::precondition("modulus m must be >= 1"));
        }
        if r >= m {
            return Err(Error::precondition(format!("residue r={r} not below m={m}")));
        }
        Ok(ProgressionQuery { params, y, z, a, m, r })
    }

    fn width(&self) -> BigUint {
        &self.z - &self.y
    }
}

/// Exact count for one query. Work is the window width `z − y`.
pub fn count_progression(query: &ProgressionQuery, budget: &Budget) -> Result<u64> {
    let width = query.width();
    budget.check(width.to_u128().unwrap_or(u128::MAX))?;
    let q = query.params.q();
    let b = query.params.b() as u64;
    let (a, m, r) = (query.a as u64, query.m, query.r);

    if let (Some(y), Some(z)) = (query.y.to_u64(), query.z.to_u64()) {
        let mut count = 0u64;
        // skip straight to the first n ≡ r (mod m)
        let mut n = y + (r + m - y % m) % m;
        while n < z {
            if digit_sum_u64(n, q as u64) % b == a {
                count += 1;
            }
            n += m;
        }
        return Ok(count);
    }

    // positions beyond u64: same loop in big integers
    let mut count = 0u64;
    let m_big = BigUint::from(m);
    let mut n = &query.y + (BigUint::from(r) + &m_big - &query.y % &m_big) % &m_big;
    while n < query.z {
        if digit_sum(&n, q) % b == a {
            count += 1;
        }
        n += &m_big;
    }
    Ok(count)
}

/// How the `(y, z)` maximum in `E(m)` is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorMode {
    /// Exact maximum over all `0 ≤ y < z ≤ 2x` with `z − y ≤ x` and all `r`.
    ExactSmall,
    /// `y = 0`, `z = x`, maximum over `r` only: a documented lower bound for
    /// the true maximum, cheap enough for large `x`.
    Window,
}

/// The per-modulus error `E(m) = max |N_{y,z}(a,b;r,m) − (z−y)/(bm)|` over
/// the searched domain, as an exact rational.
#[derive(Debug, Clone)]
pub struct ErrorSummary {
    pub m: u64,
    pub error: BigRational,
    pub mode: ErrorMode,
}

/// Hard cap on `x` for [`ErrorMode::ExactSmall`]; the work budget can lower
/// the effective cap but never raise it.
pub const EXACT_SMALL_CAP: u64 = 1 << 12;

fn prefix_table(params: &DigitParams, upto: u64, m: u64) -> Vec<u32> {
    // prefix[n][a][r] = #{ n' < n : s_q(n') ≡ a (mod b), n' ≡ r (mod m) },
    // flattened as n·(b·m) + a·m + r
    let b = params.b() as u64;
    let cells = (b * m) as usize;
    let mut table = vec![0u32; (upto as usize + 1) * cells];
    for n in 0..upto as usize {
        let a = (digit_sum_u64(n as u64, params.q() as u64) % b) as usize;
        let r = (n as u64 % m) as usize;
        table.copy_within(n * cells..(n + 1) * cells, (n + 1) * cells);
        table[(n + 1) * cells + a * m as usize + r] += 1;
    }
    table
}

/// Compute `E(m)` for a fixed digit class `a`.
pub fn error_term(
    params: &DigitParams,
    a: u32,
    m: u64,
    x: u64,
    mode: ErrorMode,
    budget: &Budget,
) -> Result<ErrorSummary> {
    if m == 0 {
        return Err(Error::precondition("modulus m must be >= 1"));
    }
    if x < 2 {
        return Err(Error::precondition("need x >= 2"));
    }
    if a >= params.b() {
        return Err(Error::precondition("digit class a must be below b"));
    }
    let b = params.b() as u64;
    let bm = BigInt::from(b * m);

    match mode {
        ErrorMode::ExactSmall => {
            if x > EXACT_SMALL_CAP {
                return Err(Error::precondition(format!(
                    "exact-small mode is capped at x <= {EXACT_SMALL_CAP}, got {x}"
                )));
            }
            budget.check(x as u128 * x as u128 * m as u128)?;
            let cells = (b * m) as usize;
            let table = prefix_table(params, 2 * x, m);
            // compare bm·count against (z−y): clear denominators once
            let mut max_num = 0i64;
            let bm_i = (b * m) as i64;
            for y in 0..(2 * x) {
                let zmax = (y + x).min(2 * x);
                for r in 0..m {
                    let idx = (a as u64 * m + r) as usize;
                    let base = table[y as usize * cells + idx] as i64;
                    for z in (y + 1)..=zmax {
                        let count = table[z as usize * cells + idx] as i64 - base;
                        let num = (count * bm_i - (z - y) as i64).abs();
                        if num > max_num {
                            max_num = num;
                        }
                    }
                }
            }
            let error = BigRational::new(BigInt::from(max_num), bm);
            Ok(ErrorSummary { m, error, mode })
        }
        ErrorMode::Window => {
            budget.check(x as u128)?;
            let mut counts = vec![0u64; m as usize];
            for n in 0..x {
                if digit_sum_u64(n, params.q() as u64) % b == a as u64 {
                    counts[(n % m) as usize] += 1;
                }
            }
            let mut max_num = BigInt::zero();
            for &c in &counts {
                let num = (BigInt::from(c) * &bm - BigInt::from(x)).abs();
                if num > max_num {
                    max_num = num;
                }
            }
            let error = BigRational::new(max_num, bm);
            Ok(ErrorSummary { m, error, mode })
        }
    }
}

/// The level-of-distribution error sum `Σ_{1 ≤ m ≤ x^{1−ε}} E(m)`.
#[derive(Debug, Clone)]
pub struct LdErrorSum {
    pub x: u64,
    pub epsilon: f64,
    pub m_max: u64,
    pub total: BigRational,
    pub per_m: Vec<ErrorSummary>,
}

/// Sum `E(m)` over `1 ≤ m ≤ ⌊x^{1−ε}⌋`.
///
/// The per-`m` terms are independent and computed in parallel; the reduction
/// is an exact rational sum taken in `m` order, so the result is identical
/// for every worker count.
pub fn ld_error_sum(
    params: &DigitParams,
    a: u32,
    x: u64,
    epsilon: f64,
    mode: ErrorMode,
    budget: &Budget,
) -> Result<LdErrorSum> {
    if !(0.0 < epsilon && epsilon < 1.0) {
        return Err(Error::precondition(format!("need 0 < epsilon < 1, got {epsilon}")));
    }
    let m_max = ((x as f64).powf(1.0 - epsilon).floor() as u64).max(1);
    let per_work = match mode {
        ErrorMode::ExactSmall => x as u128 * x as u128,
        ErrorMode::Window => x as u128,
    };
    budget.check(per_work.saturating_mul(m_max as u128))?;

    use rayon::prelude::*;
    let per_m: Vec<ErrorSummary> = (1..=m_max)
        .into_par_iter()
        .map(|m| error_term(params, a, m, x, mode, budget))
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigRational::zero();
    for s in &per_m {
        total += &s.error;
    }
    Ok(LdErrorSum {
        x,
        epsilon,
        m_max,
        total,
        per_m,
    })
}

/// Progression counts `N_{0,N}(a,b;r,m)` for every `(a, r)` at each
/// checkpoint `N`, from a single sweep.
///
/// Returned as `counts[checkpoint][a][r]`; checkpoints must be ascending.
pub fn progression_counts_at(
    params: &DigitParams,
    m: u64,
    checkpoints: &[u64],
    budget: &Budget,
) -> Result<Vec<Vec<Vec<u64>>>> {
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition("checkpoints must be ascending and nonempty"));
    }
    let top = *checkpoints.last().unwrap();
    budget.check(top as u128)?;
    let b = params.b() as usize;
    let mut counts = vec![vec![0u64; m as usize]; b];
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next_cp = 0usize;
    for n in 0..top {
        while next_cp < checkpoints.len() && checkpoints[next_cp] == n {
            out.push(counts.clone());
            next_cp += 1;
        }
        let a = (digit_sum_u64(n, params.q() as u64) % params.b() as u64) as usize;
        counts[a][(n % m) as usize] += 1;
    }
    while next_cp < checkpoints.len() {
        out.push(counts.clone());
        next_cp += 1;
    }
    Ok(out)
}

/// Residuals `|N_{0,N} − N/(bm)| / N^λ` over a list of `N` values.
#[derive(Debug, Clone)]
pub struct GelfondResidual {
    pub lambda: f64,
    /// `(N, residual)` pairs in input order.
    pub residuals: Vec<(u64, f64)>,
    pub max: f64,
}

/// Normalize progression-count errors by `N^λ` with λ the Gelfond exponent.
pub fn gelfond_residual(
    params: &DigitParams,
    m: u64,
    r: u64,
    a: u32,
    n_list: &[u64],
    budget: &Budget,
) -> Result<GelfondResidual> {
    if n_list.is_empty() {
        return Err(Error::precondition("need at least one N"));
    }
    if r >= m || a >= params.b() {
        return Err(Error::precondition("residues out of range"));
    }
    let mut sorted: Vec<u64> = n_list.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let lambda = crate::exponents::gelfond_lambda(params.q(), params.b())?;
    let table = progression_counts_at(params, m, &sorted, budget)?;
    let bm = params.b() as u64 * m;
    let mut residuals = Vec::with_capacity(n_list.len());
    let mut max = 0.0f64;
    for &n in n_list {
        let pos = sorted.binary_search(&n).unwrap();
        let count = table[pos][a as usize][r as usize];
        // |count − N/(bm)| = |count·bm − N| / (bm), exact until the division
        let scaled = (BigInt::from(count) * BigInt::from(bm) - n.to_bigint().unwrap()).abs();
        let err = scaled.to_f64().unwrap_or(f64::INFINITY) / bm as f64;
        let residual = err / (n as f64).powf(lambda);
        if residual > max {
            max = residual;
        }
        residuals.push((n, residual));
    }
    Ok(GelfondResidual {
        lambda,
        residuals,
        max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn params(q: u32, b: u32) -> DigitParams {
        DigitParams::new(q, b, 1).unwrap()
    }

    fn query(params: DigitParams, y: u64, z: u64, a: u32, m: u64, r: u64) -> ProgressionQuery {
        ProgressionQuery::new(params, BigUint::from(y), BigUint::from(z), a, m, r).unwrap()
    }

    #[test]
    fn thue_morse_block_is_balanced() {
        let q = query(params(2, 2), 0, 16, 0, 1, 0);
        assert_eq!(count_progression(&q, &Budget::default()).unwrap(), 8);
    }

    #[test]
    fn singleton_window() {
        let p = params(2, 2);
        for y in 0..10u64 {
            let c = count_progression(&query(p, y, y + 1, 0, 1, 0), &Budget::default()).unwrap();
            assert!(c <= 1);
        }
        assert!(ProgressionQuery::new(p, BigUint::from(5u32), BigUint::from(5u32), 0, 1, 0).is_err());
    }

    #[test]
    fn direct_loop_oracle() {
        let p = params(2, 3);
        let c = count_progression(&query(p, 0, 27, 0, 3, 0), &Budget::default()).unwrap();
        let mut expect = 0;
        for n in 0..27u64 {
            if digit_sum_u64(n, 2) % 3 == 0 && n % 3 == 0 {
                expect += 1;
            }
        }
        assert_eq!(c, expect);
    }

    #[test]
    fn window_beyond_word_size() {
        let p = params(3, 5);
        let base = BigUint::from(u64::MAX) + BigUint::one();
        let q = ProgressionQuery::new(p, base.clone(), &base + BigUint::from(200u32), 1, 3, 2).unwrap();
        let c = count_progression(&q, &Budget::default()).unwrap();
        assert!(c <= 200 / 3 + 1);
    }

    #[test]
    fn sum_over_digit_classes_recovers_progression_count() {
        let p = params(3, 5);
        let (y, z, m, r) = (13u64, 700u64, 6u64, 4u64);
        let mut total = 0u64;
        for a in 0..5 {
            total += count_progression(&query(p, y, z, a, m, r), &Budget::default()).unwrap();
        }
        let expect = (y..z).filter(|n| n % m == r).count() as u64;
        assert_eq!(total, expect);
    }

    #[test]
    fn sum_over_residues_recovers_class_count() {
        let p = params(2, 3);
        let (y, z, m, a) = (5u64, 600u64, 7u64, 2u32);
        let mut total = 0u64;
        for r in 0..m {
            total += count_progression(&query(p, y, z, a, m, r), &Budget::default()).unwrap();
        }
        let expect = count_progression(&query(p, y, z, a, 1, 0), &Budget::default()).unwrap();
        assert_eq!(total, expect);
    }

    /// Orthogonality: b·N_{y,z} − #{n ∈ [y,z) : n ≡ r} equals the sum over
    /// ℓ = 1..b−1 of the twisted exponential sums, up to float noise.
    #[test]
    fn exponential_sum_orthogonality() {
        let p = params(2, 3);
        let (y, z, m, r, a) = (3u64, 250u64, 5u64, 2u64, 1u32);
        let count = count_progression(&query(p, y, z, a, m, r), &Budget::default()).unwrap();
        let in_progression = (y..z).filter(|n| n % m == r).count() as f64;
        let mut acc = num::complex::Complex64::new(0.0, 0.0);
        for ell in 1..3u32 {
            for n in (y..z).filter(|n| n % m == r) {
                let t = digit_sum_u64(n, 2) as i64 - a as i64;
                acc += crate::numeric::e(ell as f64 * t as f64 / 3.0);
            }
        }
        let lhs = 3.0 * count as f64 - in_progression;
        assert!((lhs - acc.re).abs() < 1e-6 && acc.im.abs() < 1e-6);
    }

    #[test]
    fn exact_small_equals_definitional_brute() {
        let p = params(2, 2);
        let x = 64u64;
        for m in [1u64, 2, 3, 5] {
            let fast = error_term(&p, 0, m, x, ErrorMode::ExactSmall, &Budget::default()).unwrap();
            // definitional: recount every (y, z, r) window from scratch
            let bm = 2 * m as i64;
            let mut max_num = 0i64;
            for r in 0..m {
                for y in 0..(2 * x) {
                    let mut count = 0i64;
                    for z in (y + 1)..=(y + x).min(2 * x) {
                        let n = z - 1;
                        if digit_sum_u64(n, 2) % 2 == 0 && n % m == r {
                            count += 1;
                        }
                        max_num = max_num.max((count * bm - (z - y) as i64).abs());
                    }
                }
            }
            let expect = BigRational::new(BigInt::from(max_num), BigInt::from(bm));
            assert_eq!(fast.error, expect, "m={m}");
        }
    }

    #[test]
    fn window_mode_is_dominated_by_exact_small() {
        let p = params(2, 2);
        for m in [1u64, 2, 4] {
            let w = error_term(&p, 0, m, 8, ErrorMode::Window, &Budget::default()).unwrap();
            let e = error_term(&p, 0, m, 8, ErrorMode::ExactSmall, &Budget::default()).unwrap();
            assert!(w.error <= e.error);
            assert!(w.error >= BigRational::zero());
        }
    }

    #[test]
    fn exact_small_cap_enforced() {
        let p = params(2, 2);
        assert!(
            error_term(&p, 0, 1, EXACT_SMALL_CAP + 1, ErrorMode::ExactSmall, &Budget::default())
                .is_err()
        );
    }

    #[test]
    fn ld_sum_m_range_shrinks_with_epsilon() {
        let p = params(2, 2);
        let wide = ld_error_sum(&p, 0, 16, 0.5, ErrorMode::ExactSmall, &Budget::default()).unwrap();
        assert_eq!(wide.m_max, 4);
        assert_eq!(wide.per_m.len(), 4);
        let narrow = ld_error_sum(&p, 0, 16, 0.75, ErrorMode::ExactSmall, &Budget::default()).unwrap();
        assert!(narrow.m_max < wide.m_max);
        assert!(narrow.total <= wide.total);
    }

    #[test]
    fn ld_sum_regression_value() {
        // window mode, q = b = 2, x = 2^10, ε = 0.4: value pinned from the
        // first run. m_max is 63, not 64: the binary ε is slightly above
        // 2/5, so x^(1−ε) lands just below 64.
        let p = params(2, 2);
        let s = ld_error_sum(&p, 0, 1 << 10, 0.4, ErrorMode::Window, &Budget::default()).unwrap();
        assert_eq!(s.m_max, 63);
        let expect = BigRational::new(
            BigInt::parse_bytes(b"1101843221860609231340644246", 10).unwrap(),
            BigInt::parse_bytes(b"2052546673789621992207225", 10).unwrap(),
        );
        assert_eq!(s.total, expect);
    }

    #[test]
    fn gelfond_residual_is_finite() {
        let p = params(2, 3);
        let res =
            gelfond_residual(&p, 5, 2, 1, &[1 << 8, 1 << 10, 1 << 12], &Budget::default()).unwrap();
        assert!(res.max.is_finite());
        assert!(res.residuals.iter().all(|&(_, v)| v >= 0.0));
        // λ(2,3) = log(2·sin(π/6)/sin(π/12)) / (2 log 2)
        assert!((res.lambda - 0.9751).abs() < 1e-3);
    }

    #[test]
    fn progression_counts_checkpoint_sweep_matches_direct() {
        let p = params(3, 5);
        let cps = [10u64, 100, 1000];
        let sweep = progression_counts_at(&p, 4, &cps, &Budget::default()).unwrap();
        for (i, &n) in cps.iter().enumerate() {
            for a in 0..5u32 {
                for r in 0..4u64 {
                    let direct =
                        count_progression(&query(p, 0, n, a, 4, r), &Budget::default()).unwrap();
                    assert_eq!(sweep[i][a as usize][r as usize], direct);
                }
            }
        }
    }
}
