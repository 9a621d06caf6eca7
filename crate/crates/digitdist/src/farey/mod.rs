//! Farey machinery: neighbour pairs and mediant rounding via Stern–Brocot
//! descent, the iterated-approximation shift parameters `K_i`, `M_i`, `𝔐_i`,
//! the divisibility bad set, and the discrepancy-based counting bounds.
//!
//! All inputs are exact rationals. The neighbour search walks the
//! Stern–Brocot tree with quotient-sized jumps, so the cost is logarithmic
//! in the denominators rather than linear in the Farey order.

mod discrepancy;

pub use discrepancy::{discrepancy, discrepancy_brute_reference, discrepancy_sum, DiscrepancySum};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::digitcore::{rat_floor, rat_norm};
use crate::{Error, Result};

/// A reduced fraction `p/q` together with the Farey order it was produced
/// for. Numerators may be any sign (the Farey sequence is extended over ℝ by
/// translation); denominators are positive and bounded by the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyFraction {
    p: BigInt,
    q: BigInt,
    order: BigInt,
}

impl FareyFraction {
    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

struct Frac {
    p: BigInt,
    q: BigInt,
}

impl Frac {
    fn value_leq(&self, alpha: &BigRational) -> bool {
        // p/q <= u/v  <=>  p·v <= u·q (q, v > 0)
        &self.p * alpha.denom() <= alpha.numer() * &self.q
    }
}

/// Consecutive order-`n` Farey fractions `a/b ≤ α < c/d`.
///
/// Stern–Brocot descent toward `α`, taking all same-direction steps at once;
/// when the mediant denominator first exceeds `n`, the bracket is exactly a
/// neighbour pair in `F_n` (so `bc − ad = 1` and `b + d > n`).
pub fn farey_neighbors(alpha: &BigRational, order: &BigInt) -> Result<(FareyFraction, FareyFraction)> {
    if order < &BigInt::one() {
        return Err(Error::precondition("Farey order must be >= 1"));
    }
    let base = rat_floor(alpha);
    let mut left = Frac {
        p: base.clone(),
        q: BigInt::one(),
    };
    let mut right = Frac {
        p: base + 1,
        q: BigInt::one(),
    };
    let (u, v) = (alpha.numer(), alpha.denom());
    loop {
        let med_q = &left.q + &right.q;
        if med_q > *order {
            break;
        }
        let med = Frac {
            p: &left.p + &right.p,
            q: med_q,
        };
        if med.value_leq(alpha) {
            // descend right: left += k·right while value(left) <= α and den fits.
            // value(l + k·r) <= α  <=>  k·(r.p·v − u·r.q) <= u·l.q − v·l.p
            let num = u * &left.q - v * &left.p;
            let den = v * &right.p - u * &right.q; // > 0 since α < right
            let k_alpha = num.div_floor(&den);
            let k_den = (order - &left.q).div_floor(&right.q);
            let k = k_alpha.min(k_den).max(BigInt::one());
            left.p += &k * &right.p;
            left.q += &k * &right.q;
        } else {
            // descend left: right += k·left while value(right) > α.
            // value(r + k·l) > α  <=>  k·(u·l.q − v·l.p) < v·r.p − u·r.q
            let a = v * &right.p - u * &right.q; // > 0
            let b = u * &left.q - v * &left.p; // >= 0
            let k_alpha = if b.is_zero() {
                None
            } else {
                Some((&a - BigInt::one()).div_floor(&b))
            };
            let k_den = (order - &right.q).div_floor(&left.q);
            let k = match k_alpha {
                Some(ka) => ka.min(k_den),
                None => k_den,
            }
            .max(BigInt::one());
            right.p += &k * &left.p;
            right.q += &k * &left.q;
        }
    }
    Ok((
        FareyFraction {
            p: left.p,
            q: left.q,
            order: order.clone(),
        },
        FareyFraction {
            p: right.p,
            q: right.q,
            order: order.clone(),
        },
    ))
}

/// The order-`n` Farey fraction `P_n(α)/Q_n(α)`: the left neighbour when `α`
/// lies strictly below the mediant of its neighbour pair, else the right.
pub fn farey_round(alpha: &BigRational, order: &BigInt) -> Result<FareyFraction> {
    let (left, right) = farey_neighbors(alpha, order)?;
    let med_p = &left.p + &right.p;
    let med_q = &left.q + &right.q;
    // α < mediant  <=>  u·med_q < v·med_p
    if alpha.numer() * &med_q < alpha.denom() * &med_p {
        Ok(left)
    } else {
        Ok(right)
    }
}

/// One index of the shift-parameter family.
#[derive(Debug, Clone)]
pub struct ShiftTerm {
    pub i: u32,
    /// The van der Corput shift `K_i`.
    pub k: BigInt,
    /// The matching numerator product `M_i`.
    pub m: BigInt,
    /// The twice-rounded numerator `𝔐_i`.
    pub frak_m: BigInt,
}

/// The shift parameters `K_i, M_i, 𝔐_i` for `i = 1, …, k−1`.
#[derive(Debug, Clone)]
pub struct ShiftParams {
    pub m: u64,
    pub q: u32,
    pub mu: u32,
    pub sigma: u32,
    pub k: u32,
    pub terms: Vec<ShiftTerm>,
}

fn pow_bi(q: u32, e: u32) -> BigInt {
    BigInt::from(q).pow(e)
}

/// Build the shift parameters by composed Farey roundings:
///
/// - `i = 1`: round `m/q^{2μ}` at order `q^{2μ+2σ}`, then the numerator over
///   `q^{(k−2)μ}` at order `q^σ`;
/// - `1 < i < k−1`: round `m/q^{(i+1)μ}` at order `q^{μ+2σ}`, then over
///   `q^{(k−1−i)μ}` at order `q^σ`;
/// - `i = k−1`: round `m/q^{kμ}` at order `q^{μ+σ}`, then over `q^{kμ}` at
///   order `q^σ`.
///
/// `K_i` collects the denominators, `M_i` the first numerator times the
/// second denominator, `𝔐_i` the second numerator. The size bounds
/// `K₁ ≤ q^{2μ+3σ}` and `K_i ≤ q^{μ+3σ}` are asserted.
pub fn shift_params(m: u64, q: u32, mu: u32, sigma: u32, k: u32) -> Result<ShiftParams> {
    if k < 3 {
        return Err(Error::precondition(format!("shift parameters need k >= 3, got {k}")));
    }
    if sigma >= mu {
        return Err(Error::precondition(format!("need sigma < mu, got sigma={sigma}, mu={mu}")));
    }
    if m == 0 {
        return Err(Error::precondition("need m >= 1"));
    }
    let order_sigma = pow_bi(q, sigma);
    let mut terms = Vec::with_capacity(k as usize - 1);
    for i in 1..k {
        let (first_order, denom_exp, second_denom_exp) = if i == 1 {
            (pow_bi(q, 2 * mu + 2 * sigma), 2 * mu, (k - 2) * mu)
        } else if i < k - 1 {
            (pow_bi(q, mu + 2 * sigma), (i + 1) * mu, (k - 1 - i) * mu)
        } else {
            (pow_bi(q, mu + sigma), k * mu, k * mu)
        };
        let alpha = BigRational::new(BigInt::from(m), pow_bi(q, denom_exp));
        let first = farey_round(&alpha, &first_order)?;
        let inner = BigRational::new(first.numer().clone(), pow_bi(q, second_denom_exp));
        let second = farey_round(&inner, &order_sigma)?;
        let (big_k, big_m) = if i == k - 1 {
            (first.denom().clone(), first.numer().clone())
        } else {
            (
                first.denom() * second.denom(),
                first.numer() * second.denom(),
            )
        };
        let cap = if i == 1 {
            pow_bi(q, 2 * mu + 3 * sigma)
        } else {
            pow_bi(q, mu + 3 * sigma)
        };
        if big_k > cap {
            return Err(Error::invariant(format!("K_{i} = {big_k} exceeds its size bound {cap}")));
        }
        terms.push(ShiftTerm {
            i,
            k: big_k,
            m: big_m,
            frak_m: second.numer().clone(),
        });
    }
    Ok(ShiftParams {
        m,
        q,
        mu,
        sigma,
        k,
        terms,
    })
}

/// Exhaustive count of the divisibility bad set: `m < q^{ν+1}` such that
/// some prime `p | q` and index `i` have `p^{3γ} | 𝔐_i`.
#[derive(Debug, Clone)]
pub struct BadSetCount {
    pub count: u64,
    pub total: u64,
    /// `|A| · P⁻(q)^{3γ} / q^{ν+1}`, the empirical implied constant.
    pub ratio: f64,
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn bad_set_count(
    q: u32,
    nu: u32,
    mu: u32,
    sigma: u32,
    gamma: u32,
    k: u32,
    budget: &Budget,
) -> Result<BadSetCount> {
    if nu + 1 < 3 * gamma {
        return Err(Error::precondition("need nu + 1 >= 3*gamma"));
    }
    let total = budget.checked_pow(q as u64, nu + 1)?;
    let total = u64::try_from(total).expect("fits after budget check");
    budget.check(total as u128 * k as u128)?;

    let primes = prime_divisors(q as u64);
    let p_min = *primes.first().expect("q >= 2 has a prime divisor");
    let powers: Vec<BigInt> = primes.iter().map(|&p| BigInt::from(p).pow(3 * gamma)).collect();

    use rayon::prelude::*;
    let count: u64 = (0..total)
        .into_par_iter()
        .map(|m| {
            if m == 0 {
                // 𝔐_i(0) = 0 is divisible by every power
                return 1u64;
            }
            let params = shift_params(m, q, mu, sigma, k).expect("validated inputs");
            let bad = params
                .terms
                .iter()
                .any(|term| powers.iter().any(|pw| term.frak_m.mod_floor(pw).is_zero()));
            u64::from(bad)
        })
        .sum();

    let ratio = count as f64 * (p_min as f64).powi(3 * gamma as i32) / total as f64;
    Ok(BadSetCount { count, total, ratio })
}

/// Count of `n < N` with `‖nα + β‖ ≤ H/q^σ`, against the discrepancy bound
/// `N·D_N(α) + 2HN/q^σ`.
///
/// The threshold is closed (membership in `ℤ + [−H/q^σ, H/q^σ]`), so `H = 0`
/// counts the exact integer hits.
#[derive(Debug, Clone)]
pub struct NearIntegerCount {
    pub count: u64,
    pub bound: BigRational,
}

pub fn near_integer_count(
    alpha: &BigRational,
    beta: &BigRational,
    n_len: u64,
    h: u64,
    sigma: u32,
    q: u32,
    budget: &Budget,
) -> Result<NearIntegerCount> {
    if sigma < 1 {
        return Err(Error::precondition("need sigma >= 1"));
    }
    let q_sigma_minus = BigInt::from(q).pow(sigma - 1);
    if BigInt::from(h) >= q_sigma_minus {
        return Err(Error::precondition(format!("need H < q^(sigma-1), got H={h}")));
    }
    budget.check(n_len as u128)?;
    let threshold = BigRational::new(BigInt::from(h), BigInt::from(q).pow(sigma));
    let mut count = 0u64;
    let mut value = beta.clone();
    for _ in 0..n_len {
        if rat_norm(&value) <= threshold {
            count += 1;
        }
        value += alpha;
    }
    let d = discrepancy(alpha, n_len, budget)?;
    let n_rat = BigRational::from(BigInt::from(n_len));
    let bound = &n_rat * d + BigRational::from(BigInt::from(2 * h)) * &n_rat
        / BigRational::from(BigInt::from(q).pow(sigma));
    if BigRational::from(BigInt::from(count)) > bound {
        return Err(Error::invariant(format!(
            "near-integer count {count} exceeds the discrepancy bound {bound}"
        )));
    }
    Ok(NearIntegerCount { count, bound })
}

/// Count of `n ∈ [start, start+N)` with `{nα+β} ∈ [t/T, (t+1)/T)` and
/// `⌊nα+β⌋ ≡ l (mod L)`, with the equidistribution main term `N/(LT)` and
/// the deviation measured in units of `N·D_N(α/L)`.
#[derive(Debug, Clone)]
pub struct BoxCount {
    pub count: u64,
    pub main_term: BigRational,
    /// `|count − N/(LT)| / (N·D_N(α/L))`.
    pub error_ratio: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn box_count(
    start: u64,
    n_len: u64,
    alpha: &BigRational,
    beta: &BigRational,
    t: u32,
    t_modulus: u32,
    l: u32,
    l_modulus: u32,
    budget: &Budget,
) -> Result<BoxCount> {
    if t >= t_modulus || l >= l_modulus {
        return Err(Error::precondition("need 0 <= t < T and 0 <= l < L"));
    }
    budget.check(n_len as u128)?;
    let t_lo = BigRational::new(BigInt::from(t), BigInt::from(t_modulus));
    let t_hi = BigRational::new(BigInt::from(t + 1), BigInt::from(t_modulus));
    let l_mod = BigInt::from(l_modulus);
    let mut count = 0u64;
    let mut value = alpha * BigRational::from(BigInt::from(start)) + beta;
    for _ in 0..n_len {
        let fl = rat_floor(&value);
        let frac = &value - BigRational::from(fl.clone());
        if frac >= t_lo && frac < t_hi && fl.mod_floor(&l_mod) == BigInt::from(l) {
            count += 1;
        }
        value += alpha;
    }
    let main_term = BigRational::new(
        BigInt::from(n_len),
        BigInt::from(l_modulus) * BigInt::from(t_modulus),
    );
    let scaled_alpha = alpha / BigRational::from(l_mod);
    let d = discrepancy(&scaled_alpha, n_len, budget)?;
    let diff = (BigRational::from(BigInt::from(count)) - &main_term).abs();
    let denom = BigRational::from(BigInt::from(n_len)) * d;
    let error_ratio = if denom.is_zero() {
        0.0
    } else {
        (diff / denom).to_f64().unwrap_or(f64::INFINITY)
    };
    Ok(BoxCount {
        count,
        main_term,
        error_ratio,
    })
}
