//! Base-`q` digit arithmetic: the sum-of-digits function `s_q`, its
//! truncations `s^α`, the unit digit `u_q`, and the phase residue carried by
//! the generalized Thue–Morse sequence `t_q(n) = e(ℓ·s_q(n)/b)`.
//!
//! Also home to the exact rational floor/nearest/distance-to-ℤ helpers used
//! wherever the surrounding analysis manipulates `⌊·⌋`, `⟨·⟩` and `‖·‖` of
//! rational quantities; keeping those exact makes every downstream check
//! deterministic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, Integer, One, ToPrimitive, Zero};

use crate::{Error, Result};

/// The global parameter triple `(q, b, ℓ)` with `gcd(b, q−1) = 1` and
/// `0 < ℓ < b`.
///
/// Every sequence-level object in the crate is built relative to one of
/// these. Construction rejects triples outside the hypothesis, so a value of
/// this type is proof that the hypothesis holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DigitParams {
    q: u32,
    b: u32,
    ell: u32,
}

impl DigitParams {
    pub fn new(q: u32, b: u32, ell: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::precondition(format!("base q must be >= 2, got {q}")));
        }
        if b < 2 {
            return Err(Error::precondition(format!("modulus b must be >= 2, got {b}")));
        }
        if !(0 < ell && ell < b) {
            return Err(Error::precondition(format!("need 0 < ell < b, got ell={ell}, b={b}")));
        }
        if (q as u64 - 1).gcd(&(b as u64)) != 1 {
            return Err(Error::precondition(format!(
                "need gcd(b, q-1) = 1, got q={q}, b={b}"
            )));
        }
        Ok(DigitParams { q, b, ell })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Reduce an arbitrary signed phase exponent to a residue in `[0, b)`.
    pub fn phase(&self, t: i64) -> PhaseResidue {
        PhaseResidue::new(t, self.b)
    }
}

/// A residue `t ∈ [0, b)` standing for the unit complex number `e(ℓ·t/b)`.
///
/// Addition of residues is multiplication of the unit numbers; negation is
/// conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhaseResidue {
    t: u32,
    b: u32,
}

impl PhaseResidue {
    pub fn new(t: i64, b: u32) -> Self {
        let m = t.rem_euclid(b as i64) as u32;
        PhaseResidue { t: m, b }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn modulus(&self) -> u32 {
        self.b
    }

    pub fn add(&self, other: &PhaseResidue) -> PhaseResidue {
        assert_eq!(self.b, other.b, "phase residues from different moduli");
        PhaseResidue::new(self.t as i64 + other.t as i64, self.b)
    }

    pub fn neg(&self) -> PhaseResidue {
        PhaseResidue::new(-(self.t as i64), self.b)
    }

    /// The complex value `e(ℓ·t/b)`.
    pub fn value(&self, ell: u32) -> num::complex::Complex64 {
        crate::numeric::e((ell as u64 * self.t as u64) as f64 / self.b as f64)
    }
}

/// Sum of the base-`q` digits of `n`.
pub fn digit_sum(n: &BigUint, q: u32) -> u64 {
    assert!(q >= 2);
    if n.is_zero() {
        return 0;
    }
    if q <= 256 {
        n.to_radix_le(q).iter().map(|&d| d as u64).sum()
    } else {
        let mut rest = n.clone();
        let qq = BigUint::from(q);
        let mut s = 0u64;
        while !rest.is_zero() {
            let (quot, rem) = rest.div_rem(&qq);
            s += rem.to_u64().expect("digit fits u64");
            rest = quot;
        }
        s
    }
}

/// `u64` fast path of [`digit_sum`]; the two agree wherever both apply.
pub fn digit_sum_u64(mut n: u64, q: u64) -> u64 {
    debug_assert!(q >= 2);
    let mut s = 0;
    while n > 0 {
        s += n % q;
        n /= q;
    }
    s
}

/// Truncated digit sum `s^α(n) = s_q(n mod q^α)`.
///
/// `q^α`-periodic in `n`; `α = 0` yields the empty truncation `s^0 ≡ 0`.
pub fn digit_sum_trunc(n: &BigUint, q: u32, alpha: u32) -> u64 {
    if alpha == 0 {
        return 0;
    }
    let modulus = BigUint::from(q).pow(alpha);
    digit_sum(&(n % modulus), q)
}

/// `u64` fast path of [`digit_sum_trunc`]. `q^alpha` must fit in `u64`.
pub fn digit_sum_trunc_u64(n: u64, q: u64, alpha: u32) -> u64 {
    if alpha == 0 {
        return 0;
    }
    let modulus = q.checked_pow(alpha).expect("q^alpha fits u64");
    digit_sum_u64(n % modulus, q)
}

/// Digit-window sum `s^{α,β}(n) = s^β(n) − s^α(n)`, the sum of the digits of
/// `n` in positions `α..β`. Always nonnegative. `α = 0` is `s^β` itself.
pub fn digit_sum_window(n: &BigUint, q: u32, alpha: u32, beta: u32) -> Result<u64> {
    if beta <= alpha {
        return Err(Error::precondition(format!(
            "digit window needs beta > alpha, got alpha={alpha}, beta={beta}"
        )));
    }
    Ok(digit_sum_trunc(n, q, beta) - digit_sum_trunc(n, q, alpha))
}

/// The unit digit `u_q(n) = s^1(n) = n mod q`.
pub fn unit_digit(n: &BigUint, q: u32) -> u32 {
    (n % BigUint::from(q)).to_u32().expect("residue fits u32")
}

/// Phase residue of `t_q^{(w)}(n) = e((−1)^{s₂(w)} ℓ s_q(n) / b)`: the digit
/// sum of `n`, signed by the parity of the binary weight of the word `w`,
/// reduced mod `b`.
pub fn tq_phase(params: &DigitParams, w: u64, n: &BigUint) -> PhaseResidue {
    let s = digit_sum(n, params.q()) as i64;
    let signed = if w.count_ones() % 2 == 0 { s } else { -s };
    params.phase(signed)
}

// --- exact rational helpers -------------------------------------------------

/// `⌊x⌋` of an exact rational.
pub fn rat_floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part `{x} = x − ⌊x⌋ ∈ [0, 1)`.
pub fn rat_frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Nearest integer `⟨x⟩ = ⌊x + 1/2⌋`.
pub fn rat_nearest(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

/// Distance to the nearest integer `‖x‖ = min_{n∈ℤ} |x − n|`.
pub fn rat_norm(x: &BigRational) -> BigRational {
    let f = rat_frac(x);
    let alt = BigRational::one() - &f;
    if f <= alt {
        f
    } else {
        alt
    }
}

/// `⌊x⌋` for `x = (num/den)·scale + offset` style expressions comes up often
/// enough in the carry and box counts that an `i128` exact floor division is
/// worth having: floor of `a / d` for signed `a`, positive `d`.
pub fn floor_div_i128(a: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    a.div_euclid(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(&big(0), 7), 0);
        assert_eq!(digit_sum(&big(6), 7), 6); // single digit q-1
        assert_eq!(digit_sum(&big((1 << 20) - 1), 2), 20);
        assert_eq!(digit_sum(&big(27), 2), 4);
        assert_eq!(digit_sum_u64(27, 2), 4);
    }

    #[test]
    fn digit_sum_big_matches_u64_path() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let n: u64 = rng.gen_range(0..u64::MAX / 2);
            for q in [2u32, 3, 10, 257, 1000] {
                assert_eq!(digit_sum(&big(n), q), digit_sum_u64(n, q as u64));
            }
        }
    }

    #[test]
    fn digit_sum_beyond_word_size() {
        // n = 2^100 + 2^64 + 1 has binary digit sum 3.
        let n = (BigUint::one() << 100u32) + (BigUint::one() << 64u32) + BigUint::one();
        assert_eq!(digit_sum(&n, 2), 3);
    }

    #[test]
    fn trunc_examples() {
        let q = 5u32;
        assert_eq!(digit_sum_trunc(&big(125), q, 3), 0); // n = q^3
        assert_eq!(digit_sum_trunc(&big(44), q, 3), digit_sum(&big(44), q)); // n < q^alpha
        assert_eq!(digit_sum_trunc(&big(27), 2, 3), 2); // 27 mod 8 = 3
        assert_eq!(digit_sum_trunc(&big(12345), 3, 0), 0);
    }

    #[test]
    fn trunc_is_q_alpha_periodic() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let n: u64 = rng.gen_range(0..1 << 30);
            let q: u32 = *[2, 3, 7].iter().nth(rng.gen_range(0..3)).unwrap();
            let alpha: u32 = rng.gen_range(1..5);
            let period = (q as u64).pow(alpha);
            assert_eq!(
                digit_sum_trunc(&big(n), q, alpha),
                digit_sum_trunc(&big(n + period), q, alpha)
            );
        }
    }

    #[test]
    fn window_examples_and_rejection() {
        assert_eq!(digit_sum_window(&big(3), 2, 3, 5).unwrap(), 0); // n < q^alpha
        assert_eq!(digit_sum_window(&big(27), 2, 1, 3).unwrap(), 1);
        assert!(digit_sum_window(&big(27), 2, 3, 3).is_err());
        assert!(digit_sum_window(&big(27), 2, 4, 3).is_err());
    }

    #[test]
    fn window_telescopes() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..300 {
            let n = big(rng.gen_range(0..1 << 40));
            let q = 3u32;
            let a = rng.gen_range(0..3);
            let b = rng.gen_range(a + 1..6);
            let c = rng.gen_range(b + 1..9);
            let left = digit_sum_window(&n, q, a, b).unwrap() + digit_sum_window(&n, q, b, c).unwrap();
            assert_eq!(left, digit_sum_window(&n, q, a, c).unwrap());
        }
    }

    #[test]
    fn unit_digit_examples() {
        assert_eq!(unit_digit(&big(0), 9), 0);
        assert_eq!(unit_digit(&big(9), 9), 0);
        assert_eq!(unit_digit(&big(17), 5), 2);
    }

    /// s_q(n) = s_q(⌊n/q⌋) + u_q(n), and the truncated analogue
    /// s^ρ(n) = s^{ρ−1}(⌊n/q⌋) + u_q(n) for ρ ≥ 1.
    #[test]
    fn digit_sum_recursions() {
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..500 {
            let n: u64 = rng.gen_range(0..1 << 45);
            let q: u32 = [2, 3, 5, 10][rng.gen_range(0..4)];
            let down = big(n / q as u64);
            assert_eq!(
                digit_sum(&big(n), q),
                digit_sum(&down, q) + unit_digit(&big(n), q) as u64
            );
            for rho in 1..5u32 {
                assert_eq!(
                    digit_sum_trunc(&big(n), q, rho),
                    digit_sum_trunc(&down, q, rho - 1) + unit_digit(&big(n), q) as u64
                );
            }
        }
    }

    /// Cutting identity: s^β(u₀+q^α u₁) − s^β(u₀) equals the same difference
    /// of window sums s^{α,β}, exhaustively for q ∈ {2,3,5}, α < β ≤ 4,
    /// u₀, u₁ < q^4.
    #[test]
    fn cutting_identity_exhaustive() {
        for q in [2u32, 3, 5] {
            let cap = (q as u64).pow(4);
            for alpha in 0..4u32 {
                for beta in (alpha + 1)..=4u32 {
                    for u0 in 0..cap {
                        for u1 in 0..cap {
                            let shifted = big(u0 + (q as u64).pow(alpha) * u1);
                            let base = big(u0);
                            let lhs = digit_sum_trunc(&shifted, q, beta) as i64
                                - digit_sum_trunc(&base, q, beta) as i64;
                            let rhs = if alpha == 0 {
                                lhs
                            } else {
                                digit_sum_window(&shifted, q, alpha, beta).unwrap() as i64
                                    - digit_sum_window(&base, q, alpha, beta).unwrap() as i64
                            };
                            assert_eq!(lhs, rhs, "q={q} alpha={alpha} beta={beta} u0={u0} u1={u1}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tq_phase_examples() {
        let p = DigitParams::new(2, 2, 1).unwrap();
        assert_eq!(tq_phase(&p, 0, &big(3)).t(), 0); // s_2(3)=2 even
        assert_eq!(tq_phase(&p, 1, &big(1)).t(), 1); // sign flip
        let p2 = DigitParams::new(4, 5, 3).unwrap();
        assert_eq!(tq_phase(&p2, 0, &big(0)).t(), 0);
        // w = 3 has even binary weight: no sign flip
        assert_eq!(tq_phase(&p2, 3, &big(5)).t(), (digit_sum(&big(5), 4) % 5) as u32);
    }

    #[test]
    fn params_validation() {
        assert!(DigitParams::new(2, 2, 1).is_ok());
        assert!(DigitParams::new(3, 3, 2).is_ok());
        // gcd(b, q-1) must be 1: q=3 has q-1=2, so b=2 is rejected
        assert!(DigitParams::new(3, 2, 1).is_err());
        assert!(DigitParams::new(4, 3, 1).is_err());
        assert!(DigitParams::new(2, 2, 0).is_err());
        assert!(DigitParams::new(2, 2, 2).is_err());
        assert!(DigitParams::new(1, 2, 1).is_err());
    }

    #[test]
    fn phase_residue_arithmetic() {
        let a = PhaseResidue::new(5, 3);
        assert_eq!(a.t(), 2);
        assert_eq!(a.neg().t(), 1);
        assert_eq!(a.add(&PhaseResidue::new(2, 3)).t(), 1);
        let v = PhaseResidue::new(1, 4).value(1);
        assert!((v - num::complex::Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    /// Prop.-2.3 style floor identities over 10^4 random rationals.
    #[test]
    fn floor_identities_random() {
        let mut rng = StdRng::seed_from_u64(23);
        let half = rational(1, 2);
        let mut tested1 = 0u32;
        let mut tested3 = 0u32;
        for _ in 0..10_000 {
            let a = rational(rng.gen_range(-400..400), rng.gen_range(1..40));
            let b = rational(rng.gen_range(-400..400), rng.gen_range(1..40));
            let n = rng.gen_range(1..20i64);
            let eps = rational(1, rng.gen_range(3..30));

            // (petit2) is unconditional: ‖na‖ ≤ n‖a‖.
            let na = BigRational::from_i64(n).unwrap() * &a;
            assert!(rat_norm(&na) <= BigRational::from_i64(n).unwrap() * rat_norm(&a));

            // (petit1): ‖a‖ < ε ≤ 1/2 and ‖b‖ ≥ ε imply
            // ⌊a+b⌋ = ⌊a+1/2⌋ + ⌊b⌋.
            if eps <= half && rat_norm(&a) < eps && rat_norm(&b) >= eps {
                tested1 += 1;
                let lhs = rat_floor(&(&a + &b));
                let rhs = rat_floor(&(&a + &half)) + rat_floor(&b);
                assert_eq!(lhs, rhs, "petit1 failed at a={a}, b={b}");
            }

            // (petit3): ‖a‖ < ε and 2nε < 1 imply ⟨na⟩ = n⟨a⟩.
            let two_n_eps = BigRational::from_i64(2 * n).unwrap() * &eps;
            if rat_norm(&a) < eps && two_n_eps < BigRational::one() {
                tested3 += 1;
                assert_eq!(
                    rat_nearest(&na),
                    BigInt::from(n) * rat_nearest(&a),
                    "petit3 failed at a={a}, n={n}"
                );
            }
        }
        // make sure the preconditions actually fired often enough to mean something
        assert!(tested1 > 500, "petit1 exercised only {tested1} times");
        assert!(tested3 > 200, "petit3 exercised only {tested3} times");
    }

    #[test]
    fn rational_helpers_basics() {
        assert_eq!(rat_floor(&rational(-7, 2)), BigInt::from(-4));
        assert_eq!(rat_nearest(&rational(-7, 2)), BigInt::from(-3));
        assert_eq!(rat_norm(&rational(7, 4)), rational(1, 4));
        assert_eq!(rat_frac(&rational(-1, 4)), rational(3, 4));
        assert_eq!(floor_div_i128(-7, 2), -4);
    }
}
