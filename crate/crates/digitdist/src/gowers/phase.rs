//! Exact arithmetic in the group ring ℚ[ℤ_b].
//!
//! A [`PhaseVector`] stores rational coefficients `c_t` indexed by a residue
//! `t ∈ [0, b)` and stands for the complex number `Σ_t c_t · e(ℓ t / b)`.
//! Additions, scalings and multiplications by a residue are exact; floating
//! point enters only in [`PhaseVector::to_complex`]. Exact zero tests reduce
//! the coefficient polynomial modulo the relevant cyclotomic polynomial, so
//! cancellations like a full root-of-unity sum are recognized as identically
//! zero rather than "small".

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::digitcore::{DigitParams, PhaseResidue};
use crate::numeric;

/// Exact element of the group ring `ℚ[ℤ_b]` representing `Σ_t c_t · e(ℓ t / b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseVector {
    b: u32,
    ell: u32,
    coeffs: Vec<BigRational>,
}

impl PhaseVector {
    pub fn zero(params: &DigitParams) -> Self {
        PhaseVector {
            b: params.b(),
            ell: params.ell(),
            coeffs: vec![BigRational::zero(); params.b() as usize],
        }
    }

    /// The basis element `e(ℓ t / b)`.
    pub fn basis(params: &DigitParams, t: &PhaseResidue) -> Self {
        assert_eq!(t.modulus(), params.b());
        let mut v = PhaseVector::zero(params);
        v.coeffs[t.t() as usize] = BigRational::one();
        v
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, t: u32) -> &BigRational {
        &self.coeffs[(t % self.b) as usize]
    }

    pub fn add_assign(&mut self, other: &PhaseVector) {
        assert_eq!(self.b, other.b);
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += b;
        }
    }

    /// `self += other · e(ℓ shift / b) · scale` in one pass; this is the
    /// inner step of the graph recursion.
    pub fn add_shifted_scaled(&mut self, other: &PhaseVector, shift: u32, scale: &BigRational) {
        assert_eq!(self.b, other.b);
        let b = self.b as usize;
        let s = (shift % self.b) as usize;
        for t in 0..b {
            if other.coeffs[t].is_zero() {
                continue;
            }
            let dst = (t + s) % b;
            self.coeffs[dst] += &other.coeffs[t] * scale;
        }
    }

    pub fn scale_assign(&mut self, scale: &BigRational) {
        for c in &mut self.coeffs {
            *c *= scale;
        }
    }

    /// Multiply by the basis element of `t`, i.e. rotate indices by `t`.
    pub fn rotated(&self, t: u32) -> PhaseVector {
        let b = self.b as usize;
        let s = (t % self.b) as usize;
        let mut coeffs = vec![BigRational::zero(); b];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + s) % b] = c.clone();
        }
        PhaseVector {
            b: self.b,
            ell: self.ell,
            coeffs,
        }
    }

    /// Floating-point image `Σ_t c_t e(ℓ t / b)`.
    pub fn to_complex(&self) -> num::complex::Complex64 {
        let mut acc = num::complex::Complex64::new(0.0, 0.0);
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = rational_to_f64(c);
            acc += numeric::e((self.ell as u64 * t as u64) as f64 / self.b as f64) * x;
        }
        acc
    }

    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Exact test of `Σ_t c_t e(ℓ t / b) = 0` in ℂ.
    ///
    /// With `g = gcd(ℓ, b)` the value lies in ℚ(ζ) for the primitive
    /// `b/g`-th root ζ; fold the coefficients accordingly and reduce the
    /// resulting polynomial mod the cyclotomic polynomial Φ_{b/g}.
    pub fn is_zero_value(&self) -> bool {
        let g = gcd_u32(self.ell, self.b);
        let bp = (self.b / g) as usize;
        let lp = (self.ell / g) as u64;
        let mut folded = vec![BigRational::zero(); bp];
        for (t, c) in self.coeffs.iter().enumerate() {
            let s = ((lp * t as u64) % bp as u64) as usize;
            folded[s] += c;
        }
        let phi = cyclotomic(bp as u32);
        let rem = poly_rem(&folded, &phi);
        rem.iter().all(|c| c.is_zero())
    }

    /// True when every stored coefficient is zero (stronger than
    /// [`Self::is_zero_value`]).
    pub fn is_zero_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum of |c_t|, an upper bound for the modulus.
    pub fn l1_norm(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for c in &self.coeffs {
            acc += c.abs();
        }
        acc
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    num::Integer::gcd(&a, &b)
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of rounded parts for pathological sizes
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Coefficients of the n-th cyclotomic polynomial Φ_n, lowest degree first.
///
/// Computed by dividing `x^n − 1` by the product of Φ_d over proper divisors
/// d of n; all intermediate divisions are exact over ℤ.
pub fn cyclotomic(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::from(1);
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic(d));
        }
    }
    num
}

/// Exact division of integer polynomials (remainder must vanish).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd].clone();
        quot[i] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

/// Remainder of a rational polynomial modulo a monic integer polynomial.
fn poly_rem(poly: &[BigRational], modulus: &[BigInt]) -> Vec<BigRational> {
    let dd = modulus.len() - 1;
    let mut rem: Vec<BigRational> = poly.to_vec();
    while rem.len() > dd {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        if !c.is_zero() {
            for (j, mc) in modulus.iter().enumerate() {
                let idx = top - dd + j;
                let sub = &c * BigRational::from(mc.clone());
                rem[idx] -= sub;
            }
        }
        rem.pop();
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u32, b: u32, ell: u32) -> DigitParams {
        DigitParams::new(q, b, ell).unwrap()
    }

    #[test]
    fn cyclotomic_small_cases() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn full_root_sum_is_exactly_zero() {
        for (q, b, ell) in [(2, 3, 1), (2, 3, 2), (3, 5, 2), (2, 6, 1), (7, 5, 4)] {
            let p = params(q, b, ell);
            let mut v = PhaseVector::zero(&p);
            for t in 0..b {
                v.add_assign(&PhaseVector::basis(&p, &p.phase(t as i64)));
            }
            // Σ_t e(ℓ t / b) = 0 iff b does not divide ℓ, which holds since 0 < ℓ < b.
            assert!(v.is_zero_value(), "q={q} b={b} ell={ell}");
            assert!(!v.is_zero_coeffs());
            assert!(v.modulus() < 1e-12);
        }
    }

    #[test]
    fn nonzero_vectors_are_detected() {
        let p = params(2, 4, 2);
        // with gcd(ell, b) = 2 the value lives among 2nd roots: e(0), e(1/2)
        let mut v = PhaseVector::basis(&p, &p.phase(0));
        assert!(!v.is_zero_value());
        // t = 2 maps to e(2·2/4) = e(1) = 1, so basis(0) - ... pick t giving -1:
        // e(2·1/4) = e(1/2) = -1: basis(0) + basis(1) = 0
        v.add_assign(&PhaseVector::basis(&p, &p.phase(1)));
        assert!(v.is_zero_value());
    }

    #[test]
    fn rotation_matches_complex_multiplication() {
        let p = params(3, 5, 2);
        let mut v = PhaseVector::basis(&p, &p.phase(1));
        v.add_assign(&PhaseVector::basis(&p, &p.phase(3)));
        let rot = v.rotated(4);
        let expect = v.to_complex() * numeric::e(2.0 * 4.0 / 5.0);
        assert!((rot.to_complex() - expect).norm() < 1e-12);
    }

    #[test]
    fn add_shifted_scaled_is_rotate_scale_add() {
        let p = params(2, 5, 1);
        let v = PhaseVector::basis(&p, &p.phase(2));
        let mut acc = PhaseVector::basis(&p, &p.phase(0));
        let scale = BigRational::new(BigInt::from(3), BigInt::from(7));
        acc.add_shifted_scaled(&v, 4, &scale);
        let mut expect = v.rotated(4);
        expect.scale_assign(&scale);
        expect.add_assign(&PhaseVector::basis(&p, &p.phase(0)));
        assert_eq!(acc, expect);
    }
}
