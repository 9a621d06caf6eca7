//! Every explicit exponent in the subject: the Gelfond exponent λ, the
//! cosine-sum level θ_q, the type-II exponents Θ_q, η_q, γ_q and ξ
//! variants, the admissible level-of-distribution exponents η(ε), η(δ₁,δ₂)
//! and η(ρ₁,ρ₂), and the Gowers-decay pair η₀, η₁.
//!
//! The η exponents shrink like `exp(-c/ε²)` and underflow every float
//! format long before the interesting range, so all of them are carried in
//! natural-log space and never linearized. The 1-D maximizations behind γ_q
//! and β(α) are derivative-free (dense grid plus golden-section), since the
//! objectives carry absolute values and filled-in removable singularities.

mod figure3;
mod params;

pub use figure3::{eta_curve, figure3_report, Figure3Report, Figure3Row, REPORTED_FIGURE3};
pub use params::{appendix_param_select, lemma_a1_ratios, A1Ratios, ParamBundle, SelectInput};

use num::rational::BigRational;
use num::{Integer, ToPrimitive};
use std::f64::consts::PI;

use crate::gowers::{eta0_bound, Eta0};
use crate::numeric::{dirichlet_ratio_abs, grid_golden_max, MaxResult};
use crate::{Error, Result};

/// A named exponent value carried in natural-log space, with the inputs that
/// produced it.
#[derive(Debug, Clone)]
pub struct ExponentReport {
    pub name: String,
    pub log_value: f64,
    pub inputs: Vec<(String, String)>,
    /// Identifier of the formula used (stable across runs, for artifacts).
    pub formula_ref: String,
}

impl ExponentReport {
    pub fn new(name: &str, log_value: f64, inputs: &[(&str, String)], formula_ref: &str) -> Self {
        ExponentReport {
            name: name.to_string(),
            log_value,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            formula_ref: formula_ref.to_string(),
        }
    }
}

/// The standard catalog of named exponents at one parameter point, each
/// with its inputs recorded. Everything is in natural-log space so the
/// catalog can hold `log η(0.001) ≈ −3.5·10⁷` next to `log λ ≈ −0.06`.
pub fn report_catalog(q: u32, b: u32, epsilon: f64, k: u32) -> Result<Vec<ExponentReport>> {
    let qb = [("q", q.to_string()), ("b", b.to_string())];
    let with_eps = [
        ("q", q.to_string()),
        ("b", b.to_string()),
        ("epsilon", format!("{epsilon}")),
    ];
    let with_k = [
        ("q", q.to_string()),
        ("b", b.to_string()),
        ("k", k.to_string()),
    ];
    let mut out = vec![
        ExponentReport::new("lambda", gelfond_lambda(q, b)?.ln(), &qb, "gelfond-progression-error"),
        ExponentReport::new("theta_q", theta_q(q)?.theta.ln(), &qb, "secant-mean-level"),
        ExponentReport::new(
            "eta_epsilon",
            eta_epsilon(epsilon, q, b)?.log_eta,
            &with_eps,
            "level-sum-admissible",
        ),
        ExponentReport::new("eta0", eta0_bound(q, b, k)?.log_closed, &with_k, "gowers-decay-rate"),
    ];
    if q == 2 && epsilon < 0.5 {
        out.push(ExponentReport::new(
            "xi_prime_2",
            xi_prime_2(epsilon)?.log_value,
            &with_eps,
            "bilinear-average-exponent",
        ));
    }
    Ok(out)
}

/// Smallest prime divisor of `n ≥ 2`.
pub fn p_minus(n: u32) -> u32 {
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

/// The recurring factor `min(1/4, 3·log_q(P⁻(q)))`.
pub fn min_quarter_term(q: u32) -> f64 {
    let t = 3.0 * (p_minus(q) as f64).ln() / (q as f64).ln();
    t.min(0.25)
}

fn require_params(q: u32, b: u32) -> Result<()> {
    if q < 2 || b < 2 {
        return Err(Error::precondition("need q, b >= 2"));
    }
    if (q as u64 - 1).gcd(&(b as u64)) != 1 {
        return Err(Error::precondition(format!("need gcd(b, q-1) = 1, got q={q}, b={b}")));
    }
    Ok(())
}

/// The Gelfond exponent
/// `λ = log(q·sin(π/2b)/sin(π/2bq)) / (2 log q)`, always in `(0, 1)`.
pub fn gelfond_lambda(q: u32, b: u32) -> Result<f64> {
    require_params(q, b)?;
    let qf = q as f64;
    let bf = b as f64;
    let lambda = (qf * (PI / (2.0 * bf)).sin() / (PI / (2.0 * bf * qf)).sin()).ln() / (2.0 * qf.ln());
    if !(0.0 < lambda && lambda < 1.0) {
        return Err(Error::invariant(format!("lambda = {lambda} escaped (0,1)")));
    }
    Ok(lambda)
}

/// The level exponent `θ_q = 1 − log M(q)/log q` with the parity-split
/// secant mean `M(q)`.
#[derive(Debug, Clone, Copy)]
pub struct ThetaQ {
    pub m_q: f64,
    pub theta: f64,
}

pub fn theta_q(q: u32) -> Result<ThetaQ> {
    if q < 2 {
        return Err(Error::precondition("need q >= 2"));
    }
    let m_q = if q % 2 == 0 {
        let n = (q / 2) as u64;
        let terms: Vec<f64> = (0..n)
            .map(|k| 1.0 / (((2 * k + 1) as f64) * PI / (4.0 * n as f64)).cos())
            .collect();
        crate::numeric::pairwise_sum(&terms) / n as f64
    } else {
        let n = ((q - 1) / 2) as u64;
        let terms: Vec<f64> = (1..=n)
            .map(|k| 1.0 / ((k as f64) * PI / (2.0 * n as f64 + 1.0)).cos())
            .collect();
        (1.0 + 2.0 * crate::numeric::pairwise_sum(&terms)) / (2.0 * n as f64 + 1.0)
    };
    Ok(ThetaQ {
        m_q,
        theta: 1.0 - m_q.ln() / (q as f64).ln(),
    })
}

/// `β(α) = sqrt(max_t |cos(π(t+α)) cos(π(2t+α))|)` and
/// `γ(α) = 1 + log₂ β(α)`, for a rational non-integer `α`.
#[derive(Debug, Clone, Copy)]
pub struct FmGamma {
    pub beta: f64,
    pub gamma: f64,
    pub argmax: f64,
}

pub fn fm_gamma(alpha: &BigRational) -> Result<FmGamma> {
    if alpha.is_integer() {
        return Err(Error::precondition("alpha must not be an integer"));
    }
    let a = alpha.to_f64().ok_or_else(|| Error::precondition("alpha out of f64 range"))?;
    let objective = |t: f64| ((PI * (t + a)).cos() * (PI * (2.0 * t + a)).cos()).abs();
    let MaxResult { argmax, max, .. } = grid_golden_max(objective, 0.0, 1.0, 1_000_000, 1e-12);
    let beta = max.sqrt();
    Ok(FmGamma {
        beta,
        gamma: 1.0 + beta.log2(),
        argmax,
    })
}

/// The type-II exponents of the bilinear estimate.
///
/// `gamma_q` is the literal solution of
/// `q^{γ_q} = 2 max_t sqrt|U_q(α−qt)·U_q(α−t)|` with `U_q` the Dirichlet
/// kernel ratio; at `q = 2`, `α = 1/2` that reading makes `2(1−γ_q)`
/// negative. `gamma_q_shifted = gamma_q − 1` matches the `γ(α)` of the
/// secant-mean normalization (they agree exactly for `q = 2`); both are
/// exposed and `xi` / `xi_literal` carry the two resulting ξ values.
#[derive(Debug, Clone, Copy)]
pub struct MmrExponents {
    pub epsilon: f64,
    pub theta_big: f64,
    pub eta_q: f64,
    pub gamma_q: f64,
    pub gamma_q_shifted: f64,
    pub argmax_t: f64,
    /// `min(ε/6, 1/20)·min(1/2 − η_q, 2(1 − γ))` with the shifted γ.
    pub xi: f64,
    /// Same with the literal `gamma_q`.
    pub xi_literal: f64,
}

pub fn mmr_exponents(q: u32, epsilon: f64, alpha: &BigRational) -> Result<MmrExponents> {
    if q < 2 {
        return Err(Error::precondition("need q >= 2"));
    }
    if !(0.0 < epsilon && epsilon <= 0.5) {
        return Err(Error::precondition("need 0 < epsilon <= 1/2"));
    }
    let qf = q as f64;
    let theta_big = (1.0 - 1.0 / qf) * (1.0 - (1.0 - (2.0 * qf - 1.0) / (3.0 * qf * (qf - 1.0))).sqrt());
    let eta_q = {
        let first = 0.5 - (4.0 - 2.0 * 2f64.sqrt()).ln() / (2.0 * 2f64.ln());
        let second = 0.5 + (1.0 - theta_big).ln() / (4.0 * 2f64.ln());
        first.max(second)
    };
    let a = alpha.to_f64().ok_or_else(|| Error::precondition("alpha out of f64 range"))?;
    let objective = move |t: f64| {
        (dirichlet_ratio_abs(a - qf * t, q) * dirichlet_ratio_abs(a - t, q)).sqrt()
    };
    let MaxResult { argmax, max, width } = grid_golden_max(objective, 0.0, 1.0, 1_000_000, 1e-12);
    if !(max.is_finite() && width <= 1e-9) {
        return Err(Error::invariant("gamma_q maximization did not converge"));
    }
    let gamma_q = (2.0 * max).ln() / qf.ln();
    let gamma_q_shifted = gamma_q - 1.0;
    let front = (epsilon / 6.0).min(0.05);
    let xi = front * (0.5 - eta_q).min(2.0 * (1.0 - gamma_q_shifted));
    let xi_literal = front * (0.5 - eta_q).min(2.0 * (1.0 - gamma_q));
    Ok(MmrExponents {
        epsilon,
        theta_big,
        eta_q,
        gamma_q,
        gamma_q_shifted,
        argmax_t: argmax,
        xi,
        xi_literal,
    })
}

/// `ξ′_{2,ε} = ξ_{2,ε} / (1 + ε)` at `α = 1/2`, with its natural log.
#[derive(Debug, Clone, Copy)]
pub struct XiPrime2 {
    pub value: f64,
    pub log_value: f64,
    /// The value under the literal `γ_q` reading (negative, so no log).
    pub literal_value: f64,
}

pub fn xi_prime_2(epsilon: f64) -> Result<XiPrime2> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::precondition("need 0 < epsilon < 1/2"));
    }
    let half = BigRational::new(1.into(), 2.into());
    let m = mmr_exponents(2, epsilon, &half)?;
    let value = m.xi / (1.0 + epsilon);
    Ok(XiPrime2 {
        value,
        log_value: value.ln(),
        literal_value: m.xi_literal / (1.0 + epsilon),
    })
}

/// `log η(ρ₁, ρ₂)`, the admissible exponent of the modulus-range estimate.
pub fn eta_rho(rho1: f64, rho2: f64, q: u32, b: u32) -> Result<f64> {
    require_params(q, b)?;
    if !(rho1 > 0.0 && rho2 >= rho1) {
        return Err(Error::precondition("need rho2 >= rho1 > 0"));
    }
    let qf = q as f64;
    let bf = b as f64;
    let inner = ((3.0 * rho2 + 4.0) * qf).ln() + bf * qf.ln() * (3.0 * rho2 + 5.0);
    Ok(rho1.ln() + min_quarter_term(q).ln()
        - (1.0 + rho2) * 8f64.ln()
        - (288.0 * rho2 + 300.0).ln()
        - (3.0 * rho2 + 2.0).ln()
        - inner.ln()
        - (3.0 * rho2 + 5.0) * inner)
}

/// `log η(δ₁, δ₂)`, the admissible exponent of the dyadic-range estimate.
pub fn eta_delta(delta1: f64, delta2: f64, q: u32, b: u32) -> Result<f64> {
    require_params(q, b)?;
    if !(0.0 < delta1 && delta1 <= delta2 && delta2 < 1.0) {
        return Err(Error::precondition("need 0 < delta1 <= delta2 < 1"));
    }
    let qf = q as f64;
    let bf = b as f64;
    let inv = 1.0 / (1.0 - delta2);
    let inner = (4.0 * qf * inv).ln() + 5.0 * bf * qf.ln() * inv;
    Ok(delta1.ln() + 2.0 * (1.0 - delta2).ln() + min_quarter_term(q).ln()
        - 1800f64.ln()
        - inv * 8f64.ln()
        - inner.ln()
        - 5.0 * inv * inner)
}

/// `log η(ε)` for the full level-of-distribution sum, with its validity
/// marker `ε < 2(1−λ)/3`.
#[derive(Debug, Clone, Copy)]
pub struct EtaEpsilon {
    pub log_eta: f64,
    /// Whether `ε` lies inside the stated validity range; evaluation is
    /// permitted outside, flagged here.
    pub within_validity: bool,
}

pub fn eta_epsilon(epsilon: f64, q: u32, b: u32) -> Result<EtaEpsilon> {
    require_params(q, b)?;
    if !(0.0 < epsilon && epsilon < 1.0) {
        return Err(Error::precondition("need 0 < epsilon < 1"));
    }
    let qf = q as f64;
    let bf = b as f64;
    let inner = (4.0 * qf / epsilon).ln() + 5.0 * bf * qf.ln() / epsilon;
    let log_eta = 3.0 * epsilon.ln() + min_quarter_term(q).ln()
        - 7200f64.ln()
        - 8f64.ln() / epsilon
        - inner.ln()
        - 5.0 / epsilon * inner;
    let lambda = gelfond_lambda(q, b)?;
    Ok(EtaEpsilon {
        log_eta,
        within_validity: epsilon < 2.0 / 3.0 * (1.0 - lambda),
    })
}

/// Re-export of the Gowers-decay exponent `η₀` (see [`eta0_bound`]).
pub fn eta0(q: u32, b: u32, k: u32) -> Result<Eta0> {
    eta0_bound(q, b, k)
}

/// The assembled exponent `η₁ = ρ₁ η₀ min(1/4, 3 log_q P⁻(q)) /
/// (2^k (k−1)(96k+12))` with `k = 3(⌊ρ₂⌋+1)` and `η₀` taken at `k+1`.
#[derive(Debug, Clone, Copy)]
pub struct Eta1 {
    pub k: u32,
    /// `log η₀(q, b, k+1)`.
    pub log_eta0: f64,
    pub log_value: f64,
}

pub fn eta1(q: u32, b: u32, rho1: f64, rho2: f64) -> Result<Eta1> {
    require_params(q, b)?;
    if !(rho1 > 0.0 && rho2 >= rho1) {
        return Err(Error::precondition("need rho2 >= rho1 > 0"));
    }
    let k = 3 * (rho2.floor() as u32 + 1);
    let e0 = eta0_bound(q, b, k + 1)?;
    let kf = k as f64;
    let log_value = rho1.ln() + e0.log_closed + min_quarter_term(q).ln()
        - kf * 2f64.ln()
        - (kf - 1.0).ln()
        - (96.0 * kf + 12.0).ln();
    Ok(Eta1 {
        k,
        log_eta0: e0.log_closed,
        log_value,
    })
}
