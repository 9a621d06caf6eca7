//! Every named exponent at reference inputs. The tiny ones only exist in
//! natural-log space.
//!
//! Run with: cargo run --example exponent_table

use digitdist::exponents::{
    eta0, eta1, eta_delta, eta_epsilon, eta_rho, fm_gamma, gelfond_lambda, mmr_exponents,
    report_catalog, theta_q, xi_prime_2,
};
use num::rational::BigRational;

fn main() {
    println!("lambda(2,2)  = {:.10}   (progression count error exponent)", gelfond_lambda(2, 2).unwrap());
    println!("lambda(2,3)  = {:.10}", gelfond_lambda(2, 3).unwrap());

    let t = theta_q(2).unwrap();
    println!("theta_2      = {:.10}   with M(2) = sqrt(2) = {:.10}", t.theta, t.m_q);
    let t = theta_q(3).unwrap();
    println!("theta_3      = {:.10}   with M(3) = {:.10}", t.theta, t.m_q);

    let half = BigRational::new(1.into(), 2.into());
    let m = mmr_exponents(2, 0.3, &half).unwrap();
    println!("Theta_2      = {:.10}", m.theta_big);
    println!("eta_2        = {:.10}", m.eta_q);
    println!(
        "gamma_2      = {:.10} literal / {:.10} shifted (both normalizations reported)",
        m.gamma_q, m.gamma_q_shifted
    );
    let g = fm_gamma(&half).unwrap();
    println!("beta(1/2)    = {:.10}, gamma(1/2) = {:.10}", g.beta, g.gamma);

    let xp = xi_prime_2(0.3).unwrap();
    println!("xi'_2(0.3)   = {:.6e}  log = {:.4}", xp.value, xp.log_value);

    let e0 = eta0(2, 2, 3).unwrap();
    println!(
        "eta0(2,2,3)  = {:.4e}  (K = {}, denominator exponent {})",
        e0.log_closed.exp(),
        e0.sync,
        e0.exponent
    );
    let e1 = eta1(2, 2, 1.0, 1.0).unwrap();
    println!("eta1(rho 1,1): log = {:.4}  (k = {})", e1.log_value, e1.k);

    println!("log eta(rho1=1, rho2=1)      = {:.4}", eta_rho(1.0, 1.0, 2, 2).unwrap());
    println!("log eta(delta 0.3, 0.6)      = {:.4}", eta_delta(0.3, 0.6, 2, 2).unwrap());
    for eps in [0.3, 0.1, 0.01] {
        let e = eta_epsilon(eps, 2, 2).unwrap();
        println!(
            "log eta(eps = {eps:>4})          = {:+.2}  (within validity range: {})",
            e.log_eta, e.within_validity
        );
    }

    println!();
    println!("catalog form (name, log value, formula tag):");
    for r in report_catalog(2, 2, 0.3, 3).unwrap() {
        println!("  {:12} {:>14.4}  [{}]", r.name, r.log_value, r.formula_ref);
    }
}
