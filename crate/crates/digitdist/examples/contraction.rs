//! The contraction certificate: after j = K + b(k+1) steps the total weight
//! mass M drops strictly below 1, which forces exponential decay of the
//! Gowers averages at rate eta0.
//!
//! Run with: cargo run --example contraction

use digitdist::budget::Budget;
use digitdist::digitcore::DigitParams;
use digitdist::exponents::eta0;
use digitdist::gowers::{
    contraction, gowers_average_recursive, reachable_set, Variant,
};

fn main() {
    let budget = Budget::new(100_000_000);
    for (q, b) in [(2u32, 2u32), (2, 3), (3, 3), (4, 2)] {
        let params = DigitParams::new(q, b, 1).unwrap();
        let k = 3;
        let graph = reachable_set(&params, k, &budget).unwrap();
        let c = contraction(&graph, &budget).unwrap();
        let e = eta0(q, b, k).unwrap();
        println!(
            "q={q} b={b} k={k}: j={}, M = {:.6} <= 1 - q^-{} = {:.15}, log eta0 = {:.3}",
            c.j, c.m, e.exponent, c.bound, e.log_closed
        );
    }

    // the decay M certifies: |A(rho, 0)| against M^floor(rho/j)
    let params = DigitParams::new(2, 2, 1).unwrap();
    let graph = reachable_set(&params, 3, &budget).unwrap();
    let c = contraction(&graph, &budget).unwrap();
    println!("decay of |A(rho, 0)| for q=b=2, k=3 (j = {}):", c.j);
    for rho in [0u32, 5, 10, 20, 30, 40] {
        let a = gowers_average_recursive(&graph, rho, graph.node(0), Variant::Full).unwrap();
        println!(
            "  rho={rho:2}: |A| = {:.3e} <= M^{} = {:.3e}",
            a.modulus(),
            rho / c.j,
            c.m.powi((rho / c.j) as i32)
        );
    }
}
