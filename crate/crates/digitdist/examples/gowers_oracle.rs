//! The Gowers-type average A(rho, r0) computed twice: by the exact graph
//! recursion and by direct enumeration of all q^((k+1)rho) cube terms. The
//! two agree exactly, coefficient by coefficient in the group ring.
//!
//! Run with: cargo run --example gowers_oracle

use digitdist::budget::Budget;
use digitdist::digitcore::DigitParams;
use digitdist::gowers::{
    gowers_average_brute, gowers_average_recursive, reachable_set, Variant,
};

fn main() {
    let budget = Budget::default();
    for (q, b, ell) in [(2u32, 2u32, 1u32), (2, 3, 1), (3, 3, 1)] {
        let params = DigitParams::new(q, b, ell).unwrap();
        let k = 3;
        let graph = reachable_set(&params, k, &budget).unwrap();
        println!("q={q} b={b} ell={ell} k={k}: |N| = {}", graph.node_count());
        for rho in 1..=3u32 {
            for variant in [Variant::Full, Variant::Truncated] {
                let r0 = graph.node(0);
                let rec = gowers_average_recursive(&graph, rho, r0, variant).unwrap();
                let brute = gowers_average_brute(&params, k, rho, r0, variant, &budget).unwrap();
                let (rc, bc) = (rec.to_complex(), brute.to_complex());
                println!(
                    "  rho={rho} {variant:?}: recursion {:+.6}{:+.6}i  brute {:+.6}{:+.6}i  exact: {}",
                    rc.re,
                    rc.im,
                    bc.re,
                    bc.im,
                    rec == brute,
                );
            }
        }
    }
}
