//! Farey neighbours, mediant rounding, the iterated shift parameters and the
//! divisibility bad set.
//!
//! Run with: cargo run --example farey_machinery

use digitdist::budget::Budget;
use digitdist::farey::{bad_set_count, farey_neighbors, farey_round, shift_params};
use num::bigint::BigInt;
use num::rational::BigRational;

fn main() {
    let alpha = BigRational::new(3.into(), 10.into());
    let order = BigInt::from(5);
    let (l, r) = farey_neighbors(&alpha, &order).unwrap();
    println!(
        "3/10 sits between {}/{} and {}/{} in F_5",
        l.numer(), l.denom(), r.numer(), r.denom()
    );
    let rounded = farey_round(&alpha, &order).unwrap();
    println!("mediant rounding picks {}/{}", rounded.numer(), rounded.denom());

    // the same machinery at a large order: the descent is logarithmic
    let big_alpha = BigRational::new(355.into(), 113.into());
    let big_order = BigInt::from(1_000_000_000u64);
    let f = farey_round(&big_alpha, &big_order).unwrap();
    println!("355/113 at order 10^9 rounds to {}/{}", f.numer(), f.denom());

    // shift parameters for one modulus value
    let sp = shift_params(391, 2, 4, 2, 3).unwrap();
    for t in &sp.terms {
        println!("i={}: K_{} = {}, M_{} = {}, frak_M_{} = {}", t.i, t.i, t.k, t.i, t.m, t.i, t.frak_m);
    }
    println!("M_1/K_1 reduces back to m/q^(2mu) = 391/256: {}",
        BigRational::new(sp.terms[0].m.clone(), sp.terms[0].k.clone()));

    // the bad set: moduli whose frak_M picks up a large prime-power divisor
    let c = bad_set_count(2, 9, 2, 1, 1, 3, &Budget::default()).unwrap();
    println!(
        "bad set at (q=2, nu=9, mu=2, sigma=1, gamma=1, k=3): {} of {} moduli, normalized {:.4}",
        c.count, c.total, c.ratio
    );
}
