//! The transition graph behind the Gowers recursion: reachable vertices,
//! synchronization under the zero letter, strong connectivity, the long loop
//! with its nontrivial root-of-unity weight, and the switching cancellation.
//!
//! Run with: cargo run --example transition_graph

use digitdist::budget::Budget;
use digitdist::digitcore::DigitParams;
use digitdist::gowers::{
    konieczny_path, reachable_box_bound, reachable_set, sample_admissible_word,
    switching_cancellation, synchronize_check,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let budget = Budget::default();
    let params = DigitParams::new(2, 3, 1).unwrap();
    let k = 3;

    let graph = reachable_set(&params, k, &budget).unwrap();
    println!(
        "reachable set: {} vertices (box bound {})",
        graph.node_count(),
        reachable_box_bound(k)
    );
    println!("strongly connected: {}", graph.is_strongly_connected());
    println!("synchronizes in K = {} zero-letter steps", synchronize_check(&graph).unwrap());

    let path = konieczny_path(&params, k).unwrap();
    println!("long loop letters: {:?}", path.letters);
    println!(
        "step weight residues: {:?}, total residue: {} (a nontrivial b-th root)",
        path.step_phases.iter().map(|p| p.t()).collect::<Vec<_>>(),
        path.total_phase.t()
    );

    // replacing little loops by long loops inside a zero block cancels the
    // b path weights exactly
    let mut rng = StdRng::seed_from_u64(5);
    let (word, m) = sample_admissible_word(&params, k, 4, &mut rng);
    let sum = switching_cancellation(&params, k, graph.node(7), &word, m).unwrap();
    println!(
        "switching a sampled word of length {} (block at {m}): exact zero = {}",
        word.len(),
        sum.is_zero_value()
    );

    // first lines of the deterministic edge-list export
    let edges = graph.edge_list();
    println!("edge list head:");
    for line in edges.lines().take(6) {
        println!("  {line}");
    }
}
