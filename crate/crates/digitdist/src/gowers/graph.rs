//! The transition graph on shift-residue vectors.
//!
//! Vertices are vectors `r ∈ ℤ^{2^k}` indexed by binary words `w`; the map
//! `δ(r; e)_w = ⌊(r_w + (1,w)·e)/q⌋` over all digit vectors
//! `e ∈ {0,…,q−1}^{k+1}` generates the reachable set `𝔑` from the zero
//! vector. Each consolidated edge carries the exact weight
//! `e(ℓ(q·S̃(r₁) − S̃(r₀))/b) · count/q^{k+1}` stored as a residue plus an
//! integer count; the `j`-step contraction constant `M` is computed from
//! exact scaled-integer group-ring entries and certified against
//! `1 − q^{−(k+1)(K+b(k+1))}`.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::digitcore::DigitParams;
use crate::{Error, Result};

/// A vertex: `2^k` nonnegative shift residues indexed by the word `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    k: u32,
    r: Vec<u32>,
}

impl Node {
    pub fn zero(k: u32) -> Self {
        Node {
            k,
            r: vec![0; 1usize << k],
        }
    }

    pub fn from_coords(k: u32, r: Vec<u32>) -> Result<Self> {
        if r.len() != 1usize << k {
            return Err(Error::precondition(format!(
                "node for k={k} needs {} coordinates, got {}",
                1usize << k,
                r.len()
            )));
        }
        Ok(Node { k, r })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coords(&self) -> &[u32] {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|&x| x == 0)
    }

    /// Whether `0 ≤ r_w ≤ s₂(w)` holds for every coordinate.
    pub fn in_reachable_box(&self) -> bool {
        self.r
            .iter()
            .enumerate()
            .all(|(w, &x)| x <= (w as u32).count_ones())
    }
}

/// The carry map `δ(r; e)_w = ⌊(r_w + (1,w)·e)/q⌋` with
/// `(1,w)·e = e₀ + Σ_i w_{i−1} e_i`.
pub fn delta(node: &Node, e: &[u32], q: u32) -> Node {
    debug_assert_eq!(e.len(), node.k as usize + 1);
    debug_assert!(e.iter().all(|&d| d < q));
    let mut out = Vec::with_capacity(node.r.len());
    for (w, &rw) in node.r.iter().enumerate() {
        let mut dot = e[0];
        for i in 0..node.k {
            if (w >> i) & 1 == 1 {
                dot += e[i as usize + 1];
            }
        }
        out.push((rw + dot) / q);
    }
    Node { k: node.k, r: out }
}

/// `S̃(r) = −Σ_w (−1)^{s₂(w)} r_w`.
pub fn s_tilde(node: &Node) -> i64 {
    let mut acc = 0i64;
    for (w, &rw) in node.r.iter().enumerate() {
        if (w as u32).count_ones() % 2 == 0 {
            acc -= rw as i64;
        } else {
            acc += rw as i64;
        }
    }
    acc
}

/// Steps of the zero-letter map needed to collapse any vertex to `0`:
/// the least `K` with `q^K > k`, i.e. `⌊log_q k⌋ + 1`.
pub fn sync_steps(q: u32, k: u32) -> u32 {
    let mut pow = 1u64;
    let mut steps = 0u32;
    while pow <= k as u64 {
        pow *= q as u64;
        steps += 1;
    }
    steps.max(1)
}

/// `∏_{i=0}^{k} (i+1)^{binom(k,i)}`, the cardinality bound for `𝔑`.
pub fn reachable_box_bound(k: u32) -> u128 {
    let mut binom = vec![0u128; k as usize + 1];
    binom[0] = 1;
    for i in 1..=k as usize {
        for j in (1..=i).rev() {
            binom[j] += binom[j - 1];
        }
    }
    let mut acc: u128 = 1;
    for (i, &c) in binom.iter().enumerate() {
        for _ in 0..c {
            acc = acc.saturating_mul(i as u128 + 1);
        }
    }
    acc
}

/// A consolidated edge `r₀ → r₁`: the phase residue
/// `t = (q·S̃(r₁) − S̃(r₀)) mod b` (the weight's value is `e(ℓt/b)·count/q^{k+1}`)
/// and the number of digit vectors `e` realizing the transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub target: usize,
    pub phase_t: u32,
    pub count: u32,
}

/// Reachable set plus consolidated weighted edges, node 0 being the zero
/// vector and the order fixed by the BFS (deterministic for fixed inputs).
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    params: DigitParams,
    k: u32,
    nodes: Vec<Node>,
    edges: Vec<Vec<Edge>>,
}

impl TransitionGraph {
    pub fn params(&self) -> &DigitParams {
        &self.params
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn edges_from(&self, i: usize) -> &[Edge] {
        &self.edges[i]
    }

    pub fn node_index(&self, node: &Node) -> Option<usize> {
        self.nodes.iter().position(|n| n == node)
    }

    /// Deterministic text export: one line per edge
    /// `r0_index r1_index phase_t count`, sorted lexicographically on the
    /// numeric tuple.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (i, edges) in self.edges.iter().enumerate() {
            for e in edges {
                out.push_str(&format!("{} {} {} {}\n", i, e.target, e.phase_t, e.count));
            }
        }
        out
    }

    /// BFS from every vertex over positive-count edges; true when every
    /// vertex reaches every other.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.nodes.len();
        for start in 0..n {
            let mut seen = vec![false; n];
            let mut queue = std::collections::VecDeque::from([start]);
            seen[start] = true;
            let mut reached = 1usize;
            while let Some(i) = queue.pop_front() {
                for e in &self.edges[i] {
                    if !seen[e.target] {
                        seen[e.target] = true;
                        reached += 1;
                        queue.push_back(e.target);
                    }
                }
            }
            if reached != n {
                return false;
            }
        }
        true
    }
}

/// BFS closure of the zero vertex under all `q^{k+1}` digit vectors.
///
/// Asserts the per-coordinate box bound, the cardinality bound, and exact
/// modulus-stochasticity (edge counts out of every vertex sum to `q^{k+1}`).
pub fn reachable_set(params: &DigitParams, k: u32, budget: &Budget) -> Result<TransitionGraph> {
    if k < 2 {
        return Err(Error::precondition(format!("graph needs k >= 2, got {k}")));
    }
    let q = params.q();
    let letters = budget.checked_pow(q as u64, k + 1)?;
    let letters = u64::try_from(letters).expect("letter count fits u64");

    let mut nodes: Vec<Node> = vec![Node::zero(k)];
    let mut index: HashMap<Node, usize> = HashMap::new();
    index.insert(nodes[0].clone(), 0);
    let mut edges: Vec<Vec<Edge>> = Vec::new();

    let mut head = 0usize;
    while head < nodes.len() {
        // per-step traversal cost so far: |𝔑|·q^{k+1}
        budget.check(nodes.len() as u128 * letters as u128)?;
        let current = nodes[head].clone();
        let s0 = s_tilde(&current);
        let mut out: HashMap<usize, (u32, u32)> = HashMap::new();
        let mut e = vec![0u32; k as usize + 1];
        for letter in 0..letters {
            decode_letter(letter, q, &mut e);
            let next = delta(&current, &e, q);
            if !next.in_reachable_box() {
                return Err(Error::invariant(format!(
                    "delta left the reachable box at node {head}"
                )));
            }
            let next_idx = match index.get(&next) {
                Some(&i) => i,
                None => {
                    let i = nodes.len();
                    index.insert(next.clone(), i);
                    nodes.push(next);
                    i
                }
            };
            let t = (params.q() as i64 * s_tilde(&nodes[next_idx]) - s0).rem_euclid(params.b() as i64) as u32;
            let entry = out.entry(next_idx).or_insert((t, 0));
            debug_assert_eq!(entry.0, t, "phase must be a function of the endpoints");
            entry.1 += 1;
        }
        let mut consolidated: Vec<Edge> = out
            .into_iter()
            .map(|(target, (phase_t, count))| Edge {
                target,
                phase_t,
                count,
            })
            .collect();
        consolidated.sort_by_key(|e| (e.target, e.phase_t));
        let total: u64 = consolidated.iter().map(|e| e.count as u64).sum();
        if total != letters {
            return Err(Error::invariant(format!(
                "edge counts out of node {head} sum to {total}, expected {letters}"
            )));
        }
        edges.push(consolidated);
        head += 1;
    }

    if nodes.len() as u128 > reachable_box_bound(k) {
        return Err(Error::invariant(format!(
            "reachable set size {} exceeds the box bound {}",
            nodes.len(),
            reachable_box_bound(k)
        )));
    }

    Ok(TransitionGraph {
        params: *params,
        k,
        nodes,
        edges,
    })
}

fn decode_letter(letter: u64, q: u32, e: &mut [u32]) {
    let mut rest = letter;
    for d in e.iter_mut() {
        *d = (rest % q as u64) as u32;
        rest /= q as u64;
    }
}

/// Verify `δ₀^K` collapses every vertex to zero and return `K`.
pub fn synchronize_check(graph: &TransitionGraph) -> Result<u32> {
    let q = graph.params.q();
    let k_steps = sync_steps(q, graph.k);
    let zero_letter = vec![0u32; graph.k as usize + 1];
    for (i, node) in graph.nodes.iter().enumerate() {
        let mut cur = node.clone();
        for _ in 0..k_steps {
            cur = delta(&cur, &zero_letter, q);
        }
        if !cur.is_zero() {
            return Err(Error::invariant(format!(
                "node {i} survives {k_steps} zero-letter steps"
            )));
        }
    }
    Ok(k_steps)
}

/// Result of the `j`-step contraction computation.
#[derive(Debug, Clone, Copy)]
pub struct Contraction {
    /// Number of steps, `j = K + b(k+1)`.
    pub j: u32,
    /// `max_{r₀} Σ_{r_j} |p^{(j)}_{r₀,r_j}|`, from exact integer entries.
    pub m: f64,
    /// The certified bound `1 − q^{−(k+1)(K+b(k+1))}`.
    pub bound: f64,
    /// Index of a row attaining the maximum.
    pub argmax_row: usize,
}

/// Compute the contraction constant `M` at `j = K + b(k+1)` steps.
///
/// Row `r₀` of the `j`-th matrix power is accumulated with scaled integer
/// group-ring coefficients (implicit denominator `q^{(k+1)·step}`), so the
/// only floating point is the final modulus per entry. Errors out if `M`
/// exceeds the bound.
pub fn contraction(graph: &TransitionGraph, budget: &Budget) -> Result<Contraction> {
    let params = graph.params;
    let q = params.q();
    let b = params.b() as usize;
    let k = graph.k;
    let ksync = sync_steps(q, k);
    let j = ksync + params.b() * (k + 1);
    let n = graph.node_count();
    let letters = (q as u128).pow(k + 1);
    budget.check(n as u128 * letters)?;

    // coefficient magnitudes stay <= q^{(k+1)j}; reject if that leaves i128
    let log2_cap = (k + 1) as f64 * j as f64 * (q as f64).log2();
    if log2_cap > 120.0 {
        return Err(Error::Budget {
            needed: u128::MAX,
            budget: budget.work(),
        });
    }

    use rayon::prelude::*;
    let rows: Vec<(usize, f64)> = (0..n)
        .into_par_iter()
        .map(|r0| {
            let mut cur = vec![0i128; n * b];
            cur[r0 * b] = 1;
            let mut next = vec![0i128; n * b];
            for _ in 0..j {
                next.iter_mut().for_each(|x| *x = 0);
                for r in 0..n {
                    let base = r * b;
                    if cur[base..base + b].iter().all(|&c| c == 0) {
                        continue;
                    }
                    for e in graph.edges_from(r) {
                        let tbase = e.target * b;
                        let shift = e.phase_t as usize;
                        let cnt = e.count as i128;
                        for t in 0..b {
                            let c = cur[base + t];
                            if c != 0 {
                                next[tbase + (t + shift) % b] += c * cnt;
                            }
                        }
                    }
                }
                std::mem::swap(&mut cur, &mut next);
            }
            // row sum of moduli, normalized by q^{(k+1)j}
            let scale = ((q as f64).ln() * (k + 1) as f64 * j as f64).exp();
            let mut sum = 0.0f64;
            for r in 0..n {
                let mut acc = num::complex::Complex64::new(0.0, 0.0);
                for t in 0..b {
                    let c = cur[r * b + t];
                    if c != 0 {
                        acc += crate::numeric::e((params.ell() as u64 * t as u64) as f64 / b as f64)
                            * (c as f64);
                    }
                }
                sum += acc.norm();
            }
            (r0, sum / scale)
        })
        .collect();

    let (argmax_row, m) = rows
        .into_iter()
        .fold((0usize, f64::NEG_INFINITY), |acc, (i, v)| {
            if v > acc.1 {
                (i, v)
            } else {
                acc
            }
        });

    let exponent = (k + 1) as f64 * j as f64;
    let bound = 1.0 - (-(exponent * (q as f64).ln())).exp();
    if m > bound {
        return Err(Error::invariant(format!(
            "contraction constant M = {m} exceeds the bound {bound}"
        )));
    }
    Ok(Contraction {
        j,
        m,
        bound,
        argmax_row,
    })
}
