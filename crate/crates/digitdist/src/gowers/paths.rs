//! The two distinguished loops at the zero vertex and the word-switching
//! cancellation built from them.
//!
//! The trivial loop repeats the zero letter `k+1` times with total weight 1.
//! The long loop climbs through the staircase vertices `r^{(t)}` (coordinate
//! `w` equals 1 exactly when the first `t` binary digits of `w` are all 1)
//! and returns to zero with total weight `e((−1)^{k+1}(q−1)ℓ/b)`, a
//! nontrivial `b`-th root of unity under the standing hypothesis. Replacing
//! `λ = 0, 1, …, b−1` trivial loops inside a zero block by long loops
//! produces `b` path weights whose sum vanishes exactly.



use crate::digitcore::{DigitParams, PhaseResidue};
use crate::gowers::graph::{delta, s_tilde, sync_steps, Node};
use crate::gowers::phase::PhaseVector;
use crate::{Error, Result};

/// A digit vector `e ∈ {0,…,q−1}^{k+1}` (one letter of a path word).
pub type Letter = Vec<u32>;

/// The verified long loop at the zero vertex.
#[derive(Debug, Clone)]
pub struct KoniecznyPath {
    /// The `k+1` letters of the loop.
    pub letters: Vec<Letter>,
    /// Phase residue of each step's weight.
    pub step_phases: Vec<PhaseResidue>,
    /// Product of the step weights: residue of `e((−1)^{k+1}(q−1)ℓ/b)`.
    pub total_phase: PhaseResidue,
}

/// Staircase vertex `r^{(t)}`: coordinate `w` is 1 iff `w₀ = … = w_{t−1} = 1`.
fn staircase(k: u32, t: u32) -> Node {
    let mask = (1u64 << t) - 1;
    let coords = (0..(1u64 << k))
        .map(|w| if w & mask == mask { 1 } else { 0 })
        .collect();
    Node::from_coords(k, coords).expect("coordinate count matches k")
}

/// The letters of the long loop.
pub fn konieczny_letters(q: u32, k: u32) -> Vec<Letter> {
    let len = k as usize + 1;
    let mut letters = Vec::with_capacity(len);
    let mut first = vec![0u32; len];
    first[0] = q - 1;
    first[1] = 1;
    letters.push(first);
    for t in 1..k {
        let mut e = vec![0u32; len];
        e[0] = q - 2;
        e[t as usize + 1] = 1;
        letters.push(e);
    }
    letters.push(vec![0u32; len]);
    letters
}

/// Build the long loop and verify every step lands on the stated staircase
/// vertex with the stated weight.
pub fn konieczny_path(params: &DigitParams, k: u32) -> Result<KoniecznyPath> {
    if k < 2 {
        return Err(Error::precondition(format!("long loop needs k >= 2, got {k}")));
    }
    let q = params.q();
    let letters = konieczny_letters(q, k);
    let mut step_phases = Vec::with_capacity(letters.len());
    let mut total = params.phase(0);
    let mut current = Node::zero(k);
    for (t, letter) in letters.iter().enumerate() {
        let next = delta(&current, letter, q);
        let expect = if (t as u32) < k {
            staircase(k, t as u32 + 1)
        } else {
            Node::zero(k)
        };
        if next != expect {
            return Err(Error::invariant(format!(
                "long-loop step {t} lands on {:?}, expected {:?}",
                next.coords(),
                expect.coords()
            )));
        }
        let phase = params.phase(q as i64 * s_tilde(&next) - s_tilde(&current));
        total = total.add(&phase);
        step_phases.push(phase);
        current = next;
    }
    if !current.is_zero() {
        return Err(Error::invariant("long loop does not close at zero"));
    }
    // e((−1)^{k+1}(q−1)ℓ/b), as a residue without the ℓ factor
    let sign = if k % 2 == 0 { -1i64 } else { 1i64 };
    let stated = params.phase(sign * (q as i64 - 1));
    if total != stated {
        return Err(Error::invariant(format!(
            "long-loop weight residue {} differs from the stated {}",
            total.t(),
            stated.t()
        )));
    }
    Ok(KoniecznyPath {
        letters,
        step_phases,
        total_phase: total,
    })
}

/// Phase residue of the path weight `W(e)` read from `r₀` along `word`.
pub fn word_weight(params: &DigitParams, r0: &Node, word: &[Letter]) -> PhaseResidue {
    let q = params.q();
    let mut acc = params.phase(0);
    let mut prev = r0.clone();
    for letter in word {
        let next = delta(&prev, letter, q);
        acc = acc.add(&params.phase(q as i64 * s_tilde(&next) - s_tilde(&prev)));
        prev = next;
    }
    acc
}

/// Block length `K + b(k+1)` of the fundamental zero word.
pub fn block_len(params: &DigitParams, k: u32) -> usize {
    (sync_steps(params.q(), k) + params.b() * (k + 1)) as usize
}

fn is_zero_letter(letter: &Letter) -> bool {
    letter.iter().all(|&d| d == 0)
}

/// Smallest index at which `word` contains `len` consecutive zero letters.
pub fn first_zero_block(word: &[Letter], len: usize) -> Option<usize> {
    if word.len() < len {
        return None;
    }
    let mut run = 0usize;
    for (i, letter) in word.iter().enumerate() {
        if is_zero_letter(letter) {
            run += 1;
            if run >= len {
                return Some(i + 1 - len);
            }
        } else {
            run = 0;
        }
    }
    None
}

/// The switching map: replace the `λ(k+1)` zero letters following the `K`
/// free-fall letters of the block at `m` by `λ` copies of the long loop.
pub fn switch_word(params: &DigitParams, k: u32, word: &[Letter], m: usize, lambda: u32) -> Vec<Letter> {
    debug_assert!(lambda < params.b());
    let ksync = sync_steps(params.q(), k) as usize;
    let loop_letters = konieczny_letters(params.q(), k);
    let mut out = word.to_vec();
    for t in 0..(lambda as usize * (k as usize + 1)) {
        out[m + ksync + t] = loop_letters[t % (k as usize + 1)].clone();
    }
    out
}

/// Exact sum `W(e) + W(φ₁(e)) + … + W(φ_{b−1}(e))` from start vertex `r0`.
///
/// The word must contain the fundamental zero block with its first
/// occurrence at `m` (0-based). The sum is returned as an exact group-ring
/// element after verifying it is identically zero in ℂ.
pub fn switching_cancellation(
    params: &DigitParams,
    k: u32,
    r0: &Node,
    word: &[Letter],
    m: usize,
) -> Result<PhaseVector> {
    let len = block_len(params, k);
    if word.len() < len {
        return Err(Error::precondition(format!(
            "word of length {} cannot contain a zero block of length {len}",
            word.len()
        )));
    }
    match first_zero_block(word, len) {
        Some(first) if first == m => {}
        Some(first) => {
            return Err(Error::precondition(format!(
                "first zero block sits at {first}, not at the stated m={m}"
            )));
        }
        None => {
            return Err(Error::precondition(
                "word does not contain the required zero block",
            ));
        }
    }
    if !r0.in_reachable_box() {
        return Err(Error::precondition("start vertex outside the reachable box"));
    }

    let mut sum = PhaseVector::zero(params);
    for lambda in 0..params.b() {
        let switched = if lambda == 0 {
            word.to_vec()
        } else {
            switch_word(params, k, word, m, lambda)
        };
        let w = word_weight(params, r0, &switched);
        sum.add_assign(&PhaseVector::basis(params, &w));
    }
    if !sum.is_zero_value() {
        return Err(Error::invariant(
            "switched path weights do not cancel exactly",
        ));
    }
    Ok(sum)
}

/// Sample an admissible word: random letters with the fundamental zero block
/// planted at a random position, resampled until that position is the first
/// block occurrence.
pub fn sample_admissible_word(
    params: &DigitParams,
    k: u32,
    extra_letters: usize,
    rng: &mut impl rand::Rng,
) -> (Vec<Letter>, usize) {
    let len = block_len(params, k);
    let q = params.q();
    loop {
        let j = len + rng.gen_range(0..=extra_letters);
        let m = rng.gen_range(0..=(j - len));
        let mut word: Vec<Letter> = (0..j)
            .map(|_| (0..=k).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        for letter in word.iter_mut().skip(m).take(len) {
            letter.iter_mut().for_each(|d| *d = 0);
        }
        if first_zero_block(&word, len) == Some(m) {
            return (word, m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::gowers::graph::reachable_set;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn params(q: u32, b: u32, ell: u32) -> DigitParams {
        DigitParams::new(q, b, ell).unwrap()
    }

    #[test]
    fn long_loop_verifies_for_various_parameters() {
        for (q, b, ell, k) in [
            (2, 2, 1, 3),
            (2, 3, 1, 3),
            (2, 3, 2, 2),
            (3, 3, 1, 3),
            (4, 2, 1, 4),
            (5, 3, 2, 2),
        ] {
            let p = params(q, b, ell);
            let path = konieczny_path(&p, k).unwrap();
            assert_eq!(path.letters.len(), k as usize + 1);
            // step t = 0 carries weight 1
            assert_eq!(path.step_phases[0].t(), 0);
            // steps up to k-2 carry weight 1
            for t in 0..(k as usize - 1) {
                assert_eq!(path.step_phases[t].t(), 0, "step {t}");
            }
            // step k-1 carries e((−1)^{k+1} qℓ/b)
            let sign = if k % 2 == 0 { -1i64 } else { 1i64 };
            assert_eq!(path.step_phases[k as usize - 1], p.phase(sign * q as i64));
            // total: e((−1)^{k+1}(q−1)ℓ/b)
            assert_eq!(path.total_phase, p.phase(sign * (q as i64 - 1)));
        }
    }

    #[test]
    fn thue_morse_total_residue() {
        // q=2, b=2, k=3: (−1)^4 (q−1) = 1 mod 2
        let p = params(2, 2, 1);
        assert_eq!(konieczny_path(&p, 3).unwrap().total_phase.t(), 1);
    }

    #[test]
    fn root_of_unity_sum_property() {
        // Σ_λ e(λ(q−1)ℓ(−1)^{k+1}/b) = 0 because (q−1)ℓ/b is not an integer.
        for (q, b, ell, k) in [(2, 2, 1, 3), (2, 3, 2, 3), (3, 5, 3, 2)] {
            let p = params(q, b, ell);
            let total = konieczny_path(&p, k).unwrap().total_phase;
            let mut sum = PhaseVector::zero(&p);
            let mut acc = p.phase(0);
            for _ in 0..b {
                sum.add_assign(&PhaseVector::basis(&p, &acc));
                acc = acc.add(&total);
            }
            assert!(sum.is_zero_value());
        }
    }

    #[test]
    fn switching_cancels_on_sampled_words() {
        let mut rng = StdRng::seed_from_u64(42);
        for (q, b, ell, k) in [(2u32, 2u32, 1u32, 3u32), (2, 3, 1, 3)] {
            let p = params(q, b, ell);
            let graph = reachable_set(&p, k, &Budget::default()).unwrap();
            for trial in 0..25 {
                let (word, m) = sample_admissible_word(&p, k, 5, &mut rng);
                let r0 = graph.node(trial % graph.node_count());
                let sum = switching_cancellation(&p, k, r0, &word, m).unwrap();
                assert!(sum.modulus() < 1e-12);
            }
        }
    }

    #[test]
    fn two_weights_are_opposite_for_b_two() {
        let p = params(2, 2, 1);
        let k = 3;
        let mut rng = StdRng::seed_from_u64(9);
        let (word, m) = sample_admissible_word(&p, k, 4, &mut rng);
        let w0 = word_weight(&p, &Node::zero(k), &word);
        let w1 = word_weight(&p, &Node::zero(k), &switch_word(&p, k, &word, m, 1));
        // opposite phases: residues differ by 1 mod 2
        assert_eq!((w0.t() + 1) % 2, w1.t());
    }

    #[test]
    fn rejects_blockless_and_misplaced_words() {
        let p = params(2, 2, 1);
        let k = 3;
        let len = block_len(&p, k);
        let word: Vec<Letter> = (0..len).map(|_| vec![1, 0, 0, 0]).collect();
        assert!(switching_cancellation(&p, k, &Node::zero(k), &word, 0).is_err());
        let zeros: Vec<Letter> = (0..len + 2).map(|_| vec![0, 0, 0, 0]).collect();
        // first block is at 0, not 2
        assert!(switching_cancellation(&p, k, &Node::zero(k), &zeros, 2).is_err());
        assert!(switching_cancellation(&p, k, &Node::zero(k), &zeros, 0).is_ok());
    }
}
