//! Sifted-key simulation and key permutation.
//!
//! The quantum exchange and sifting are modeled post hoc: Alice's sifted key
//! is uniform, Bob's copy differs by i.i.d. flips at the error rate. The
//! random permutation applied identically to both strings makes error
//! positions exchangeable without changing their count.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bits::BitString;
use crate::error::{PostprocError, PostprocResult};

/// Draws Alice's uniform sifted key and Bob's noisy copy at error rate `q`.
/// Alice's words are drawn first, then one flip decision per bit, so the
/// output is a fixed function of the seed.
pub fn simulate_sifted(n: usize, q: f64, seed: u64) -> PostprocResult<(BitString, BitString)> {
    if n < 1 {
        return Err(PostprocError::OutOfDomain(
            "sifted-key length must be at least 1".into(),
        ));
    }
    if !(0.0..=0.5).contains(&q) {
        return Err(PostprocError::OutOfDomain(format!(
            "qber {q} outside [0, 0.5]"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let alice = BitString::random(n, &mut rng);
    let mut bob = alice.clone();
    for i in 0..n {
        if rng.random::<f64>() < q {
            bob.flip(i);
        }
    }
    Ok((alice, bob))
}

/// Fisher-Yates permutation drawn from the seed; strings sharing a seed are
/// permuted identically. Output bit `j` is input bit `perm[j]`.
pub fn apply_permutation(k: &BitString, seed: u64) -> BitString {
    let n = k.len();
    let perm = permutation(n, seed);
    let mut out = BitString::zeros(n);
    for (j, &src) in perm.iter().enumerate() {
        if k.get(src) {
            out.set(j, true);
        }
    }
    out
}

pub(crate) fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        // Sample the swap index over u64 so the draw sequence does not depend
        // on the platform word size.
        let j = rng.random_range(0..=i as u64) as usize;
        perm.swap(i, j);
    }
    perm
}

/// Random bit material for pads and hash seeds, fixed by the seed.
pub fn random_bits(n: usize, seed: u64) -> BitString {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    BitString::random(n, &mut rng)
}
