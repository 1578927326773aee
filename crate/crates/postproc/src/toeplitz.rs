//! Toeplitz universal hashing over GF(2) for privacy amplification.
//!
//! The `outLen x inLen` Toeplitz matrix is specified by `inLen + outLen - 1`
//! seed bits as `T[i][j] = seed[i - j + inLen - 1]` (first column read up the
//! seed, first row read down it), and the hash is the matrix-vector product
//! over GF(2). Row `i` is a contiguous window of the reversed seed, so the
//! product reduces to word-wide AND + parity passes.

use crate::bits::BitString;
use crate::error::{PostprocError, PostprocResult};

/// Hashes `input` to `out_len` bits with the Toeplitz matrix encoded by
/// `seed_bits`; requires `seed_bits.len() == input.len() + out_len - 1`.
/// Linear over GF(2): `T(x ^ y) = T(x) ^ T(y)`.
pub fn toeplitz_hash(
    input: &BitString,
    seed_bits: &BitString,
    out_len: usize,
) -> PostprocResult<BitString> {
    let n = input.len();
    if n == 0 {
        return Err(PostprocError::OutOfDomain("empty hash input".into()));
    }
    if out_len == 0 {
        return Ok(BitString::zeros(0));
    }
    let expected = n + out_len - 1;
    if seed_bits.len() != expected {
        return Err(PostprocError::LengthMismatch(format!(
            "Toeplitz seed has {} bits, expected {expected} for {n} -> {out_len}",
            seed_bits.len()
        )));
    }

    // T[i][j] = seed[(n-1) + i - j] = rev[(out_len-1-i) + j] with
    // rev[k] = seed[len-1-k]: every row is a window of the reversed seed.
    let mut rev = BitString::zeros(expected);
    for k in 0..expected {
        if seed_bits.get(expected - 1 - k) {
            rev.set(k, true);
        }
    }

    let words = n.div_ceil(64);
    let tail_mask = if n.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (n % 64)) - 1
    };
    let mut out = BitString::zeros(out_len);
    for i in 0..out_len {
        let offset = out_len - 1 - i;
        let mut acc = 0u64;
        for w in 0..words {
            let mut window = rev.window(offset + w * 64);
            if w == words - 1 {
                window &= tail_mask;
            }
            acc ^= window & input.words()[w];
        }
        if acc.count_ones() % 2 == 1 {
            out.set(i, true);
        }
    }
    Ok(out)
}
