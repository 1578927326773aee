//! Linear-code syndrome reconciliation (small-code demonstrator).
//!
//! Alice transmits the syndrome of her string under a fixed parity-check
//! matrix; Bob decodes the syndrome difference by bounded-weight search over
//! candidate error patterns. Failure to find a candidate inside the weight
//! bound is reported, never silent.

use crate::bits::BitString;
use crate::error::{PostprocError, PostprocResult};

/// Binary parity-check matrix, one `BitString` per row.
#[derive(Debug, Clone)]
pub struct BinaryMatrix {
    rows: Vec<BitString>,
    cols: usize,
}

impl BinaryMatrix {
    pub fn new(rows: Vec<BitString>) -> PostprocResult<Self> {
        if rows.is_empty() {
            return Err(PostprocError::OutOfDomain(
                "parity matrix needs at least one row".into(),
            ));
        }
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(PostprocError::LengthMismatch(
                "parity matrix rows must share a nonzero length".into(),
            ));
        }
        Ok(Self { rows, cols })
    }

    /// The Hamming(7,4) check matrix: column `j` holds the binary digits of
    /// `j + 1`, so every single-bit error has a distinct nonzero syndrome.
    pub fn hamming_7_4() -> Self {
        let mut rows = vec![BitString::zeros(7); 3];
        for j in 0..7usize {
            let v = j + 1;
            for (r, row) in rows.iter_mut().enumerate() {
                if (v >> r) & 1 == 1 {
                    row.set(j, true);
                }
            }
        }
        Self { rows, cols: 7 }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `H·x` over GF(2).
    pub fn syndrome(&self, x: &BitString) -> PostprocResult<BitString> {
        if x.len() != self.cols {
            return Err(PostprocError::LengthMismatch(format!(
                "syndrome input has {} bits, matrix has {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut s = BitString::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            let acc = row
                .words()
                .iter()
                .zip(x.words())
                .fold(0u64, |acc, (a, b)| acc ^ (a & b));
            s.set(r, acc.count_ones() % 2 == 1);
        }
        Ok(s)
    }

    /// Column `j` as a syndrome-length bit string.
    fn column(&self, j: usize) -> BitString {
        let mut c = BitString::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(j) {
                c.set(r, true);
            }
        }
        c
    }
}

/// Corrects Bob's string from the syndrome difference under `matrix`,
/// searching error patterns of weight at most `max_weight` (1 or 2) in
/// deterministic order (single flips by position, then pairs
/// lexicographically). Returns the corrected string and the leak in bits,
/// i.e. the number of transmitted syndrome bits.
pub fn syndrome_correct(
    alice: &BitString,
    bob: &BitString,
    matrix: &BinaryMatrix,
    max_weight: usize,
) -> PostprocResult<(BitString, usize)> {
    if alice.len() != bob.len() {
        return Err(PostprocError::LengthMismatch(format!(
            "syndrome inputs of lengths {} and {}",
            alice.len(),
            bob.len()
        )));
    }
    if !(1..=2).contains(&max_weight) {
        return Err(PostprocError::OutOfDomain(format!(
            "decoder weight bound {max_weight} outside 1..=2"
        )));
    }
    let leak = matrix.rows();
    let diff = matrix.syndrome(alice)?.xor(&matrix.syndrome(bob)?)?;
    if diff.count_ones() == 0 {
        return Ok((bob.clone(), leak));
    }

    let columns: Vec<BitString> = (0..matrix.cols()).map(|j| matrix.column(j)).collect();
    for (j, col) in columns.iter().enumerate() {
        if *col == diff {
            let mut corrected = bob.clone();
            corrected.flip(j);
            return Ok((corrected, leak));
        }
    }
    if max_weight >= 2 {
        for i in 0..columns.len() {
            for j in i + 1..columns.len() {
                if columns[i].xor(&columns[j])? == diff {
                    let mut corrected = bob.clone();
                    corrected.flip(i);
                    corrected.flip(j);
                    return Ok((corrected, leak));
                }
            }
        }
    }
    Err(PostprocError::DecodingFailure(format!(
        "no error pattern of weight <= {max_weight} matches the syndrome difference"
    )))
}
