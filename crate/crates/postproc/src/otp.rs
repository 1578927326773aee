//! One-time-pad encryption against the key ledger.

use crate::bits::BitString;
use crate::error::PostprocResult;
use crate::ledger::KeyLedger;

/// XORs `msg` with the next `msg.len()` pad bits from the ledger, debiting
/// them under the given round and purpose. Empty messages cost nothing.
/// Fails atomically (ledger untouched) when the balance is insufficient.
/// Decryption is the same operation against a ledger holding the same pool.
pub fn otp_encrypt(
    msg: &BitString,
    ledger: &mut KeyLedger,
    round: u64,
    purpose: &str,
) -> PostprocResult<BitString> {
    if msg.is_empty() {
        return Ok(BitString::zeros(0));
    }
    let pad = ledger.take_pad(msg.len(), round, purpose)?;
    msg.xor(&pad)
}
