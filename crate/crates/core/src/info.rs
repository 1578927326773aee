//! Quantum information measures over ensembles: the Holevo quantity, the
//! information of a fixed measurement, and the closed-form accessible
//! information of a symmetric pure-state pair.

use crate::error::{CoreError, CoreResult};
use crate::prob::{binary_entropy, mutual_information};
use crate::quantum::{Ensemble, Povm, born_joint, von_neumann_entropy};

/// Holevo quantity `χ(E) = S(Σ p_x ρ_x) - Σ p_x S(ρ_x)` in bits.
///
/// Upper bounds the classical information any measurement can extract from
/// the ensemble.
pub fn holevo_quantity(e: &Ensemble) -> f64 {
    let avg = von_neumann_entropy(&e.average_state());
    let mean: f64 = e
        .items()
        .iter()
        .map(|(p, rho)| p * von_neumann_entropy(rho))
        .sum();
    (avg - mean).max(0.0)
}

/// Accessible information of two equiprobable pure states with the given
/// overlap `|⟨ψ_0|ψ_1⟩| = c`, in bits:
///
/// `I_acc = 1 - h((1 + sqrt(1 - c^2)) / 2)`
///
/// attained by the projective measurement symmetric about the pair. Validated
/// against the see-saw optimizer in this crate's tests.
pub fn acc_info_two_pure_equiprob(overlap: f64) -> CoreResult<f64> {
    if !(0.0..=1.0).contains(&overlap) {
        return Err(CoreError::OutOfDomain(format!(
            "overlap {overlap} outside [0, 1]"
        )));
    }
    let success = (1.0 + (1.0 - overlap * overlap).sqrt()) / 2.0;
    Ok(1.0 - binary_entropy(success.min(1.0))?)
}

/// Mutual information obtained by measuring the ensemble with a fixed POVM.
pub fn measurement_info(e: &Ensemble, m: &Povm) -> CoreResult<f64> {
    Ok(mutual_information(&born_joint(e, m)?))
}
