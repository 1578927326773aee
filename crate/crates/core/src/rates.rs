//! Secret-key rates for BB84-style protocols under a declared attack model.
//!
//! The eavesdropper is modeled by a one-parameter family: at quantum bit
//! error rate `q`, her conditional states are equiprobable real qubit pure
//! states with pairwise overlap `s = 1 - 2q`, and the legitimate users share
//! a binary symmetric channel with `I(X:Y) = 1 - h(q)`. Attack families are
//! pluggable behind [`AttackFamily`] and selected by name through
//! [`AttackRegistry`]; results are specific to the declared family and are
//! not protocol-exact security claims.
//!
//! Three rates are evaluated per error rate:
//! - the classical one-way rate `I(X:Y) - I(X:Z)`,
//! - the Devetak-Winter rate `I(X:Y) - χ`, where χ is the Holevo quantity of
//!   the eavesdropper's ensemble,
//! - the accessible-information rate `I(X:Y) - I_acc`, applicable when the
//!   eavesdropper must measure before reconciliation information is public.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{CoreError, CoreResult};
use crate::info::{acc_info_two_pure_equiprob, holevo_quantity};
use crate::prob::binary_entropy;
use crate::quantum::{Ensemble, PureState, pure_to_density};
use crate::seesaw::OptimizerConfig;

/// Eavesdropping model at one operating point.
#[derive(Debug, Clone)]
pub struct AttackModel {
    qber: f64,
    /// Pairwise overlap of the eavesdropper's conditional states.
    overlap: f64,
    /// Legitimate users' mutual information, bits per sifted bit.
    ixy: f64,
    /// Eavesdropper's single-signal accessible information, bits.
    iacc: f64,
    eve_ensemble: Ensemble,
}

impl AttackModel {
    pub fn qber(&self) -> f64 {
        self.qber
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    pub fn ixy(&self) -> f64 {
        self.ixy
    }

    pub fn accessible_info(&self) -> f64 {
        self.iacc
    }

    pub fn eve_ensemble(&self) -> &Ensemble {
        &self.eve_ensemble
    }
}

/// Pure-pair attack model at error rate `q`: Eve holds equiprobable real
/// qubit pure states with overlap `1 - 2q`; `I(X:Y) = 1 - h(q)`.
pub fn eve_ensemble_bb84(q: f64) -> CoreResult<AttackModel> {
    if !(0.0..=0.5).contains(&q) {
        return Err(CoreError::OutOfDomain(format!("qber {q} outside [0, 0.5]")));
    }
    let overlap = 1.0 - 2.0 * q;
    // States at ±β have overlap cos 2β.
    let beta = 0.5 * overlap.clamp(0.0, 1.0).acos();
    let eve_ensemble = Ensemble::equiprobable(vec![
        pure_to_density(&PureState::real_qubit(beta)),
        pure_to_density(&PureState::real_qubit(-beta)),
    ])?;
    Ok(AttackModel {
        qber: q,
        overlap,
        ixy: 1.0 - binary_entropy(q)?,
        iacc: acc_info_two_pure_equiprob(overlap)?,
        eve_ensemble,
    })
}

/// Classical one-way key rate `I(X:Y) - I(X:Z)`; may be negative.
pub fn csiszar_korner_rate(ixy: f64, ixz: f64) -> f64 {
    ixy - ixz
}

/// Devetak-Winter rate `I(X:Y) - χ(E_E)`; may be negative.
pub fn devetak_winter_rate(m: &AttackModel) -> f64 {
    m.ixy - holevo_quantity(&m.eve_ensemble)
}

/// Accessible-information rate `I(X:Y) - I_acc(E_E)`; may be negative.
/// Never below the Devetak-Winter rate since `I_acc <= χ`.
pub fn acc_info_rate(m: &AttackModel) -> f64 {
    m.ixy - m.iacc
}

/// Bound on the information of a measurement across `n` independent channel
/// uses: the accessible information of a product ensemble is additive, so the
/// total is `n` times the single-signal value.
#[derive(Debug, Clone, Copy)]
pub struct AdditiveBound {
    pub n: usize,
    pub per_signal: f64,
    pub total: f64,
}

pub fn additive_bound(m: &AttackModel, n: usize) -> CoreResult<AdditiveBound> {
    if n < 1 {
        return Err(CoreError::OutOfDomain(
            "channel-use count must be at least 1".into(),
        ));
    }
    let per_signal = m.iacc;
    Ok(AdditiveBound {
        n,
        per_signal,
        total: n as f64 * per_signal,
    })
}

/// One row of a rate sweep.
#[derive(Debug, Clone, Copy)]
pub struct RatePoint {
    pub qber: f64,
    pub ixy: f64,
    pub chi: f64,
    pub iacc: f64,
    pub rate_dw: f64,
    pub rate_acc: f64,
}

/// A named, pluggable eavesdropping family.
pub trait AttackFamily: Send + Sync {
    fn name(&self) -> &'static str;

    /// Builds the model at error rate `q`. Families without a closed-form
    /// accessible information evaluate it with the optimizer configuration.
    fn build(&self, qber: f64, cfg: &OptimizerConfig) -> CoreResult<AttackModel>;
}

/// Equiprobable real pure-pair family with overlap `1 - 2q`. Its accessible
/// information has a closed form, so the optimizer configuration is unused.
pub struct PurePairFamily;

impl AttackFamily for PurePairFamily {
    fn name(&self) -> &'static str {
        "pure-pair"
    }

    fn build(&self, qber: f64, _cfg: &OptimizerConfig) -> CoreResult<AttackModel> {
        eve_ensemble_bb84(qber)
    }
}

/// Attack families registered by name and selected at runtime.
pub struct AttackRegistry {
    families: BTreeMap<&'static str, Arc<dyn AttackFamily>>,
}

impl AttackRegistry {
    pub fn new() -> Self {
        Self {
            families: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(PurePairFamily));
        reg
    }

    pub fn register(&mut self, family: Arc<dyn AttackFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn AttackFamily>> {
        self.families.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }
}

impl Default for AttackRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// Evaluates all three rates over a strictly increasing QBER grid.
/// Output order follows the grid; deterministic for a fixed configuration.
pub fn rate_curve(
    q_grid: &[f64],
    cfg: &OptimizerConfig,
    family: &dyn AttackFamily,
) -> CoreResult<Vec<RatePoint>> {
    if q_grid.is_empty() {
        return Err(CoreError::OutOfDomain("empty QBER grid".into()));
    }
    if q_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::OutOfDomain(
            "QBER grid must be strictly increasing".into(),
        ));
    }
    q_grid
        .iter()
        .map(|&q| {
            let model = family.build(q, cfg)?;
            let chi = holevo_quantity(model.eve_ensemble());
            Ok(RatePoint {
                qber: q,
                ixy: model.ixy(),
                chi,
                iacc: model.accessible_info(),
                rate_dw: model.ixy() - chi,
                rate_acc: model.ixy() - model.accessible_info(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_model_leaks_nothing() {
        let m = eve_ensemble_bb84(0.0).unwrap();
        assert!((m.overlap() - 1.0).abs() < 1e-15);
        assert!(holevo_quantity(m.eve_ensemble()).abs() < 1e-12);
        assert!(m.accessible_info().abs() < 1e-12);
        assert!((devetak_winter_rate(&m) - 1.0).abs() < 1e-9);
        assert!((acc_info_rate(&m) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fully_disturbed_model_leaks_everything() {
        let m = eve_ensemble_bb84(0.5).unwrap();
        assert!(m.overlap().abs() < 1e-15);
        assert!((holevo_quantity(m.eve_ensemble()) - 1.0).abs() < 1e-9);
        assert!((m.accessible_info() - 1.0).abs() < 1e-12);
        assert!((devetak_winter_rate(&m) + 1.0).abs() < 1e-9);
        assert!((acc_info_rate(&m) + 1.0).abs() < 1e-9);
    }

    #[test]
    fn five_percent_point() {
        let m = eve_ensemble_bb84(0.05).unwrap();
        assert!((m.overlap() - 0.9).abs() < 1e-15);
        let chi = holevo_quantity(m.eve_ensemble());
        let expected_chi = binary_entropy(0.95).unwrap();
        assert!((chi - expected_chi).abs() < 1e-9);
        assert!((chi - 0.2864).abs() < 1e-4);
        let expected_iacc = acc_info_two_pure_equiprob(0.9).unwrap();
        assert!((m.accessible_info() - expected_iacc).abs() < 1e-15);
    }

    #[test]
    fn qber_domain_is_enforced() {
        assert!(eve_ensemble_bb84(-0.01).is_err());
        assert!(eve_ensemble_bb84(0.51).is_err());
    }

    #[test]
    fn csiszar_korner_examples() {
        assert!((csiszar_korner_rate(1.0, 0.0) - 1.0).abs() < 1e-15);
        assert!(csiszar_korner_rate(0.5, 0.5).abs() < 1e-15);
        let h05 = binary_entropy(0.05).unwrap();
        let rate = csiszar_korner_rate(1.0 - h05, h05);
        assert!((rate - (1.0 - 2.0 * h05)).abs() < 1e-12);
        assert!((rate - 0.4272060858).abs() < 1e-9);
    }

    #[test]
    fn additive_bound_examples() {
        let m = eve_ensemble_bb84(0.05).unwrap();
        let one = additive_bound(&m, 1).unwrap();
        assert_eq!(one.n, 1);
        assert!((one.total - one.per_signal).abs() < 1e-15);

        let orth = eve_ensemble_bb84(0.5).unwrap();
        let hundred = additive_bound(&orth, 100).unwrap();
        assert!((hundred.total - 100.0).abs() < 1e-9);

        assert!(additive_bound(&m, 0).is_err());
    }

    #[test]
    fn rate_gap_identity_and_ordering() {
        let cfg = OptimizerConfig::default();
        let grid: Vec<f64> = (1..50).map(|k| k as f64 * 0.01).collect();
        let points = rate_curve(&grid, &cfg, &PurePairFamily).unwrap();
        for p in &points {
            assert!((p.rate_acc - p.rate_dw) - (p.chi - p.iacc) < 1e-12);
            assert!(p.iacc <= p.chi + 1e-9, "q={}", p.qber);
            assert!(p.rate_acc >= p.rate_dw - 1e-9, "q={}", p.qber);
        }
        // χ and I_acc are non-decreasing in q; the Devetak-Winter rate is
        // monotonically decreasing.
        for w in points.windows(2) {
            assert!(w[1].chi >= w[0].chi - 1e-9);
            assert!(w[1].iacc >= w[0].iacc - 1e-9);
            assert!(w[1].rate_dw < w[0].rate_dw);
        }
    }

    #[test]
    fn leakage_ordering_is_strict_in_the_open_interval() {
        // 0 < I_acc < χ < 1 with margin 1e-6 everywhere strictly inside the
        // error-rate domain.
        for k in 0..25 {
            let q = 0.01 + k as f64 * 0.02;
            let m = eve_ensemble_bb84(q).unwrap();
            let chi = holevo_quantity(m.eve_ensemble());
            let iacc = m.accessible_info();
            assert!(iacc > 1e-6, "q={q}");
            assert!(chi - iacc > 1e-6, "q={q}");
            assert!(chi < 1.0 - 1e-6, "q={q}");
        }
    }

    #[test]
    fn rate_curve_rejects_bad_grids() {
        let cfg = OptimizerConfig::default();
        assert!(rate_curve(&[], &cfg, &PurePairFamily).is_err());
        assert!(rate_curve(&[0.1, 0.1], &cfg, &PurePairFamily).is_err());
        assert!(rate_curve(&[0.2, 0.1], &cfg, &PurePairFamily).is_err());
        assert!(rate_curve(&[0.4, 0.6], &cfg, &PurePairFamily).is_err());
    }

    #[test]
    fn registry_exposes_pure_pair() {
        let reg = AttackRegistry::with_builtins();
        assert!(reg.get("pure-pair").is_some());
        assert!(reg.get("unknown").is_none());
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["pure-pair"]);
    }
}
