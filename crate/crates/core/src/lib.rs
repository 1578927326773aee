//! Quantum-information core for QKD post-processing analysis.
//!
//! Dense complex linear algebra at two-qubit scale, validated quantum state
//! and measurement types, classical and quantum information measures, a
//! see-saw lower bound on accessible information, BB84-style key-rate
//! formulas under a pluggable attack model, and the XOR-merge locking
//! demonstration where the optimal measurement becomes entangled.
//!
//! All operations are pure functions of their inputs; values are immutable
//! after construction and safe to share across threads.

pub mod error;
pub mod info;
pub mod locking;
pub mod matrix;
pub mod prob;
pub mod quantum;
pub mod rates;
pub mod seed;
pub mod seesaw;
pub mod tol;

pub use error::{CoreError, CoreResult};
pub use info::{acc_info_two_pure_equiprob, holevo_quantity, measurement_info};
pub use locking::{
    LockingPoint, bell_basis_info, best_separable_info, build_init_ensemble, locking_sweep,
    xor_merge,
};
pub use matrix::{ComplexMatrix, HermitianEigen, hermitian_eigen, hermitian_eigenvalues};
pub use prob::{
    JointDistribution, ProbVector, binary_entropy, conditional_entropy, mutual_information,
    shannon_entropy,
};
pub use quantum::{
    DensityOp, Ensemble, Povm, PureState, born_joint, pure_to_density, tensor_product,
    von_neumann_entropy,
};
pub use rates::{
    AdditiveBound, AttackFamily, AttackModel, AttackRegistry, PurePairFamily, RatePoint,
    acc_info_rate, additive_bound, csiszar_korner_rate, devetak_winter_rate, eve_ensemble_bb84,
    rate_curve,
};
pub use seed::derive_seed;
pub use seesaw::{AccInfoResult, OptimizerConfig, seesaw_acc_info};
pub use tol::Tolerances;
