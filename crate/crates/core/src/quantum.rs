//! Quantum-state primitives: pure states, density operators, POVMs and
//! classical-quantum ensembles.
//!
//! Constructors validate the defining invariants (Hermiticity, unit trace,
//! positive semidefiniteness, completeness) against [`Tolerances`], so any
//! value of these types that exists is well-formed. All values are immutable
//! after construction.

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};
use crate::matrix::{ComplexMatrix, hermitian_eigenvalues};
use crate::prob::{JointDistribution, ProbVector};
use crate::tol::{BORN_CLAMP, ENTROPY_EIG_CLAMP, Tolerances};

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(amps: Vec<Complex64>) -> CoreResult<Self> {
        Self::with_tolerances(amps, &Tolerances::default())
    }

    pub fn with_tolerances(amps: Vec<Complex64>, tol: &Tolerances) -> CoreResult<Self> {
        if amps.is_empty() {
            return Err(CoreError::InvalidDimension(
                "state vector must have dimension >= 1".into(),
            ));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::InvalidState(
                "state vector contains a non-finite amplitude".into(),
            ));
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol.norm {
            return Err(CoreError::InvalidState(format!(
                "state vector norm {norm} deviates from 1 by more than {:.0e}",
                tol.norm
            )));
        }
        Ok(Self { amps })
    }

    /// Computational basis vector `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amps = vec![Complex64::ZERO; dim];
        amps[k] = Complex64::ONE;
        Self { amps }
    }

    /// Real qubit state `cos θ |0⟩ + sin θ |1⟩`.
    pub fn real_qubit(theta: f64) -> Self {
        Self {
            amps: vec![
                Complex64::new(theta.cos(), 0.0),
                Complex64::new(theta.sin(), 0.0),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Tensor product of two state vectors.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { amps }
    }
}

/// Density operator: Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOp {
    mat: ComplexMatrix,
}

impl DensityOp {
    pub fn new(mat: ComplexMatrix) -> CoreResult<Self> {
        Self::with_tolerances(mat, &Tolerances::default())
    }

    pub fn with_tolerances(mat: ComplexMatrix, tol: &Tolerances) -> CoreResult<Self> {
        if !mat.is_square() {
            return Err(CoreError::InvalidDimension(format!(
                "density operator must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        mat.validate_finite()?;
        let dev = mat.hermiticity_deviation();
        if dev > tol.hermitian {
            return Err(CoreError::NotHermitian {
                deviation: dev,
                tolerance: tol.hermitian,
            });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(CoreError::InvalidState(format!(
                "density operator trace {tr} is not 1"
            )));
        }
        let min_eig = hermitian_eigenvalues(&mat)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -tol.psd {
            return Err(CoreError::InvalidState(format!(
                "density operator has negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { mat })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }
}

/// `|ψ⟩⟨ψ|` as a density operator.
pub fn pure_to_density(s: &PureState) -> DensityOp {
    let amps = s.amplitudes();
    let n = amps.len();
    let mat = ComplexMatrix::from_fn(n, n, |i, j| amps[i] * amps[j].conj());
    DensityOp { mat }
}

/// Kronecker product of two density operators.
pub fn tensor_product(a: &DensityOp, b: &DensityOp) -> DensityOp {
    // Hermiticity, unit trace and positivity are preserved exactly.
    DensityOp {
        mat: a.matrix().kron(b.matrix()),
    }
}

/// Von Neumann entropy in bits: `-Σ λ_i log2 λ_i` with `0·log 0 = 0`.
///
/// Eigenvalues in `(-1e-9, 0)` left over from rounding are clamped to zero.
pub fn von_neumann_entropy(rho: &DensityOp) -> f64 {
    let values = hermitian_eigenvalues(rho.matrix()).expect("density operators are Hermitian");
    let mut h = 0.0;
    for lambda in values {
        let l = if lambda < 0.0 && lambda > -ENTROPY_EIG_CLAMP {
            0.0
        } else {
            lambda
        };
        if l > 0.0 {
            h -= l * l.log2();
        }
    }
    h.max(0.0)
}

/// Positive operator-valued measure: PSD elements summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>) -> CoreResult<Self> {
        Self::with_tolerances(elements, &Tolerances::default())
    }

    pub fn with_tolerances(elements: Vec<ComplexMatrix>, tol: &Tolerances) -> CoreResult<Self> {
        if elements.is_empty() {
            return Err(CoreError::InvalidMeasurement(
                "a POVM needs at least one element".into(),
            ));
        }
        let dim = elements[0].rows();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (z, e) in elements.iter().enumerate() {
            if !e.is_square() || e.rows() != dim {
                return Err(CoreError::DimensionMismatch(format!(
                    "POVM element {z} is {}x{}, expected {dim}x{dim}",
                    e.rows(),
                    e.cols()
                )));
            }
            e.validate_finite()?;
            let dev = e.hermiticity_deviation();
            if dev > tol.hermitian {
                return Err(CoreError::NotHermitian {
                    deviation: dev,
                    tolerance: tol.hermitian,
                });
            }
            let min_eig = hermitian_eigenvalues(e)?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            if min_eig < -tol.psd {
                return Err(CoreError::InvalidMeasurement(format!(
                    "POVM element {z} has negative eigenvalue {min_eig:.3e}"
                )));
            }
            sum = sum.add(e);
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > tol.completeness {
            return Err(CoreError::InvalidMeasurement(format!(
                "POVM elements sum to identity only within {dev:.3e}, tolerance {:.0e}",
                tol.completeness
            )));
        }
        Ok(Self { elements })
    }

    /// Projective measurement onto an orthonormal set of states.
    pub fn projective(states: &[PureState]) -> CoreResult<Self> {
        let elements = states
            .iter()
            .map(|s| pure_to_density(s).matrix().clone())
            .collect();
        Self::new(elements)
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }
}

/// Classical-quantum ensemble `{(p_x, ρ_x)}`.
#[derive(Debug, Clone)]
pub struct Ensemble {
    items: Vec<(f64, DensityOp)>,
}

impl Ensemble {
    pub fn new(items: Vec<(f64, DensityOp)>) -> CoreResult<Self> {
        if items.is_empty() {
            return Err(CoreError::InvalidDimension(
                "ensemble must contain at least one state".into(),
            ));
        }
        ProbVector::new(items.iter().map(|(p, _)| *p).collect())?;
        let dim = items[0].1.dim();
        if items.iter().any(|(_, rho)| rho.dim() != dim) {
            return Err(CoreError::DimensionMismatch(
                "ensemble states have mixed dimensions".into(),
            ));
        }
        Ok(Self { items })
    }

    /// Equiprobable ensemble over the given states.
    pub fn equiprobable(states: Vec<DensityOp>) -> CoreResult<Self> {
        let p = 1.0 / states.len() as f64;
        Self::new(states.into_iter().map(|s| (p, s)).collect())
    }

    pub fn dim(&self) -> usize {
        self.items[0].1.dim()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(f64, DensityOp)] {
        &self.items
    }

    pub fn probs(&self) -> Vec<f64> {
        self.items.iter().map(|(p, _)| *p).collect()
    }

    /// Ensemble-average state `Σ p_x ρ_x`.
    pub fn average_state(&self) -> DensityOp {
        let dim = self.dim();
        let mut mat = ComplexMatrix::zeros(dim, dim);
        for (p, rho) in &self.items {
            mat = mat.add(&rho.matrix().scale(*p));
        }
        DensityOp { mat }
    }

    /// Product ensemble of two independent preparations: items are all pairs
    /// `(p_a · p_b, ρ_a ⊗ ρ_b)` in row-major pair order.
    pub fn product(&self, other: &Ensemble) -> Ensemble {
        let mut items = Vec::with_capacity(self.len() * other.len());
        for (pa, ra) in &self.items {
            for (pb, rb) in &other.items {
                items.push((pa * pb, tensor_product(ra, rb)));
            }
        }
        Ensemble { items }
    }
}

/// Joint outcome distribution `p(x, z) = p_x · tr(ρ_x E_z)` of measuring an
/// ensemble with a POVM. Rows index the ensemble letter, columns the outcome.
pub fn born_joint(e: &Ensemble, m: &Povm) -> CoreResult<JointDistribution> {
    if e.dim() != m.dim() {
        return Err(CoreError::DimensionMismatch(format!(
            "ensemble dimension {} vs measurement dimension {}",
            e.dim(),
            m.dim()
        )));
    }
    let mut cells = Vec::with_capacity(e.len() * m.len());
    for (p, rho) in e.items() {
        for element in m.elements() {
            let prob = p * rho.matrix().trace_product(element).re;
            if prob < -BORN_CLAMP {
                return Err(CoreError::InvalidDistribution(format!(
                    "Born probability {prob:.3e} is negative beyond tolerance"
                )));
            }
            cells.push(prob.max(0.0));
        }
    }
    JointDistribution::new(e.len(), m.len(), cells)
}
