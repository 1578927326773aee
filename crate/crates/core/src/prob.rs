//! Classical probability distributions and Shannon-entropy measures.
//! All entropies and informations are in bits (base-2 logarithms).

use crate::error::{CoreError, CoreResult};
use crate::tol::Tolerances;

/// Probability vector: non-negative entries summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    pub fn new(probs: Vec<f64>) -> CoreResult<Self> {
        Self::with_tolerances(probs, &Tolerances::default())
    }

    pub fn with_tolerances(probs: Vec<f64>, tol: &Tolerances) -> CoreResult<Self> {
        if probs.is_empty() {
            return Err(CoreError::InvalidDistribution(
                "empty probability vector".into(),
            ));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(CoreError::InvalidDistribution(
                "probability vector has a negative or non-finite entry".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol.prob_sum {
            return Err(CoreError::InvalidDistribution(format!(
                "probabilities sum to {sum}, expected 1 within {:.0e}",
                tol.prob_sum
            )));
        }
        Ok(Self { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }
}

/// Joint distribution over a row alphabet X and a column alphabet Z.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    cells: Vec<f64>, // row-major
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, cells: Vec<f64>) -> CoreResult<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(CoreError::InvalidDimension(format!(
                "joint distribution shape {rows}x{cols} does not match {} cells",
                cells.len()
            )));
        }
        if cells.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(CoreError::InvalidDistribution(
                "joint distribution has a negative or non-finite cell".into(),
            ));
        }
        let sum: f64 = cells.iter().sum();
        if (sum - 1.0).abs() > Tolerances::default().prob_sum {
            return Err(CoreError::InvalidDistribution(format!(
                "joint distribution sums to {sum}, expected 1"
            )));
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, x: usize, z: usize) -> f64 {
        assert!(x < self.rows && z < self.cols);
        self.cells[x * self.cols + z]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|x| (0..self.cols).map(|z| self.cell(x, z)).sum())
            .collect()
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|z| (0..self.rows).map(|x| self.cell(x, z)).sum())
            .collect()
    }
}

fn entropy_of(values: impl Iterator<Item = f64>) -> f64 {
    let mut h = 0.0;
    for p in values {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    h
}

/// Shannon entropy `H(p)` in bits.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    entropy_of(p.as_slice().iter().copied())
}

/// Binary entropy `h(p) = -p log2 p - (1-p) log2 (1-p)`.
pub fn binary_entropy(p: f64) -> CoreResult<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CoreError::OutOfDomain(format!(
            "binary entropy argument {p} outside [0, 1]"
        )));
    }
    Ok(entropy_of([p, 1.0 - p].into_iter()))
}

/// Mutual information `I(X:Z) = H(X) + H(Z) - H(XZ)` in bits, clamped at 0.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    let hx = entropy_of(j.row_marginal().into_iter());
    let hz = entropy_of(j.col_marginal().into_iter());
    let hxz = entropy_of(j.cells.iter().copied());
    (hx + hz - hxz).max(0.0)
}

/// Conditional entropy `H(X|Z) = H(XZ) - H(Z)` of the row variable given the
/// column variable, in bits.
pub fn conditional_entropy(j: &JointDistribution) -> f64 {
    let hz = entropy_of(j.col_marginal().into_iter());
    let hxz = entropy_of(j.cells.iter().copied());
    (hxz - hz).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bsc_joint(q: f64) -> JointDistribution {
        JointDistribution::new(
            2,
            2,
            vec![(1.0 - q) / 2.0, q / 2.0, q / 2.0, (1.0 - q) / 2.0],
        )
        .unwrap()
    }

    #[test]
    fn shannon_entropy_examples() {
        assert!(shannon_entropy(&ProbVector::new(vec![1.0, 0.0]).unwrap()).abs() < 1e-15);
        assert!((shannon_entropy(&ProbVector::new(vec![0.5, 0.5]).unwrap()) - 1.0).abs() < 1e-15);
        let expected = -(0.11f64 * 0.11f64.log2() + 0.89 * 0.89f64.log2());
        let got = shannon_entropy(&ProbVector::new(vec![0.11, 0.89]).unwrap());
        assert!((got - expected).abs() < 1e-15);
        assert!((got - 0.4999).abs() < 1e-4);
    }

    #[test]
    fn binary_entropy_examples() {
        assert!(binary_entropy(0.0).unwrap().abs() < 1e-15);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((binary_entropy(0.25).unwrap() - 0.8113).abs() < 1e-4);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn binary_entropy_is_symmetric() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let a = binary_entropy(p).unwrap();
            let b = binary_entropy(1.0 - p).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn mutual_information_examples() {
        let product = JointDistribution::new(2, 2, vec![0.25; 4]).unwrap();
        assert!(mutual_information(&product).abs() < 1e-15);

        let correlated = JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((mutual_information(&correlated) - 1.0).abs() < 1e-15);

        let expected = 1.0 - binary_entropy(0.11).unwrap();
        assert!((mutual_information(&bsc_joint(0.11)) - expected).abs() < 1e-12);
        assert!((mutual_information(&bsc_joint(0.11)) - 0.5001).abs() < 1e-4);
    }

    #[test]
    fn conditional_entropy_examples() {
        let correlated = JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(conditional_entropy(&correlated).abs() < 1e-15);

        let product = JointDistribution::new(2, 2, vec![0.25; 4]).unwrap();
        assert!((conditional_entropy(&product) - 1.0).abs() < 1e-15);

        let expected = binary_entropy(0.05).unwrap();
        assert!((conditional_entropy(&bsc_joint(0.05)) - expected).abs() < 1e-12);
        assert!((conditional_entropy(&bsc_joint(0.05)) - 0.2864).abs() < 1e-4);
    }

    #[test]
    fn joint_marginals_are_consistent() {
        let j = JointDistribution::new(2, 3, vec![0.1, 0.2, 0.1, 0.15, 0.25, 0.2]).unwrap();
        let rows: f64 = j.row_marginal().iter().sum();
        let cols: f64 = j.col_marginal().iter().sum();
        assert!((rows - 1.0).abs() < 1e-12);
        assert!((cols - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_distributions_are_rejected() {
        assert!(ProbVector::new(vec![0.6, 0.6]).is_err());
        assert!(ProbVector::new(vec![-0.1, 1.1]).is_err());
        assert!(JointDistribution::new(2, 2, vec![0.5, 0.5, 0.5, 0.5]).is_err());
        assert!(JointDistribution::new(2, 2, vec![0.5, 0.5]).is_err());
    }
}
