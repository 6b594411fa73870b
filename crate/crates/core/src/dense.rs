//! Dense matrices and state vectors: the brute-force oracle representation.
//!
//! Everything here scales as `2^n` and exists to cross-check the sparse path
//! and to host kets (Bell states, the cloning state). Site 0 is the leftmost
//! tensor factor, i.e. the most significant bit of a basis-state index.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::pauli::PauliString;
use crate::{Error, Result};

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim >= 2 && dim.is_power_of_two() {
        Ok(dim.trailing_zeros() as usize)
    } else {
        Err(Error::DimensionNotPowerOfTwo { dim })
    }
}

/// Explicit `2^n x 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n_qubits: usize,
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<DenseOperator> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidParameter(format!(
                "matrix is not square: {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n_qubits = qubits_for_dim(matrix.nrows())?;
        Ok(DenseOperator { n_qubits, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Kronecker product `self (x) rhs`.
    pub fn kron(&self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            n_qubits: self.n_qubits + rhs.n_qubits,
            matrix: self.matrix.kronecker(&rhs.matrix),
        }
    }

    /// Largest entry-wise deviation from `M = M^dagger`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                worst = worst.max((self.matrix[(r, c)] - self.matrix[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Real eigenvalues of a Hermitian matrix, unordered.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let deviation = self.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        let eigen = nalgebra::linalg::SymmetricEigen::new(self.matrix.clone());
        Ok(eigen.eigenvalues.iter().copied().collect())
    }

    /// Partial transpose over the given sites, acting on matrix indices.
    ///
    /// Entry `(r, c)` moves to the index pair with the subset bits of `r` and
    /// `c` exchanged. Independent of the sparse sign-flip rule, so the two
    /// implementations can check each other.
    pub fn partial_transpose(&self, sites: &[usize]) -> Result<DenseOperator> {
        let mut subset: Vec<usize> = sites.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.n_qubits) {
            return Err(Error::SiteOutOfRange {
                index: bad,
                n_qubits: self.n_qubits,
            });
        }
        let mask: usize = subset
            .iter()
            .map(|&site| 1usize << (self.n_qubits - 1 - site))
            .sum();
        let dim = self.dim();
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                let nr = (r & !mask) | (c & mask);
                let nc = (c & !mask) | (r & mask);
                out[(nr, nc)] = self.matrix[(r, c)];
            }
        }
        Ok(DenseOperator {
            n_qubits: self.n_qubits,
            matrix: out,
        })
    }
}

/// Complex amplitude vector of `2^n` entries.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        Ok(StateVector {
            n_qubits,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Computational basis state `|index>` on `n_qubits`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<StateVector> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} outside 0..{dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector::new(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: &self.amplitudes * factor,
        }
    }

    /// `<self|rhs>`.
    pub fn inner(&self, rhs: &StateVector) -> Result<Complex64> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: rhs.n_qubits,
            });
        }
        Ok(self.amplitudes.dotc(&rhs.amplitudes))
    }

    /// Tensor product `self (x) rhs`.
    pub fn tensor(&self, rhs: &StateVector) -> StateVector {
        StateVector {
            n_qubits: self.n_qubits + rhs.n_qubits,
            amplitudes: self.amplitudes.kronecker(&rhs.amplitudes),
        }
    }

    /// Outer product `|self><self|`.
    pub fn outer(&self) -> DenseOperator {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DenseOperator {
            n_qubits: self.n_qubits,
            matrix: m,
        }
    }

    /// Apply a tensor-product Pauli word, tracking the accumulated phase.
    pub fn apply_pauli_string(&self, s: &PauliString) -> Result<StateVector> {
        if s.len() != self.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: s.len(),
            });
        }
        let dim = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for col in 0..dim {
            let (row, phase) = crate::operator::apply_string_to_basis(s, col);
            out[row] += phase * self.amplitudes[col];
        }
        StateVector::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::PauliOperator;
    use crate::states::bell_state;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(StateVector::new(vec![c(1.0, 0.0); 3]).is_err());
        assert!(DenseOperator::new(DMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn identity_operator_to_dense() {
        let dense = PauliOperator::identity(2).to_dense().unwrap();
        assert_eq!(dense.matrix(), &DMatrix::identity(4, 4));
    }

    #[test]
    fn bell_state_dense_matches_ket_outer_product() {
        // |phi_+> = (|00> + |11>)/sqrt(2) carries index 2 in the Bell basis.
        let inv = 1.0 / 2.0f64.sqrt();
        let ket =
            StateVector::new(vec![c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)]).unwrap();
        let expected = ket.outer();
        let dense = bell_state(2).unwrap().to_dense().unwrap();
        let diff = (dense.matrix() - expected.matrix()).norm();
        assert!(diff < 1e-15, "entrywise deviation {diff}");
    }

    #[test]
    fn phi_minus_ket_oracle() {
        // |phi_-> = (|00> - |11>)/sqrt(2) is Bell index 1.
        let inv = 1.0 / 2.0f64.sqrt();
        let ket =
            StateVector::new(vec![c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-inv, 0.0)]).unwrap();
        let dense = bell_state(1).unwrap().to_dense().unwrap();
        let diff = (dense.matrix() - ket.outer().matrix()).norm();
        assert!(diff < 1e-15);
    }

    #[test]
    fn from_dense_round_trips_bell_state() {
        let op = bell_state(3).unwrap();
        let back = PauliOperator::from_dense(&op.to_dense().unwrap(), 1e-12).unwrap();
        assert!(op.approx_eq(&back, 1e-13));
    }

    #[test]
    fn from_dense_rejects_non_hermitian() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        let dense = DenseOperator::new(m).unwrap();
        assert!(PauliOperator::from_dense(&dense, 1e-12).is_err());
    }

    #[test]
    fn to_dense_respects_limit() {
        let op = PauliOperator::identity(4);
        assert!(op.to_dense_with_limit(3).is_err());
        assert!(op.to_dense_with_limit(4).is_ok());
    }

    #[test]
    fn dense_partial_transpose_transposes_whole_matrix_on_full_set() {
        let dense = bell_state(0).unwrap().to_dense().unwrap();
        let all = dense.partial_transpose(&[0, 1]).unwrap();
        assert_eq!(all.matrix(), &dense.matrix().transpose());
    }

    #[test]
    fn pauli_string_application_tracks_phase() {
        // sigma_2 |0> = i |1>
        let ket = StateVector::basis_state(1, 0).unwrap();
        let out = ket.apply_pauli_string(&"Y".parse().unwrap()).unwrap();
        assert!((out.amplitude(1) - c(0.0, 1.0)).norm() < 1e-15);
        assert!(out.amplitude(0).norm() < 1e-15);
    }

    #[test]
    fn hermitian_eigenvalues_of_pure_state() {
        let dense = bell_state(0).unwrap().to_dense().unwrap();
        let mut eigs = dense.hermitian_eigenvalues(1e-12).unwrap();
        eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        for e in &eigs[1..] {
            assert!(e.abs() < 1e-12);
        }
    }
}
