//! Ket-level dense oracles, independent of the sparse Pauli path.
//!
//! Everything here starts from hardcoded Bell-state amplitudes and explicit
//! 2x2 Pauli matrices, so the integration tests can cross-check the sparse
//! constructions against arithmetic that shares no code with them.

// compiled once per test target; each target uses a different subset
#![allow(dead_code)]

use gss_core::dense::StateVector;
use gss_core::pauli::Pauli;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn sigma_matrix(p: Pauli) -> DMatrix<Complex64> {
    let entries = match p {
        Pauli::I => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        Pauli::X => [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        Pauli::Y => [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        Pauli::Z => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    };
    DMatrix::from_row_slice(2, 2, &entries)
}

/// Bell kets from their amplitude definitions, in the index order used by
/// the crate: psi-minus, phi-minus, phi-plus, psi-plus.
pub fn bell_ket(l: usize) -> StateVector {
    let s = 1.0 / 2.0f64.sqrt();
    let amps = match l {
        0 => vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)],
        1 => vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)],
        2 => vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)],
        3 => vec![c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)],
        _ => panic!("bell index {l}"),
    };
    StateVector::new(amps).unwrap()
}

/// `I^(x)(m-1) (x) sigma_k` as a dense matrix.
pub fn last_site_unitary(m: usize, k: Pauli) -> DMatrix<Complex64> {
    let dim = 1usize << (m - 1);
    DMatrix::<Complex64>::identity(dim, dim).kronecker(&sigma_matrix(k))
}

/// Dense recursion for the Smolin family, entirely at the matrix level.
pub fn gss_dense_recursive(n: usize) -> DMatrix<Complex64> {
    let seed = bell_ket(0).outer().into_matrix();
    let mut state = seed.clone();
    for step in 1..n {
        let m = 2 * step;
        let dim = 1usize << (m + 2);
        let mut next = DMatrix::<Complex64>::zeros(dim, dim);
        for k in Pauli::ALL {
            let u_left = last_site_unitary(m, k);
            let u_right = last_site_unitary(2, k);
            let left = &u_left * &state * &u_left;
            let right = &u_right * &seed * &u_right;
            next += left.kronecker(&right);
        }
        state = next.map(|z| z * 0.25);
    }
    state
}

/// The four-qubit state as an equal mixture of doubled Bell projectors.
pub fn smolin_from_kets() -> DMatrix<Complex64> {
    let mut acc = DMatrix::<Complex64>::zeros(16, 16);
    for l in 0..4 {
        let proj = bell_ket(l).outer().into_matrix();
        acc += proj.kronecker(&proj);
    }
    acc.map(|z| z * 0.25)
}

/// Largest entry-wise absolute difference.
pub fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    let mut worst = 0.0f64;
    for r in 0..a.nrows() {
        for col in 0..a.ncols() {
            worst = worst.max((a[(r, col)] - b[(r, col)]).norm());
        }
    }
    worst
}
