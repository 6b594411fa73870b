//! Spectra, partial-transpose eigenvalue analysis, and bipartition scans.
//!
//! Two independent eigenvalue routes are kept side by side: a dense Hermitian
//! eigensolver for anything under the dense limit, and an analytic
//! sector formula for operators supported on the identity string plus the
//! three uniform strings (the generalised Smolin family). The sector route
//! extends cut analysis past the dense limit and doubles as an oracle for
//! the dense one.

use crate::operator::PauliOperator;
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result, DEFAULT_DENSE_LIMIT, PPT_TOL};

/// Verdict for one bipartition size of a cut scan.
#[derive(Clone, Debug, PartialEq)]
pub struct CutReport {
    pub subset_size: usize,
    pub min_pt_eigenvalue: f64,
    pub is_ppt: bool,
    pub representative_subset: Vec<usize>,
}

/// Knobs for [`cut_scan_with`].
#[derive(Clone, Debug)]
pub struct CutScanOptions {
    /// Eigenvalues above `-tol` count as nonnegative.
    pub tol: f64,
    /// Qubit ceiling for the dense eigensolver fallback.
    pub dense_limit: usize,
    /// Cap on the number of subsets scanned per size when the operator is
    /// not permutation invariant.
    pub max_subsets_per_size: usize,
}

impl Default for CutScanOptions {
    fn default() -> Self {
        CutScanOptions {
            tol: PPT_TOL,
            dense_limit: DEFAULT_DENSE_LIMIT,
            max_subsets_per_size: 4096,
        }
    }
}

/// Full eigenvalue multiset of a Hermitian operator, descending.
pub fn spectrum(op: &PauliOperator) -> Result<Vec<f64>> {
    spectrum_with_limit(op, DEFAULT_DENSE_LIMIT)
}

pub fn spectrum_with_limit(op: &PauliOperator, dense_limit: usize) -> Result<Vec<f64>> {
    let dense = op.to_dense_with_limit(dense_limit)?;
    let mut eigs = dense.hermitian_eigenvalues(1e-9)?;
    eigs.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    Ok(eigs)
}

/// Eigenvalues of the partial transpose over `subset`, descending.
pub fn pt_spectrum(op: &PauliOperator, subset: &[usize]) -> Result<Vec<f64>> {
    pt_spectrum_with_limit(op, subset, DEFAULT_DENSE_LIMIT)
}

pub fn pt_spectrum_with_limit(
    op: &PauliOperator,
    subset: &[usize],
    dense_limit: usize,
) -> Result<Vec<f64>> {
    spectrum_with_limit(&op.partial_transpose(subset)?, dense_limit)
}

/// Analytic eigenvalues for operators supported on the identity string and
/// the three uniform strings, on an even number of qubits.
///
/// The uniform strings `X^(x)m`, `Y^(x)m`, `Z^(x)m` commute pairwise for
/// even `m` and multiply to `(-1)^(m/2) I`, so the space splits into four
/// equal sectors labelled by signs `(s1, s2, s3)` with
/// `s1 s2 s3 = (-1)^(m/2)`. Each sector carries eigenvalue
/// `c0 + s1 c1 + s2 c2 + s3 c3` with multiplicity `2^(m-2)`.
///
/// Returns `None` when the operator is outside this family; pairs are
/// `(eigenvalue, multiplicity)` in descending eigenvalue order.
pub fn sector_eigenvalues(op: &PauliOperator) -> Option<Vec<(f64, usize)>> {
    let m = op.n_qubits();
    if m < 2 || m % 2 != 0 {
        return None;
    }
    let mut coeffs = [0.0f64; 4];
    for (s, c) in op.terms() {
        if s.is_identity() {
            coeffs[0] = c;
        } else if *s == PauliString::uniform(Pauli::X, m) {
            coeffs[1] = c;
        } else if *s == PauliString::uniform(Pauli::Y, m) {
            coeffs[2] = c;
        } else if *s == PauliString::uniform(Pauli::Z, m) {
            coeffs[3] = c;
        } else {
            return None;
        }
    }
    let product = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let multiplicity = 1usize << (m - 2);
    let mut eigs = Vec::with_capacity(4);
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let s3 = product / (s1 * s2);
            eigs.push((
                coeffs[0] + s1 * coeffs[1] + s2 * coeffs[2] + s3 * coeffs[3],
                multiplicity,
            ));
        }
    }
    eigs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite eigenvalues"));
    Some(eigs)
}

/// Smallest partial-transpose eigenvalue over `subset`, preferring the
/// sector formula and falling back to the dense eigensolver.
fn min_pt_eigenvalue(op: &PauliOperator, subset: &[usize], dense_limit: usize) -> Result<f64> {
    let pt = op.partial_transpose(subset)?;
    if let Some(sectors) = sector_eigenvalues(&pt) {
        return Ok(sectors
            .iter()
            .map(|(e, _)| *e)
            .fold(f64::INFINITY, f64::min));
    }
    let eigs = spectrum_with_limit(&pt, dense_limit)?;
    Ok(*eigs.last().expect("nonempty spectrum"))
}

/// One [`CutReport`] per bipartition size `1..n_qubits-1`.
///
/// Permutation-invariant operators are scanned with the single
/// representative subset `{0, .., k-1}` per size; anything else scans every
/// subset of each size (up to the configured cap) and reports the subset
/// attaining the smallest eigenvalue.
pub fn cut_scan(op: &PauliOperator, tol: f64) -> Result<Vec<CutReport>> {
    cut_scan_with(
        op,
        &CutScanOptions {
            tol,
            ..CutScanOptions::default()
        },
    )
}

pub fn cut_scan_with(op: &PauliOperator, options: &CutScanOptions) -> Result<Vec<CutReport>> {
    let m = op.n_qubits();
    if m < 2 {
        return Err(Error::InvalidParameter(
            "cut scan needs at least two qubits".into(),
        ));
    }
    let invariant = op.is_permutation_invariant(options.tol);
    let mut reports = Vec::with_capacity(m - 1);
    for size in 1..m {
        let subsets: Vec<Vec<usize>> = if invariant {
            vec![(0..size).collect()]
        } else {
            let all = subsets_of_size(m, size);
            if all.len() > options.max_subsets_per_size {
                return Err(Error::InvalidParameter(format!(
                    "{} subsets of size {size} exceed the scan cap {}",
                    all.len(),
                    options.max_subsets_per_size
                )));
            }
            all
        };
        let mut best = f64::INFINITY;
        let mut representative = subsets[0].clone();
        for subset in subsets {
            let min_eig = min_pt_eigenvalue(op, &subset, options.dense_limit)?;
            if min_eig < best {
                best = min_eig;
                representative = subset;
            }
        }
        reports.push(CutReport {
            subset_size: size,
            min_pt_eigenvalue: best,
            is_ppt: best >= -options.tol,
            representative_subset: representative,
        });
    }
    Ok(reports)
}

fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination in lexicographic order
        let mut i = k;
        while i > 0 {
            i -= 1;
            if current[i] != i + m - k {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}
