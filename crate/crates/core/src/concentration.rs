//! Remote information concentration over a generalised Smolin channel.
//!
//! One qubit `a|0> + b|1>` has been telecloned to `M` receivers through the
//! optimal cloning state on `N = 2M - 1` qubits (`M - 1` ancillas, then `M`
//! clones). Every holder measures their qubit jointly with one qubit of a
//! `2M`-qubit channel state in the Bell basis; the last channel qubit
//! belongs to the receiving party, who applies a Pauli correction
//! conditioned on the broadcast outcomes.
//!
//! The protocol is simulated exactly: the channel is eigendecomposed, the
//! joint pure states are contracted against Bell bras pair by pair, and all
//! `4^N` outcome branches are enumerated with shared prefixes. Outcome
//! probabilities, corrected conditional states, per-outcome fidelities with
//! the input qubit, and the probability-weighted average state are reported.

use nalgebra::{DVector, Matrix2};
use num_complex::Complex64;

use crate::dense::StateVector;
use crate::operator::PauliOperator;
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result};

/// Largest clone count simulated densely; the joint system has `4M - 1`
/// qubits and `4^(2M-1)` measurement branches.
pub const DENSE_PROTOCOL_LIMIT: usize = 3;

/// Outcome probabilities below this floor are reported with the fidelity
/// marked undefined instead of dividing by a near-zero trace.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

const DENSITY_TOL: f64 = 1e-9;

/// Clone count and input-qubit amplitudes for one protocol run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CloningParams {
    m: usize,
    a: Complex64,
    b: Complex64,
}

impl CloningParams {
    pub fn new(m: usize, a: Complex64, b: Complex64) -> Result<CloningParams> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "clone count must be >= 2, got {m}"
            )));
        }
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "|a|^2 + |b|^2 = {norm_sq}, expected 1"
            )));
        }
        Ok(CloningParams { m, a, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Measured qubits: `N = 2M - 1`.
    pub fn n_pairs(&self) -> usize {
        2 * self.m - 1
    }

    /// The input qubit `a|0> + b|1>` as a one-qubit ket.
    pub fn input_ket(&self) -> StateVector {
        StateVector::new(vec![self.a, self.b]).expect("two amplitudes")
    }
}

/// One measurement branch of a protocol run.
#[derive(Clone, Debug)]
pub struct OutcomeRecord {
    /// Bell outcome indices `k_1 .. k_N`, one per measured pair.
    pub outcome: Vec<Pauli>,
    pub probability: f64,
    /// Conditional state of the receiving qubit after the Pauli correction;
    /// zero when the probability is below [`PROBABILITY_FLOOR`].
    pub corrected_state: Matrix2<Complex64>,
    /// `<in|rho|in>` against the input qubit, `None` for branches below the
    /// probability floor.
    pub fidelity: Option<f64>,
}

/// Exhaustive protocol output: all `4^N` branches in lexicographic outcome
/// order plus the probability-weighted average of the corrected states.
#[derive(Clone, Debug)]
pub struct ConcentrationResult {
    pub outcomes: Vec<OutcomeRecord>,
    pub average_state: Matrix2<Complex64>,
}

impl ConcentrationResult {
    pub fn probability_sum(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    /// Smallest fidelity among branches above the probability floor.
    pub fn min_defined_fidelity(&self) -> Option<f64> {
        self.outcomes
            .iter()
            .filter_map(|o| o.fidelity)
            .min_by(|x, y| x.partial_cmp(y).expect("finite fidelities"))
    }
}

/// Equal-amplitude superposition of all `n_qubits`-bit strings with exactly
/// `ones` ones.
pub fn symmetric_basis_state(n_qubits: usize, ones: usize) -> Result<StateVector> {
    if n_qubits < 1 {
        return Err(Error::InvalidParameter(
            "symmetric state needs at least one qubit".into(),
        ));
    }
    if ones > n_qubits {
        return Err(Error::InvalidParameter(format!(
            "cannot place {ones} ones on {n_qubits} qubits"
        )));
    }
    let dim = 1usize << n_qubits;
    let strings: Vec<usize> = (0..dim)
        .filter(|b| b.count_ones() as usize == ones)
        .collect();
    let amp = Complex64::new(1.0 / (strings.len() as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for b in strings {
        amps[b] = amp;
    }
    StateVector::new(amps)
}

/// Branch weights of the optimal cloning state:
/// `alpha_j = sqrt(2(M - j) / (M(M + 1)))`.
pub fn cloning_amplitude(m: usize, j: usize) -> f64 {
    (2.0 * (m - j) as f64 / (m * (m + 1)) as f64).sqrt()
}

fn cloning_branch(m: usize, flipped: bool) -> Result<StateVector> {
    let dim = 1usize << (2 * m - 1);
    let mut amps = DVector::<Complex64>::zeros(dim);
    for j in 0..m {
        let (ancilla_ones, clone_ones) = if flipped { (m - 1 - j, m - j) } else { (j, j) };
        let ancilla = symmetric_basis_state(m - 1, ancilla_ones)?;
        let clones = symmetric_basis_state(m, clone_ones)?;
        let product = ancilla.tensor(&clones);
        amps += product.amplitudes() * Complex64::new(cloning_amplitude(m, j), 0.0);
    }
    StateVector::new(amps.iter().copied().collect())
}

/// The optimal cloning state `a|phi_0> + b|phi_1>` on `2M - 1` qubits,
/// ancilla block first. `(a, b) = (1, 0)` returns `|phi_0>` exactly.
pub fn cloning_state(params: &CloningParams) -> Result<StateVector> {
    let phi0 = cloning_branch(params.m, false)?;
    let phi1 = cloning_branch(params.m, true)?;
    let amps = phi0.amplitudes() * params.a + phi1.amplitudes() * params.b;
    let state = StateVector::new(amps.iter().copied().collect())?;
    debug_assert!((state.norm() - 1.0).abs() < 1e-12);
    Ok(state)
}

/// `<psi|rho|psi>` for a one-qubit density matrix and a normalized ket.
pub fn fidelity(rho: &Matrix2<Complex64>, psi: &StateVector) -> Result<f64> {
    if psi.dim() != 2 {
        return Err(Error::InvalidParameter(format!(
            "fidelity audits a single qubit, got a {}-qubit ket",
            psi.n_qubits()
        )));
    }
    if (psi.norm() - 1.0).abs() > DENSITY_TOL {
        return Err(Error::InvalidParameter(format!(
            "ket norm {} is not 1",
            psi.norm()
        )));
    }
    let herm = (rho[(0, 1)] - rho[(1, 0)].conj())
        .norm()
        .max((rho[(0, 0)].im).abs())
        .max((rho[(1, 1)].im).abs());
    if herm > DENSITY_TOL {
        return Err(Error::NotHermitian {
            deviation: herm,
            tol: DENSITY_TOL,
        });
    }
    let trace = (rho[(0, 0)] + rho[(1, 1)]).re;
    if (trace - 1.0).abs() > DENSITY_TOL {
        return Err(Error::NotDensityOperator(format!("trace {trace} is not 1")));
    }
    let mut value = Complex64::new(0.0, 0.0);
    for r in 0..2 {
        for c in 0..2 {
            value += psi.amplitude(r).conj() * rho[(r, c)] * psi.amplitude(c);
        }
    }
    Ok(value.re)
}

/// Pauli correction for one outcome tuple: the product
/// `sigma_2^(M+1 mod 2) sigma_k1 ... sigma_kN` up to an overall phase,
/// which conjugation discards.
pub fn correction_pauli(m: usize, outcome: &[Pauli]) -> Pauli {
    let seed = if m % 2 == 0 { Pauli::Y } else { Pauli::I };
    outcome.iter().fold(seed, |acc, k| (acc * *k).1)
}

fn sigma_matrix(p: Pauli) -> Matrix2<Complex64> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match p {
        Pauli::I => Matrix2::new(one, z, z, one),
        Pauli::X => Matrix2::new(z, one, one, z),
        Pauli::Y => Matrix2::new(z, -i, i, z),
        Pauli::Z => Matrix2::new(one, z, z, -one),
    }
}

fn conjugate_by_pauli(mat: &Matrix2<Complex64>, p: Pauli) -> Matrix2<Complex64> {
    if p == Pauli::I {
        return *mat;
    }
    let s = sigma_matrix(p);
    s * mat * s
}

/// Closed-form probability-weighted average of the corrected output when the
/// channel is the `2M`-qubit generalised Smolin state:
/// `(1/2)[lambda_0 I + (-1)^(M+1) sigma_2^(M+1 mod 2) (lambda . sigma) sigma_2^(M+1 mod 2)]`
/// with `lambda_r = <Psi_c| sigma_r^(x)N |Psi_c>`.
pub fn expected_average_state(params: &CloningParams) -> Result<Matrix2<Complex64>> {
    let psi = cloning_state(params)?;
    let n = params.n_pairs();
    let lambda0 = psi.norm().powi(2);
    let mut spin = Matrix2::<Complex64>::zeros();
    for p in Pauli::XYZ {
        let rotated = psi.apply_pauli_string(&PauliString::uniform(p, n))?;
        let lambda = psi.inner(&rotated)?;
        debug_assert!(lambda.im.abs() < 1e-12);
        spin += sigma_matrix(p) * Complex64::new(lambda.re, 0.0);
    }
    let corrected = if params.m % 2 == 0 {
        conjugate_by_pauli(&spin, Pauli::Y)
    } else {
        spin
    };
    let sign = if params.m % 2 == 0 { -1.0 } else { 1.0 };
    let avg = (Matrix2::identity() * Complex64::new(lambda0, 0.0)
        + corrected * Complex64::new(sign, 0.0))
    .map(|z| z * 0.5);
    Ok(avg)
}

// Bell-state amplitudes indexed by (first bit)*2 + (second bit).
fn bell_amplitudes() -> [[Complex64; 4]; 4] {
    let z = Complex64::new(0.0, 0.0);
    let s = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
    [
        [z, s, -s, z], // (|01> - |10>)/sqrt 2
        [s, z, z, -s], // (|00> - |11>)/sqrt 2
        [s, z, z, s],  // (|00> + |11>)/sqrt 2
        [z, s, s, z],  // (|01> + |10>)/sqrt 2
    ]
}

/// Contract `<bra|` on the qubit pair at MSB-first positions
/// `(pos_a, pos_b)`, `pos_a < pos_b`, producing a vector on two fewer
/// qubits with the remaining order preserved.
fn contract_pair(
    amps: &[Complex64],
    n_qubits: usize,
    pos_a: usize,
    pos_b: usize,
    bra: &[Complex64; 4],
) -> Vec<Complex64> {
    debug_assert!(pos_a < pos_b && pos_b < n_qubits);
    let bit_a = n_qubits - 1 - pos_a;
    let bit_b = n_qubits - 1 - pos_b;
    let mid_bits = bit_a - bit_b - 1;
    let low_mask = (1usize << bit_b) - 1;
    let mid_mask = ((1usize << mid_bits) - 1) << (bit_b + 1);
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << (n_qubits - 2)];
    for (idx, amp) in amps.iter().enumerate() {
        let weight = bra[((idx >> bit_a) & 1) * 2 + ((idx >> bit_b) & 1)].conj();
        if weight.norm_sqr() == 0.0 {
            continue;
        }
        let o = ((idx >> (bit_a + 1)) << (bit_b + mid_bits))
            | ((idx & mid_mask) >> 1)
            | (idx & low_mask);
        out[o] += weight * amp;
    }
    out
}

/// Walk all outcome branches of one channel eigenvector, sharing contraction
/// prefixes. At recursion depth `level` the protocol qubit for pair `level`
/// sits at position 0 and its channel partner at position `N - level`.
#[allow(clippy::too_many_arguments)]
fn accumulate_branches(
    amps: Vec<Complex64>,
    n_qubits: usize,
    level: usize,
    n_pairs: usize,
    weight: f64,
    bells: &[[Complex64; 4]; 4],
    prefix: usize,
    acc: &mut [Matrix2<Complex64>],
) {
    if level == n_pairs {
        debug_assert_eq!(amps.len(), 2);
        let w = Complex64::new(weight, 0.0);
        let slot = &mut acc[prefix];
        for r in 0..2 {
            for c in 0..2 {
                slot[(r, c)] += w * amps[r] * amps[c].conj();
            }
        }
        return;
    }
    let partner = n_pairs - level;
    for (k, bra) in bells.iter().enumerate() {
        let next = contract_pair(&amps, n_qubits, 0, partner, bra);
        accumulate_branches(
            next,
            n_qubits - 2,
            level + 1,
            n_pairs,
            weight,
            bells,
            prefix * 4 + k,
            acc,
        );
    }
}

/// Run the protocol against an arbitrary `2M`-qubit channel state.
///
/// Protocol qubit `i` (ancillas first, then clones) measures jointly with
/// channel qubit `i`; the last channel qubit is the receiver's. All `4^N`
/// Bell outcome tuples are enumerated exactly, each with its probability,
/// corrected conditional state, and fidelity against the input qubit.
pub fn run_concentration(
    params: &CloningParams,
    channel: &PauliOperator,
) -> Result<ConcentrationResult> {
    let m = params.m();
    if m > DENSE_PROTOCOL_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "clone count {m} exceeds the dense protocol limit {DENSE_PROTOCOL_LIMIT}"
        )));
    }
    if channel.n_qubits() != 2 * m {
        return Err(Error::QubitCountMismatch {
            left: 2 * m,
            right: channel.n_qubits(),
        });
    }
    let dense = channel.to_dense()?;
    let trace = dense.trace();
    if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
        return Err(Error::NotDensityOperator(format!(
            "channel trace {trace} is not 1"
        )));
    }
    let deviation = dense.hermiticity_deviation();
    if deviation > DENSITY_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tol: DENSITY_TOL,
        });
    }
    let eigen = nalgebra::linalg::SymmetricEigen::new(dense.matrix().clone());
    if let Some(min) = eigen
        .eigenvalues
        .iter()
        .copied()
        .reduce(f64::min)
        .filter(|min| *min < -DENSITY_TOL)
    {
        return Err(Error::NotDensityOperator(format!(
            "channel has negative eigenvalue {min}"
        )));
    }

    let psi_c = cloning_state(params)?;
    let n_pairs = params.n_pairs();
    let n_outcomes = 4usize.pow(n_pairs as u32);
    let bells = bell_amplitudes();
    let mut acc = vec![Matrix2::<Complex64>::zeros(); n_outcomes];
    for (idx, &q) in eigen.eigenvalues.iter().enumerate() {
        if q <= PROBABILITY_FLOOR {
            continue;
        }
        let chi = eigen.eigenvectors.column(idx);
        let joint: Vec<Complex64> = psi_c
            .amplitudes()
            .iter()
            .flat_map(|&pa| chi.iter().map(move |&ca| pa * ca))
            .collect();
        accumulate_branches(joint, 4 * m - 1, 0, n_pairs, q, &bells, 0, &mut acc);
    }

    let input = params.input_ket();
    let mut outcomes = Vec::with_capacity(n_outcomes);
    let mut average = Matrix2::<Complex64>::zeros();
    for (index, mat) in acc.into_iter().enumerate() {
        let outcome = outcome_digits(index, n_pairs);
        let correction = correction_pauli(m, &outcome);
        let corrected_raw = conjugate_by_pauli(&mat, correction);
        average += corrected_raw;
        let probability = corrected_raw.trace().re;
        let (corrected_state, fid) = if probability < PROBABILITY_FLOOR {
            (Matrix2::zeros(), None)
        } else {
            let state = corrected_raw.map(|z| z / probability);
            let fid = fidelity(&state, &input)?;
            (state, Some(fid))
        };
        outcomes.push(OutcomeRecord {
            outcome,
            probability,
            corrected_state,
            fidelity: fid,
        });
    }
    Ok(ConcentrationResult {
        outcomes,
        average_state: average,
    })
}

fn outcome_digits(index: usize, n_pairs: usize) -> Vec<Pauli> {
    let mut digits = vec![Pauli::I; n_pairs];
    let mut rest = index;
    for slot in (0..n_pairs).rev() {
        digits[slot] = Pauli::from_index(rest % 4).expect("digit below 4");
        rest /= 4;
    }
    digits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::gss_closed;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(m: usize, a: Complex64, b: Complex64) -> CloningParams {
        CloningParams::new(m, a, b).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(CloningParams::new(1, c(1.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(CloningParams::new(2, c(1.0, 0.0), c(0.5, 0.0)).is_err());
        assert!(CloningParams::new(2, c(0.6, 0.0), c(0.0, 0.8)).is_ok());
    }

    #[test]
    fn symmetric_state_two_qubits_one_excitation() {
        let s = symmetric_basis_state(2, 1).unwrap();
        let inv = 1.0 / 2.0f64.sqrt();
        assert!((s.amplitude(0b01) - c(inv, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(0b10) - c(inv, 0.0)).norm() < 1e-15);
        assert!(s.amplitude(0b00).norm() < 1e-15);
    }

    #[test]
    fn symmetric_state_all_zeros() {
        let s = symmetric_basis_state(3, 0).unwrap();
        assert!((s.amplitude(0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn symmetric_state_three_choose_two() {
        let s = symmetric_basis_state(3, 2).unwrap();
        let inv = 1.0 / 3.0f64.sqrt();
        for b in [0b011, 0b101, 0b110] {
            assert!((s.amplitude(b) - c(inv, 0.0)).norm() < 1e-15);
        }
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_state_rejects_too_many_ones() {
        assert!(symmetric_basis_state(2, 3).is_err());
    }

    #[test]
    fn cloning_amplitudes_for_two_clones() {
        assert!((cloning_amplitude(2, 0) - (2.0 / 3.0f64).sqrt()).abs() < 1e-15);
        assert!((cloning_amplitude(2, 1) - (1.0 / 3.0f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cloning_amplitudes_normalize_telescopically() {
        for m in 2..=6 {
            let total: f64 = (0..m).map(|j| cloning_amplitude(m, j).powi(2)).sum();
            assert!((total - 1.0).abs() < 1e-12, "M={m}: sum {total}");
        }
    }

    #[test]
    fn pure_input_reproduces_first_branch() {
        let p = params(2, c(1.0, 0.0), c(0.0, 0.0));
        let state = cloning_state(&p).unwrap();
        let branch = cloning_branch(2, false).unwrap();
        assert!((state.amplitudes() - branch.amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn uniform_x_word_swaps_branches() {
        for m in 2..=3 {
            let n = 2 * m - 1;
            let phi0 = cloning_branch(m, false).unwrap();
            let phi1 = cloning_branch(m, true).unwrap();
            let word = PauliString::uniform(Pauli::X, n);
            let mapped = phi0.apply_pauli_string(&word).unwrap();
            assert!((mapped.amplitudes() - phi1.amplitudes()).norm() < 1e-13);
        }
    }

    #[test]
    fn correction_pauli_composition() {
        // M even starts from sigma_2
        assert_eq!(
            correction_pauli(2, &[Pauli::I, Pauli::I, Pauli::I]),
            Pauli::Y
        );
        assert_eq!(
            correction_pauli(2, &[Pauli::Y, Pauli::I, Pauli::I]),
            Pauli::I
        );
        // M odd starts from the identity
        assert_eq!(
            correction_pauli(3, &[Pauli::X, Pauli::X, Pauli::I, Pauli::I, Pauli::I]),
            Pauli::I
        );
        assert_eq!(
            correction_pauli(3, &[Pauli::X, Pauli::Z, Pauli::I, Pauli::I, Pauli::I]),
            Pauli::Y
        );
    }

    #[test]
    fn fidelity_basics() {
        let ket = StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let pure = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!((fidelity(&pure, &ket).unwrap() - 1.0).abs() < 1e-15);
        let mixed = Matrix2::new(c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert!((fidelity(&mixed, &ket).unwrap() - 0.5).abs() < 1e-15);
        let inv = 1.0 / 2.0f64.sqrt();
        let plus = StateVector::new(vec![c(inv, 0.0), c(inv, 0.0)]).unwrap();
        assert!((fidelity(&pure, &plus).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_rejects_bad_inputs() {
        let long =
            StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let rho = Matrix2::new(c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert!(fidelity(&rho, &long).is_err());
        let ket = StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let skew = Matrix2::new(c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert!(fidelity(&skew, &ket).is_err());
    }

    #[test]
    fn contract_pair_matches_manual_projection() {
        // three qubits, project pair (0, 2) onto |00> + |11>
        let inv = 1.0 / 2.0f64.sqrt();
        let bra = [c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)];
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0b000] = c(0.5, 0.0);
        amps[0b101] = c(0.5, 0.0);
        amps[0b010] = c(0.5, 0.0);
        amps[0b111] = c(0.5, 0.0);
        let out = contract_pair(&amps, 3, 0, 2, &bra);
        // <00| x_a . x_b> picks amplitudes with equal outer bits
        assert_eq!(out.len(), 2);
        assert!((out[0] - c(inv * 0.5 + inv * 0.5, 0.0)).norm() < 1e-15);
        assert!((out[1] - c(inv * 0.5 + inv * 0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn maximally_mixed_channel_erases_the_input() {
        let mixed = PauliOperator::identity(4).scaled(1.0 / 16.0);
        let p = params(2, c(0.6, 0.0), c(0.0, 0.8));
        let result = run_concentration(&p, &mixed).unwrap();
        assert!((result.probability_sum() - 1.0).abs() < 1e-10);
        for record in &result.outcomes {
            let rho = record.corrected_state;
            assert!((rho[(0, 0)].re - 0.5).abs() < 1e-10);
            assert!((rho[(1, 1)].re - 0.5).abs() < 1e-10);
            assert!(rho[(0, 1)].norm() < 1e-10);
            assert!((record.fidelity.unwrap() - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn gss_channel_has_uniform_outcome_probabilities() {
        let p = params(2, c(1.0, 0.0), c(0.0, 0.0));
        let channel = gss_closed(2).unwrap();
        let result = run_concentration(&p, &channel).unwrap();
        let expected = 1.0 / 64.0;
        for record in &result.outcomes {
            assert!((record.probability - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn gss_channel_recovers_the_input_qubit() {
        let inv = 1.0 / 2.0f64.sqrt();
        let p = params(2, c(inv, 0.0), c(inv, 0.0));
        let channel = gss_closed(2).unwrap();
        let result = run_concentration(&p, &channel).unwrap();
        let min = result.min_defined_fidelity().unwrap();
        assert!(min > 1.0 - 1e-9, "worst branch fidelity {min}");
        let expected = expected_average_state(&p).unwrap();
        assert!((result.average_state - expected).norm() < 1e-10);
    }

    #[test]
    fn channel_swap_leaves_gss_run_unchanged() {
        // pairing is equivalent under any channel-site permutation
        let p = params(2, c(0.6, 0.0), c(0.0, 0.8));
        let channel = gss_closed(2).unwrap();
        let swapped = channel.with_sites_swapped(0, 2).unwrap();
        let base = run_concentration(&p, &channel).unwrap();
        let permuted = run_concentration(&p, &swapped).unwrap();
        for (x, y) in base.outcomes.iter().zip(&permuted.outcomes) {
            assert!((x.probability - y.probability).abs() < 1e-12);
            assert!((x.corrected_state - y.corrected_state).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_channels_and_sizes() {
        let p = params(2, c(1.0, 0.0), c(0.0, 0.0));
        assert!(run_concentration(&p, &gss_closed(3).unwrap()).is_err());
        let unnormalized = PauliOperator::identity(4);
        assert!(run_concentration(&p, &unnormalized).is_err());
        let big = params(4, c(1.0, 0.0), c(0.0, 0.0));
        assert!(run_concentration(&big, &gss_closed(4).unwrap()).is_err());
    }
}
