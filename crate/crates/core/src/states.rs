//! Constructors for Bell states, Smolin and generalised Smolin states,
//! their noisy mixtures, and the separable eta building blocks.
//!
//! Everything is built in the sparse Pauli representation. A generalised
//! Smolin state on `2n` qubits has exactly four terms: the identity string
//! with coefficient `1/2^(2n)` and the three uniform strings
//! `sigma_i^(x)2n` with coefficient `(-1)^n/2^(2n)`, so the constructions
//! stay cheap far past the dense limit.

use crate::operator::PauliOperator;
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result};

/// Parameters of the noisy generalised Smolin family: the state lives on
/// `2n` qubits and mixes the pure state with weight `p` against white noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GssParams {
    n: usize,
    p: f64,
}

impl GssParams {
    pub fn new(n: usize, p: f64) -> Result<GssParams> {
        check_pair_count(n)?;
        check_noise_weight(p)?;
        Ok(GssParams { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n
    }

    pub fn state(&self) -> PauliOperator {
        noisy_gss(self.n, self.p).expect("parameters validated on construction")
    }
}

/// Diagonal of the 3x3 correlation matrix of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TMatrix {
    pub diag: [f64; 3],
}

impl TMatrix {
    /// Correlation diagonal of the Bell state with index `l`.
    pub fn for_bell_state(l: usize) -> Result<TMatrix> {
        let diag = match l {
            0 => [-1.0, -1.0, -1.0],
            1 => [-1.0, 1.0, 1.0],
            2 => [1.0, -1.0, 1.0],
            3 => [1.0, 1.0, -1.0],
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "bell index {l} outside {{0,1,2,3}}"
                )))
            }
        };
        Ok(TMatrix { diag })
    }
}

/// Sign selector for the eta states and projectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

fn check_pair_count(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("n must be >= 1, got {n}")));
    }
    Ok(())
}

fn check_noise_weight(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "noise weight p must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

fn assert_unit_trace(op: &PauliOperator) {
    let trace = op.trace();
    assert!(
        (trace - 1.0).abs() < 1e-13,
        "constructor produced trace {trace}, expected 1"
    );
}

/// Projector onto a Bell state: `(1/4)[I (x) I + sum_i t_ii sigma_i (x) sigma_i]`.
pub fn bell_state(l: usize) -> Result<PauliOperator> {
    let t = TMatrix::for_bell_state(l)?;
    let mut op = PauliOperator::zero(2);
    op.add_term(PauliString::identity(2), 0.25)?;
    for (i, p) in Pauli::XYZ.iter().enumerate() {
        op.add_term(PauliString::uniform(*p, 2), 0.25 * t.diag[i])?;
    }
    assert_unit_trace(&op);
    Ok(op)
}

/// State on `2n` qubits built by the recursion
/// `rho_{2(k+1)} = (1/4) sum_i U_i rho_{2k} U_i (x) U_i rho_2 U_i`,
/// starting from the singlet projector, where `U_i` puts `sigma_i` on the
/// last qubit of its block.
pub fn gss_recursive(n: usize) -> Result<PauliOperator> {
    check_pair_count(n)?;
    let seed = bell_state(0)?;
    let mut state = seed.clone();
    for _ in 1..n {
        let last = state.n_qubits() - 1;
        let mut next = PauliOperator::zero(state.n_qubits() + 2);
        for k in Pauli::ALL {
            let left = state.conjugate_by_site_pauli(last, k)?;
            let right = seed.conjugate_by_site_pauli(1, k)?;
            next = &next + &left.tensor(&right);
        }
        state = next.scaled(0.25);
    }
    assert_unit_trace(&state);
    Ok(state)
}

/// Closed form of the same family: four terms on `2n` qubits, the identity
/// string with coefficient `1/2^(2n)` and the three uniform strings with
/// coefficient `(-1)^n/2^(2n)`.
pub fn gss_closed(n: usize) -> Result<PauliOperator> {
    check_pair_count(n)?;
    let m = 2 * n;
    let unit = 1.0 / (1u64 << m) as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut op = PauliOperator::zero(m);
    op.add_term(PauliString::identity(m), unit)?;
    for p in Pauli::XYZ {
        op.add_term(PauliString::uniform(p, m), sign * unit)?;
    }
    assert_unit_trace(&op);
    Ok(op)
}

/// `(1-p) I^(x)2n / 2^(2n) + p rho_2n`: the three uniform-string
/// coefficients scale by `p`, the identity coefficient is unchanged.
pub fn noisy_gss(n: usize, p: f64) -> Result<PauliOperator> {
    check_noise_weight(p)?;
    let pure = gss_closed(n)?;
    let m = pure.n_qubits();
    let mut op = PauliOperator::zero(m);
    for (s, c) in pure.terms() {
        let scale = if s.is_identity() { 1.0 } else { p };
        op.add_term(s.clone(), c * scale)?;
    }
    assert_unit_trace(&op);
    Ok(op)
}

/// Fully separable state `(1/2^n)(I^(x)n +/- sigma_k^(x)n)`, the n-fold
/// recursive mixture of `(I +/- sigma_k)/2` projector products.
pub fn eta(k: Pauli, n: usize, sign: Sign) -> Result<PauliOperator> {
    if k == Pauli::I {
        return Err(Error::InvalidParameter(
            "eta requires a non-identity pauli axis".into(),
        ));
    }
    check_pair_count(n)?;
    let unit = 1.0 / (1u64 << n) as f64;
    let mut op = PauliOperator::zero(n);
    op.add_term(PauliString::identity(n), unit)?;
    op.add_term(PauliString::uniform(k, n), sign.factor() * unit)?;
    assert_unit_trace(&op);
    Ok(op)
}

/// Separable decomposition at the `p = 1/3` noise point:
/// `(1/6) sum_k [eta+ (x) eta- + eta- (x) eta+]` for odd `n` and
/// `(1/6) sum_k [eta- (x) eta- + eta+ (x) eta+]` for even `n`.
/// Equals `noisy_gss(n, 1/3)` coefficient for coefficient.
pub fn separable_third(n: usize) -> Result<PauliOperator> {
    check_pair_count(n)?;
    let mut acc = PauliOperator::zero(2 * n);
    for k in Pauli::XYZ {
        let plus = eta(k, n, Sign::Plus)?;
        let minus = eta(k, n, Sign::Minus)?;
        let pair = if n % 2 == 1 {
            &plus.tensor(&minus) + &minus.tensor(&plus)
        } else {
            &minus.tensor(&minus) + &plus.tensor(&plus)
        };
        acc = &acc + &pair;
    }
    let op = acc.scaled(1.0 / 6.0);
    assert_unit_trace(&op);
    Ok(op)
}
