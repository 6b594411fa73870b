//! Single-site Pauli labels, quarter-turn phases, and tensor-word strings.
//!
//! A [`PauliString`] is a word over `{I, X, Y, Z}` indexing one tensor-product
//! Pauli operator on a fixed number of qubits. Site 0 is the leftmost tensor
//! factor throughout the crate.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::{Error, Result};

/// Single-qubit Pauli operator label. `I` is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    /// All four labels in index order `I, X, Y, Z`.
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// The three non-identity labels in index order.
    pub const XYZ: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_index(index: usize) -> Result<Pauli> {
        match index {
            0 => Ok(Pauli::I),
            1 => Ok(Pauli::X),
            2 => Ok(Pauli::Y),
            3 => Ok(Pauli::Z),
            _ => Err(Error::InvalidParameter(format!(
                "pauli index {index} outside {{0,1,2,3}}"
            ))),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_label(c: char) -> Result<Pauli> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(Error::InvalidParameter(format!(
                "unknown pauli label {c:?}, expected one of I, X, Y, Z"
            ))),
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Whether `self` and `other` commute as 2x2 matrices.
    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }
}

/// Product `sigma_a sigma_b = omega sigma_c`, returned as `(omega, c)`.
///
/// The phase is always a fourth root of unity: `+1` when one factor is the
/// identity or both are equal, `+/-i` for the cyclic products.
impl std::ops::Mul for Pauli {
    type Output = (Phase, Pauli);

    fn mul(self, rhs: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, rhs) {
            (I, b) => (Phase::PlusOne, b),
            (a, I) => (Phase::PlusOne, a),
            (a, b) if a == b => (Phase::PlusOne, I),
            (X, Y) => (Phase::PlusI, Z),
            (Y, Z) => (Phase::PlusI, X),
            (Z, X) => (Phase::PlusI, Y),
            (Y, X) => (Phase::MinusI, Z),
            (Z, Y) => (Phase::MinusI, X),
            (X, Z) => (Phase::MinusI, Y),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Fourth root of unity attached to single-site Pauli products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    // multiplying fourth roots of unity adds their exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_quarter_turns(self.quarter_turns() + rhs.quarter_turns())
    }
}

impl Phase {
    fn quarter_turns(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    fn from_quarter_turns(turns: u8) -> Phase {
        match turns % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn as_complex(self) -> Complex64 {
        match self {
            Phase::PlusOne => Complex64::new(1.0, 0.0),
            Phase::PlusI => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }
}

/// A word over `{I, X, Y, Z}` indexing one tensor-product Pauli operator.
///
/// Equality, ordering and hashing are site-wise; the ordering agrees with the
/// alphabetical order of the label string (`I < X < Y < Z`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(sites: Vec<Pauli>) -> Result<PauliString> {
        if sites.is_empty() {
            return Err(Error::InvalidParameter(
                "pauli string must have at least one site".into(),
            ));
        }
        Ok(PauliString(sites))
    }

    /// The all-identity word `I^{(x)n}`.
    pub fn identity(n_qubits: usize) -> PauliString {
        assert!(n_qubits >= 1, "pauli string needs at least one site");
        PauliString(vec![Pauli::I; n_qubits])
    }

    /// The uniform word `sigma_p^{(x)n}`.
    pub fn uniform(p: Pauli, n_qubits: usize) -> PauliString {
        assert!(n_qubits >= 1, "pauli string needs at least one site");
        PauliString(vec![p; n_qubits])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn site(&self, index: usize) -> Pauli {
        self.0[index]
    }

    pub fn sites(&self) -> &[Pauli] {
        &self.0
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| **p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|p| *p == Pauli::I)
    }

    /// Copy with the Pauli at `index` replaced.
    pub fn with_site(&self, index: usize, p: Pauli) -> PauliString {
        let mut sites = self.0.clone();
        sites[index] = p;
        PauliString(sites)
    }

    /// Copy with sites `i` and `j` exchanged.
    pub fn with_sites_swapped(&self, i: usize, j: usize) -> PauliString {
        let mut sites = self.0.clone();
        sites.swap(i, j);
        PauliString(sites)
    }

    /// Concatenation `self (x) rhs`.
    pub fn concat(&self, rhs: &PauliString) -> PauliString {
        let mut sites = Vec::with_capacity(self.len() + rhs.len());
        sites.extend_from_slice(&self.0);
        sites.extend_from_slice(&rhs.0);
        PauliString(sites)
    }

    /// Number of `Y` entries among the given sites.
    pub fn y_count_on(&self, sites: &[usize]) -> usize {
        sites.iter().filter(|&&i| self.0[i] == Pauli::Y).count()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.label())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<PauliString> {
        let sites = s
            .chars()
            .map(Pauli::from_label)
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(sites)
    }
}
