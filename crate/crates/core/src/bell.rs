//! Dichotomic observables, correlation functions, and the four-term
//! correlation Bell inequality for `2n` parties.
//!
//! The inequality value is
//! `E(1,..,1,1) + E(1,..,1,2) + E(2,..,2,1) - E(2,..,2,2)`,
//! bounded by 2 classically and by `2 sqrt 2` quantum mechanically (the
//! first `2n-1` observables combine into a single dichotomic operator, so
//! the two-party Tsirelson bound applies unchanged).
//!
//! Correlations are evaluated against the state's stored strings only: for a
//! four-term generalised Smolin state each correlation is four products of
//! axis components, independent of the qubit count.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::operator::PauliOperator;
use crate::pauli::{Pauli, PauliString};
use crate::states::noisy_gss;
use crate::{Error, Result};

/// Deviation from unit norm tolerated when validating measurement axes.
pub const AXIS_UNIT_TOL: f64 = 1e-9;

/// Classical bound of the inequality.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// Quantum ceiling `2 sqrt 2`.
pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Unit vector selecting a spin measurement direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    x: f64,
    y: f64,
    z: f64,
}

impl Axis {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Axis> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > AXIS_UNIT_TOL {
            return Err(Error::InvalidParameter(format!(
                "axis ({x}, {y}, {z}) has norm {norm}, expected 1"
            )));
        }
        Ok(Axis { x, y, z })
    }

    pub fn x_hat() -> Axis {
        Axis {
            x: 1.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn y_hat() -> Axis {
        Axis {
            x: 0.0,
            y: 1.0,
            z: 0.0,
        }
    }

    pub fn z_hat() -> Axis {
        Axis {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        }
    }

    /// Components indexed by Pauli label: `X -> x`, `Y -> y`, `Z -> z`.
    pub fn component(&self, p: Pauli) -> f64 {
        match p {
            Pauli::I => 0.0,
            Pauli::X => self.x,
            Pauli::Y => self.y,
            Pauli::Z => self.z,
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Serialize for Axis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y, self.z].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Axis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(deserializer)?;
        Axis::new(x, y, z).map_err(serde::de::Error::custom)
    }
}

/// The two measurement directions available to one party.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiteSettings {
    pub axis1: Axis,
    pub axis2: Axis,
}

/// Per-site measurement choices for all parties.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellSettings {
    pub per_site: Vec<SiteSettings>,
}

impl BellSettings {
    pub fn n_qubits(&self) -> usize {
        self.per_site.len()
    }
}

/// One grid point of a noise sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub chsh_value: f64,
    pub violates: bool,
}

/// Spin observable `x sigma_1 + y sigma_2 + z sigma_3` along a unit axis;
/// eigenvalues are exactly +/-1.
pub fn observable_from_axis(axis: &Axis) -> PauliOperator {
    let mut op = PauliOperator::zero(1);
    for p in Pauli::XYZ {
        op.add_term(PauliString::uniform(p, 1), axis.component(p))
            .expect("single-site term");
    }
    op
}

/// The settings attaining the maximal value on the generalised Smolin
/// family: sites `1..2n-1` measure along `x` or `y`, the last site along
/// `(x+y)/sqrt 2` or `(x-y)/sqrt 2`.
pub fn canonical_settings(n_qubits: usize) -> Result<BellSettings> {
    if n_qubits < 2 || n_qubits % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "settings need an even qubit count >= 2, got {n_qubits}"
        )));
    }
    let inv = 1.0 / std::f64::consts::SQRT_2;
    let mut per_site = vec![
        SiteSettings {
            axis1: Axis::x_hat(),
            axis2: Axis::y_hat(),
        };
        n_qubits - 1
    ];
    per_site.push(SiteSettings {
        axis1: Axis::new(inv, inv, 0.0)?,
        axis2: Axis::new(inv, -inv, 0.0)?,
    });
    Ok(BellSettings { per_site })
}

/// Correlation `Tr[rho O_1 (x) ... (x) O_2n]` for one axis choice per site.
///
/// Expands the product of per-site axis decompositions against the state's
/// stored strings only; a string contributes the product of its matching
/// axis components and any identity site kills the contribution.
pub fn correlation(state: &PauliOperator, choice: &[Axis]) -> Result<f64> {
    if choice.len() != state.n_qubits() {
        return Err(Error::QubitCountMismatch {
            left: state.n_qubits(),
            right: choice.len(),
        });
    }
    let mut value = 0.0;
    'terms: for (s, c) in state.terms() {
        let mut product = c;
        for (site, p) in s.sites().iter().enumerate() {
            if *p == Pauli::I {
                continue 'terms;
            }
            product *= 2.0 * choice[site].component(*p);
        }
        value += product;
    }
    Ok(value)
}

/// Value of the four-term inequality for the given settings.
pub fn chsh_value(state: &PauliOperator, settings: &BellSettings) -> Result<f64> {
    let m = state.n_qubits();
    if settings.n_qubits() != m {
        return Err(Error::QubitCountMismatch {
            left: m,
            right: settings.n_qubits(),
        });
    }
    let choose = |first_block: fn(&SiteSettings) -> Axis, last: fn(&SiteSettings) -> Axis| {
        let mut axes: Vec<Axis> = settings.per_site[..m - 1].iter().map(first_block).collect();
        axes.push(last(&settings.per_site[m - 1]));
        axes
    };
    let a1 = |s: &SiteSettings| s.axis1;
    let a2 = |s: &SiteSettings| s.axis2;
    let value = correlation(state, &choose(a1, a1))?
        + correlation(state, &choose(a1, a2))?
        + correlation(state, &choose(a2, a1))?
        - correlation(state, &choose(a2, a2))?;
    debug_assert!(
        value.abs() <= TSIRELSON_BOUND + 1e-9,
        "inequality value {value} exceeds the quantum ceiling"
    );
    Ok(value)
}

/// Inequality values of the noisy family at the canonical settings, one row
/// per grid point. A row violates when `|value| > 2`.
pub fn sweep(n: usize, p_grid: &[f64]) -> Result<Vec<SweepRow>> {
    let settings = canonical_settings(2 * n)?;
    p_grid
        .iter()
        .map(|&p| {
            let state = noisy_gss(n, p)?;
            let value = chsh_value(&state, &settings)?;
            Ok(SweepRow {
                p,
                chsh_value: value,
                violates: value.abs() > CLASSICAL_BOUND,
            })
        })
        .collect()
}
