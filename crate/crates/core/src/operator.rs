//! Sparse real-coefficient operators in the Pauli-string basis.
//!
//! A [`PauliOperator`] stores `A = sum_s c_s P_s` as a map from
//! [`PauliString`] to `f64`. Real coefficients on the Hermitian basis make
//! every stored operator Hermitian by construction. Density operators carry
//! their `1/2^n` normalisation inside the coefficients, so tensor products
//! are plainly coefficient-multiplicative.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dense::DenseOperator;
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result, DEFAULT_DENSE_LIMIT, PRUNE_THRESHOLD};

/// Hermitian operator as a sparse expansion over Pauli strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliOperator {
    n_qubits: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliOperator {
    /// Operator with no terms (the zero operator on `n_qubits`).
    pub fn zero(n_qubits: usize) -> PauliOperator {
        assert!(n_qubits >= 1, "operator needs at least one qubit");
        PauliOperator {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator `I^{(x)n}` with coefficient 1.
    pub fn identity(n_qubits: usize) -> PauliOperator {
        let mut op = PauliOperator::zero(n_qubits);
        op.terms.insert(PauliString::identity(n_qubits), 1.0);
        op
    }

    /// Build from `(string, coefficient)` pairs; repeated strings accumulate.
    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<PauliOperator>
    where
        I: IntoIterator<Item = (PauliString, f64)>,
    {
        let mut op = PauliOperator::zero(n_qubits);
        for (s, c) in terms {
            op.add_term(s, c)?;
        }
        Ok(op)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored coefficient of `s`, or 0 when the string is absent.
    pub fn coeff(&self, s: &PauliString) -> f64 {
        self.terms.get(s).copied().unwrap_or(0.0)
    }

    /// Terms in lexicographic string order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(s, c)| (s, *c))
    }

    /// Add `coeff * P_s`, pruning the entry if the result falls below
    /// [`PRUNE_THRESHOLD`].
    pub fn add_term(&mut self, s: PauliString, coeff: f64) -> Result<()> {
        if s.len() != self.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: s.len(),
            });
        }
        if !coeff.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "non-finite coefficient {coeff} for string {s}"
            )));
        }
        let updated = self.coeff(&s) + coeff;
        if updated.abs() < PRUNE_THRESHOLD {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, updated);
        }
        Ok(())
    }

    /// `Tr A = c_identity * 2^n`.
    pub fn trace(&self) -> f64 {
        self.coeff(&PauliString::identity(self.n_qubits)) * (1u64 << self.n_qubits) as f64
    }

    /// All coefficients multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> PauliOperator {
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            let v = c * factor;
            if v.abs() >= PRUNE_THRESHOLD {
                terms.insert(s.clone(), v);
            }
        }
        PauliOperator {
            n_qubits: self.n_qubits,
            terms,
        }
    }

    /// Conjugation `U A U` with `U = sigma_k` acting on one site.
    ///
    /// Each term keeps its string; the coefficient flips sign exactly when the
    /// Pauli at `site` anticommutes with `sigma_k`.
    pub fn conjugate_by_site_pauli(&self, site: usize, k: Pauli) -> Result<PauliOperator> {
        if site >= self.n_qubits {
            return Err(Error::SiteOutOfRange {
                index: site,
                n_qubits: self.n_qubits,
            });
        }
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            let sign = if s.site(site).commutes_with(k) {
                1.0
            } else {
                -1.0
            };
            terms.insert(s.clone(), sign * c);
        }
        Ok(PauliOperator {
            n_qubits: self.n_qubits,
            terms,
        })
    }

    /// Tensor product `self (x) rhs`; qubit counts add, coefficients multiply.
    pub fn tensor(&self, rhs: &PauliOperator) -> PauliOperator {
        let mut terms = BTreeMap::new();
        for (sa, ca) in &self.terms {
            for (sb, cb) in &rhs.terms {
                let v = ca * cb;
                if v.abs() >= PRUNE_THRESHOLD {
                    terms.insert(sa.concat(sb), v);
                }
            }
        }
        PauliOperator {
            n_qubits: self.n_qubits + rhs.n_qubits,
            terms,
        }
    }

    /// Partial transpose over the given sites.
    ///
    /// Transposition maps `sigma_2 -> -sigma_2` and fixes the other Paulis, so
    /// the coefficient of a string flips sign exactly when the string has an
    /// odd number of `Y` entries on `sites`. Applying the same subset twice
    /// returns the original operator.
    pub fn partial_transpose(&self, sites: &[usize]) -> Result<PauliOperator> {
        let mut subset: Vec<usize> = sites.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.n_qubits) {
            return Err(Error::SiteOutOfRange {
                index: bad,
                n_qubits: self.n_qubits,
            });
        }
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            let sign = if s.y_count_on(&subset) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            terms.insert(s.clone(), sign * c);
        }
        Ok(PauliOperator {
            n_qubits: self.n_qubits,
            terms,
        })
    }

    /// `Tr(self * observable) = 2^n sum_s c_s(self) c_s(observable)`.
    ///
    /// Uses the basis orthogonality `Tr(P_s P_t) = 2^n delta_st`; only strings
    /// stored on both sides contribute, so no dense matrices are built.
    pub fn expectation(&self, observable: &PauliOperator) -> Result<f64> {
        if self.n_qubits != observable.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: observable.n_qubits,
            });
        }
        let (small, large) = if self.terms.len() <= observable.terms.len() {
            (self, observable)
        } else {
            (observable, self)
        };
        let mut acc = 0.0;
        for (s, c) in &small.terms {
            if let Some(d) = large.terms.get(s) {
                acc += c * d;
            }
        }
        Ok(acc * (1u64 << self.n_qubits) as f64)
    }

    /// Copy with qubit sites `i` and `j` exchanged.
    pub fn with_sites_swapped(&self, i: usize, j: usize) -> Result<PauliOperator> {
        for &idx in &[i, j] {
            if idx >= self.n_qubits {
                return Err(Error::SiteOutOfRange {
                    index: idx,
                    n_qubits: self.n_qubits,
                });
            }
        }
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            *terms.entry(s.with_sites_swapped(i, j)).or_insert(0.0) += c;
        }
        Ok(PauliOperator {
            n_qubits: self.n_qubits,
            terms,
        })
    }

    /// Whether every transposition of two sites leaves the operator unchanged
    /// within `tol` on coefficients.
    pub fn is_permutation_invariant(&self, tol: f64) -> bool {
        // Adjacent transpositions generate the full symmetric group.
        (0..self.n_qubits.saturating_sub(1)).all(|i| match self.with_sites_swapped(i, i + 1) {
            Ok(swapped) => self.approx_eq(&swapped, tol),
            Err(_) => false,
        })
    }

    /// Coefficient-wise comparison: every string present on either side must
    /// agree within `tol`.
    pub fn approx_eq(&self, rhs: &PauliOperator, tol: f64) -> bool {
        if self.n_qubits != rhs.n_qubits {
            return false;
        }
        self.terms
            .iter()
            .all(|(s, c)| (c - rhs.coeff(s)).abs() <= tol)
            && rhs
                .terms
                .iter()
                .all(|(s, c)| (c - self.coeff(s)).abs() <= tol)
    }

    /// Largest absolute coefficient difference against `rhs`.
    pub fn max_coeff_diff(&self, rhs: &PauliOperator) -> f64 {
        let mut worst = 0.0f64;
        for (s, c) in &self.terms {
            worst = worst.max((c - rhs.coeff(s)).abs());
        }
        for (s, c) in &rhs.terms {
            worst = worst.max((c - self.coeff(s)).abs());
        }
        worst
    }

    /// Dense matrix form, guarded by [`DEFAULT_DENSE_LIMIT`].
    pub fn to_dense(&self) -> Result<DenseOperator> {
        self.to_dense_with_limit(DEFAULT_DENSE_LIMIT)
    }

    /// Dense matrix form with an explicit qubit ceiling.
    pub fn to_dense_with_limit(&self, limit: usize) -> Result<DenseOperator> {
        if self.n_qubits > limit {
            return Err(Error::DenseLimitExceeded {
                n_qubits: self.n_qubits,
                limit,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        for (s, c) in &self.terms {
            for col in 0..dim {
                let (row, phase) = apply_string_to_basis(s, col);
                m[(row, col)] += phase * Complex64::new(*c, 0.0);
            }
        }
        DenseOperator::new(m)
    }

    /// Recover the sparse expansion of a Hermitian matrix.
    ///
    /// Uses `c_s = Tr(M P_s) / 2^n`; coefficients with magnitude below `tol`
    /// are dropped and recovered imaginary parts must stay below `tol`.
    pub fn from_dense(dense: &DenseOperator, tol: f64) -> Result<PauliOperator> {
        let deviation = dense.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        let n_qubits = dense.n_qubits();
        let dim = dense.dim();
        let mut op = PauliOperator::zero(n_qubits);
        let norm = 1.0 / dim as f64;
        for code in 0..(4usize.pow(n_qubits as u32)) {
            let s = string_from_code(code, n_qubits);
            // Tr(M P_s): P_s has one entry per column, so the trace touches
            // one matrix element per basis state.
            let mut acc = Complex64::new(0.0, 0.0);
            for col in 0..dim {
                let (row, phase) = apply_string_to_basis(&s, col);
                acc += dense.matrix()[(col, row)] * phase;
            }
            acc *= norm;
            if acc.im.abs() > tol {
                return Err(Error::NotHermitian {
                    deviation: acc.im.abs(),
                    tol,
                });
            }
            if acc.re.abs() >= tol {
                op.terms.insert(s, acc.re);
            }
        }
        Ok(op)
    }
}

/// `P_s |col> = phase |row>` for a computational basis state, with site 0 as
/// the most significant bit.
pub(crate) fn apply_string_to_basis(s: &PauliString, col: usize) -> (usize, Complex64) {
    let n = s.len();
    let mut row = col;
    let mut phase = Complex64::new(1.0, 0.0);
    for (site, p) in s.sites().iter().enumerate() {
        let bit_pos = n - 1 - site;
        let bit = (col >> bit_pos) & 1;
        match p {
            Pauli::I => {}
            Pauli::X => row ^= 1 << bit_pos,
            Pauli::Y => {
                row ^= 1 << bit_pos;
                // sigma_2 |b> = i (-1)^b |1-b>
                phase *= Complex64::new(0.0, if bit == 0 { 1.0 } else { -1.0 });
            }
            Pauli::Z => {
                if bit == 1 {
                    phase = -phase;
                }
            }
        }
    }
    (row, phase)
}

fn string_from_code(code: usize, n_qubits: usize) -> PauliString {
    let mut sites = vec![Pauli::I; n_qubits];
    let mut c = code;
    for site in (0..n_qubits).rev() {
        sites[site] = Pauli::from_index(c % 4).expect("digit below 4");
        c /= 4;
    }
    PauliString::new(sites).expect("n_qubits >= 1")
}

impl Add for &PauliOperator {
    type Output = PauliOperator;

    fn add(self, rhs: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n_qubits, rhs.n_qubits, "qubit counts differ in +");
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            let entry = out.terms.entry(s.clone()).or_insert(0.0);
            *entry += c;
        }
        out.terms.retain(|_, c| c.abs() >= PRUNE_THRESHOLD);
        out
    }
}

impl Sub for &PauliOperator {
    type Output = PauliOperator;

    fn sub(self, rhs: &PauliOperator) -> PauliOperator {
        self + &rhs.scaled(-1.0)
    }
}

impl Mul<f64> for &PauliOperator {
    type Output = PauliOperator;

    fn mul(self, factor: f64) -> PauliOperator {
        self.scaled(factor)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 (on {} qubits)", self.n_qubits);
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} {s}")?;
        }
        Ok(())
    }
}

// JSON wire format:
// {"n_qubits": m, "terms": [{"coeff": c, "string": "XXYZ..."}]}
// Terms are emitted in lexicographic string order so identical operators
// serialise byte-identically; f64 round-trips exactly through serde_json.
#[derive(Serialize, Deserialize)]
struct TermDto {
    coeff: f64,
    string: String,
}

#[derive(Serialize, Deserialize)]
struct OperatorDto {
    n_qubits: usize,
    terms: Vec<TermDto>,
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = OperatorDto {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermDto {
                    coeff: *c,
                    string: s.to_string(),
                })
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = OperatorDto::deserialize(deserializer)?;
        if dto.n_qubits < 1 {
            return Err(D::Error::custom("n_qubits must be at least 1"));
        }
        let mut op = PauliOperator::zero(dto.n_qubits);
        for term in dto.terms {
            let s: PauliString = term.string.parse().map_err(D::Error::custom)?;
            op.add_term(s, term.coeff).map_err(D::Error::custom)?;
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, gss_closed};

    fn xx() -> PauliString {
        "XX".parse().unwrap()
    }

    #[test]
    fn add_term_accumulates_and_prunes() {
        let mut op = PauliOperator::zero(2);
        op.add_term(xx(), 0.5).unwrap();
        op.add_term(xx(), -0.5).unwrap();
        assert!(op.is_zero());
    }

    #[test]
    fn add_term_rejects_wrong_length() {
        let mut op = PauliOperator::zero(3);
        assert!(op.add_term(xx(), 1.0).is_err());
    }

    #[test]
    fn trace_counts_identity_coefficient() {
        assert!((PauliOperator::identity(3).trace() - 8.0).abs() < 1e-15);
        assert!((bell_state(0).unwrap().trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conjugation_identity_is_noop() {
        let op = bell_state(0).unwrap();
        let conj = op.conjugate_by_site_pauli(1, Pauli::I).unwrap();
        assert_eq!(op, conj);
    }

    #[test]
    fn conjugation_maps_singlet_to_second_bell_state() {
        // U = I (x) sigma_1 sends |psi_0><psi_0| to |psi_1><psi_1|, whose
        // correlation diagonal is [-1, 1, 1].
        let conj = bell_state(0)
            .unwrap()
            .conjugate_by_site_pauli(1, Pauli::X)
            .unwrap();
        assert_eq!(conj, bell_state(1).unwrap());
    }

    #[test]
    fn conjugation_out_of_range_errors() {
        assert!(bell_state(0)
            .unwrap()
            .conjugate_by_site_pauli(2, Pauli::X)
            .is_err());
    }

    #[test]
    fn conjugation_flips_uniform_y_term_of_smolin() {
        let smolin = gss_closed(2).unwrap();
        let conj = smolin.conjugate_by_site_pauli(1, Pauli::Z).unwrap();
        let yyyy: PauliString = "YYYY".parse().unwrap();
        let xxxx: PauliString = "XXXX".parse().unwrap();
        assert!((conj.coeff(&yyyy) + smolin.coeff(&yyyy)).abs() < 1e-15);
        assert!((conj.coeff(&xxxx) + smolin.coeff(&xxxx)).abs() < 1e-15);
    }

    #[test]
    fn tensor_of_identities() {
        let t = PauliOperator::identity(2).tensor(&PauliOperator::identity(2));
        assert_eq!(t, PauliOperator::identity(4));
    }

    #[test]
    fn tensor_with_zero_is_zero() {
        let t = bell_state(0).unwrap().tensor(&PauliOperator::zero(2));
        assert!(t.is_zero());
        assert_eq!(t.n_qubits(), 4);
    }

    #[test]
    fn tensor_term_count_multiplies() {
        let b = bell_state(0).unwrap();
        let t = b.tensor(&b);
        assert_eq!(t.n_qubits(), 4);
        assert_eq!(t.num_terms(), 16);
    }

    #[test]
    fn partial_transpose_empty_subset_is_identity_map() {
        let op = gss_closed(2).unwrap();
        assert_eq!(op.partial_transpose(&[]).unwrap(), op);
    }

    #[test]
    fn partial_transpose_even_subset_fixes_smolin() {
        let op = gss_closed(2).unwrap();
        assert_eq!(op.partial_transpose(&[0, 1]).unwrap(), op);
    }

    #[test]
    fn partial_transpose_single_site_flips_only_uniform_y() {
        let op = gss_closed(2).unwrap();
        let pt = op.partial_transpose(&[0]).unwrap();
        let yyyy: PauliString = "YYYY".parse().unwrap();
        assert!((pt.coeff(&yyyy) + op.coeff(&yyyy)).abs() < 1e-15);
        for (s, c) in op.terms() {
            if *s != yyyy {
                assert!((pt.coeff(s) - c).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn partial_transpose_rejects_bad_site() {
        assert!(gss_closed(2).unwrap().partial_transpose(&[7]).is_err());
    }

    #[test]
    fn expectation_of_identity_is_trace() {
        let rho = bell_state(2).unwrap();
        let id = PauliOperator::identity(2);
        assert!((rho.expectation(&id).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_zz_on_singlet() {
        let rho = bell_state(0).unwrap();
        let zz = PauliOperator::from_terms(2, [("ZZ".parse().unwrap(), 1.0)]).unwrap();
        assert!((rho.expectation(&zz).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_uniform_x_on_smolin() {
        let rho = gss_closed(2).unwrap();
        let obs = PauliOperator::from_terms(4, [("XXXX".parse().unwrap(), 1.0)]).unwrap();
        assert!((rho.expectation(&obs).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_rejects_mismatched_counts() {
        let rho = bell_state(0).unwrap();
        assert!(rho.expectation(&PauliOperator::identity(3)).is_err());
    }

    #[test]
    fn swapping_sites_fixes_uniform_strings() {
        let op = gss_closed(3).unwrap();
        assert_eq!(op.with_sites_swapped(0, 5).unwrap(), op);
        assert!(op.is_permutation_invariant(0.0));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let op = gss_closed(2).unwrap();
        let json = serde_json::to_string(&op).unwrap();
        let back: PauliOperator = serde_json::from_str(&json).unwrap();
        assert_eq!(op, back);
    }

    #[test]
    fn json_shape_matches_wire_format() {
        let op = PauliOperator::from_terms(2, [("XY".parse().unwrap(), 0.25)]).unwrap();
        let json = serde_json::to_string(&op).unwrap();
        assert_eq!(
            json,
            r#"{"n_qubits":2,"terms":[{"coeff":0.25,"string":"XY"}]}"#
        );
    }

    #[test]
    fn json_rejects_bad_strings() {
        let bad = r#"{"n_qubits":2,"terms":[{"coeff":1.0,"string":"XQ"}]}"#;
        assert!(serde_json::from_str::<PauliOperator>(bad).is_err());
        let wrong_len = r#"{"n_qubits":2,"terms":[{"coeff":1.0,"string":"XYZ"}]}"#;
        assert!(serde_json::from_str::<PauliOperator>(wrong_len).is_err());
    }
}
