//! Clifford-hierarchy membership for small dense unitaries.
//!
//! `𝒫₀` is taken to be the scalars, `𝒫₁` the Paulis up to phase, and `𝒫ⱼ` the
//! unitaries `W` with `W P W† ∈ 𝒫_{j-1}` for every Pauli `P`. Level 2 only
//! checks the `2k` generator images since `𝒫₁` is a group; levels 3 and above
//! check all `4^k` Paulis since `𝒫ⱼ` is not a group for `j ≥ 3`.

use serde::{Serialize, Serializer};

use crate::circuit::dense::{is_unitary, pauli_matrix, CMatrix};
use crate::error::{Error, Result};
use crate::symplectic::{Pauli1, PauliOperator};

/// Largest `k` for the dense recursion.
pub const MAX_DENSE_K: usize = 3;
pub const LEVEL_TOL: f64 = 1e-9;

pub(crate) struct PauliTable {
    k: usize,
    /// All Hermitian Paulis except the identity, with their matrices.
    all: Vec<(PauliOperator, CMatrix)>,
    /// Indices into `all` of `X_i`, `Z_i`.
    generators: Vec<usize>,
}

impl PauliTable {
    pub(crate) fn new(k: usize) -> Result<Self> {
        if k > MAX_DENSE_K {
            return Err(Error::Resource(format!(
                "dense hierarchy recursion is limited to k <= {MAX_DENSE_K}, got {k}"
            )));
        }
        let all: Vec<(PauliOperator, CMatrix)> = PauliOperator::enumerate_all(k)
            .skip(1)
            .map(|p| {
                let m = pauli_matrix(&p).expect("k is small");
                (p, m)
            })
            .collect();
        let mut generators = Vec::with_capacity(2 * k);
        for i in 0..k {
            for lab in [Pauli1::X, Pauli1::Z] {
                let g = PauliOperator::single(k, i, lab);
                generators.push(all.iter().position(|(p, _)| *p == g).expect("enumerated"));
            }
        }
        Ok(PauliTable { k, all, generators })
    }

    fn dim(&self) -> f64 {
        (1usize << self.k) as f64
    }

    fn is_scalar(&self, w: &CMatrix) -> bool {
        let c = w[(0, 0)];
        (c.norm() - 1.0).abs() <= LEVEL_TOL
            && w.iter().enumerate().all(|(idx, z)| {
                let (r, col) = (idx % w.nrows(), idx / w.nrows());
                let target = if r == col { c } else { num_complex::Complex64::new(0.0, 0.0) };
                (z - target).norm() <= LEVEL_TOL
            })
    }

    /// The Pauli proportional to `w`, if any (the identity is reported as `None`
    /// inside `Some`).
    fn pauli_match(&self, w: &CMatrix) -> Option<Option<usize>> {
        if self.is_scalar(w) {
            return Some(None);
        }
        let d = self.dim();
        self.all
            .iter()
            .position(|(_, pm)| {
                // |tr(P w)| = d exactly when w ∝ P (P Hermitian, w unitary)
                let tr: num_complex::Complex64 = pm.iter().zip(w.transpose().iter()).map(|(a, b)| a * b).sum();
                (tr.norm() / d - 1.0).abs() <= LEVEL_TOL
            })
            .map(Some)
    }

    fn conj(w: &CMatrix, p: &CMatrix) -> CMatrix {
        w * p * w.adjoint()
    }

    /// `w ∈ 𝒫_j`.
    pub(crate) fn in_level(&self, w: &CMatrix, j: usize) -> bool {
        match j {
            0 => self.is_scalar(w),
            1 => self.pauli_match(w).is_some(),
            2 => self
                .generators
                .iter()
                .all(|&g| self.in_level(&Self::conj(w, &self.all[g].1), 1)),
            _ => self.all.iter().all(|(_, pm)| self.in_level(&Self::conj(w, pm), j - 1)),
        }
    }

    /// A Pauli `P` with `w P w† P† ∉ 𝒫_{j}`; exists iff `w ∉ 𝒫_{j+1}`.
    pub(crate) fn escape_pauli(&self, w: &CMatrix, j: usize) -> Option<usize> {
        let order = self
            .generators
            .iter()
            .copied()
            .chain((0..self.all.len()).filter(|i| !self.generators.contains(i)));
        for idx in order {
            let pm = &self.all[idx].1;
            let commutator = Self::conj(w, pm) * pm.adjoint();
            if !self.in_level(&commutator, j) {
                return Some(idx);
            }
        }
        None
    }

    pub(crate) fn pauli(&self, idx: usize) -> &PauliOperator {
        &self.all[idx].0
    }
}

/// Level of an operator, or `AboveMax` when it is not in `𝒫_{j_max}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Exact(usize),
    AboveMax,
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Level::Exact(j) => s.serialize_u64(*j as u64),
            Level::AboveMax => s.serialize_str("above_max"),
        }
    }
}

/// `Û P Û† P† ∉ 𝒫_{level-2}`, proving `Û ∉ 𝒫_{level-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub pauli: PauliOperator,
    pub excluded_level: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HierarchyVerdict {
    pub level: Level,
    pub j_max_tested: usize,
    pub certificate: Option<Certificate>,
}

impl HierarchyVerdict {
    pub fn level(&self) -> Option<usize> {
        match self.level {
            Level::Exact(j) => Some(j),
            Level::AboveMax => None,
        }
    }
}

pub(crate) fn check_square_unitary(w: &CMatrix) -> Result<usize> {
    if !w.is_square() || !w.nrows().is_power_of_two() {
        return Err(Error::Domain("gate matrix must be 2^k x 2^k".into()));
    }
    if !is_unitary(w, LEVEL_TOL) {
        return Err(Error::Domain("gate matrix is not unitary".into()));
    }
    Ok(w.nrows().trailing_zeros() as usize)
}

/// Minimal `j ≤ j_max` with `w ∈ 𝒫_j`, with a certificate for `j ≥ 2`.
pub fn dense_level(w: &CMatrix, j_max: usize) -> Result<HierarchyVerdict> {
    if j_max == 0 {
        return Err(Error::Parameter("j_max must be at least 1".into()));
    }
    let k = check_square_unitary(w)?;
    let table = PauliTable::new(k)?;
    for j in 1..=j_max {
        if table.in_level(w, j) {
            let certificate = if j >= 2 {
                let idx = table.escape_pauli(w, j - 2).ok_or_else(|| {
                    Error::Inconsistency(format!("level {j} is not minimal but no escape Pauli exists"))
                })?;
                Some(Certificate {
                    pauli: table.pauli(idx).clone(),
                    excluded_level: j - 2,
                })
            } else {
                None
            };
            return Ok(HierarchyVerdict {
                level: Level::Exact(j),
                j_max_tested: j_max,
                certificate,
            });
        }
    }
    let certificate = table.escape_pauli(w, j_max - 1).map(|idx| Certificate {
        pauli: table.pauli(idx).clone(),
        excluded_level: j_max - 1,
    });
    Ok(HierarchyVerdict {
        level: Level::AboveMax,
        j_max_tested: j_max,
        certificate,
    })
}

/// `w ∈ 𝒫_j` for a dense `2^k × 2^k` unitary (`j = 0` means scalar).
pub fn dense_membership(w: &CMatrix, j: usize) -> Result<bool> {
    let k = check_square_unitary(w)?;
    Ok(PauliTable::new(k)?.in_level(w, j))
}

/// Re-checks a certificate: `w P w† P† ∉ 𝒫_{excluded_level}`.
pub fn verify_certificate(w: &CMatrix, cert: &Certificate) -> Result<bool> {
    let k = check_square_unitary(w)?;
    let table = PauliTable::new(k)?;
    let pm = pauli_matrix(&cert.pauli)?;
    let commutator = w * &pm * w.adjoint() * pm.adjoint();
    Ok(!table.in_level(&commutator, cert.excluded_level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{t_matrix, GateKind};
    use num_complex::Complex64;

    fn ccz() -> CMatrix {
        let mut m = CMatrix::identity(8, 8);
        m[(7, 7)] = Complex64::new(-1.0, 0.0);
        m
    }

    #[test]
    fn textbook_levels() {
        for kind in [GateKind::X, GateKind::Y, GateKind::Z, GateKind::I] {
            assert_eq!(dense_level(&kind.matrix(), 4).unwrap().level, Level::Exact(1));
        }
        for kind in [GateKind::H, GateKind::S, GateKind::Cnot, GateKind::Cz, GateKind::Swap] {
            let v = dense_level(&kind.matrix(), 4).unwrap();
            assert_eq!(v.level, Level::Exact(2), "{kind:?}");
            assert!(verify_certificate(&kind.matrix(), v.certificate.as_ref().unwrap()).unwrap());
        }
        let t = dense_level(&t_matrix(false), 4).unwrap();
        assert_eq!(t.level, Level::Exact(3));
        assert!(verify_certificate(&t_matrix(false), t.certificate.as_ref().unwrap()).unwrap());
        assert_eq!(dense_level(&ccz(), 3).unwrap().level, Level::Exact(3));
    }

    #[test]
    fn sqrt_t_is_level_four() {
        let mut m = CMatrix::identity(2, 2);
        m[(1, 1)] = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_8);
        assert_eq!(dense_level(&m, 4).unwrap().level, Level::Exact(4));
        assert_eq!(dense_level(&m, 3).unwrap().level, Level::AboveMax);
    }

    #[test]
    fn rejects_non_unitary_and_large_k() {
        let m = CMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(dense_level(&m, 2), Err(Error::Domain(_))));
        let big = CMatrix::identity(16, 16);
        assert!(matches!(dense_level(&big, 2), Err(Error::Resource(_))));
    }
}
