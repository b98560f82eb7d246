//! Group commutators `K = P V P† V†` with `V = U Q U†`, and the nested
//! sequence `K₁ = U P₁ U†`, `K_j = P_j† K_{j-1} P_j K_{j-1}†`.

use num_complex::Complex64;
use serde::Serialize;

use super::codespace::codeword_basis;
use super::encoded::EncodedGate;
use super::hierarchy::{dense_level, dense_membership, LEVEL_TOL};
use crate::circuit::dense::{i_pow, inner, is_unitary, pauli_matrix, CMatrix, LocalOperator};
use crate::circuit::{Direction, LayeredCircuit, LocalGate};
use crate::code::StabilizerCode;
use crate::error::{check_dim, Error, Result};
use crate::geometry::Region;
use crate::symplectic::PauliOperator;

/// Largest region on which a dense commutator is built.
pub const LOCAL_DENSE_CAP: usize = 12;

/// The second factor of a commutator: either a Pauli already conjugated, or
/// a circuit and the Pauli it conjugates.
#[derive(Debug, Clone, Copy)]
pub enum Conjugated<'a> {
    Pauli(&'a PauliOperator),
    Circuit { u: &'a LayeredCircuit, q: &'a PauliOperator },
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub backend: super::Backend,
    /// Qubits on which `K` acts nontrivially.
    pub k_support: Region,
    /// Support of `V`, and whether it lies in the forward light cone of `supp Q`.
    pub v_support: Option<Region>,
    pub v_within_cone: Option<bool>,
    /// `K Π = c Π` for a scalar `c`.
    pub acts_as_scalar: Option<bool>,
    pub c: Option<[f64; 2]>,
    /// `±1` when `c` is real of unit modulus.
    pub sign: Option<i8>,
}

fn sign_of(c: Complex64) -> Option<i8> {
    if (c - 1.0).norm() <= LEVEL_TOL {
        Some(1)
    } else if (c + 1.0).norm() <= LEVEL_TOL {
        Some(-1)
    } else {
        None
    }
}

/// `P V P† V†` for Paulis, exact.
fn pauli_commutator(p: &PauliOperator, v: &PauliOperator) -> Result<PauliOperator> {
    p.mul(v)?.mul(&p.dagger())?.mul(&v.dagger())
}

/// Matrix of `circuit` on the register `omega` (every gate must lie inside it).
fn local_circuit_matrix(circuit: &LayeredCircuit, omega: &[usize]) -> Result<CMatrix> {
    let pos = |q: usize| omega.binary_search(&q).ok();
    let mut layers = Vec::new();
    for layer in circuit.layers() {
        let mut mapped = Vec::new();
        for g in layer {
            let support = g
                .support()
                .iter()
                .map(|&q| pos(q).ok_or_else(|| Error::Inconsistency(format!("gate on {q} leaves the local register"))))
                .collect::<Result<Vec<_>>>()?;
            mapped.push(LocalGate::new(g.kind().clone(), support)?);
        }
        layers.push(mapped);
    }
    LayeredCircuit::new(omega.len(), layers)?.circuit_unitary()
}

fn local_pauli(p: &PauliOperator, omega: &[usize]) -> Result<CMatrix> {
    pauli_matrix(&p.project(omega))
}

fn check_local(omega: &Region) -> Result<()> {
    if omega.len() > LOCAL_DENSE_CAP {
        return Err(Error::Resource(format!(
            "dense commutator region has {} qubits, cap is {LOCAL_DENSE_CAP}",
            omega.len()
        )));
    }
    Ok(())
}

/// Restriction of `op` to the codespace as `J† op J`.
fn encoded_matrix(op: &LocalOperator, n: usize, basis: &[Vec<Complex64>]) -> CMatrix {
    let d = basis.len();
    let mut m = CMatrix::zeros(d, d);
    for (c, psi) in basis.iter().enumerate() {
        let mut phi = psi.clone();
        op.apply(&mut phi, n);
        for (r, chi) in basis.iter().enumerate() {
            m[(r, c)] = inner(chi, &phi);
        }
    }
    m
}

/// `K = P V P† V†` and its action on the codespace of `code2`.
///
/// The support of `K` is found by the triviality test: a qubit is outside it
/// iff `K` commutes with `X` and `Z` there.
pub fn commutator_k(code2: &StabilizerCode, p: &PauliOperator, v: Conjugated<'_>) -> Result<CommutatorReport> {
    check_dim(code2.n(), p.num_qubits())?;
    let (vp, cone_info) = match v {
        Conjugated::Pauli(vp) => (Some(vp.clone()), None),
        Conjugated::Circuit { u, q } => {
            check_dim(code2.n(), q.num_qubits())?;
            let cone = u.light_cone(&q.support(), Direction::Forward);
            if u.is_clifford() {
                (Some(u.conjugate_pauli(q)?), Some((u, q, cone)))
            } else {
                (None, Some((u, q, cone)))
            }
        }
    };
    if let Some(vp) = vp {
        check_dim(code2.n(), vp.num_qubits())?;
        let k = pauli_commutator(p, &vp)?;
        if !k.is_identity_up_to_phase() {
            return Err(Error::Inconsistency("Pauli commutator is not a scalar".into()));
        }
        let c = i_pow(k.phase());
        let (v_support, v_within_cone) = match &cone_info {
            Some((_, _, cone)) => (Some(vp.support()), Some(vp.support().is_subset(cone))),
            None => (Some(vp.support()), None),
        };
        return Ok(CommutatorReport {
            backend: super::Backend::Clifford,
            k_support: Region::default(),
            v_support,
            v_within_cone,
            acts_as_scalar: Some(true),
            c: Some([c.re, c.im]),
            sign: sign_of(c),
        });
    }
    let (u, q, cone) = cone_info.expect("dense path has a circuit");
    let omega = p.support().union(&cone);
    check_local(&omega)?;
    let om = omega.as_slice();
    let ur = u.restrict_to_cone(&q.support());
    let um = local_circuit_matrix(&ur, om)?;
    let pm = local_pauli(p, om)?;
    let qm = local_pauli(q, om)?;
    let vm = &um * &qm * um.adjoint();
    let km = &pm * &vm * pm.adjoint() * vm.adjoint();
    let v_op = LocalOperator {
        qubits: om.to_vec(),
        matrix: vm,
    };
    let v_support: Region = v_op.support(LEVEL_TOL).into();
    let k_op = LocalOperator {
        qubits: om.to_vec(),
        matrix: km,
    };
    let k_support: Region = k_op.support(LEVEL_TOL).into();
    let basis = codeword_basis(code2)?;
    let kbar = encoded_matrix(&k_op, code2.n(), &basis);
    let scalar = is_unitary(&kbar, LEVEL_TOL) && dense_membership(&kbar, 0)?;
    let c = scalar.then(|| kbar[(0, 0)]);
    Ok(CommutatorReport {
        backend: super::Backend::Dense,
        k_support,
        v_within_cone: Some(v_support.is_subset(&cone)),
        v_support: Some(v_support),
        acts_as_scalar: Some(scalar),
        c: c.map(|c| [c.re, c.im]),
        sign: c.and_then(sign_of),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NestedStep {
    pub j: usize,
    pub support: Region,
    pub preserves_codespace: bool,
    /// Smallest `m ≤ D` with `K̄_j ∈ 𝒫_m` (0 for a scalar), if any.
    pub encoded_level: Option<usize>,
    /// The bound `D - j` predicted by the induction.
    pub bound: usize,
    pub within_bound: bool,
    /// `c` with `K̄_j = c·I`, when scalar.
    pub scalar: Option<[f64; 2]>,
    pub encoded: Option<EncodedGate>,
    /// Encoded Pauli class, on the Clifford path.
    pub encoded_pauli: Option<PauliOperator>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NestedReport {
    pub d: usize,
    pub backend: super::Backend,
    pub steps: Vec<NestedStep>,
    /// Every `K̄_j ∈ 𝒫_{D-j}` and `K̄_D = ±I`.
    pub chain_holds: bool,
}

/// Computes `K₁ … K_D` for `D = paulis.len()` logical Paulis (the first for
/// `code1`, the rest for `code2`) and checks `K̄_j ∈ 𝒫_{D-j}`.
pub fn nested_commutators(
    code1: &StabilizerCode,
    code2: &StabilizerCode,
    u: &LayeredCircuit,
    paulis: &[PauliOperator],
) -> Result<NestedReport> {
    let d = paulis.len();
    if d == 0 {
        return Err(Error::Parameter("nested commutators need at least one Pauli".into()));
    }
    check_dim(code1.n(), code2.n())?;
    check_dim(code1.n(), u.num_qubits())?;
    for (i, p) in paulis.iter().enumerate() {
        let code = if i == 0 { code1 } else { code2 };
        if !code.is_logical(p)? {
            return Err(Error::Domain(format!("Pauli {i} is not logical")));
        }
    }
    let (backend, steps) = if u.is_clifford() {
        (super::Backend::Clifford, nested_clifford(code2, u, paulis)?)
    } else {
        (super::Backend::Dense, nested_dense(code2, u, paulis)?)
    };
    let chain_holds = steps.iter().all(|s| s.within_bound)
        && steps
            .last()
            .and_then(|s| s.scalar)
            .is_some_and(|[re, im]| sign_of(Complex64::new(re, im)).is_some());
    Ok(NestedReport {
        d,
        backend,
        steps,
        chain_holds,
    })
}

fn nested_clifford(code2: &StabilizerCode, u: &LayeredCircuit, paulis: &[PauliOperator]) -> Result<Vec<NestedStep>> {
    let d = paulis.len();
    let mut steps = Vec::with_capacity(d);
    let mut k = u.conjugate_pauli(&paulis[0])?;
    for j in 1..=d {
        if j > 1 {
            let pj = &paulis[j - 1];
            k = pj.dagger().mul(&k)?.mul(pj)?.mul(&k.dagger())?;
        }
        let class = code2.logical_class(&k)?;
        let level = if class.is_identity_up_to_phase() { 0 } else { 1 };
        let scalar = (level == 0).then(|| {
            let c = i_pow(class.phase());
            [c.re, c.im]
        });
        steps.push(NestedStep {
            j,
            support: k.support(),
            preserves_codespace: true,
            encoded_level: Some(level),
            bound: d - j,
            within_bound: level <= d - j,
            scalar,
            encoded: None,
            encoded_pauli: Some(class),
        });
    }
    Ok(steps)
}

fn nested_dense(code2: &StabilizerCode, u: &LayeredCircuit, paulis: &[PauliOperator]) -> Result<Vec<NestedStep>> {
    let d = paulis.len();
    let first = paulis[0].support();
    let mut omega = u.light_cone(&first, Direction::Forward);
    for p in &paulis[1..] {
        omega = omega.union(&p.support());
    }
    check_local(&omega)?;
    let om = omega.as_slice();
    let um = local_circuit_matrix(&u.restrict_to_cone(&first), om)?;
    let basis = codeword_basis(code2)?;
    let mut km = &um * local_pauli(&paulis[0], om)? * um.adjoint();
    let mut steps = Vec::with_capacity(d);
    for j in 1..=d {
        if j > 1 {
            let pm = local_pauli(&paulis[j - 1], om)?;
            km = pm.adjoint() * &km * &pm * km.adjoint();
        }
        let op = LocalOperator {
            qubits: om.to_vec(),
            matrix: km.clone(),
        };
        let kbar = encoded_matrix(&op, code2.n(), &basis);
        let preserves = is_unitary(&kbar, LEVEL_TOL);
        let (level, scalar, encoded) = if preserves {
            if dense_membership(&kbar, 0)? {
                let c = kbar[(0, 0)];
                (Some(0), Some([c.re, c.im]), Some(EncodedGate::from_matrix(&kbar)?))
            } else {
                let verdict = dense_level(&kbar, d.max(1))?;
                (verdict.level(), None, Some(EncodedGate::from_matrix(&kbar)?))
            }
        } else {
            (None, None, None)
        };
        steps.push(NestedStep {
            j,
            support: op.support(LEVEL_TOL).into(),
            preserves_codespace: preserves,
            encoded_level: level,
            bound: d - j,
            within_bound: level.is_some_and(|l| l <= d - j),
            scalar,
            encoded,
            encoded_pauli: None,
        });
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::library::toric_code;

    #[test]
    fn identity_circuit_gives_pauli_commutators() {
        let code = toric_code(3).unwrap();
        let u = LayeredCircuit::identity(code.n());
        let p = code.logical_x()[0].clone();
        let q = code.logical_z()[0].clone();
        let r = commutator_k(&code, &p, Conjugated::Circuit { u: &u, q: &q }).unwrap();
        assert!(r.k_support.is_empty());
        assert_eq!(r.sign, Some(-1));
        let nested = nested_commutators(&code, &code, &u, &[p.clone(), q.clone()]).unwrap();
        assert!(nested.chain_holds);
        assert_eq!(nested.steps[0].support, p.support());
    }

    #[test]
    fn dense_path_matches_pauli_path_for_clifford_circuits() {
        let code = crate::library::repetition_code(3).unwrap();
        let u = LayeredCircuit::transversal(GateKind::X, &Region::full(3), 3).unwrap();
        // force the dense path by appending a dense identity gate
        let dense_id = LayeredCircuit::transversal(GateKind::Dense(CMatrix::identity(2, 2)), &Region::from_sorted(vec![0]), 3)
            .unwrap();
        let ud = u.compose(&dense_id).unwrap();
        let p = code.logical_z()[0].clone();
        let q = code.logical_x()[0].clone();
        let a = commutator_k(&code, &p, Conjugated::Circuit { u: &u, q: &q }).unwrap();
        let b = commutator_k(&code, &p, Conjugated::Circuit { u: &ud, q: &q }).unwrap();
        assert_eq!(a.sign, b.sign);
        assert_eq!(a.k_support, b.k_support);
        assert_eq!(b.v_within_cone, Some(true));
    }
}
