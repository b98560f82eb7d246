//! Breadth-first closure of a gate set inside a hierarchy level.

use std::collections::HashSet;

use serde::Serialize;

use super::encoded::EncodedGate;
use super::hierarchy::{check_square_unitary, PauliTable};
use crate::circuit::dense::{normalize_phase, CMatrix};
use crate::error::{Error, Result};

/// Largest `k` accepted by the closure search.
pub const CLOSURE_MAX_K: usize = 2;
pub const DEFAULT_STATE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    /// No product within the bound left `𝒫_D`.
    pub closed_within_pd: bool,
    /// The frontier emptied, so the generated set is finite and fully listed.
    pub terminated: bool,
    /// Shortest escaping word as gate indices, leftmost factor applied last.
    pub escape_word: Option<Vec<usize>>,
    /// Length of the escaping word.
    pub s_observed: Option<usize>,
    /// Distinct elements up to global phase, identity included.
    pub elements: usize,
    /// Number of new elements found at each word length.
    pub layer_sizes: Vec<usize>,
}

/// Phase-normalised entries rounded to a 1e-9 grid.
fn fingerprint(m: &CMatrix) -> Vec<(i64, i64)> {
    let (n, _) = normalize_phase(m, 1e-9);
    n.iter().map(|z| ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)).collect()
}

/// Generates all products of `gates` up to length `step_bound`, modulo global
/// phase, and tests each against `𝒫_D`. Every input gate must already be in
/// `𝒫_D`.
pub fn group_closure(gates: &[EncodedGate], d: usize, step_bound: usize) -> Result<ClosureReport> {
    group_closure_with_budget(gates, d, step_bound, DEFAULT_STATE_BUDGET)
}

pub fn group_closure_with_budget(
    gates: &[EncodedGate],
    d: usize,
    step_bound: usize,
    budget: usize,
) -> Result<ClosureReport> {
    if gates.is_empty() {
        return Err(Error::Parameter("closure needs at least one gate".into()));
    }
    if d == 0 {
        return Err(Error::Parameter("D must be at least 1".into()));
    }
    let mats = gates.iter().map(EncodedGate::to_matrix).collect::<Result<Vec<_>>>()?;
    let k = check_square_unitary(&mats[0])?;
    if k > CLOSURE_MAX_K {
        return Err(Error::Parameter(format!("closure supports k <= {CLOSURE_MAX_K}, got {k}")));
    }
    if mats.iter().any(|m| m.nrows() != mats[0].nrows()) {
        return Err(Error::Parameter("all gates must act on the same number of qubits".into()));
    }
    let table = PauliTable::new(k)?;
    for (i, m) in mats.iter().enumerate() {
        if !table.in_level(m, d) {
            return Err(Error::Validation(format!("gate {i} is not in level {d}")));
        }
    }
    let dim = mats[0].nrows();
    let mut seen: HashSet<Vec<(i64, i64)>> = HashSet::new();
    let identity = CMatrix::identity(dim, dim);
    seen.insert(fingerprint(&identity));
    let mut frontier: Vec<(CMatrix, Vec<usize>)> = vec![(identity, Vec::new())];
    let mut layer_sizes = Vec::new();
    for _ in 0..step_bound {
        let mut next = Vec::new();
        for (w, word) in &frontier {
            for (i, g) in mats.iter().enumerate() {
                let prod = g * w;
                if !seen.insert(fingerprint(&prod)) {
                    continue;
                }
                let mut new_word = Vec::with_capacity(word.len() + 1);
                new_word.push(i);
                new_word.extend_from_slice(word);
                if !table.in_level(&prod, d) {
                    layer_sizes.push(next.len() + 1);
                    return Ok(ClosureReport {
                        closed_within_pd: false,
                        terminated: false,
                        s_observed: Some(new_word.len()),
                        escape_word: Some(new_word),
                        elements: seen.len(),
                        layer_sizes,
                    });
                }
                if seen.len() > budget {
                    return Err(Error::Resource(format!(
                        "closure exceeded {budget} elements after {} full word lengths",
                        layer_sizes.len()
                    )));
                }
                next.push((prod, new_word));
            }
        }
        layer_sizes.push(next.len());
        if next.is_empty() {
            return Ok(ClosureReport {
                closed_within_pd: true,
                terminated: true,
                escape_word: None,
                s_observed: None,
                elements: seen.len(),
                layer_sizes,
            });
        }
        frontier = next;
    }
    Ok(ClosureReport {
        closed_within_pd: true,
        terminated: false,
        escape_word: None,
        s_observed: None,
        elements: seen.len(),
        layer_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{t_matrix, GateKind};

    fn gate(m: &CMatrix) -> EncodedGate {
        EncodedGate::from_matrix(m).unwrap()
    }

    #[test]
    fn single_qubit_clifford_group_has_24_elements() {
        let r = group_closure(&[gate(&GateKind::H.matrix()), gate(&GateKind::S.matrix())], 2, 20).unwrap();
        assert!(r.closed_within_pd && r.terminated);
        assert_eq!(r.elements, 24);
    }

    #[test]
    fn t_alone_is_rejected_at_level_two() {
        let err = group_closure(&[gate(&t_matrix(false))], 2, 4).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn h_and_t_escape_level_three() {
        let r = group_closure(&[gate(&GateKind::H.matrix()), gate(&t_matrix(false))], 3, 6).unwrap();
        assert!(!r.closed_within_pd);
        assert!(r.s_observed.unwrap() <= 6);
    }
}
