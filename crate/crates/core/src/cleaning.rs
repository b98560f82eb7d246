//! Region correctability, operator cleaning, and the union check.
//!
//! A region is correctable when every Pauli supported in it that commutes with
//! the stabilizer group is itself (up to phase) a stabilizer. Both groups are
//! computed exactly as GF(2) spaces restricted to the region.

use serde::Serialize;

use crate::code::{stabilizers_inside, StabilizerCode};
use crate::error::{check_dim, Error, Result};
use crate::geometry::Region;
use crate::symplectic::{BitMatrix, BitVector, PauliOperator, RowSpace};

#[derive(Debug, Clone, Serialize)]
pub struct CorrectabilityReport {
    pub region: Region,
    pub correctable: bool,
    /// A nontrivial logical supported in the region, when not correctable.
    pub witness: Option<PauliOperator>,
    /// Dimension of the centralizer restricted to the region.
    pub centralizer_dim: usize,
    /// Dimension of the stabilizer group restricted to the region.
    pub stabilizer_dim: usize,
}

fn check_region(code: &StabilizerCode, region: &Region) -> Result<()> {
    match region.max_index() {
        Some(q) if q >= code.n() => Err(Error::Parameter(format!(
            "region qubit {q} out of range for n = {}",
            code.n()
        ))),
        _ => Ok(()),
    }
}

/// Basis of the Paulis supported in `region` that commute with every
/// generator, as Hermitian operators.
fn centralizer_inside(code: &StabilizerCode, region: &Region) -> Vec<PauliOperator> {
    let n = code.n();
    let m = region.len();
    // variable 2j is x on region[j], 2j+1 is z on region[j]
    let rows = code
        .generators()
        .iter()
        .map(|g| {
            let mut row = BitVector::zeros(2 * m);
            for (j, q) in region.iter().enumerate() {
                row.set(2 * j, g.z_bits().get(q));
                row.set(2 * j + 1, g.x_bits().get(q));
            }
            row
        })
        .collect();
    let constraints = BitMatrix::from_rows(2 * m, rows).expect("consistent widths");
    constraints
        .kernel()
        .into_iter()
        .map(|v| {
            let mut x = BitVector::zeros(n);
            let mut z = BitVector::zeros(n);
            for (j, q) in region.iter().enumerate() {
                x.set(q, v.get(2 * j));
                z.set(q, v.get(2 * j + 1));
            }
            PauliOperator::hermitian(x, z)
        })
        .collect()
}

pub fn is_correctable(code: &StabilizerCode, region: &Region) -> Result<CorrectabilityReport> {
    check_region(code, region)?;
    let stabs = stabilizers_inside(code, region);
    let stabilizer_dim = stabs.len();
    let cent = centralizer_inside(code, region);
    let centralizer_dim = cent.len();
    let span = RowSpace::from_vectors(2 * code.n(), stabs.iter());
    let witness = if centralizer_dim == stabilizer_dim {
        None
    } else {
        cent.into_iter().find(|p| !span.contains(&p.symplectic()))
    };
    if (witness.is_none()) != (centralizer_dim == stabilizer_dim) {
        return Err(Error::Inconsistency(format!(
            "restricted dimensions {centralizer_dim} vs {stabilizer_dim} disagree with the witness search"
        )));
    }
    Ok(CorrectabilityReport {
        region: region.clone(),
        correctable: witness.is_none(),
        witness,
        centralizer_dim,
        stabilizer_dim,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CleanResult {
    pub input: PauliOperator,
    pub cleaned: PauliOperator,
    /// Generator combination `S` with `cleaned = input · S`.
    pub stabilizer_combination: Vec<usize>,
    /// `class(cleaned) = sign · class(input)`.
    pub sign: i8,
}

/// Multiplies the logical `p` by a stabilizer so that the result acts trivially
/// on `region`. Among solutions, the one with all free generator coefficients
/// zero in the reduced system is returned.
pub fn clean(code: &StabilizerCode, p: &PauliOperator, region: &Region) -> Result<CleanResult> {
    check_dim(code.n(), p.num_qubits())?;
    check_region(code, region)?;
    if !code.is_logical(p)? {
        return Err(Error::Domain(format!("{p} is not a logical operator")));
    }
    let gens = code.generators();
    let m = region.len();
    // rows are (x, z) coordinates on the region, columns are generators
    let mut rows = Vec::with_capacity(2 * m);
    let mut rhs = BitVector::zeros(2 * m);
    for (j, q) in region.iter().enumerate() {
        rows.push(BitVector::from_bools(&gens.iter().map(|g| g.x_bits().get(q)).collect::<Vec<_>>()));
        rows.push(BitVector::from_bools(&gens.iter().map(|g| g.z_bits().get(q)).collect::<Vec<_>>()));
        rhs.set(2 * j, p.x_bits().get(q));
        rhs.set(2 * j + 1, p.z_bits().get(q));
    }
    let system = BitMatrix::from_rows(gens.len(), rows).expect("consistent widths");
    let comb = match system.solve(&rhs)? {
        Some(c) => c,
        None => {
            let report = is_correctable(code, region)?;
            return Err(match report.witness {
                Some(w) => Error::CleaningInfeasible { witness: w.to_string() },
                None => Error::Inconsistency(format!(
                    "region of size {m} is correctable but {p} cannot be cleaned off it"
                )),
            });
        }
    };
    let cleaned = p.mul(&code.generator_product(&comb))?;
    if !cleaned.support().is_disjoint(region) {
        return Err(Error::Inconsistency("cleaned operator still touches the region".into()));
    }
    let before = code.logical_class(p)?;
    let after = code.logical_class(&cleaned)?;
    let sign = match (after.phase() + 4 - before.phase()) % 4 {
        0 => 1,
        2 => -1,
        _ => return Err(Error::Inconsistency("cleaning changed the class by ±i".into())),
    };
    if after.x_bits() != before.x_bits() || after.z_bits() != before.z_bits() {
        return Err(Error::Inconsistency("cleaning changed the logical class".into()));
    }
    Ok(CleanResult {
        input: p.clone(),
        cleaned,
        stabilizer_combination: comb.ones().collect(),
        sign,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UnionCheck {
    pub m_correctable: bool,
    pub k_correctable: bool,
    pub separation: usize,
    pub xi: usize,
    /// Both regions correctable and separated by more than `xi`.
    pub hypothesis_holds: bool,
    pub union_correctable: bool,
    /// Hypothesis true but union not correctable.
    pub falsified: bool,
    pub union_witness: Option<PauliOperator>,
}

/// Checks whether two disjoint regions and their union are correctable, and
/// whether the separation hypothesis (`separation > ξ`) holds.
pub fn union_lemma_check(code: &StabilizerCode, m: &Region, k: &Region) -> Result<UnionCheck> {
    if !m.is_disjoint(k) {
        return Err(Error::Domain("union check needs disjoint regions".into()));
    }
    if m.is_empty() || k.is_empty() {
        return Err(Error::Domain("union check needs nonempty regions".into()));
    }
    let lattice = code
        .geometry()
        .ok_or_else(|| Error::Domain("union check needs a code with geometry".into()))?;
    let xi = code.xi().unwrap_or(0);
    let separation = lattice.separation(m, k)?;
    let rm = is_correctable(code, m)?;
    let rk = is_correctable(code, k)?;
    let ru = is_correctable(code, &m.union(k))?;
    let hypothesis_holds = rm.correctable && rk.correctable && separation > xi;
    Ok(UnionCheck {
        m_correctable: rm.correctable,
        k_correctable: rk.correctable,
        separation,
        xi,
        hypothesis_holds,
        union_correctable: ru.correctable,
        falsified: hypothesis_holds && !ru.correctable,
        union_witness: ru.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::toric_code;
    use crate::symplectic::Pauli1;

    #[test]
    fn empty_and_single_site_regions_are_correctable() {
        let code = toric_code(4).unwrap();
        assert!(is_correctable(&code, &Region::default()).unwrap().correctable);
        let r = is_correctable(&code, &Region::from_sorted(vec![3])).unwrap();
        assert!(r.correctable);
        assert_eq!(r.centralizer_dim, r.stabilizer_dim);
    }

    #[test]
    fn loop_region_is_not_correctable() {
        let code = toric_code(4).unwrap();
        let lz = &code.logical_z()[0];
        let r = is_correctable(&code, &lz.support()).unwrap();
        assert!(!r.correctable);
        let w = r.witness.unwrap();
        assert!(w.support().is_subset(&lz.support()));
        assert!(!code.logical_class(&w).unwrap().is_identity_up_to_phase());
    }

    #[test]
    fn cleaning_moves_a_loop() {
        let code = toric_code(4).unwrap();
        let lx = code.logical_x()[0].clone();
        let first = lx.support().iter().next().unwrap();
        let m = Region::from_sorted(vec![first]);
        let res = clean(&code, &lx, &m).unwrap();
        assert!(res.cleaned.support().is_disjoint(&m));
        assert_eq!(res.sign, 1);
        assert_eq!(code.logical_class(&res.cleaned).unwrap(), code.logical_class(&lx).unwrap());
        let same = clean(&code, &lx, &Region::default()).unwrap();
        assert_eq!(same.cleaned, lx);
    }

    #[test]
    fn cleaning_a_non_correctable_region_fails_with_witness() {
        let code = toric_code(4).unwrap();
        // X̄₁ anticommutes with the Z̄₁ loop, so it cannot avoid that loop's support
        let lx = code.logical_x()[0].clone();
        let lz = code.logical_z()[0].clone();
        let err = clean(&code, &lx, &lz.support()).unwrap_err();
        assert!(matches!(err, Error::CleaningInfeasible { .. }));
        let not_logical = PauliOperator::single(code.n(), 0, Pauli1::Z);
        assert!(matches!(clean(&code, &not_logical, &Region::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn distant_single_sites_union() {
        let code = toric_code(4).unwrap();
        let lat = code.geometry().unwrap();
        let a = 0;
        let b = (0..code.n()).max_by_key(|&q| lat.distance(a, q)).unwrap();
        let u = union_lemma_check(&code, &Region::from_sorted(vec![a]), &Region::from_sorted(vec![b])).unwrap();
        assert!(u.hypothesis_holds && u.union_correctable && !u.falsified);
        assert!(union_lemma_check(&code, &Region::from_sorted(vec![a]), &Region::from_sorted(vec![a])).is_err());
    }

    #[test]
    fn adjacent_half_loops_do_not_meet_the_hypothesis() {
        let code = toric_code(4).unwrap();
        let lz = code.logical_z()[0].support();
        let (left, right): (Vec<usize>, Vec<usize>) = lz.iter().partition(|&q| q % 4 < 2);
        let u = union_lemma_check(&code, &Region::from_sorted(left), &Region::from_sorted(right)).unwrap();
        assert!(!u.hypothesis_holds);
        assert!(!u.union_correctable);
        assert!(!u.falsified);
    }
}
