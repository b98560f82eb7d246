//! Dense codeword bases under the crate's basis convention.

use num_complex::Complex64;

use crate::circuit::dense::{apply_pauli, check_cap, norm, ZERO};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::symplectic::{BitMatrix, BitVector, PauliOperator};

/// Largest register for which dense codewords are built.
pub const CODESPACE_CAP: usize = 16;

/// Basis states `|c⟩ = Π_i X_i^{c_i} |0⟩` of the stabilizer state fixed by
/// `stabs` (which must be `n` commuting independent Hermitian Paulis), with
/// `c` read with entry 0 as the most significant bit.
///
/// `|0⟩` is the projection of the first computational basis state in its
/// support found by the GF(2) solve, so its amplitude there is positive real.
pub(crate) fn stabilizer_basis(
    n: usize,
    stabs: &[PauliOperator],
    xs: &[PauliOperator],
) -> Result<Vec<Vec<Complex64>>> {
    check_cap(n, CODESPACE_CAP, "dense codespace")?;
    // Z-type group elements: combinations whose X parts cancel
    let x_rows: Vec<BitVector> = (0..n)
        .map(|q| BitVector::from_bools(&stabs.iter().map(|s| s.x_bits().get(q)).collect::<Vec<_>>()))
        .collect();
    let kernel = BitMatrix::from_rows(stabs.len(), x_rows)?.kernel();
    let mut rows = Vec::with_capacity(kernel.len());
    let mut rhs = BitVector::zeros(kernel.len());
    for (i, comb) in kernel.iter().enumerate() {
        let mut prod = PauliOperator::identity(n);
        for j in comb.ones() {
            prod = prod.mul(&stabs[j])?;
        }
        // prod = i^t Z^z, and Z^z |b⟩ = (-1)^{z·b} |b⟩
        match prod.phase() {
            0 => {}
            2 => rhs.set(i, true),
            _ => return Err(Error::Inconsistency("stabilizer product has phase ±i".into())),
        }
        rows.push(prod.z_bits().clone());
    }
    let b = BitMatrix::from_rows(n, rows)?
        .solve(&rhs)?
        .ok_or_else(|| Error::Inconsistency("stabilizer group contains -I".into()))?;
    let index = (0..n).filter(|&q| b.get(q)).map(|q| 1usize << (n - 1 - q)).sum::<usize>();
    let mut psi = vec![ZERO; 1 << n];
    psi[index] = Complex64::new(1.0, 0.0);
    for s in stabs {
        let image = apply_pauli(&psi, s);
        psi.iter_mut().zip(image).for_each(|(a, b)| *a = (*a + b) * 0.5);
    }
    let nrm = norm(&psi);
    if nrm < 1e-6 {
        return Err(Error::Inconsistency("projected codeword vanished".into()));
    }
    psi.iter_mut().for_each(|a| *a /= nrm);
    let k = xs.len();
    let mut out = Vec::with_capacity(1 << k);
    for c in 0..1usize << k {
        let mut v = psi.clone();
        for (i, x) in xs.iter().enumerate() {
            if c >> (k - 1 - i) & 1 == 1 {
                v = apply_pauli(&v, x);
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Orthonormal codeword basis `J` of a code, one state per logical basis label.
pub fn codeword_basis(code: &StabilizerCode) -> Result<Vec<Vec<Complex64>>> {
    let mut stabs = code.generators().to_vec();
    stabs.extend(code.logical_z().iter().cloned());
    stabilizer_basis(code.n(), &stabs, code.logical_x())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::dense::{apply_pauli, inner};
    use crate::library::{color_code_15, repetition_code};

    #[test]
    fn repetition_codewords() {
        let code = repetition_code(3).unwrap();
        let basis = codeword_basis(&code).unwrap();
        assert_eq!(basis.len(), 2);
        // logical Z is some Z-type representative, so |0⟩ is |000⟩
        assert!((basis[0][0].re - 1.0).abs() < 1e-12);
        assert!((basis[1][7].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn color_codewords_are_orthonormal_eigenstates() {
        let code = color_code_15().unwrap();
        let basis = codeword_basis(&code).unwrap();
        assert!((inner(&basis[0], &basis[1])).norm() < 1e-12);
        for v in &basis {
            assert!((norm(v) - 1.0).abs() < 1e-12);
            for g in code.generators() {
                let w = apply_pauli(v, g);
                assert!(w.iter().zip(v).all(|(a, b)| (a - b).norm() < 1e-12));
            }
        }
        let z = apply_pauli(&basis[1], &code.logical_z()[0]);
        assert!(z.iter().zip(&basis[1]).all(|(a, b)| (a + b).norm() < 1e-12));
    }
}
