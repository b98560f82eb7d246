//! Dense statevector and matrix helpers.
//!
//! Qubit 0 is the most significant bit of a basis index, so `|10…0⟩` is the
//! basis state with qubit 0 set.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symplectic::PauliOperator;

pub type CMatrix = nalgebra::DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `i^k`.
pub fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[inline]
fn bit_of(n: usize, q: usize) -> usize {
    1usize << (n - 1 - q)
}

pub fn basis_state(n: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; 1 << n];
    v[index] = ONE;
    v
}

/// Applies a `2^k × 2^k` matrix to the listed qubits of an `n`-qubit state.
pub fn apply_matrix(state: &mut [Complex64], n: usize, qubits: &[usize], m: &CMatrix) {
    let k = qubits.len();
    let d = 1usize << k;
    debug_assert_eq!(m.nrows(), d);
    let masks: Vec<usize> = qubits.iter().map(|&q| bit_of(n, q)).collect();
    let all: usize = masks.iter().sum();
    let offsets: Vec<usize> = (0..d)
        .map(|s| {
            (0..k)
                .filter(|&j| s >> (k - 1 - j) & 1 == 1)
                .map(|j| masks[j])
                .sum()
        })
        .collect();
    let mut buf = vec![ZERO; d];
    for base in 0..state.len() {
        if base & all != 0 {
            continue;
        }
        for (s, off) in offsets.iter().enumerate() {
            buf[s] = state[base + off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let mut acc = ZERO;
            for (c, b) in buf.iter().enumerate() {
                acc += m[(r, c)] * b;
            }
            state[base + off] = acc;
        }
    }
}

/// `P|ψ⟩` for a Pauli in the `i^p X^x Z^z` convention.
pub fn apply_pauli(state: &[Complex64], p: &PauliOperator) -> Vec<Complex64> {
    let n = p.num_qubits();
    let mut xmask = 0usize;
    let mut zmask = 0usize;
    for q in p.x_bits().ones() {
        xmask |= bit_of(n, q);
    }
    for q in p.z_bits().ones() {
        zmask |= bit_of(n, q);
    }
    let phase = i_pow(p.phase());
    let mut out = vec![ZERO; state.len()];
    for (b, amp) in state.iter().enumerate() {
        let sign = if (b & zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[b ^ xmask] = phase * amp * sign;
    }
    out
}

/// Dense matrix of a Pauli operator (n ≤ 12).
pub fn pauli_matrix(p: &PauliOperator) -> Result<CMatrix> {
    let n = p.num_qubits();
    check_cap(n, 12, "Pauli matrix")?;
    let d = 1 << n;
    let mut m = CMatrix::zeros(d, d);
    for col in 0..d {
        let out = apply_pauli(&basis_state(n, col), p);
        for (row, v) in out.into_iter().enumerate() {
            m[(row, col)] = v;
        }
    }
    Ok(m)
}

pub fn check_cap(n: usize, cap: usize, what: &str) -> Result<()> {
    if n > cap {
        Err(Error::Resource(format!("{what} on {n} qubits exceeds the cap of {cap}")))
    } else {
        Ok(())
    }
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let prod = m.adjoint() * m;
    let id = CMatrix::identity(m.nrows(), m.ncols());
    (prod - id).iter().all(|z| z.norm() <= tol)
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry-wise distance between two equally sized matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Divides out the global phase so that the largest-magnitude entry of the
/// first nonzero column is positive real (ties go to the first such entry).
/// Returns the normalised matrix and the removed phase factor.
pub fn normalize_phase(m: &CMatrix, tol: f64) -> (CMatrix, Complex64) {
    for c in 0..m.ncols() {
        let col = m.column(c);
        let mut best = 0;
        let mut best_norm = 0.0;
        for (r, z) in col.iter().enumerate() {
            if z.norm() > best_norm + tol {
                best = r;
                best_norm = z.norm();
            }
        }
        if best_norm > tol {
            let phase = col[best] / best_norm;
            return (m.map(|z| z / phase), phase);
        }
    }
    (m.clone(), ONE)
}

/// `true` iff `a = e^{iθ} b` for some θ, to tolerance.
pub fn equal_up_to_phase(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    // phase from the largest entry of b
    let (idx, bmax) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
        .map(|(i, z)| (i, *z))
        .unwrap_or((0, ZERO));
    if bmax.norm() <= tol {
        return a.iter().all(|z| z.norm() <= tol);
    }
    let ratio = a.as_slice()[idx] / bmax;
    if (ratio.norm() - 1.0).abs() > tol {
        return false;
    }
    a.iter().zip(b.iter()).all(|(x, y)| (x - ratio * y).norm() <= tol)
}

/// Dense operator acting on a few qubits of a larger register.
#[derive(Debug, Clone)]
pub struct LocalOperator {
    /// Register qubits, in matrix order (first = most significant).
    pub qubits: Vec<usize>,
    pub matrix: CMatrix,
}

impl LocalOperator {
    pub fn apply(&self, state: &mut [Complex64], n: usize) {
        if self.qubits.is_empty() {
            let s = self.matrix[(0, 0)];
            state.iter_mut().for_each(|z| *z *= s);
        } else {
            apply_matrix(state, n, &self.qubits, &self.matrix);
        }
    }

    /// Qubits on which the operator is not of the form `I ⊗ (rest)`: a site
    /// is trivial iff the operator commutes with both `X` and `Z` there.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        let m = self.qubits.len();
        let mut out = Vec::new();
        for (j, &q) in self.qubits.iter().enumerate() {
            let trivial = [crate::symplectic::Pauli1::X, crate::symplectic::Pauli1::Z]
                .into_iter()
                .all(|lab| {
                    let p = PauliOperator::single(m, j, lab);
                    let pm = pauli_matrix(&p).expect("local operators are small");
                    max_abs_diff(&(&pm * &self.matrix), &(&self.matrix * &pm)) <= tol
                });
            if !trivial {
                out.push(q);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::Pauli1;

    #[test]
    fn pauli_matrices_match_textbook() {
        let y = pauli_matrix(&PauliOperator::single(1, 0, Pauli1::Y)).unwrap();
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], Complex64::new(0.0, 1.0));
        let xz = pauli_matrix(&"XZ".parse().unwrap()).unwrap();
        // X on qubit 0 (most significant), Z on qubit 1
        assert_eq!(xz[(2, 0)], ONE);
        assert_eq!(xz[(3, 1)], -ONE);
    }

    #[test]
    fn apply_matrix_targets_most_significant_first() {
        let x = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let mut s = basis_state(3, 0);
        apply_matrix(&mut s, 3, &[0], &x);
        assert_eq!(s[0b100], ONE);
    }

    #[test]
    fn phase_normalisation() {
        let m = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, Complex64::new(0.0, 1.0), ZERO]);
        let (n, ph) = normalize_phase(&m, 1e-12);
        assert_eq!(n[(1, 0)], ONE);
        assert_eq!(ph, Complex64::new(0.0, 1.0));
        assert!(equal_up_to_phase(&n, &m, 1e-12));
    }
}
