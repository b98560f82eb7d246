//! Encoded gates `Û = J₂† U J₁` and the morphism check `U Π₁ U† = Π₂`.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::codespace::{codeword_basis, stabilizer_basis};
use super::hierarchy::{check_square_unitary, dense_level, Certificate, HierarchyVerdict, Level, LEVEL_TOL};
use crate::circuit::dense::{apply_pauli, inner, is_unitary, normalize_phase, CMatrix};
use crate::circuit::LayeredCircuit;
use crate::code::StabilizerCode;
use crate::error::{check_dim, Error, Result};
use crate::symplectic::{Pauli1, PauliOperator};

/// Tolerance of the dense morphism and extraction checks.
pub const MORPHISM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum EncodedRepr {
    /// Images `Û X_i Û†`, `Û Z_i Û†` as signed k-qubit Paulis.
    CliffordAction {
        x_images: Vec<PauliOperator>,
        z_images: Vec<PauliOperator>,
    },
    /// `2^k × 2^k` unitary, logical qubit 0 most significant.
    DenseMatrix(CMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodedGate {
    k: usize,
    repr: EncodedRepr,
    /// Phase divided out of a dense matrix by the first-column convention.
    global_phase: Option<Complex64>,
}

impl EncodedGate {
    pub fn identity(k: usize) -> Self {
        EncodedGate {
            k,
            repr: EncodedRepr::CliffordAction {
                x_images: (0..k).map(|i| PauliOperator::single(k, i, Pauli1::X)).collect(),
                z_images: (0..k).map(|i| PauliOperator::single(k, i, Pauli1::Z)).collect(),
            },
            global_phase: None,
        }
    }

    /// Dense gate with its global phase normalised.
    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        let k = check_square_unitary(m)?;
        let (m, phase) = normalize_phase(m, 1e-12);
        Ok(EncodedGate {
            k,
            repr: EncodedRepr::DenseMatrix(m),
            global_phase: Some(phase),
        })
    }

    /// Clifford action from generator images; they must be Hermitian and
    /// satisfy the canonical commutation relations.
    pub fn from_clifford_images(x_images: Vec<PauliOperator>, z_images: Vec<PauliOperator>) -> Result<Self> {
        let k = x_images.len();
        check_dim(k, z_images.len())?;
        let all: Vec<&PauliOperator> = x_images.iter().chain(&z_images).collect();
        for p in &all {
            check_dim(k, p.num_qubits())?;
            if !p.is_hermitian() {
                return Err(Error::Validation(format!("image {p} is not Hermitian")));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let want_xz = i != j;
                if x_images[i].commutes(&z_images[j])? != want_xz
                    || (i != j && !x_images[i].commutes(&x_images[j])?)
                    || (i != j && !z_images[i].commutes(&z_images[j])?)
                {
                    return Err(Error::Validation(format!(
                        "images of generators {i}, {j} break the symplectic relations"
                    )));
                }
            }
        }
        Ok(EncodedGate {
            k,
            repr: EncodedRepr::CliffordAction { x_images, z_images },
            global_phase: None,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn repr(&self) -> &EncodedRepr {
        &self.repr
    }

    pub fn global_phase(&self) -> Option<Complex64> {
        self.global_phase
    }

    /// Dense matrix of the gate. For a Clifford action the global phase is
    /// fixed by the first-column convention.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        match &self.repr {
            EncodedRepr::DenseMatrix(m) => Ok(m.clone()),
            EncodedRepr::CliffordAction { x_images, z_images } => {
                let cols = stabilizer_basis(self.k, z_images, x_images)?;
                let d = 1usize << self.k;
                let m = CMatrix::from_fn(d, d, |r, c| cols[c][r]);
                Ok(normalize_phase(&m, 1e-12).0)
            }
        }
    }

    /// Clifford action of a dense gate, when it is Clifford.
    pub fn to_clifford_action(&self) -> Result<Option<(Vec<PauliOperator>, Vec<PauliOperator>)>> {
        match &self.repr {
            EncodedRepr::CliffordAction { x_images, z_images } => Ok(Some((x_images.clone(), z_images.clone()))),
            EncodedRepr::DenseMatrix(m) => {
                let mut x_images = Vec::new();
                let mut z_images = Vec::new();
                for i in 0..self.k {
                    for (lab, out) in [(Pauli1::X, &mut x_images), (Pauli1::Z, &mut z_images)] {
                        let g = crate::circuit::dense::pauli_matrix(&PauliOperator::single(self.k, i, lab))?;
                        let image = m * g * m.adjoint();
                        match match_signed_pauli(&image, self.k) {
                            Some(p) => out.push(p),
                            None => return Ok(None),
                        }
                    }
                }
                Ok(Some((x_images, z_images)))
            }
        }
    }

    /// Product `self · other` (`other` acts first), up to global phase.
    pub fn compose(&self, other: &EncodedGate) -> Result<EncodedGate> {
        check_dim(self.k, other.k)?;
        match (&self.repr, &other.repr) {
            (
                EncodedRepr::CliffordAction { .. },
                EncodedRepr::CliffordAction { x_images, z_images },
            ) => {
                let map = |p: &PauliOperator| self.apply_clifford(p).expect("clifford repr");
                EncodedGate::from_clifford_images(
                    x_images.iter().map(map).collect(),
                    z_images.iter().map(map).collect(),
                )
            }
            _ => EncodedGate::from_matrix(&(self.to_matrix()? * other.to_matrix()?)),
        }
    }

    /// `Û P Û†` for a Clifford action.
    pub fn apply_clifford(&self, p: &PauliOperator) -> Option<PauliOperator> {
        let EncodedRepr::CliffordAction { x_images, z_images } = &self.repr else {
            return None;
        };
        let mut acc = PauliOperator::identity(self.k);
        for i in p.x_bits().ones() {
            acc = acc.mul(&x_images[i]).ok()?;
        }
        for i in p.z_bits().ones() {
            acc = acc.mul(&z_images[i]).ok()?;
        }
        Some(acc.times_i(p.phase()))
    }

    /// `true` when both describe the same operator up to global phase.
    pub fn equivalent(&self, other: &EncodedGate) -> Result<bool> {
        if self.k != other.k {
            return Ok(false);
        }
        if let (EncodedRepr::CliffordAction { .. }, EncodedRepr::CliffordAction { .. }) = (&self.repr, &other.repr) {
            return Ok(self.repr == other.repr);
        }
        Ok(crate::circuit::dense::equal_up_to_phase(
            &self.to_matrix()?,
            &other.to_matrix()?,
            LEVEL_TOL,
        ))
    }
}

/// `Some(±P)` when `m` equals a Hermitian Pauli up to sign.
fn match_signed_pauli(m: &CMatrix, k: usize) -> Option<PauliOperator> {
    let d = (1usize << k) as f64;
    for p in PauliOperator::enumerate_all(k) {
        let pm = crate::circuit::dense::pauli_matrix(&p).ok()?;
        let tr: Complex64 = (pm.adjoint() * m).trace() / d;
        if (tr - 1.0).norm() <= LEVEL_TOL {
            return Some(p);
        }
        if (tr + 1.0).norm() <= LEVEL_TOL {
            return Some(p.negate());
        }
    }
    None
}

#[derive(Serialize)]
struct ImageRow {
    generator: String,
    image: String,
}

#[derive(Serialize)]
#[serde(tag = "repr", rename_all = "snake_case")]
enum EncodedView {
    CliffordAction {
        k: usize,
        images: Vec<ImageRow>,
    },
    DenseMatrix {
        k: usize,
        /// Row-major `[re, im]` entries.
        matrix: Vec<Vec<[f64; 2]>>,
        global_phase: Option<[f64; 2]>,
    },
}

impl Serialize for EncodedGate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let view = match &self.repr {
            EncodedRepr::CliffordAction { x_images, z_images } => EncodedView::CliffordAction {
                k: self.k,
                images: (0..self.k)
                    .flat_map(|i| {
                        [
                            ImageRow {
                                generator: PauliOperator::single(self.k, i, Pauli1::X).to_string(),
                                image: x_images[i].to_string(),
                            },
                            ImageRow {
                                generator: PauliOperator::single(self.k, i, Pauli1::Z).to_string(),
                                image: z_images[i].to_string(),
                            },
                        ]
                    })
                    .collect(),
            },
            EncodedRepr::DenseMatrix(m) => EncodedView::DenseMatrix {
                k: self.k,
                matrix: (0..m.nrows())
                    .map(|r| (0..m.ncols()).map(|c| [round(m[(r, c)].re), round(m[(r, c)].im)]).collect())
                    .collect(),
                global_phase: self.global_phase.map(|z| [round(z.re), round(z.im)]),
            },
        };
        view.serialize(s)
    }
}

/// Rounds report numbers to 12 decimals so that reruns serialize identically
/// and `-0` never appears.
fn round(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Minimal hierarchy level of an encoded gate, testing up to `j_max`.
///
/// A Clifford action is level 1 exactly when every generator image is `±`
/// the generator, and level 2 otherwise; dense gates use the recursion.
pub fn hierarchy_level(gate: &EncodedGate, j_max: usize) -> Result<HierarchyVerdict> {
    if j_max == 0 {
        return Err(Error::Parameter("j_max must be at least 1".into()));
    }
    match &gate.repr {
        EncodedRepr::DenseMatrix(m) => dense_level(m, j_max),
        EncodedRepr::CliffordAction { x_images, z_images } => {
            let k = gate.k;
            let escape = (0..k)
                .flat_map(|i| {
                    [
                        (PauliOperator::single(k, i, Pauli1::X), &x_images[i]),
                        (PauliOperator::single(k, i, Pauli1::Z), &z_images[i]),
                    ]
                })
                .find(|(g, img)| img.x_bits() != g.x_bits() || img.z_bits() != g.z_bits());
            let (level, certificate) = match escape {
                None => (1, None),
                Some((g, _)) => (
                    2,
                    Some(Certificate {
                        pauli: g,
                        excluded_level: 0,
                    }),
                ),
            };
            Ok(if level <= j_max {
                HierarchyVerdict {
                    level: Level::Exact(level),
                    j_max_tested: j_max,
                    certificate,
                }
            } else {
                HierarchyVerdict {
                    level: Level::AboveMax,
                    j_max_tested: j_max,
                    certificate,
                }
            })
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismCheck {
    pub holds: bool,
    pub backend: Backend,
    /// First generator (of the source code) whose image is not a stabilizer of the target.
    pub offending: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Clifford,
    Dense,
}

fn check_pair(code1: &StabilizerCode, code2: &StabilizerCode, u: &LayeredCircuit) -> Result<()> {
    check_dim(code1.n(), code2.n())?;
    check_dim(code1.n(), u.num_qubits())
}

/// Morphism check with details; see [`is_morphism`].
pub fn morphism_check(code1: &StabilizerCode, code2: &StabilizerCode, u: &LayeredCircuit) -> Result<MorphismCheck> {
    check_pair(code1, code2, u)?;
    if u.is_clifford() {
        if code1.k() != code2.k() {
            return Ok(MorphismCheck {
                holds: false,
                backend: Backend::Clifford,
                offending: Some(format!("logical dimensions differ: {} vs {}", code1.k(), code2.k())),
            });
        }
        for g in code1.generators() {
            let image = u.conjugate_pauli(g)?;
            if !code2.contains(&image)? {
                return Ok(MorphismCheck {
                    holds: false,
                    backend: Backend::Clifford,
                    offending: Some(g.to_string()),
                });
            }
        }
        return Ok(MorphismCheck {
            holds: true,
            backend: Backend::Clifford,
            offending: None,
        });
    }
    dense_morphism(code1, code2, u)
}

fn dense_morphism(code1: &StabilizerCode, code2: &StabilizerCode, u: &LayeredCircuit) -> Result<MorphismCheck> {
    let fail = |what: String| MorphismCheck {
        holds: false,
        backend: Backend::Dense,
        offending: Some(what),
    };
    if code1.k() != code2.k() {
        return Ok(fail(format!("logical dimensions differ: {} vs {}", code1.k(), code2.k())));
    }
    for (c, psi) in codeword_basis(code1)?.iter().enumerate() {
        let phi = u.apply_dense(psi)?;
        for g in code2.generators() {
            let gphi = apply_pauli(&phi, g);
            let dev = gphi.iter().zip(&phi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            if dev > MORPHISM_TOL {
                return Ok(fail(format!("codeword {c} leaves the +1 eigenspace of {g}")));
            }
        }
    }
    Ok(MorphismCheck {
        holds: true,
        backend: Backend::Dense,
        offending: None,
    })
}

/// `U Π₁ U† = Π₂`. Clifford circuits map every generator of `code1` to a
/// `+`-signed stabilizer of `code2`; other circuits are checked on a dense
/// codeword basis (`n ≤ 16`).
pub fn is_morphism(code1: &StabilizerCode, code2: &StabilizerCode, u: &LayeredCircuit) -> Result<bool> {
    Ok(morphism_check(code1, code2, u)?.holds)
}

/// Logical action of a morphism. Clifford circuits yield the images of the
/// logical generators; other circuits a dense `J₂† U J₁`.
pub fn encoded_gate(code1: &StabilizerCode, code2: &StabilizerCode, u: &LayeredCircuit) -> Result<EncodedGate> {
    if u.is_clifford() {
        encoded_gate_clifford(code1, code2, u)
    } else {
        encoded_gate_dense(code1, code2, u)
    }
}

pub fn encoded_gate_clifford(
    code1: &StabilizerCode,
    code2: &StabilizerCode,
    u: &LayeredCircuit,
) -> Result<EncodedGate> {
    let check = morphism_check(code1, code2, u)?;
    if !check.holds {
        return Err(Error::Inconsistency(format!(
            "circuit is not a morphism: {}",
            check.offending.unwrap_or_default()
        )));
    }
    let image = |p: &PauliOperator| -> Result<PauliOperator> { code2.logical_class(&u.conjugate_pauli(p)?) };
    let x_images = code1.logical_x().iter().map(image).collect::<Result<Vec<_>>>()?;
    let z_images = code1.logical_z().iter().map(image).collect::<Result<Vec<_>>>()?;
    EncodedGate::from_clifford_images(x_images, z_images)
}

pub fn encoded_gate_dense(code1: &StabilizerCode, code2: &StabilizerCode, u: &LayeredCircuit) -> Result<EncodedGate> {
    check_pair(code1, code2, u)?;
    let check = dense_morphism(code1, code2, u)?;
    if !check.holds {
        return Err(Error::Inconsistency(format!(
            "circuit is not a morphism: {}",
            check.offending.unwrap_or_default()
        )));
    }
    let j1 = codeword_basis(code1)?;
    let j2 = codeword_basis(code2)?;
    let d = j2.len();
    let mut m = CMatrix::zeros(d, j1.len());
    for (c, psi) in j1.iter().enumerate() {
        let phi = u.apply_dense(psi)?;
        for (r, chi) in j2.iter().enumerate() {
            m[(r, c)] = inner(chi, &phi);
        }
    }
    if !is_unitary(&m, MORPHISM_TOL) {
        return Err(Error::Inconsistency("extracted logical matrix is not unitary".into()));
    }
    EncodedGate::from_matrix(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{GateKind, LayeredCircuit, LocalGate};
    use crate::geometry::Region;
    use crate::library::{color_code_15, repetition_code, toric_code};

    #[test]
    fn identity_is_trivial_morphism() {
        let code = toric_code(3).unwrap();
        let u = LayeredCircuit::identity(code.n());
        assert!(is_morphism(&code, &code, &u).unwrap());
        let g = encoded_gate(&code, &code, &u).unwrap();
        assert_eq!(g, EncodedGate::identity(2));
        assert_eq!(hierarchy_level(&g, 3).unwrap().level, Level::Exact(1));
    }

    #[test]
    fn pauli_loop_gives_logical_pauli() {
        let code = toric_code(3).unwrap();
        let lx = &code.logical_x()[0];
        let u = LayeredCircuit::transversal(GateKind::X, &lx.support(), code.n()).unwrap();
        let g = encoded_gate(&code, &code, &u).unwrap();
        // X̄₁ flips the sign of Z̄₁ and fixes everything else
        let (xs, zs) = g.to_clifford_action().unwrap().unwrap();
        assert_eq!(zs[0].to_string(), "-ZI");
        assert_eq!(xs[0].to_string(), "+XI");
        assert_eq!(zs[1].to_string(), "+IZ");
    }

    #[test]
    fn transversal_hadamard_breaks_repetition_code() {
        let code = repetition_code(3).unwrap();
        let u = LayeredCircuit::transversal(GateKind::H, &Region::full(3), 3).unwrap();
        assert!(!is_morphism(&code, &code, &u).unwrap());
        assert!(matches!(encoded_gate(&code, &code, &u), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn backends_agree_on_color_code_transversal_s() {
        let code = color_code_15().unwrap();
        let u = LayeredCircuit::transversal(GateKind::Sdg, &Region::full(15), 15).unwrap();
        // the square of transversal T, so it preserves the code
        let a = encoded_gate_clifford(&code, &code, &u).unwrap();
        let b = encoded_gate_dense(&code, &code, &u).unwrap();
        assert!(a.equivalent(&b).unwrap());
        let m = b.to_matrix().unwrap();
        let is_s = crate::circuit::dense::equal_up_to_phase(&m, &GateKind::S.matrix(), 1e-9);
        let is_sdg = crate::circuit::dense::equal_up_to_phase(&m, &GateKind::Sdg.matrix(), 1e-9);
        assert!(is_s || is_sdg);
        assert_eq!(hierarchy_level(&a, 3).unwrap().level(), Some(2));
        let h = LayeredCircuit::transversal(GateKind::H, &Region::full(15), 15).unwrap();
        assert!(!is_morphism(&code, &code, &h).unwrap());
    }

    #[test]
    fn backends_agree_on_stacked_transversal_cnot() {
        let base = crate::library::toric_code(2).unwrap();
        let code = crate::library::stacked(&base, 2).unwrap();
        let layer = (0..8).map(|q| LocalGate::new(GateKind::Cnot, vec![q, 8 + q]).unwrap()).collect();
        let u = LayeredCircuit::new(16, vec![layer]).unwrap();
        let a = encoded_gate_clifford(&code, &code, &u).unwrap();
        let b = encoded_gate_dense(&code, &code, &u).unwrap();
        assert!(a.equivalent(&b).unwrap());
        let (xs, _) = a.to_clifford_action().unwrap().unwrap();
        assert_eq!(xs[0].to_string(), "+XIXI");
    }

    #[test]
    fn clifford_action_round_trips_through_matrix() {
        let h = EncodedGate::from_matrix(&GateKind::H.matrix()).unwrap();
        let (xs, zs) = h.to_clifford_action().unwrap().unwrap();
        let back = EncodedGate::from_clifford_images(xs, zs).unwrap();
        assert!(back.equivalent(&h).unwrap());
        let cx = EncodedGate::from_matrix(&GateKind::Cnot.matrix()).unwrap();
        let (xs, zs) = cx.to_clifford_action().unwrap().unwrap();
        assert_eq!(xs[0].to_string(), "+XX");
        assert_eq!(zs[1].to_string(), "+ZZ");
        let back = EncodedGate::from_clifford_images(xs, zs).unwrap();
        assert!(back.equivalent(&cx).unwrap());
    }
}
