use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::{is_unitary, CMatrix};
use crate::error::{Error, Result};
use crate::symplectic::PauliOperator;

/// Largest support of a dense gate.
pub const MAX_DENSE_ARITY: usize = 3;

#[derive(Clone, PartialEq)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    Cnot,
    Swap,
    Cz,
    /// Arbitrary unitary on `log2(dim)` qubits, first support qubit most significant.
    Dense(CMatrix),
}

impl fmt::Debug for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::Dense(m) => write!(f, "Dense({}x{})", m.nrows(), m.ncols()),
            other => f.write_str(other.name()),
        }
    }
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::Cnot => "CNOT",
            GateKind::Swap => "SWAP",
            GateKind::Cz => "CZ",
            GateKind::Dense(_) => "Dense",
        }
    }

    /// Named gates, plus `T` / `Tdg` which become dense `diag(1, e^{±iπ/4})`.
    pub fn from_name(name: &str) -> Result<GateKind> {
        Ok(match name {
            "I" | "ID" => GateKind::I,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "Sdg" | "S†" | "SDG" => GateKind::Sdg,
            "CNOT" | "CX" => GateKind::Cnot,
            "SWAP" => GateKind::Swap,
            "CZ" => GateKind::Cz,
            "T" => GateKind::Dense(t_matrix(false)),
            "Tdg" | "T†" | "TDG" => GateKind::Dense(t_matrix(true)),
            other => return Err(Error::Parse(format!("unknown gate kind {other:?}"))),
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Swap | GateKind::Cz => 2,
            GateKind::Dense(m) => m.nrows().trailing_zeros() as usize,
            _ => 1,
        }
    }

    pub fn is_clifford(&self) -> bool {
        !matches!(self, GateKind::Dense(_))
    }

    pub fn dagger(&self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::Dense(m) => GateKind::Dense(m.adjoint()),
            other => other.clone(),
        }
    }

    pub fn matrix(&self) -> CMatrix {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let o = c(0.0, 0.0);
        let l = c(1.0, 0.0);
        let s = FRAC_1_SQRT_2;
        match self {
            GateKind::I => CMatrix::identity(2, 2),
            GateKind::X => CMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            GateKind::Y => CMatrix::from_row_slice(2, 2, &[o, c(0.0, -1.0), c(0.0, 1.0), o]),
            GateKind::Z => CMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
            GateKind::H => CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]),
            GateKind::S => CMatrix::from_row_slice(2, 2, &[l, o, o, c(0.0, 1.0)]),
            GateKind::Sdg => CMatrix::from_row_slice(2, 2, &[l, o, o, c(0.0, -1.0)]),
            GateKind::Cnot => {
                CMatrix::from_row_slice(4, 4, &[l, o, o, o, o, l, o, o, o, o, o, l, o, o, l, o])
            }
            GateKind::Swap => {
                CMatrix::from_row_slice(4, 4, &[l, o, o, o, o, o, l, o, o, l, o, o, o, o, o, l])
            }
            GateKind::Cz => {
                CMatrix::from_row_slice(4, 4, &[l, o, o, o, o, l, o, o, o, o, l, o, o, o, o, -l])
            }
            GateKind::Dense(m) => m.clone(),
        }
    }
}

/// `diag(1, e^{iπ/4})`, or its inverse.
pub fn t_matrix(dagger: bool) -> CMatrix {
    let angle = if dagger { -std::f64::consts::FRAC_PI_4 } else { std::f64::consts::FRAC_PI_4 };
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0, angle),
        ],
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalGate {
    support: Vec<usize>,
    kind: GateKind,
}

impl LocalGate {
    pub fn new(kind: GateKind, support: Vec<usize>) -> Result<Self> {
        if support.len() != kind.arity() {
            return Err(Error::Parameter(format!(
                "{} acts on {} qubits, support has {}",
                kind.name(),
                kind.arity(),
                support.len()
            )));
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parameter(format!("repeated qubit in gate support {support:?}")));
        }
        if let GateKind::Dense(m) = &kind {
            if !m.is_square() || !m.nrows().is_power_of_two() || m.nrows() < 2 {
                return Err(Error::Parameter("dense gate must be 2^k x 2^k".into()));
            }
            if kind.arity() > MAX_DENSE_ARITY {
                return Err(Error::Parameter(format!(
                    "dense gates act on at most {MAX_DENSE_ARITY} qubits"
                )));
            }
            if !is_unitary(m, 1e-12) {
                return Err(Error::Domain("dense gate matrix is not unitary".into()));
            }
        }
        Ok(LocalGate { support, kind })
    }

    pub fn single(kind: GateKind, q: usize) -> Result<Self> {
        Self::new(kind, vec![q])
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn dagger(&self) -> LocalGate {
        LocalGate {
            support: self.support.clone(),
            kind: self.kind.dagger(),
        }
    }

    /// `P ↦ G P G†` in place. Only valid for Clifford kinds.
    pub(crate) fn conjugate(&self, p: &mut PauliOperator) {
        let q = self.support[0];
        match &self.kind {
            GateKind::I => {}
            GateKind::X => {
                if p.z_bits().get(q) {
                    p.add_phase(2);
                }
            }
            GateKind::Z => {
                if p.x_bits().get(q) {
                    p.add_phase(2);
                }
            }
            GateKind::Y => {
                if p.x_bits().get(q) != p.z_bits().get(q) {
                    p.add_phase(2);
                }
            }
            GateKind::H => {
                let (x, z) = (p.x_bits().get(q), p.z_bits().get(q));
                if x && z {
                    p.add_phase(2);
                }
                p.x_mut().set(q, z);
                p.z_mut().set(q, x);
            }
            GateKind::S | GateKind::Sdg => {
                // X -> ±iXZ, Z -> Z
                if p.x_bits().get(q) {
                    p.add_phase(if matches!(self.kind, GateKind::S) { 1 } else { 3 });
                    p.z_mut().flip(q);
                }
            }
            GateKind::Cnot => {
                let t = self.support[1];
                if p.x_bits().get(q) {
                    p.x_mut().flip(t);
                }
                if p.z_bits().get(t) {
                    p.z_mut().flip(q);
                }
            }
            GateKind::Cz => {
                let t = self.support[1];
                let (xa, xb) = (p.x_bits().get(q), p.x_bits().get(t));
                if xa && xb {
                    p.add_phase(2);
                }
                if xb {
                    p.z_mut().flip(q);
                }
                if xa {
                    p.z_mut().flip(t);
                }
            }
            GateKind::Swap => {
                let t = self.support[1];
                let (xa, za) = (p.x_bits().get(q), p.z_bits().get(q));
                let (xb, zb) = (p.x_bits().get(t), p.z_bits().get(t));
                p.x_mut().set(q, xb);
                p.z_mut().set(q, zb);
                p.x_mut().set(t, xa);
                p.z_mut().set(t, za);
            }
            GateKind::Dense(_) => unreachable!("dense gates are rejected before conjugation"),
        }
    }
}

/// JSON form: `{"kind":"CNOT","support":[0,5]}`; dense gates add a row-major
/// `"matrix"` of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateDocument {
    pub kind: String,
    pub support: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<[f64; 2]>>,
}

impl From<&LocalGate> for GateDocument {
    fn from(g: &LocalGate) -> Self {
        let matrix = match &g.kind {
            GateKind::Dense(m) => {
                let d = m.nrows();
                Some(
                    (0..d * d)
                        .map(|i| {
                            let z = m[(i / d, i % d)];
                            [z.re, z.im]
                        })
                        .collect(),
                )
            }
            _ => None,
        };
        GateDocument {
            kind: g.kind.name().to_string(),
            support: g.support.clone(),
            matrix,
        }
    }
}

impl TryFrom<&GateDocument> for LocalGate {
    type Error = Error;

    fn try_from(doc: &GateDocument) -> Result<Self> {
        let kind = if doc.kind == "Dense" {
            let entries = doc
                .matrix
                .as_ref()
                .ok_or_else(|| Error::Parse("dense gate without matrix".into()))?;
            let d = 1usize << doc.support.len();
            if entries.len() != d * d {
                return Err(Error::Parse(format!(
                    "dense gate on {} qubits needs {} entries, got {}",
                    doc.support.len(),
                    d * d,
                    entries.len()
                )));
            }
            let data: Vec<Complex64> = entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            GateKind::Dense(CMatrix::from_row_slice(d, d, &data))
        } else {
            if doc.matrix.is_some() {
                return Err(Error::Parse(format!("named gate {} must not carry a matrix", doc.kind)));
            }
            GateKind::from_name(&doc.kind)?
        };
        LocalGate::new(kind, doc.support.clone())
    }
}
