//! Pauli operators in the binary symplectic representation.
//!
//! An operator is stored as `i^phase · Π_a X_a^{x_a} Z_a^{z_a}`, with every X
//! factor ordered to the left of every Z factor. Under this convention
//! `Y = i·X·Z`, so the Hermitian operator `Y` is `(x=1, z=1, phase=1)`.

use std::fmt;
use std::str::FromStr;

use super::gf2::BitVector;
use crate::error::{check_dim, Error, Result};
use crate::geometry::Region;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | '_' => Some(Pauli1::I),
            'X' => Some(Pauli1::X),
            'Y' => Some(Pauli1::Y),
            'Z' => Some(Pauli1::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    /// Raw constructor: `i^phase X^x Z^z`.
    pub fn from_parts(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        check_dim(x.len(), z.len())?;
        Ok(PauliOperator {
            x,
            z,
            phase: phase % 4,
        })
    }

    /// The Hermitian tensor product of I/X/Y/Z with sign `+` selected by the bits.
    pub fn hermitian(x: BitVector, z: BitVector) -> Self {
        let phase = (x.and_count(&z) % 4) as u8;
        PauliOperator { x, z, phase }
    }

    /// Hermitian operator from a symplectic vector `[x | z]` of length `2n`.
    pub fn from_symplectic(v: &BitVector) -> Self {
        let n = v.len() / 2;
        Self::hermitian(v.slice(0, n), v.slice(n, n))
    }

    pub fn single(n: usize, qubit: usize, p: Pauli1) -> Self {
        Self::from_labels(n, [(qubit, p)])
    }

    /// Hermitian product of single-qubit Paulis placed at the given qubits.
    pub fn from_labels(n: usize, labels: impl IntoIterator<Item = (usize, Pauli1)>) -> Self {
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for (q, p) in labels {
            let (bx, bz) = p.bits();
            x.set(q, bx);
            z.set(q, bz);
        }
        Self::hermitian(x, z)
    }

    /// Same Pauli on every listed qubit.
    pub fn on_region(n: usize, p: Pauli1, qubits: impl IntoIterator<Item = usize>) -> Self {
        Self::from_labels(n, qubits.into_iter().map(|q| (q, p)))
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVector {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVector {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn label(&self, qubit: usize) -> Pauli1 {
        Pauli1::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    /// `[x | z]`.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// Number of Y sites, i.e. `|x ∧ z|`.
    fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    /// Phase exponent relative to the Hermitian tensor product with the same
    /// labels: the operator equals `i^k · (P_1 ⊗ … ⊗ P_n)`.
    pub fn tensor_phase(&self) -> u8 {
        ((self.phase as usize + 4 - self.y_count() % 4) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.tensor_phase().is_multiple_of(2)
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    /// Multiplies by `i^k`.
    pub fn times_i(mut self, k: u8) -> Self {
        self.phase = (self.phase + k) % 4;
        self
    }

    pub fn negate(self) -> Self {
        self.times_i(2)
    }

    /// Group product `self · other` with exact phase.
    pub fn mul(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_dim(self.num_qubits(), other.num_qubits())?;
        // (X^a Z^b)(X^c Z^d) = (-1)^{b·c} X^{a+c} Z^{b+d}
        let swaps = self.z.and_count(&other.x);
        let phase = (self.phase as usize + other.phase as usize + 2 * swaps) % 4;
        Ok(PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: phase as u8,
        })
    }

    pub fn dagger(&self) -> PauliOperator {
        // (i^p X^x Z^z)† = i^{-p} Z^z X^x = i^{-p} (-1)^{x·z} X^x Z^z
        let phase = (4 - self.phase as usize + 2 * self.y_count()) % 4;
        PauliOperator {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: phase as u8,
        }
    }

    /// Symplectic form: `true` iff the operators commute.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        check_dim(self.num_qubits(), other.num_qubits())?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &PauliOperator) -> bool {
        let a = self.x.and_count(&other.z);
        let b = self.z.and_count(&other.x);
        (a + b).is_multiple_of(2)
    }

    pub fn support(&self) -> Region {
        Region::from_sorted(self.x.or(&self.z).ones().collect())
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    /// Keeps the factors on `region` and drops the rest. The result is the
    /// Hermitian tensor product with those labels.
    pub fn restrict(&self, region: &Region) -> PauliOperator {
        let n = self.num_qubits();
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for q in region.iter() {
            if q < n {
                x.set(q, self.x.get(q));
                z.set(q, self.z.get(q));
            }
        }
        Self::hermitian(x, z)
    }

    /// Embeds into a larger register; qubit `a` goes to `map[a]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> PauliOperator {
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for (a, &b) in map.iter().enumerate() {
            x.set(b, self.x.get(a));
            z.set(b, self.z.get(a));
        }
        PauliOperator {
            x,
            z,
            phase: self.phase,
        }
    }

    /// Operator on the listed qubits only (in list order), keeping the phase
    /// convention `i^p X^x Z^z` intact.
    pub fn project(&self, qubits: &[usize]) -> PauliOperator {
        let m = qubits.len();
        let mut x = BitVector::zeros(m);
        let mut z = BitVector::zeros(m);
        for (i, &q) in qubits.iter().enumerate() {
            x.set(i, self.x.get(q));
            z.set(i, self.z.get(q));
        }
        PauliOperator {
            x,
            z,
            phase: self.phase,
        }
    }

    pub(crate) fn x_mut(&mut self) -> &mut BitVector {
        &mut self.x
    }

    pub(crate) fn z_mut(&mut self) -> &mut BitVector {
        &mut self.z
    }

    pub(crate) fn add_phase(&mut self, k: usize) {
        self.phase = ((self.phase as usize + k) % 4) as u8;
    }

    /// All `4^n` Hermitian Paulis on `n` qubits with `+` sign, identity first.
    pub fn enumerate_all(n: usize) -> impl Iterator<Item = PauliOperator> {
        assert!(n <= 16);
        (0..(1u64 << (2 * n))).map(move |code| {
            let labels = (0..n).map(|q| {
                let two = (code >> (2 * (n - 1 - q))) & 3;
                let p = match two {
                    0 => Pauli1::I,
                    1 => Pauli1::X,
                    2 => Pauli1::Y,
                    _ => Pauli1::Z,
                };
                (q, p)
            });
            PauliOperator::from_labels(n, labels)
        })
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.tensor_phase() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(sign)?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.label(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parses `[+|-|+i|-i]` followed by one of `IXYZ` per qubit, e.g. `-iXYZ`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (k, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let labels = body
            .chars()
            .enumerate()
            .map(|(q, c)| {
                Pauli1::from_char(c)
                    .map(|p| (q, p))
                    .ok_or_else(|| Error::Parse(format!("invalid Pauli character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliOperator::from_labels(body.chars().count(), labels).times_i(k))
    }
}

impl serde::Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z() {
        let xz = p("X").mul(&p("Z")).unwrap();
        assert_eq!((xz.x.get(0), xz.z.get(0), xz.phase), (true, true, 0));
        // XZ = -iY
        assert_eq!(xz, p("-iY"));
    }

    #[test]
    fn z_times_x() {
        let zx = p("Z").mul(&p("X")).unwrap();
        assert_eq!((zx.x.get(0), zx.z.get(0), zx.phase), (true, true, 2));
        assert_eq!(zx, p("+iY"));
    }

    #[test]
    fn identity_is_neutral() {
        let a = p("-iXYZI");
        assert_eq!(a.mul(&PauliOperator::identity(4)).unwrap(), a);
        assert_eq!(PauliOperator::identity(4).mul(&a).unwrap(), a);
    }

    #[test]
    fn y_squared_is_identity() {
        let y = p("Y");
        assert_eq!(y.phase(), 1);
        assert_eq!(y.mul(&y).unwrap(), PauliOperator::identity(1));
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("XI").commutes(&p("ZI")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(p("XYZ").commutes(&PauliOperator::identity(3)).unwrap());
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn support_and_weight() {
        let a = p("XYI");
        assert_eq!(a.support().as_slice(), &[0, 1]);
        assert_eq!(a.weight(), 2);
        assert_eq!(PauliOperator::identity(3).weight(), 0);
        assert!(PauliOperator::identity(3).support().is_empty());
        assert_eq!(p("ZZZZZ").weight(), 5);
    }

    #[test]
    fn restriction() {
        assert_eq!(p("XZ").restrict(&Region::from_unsorted(vec![0])), p("XI"));
        assert_eq!(p("-XZ").restrict(&Region::default()), PauliOperator::identity(2));
        assert_eq!(p("-iYZ").restrict(&Region::from_unsorted(vec![0, 1])), p("YZ"));
    }

    #[test]
    fn text_round_trip() {
        for s in ["+XYZ", "-iXYZ", "+iIIY", "-ZZ"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("XQ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn enumeration_is_complete() {
        let all: Vec<_> = PauliOperator::enumerate_all(2).collect();
        assert_eq!(all.len(), 16);
        assert!(all[0].is_identity_up_to_phase());
        let distinct: std::collections::HashSet<_> = all.iter().map(|p| p.symplectic()).collect();
        assert_eq!(distinct.len(), 16);
    }
}
