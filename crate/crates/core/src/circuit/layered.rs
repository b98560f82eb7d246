use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::dense::{apply_matrix, basis_state, check_cap, CMatrix};
use super::gate::{GateDocument, GateKind, LocalGate};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{Lattice, Region};
use crate::symplectic::PauliOperator;

/// Largest register `apply_dense` accepts by default.
pub const DENSE_STATE_CAP: usize = 16;
/// Largest register `circuit_unitary` accepts.
pub const DENSE_UNITARY_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Depth-ordered layers of gates with pairwise disjoint supports inside each
/// layer. Layer 0 acts first, so the circuit operator is `L_{h-1} ⋯ L_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredCircuit {
    n: usize,
    layers: Vec<Vec<LocalGate>>,
}

impl LayeredCircuit {
    pub fn new(n: usize, layers: Vec<Vec<LocalGate>>) -> Result<Self> {
        for (li, layer) in layers.iter().enumerate() {
            let mut used = vec![false; n];
            for g in layer {
                for &q in g.support() {
                    if q >= n {
                        return Err(Error::Parameter(format!("gate qubit {q} out of range for n = {n}")));
                    }
                    if used[q] {
                        return Err(Error::Validation(format!("layer {li} touches qubit {q} twice")));
                    }
                    used[q] = true;
                }
            }
        }
        Ok(LayeredCircuit { n, layers })
    }

    pub fn identity(n: usize) -> Self {
        LayeredCircuit { n, layers: Vec::new() }
    }

    /// Places each gate in the earliest layer after every earlier gate that
    /// shares a qubit with it, preserving the operator.
    pub fn from_gates_greedy(n: usize, gates: Vec<LocalGate>) -> Result<Self> {
        let mut next_free = vec![0usize; n];
        let mut layers: Vec<Vec<LocalGate>> = Vec::new();
        for g in gates {
            if let Some(&q) = g.support().iter().find(|&&q| q >= n) {
                return Err(Error::Parameter(format!("gate qubit {q} out of range for n = {n}")));
            }
            let slot = g.support().iter().map(|&q| next_free[q]).max().unwrap_or(0);
            if slot == layers.len() {
                layers.push(Vec::new());
            }
            for &q in g.support() {
                next_free[q] = slot + 1;
            }
            layers[slot].push(g);
        }
        Ok(LayeredCircuit { n, layers })
    }

    /// Depth-1 circuit applying a single-qubit gate to every listed qubit.
    pub fn transversal(kind: GateKind, qubits: &Region, n: usize) -> Result<Self> {
        if kind.arity() != 1 {
            return Err(Error::Parameter(format!(
                "transversal layers need a single-qubit gate, {} acts on {}",
                kind.name(),
                kind.arity()
            )));
        }
        let layer = qubits
            .iter()
            .map(|q| LocalGate::single(kind.clone(), q))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, vec![layer])
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Vec<LocalGate>] {
        &self.layers
    }

    pub fn gates(&self) -> impl Iterator<Item = &LocalGate> {
        self.layers.iter().flatten()
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn is_clifford(&self) -> bool {
        self.gates().all(|g| g.kind().is_clifford())
    }

    /// Largest L∞ diameter of a gate support.
    pub fn range(&self, lattice: &Lattice) -> usize {
        self.gates()
            .map(|g| lattice.diameter(&Region::from_unsorted(g.support().to_vec())).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Operator product `self · other`: `other` acts first.
    pub fn compose(&self, other: &LayeredCircuit) -> Result<LayeredCircuit> {
        check_dim(self.n, other.n)?;
        let mut layers = other.layers.clone();
        layers.extend(self.layers.iter().cloned());
        Ok(LayeredCircuit { n: self.n, layers })
    }

    pub fn dagger(&self) -> LayeredCircuit {
        let layers = self
            .layers
            .iter()
            .rev()
            .map(|layer| layer.iter().map(LocalGate::dagger).collect())
            .collect();
        LayeredCircuit { n: self.n, layers }
    }

    /// Qubits reachable from `region` by chaining gate supports through the
    /// layers in the given order. `UPU†` is supported in the forward cone of
    /// `supp P`.
    pub fn light_cone(&self, region: &Region, direction: Direction) -> Region {
        let mut inside = vec![false; self.n];
        for q in region.iter().filter(|&q| q < self.n) {
            inside[q] = true;
        }
        let mut visit = |layer: &Vec<LocalGate>| {
            for g in layer {
                if g.support().iter().any(|&q| inside[q]) {
                    g.support().iter().for_each(|&q| inside[q] = true);
                }
            }
        };
        match direction {
            Direction::Forward => self.layers.iter().for_each(&mut visit),
            Direction::Backward => self.layers.iter().rev().for_each(&mut visit),
        }
        (0..self.n).filter(|&q| inside[q]).collect()
    }

    /// Drops every gate that never meets the forward cone of `region`.
    /// Conjugation of any operator supported in `region` is unchanged.
    pub fn restrict_to_cone(&self, region: &Region) -> LayeredCircuit {
        let mut inside = vec![false; self.n];
        for q in region.iter().filter(|&q| q < self.n) {
            inside[q] = true;
        }
        let mut layers = Vec::new();
        for layer in &self.layers {
            let mut kept = Vec::new();
            for g in layer {
                if g.support().iter().any(|&q| inside[q]) {
                    g.support().iter().for_each(|&q| inside[q] = true);
                    kept.push(g.clone());
                }
            }
            if !kept.is_empty() {
                layers.push(kept);
            }
        }
        LayeredCircuit { n: self.n, layers }
    }

    /// `U P U†` with exact phase, for Clifford circuits.
    pub fn conjugate_pauli(&self, p: &PauliOperator) -> Result<PauliOperator> {
        check_dim(self.n, p.num_qubits())?;
        if !self.is_clifford() {
            return Err(Error::Backend("non-Clifford gate; use dense backend".into()));
        }
        let mut out = p.clone();
        for g in self.gates() {
            g.conjugate(&mut out);
        }
        Ok(out)
    }

    /// Applies the circuit to a statevector (qubit 0 most significant).
    pub fn apply_dense(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        self.apply_dense_capped(state, DENSE_STATE_CAP)
    }

    pub fn apply_dense_capped(&self, state: &[Complex64], cap: usize) -> Result<Vec<Complex64>> {
        check_cap(self.n, cap, "dense simulation")?;
        check_dim(1 << self.n, state.len())?;
        let mut out = state.to_vec();
        self.apply_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn apply_in_place(&self, state: &mut [Complex64]) {
        for g in self.gates() {
            if !matches!(g.kind(), GateKind::I) {
                apply_matrix(state, self.n, g.support(), &g.kind().matrix());
            }
        }
    }

    /// Full `2^n × 2^n` unitary.
    pub fn circuit_unitary(&self) -> Result<CMatrix> {
        check_cap(self.n, DENSE_UNITARY_CAP, "circuit unitary")?;
        let d = 1usize << self.n;
        let mut m = CMatrix::zeros(d, d);
        for col in 0..d {
            let mut s = basis_state(self.n, col);
            self.apply_in_place(&mut s);
            for (row, v) in s.into_iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        Ok(m)
    }

    pub fn document(&self) -> CircuitDocument {
        CircuitDocument {
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().map(GateDocument::from).collect())
                .collect(),
        }
    }

    pub fn from_document(n: usize, doc: &CircuitDocument) -> Result<Self> {
        let layers = doc
            .layers
            .iter()
            .map(|l| l.iter().map(LocalGate::try_from).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, layers)
    }
}

/// JSON form: `{"layers":[[{"kind":"CNOT","support":[0,5]}, …], …]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDocument {
    pub layers: Vec<Vec<GateDocument>>,
}

const ONE_QUBIT_CLIFFORDS: [GateKind; 7] = [
    GateKind::I,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
];

/// Random depth-`h` Clifford circuit whose two-qubit gates join sites at
/// distance at most `r`. Each layer visits the sites in random order; a free
/// site pairs with a random free neighbour with probability 1/2, otherwise it
/// gets a random single-qubit Clifford.
pub fn random_local_clifford<R: Rng + ?Sized>(lattice: &Lattice, h: usize, r: usize, rng: &mut R) -> LayeredCircuit {
    let n = lattice.num_sites();
    let mut layers = Vec::with_capacity(h);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..h {
        order.shuffle(rng);
        let mut used = vec![false; n];
        let mut layer = Vec::new();
        for &a in &order {
            if used[a] {
                continue;
            }
            let partners: Vec<usize> = if r > 0 && rng.gen_bool(0.5) {
                lattice
                    .neighborhood(&Region::from_sorted(vec![a]), r)
                    .iter()
                    .filter(|&b| b != a && !used[b])
                    .collect()
            } else {
                Vec::new()
            };
            if let Some(&b) = partners.choose(rng) {
                let kind = match rng.gen_range(0..3) {
                    0 => GateKind::Cnot,
                    1 => GateKind::Cz,
                    _ => GateKind::Swap,
                };
                used[a] = true;
                used[b] = true;
                layer.push(LocalGate::new(kind, vec![a, b]).expect("distinct qubits"));
            } else {
                used[a] = true;
                let kind = ONE_QUBIT_CLIFFORDS.choose(rng).expect("nonempty").clone();
                if kind != GateKind::I {
                    layer.push(LocalGate::single(kind, a).expect("arity one"));
                }
            }
        }
        layers.push(layer);
    }
    LayeredCircuit { n, layers }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::dense::{max_abs_diff, pauli_matrix};
    use crate::symplectic::Pauli1;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn gate(kind: GateKind, support: &[usize]) -> LocalGate {
        LocalGate::new(kind, support.to_vec()).unwrap()
    }

    #[test]
    fn textbook_conjugations() {
        let h = LayeredCircuit::new(2, vec![vec![gate(GateKind::H, &[0])]]).unwrap();
        assert_eq!(h.conjugate_pauli(&p("XI")).unwrap(), p("ZI"));
        let cx = LayeredCircuit::new(2, vec![vec![gate(GateKind::Cnot, &[0, 1])]]).unwrap();
        assert_eq!(cx.conjugate_pauli(&p("XI")).unwrap(), p("XX"));
        assert_eq!(cx.conjugate_pauli(&p("IZ")).unwrap(), p("ZZ"));
        let s = LayeredCircuit::new(1, vec![vec![gate(GateKind::S, &[0])]]).unwrap();
        assert_eq!(s.conjugate_pauli(&p("X")).unwrap(), p("Y"));
    }

    #[test]
    fn every_clifford_kind_matches_its_matrix() {
        let kinds = [
            GateKind::I,
            GateKind::X,
            GateKind::Y,
            GateKind::Z,
            GateKind::H,
            GateKind::S,
            GateKind::Sdg,
            GateKind::Cnot,
            GateKind::Swap,
            GateKind::Cz,
        ];
        for kind in kinds {
            let support: Vec<usize> = (0..kind.arity()).collect();
            let n = support.len();
            let c = LayeredCircuit::new(n, vec![vec![gate(kind.clone(), &support)]]).unwrap();
            let u = c.circuit_unitary().unwrap();
            for q in PauliOperator::enumerate_all(n) {
                let image = c.conjugate_pauli(&q).unwrap();
                let lhs = &u * pauli_matrix(&q).unwrap() * u.adjoint();
                assert!(max_abs_diff(&lhs, &pauli_matrix(&image).unwrap()) < 1e-12, "{kind:?} on {q}");
            }
        }
    }

    #[test]
    fn dense_gate_rejected_by_tableau() {
        let t = LayeredCircuit::transversal(GateKind::from_name("T").unwrap(), &Region::full(2), 2).unwrap();
        assert!(matches!(t.conjugate_pauli(&p("XI")), Err(Error::Backend(_))));
    }

    #[test]
    fn light_cone_of_single_cnot() {
        let c = LayeredCircuit::new(3, vec![vec![gate(GateKind::Cnot, &[0, 1])]]).unwrap();
        let cone = c.light_cone(&Region::from_sorted(vec![1]), Direction::Forward);
        assert_eq!(cone.as_slice(), &[0, 1]);
        let empty = LayeredCircuit::identity(3);
        assert_eq!(empty.light_cone(&Region::from_sorted(vec![2]), Direction::Backward).as_slice(), &[2]);
    }

    #[test]
    fn layer_overlap_rejected() {
        let bad = LayeredCircuit::new(2, vec![vec![gate(GateKind::H, &[0]), gate(GateKind::Cz, &[0, 1])]]);
        assert!(matches!(bad, Err(Error::Validation(_))));
    }

    #[test]
    fn greedy_layering_preserves_operator() {
        let gates = vec![
            gate(GateKind::H, &[0]),
            gate(GateKind::Cnot, &[0, 1]),
            gate(GateKind::S, &[2]),
            gate(GateKind::Cz, &[1, 2]),
        ];
        let c = LayeredCircuit::from_gates_greedy(3, gates.clone()).unwrap();
        assert_eq!(c.depth(), 3);
        let serial = LayeredCircuit::new(3, gates.into_iter().map(|g| vec![g]).collect()).unwrap();
        assert!(max_abs_diff(&c.circuit_unitary().unwrap(), &serial.circuit_unitary().unwrap()) < 1e-12);
    }

    #[test]
    fn x_on_first_qubit_sets_most_significant_bit() {
        let c = LayeredCircuit::transversal(GateKind::X, &Region::from_sorted(vec![0]), 3).unwrap();
        let out = c.apply_dense(&basis_state(3, 0)).unwrap();
        assert_eq!(out[0b100], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn random_circuits_respect_range_and_round_trip() {
        let lat = Lattice::toric_edges(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = random_local_clifford(&lat, 3, 1, &mut rng);
        assert_eq!(c.depth(), 3);
        assert!(c.range(&lat) <= 1);
        let q = PauliOperator::single(lat.num_sites(), 5, Pauli1::Y);
        let back = c.dagger().conjugate_pauli(&c.conjugate_pauli(&q).unwrap()).unwrap();
        assert_eq!(back, q);
        assert_eq!(c.dagger().dagger(), c);
        let doc = c.document();
        assert_eq!(LayeredCircuit::from_document(c.num_qubits(), &doc).unwrap(), c);
    }

    #[test]
    fn transversal_rejects_two_qubit_kinds() {
        assert!(LayeredCircuit::transversal(GateKind::Cnot, &Region::full(2), 2).is_err());
    }
}
