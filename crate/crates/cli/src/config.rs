//! Experiment configuration: one JSON object naming a task, the code(s), an
//! optional circuit and the task parameters. Unknown fields are rejected.

use serde::{Deserialize, Serialize};
use topogate::circuit::{random_local_clifford, t_matrix, CircuitDocument, GateKind, LayeredCircuit, LocalGate};
use topogate::code::StabilizerCode;
use topogate::demo::pauli_circuit;
use topogate::geometry::Region;
use topogate::library::CodeSpec;
use topogate::symplectic::{Pauli1, PauliOperator};
use topogate::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Classify,
    Clean,
    RegionCheck,
    Partition,
    Distance,
    Commutator,
    Closure,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Classify => "classify",
            Task::Clean => "clean",
            Task::RegionCheck => "region-check",
            Task::Partition => "partition",
            Task::Distance => "distance",
            Task::Commutator => "commutator",
            Task::Closure => "closure",
        }
    }
}

/// A circuit: a preset name, a parametrised preset, or inline layers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CircuitSpec {
    Named(String),
    Preset(Preset),
    Inline(CircuitDocument),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum Preset {
    TransversalT,
    #[serde(rename = "transversal_CNOT_pair")]
    TransversalCnotPair,
    /// Depth-1 Pauli circuit implementing a logical class (default `X̄` on qubit 0).
    PauliLoop {
        #[serde(default)]
        logical: Option<PauliOperator>,
    },
    RandomLocalClifford {
        h: usize,
        r: usize,
        #[serde(default)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: Task,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSpec>,
    /// Target code of a morphism; defaults to `code`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code2: Option<CodeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Vec<usize>>,
    /// Second region for the union check of `region-check`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_region: Option<Vec<usize>>,
    /// Physical Pauli on `n` qubits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliOperator>,
    /// Logical class on `k` qubits; replaced by its stored representative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical: Option<PauliOperator>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PauliOperator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<PauliOperator>,
    /// Physical Paulis for the nested commutator sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paulis: Option<Vec<PauliOperator>>,
    /// Gate names for the closure task.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gates: Option<Vec<String>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_bound: Option<usize>,
}

pub fn missing(field: &str, task: Task) -> Error {
    Error::Parameter(format!("task {} needs the field {field:?}", task.name()))
}

impl ExperimentConfig {
    pub fn code(&self) -> Result<StabilizerCode> {
        self.code.as_ref().ok_or_else(|| missing("code", self.task))?.build()
    }

    pub fn code2(&self) -> Result<Option<StabilizerCode>> {
        self.code2.as_ref().map(CodeSpec::build).transpose()
    }

    pub fn region(&self, code: &StabilizerCode) -> Result<Region> {
        region_of(self.region.as_ref().ok_or_else(|| missing("region", self.task))?, code)
    }

    /// Physical operator from `pauli`, or the representative of `logical`.
    pub fn operator(&self, code: &StabilizerCode) -> Result<PauliOperator> {
        match (&self.pauli, &self.logical) {
            (Some(p), None) => Ok(p.clone()),
            (None, Some(l)) => code.logical_representative(l),
            (Some(_), Some(_)) => Err(Error::Parameter("give either pauli or logical, not both".into())),
            (None, None) => Err(missing("pauli", self.task)),
        }
    }

    pub fn circuit(&self, code: &StabilizerCode) -> Result<LayeredCircuit> {
        let spec = self.circuit.as_ref().ok_or_else(|| missing("circuit", self.task))?;
        build_circuit(spec, code, self.seed)
    }
}

pub fn region_of(sites: &[usize], code: &StabilizerCode) -> Result<Region> {
    if let Some(&q) = sites.iter().find(|&&q| q >= code.n()) {
        return Err(Error::Parameter(format!("region qubit {q} out of range for n = {}", code.n())));
    }
    Ok(Region::from_unsorted(sites.to_vec()))
}

fn build_circuit(spec: &CircuitSpec, code: &StabilizerCode, seed: Option<u64>) -> Result<LayeredCircuit> {
    let n = code.n();
    match spec {
        CircuitSpec::Inline(doc) => LayeredCircuit::from_document(n, doc),
        CircuitSpec::Named(name) => {
            let preset = match name.as_str() {
                "transversal_T" => Preset::TransversalT,
                "transversal_CNOT_pair" => Preset::TransversalCnotPair,
                "pauli_loop" => Preset::PauliLoop { logical: None },
                other => return Err(Error::Parameter(format!("unknown circuit preset {other:?}"))),
            };
            build_preset(&preset, code, seed)
        }
        CircuitSpec::Preset(p) => build_preset(p, code, seed),
    }
}

fn build_preset(preset: &Preset, code: &StabilizerCode, seed: Option<u64>) -> Result<LayeredCircuit> {
    let n = code.n();
    match preset {
        Preset::TransversalT => LayeredCircuit::transversal(GateKind::Dense(t_matrix(false)), &Region::full(n), n),
        Preset::TransversalCnotPair => {
            if !n.is_multiple_of(2) {
                return Err(Error::Parameter("transversal_CNOT_pair needs a two-copy stacked code".into()));
            }
            let half = n / 2;
            let layer = (0..half)
                .map(|q| LocalGate::new(GateKind::Cnot, vec![q, half + q]))
                .collect::<Result<Vec<_>>>()?;
            LayeredCircuit::new(n, vec![layer])
        }
        Preset::PauliLoop { logical } => {
            if code.k() == 0 {
                return Err(Error::Parameter("pauli_loop needs a code with k >= 1".into()));
            }
            let class = logical.clone().unwrap_or_else(|| PauliOperator::single(code.k(), 0, Pauli1::X));
            pauli_circuit(&code.logical_representative(&class)?)
        }
        Preset::RandomLocalClifford { h, r, seed: own } => {
            let seed = own
                .or(seed)
                .ok_or_else(|| Error::Parameter("random_local_clifford needs a seed".into()))?;
            let lattice = code
                .geometry()
                .ok_or_else(|| Error::Domain("random_local_clifford needs a code with geometry".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(random_local_clifford(lattice, *h, *r, &mut rng))
        }
    }
}

/// Applies the `--seed` override to the config and to any seeded preset.
pub fn override_seed(config: &mut ExperimentConfig, seed: u64) {
    config.seed = Some(seed);
    if let Some(CircuitSpec::Preset(Preset::RandomLocalClifford { seed: s, .. })) = &mut config.circuit {
        *s = Some(seed);
    }
}
