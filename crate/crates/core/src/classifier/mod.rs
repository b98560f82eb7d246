//! Encoded-gate extraction, Clifford-hierarchy levels, commutator experiments
//! and closure of gate sets.

mod closure;
mod codespace;
mod commutator;
mod encoded;
mod hierarchy;

use serde::Serialize;

pub use closure::{group_closure, group_closure_with_budget, ClosureReport, CLOSURE_MAX_K, DEFAULT_STATE_BUDGET};
pub use codespace::{codeword_basis, CODESPACE_CAP};
pub use commutator::{commutator_k, nested_commutators, CommutatorReport, Conjugated, NestedReport, NestedStep, LOCAL_DENSE_CAP};
pub use encoded::{
    encoded_gate, encoded_gate_clifford, encoded_gate_dense, hierarchy_level, is_morphism, morphism_check, Backend,
    EncodedGate, EncodedRepr, MorphismCheck, MORPHISM_TOL,
};
pub use hierarchy::{
    dense_level, dense_membership, verify_certificate, Certificate, HierarchyVerdict, Level, LEVEL_TOL, MAX_DENSE_K,
};

use crate::circuit::LayeredCircuit;
use crate::code::{distance_with_budget, DistanceResult, StabilizerCode, BASIS_CONVENTION};
use crate::error::{Error, Result};

/// Label of the checkable stand-in for "ξ, hr ≪ d^{1/D}".
pub const PREMISE_PROXY: &str = "h*r*(2D+3) < d^(1/D), artifact-chosen constant";

#[derive(Debug, Clone, Serialize)]
pub struct CircuitStats {
    pub h: usize,
    pub r: usize,
    pub rho: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremPremise {
    pub xi: Option<usize>,
    /// Exact distance, or the certified lower bound when the search stopped early.
    pub d: Option<usize>,
    pub d_is_lower_bound: bool,
    #[serde(rename = "D")]
    pub dim: Option<usize>,
    pub proxy: &'static str,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub code1: String,
    pub code2: String,
    pub n: usize,
    pub k: usize,
    pub morphism: MorphismCheck,
    pub gate: Option<EncodedGate>,
    pub verdict: Option<HierarchyVerdict>,
    pub level: Option<usize>,
    pub j_max: usize,
    pub circuit: CircuitStats,
    pub theorem_premise: TheoremPremise,
    /// `level ≤ D` when the premise holds; `None` when it does not apply.
    pub theorem_consistent: Option<bool>,
    pub basis_convention: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub j_max: usize,
    /// Largest weight searched when computing `d` for the premise.
    pub distance_w_max: usize,
    pub distance_budget: u128,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            j_max: 3,
            distance_w_max: 4,
            distance_budget: 50_000_000,
        }
    }
}

fn premise(code: &StabilizerCode, stats: &CircuitStats, opts: &ClassifyOptions) -> TheoremPremise {
    let dim = code.geometry().map(|l| l.dim());
    let (d, lower) = match distance_with_budget(code, opts.distance_w_max, opts.distance_budget) {
        Ok(DistanceResult::Exact { d, .. }) => (Some(d), false),
        Ok(DistanceResult::LowerBound { w_max }) => (Some(w_max + 1), true),
        Err(_) => (None, false),
    };
    let satisfied = match (d, dim) {
        (Some(d), Some(dd)) if dd > 0 => {
            let lhs = (stats.h * stats.r * (2 * dd + 3)) as f64;
            lhs < (d as f64).powf(1.0 / dd as f64)
        }
        _ => false,
    };
    TheoremPremise {
        xi: code.xi(),
        d,
        d_is_lower_bound: lower,
        dim,
        proxy: PREMISE_PROXY,
        satisfied,
    }
}

/// Morphism check, encoded gate, hierarchy level, circuit statistics and the
/// premise flag in one report.
pub fn classify(
    code1: &StabilizerCode,
    code2: &StabilizerCode,
    u: &LayeredCircuit,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let morphism = morphism_check(code1, code2, u)?;
    let h = u.depth();
    let r = match code2.geometry() {
        Some(lat) => u.range(lat),
        None => return Err(Error::Domain("classification needs a code with geometry".into())),
    };
    let circuit = CircuitStats { h, r, rho: h * r };
    let theorem_premise = premise(code2, &circuit, opts);
    let (gate, verdict) = if morphism.holds {
        let gate = encoded_gate(code1, code2, u)?;
        let verdict = hierarchy_level(&gate, opts.j_max)?;
        (Some(gate), Some(verdict))
    } else {
        (None, None)
    };
    let level = verdict.as_ref().and_then(HierarchyVerdict::level);
    let theorem_consistent = match (&verdict, theorem_premise.satisfied, theorem_premise.dim) {
        (Some(v), true, Some(dd)) => Some(v.level().is_some_and(|l| l <= dd)),
        _ => None,
    };
    Ok(ClassificationReport {
        code1: code1.name().to_string(),
        code2: code2.name().to_string(),
        n: code1.n(),
        k: code1.k(),
        morphism,
        gate,
        verdict,
        level,
        j_max: opts.j_max,
        circuit,
        theorem_premise,
        theorem_consistent,
        basis_convention: BASIS_CONVENTION,
    })
}
