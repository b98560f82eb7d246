//! Task runners. Each returns the JSON result and whether it falsified an
//! invariant the library promises.

use serde::Serialize;
use serde_json::{json, Value};
use topogate::circuit::GateKind;
use topogate::classifier::{
    classify, commutator_k, group_closure, nested_commutators, ClassifyOptions, Conjugated, EncodedGate,
};
use topogate::cleaning::{clean, is_correctable, union_lemma_check};
use topogate::code::distance_with_budget;
use topogate::geometry::simplicial_partition;
use topogate::{Error, Result};

use crate::config::{missing, region_of, ExperimentConfig, Task};

pub struct Outcome {
    pub result: Value,
    pub falsified: bool,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Backend(format!("serialising the report: {e}")))
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    match cfg.task {
        Task::Classify => run_classify(cfg),
        Task::Clean => run_clean(cfg),
        Task::RegionCheck => run_region_check(cfg),
        Task::Partition => run_partition(cfg),
        Task::Distance => run_distance(cfg),
        Task::Commutator => run_commutator(cfg),
        Task::Closure => run_closure(cfg),
    }
}

fn run_classify(cfg: &ExperimentConfig) -> Result<Outcome> {
    let code = cfg.code()?;
    let code2 = cfg.code2()?.unwrap_or_else(|| code.clone());
    let u = cfg.circuit(&code)?;
    let mut opts = ClassifyOptions::default();
    if let Some(j) = cfg.j_max {
        opts.j_max = j;
    }
    if let Some(w) = cfg.w_max {
        opts.distance_w_max = w;
    }
    if let Some(b) = cfg.budget {
        opts.distance_budget = b;
    }
    let report = classify(&code, &code2, &u, &opts)?;
    Ok(Outcome { falsified: report.theorem_consistent == Some(false), result: to_value(&report)? })
}

fn run_clean(cfg: &ExperimentConfig) -> Result<Outcome> {
    let code = cfg.code()?;
    let p = cfg.operator(&code)?;
    let region = cfg.region(&code)?;
    Ok(Outcome { result: to_value(&clean(&code, &p, &region)?)?, falsified: false })
}

fn run_region_check(cfg: &ExperimentConfig) -> Result<Outcome> {
    let code = cfg.code()?;
    let m = cfg.region(&code)?;
    match &cfg.other_region {
        None => Ok(Outcome { result: to_value(&is_correctable(&code, &m)?)?, falsified: false }),
        Some(other) => {
            let k = region_of(other, &code)?;
            let u = union_lemma_check(&code, &m, &k)?;
            Ok(Outcome { falsified: u.falsified, result: to_value(&u)? })
        }
    }
}

fn run_partition(cfg: &ExperimentConfig) -> Result<Outcome> {
    let code = cfg.code()?;
    let lattice = code
        .geometry()
        .ok_or_else(|| Error::Domain("partition needs a code with geometry".into()))?;
    let r = cfg.r.ok_or_else(|| missing("R", cfg.task))?;
    let part = simplicial_partition(lattice, r)?;
    let rhos = cfg.rho.clone().unwrap_or_else(|| vec![1, 2]);
    let mut checks = Vec::new();
    let mut all = true;
    for rho in rhos {
        for (name, region) in [
            ("B_rho(A)", lattice.neighborhood(&part.a, rho)),
            ("B_rho(B)", lattice.neighborhood(&part.b, rho)),
            ("C", part.c.clone()),
        ] {
            let rep = is_correctable(&code, &region)?;
            all &= rep.correctable;
            checks.push(json!({
                "rho": rho,
                "region": name,
                "size": region.len(),
                "correctable": rep.correctable,
                "witness": rep.witness.map(|w| w.to_string()),
            }));
        }
    }
    let mut stats = to_value(&part)?;
    if let Value::Object(map) = &mut stats {
        // the site lists are large; report their sizes instead
        for key in ["a", "b", "c"] {
            if let Some(Value::Array(sites)) = map.remove(key) {
                map.insert(format!("{key}_size"), json!(sites.len()));
            }
        }
    }
    Ok(Outcome {
        result: json!({ "partition": stats, "correctability": checks, "all_correctable": all }),
        falsified: !all,
    })
}

fn run_distance(cfg: &ExperimentConfig) -> Result<Outcome> {
    let code = cfg.code()?;
    let w_max = cfg.w_max.unwrap_or(4);
    let budget = cfg.budget.unwrap_or(50_000_000);
    let res = distance_with_budget(&code, w_max, budget)?;
    Ok(Outcome {
        result: json!({
            "code": code.name(),
            "n": code.n(),
            "k": code.k(),
            "w_max": w_max,
            "d": res.exact(),
            "result": to_value(&res)?,
        }),
        falsified: false,
    })
}

fn run_commutator(cfg: &ExperimentConfig) -> Result<Outcome> {
    let code = cfg.code()?;
    let u = cfg.circuit(&code)?;
    if let Some(paulis) = &cfg.paulis {
        let code1 = cfg.code2()?.unwrap_or_else(|| code.clone());
        let rep = nested_commutators(&code1, &code, &u, paulis)?;
        return Ok(Outcome { falsified: !rep.chain_holds, result: to_value(&rep)? });
    }
    let p = cfg.p.as_ref().ok_or_else(|| missing("p", cfg.task))?;
    let q = cfg.q.as_ref().ok_or_else(|| missing("q", cfg.task))?;
    let rep = commutator_k(&code, p, Conjugated::Circuit { u: &u, q })?;
    Ok(Outcome { result: to_value(&rep)?, falsified: false })
}

fn run_closure(cfg: &ExperimentConfig) -> Result<Outcome> {
    let names = cfg.gates.as_ref().ok_or_else(|| missing("gates", cfg.task))?;
    let d = cfg.d.ok_or_else(|| missing("D", cfg.task))?;
    let step_bound = cfg.step_bound.unwrap_or(8);
    let gates = names
        .iter()
        .map(|name| EncodedGate::from_matrix(&GateKind::from_name(name)?.matrix()))
        .collect::<Result<Vec<_>>>()?;
    let rep = group_closure(&gates, d, step_bound)?;
    let word = rep
        .escape_word
        .as_ref()
        .map(|w| w.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("·"));
    let mut result = to_value(&rep)?;
    if let Value::Object(map) = &mut result {
        map.insert("escape_word_names".into(), json!(word));
        map.insert("gates".into(), json!(names));
    }
    Ok(Outcome { result, falsified: false })
}
