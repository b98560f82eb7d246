//! Concrete code families with geometry attached.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{CodeDocument, GeometryRef, StabilizerCode};
use crate::error::{Error, Result};
use crate::geometry::Lattice;
use crate::symplectic::{Pauli1, PauliOperator};

/// Config-level name of a code family and its parameters, e.g.
/// `{"family":"toric","L":4}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeSpec {
    Toric {
        #[serde(rename = "L")]
        l: usize,
    },
    Color15,
    Repetition {
        n: usize,
    },
    /// Several copies of a base code side by side on the same lattice.
    Stacked {
        base: Box<CodeSpec>,
        copies: usize,
    },
}

impl CodeSpec {
    pub fn build(&self) -> Result<StabilizerCode> {
        match self {
            CodeSpec::Toric { l } => toric_code(*l),
            CodeSpec::Color15 => color_code_15(),
            CodeSpec::Repetition { n } => repetition_code(*n),
            CodeSpec::Stacked { base, copies } => stacked(&base.build()?, *copies),
        }
    }

    /// Linear size used for reporting, where meaningful.
    pub fn size(&self) -> Option<usize> {
        match self {
            CodeSpec::Toric { l } => Some(*l),
            CodeSpec::Repetition { n } => Some(*n),
            CodeSpec::Color15 => None,
            CodeSpec::Stacked { base, .. } => base.size(),
        }
    }
}

/// Toric code on the edges of an `L × L` periodic square lattice.
///
/// Star (X-type) generators come first, vertex `(x, y)` at position `y·L + x`,
/// followed by plaquettes (Z-type). One generator of each species is dependent
/// and is dropped during validation. The logical basis is the four
/// non-contractible loops through the origin:
///
/// * qubit 0: Z on the horizontal edges of row 0, X on the horizontal edges of column 0;
/// * qubit 1: Z on the vertical edges of column 0, X on the vertical edges of row 0.
pub fn toric_code(l: usize) -> Result<StabilizerCode> {
    if l < 2 {
        return Err(Error::Parameter(format!("toric code needs L >= 2, got {l}")));
    }
    let lattice = Arc::new(Lattice::toric_edges(l)?);
    let n = 2 * l * l;
    let h = |x: usize, y: usize| (y % l) * l + (x % l);
    let v = |x: usize, y: usize| l * l + (y % l) * l + (x % l);
    let mut gens = Vec::with_capacity(n);
    for y in 0..l {
        for x in 0..l {
            let star = [h(x, y), h(x + l - 1, y), v(x, y), v(x, y + l - 1)];
            gens.push(PauliOperator::on_region(n, Pauli1::X, star));
        }
    }
    for y in 0..l {
        for x in 0..l {
            let plaq = [h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)];
            gens.push(PauliOperator::on_region(n, Pauli1::Z, plaq));
        }
    }
    let lz = vec![
        PauliOperator::on_region(n, Pauli1::Z, (0..l).map(|x| h(x, 0))),
        PauliOperator::on_region(n, Pauli1::Z, (0..l).map(|y| v(0, y))),
    ];
    let lx = vec![
        PauliOperator::on_region(n, Pauli1::X, (0..l).map(|y| h(0, y))),
        PauliOperator::on_region(n, Pauli1::X, (0..l).map(|x| v(x, 0))),
    ];
    Ok(StabilizerCode::with_logicals(n, gens, lx, lz, Some(lattice))?.named(format!("toric(L={l})")))
}

/// Label of qubit `q` as a nonzero 4-bit vector.
fn rm_label(q: usize) -> usize {
    q + 1
}

/// The 15-qubit punctured 3D color code (punctured Reed–Muller code).
///
/// Qubit `q` carries the nonzero 4-bit label `q + 1`. X checks are the four
/// weight-8 sets `{label : bit i set}`. Z checks are ten weight-4 sets: the six
/// pairwise intersections `{bit i and bit j set}` plus, for each `i`, the set
/// `{bit i set, bit i+1 clear}`. Qubits sit on a tetrahedron: vertices for
/// weight-1 labels, edge midpoints, face centres, and the body centre.
pub fn color_code_15() -> Result<StabilizerCode> {
    let n = 15;
    let with = |pred: &dyn Fn(usize) -> bool| -> Vec<usize> { (0..n).filter(|&q| pred(rm_label(q))).collect() };
    let mut gens = Vec::new();
    for i in 0..4 {
        gens.push(PauliOperator::on_region(n, Pauli1::X, with(&|b| b >> i & 1 == 1)));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            gens.push(PauliOperator::on_region(
                n,
                Pauli1::Z,
                with(&|b| b >> i & 1 == 1 && b >> j & 1 == 1),
            ));
        }
    }
    for i in 0..4 {
        let j = (i + 1) % 4;
        gens.push(PauliOperator::on_region(
            n,
            Pauli1::Z,
            with(&|b| b >> i & 1 == 1 && b >> j & 1 == 0),
        ));
    }
    let corners = [[0i64, 0, 0], [12, 12, 0], [12, 0, 12], [0, 12, 12]];
    let points = (0..n)
        .map(|q| {
            let b = rm_label(q);
            let members: Vec<usize> = (0..4).filter(|i| b >> i & 1 == 1).collect();
            let k = members.len() as i64;
            (0..3)
                .map(|a| members.iter().map(|&i| corners[i][a]).sum::<i64>() / k)
                .collect()
        })
        .collect();
    let lattice = Arc::new(Lattice::from_points(
        "tetrahedron15",
        vec![12, 12, 12],
        vec![false; 3],
        points,
    )?);
    let all: Vec<usize> = (0..n).collect();
    let lx = vec![PauliOperator::on_region(n, Pauli1::X, all.iter().copied())];
    let lz = vec![PauliOperator::on_region(n, Pauli1::Z, all.iter().copied())];
    Ok(StabilizerCode::with_logicals(n, gens, lx, lz, Some(lattice))?.named("color15"))
}

/// Bit-flip repetition code with checks `Z_i Z_{i+1}` on an open chain.
pub fn repetition_code(n: usize) -> Result<StabilizerCode> {
    if n < 2 {
        return Err(Error::Parameter(format!("repetition code needs n >= 2, got {n}")));
    }
    let gens = (0..n - 1)
        .map(|i| PauliOperator::on_region(n, Pauli1::Z, [i, i + 1]))
        .collect();
    let lattice = Arc::new(Lattice::cubic(&[n], false)?);
    Ok(StabilizerCode::build(n, gens, Some(lattice))?.named(format!("repetition(n={n})")))
}

/// `copies` independent copies of `base`; qubit `c·n + q` is qubit `q` of copy `c`
/// and logical qubit `c·k + i` is logical `i` of copy `c`.
pub fn stacked(base: &StabilizerCode, copies: usize) -> Result<StabilizerCode> {
    if copies == 0 {
        return Err(Error::Parameter("stack needs at least one copy".into()));
    }
    let n = base.n();
    let total = copies * n;
    let embed = |p: &PauliOperator, c: usize| {
        let map: Vec<usize> = (0..n).map(|q| c * n + q).collect();
        p.embed(total, &map)
    };
    let mut gens = Vec::new();
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    for c in 0..copies {
        gens.extend(base.generators().iter().map(|g| embed(g, c)));
    }
    for c in 0..copies {
        lx.extend(base.logical_x().iter().map(|g| embed(g, c)));
        lz.extend(base.logical_z().iter().map(|g| embed(g, c)));
    }
    let geometry = match base.geometry() {
        Some(lat) => Some(Arc::new(lat.stacked(copies)?)),
        None => None,
    };
    Ok(StabilizerCode::with_logicals(total, gens, lx, lz, geometry)?.named(format!("{}x{copies}", base.name())))
}

/// Rebuilds a code from its JSON document. A named geometry is rebuilt from the
/// library when it matches a known family.
pub fn code_from_document(doc: &CodeDocument) -> Result<StabilizerCode> {
    let geometry = match &doc.geometry {
        None => None,
        Some(GeometryRef { name, size }) => Some(Arc::new(match (name.as_str(), size) {
            ("toric", Some(l)) => Lattice::toric_edges(*l)?,
            ("chain", Some(n)) => Lattice::cubic(&[*n], false)?,
            ("tetrahedron15", _) => color_code_15()?
                .geometry()
                .map(|l| (**l).clone())
                .expect("color code carries geometry"),
            _ => return Err(Error::Parameter(format!("unknown geometry {name:?}"))),
        })),
    };
    StabilizerCode::build(doc.n, doc.generators.clone(), geometry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::distance;

    #[test]
    fn toric_small_parameters() {
        let code = toric_code(2).unwrap();
        assert_eq!(code.n(), 8);
        assert_eq!(code.k(), 2);
        assert_eq!(code.dropped_dependent(), 2);
        assert_eq!(code.xi(), Some(2));
    }

    #[test]
    fn stars_commute_with_plaquettes() {
        let code = toric_code(3).unwrap();
        for a in code.generators() {
            for b in code.generators() {
                assert!(a.commutes(b).unwrap());
            }
        }
    }

    #[test]
    fn color_code_parameters() {
        let code = color_code_15().unwrap();
        assert_eq!((code.n(), code.k()), (15, 1));
        assert_eq!(code.dropped_dependent(), 0);
        let x_weights: Vec<usize> = code.generators()[..4].iter().map(|g| g.weight()).collect();
        assert_eq!(x_weights, vec![8; 4]);
        assert!(code.generators()[4..].iter().all(|g| g.weight() == 4 && g.x_bits().is_zero()));
        assert_eq!(code.generators().len(), 14);
    }

    #[test]
    fn repetition_fixture() {
        let code = repetition_code(3).unwrap();
        assert_eq!(code.k(), 1);
        assert_eq!(distance(&code, 3).unwrap().exact(), Some(1));
        assert!(code.contains(&"ZIZ".parse().unwrap()).unwrap());
        assert_eq!(code.logical_class(&"XXX".parse().unwrap()).unwrap().to_string(), "+X");
    }

    #[test]
    fn spec_parsing() {
        let spec: CodeSpec = serde_json_like(r#"{"family":"toric","L":4}"#);
        assert_eq!(spec, CodeSpec::Toric { l: 4 });
        let spec: CodeSpec = serde_json_like(r#"{"family":"color15"}"#);
        assert_eq!(spec, CodeSpec::Color15);
    }

    fn serde_json_like(s: &str) -> CodeSpec {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn document_round_trip_rederives_logicals() {
        let code = toric_code(3).unwrap();
        let mut doc = code.document();
        doc.geometry = Some(GeometryRef { name: "toric".into(), size: Some(3) });
        let text = serde_json::to_string(&doc).unwrap();
        let back = code_from_document(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.k(), 2);
        assert_eq!(back.xi(), Some(2));
        assert_eq!(back.generators(), code.generators());
    }
}
