//! Stabilizer codes: validation, logical basis, membership, logical classes,
//! and an exhaustive distance search.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{Lattice, Region};
use crate::symplectic::{BitMatrix, BitVector, Pauli1, PauliOperator, RowSpace};

/// Codewords are the simultaneous +1 eigenvectors of every generator and every
/// stored `logical_z`; the stored `logical_x[i]` / `logical_z[i]` act exactly as
/// `X_i` / `Z_i` with a `+` sign. All logical classes and dense isometries use
/// this basis.
pub const BASIS_CONVENTION: &str =
    "|0..0> is the +1 eigenvector of all generators and all stored logical Z; \
     stored logical X_i, Z_i act as +X_i, +Z_i";

#[derive(Debug, Clone)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    geometry: Option<Arc<Lattice>>,
    xi: Option<usize>,
    dropped_dependent: usize,
    span: RowSpace,
}

impl StabilizerCode {
    /// Validates the generators, drops dependent ones, and derives a logical
    /// basis by symplectic Gram–Schmidt.
    pub fn build(n: usize, generators: Vec<PauliOperator>, geometry: Option<Arc<Lattice>>) -> Result<Self> {
        let (generators, dropped, span) = validate_generators(n, generators)?;
        let (logical_x, logical_z) = derive_logicals(n, &generators);
        Self::assemble(n, generators, logical_x, logical_z, geometry, dropped, span)
    }

    /// Like [`StabilizerCode::build`] but with caller-chosen logical representatives,
    /// which must form a canonical symplectic basis of the logical space.
    pub fn with_logicals(
        n: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
        geometry: Option<Arc<Lattice>>,
    ) -> Result<Self> {
        let (generators, dropped, span) = validate_generators(n, generators)?;
        let k = n - generators.len();
        if logical_x.len() != k || logical_z.len() != k {
            return Err(Error::Validation(format!(
                "expected {k} logical pairs, got {} X and {} Z",
                logical_x.len(),
                logical_z.len()
            )));
        }
        for l in logical_x.iter().chain(&logical_z) {
            check_dim(n, l.num_qubits())?;
            if !l.is_hermitian() {
                return Err(Error::Validation(format!("logical representative {l} is not Hermitian")));
            }
            if let Some(g) = generators.iter().find(|g| !g.commutes_unchecked(l)) {
                return Err(Error::Validation(format!("logical {l} anticommutes with generator {g}")));
            }
        }
        check_pairing(&logical_x, &logical_z)?;
        Self::assemble(n, generators, logical_x, logical_z, geometry, dropped, span)
    }

    fn assemble(
        n: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
        geometry: Option<Arc<Lattice>>,
        dropped_dependent: usize,
        span: RowSpace,
    ) -> Result<Self> {
        let xi = match &geometry {
            Some(lat) => {
                check_dim(n, lat.num_sites())?;
                Some(
                    generators
                        .iter()
                        .map(|g| lat.diameter(&g.support()).unwrap_or(0))
                        .max()
                        .unwrap_or(0),
                )
            }
            None => None,
        };
        Ok(StabilizerCode {
            name: String::from("custom"),
            n,
            generators,
            logical_x,
            logical_z,
            geometry,
            xi,
            dropped_dependent,
            span,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn geometry(&self) -> Option<&Arc<Lattice>> {
        self.geometry.as_ref()
    }

    /// Largest L∞ diameter of a generator support, when geometry is attached.
    pub fn xi(&self) -> Option<usize> {
        self.xi
    }

    /// Number of dependent generators removed during validation.
    pub fn dropped_dependent(&self) -> usize {
        self.dropped_dependent
    }

    /// Product of generators selected by `comb`, with exact phase.
    pub fn generator_product(&self, comb: &BitVector) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.n);
        for i in comb.ones() {
            acc = acc.mul(&self.generators[i]).expect("generator dimensions checked");
        }
        acc
    }

    /// Expresses `p` as `i^t · S` with `S` a generator product, if the symplectic
    /// part of `p` lies in the stabilizer span. Returns `(t, combination)`.
    pub fn stabilizer_decomposition(&self, p: &PauliOperator) -> Option<(u8, BitVector)> {
        let comb = self.span.decompose(&p.symplectic())?;
        let s = self.generator_product(&comb);
        let t = (p.phase() + 4 - s.phase()) % 4;
        Some((t, comb))
    }

    /// Membership in the stabilizer group, phase included.
    pub fn contains(&self, p: &PauliOperator) -> Result<bool> {
        check_dim(self.n, p.num_qubits())?;
        Ok(matches!(self.stabilizer_decomposition(p), Some((0, _))))
    }

    /// `true` iff the symplectic part of `p` is in the stabilizer span (phase ignored).
    pub fn in_stabilizer_span(&self, p: &PauliOperator) -> bool {
        self.span.contains(&p.symplectic())
    }

    /// Commutes with every generator.
    pub fn is_logical(&self, p: &PauliOperator) -> Result<bool> {
        check_dim(self.n, p.num_qubits())?;
        Ok(self.generators.iter().all(|g| g.commutes_unchecked(p)))
    }

    /// The encoded k-qubit Pauli implemented by `p` on the codespace.
    pub fn logical_class(&self, p: &PauliOperator) -> Result<PauliOperator> {
        if !self.is_logical(p)? {
            return Err(Error::Domain(format!("{p} is not in centralizer of the stabilizer group")));
        }
        let k = self.k();
        let mut xb = BitVector::zeros(k);
        let mut zb = BitVector::zeros(k);
        // X̄^a Z̄^b with the physical representatives, X factors to the left
        let mut rep = PauliOperator::identity(self.n);
        for i in 0..k {
            if !p.commutes_unchecked(&self.logical_z[i]) {
                xb.set(i, true);
                rep = rep.mul(&self.logical_x[i])?;
            }
        }
        for i in 0..k {
            if !p.commutes_unchecked(&self.logical_x[i]) {
                zb.set(i, true);
                rep = rep.mul(&self.logical_z[i])?;
            }
        }
        let rest = p.mul(&rep.dagger())?;
        let (t, _) = self.stabilizer_decomposition(&rest).ok_or_else(|| {
            Error::Inconsistency(format!("{p} commutes with the code but its residual is not a stabilizer"))
        })?;
        PauliOperator::from_parts(xb, zb, t)
    }

    /// Physical representative of the k-qubit Pauli `logical` built from the
    /// stored logical basis (exact phase).
    pub fn logical_representative(&self, logical: &PauliOperator) -> Result<PauliOperator> {
        check_dim(self.k(), logical.num_qubits())?;
        let mut rep = PauliOperator::identity(self.n);
        for i in logical.x_bits().ones() {
            rep = rep.mul(&self.logical_x[i])?;
        }
        for i in logical.z_bits().ones() {
            rep = rep.mul(&self.logical_z[i])?;
        }
        Ok(rep.times_i(logical.phase()))
    }

    /// Check matrix with rows `[z | x]`, so that `H · [x; z]` is the syndrome.
    pub fn syndrome_matrix(&self) -> BitMatrix {
        let rows = self
            .generators
            .iter()
            .map(|g| g.z_bits().concat(g.x_bits()))
            .collect();
        BitMatrix::from_rows(2 * self.n, rows).expect("consistent widths")
    }

    pub fn document(&self) -> CodeDocument {
        CodeDocument {
            n: self.n,
            generators: self.generators.clone(),
            geometry: None,
        }
    }
}

/// JSON form of a code. The logical basis is not stored; it is re-derived on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub n: usize,
    pub generators: Vec<PauliOperator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryRef>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeometryRef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

fn validate_generators(n: usize, generators: Vec<PauliOperator>) -> Result<(Vec<PauliOperator>, usize, RowSpace)> {
    for (i, g) in generators.iter().enumerate() {
        check_dim(n, g.num_qubits())?;
        if !g.is_hermitian() {
            return Err(Error::Validation(format!("generator {i} ({g}) is not Hermitian")));
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if !generators[i].commutes_unchecked(&generators[j]) {
                return Err(Error::Validation(format!(
                    "generators {i} ({}) and {j} ({}) anticommute",
                    generators[i], generators[j]
                )));
            }
        }
    }
    let mut kept = Vec::new();
    let mut dropped = 0;
    let mut kept_space = RowSpace::new(2 * n, generators.len());
    for (i, g) in generators.iter().enumerate() {
        let v = g.symplectic();
        if let Some(comb) = kept_space.decompose(&v) {
            // g = ± (product of kept generators); the minus sign puts -I in the group
            let mut prod = PauliOperator::identity(n);
            for j in comb.ones() {
                prod = prod.mul(&kept[j])?;
            }
            if prod.phase() != g.phase() {
                return Err(Error::Validation(format!(
                    "generator {i} ({g}) equals minus a product of earlier generators: -I is in the group"
                )));
            }
            dropped += 1;
        } else {
            kept_space.insert(&v);
            kept.push(g.clone());
        }
    }
    Ok((kept, dropped, kept_space))
}

fn symplectic_product(a: &BitVector, b: &BitVector, n: usize) -> bool {
    // ⟨(x1,z1),(x2,z2)⟩ = x1·z2 + z1·x2
    let (x1, z1) = (a.slice(0, n), a.slice(n, n));
    let (x2, z2) = (b.slice(0, n), b.slice(n, n));
    x1.dot(&z2) ^ z1.dot(&x2)
}

fn derive_logicals(n: usize, generators: &[PauliOperator]) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
    // centralizer = kernel of rows [z | x]
    let rows: Vec<BitVector> = generators.iter().map(|g| g.z_bits().concat(g.x_bits())).collect();
    let check = BitMatrix::from_rows(2 * n, rows).expect("consistent widths");
    let mut pool: std::collections::VecDeque<BitVector> = check.kernel().into();
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    while let Some(v) = pool.pop_front() {
        let Some(pos) = pool.iter().position(|w| symplectic_product(&v, w, n)) else {
            continue;
        };
        let w = pool.remove(pos).expect("index from position");
        for u in pool.iter_mut() {
            let with_w = symplectic_product(u, &w, n);
            let with_v = symplectic_product(u, &v, n);
            if with_w {
                u.xor_assign(&v);
            }
            if with_v {
                u.xor_assign(&w);
            }
        }
        let (mut a, mut b) = (v, w);
        // prefer an X-carrying logical X and a Z-type logical Z
        let x_part = |t: &BitVector| !t.slice(0, n).is_zero();
        if !x_part(&a) && x_part(&b) {
            std::mem::swap(&mut a, &mut b);
        }
        lx.push(PauliOperator::from_symplectic(&a));
        lz.push(PauliOperator::from_symplectic(&b));
    }
    (lx, lz)
}

fn check_pairing(lx: &[PauliOperator], lz: &[PauliOperator]) -> Result<()> {
    let k = lx.len();
    for i in 0..k {
        for j in 0..k {
            let xz = lx[i].commutes_unchecked(&lz[j]);
            if (i == j) == xz {
                return Err(Error::Validation(format!(
                    "logical X{i} / Z{j} violate the canonical pairing"
                )));
            }
            if i < j && (!lx[i].commutes_unchecked(&lx[j]) || !lz[i].commutes_unchecked(&lz[j])) {
                return Err(Error::Validation(format!("logicals {i} and {j} do not commute")));
            }
        }
    }
    Ok(())
}

/// Verifies the canonical symplectic pairing of the stored basis over all
/// `2k × 2k` pairs.
pub fn logical_basis_is_canonical(code: &StabilizerCode) -> bool {
    check_pairing(code.logical_x(), code.logical_z()).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceResult {
    /// Minimum weight of a nontrivial logical, with one witness of that weight.
    Exact { d: usize, witness: PauliOperator },
    /// No nontrivial logical of weight `<= w_max` exists.
    LowerBound { w_max: usize },
}

impl DistanceResult {
    pub fn exact(&self) -> Option<usize> {
        match self {
            DistanceResult::Exact { d, .. } => Some(*d),
            DistanceResult::LowerBound { .. } => None,
        }
    }
}

/// Default cap on the number of weight-≤w candidates examined.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 2_000_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exhaustive minimum-weight search over Paulis of weight `<= w_max`.
///
/// Supports are visited in increasing weight and lexicographic order. The last
/// site of every support is not enumerated: its (qubit, Pauli) pair is looked up
/// from the syndrome the prefix leaves behind.
pub fn distance(code: &StabilizerCode, w_max: usize) -> Result<DistanceResult> {
    distance_with_budget(code, w_max, DEFAULT_DISTANCE_BUDGET)
}

pub fn distance_with_budget(code: &StabilizerCode, w_max: usize, budget: u128) -> Result<DistanceResult> {
    if w_max == 0 {
        return Err(Error::Parameter("w_max must be at least 1".into()));
    }
    let n = code.n();
    let r = code.generators().len();
    let labels = [Pauli1::X, Pauli1::Y, Pauli1::Z];
    let mut syndromes: Vec<[BitVector; 3]> = Vec::with_capacity(n);
    let mut lookup: HashMap<BitVector, Vec<(usize, usize)>> = HashMap::new();
    for q in 0..n {
        let s = labels.map(|p| {
            let single = PauliOperator::single(n, q, p);
            BitVector::from_bools(
                &code
                    .generators()
                    .iter()
                    .map(|g| !g.commutes_unchecked(&single))
                    .collect::<Vec<_>>(),
            )
        });
        for (li, sv) in s.iter().enumerate() {
            lookup.entry(sv.clone()).or_default().push((q, li));
        }
        syndromes.push(s);
    }
    let mut spent: u128 = 0;
    for w in 1..=w_max.min(n) {
        // prefixes of length w-1, each followed by a lookup
        spent += binomial(n, w - 1) * 3u128.pow(w as u32 - 1);
        if spent > budget {
            return Err(Error::Budget { needed: spent, budget });
        }
        let mut search = Search {
            code,
            syndromes: &syndromes,
            lookup: &lookup,
            labels,
            prefix: Vec::with_capacity(w),
            syndrome: BitVector::zeros(r),
        };
        if let Some(witness) = search.run(w, 0) {
            return Ok(DistanceResult::Exact { d: w, witness });
        }
    }
    Ok(DistanceResult::LowerBound { w_max })
}

struct Search<'a> {
    code: &'a StabilizerCode,
    syndromes: &'a [[BitVector; 3]],
    lookup: &'a HashMap<BitVector, Vec<(usize, usize)>>,
    labels: [Pauli1; 3],
    prefix: Vec<(usize, usize)>,
    syndrome: BitVector,
}

impl Search<'_> {
    fn run(&mut self, remaining: usize, start: usize) -> Option<PauliOperator> {
        let n = self.code.n();
        if remaining == 1 {
            let candidates = self.lookup.get(&self.syndrome)?;
            for &(q, li) in candidates {
                if q < start {
                    continue;
                }
                let mut labels: Vec<(usize, Pauli1)> =
                    self.prefix.iter().map(|&(q, l)| (q, self.labels[l])).collect();
                labels.push((q, self.labels[li]));
                let p = PauliOperator::from_labels(n, labels);
                if !self.code.in_stabilizer_span(&p) {
                    return Some(p);
                }
            }
            return None;
        }
        for q in start..n {
            if n - q < remaining {
                break;
            }
            for li in 0..3 {
                self.syndrome.xor_assign(&self.syndromes[q][li]);
                self.prefix.push((q, li));
                let found = self.run(remaining - 1, q + 1);
                self.prefix.pop();
                self.syndrome.xor_assign(&self.syndromes[q][li]);
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
}

/// Restricts the code's generator span to a region: returns the stabilizer
/// elements supported inside `region` as symplectic vectors.
pub(crate) fn stabilizers_inside(code: &StabilizerCode, region: &Region) -> Vec<BitVector> {
    let n = code.n();
    let outside = region.complement(n);
    // rows indexed by (outside qubit, x/z), columns by generator
    let r = code.generators().len();
    let mut rows = Vec::with_capacity(2 * outside.len());
    for q in outside.iter() {
        rows.push(BitVector::from_bools(
            &code.generators().iter().map(|g| g.x_bits().get(q)).collect::<Vec<_>>(),
        ));
        rows.push(BitVector::from_bools(
            &code.generators().iter().map(|g| g.z_bits().get(q)).collect::<Vec<_>>(),
        ));
    }
    let m = BitMatrix::from_rows(r, rows).expect("consistent widths");
    m.kernel()
        .into_iter()
        .map(|comb| code.generator_product(&comb).symplectic())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn rep3() -> StabilizerCode {
        StabilizerCode::build(3, vec![p("ZZI"), p("IZZ")], None).unwrap()
    }

    /// All 4^n Paulis (sign +) commuting with the generators: brute-force centralizer.
    fn centralizer_brute(code: &StabilizerCode) -> Vec<PauliOperator> {
        PauliOperator::enumerate_all(code.n())
            .filter(|q| code.generators().iter().all(|g| g.commutes(q).unwrap()))
            .collect()
    }

    #[test]
    fn repetition_code_logicals() {
        let code = rep3();
        assert_eq!(code.k(), 1);
        // the centralizer has 2^(2n - r) = 16 elements; 4 of them are stabilizers
        let cent = centralizer_brute(&code);
        assert_eq!(cent.len(), 16);
        let stab: Vec<_> = cent.iter().filter(|q| code.in_stabilizer_span(q)).collect();
        assert_eq!(stab.len(), 4);
        // logical Z is in the class of ZII, logical X in the class of XXX
        let zii = code.logical_z()[0].mul(&p("ZII")).unwrap();
        assert!(code.in_stabilizer_span(&zii));
        let xxx = code.logical_x()[0].mul(&p("XXX")).unwrap();
        assert!(code.in_stabilizer_span(&xxx));
        assert_eq!(code.logical_class(&p("XXX")).unwrap(), p("X"));
    }

    #[test]
    fn empty_generator_list() {
        let code = StabilizerCode::build(2, vec![], None).unwrap();
        assert_eq!(code.k(), 2);
        assert!(logical_basis_is_canonical(&code));
        for q in 0..2 {
            assert_eq!(code.logical_class(&PauliOperator::single(2, q, Pauli1::X)).unwrap().weight(), 1);
        }
    }

    #[test]
    fn membership() {
        let code = rep3();
        assert!(code.contains(&p("ZZI")).unwrap());
        assert!(!code.contains(&p("-ZZI")).unwrap());
        assert!(code.contains(&p("ZIZ")).unwrap());
        assert!(!code.contains(&p("ZII")).unwrap());
    }

    #[test]
    fn generators_have_trivial_class() {
        let code = rep3();
        for g in code.generators() {
            assert_eq!(code.logical_class(g).unwrap(), PauliOperator::identity(1));
        }
        assert_eq!(code.logical_class(&p("-ZZI")).unwrap(), p("-I"));
        assert!(code.logical_class(&p("XII")).is_err());
    }

    #[test]
    fn validation_errors() {
        let err = StabilizerCode::build(2, vec![p("XI"), p("ZI")], None).unwrap_err();
        assert!(err.to_string().contains("anticommute"));
        let err = StabilizerCode::build(2, vec![p("ZZ"), p("-ZZ")], None).unwrap_err();
        assert!(err.to_string().contains("-I"));
        assert!(StabilizerCode::build(2, vec![p("+iZZ")], None).is_err());
        let reduced = StabilizerCode::build(3, vec![p("ZZI"), p("IZZ"), p("ZIZ")], None).unwrap();
        assert_eq!(reduced.dropped_dependent(), 1);
        assert_eq!(reduced.k(), 1);
    }

    #[test]
    fn distance_of_repetition_code() {
        let code = rep3();
        let d = distance(&code, 3).unwrap();
        assert_eq!(d.exact(), Some(1));
    }

    #[test]
    fn distance_budget_is_explicit() {
        let code = StabilizerCode::build(20, vec![], None).unwrap();
        let big = crate::library::toric_code(4).unwrap();
        assert!(matches!(
            distance_with_budget(&big, 6, 1000),
            Err(Error::Budget { .. })
        ));
        assert_eq!(distance(&code, 1).unwrap().exact(), Some(1));
        assert!(distance(&code, 0).is_err());
    }
}
