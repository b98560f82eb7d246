//! Lattice geometry: sites, the L∞ metric, regions, and the two constructions
//! used by the locality arguments (torus strips and the simplicial partition).

mod lattice;
mod partition;
mod region;

pub use lattice::{Lattice, Site};
pub use partition::{simplicial_partition, simplicial_partition_with, PartitionShape, DEFAULT_SHAPE, ChunkStats, SimplicialPartition};
pub use region::Region;

use serde::Serialize;

use crate::error::{Error, Result};

/// Width-one non-contractible strips of edge qubits on the torus.
///
/// `gamma1` runs horizontally (edges with lattice row 0), `gamma2` vertically
/// (lattice column 0). `delta1` and `delta2` are their translates by half the
/// lattice size.
#[derive(Debug, Clone, Serialize)]
pub struct TorusStrips {
    pub gamma1: Region,
    pub gamma2: Region,
    pub delta1: Region,
    pub delta2: Region,
}

impl TorusStrips {
    pub fn gamma(&self) -> Region {
        self.gamma1.union(&self.gamma2)
    }

    pub fn delta(&self) -> Region {
        self.delta1.union(&self.delta2)
    }
}

/// Strips on the edge lattice of [`Lattice::toric_edges`]`(l)`.
pub fn toric_strips(l: usize) -> Result<TorusStrips> {
    if l < 4 || !l.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "torus strips need an even L >= 4, got {l}"
        )));
    }
    let lat = Lattice::toric_edges(l)?;
    let shift = l as i64; // half of the doubled extent 2L
    let band = |axis: usize, lo: i64| -> Region {
        (0..lat.num_sites())
            .filter(|&i| {
                let c = lat.coords(i)[axis];
                c == lo || c == lo + 1
            })
            .collect()
    };
    Ok(TorusStrips {
        gamma1: band(1, 0),
        gamma2: band(0, 0),
        delta1: band(1, shift),
        delta2: band(0, shift),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_at_l4() {
        let s = toric_strips(4).unwrap();
        assert!(s.gamma1.is_disjoint(&s.delta1));
        assert!(s.gamma2.is_disjoint(&s.delta2));
        // one horizontal and one vertical edge at the origin vertex
        assert_eq!(s.gamma1.intersection(&s.gamma2).len(), 2);
        assert_eq!(s.gamma1.len(), 8);
        let lat = Lattice::toric_edges(4).unwrap();
        let shifted: Region = lat
            .translation(&[0, 4])
            .unwrap()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| s.gamma1.contains(*i))
            .map(|(_, j)| j)
            .collect();
        assert_eq!(shifted, s.delta1);
    }

    #[test]
    fn strips_reject_odd_sizes() {
        assert!(toric_strips(5).is_err());
        assert!(toric_strips(2).is_err());
    }
}
