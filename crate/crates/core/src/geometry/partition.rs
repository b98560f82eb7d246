//! Vertex / edge / triangle partition of a periodic 2D lattice.
//!
//! The torus is triangulated by a rhombic tiling: vertex rows of horizontal
//! spacing `R` alternate with rows shifted by `R/2`, and the row height is the
//! integer closest to `R·√3/2` that tiles the torus with an even number of
//! rows. Every simplex owns one cell: `C` holds the vertex cells, `B` the edge
//! cells and `A` the triangle cells. Two cell shapes are offered; see
//! [`PartitionShape`]. Sites at an exact tie go to `C` first, then `B`.

use serde::Serialize;

use super::{Lattice, Region};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ChunkStats {
    pub chunks: usize,
    pub max_diameter: usize,
    /// `None` when the region is a single chunk.
    pub min_separation: Option<usize>,
    /// `max_diameter / R` in coordinate units.
    pub diameter_ratio: f64,
    /// `min_separation / R` in coordinate units.
    pub separation_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicialPartition {
    pub a: Region,
    pub b: Region,
    pub c: Region,
    /// `R` in lattice units and in coordinate units.
    pub r_lattice: usize,
    pub r_coord: f64,
    pub row_height: f64,
    pub vertex_count: usize,
    pub triangle_count: usize,
    pub shape: PartitionShape,
    pub stats_a: ChunkStats,
    pub stats_b: ChunkStats,
    pub stats_c: ChunkStats,
    pub tie_rule: &'static str,
}

struct Triangulation {
    vertices: Vec<[f64; 2]>,
    centroids: Vec<[f64; 2]>,
    // segment start and displacement
    edges: Vec<([f64; 2], [f64; 2])>,
}

fn triangulate(ex: i64, ey: i64, w: i64) -> Result<(Triangulation, i64)> {
    if w <= 0 || ex % w != 0 || ex / w < 3 {
        return Err(Error::Parameter(format!(
            "R = {w} coordinate units does not give at least three columns on extent {ex}"
        )));
    }
    let target = w as f64 * 3f64.sqrt() / 2.0;
    let h = (w / 2..=w)
        .filter(|&h| h > 0 && ey % (2 * h) == 0 && ey / h >= 4)
        .min_by(|a, b| {
            (*a as f64 - target)
                .abs()
                .partial_cmp(&(*b as f64 - target).abs())
                .unwrap()
        })
        .ok_or_else(|| {
            Error::Parameter(format!(
                "no row height in [{}, {w}] tiles extent {ey} with an even number (>= 4) of rows",
                w / 2
            ))
        })?;
    let cols = ex / w;
    let rows = ey / h;
    let wf = w as f64;
    let hf = h as f64;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut centroids = Vec::new();
    for j in 0..rows {
        let shift = if j % 2 == 1 { wf / 2.0 } else { 0.0 };
        for i in 0..cols {
            let v = [i as f64 * wf + shift, j as f64 * hf];
            vertices.push(v);
            edges.push((v, [wf, 0.0]));
            edges.push((v, [-wf / 2.0, hf]));
            edges.push((v, [wf / 2.0, hf]));
            // the up- and down-pointing triangles above v
            centroids.push([v[0], v[1] + 2.0 * hf / 3.0]);
            centroids.push([v[0] + wf / 2.0, v[1] + hf / 3.0]);
        }
    }
    Ok((Triangulation { vertices, centroids, edges }, h))
}

fn min_image(d: f64, e: f64) -> f64 {
    let m = d.rem_euclid(e);
    if m > e / 2.0 {
        m - e
    } else {
        m
    }
}

fn dist_to_point(p: [f64; 2], v: [f64; 2], ext: [f64; 2]) -> f64 {
    let dx = min_image(p[0] - v[0], ext[0]);
    let dy = min_image(p[1] - v[1], ext[1]);
    dx.hypot(dy)
}

fn dist_to_segment(p: [f64; 2], a: [f64; 2], d: [f64; 2], ext: [f64; 2]) -> f64 {
    let bx = min_image(p[0] - a[0], ext[0]);
    let by = min_image(p[1] - a[1], ext[1]);
    let len2 = d[0] * d[0] + d[1] * d[1];
    let mut best = f64::INFINITY;
    for kx in -1..=1 {
        for ky in -1..=1 {
            let px = bx + kx as f64 * ext[0];
            let py = by + ky as f64 * ext[1];
            let t = ((px * d[0] + py * d[1]) / len2).clamp(0.0, 1.0);
            best = best.min((px - t * d[0]).hypot(py - t * d[1]));
        }
    }
    best
}

fn chunk_stats(lattice: &Lattice, region: &Region, r_coord: f64) -> ChunkStats {
    let chunks = lattice.chunks(region, 1);
    let max_diameter = chunks
        .iter()
        .map(|c| lattice.diameter(c).unwrap_or(0))
        .max()
        .unwrap_or(0);
    let mut min_separation: Option<usize> = None;
    for i in 0..chunks.len() {
        for j in i + 1..chunks.len() {
            let s = lattice.separation(&chunks[i], &chunks[j]).unwrap_or(0);
            min_separation = Some(min_separation.map_or(s, |m| m.min(s)));
        }
    }
    ChunkStats {
        chunks: chunks.len(),
        max_diameter,
        min_separation,
        diameter_ratio: max_diameter as f64 / r_coord,
        separation_ratio: min_separation.map(|s| s as f64 / r_coord),
    }
}

/// Default cell shape: barycentric cells with the vertex cells grown by
/// `9R/32` and the edge cells shrunk by `R/32`. On toric L = 48, R = 16 this
/// is the widest setting found for which the ρ-neighbourhoods of `A` and `B`
/// (ρ ≤ 2) and `C` are all correctable.
pub const DEFAULT_SHAPE: PartitionShape = PartitionShape::Barycentric {
    vertex_bias: 9.0 / 32.0,
    midpoint_bias: -1.0 / 32.0,
};

/// Partitions a periodic 2D lattice into `A`, `B`, `C` for triangle side `r`
/// (in lattice units), with [`DEFAULT_SHAPE`].
pub fn simplicial_partition(lattice: &Lattice, r: usize) -> Result<SimplicialPartition> {
    simplicial_partition_with(lattice, r, DEFAULT_SHAPE)
}

/// Shape of the cells attached to the simplices of the triangulation. Lengths
/// are fractions of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionShape {
    /// `C`: discs around vertices; `B`: strips around edges; `A`: the rest.
    DiscStrip { disc: f64, strip: f64 },
    /// Each site joins its nearest feature point among vertices (`C`), edge
    /// midpoints (`B`) and triangle centroids (`A`), after subtracting the
    /// given biases from the vertex and midpoint distances.
    Barycentric { vertex_bias: f64, midpoint_bias: f64 },
}

/// As [`simplicial_partition`], with an explicit cell shape.
pub fn simplicial_partition_with(lattice: &Lattice, r: usize, shape: PartitionShape) -> Result<SimplicialPartition> {
    if lattice.dim() != 2 || !lattice.periodic().iter().all(|&p| p) {
        return Err(Error::Parameter(
            "simplicial partition needs a periodic 2D lattice".into(),
        ));
    }
    if r < 8 {
        return Err(Error::Parameter(format!("R must be at least 8, got {r}")));
    }
    let w = r as i64 * lattice.spacing();
    let (ex, ey) = (lattice.extent()[0], lattice.extent()[1]);
    let (tri, h) = triangulate(ex, ey, w)?;
    let r_coord = w as f64;
    let ext = [ex as f64, ey as f64];
    let eps = 1e-9;
    let nearest = |p: [f64; 2], pts: &mut dyn Iterator<Item = [f64; 2]>| {
        pts.map(|v| dist_to_point(p, v, ext)).fold(f64::INFINITY, f64::min)
    };
    let midpoints: Vec<[f64; 2]> = tri.edges.iter().map(|&(a0, d)| [a0[0] + d[0] / 2.0, a0[1] + d[1] / 2.0]).collect();

    let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
    for s in 0..lattice.num_sites() {
        let co = lattice.coords(s);
        let p = [co[0] as f64, co[1] as f64];
        let dv = nearest(p, &mut tri.vertices.iter().copied());
        match shape {
            PartitionShape::DiscStrip { disc, strip } => {
                if dv <= disc * r_coord + eps {
                    c.push(s);
                    continue;
                }
                let de = tri
                    .edges
                    .iter()
                    .map(|&(a0, d)| dist_to_segment(p, a0, d, ext))
                    .fold(f64::INFINITY, f64::min);
                if de <= strip * r_coord + eps {
                    b.push(s);
                } else {
                    a.push(s);
                }
            }
            PartitionShape::Barycentric { vertex_bias, midpoint_bias } => {
                let sv = dv - vertex_bias * r_coord;
                let sm = nearest(p, &mut midpoints.iter().copied()) - midpoint_bias * r_coord;
                let sc = nearest(p, &mut tri.centroids.iter().copied());
                if sv <= sm + eps && sv <= sc + eps {
                    c.push(s);
                } else if sm <= sc + eps {
                    b.push(s);
                } else {
                    a.push(s);
                }
            }
        }
    }
    let (a, b, c) = (Region::from_sorted(a), Region::from_sorted(b), Region::from_sorted(c));
    let stats_a = chunk_stats(lattice, &a, r_coord);
    let stats_b = chunk_stats(lattice, &b, r_coord);
    let stats_c = chunk_stats(lattice, &c, r_coord);
    Ok(SimplicialPartition {
        r_lattice: r,
        r_coord,
        row_height: h as f64,
        vertex_count: tri.vertices.len(),
        triangle_count: 2 * tri.vertices.len(),
        shape,
        stats_a,
        stats_b,
        stats_c,
        a,
        b,
        c,
        tie_rule: "ties assigned to C, then B, then A",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_covers_lattice() {
        let lat = Lattice::toric_edges(24).unwrap();
        let p = simplicial_partition(&lat, 8).unwrap();
        assert_eq!(p.a.len() + p.b.len() + p.c.len(), lat.num_sites());
        assert!(p.a.is_disjoint(&p.b) && p.b.is_disjoint(&p.c) && p.a.is_disjoint(&p.c));
        assert_eq!(p.stats_c.chunks, p.vertex_count);
        assert!(p.stats_a.max_diameter <= 8 * 2);
    }

    #[test]
    fn rejects_degenerate_sizes() {
        let lat = Lattice::toric_edges(12).unwrap();
        assert!(simplicial_partition(&lat, 8).is_err());
        assert!(simplicial_partition(&lat, 4).is_err());
        let three_d = Lattice::cubic(&[8, 8, 8], true).unwrap();
        assert!(simplicial_partition(&three_d, 8).is_err());
    }
}
