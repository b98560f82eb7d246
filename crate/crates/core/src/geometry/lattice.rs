use std::collections::HashMap;

use serde::Serialize;

use super::Region;
use crate::error::{Error, Result};

/// One qubit site: integer coordinates plus a layer label for stacked codes.
/// Layers share coordinates and do not contribute to distances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Site {
    pub coords: Vec<i64>,
    pub layer: usize,
}

/// A finite D-dimensional lattice of qubit sites with the L∞ metric, wrapped
/// on periodic axes.
///
/// Edge-qubit layouts use doubled coordinates: a lattice of linear size `L`
/// has coordinate extent `2L` and `spacing() == 2`.
#[derive(Debug, Clone)]
pub struct Lattice {
    name: String,
    extent: Vec<i64>,
    periodic: Vec<bool>,
    spacing: i64,
    layout: Vec<usize>,
    sites: Vec<Site>,
    index: HashMap<(Vec<i64>, usize), usize>,
    by_coord: HashMap<Vec<i64>, Vec<usize>>,
}

impl Lattice {
    fn build(
        name: String,
        extent: Vec<i64>,
        periodic: Vec<bool>,
        spacing: i64,
        layout: Vec<usize>,
        sites: Vec<Site>,
    ) -> Result<Self> {
        let dim = extent.len();
        if periodic.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                actual: periodic.len(),
            });
        }
        let mut index = HashMap::with_capacity(sites.len());
        let mut by_coord: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, s) in sites.iter().enumerate() {
            if s.coords.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    actual: s.coords.len(),
                });
            }
            for (a, &c) in s.coords.iter().enumerate() {
                if periodic[a] && (c < 0 || c >= extent[a]) {
                    return Err(Error::Parameter(format!(
                        "site {i} coordinate {c} outside periodic extent {}",
                        extent[a]
                    )));
                }
            }
            if index.insert((s.coords.clone(), s.layer), i).is_some() {
                return Err(Error::Parameter(format!("duplicate site {:?}", s)));
            }
            by_coord.entry(s.coords.clone()).or_default().push(i);
        }
        Ok(Lattice {
            name,
            extent,
            periodic,
            spacing,
            layout,
            sites,
            index,
            by_coord,
        })
    }

    /// Site lattice `[0, dims_0) × … ` with unit spacing.
    pub fn cubic(dims: &[usize], periodic: bool) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Parameter("cubic lattice needs positive extents".into()));
        }
        let total: usize = dims.iter().product();
        let sites = (0..total)
            .map(|mut i| {
                let mut coords = vec![0i64; dims.len()];
                for a in (0..dims.len()).rev() {
                    coords[a] = (i % dims[a]) as i64;
                    i /= dims[a];
                }
                Site { coords, layer: 0 }
            })
            .collect();
        Self::build(
            format!("cubic{:?}", dims),
            dims.iter().map(|&d| d as i64).collect(),
            vec![periodic; dims.len()],
            1,
            dims.to_vec(),
            sites,
        )
    }

    /// Edges of the `L × L` periodic square lattice in doubled coordinates.
    ///
    /// Index `y·L + x` is the horizontal edge from vertex `(x, y)` to `(x+1, y)`,
    /// at coordinate `(2x+1, 2y)`; index `L² + y·L + x` is the vertical edge from
    /// `(x, y)` to `(x, y+1)`, at `(2x, 2y+1)`.
    pub fn toric_edges(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::Parameter(format!("toric lattice needs L >= 2, got {l}")));
        }
        let li = l as i64;
        let mut sites = Vec::with_capacity(2 * l * l);
        for dir in 0..2 {
            for y in 0..li {
                for x in 0..li {
                    let coords = if dir == 0 {
                        vec![2 * x + 1, 2 * y]
                    } else {
                        vec![2 * x, 2 * y + 1]
                    };
                    sites.push(Site { coords, layer: 0 });
                }
            }
        }
        Self::build(
            format!("toric_edges(L={l})"),
            vec![2 * li, 2 * li],
            vec![true, true],
            2,
            vec![2, l, l],
            sites,
        )
    }

    /// Arbitrary point set (used for the tetrahedral embedding of the 15-qubit code).
    pub fn from_points(name: &str, extent: Vec<i64>, periodic: Vec<bool>, points: Vec<Vec<i64>>) -> Result<Self> {
        let n = points.len();
        let sites = points
            .into_iter()
            .map(|coords| Site { coords, layer: 0 })
            .collect();
        Self::build(name.to_string(), extent, periodic, 1, vec![n], sites)
    }

    /// `copies` layers of this lattice; site `c·n + i` is site `i` in layer `c`.
    pub fn stacked(&self, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::Parameter("stack needs at least one copy".into()));
        }
        let n = self.sites.len();
        let sites = (0..copies * n)
            .map(|i| Site {
                coords: self.sites[i % n].coords.clone(),
                layer: self.sites[i % n].layer * copies + i / n,
            })
            .collect();
        let mut layout = vec![copies];
        layout.extend_from_slice(&self.layout);
        Self::build(
            format!("{}x{copies}", self.name),
            self.extent.clone(),
            self.periodic.clone(),
            self.spacing,
            layout,
            sites,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.extent.len()
    }

    pub fn extent(&self) -> &[i64] {
        &self.extent
    }

    pub fn periodic(&self) -> &[bool] {
        &self.periodic
    }

    /// Coordinate units per lattice unit.
    pub fn spacing(&self) -> i64 {
        self.spacing
    }

    pub fn layout(&self) -> &[usize] {
        &self.layout
    }

    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn site(&self, i: usize) -> &Site {
        &self.sites[i]
    }

    pub fn coords(&self, i: usize) -> &[i64] {
        &self.sites[i].coords
    }

    pub fn index_of(&self, coords: &[i64], layer: usize) -> Option<usize> {
        let wrapped = self.wrap(coords)?;
        self.index.get(&(wrapped, layer)).copied()
    }

    /// All sites at the given coordinates (one per layer).
    pub fn sites_at(&self, coords: &[i64]) -> &[usize] {
        match self.wrap(coords) {
            Some(c) => self.by_coord.get(&c).map_or(&[], Vec::as_slice),
            None => &[],
        }
    }

    fn wrap(&self, coords: &[i64]) -> Option<Vec<i64>> {
        if coords.len() != self.dim() {
            return None;
        }
        Some(
            coords
                .iter()
                .enumerate()
                .map(|(a, &c)| if self.periodic[a] { c.rem_euclid(self.extent[a]) } else { c })
                .collect(),
        )
    }

    /// Signed minimal-image displacement along `axis`.
    #[inline]
    pub fn displacement(&self, axis: usize, from: i64, to: i64) -> i64 {
        let d = to - from;
        if self.periodic[axis] {
            let e = self.extent[axis];
            let m = d.rem_euclid(e);
            if m > e / 2 {
                m - e
            } else {
                m
            }
        } else {
            d
        }
    }

    /// L∞ distance with periodic wrap.
    #[inline]
    pub fn distance(&self, a: usize, b: usize) -> usize {
        let ca = &self.sites[a].coords;
        let cb = &self.sites[b].coords;
        (0..ca.len())
            .map(|ax| self.displacement(ax, ca[ax], cb[ax]).unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Sites within L∞ distance `rho` of site `q`, by box enumeration.
    fn ball_sites(&self, q: usize, rho: usize, out: &mut Vec<usize>) {
        let center = &self.sites[q].coords;
        let d = center.len();
        let r = rho as i64;
        let mut offset = vec![-r; d];
        loop {
            let p: Vec<i64> = center.iter().zip(&offset).map(|(c, o)| c + o).collect();
            out.extend_from_slice(self.sites_at(&p));
            let mut ax = 0;
            loop {
                if ax == d {
                    return;
                }
                offset[ax] += 1;
                if offset[ax] <= r {
                    break;
                }
                offset[ax] = -r;
                ax += 1;
            }
        }
    }

    fn box_is_cheaper(&self, rho: usize) -> bool {
        let cells = (2 * rho as u128 + 1).saturating_pow(self.dim() as u32);
        cells < self.sites.len() as u128
    }

    /// `𝔅_ρ(M)`: every site within distance `rho` of some site of `region`.
    pub fn neighborhood(&self, region: &Region, rho: usize) -> Region {
        if rho == 0 || region.is_empty() {
            return region.clone();
        }
        let mut mark = vec![false; self.sites.len()];
        if self.box_is_cheaper(rho) {
            let mut buf = Vec::new();
            for q in region.iter() {
                buf.clear();
                self.ball_sites(q, rho, &mut buf);
                for &s in &buf {
                    mark[s] = true;
                }
            }
        } else {
            for (s, m) in mark.iter_mut().enumerate() {
                *m = region.iter().any(|q| self.distance(q, s) <= rho);
            }
        }
        Region::from_sorted((0..self.sites.len()).filter(|&s| mark[s]).collect())
    }

    pub fn diameter(&self, region: &Region) -> Result<usize> {
        if region.is_empty() {
            return Err(Error::Domain("diameter of an empty region".into()));
        }
        let v = region.as_slice();
        let mut best = 0;
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                best = best.max(self.distance(a, b));
            }
        }
        Ok(best)
    }

    pub fn separation(&self, m: &Region, k: &Region) -> Result<usize> {
        if m.is_empty() || k.is_empty() {
            return Err(Error::Domain("separation with an empty region".into()));
        }
        let mut best = usize::MAX;
        for a in m.iter() {
            for b in k.iter() {
                best = best.min(self.distance(a, b));
                if best == 0 {
                    return Ok(0);
                }
            }
        }
        Ok(best)
    }

    /// Connected components of `region` when sites at distance `≤ gap` are linked.
    /// Components are ordered by their smallest index.
    pub fn chunks(&self, region: &Region, gap: usize) -> Vec<Region> {
        let n = self.sites.len();
        let mut inside = vec![false; n];
        for q in region.iter() {
            inside[q] = true;
        }
        let mut seen = vec![false; n];
        let use_box = self.box_is_cheaper(gap);
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for start in region.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                buf.clear();
                if use_box {
                    self.ball_sites(c, gap, &mut buf);
                } else {
                    buf.extend(region.iter().filter(|&s| self.distance(c, s) <= gap));
                }
                for &s in &buf {
                    if inside[s] && !seen[s] {
                        seen[s] = true;
                        comp.push(s);
                        stack.push(s);
                    }
                }
            }
            out.push(Region::from_unsorted(comp));
        }
        out
    }

    /// Maps each site through a translation by `shift` coordinate units;
    /// `None` if some translated site does not exist.
    pub fn translation(&self, shift: &[i64]) -> Option<Vec<usize>> {
        (0..self.sites.len())
            .map(|i| {
                let s = &self.sites[i];
                let p: Vec<i64> = s.coords.iter().zip(shift).map(|(c, d)| c + d).collect();
                self.index_of(&p, s.layer)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_index_round_trip() {
        let lat = Lattice::cubic(&[3, 4, 5], true).unwrap();
        assert_eq!(lat.num_sites(), 60);
        for i in 0..lat.num_sites() {
            assert_eq!(lat.index_of(lat.coords(i), 0), Some(i));
        }
    }

    #[test]
    fn toric_edges_round_trip() {
        let lat = Lattice::toric_edges(3).unwrap();
        assert_eq!(lat.num_sites(), 18);
        assert_eq!(lat.layout().iter().product::<usize>(), 18);
        for i in 0..lat.num_sites() {
            let c = lat.coords(i);
            assert_eq!((c[0] + c[1]) % 2, 1);
            assert_eq!(lat.index_of(c, 0), Some(i));
        }
    }

    #[test]
    fn neighborhood_of_single_site() {
        let lat = Lattice::cubic(&[5, 5], true).unwrap();
        let m = Region::from_unsorted(vec![12]);
        assert_eq!(lat.neighborhood(&m, 0), m);
        assert_eq!(lat.neighborhood(&m, 1).len(), 9);
        // corner site wraps around
        assert_eq!(lat.neighborhood(&Region::from_unsorted(vec![0]), 1).len(), 9);
    }

    #[test]
    fn diameter_separation_chunks() {
        let lat = Lattice::cubic(&[10], false).unwrap();
        let single = Region::from_unsorted(vec![4]);
        assert_eq!(lat.diameter(&single).unwrap(), 0);
        assert_eq!(lat.separation(&single, &single).unwrap(), 0);
        let two = Region::from_unsorted(vec![2, 5]);
        assert_eq!(lat.chunks(&two, 1).len(), 2);
        assert_eq!(lat.chunks(&two, 3).len(), 1);
        assert!(lat.diameter(&Region::default()).is_err());
        assert!(lat.separation(&single, &Region::default()).is_err());
    }

    #[test]
    fn periodic_distance_wraps() {
        let lat = Lattice::cubic(&[8], true).unwrap();
        assert_eq!(lat.distance(0, 7), 1);
        assert_eq!(lat.distance(0, 4), 4);
        let open = Lattice::cubic(&[8], false).unwrap();
        assert_eq!(open.distance(0, 7), 7);
    }

    #[test]
    fn stacked_layers_share_coordinates() {
        let base = Lattice::toric_edges(2).unwrap();
        let st = base.stacked(2).unwrap();
        assert_eq!(st.num_sites(), 16);
        assert_eq!(st.distance(3, 11), 0);
        assert_eq!(st.neighborhood(&Region::from_unsorted(vec![3]), 0).len(), 1);
        assert!(st.neighborhood(&Region::from_unsorted(vec![3]), 1).contains(11));
    }
}
