//! Mod-2 homology classes of link components on the ambient surface.
//!
//! Cycles are edge vectors of the diagram graph. A cycle is null-homologous
//! exactly when it is a sum of region boundaries, so every quantity here is
//! computed modulo the span of region boundary vectors.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::SurfaceDiagram;
use crate::gf2::{BitRow, Gf2Matrix};
use crate::region::{incidence_matrix, two_colorable, Color, CountingRule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    /// Dimension of the span of component classes.
    pub n_rank: usize,
    /// Per component, coordinates against a basis of the classes carried by
    /// graph cycles, padded with zeros to `2g` entries.
    pub class_vectors: Gf2Matrix,
    /// Basis of component subsets whose classes sum to zero, reduced.
    pub null_basis: Vec<BitRow>,
}

/// Edge vector of every region boundary, in region order.
pub fn region_boundaries(d: &SurfaceDiagram) -> Gf2Matrix {
    let edges = d.map().edge_count();
    let mut m = Gf2Matrix::zeros(d.regions().len(), edges);
    for (r, region) in d.regions().iter().enumerate() {
        for &f in &region.faces {
            for &dart in &d.faces()[f] {
                let e = d.edge_of(dart);
                m.set(r, e, !m.get(r, e));
            }
        }
    }
    m
}

/// Edge vector of every component, in component order.
pub fn component_cycles(d: &SurfaceDiagram) -> Gf2Matrix {
    let edges = d.map().edge_count();
    let mut m = Gf2Matrix::zeros(d.components().len(), edges);
    for comp in d.components() {
        for &dart in &comp.darts {
            m.set(comp.index, d.edge_of(dart), true);
        }
    }
    m
}

/// Fundamental cycles of a breadth-first spanning forest of the diagram
/// graph, one per non-tree edge in edge order.
fn fundamental_cycles(d: &SurfaceDiagram) -> Vec<BitRow> {
    let map = d.map();
    let edges = map.edge_count();
    let nodes = map.node_count();
    let mut parent_edge = vec![usize::MAX; nodes];
    let mut parent = vec![usize::MAX; nodes];
    let mut seen = vec![false; nodes];
    let mut tree = vec![false; edges];
    for root in 0..nodes {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for dart in map.darts_of(u) {
                let v = map.node(map.alpha(dart));
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    parent_edge[v] = d.edge_of(dart);
                    tree[d.edge_of(dart)] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let path_to_root = |mut v: usize, row: &mut BitRow| {
        while parent[v] != usize::MAX {
            row.flip(parent_edge[v]);
            v = parent[v];
        }
    };
    let mut out = Vec::new();
    let mut done = vec![false; edges];
    for dart in 0..map.dart_count() {
        let e = d.edge_of(dart);
        if tree[e] || done[e] {
            continue;
        }
        done[e] = true;
        let mut row = BitRow::unit(edges, e);
        path_to_root(map.node(dart), &mut row);
        path_to_root(map.node(map.alpha(dart)), &mut row);
        out.push(row);
    }
    out
}

pub fn homology_profile(d: &SurfaceDiagram) -> HomologyProfile {
    let b = region_boundaries(d);
    let k = component_cycles(d);
    let n = k.rows();
    let rank_b = b.rank();
    let n_rank = k.vstack(&b).rank() - rank_b;

    let null_rows: Vec<BitRow> = k
        .vstack(&b)
        .left_nullspace()
        .iter()
        .map(|x| BitRow::from_bools(&x.to_bools()[..n]))
        .collect();
    let null_basis = Gf2Matrix::from_rows(n, &null_rows).row_space_basis();

    // graph cycles independent modulo boundaries
    let mut basis: Vec<BitRow> = Vec::new();
    let mut span = b.clone();
    let mut span_rank = rank_b;
    for z in fundamental_cycles(d) {
        let grown = span.vstack(&Gf2Matrix::from_rows(z.len(), core::slice::from_ref(&z)));
        let r = grown.rank();
        if r > span_rank {
            span = grown;
            span_rank = r;
            basis.push(z);
        }
    }
    let width = (2 * d.genus() as usize).max(basis.len());
    let system = Gf2Matrix::from_rows(b.cols(), &basis).vstack(&b);
    let mut class_vectors = Gf2Matrix::zeros(n, width);
    for i in 0..n {
        let coeffs = system
            .solve(&k.row(i))
            .expect("lengths agree")
            .expect("every cycle is a combination of basis cycles and boundaries");
        for j in 0..basis.len() {
            class_vectors.set(i, j, coeffs.get(j));
        }
    }
    HomologyProfile {
        n_rank,
        class_vectors,
        null_basis,
    }
}

/// Whether the classes of all components sum to zero.
pub fn total_class_vanishes(d: &SurfaceDiagram) -> bool {
    let b = region_boundaries(d);
    let k = component_cycles(d);
    let mut total = BitRow::zeros(k.cols());
    for row in k.row_iter() {
        total.xor_assign(&row);
    }
    b.solve(&total).expect("lengths agree").is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem4Report {
    pub r: usize,
    pub n: usize,
    pub c: usize,
    pub rank_modified: usize,
    pub n_rank: usize,
    pub holds: bool,
}

/// Checks `rank M = r − n − 1 + n_rank` for the modified incidence matrix.
pub fn verify_theorem4(d: &SurfaceDiagram) -> Theorem4Report {
    let m = incidence_matrix(d, CountingRule::Modified);
    let rank_modified = m.rank();
    let r = d.regions().len();
    let n = d.components().len();
    let n_rank = homology_profile(d).n_rank;
    Theorem4Report {
        r,
        n,
        c: m.crossings.len(),
        rank_modified,
        n_rank,
        holds: rank_modified as i64 == r as i64 - n as i64 - 1 + n_rank as i64,
    }
}

#[derive(Debug, Clone)]
pub struct NullSublink {
    /// Kept components of the original diagram.
    pub components: Vec<usize>,
    pub diagram: SurfaceDiagram,
    pub coloring: Option<Vec<Color>>,
}

fn sublink_of(d: &SurfaceDiagram, keep: Vec<bool>) -> NullSublink {
    let diagram = d.sublink(&keep).expect("component flags match");
    let coloring = two_colorable(&diagram);
    NullSublink {
        components: (0..keep.len()).filter(|&i| keep[i]).collect(),
        diagram,
        coloring,
    }
}

/// The sub-link for every element of the homology null basis.
pub fn null_sublinks(d: &SurfaceDiagram) -> Vec<NullSublink> {
    homology_profile(d)
        .null_basis
        .iter()
        .map(|x| sublink_of(d, x.to_bools()))
        .collect()
}

/// Colors the regions in `regions` white and the rest black, then keeps the
/// components whose two sides get different colors. `None` if some
/// component has equal colors on one edge and different on another.
pub fn region_sublink(d: &SurfaceDiagram, regions: &BitRow) -> Option<NullSublink> {
    let mut keep: Vec<Option<bool>> = vec![None; d.components().len()];
    let map = d.map();
    for dart in 0..map.dart_count() {
        let differs =
            regions.get(d.region_of_dart(dart)) != regions.get(d.region_of_dart(map.alpha(dart)));
        let slot = &mut keep[d.component_of(dart)];
        match slot {
            None => *slot = Some(differs),
            Some(x) if *x != differs => return None,
            Some(_) => {}
        }
    }
    Some(sublink_of(d, keep.into_iter().map(|k| k.unwrap_or(false)).collect()))
}

/// Left nullspace of the modified incidence matrix, each vector mapped to a
/// sub-link by [`region_sublink`].
pub fn region_null_sublinks(d: &SurfaceDiagram) -> Vec<(BitRow, Option<NullSublink>)> {
    incidence_matrix(d, CountingRule::Modified)
        .matrix
        .left_nullspace()
        .into_iter()
        .map(|x| {
            let s = region_sublink(d, &x);
            (x, s)
        })
        .collect()
}
