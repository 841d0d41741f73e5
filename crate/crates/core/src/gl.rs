//! Exhaustive analysis of the graph whose vertices are all over/under
//! assignments of a projection and whose edges are region crossing changes.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::SurfaceDiagram;
use crate::region::{incidence_matrix, CountingRule};
use crate::union_find::UnionFind;

pub const DEFAULT_LIMIT: usize = 20;

/// Past this many crossings the vertex array no longer fits in memory.
pub const HARD_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GlError {
    #[error("diagram has {crossings} crossings, above the enumeration limit {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlSummary {
    pub vertex_count: u64,
    pub component_count: u64,
    /// Size shared by every component, or `None` if sizes differ.
    pub component_size: Option<u64>,
    /// Regions whose crossing change is the identity.
    pub loops_per_vertex: usize,
}

struct Enumeration {
    rows: Vec<u64>,
    uf: UnionFind,
    crossings: usize,
}

fn enumerate(d: &SurfaceDiagram, rule: CountingRule, limit: usize) -> Result<Enumeration, GlError> {
    let inc = incidence_matrix(d, rule);
    let c = inc.crossings.len();
    let limit = limit.min(HARD_LIMIT);
    if c > limit {
        return Err(GlError::TooManyCrossings { crossings: c, limit });
    }
    let rows: Vec<u64> = inc
        .matrix
        .row_iter()
        .map(|r| r.to_u64().expect("row fits a word"))
        .collect();
    let n = 1usize << c;
    let mut uf = UnionFind::new(n);
    for v in 0..n {
        for &rho in &rows {
            uf.union(v, v ^ rho as usize);
        }
    }
    Ok(Enumeration {
        rows,
        uf,
        crossings: c,
    })
}

pub fn gl_bruteforce(d: &SurfaceDiagram, rule: CountingRule, limit: usize) -> Result<GlSummary, GlError> {
    let mut e = enumerate(d, rule, limit)?;
    let n = 1usize << e.crossings;
    let mut size = vec![0u64; n];
    for v in 0..n {
        size[e.uf.find(v)] += 1;
    }
    let sizes: Vec<u64> = size.into_iter().filter(|&s| s > 0).collect();
    let uniform = sizes.windows(2).all(|w| w[0] == w[1]);
    Ok(GlSummary {
        vertex_count: n as u64,
        component_count: sizes.len() as u64,
        component_size: if uniform { sizes.first().copied() } else { None },
        loops_per_vertex: e.rows.iter().filter(|&&r| r == 0).count(),
    })
}

/// Samples translations `h(w) = w ⊕ u ⊕ v` and checks that each preserves
/// adjacency and connectivity, and that all components have one size.
pub fn translation_check(
    d: &SurfaceDiagram,
    rule: CountingRule,
    samples: usize,
    seed: u64,
    limit: usize,
) -> Result<bool, GlError> {
    let summary = gl_bruteforce(d, rule, limit)?;
    let mut e = enumerate(d, rule, limit)?;
    let n = 1usize << e.crossings;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (u, v, w, x) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        let shift = u ^ v;
        if e.uf.find(u ^ shift) != e.uf.find(v) {
            return Ok(false);
        }
        for &rho in &e.rows {
            let rho = rho as usize;
            let here = e.uf.find(w) == e.uf.find(w ^ rho);
            let there = e.uf.find(w ^ shift) == e.uf.find(w ^ shift ^ rho);
            if here != there {
                return Ok(false);
            }
        }
        let same = e.uf.find(w) == e.uf.find(x);
        let same_shifted = e.uf.find(w ^ shift) == e.uf.find(x ^ shift);
        if same != same_shifted {
            return Ok(false);
        }
    }
    Ok(summary.component_size.is_some())
}
