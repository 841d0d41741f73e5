//! Region incidence matrices, class counts, admissibility, checkerboard
//! colorings, Tait graphs and mod-2 linking numbers.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::SurfaceDiagram;
use crate::gf2::{BitRow, Gf2Matrix};

/// How a region that meets a crossing several times acts on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountingRule {
    /// Entry is the number of corners mod 2.
    Modified,
    /// Entry is 1 whenever the region meets the crossing at all.
    Original,
}

impl CountingRule {
    pub const ALL: [CountingRule; 2] = [CountingRule::Modified, CountingRule::Original];

    pub fn name(self) -> &'static str {
        match self {
            CountingRule::Modified => "modified",
            CountingRule::Original => "original",
        }
    }
}

impl fmt::Display for CountingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for CountingRule {
    type Err = RegionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "modified" => Ok(CountingRule::Modified),
            "original" => Ok(CountingRule::Original),
            _ => Err(RegionError::UnknownRule),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("node {0} is not a crossing")]
    UnknownCrossing(usize),
    #[error("diagrams do not share a projection")]
    ProjectionMismatch,
    #[error("operation needs a diagram on the sphere")]
    NotPlanar,
    #[error("coloring is not a checkerboard coloring of this diagram")]
    InvalidColoring,
    #[error("orientation list has length {found}, expected {expected}")]
    OrientationLength { expected: usize, found: usize },
    #[error("unknown counting rule (expected modified or original)")]
    UnknownRule,
}

/// Region-by-crossing incidence. Row `i` is region `i`; column `j` is the
/// crossing node `crossings[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionIncidence {
    pub matrix: Gf2Matrix,
    pub crossings: Vec<usize>,
    pub rule: CountingRule,
}

impl RegionIncidence {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Column index of a crossing node.
    pub fn column_of(&self, node: usize) -> Option<usize> {
        self.crossings.iter().position(|&n| n == node)
    }
}

/// `counts[region][column]`: how many corners of each crossing lie in each
/// region.
pub fn corner_counts(d: &SurfaceDiagram) -> Vec<Vec<u8>> {
    let crossings = d.crossings();
    let mut counts = vec![vec![0u8; crossings.len()]; d.regions().len()];
    for (j, &n) in crossings.iter().enumerate() {
        for dart in d.map().darts_of(n) {
            counts[d.region_of_dart(dart)][j] += 1;
        }
    }
    counts
}

pub fn incidence_matrix(d: &SurfaceDiagram, rule: CountingRule) -> RegionIncidence {
    let counts = corner_counts(d);
    let crossings = d.crossings();
    let matrix = Gf2Matrix::from_fn(counts.len(), crossings.len(), |i, j| match rule {
        CountingRule::Modified => counts[i][j] % 2 == 1,
        CountingRule::Original => counts[i][j] > 0,
    });
    RegionIncidence {
        matrix,
        crossings,
        rule,
    }
}

/// Exponent `e` of the class count `2^e = 2^{c − rank}`.
pub fn class_count_exponent(d: &SurfaceDiagram, rule: CountingRule) -> usize {
    let m = incidence_matrix(d, rule);
    m.crossings.len() - m.rank()
}

/// A set of regions whose crossing changes switch exactly the `target`
/// crossings, or `None` when no such set exists.
pub fn admissible(
    d: &SurfaceDiagram,
    target: &[usize],
    rule: CountingRule,
) -> Result<Option<Vec<usize>>, RegionError> {
    let inc = incidence_matrix(d, rule);
    let mut t = BitRow::zeros(inc.crossings.len());
    for &node in target {
        let j = inc.column_of(node).ok_or(RegionError::UnknownCrossing(node))?;
        t.flip(j);
    }
    let sol = inc
        .matrix
        .solve(&t)
        .expect("target length matches column count");
    Ok(sol.map(|x| x.ones().collect()))
}

/// Switches every crossing touched by the given regions under `rule`.
pub fn apply_region_changes(d: &SurfaceDiagram, regions: &[usize], rule: CountingRule) -> SurfaceDiagram {
    let inc = incidence_matrix(d, rule);
    let mut over = d.over_bits().to_vec();
    for &r in regions {
        for j in inc.matrix.row(r).ones() {
            over[inc.crossings[j]] ^= true;
        }
    }
    d.with_over_bits(over).expect("same projection stays valid")
}

/// Whether region crossing changes turn `a` into `b`.
pub fn equivalent_diagrams(
    a: &SurfaceDiagram,
    b: &SurfaceDiagram,
    rule: CountingRule,
) -> Result<bool, RegionError> {
    if !a.same_projection(b) {
        return Err(RegionError::ProjectionMismatch);
    }
    let diff: Vec<usize> = a
        .crossings()
        .into_iter()
        .filter(|&n| a.over(n) != b.over(n))
        .collect();
    Ok(admissible(a, &diff, rule)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flipped(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// A checkerboard coloring with region 0 white, or `None` if some edge has
/// the same region on both sides of any coloring.
pub fn two_colorable(d: &SurfaceDiagram) -> Option<Vec<Color>> {
    let r = d.regions().len();
    let map = d.map();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); r];
    for dart in 0..map.dart_count() {
        let a = map.alpha(dart);
        if dart < a {
            let (x, y) = (d.region_of_dart(dart), d.region_of_dart(a));
            if x == y {
                return None;
            }
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    let mut color: Vec<Option<Color>> = vec![None; r];
    for start in 0..r {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(Color::White);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].unwrap();
            for &y in &adj[x] {
                match color[y] {
                    None => {
                        color[y] = Some(cx.flipped());
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Checks that every edge separates regions of different colors.
pub fn is_checkerboard(d: &SurfaceDiagram, coloring: &[Color]) -> bool {
    if coloring.len() != d.regions().len() {
        return false;
    }
    let map = d.map();
    (0..map.dart_count())
        .all(|x| coloring[d.region_of_dart(x)] != coloring[d.region_of_dart(map.alpha(x))])
}

/// Mod-2 Laplacian of the Tait graph whose vertices are the black regions,
/// in region order.
pub fn tait_laplacian(d: &SurfaceDiagram, coloring: &[Color]) -> Result<Gf2Matrix, RegionError> {
    if !d.is_planar() {
        return Err(RegionError::NotPlanar);
    }
    if !is_checkerboard(d, coloring) {
        return Err(RegionError::InvalidColoring);
    }
    let black: Vec<usize> = (0..coloring.len())
        .filter(|&i| coloring[i] == Color::Black)
        .collect();
    let index = |region: usize| black.iter().position(|&b| b == region).unwrap();
    let mut lap = Gf2Matrix::zeros(black.len(), black.len());
    let map = d.map();
    for n in map.crossings() {
        let s = map.darts_of(n).start;
        let (a, b) = if coloring[d.region_of_dart(s)] == Color::Black {
            (s, s + 2)
        } else {
            (s + 1, s + 3)
        };
        let (u, v) = (index(d.region_of_dart(a)), index(d.region_of_dart(b)));
        if u != v {
            lap.set(u, u, !lap.get(u, u));
            lap.set(v, v, !lap.get(v, v));
            lap.set(u, v, !lap.get(u, v));
            lap.set(v, u, !lap.get(v, u));
        }
    }
    Ok(lap)
}

/// Nullity of the Tait graph's mod-2 Laplacian. For a connected projection
/// on the sphere this is the number of link components.
pub fn tait_laplacian_components(d: &SurfaceDiagram, coloring: &[Color]) -> Result<usize, RegionError> {
    let lap = tait_laplacian(d, coloring)?;
    Ok(lap.rows() - lap.rank())
}

/// Per-dart flag: the component leaves its node along this dart. Component
/// `i` is reversed when `reversed[i]` is set.
fn outgoing_flags(d: &SurfaceDiagram, reversed: &[bool]) -> Vec<bool> {
    let mut out = vec![false; d.map().dart_count()];
    for comp in d.components() {
        for (k, &dart) in comp.darts.iter().enumerate() {
            out[dart] = (k % 2 == 0) != reversed[comp.index];
        }
    }
    out
}

/// Sign of every crossing, indexed by node; markers get 0. A crossing is
/// positive when the outgoing under dart follows the outgoing over dart in
/// counterclockwise order.
pub fn crossing_signs(d: &SurfaceDiagram, reversed: &[bool]) -> Result<Vec<i8>, RegionError> {
    let n = d.components().len();
    if reversed.len() != n {
        return Err(RegionError::OrientationLength {
            expected: n,
            found: reversed.len(),
        });
    }
    let out = outgoing_flags(d, reversed);
    let map = d.map();
    let mut signs = vec![0i8; map.node_count()];
    for node in map.crossings() {
        let s = map.darts_of(node).start;
        let pick = |a: usize| if out[a] { a } else { a + 2 };
        let (over_out, under_out) = if d.over(node) {
            (pick(s), pick(s + 1))
        } else {
            (pick(s + 1), pick(s))
        };
        signs[node] = if map.sigma(over_out) == under_out { 1 } else { -1 };
    }
    Ok(signs)
}

/// Pairwise linking numbers `lk[i][j]` (zero on the diagonal).
pub fn linking_numbers(d: &SurfaceDiagram, reversed: &[bool]) -> Result<Vec<Vec<i64>>, RegionError> {
    if !d.is_planar() {
        return Err(RegionError::NotPlanar);
    }
    let signs = crossing_signs(d, reversed)?;
    let n = d.components().len();
    let mut twice = vec![vec![0i64; n]; n];
    let map = d.map();
    for node in map.crossings() {
        let s = map.darts_of(node).start;
        let (i, j) = (d.component_of(s), d.component_of(s + 1));
        if i != j {
            twice[i][j] += signs[node] as i64;
            twice[j][i] += signs[node] as i64;
        }
    }
    Ok(twice
        .into_iter()
        .map(|row| row.into_iter().map(|x| x / 2).collect())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingProfile {
    /// `Σ_{j≠i} lk(K_i, K_j) mod 2` for every component `i`.
    pub profile: Vec<bool>,
}

impl LinkingProfile {
    /// All entries vanish.
    pub fn unknotting_criterion(&self) -> bool {
        self.profile.iter().all(|&b| !b)
    }
}

pub fn mod2_linking_profile(d: &SurfaceDiagram, reversed: Option<&[bool]>) -> Result<LinkingProfile, RegionError> {
    let default = vec![false; d.components().len()];
    let lk = linking_numbers(d, reversed.unwrap_or(&default))?;
    Ok(LinkingProfile {
        profile: lk
            .iter()
            .map(|row| row.iter().sum::<i64>().rem_euclid(2) == 1)
            .collect(),
    })
}
