//! Generators for standard diagram families.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::diagram::{CombinatorialMap, DiagramError, DiagramParts, NodeKind, SurfaceDiagram};
use crate::moves::{self, MoveSite, Side};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid family parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `count` disjoint marker circles; circle `k` owns darts `2k`, `2k + 1`
/// and faces `2k` (inside) and `2k + 1` (outside).
fn marker_circles(count: usize) -> DiagramParts {
    DiagramParts {
        labels: numbered(count),
        kinds: vec![NodeKind::Marker; count],
        alpha: (0..2 * count).map(|d| d ^ 1).collect(),
        over: vec![false; count],
        ..DiagramParts::default()
    }
}

/// A single circle on the sphere.
pub fn circle() -> SurfaceDiagram {
    marker_circles(1).build().expect("circle is valid")
}

/// Parallel essential circles on the torus, each annulus tubed to the next.
fn parallel_circles(count: usize) -> Result<SurfaceDiagram, FamilyError> {
    let mut parts = marker_circles(count);
    parts.tubes = (0..count).map(|k| (2 * k + 1, 2 * ((k + 1) % count))).collect();
    Ok(parts.build()?)
}

/// `m` meridians and `l` longitudes on the torus, crossing in an `m × l`
/// grid. Horizontal strands run through slots `{0, 2}` and pass over.
pub fn grid(m: usize, l: usize) -> Result<SurfaceDiagram, FamilyError> {
    if m + l == 0 {
        return Err(FamilyError::Parameter("grid needs at least one curve".into()));
    }
    if m == 0 || l == 0 {
        return parallel_circles(m + l);
    }
    let x = |i: usize, j: usize| i + m * j;
    let mut alpha = vec![0; 4 * m * l];
    for j in 0..l {
        for i in 0..m {
            let east = 4 * x(i, j);
            let west = 4 * x((i + 1) % m, j) + 2;
            let north = 4 * x(i, j) + 1;
            let south = 4 * x(i, (j + 1) % l) + 3;
            alpha[east] = west;
            alpha[west] = east;
            alpha[north] = south;
            alpha[south] = north;
        }
    }
    Ok(DiagramParts {
        labels: numbered(m * l),
        kinds: vec![NodeKind::Crossing; m * l],
        alpha,
        over: vec![true; m * l],
        ..DiagramParts::default()
    }
    .build()?)
}

/// One braid letter: `σ_i` with `i` in `1..strands`, positive or inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub positive: bool,
}

pub const fn sigma(generator: usize) -> Letter {
    Letter {
        generator,
        positive: true,
    }
}

pub const fn sigma_inv(generator: usize) -> Letter {
    Letter {
        generator,
        positive: false,
    }
}

/// Closure of a braid word drawn around an axis. Lane 1 is innermost.
/// On the torus the face holding the axis is tubed to the outer face, so
/// the closure runs around the torus `strands` times.
pub fn closed_braid(strands: usize, word: &[Letter], torus: bool) -> Result<SurfaceDiagram, FamilyError> {
    if strands == 0 {
        return Err(FamilyError::Parameter("a braid needs at least one strand".into()));
    }
    if strands == 1 {
        if !word.is_empty() {
            return Err(FamilyError::Parameter("a one-strand braid has no generators".into()));
        }
        let mut parts = marker_circles(1);
        if torus {
            parts.tubes.push((0, 1));
        }
        return Ok(parts.build()?);
    }
    for g in 1..strands {
        if !word.iter().any(|l| l.generator == g) {
            return Err(FamilyError::Parameter(format!("generator {g} does not occur in the word")));
        }
    }
    if let Some(l) = word.iter().find(|l| l.generator == 0 || l.generator >= strands) {
        return Err(FamilyError::Parameter(format!(
            "generator {} out of range for {strands} strands",
            l.generator
        )));
    }

    // crossing slots: 0 forward-inner, 1 back-inner, 2 back-outer, 3 forward-outer
    let mut alpha = vec![0; 4 * word.len()];
    for lane in 1..=strands {
        let visits: Vec<(usize, bool)> = word
            .iter()
            .enumerate()
            .filter_map(|(x, l)| {
                if l.generator == lane {
                    Some((x, true))
                } else if l.generator + 1 == lane {
                    Some((x, false))
                } else {
                    None
                }
            })
            .collect();
        for (t, &(x, inner)) in visits.iter().enumerate() {
            let (y, next_inner) = visits[(t + 1) % visits.len()];
            let leave = 4 * x + if inner { 0 } else { 3 };
            let arrive = 4 * y + if next_inner { 1 } else { 2 };
            alpha[leave] = arrive;
            alpha[arrive] = leave;
        }
    }
    let kinds = vec![NodeKind::Crossing; word.len()];
    let mut tubes = Vec::new();
    if torus {
        let map = CombinatorialMap::new(kinds.clone(), alpha.clone())?;
        let (_, face_of) = map.face_orbits();
        let first = word.iter().position(|l| l.generator == 1).unwrap();
        let last = word.iter().position(|l| l.generator == strands - 1).unwrap();
        tubes.push((face_of[4 * first + 1], face_of[4 * last + 3]));
    }
    Ok(DiagramParts {
        labels: numbered(word.len()),
        kinds,
        alpha,
        over: word.iter().map(|l| l.positive).collect(),
        tubes,
        handles: Vec::new(),
    }
    .build()?)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A torus knot shadow in the class `p[m] + q[l]`, drawn as the closure of
/// `σ_1 ⋯ σ_{k−1}` on `k = gcd(p, q)` strands. The pair `(0, 0)` gives an
/// inessential circle on the torus.
pub fn torus_pq(p: usize, q: usize) -> Result<SurfaceDiagram, FamilyError> {
    let k = gcd(p, q);
    if k == 0 {
        let mut parts = marker_circles(1);
        parts.handles.push((0, 1));
        return Ok(parts.build()?);
    }
    let word: Vec<Letter> = (1..k).map(sigma).collect();
    closed_braid(k, &word, true)
}

/// The curve `p[m]` on the torus.
pub fn meridian_family(p: usize) -> Result<SurfaceDiagram, FamilyError> {
    if p == 0 {
        return Err(FamilyError::Parameter("meridian family needs p >= 1".into()));
    }
    torus_pq(p, 0)
}

pub fn kinked_unknot() -> SurfaceDiagram {
    closed_braid(2, &[sigma(1)], false).expect("valid word")
}

pub fn hopf() -> SurfaceDiagram {
    closed_braid(2, &[sigma(1), sigma(1)], false).expect("valid word")
}

pub fn trefoil() -> SurfaceDiagram {
    closed_braid(2, &[sigma(1), sigma(1), sigma(1)], false).expect("valid word")
}

pub fn figure_eight() -> SurfaceDiagram {
    closed_braid(3, &[sigma(1), sigma_inv(2), sigma(1), sigma_inv(2)], false).expect("valid word")
}

/// Figure-eight knot with one extra kink: five crossings, seven regions.
pub fn fig8_kinked() -> SurfaceDiagram {
    let base = figure_eight();
    let site = MoveSite::R1Add {
        dart: FIG8_KINK_DART,
        side: FIG8_KINK_SIDE,
        over: true,
    };
    moves::apply_move(&base, &site).expect("kink site is applicable")
}

const FIG8_KINK_DART: usize = 2;
const FIG8_KINK_SIDE: Side = Side::Right;

/// Named planar diagrams.
pub fn planar_zoo() -> Vec<(&'static str, SurfaceDiagram)> {
    vec![
        ("circle", circle()),
        ("kinked", kinked_unknot()),
        ("hopf", hopf()),
        ("trefoil", trefoil()),
        ("fig8", figure_eight()),
        ("fig8_kinked", fig8_kinked()),
    ]
}

pub fn planar_by_name(name: &str) -> Option<SurfaceDiagram> {
    planar_zoo().into_iter().find(|(n, _)| *n == name).map(|(_, d)| d)
}

/// Two diagrams side by side, joined by a tube between face `fa` of `a`
/// and face `fb` of `b`.
pub fn connect(
    a: &SurfaceDiagram,
    b: &SurfaceDiagram,
    fa: usize,
    fb: usize,
) -> Result<SurfaceDiagram, FamilyError> {
    let pa = a.to_parts();
    let pb = b.to_parts();
    let shift_d = pa.alpha.len();
    let shift_f = a.faces().len();
    if a.is_empty() || b.is_empty() {
        return Err(FamilyError::Parameter("cannot connect an empty diagram".into()));
    }
    let mut parts = pa;
    parts.labels = numbered(parts.labels.len() + pb.labels.len());
    parts.kinds.extend(pb.kinds);
    parts.alpha.extend(pb.alpha.iter().map(|&d| d + shift_d));
    parts.over.extend(pb.over);
    // faces of the union: a's faces come first since its darts are smaller
    parts.tubes.extend(pb.tubes.iter().map(|&(x, y)| (x + shift_f, y + shift_f)));
    parts.handles.extend(pb.handles.iter().map(|&(f, k)| (f + shift_f, k)));
    parts.tubes.push((fa, fb + shift_f));
    Ok(parts.build()?)
}

/// Adds a tube between two faces, raising genus by one when both faces lie
/// in the same map piece.
pub fn add_tube(d: &SurfaceDiagram, fa: usize, fb: usize) -> Result<SurfaceDiagram, FamilyError> {
    let mut parts = d.to_parts();
    parts.tubes.push((fa, fb));
    Ok(parts.build()?)
}

pub fn add_handles(d: &SurfaceDiagram, face: usize, k: u32) -> Result<SurfaceDiagram, FamilyError> {
    let mut parts = d.to_parts();
    parts.handles.push((face, k));
    Ok(parts.build()?)
}

/// Base diagrams for randomized experiments: the planar zoo and small
/// torus families.
pub fn seeds() -> Vec<(String, SurfaceDiagram)> {
    let mut out: Vec<(String, SurfaceDiagram)> = planar_zoo()
        .into_iter()
        .map(|(n, d)| (n.to_string(), d))
        .collect();
    for (m, l) in [(1, 1), (2, 1), (2, 2), (0, 1), (3, 1)] {
        out.push((format!("grid {m} {l}"), grid(m, l).expect("valid grid")));
    }
    for (p, q) in [(3, 2), (4, 2), (12, 8)] {
        out.push((format!("torus_pq {p} {q}"), torus_pq(p, q).expect("valid torus")));
    }
    out
}

/// A random diagram with at most `max_crossings` crossings: a seed, a short
/// move walk, then random tubes, handles and connected sums.
pub fn random_surgered<R: Rng + ?Sized>(rng: &mut R, max_crossings: usize) -> SurfaceDiagram {
    let pool = seeds();
    let pick = |rng: &mut R| -> SurfaceDiagram {
        loop {
            let (_, d) = &pool[rng.gen_range(0..pool.len())];
            if d.crossing_count() <= max_crossings {
                return d.clone();
            }
        }
    };
    let mut d = pick(rng);
    if rng.gen_bool(0.3) {
        let other = pick(rng);
        if d.crossing_count() + other.crossing_count() <= max_crossings {
            let fa = rng.gen_range(0..d.faces().len());
            let fb = rng.gen_range(0..other.faces().len());
            d = connect(&d, &other, fa, fb).expect("connected sum is valid");
        }
    }
    let steps = rng.gen_range(0..8);
    d = moves::random_walk(&d, steps, max_crossings, rng);
    for _ in 0..rng.gen_range(0..3) {
        let fa = rng.gen_range(0..d.faces().len());
        let fb = rng.gen_range(0..d.faces().len());
        d = add_tube(&d, fa, fb).expect("tube is valid");
    }
    if rng.gen_bool(0.3) {
        let f = rng.gen_range(0..d.faces().len());
        d = add_handles(&d, f, 1).expect("handle is valid");
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(d: &SurfaceDiagram) -> (u32, usize, usize, usize) {
        (d.genus(), d.components().len(), d.crossing_count(), d.regions().len())
    }

    #[test]
    fn grid_contracts() {
        assert_eq!(shape(&grid(1, 1).unwrap()), (1, 2, 1, 1));
        assert_eq!(shape(&grid(2, 2).unwrap()), (1, 4, 4, 4));
        assert_eq!(shape(&grid(0, 1).unwrap()), (1, 1, 0, 1));
        assert_eq!(shape(&grid(3, 0).unwrap()), (1, 3, 0, 3));
        assert_eq!(shape(&grid(4, 1).unwrap()), (1, 5, 4, 4));
        assert!(grid(0, 0).is_err());
    }

    #[test]
    fn torus_contracts() {
        assert_eq!(shape(&torus_pq(12, 8).unwrap()), (1, 1, 3, 4));
        assert_eq!(shape(&torus_pq(3, 2).unwrap()), (1, 1, 0, 1));
        assert_eq!(shape(&meridian_family(6).unwrap()), (1, 1, 5, 6));
        assert_eq!(torus_pq(5, 0).unwrap(), meridian_family(5).unwrap());
        assert_eq!(shape(&torus_pq(0, 0).unwrap()), (1, 1, 0, 2));
    }

    #[test]
    fn planar_shapes() {
        assert_eq!(shape(&circle()), (0, 1, 0, 2));
        assert_eq!(shape(&kinked_unknot()), (0, 1, 1, 3));
        assert_eq!(shape(&hopf()), (0, 2, 2, 4));
        assert_eq!(shape(&trefoil()), (0, 1, 3, 5));
        assert_eq!(shape(&figure_eight()), (0, 1, 4, 6));
        assert_eq!(shape(&fig8_kinked()), (0, 1, 5, 7));
    }

    #[test]
    fn braid_word_checks() {
        assert!(closed_braid(3, &[sigma(1)], false).is_err());
        assert!(closed_braid(2, &[sigma(2)], false).is_err());
        assert!(closed_braid(0, &[], false).is_err());
    }

    #[test]
    fn everything_validates() {
        for (_, d) in seeds() {
            assert!(d.validate().is_empty());
        }
    }

    #[test]
    fn connected_sum() {
        let d = connect(&trefoil(), &hopf(), 0, 0).unwrap();
        assert_eq!(shape(&d), (0, 3, 5, 8));
        assert!(d.validate().is_empty());
    }
}
