//! Link diagrams on closed orientable surfaces as combinatorial maps.
//!
//! Darts are numbered globally: node `n` owns the contiguous block
//! `first[n]..first[n + 1]`, and the dart in slot `s` of that block is
//! `first[n] + s`. Rotation at a node is counterclockwise slot order. A
//! crossing has four darts with strands on slots `{0, 2}` and `{1, 3}`; a
//! marker is a two-valent node used for components without crossings.
//!
//! Faces are orbits of `phi = sigma ∘ alpha`. The corner of dart `d` (the
//! angle between `sigma⁻¹(d)` and `d`) lies in the face of `d`, which is also
//! the face on the right when walking out along `d`.
//!
//! Embeddings that are not cellular are described as a cellular map plus
//! surgeries: a tube joins two faces, a handle adds genus inside a face.
//! Regions are the blocks of faces joined by tubes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Crossing,
    Marker,
}

impl NodeKind {
    pub const fn degree(self) -> usize {
        match self {
            NodeKind::Crossing => 4,
            NodeKind::Marker => 2,
        }
    }
}

/// One broken invariant, reported by validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DartCountMismatch { expected: usize, found: usize },
    PairingOutOfRange { dart: usize, target: usize },
    EdgePairingFixedPoint { dart: usize },
    PairingNotInvolution { dart: usize },
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    OverBitOnMarker { node: usize },
    DuplicateLabel { label: String },
    BadFaceReference { face: usize, faces: usize },
    SurgeryDisconnected { pieces: usize },
    OddPieceEuler { piece: usize, euler: i64 },
    EulerIdentity { lhs: i64, rhs: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DartCountMismatch { expected, found } => {
                write!(f, "edge pairing covers {found} darts, nodes own {expected}")
            }
            Violation::PairingOutOfRange { dart, target } => {
                write!(f, "dart {dart} is paired with nonexistent dart {target}")
            }
            Violation::EdgePairingFixedPoint { dart } => {
                write!(f, "edge pairing has fixed point at dart {dart}")
            }
            Violation::PairingNotInvolution { dart } => {
                write!(f, "edge pairing is not an involution at dart {dart}")
            }
            Violation::LengthMismatch { what, expected, found } => {
                write!(f, "{what} has length {found}, expected {expected}")
            }
            Violation::OverBitOnMarker { node } => write!(f, "marker node {node} carries an over bit"),
            Violation::DuplicateLabel { label } => write!(f, "node label {label:?} is used twice"),
            Violation::BadFaceReference { face, faces } => {
                write!(f, "surgery references face {face} but the map has {faces} faces")
            }
            Violation::SurgeryDisconnected { pieces } => write!(
                f,
                "surgery connectivity violated: tubes leave {pieces} disconnected surface pieces"
            ),
            Violation::OddPieceEuler { piece, euler } => {
                write!(f, "map piece {piece} has odd Euler characteristic {euler}")
            }
            Violation::EulerIdentity { lhs, rhs } => {
                write!(f, "region Euler identity fails: {lhs} != {rhs}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("component index {index} out of range (diagram has {count})")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("inconsistent region structure: {0}")]
    RegionStructure(&'static str),
}

fn join_violations(v: &[Violation]) -> String {
    let mut out = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        out.push_str(&alloc::format!("{x}"));
    }
    out
}

/// Darts, rotation and edge pairing. Rotation is implicit in slot order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    kinds: Vec<NodeKind>,
    first: Vec<usize>,
    node_of: Vec<usize>,
    alpha: Vec<usize>,
}

impl CombinatorialMap {
    /// Checks the pairing and builds the map.
    pub fn new(kinds: Vec<NodeKind>, alpha: Vec<usize>) -> Result<Self, DiagramError> {
        let violations = check_pairing(&kinds, &alpha);
        if !violations.is_empty() {
            return Err(DiagramError::Invalid(violations));
        }
        Ok(Self::new_unchecked(kinds, alpha))
    }

    pub(crate) fn new_unchecked(kinds: Vec<NodeKind>, alpha: Vec<usize>) -> Self {
        let mut first = Vec::with_capacity(kinds.len() + 1);
        let mut node_of = Vec::with_capacity(alpha.len());
        let mut next = 0;
        for (n, k) in kinds.iter().enumerate() {
            first.push(next);
            next += k.degree();
            node_of.extend(core::iter::repeat_n(n, k.degree()));
        }
        first.push(next);
        Self {
            kinds,
            first,
            node_of,
            alpha,
        }
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn kind(&self, node: usize) -> NodeKind {
        self.kinds[node]
    }

    pub fn darts_of(&self, node: usize) -> Range<usize> {
        self.first[node]..self.first[node + 1]
    }

    pub fn dart(&self, node: usize, slot: usize) -> usize {
        debug_assert!(slot < self.kinds[node].degree());
        self.first[node] + slot
    }

    #[inline]
    pub fn node(&self, d: usize) -> usize {
        self.node_of[d]
    }

    #[inline]
    pub fn slot(&self, d: usize) -> usize {
        d - self.first[self.node_of[d]]
    }

    #[inline]
    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn alphas(&self) -> &[usize] {
        &self.alpha
    }

    #[inline]
    fn rotate(&self, d: usize, by: usize) -> usize {
        let n = self.node_of[d];
        let deg = self.kinds[n].degree();
        self.first[n] + (d - self.first[n] + by) % deg
    }

    /// Counterclockwise successor at the dart's node.
    #[inline]
    pub fn sigma(&self, d: usize) -> usize {
        self.rotate(d, 1)
    }

    #[inline]
    pub fn sigma_inv(&self, d: usize) -> usize {
        let deg = self.kinds[self.node_of[d]].degree();
        self.rotate(d, deg - 1)
    }

    /// The dart that continues the strand straight through the node.
    #[inline]
    pub fn opposite(&self, d: usize) -> usize {
        let deg = self.kinds[self.node_of[d]].degree();
        self.rotate(d, deg / 2)
    }

    /// Face permutation `sigma ∘ alpha`.
    #[inline]
    pub fn phi(&self, d: usize) -> usize {
        self.sigma(self.alpha[d])
    }

    pub fn crossings(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.kinds.len()).filter(|&n| self.kinds[n] == NodeKind::Crossing)
    }

    /// Face orbits, ordered by smallest dart, with each orbit starting at it.
    pub fn face_orbits(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.alpha.len();
        let mut face_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let idx = orbits.len();
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = idx;
                orbit.push(d);
                d = self.phi(d);
                if d == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        (orbits, face_of)
    }

    /// Connected pieces of the underlying graph: per-dart label and count.
    pub fn pieces(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.alpha.len());
        for d in 0..self.alpha.len() {
            uf.union(d, self.alpha[d]);
            uf.union(d, self.sigma(d));
        }
        uf.labels()
    }
}

fn check_pairing(kinds: &[NodeKind], alpha: &[usize]) -> Vec<Violation> {
    let expected: usize = kinds.iter().map(|k| k.degree()).sum();
    let mut out = Vec::new();
    if expected != alpha.len() {
        out.push(Violation::DartCountMismatch {
            expected,
            found: alpha.len(),
        });
        return out;
    }
    for (d, &a) in alpha.iter().enumerate() {
        if a >= alpha.len() {
            out.push(Violation::PairingOutOfRange { dart: d, target: a });
        } else if a == d {
            out.push(Violation::EdgePairingFixedPoint { dart: d });
        } else if alpha[a] != d {
            out.push(Violation::PairingNotInvolution { dart: d });
        }
    }
    out
}

/// Unvalidated building blocks of a [`SurfaceDiagram`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiagramParts {
    pub labels: Vec<String>,
    pub kinds: Vec<NodeKind>,
    /// Edge pairing over the global dart numbering.
    pub alpha: Vec<usize>,
    /// Per node; `true` means the strand through slots `{0, 2}` is over.
    pub over: Vec<bool>,
    pub tubes: Vec<(usize, usize)>,
    pub handles: Vec<(usize, u32)>,
}

impl DiagramParts {
    /// Every invariant violation, in a stable order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = check_pairing(&self.kinds, &self.alpha);
        let n = self.kinds.len();
        if self.labels.len() != n {
            out.push(Violation::LengthMismatch {
                what: "label list",
                expected: n,
                found: self.labels.len(),
            });
        }
        if self.over.len() != n {
            out.push(Violation::LengthMismatch {
                what: "over-bit list",
                expected: n,
                found: self.over.len(),
            });
        } else {
            for (node, (&k, &o)) in self.kinds.iter().zip(&self.over).enumerate() {
                if k == NodeKind::Marker && o {
                    out.push(Violation::OverBitOnMarker { node });
                }
            }
        }
        let mut seen = BTreeMap::new();
        for l in &self.labels {
            if seen.insert(l.as_str(), ()).is_some() {
                out.push(Violation::DuplicateLabel { label: l.clone() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let map = CombinatorialMap::new_unchecked(self.kinds.clone(), self.alpha.clone());
        let (orbits, _) = map.face_orbits();
        let faces = orbits.len().max(1);
        for &(a, b) in &self.tubes {
            for f in [a, b] {
                if f >= faces {
                    out.push(Violation::BadFaceReference { face: f, faces });
                }
            }
        }
        for &(f, _) in &self.handles {
            if f >= faces {
                out.push(Violation::BadFaceReference { face: f, faces });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let topo = Topology::compute(&map, &self.tubes);
        if topo.surgery_components != 1 {
            out.push(Violation::SurgeryDisconnected {
                pieces: topo.surgery_components,
            });
        }
        for (piece, &e) in topo.piece_euler.iter().enumerate() {
            if e % 2 != 0 || e > 2 {
                out.push(Violation::OddPieceEuler { piece, euler: e });
            }
        }
        out
    }

    pub fn build(self) -> Result<SurfaceDiagram, DiagramError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(DiagramError::Invalid(violations));
        }
        Ok(SurfaceDiagram::assemble(self))
    }
}

/// Map-level topology shared by validation and construction.
struct Topology {
    piece_of_dart: Vec<usize>,
    piece_count: usize,
    piece_euler: Vec<i64>,
    surgery_components: usize,
}

impl Topology {
    fn compute(map: &CombinatorialMap, tubes: &[(usize, usize)]) -> Self {
        if map.dart_count() == 0 {
            return Self {
                piece_of_dart: Vec::new(),
                piece_count: 1,
                piece_euler: vec![2],
                surgery_components: 1,
            };
        }
        let (piece_of_dart, piece_count) = map.pieces();
        let (orbits, _) = map.face_orbits();
        let mut euler = vec![0i64; piece_count];
        for n in 0..map.node_count() {
            euler[piece_of_dart[map.darts_of(n).start]] += 1;
        }
        for d in 0..map.dart_count() {
            if d < map.alpha(d) {
                euler[piece_of_dart[d]] -= 1;
            }
        }
        for orbit in &orbits {
            euler[piece_of_dart[orbit[0]]] += 1;
        }
        let mut uf = UnionFind::new(piece_count);
        for &(a, b) in tubes {
            uf.union(piece_of_dart[orbits[a][0]], piece_of_dart[orbits[b][0]]);
        }
        let surgery_components = uf.labels().1;
        Self {
            piece_of_dart,
            piece_count,
            piece_euler: euler,
            surgery_components,
        }
    }
}

/// A region of the surface minus the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    /// Face indices, ascending.
    pub faces: Vec<usize>,
    pub euler_characteristic: i64,
}

/// One link component, traced straight through every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub index: usize,
    /// Darts in traversal order: out-dart, its partner, the next out-dart, ...
    /// The traversal starts from the component's smallest dart, which fixes
    /// the default orientation.
    pub darts: Vec<usize>,
}

impl Component {
    /// Darts along which the component leaves a node, in traversal order.
    pub fn outgoing(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().step_by(2).copied()
    }
}

/// A validated link diagram on a closed orientable surface.
#[derive(Debug, Clone)]
pub struct SurfaceDiagram {
    labels: Vec<String>,
    map: CombinatorialMap,
    over: Vec<bool>,
    tubes: Vec<(usize, usize)>,
    handles: Vec<u32>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    regions: Vec<Region>,
    region_of_face: Vec<usize>,
    components: Vec<Component>,
    component_of: Vec<usize>,
    edge_of: Vec<usize>,
    piece_of_dart: Vec<usize>,
    piece_count: usize,
    genus: u32,
}

impl PartialEq for SurfaceDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.map == other.map
            && self.over == other.over
            && self.tubes == other.tubes
            && self.handles == other.handles
    }
}

impl Eq for SurfaceDiagram {}

impl SurfaceDiagram {
    /// The diagram with no nodes on a surface of the given genus.
    pub fn empty(genus: u32) -> Self {
        let handles = if genus > 0 { vec![(0, genus)] } else { Vec::new() };
        DiagramParts {
            handles,
            ..DiagramParts::default()
        }
        .build()
        .expect("empty diagram is valid")
    }

    fn assemble(parts: DiagramParts) -> Self {
        let DiagramParts {
            labels,
            kinds,
            alpha,
            over,
            tubes,
            handles: handle_list,
        } = parts;
        let map = CombinatorialMap::new_unchecked(kinds, alpha);
        let (mut faces, face_of) = map.face_orbits();
        if faces.is_empty() {
            faces.push(Vec::new());
        }
        let mut handles = vec![0u32; faces.len()];
        for &(f, k) in &handle_list {
            handles[f] += k;
        }
        let topo = Topology::compute(&map, &tubes);

        let mut uf = UnionFind::new(faces.len());
        for &(a, b) in &tubes {
            uf.union(a, b);
        }
        let (region_of_face, region_count) = uf.labels();
        let mut regions: Vec<Region> = (0..region_count)
            .map(|_| Region {
                faces: Vec::new(),
                euler_characteristic: 0,
            })
            .collect();
        for (f, &r) in region_of_face.iter().enumerate() {
            regions[r].faces.push(f);
            regions[r].euler_characteristic += 1 - 2 * handles[f] as i64;
        }
        for &(a, _) in &tubes {
            regions[region_of_face[a]].euler_characteristic -= 2;
        }
        if map.dart_count() == 0 {
            // the lone region is the whole closed surface
            regions[0].euler_characteristic += 1;
        }

        let mut component_of = vec![usize::MAX; map.dart_count()];
        let mut components = Vec::new();
        for start in 0..map.dart_count() {
            if component_of[start] != usize::MAX {
                continue;
            }
            let index = components.len();
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                let a = map.alpha(d);
                component_of[d] = index;
                component_of[a] = index;
                darts.push(d);
                darts.push(a);
                d = map.opposite(a);
                if d == start {
                    break;
                }
            }
            components.push(Component { index, darts });
        }

        let mut edge_of = vec![usize::MAX; map.dart_count()];
        let mut next_edge = 0;
        for d in 0..map.dart_count() {
            if edge_of[d] == usize::MAX {
                edge_of[d] = next_edge;
                edge_of[map.alpha(d)] = next_edge;
                next_edge += 1;
            }
        }

        let genus_twice: i64 = topo.piece_euler.iter().map(|e| 2 - e).sum::<i64>()
            + 2 * (tubes.len() as i64 - (topo.piece_count as i64 - 1))
            + 2 * handles.iter().map(|&h| h as i64).sum::<i64>();
        debug_assert!(genus_twice >= 0 && genus_twice % 2 == 0);

        Self {
            labels,
            map,
            over,
            tubes,
            handles,
            faces,
            face_of,
            regions,
            region_of_face,
            components,
            component_of,
            edge_of,
            piece_of_dart: topo.piece_of_dart,
            piece_count: topo.piece_count,
            genus: (genus_twice / 2) as u32,
        }
    }

    /// Rebuilds surgeries from a region structure on `map`: faces labelled
    /// with the same group form one region of the given Euler characteristic.
    /// Faces of a region are chained by tubes in ascending order; leftover
    /// genus becomes handles on the region's smallest face.
    pub(crate) fn from_region_structure(
        labels: Vec<String>,
        map: CombinatorialMap,
        over: Vec<bool>,
        face_group: &[usize],
        group_chi: &[i64],
    ) -> Result<Self, DiagramError> {
        let (orbits, _) = map.face_orbits();
        let face_count = orbits.len().max(1);
        if face_group.len() != face_count {
            return Err(DiagramError::RegionStructure("face labelling has wrong length"));
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); group_chi.len()];
        for (f, &g) in face_group.iter().enumerate() {
            members
                .get_mut(g)
                .ok_or(DiagramError::RegionStructure("face group out of range"))?
                .push(f);
        }
        let mut tubes = Vec::new();
        let mut handles = Vec::new();
        for (g, faces) in members.iter().enumerate() {
            let Some(&head) = faces.first() else {
                return Err(DiagramError::RegionStructure("region without faces"));
            };
            for w in faces.windows(2) {
                tubes.push((w[0], w[1]));
            }
            // the empty map's single virtual face has no boundary
            let boundary = if map.dart_count() == 0 { 0 } else { faces.len() as i64 };
            let twice_h = 2 - boundary - group_chi[g];
            if twice_h < 0 || twice_h % 2 != 0 {
                return Err(DiagramError::RegionStructure("region Euler characteristic is unrealizable"));
            }
            if twice_h > 0 {
                handles.push((head, (twice_h / 2) as u32));
            }
        }
        DiagramParts {
            labels,
            kinds: map.kinds.clone(),
            alpha: map.alpha.clone(),
            over,
            tubes,
            handles,
        }
        .build()
    }

    pub fn to_parts(&self) -> DiagramParts {
        DiagramParts {
            labels: self.labels.clone(),
            kinds: self.map.kinds.clone(),
            alpha: self.map.alpha.clone(),
            over: self.over.clone(),
            tubes: self.tubes.clone(),
            handles: self.handles(),
        }
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn over_bits(&self) -> &[bool] {
        &self.over
    }

    pub fn over(&self, node: usize) -> bool {
        self.over[node]
    }

    pub fn tubes(&self) -> &[(usize, usize)] {
        &self.tubes
    }

    /// Nonzero handle counts as `(face, count)`.
    pub fn handles(&self) -> Vec<(usize, u32)> {
        self.handles
            .iter()
            .enumerate()
            .filter(|(_, &h)| h > 0)
            .map(|(f, &h)| (f, h))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.map.node_count() == 0
    }

    /// Crossing node indices in node order; this is the column order of
    /// every incidence matrix.
    pub fn crossings(&self) -> Vec<usize> {
        self.map.crossings().collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.map.crossings().count()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_of_face(&self, f: usize) -> usize {
        self.region_of_face[f]
    }

    /// Region holding the corner of dart `d`.
    pub fn region_of_dart(&self, d: usize) -> usize {
        self.region_of_face[self.face_of[d]]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, d: usize) -> usize {
        self.component_of[d]
    }

    pub fn edge_of(&self, d: usize) -> usize {
        self.edge_of[d]
    }

    pub fn piece_count(&self) -> usize {
        self.piece_count
    }

    pub fn piece_of_dart(&self, d: usize) -> usize {
        self.piece_of_dart[d]
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    /// The same projection and surgeries with new over bits.
    pub fn with_over_bits(&self, over: Vec<bool>) -> Result<Self, DiagramError> {
        let mut parts = self.to_parts();
        parts.over = over;
        parts.build()
    }

    /// Same map and same surgeries.
    pub fn same_projection(&self, other: &Self) -> bool {
        self.map == other.map && self.tubes == other.tubes && self.handles == other.handles
    }

    /// Re-checks every invariant, including the region Euler identity
    /// `Σ χ(R) + V − E = 2 − 2g`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.to_parts().validate();
        let sum: i64 = self.regions.iter().map(|r| r.euler_characteristic).sum();
        let lhs = sum + self.map.node_count() as i64 - self.map.edge_count() as i64;
        let rhs = 2 - 2 * self.genus as i64;
        if lhs != rhs {
            out.push(Violation::EulerIdentity { lhs, rhs });
        }
        out
    }

    /// Removes component `index`. Crossings between it and a kept strand
    /// become markers on that strand; its self-crossings and markers vanish.
    /// The ambient surface is unchanged.
    pub fn delete_component(&self, index: usize) -> Result<Self, DiagramError> {
        let n = self.components.len();
        if index >= n {
            return Err(DiagramError::ComponentOutOfRange { index, count: n });
        }
        let mut remove = vec![false; n];
        remove[index] = true;
        self.delete_components(&remove)
    }

    /// Keeps exactly the components flagged `true`.
    pub fn sublink(&self, keep: &[bool]) -> Result<Self, DiagramError> {
        let remove: Vec<bool> = keep.iter().map(|k| !k).collect();
        self.delete_components(&remove)
    }

    fn delete_components(&self, remove: &[bool]) -> Result<Self, DiagramError> {
        let map = &self.map;
        let removed = |d: usize| remove[self.component_of[d]];

        // old regions merge across removed darts
        let mut uf = UnionFind::new(self.regions.len());
        for d in (0..map.dart_count()).filter(|&d| removed(d)) {
            uf.union(self.region_of_dart(d), self.region_of_dart(map.alpha(d)));
            uf.union(self.region_of_dart(d), self.region_of_dart(map.sigma(d)));
        }
        let (group, group_count) = uf.labels();
        let mut chi = vec![0i64; group_count];
        for (r, region) in self.regions.iter().enumerate() {
            chi[group[r]] += region.euler_characteristic;
        }
        for d in (0..map.dart_count()).filter(|&d| removed(d)) {
            if d < map.alpha(d) {
                chi[group[self.region_of_dart(d)]] -= 1;
            }
        }
        for node in 0..map.node_count() {
            let darts = map.darts_of(node);
            if darts.clone().all(removed) {
                chi[group[self.region_of_dart(darts.start)]] += 1;
            }
        }

        let kept: Vec<usize> = (0..map.dart_count()).filter(|&d| !removed(d)).collect();
        if kept.is_empty() {
            debug_assert_eq!(group_count, 1);
            return Ok(Self::empty(self.genus));
        }

        let mut new_id = vec![usize::MAX; map.dart_count()];
        let mut kinds = Vec::new();
        let mut labels = Vec::new();
        let mut over = Vec::new();
        let mut next = 0;
        for node in 0..map.node_count() {
            let live: Vec<usize> = map.darts_of(node).filter(|&d| !removed(d)).collect();
            if live.is_empty() {
                continue;
            }
            let kind = if live.len() == 4 { NodeKind::Crossing } else { NodeKind::Marker };
            debug_assert_eq!(live.len(), kind.degree());
            for d in live {
                new_id[d] = next;
                next += 1;
            }
            kinds.push(kind);
            labels.push(self.labels[node].clone());
            over.push(kind == NodeKind::Crossing && self.over[node]);
        }
        let mut alpha = vec![0; next];
        for &d in &kept {
            alpha[new_id[d]] = new_id[map.alpha(d)];
        }
        let new_map = CombinatorialMap::new(kinds, alpha)?;
        let (orbits, _) = new_map.face_orbits();
        let mut old_of_new = vec![0; next];
        for &d in &kept {
            old_of_new[new_id[d]] = d;
        }
        let face_group: Vec<usize> = orbits
            .iter()
            .map(|orbit| group[self.region_of_dart(old_of_new[orbit[0]])])
            .collect();
        Self::from_region_structure(labels, new_map, over, &face_group, &chi)
    }
}
