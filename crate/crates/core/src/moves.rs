//! Reidemeister moves on surface diagrams.
//!
//! A move rewrites the combinatorial map locally and records, for each new
//! dart, the old dart running along the same edge side in the same
//! direction. New faces inherit the regions of those darts; the move adds
//! its own merges and Euler characteristic changes, and the surgeries are
//! rebuilt from the resulting region structure.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{CombinatorialMap, DiagramError, NodeKind, SurfaceDiagram};
use crate::region::{incidence_matrix, CountingRule};
use crate::union_find::UnionFind;

/// Which side of a dart's edge a kink is drawn on, looking along the dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Add => "R1_ADD",
            MoveKind::R1Remove => "R1_REMOVE",
            MoveKind::R2Add => "R2_ADD",
            MoveKind::R2Remove => "R2_REMOVE",
            MoveKind::R3 => "R3",
        }
    }

    /// Change in crossing count.
    pub fn crossing_delta(self) -> i64 {
        match self {
            MoveKind::R1Add => 1,
            MoveKind::R1Remove => -1,
            MoveKind::R2Add => 2,
            MoveKind::R2Remove => -2,
            MoveKind::R3 => 0,
        }
    }
}

/// Where and how to apply a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveSite {
    /// Kink on the edge of `dart`, drawn on `side`. With `over` set, the
    /// strand entering the new crossing from `dart` passes over.
    R1Add { dart: usize, side: Side, over: bool },
    /// `dart` is the only dart of a monogon face.
    R1Remove { dart: usize },
    /// Pushes the edge of `first` across the edge of `second`; both darts
    /// see the same region on their right.
    R2Add { first: usize, second: usize, over_first: bool },
    /// `dart` lies on a bigon face.
    R2Remove { dart: usize },
    /// `dart` lies on a triangle face.
    R3 { dart: usize },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Add { .. } => MoveKind::R1Add,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Add { .. } => MoveKind::R2Add,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.kind().name();
        match *self {
            MoveSite::R1Add { dart, side, over } => {
                let side = if side == Side::Left { "left" } else { "right" };
                write!(f, "{name} dart={dart} side={side} over={}", over as u8)
            }
            MoveSite::R2Add {
                first,
                second,
                over_first,
            } => write!(f, "{name} first={first} second={second} over_first={}", over_first as u8),
            MoveSite::R1Remove { dart } | MoveSite::R2Remove { dart } | MoveSite::R3 { dart } => {
                write!(f, "{name} dart={dart}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("move not applicable: {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn inapplicable<T>(why: &'static str) -> Result<T, MoveError> {
    Err(MoveError::NotApplicable(why))
}

/// A map under construction in the old dart numbering, extended by the
/// darts of new nodes.
struct Draft<'a> {
    old: &'a SurfaceDiagram,
    kinds: Vec<NodeKind>,
    labels: Vec<String>,
    over: Vec<bool>,
    dead: Vec<bool>,
    first: Vec<usize>,
    node_of: Vec<usize>,
    alpha: Vec<usize>,
    corr: Vec<Option<usize>>,
    used_labels: BTreeSet<String>,
    next_label: usize,
    /// Old regions joined by the move.
    unions: Vec<(usize, usize)>,
    /// Old regions the move deletes.
    removed: Vec<usize>,
    /// Darts whose face becomes a new disk region regardless of inheritance.
    fresh: Vec<usize>,
    /// Euler characteristic change for the new region containing an old one.
    delta: Vec<(usize, i64)>,
}

impl<'a> Draft<'a> {
    fn new(old: &'a SurfaceDiagram) -> Self {
        let map = old.map();
        let n = map.node_count();
        Self {
            old,
            kinds: map.kinds().to_vec(),
            labels: old.labels().to_vec(),
            over: old.over_bits().to_vec(),
            dead: vec![false; n],
            first: (0..n).map(|i| map.darts_of(i).start).collect(),
            node_of: (0..map.dart_count()).map(|d| map.node(d)).collect(),
            alpha: map.alphas().to_vec(),
            corr: (0..map.dart_count()).map(Some).collect(),
            used_labels: old.labels().iter().cloned().collect(),
            next_label: n,
            unions: Vec::new(),
            removed: Vec::new(),
            fresh: Vec::new(),
            delta: Vec::new(),
        }
    }

    fn fresh_label(&mut self) -> String {
        loop {
            let s = self.next_label.to_string();
            self.next_label += 1;
            if self.used_labels.insert(s.clone()) {
                return s;
            }
        }
    }

    /// Appends a node and returns its first dart.
    fn add_node(&mut self, kind: NodeKind, over: bool) -> usize {
        let start = self.alpha.len();
        let node = self.kinds.len();
        let label = self.fresh_label();
        self.kinds.push(kind);
        self.labels.push(label);
        self.over.push(over);
        self.dead.push(false);
        self.first.push(start);
        for _ in 0..kind.degree() {
            self.node_of.push(node);
            self.alpha.push(usize::MAX);
            self.corr.push(None);
        }
        start
    }

    fn link(&mut self, a: usize, b: usize) {
        self.alpha[a] = b;
        self.alpha[b] = a;
    }

    fn kill(&mut self, node: usize) {
        self.dead[node] = true;
    }

    fn opposite(&self, d: usize) -> usize {
        let n = self.node_of[d];
        let deg = self.kinds[n].degree();
        self.first[n] + (d - self.first[n] + deg / 2) % deg
    }

    fn alive(&self, d: usize) -> bool {
        !self.dead[self.node_of[d]]
    }

    fn finish(mut self) -> Result<SurfaceDiagram, MoveError> {
        let old = self.old;
        let total = self.alpha.len();
        let removed: BTreeSet<usize> = self.removed.iter().copied().collect();

        // reconnect strands through removed nodes
        let mut visited = vec![false; total];
        let mut joined = vec![usize::MAX; total];
        for d in (0..total).filter(|&d| self.alive(d)) {
            let mut w = self.alpha[d];
            let mut steps = 0;
            while !self.alive(w) {
                let z = self.opposite(w);
                visited[w] = true;
                visited[z] = true;
                w = self.alpha[z];
                steps += 1;
                if steps > total {
                    return inapplicable("strand trapped in removed nodes");
                }
            }
            joined[d] = w;
        }

        // strands left without nodes keep one of their edges as a marker
        let usable = |this: &Self, x: usize| {
            this.corr[x].is_some_and(|o| !removed.contains(&old.region_of_dart(o)))
        };
        let mut markers = Vec::new();
        for y in 0..total {
            if self.alive(y) || visited[y] {
                continue;
            }
            let mut pick = None;
            let mut w = y;
            loop {
                let z = self.opposite(w);
                let next = self.alpha[z];
                visited[w] = true;
                visited[z] = true;
                if pick.is_none() && usable(&self, z) && usable(&self, next) {
                    pick = Some([z, next]);
                }
                w = next;
                if w == y {
                    break;
                }
            }
            match pick {
                Some(pair) => markers.push(pair),
                None => return inapplicable("no edge can carry the remaining circle"),
            }
        }

        let mut new_id = vec![usize::MAX; total];
        let mut kinds = Vec::new();
        let mut labels = Vec::new();
        let mut over = Vec::new();
        let mut count = 0;
        for n in 0..self.kinds.len() {
            if self.dead[n] {
                continue;
            }
            let start = self.first[n];
            for id in &mut new_id[start..start + self.kinds[n].degree()] {
                *id = count;
                count += 1;
            }
            kinds.push(self.kinds[n]);
            labels.push(self.labels[n].clone());
            over.push(self.over[n]);
        }
        for &[a, b] in &markers {
            new_id[a] = count;
            new_id[b] = count + 1;
            count += 2;
            kinds.push(NodeKind::Marker);
            let label = self.fresh_label();
            labels.push(label);
            over.push(false);
        }
        let mut alpha = vec![0; count];
        let mut corr = vec![None; count];
        for d in 0..total {
            if new_id[d] == usize::MAX {
                continue;
            }
            corr[new_id[d]] = self.corr[d];
            if self.alive(d) {
                alpha[new_id[d]] = new_id[joined[d]];
            }
        }
        for &[a, b] in &markers {
            alpha[new_id[a]] = new_id[b];
            alpha[new_id[b]] = new_id[a];
        }
        if count == 0 {
            return inapplicable("move would erase the whole diagram");
        }
        let map = CombinatorialMap::new(kinds, alpha)?;
        let fresh: Vec<usize> = self.fresh.iter().map(|&d| new_id[d]).collect();
        let (face_group, chi) = self.plan_regions(&map, &corr, &fresh, &removed)?;
        let new = SurfaceDiagram::from_region_structure(labels, map, over, &face_group, &chi)
            .map_err(|_| MoveError::NotApplicable("region structure is not realizable"))?;
        if new.genus() != old.genus() {
            return inapplicable("move would change the surface");
        }
        if new.components().len() != old.components().len() {
            return inapplicable("move would change the component count");
        }
        Ok(new)
    }

    fn plan_regions(
        &self,
        map: &CombinatorialMap,
        corr: &[Option<usize>],
        fresh: &[usize],
        removed: &BTreeSet<usize>,
    ) -> Result<(Vec<usize>, Vec<i64>), MoveError> {
        let old = self.old;
        let (orbits, face_of) = map.face_orbits();
        let r_old = old.regions().len();
        let nf = orbits.len();
        let mut uf = UnionFind::new(r_old + nf);
        let mut explicit = UnionFind::new(r_old);
        for &(a, b) in &self.unions {
            uf.union(a, b);
            explicit.union(a, b);
        }
        let fresh_faces: BTreeSet<usize> = fresh.iter().map(|&d| face_of[d]).collect();
        for (f, orbit) in orbits.iter().enumerate() {
            if fresh_faces.contains(&f) {
                continue;
            }
            for &d in orbit {
                if let Some(o) = corr[d] {
                    uf.union(r_old + f, old.region_of_dart(o));
                }
            }
        }
        let mut explicit_of_root = BTreeMap::new();
        for r in 0..r_old {
            let e = explicit.find(r);
            if *explicit_of_root.entry(uf.find(r)).or_insert(e) != e {
                return inapplicable("move would merge unrelated regions");
            }
        }
        let mut group_of_root = BTreeMap::new();
        let mut face_group = Vec::with_capacity(nf);
        for f in 0..nf {
            let next = group_of_root.len();
            face_group.push(*group_of_root.entry(uf.find(r_old + f)).or_insert(next));
        }
        let groups = group_of_root.len();
        let mut chi = vec![0i64; groups];
        let mut inherited = vec![false; groups];
        for r in 0..r_old {
            match group_of_root.get(&uf.find(r)) {
                Some(&g) => {
                    if removed.contains(&r) {
                        return inapplicable("region marked for removal survives");
                    }
                    chi[g] += old.regions()[r].euler_characteristic;
                    inherited[g] = true;
                }
                None if removed.contains(&r) => {}
                None => return inapplicable("move would lose a region"),
            }
        }
        for &(r, dl) in &self.delta {
            if let Some(&g) = group_of_root.get(&uf.find(r)) {
                chi[g] += dl;
            }
        }
        for g in 0..groups {
            if !inherited[g] {
                chi[g] = 1;
            }
        }
        Ok((face_group, chi))
    }
}

/// Whether the strand through dart `d` passes over at its crossing.
fn over_at(d: &SurfaceDiagram, dart: usize) -> bool {
    let map = d.map();
    map.slot(dart).is_multiple_of(2) == d.over(map.node(dart))
}

/// Region made of the face alone, homeomorphic to a disk.
fn disk_face(d: &SurfaceDiagram, face: usize) -> bool {
    let r = &d.regions()[d.region_of_face(face)];
    r.faces.len() == 1 && r.euler_characteristic == 1
}

fn r1_add(d: &SurfaceDiagram, dart: usize, side: Side, over: bool) -> Result<SurfaceDiagram, MoveError> {
    let map = d.map();
    if dart >= map.dart_count() {
        return inapplicable("dart out of range");
    }
    let a = map.alpha(dart);
    let mut draft = Draft::new(d);
    let x = draft.add_node(NodeKind::Crossing, over);
    draft.link(dart, x);
    let out = match side {
        Side::Right => {
            draft.link(x + 2, x + 1);
            x + 3
        }
        Side::Left => {
            draft.link(x + 2, x + 3);
            x + 1
        }
    };
    draft.link(out, a);
    draft.corr[x] = Some(a);
    draft.corr[out] = Some(dart);
    draft.finish()
}

fn r1_remove(d: &SurfaceDiagram, x: usize) -> Result<SurfaceDiagram, MoveError> {
    let map = d.map();
    if x >= map.dart_count() {
        return inapplicable("dart out of range");
    }
    let node = map.node(x);
    let face = d.face_of(x);
    if map.kind(node) != NodeKind::Crossing || d.faces()[face].len() != 1 || !disk_face(d, face) {
        return inapplicable("dart does not bound a monogon disk");
    }
    let mut draft = Draft::new(d);
    draft.kill(node);
    draft.removed.push(d.region_of_face(face));
    draft.finish()
}

fn r2_add(d: &SurfaceDiagram, d1: usize, d2: usize, over_first: bool) -> Result<SurfaceDiagram, MoveError> {
    let map = d.map();
    if d1 >= map.dart_count() || d2 >= map.dart_count() {
        return inapplicable("dart out of range");
    }
    let (a1, a2) = (map.alpha(d1), map.alpha(d2));
    if d1 == d2 || d2 == a1 {
        return inapplicable("both darts lie on one edge");
    }
    let (f1, f2) = (d.face_of(d1), d.face_of(d2));
    if d.region_of_face(f1) != d.region_of_face(f2) {
        return inapplicable("darts do not share a region");
    }
    let region = d.region_of_face(f1);
    let mut draft = Draft::new(d);
    // y: lower crossing, x: upper crossing
    let y = draft.add_node(NodeKind::Crossing, over_first);
    let x = draft.add_node(NodeKind::Crossing, over_first);
    draft.link(d1, y + 2);
    draft.link(y, x + 2);
    draft.link(y + 1, x + 1);
    draft.link(x, a1);
    draft.link(x + 3, d2);
    draft.link(y + 3, a2);
    draft.corr[y + 2] = Some(a1);
    draft.corr[x] = Some(d1);
    draft.corr[x + 3] = Some(a2);
    draft.corr[y + 3] = Some(d2);
    if f1 == f2 {
        draft.fresh.push(y + 3);
    } else {
        draft.delta.push((region, 1));
    }
    draft.finish()
}

fn r2_remove(d: &SurfaceDiagram, p: usize) -> Result<SurfaceDiagram, MoveError> {
    let map = d.map();
    if p >= map.dart_count() {
        return inapplicable("dart out of range");
    }
    let face = d.face_of(p);
    let q = map.phi(p);
    let (nx, ny) = (map.node(p), map.node(q));
    if d.faces()[face].len() != 2
        || nx == ny
        || map.kind(nx) != NodeKind::Crossing
        || map.kind(ny) != NodeKind::Crossing
        || !disk_face(d, face)
    {
        return inapplicable("dart does not bound a bigon disk between two crossings");
    }
    let pp = map.alpha(p);
    if over_at(d, p) != over_at(d, pp) {
        return inapplicable("bigon strands alternate over and under");
    }
    let p_op = map.opposite(p);
    let q_op = map.opposite(q);
    let ra = d.region_of_dart(p_op);
    let rb = d.region_of_dart(q_op);
    let mut draft = Draft::new(d);
    draft.kill(nx);
    draft.kill(ny);
    draft.removed.push(d.region_of_face(face));
    draft.unions.push((ra, rb));
    draft.delta.push((ra, -1));
    draft.finish()
}

fn r3(d: &SurfaceDiagram, t: usize) -> Result<SurfaceDiagram, MoveError> {
    let map = d.map();
    if t >= map.dart_count() {
        return inapplicable("dart out of range");
    }
    let face = d.face_of(t);
    let tri = [t, map.phi(t), map.phi(map.phi(t))];
    let nodes = tri.map(|x| map.node(x));
    if d.faces()[face].len() != 3
        || nodes[0] == nodes[1]
        || nodes[1] == nodes[2]
        || nodes[0] == nodes[2]
        || nodes.iter().any(|&n| map.kind(n) != NodeKind::Crossing)
        || !disk_face(d, face)
    {
        return inapplicable("dart does not bound a triangle disk between three crossings");
    }
    let pattern = tri.map(|ti| (over_at(d, ti), over_at(d, map.alpha(ti))));
    if !pattern.contains(&(true, true)) || !pattern.contains(&(false, false)) {
        return inapplicable("no strand passes over the whole triangle");
    }
    let mut draft = Draft::new(d);
    let mut ext = BTreeMap::new();
    let mut internal = Vec::new();
    for &ti in &tri {
        let u_in = map.opposite(ti);
        let v_in = map.alpha(ti);
        let v_out = map.opposite(v_in);
        ext.insert(u_in, v_in);
        ext.insert(v_out, ti);
        internal.push((v_out, u_in));
    }
    for (&k, &nk) in &ext {
        let partner = map.alpha(k);
        draft.link(nk, ext.get(&partner).copied().unwrap_or(partner));
        draft.corr[nk] = Some(k);
    }
    for &(a, b) in &internal {
        draft.link(a, b);
        draft.corr[a] = None;
        draft.corr[b] = None;
    }
    draft.removed.push(d.region_of_face(face));
    draft.finish()
}

/// Applies a move, checking its applicability first.
pub fn apply_move(d: &SurfaceDiagram, site: &MoveSite) -> Result<SurfaceDiagram, MoveError> {
    match *site {
        MoveSite::R1Add { dart, side, over } => r1_add(d, dart, side, over),
        MoveSite::R1Remove { dart } => r1_remove(d, dart),
        MoveSite::R2Add {
            first,
            second,
            over_first,
        } => r2_add(d, first, second, over_first),
        MoveSite::R2Remove { dart } => r2_remove(d, dart),
        MoveSite::R3 { dart } => r3(d, dart),
    }
}

/// Candidate sites of one kind, before the applicability check.
fn candidates(d: &SurfaceDiagram, kind: MoveKind) -> Vec<MoveSite> {
    let map = d.map();
    let darts = map.dart_count();
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Add => {
            for dart in 0..darts {
                for side in [Side::Left, Side::Right] {
                    for over in [false, true] {
                        out.push(MoveSite::R1Add { dart, side, over });
                    }
                }
            }
        }
        MoveKind::R2Add => {
            for first in 0..darts {
                for second in 0..darts {
                    if first != second
                        && second != map.alpha(first)
                        && d.region_of_dart(first) == d.region_of_dart(second)
                    {
                        for over_first in [false, true] {
                            out.push(MoveSite::R2Add {
                                first,
                                second,
                                over_first,
                            });
                        }
                    }
                }
            }
        }
        MoveKind::R1Remove | MoveKind::R2Remove | MoveKind::R3 => {
            let size = match kind {
                MoveKind::R1Remove => 1,
                MoveKind::R2Remove => 2,
                _ => 3,
            };
            for (f, face) in d.faces().iter().enumerate() {
                if face.len() == size && disk_face(d, f) {
                    let dart = face[0];
                    out.push(match kind {
                        MoveKind::R1Remove => MoveSite::R1Remove { dart },
                        MoveKind::R2Remove => MoveSite::R2Remove { dart },
                        _ => MoveSite::R3 { dart },
                    });
                }
            }
        }
    }
    out
}

const KINDS: [MoveKind; 5] = [
    MoveKind::R1Add,
    MoveKind::R1Remove,
    MoveKind::R2Add,
    MoveKind::R2Remove,
    MoveKind::R3,
];

/// Every applicable site, grouped by kind in a fixed order.
pub fn enumerate_sites(d: &SurfaceDiagram) -> Vec<MoveSite> {
    KINDS
        .iter()
        .flat_map(|&k| candidates(d, k))
        .filter(|s| apply_move(d, s).is_ok())
        .collect()
}

/// `r − rank` of the modified incidence matrix.
pub fn corank(d: &SurfaceDiagram) -> i64 {
    let m = incidence_matrix(d, CountingRule::Modified);
    m.matrix.rows() as i64 - m.rank() as i64
}

/// One random move. Adds are favoured while the crossing count is small
/// and disabled once it would exceed `cap`.
pub fn random_step<R: Rng + ?Sized>(
    d: &SurfaceDiagram,
    start_crossings: usize,
    cap: usize,
    rng: &mut R,
) -> Option<(MoveSite, SurfaceDiagram)> {
    let c = d.crossing_count();
    let grow = c < 3 * start_crossings + 2;
    let mut weighted: Vec<(MoveKind, u32)> = vec![
        (MoveKind::R1Remove, if grow { 1 } else { 3 }),
        (MoveKind::R2Remove, if grow { 1 } else { 3 }),
        (MoveKind::R3, 2),
    ];
    if c < cap {
        weighted.push((MoveKind::R1Add, if grow { 3 } else { 1 }));
    }
    if c + 1 < cap {
        weighted.push((MoveKind::R2Add, if grow { 3 } else { 1 }));
    }
    while !weighted.is_empty() {
        let &(kind, _) = weighted.choose_weighted(rng, |w| w.1).ok()?;
        weighted.retain(|w| w.0 != kind);
        let mut sites = candidates(d, kind);
        sites.shuffle(rng);
        for site in sites.into_iter().take(24) {
            if let Ok(next) = apply_move(d, &site) {
                return Some((site, next));
            }
        }
    }
    None
}

/// A random walk of `steps` attempted moves, never exceeding
/// `max_crossings` crossings.
pub fn random_walk<R: Rng + ?Sized>(
    d: &SurfaceDiagram,
    steps: usize,
    max_crossings: usize,
    rng: &mut R,
) -> SurfaceDiagram {
    let start = d.crossing_count();
    let mut cur = d.clone();
    for _ in 0..steps {
        if let Some((_, next)) = random_step(&cur, start, max_crossings, rng) {
            cur = next;
        }
    }
    cur
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    /// `r − rank` before the walk and after each step.
    pub values: Vec<i64>,
    pub moves: Vec<MoveSite>,
    pub crossings: Vec<usize>,
    pub final_diagram: SurfaceDiagram,
}

impl TrialReport {
    pub fn constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// Walks `steps` random moves from `d` and records `r − rank` of the
/// modified incidence matrix along the way.
pub fn invariance_trial(d: &SurfaceDiagram, steps: usize, seed: u64) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = d.crossing_count();
    let cap = 3 * start + 6;
    let mut cur = d.clone();
    let mut values = vec![corank(&cur)];
    let mut crossings = vec![cur.crossing_count()];
    let mut moves = Vec::new();
    for _ in 0..steps {
        if let Some((site, next)) = random_step(&cur, start, cap, &mut rng) {
            moves.push(site);
            cur = next;
        }
        values.push(corank(&cur));
        crossings.push(cur.crossing_count());
    }
    TrialReport {
        values,
        moves,
        crossings,
        final_diagram: cur,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{circle, closed_braid, fig8_kinked, grid, sigma, sigma_inv, trefoil};

    fn rank_mod(d: &SurfaceDiagram) -> usize {
        incidence_matrix(d, CountingRule::Modified).rank()
    }

    #[test]
    fn kink_on_circle() {
        let c = circle();
        for side in [Side::Left, Side::Right] {
            let k = apply_move(&c, &MoveSite::R1Add { dart: 0, side, over: true }).unwrap();
            assert_eq!(k.crossing_count(), 1);
            assert_eq!(k.regions().len(), 3);
            assert!(k.validate().is_empty());
        }
    }

    #[test]
    fn circle_sites_are_additions() {
        let sites = enumerate_sites(&circle());
        assert!(!sites.is_empty());
        assert!(sites
            .iter()
            .all(|s| matches!(s.kind(), MoveKind::R1Add | MoveKind::R2Add)));
    }

    #[test]
    fn grid_has_no_removals() {
        let sites = enumerate_sites(&grid(1, 1).unwrap());
        assert!(sites
            .iter()
            .all(|s| !matches!(s.kind(), MoveKind::R1Remove | MoveKind::R2Remove)));
    }

    #[test]
    fn fig8_kinked_has_kink_removal() {
        let d = fig8_kinked();
        let sites = enumerate_sites(&d);
        assert!(sites.iter().any(|s| s.kind() == MoveKind::R1Remove));
    }

    #[test]
    fn r2_add_then_remove_restores_counts() {
        let t = trefoil();
        let adds: Vec<MoveSite> = candidates(&t, MoveKind::R2Add);
        let mut checked = 0;
        for site in adds {
            let Ok(bigger) = apply_move(&t, &site) else { continue };
            assert_eq!(bigger.crossing_count(), 5);
            let dr = bigger.regions().len() as i64 - t.regions().len() as i64;
            let drank = rank_mod(&bigger) as i64 - rank_mod(&t) as i64;
            assert!(dr == drank && (dr == 1 || dr == 2));
            let removals = candidates(&bigger, MoveKind::R2Remove);
            let back = removals
                .iter()
                .filter_map(|s| apply_move(&bigger, s).ok())
                .find(|b| b.crossing_count() == 3)
                .expect("created bigon can be removed");
            assert_eq!(back.regions().len(), t.regions().len());
            assert_eq!(rank_mod(&back), rank_mod(&t));
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn r3_keeps_rank_and_regions() {
        // σ1 σ2 σ1 closed on three strands contains a triangle with the
        // required over/under pattern
        let d = closed_braid(3, &[sigma(1), sigma(2), sigma(1)], false).unwrap();
        let r3_sites: Vec<MoveSite> = enumerate_sites(&d)
            .into_iter()
            .filter(|s| s.kind() == MoveKind::R3)
            .collect();
        assert!(!r3_sites.is_empty());
        for s in r3_sites {
            let e = apply_move(&d, &s).unwrap();
            assert_eq!(e.crossing_count(), d.crossing_count());
            assert_eq!(e.regions().len(), d.regions().len());
            assert_eq!(rank_mod(&e), rank_mod(&d));
            assert!(e.validate().is_empty());
        }
        let alt = closed_braid(3, &[sigma(1), sigma_inv(2), sigma(1)], false).unwrap();
        let _ = enumerate_sites(&alt);
    }

    #[test]
    fn r1_changes_rank_by_one() {
        for d in [trefoil(), grid(2, 1).unwrap(), fig8_kinked()] {
            for site in candidates(&d, MoveKind::R1Add) {
                let e = apply_move(&d, &site).unwrap();
                assert_eq!(e.regions().len(), d.regions().len() + 1);
                assert_eq!(rank_mod(&e), rank_mod(&d) + 1);
            }
        }
    }

    #[test]
    fn trial_examples() {
        let t = invariance_trial(&trefoil(), 100, 1);
        assert!(t.constant());
        assert_eq!(t.values[0], 2);
        let g = invariance_trial(&grid(1, 1).unwrap(), 50, 2);
        assert!(g.constant());
        assert_eq!(g.values[0], 1);
        assert_eq!(invariance_trial(&trefoil(), 30, 9), invariance_trial(&trefoil(), 30, 9));
    }
}
