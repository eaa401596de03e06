//! Finite simple graphs and the generic combinatorial algorithms the rest of
//! the crate is built on: induced subgraphs, components, maximal independent
//! sets, induced matchings, forbidden-pattern search, chordal bipartite
//! recognition, small-graph isomorphism and brute-force vertex decomposability.
//!
//! Vertex ids are opaque `usize` values. Internally every algorithm works on
//! positions `0..n` and 64-bit vertex masks, so the bitmask routines require
//! graphs with at most 64 vertices; all configured caps sit well below that.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type VertexSet = BTreeSet<VertexId>;
pub type Edge = (VertexId, VertexId);

/// Position of a vertex in a grid, 1-based (matrix convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridCoord {
    pub row: u32,
    pub col: u32,
}

impl GridCoord {
    pub fn new(row: u32, col: u32) -> Self {
        assert!(row >= 1 && col >= 1, "grid coordinates are 1-based");
        GridCoord { row, col }
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    InvalidVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// Enumeration caps. Exceeding one is a typed error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Vertices for maximal independent set enumeration and well-coveredness.
    pub mis_vertices: usize,
    /// Edges for the exhaustive induced matching search.
    pub matching_edges: usize,
    /// Vertices for forbidden-pattern and induced-cycle search.
    pub pattern_vertices: usize,
    /// Vertices for the generic isomorphism search.
    pub isomorphism_vertices: usize,
    /// Vertices for the memoized vertex decomposability recursion.
    pub vd_vertices: usize,
    /// Vertices for the Hochster oracle (2^n subsets).
    pub hochster_vertices: usize,
    /// Total faces of a single simplicial complex handed to the homology engine.
    pub homology_faces: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            mis_vertices: 24,
            matching_edges: 40,
            pattern_vertices: 24,
            isomorphism_vertices: 16,
            vd_vertices: 14,
            hochster_vertices: 16,
            homology_faces: 1 << 16,
        }
    }
}

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap.min(64) {
        Err(GraphError::TooLarge {
            what,
            size,
            cap: cap.min(64),
        })
    } else {
        Ok(())
    }
}

/// An immutable finite simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    nbrs: Vec<Vec<usize>>,
    labels: BTreeMap<VertexId, GridCoord>,
}

impl Graph {
    /// Builds a graph. Duplicate vertices and edges are merged; loops and
    /// edges touching undeclared vertices are rejected.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = Edge>,
    {
        let ids: Vec<VertexId> = vertices.into_iter().collect::<VertexSet>().into_iter().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let mut sets = vec![BTreeSet::new(); ids.len()];
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let pu = *index.get(&u).ok_or(GraphError::InvalidVertex(u))?;
            let pv = *index.get(&v).ok_or(GraphError::InvalidVertex(v))?;
            sets[pu].insert(pv);
            sets[pv].insert(pu);
        }
        Ok(Graph {
            ids,
            index,
            nbrs: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            labels: BTreeMap::new(),
        })
    }

    /// Graph on `0..n` from an edge list.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Graph> {
        Graph::new(0..n, edges.iter().copied())
    }

    pub fn empty() -> Graph {
        Graph::new(std::iter::empty(), std::iter::empty()).expect("empty graph")
    }

    /// Attaches grid labels. Labels for unknown vertices are rejected.
    pub fn with_labels<L>(mut self, labels: L) -> Result<Graph>
    where
        L: IntoIterator<Item = (VertexId, GridCoord)>,
    {
        for (v, c) in labels {
            if !self.index.contains_key(&v) {
                return Err(GraphError::InvalidVertex(v));
            }
            self.labels.insert(v, c);
        }
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn size(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn label(&self, v: VertexId) -> Option<GridCoord> {
        self.labels.get(&v).copied()
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, GridCoord> {
        &self.labels
    }

    /// Vertex carrying the given grid label, if any.
    pub fn vertex_at(&self, coord: GridCoord) -> Option<VertexId> {
        self.labels.iter().find(|(_, &c)| c == coord).map(|(&v, _)| v)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for (p, ns) in self.nbrs.iter().enumerate() {
            for &q in ns {
                if p < q {
                    out.push((self.ids[p], self.ids[q]));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&pu), Some(&pv)) => self.nbrs[pu].binary_search(&pv).is_ok(),
            _ => false,
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.nbrs[self.position(v)?].len())
    }

    pub fn neighbors(&self, v: VertexId) -> Result<impl Iterator<Item = VertexId> + '_> {
        let p = self.position(v)?;
        Ok(self.nbrs[p].iter().map(move |&q| self.ids[q]))
    }

    pub fn is_edgeless(&self) -> bool {
        self.nbrs.iter().all(Vec::is_empty)
    }

    pub(crate) fn position(&self, v: VertexId) -> Result<usize> {
        self.index.get(&v).copied().ok_or(GraphError::InvalidVertex(v))
    }

    pub(crate) fn id_at(&self, p: usize) -> VertexId {
        self.ids[p]
    }

    /// Adjacency as bitmasks over positions. Requires at most 64 vertices.
    pub(crate) fn masks(&self) -> Vec<u64> {
        assert!(self.order() <= 64, "bitmask routines need at most 64 vertices");
        self.nbrs
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &q| m | (1 << q)))
            .collect()
    }

    pub(crate) fn ids_of_mask(&self, mask: u64) -> VertexSet {
        bits(mask).map(|p| self.ids[p]).collect()
    }

    /// Disjoint union; vertices of `other` are shifted past the largest id of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.ids.last().map_or(0, |&v| v + 1);
        let vertices = self.ids.iter().copied().chain(other.ids.iter().map(|&v| v + shift));
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        Graph::new(vertices, edges).expect("disjoint union of valid graphs")
    }

    /// The same graph with ids replaced by `0..n` in increasing id order.
    pub fn compacted(&self) -> (Graph, Vec<VertexId>) {
        let edges: Vec<Edge> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (self.index[&u], self.index[&v]))
            .collect();
        let labels: Vec<(VertexId, GridCoord)> = self
            .labels
            .iter()
            .map(|(v, &c)| (self.index[v], c))
            .collect();
        let g = Graph::from_edges(self.order(), &edges)
            .and_then(|g| g.with_labels(labels))
            .expect("compaction of a valid graph");
        (g, self.ids.clone())
    }

    pub fn remove_vertex(&self, v: VertexId) -> Result<Graph> {
        self.position(v)?;
        let keep: VertexSet = self.ids.iter().copied().filter(|&u| u != v).collect();
        induced_subgraph(self, &keep)
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let p = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(p)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

// ---------------------------------------------------------------------------
// Basic structure
// ---------------------------------------------------------------------------

/// The induced graph on `w`; labels of surviving vertices are kept.
pub fn induced_subgraph(g: &Graph, w: &VertexSet) -> Result<Graph> {
    for &v in w {
        g.position(v)?;
    }
    let edges = g
        .edges()
        .into_iter()
        .filter(|(u, v)| w.contains(u) && w.contains(v));
    let sub = Graph::new(w.iter().copied(), edges)?;
    let labels: Vec<_> = g
        .labels
        .iter()
        .filter(|(v, _)| w.contains(v))
        .map(|(&v, &c)| (v, c))
        .collect();
    sub.with_labels(labels)
}

/// A connected component re-indexed to `0..k`, with the map back into the host.
#[derive(Debug, Clone)]
pub struct Component {
    pub graph: Graph,
    /// `host_ids[i]` is the host id of component vertex `i`.
    pub host_ids: Vec<VertexId>,
}

/// Connected components ordered by their smallest vertex id.
pub fn connected_components(g: &Graph) -> Vec<Component> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for &q in &g.nbrs[p] {
                if !seen[q] {
                    seen[q] = true;
                    members.push(q);
                    queue.push_back(q);
                }
            }
        }
        members.sort_unstable();
        let set: VertexSet = members.iter().map(|&p| g.ids[p]).collect();
        let sub = induced_subgraph(g, &set).expect("component vertices belong to the graph");
        let (graph, host_ids) = sub.compacted();
        out.push(Component { graph, host_ids });
    }
    out
}

/// `N[v]`.
pub fn closed_neighborhood(g: &Graph, v: VertexId) -> Result<VertexSet> {
    let mut out: VertexSet = g.neighbors(v)?.collect();
    out.insert(v);
    Ok(out)
}

pub fn is_independent(g: &Graph, set: &VertexSet) -> bool {
    set.iter()
        .all(|&u| set.iter().all(|&v| u == v || !g.has_edge(u, v)))
}

// ---------------------------------------------------------------------------
// Maximal independent sets
// ---------------------------------------------------------------------------

/// Maximal independent sets of the subgraph induced on `within`, as masks.
///
/// Bron–Kerbosch with pivoting on the complement: a maximal independent set
/// of `G` is a maximal clique of the complement.
pub(crate) fn mis_masks(adj: &[u64], within: u64) -> Vec<u64> {
    let comp: Vec<u64> = (0..adj.len())
        .map(|p| within & !adj[p] & !(1u64 << p))
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&comp, 0, within, 0, &mut out);
    out.sort_unstable();
    out
}

fn bron_kerbosch(comp: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (comp[u] & p).count_ones())
        .expect("p is non-empty");
    for v in bits(p & !comp[pivot]) {
        let bit = 1u64 << v;
        bron_kerbosch(comp, r | bit, p & comp[v], x & comp[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Every maximal independent set, each sorted, the list sorted.
pub fn maximal_independent_sets(g: &Graph, limits: &Limits) -> Result<Vec<VertexSet>> {
    check_cap("vertex set", g.order(), limits.mis_vertices)?;
    let adj = g.masks();
    let mut sets: Vec<VertexSet> = mis_masks(&adj, full_mask(g.order()))
        .into_iter()
        .map(|m| g.ids_of_mask(m))
        .collect();
    sets.sort();
    Ok(sets)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WellCovered {
    /// Every maximal independent set has this size.
    Uniform { size: usize },
    /// Two maximal independent sets of different sizes.
    Mixed { smaller: VertexSet, larger: VertexSet },
}

impl WellCovered {
    pub fn holds(&self) -> bool {
        matches!(self, WellCovered::Uniform { .. })
    }
}

pub fn is_well_covered(g: &Graph, limits: &Limits) -> Result<WellCovered> {
    let sets = maximal_independent_sets(g, limits)?;
    let smallest = sets.iter().min_by_key(|s| s.len()).cloned().unwrap_or_default();
    let largest = sets.iter().max_by_key(|s| s.len()).cloned().unwrap_or_default();
    Ok(if smallest.len() == largest.len() {
        WellCovered::Uniform {
            size: smallest.len(),
        }
    } else {
        WellCovered::Mixed {
            smaller: smallest,
            larger: largest,
        }
    })
}

pub(crate) fn well_covered_mask(adj: &[u64], within: u64) -> bool {
    let sets = mis_masks(adj, within);
    sets.windows(2)
        .all(|w| w[0].count_ones() == w[1].count_ones())
}

// ---------------------------------------------------------------------------
// Induced matchings
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMatching {
    pub size: usize,
    pub edges: Vec<Edge>,
}

/// Maximum induced matching by exhaustive include/exclude search with bounds.
pub fn induced_matching_number(g: &Graph, limits: &Limits) -> Result<InducedMatching> {
    check_cap("edge set", g.size(), limits.matching_edges)?;
    let adj = g.masks();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (g.index[&u], g.index[&v]))
        .collect();
    let closed: Vec<u64> = adj.iter().enumerate().map(|(p, &m)| m | (1 << p)).collect();
    let mut search = MatchingSearch {
        edges: &edges,
        closed: &closed,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.run(0, 0);
    let mut witness: Vec<Edge> = search
        .best
        .iter()
        .map(|&e| {
            let (p, q) = edges[e];
            (g.ids[p], g.ids[q])
        })
        .collect();
    witness.sort_unstable();
    Ok(InducedMatching {
        size: witness.len(),
        edges: witness,
    })
}

struct MatchingSearch<'a> {
    edges: &'a [(usize, usize)],
    closed: &'a [u64],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MatchingSearch<'_> {
    fn run(&mut self, from: usize, blocked: u64) {
        let open: Vec<usize> = (from..self.edges.len())
            .filter(|&e| {
                let (p, q) = self.edges[e];
                blocked & ((1 << p) | (1 << q)) == 0
            })
            .collect();
        let free_vertices = open
            .iter()
            .fold(0u64, |m, &e| m | (1 << self.edges[e].0) | (1 << self.edges[e].1))
            .count_ones() as usize;
        let bound = self.current.len() + open.len().min(free_vertices / 2);
        if bound <= self.best.len() {
            return;
        }
        let Some(&e) = open.first() else {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        };
        let (p, q) = self.edges[e];
        self.current.push(e);
        self.run(e + 1, blocked | self.closed[p] | self.closed[q]);
        self.current.pop();
        self.run(e + 1, blocked);
    }
}

/// Whether `edges` is an induced matching of `g`.
pub fn is_induced_matching(g: &Graph, edges: &[Edge]) -> bool {
    if !edges.iter().all(|&(u, v)| g.has_edge(u, v)) {
        return false;
    }
    let endpoints: VertexSet = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    if endpoints.len() != 2 * edges.len() {
        return false;
    }
    match induced_subgraph(g, &endpoints) {
        Ok(h) => h.size() == edges.len(),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

/// An edge-preserving bijection from `g1` to `g2`, if one exists.
pub fn graphs_isomorphic(
    g1: &Graph,
    g2: &Graph,
    limits: &Limits,
) -> Result<Option<BTreeMap<VertexId, VertexId>>> {
    check_cap("vertex set", g1.order(), limits.isomorphism_vertices)?;
    check_cap("vertex set", g2.order(), limits.isomorphism_vertices)?;
    Ok(isomorphism_unchecked(g1, g2))
}

pub(crate) fn isomorphism_unchecked(g1: &Graph, g2: &Graph) -> Option<BTreeMap<VertexId, VertexId>> {
    if g1.order() != g2.order() || g1.size() != g2.size() {
        return None;
    }
    let deg = |g: &Graph| {
        let mut d: Vec<usize> = g.nbrs.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    };
    if deg(g1) != deg(g2) {
        return None;
    }
    let a1 = g1.masks();
    let a2 = g2.masks();
    // visit order: BFS from high-degree vertices so constraints bite early
    let n = g1.order();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let start = (0..n)
            .filter(|&p| placed & (1 << p) == 0)
            .max_by_key(|&p| (a1[p].count_ones(), std::cmp::Reverse(p)))
            .expect("unplaced vertex exists");
        placed |= 1 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            order.push(p);
            let mut next: Vec<usize> = bits(a1[p] & !placed).collect();
            next.sort_by_key(|&q| std::cmp::Reverse(a1[q].count_ones()));
            for q in next {
                placed |= 1 << q;
                queue.push_back(q);
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    if iso_extend(&a1, &a2, &order, 0, &mut map, 0) {
        Some(
            (0..n)
                .map(|p| (g1.ids[p], g2.ids[map[p]]))
                .collect(),
        )
    } else {
        None
    }
}

fn iso_extend(a1: &[u64], a2: &[u64], order: &[usize], depth: usize, map: &mut [usize], used: u64) -> bool {
    let Some(&p) = order.get(depth) else {
        return true;
    };
    for q in 0..a2.len() {
        if used & (1 << q) != 0 || a1[p].count_ones() != a2[q].count_ones() {
            continue;
        }
        let consistent = order[..depth].iter().all(|&r| {
            let adj1 = a1[p] & (1 << r) != 0;
            let adj2 = a2[q] & (1 << map[r]) != 0;
            adj1 == adj2
        });
        if consistent {
            map[p] = q;
            if iso_extend(a1, a2, order, depth + 1, map, used | (1 << q)) {
                return true;
            }
        }
    }
    map[p] = usize::MAX;
    false
}

// ---------------------------------------------------------------------------
// Forbidden patterns and induced cycles
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    C5,
    K33MinusE,
    /// An induced cycle with at least this many vertices.
    InducedCycleAtLeast(usize),
}

impl PatternKind {
    /// The fixed pattern graph on `0..k`; `None` for the cycle family.
    pub fn pattern_graph(&self) -> Option<Graph> {
        match self {
            PatternKind::C5 => Some(cycle_graph(5)),
            PatternKind::K33MinusE => {
                let edges: Vec<Edge> = (0..3)
                    .flat_map(|x| (3..6).map(move |y| (x, y)))
                    .filter(|&e| e != (2, 3))
                    .collect();
                Some(Graph::from_edges(6, &edges).expect("K33 minus e"))
            }
            PatternKind::InducedCycleAtLeast(_) => None,
        }
    }
}

/// The cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle_graph(n: usize) -> Graph {
    let edges: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle")
}

/// `image[i]` is the host vertex playing pattern vertex `i`; for induced
/// cycles consecutive entries (cyclically) are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEmbedding {
    pub pattern: PatternKind,
    pub image: Vec<VertexId>,
}

impl PatternEmbedding {
    /// Re-checks the embedding from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        let set: VertexSet = self.image.iter().copied().collect();
        if set.len() != self.image.len() || !set.iter().all(|&v| g.contains(v)) {
            return false;
        }
        let pattern = match self.pattern {
            PatternKind::InducedCycleAtLeast(len) => {
                if self.image.len() < len.max(3) {
                    return false;
                }
                cycle_graph(self.image.len())
            }
            other => other.pattern_graph().expect("fixed pattern"),
        };
        if pattern.order() != self.image.len() {
            return false;
        }
        let k = self.image.len();
        (0..k).all(|i| {
            (0..k).all(|j| i == j || pattern.has_edge(i, j) == g.has_edge(self.image[i], self.image[j]))
        })
    }
}

/// Finds an induced copy of `p`. Fixed patterns scan vertex subsets in
/// lexicographic order; the cycle family returns a shortest qualifying cycle.
pub fn find_induced_pattern(
    g: &Graph,
    p: PatternKind,
    limits: &Limits,
) -> Result<Option<PatternEmbedding>> {
    check_cap("vertex set", g.order(), limits.pattern_vertices)?;
    match p {
        PatternKind::InducedCycleAtLeast(len) => Ok(shortest_induced_cycle(g, len.max(3))
            .map(|image| PatternEmbedding { pattern: p, image })),
        fixed => {
            let pattern = fixed.pattern_graph().expect("fixed pattern");
            Ok(find_fixed_pattern(g, &pattern).map(|image| PatternEmbedding {
                pattern: fixed,
                image,
            }))
        }
    }
}

fn find_fixed_pattern(g: &Graph, pattern: &Graph) -> Option<Vec<VertexId>> {
    let k = pattern.order();
    let n = g.order();
    if k > n {
        return None;
    }
    let adj = g.masks();
    let target_edges = pattern.size() as u32;
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let mask = combo.iter().fold(0u64, |m, &p| m | (1 << p));
        let edges: u32 = combo.iter().map(|&p| (adj[p] & mask).count_ones()).sum::<u32>() / 2;
        if edges == target_edges {
            let sub = induced_subgraph(g, &g.ids_of_mask(mask)).expect("subset of the graph");
            if let Some(map) = isomorphism_unchecked(pattern, &sub) {
                return Some((0..k).map(|i| map[&i]).collect());
            }
        }
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] < n - k + i {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Shortest induced cycle with at least `min_len` vertices, or `None`.
///
/// DFS over chordless paths whose first vertex is the cycle's minimum.
fn shortest_induced_cycle(g: &Graph, min_len: usize) -> Option<Vec<VertexId>> {
    let adj = g.masks();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..g.order() {
        let mut path = vec![s];
        chordless_extend(&adj, s, &mut path, 1 << s, min_len, &mut best);
    }
    best.map(|c| c.into_iter().map(|p| g.ids[p]).collect())
}

fn chordless_extend(
    adj: &[u64],
    s: usize,
    path: &mut Vec<usize>,
    on_path: u64,
    min_len: usize,
    best: &mut Option<Vec<usize>>,
) {
    let last = *path.last().expect("non-empty path");
    // vertices strictly inside the path: adjacency to these makes a chord
    let inner = on_path & !(1 << s) & !(1 << last);
    if let Some(b) = best {
        if path.len() + 1 >= b.len() {
            return;
        }
    }
    let above_s = !((1u64 << s) | ((1u64 << s) - 1));
    for w in bits(adj[last] & !on_path & above_s) {
        if adj[w] & inner != 0 {
            continue;
        }
        let closes = path.len() >= 2 && adj[w] & (1 << s) != 0;
        path.push(w);
        if closes {
            if path.len() >= min_len && best.as_ref().map_or(true, |b| path.len() < b.len()) {
                *best = Some(path.clone());
            }
        } else {
            chordless_extend(adj, s, path, on_path | (1 << w), min_len, best);
        }
        path.pop();
    }
}

// ---------------------------------------------------------------------------
// Bipartite and chordal bipartite recognition
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Bipartiteness {
    /// Sides; the smallest vertex of each component lies in `left`.
    Bipartite { left: Vec<VertexId>, right: Vec<VertexId> },
    OddCycle { cycle: Vec<VertexId> },
}

pub fn bipartition(g: &Graph) -> Bipartiteness {
    let n = g.order();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for &q in &g.nbrs[p] {
                match color[q] {
                    None => {
                        color[q] = Some(!color[p].unwrap());
                        parent[q] = p;
                        depth[q] = depth[p] + 1;
                        queue.push_back(q);
                    }
                    Some(c) if c == color[p].unwrap() => {
                        // walk both ends up to their common ancestor
                        let (mut a, mut b) = (p, q);
                        let mut left = vec![a];
                        let mut right = vec![b];
                        while a != b {
                            if depth[a] >= depth[b] {
                                a = parent[a];
                                left.push(a);
                            } else {
                                b = parent[b];
                                right.push(b);
                            }
                        }
                        right.pop();
                        right.reverse();
                        left.extend(right);
                        return Bipartiteness::OddCycle {
                            cycle: left.into_iter().map(|p| g.ids[p]).collect(),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let (left, right): (Vec<usize>, Vec<usize>) = (0..n).partition(|&p| color[p] == Some(false));
    Bipartiteness::Bipartite {
        left: left.into_iter().map(|p| g.ids[p]).collect(),
        right: right.into_iter().map(|p| g.ids[p]).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ChordalBipartite {
    Yes { left: Vec<VertexId>, right: Vec<VertexId> },
    OddCycle { cycle: Vec<VertexId> },
    LongInducedCycle { embedding: PatternEmbedding },
}

impl ChordalBipartite {
    pub fn holds(&self) -> bool {
        matches!(self, ChordalBipartite::Yes { .. })
    }
}

/// Bipartite with no induced cycle of length at least six.
pub fn is_chordal_bipartite(g: &Graph, limits: &Limits) -> Result<ChordalBipartite> {
    check_cap("vertex set", g.order(), limits.pattern_vertices)?;
    match bipartition(g) {
        Bipartiteness::OddCycle { cycle } => Ok(ChordalBipartite::OddCycle { cycle }),
        Bipartiteness::Bipartite { left, right } => {
            match find_induced_pattern(g, PatternKind::InducedCycleAtLeast(6), limits)? {
                Some(embedding) => Ok(ChordalBipartite::LongInducedCycle { embedding }),
                None => Ok(ChordalBipartite::Yes { left, right }),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Vertex decomposability
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `G \ x`
    Deletion,
    /// `G \ N[x]`
    Link,
}

/// One shedding choice, addressed by the branch path from the root graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheddingStep {
    pub path: Vec<Branch>,
    pub vertex: VertexId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coord: Option<GridCoord>,
}

/// A derivation of vertex decomposability, in preorder.
///
/// Replay rule: at the node reached by `path`, a graph with edges must have a
/// step naming its shedding vertex `x`; both `G \ x` and `G \ N[x]` are then
/// replayed. When `x` is isolated the two branches coincide and only the
/// deletion branch is recorded. An edgeless node has no step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheddingSequence {
    pub steps: Vec<SheddingStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("node {path:?} is not well-covered")]
    NotWellCovered { path: Vec<Branch> },
    #[error("node {path:?} has edges but no shedding step")]
    MissingStep { path: Vec<Branch> },
    #[error("step at {path:?} names vertex {vertex}, which is not in that node")]
    ForeignVertex { path: Vec<Branch>, vertex: VertexId },
    #[error("step at {path:?} is never reached")]
    UnusedStep { path: Vec<Branch> },
    #[error("duplicate step at {path:?}")]
    DuplicateStep { path: Vec<Branch> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl SheddingSequence {
    /// Replays the derivation against `g` and the recursive definition.
    pub fn replay(&self, g: &Graph, limits: &Limits) -> std::result::Result<(), ReplayError> {
        check_cap("vertex set", g.order(), limits.mis_vertices)?;
        let mut by_path: HashMap<&[Branch], VertexId> = HashMap::new();
        for step in &self.steps {
            if by_path.insert(step.path.as_slice(), step.vertex).is_some() {
                return Err(ReplayError::DuplicateStep {
                    path: step.path.clone(),
                });
            }
        }
        let adj = g.masks();
        let mut reached = BTreeSet::new();
        let mut path = Vec::new();
        replay_node(g, &adj, full_mask(g.order()), &mut path, &by_path, &mut reached)?;
        match self.steps.iter().find(|s| !reached.contains(&s.path)) {
            Some(step) => Err(ReplayError::UnusedStep {
                path: step.path.clone(),
            }),
            None => Ok(()),
        }
    }
}

fn replay_node(
    g: &Graph,
    adj: &[u64],
    mask: u64,
    path: &mut Vec<Branch>,
    steps: &HashMap<&[Branch], VertexId>,
    reached: &mut BTreeSet<Vec<Branch>>,
) -> std::result::Result<(), ReplayError> {
    if !well_covered_mask(adj, mask) {
        return Err(ReplayError::NotWellCovered { path: path.clone() });
    }
    let step = steps.get(path.as_slice()).copied();
    let has_edges = bits(mask).any(|p| adj[p] & mask != 0);
    let Some(x) = step else {
        return if has_edges {
            Err(ReplayError::MissingStep { path: path.clone() })
        } else {
            Ok(())
        };
    };
    reached.insert(path.clone());
    let px = match g.position(x) {
        Ok(p) if mask & (1 << p) != 0 => p,
        _ => {
            return Err(ReplayError::ForeignVertex {
                path: path.clone(),
                vertex: x,
            })
        }
    };
    let deletion = mask & !(1 << px);
    let link = deletion & !adj[px];
    path.push(Branch::Deletion);
    replay_node(g, adj, deletion, path, steps, reached)?;
    path.pop();
    if link != deletion {
        path.push(Branch::Link);
        replay_node(g, adj, link, path, steps, reached)?;
        path.pop();
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdVerdict {
    pub decomposable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SheddingSequence>,
}

/// Memoized exhaustive recursion over all shedding candidates.
pub fn is_vertex_decomposable_bruteforce(g: &Graph, limits: &Limits) -> Result<VdVerdict> {
    check_cap("vertex set", g.order(), limits.vd_vertices)?;
    let adj = g.masks();
    let mut memo: HashMap<u64, Option<Option<usize>>> = HashMap::new();
    let root = full_mask(g.order());
    if vd_search(&adj, root, &mut memo).is_none() {
        return Ok(VdVerdict {
            decomposable: false,
            sequence: None,
        });
    }
    let mut steps = Vec::new();
    collect_steps(g, &adj, root, &mut Vec::new(), &memo, &mut steps);
    Ok(VdVerdict {
        decomposable: true,
        sequence: Some(SheddingSequence { steps }),
    })
}

/// `Some(None)`: decomposable and edgeless. `Some(Some(p))`: decomposable
/// with shedding vertex `p`. `None`: not decomposable.
fn vd_search(adj: &[u64], mask: u64, memo: &mut HashMap<u64, Option<Option<usize>>>) -> Option<Option<usize>> {
    if let Some(&hit) = memo.get(&mask) {
        return hit;
    }
    let verdict = if !well_covered_mask(adj, mask) {
        None
    } else if bits(mask).all(|p| adj[p] & mask == 0) {
        Some(None)
    } else {
        bits(mask)
            .find(|&p| {
                let deletion = mask & !(1 << p);
                let link = deletion & !adj[p];
                vd_search(adj, deletion, memo).is_some() && vd_search(adj, link, memo).is_some()
            })
            .map(Some)
    };
    memo.insert(mask, verdict);
    verdict
}

fn collect_steps(
    g: &Graph,
    adj: &[u64],
    mask: u64,
    path: &mut Vec<Branch>,
    memo: &HashMap<u64, Option<Option<usize>>>,
    out: &mut Vec<SheddingStep>,
) {
    let Some(Some(Some(p))) = memo.get(&mask).copied() else {
        return;
    };
    let vertex = g.id_at(p);
    out.push(SheddingStep {
        path: path.clone(),
        vertex,
        coord: g.label(vertex),
    });
    let deletion = mask & !(1 << p);
    let link = deletion & !adj[p];
    path.push(Branch::Deletion);
    collect_steps(g, adj, deletion, path, memo, out);
    path.pop();
    if link != deletion {
        path.push(Branch::Link);
        collect_steps(g, adj, link, path, memo, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(k: usize) -> Graph {
        let edges: Vec<Edge> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_unknown_endpoints() {
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(2, &[(0, 5)]), Err(GraphError::InvalidVertex(5)));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn induced_subgraph_of_cycle_is_path() {
        let c5 = cycle_graph(5);
        let h = induced_subgraph(&c5, &[0, 1, 2].into()).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        let e = induced_subgraph(&c5, &VertexSet::new()).unwrap();
        assert_eq!(e.order(), 0);
        assert_eq!(
            induced_subgraph(&c5, &[0, 9].into()),
            Err(GraphError::InvalidVertex(9))
        );
    }

    #[test]
    fn components_are_ordered_and_partition() {
        let g = Graph::from_edges(5, &[(3, 4), (0, 2)]).unwrap();
        let comps = connected_components(&g);
        let hosts: Vec<Vec<VertexId>> = comps.iter().map(|c| c.host_ids.clone()).collect();
        assert_eq!(hosts, vec![vec![0, 2], vec![1], vec![3, 4]]);
        assert_eq!(comps[0].graph.size(), 1);
        assert_eq!(connected_components(&cycle_graph(6)).len(), 1);
    }

    #[test]
    fn closed_neighborhoods() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(closed_neighborhood(&g, 2).unwrap(), [2].into());
        assert_eq!(closed_neighborhood(&star(4), 0).unwrap().len(), 5);
        assert_eq!(closed_neighborhood(&g, 7), Err(GraphError::InvalidVertex(7)));
    }

    #[test]
    fn mis_small_cases() {
        let l = Limits::default();
        let edgeless = Graph::from_edges(4, &[]).unwrap();
        assert_eq!(
            maximal_independent_sets(&edgeless, &l).unwrap(),
            vec![VertexSet::from([0, 1, 2, 3])]
        );
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(
            maximal_independent_sets(&edge, &l).unwrap(),
            vec![VertexSet::from([0]), VertexSet::from([1])]
        );
        let big = Graph::from_edges(25, &[]).unwrap();
        assert!(matches!(
            maximal_independent_sets(&big, &l),
            Err(GraphError::TooLarge { cap: 24, .. })
        ));
    }

    #[test]
    fn well_covered_examples() {
        let l = Limits::default();
        assert_eq!(
            is_well_covered(&cycle_graph(5), &l).unwrap(),
            WellCovered::Uniform { size: 2 }
        );
        match is_well_covered(&path_graph(3), &l).unwrap() {
            WellCovered::Mixed { smaller, larger } => {
                assert_eq!(smaller, VertexSet::from([1]));
                assert_eq!(larger, VertexSet::from([0, 2]));
            }
            other => panic!("expected mixed, got {other:?}"),
        }
    }

    #[test]
    fn induced_matching_examples() {
        let l = Limits::default();
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(induced_matching_number(&edge, &l).unwrap().size, 1);
        let c5 = cycle_graph(5);
        let im = induced_matching_number(&c5, &l).unwrap();
        assert_eq!(im.size, 1);
        assert!(is_induced_matching(&c5, &im.edges));
        // two disjoint edges joined by a middle edge: P4 has im 1, P5 has im 2
        assert_eq!(induced_matching_number(&path_graph(4), &l).unwrap().size, 1);
        assert_eq!(induced_matching_number(&path_graph(5), &l).unwrap().size, 2);
        assert_eq!(induced_matching_number(&Graph::empty(), &l).unwrap().size, 0);
    }

    #[test]
    fn pattern_search() {
        let l = Limits::default();
        let c5 = cycle_graph(5);
        let emb = find_induced_pattern(&c5, PatternKind::C5, &l).unwrap().unwrap();
        assert_eq!(emb.image.iter().copied().collect::<VertexSet>().len(), 5);
        assert!(emb.verify(&c5));
        assert!(find_induced_pattern(&cycle_graph(6), PatternKind::C5, &l).unwrap().is_none());
        let k33e = PatternKind::K33MinusE.pattern_graph().unwrap();
        let emb = find_induced_pattern(&k33e, PatternKind::K33MinusE, &l).unwrap().unwrap();
        assert!(emb.verify(&k33e));
    }

    #[test]
    fn shortest_long_cycle_is_found() {
        let l = Limits::default();
        // C8 with one chord splitting it into two C6... choose chord 0-5: C6 (0..5) and C4 (5,6,7,0)
        let mut edges: Vec<Edge> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.push((0, 5));
        let g = Graph::from_edges(8, &edges).unwrap();
        let emb = find_induced_pattern(&g, PatternKind::InducedCycleAtLeast(6), &l)
            .unwrap()
            .unwrap();
        assert_eq!(emb.image.len(), 6);
        assert!(emb.verify(&g));
        assert!(
            find_induced_pattern(&cycle_graph(4), PatternKind::InducedCycleAtLeast(6), &l)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn chordal_bipartite_examples() {
        let l = Limits::default();
        match is_chordal_bipartite(&cycle_graph(6), &l).unwrap() {
            ChordalBipartite::LongInducedCycle { embedding } => {
                assert_eq!(embedding.image.len(), 6);
                assert!(embedding.verify(&cycle_graph(6)));
            }
            other => panic!("{other:?}"),
        }
        assert!(is_chordal_bipartite(&cycle_graph(4), &l).unwrap().holds());
        match is_chordal_bipartite(&cycle_graph(5), &l).unwrap() {
            ChordalBipartite::OddCycle { cycle } => {
                assert_eq!(cycle.len(), 5);
                let c5 = cycle_graph(5);
                for i in 0..5 {
                    assert!(c5.has_edge(cycle[i], cycle[(i + 1) % 5]));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isomorphism_examples() {
        let l = Limits::default();
        let c5 = cycle_graph(5);
        let relabeled = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        let map = graphs_isomorphic(&c5, &relabeled, &l).unwrap().unwrap();
        for (u, v) in c5.edges() {
            assert!(relabeled.has_edge(map[&u], map[&v]));
        }
        assert!(graphs_isomorphic(&cycle_graph(4), &path_graph(4), &l).unwrap().is_none());
    }

    #[test]
    fn vd_bruteforce_examples() {
        let l = Limits::default();
        let edgeless = Graph::from_edges(3, &[]).unwrap();
        let v = is_vertex_decomposable_bruteforce(&edgeless, &l).unwrap();
        assert!(v.decomposable);
        assert!(v.sequence.unwrap().steps.is_empty());
        // C5 \ x is P4 and C5 \ N[x] is an edge, both decomposable
        let c5 = cycle_graph(5);
        let v = is_vertex_decomposable_bruteforce(&c5, &l).unwrap();
        assert!(v.decomposable);
        v.sequence.unwrap().replay(&c5, &l).unwrap();
        // well-covered, but every deletion is P3
        assert!(!is_vertex_decomposable_bruteforce(&cycle_graph(4), &l).unwrap().decomposable);
        // not well-covered at the root
        assert!(!is_vertex_decomposable_bruteforce(&path_graph(3), &l).unwrap().decomposable);
        let p2 = path_graph(2);
        let v = is_vertex_decomposable_bruteforce(&p2, &l).unwrap();
        v.sequence.unwrap().replay(&p2, &l).unwrap();
    }

    #[test]
    fn replay_rejects_bad_certificates() {
        let l = Limits::default();
        let p4 = path_graph(4);
        let missing = SheddingSequence::default();
        assert!(matches!(missing.replay(&p4, &l), Err(ReplayError::MissingStep { .. })));
        let foreign = SheddingSequence {
            steps: vec![SheddingStep {
                path: vec![],
                vertex: 9,
                coord: None,
            }],
        };
        assert!(matches!(foreign.replay(&p4, &l), Err(ReplayError::ForeignVertex { .. })));
        let c5 = cycle_graph(5);
        let v = SheddingSequence {
            steps: vec![SheddingStep {
                path: vec![],
                vertex: 0,
                coord: None,
            }],
        };
        assert!(v.replay(&c5, &l).is_err());
    }
}
