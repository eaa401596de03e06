//! Brute-force oracle for graded Betti numbers and Castelnuovo–Mumford
//! regularity of edge ideals, via Hochster's formula
//!
//! ```text
//! beta_{i,j}(R/I(G)) = sum over |W| = j of rank H̃_{j-i-1}(Ind(G_W); Q)
//! ```
//!
//! The outer loop visits every vertex subset `W` in Gray-code order. Two
//! sound shortcuts keep it tractable: a subset whose induced graph has an
//! isolated vertex is skipped (its independence complex is a cone, hence
//! acyclic), and the remaining subsets are split into connected pieces whose
//! independence complexes join, so reduced ranks combine by convolution and
//! each connected piece is computed once.

mod exact_rank;
mod homology;

use std::collections::{BTreeMap, HashMap};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{self, bits, full_mask, Graph, GraphError, Limits, VertexSet};

pub use exact_rank::{exact_rank, SparseRow};
pub use homology::{reduced_homology_ranks, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochsterError {
    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl HochsterError {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            HochsterError::TooLarge { .. } | HochsterError::Graph(GraphError::TooLarge { .. })
        )
    }
}

pub type Result<T> = std::result::Result<T, HochsterError>;

fn check_vertices(g: &Graph, limits: &Limits) -> Result<()> {
    let cap = limits.hochster_vertices.min(30);
    if g.order() > cap {
        return Err(HochsterError::TooLarge {
            what: "vertex set",
            size: g.order(),
            cap,
        });
    }
    Ok(())
}

/// The complex of independent sets of `g`; its facets are the maximal
/// independent sets.
pub fn independence_complex(g: &Graph, limits: &Limits) -> Result<SimplicialComplex> {
    check_vertices(g, limits)?;
    let facets = graph::maximal_independent_sets(g, limits)?;
    Ok(SimplicialComplex {
        ground: g.vertices().to_vec(),
        facets,
    })
}

/// Sparse table of graded Betti numbers of `R/I(G)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Non-zero entries as `(i, j, beta)`, sorted by `(j, i)`.
    pub fn entries(&self) -> Vec<(usize, usize, u64)> {
        let mut out: Vec<_> = self.entries.iter().map(|(&(i, j), &b)| (i, j, b)).collect();
        out.sort_by_key(|&(i, j, _)| (j, i));
        out
    }

    /// `max { j - i : beta_{i,j} != 0 }`.
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// Projective dimension.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    fn add(&mut self, i: usize, j: usize, beta: u64) {
        *self.entries.entry((i, j)).or_default() += beta;
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            i: usize,
            j: usize,
            beta: u64,
        }
        let entries = self.entries();
        let mut seq = serializer.serialize_seq(Some(entries.len()))?;
        for (i, j, beta) in entries {
            seq.serialize_element(&Record { i, j, beta })?;
        }
        seq.end()
    }
}

/// A vertex subset `W` and homological degree `t` with `rank H̃_t(Ind(G_W)) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub vertices: VertexSet,
    pub degree: i64,
    pub rank: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityResult {
    pub reg: usize,
    /// Absent exactly when the graph has no edges.
    pub witness: Option<RegularityWitness>,
}

impl RegularityResult {
    /// Recomputes the witness homology directly from the facet description,
    /// bypassing the oracle's shortcuts.
    pub fn verify(&self, g: &Graph, limits: &Limits) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(self.reg == 0 && g.is_edgeless());
        };
        if w.degree + 1 != self.reg as i64 {
            return Ok(false);
        }
        let sub = graph::induced_subgraph(g, &w.vertices)?;
        let complex = independence_complex(&sub, limits)?;
        let ranks = reduced_homology_ranks(&complex, limits.homology_faces)?;
        let idx = (w.degree + 1) as usize;
        Ok(ranks.get(idx).copied().unwrap_or(0) == w.rank && w.rank > 0)
    }
}

struct Engine {
    adj: Vec<u64>,
    memo: HashMap<u64, Vec<u64>>,
    face_cap: usize,
}

impl Engine {
    fn new(g: &Graph, limits: &Limits) -> Self {
        Engine {
            adj: g.masks(),
            memo: HashMap::new(),
            face_cap: limits.homology_faces,
        }
    }

    /// Reduced ranks of `Ind(G_W)` (index `t + 1`), or `None` when all vanish
    /// because `G_W` has an isolated vertex.
    fn ranks(&mut self, w: u64) -> Result<Option<Vec<u64>>> {
        if bits(w).any(|p| self.adj[p] & w == 0) {
            return Ok(None);
        }
        let mut joined = vec![1u64];
        let mut rest = w;
        while rest != 0 {
            let piece = self.component(rest);
            rest &= !piece;
            let ranks = self.connected_ranks(piece)?;
            if ranks.iter().all(|&r| r == 0) {
                return Ok(None);
            }
            // Ind of a disjoint union is the join: degrees add, plus one
            let mut next = vec![0u64; joined.len() + ranks.len()];
            for (a, &x) in joined.iter().enumerate() {
                for (b, &y) in ranks.iter().enumerate() {
                    next[a + b] += x * y;
                }
            }
            joined = next;
        }
        while joined.last() == Some(&0) {
            joined.pop();
        }
        Ok(Some(joined))
    }

    fn component(&self, within: u64) -> u64 {
        let mut comp = within & within.wrapping_neg();
        loop {
            let grown = bits(comp).fold(comp, |m, p| m | (self.adj[p] & within));
            if grown == comp {
                return comp;
            }
            comp = grown;
        }
    }

    fn connected_ranks(&mut self, piece: u64) -> Result<Vec<u64>> {
        if let Some(r) = self.memo.get(&piece) {
            return Ok(r.clone());
        }
        let faces = independent_faces(&self.adj, piece, self.face_cap)?;
        let ranks = homology::ranks_from_faces(&faces)?;
        self.memo.insert(piece, ranks.clone());
        Ok(ranks)
    }
}

/// Independent sets of `G_W` grouped by size, as sorted masks.
fn independent_faces(adj: &[u64], within: u64, cap: usize) -> Result<Vec<Vec<u64>>> {
    let mut by_size: Vec<Vec<u64>> = Vec::new();
    let mut count = 0usize;
    let mut stack = vec![(0u64, within)];
    while let Some((face, candidates)) = stack.pop() {
        count += 1;
        if count > cap {
            return Err(HochsterError::TooLarge {
                what: "face count",
                size: count,
                cap,
            });
        }
        let k = face.count_ones() as usize;
        if by_size.len() <= k {
            by_size.resize(k + 1, Vec::new());
        }
        by_size[k].push(face);
        for v in bits(candidates) {
            let above = !((1u64 << v) | ((1u64 << v) - 1));
            stack.push((face | (1 << v), candidates & !adj[v] & above));
        }
    }
    for level in &mut by_size {
        level.sort_unstable();
    }
    Ok(by_size)
}

/// Visits every non-empty `W` (Gray-code order) whose contribution is non-zero.
fn for_each_contribution<F>(g: &Graph, limits: &Limits, mut visit: F) -> Result<()>
where
    F: FnMut(u64, &[u64]),
{
    check_vertices(g, limits)?;
    let n = g.order();
    let mut engine = Engine::new(g, limits);
    for i in 1..=full_mask(n) {
        let w = i ^ (i >> 1);
        if let Some(ranks) = engine.ranks(w)? {
            visit(w, &ranks);
        }
    }
    Ok(())
}

/// Graded Betti numbers of `R/I(G)` by Hochster's formula.
pub fn graded_betti(g: &Graph, limits: &Limits) -> Result<BettiTable> {
    let mut table = BettiTable::default();
    table.add(0, 0, 1);
    for_each_contribution(g, limits, |w, ranks| {
        let j = w.count_ones() as usize;
        for (idx, &r) in ranks.iter().enumerate() {
            if r > 0 {
                // t = idx - 1 and i = j - t - 1
                table.add(j - idx, j, r);
            }
        }
    })?;
    Ok(table)
}

/// `reg(R/I(G)) = max { t + 1 : rank H̃_t(Ind(G_W)) > 0 }`, with a witness.
pub fn oracle_reg(g: &Graph, limits: &Limits) -> Result<RegularityResult> {
    let mut best: Option<(usize, u64, u64)> = None;
    for_each_contribution(g, limits, |w, ranks| {
        if let Some((idx, &r)) = ranks.iter().enumerate().rev().find(|(_, &r)| r > 0) {
            if best.map_or(true, |(b, _, _)| idx > b) {
                best = Some((idx, w, r));
            }
        }
    })?;
    Ok(match best {
        None => RegularityResult {
            reg: 0,
            witness: None,
        },
        Some((idx, w, rank)) => RegularityResult {
            reg: idx,
            witness: Some(RegularityWitness {
                vertices: g.ids_of_mask(w),
                degree: idx as i64 - 1,
                rank,
            }),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, Edge};

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn independence_complex_examples() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(
            independence_complex(&edge, &l()).unwrap().facets,
            vec![VertexSet::from([0]), VertexSet::from([1])]
        );
        let c5 = independence_complex(&cycle_graph(5), &l()).unwrap();
        let expected: Vec<VertexSet> = vec![
            [0, 2].into(),
            [0, 3].into(),
            [1, 3].into(),
            [1, 4].into(),
            [2, 4].into(),
        ];
        assert_eq!(c5.facets, expected);
    }

    #[test]
    fn betti_of_single_edge_and_path() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(graded_betti(&edge, &l()).unwrap().entries(), vec![(0, 0, 1), (1, 2, 1)]);
        // (xy, yz): two quadrics with one linear syzygy
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            graded_betti(&p3, &l()).unwrap().entries(),
            vec![(0, 0, 1), (1, 2, 2), (2, 3, 1)]
        );
    }

    #[test]
    fn betti_of_c4() {
        // Ind(C4) is two disjoint edges (S^0 up to homotopy), so H̃_0 has rank 1 at W = V
        let t = graded_betti(&cycle_graph(4), &l()).unwrap();
        assert_eq!(t.get(1, 2), 4);
        assert_eq!(t.get(2, 3), 4);
        assert_eq!(t.get(3, 4), 1);
        assert_eq!(t.regularity(), 1);
    }

    #[test]
    fn regularity_examples() {
        let edgeless = Graph::from_edges(4, &[]).unwrap();
        let r = oracle_reg(&edgeless, &l()).unwrap();
        assert_eq!(r, RegularityResult { reg: 0, witness: None });
        assert!(r.verify(&edgeless, &l()).unwrap());

        let c5 = cycle_graph(5);
        let r = oracle_reg(&c5, &l()).unwrap();
        assert_eq!(r.reg, 2);
        let w = r.witness.clone().unwrap();
        assert_eq!(w.vertices, (0..5).collect());
        assert_eq!(w.degree, 1);
        assert!(r.verify(&c5, &l()).unwrap());

        assert_eq!(oracle_reg(&Graph::empty(), &l()).unwrap().reg, 0);
    }

    #[test]
    fn vertex_cap() {
        let g = Graph::from_edges(17, &[]).unwrap();
        assert!(matches!(oracle_reg(&g, &l()), Err(HochsterError::TooLarge { cap: 16, .. })));
    }

    /// Shortcut-free Hochster sum: every subset, full facet-down homology.
    fn naive_betti(g: &Graph) -> BettiTable {
        let mut t = BettiTable::default();
        let n = g.order();
        for w in 0..(1u64 << n) {
            let set = g.ids_of_mask(w);
            let sub = graph::induced_subgraph(g, &set).unwrap();
            let c = independence_complex(&sub, &l()).unwrap();
            let ranks = reduced_homology_ranks(&c, 1 << 16).unwrap();
            let j = set.len();
            for (idx, &r) in ranks.iter().enumerate() {
                if r > 0 {
                    t.add(j - idx, j, r);
                }
            }
        }
        t
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(40))]
        #[test]
        fn shortcuts_agree_with_naive_sum(
            n in 1usize..8,
            raw in proptest::collection::vec((0usize..8, 0usize..8), 0..14)
        ) {
            let edges: Vec<Edge> = raw.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            proptest::prop_assert_eq!(graded_betti(&g, &l()).unwrap(), naive_betti(&g));
        }
    }
}
