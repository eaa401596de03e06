//! Seeded random instances for property checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::downleft::DownLeftSpec;
use crate::graph::{find_induced_pattern, is_chordal_bipartite, Graph, GraphError, Limits, PatternKind, VertexId};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Non-decreasing staircase starting at `start`: each step stays put with
/// probability `1 - p_step`, else climbs by 1 or 2.
fn staircase(rng: &mut SampleRng, len: usize, start: usize, p_step: f64) -> Vec<usize> {
    let mut v = Vec::with_capacity(len);
    let mut cur = start;
    for _ in 0..len {
        v.push(cur);
        if rng.gen_bool(p_step) {
            cur += rng.gen_range(1..=2);
        }
    }
    v
}

/// A valid spec with `m <= max_m`, `n <= max_n` and at most `max_vertices`
/// surviving vertices. `a` grows down from the top row and `b` shrinks up
/// from the bottom row in random staircases; some samples stack two such
/// blocks diagonally so that they normalize into several parts.
pub fn random_spec(rng: &mut SampleRng, max_m: usize, max_n: usize, max_vertices: usize) -> DownLeftSpec {
    loop {
        let spec = if max_m >= 4 && max_n >= 4 && rng.gen_bool(0.3) {
            let (m1, n1) = (rng.gen_range(2..=max_m - 2), rng.gen_range(2..=max_n - 2));
            let upper = random_block(rng, m1, n1);
            let lower = random_block(rng, max_m - m1, max_n - n1);
            upper.and_then(|u| lower.and_then(|l| stack(&u, &l)))
        } else {
            random_block(rng, max_m, max_n)
        };
        if let Some(spec) = spec.filter(|s| s.vertex_count() <= max_vertices) {
            return spec;
        }
    }
}

fn random_block(rng: &mut SampleRng, max_m: usize, max_n: usize) -> Option<DownLeftSpec> {
    // single rows or columns are edgeless, so keep them rare
    let dim = |rng: &mut SampleRng, max: usize| if max < 2 || rng.gen_bool(0.1) { 1 } else { rng.gen_range(2..=max) };
    let m = dim(rng, max_m);
    let n = dim(rng, max_n);
    let p_step = [0.1, 0.25, 0.5][rng.gen_range(0..3)];
    let a = staircase(rng, m, 0, p_step);
    let drop = staircase(rng, m, 0, p_step);
    let b: Vec<usize> = drop.iter().rev().map(|&d| (n + 1).saturating_sub(d)).collect();
    DownLeftSpec::new(m, n, a, b).ok()
}

/// `upper` in the top-left corner and `lower` below and to its right.
fn stack(upper: &DownLeftSpec, lower: &DownLeftSpec) -> Option<DownLeftSpec> {
    let shift = upper.n();
    let a = upper.a().iter().copied().chain(lower.a().iter().map(|&x| x + shift)).collect();
    let b = upper.b().iter().copied().chain(lower.b().iter().map(|&x| x + shift)).collect();
    DownLeftSpec::new(upper.m() + lower.m(), shift + lower.n(), a, b).ok()
}

/// Erdős–Rényi graph on `0..n` with edge probability `p`.
pub fn random_graph(rng: &mut SampleRng, n: usize, p: f64) -> Graph {
    let edges: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).expect("simple graph")
}

/// A bipartite graph with sides `0..left` and `left..left + right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSample {
    pub graph: Graph,
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

/// Grows a chordal bipartite graph from one edge: each new vertex is joined
/// to a non-empty set of opposite vertices whose neighborhoods form a chain
/// under inclusion, so no induced cycle of length six or more can pass
/// through it. The result is re-checked and resampled if the check fails.
pub fn random_chordal_bipartite(
    rng: &mut SampleRng,
    left: usize,
    right: usize,
    limits: &Limits,
) -> Result<BipartiteSample, GraphError> {
    assert!(left >= 1 && right >= 1);
    loop {
        let sample = grow_chordal_bipartite(rng, left, right);
        if is_chordal_bipartite(&sample.graph, limits)?.holds() {
            return Ok(sample);
        }
    }
}

fn grow_chordal_bipartite(rng: &mut SampleRng, left: usize, right: usize) -> BipartiteSample {
    // nbrs[side][k]: neighbors of vertex k of that side, as indices into the other side
    let mut nbrs: [Vec<BTreeSet<usize>>; 2] = [vec![BTreeSet::from([0])], vec![BTreeSet::from([0])]];
    let target = [left, right];
    while nbrs[0].len() < left || nbrs[1].len() < right {
        let open: Vec<usize> = (0..2).filter(|&s| nbrs[s].len() < target[s]).collect();
        let side = *open.choose(rng).expect("some side is open");
        let other = 1 - side;
        let mut candidates: Vec<usize> = (0..nbrs[other].len()).collect();
        candidates.shuffle(rng);
        let mut chosen: Vec<usize> = Vec::new();
        for &u in &candidates {
            let comparable = chosen.iter().all(|&w| {
                let (x, y) = (&nbrs[other][u], &nbrs[other][w]);
                x.is_subset(y) || y.is_subset(x)
            });
            if comparable && (chosen.is_empty() || rng.gen_bool(0.5)) {
                chosen.push(u);
            }
        }
        let v = nbrs[side].len();
        for &u in &chosen {
            nbrs[other][u].insert(v);
        }
        nbrs[side].push(chosen.into_iter().collect());
    }
    let edges: Vec<(VertexId, VertexId)> = nbrs[0]
        .iter()
        .enumerate()
        .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, left + y)))
        .collect();
    BipartiteSample {
        graph: Graph::from_edges(left + right, &edges).expect("bipartite edges"),
        left: (0..left).collect(),
        right: (left..left + right).collect(),
    }
}

/// A chordal bipartite, (K3,3 minus e)-free graph with at most `max_edges`
/// edges, by rejection.
pub fn random_k33e_free_chordal_bipartite(
    rng: &mut SampleRng,
    max_left: usize,
    max_right: usize,
    max_edges: usize,
    limits: &Limits,
) -> Result<BipartiteSample, GraphError> {
    loop {
        let left = rng.gen_range(1..=max_left);
        let right = rng.gen_range(1..=max_right);
        let s = random_chordal_bipartite(rng, left, right, limits)?;
        if s.graph.size() <= max_edges && find_induced_pattern(&s.graph, PatternKind::K33MinusE, limits)?.is_none() {
            return Ok(s);
        }
    }
}
