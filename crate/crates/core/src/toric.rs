//! Regularity of toric ideals of chordal bipartite, (K3,3 minus e)-free
//! graphs: biadjacency matrix, doubly reverse-lexicographic ordering, the
//! H-graph on its 1-entries, and the decomposition of H into copies of
//! `G(m, n)°`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::downleft::{build_downleft, strip_isolated, DownLeftSpec};
use crate::graph::{
    self, find_induced_pattern, is_chordal_bipartite, ChordalBipartite, Edge, Graph, GraphError, GridCoord, Limits,
    PatternEmbedding, PatternKind, VertexId, VertexSet,
};
use crate::hochster::{self, HochsterError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("edge {0:?} lies inside one side of the bipartition")]
    NotBipartite(Edge),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("graph is not chordal bipartite")]
    NotChordalBipartite(ChordalBipartite),
    #[error("graph contains an induced K3,3 minus an edge")]
    NotK33eFree(PatternEmbedding),
    #[error("no row/column order removes every [[1,1],[1,0]] submatrix (found at rows {rows:?}, columns {cols:?})")]
    OrderingFailed { rows: (usize, usize), cols: (usize, usize) },
    #[error("component {vertices:?} of H is not isomorphic to any G(m, n) with isolated vertices removed")]
    NotDecomposable { vertices: Vec<VertexId> },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hochster(#[from] HochsterError),
}

pub type Result<T> = std::result::Result<T, ToricError>;

/// A 0/1 matrix whose rows and columns remember which original row and column
/// they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<bool>>,
    /// `row_perm[p]` is the original index of current row `p` (0-based).
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

impl BinaryMatrix {
    pub fn new(entries: Vec<Vec<bool>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(ToricError::InvalidMatrix("matrix must have at least one row and one column".into()));
        }
        if let Some(r) = entries.iter().position(|r| r.len() != cols) {
            return Err(ToricError::InvalidMatrix(format!(
                "row {} has {} entries, expected {cols}",
                r + 1,
                entries[r].len()
            )));
        }
        Ok(BinaryMatrix {
            rows,
            cols,
            entries,
            row_perm: (0..rows).collect(),
            col_perm: (0..cols).collect(),
        })
    }

    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(ToricError::InvalidMatrix(format!("entry {other:?} is not 0 or 1"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryMatrix::new(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 0-based position.
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries[r][c]
    }

    pub fn entries(&self) -> &[Vec<bool>] {
        &self.entries
    }

    pub fn row_perm(&self) -> &[usize] {
        &self.row_perm
    }

    pub fn col_perm(&self) -> &[usize] {
        &self.col_perm
    }

    pub fn row(&self, r: usize) -> Vec<bool> {
        self.entries[r].clone()
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        self.entries.iter().map(|r| r[c]).collect()
    }

    /// Rows as strings of `0`/`1`.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| if x { '1' } else { '0' }).collect())
            .collect()
    }

    /// Reorders rows so that new row `p` is current row `order[p]`.
    fn permute_rows(&self, order: &[usize]) -> Self {
        BinaryMatrix {
            entries: order.iter().map(|&p| self.entries[p].clone()).collect(),
            row_perm: order.iter().map(|&p| self.row_perm[p]).collect(),
            ..self.clone()
        }
    }

    fn permute_cols(&self, order: &[usize]) -> Self {
        BinaryMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| order.iter().map(|&c| r[c]).collect())
                .collect(),
            col_perm: order.iter().map(|&c| self.col_perm[c]).collect(),
            ..self.clone()
        }
    }

    /// Applies the recorded permutations to `original`.
    pub fn reproduce_from(&self, original: &BinaryMatrix) -> Vec<Vec<bool>> {
        self.row_perm
            .iter()
            .map(|&r| self.col_perm.iter().map(|&c| original.entries[r][c]).collect())
            .collect()
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.entries {
            let line: Vec<&str> = r.iter().map(|&x| if x { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Matrix with `M[i][j] = 1` iff `{left[i], right[j]}` is an edge.
pub fn biadjacency(g: &Graph, left: &[VertexId], right: &[VertexId]) -> Result<BinaryMatrix> {
    let l: VertexSet = left.iter().copied().collect();
    let r: VertexSet = right.iter().copied().collect();
    if l.len() != left.len() || r.len() != right.len() {
        return Err(ToricError::InvalidBipartition("a side lists a vertex twice".into()));
    }
    if let Some(v) = l.intersection(&r).next() {
        return Err(ToricError::InvalidBipartition(format!("vertex {v} is on both sides")));
    }
    if let Some(v) = g.vertices().iter().find(|v| !l.contains(v) && !r.contains(v)) {
        return Err(ToricError::InvalidBipartition(format!("vertex {v} is on neither side")));
    }
    if let Some(v) = l.union(&r).find(|v| !g.contains(**v)) {
        return Err(GraphError::InvalidVertex(*v).into());
    }
    if let Some(e) = g
        .edges()
        .into_iter()
        .find(|&(u, v)| l.contains(&u) == l.contains(&v))
    {
        return Err(ToricError::NotBipartite(e));
    }
    BinaryMatrix::new(
        left.iter()
            .map(|&x| right.iter().map(|&y| g.has_edge(x, y)).collect())
            .collect(),
    )
}

/// Bipartite graph on `x_1..x_m` (ids `0..m`) and `y_1..y_n` (ids `m..m+n`).
pub fn graph_of_matrix(mat: &BinaryMatrix) -> (Graph, Vec<VertexId>, Vec<VertexId>) {
    let (m, n) = (mat.rows, mat.cols);
    let edges: Vec<Edge> = (0..m)
        .flat_map(|i| (0..n).filter(move |&j| mat.entries[i][j]).map(move |j| (i, m + j)))
        .collect();
    let g = Graph::from_edges(m + n, &edges).expect("bipartite edges");
    (g, (0..m).collect(), (m..m + n).collect())
}

/// Reverse-lexicographic comparison: the last coordinate where `v` and `w`
/// differ decides, and the vector with the 0 there is the larger one.
pub fn revlex_cmp(v: &[bool], w: &[bool]) -> Ordering {
    debug_assert_eq!(v.len(), w.len());
    v.iter()
        .zip(w)
        .rev()
        .find(|(x, y)| x != y)
        .map_or(Ordering::Equal, |(&x, _)| if x { Ordering::Less } else { Ordering::Greater })
}

fn sorted_order(vectors: &[Vec<bool>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&p, &q| revlex_cmp(&vectors[q], &vectors[p]));
    order
}

fn rows_sorted(mat: &BinaryMatrix) -> BinaryMatrix {
    mat.permute_rows(&sorted_order(&mat.entries))
}

fn cols_sorted(mat: &BinaryMatrix) -> BinaryMatrix {
    let columns: Vec<Vec<bool>> = (0..mat.cols).map(|c| mat.column(c)).collect();
    mat.permute_cols(&sorted_order(&columns))
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// Largest matrix side for which the exhaustive fallback runs.
pub const FALLBACK_MAX_SIDE: usize = 8;

/// Permutes rows and columns so that both are non-increasing in
/// reverse-lexicographic order, by alternating stable sorts until neither
/// moves anything. If the result still has a Γ submatrix, every row order is
/// tried (on matrices up to 8 x 8) with columns sorted after each.
pub fn doubly_revlex_sort(mat: &BinaryMatrix) -> Result<BinaryMatrix> {
    let mut cur = mat.clone();
    for _ in 0..(mat.rows * mat.cols).max(1) {
        let by_rows = sorted_order(&cur.entries);
        if !is_identity(&by_rows) {
            cur = cur.permute_rows(&by_rows);
        }
        let next = cols_sorted(&cur);
        let settled = is_identity(&by_rows) && next.col_perm == cur.col_perm;
        cur = next;
        if settled {
            break;
        }
    }
    let Some((rows, cols)) = gamma_witness(&cur) else {
        return Ok(cur);
    };
    if mat.rows <= FALLBACK_MAX_SIDE && mat.cols <= FALLBACK_MAX_SIDE {
        if let Some(found) = exhaustive_order(&rows_sorted(mat)) {
            return Ok(found);
        }
    }
    Err(ToricError::OrderingFailed { rows, cols })
}

fn exhaustive_order(mat: &BinaryMatrix) -> Option<BinaryMatrix> {
    let mut order: Vec<usize> = (0..mat.rows).collect();
    loop {
        let candidate = cols_sorted(&mat.permute_rows(&order));
        if gamma_witness(&candidate).is_none() {
            return Some(candidate);
        }
        if !next_permutation(&mut order) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// 1-based `((a, c), (b, d))` of a submatrix `[[1, 1], [1, 0]]` on rows
/// `a < c` and columns `b < d`.
fn gamma_witness(mat: &BinaryMatrix) -> Option<((usize, usize), (usize, usize))> {
    let m = &mat.entries;
    for a in 0..mat.rows {
        for c in a + 1..mat.rows {
            for b in 0..mat.cols {
                if !(m[a][b] && m[c][b]) {
                    continue;
                }
                for d in b + 1..mat.cols {
                    if m[a][d] && !m[c][d] {
                        return Some(((a + 1, c + 1), (b + 1, d + 1)));
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCheck {
    pub gamma_free: bool,
    /// 1-based rows `(a, c)` and columns `(b, d)` of an offending submatrix.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<((usize, usize), (usize, usize))>,
}

pub fn gamma_free_check(mat: &BinaryMatrix) -> GammaCheck {
    let witness = gamma_witness(mat);
    GammaCheck {
        gamma_free: witness.is_none(),
        witness,
    }
}

/// The graph on the 1-entries of a matrix, labeled by their 1-based matrix
/// position, with `(a, d) ~ (c, b)` whenever `a < c`, `b < d` and the four
/// corners are 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGraph {
    pub graph: Graph,
}

impl HGraph {
    pub fn coord(&self, v: VertexId) -> GridCoord {
        self.graph.label(v).expect("every H vertex is labeled")
    }

    /// Edges as `(top-right, bottom-left)` coordinate pairs, sorted by ids.
    pub fn coord_edges(&self) -> Vec<(GridCoord, GridCoord)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (p, q) = (self.coord(u), self.coord(v));
                if p.row < q.row {
                    (p, q)
                } else {
                    (q, p)
                }
            })
            .collect()
    }
}

pub fn build_h(mat: &BinaryMatrix) -> HGraph {
    let m = &mat.entries;
    let cells: Vec<GridCoord> = (0..mat.rows)
        .flat_map(|i| (0..mat.cols).filter(move |&j| m[i][j]).map(move |j| GridCoord::new(i as u32 + 1, j as u32 + 1)))
        .collect();
    let id: BTreeMap<GridCoord, VertexId> = cells.iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let mut edges = Vec::new();
    for a in 0..mat.rows {
        for c in a + 1..mat.rows {
            for b in 0..mat.cols {
                for d in b + 1..mat.cols {
                    if m[a][b] && m[a][d] && m[c][b] && m[c][d] {
                        let at = |i: usize, j: usize| id[&GridCoord::new(i as u32 + 1, j as u32 + 1)];
                        edges.push((at(a, d), at(c, b)));
                    }
                }
            }
        }
    }
    let graph = Graph::from_edges(cells.len(), &edges)
        .and_then(|g| g.with_labels(cells.iter().copied().enumerate()))
        .expect("H is simple");
    HGraph { graph }
}

/// One non-trivial component of H with an isomorphism onto `G(m, n)°`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionPart {
    pub m: usize,
    pub n: usize,
    /// H vertex ids, ascending.
    pub vertices: Vec<VertexId>,
    /// H vertex id to its grid cell in `G(m, n)`.
    pub isomorphism: BTreeMap<VertexId, GridCoord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCert {
    pub parts: Vec<DecompositionPart>,
    pub isolated: Vec<VertexId>,
}

impl DecompositionCert {
    /// `sum min(m_i - 1, n_i - 1)`.
    pub fn regularity(&self) -> usize {
        self.parts.iter().map(|p| p.m.min(p.n) - 1).sum()
    }

    /// Checks the partition and every isomorphism edge-exactly.
    pub fn verify(&self, h: &HGraph) -> bool {
        let g = &h.graph;
        let mut seen = BTreeSet::new();
        let all = self.parts.iter().flat_map(|p| p.vertices.iter()).chain(&self.isolated);
        if !all.into_iter().all(|&v| seen.insert(v)) || seen.len() != g.order() || !seen.iter().all(|&v| g.contains(v)) {
            return false;
        }
        if !self.isolated.iter().all(|&v| g.degree(v) == Ok(0)) {
            return false;
        }
        self.parts.iter().all(|p| {
            if p.m < 2 || p.n < 2 {
                return false;
            }
            let target = core_graph(p.m, p.n);
            let cells: BTreeSet<GridCoord> = p.isomorphism.values().copied().collect();
            let domain: Vec<VertexId> = p.isomorphism.keys().copied().collect();
            domain == p.vertices
                && cells.len() == p.vertices.len()
                && cells.iter().all(|&c| target.vertex_at(c).is_some())
                && cells.len() == target.order()
                && p.vertices.iter().all(|&u| {
                    g.neighbors(u).map_or(false, |mut it| it.all(|w| p.isomorphism.contains_key(&w)))
                })
                && p.vertices.iter().enumerate().all(|(k, &u)| {
                    p.vertices[k + 1..].iter().all(|&v| {
                        let (cu, cv) = (p.isomorphism[&u], p.isomorphism[&v]);
                        g.has_edge(u, v)
                            == target.has_edge(target.vertex_at(cu).unwrap(), target.vertex_at(cv).unwrap())
                    })
                })
        })
    }
}

/// `G(m, n)°` labeled by grid cells.
fn core_graph(m: usize, n: usize) -> Graph {
    strip_isolated(&build_downleft(&DownLeftSpec::full(m, n).expect("m, n >= 1")))
}

/// Matches each non-singleton component of H to `G(r, c)°`, first by
/// rank-relabeling its matrix rows and columns, then by isomorphism search.
pub fn recognize_components(h: &HGraph, limits: &Limits) -> Result<DecompositionCert> {
    let mut parts = Vec::new();
    let mut isolated = Vec::new();
    for comp in graph::connected_components(&h.graph) {
        let ids = comp.host_ids.clone();
        if ids.len() == 1 {
            isolated.push(ids[0]);
            continue;
        }
        let coords: Vec<GridCoord> = ids.iter().map(|&v| h.coord(v)).collect();
        let rank = |vals: BTreeSet<u32>| -> BTreeMap<u32, u32> { vals.into_iter().zip(1..).collect() };
        let rows = rank(coords.iter().map(|c| c.row).collect());
        let cols = rank(coords.iter().map(|c| c.col).collect());
        let (r, c) = (rows.len(), cols.len());
        let relabeled: BTreeMap<VertexId, GridCoord> = ids
            .iter()
            .zip(&coords)
            .map(|(&v, p)| (v, GridCoord::new(rows[&p.row], cols[&p.col])))
            .collect();
        let part = DecompositionPart {
            m: r,
            n: c,
            vertices: ids.clone(),
            isomorphism: relabeled,
        };
        let single = |p: DecompositionPart| DecompositionCert {
            parts: vec![p],
            isolated: Vec::new(),
        };
        let sub = HGraph {
            graph: graph::induced_subgraph(&h.graph, &ids.iter().copied().collect())?,
        };
        if r >= 2 && c >= 2 && single(part.clone()).verify(&sub) {
            parts.push(part);
            continue;
        }
        match generic_match(&sub, &ids, limits)? {
            Some(p) => parts.push(p),
            None => return Err(ToricError::NotDecomposable { vertices: ids }),
        }
    }
    Ok(DecompositionCert { parts, isolated })
}

fn generic_match(sub: &HGraph, ids: &[VertexId], limits: &Limits) -> Result<Option<DecompositionPart>> {
    let k = ids.len();
    for m in 2..=k + 2 {
        for n in m..=k + 2 {
            if m * n != k + 2 {
                continue;
            }
            for (mm, nn) in [(m, n), (n, m)] {
                let target = core_graph(mm, nn);
                if target.size() != sub.graph.size() {
                    continue;
                }
                if let Some(map) = graph::graphs_isomorphic(&sub.graph, &target, limits)? {
                    let isomorphism = map
                        .into_iter()
                        .map(|(u, t)| (u, target.label(t).expect("labeled")))
                        .collect();
                    return Ok(Some(DecompositionPart {
                        m: mm,
                        n: nn,
                        vertices: ids.to_vec(),
                        isomorphism,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub m: usize,
    pub n: usize,
    /// 1-based matrix positions of the component's H vertices.
    pub vertices: Vec<(u32, u32)>,
}

/// Every stage of the pipeline, for a graph that passed the hypothesis checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricReport {
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
    pub matrix: BinaryMatrix,
    pub sorted: BinaryMatrix,
    pub gamma: GammaCheck,
    pub h: HGraph,
    pub decomposition: DecompositionCert,
    pub regularity: usize,
    /// `oracle_reg(H)`, when H fits the oracle's cap.
    pub oracle_reg: Option<usize>,
}

impl ToricReport {
    pub fn agree(&self) -> Option<bool> {
        self.oracle_reg.map(|r| r == self.regularity)
    }

    pub fn components(&self) -> Vec<ComponentSummary> {
        self.decomposition
            .parts
            .iter()
            .map(|p| ComponentSummary {
                m: p.m,
                n: p.n,
                vertices: p
                    .vertices
                    .iter()
                    .map(|&v| {
                        let c = self.h.coord(v);
                        (c.row, c.col)
                    })
                    .collect(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleCheck {
    /// Cross-check against the oracle when H is within its vertex cap.
    WhenSmall,
    Skip,
}

/// Checks the hypotheses, sorts, builds H and returns
/// `sum min(m_i - 1, n_i - 1)` over its non-trivial components.
pub fn toric_regularity(
    g: &Graph,
    left: &[VertexId],
    right: &[VertexId],
    limits: &Limits,
    oracle: OracleCheck,
) -> Result<ToricReport> {
    let matrix = biadjacency(g, left, right)?;
    match is_chordal_bipartite(g, limits)? {
        ChordalBipartite::Yes { .. } => {}
        other => return Err(ToricError::NotChordalBipartite(other)),
    }
    if let Some(e) = find_induced_pattern(g, PatternKind::K33MinusE, limits)? {
        return Err(ToricError::NotK33eFree(e));
    }
    let sorted = doubly_revlex_sort(&matrix)?;
    let gamma = gamma_free_check(&sorted);
    let h = build_h(&sorted);
    let decomposition = recognize_components(&h, limits)?;
    let regularity = decomposition.regularity();
    let oracle_reg = match oracle {
        OracleCheck::WhenSmall if h.graph.order() <= limits.hochster_vertices => {
            Some(hochster::oracle_reg(&h.graph, limits)?.reg)
        }
        _ => None,
    };
    Ok(ToricReport {
        left: left.to_vec(),
        right: right.to_vec(),
        matrix,
        sorted,
        gamma,
        h,
        decomposition,
        regularity,
        oracle_reg,
    })
}

/// Checks whether `M` restricted to `(R ∪ {s}) x (C ∪ {t})` is all ones,
/// after validating the hypotheses of the all-ones extension property.
/// Indices are 1-based.
pub fn techy_lemma_check(
    mat: &BinaryMatrix,
    r_set: &BTreeSet<usize>,
    c_set: &BTreeSet<usize>,
    s: usize,
    t: usize,
) -> Result<bool> {
    let fail = |msg: &str| Err(ToricError::PreconditionFailed(msg.to_string()));
    let in_range = |i: usize, hi: usize| (1..=hi).contains(&i);
    if !r_set.iter().all(|&i| in_range(i, mat.rows))
        || !c_set.iter().all(|&j| in_range(j, mat.cols))
        || !in_range(s, mat.rows)
        || !in_range(t, mat.cols)
    {
        return fail("indices must lie within the matrix");
    }
    let at = |i: usize, j: usize| mat.entries[i - 1][j - 1];
    if r_set.len() < 2 || c_set.len() < 2 {
        return fail("|R| >= 2 and |C| >= 2");
    }
    if !r_set.iter().all(|&i| c_set.iter().all(|&j| at(i, j))) {
        return fail("M[R, C] is all ones");
    }
    if !at(s, t) {
        return fail("M_{s,t} = 1");
    }
    if r_set.contains(&s) && c_set.contains(&t) {
        return fail("s not in R or t not in C");
    }
    let corner = (*r_set.last().unwrap(), *c_set.last().unwrap());
    let admissible = r_set.iter().any(|&r| {
        c_set.iter().any(|&c| {
            ((s < r && t > c) || (s > r && t < c)) && at(r, c) && at(s, c) && at(r, t) && (r, c) != corner
        })
    });
    if !admissible {
        return fail("some r in R, c in C with (s - r)(t - c) < 0, M_{r,c} = M_{s,c} = M_{r,t} = 1 and (r, c) != (max R, max C)");
    }
    let rows: Vec<usize> = r_set.iter().copied().chain([s]).collect();
    let cols: Vec<usize> = c_set.iter().copied().chain([t]).collect();
    Ok(rows.iter().all(|&i| cols.iter().all(|&j| at(i, j))))
}
