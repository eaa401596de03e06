//! Down-left graphs `G(m, n, a, b)`: construction, normalization into
//! connected-style parts, and certified invariants.
//!
//! `G(m, n)` has a vertex `x_{i,j}` for every cell of an `m x n` grid and an
//! edge between `x_{i,j}` and `x_{k,l}` whenever `i < k` and `j > l`. The
//! vectors `a` and `b` cut staircases off the lower-left and upper-right
//! corners: row `i` keeps the columns `a_i < j < b_i`.
//!
//! Normalized parts keep the original grid coordinates of their vertices, so
//! every certificate produced here refers to the un-normalized input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    self, Branch, Edge, Graph, GraphError, GridCoord, InducedMatching, Limits, SheddingSequence, SheddingStep,
    VertexId, VertexSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("m >= 1 and n >= 1 are required (got m = {m}, n = {n})")]
    ZeroDimension { m: usize, n: usize },
    #[error("vector {which} must have length m = {m} (got {len})")]
    LengthMismatch { which: char, len: usize, m: usize },
    #[error("a_1 = 0 is required (got a_1 = {0})")]
    FirstANotZero(usize),
    #[error("a must be non-decreasing (a_{i} > a_{next})", next = .i + 1)]
    ANotMonotone { i: usize },
    #[error("a_m < n is required (got a_m = {a_m}, n = {n})")]
    ALastTooLarge { a_m: usize, n: usize },
    #[error("b_1 > 1 is required (got b_1 = {0})")]
    BFirstTooSmall(usize),
    #[error("b must be non-decreasing (b_{i} > b_{next})", next = .i + 1)]
    BNotMonotone { i: usize },
    #[error("b_m = n + 1 is required (got b_m = {b_m}, n = {n})")]
    BLastWrong { b_m: usize, n: usize },
    #[error("a_{i} < b_{i} is required (got a_{i} = {a}, b_{i} = {b})")]
    AExceedsB { i: usize, a: usize, b: usize },
    #[error("spec is not normalized: {0}")]
    NotNormalized(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, SpecError>;

/// The data `(m, n, a, b)` of a down-left graph; vectors are 1-indexed in
/// prose and 0-indexed in storage.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DownLeftSpec {
    m: usize,
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl DownLeftSpec {
    pub fn new(m: usize, n: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(SpecError::ZeroDimension { m, n });
        }
        for (which, v) in [('a', &a), ('b', &b)] {
            if v.len() != m {
                return Err(SpecError::LengthMismatch {
                    which,
                    len: v.len(),
                    m,
                });
            }
        }
        if a[0] != 0 {
            return Err(SpecError::FirstANotZero(a[0]));
        }
        if let Some(i) = (1..m).find(|&i| a[i - 1] > a[i]) {
            return Err(SpecError::ANotMonotone { i });
        }
        if a[m - 1] >= n {
            return Err(SpecError::ALastTooLarge { a_m: a[m - 1], n });
        }
        if b[0] <= 1 {
            return Err(SpecError::BFirstTooSmall(b[0]));
        }
        if let Some(i) = (1..m).find(|&i| b[i - 1] > b[i]) {
            return Err(SpecError::BNotMonotone { i });
        }
        if b[m - 1] != n + 1 {
            return Err(SpecError::BLastWrong { b_m: b[m - 1], n });
        }
        if let Some(i) = (1..m.saturating_sub(1)).find(|&i| a[i] >= b[i]) {
            return Err(SpecError::AExceedsB {
                i: i + 1,
                a: a[i],
                b: b[i],
            });
        }
        Ok(DownLeftSpec { m, n, a, b })
    }

    /// `G(m, n)`: nothing removed.
    pub fn full(m: usize, n: usize) -> Result<Self> {
        DownLeftSpec::new(m, n, vec![0; m], vec![n + 1; m])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// Whether `x_{i,j}` (1-based) survives.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        (1..=self.m).contains(&i) && self.a[i - 1] < j && j < self.b[i - 1] && j <= self.n
    }

    /// Surviving columns of row `i` (1-based), possibly empty.
    pub fn row_columns(&self, i: usize) -> std::ops::Range<usize> {
        let lo = self.a[i - 1] + 1;
        let hi = self.b[i - 1].min(self.n + 1);
        lo..hi.max(lo)
    }

    /// Surviving cells in row-major order.
    pub fn cells(&self) -> Vec<GridCoord> {
        (1..=self.m)
            .flat_map(|i| self.row_columns(i).map(move |j| GridCoord::new(i as u32, j as u32)))
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        (1..=self.m).map(|i| self.row_columns(i).len()).sum()
    }

    pub fn is_full(&self) -> bool {
        self.a.iter().all(|&x| x == 0) && self.b.iter().all(|&x| x == self.n + 1)
    }

    /// `a_i + 1 < b_i` for every row and `b_{i-1} > a_i + 1` for `2 <= i <= m`.
    pub fn normalization_defect(&self) -> Option<String> {
        if let Some(i) = (0..self.m).find(|&i| self.a[i] + 1 >= self.b[i]) {
            return Some(format!("row {} is empty", i + 1));
        }
        (1..self.m)
            .find(|&i| self.b[i - 1] <= self.a[i] + 1)
            .map(|i| format!("b_{} <= a_{} + 1 splits the graph", i, i + 1))
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_defect().is_none()
    }
}

impl fmt::Display for DownLeftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({}, {}, {:?}, {:?})", self.m, self.n, self.a, self.b)
    }
}

fn grid_adjacent(p: GridCoord, q: GridCoord) -> bool {
    (p.row < q.row && p.col > q.col) || (q.row < p.row && q.col > p.col)
}

/// Builds `G(m, n, a, b)`: ids in row-major order, every vertex labeled with
/// its grid coordinate.
pub fn build_downleft(spec: &DownLeftSpec) -> Graph {
    build_on_cells(&spec.cells())
}

fn build_on_cells(cells: &[GridCoord]) -> Graph {
    let mut edges = Vec::new();
    for (p, &u) in cells.iter().enumerate() {
        for (q, &v) in cells.iter().enumerate().skip(p + 1) {
            if grid_adjacent(u, v) {
                edges.push((p, q));
            }
        }
    }
    Graph::from_edges(cells.len(), &edges)
        .and_then(|g| g.with_labels(cells.iter().copied().enumerate()))
        .expect("grid graph is simple")
}

/// `G°`: drops vertices of degree zero.
pub fn strip_isolated(g: &Graph) -> Graph {
    let keep: VertexSet = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| g.degree(v).map_or(false, |d| d > 0))
        .collect();
    graph::induced_subgraph(g, &keep).expect("subset of the graph")
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

/// A down-left spec together with the original row and column of each of its
/// rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DownLeftPart {
    pub spec: DownLeftSpec,
    /// `rows[i - 1]` is the original row of part row `i`.
    pub rows: Vec<u32>,
    /// `cols[j - 1]` is the original column of part column `j`.
    pub cols: Vec<u32>,
}

impl DownLeftPart {
    pub fn identity(spec: &DownLeftSpec) -> Self {
        DownLeftPart {
            rows: (1..=spec.m as u32).collect(),
            cols: (1..=spec.n as u32).collect(),
            spec: spec.clone(),
        }
    }

    /// Original coordinate of part cell `(i, j)`.
    pub fn original(&self, i: usize, j: usize) -> GridCoord {
        GridCoord::new(self.rows[i - 1], self.cols[j - 1])
    }

    /// Original coordinates of the surviving cells, row-major.
    pub fn coords(&self) -> Vec<GridCoord> {
        self.spec
            .cells()
            .into_iter()
            .map(|c| self.original(c.row as usize, c.col as usize))
            .collect()
    }

    pub fn has_edges(&self) -> bool {
        let s = &self.spec;
        // some later row has a cell strictly left of some cell of an earlier row
        (2..=s.m).any(|k| {
            let lo = s.row_columns(k);
            (1..k).any(|i| {
                let hi = s.row_columns(i);
                !lo.is_empty() && !hi.is_empty() && hi.end - 1 > lo.start
            })
        })
    }

    fn with_spec(&self, spec: DownLeftSpec, rows: Vec<u32>, cols: Vec<u32>) -> Self {
        debug_assert_eq!(rows.len(), spec.m);
        debug_assert_eq!(cols.len(), spec.n);
        DownLeftPart { spec, rows, cols }
    }

    fn empty_row(&self) -> Option<usize> {
        (1..=self.spec.m).find(|&i| self.spec.row_columns(i).is_empty())
    }

    /// Drops the empty row `i`.
    fn delete_row(&self, i: usize) -> Self {
        let s = &self.spec;
        let mut a = s.a.clone();
        let mut b = s.b.clone();
        let mut rows = self.rows.clone();
        a.remove(i - 1);
        b.remove(i - 1);
        rows.remove(i - 1);
        let spec = DownLeftSpec::new(s.m - 1, s.n, a, b).expect("deleting an interior empty row keeps a valid spec");
        self.with_spec(spec, rows, self.cols.clone())
    }

    /// First `i` in `2..=m` with `b_{i-1} <= a_i + 1`, optionally requiring rows
    /// `i - 1` and `i` to be non-empty.
    fn split_index(&self, need_nonempty: bool) -> Option<usize> {
        let s = &self.spec;
        (2..=s.m).find(|&i| {
            s.b[i - 2] <= s.a[i - 1] + 1
                && (!need_nonempty || (!s.row_columns(i - 1).is_empty() && !s.row_columns(i).is_empty()))
        })
    }

    /// Splits at `i` into the upper-left block
    /// `G(i-1, b_{i-1}-1, (a_1..a_{i-1}), (b_1..b_{i-1}))` and the lower-right
    /// block `G(m-i+1, n-a_i, (a_i..a_m) - a_i, (b_i..b_m) - a_i)`.
    fn split(&self, i: usize) -> (Self, Self) {
        let s = &self.spec;
        let ai = s.a[i - 1];
        let upper_n = s.b[i - 2] - 1;
        let upper = DownLeftSpec::new(i - 1, upper_n, s.a[..i - 1].to_vec(), s.b[..i - 1].to_vec())
            .expect("upper split block is a valid spec");
        let lower = DownLeftSpec::new(
            s.m - i + 1,
            s.n - ai,
            s.a[i - 1..].iter().map(|&x| x - ai).collect(),
            s.b[i - 1..].iter().map(|&x| x - ai).collect(),
        )
        .expect("lower split block is a valid spec");
        (
            self.with_spec(upper, self.rows[..i - 1].to_vec(), self.cols[..upper_n].to_vec()),
            self.with_spec(lower, self.rows[i - 1..].to_vec(), self.cols[ai..].to_vec()),
        )
    }

    /// Largest `i` with `a_i = 0`; the shedding vertex is `x_{i,1}`.
    fn shedding_row(&self) -> usize {
        (1..=self.spec.m).rev().find(|&i| self.spec.a[i - 1] == 0).expect("a_1 = 0")
    }

    /// `x_{i,1}` has no neighbor exactly when no earlier row reaches column 2.
    fn shedding_vertex_isolated(&self, i: usize) -> bool {
        i == 1 || self.spec.b[i - 2] <= 2
    }

    /// `G \ x_{i,1}`.
    fn delete_shedding_vertex(&self, i: usize) -> Self {
        let s = &self.spec;
        if i == 1 {
            // x_{1,1} is the only cell of column 1: drop the column
            let a = s.a.iter().enumerate().map(|(k, &x)| if k == 0 { 0 } else { x - 1 }).collect();
            let b = s.b.iter().map(|&x| x - 1).collect();
            let spec = DownLeftSpec::new(s.m, s.n - 1, a, b).expect("dropping column 1 keeps a valid spec");
            return self.with_spec(spec, self.rows.clone(), self.cols[1..].to_vec());
        }
        let mut a = s.a.clone();
        a[i - 1] = 1;
        let spec = DownLeftSpec::new(s.m, s.n, a, s.b.clone()).expect("deleting x_{i,1} keeps a valid spec");
        self.with_spec(spec, self.rows.clone(), self.cols.clone())
    }

    /// `G \ N[x_{i,1}]` for `i > 1`: `a_i = 1` and `b_1 = ... = b_{i-1} = 2`.
    fn delete_shedding_neighborhood(&self, i: usize) -> Self {
        let s = &self.spec;
        let mut a = s.a.clone();
        let mut b = s.b.clone();
        a[i - 1] = 1;
        for x in &mut b[..i - 1] {
            *x = 2;
        }
        let spec = DownLeftSpec::new(s.m, s.n, a, b).expect("deleting N[x_{i,1}] keeps a valid spec");
        self.with_spec(spec, self.rows.clone(), self.cols.clone())
    }
}

/// The parts of a normalized down-left graph, ordered by their first cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedSpec {
    pub parts: Vec<DownLeftPart>,
}

impl NormalizedSpec {
    pub fn coords(&self) -> BTreeSet<GridCoord> {
        self.parts.iter().flat_map(DownLeftPart::coords).collect()
    }

    /// Size every maximal independent set must have: `sum (m_c + n_c - 1)`.
    pub fn independence_number(&self) -> usize {
        self.parts.iter().map(|p| p.spec.m + p.spec.n - 1).sum()
    }
}

/// Order in which the two rewrites are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    /// Remove every empty row before looking for a split.
    RowsFirst,
    /// Split whenever a split between two non-empty rows exists.
    SplitsFirst,
}

pub fn normalize(spec: &DownLeftSpec) -> NormalizedSpec {
    normalize_part(&DownLeftPart::identity(spec), RewriteOrder::RowsFirst)
}

pub fn normalize_with(spec: &DownLeftSpec, order: RewriteOrder) -> NormalizedSpec {
    normalize_part(&DownLeftPart::identity(spec), order)
}

fn normalize_part(part: &DownLeftPart, order: RewriteOrder) -> NormalizedSpec {
    let mut work = vec![part.clone()];
    let mut done = Vec::new();
    while let Some(p) = work.pop() {
        let row = p.empty_row();
        let split = p.split_index(order == RewriteOrder::SplitsFirst);
        match (order, row, split) {
            (RewriteOrder::RowsFirst, Some(i), _) | (RewriteOrder::SplitsFirst, Some(i), None) => {
                work.push(p.delete_row(i))
            }
            (_, _, Some(i)) => {
                let (upper, lower) = p.split(i);
                work.push(upper);
                work.push(lower);
            }
            (_, None, None) => done.push(p),
        }
    }
    done.sort_by_key(|p| p.coords().first().copied());
    NormalizedSpec { parts: done }
}

// ---------------------------------------------------------------------------
// Certified invariants
// ---------------------------------------------------------------------------

fn require_normalized(spec: &DownLeftSpec) -> Result<()> {
    match spec.normalization_defect() {
        Some(d) => Err(SpecError::NotNormalized(d)),
        None => Ok(()),
    }
}

fn id_of(spec: &DownLeftSpec) -> BTreeMap<GridCoord, VertexId> {
    spec.cells().into_iter().enumerate().map(|(p, c)| (c, p)).collect()
}

/// The maximal independent sets of a normalized spec, as the monotone
/// staircases from `x_{1,1}` to `x_{m,n}`; ids are those of [`build_downleft`].
pub fn lattice_path_independent_sets(spec: &DownLeftSpec) -> Result<Vec<VertexSet>> {
    require_normalized(spec)?;
    let ids = id_of(spec);
    let mut out = Vec::new();
    let mut path = vec![ids[&GridCoord::new(1, 1)]];
    staircases(spec, &ids, 1, 1, &mut path, &mut out);
    out.sort();
    Ok(out)
}

fn staircases(
    spec: &DownLeftSpec,
    ids: &BTreeMap<GridCoord, VertexId>,
    i: usize,
    j: usize,
    path: &mut Vec<VertexId>,
    out: &mut Vec<VertexSet>,
) {
    if (i, j) == (spec.m, spec.n) {
        out.push(path.iter().copied().collect());
        return;
    }
    for (di, dj) in [(1, 0), (0, 1)] {
        if spec.contains(i + di, j + dj) {
            path.push(ids[&GridCoord::new((i + di) as u32, (j + dj) as u32)]);
            staircases(spec, ids, i + di, j + dj, path, out);
            path.pop();
        }
    }
}

/// `x_{i,1}` with `i` the largest index such that `a_i = 0`.
pub fn shedding_vertex(spec: &DownLeftSpec) -> Result<GridCoord> {
    require_normalized(spec)?;
    if spec.vertex_count() < 2 {
        return Err(SpecError::Degenerate("a single-vertex part has no shedding vertex".into()));
    }
    let part = DownLeftPart::identity(spec);
    Ok(GridCoord::new(part.shedding_row() as u32, 1))
}

/// A shedding sequence for `build_downleft(spec)` following the induction on
/// the number of vertices: shed `x_{i,1}` (largest `i` with `a_i = 0`) in the
/// first part that still has edges, re-normalizing both branches.
pub fn vd_certificate(spec: &DownLeftSpec) -> SheddingSequence {
    let ids = id_of(spec);
    let mut steps = Vec::new();
    derive(normalize(spec).parts, &mut Vec::new(), &ids, &mut steps);
    SheddingSequence { steps }
}

fn derive(
    parts: Vec<DownLeftPart>,
    path: &mut Vec<Branch>,
    ids: &BTreeMap<GridCoord, VertexId>,
    out: &mut Vec<SheddingStep>,
) {
    let Some(k) = parts.iter().position(DownLeftPart::has_edges) else {
        return;
    };
    let part = &parts[k];
    let i = part.shedding_row();
    let x = part.original(i, 1);
    out.push(SheddingStep {
        path: path.clone(),
        vertex: ids[&x],
        coord: Some(x),
    });
    let branch = |replacement: DownLeftPart| {
        let mut next = parts.clone();
        next.splice(k..=k, normalize_part(&replacement, RewriteOrder::RowsFirst).parts);
        next
    };
    path.push(Branch::Deletion);
    derive(branch(part.delete_shedding_vertex(i)), path, ids, out);
    path.pop();
    if !part.shedding_vertex_isolated(i) {
        path.push(Branch::Link);
        derive(branch(part.delete_shedding_neighborhood(i)), path, ids, out);
        path.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRegularity {
    pub m: usize,
    pub n: usize,
    pub vertices: usize,
    pub im: usize,
    /// `min(m - 1, n - 1)` when the part is a full `G(m, n)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DownLeftRegularity {
    pub reg: usize,
    /// Induced matching of `build_downleft(spec)` of size `reg`.
    pub witness: Vec<Edge>,
    pub parts: Vec<PartRegularity>,
}

/// `reg(R/I(G)) = im(G)`, summed over normalized parts; each part's induced
/// matching number comes from the exhaustive search, and full `G(m, n)` parts
/// are additionally checked against `min(m - 1, n - 1)`.
pub fn downleft_regularity(spec: &DownLeftSpec, limits: &Limits) -> Result<DownLeftRegularity> {
    let g = build_downleft(spec);
    let ids = id_of(spec);
    let mut reg = 0;
    let mut witness = Vec::new();
    let mut parts = Vec::new();
    for part in normalize(spec).parts {
        let keep: VertexSet = part.coords().iter().map(|c| ids[c]).collect();
        let sub = graph::induced_subgraph(&g, &keep)?;
        let InducedMatching { size, edges } = graph::induced_matching_number(&sub, limits)?;
        let closed_form = part
            .spec
            .is_full()
            .then(|| part.spec.m.min(part.spec.n) - 1);
        if let Some(cf) = closed_form {
            if cf != size {
                return Err(SpecError::Degenerate(format!(
                    "closed form {cf} disagrees with search {size} on {}",
                    part.spec
                )));
            }
        }
        reg += size;
        witness.extend(edges);
        parts.push(PartRegularity {
            m: part.spec.m,
            n: part.spec.n,
            vertices: keep.len(),
            im: size,
            closed_form,
        });
    }
    witness.sort_unstable();
    Ok(DownLeftRegularity { reg, witness, parts })
}

/// `{ {x_{i,i+1}, x_{i+1,i}} : 1 <= i < min(m, n) }`.
pub fn canonical_induced_matching(m: usize, n: usize) -> Result<Vec<(GridCoord, GridCoord)>> {
    if m < 2 || n < 2 {
        return Err(SpecError::Degenerate(format!(
            "G({m}, {n}) has no edges; m, n >= 2 are required"
        )));
    }
    Ok((1..m.min(n) as u32)
        .map(|i| (GridCoord::new(i, i + 1), GridCoord::new(i + 1, i)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_induced_matching, maximal_independent_sets};

    fn spec(m: usize, n: usize, a: &[usize], b: &[usize]) -> DownLeftSpec {
        DownLeftSpec::new(m, n, a.to_vec(), b.to_vec()).unwrap()
    }

    fn five_row_spec() -> DownLeftSpec {
        spec(5, 6, &[0, 0, 1, 2, 2], &[5, 5, 6, 6, 7])
    }

    fn c(i: u32, j: u32) -> GridCoord {
        GridCoord::new(i, j)
    }

    #[test]
    fn invalid_specs_name_the_inequality() {
        let e = DownLeftSpec::new(2, 3, vec![1, 1], vec![4, 4]).unwrap_err();
        assert_eq!(e, SpecError::FirstANotZero(1));
        assert!(e.to_string().contains("a_1 = 0"));
        assert!(matches!(DownLeftSpec::new(0, 3, vec![], vec![]), Err(SpecError::ZeroDimension { .. })));
        assert!(matches!(DownLeftSpec::new(2, 3, vec![0, 3], vec![4, 4]), Err(SpecError::ALastTooLarge { .. })));
        assert!(matches!(DownLeftSpec::new(2, 3, vec![0, 0], vec![1, 4]), Err(SpecError::BFirstTooSmall(1))));
        assert!(matches!(DownLeftSpec::new(2, 3, vec![0, 0], vec![4, 3]), Err(SpecError::BNotMonotone { .. })));
        assert!(matches!(DownLeftSpec::new(2, 3, vec![0, 0], vec![4, 5]), Err(SpecError::BLastWrong { .. })));
        assert!(matches!(
            DownLeftSpec::new(3, 3, vec![0, 2, 2], vec![2, 2, 4]),
            Err(SpecError::AExceedsB { i: 2, .. })
        ));
    }

    #[test]
    fn build_counts() {
        let g34 = build_downleft(&DownLeftSpec::full(3, 4).unwrap());
        assert_eq!((g34.order(), g34.size()), (12, 18));
        let g1 = build_downleft(&DownLeftSpec::full(1, 5).unwrap());
        assert_eq!((g1.order(), g1.size()), (5, 0));
        let fig = build_downleft(&five_row_spec());
        assert_eq!(fig.order(), 19);
        // every cell outside a_i < j < b_i is absent
        for (i, j) in [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2), (1, 5), (1, 6), (2, 5), (2, 6), (3, 6), (4, 6)] {
            assert!(fig.vertex_at(c(i, j)).is_none());
        }
    }

    #[test]
    fn induced_subgraph_of_g34_is_the_canonical_matching() {
        let g = build_downleft(&DownLeftSpec::full(3, 4).unwrap());
        let w: VertexSet = [c(1, 2), c(2, 1), c(2, 3), c(3, 2)]
            .iter()
            .map(|&x| g.vertex_at(x).unwrap())
            .collect();
        let h = graph::induced_subgraph(&g, &w).unwrap();
        assert_eq!(h.size(), 2);
        assert!(h.has_edge(g.vertex_at(c(1, 2)).unwrap(), g.vertex_at(c(2, 1)).unwrap()));
        assert!(h.has_edge(g.vertex_at(c(2, 3)).unwrap(), g.vertex_at(c(3, 2)).unwrap()));
    }

    #[test]
    fn g22_structure() {
        let g = build_downleft(&DownLeftSpec::full(2, 2).unwrap());
        let comps = graph::connected_components(&g);
        assert_eq!(comps.len(), 3);
        let x21 = g.vertex_at(c(2, 1)).unwrap();
        let x12 = g.vertex_at(c(1, 2)).unwrap();
        assert_eq!(graph::closed_neighborhood(&g, x21).unwrap(), [x21, x12].into());
        let core = strip_isolated(&g);
        assert_eq!(core.edges(), vec![(x12.min(x21), x12.max(x21))]);
        assert_eq!(strip_isolated(&Graph::from_edges(3, &[]).unwrap()).order(), 0);
    }

    #[test]
    fn strip_isolated_g34_drops_the_corners() {
        let g = build_downleft(&DownLeftSpec::full(3, 4).unwrap());
        let core = strip_isolated(&g);
        assert_eq!(core.order(), 10);
        assert!(core.vertex_at(c(1, 1)).is_none());
        assert!(core.vertex_at(c(3, 4)).is_none());
        assert_eq!(core.size(), 18);
    }

    #[test]
    fn normalize_full_grid_is_identity() {
        let s = DownLeftSpec::full(3, 4).unwrap();
        let norm = normalize(&s);
        assert_eq!(norm.parts, vec![DownLeftPart::identity(&s)]);
    }

    #[test]
    fn normalize_deletes_empty_rows() {
        // row 2 keeps columns 3 < j < 4: nothing; rows 1 and 3 then separate
        let s = spec(3, 5, &[0, 3, 3], &[4, 4, 6]);
        let norm = normalize(&s);
        assert_eq!(norm.parts.len(), 2);
        assert_eq!(norm.parts[0].spec, DownLeftSpec::full(1, 3).unwrap());
        assert_eq!(norm.parts[0].rows, vec![1]);
        assert_eq!(norm.parts[1].spec, DownLeftSpec::full(1, 2).unwrap());
        assert_eq!((norm.parts[1].rows.clone(), norm.parts[1].cols.clone()), (vec![3], vec![4, 5]));
        assert_eq!(norm.coords(), s.cells().into_iter().collect());
        assert_eq!(norm, normalize_with(&s, RewriteOrder::SplitsFirst));
    }

    #[test]
    fn normalize_splits_like_the_displayed_blocks() {
        // b_1 = 3 <= a_2 + 1 = 3
        let s = spec(3, 5, &[0, 2, 2], &[3, 6, 6]);
        let norm = normalize(&s);
        assert_eq!(norm.parts.len(), 2);
        let (upper, lower) = (&norm.parts[0], &norm.parts[1]);
        assert_eq!(upper.spec, spec(1, 2, &[0], &[3]));
        assert_eq!(lower.spec, spec(2, 3, &[0, 0], &[4, 4]));
        assert_eq!(lower.rows, vec![2, 3]);
        assert_eq!(lower.cols, vec![3, 4, 5]);
        assert_eq!(norm.coords(), s.cells().into_iter().collect());
    }

    #[test]
    fn normalize_is_idempotent_on_parts() {
        let norm = normalize(&five_row_spec());
        for p in &norm.parts {
            assert!(p.spec.is_normalized());
            let again = normalize(&p.spec);
            assert_eq!(again.parts.len(), 1);
            assert_eq!(again.parts[0].spec, p.spec);
        }
    }

    #[test]
    fn lattice_paths_g22() {
        let s = DownLeftSpec::full(2, 2).unwrap();
        // ids row-major: x11=0, x12=1, x21=2, x22=3
        assert_eq!(
            lattice_path_independent_sets(&s).unwrap(),
            vec![VertexSet::from([0, 1, 3]), VertexSet::from([0, 2, 3])]
        );
        let one_row = DownLeftSpec::full(1, 4).unwrap();
        assert_eq!(lattice_path_independent_sets(&one_row).unwrap(), vec![(0..4).collect()]);
        let split = spec(3, 5, &[0, 2, 2], &[3, 6, 6]);
        assert!(matches!(lattice_path_independent_sets(&split), Err(SpecError::NotNormalized(_))));
    }

    #[test]
    fn lattice_paths_match_enumeration_and_binomials() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for m in 1..=5 {
            for n in 1..=5 {
                let s = DownLeftSpec::full(m, n).unwrap();
                let paths = lattice_path_independent_sets(&s).unwrap();
                assert_eq!(paths.len(), binom(m + n - 2, m - 1), "G({m},{n})");
                if m * n <= Limits::default().mis_vertices {
                    let mis = maximal_independent_sets(&build_downleft(&s), &Limits::default()).unwrap();
                    assert_eq!(paths, mis);
                }
            }
        }
    }

    #[test]
    fn shedding_vertex_examples() {
        assert_eq!(shedding_vertex(&DownLeftSpec::full(4, 3).unwrap()).unwrap(), c(4, 1));
        // the five-row spec with a = (0,0,1,2,2) is already normalized
        assert!(five_row_spec().is_normalized());
        assert_eq!(shedding_vertex(&five_row_spec()).unwrap(), c(2, 1));
        assert!(matches!(
            shedding_vertex(&DownLeftSpec::full(1, 1).unwrap()),
            Err(SpecError::Degenerate(_))
        ));
    }

    #[test]
    fn vd_certificates_replay() {
        let l = Limits::default();
        let s11 = DownLeftSpec::full(1, 1).unwrap();
        assert!(vd_certificate(&s11).steps.is_empty());
        let s22 = DownLeftSpec::full(2, 2).unwrap();
        let cert = vd_certificate(&s22);
        assert_eq!(cert.steps[0].coord, Some(c(2, 1)));
        cert.replay(&build_downleft(&s22), &l).unwrap();
        for s in [DownLeftSpec::full(3, 3).unwrap(), five_row_spec(), spec(3, 5, &[0, 2, 2], &[3, 6, 6])] {
            vd_certificate(&s).replay(&build_downleft(&s), &l).unwrap();
        }
    }

    #[test]
    fn regularity_examples() {
        let l = Limits::default();
        let r = downleft_regularity(&DownLeftSpec::full(3, 4).unwrap(), &l).unwrap();
        assert_eq!(r.reg, 2);
        assert_eq!(downleft_regularity(&DownLeftSpec::full(1, 6).unwrap(), &l).unwrap().reg, 0);
        let r44 = downleft_regularity(&DownLeftSpec::full(4, 4).unwrap(), &l).unwrap();
        assert_eq!(r44.reg, 3);
        assert_eq!(r44.parts[0].closed_form, Some(3));
        let g = build_downleft(&five_row_spec());
        let r = downleft_regularity(&five_row_spec(), &l).unwrap();
        assert!(is_induced_matching(&g, &r.witness));
        assert_eq!(r.witness.len(), r.reg);
    }

    #[test]
    fn canonical_matchings() {
        assert_eq!(
            canonical_induced_matching(3, 4).unwrap(),
            vec![(c(1, 2), c(2, 1)), (c(2, 3), c(3, 2))]
        );
        assert_eq!(canonical_induced_matching(2, 2).unwrap(), vec![(c(1, 2), c(2, 1))]);
        for (m, n) in [(4, 3), (3, 4), (5, 2), (4, 4)] {
            let g = build_downleft(&DownLeftSpec::full(m, n).unwrap());
            let edges: Vec<Edge> = canonical_induced_matching(m, n)
                .unwrap()
                .into_iter()
                .map(|(p, q)| (g.vertex_at(p).unwrap(), g.vertex_at(q).unwrap()))
                .collect();
            assert_eq!(edges.len(), m.min(n) - 1);
            assert!(is_induced_matching(&g, &edges));
            let best = graph::induced_matching_number(&g, &Limits::default()).unwrap();
            assert_eq!(best.size, edges.len());
        }
        assert!(canonical_induced_matching(1, 4).is_err());
    }
}
