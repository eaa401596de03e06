//! Text formats: edge-list graph files, down-left spec files and 0/1 matrix
//! files. `#` starts a comment in all of them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::downleft::{DownLeftSpec, SpecError};
use crate::graph::{Graph, GraphError, GridCoord, VertexId};
use crate::toric::{BinaryMatrix, ToricError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input is empty")]
    Empty,
    #[error("line {line}: expected a `vertices` header before any edge")]
    MissingHeader { line: usize },
    #[error("line {line}: vertex {token:?} is declared twice")]
    DuplicateVertex { line: usize, token: String },
    #[error("line {line}: vertex {token:?} is not declared in the header")]
    UnknownVertex { line: usize, token: String },
    #[error("line {line}: expected `u v`, got {text:?}")]
    BadEdge { line: usize, text: String },
    #[error("line {line}: loop at {token:?}")]
    SelfLoop { line: usize, token: String },
    #[error("line {line}: expected {expected}, got {text:?}")]
    BadSpecLine {
        line: usize,
        expected: &'static str,
        text: String,
    },
    #[error("spec file has trailing content on line {line}")]
    TrailingSpec { line: usize },
    #[error("invalid spec: {0}")]
    InvalidSpec(#[from] SpecError),
    #[error("line {line}: {msg}")]
    BadMatrix { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, ParseError>;

/// Non-empty lines with comments stripped, as `(1-based line number, text)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((k + 1, body))
    })
}

/// Token `x{i}_{j}` for a grid vertex.
pub fn grid_token(c: GridCoord) -> String {
    format!("x{}_{}", c.row, c.col)
}

pub fn parse_grid_token(token: &str) -> Option<GridCoord> {
    let (i, j) = token.strip_prefix('x')?.split_once('_')?;
    let (i, j) = (i.parse::<u32>().ok()?, j.parse::<u32>().ok()?);
    (i >= 1 && j >= 1).then(|| GridCoord::new(i, j))
}

/// A graph read from an edge-list file, with the token of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub graph: Graph,
    /// Token of vertex id `v` at position `v`.
    pub names: Vec<String>,
}

impl NamedGraph {
    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn id_of(&self, token: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == token)
    }
}

/// Reads `vertices <tokens...>` followed by `u v` lines. Ids follow header
/// order; tokens of the form `x{i}_{j}` also become grid labels.
pub fn parse_graph(text: &str) -> Result<NamedGraph> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::Empty)?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("vertices") {
        return Err(ParseError::MissingHeader { line });
    }
    let names: Vec<String> = tokens.map(str::to_string).collect();
    let mut index = BTreeMap::new();
    for (v, t) in names.iter().enumerate() {
        if index.insert(t.as_str(), v).is_some() {
            return Err(ParseError::DuplicateVertex {
                line,
                token: t.clone(),
            });
        }
    }
    let mut edges = Vec::new();
    for (line, body) in lines {
        let parts: Vec<&str> = body.split_whitespace().collect();
        let [u, v] = parts[..] else {
            return Err(ParseError::BadEdge {
                line,
                text: body.to_string(),
            });
        };
        let id = |t: &str| {
            index.get(t).copied().ok_or_else(|| ParseError::UnknownVertex {
                line,
                token: t.to_string(),
            })
        };
        let (pu, pv) = (id(u)?, id(v)?);
        if pu == pv {
            return Err(ParseError::SelfLoop {
                line,
                token: u.to_string(),
            });
        }
        edges.push((pu, pv));
    }
    let labels: Vec<(VertexId, GridCoord)> = names
        .iter()
        .enumerate()
        .filter_map(|(v, t)| parse_grid_token(t).map(|c| (v, c)))
        .collect();
    let graph = Graph::from_edges(names.len(), &edges)?.with_labels(labels)?;
    Ok(NamedGraph { graph, names })
}

/// Writes the edge-list format. Grid-labeled vertices are named `x{i}_{j}`,
/// others by their id.
pub fn write_graph(g: &Graph) -> String {
    let name = |v: VertexId| g.label(v).map_or_else(|| v.to_string(), grid_token);
    let mut out = String::from("vertices");
    for &v in g.vertices() {
        out.push(' ');
        out.push_str(&name(v));
    }
    out.push('\n');
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", name(u), name(v)));
    }
    out
}

/// Whether the text has the shape of a spec file: `m n`, then two lines of
/// `m` integers. Matrix files never match since their rows are 0/1 of equal
/// width.
pub fn looks_like_spec(text: &str) -> bool {
    let lines: Vec<Vec<&str>> = content_lines(text).map(|(_, l)| l.split_whitespace().collect()).collect();
    let all_ints = lines.iter().flatten().all(|t| t.parse::<usize>().is_ok());
    match &lines[..] {
        [dims, a, b] if all_ints && dims.len() == 2 => {
            let m = dims[0].parse::<usize>().unwrap_or(0);
            a.len() == m && b.len() == m
        }
        _ => false,
    }
}

/// Whether the first content line is a `vertices` header.
pub fn looks_like_graph(text: &str) -> bool {
    content_lines(text)
        .next()
        .map_or(false, |(_, l)| l.split_whitespace().next() == Some("vertices"))
}

/// Reads `m n`, then `a_1 .. a_m`, then `b_1 .. b_m`.
pub fn parse_spec(text: &str) -> Result<DownLeftSpec> {
    let mut lines = content_lines(text);
    let ints = |(line, body): (usize, &str), expected: &'static str| -> Result<Vec<usize>> {
        body.split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| ParseError::BadSpecLine {
                line,
                expected,
                text: body.to_string(),
            })
    };
    let first = lines.next().ok_or(ParseError::Empty)?;
    let dims = ints(first, "`m n`")?;
    let [m, n] = dims[..] else {
        return Err(ParseError::BadSpecLine {
            line: first.0,
            expected: "`m n`",
            text: first.1.to_string(),
        });
    };
    let missing = |expected| ParseError::BadSpecLine {
        line: first.0,
        expected,
        text: String::new(),
    };
    let a = ints(lines.next().ok_or_else(|| missing("a line of m integers for a"))?, "integers for a")?;
    let b = ints(lines.next().ok_or_else(|| missing("a line of m integers for b"))?, "integers for b")?;
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::TrailingSpec { line });
    }
    Ok(DownLeftSpec::new(m, n, a, b)?)
}

pub fn write_spec(spec: &DownLeftSpec) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    format!("{} {}\n{}\n{}\n", spec.m(), spec.n(), join(spec.a()), join(spec.b()))
}

/// One row per line, entries `0`/`1` separated by whitespace.
pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let mut rows = Vec::new();
    let mut width = None;
    for (line, body) in content_lines(text) {
        let row = body
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(ParseError::BadMatrix {
                    line,
                    msg: format!("entry {other:?} is not 0 or 1"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        if *width.get_or_insert(row.len()) != row.len() {
            return Err(ParseError::BadMatrix {
                line,
                msg: format!("row has {} entries, expected {}", row.len(), width.unwrap()),
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    BinaryMatrix::new(rows).map_err(|e| match e {
        ToricError::InvalidMatrix(msg) => ParseError::BadMatrix { line: 0, msg },
        other => ParseError::BadMatrix {
            line: 0,
            msg: other.to_string(),
        },
    })
}

pub fn write_matrix(mat: &BinaryMatrix) -> String {
    mat.to_string()
}

/// Names `x1..xm` for rows and `y1..yn` for columns.
pub fn matrix_vertex_names(mat: &BinaryMatrix) -> Vec<String> {
    (1..=mat.rows())
        .map(|i| format!("x{i}"))
        .chain((1..=mat.cols()).map(|j| format!("y{j}")))
        .collect()
}
