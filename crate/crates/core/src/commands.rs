//! The command surface behind the `downleft` binary. Each command takes the
//! input text and returns a JSON report or a typed failure with an exit code.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::acceptance::{self, Hooks, Profile};
use crate::downleft::{self, build_downleft, DownLeftSpec, SpecError};
use crate::graph::{self, Bipartiteness, ChordalBipartite, Edge, Graph, GraphError, Limits, PatternKind, VertexId, WellCovered};
use crate::hochster::{self, HochsterError};
use crate::io::{self, ParseError};
use crate::toric::{self, BinaryMatrix, OracleCheck, ToricError};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExitStatus {
    Ok = 0,
    SelftestFailed = 1,
    InvalidInput = 2,
    CapExceeded = 3,
    NotChordalBipartite = 4,
    NotK33eFree = 5,
    PipelineFailure = 6,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandError {
    pub status: ExitStatus,
    pub message: String,
    /// Refusal certificate, when the command produced one.
    pub report: Option<Value>,
}

impl CommandError {
    fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        CommandError {
            status,
            message: message.into(),
            report: None,
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        CommandError::new(ExitStatus::InvalidInput, message)
    }
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CommandError {}

impl From<ParseError> for CommandError {
    fn from(e: ParseError) -> Self {
        CommandError::invalid(e.to_string())
    }
}

impl From<SpecError> for CommandError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Graph(g) => g.into(),
            other => CommandError::invalid(other.to_string()),
        }
    }
}

impl From<GraphError> for CommandError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge { .. } => CommandError::new(ExitStatus::CapExceeded, e.to_string()),
            other => CommandError::invalid(other.to_string()),
        }
    }
}

impl From<HochsterError> for CommandError {
    fn from(e: HochsterError) -> Self {
        if e.is_cap() {
            CommandError::new(ExitStatus::CapExceeded, format!("{e}; raise the limit with --cap"))
        } else {
            CommandError::new(ExitStatus::PipelineFailure, e.to_string())
        }
    }
}

pub type CmdResult = Result<Value, CommandError>;

/// `sha256:<hex>` of the input bytes.
pub fn input_digest(input: &str) -> String {
    let hash = Sha256::digest(input.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn envelope(command: &str, input: &str, result: Value) -> Value {
    json!({
        "command": command,
        "input_digest": input_digest(input),
        "result": result,
    })
}

/// A graph together with a display name for each vertex id.
struct Named {
    graph: Graph,
    names: BTreeMap<VertexId, String>,
}

impl Named {
    fn from_graph(graph: Graph) -> Self {
        let names = graph
            .vertices()
            .iter()
            .map(|&v| (v, graph.label(v).map_or_else(|| v.to_string(), io::grid_token)))
            .collect();
        Named { graph, names }
    }

    fn from_parsed(parsed: io::NamedGraph) -> Self {
        let names = parsed.names.into_iter().enumerate().collect();
        Named {
            graph: parsed.graph,
            names,
        }
    }

    fn name(&self, v: VertexId) -> Value {
        Value::String(self.names[&v].clone())
    }

    fn set<'a>(&self, vs: impl IntoIterator<Item = &'a VertexId>) -> Value {
        Value::Array(vs.into_iter().map(|&v| self.name(v)).collect())
    }

    fn edges(&self, es: &[Edge]) -> Value {
        Value::Array(es.iter().map(|&(u, v)| json!([self.name(u), self.name(v)])).collect())
    }
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

/// The edge-list file of `G(m, n, a, b)`.
pub fn cmd_gen(spec: &DownLeftSpec) -> String {
    io::write_graph(&build_downleft(spec))
}

/// Spec from flags; missing `a` and `b` default to the full grid.
pub fn spec_from_flags(m: usize, n: usize, a: Option<Vec<usize>>, b: Option<Vec<usize>>) -> Result<DownLeftSpec, CommandError> {
    let a = a.unwrap_or_else(|| vec![0; m]);
    let b = b.unwrap_or_else(|| vec![n + 1; m]);
    Ok(DownLeftSpec::new(m, n, a, b)?)
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalyzeFlags {
    pub well_covered: bool,
    pub c5: bool,
    pub vd: bool,
    pub im: bool,
    pub reg: bool,
    /// Compute regularity with the Hochster oracle.
    pub oracle: bool,
}

impl AnalyzeFlags {
    fn none_selected(&self) -> bool {
        !(self.well_covered || self.c5 || self.vd || self.im || self.reg)
    }
}

/// Input of `analyze`: a spec file or an edge-list file.
pub fn cmd_analyze(input: &str, flags: AnalyzeFlags, limits: &Limits) -> CmdResult {
    let (named, spec) = if io::looks_like_spec(input) {
        let spec = io::parse_spec(input)?;
        (Named::from_graph(build_downleft(&spec)), Some(spec))
    } else {
        (Named::from_parsed(io::parse_graph(input)?), None)
    };
    let mut f = flags;
    if f.none_selected() {
        f = AnalyzeFlags {
            well_covered: true,
            c5: true,
            vd: true,
            im: true,
            reg: spec.is_some() || flags.oracle,
            oracle: flags.oracle,
        };
    }
    if f.reg && spec.is_none() && !f.oracle {
        return Err(CommandError::invalid(
            "--reg on a graph that is not given as a down-left spec requires --oracle",
        ));
    }
    let g = &named.graph;
    let mut out = serde_json::Map::new();
    out.insert("vertices".into(), json!(g.order()));
    out.insert("edges".into(), json!(g.size()));
    if let Some(s) = &spec {
        out.insert("spec".into(), json!({"m": s.m(), "n": s.n(), "a": s.a(), "b": s.b()}));
    }
    if f.well_covered {
        let (holds, cert) = match graph::is_well_covered(g, limits)? {
            WellCovered::Uniform { size } => (true, json!({"size": size})),
            WellCovered::Mixed { smaller, larger } => {
                (false, json!({"smaller": named.set(&smaller), "larger": named.set(&larger)}))
            }
        };
        out.insert("well_covered".into(), json!(holds));
        out.insert("well_covered_certificate".into(), cert);
    }
    if f.c5 {
        let found = graph::find_induced_pattern(g, PatternKind::C5, limits)?;
        out.insert("c5_free".into(), json!(found.is_none()));
        if let Some(e) = found {
            debug_assert!(e.verify(g));
            out.insert("c5_witness".into(), named.set(&e.image));
        }
    }
    if f.vd {
        let (decomposable, steps) = match &spec {
            Some(s) => {
                let cert = downleft::vd_certificate(s);
                cert.replay(g, limits).map_err(|e| match e {
                    graph::ReplayError::Graph(ge) => CommandError::from(ge),
                    other => CommandError::new(ExitStatus::PipelineFailure, other.to_string()),
                })?;
                (true, Some(cert))
            }
            None => {
                let v = graph::is_vertex_decomposable_bruteforce(g, limits)?;
                (v.decomposable, v.sequence)
            }
        };
        out.insert("vd".into(), json!(decomposable));
        if let Some(seq) = steps {
            let steps: Vec<Value> = seq
                .steps
                .iter()
                .map(|s| json!({"path": s.path, "vertex": named.name(s.vertex)}))
                .collect();
            out.insert("vd_certificate".into(), Value::Array(steps));
        }
    }
    if f.im {
        let m = graph::induced_matching_number(g, limits)?;
        out.insert("im".into(), json!(m.size));
        out.insert("im_witness".into(), named.edges(&m.edges));
    }
    if f.reg {
        if let Some(s) = &spec {
            let r = downleft::downleft_regularity(s, limits)?;
            out.insert("reg".into(), json!(r.reg));
            out.insert("reg_witness".into(), named.edges(&r.witness));
            out.insert("reg_parts".into(), serde_json::to_value(&r.parts).expect("serializable"));
        }
        if f.oracle {
            let r = hochster::oracle_reg(g, limits)?;
            out.insert("oracle_reg".into(), json!(r.reg));
            out.insert("oracle_witness".into(), regularity_witness(&named, &r));
            match out.get("reg").and_then(Value::as_u64) {
                Some(closed) => {
                    out.insert("agree".into(), json!(closed == r.reg as u64));
                }
                None => {
                    out.insert("reg".into(), json!(r.reg));
                }
            }
        }
    }
    if out.get("agree") == Some(&Value::Bool(false)) {
        return Err(CommandError {
            status: ExitStatus::PipelineFailure,
            message: "closed-form regularity disagrees with the oracle".into(),
            report: Some(envelope("analyze", input, Value::Object(out))),
        });
    }
    Ok(envelope("analyze", input, Value::Object(out)))
}

fn regularity_witness(named: &Named, r: &hochster::RegularityResult) -> Value {
    match &r.witness {
        Some(w) => json!({"vertices": named.set(&w.vertices), "t": w.degree, "rank": w.rank}),
        None => Value::Null,
    }
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleFlags {
    pub betti: bool,
    pub reg: bool,
    /// Overrides the vertex cap of the oracle.
    pub cap: Option<usize>,
}

pub fn cmd_oracle(input: &str, flags: OracleFlags, limits: &Limits) -> CmdResult {
    let named = if io::looks_like_spec(input) {
        Named::from_graph(build_downleft(&io::parse_spec(input)?))
    } else {
        Named::from_parsed(io::parse_graph(input)?)
    };
    let mut limits = limits.clone();
    if let Some(cap) = flags.cap {
        limits.hochster_vertices = cap;
    }
    let (betti, reg) = if flags.betti || flags.reg {
        (flags.betti, flags.reg)
    } else {
        (true, true)
    };
    let g = &named.graph;
    let mut out = serde_json::Map::new();
    out.insert("vertices".into(), json!(g.order()));
    if betti {
        let table = hochster::graded_betti(g, &limits)?;
        out.insert("betti".into(), serde_json::to_value(&table).expect("serializable"));
    }
    if reg {
        let r = hochster::oracle_reg(g, &limits)?;
        if !r.verify(g, &limits)? {
            return Err(CommandError::new(ExitStatus::PipelineFailure, "regularity witness failed to re-verify"));
        }
        out.insert("reg".into(), json!(r.reg));
        out.insert("witness".into(), regularity_witness(&named, &r));
    }
    Ok(envelope("oracle", input, Value::Object(out)))
}

// ---------------------------------------------------------------------------
// toric
// ---------------------------------------------------------------------------

/// Input of `toric`: an edge-list file of a bipartite graph or a 0/1 matrix.
pub fn cmd_toric(input: &str, limits: &Limits) -> CmdResult {
    let (named, left, right) = if io::looks_like_graph(input) {
        let parsed = Named::from_parsed(io::parse_graph(input)?);
        match graph::bipartition(&parsed.graph) {
            Bipartiteness::Bipartite { left, right } => (parsed, left, right),
            Bipartiteness::OddCycle { cycle } => {
                let report = json!({
                    "chordal_bipartite": false,
                    "witness": {"kind": "odd_cycle", "vertices": parsed.set(&cycle)},
                });
                return Err(CommandError {
                    status: ExitStatus::NotChordalBipartite,
                    message: "graph is not bipartite".into(),
                    report: Some(envelope("toric", input, report)),
                });
            }
        }
    } else {
        let mat = io::parse_matrix(input)?;
        let names = io::matrix_vertex_names(&mat);
        let (g, left, right) = toric::graph_of_matrix(&mat);
        let named = Named {
            graph: g,
            names: names.into_iter().enumerate().collect(),
        };
        (named, left, right)
    };
    let refuse = |status, message: String, report: Value| CommandError {
        status,
        message,
        report: Some(envelope("toric", input, report)),
    };
    let report = match toric::toric_regularity(&named.graph, &left, &right, limits, OracleCheck::WhenSmall) {
        Ok(r) => r,
        Err(ToricError::NotChordalBipartite(cert)) => {
            let (kind, vertices) = match &cert {
                ChordalBipartite::OddCycle { cycle } => ("odd_cycle", cycle.clone()),
                ChordalBipartite::LongInducedCycle { embedding } => ("induced_cycle", embedding.image.clone()),
                ChordalBipartite::Yes { .. } => unreachable!("refusal carries a witness"),
            };
            return Err(refuse(
                ExitStatus::NotChordalBipartite,
                format!("graph is not chordal bipartite ({kind} of length {})", vertices.len()),
                json!({"chordal_bipartite": false, "witness": {"kind": kind, "vertices": named.set(&vertices)}}),
            ));
        }
        Err(ToricError::NotK33eFree(e)) => {
            return Err(refuse(
                ExitStatus::NotK33eFree,
                "graph contains an induced K3,3 minus an edge".into(),
                json!({"chordal_bipartite": true, "k33e_free": false, "witness": named.set(&e.image)}),
            ));
        }
        Err(ToricError::Graph(e)) => return Err(e.into()),
        Err(ToricError::Hochster(e)) => return Err(e.into()),
        Err(e @ (ToricError::NotBipartite(_) | ToricError::InvalidBipartition(_) | ToricError::InvalidMatrix(_))) => {
            return Err(CommandError::invalid(e.to_string()))
        }
        Err(e) => return Err(CommandError::new(ExitStatus::PipelineFailure, e.to_string())),
    };
    let order = |ids: &[VertexId], perm: &[usize]| -> Value {
        Value::Array(perm.iter().map(|&p| named.name(ids[p])).collect())
    };
    let coords = |vs: &[VertexId]| -> Value {
        Value::Array(
            vs.iter()
                .map(|&v| {
                    let c = report.h.coord(v);
                    json!([c.row, c.col])
                })
                .collect(),
        )
    };
    let h_edges: Vec<Value> = report
        .h
        .coord_edges()
        .into_iter()
        .map(|(p, q)| json!([[p.row, p.col], [q.row, q.col]]))
        .collect();
    let components: Vec<Value> = report
        .decomposition
        .parts
        .iter()
        .map(|p| json!({"m": p.m, "n": p.n, "vertices": coords(&p.vertices)}))
        .collect();
    let mut out = json!({
        "chordal_bipartite": true,
        "k33e_free": true,
        "matrix": BinaryMatrix::to_strings(&report.matrix),
        "sorted_matrix": report.sorted.to_strings(),
        "row_order": order(&report.left, report.sorted.row_perm()),
        "col_order": order(&report.right, report.sorted.col_perm()),
        "gamma_free": report.gamma.gamma_free,
        "h_vertices": report.h.graph.order(),
        "h_edges": h_edges,
        "components": components,
        "isolated": coords(&report.decomposition.isolated),
        "regularity": report.regularity,
    });
    if let (Some(o), Some(a)) = (report.oracle_reg, report.agree()) {
        out["oracle_reg"] = json!(o);
        out["agree"] = json!(a);
    }
    let certified = report.gamma.gamma_free && report.decomposition.verify(&report.h);
    if !certified || report.agree() == Some(false) {
        return Err(refuse(
            ExitStatus::PipelineFailure,
            "pipeline certificate failed to verify".into(),
            out,
        ));
    }
    Ok(envelope("toric", input, out))
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

pub fn cmd_selftest(profile: Profile) -> CmdResult {
    cmd_selftest_with(profile, &Hooks::default())
}

/// Runs the acceptance suite; fails with the first failing criterion named.
pub fn cmd_selftest_with(profile: Profile, hooks: &Hooks) -> CmdResult {
    let reports = acceptance::run_all(profile, hooks);
    let value = json!({
        "profile": profile.name(),
        "criteria": reports.iter().map(|r| json!({"id": r.id, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>(),
        "passed": reports.iter().all(|r| r.passed),
    });
    let report = envelope("selftest", profile.name(), value);
    match reports.iter().find(|r| !r.passed) {
        Some(r) => Err(CommandError {
            status: ExitStatus::SelftestFailed,
            message: format!("criterion {} failed: {}", r.id, r.detail),
            report: Some(report),
        }),
        None => Ok(report),
    }
}

/// Pretty JSON with a trailing newline; keys come out sorted.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const C5: &str = "vertices a b c d e\na b\nb c\nc d\nd e\ne a\n";

    fn result(v: &Value) -> &Value {
        &v["result"]
    }

    #[test]
    fn gen_counts() {
        let text = cmd_gen(&spec_from_flags(3, 4, None, None).unwrap());
        let g = io::parse_graph(&text).unwrap();
        assert_eq!((g.graph.order(), g.graph.size()), (12, 18));
        let err = spec_from_flags(2, 3, Some(vec![1, 1]), None).unwrap_err();
        assert_eq!(err.status, ExitStatus::InvalidInput);
        assert!(err.message.contains("a_1 = 0"));
    }

    #[test]
    fn analyze_grid_spec() {
        let v = cmd_analyze("3 4\n0 0 0\n5 5 5\n", AnalyzeFlags::default(), &Limits::default()).unwrap();
        let r = result(&v);
        assert_eq!(r["well_covered"], json!(true));
        assert_eq!(r["c5_free"], json!(true));
        assert_eq!(r["vd"], json!(true));
        assert_eq!(r["im"], json!(2));
        assert_eq!(r["reg"], json!(2));
    }

    #[test]
    fn analyze_generated_graph_file_with_oracle() {
        let text = cmd_gen(&DownLeftSpec::full(3, 4).unwrap());
        let flags = AnalyzeFlags {
            oracle: true,
            ..Default::default()
        };
        let r = cmd_analyze(&text, flags, &Limits::default()).unwrap();
        assert_eq!(result(&r)["reg"], json!(2));
    }

    #[test]
    fn analyze_c5() {
        let v = cmd_analyze(C5, AnalyzeFlags::default(), &Limits::default()).unwrap();
        let r = result(&v);
        assert_eq!(r["well_covered"], json!(true));
        assert_eq!(r["c5_free"], json!(false));
        assert_eq!(r["vd"], json!(true));
        assert_eq!(r["im"], json!(1));
        assert!(r.get("reg").is_none());
        let reg_only = AnalyzeFlags {
            reg: true,
            ..Default::default()
        };
        assert_eq!(cmd_analyze(C5, reg_only, &Limits::default()).unwrap_err().status, ExitStatus::InvalidInput);
        assert_eq!(cmd_analyze("", AnalyzeFlags::default(), &Limits::default()).unwrap_err().status, ExitStatus::InvalidInput);
    }

    #[test]
    fn oracle_examples() {
        let l = Limits::default();
        let reg = OracleFlags {
            reg: true,
            ..Default::default()
        };
        let v = cmd_oracle(C5, reg, &l).unwrap();
        assert_eq!(result(&v)["reg"], json!(2));
        assert_eq!(result(&v)["witness"]["t"], json!(1));
        assert_eq!(result(&v)["witness"]["vertices"], json!(["a", "b", "c", "d", "e"]));
        let edge = cmd_oracle("vertices u v\nu v\n", reg, &l).unwrap();
        assert_eq!(result(&edge)["reg"], json!(1));
        let betti = OracleFlags {
            betti: true,
            ..Default::default()
        };
        let p3 = cmd_oracle("vertices x y z\nx y\ny z\n", betti, &l).unwrap();
        assert_eq!(
            result(&p3)["betti"],
            json!([{"i": 0, "j": 0, "beta": 1}, {"i": 1, "j": 2, "beta": 2}, {"i": 2, "j": 3, "beta": 1}])
        );
        let capped = OracleFlags {
            reg: true,
            cap: Some(3),
            ..Default::default()
        };
        let e = cmd_oracle(C5, capped, &l).unwrap_err();
        assert_eq!(e.status, ExitStatus::CapExceeded);
        assert!(e.message.contains("--cap"));
    }

    #[test]
    fn toric_examples() {
        let l = Limits::default();
        let v = cmd_toric("1 0 0 0 1\n1 0 0 1 1\n0 1 0 1 1\n0 0 1 1 1\n", &l).unwrap();
        let r = result(&v);
        assert_eq!(r["regularity"], json!(2));
        assert_eq!(r["components"][0]["m"], json!(2));
        assert_eq!(r["components"][1]["m"], json!(3));
        assert_eq!(r["isolated"].as_array().unwrap().len(), 5);
        assert_eq!(r["agree"], json!(true));

        let e = cmd_toric("1 1 1 0 0\n1 1 1 0 0\n0 1 1 1 1\n0 1 1 1 1\n", &l).unwrap_err();
        assert_eq!(e.status, ExitStatus::NotK33eFree);
        assert_eq!(
            e.report.unwrap()["result"]["witness"],
            json!(["x1", "x2", "x3", "y1", "y2", "y3"])
        );

        let c6 = "vertices 1 2 3 4 5 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
        assert_eq!(cmd_toric(c6, &l).unwrap_err().status, ExitStatus::NotChordalBipartite);
        assert_eq!(cmd_toric(C5, &l).unwrap_err().status, ExitStatus::NotChordalBipartite);

        let c4 = cmd_toric("vertices a b c d\na b\nb c\nc d\nd a\n", &l).unwrap();
        assert_eq!(result(&c4)["regularity"], json!(1));
    }

    #[test]
    fn reports_are_deterministic() {
        let l = Limits::default();
        let a = render(&cmd_analyze(C5, AnalyzeFlags::default(), &l).unwrap());
        let b = render(&cmd_analyze(C5, AnalyzeFlags::default(), &l).unwrap());
        assert_eq!(a, b);
        assert!(a.find("\"c5_free\"").unwrap() < a.find("\"well_covered\"").unwrap());
    }
}
