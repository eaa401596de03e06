//! Acceptance criteria A1-A9, runnable from tests and from `selftest`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::commands::{self, ExitStatus};
use crate::downleft::{self, build_downleft, normalize, DownLeftSpec};
use crate::graph::{self, Graph, GridCoord, Limits, PatternKind, VertexSet, WellCovered};
use crate::hochster::oracle_reg;
use crate::io;
use crate::sample;
use crate::toric::{self, BinaryMatrix, OracleCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Reduced corpora for a fast smoke run.
    Quick,
    /// The corpora and sizes the criteria state.
    Full,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }

    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            Profile::Quick => quick,
            Profile::Full => full,
        }
    }
}

/// Replaceable pieces, so that a deliberately wrong formula can be shown to
/// fail its criterion.
#[derive(Debug, Clone, Copy)]
pub struct Hooks {
    pub closed_form: fn(usize, usize) -> usize,
}

/// `min(m - 1, n - 1)`.
pub fn grid_regularity(m: usize, n: usize) -> usize {
    m.min(n) - 1
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            closed_form: grid_regularity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionReport {
    /// One line: `PASS A1 title (detail) [time]`.
    pub fn line(&self) -> String {
        format!(
            "{} {} {}: {} [{:.2}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn(Profile, &Hooks) -> Outcome,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: "A1",
        title: "closed form min(m-1, n-1) equals the oracle on G(m, n)",
        budget: Duration::from_secs(600),
        run: a1,
    },
    Criterion {
        id: "A2",
        title: "reg = im on random down-left graphs",
        budget: Duration::from_secs(900),
        run: a2,
    },
    Criterion {
        id: "A3",
        title: "well-covered, C5-free and vertex decomposable on random down-left graphs",
        budget: Duration::from_secs(900),
        run: a3,
    },
    Criterion {
        id: "A4",
        title: "toric regularity of the two-core 4x5 matrix is 2",
        budget: Duration::from_secs(1),
        run: a4,
    },
    Criterion {
        id: "A5",
        title: "H of the sorted 4x5 matrix has 13 edges; pipeline refuses with exit 5",
        budget: Duration::from_secs(1),
        run: a5,
    },
    Criterion {
        id: "A6",
        title: "sorted chordal bipartite matrices are gamma-free",
        budget: Duration::from_secs(120),
        run: a6,
    },
    Criterion {
        id: "A7",
        title: "induced matching lower bound and shedding recursion",
        budget: Duration::from_secs(600),
        run: a7,
    },
    Criterion {
        id: "A8",
        title: "oracle separates reg(C5) = 2 from im(C5) = 1",
        budget: Duration::from_secs(1),
        run: a8,
    },
    Criterion {
        id: "A9",
        title: "toric regularity equals the oracle on H",
        budget: Duration::from_secs(900),
        run: a9,
    },
];

pub fn criterion_ids() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Runs one criterion; `None` for an unknown id.
pub fn run_one(id: &str, profile: Profile, hooks: &Hooks) -> Option<CriterionReport> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let outcome = (c.run)(profile, hooks);
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) if elapsed <= c.budget => (true, d),
        Ok(d) => (false, format!("{d}; took {:.2}s, budget {}s", elapsed.as_secs_f64(), c.budget.as_secs())),
        Err(d) => (false, d),
    };
    Some(CriterionReport {
        id: c.id,
        title: c.title,
        passed,
        detail,
        elapsed,
    })
}

pub fn run_all(profile: Profile, hooks: &Hooks) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|c| run_one(c.id, profile, hooks).expect("known id"))
        .collect()
}

fn limits() -> Limits {
    Limits::default()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn full(m: usize, n: usize) -> DownLeftSpec {
    DownLeftSpec::full(m, n).expect("m, n >= 1")
}

fn a1(profile: Profile, hooks: &Hooks) -> Outcome {
    let max = profile.pick(3, 4);
    let l = limits();
    for m in 2..=max {
        for n in 2..=max {
            let g = build_downleft(&full(m, n));
            let r = oracle_reg(&g, &l).map_err(|e| format!("G({m},{n}): {e}"))?;
            let expected = (hooks.closed_form)(m, n);
            check(r.reg == expected, || format!("G({m},{n}): oracle {} but closed form {expected}", r.reg))?;
            check(r.verify(&g, &l).unwrap_or(false), || format!("G({m},{n}): witness does not re-verify"))?;
        }
    }
    Ok(format!("{} grids with 2 <= m, n <= {max}", (max - 1) * (max - 1)))
}

fn downleft_corpus(profile: Profile) -> Vec<DownLeftSpec> {
    let mut rng = sample::rng(0x5eed_0002);
    (0..profile.pick(25, 100))
        .map(|_| sample::random_spec(&mut rng, 5, 5, 14))
        .collect()
}

fn a2(profile: Profile, _: &Hooks) -> Outcome {
    let l = limits();
    let corpus = downleft_corpus(profile);
    let mut max_reg = 0;
    for spec in &corpus {
        let g = build_downleft(spec);
        let d = downleft::downleft_regularity(spec, &l).map_err(|e| format!("{spec}: {e}"))?;
        let im = graph::induced_matching_number(&g, &l).map_err(|e| format!("{spec}: {e}"))?;
        let o = oracle_reg(&g, &l).map_err(|e| format!("{spec}: {e}"))?;
        check(d.reg == im.size && im.size == o.reg, || {
            format!("{spec}: downleft_regularity {} im {} oracle {}", d.reg, im.size, o.reg)
        })?;
        check(graph::is_induced_matching(&g, &d.witness) && d.witness.len() == d.reg, || {
            format!("{spec}: regularity witness is not an induced matching of size {}", d.reg)
        })?;
        max_reg = max_reg.max(o.reg);
    }
    Ok(format!("{} specs, largest regularity {max_reg}", corpus.len()))
}

fn a3(profile: Profile, _: &Hooks) -> Outcome {
    let l = limits();
    let corpus = downleft_corpus(profile);
    let mut brute = 0;
    for spec in &corpus {
        let g = build_downleft(spec);
        let expected = normalize(spec).independence_number();
        match graph::is_well_covered(&g, &l).map_err(|e| format!("{spec}: {e}"))? {
            WellCovered::Uniform { size } => {
                check(size == expected, || format!("{spec}: sets of size {size}, expected {expected}"))?
            }
            WellCovered::Mixed { smaller, larger } => {
                return Err(format!("{spec}: maximal independent sets {smaller:?} and {larger:?} differ in size"))
            }
        }
        let c5 = graph::find_induced_pattern(&g, PatternKind::C5, &l).map_err(|e| format!("{spec}: {e}"))?;
        check(c5.is_none(), || format!("{spec}: induced C5 at {:?}", c5.unwrap().image))?;
        downleft::vd_certificate(spec)
            .replay(&g, &l)
            .map_err(|e| format!("{spec}: certificate does not replay: {e}"))?;
        if g.order() <= 12 {
            let v = graph::is_vertex_decomposable_bruteforce(&g, &l).map_err(|e| format!("{spec}: {e}"))?;
            check(v.decomposable, || format!("{spec}: exhaustive search finds no shedding order"))?;
            brute += 1;
        }
    }
    Ok(format!("{} specs, {brute} cross-checked exhaustively", corpus.len()))
}

/// Already doubly revlex sorted; H splits into 2x2 and 3x2 cores.
pub const TWO_CORE_MATRIX: &str = "1 0 0 0 1\n1 0 0 1 1\n0 1 0 1 1\n0 0 1 1 1\n";
/// A 4x5 chordal bipartite matrix containing an induced K3,3 minus an edge, unsorted.
pub const K33E_MATRIX: &str = "1 1 1 0 0\n1 1 1 0 0\n0 1 1 1 1\n0 1 1 1 1\n";

fn a4(_: Profile, _: &Hooks) -> Outcome {
    let v = commands::cmd_toric(TWO_CORE_MATRIX, &limits()).map_err(|e| e.message)?;
    let r = &v["result"];
    let shapes: Vec<(u64, u64)> = r["components"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|c| (c["m"].as_u64().unwrap_or(0), c["n"].as_u64().unwrap_or(0)))
        .collect();
    let isolated = r["isolated"].as_array().map_or(0, Vec::len);
    check(r["regularity"] == 2 && shapes == [(2, 2), (3, 2)] && isolated == 5, || {
        format!("regularity {}, components {shapes:?}, {isolated} isolated", r["regularity"])
    })?;
    Ok("regularity 2 from G(2,2)° + G(3,2)° and 5 isolated vertices".into())
}

fn a5(_: Profile, _: &Hooks) -> Outcome {
    let l = limits();
    let m = io::parse_matrix(K33E_MATRIX).map_err(|e| e.to_string())?;
    let sorted = toric::doubly_revlex_sort(&m).map_err(|e| e.to_string())?;
    let h = toric::build_h(&sorted);
    // generators e_{c,b} e_{a,d}, top-right vertex second
    let expected_edges = [
        ((2, 1), (1, 4)),
        ((2, 1), (1, 5)),
        ((2, 4), (1, 5)),
        ((3, 4), (1, 5)),
        ((4, 4), (1, 5)),
        ((3, 4), (2, 5)),
        ((4, 4), (2, 5)),
        ((4, 2), (3, 3)),
        ((4, 2), (3, 4)),
        ((4, 3), (3, 4)),
        ((4, 2), (3, 5)),
        ((4, 3), (3, 5)),
        ((4, 4), (3, 5)),
    ];
    let expected: BTreeSet<(GridCoord, GridCoord)> = expected_edges
        .iter()
        .map(|&((c, b), (a, d))| (GridCoord::new(a, d), GridCoord::new(c, b)))
        .collect();
    let got: BTreeSet<(GridCoord, GridCoord)> = h.coord_edges().into_iter().collect();
    check(h.graph.size() == 13 && got == expected, || {
        format!("H has {} edges; differs from the expected edge set", h.graph.size())
    })?;
    let (g, _, _) = toric::graph_of_matrix(&m);
    let e = graph::find_induced_pattern(&g, PatternKind::K33MinusE, &l).map_err(|e| e.to_string())?;
    let e = e.ok_or("no induced K3,3 minus e found")?;
    check(e.verify(&g), || "embedding does not re-verify".into())?;
    let status = commands::cmd_toric(K33E_MATRIX, &l).err().map(|e| e.status);
    check(status == Some(ExitStatus::NotK33eFree), || format!("toric ended with {status:?}"))?;
    let names = io::matrix_vertex_names(&m);
    let mut witness: Vec<&str> = e.image.iter().map(|&v| names[v].as_str()).collect();
    witness.sort_unstable();
    Ok(format!("13 edges; K3,3 minus e on {{{}}}", witness.join(",")))
}

fn a6(profile: Profile, _: &Hooks) -> Outcome {
    let l = limits();
    let mut rng = sample::rng(0x5eed_0006);
    let count = profile.pick(25, 100);
    let mut fallback = 0;
    for k in 0..count {
        let (p, q) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let s = sample::random_chordal_bipartite(&mut rng, p, q, &l).map_err(|e| e.to_string())?;
        let m = toric::biadjacency(&s.graph, &s.left, &s.right).map_err(|e| e.to_string())?;
        let sorted = toric::doubly_revlex_sort(&m).map_err(|e| format!("instance {k}: {e}"))?;
        let gamma = toric::gamma_free_check(&sorted);
        check(gamma.gamma_free, || format!("instance {k}: gamma submatrix at {:?}", gamma.witness))?;
        check(sorted.reproduce_from(&m) == sorted.entries(), || {
            format!("instance {k}: recorded permutations do not reproduce the sorted matrix")
        })?;
        if !revlex_sorted(&sorted) {
            fallback += 1;
        }
    }
    Ok(format!("{count} matrices up to 6x6, {fallback} needed the exhaustive fallback"))
}

fn revlex_sorted(m: &BinaryMatrix) -> bool {
    let rows: Vec<Vec<bool>> = (0..m.rows()).map(|r| m.row(r)).collect();
    let cols: Vec<Vec<bool>> = (0..m.cols()).map(|c| m.column(c)).collect();
    let dec = |v: &[Vec<bool>]| v.windows(2).all(|w| toric::revlex_cmp(&w[0], &w[1]).is_ge());
    dec(&rows) && dec(&cols)
}

fn a7(profile: Profile, _: &Hooks) -> Outcome {
    let l = limits();
    let mut rng = sample::rng(0x5eed_0007);
    let graphs = profile.pick(15, 50);
    for k in 0..graphs {
        let n = rng.gen_range(1..=12);
        let p = [0.2, 0.35, 0.5, 0.7][rng.gen_range(0..4)];
        let g = sample::random_graph(&mut rng, n, p);
        let im = graph::induced_matching_number(&g, &l).map_err(|e| e.to_string())?;
        let reg = oracle_reg(&g, &l).map_err(|e| e.to_string())?;
        check(im.size <= reg.reg, || format!("graph {k}: im {} > reg {}", im.size, reg.reg))?;
    }
    let wanted = profile.pick(8, 25);
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while seen.len() < wanted {
        attempts += 1;
        if attempts > 100_000 {
            return Err(format!("only {} suitable parts found", seen.len()));
        }
        let spec = sample::random_spec(&mut rng, 5, 6, 24);
        for part in normalize(&spec).parts {
            let s = part.spec;
            if s.vertex_count() > 12 || !part_has_edges(&s) || seen.contains(&s) {
                continue;
            }
            let g = build_downleft(&s);
            let x = g.vertex_at(downleft::shedding_vertex(&s).map_err(|e| e.to_string())?).expect("cell");
            // an isolated x is not a shedding vertex: N[x] = {x}
            if g.degree(x) == Ok(0) {
                continue;
            }
            let reg = |h: &Graph| oracle_reg(h, &l).map(|r| r.reg).map_err(|e| e.to_string());
            let del = g.remove_vertex(x).map_err(|e| e.to_string())?;
            let nbhd = graph::closed_neighborhood(&g, x).map_err(|e| e.to_string())?;
            let rest: VertexSet = g.vertices().iter().copied().filter(|v| !nbhd.contains(v)).collect();
            let link = graph::induced_subgraph(&g, &rest).map_err(|e| e.to_string())?;
            let (r, rd, rl) = (reg(&g)?, reg(&del)?, reg(&link)?);
            check(r == rd.max(rl + 1), || format!("{s}: reg {r}, reg(G\\x) {rd}, reg(G\\N[x]) {rl}"))?;
            seen.insert(s);
            if seen.len() == wanted {
                break;
            }
        }
    }
    Ok(format!("{graphs} random graphs; recursion on {wanted} parts"))
}

fn part_has_edges(s: &DownLeftSpec) -> bool {
    build_downleft(s).size() > 0
}

fn a8(_: Profile, _: &Hooks) -> Outcome {
    let l = limits();
    let c5 = graph::cycle_graph(5);
    let reg = oracle_reg(&c5, &l).map_err(|e| e.to_string())?;
    let im = graph::induced_matching_number(&c5, &l).map_err(|e| e.to_string())?;
    check(reg.reg == 2 && im.size == 1, || format!("reg {} im {}", reg.reg, im.size))?;
    Ok("reg 2, im 1".into())
}

fn a9(profile: Profile, _: &Hooks) -> Outcome {
    let l = limits();
    let mut rng = sample::rng(0x5eed_0009);
    let count = profile.pick(8, 25);
    let mut total = 0;
    for k in 0..count {
        let s = sample::random_k33e_free_chordal_bipartite(&mut rng, 5, 5, 14, &l).map_err(|e| e.to_string())?;
        let r = toric::toric_regularity(&s.graph, &s.left, &s.right, &l, OracleCheck::WhenSmall)
            .map_err(|e| format!("instance {k}: {e}"))?;
        let o = r.oracle_reg.ok_or_else(|| format!("instance {k}: H exceeds the oracle cap"))?;
        check(o == r.regularity, || format!("instance {k}: formula {} oracle {o}", r.regularity))?;
        check(r.decomposition.verify(&r.h), || format!("instance {k}: decomposition does not re-verify"))?;
        total += r.regularity;
    }
    Ok(format!("{count} graphs, regularities summing to {total}"))
}
