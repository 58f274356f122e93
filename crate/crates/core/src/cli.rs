//! The `gctk` command line: builds complexes, runs the checks and prints a
//! JSON report (or a plain summary with `--pretty`).
//!
//! Exit codes: 0 when every requested check passes, 1 on a failed check,
//! 2 on bad input.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::anti_rips::{self, PointSet};
use crate::complex::{format_face, FaceMask, SimplicialComplex};
use crate::dt;
use crate::error::Error;
use crate::graph::{disjoint_complete_bipartite, grid_graph, DirectedGraph, UndirectedGraph};
use crate::homology::{betti, connectivity_or_empty, homological_connectivity, matches, BettiVector};
use crate::homotopy::HomotopyType;
use crate::independence::{self, CertificateStrength, GeneratingFaces};
use crate::label::Label;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "gctk", version, about = "Directed-tree, independence and anti-Rips complexes with a Z2 homology oracle")]
pub struct Cli {
    /// Human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads for independent verification instances.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Include wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complex of directed trees of an edge-list digraph.
    Dt(DtArgs),
    /// Independence complex of a graph or a built-in family.
    Ind(IndArgs),
    /// Anti-Rips complex of a point set.
    Ar(ArArgs),
    /// Replays the reference tables and reports each row.
    Regress,
}

#[derive(Args, Debug)]
pub struct DtArgs {
    /// Edge-list file, one `x y` edge per line.
    pub file: String,
    /// Comma-separated root set; builds DT_R instead of DT.
    #[arg(long, value_delimiter = ',')]
    pub roots: Option<Vec<String>>,
    /// Emit the recursive shelling order and check it.
    #[arg(long)]
    pub shelling: bool,
    /// Compare predictions with the homology oracle.
    #[arg(long)]
    pub verify: bool,
    /// Reduced Euler characteristic from the in-degree product.
    #[arg(long)]
    pub euler: bool,
}

#[derive(Args, Debug)]
pub struct IndArgs {
    /// Edge-list file; `vertex v` lines declare isolated vertices.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub file: Option<String>,
    /// Built-in graph: L:n:k, C:n:k, grid:a:b or KDD:m:d.
    #[arg(long)]
    pub family: Option<String>,
    /// Fold down and report each step.
    #[arg(long)]
    pub fold: bool,
    /// Generating faces via u=<vertex>, K=<a,b,...> or auto.
    #[arg(long)]
    pub genfaces: Option<String>,
    /// Max-degree connectivity bound against homological connectivity.
    #[arg(long)]
    pub bound: bool,
    /// Certify generating faces and compare predictions with the oracle.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct ArArgs {
    /// Point-set JSON file.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub file: Option<String>,
    /// Built-in point set: grid:a:b.
    #[arg(long)]
    pub family: Option<String>,
    /// Distance threshold.
    #[arg(long)]
    pub r: Option<String>,
    /// Homotopy type from the line recursion.
    #[arg(long)]
    pub line_homotopy: bool,
    /// All distinct complexes as r grows.
    #[arg(long)]
    pub sweep: bool,
    /// Grid connectivity bound (automatic for grid points at r = 1).
    #[arg(long)]
    pub bound: bool,
    /// Compare predictions with the oracle.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub target: String,
    pub certificate_strength: CertificateStrength,
    pub collapse_steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub homotopy: Option<HomotopyType>,
    pub betti: Option<BettiVector>,
    pub certificates: Vec<CertificateEntry>,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Report {
    fn new(command: Vec<String>, canonical_input: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            inputs_digest: digest(canonical_input),
            homotopy: None,
            betti: None,
            certificates: Vec::new(),
            checks: Vec::new(),
            data: Map::new(),
            wall_time_ms: None,
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn put(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "inputs: sha256:{}", self.inputs_digest);
        if let Some(h) = &self.homotopy {
            let _ = writeln!(out, "homotopy: {h}");
        }
        if let Some(b) = &self.betti {
            if b.empty {
                let _ = writeln!(out, "betti: empty complex");
            } else {
                let _ = writeln!(out, "betti: {:?}", b.trimmed());
            }
        }
        for c in &self.certificates {
            let strength = serde_json::to_value(c.certificate_strength).expect("serializable");
            let _ = writeln!(out, "certificate: {} {} ({} collapses)", c.target, strength.as_str().unwrap_or(""), c.collapse_steps);
        }
        for (k, v) in &self.data {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let _ = writeln!(out, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
            }
        }
        if let Some(ms) = self.wall_time_ms {
            let _ = writeln!(out, "wall time: {ms:.3} ms");
        }
        out
    }
}

fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Failure modes of one invocation.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn message(&self) -> String {
        match self {
            CliError::Input(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
        }
    }

    /// Checks that found a contradiction are verification failures; the rest is bad input.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(Error::EquivalenceViolation(_) | Error::FactViolation(_) | Error::NotAcyclic(_)) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What to print and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Dt(a) => cmd_dt(a, echo),
        Command::Ind(a) => cmd_ind(a, echo),
        Command::Ar(a) => cmd_ar(a, echo),
        Command::Regress => cmd_regress(cli.jobs, echo),
    };
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let code = if report.all_passed() { 0 } else { 1 };
            let stdout = if cli.pretty {
                report.to_pretty()
            } else {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let msg = e.message();
            let body = json!({ "schema_version": SCHEMA_VERSION, "error": msg });
            let stdout = if cli.pretty { format!("error: {msg}\n") } else { format!("{body:#}\n") };
            Outcome { code: e.exit_code(), stdout, stderr: format!("gctk: {msg}\n") }
        }
    }
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn face_names(c: &SimplicialComplex) -> Vec<Vec<String>> {
    c.maximal_face_labels().into_iter().map(|f| f.into_iter().map(|l| l.to_string()).collect()).collect()
}

fn add_match(report: &mut Report, name: &str, c: &SimplicialComplex, h: &HomotopyType) -> CliResult<()> {
    let m = matches(c, h)?;
    report.check(name, m.matches, m.detail);
    Ok(())
}

fn cmd_dt(a: &DtArgs, echo: Vec<String>) -> CliResult<Report> {
    let g = DirectedGraph::parse(&read_file(&a.file)?)?;
    let roots: Option<Vec<String>> = a.roots.clone();
    let mut canonical = g.to_edge_list();
    if let Some(r) = &roots {
        let mut sorted: Vec<Label> = r.iter().map(Label::from).collect();
        sorted.sort();
        let _ = write!(canonical, "roots {}", sorted.iter().map(Label::as_str).collect::<Vec<_>>().join(","));
    }
    let mut report = Report::new(echo, &canonical);
    let root_refs: Option<Vec<&str>> = roots.as_ref().map(|r| r.iter().map(String::as_str).collect());

    let complex = match &root_refs {
        Some(r) => dt::dt_rooted(&g, r)?,
        None => dt::dt(&g)?,
    };
    let acyclic = g.is_acyclic();
    report.put("vertices", g.vertex_count());
    report.put("edges", g.edge_count());
    report.put("acyclic", acyclic);
    report.put("maximal_faces", face_names(&complex));
    report.put("reduced_euler", complex.reduced_euler()?);
    report.betti = Some(betti(&complex)?);

    if a.euler {
        let predicted = dt::euler_dt_dag(&g)?;
        report.put("euler_formula", predicted);
        if root_refs.is_none() {
            let actual = complex.reduced_euler()?;
            report.check("euler", predicted == actual, format!("formula {predicted}, face count {actual}"));
        }
    }

    let sources: Vec<String> = g.sources().iter().map(|l| l.to_string()).collect();
    let rooted_at_sources = root_refs.as_ref().is_some_and(|r| {
        let mut given: Vec<&str> = r.clone();
        given.sort_unstable();
        let mut s: Vec<&str> = sources.iter().map(String::as_str).collect();
        s.sort_unstable();
        given == s
    });

    if a.shelling {
        let shell_roots: Vec<&str> = match &root_refs {
            Some(r) => r.clone(),
            None if acyclic => sources.iter().map(String::as_str).collect(),
            None => {
                return Err(CliError::Input("--shelling needs --roots when the graph has a directed cycle".into()))
            }
        };
        let order = dt::shelling_order_dt(&g, &shell_roots)?;
        let masks: Vec<FaceMask> =
            order.iter().map(|&f| dt::forest_mask(&complex, &g, f)).collect::<crate::Result<_>>()?;
        report.put("shelling_order", order.iter().map(|f| f.names(&g)).collect::<Vec<_>>());
        let verdict = complex.is_shelling(&masks)?;
        report.check("shelling", verdict.is_shelling(), format!("{verdict:?}"));
    }

    if acyclic && (root_refs.is_none() || rooted_at_sources) {
        let h = dt::homotopy_dt_dag(&g)?;
        if a.verify {
            add_match(&mut report, "homotopy", &complex, &h)?;
        }
        if a.verify && g.edge_count() > 0 {
            let c = dt::dag_contractibility_report(&g);
            match c {
                Ok(r) => {
                    report.put("contractibility", r);
                    report.check("contractibility statements agree", true, format!("contractible: {}", r.zero_product));
                }
                Err(Error::EquivalenceViolation(d)) => report.check("contractibility statements agree", false, d),
                Err(e) => return Err(e.into()),
            }
        }
        report.homotopy = Some(h);
    } else if a.verify && !acyclic && root_refs.is_none() {
        report.put("note", "no closed-form prediction for digraphs with cycles; Betti numbers only");
    }
    Ok(report)
}

fn parse_family_nk(spec: &str) -> CliResult<(String, usize, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Input(format!("bad family `{spec}`; expected NAME:a:b"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a = parts[1].parse().map_err(|_| bad())?;
    let b = parts[2].parse().map_err(|_| bad())?;
    Ok((parts[0].to_string(), a, b))
}

fn family_graph(spec: &str) -> CliResult<UndirectedGraph> {
    let (name, a, b) = parse_family_nk(spec)?;
    Ok(match name.as_str() {
        "L" => independence::l_graph(a, b)?,
        "C" => independence::c_graph(a, b)?,
        "grid" => grid_graph(a, b)?,
        "KDD" => disjoint_complete_bipartite(a, b)?,
        other => return Err(CliError::Input(format!("unknown family `{other}`"))),
    })
}

enum GenSpec {
    Vertex(String),
    Clique(Vec<String>),
    Auto,
}

fn parse_genfaces(spec: &str) -> CliResult<GenSpec> {
    if spec == "auto" {
        return Ok(GenSpec::Auto);
    }
    match spec.split_once('=') {
        Some(("u", v)) if !v.is_empty() => Ok(GenSpec::Vertex(v.to_string())),
        Some(("K", k)) if !k.is_empty() => Ok(GenSpec::Clique(k.split(',').map(str::to_string).collect())),
        _ => Err(CliError::Input(format!("bad --genfaces `{spec}`; expected u=<v>, K=<a,b,...> or auto"))),
    }
}

fn cmd_ind(a: &IndArgs, echo: Vec<String>) -> CliResult<Report> {
    let g = match (&a.file, &a.family) {
        (Some(f), None) => UndirectedGraph::parse(&read_file(f)?)?,
        (None, Some(spec)) => family_graph(spec)?,
        _ => return Err(CliError::Input("give either a file or --family".into())),
    };
    let mut report = Report::new(echo, &g.to_edge_list());
    let complex = independence::ind(&g)?;
    let b = betti(&complex)?;
    report.put("vertices", g.vertex_count());
    report.put("edges", g.edge_count());
    report.put("maximal_faces", face_names(&complex).len());
    report.betti = Some(b.clone());

    if a.fold {
        let (reduced, steps) = independence::fold_reduce(&g)?;
        report.put("fold_steps", &steps);
        report.put("folded_edges", reduced.edges().iter().map(|(x, y)| format!("{x}-{y}")).collect::<Vec<_>>());
        let after = betti(&independence::ind(&reduced)?)?;
        report.check("fold preserves betti", after == b, format!("{:?} -> {:?}", b.trimmed(), after.trimmed()));
    }

    let family_default = a.family.as_deref().and_then(|s| parse_family_nk(s).ok()).filter(|(n, _, _)| n == "L" || n == "C");
    let generated: Option<(HomotopyType, GeneratingFaces)> = match a.genfaces.as_deref().map(parse_genfaces).transpose()? {
        Some(GenSpec::Vertex(u)) => Some(independence::gen_faces_complete_nbhd(&g, &u)?),
        Some(GenSpec::Clique(k)) => {
            let (_, base) = independence::recursive_gen_faces(&g.without(&k)?)?;
            Some(independence::gen_faces_clique(&g, &k, &base)?)
        }
        Some(GenSpec::Auto) => Some(independence::recursive_gen_faces(&g)?),
        None => match family_default {
            Some((name, n, k)) if name == "L" => Some(independence::gen_faces_l(n, k)?),
            Some((_, n, k)) => Some(independence::gen_faces_c(n, k)?),
            None => None,
        },
    };

    let mut prediction = None;
    if let Some((h, gf)) = generated {
        report.put("generating_faces", &gf.faces);
        report.put("generating_faces_table", gf.table());
        if a.verify {
            match independence::verify_generating_faces(&complex, &gf.faces) {
                Ok(cert) => {
                    let weak = cert.strength == CertificateStrength::Z2Acyclic;
                    report.check(
                        "generating faces",
                        true,
                        if weak { "residual is Z2-acyclic; collapse got stuck" } else { "residual collapses to a point" },
                    );
                    report.certificates.push(CertificateEntry {
                        target: "generating_faces".into(),
                        certificate_strength: cert.strength,
                        collapse_steps: cert.collapse_steps,
                    });
                }
                Err(e @ (Error::NotAcyclic(_) | Error::NotMaximal(_))) => report.check("generating faces", false, e.to_string()),
                Err(e) => return Err(e.into()),
            }
        }
        prediction = Some(h);
    } else if g.is_forest() && g.vertex_count() > 0 {
        prediction = Some(independence::forest_homotopy(&g)?);
    }
    if let Some(h) = &prediction {
        if a.verify {
            add_match(&mut report, "homotopy", &complex, h)?;
        }
    }
    report.homotopy = prediction;

    if a.bound {
        let bound = independence::connectivity_bound_maxdeg(&g)?;
        let conn = homological_connectivity(&complex)?;
        report.put("connectivity_bound", bound);
        report.put("homological_connectivity", conn);
        report.check("connectivity bound", conn >= bound, format!("bound {bound}, homological connectivity {conn}"));
    }
    Ok(report)
}

fn cmd_ar(a: &ArArgs, echo: Vec<String>) -> CliResult<Report> {
    let points = match (&a.file, &a.family) {
        (Some(f), None) => PointSet::from_json(&read_file(f)?)?,
        (None, Some(spec)) => match parse_family_nk(spec)? {
            (name, x, y) if name == "grid" => {
                let coords: Vec<(i64, i64)> =
                    (0..x as i64).flat_map(|i| (0..y as i64).map(move |j| (i, j))).collect();
                PointSet::grid(&coords)?
            }
            (other, _, _) => return Err(CliError::Input(format!("unknown point family `{other}`"))),
        },
        _ => return Err(CliError::Input("give either a file or --family".into())),
    };
    let mut canonical_points: Vec<String> = points
        .to_json()
        .get("points")
        .and_then(Value::as_array)
        .map(|ps| ps.iter().map(Value::to_string).collect())
        .unwrap_or_default();
    canonical_points.sort();
    let canonical = format!("{} {}", points.metric().name(), canonical_points.join(";"));
    let mut report = Report::new(echo, &canonical);
    report.put("points", points.len());
    report.put("metric", points.metric().name());

    if a.r.is_none() && !a.sweep {
        return Err(CliError::Input("give --r, --sweep or both".into()));
    }
    if let Some(rtext) = &a.r {
        let r = anti_rips::parse_rational(rtext)?;
        let complex = anti_rips::ar_complex(&points, &r)?;
        report.put("maximal_faces", face_names(&complex));
        report.betti = Some(betti(&complex)?);
        if a.line_homotopy {
            let h = anti_rips::ar_line_homotopy(&points, &r)?;
            if a.verify {
                add_match(&mut report, "homotopy", &complex, &h)?;
            }
            report.homotopy = Some(h);
        }
        let unit = r == BigRational::from_integer(1.into());
        if a.bound || (points.metric() == anti_rips::Metric::Grid && unit) {
            if !unit {
                return Err(CliError::Input("the grid bound is stated for r = 1".into()));
            }
            let bound = anti_rips::ar_grid_bound(&points)?;
            let conn = homological_connectivity(&complex)?;
            report.put("connectivity_bound", bound);
            report.put("homological_connectivity", conn);
            report.check("grid connectivity bound", conn >= bound, format!("bound {bound}, homological connectivity {conn}"));
        }
    }
    if a.sweep {
        let entries = anti_rips::ar_sweep(&points)?;
        let mut rows = Vec::new();
        for e in &entries {
            let b = betti(&e.complex)?;
            rows.push(json!({
                "r": e.r_display(),
                "maximal_faces": e.complex.maximal_faces().len(),
                "betti": b.trimmed(),
            }));
        }
        let antitone = entries.windows(2).all(|w| w[1].complex.is_subcomplex_of(&w[0].complex));
        report.put("critical_values", entries.iter().skip(1).map(|e| e.r_display()).collect::<Vec<_>>());
        report.put("sweep", rows);
        report.check("sweep is decreasing", antitone, format!("{} distinct complexes", entries.len()));
    }
    Ok(report)
}

/// Generating faces of Ind(L_n^3) for n = 1..=11.
pub const L3_TABLE: [(usize, &[&[usize]]); 11] = [
    (1, &[]),
    (2, &[&[2]]),
    (3, &[&[2], &[3]]),
    (4, &[&[2], &[3]]),
    (5, &[&[3]]),
    (6, &[&[2, 6]]),
    (7, &[&[2, 6], &[2, 7], &[3, 7]]),
    (8, &[&[2, 6], &[2, 7], &[3, 7], &[3, 8]]),
    (9, &[&[2, 7], &[3, 7], &[3, 8]]),
    (10, &[&[3, 8], &[2, 6, 10]]),
    (11, &[&[2, 6, 10], &[2, 6, 11], &[2, 7, 11], &[3, 7, 11]]),
];

/// Generating faces of Ind(C_n^3) with the claimed sphere dimension and count.
pub const C3_TABLE: [(usize, &[&[usize]], usize, u64); 3] = [
    (8, &[&[1, 5], &[1, 6], &[2, 6], &[2, 7], &[4, 8]], 1, 5),
    (9, &[&[1, 5], &[1, 8], &[2, 6], &[2, 9], &[4, 8], &[4, 9], &[5, 9]], 1, 6),
    (
        13,
        &[
            &[1, 5, 9],
            &[1, 5, 10],
            &[1, 6, 10],
            &[1, 6, 11],
            &[2, 6, 10],
            &[2, 6, 11],
            &[2, 7, 11],
            &[2, 7, 12],
            &[4, 8, 12],
            &[4, 8, 13],
            &[4, 9, 13],
            &[5, 9, 13],
        ],
        2,
        12,
    ),
];

/// Sorted label faces of a table row.
pub fn table_faces(rows: &[&[usize]]) -> Vec<Vec<Label>> {
    let mut out: Vec<Vec<Label>> = rows
        .iter()
        .map(|r| {
            let mut f: Vec<Label> = r.iter().map(|&i| Label::from(i)).collect();
            f.sort();
            f
        })
        .collect();
    out.sort();
    out
}

fn table_string(faces: &[Vec<Label>]) -> String {
    if faces.is_empty() {
        "∅".into()
    } else {
        faces.iter().map(|f| format_face(f)).collect::<Vec<_>>().join(",")
    }
}

#[derive(Serialize)]
struct RegressRow {
    table: &'static str,
    n: usize,
    expected: String,
    observed: String,
    expected_homotopy: Option<String>,
    observed_homotopy: String,
    oracle_betti: Vec<u64>,
    certificate_strength: Option<CertificateStrength>,
    passed: bool,
    detail: String,
}

fn regress_l(n: usize, expected: &[&[usize]]) -> crate::Result<RegressRow> {
    let (h, gf) = independence::gen_faces_l(n, 3)?;
    let complex = independence::ind(&independence::l_graph(n, 3)?)?;
    let b = betti(&complex)?;
    let want = table_faces(expected);
    let cert = independence::verify_generating_faces(&complex, &gf.faces);
    let faces_ok = gf.faces == want;
    let passed = faces_ok && cert.is_ok() && matches(&complex, &h)?.matches;
    let detail = match (&cert, faces_ok) {
        (Err(e), _) => e.to_string(),
        (Ok(_), false) => "face sets differ".into(),
        (Ok(_), true) => "faces, certificate and homology agree".into(),
    };
    Ok(RegressRow {
        table: "L3",
        n,
        expected: table_string(&want),
        observed: gf.table(),
        expected_homotopy: None,
        observed_homotopy: h.to_string(),
        oracle_betti: b.trimmed(),
        certificate_strength: cert.ok().map(|c| c.strength),
        passed,
        detail,
    })
}

fn regress_c(n: usize, expected: &[&[usize]], dim: usize, count: u64) -> crate::Result<RegressRow> {
    let (h, gf) = independence::gen_faces_c(n, 3)?;
    let complex = independence::ind(&independence::c_graph(n, 3)?)?;
    let b = betti(&complex)?;
    let want = table_faces(expected);
    let claimed = HomotopyType::spheres(dim, count);
    let cert = independence::verify_generating_faces(&complex, &gf.faces);
    let faces_ok = gf.faces == want;
    let claim_ok = matches(&complex, &claimed)?.matches;
    let mut problems = Vec::new();
    if !faces_ok {
        let missing: Vec<String> = want.iter().filter(|f| !gf.faces.contains(f)).map(|f| format_face(f)).collect();
        let extra: Vec<String> = gf.faces.iter().filter(|f| !want.contains(f)).map(|f| format_face(f)).collect();
        problems.push(format!("missing {} extra {}", missing.join(","), extra.join(",")));
    }
    if !claim_ok {
        problems.push(format!("oracle betti {:?} contradicts {claimed}", b.trimmed()));
    }
    if let Err(e) = &cert {
        problems.push(e.to_string());
    }
    Ok(RegressRow {
        table: "C3",
        n,
        expected: table_string(&want),
        observed: gf.table(),
        expected_homotopy: Some(claimed.to_string()),
        observed_homotopy: h.to_string(),
        oracle_betti: b.trimmed(),
        certificate_strength: cert.ok().map(|c| c.strength),
        passed: problems.is_empty(),
        detail: if problems.is_empty() { "faces, certificate and homology agree".into() } else { problems.join("; ") },
    })
}

fn regress_kdd(m: usize, d: usize) -> crate::Result<RegressRow> {
    let g = disjoint_complete_bipartite(m, d)?;
    let complex = independence::ind(&g)?;
    let b = betti(&complex)?;
    let bound = independence::connectivity_bound_maxdeg(&g)?;
    let conn = connectivity_or_empty(&complex)?;
    let (reduced, _) = independence::fold_reduce(&g)?;
    let folded_ok = reduced.edge_count() == m && reduced.max_degree() == 1;
    let h = HomotopyType::sphere(m - 1);
    let passed = bound == m as i64 - 2 && conn == bound && folded_ok && matches(&complex, &h)?.matches;
    Ok(RegressRow {
        table: "KDD",
        n: 2 * m * d,
        expected: format!("bound {} attained", m as i64 - 2),
        observed: format!("bound {bound}, homological connectivity {conn}, folds to {} edges", reduced.edge_count()),
        expected_homotopy: Some(h.to_string()),
        observed_homotopy: h.to_string(),
        oracle_betti: b.trimmed(),
        certificate_strength: None,
        passed,
        detail: format!("m={m} d={d}"),
    })
}

enum Job {
    L(usize, &'static [&'static [usize]]),
    C(usize, &'static [&'static [usize]], usize, u64),
    Kdd(usize, usize),
}

fn cmd_regress(jobs: usize, echo: Vec<String>) -> CliResult<Report> {
    let mut work: Vec<Job> = L3_TABLE.iter().map(|&(n, f)| Job::L(n, f)).collect();
    work.extend(C3_TABLE.iter().map(|&(n, f, d, c)| Job::C(n, f, d, c)));
    work.extend([(2, 2), (3, 2), (2, 3)].into_iter().map(|(m, d)| Job::Kdd(m, d)));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let rows: Vec<RegressRow> = pool.install(|| {
        work.par_iter()
            .map(|job| match *job {
                Job::L(n, f) => regress_l(n, f),
                Job::C(n, f, d, c) => regress_c(n, f, d, c),
                Job::Kdd(m, d) => regress_kdd(m, d),
            })
            .collect::<crate::Result<Vec<_>>>()
    })?;
    let mut report = Report::new(echo, &format!("regress {L3_TABLE:?} {C3_TABLE:?}"));
    for row in &rows {
        report.check(format!("{} n={}", row.table, row.n), row.passed, row.detail.clone());
    }
    report.put("rows", &rows);
    Ok(report)
}
