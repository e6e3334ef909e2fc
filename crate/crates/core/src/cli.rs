//! Command-line front end. Every subcommand parses its inputs, makes one
//! library call and prints a canonical JSON report.
//!
//! Exit codes: 0 when the question was decided (whatever the answer), 2 when
//! a search budget ran out, 1 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::divisor::{self, Divisor, DivisorJson, DivisorTheory, DEFAULT_CLASS_CAP};
use crate::fixtures;
use crate::gonality::{self, Decision, Mode, SearchOptions, DEFAULT_BUDGET};
use crate::graph::{self, GraphJson, WeightedGraph};
use crate::hurwitz::{self, PartitionSet, RhGenus};
use crate::hyperelliptic::{self, GraphInvolution};

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Library(String),
}

#[derive(Debug, Parser)]
#[command(name = "chipgraph", version, about = "Divisor rank, gonality and hyperelliptic tests for weighted graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Add wall-clock timing to the report (makes it run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GonalityMode {
    Harmonic,
    Pseudo,
    Divisorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    Loopless,
    Weightless,
    Stabilize,
    ContractBridges,
    Refine,
    RemoveTwoValent,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every structural defect of a graph file.
    Validate {
        #[arg(long)]
        graph: String,
    },
    Genus {
        #[arg(long)]
        graph: String,
    },
    Rank {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        divisor: String,
    },
    /// Reduced representative on the weightless model.
    Reduce {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        divisor: String,
        /// Base vertex (default: the first vertex).
        #[arg(long)]
        base: Option<String>,
    },
    Equiv {
        #[arg(long)]
        graph: Option<String>,
        /// Exactly two divisor files.
        #[arg(long, num_args = 1, required = true)]
        divisor: Vec<String>,
    },
    /// Classes of degree d and rank at least r.
    Wrd {
        #[arg(long)]
        graph: String,
        #[arg(short = 'd')]
        d: i64,
        #[arg(short = 'r', default_value_t = 1)]
        r: i64,
    },
    Gonality {
        #[arg(long)]
        graph: String,
        #[arg(short = 'd')]
        d: u32,
        #[arg(long, value_enum, default_value_t = GonalityMode::Harmonic)]
        mode: GonalityMode,
        /// Require every vertex to be of Hurwitz type.
        #[arg(long)]
        hurwitz: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    Hurwitz {
        #[arg(long)]
        input: String,
        /// Include the permutations.
        #[arg(long)]
        witness: bool,
    },
    Hyperelliptic {
        #[arg(long)]
        graph: String,
        /// Include the involution, its quotient and the divisor witness.
        #[arg(long)]
        certificate: bool,
    },
    #[command(name = "curve-locus")]
    CurveLocus {
        #[arg(long)]
        graph: String,
    },
    Transform {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        op: Transform,
        /// Refinement plan `{edgeId: pieces}`; unlisted edges stay whole.
        #[arg(long)]
        input: Option<String>,
    },
    /// Emit one named fixture, or all of them.
    Fixtures { name: Option<String> },
}

/// Result of one invocation: exit code and the text for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (program name first) without touching the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let text = text.strip_prefix("error: ").unwrap_or(&text).to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_DECIDED, stdout: text, stderr: String::new() }
                }
                _ => error_outcome(&echo, &CliError::Usage(text.trim_end().to_string())),
            };
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let result = execute(&cli.command, &mut inputs);
    match result {
        Ok((code, body)) => {
            let mut report = Map::new();
            report.insert("command".into(), json!(command_name(&cli.command)));
            report.insert("argv".into(), json!(echo));
            report.insert("input_digest".into(), json!(inputs.digest()));
            report.insert("exit_code".into(), json!(code));
            report.insert("result".into(), body);
            if cli.timing {
                report.insert("elapsed_ms".into(), json!(start.elapsed().as_secs_f64() * 1000.0));
            }
            let text = canonical(&Value::Object(report));
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, format!("{text}\n")) {
                    return error_outcome(
                        &echo,
                        &CliError::Io { path: path.display().to_string(), message: e.to_string() },
                    );
                }
                return Outcome { code, stdout: String::new(), stderr: String::new() };
            }
            Outcome { code, stdout: format!("{text}\n"), stderr: String::new() }
        }
        Err(e) => error_outcome(&echo, &e),
    }
}

fn error_outcome(echo: &[String], e: &CliError) -> Outcome {
    let report = json!({ "argv": echo, "error": e.to_string(), "exit_code": EXIT_INPUT_ERROR });
    Outcome { code: EXIT_INPUT_ERROR, stdout: format!("{}\n", canonical(&report)), stderr: format!("error: {e}\n") }
}

/// Sorted keys, two-space indentation.
pub fn canonical(v: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string_pretty(v).expect("JSON value serializes")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Genus { .. } => "genus",
        Command::Rank { .. } => "rank",
        Command::Reduce { .. } => "reduce",
        Command::Equiv { .. } => "equiv",
        Command::Wrd { .. } => "wrd",
        Command::Gonality { .. } => "gonality",
        Command::Hurwitz { .. } => "hurwitz",
        Command::Hyperelliptic { .. } => "hyperelliptic",
        Command::CurveLocus { .. } => "curve-locus",
        Command::Transform { .. } => "transform",
        Command::Fixtures { .. } => "fixtures",
    }
}

/// Raw bytes of every input read, for the digest.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.to_string(), message: e.to_string() })?;
        self.hasher.update(path.as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    fn note(&mut self, tag: &str) {
        self.hasher.update(tag.as_bytes());
        self.hasher.update([0]);
    }

    fn digest(&self) -> String {
        let bytes = self.hasher.clone().finalize();
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// A graph file, or a fixture name when no such file exists.
    fn graph(&mut self, spec: &str) -> Result<WeightedGraph, CliError> {
        if !Path::new(spec).exists() {
            if let Some(g) = fixtures::by_name(spec) {
                self.note(&format!("fixture:{spec}"));
                return Ok(g);
            }
        }
        let text = self.read(spec)?;
        WeightedGraph::from_json_str(&text).map_err(|e| input_error(spec, e))
    }

    /// A divisor file together with the graph it lives on: `--graph` wins,
    /// otherwise the file's own `graph` field (fixture name or inline graph).
    fn divisor(&mut self, path: &str, graph: Option<&WeightedGraph>) -> Result<(WeightedGraph, Divisor), CliError> {
        let text = self.read(path)?;
        let doc: DivisorJson = serde_json::from_str(&text).map_err(|e| input_error(path, e))?;
        let g = match (graph, &doc.graph) {
            (Some(g), _) => g.clone(),
            (None, Some(Value::String(name))) => self.graph(name)?,
            (None, Some(inline @ Value::Object(_))) => {
                let gj: GraphJson = serde_json::from_value(inline.clone()).map_err(|e| input_error(path, e))?;
                WeightedGraph::try_from(gj).map_err(|e| input_error(path, e))?
            }
            (None, _) => {
                return Err(CliError::Input {
                    path: path.to_string(),
                    message: "no graph: pass --graph or set the `graph` field".into(),
                })
            }
        };
        // coefficients may also name vertices of the weightless model
        let d = match doc.to_divisor(&g) {
            Ok(d) => d,
            Err(first) => {
                let model = g.weightless_model();
                doc.to_divisor(&model).map_err(|_| input_error(path, first))?
            }
        };
        Ok((g, d))
    }
}

fn input_error(path: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Input { path: path.to_string(), message: e.to_string() }
}

fn lib_error(e: impl std::fmt::Display) -> CliError {
    CliError::Library(e.to_string())
}

fn divisor_value(g: &WeightedGraph, d: &Divisor) -> Value {
    json!({ "coeffs": d.to_map(g), "degree": d.degree() })
}

fn execute(command: &Command, io: &mut Inputs) -> Result<(i32, Value), CliError> {
    let decided = |v: Value| Ok((EXIT_DECIDED, v));
    match command {
        Command::Validate { graph } => {
            let text = io.read(graph)?;
            let doc: GraphJson = serde_json::from_str(&text).map_err(|e| input_error(graph, e))?;
            let violations = graph::validate(&doc.to_parts());
            decided(json!({ "valid": violations.is_empty(), "violations": violations }))
        }
        Command::Genus { graph } => {
            let g = io.graph(graph)?;
            decided(json!({
                "genus": g.genus(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "total_weight": g.total_weight(),
            }))
        }
        Command::Rank { graph, divisor } => {
            let g = graph.as_deref().map(|p| io.graph(p)).transpose()?;
            let (g, d) = io.divisor(divisor, g.as_ref())?;
            let rank = DivisorTheory::new(&g).rank(&d).map_err(lib_error)?;
            decided(json!({ "rank": rank, "degree": d.degree(), "genus": g.genus() }))
        }
        Command::Reduce { graph, divisor, base } => {
            let g = graph.as_deref().map(|p| io.graph(p)).transpose()?;
            let (g, d) = io.divisor(divisor, g.as_ref())?;
            let theory = DivisorTheory::new(&g);
            let model = theory.model();
            let q = match base {
                None => 0,
                Some(id) => model.vertex(id).ok_or_else(|| CliError::Usage(format!("unknown base vertex `{id}`")))?,
            };
            let lifted = theory.lift(&d).map_err(lib_error)?;
            let reduced = divisor::reduce(model, &lifted, q).map_err(lib_error)?;
            decided(json!({ "base": model.vertex_id(q), "reduced": divisor_value(model, &reduced) }))
        }
        Command::Equiv { graph, divisor } => {
            if divisor.len() != 2 {
                return Err(CliError::Usage(format!("equiv takes two --divisor files, got {}", divisor.len())));
            }
            let g = graph.as_deref().map(|p| io.graph(p)).transpose()?;
            let (g, a) = io.divisor(&divisor[0], g.as_ref())?;
            let (_, b) = io.divisor(&divisor[1], Some(&g))?;
            let eq = DivisorTheory::new(&g).is_equivalent(&a, &b).map_err(lib_error)?;
            decided(json!({ "equivalent": eq }))
        }
        Command::Wrd { graph, d, r } => {
            let g = io.graph(graph)?;
            let mut theory = DivisorTheory::new(&g);
            let classes = theory.w_r_d(*d, *r, DEFAULT_CLASS_CAP).map_err(lib_error)?;
            let model = theory.model();
            let reps: Vec<Value> = classes.iter().map(|c| divisor_value(model, &c.representative)).collect();
            decided(json!({ "d": d, "r": r, "count": reps.len(), "nonempty": !reps.is_empty(), "classes": reps }))
        }
        Command::Gonality { graph, d, mode, hurwitz, budget } => {
            let g = io.graph(graph)?;
            if *mode == GonalityMode::Divisorial {
                let (found, witness) = divisor::is_divisorially_gonal(&g, *d as usize).map_err(lib_error)?;
                let model = g.weightless_model();
                return decided(json!({
                    "mode": "divisorial",
                    "degree": d,
                    "decision": if found { "found" } else { "not_found" },
                    "gonal": found,
                    "witness": witness.map(|w| divisor_value(&model, &w)),
                }));
            }
            let opts = SearchOptions {
                mode: if *mode == GonalityMode::Pseudo { Mode::PseudoHarmonic } else { Mode::Harmonic },
                hurwitz: *hurwitz,
                budget: *budget,
            };
            let report = gonality::find_harmonic_to_tree(&g, *d, opts).map_err(lib_error)?;
            let witness = match &report.witness {
                Some(phi) => Some(json!({
                    "morphism": phi.to_json(),
                    "ramification": phi.ramification_divisor().map_err(lib_error)?.coeffs(),
                })),
                None => None,
            };
            let hurwitz_data = report.hurwitz.as_ref().map(|vs| {
                vs.iter()
                    .map(|v| json!({ "vertex": v.vertex, "genus": v.genus, "partitions": v.completed.to_json() }))
                    .collect::<Vec<_>>()
            });
            let code = if report.decision == Decision::Inconclusive { EXIT_INCONCLUSIVE } else { EXIT_DECIDED };
            Ok((
                code,
                json!({
                    "mode": report.mode,
                    "degree": d,
                    "hurwitz_checked": hurwitz,
                    "decision": report.decision,
                    "gonal": report.found(),
                    "budget": { "limit": budget, "used": report.stats.nodes, "exhausted": code == EXIT_INCONCLUSIVE },
                    "stats": report.stats,
                    "witness": witness,
                    "hurwitz": hurwitz_data,
                }),
            ))
        }
        Command::Hurwitz { input, witness } => {
            let text = io.read(input)?;
            let p = PartitionSet::from_json_str(&text).map_err(|e| input_error(input, e))?;
            let found = hurwitz::is_hurwitz_type(&p).map_err(lib_error)?;
            let mut out = json!({
                "input": p.to_json(),
                "rh_genus": rh_value(p.rh_genus()),
                "hurwitz_type": found.is_some(),
            });
            if *witness {
                out["witness"] = json!(found.map(|w| w.to_strings()));
            }
            decided(out)
        }
        Command::Hyperelliptic { graph, certificate } => {
            let g = io.graph(graph)?;
            let report = hyperelliptic::is_hyperelliptic(&g).map_err(lib_error)?;
            let mut out = json!({
                "hyperelliptic": report.hyperelliptic,
                "method": report.method,
                "divisorial": report.divisorial,
                "involution_found": report.involution_found,
                "methods_agree": report.methods_agree(),
            });
            if *certificate {
                let (_, w) = divisor::is_divisorially_gonal(&g, 2).map_err(lib_error)?;
                let model = g.weightless_model();
                out["divisor_witness"] = json!(w.map(|w| divisor_value(&model, &w)));
                out["involution"] = match (&report.reduced, &report.involution) {
                    (Some(red), Some(iota)) => involution_value(red, iota)?,
                    _ => Value::Null,
                };
            }
            decided(out)
        }
        Command::CurveLocus { graph } => {
            let g = io.graph(graph)?;
            let r = hyperelliptic::stable_curve_hyperelliptic_locus(&g).map_err(lib_error)?;
            let code = if r.comparable && r.two_gonal.is_none() { EXIT_INCONCLUSIVE } else { EXIT_DECIDED };
            Ok((
                code,
                json!({
                    "in_locus": r.in_locus,
                    "hyperelliptic": r.hyperelliptic,
                    "bridge_condition": r.bridge_violations.is_empty(),
                    "bridge_violations": r.bridge_violations,
                    "two_gonal": r.two_gonal,
                    "comparable": r.comparable,
                    "consistent": r.consistent(),
                }),
            ))
        }
        Command::Transform { graph, op, input } => {
            let g = io.graph(graph)?;
            let out = match op {
                Transform::Loopless => g.loopless_model(),
                Transform::Weightless => g.weightless_model(),
                Transform::Stabilize => g.stabilize().map_err(lib_error)?,
                Transform::ContractBridges => g.contract_bridges().map_err(lib_error)?,
                Transform::RemoveTwoValent => g.remove_two_valent(),
                Transform::Refine => {
                    let path = input
                        .as_deref()
                        .ok_or_else(|| CliError::Usage("refine needs --input with a plan".into()))?;
                    let text = io.read(path)?;
                    let plan = serde_json::from_str(&text).map_err(|e| input_error(path, e))?;
                    g.refine_by_id(&plan).map_err(|e| input_error(path, e))?
                }
            };
            decided(json!({ "graph": out.to_json(), "genus": out.genus() }))
        }
        Command::Fixtures { name } => match name {
            Some(n) => {
                let g = fixtures::by_name(n).ok_or_else(|| CliError::Usage(format!("unknown fixture `{n}`")))?;
                io.note(n);
                decided(json!({ "name": n, "graph": g.to_json() }))
            }
            None => {
                let all: Map<String, Value> =
                    fixtures::all().into_iter().map(|(n, g)| (n.to_string(), json!(g.to_json()))).collect();
                decided(json!({ "fixtures": all }))
            }
        },
    }
}

fn rh_value(g: RhGenus) -> Value {
    match g {
        RhGenus::Genus(x) => json!({ "genus": x }),
        RhGenus::HalfIntegral { twice_genus } => json!({ "half_integral": true, "twice_genus": twice_genus }),
        RhGenus::Negative(x) => json!({ "negative": x }),
    }
}

fn involution_value(g: &WeightedGraph, iota: &GraphInvolution) -> Result<Value, CliError> {
    let vertex: Map<String, Value> = (0..g.vertex_count())
        .map(|v| (g.vertex_id(v).to_string(), json!(g.vertex_id(iota.vertex[v]))))
        .collect();
    let edge: Map<String, Value> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| (edge.id.clone(), json!(g.edges()[iota.edge[e]].id)))
        .collect();
    let inverted: Vec<&str> =
        g.edges().iter().enumerate().filter(|(e, _)| iota.inverted[*e]).map(|(_, x)| x.id.as_str()).collect();
    let quotient = hyperelliptic::quotient(g, iota).map_err(lib_error)?;
    Ok(json!({
        "graph": g.to_json(),
        "vertex": vertex,
        "edge": edge,
        "inverted": inverted,
        "quotient": quotient.to_json(),
    }))
}
