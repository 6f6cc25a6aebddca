//! Command-line front end. [`run`] is pure: it returns the exit code and both
//! output streams instead of touching the process.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, DEFAULT_VERTEX_CAP};
use crate::poset::{
    apply_a_finite, apply_r_finite, check_property_finite, order_iso, FinitePoset, DEFAULT_CAP,
};
use crate::property::{self, Property};
use crate::ray::{structural_iso, PropertyCheck, RayPoset, DEFAULT_DEPTH, DEFAULT_GUARD_DEPTH};
use crate::spectrum::{build_ep, enumerate_primes, PrimeJson, SpecPoset};
use crate::verify::{self, SuiteParams, SUITE_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "spectra",
    version,
    about = "Posets with descending rays, A and R, and graph spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Poset,
    Rayposet,
    Graph,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderKind {
    Poset,
    Rayposet,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Operator {
    A,
    R,
    Ac,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Truncation depth for ray posets
    #[arg(long, default_value_t = DEFAULT_DEPTH, global = true)]
    depth: usize,
    /// Enumeration cap (elements or vertices)
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Exit 1 when a checked fact is false
    #[arg(long, global = true)]
    assert: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide order properties
    Check {
        #[arg(value_enum)]
        kind: OrderKind,
        file: PathBuf,
        /// Comma separated list, or `all`
        #[arg(long, default_value = "all")]
        props: String,
        #[command(flatten)]
        common: Common,
    },
    /// Apply A, R or the chain variant AC
    Apply {
        #[arg(value_enum)]
        op: Operator,
        #[arg(value_enum)]
        kind: OrderKind,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Test two inputs for isomorphism
    Iso {
        #[arg(value_enum)]
        kind: OrderKind,
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Hereditary saturated sets and maximal tails of a graph
    GraphTails {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Primes of a graph by type
    GraphPrimes {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Ordered spectrum of a graph in the graded regime
    Spec {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The graph E_P of a finite poset
    ToGraph {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite, or `all`
    Verify {
        suite: String,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Print a worked example with its checked facts
    Example {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Re-emit an input in canonical JSON or DOT
    Export {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
        /// Export the finite truncation at --depth instead (ray posets)
        #[arg(long)]
        truncate: bool,
        #[command(flatten)]
        common: Common,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn read_poset(path: &Path) -> Result<FinitePoset> {
    FinitePoset::from_json(&read(path)?)
}

fn read_ray(path: &Path) -> Result<RayPoset> {
    RayPoset::from_json(&read(path)?)
}

fn read_graph(path: &Path) -> Result<MultiGraph> {
    MultiGraph::from_json(&read(path)?)
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn verdict(out: String, holds: bool, assert: bool, diagnostic: impl FnOnce() -> String) -> Outcome {
    if holds || !assert {
        return Outcome::ok(out);
    }
    Outcome {
        code: EXIT_FALSE,
        stdout: out,
        stderr: line(diagnostic()),
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Check {
            kind,
            file,
            props,
            common,
        } => check(kind, &file, &props, &common),
        Command::Apply {
            op,
            kind,
            file,
            common,
        } => apply(op, kind, &file, &common),
        Command::Iso {
            kind,
            left,
            right,
            common,
        } => iso(kind, &left, &right, &common),
        Command::GraphTails { file, common } => graph_tails(&file, &common),
        Command::GraphPrimes { file, common } => {
            let g = read_graph(&file)?;
            let primes: Vec<PrimeJson> =
                enumerate_primes(&g, common.cap.unwrap_or(DEFAULT_VERTEX_CAP))?
                    .iter()
                    .map(|p| p.to_json(&g))
                    .collect();
            Ok(Outcome::ok(pretty(&primes)))
        }
        Command::Spec { file, common } => {
            let g = read_graph(&file)?;
            let sp = SpecPoset::new(&g, common.cap.unwrap_or(DEFAULT_VERTEX_CAP))?;
            Ok(Outcome::ok(match common.format {
                Format::Json => line(sp.to_json()),
                Format::Dot => sp.as_finite().to_dot(),
            }))
        }
        Command::ToGraph { file, common } => {
            let g = build_ep(&read_poset(&file)?);
            Ok(Outcome::ok(match common.format {
                Format::Json => line(g.to_json()),
                Format::Dot => g.to_dot(),
            }))
        }
        Command::Verify {
            suite,
            seed,
            count,
            max_size,
            common,
        } => {
            let params = SuiteParams {
                seed,
                count,
                max_size,
                depth: common.depth,
                cap: common.cap.unwrap_or(DEFAULT_CAP),
            };
            let names: Vec<&str> = if suite == "all" {
                SUITE_NAMES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut reports = Vec::new();
            for name in names {
                reports.push(verify::run_suite(name, &params)?);
            }
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.ok())
                .map(|r| r.suite.as_str())
                .collect();
            let out = if reports.len() == 1 {
                pretty(&reports[0])
            } else {
                pretty(&reports)
            };
            Ok(Outcome {
                code: if failed.is_empty() {
                    EXIT_OK
                } else {
                    EXIT_FALSE
                },
                stdout: out,
                stderr: if failed.is_empty() {
                    String::new()
                } else {
                    format!("failing suites: {}\n", failed.join(", "))
                },
            })
        }
        Command::Example { name, common } => {
            let ex = catalog::example(&name)?;
            let out = match common.format {
                Format::Json => line(ex.to_json()),
                Format::Dot => ex.object.to_dot(),
            };
            Ok(verdict(out, ex.all_hold(), common.assert, || {
                let bad: Vec<&str> = ex
                    .assertions
                    .iter()
                    .filter(|a| !a.holds)
                    .map(|a| a.statement.as_str())
                    .collect();
                format!("failed assertions: {}", bad.join("; "))
            }))
        }
        Command::Export {
            kind,
            file,
            truncate,
            common,
        } => export(kind, &file, truncate, &common),
    }
}

#[derive(Serialize)]
struct FiniteCheck {
    property: Property,
    holds: bool,
}

fn check(kind: OrderKind, file: &Path, props: &str, common: &Common) -> Result<Outcome> {
    let props = property::parse_list(props)?;
    match kind {
        OrderKind::Poset => {
            let p = read_poset(file)?;
            let cap = common.cap.unwrap_or(DEFAULT_CAP);
            let results = props
                .iter()
                .map(|&property| {
                    Ok(FiniteCheck {
                        property,
                        holds: check_property_finite(&p, property, cap)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let failing: Vec<String> = results
                .iter()
                .filter(|r| !r.holds)
                .map(|r| r.property.to_string())
                .collect();
            Ok(verdict(
                pretty(&results),
                failing.is_empty(),
                common.assert,
                || format!("false: {}", failing.join(", ")),
            ))
        }
        OrderKind::Rayposet => {
            let p = read_ray(file)?;
            let results: Vec<PropertyCheck> = props.iter().map(|&x| p.check_property(x)).collect();
            let failing: Vec<String> = results
                .iter()
                .filter(|r| !r.holds)
                .map(|r| match &r.witness {
                    Some(w) => format!("{}: {w}", r.property),
                    None => r.property.to_string(),
                })
                .collect();
            Ok(verdict(
                pretty(&results),
                failing.is_empty(),
                common.assert,
                || format!("false: {}", failing.join("; ")),
            ))
        }
    }
}

#[derive(Serialize)]
struct RayApplication {
    result: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    added: Vec<AddedPoint>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    removed: Vec<String>,
}

#[derive(Serialize)]
struct AddedPoint {
    point: String,
    below: String,
}

fn apply(op: Operator, kind: OrderKind, file: &Path, common: &Common) -> Result<Outcome> {
    let cap = common.cap.unwrap_or(DEFAULT_CAP);
    match kind {
        OrderKind::Poset => {
            let p = read_poset(file)?;
            let out = match op {
                Operator::A | Operator::Ac => apply_a_finite(&p, cap)?,
                Operator::R => apply_r_finite(&p, cap)?,
            };
            Ok(Outcome::ok(match common.format {
                Format::Json => line(out.to_json()),
                Format::Dot => out.to_dot(),
            }))
        }
        OrderKind::Rayposet => {
            let p = read_ray(file)?;
            let (out, added, removed) = match op {
                Operator::A => {
                    let (a, details) = p.apply_a();
                    let added = details
                        .added
                        .iter()
                        .map(|&(ray, new)| AddedPoint {
                            point: a.label(new).to_string(),
                            below: p.label(ray).to_string(),
                        })
                        .collect();
                    (a, added, Vec::new())
                }
                Operator::Ac => (p.apply_ac(), Vec::new(), Vec::new()),
                Operator::R => {
                    let (r, removed) = p.apply_r()?;
                    (r, Vec::new(), removed)
                }
            };
            Ok(Outcome::ok(match common.format {
                Format::Json => pretty(&RayApplication {
                    result: serde_json::from_str(&out.to_json())?,
                    added,
                    removed,
                }),
                Format::Dot => out.to_dot(),
            }))
        }
    }
}

#[derive(Serialize)]
struct IsoOut {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mapping: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_guard: Option<bool>,
}

fn iso(kind: OrderKind, left: &Path, right: &Path, common: &Common) -> Result<Outcome> {
    let out = match kind {
        OrderKind::Poset => {
            let (p, q) = (read_poset(left)?, read_poset(right)?);
            let m = order_iso(&p, &q);
            IsoOut {
                isomorphic: m.is_some(),
                mapping: m.map(|m| {
                    m.labelled()
                        .into_iter()
                        .map(|(a, b)| (a.to_string(), b.to_string()))
                        .collect()
                }),
                truncation_guard: None,
            }
        }
        OrderKind::Rayposet => {
            let (p, q) = (read_ray(left)?, read_ray(right)?);
            let guard = common.depth.min(DEFAULT_GUARD_DEPTH);
            match structural_iso(&p, &q, guard) {
                Some(i) => IsoOut {
                    isomorphic: i.guard_ok,
                    mapping: Some(
                        i.mapping
                            .iter()
                            .enumerate()
                            .map(|(a, &b)| (p.label(a).to_string(), q.label(b).to_string()))
                            .collect(),
                    ),
                    truncation_guard: Some(i.guard_ok),
                },
                None => IsoOut {
                    isomorphic: false,
                    mapping: None,
                    truncation_guard: None,
                },
            }
        }
    };
    let holds = out.isomorphic;
    Ok(verdict(pretty(&out), holds, common.assert, || {
        "not isomorphic".into()
    }))
}

#[derive(Serialize)]
struct TailsOut {
    hereditary_saturated: Vec<Vec<String>>,
    maximal_tails: Vec<Vec<String>>,
}

fn graph_tails(file: &Path, common: &Common) -> Result<Outcome> {
    let g = read_graph(file)?;
    let cap = common.cap.unwrap_or(DEFAULT_VERTEX_CAP);
    let out = TailsOut {
        hereditary_saturated: g
            .hereditary_saturated_sets(cap)?
            .into_iter()
            .map(|h| g.set_labels(h))
            .collect(),
        maximal_tails: g
            .maximal_tails(cap)?
            .into_iter()
            .map(|m| g.set_labels(m))
            .collect(),
    };
    Ok(Outcome::ok(pretty(&out)))
}

fn export(kind: Kind, file: &Path, truncate: bool, common: &Common) -> Result<Outcome> {
    if truncate && kind != Kind::Rayposet {
        return Err(Error::Usage("--truncate applies to ray posets only".into()));
    }
    let text = match (kind, common.format) {
        (Kind::Poset, Format::Json) => line(read_poset(file)?.to_json()),
        (Kind::Poset, Format::Dot) => read_poset(file)?.to_dot(),
        (Kind::Rayposet, f) if truncate => {
            let t = read_ray(file)?.truncate(common.depth);
            match f {
                Format::Json => line(t.to_json()),
                Format::Dot => t.to_dot(),
            }
        }
        (Kind::Rayposet, Format::Json) => line(read_ray(file)?.to_json()),
        (Kind::Rayposet, Format::Dot) => read_ray(file)?.to_dot(),
        (Kind::Graph, Format::Json) => line(read_graph(file)?.to_json()),
        (Kind::Graph, Format::Dot) => read_graph(file)?.to_dot(),
    };
    Ok(Outcome::ok(text))
}
