//! `walkdet`: walk-matrix determinants of rooted products from the command line.
//!
//! Graphs are given as graph6 strings or as paths to files whose first
//! non-blank line is a graph6 string. Roots are 1-based.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 a formula check or
//! certification failed, 3 the rooted graph is not a preserver.

mod render;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use walkdet_core::graphs::read_graph6_stream;
use walkdet_core::search::{
    build_dgs_family, builtin_graphs, conjecture_sweep, f_members_in, random_graphs, search_preservers, RootPolicy,
    SearchConfig,
};
use walkdet_core::{parse_graph6, preserver_check, theorem_main_verify, Error, Exec, Graph, MatrixKind, RootedGraph};

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "walkdet", version, about = "Exact walk-matrix determinants of rooted product graphs")]
struct Cli {
    /// Worker threads (overrides WALKDET_WORKERS)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output format (default: human for single reports, csv for streams)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the determinant formula for one pair G, H rooted at v
    Verify {
        #[arg(long = "g")]
        g: String,
        #[arg(long = "h")]
        h: String,
        #[arg(long)]
        root: usize,
        /// a, q or aalpha=p/q
        #[arg(long, default_value = "a")]
        kind: MatrixKind,
    },
    /// Evaluate the F-preserver conditions for H rooted at v
    Preserver {
        #[arg(long = "h")]
        h: String,
        #[arg(long)]
        root: usize,
    },
    /// Search rooted graphs for F-preservers
    Search {
        #[command(flatten)]
        source: Source,
        /// Only try one root per automorphism orbit
        #[arg(long)]
        orbits: bool,
        /// Also emit rows that fail the conditions
        #[arg(long)]
        include_rejects: bool,
        /// Certify every hit by forming G∘H for this member of F
        #[arg(long)]
        certify_with: Option<String>,
        /// Try rejected candidates on this member of F (repeatable) and emit
        /// those that keep every probe in F
        #[arg(long = "probe-with")]
        probe_with: Vec<String>,
    },
    /// List graphs with det A = ±1 and det W = ±2^{n/2}
    Members {
        #[command(flatten)]
        source: Source,
    },
    /// Build G, G∘H_1, (G∘H_1)∘H_2, ... and certify every stage
    Family {
        /// Starting graph, must be in F
        #[arg(long)]
        seed: String,
        /// Preserver as GRAPH:ROOT; repeat to cycle through several
        #[arg(long = "preserver", required = true)]
        preservers: Vec<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Compare det W(G∘H) with |det A(G)|^{⌊m/2⌋}·|det W(G)|^m on random G
    Sweep {
        #[arg(long = "h")]
        h: String,
        #[arg(long)]
        root: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        min_order: usize,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Where a stream of graphs comes from.
#[derive(Args, Debug)]
struct Source {
    /// graph6 files, one graph per line; `-` reads stdin
    #[arg(long = "input")]
    inputs: Vec<String>,
    /// Enumerate all graphs of exactly this order
    #[arg(long, short = 'n', conflicts_with_all = ["min_order", "max_order"])]
    order: Option<usize>,
    #[arg(long)]
    min_order: Option<usize>,
    #[arg(long)]
    max_order: Option<usize>,
    /// Connected graphs only (built-in enumeration)
    #[arg(long)]
    connected: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    NotPreserver,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CertificationFailure(msg) => Failure::Check(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.exit_code() == 0 => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NotPreserver) => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = cli.workers.map_or_else(Exec::from_env, Exec::with_workers);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = dispatch(cli.command, cli.format, exec, &mut out);
    out.flush()?;
    result
}

fn dispatch(command: Command, format: Option<Format>, exec: Exec, out: &mut impl Write) -> Result<(), Failure> {
    let single = format.unwrap_or(Format::Human);
    let stream = format.unwrap_or(Format::Csv);
    match command {
        Command::Verify { g, h, root, kind } => {
            let g = read_graph(&g)?;
            let h = rooted(&h, root)?;
            let report = theorem_main_verify(&g, &h, &kind)?;
            render::walk_report(out, single, &report)?;
            if !report.verdict {
                return Err(Failure::Check(format!("|lhs| = {} but |rhs| = {}", report.lhs, report.rhs_abs)));
            }
        }
        Command::Preserver { h, root } => {
            let h = rooted(&h, root)?;
            let report = preserver_check(&h)?;
            render::preserver_report(out, single, &walkdet_core::emit_graph6(h.graph()), &report)?;
            if !report.is_preserver {
                return Err(Failure::NotPreserver);
            }
        }
        Command::Search { source, orbits, include_rejects, certify_with, probe_with } => {
            let certify_with = certify_with.as_deref().map(read_graph).transpose()?;
            let probe_with = probe_with.iter().map(|g| read_graph(g)).collect::<Result<Vec<_>, _>>()?;
            let probing = !probe_with.is_empty();
            let cfg = SearchConfig {
                root_policy: if orbits { RootPolicy::OrbitRepresentatives } else { RootPolicy::AllRoots },
                exec,
                include_rejects,
                certify_with,
                probe_with,
                ..Default::default()
            };
            render::search_header(out, stream, probing)?;
            let graphs = source.graphs(2, 6)?;
            let summary =
                search_preservers(graphs, &cfg, |r| render::search_row(out, stream, probing, r).map_err(Error::from))?;
            for (m, t) in &summary.per_order {
                eprintln!(
                    "order {m}: {} graphs, {} candidates, {} preserver rows, {} rooted classes, {} underlying graphs, {} conjecture violations",
                    t.graphs, t.candidates, t.preserver_rows, t.rooted_classes, t.underlying_graphs, t.conjecture_violations
                );
                if probing {
                    eprintln!("order {m}: {} rejected candidates kept every probe graph in F", t.necessity_candidates);
                }
            }
        }
        Command::Members { source } => {
            let graphs: Vec<Graph> = source.graphs(6, 6)?.collect::<Result<_, _>>()?;
            let members = f_members_in(&graphs, exec);
            render::members(out, stream, &members)?;
            eprintln!("{} of {} graphs are in F", members.len(), graphs.len());
        }
        Command::Family { seed, preservers, steps } => {
            let seed = read_graph(&seed)?;
            let preservers = preservers.iter().map(|p| parse_preserver(p)).collect::<Result<Vec<_>, _>>()?;
            render::family_header(out, stream)?;
            let mut write_err = None;
            let res = build_dgs_family(&seed, &preservers, steps, |stage| {
                if write_err.is_none() {
                    write_err = render::family_stage(out, stream, stage).err();
                }
            });
            if let Some(e) = write_err {
                return Err(e.into());
            }
            res?;
        }
        Command::Sweep { h, root, samples, min_order, max_order, seed } => {
            if min_order == 0 || min_order > max_order {
                return Err(Failure::Usage(format!("invalid order range {min_order}..={max_order}")));
            }
            let h = rooted(&h, root)?;
            let gs = random_graphs(samples, min_order, max_order, seed);
            let report = conjecture_sweep(&h, &gs, exec)?;
            render::sweep(out, stream, &report)?;
            if !report.all_equal {
                let bad = report.rows.iter().filter(|r| !r.equal).count();
                return Err(Failure::Check(format!(
                    "{bad} of {} samples differ from the conjectured value",
                    report.rows.len()
                )));
            }
        }
    }
    Ok(())
}

impl Source {
    fn graphs(
        self,
        default_min: usize,
        default_max: usize,
    ) -> Result<Box<dyn Iterator<Item = walkdet_core::Result<Graph>>>, Failure> {
        if !self.inputs.is_empty() {
            if self.order.is_some() || self.min_order.is_some() || self.max_order.is_some() {
                return Err(Failure::Usage("--input cannot be combined with order flags".into()));
            }
            let mut streams: Vec<Box<dyn Iterator<Item = walkdet_core::Result<Graph>>>> = Vec::new();
            for path in self.inputs {
                let reader: Box<dyn BufRead> = if path == "-" {
                    Box::new(BufReader::new(io::stdin()))
                } else {
                    Box::new(BufReader::new(File::open(&path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?))
                };
                streams.push(Box::new(read_graph6_stream(reader)));
            }
            return Ok(Box::new(streams.into_iter().flatten()));
        }
        let (min, max) = match self.order {
            Some(n) => (n, n),
            None => (self.min_order.unwrap_or(default_min), self.max_order.unwrap_or(default_max)),
        };
        if min > max {
            return Err(Failure::Usage(format!("empty order range {min}..={max}")));
        }
        Ok(Box::new(builtin_graphs(min, max, self.connected)?.into_iter().map(Ok)))
    }
}

/// A graph6 string, or a file whose first non-blank line is one.
fn read_graph(arg: &str) -> Result<Graph, Failure> {
    let text = if Path::new(arg).is_file() {
        let content = std::fs::read_to_string(arg)?;
        content.lines().map(str::trim).find(|l| !l.is_empty()).map(str::to_string).unwrap_or_default()
    } else {
        arg.to_string()
    };
    parse_graph6(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn rooted(arg: &str, root: usize) -> Result<RootedGraph, Failure> {
    let g = read_graph(arg)?;
    if root == 0 || root > g.order() {
        return Err(Failure::Usage(format!("root {root} is outside 1..={}", g.order())));
    }
    Ok(RootedGraph::new(g, root - 1)?)
}

fn parse_preserver(spec: &str) -> Result<RootedGraph, Failure> {
    let (graph, root) =
        spec.rsplit_once(':').ok_or_else(|| Failure::Usage(format!("expected GRAPH:ROOT, got {spec:?}")))?;
    let root: usize = root.parse().map_err(|_| Failure::Usage(format!("bad root in {spec:?}")))?;
    rooted(graph, root)
}
