//! Command-line front end. Exit code 0 means YES, 1 means NO, 2 means bad
//! input or usage.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::fccp::{FccpInstance, FccpSolver, Verdict};
use crate::format::{self, Instance, Kind};
use crate::oracle::{fccp_oracle_with, OracleLimits};
use crate::reductions::{fccp_to_hpp, hpp_to_fccp, pep_to_fccp, pp_to_hpp};
use crate::spqr::SpqrTree;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "corefacial", version, about = "Decide hierarchical partial planarity and facial-constrained core planarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide an fccp or hpp instance with the SPQR-tree solver.
    Test {
        file: String,
        #[arg(long, value_enum)]
        format: Option<TestFormat>,
        /// Print one line per processed tree node.
        #[arg(long)]
        trace: bool,
        /// Root the tree at this edge (index in file order).
        #[arg(long)]
        root: Option<usize>,
    },
    /// Decide an fccp or hpp instance by exhaustive enumeration.
    Oracle {
        file: String,
        /// Largest vertex count accepted.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Translate an instance and print the result.
    Reduce {
        file: String,
        #[arg(long, value_enum)]
        from: FromKind,
        #[arg(long, value_enum)]
        to: ToKind,
    },
    /// Print the SPQR-tree of the instance graph.
    Spqr { file: String },
    /// Print the faces of the embedded subgraph of a pep instance.
    Faces { file: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TestFormat {
    Fccp,
    Hpp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FromKind {
    Pp,
    Pep,
    Hpp,
    Fccp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ToKind {
    Hpp,
    Fccp,
}

/// Runs with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

fn read_instance(path: &str) -> Result<Instance, String> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    format::parse(&text).map_err(|e| format!("{path}: {e}"))
}

fn decision_instance(inst: Instance, expect: Option<TestFormat>) -> Result<FccpInstance, String> {
    match (inst, expect) {
        (Instance::Fccp(f), None | Some(TestFormat::Fccp)) => Ok(f),
        (Instance::Hpp(h), None | Some(TestFormat::Hpp)) => Ok(hpp_to_fccp(&h)),
        (other, Some(f)) => {
            let wanted = if f == TestFormat::Fccp { Kind::Fccp } else { Kind::Hpp };
            Err(format!("expected a {} file, got {}", wanted.header(), other.kind().header()))
        }
        (other, None) => Err(format!("cannot decide a {} file directly; reduce it first", other.kind().header())),
    }
}

fn verdict_line(out: &mut dyn Write, v: Verdict) -> Result<i32, String> {
    writeln!(out, "RESULT {v}").map_err(|e| e.to_string())?;
    Ok(if v.is_yes() { EXIT_YES } else { EXIT_NO })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io_err = |e: io::Error| e.to_string();
    match command {
        Command::Test {
            file,
            format,
            trace,
            root,
        } => {
            let f = decision_instance(read_instance(&file)?, format)?;
            let solver = FccpSolver::rooted(&f.graph, root.unwrap_or(0)).map_err(|e| e.to_string())?;
            let solution = solver.solve_traced(&f.classes, &f.pairs, trace).map_err(|e| e.to_string())?;
            let code = verdict_line(out, solution.verdict)?;
            if trace {
                for line in &solution.trace {
                    writeln!(out, "{line}").map_err(io_err)?;
                }
            }
            Ok(code)
        }
        Command::Oracle { file, cap } => {
            let f = decision_instance(read_instance(&file)?, None)?;
            let mut limits = OracleLimits::default();
            if let Some(cap) = cap {
                limits.cap = cap;
            }
            let v = fccp_oracle_with(&f, limits).map_err(|e| e.to_string())?;
            verdict_line(out, v)
        }
        Command::Reduce { file, from, to } => {
            let inst = read_instance(&file)?;
            let text = reduce(inst, from, to)?;
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_YES)
        }
        Command::Spqr { file } => {
            let g = match read_instance(&file)? {
                Instance::Fccp(f) => f.graph,
                Instance::Hpp(h) => hpp_to_fccp(&h).graph,
                Instance::Pep(p) => p.graph,
                Instance::Pp { graph, .. } => graph,
            };
            let tree = SpqrTree::build(&g).map_err(|e| e.to_string())?;
            out.write_all(tree.dump().as_bytes()).map_err(io_err)?;
            Ok(EXIT_YES)
        }
        Command::Faces { file } => {
            let Instance::Pep(p) = read_instance(&file)? else {
                return Err("faces needs a pep file".to_string());
            };
            let (emb, _) = p.h_embedding().map_err(|e| e.to_string())?;
            let h = emb.graph();
            for (i, face) in emb.faces().iter().enumerate() {
                let names: Vec<&str> = face.vertices(h).iter().map(|&v| h.name(v)).collect();
                writeln!(out, "face {i} {}", names.join(" ")).map_err(io_err)?;
            }
            Ok(EXIT_YES)
        }
    }
}

fn reduce(inst: Instance, from: FromKind, to: ToKind) -> Result<String, String> {
    let found = inst.kind();
    let wanted = match from {
        FromKind::Pp => Kind::Pp,
        FromKind::Pep => Kind::Pep,
        FromKind::Hpp => Kind::Hpp,
        FromKind::Fccp => Kind::Fccp,
    };
    if found != wanted {
        return Err(format!("--from {} but the file is {}", wanted.header(), found.header()));
    }
    let e = |e: crate::error::ReductionError| e.to_string();
    match (inst, to) {
        (Instance::Pp { graph, fixed }, ToKind::Hpp) => Ok(format::write_hpp(&pp_to_hpp(&graph, &fixed))),
        (Instance::Pp { graph, fixed }, ToKind::Fccp) => Ok(format::write_fccp(&hpp_to_fccp(&pp_to_hpp(&graph, &fixed)))),
        (Instance::Pep(p), ToKind::Fccp) => Ok(format::write_fccp(&pep_to_fccp(&p).map_err(e)?)),
        (Instance::Pep(p), ToKind::Hpp) => Ok(format::write_hpp(&fccp_to_hpp(&pep_to_fccp(&p).map_err(e)?).map_err(e)?)),
        (Instance::Hpp(h), ToKind::Fccp) => Ok(format::write_fccp(&hpp_to_fccp(&h))),
        (Instance::Hpp(h), ToKind::Hpp) => Ok(format::write_hpp(&h)),
        (Instance::Fccp(f), ToKind::Hpp) => Ok(format::write_hpp(&fccp_to_hpp(&f).map_err(e)?)),
        (Instance::Fccp(f), ToKind::Fccp) => Ok(format::write_fccp(&f)),
    }
}
