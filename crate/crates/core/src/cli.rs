//! Command-line front end. `run` is the whole program minus process setup, so
//! it can be driven from tests with in-memory streams.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 input rejected by a domain rule.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::eventree::{enumerate_even_trees, path_to_tree, tree_to_path, EvenTree};
use crate::lattice::{enumerate_paths, GridPosition, LatticePath, LatticeTable};
use crate::matching::{enumerate_q, matching_to_path, path_to_matching, PartialMatching, SequentialForm};
use crate::verify::{self, Formulas, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "latpoly", version, about = "Lattice polynomials, 12312-avoiding partial matchings and even trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print L(i, j)(x) for every 0 <= i <= max-i and 2j <= i.
    Table {
        #[arg(long = "max-i", visible_alias = "i", default_value_t = 8)]
        max_i: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Map an object through one of the bijections.
    Map {
        #[arg(value_enum)]
        kind: MapKind,
        /// Encoded input object, or `-` to read standard input.
        input: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run the brute-force identity suite.
    Verify {
        #[arg(long = "max-n", default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Enumerate paths, matchings or even trees, one object per line.
    Enum {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        edges: Option<u32>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    PathToMatching,
    MatchingToPath,
    PathToTree,
    TreeToPath,
    MatchingToTree,
    TreeToMatching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Paths,
    Matchings,
    Trees,
}

/// Why a command stopped early.
enum Failure {
    Usage(String),
    Domain(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write, formulas: &Formulas) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Table { max_i, format } => cmd_table(max_i, format, out),
        Command::Map { kind, input, format } => read_input(&input, stdin).and_then(|s| {
            let rendered = cmd_map(kind, &s, format)?;
            writeln!(out, "{rendered}")?;
            Ok(EXIT_OK)
        }),
        Command::Verify { max_n, seed, format } => cmd_verify(max_n, seed, format, formulas, out),
        Command::Enum { family, i, j, edges, format } => cmd_enum(family, i, j, edges, format, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "rejected: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "i/o error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_input(input: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s.trim().to_string())
    } else {
        Ok(input.trim().to_string())
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn parse_path(s: &str) -> Result<LatticePath, Failure> {
    if s.starts_with('"') {
        serde_json::from_str(s).map_err(|e| Failure::Usage(e.to_string()))
    } else {
        Ok(s.parse()?)
    }
}

/// JSON object, or a comma-separated sequential form.
fn parse_matching(s: &str) -> Result<PartialMatching, Failure> {
    if s.starts_with('{') {
        serde_json::from_str(s).map_err(|e| Failure::Usage(e.to_string()))
    } else {
        Ok(s.parse::<SequentialForm>()?.to_matching())
    }
}

/// JSON object, or the parenthesis encoding.
fn parse_tree(s: &str) -> Result<EvenTree, Failure> {
    if s.starts_with('{') {
        serde_json::from_str(s).map_err(|e| Failure::Usage(e.to_string()))
    } else {
        Ok(s.parse()?)
    }
}

fn tree_endpoint(t: &EvenTree) -> Result<GridPosition, Failure> {
    let e = t.edges() as u32;
    if t.is_dotted() || e % 2 == 1 {
        return Err(Failure::Domain(format!("{t} is not a complete (undotted) even tree")));
    }
    Ok(GridPosition::new(e, e / 2))
}

fn render_path(p: &LatticePath, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(p),
        _ => p.to_string(),
    }
}

fn render_matching(m: &PartialMatching, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(m),
        _ => m.to_string(),
    }
}

fn render_tree(t: &EvenTree, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(t),
        _ => t.to_parens(),
    }
}

fn cmd_map(kind: MapKind, input: &str, format: OutputFormat) -> Result<String, Failure> {
    Ok(match kind {
        MapKind::PathToMatching => render_matching(&path_to_matching(&parse_path(input)?), format),
        MapKind::MatchingToPath => render_path(&matching_to_path(&parse_matching(input)?)?, format),
        MapKind::PathToTree => render_tree(&path_to_tree(&parse_path(input)?), format),
        MapKind::TreeToPath => {
            let t = parse_tree(input)?;
            render_path(&tree_to_path(&t, tree_endpoint(&t)?)?, format)
        }
        MapKind::MatchingToTree => {
            let path = matching_to_path(&parse_matching(input)?)?;
            render_tree(&path_to_tree(&path), format)
        }
        MapKind::TreeToMatching => {
            let t = parse_tree(input)?;
            render_matching(&path_to_matching(&tree_to_path(&t, tree_endpoint(&t)?)?), format)
        }
    })
}

fn cmd_table(max_i: u32, format: OutputFormat, out: &mut dyn Write) -> Result<i32, Failure> {
    let table = LatticeTable::new(max_i)?;
    match format {
        OutputFormat::Text => {
            writeln!(out, "{:>3} {:>3}  L(i,j)(x)", "i", "j")?;
            for (pos, p) in table.entries() {
                writeln!(out, "{:>3} {:>3}  {p}", pos.i, pos.j)?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<_> = table.entries().map(|(pos, p)| (pos.i, pos.j, p)).collect();
            writeln!(out, "{}", json(&rows))?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["i", "j", "polynomial"])?;
            for (pos, p) in table.entries() {
                w.write_record([pos.i.to_string(), pos.j.to_string(), p.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn render_report(report: &VerifyReport, format: OutputFormat, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        OutputFormat::Json => writeln!(out, "{}", json(report))?,
        OutputFormat::Text => {
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{mark}  {:<20} [{}]  {}", c.name, c.range, c.detail)?;
            }
            writeln!(out, "overall: {}", if report.overall { "PASS" } else { "FAIL" })?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["name", "range", "passed", "detail"])?;
            for c in &report.checks {
                w.write_record([c.name, &c.range, if c.passed { "true" } else { "false" }, &c.detail])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_verify(max_n: u32, seed: u64, format: OutputFormat, formulas: &Formulas, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = verify::run(max_n, seed, formulas);
    render_report(&report, format, out)?;
    Ok(if report.overall { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn require(v: Option<u32>, flag: &str) -> Result<u32, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn cmd_enum(
    family: Family,
    i: Option<u32>,
    j: Option<u32>,
    edges: Option<u32>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    // (text encoding, json encoding, statistic)
    let rows: Vec<(String, String, u32)> = match family {
        Family::Paths | Family::Matchings => {
            let pos = GridPosition::new(require(i, "i")?, require(j, "j")?);
            if !pos.is_valid() {
                return Err(Failure::Usage(format!("{pos} lies above the line x = 2y")));
            }
            if family == Family::Paths {
                enumerate_paths(pos).iter().map(|p| (p.to_string(), json(p), p.weight_exponent())).collect()
            } else {
                enumerate_q(pos.i, pos.j).iter().map(|m| (m.to_string(), json(m), m.crossings())).collect()
            }
        }
        Family::Trees => {
            let e = require(edges, "edges")?;
            if e % 2 == 1 {
                return Err(Failure::Usage(format!("--edges must be even, got {e}")));
            }
            enumerate_even_trees(e as usize).iter().map(|t| (t.to_parens(), json(t), t.r_index())).collect()
        }
    };
    match format {
        OutputFormat::Json => {
            for (_, js, _) in &rows {
                writeln!(out, "{js}")?;
            }
        }
        OutputFormat::Text => {
            for (text, _, _) in &rows {
                writeln!(out, "{text}")?;
            }
            writeln!(out, "count: {}", rows.len())?;
        }
        OutputFormat::Csv => {
            let stat = match family {
                Family::Paths => "weight",
                Family::Matchings => "crossings",
                Family::Trees => "r_index",
            };
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["object", stat])?;
            for (text, _, s) in &rows {
                w.write_record([text.as_str(), &s.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut input = stdin.as_bytes();
        let argv = std::iter::once("latpoly").chain(args.iter().copied());
        let code = run(argv, &mut input, &mut out, &mut err, &Formulas::default());
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn map_examples() {
        assert_eq!(call(&["map", "path-to-matching", "EEENEN"], "").1, "{\"m\":4,\"edges\":[[1,3],[2,4]]}\n");
        assert_eq!(call(&["map", "path-to-tree", ""], "").1, "{\"dotted\":false,\"root\":[]}\n");
        let (code, out, _) = call(&["map", "matching-to-tree", "-"], r#"{"m":4,"edges":[[1,3],[2,4]]}"#);
        assert_eq!(code, 0);
        let t: EvenTree = serde_json::from_str(&out).unwrap();
        assert_eq!(t.edges(), 4);
        assert_eq!(t.r_index(), 1);
        assert_eq!(call(&["map", "matching-to-path", "1,2,1,2", "--format", "text"], "").1, "EEENEN\n");
    }

    #[test]
    fn map_errors() {
        assert_eq!(call(&["map", "path-to-matching", "EEX"], "").0, EXIT_USAGE);
        assert_eq!(call(&["map", "path-to-matching", "EN"], "").0, EXIT_USAGE);
        assert_eq!(call(&["map", "matching-to-path", "{\"m\":3"], "").0, EXIT_USAGE);
        let (code, _, err) = call(&["map", "matching-to-path", r#"{"m":4,"edges":[[1,4]]}"#], "");
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("covers 2 isolated points"), "{err}");
        assert_eq!(call(&["map", "tree-to-path", "*()()"], "").0, EXIT_DOMAIN);
        assert_eq!(call(&["map", "bogus", "EEN"], "").0, EXIT_USAGE);
    }

    #[test]
    fn table_formats() {
        let (code, out, _) = call(&["table", "--max-i", "8"], "");
        assert_eq!(code, 0);
        assert!(out.contains("  8   4  14 + 21*x + 15*x^2 + 5*x^3"), "{out}");
        let (_, out, _) = call(&["table", "--max-i", "0"], "");
        assert_eq!(out.lines().nth(1).unwrap().trim_start(), "0   0  1");
        assert_eq!(out.lines().count(), 2);
        let (_, out, _) = call(&["table", "--max-i", "4", "--format", "json"], "");
        assert!(out.contains("[4,2,[2,1]]"), "{out}");
        let (_, out, _) = call(&["table", "--max-i", "2", "--format", "csv"], "");
        assert_eq!(out, "i,j,polynomial\n0,0,1\n1,0,1\n2,0,1\n2,1,1\n");
    }

    #[test]
    fn enum_counts() {
        assert_eq!(call(&["enum", "trees", "--edges", "4"], "").1.lines().count(), 3);
        assert_eq!(call(&["enum", "matchings", "--i", "4", "--j", "1"], "").1.lines().count(), 3);
        let (_, out, _) = call(&["enum", "paths", "--i", "0", "--j", "0"], "");
        assert_eq!(out, "\"\"\n");
        let (_, out, _) = call(&["enum", "paths", "--i", "4", "--j", "2", "--format", "text"], "");
        assert!(out.ends_with("count: 3\n"), "{out}");
        assert_eq!(call(&["enum", "trees", "--edges", "3"], "").0, EXIT_USAGE);
        assert_eq!(call(&["enum", "paths", "--i", "1", "--j", "1"], "").0, EXIT_USAGE);
        assert_eq!(call(&["enum", "paths", "--i", "1"], "").0, EXIT_USAGE);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = call(&["verify", "--max-n", "1"], "");
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("overall: PASS\n"));
        assert_eq!(call(&["verify", "--max-n", "0"], "").0, EXIT_USAGE);
    }
}
