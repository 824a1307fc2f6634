//! Command-line driver: build triangulations from point files, run the
//! Delaunay flip loop, and check or summarize map files.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage error, 2 invalid or
//! degenerate input, 3 oracle failure, 4 flip budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use flipmap::builder::{self, BuilderError, PointSet};
use flipmap::delaunay::{self, DelaunayOptions, EngineError, TriMap};
use flipmap::exec::Execution;
use flipmap::io;
use flipmap::svg::{render_svg, SvgOptions};
use flipmap::verify::{self, CheckReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "flipmap", version, about = "Exact Delaunay triangulation by edge flips on hypermaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the initial triangulation of a point file.
    Triangulate {
        input: PathBuf,
        /// Map file to write; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Flip illegal edges until the triangulation is Delaunay.
    Delaunay {
        /// Point file or map file.
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write one `FLIP <dart> <before> <after>` line per flip.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Directory for one SVG per flip plus `final.svg`.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Flip cap; defaults to 10·n² for n distinct points.
        #[arg(long)]
        max_flips: Option<usize>,
        /// Run the empty-circumcircle oracle on the result.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check a map file: triangulation, embedding and Delaunay oracle.
    Check {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the census, lifted volume and illegal-edge count of a map file.
    Stats {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Also reject cocircular quadruples of input points.
    #[arg(long)]
    cocircular_scan: bool,
    /// Run every scan on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

/// A failure carrying its exit code; the message is already formatted.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn report(code: i32, headline: &str, report: &CheckReport) -> Self {
        let mut message = headline.to_string();
        for v in &report.violations {
            message.push('\n');
            message.push_str(&v.record());
            message.push_str("\n  ");
            message.push_str(&v.detail);
        }
        Failure { code, message }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, contents: &str, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            out.write_all(contents.as_bytes()).map_err(|e| Failure::new(EXIT_IO, format!("cannot write output: {e}")))
        }
    }
}

fn load_points(path: &Path) -> Result<PointSet, Failure> {
    let text = read(path)?;
    io::parse_points(&text).map_err(|e| Failure::new(EXIT_IO, format!("{}:{}: {}", path.display(), e.line, e.message)))
}

fn load_map(path: &Path) -> Result<flipmap::Hypermap, Failure> {
    let text = read(path)?;
    io::parse_map(&text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn certify(map: flipmap::Hypermap) -> Result<TriMap, Failure> {
    TriMap::new(map).map_err(|e| Failure::report(EXIT_INVALID, "not a well-embedded triangulation", &e.report))
}

fn cocircular_scan(points: Vec<flipmap::Point>, exec: Execution) -> CmdResult {
    if points.len() < 4 {
        return Ok(());
    }
    let mut points = points;
    let interior = points.split_off(3);
    let boundary: [flipmap::Point; 3] = points.try_into().expect("three points");
    let report = verify::general_position(&PointSet::new(boundary, interior), true, exec);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::report(EXIT_INVALID, "points are not in general position", &report))
    }
}

fn triangulate(ps: &PointSet, common: &Common) -> Result<TriMap, Failure> {
    if common.cocircular_scan {
        cocircular_scan(ps.points(), common.execution())?;
    }
    builder::initial_triangulation_with(ps, common.execution()).map_err(|e| match e {
        BuilderError::DegenerateInput(report) => Failure::report(EXIT_INVALID, "degenerate input", &report),
        other => Failure::new(EXIT_INVALID, other.to_string()),
    })
}

fn cmd_triangulate(input: &Path, output: Option<&Path>, common: &Common, out: &mut dyn Write) -> CmdResult {
    let ps = load_points(input)?;
    let t = triangulate(&ps, common)?;
    emit(output, &io::write_map(t.map()), out)
}

struct DelaunayArgs<'a> {
    input: &'a Path,
    output: Option<&'a Path>,
    trace: Option<&'a Path>,
    svg: Option<&'a Path>,
    max_flips: Option<usize>,
    check: bool,
    common: &'a Common,
}

fn cmd_delaunay(args: DelaunayArgs<'_>, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let text = read(args.input)?;
    let start = if io::is_map_file(&text) {
        let t = certify(load_map(args.input)?)?;
        if args.common.cocircular_scan {
            cocircular_scan(t.map().darts_and_points().1, args.common.execution())?;
        }
        t
    } else {
        triangulate(&load_points(args.input)?, args.common)?
    };

    if let Some(dir) = args.svg {
        fs::create_dir_all(dir).map_err(|e| Failure::new(EXIT_IO, format!("cannot create {}: {e}", dir.display())))?;
    }
    let highlight = SvgOptions { highlight_illegal: true };
    let mut page = 0usize;
    let mut svg_error = None;
    let opts =
        DelaunayOptions { max_flips: args.max_flips, execution: args.common.execution(), ..DelaunayOptions::default() };
    let result = delaunay::delaunay_with(&start, &opts, |t, _| {
        if let (Some(dir), None) = (args.svg, &svg_error) {
            page += 1;
            let path = dir.join(format!("flip_{page:04}.svg"));
            if let Err(e) = write_file(&path, &render_svg(t, highlight)) {
                svg_error = Some(e);
            }
        }
    });
    if let Some(e) = svg_error {
        return Err(e);
    }

    let (done, trace) = match result {
        Ok(r) => r,
        Err(EngineError::FlipBudgetExceeded { cap, trace }) => {
            if let Some(p) = args.trace {
                write_file(p, &io::write_trace(&trace))?;
            }
            return Err(Failure::new(EXIT_BUDGET, format!("flip budget of {cap} exceeded")));
        }
        Err(e) => return Err(Failure::new(EXIT_ORACLE, e.to_string())),
    };

    if let Some(p) = args.trace {
        write_file(p, &io::write_trace(&trace))?;
    }
    if let Some(dir) = args.svg {
        write_file(&dir.join("final.svg"), &render_svg(&done, highlight))?;
    }
    emit(args.output, &io::write_map(done.map()), out)?;
    let _ = writeln!(err, "flips={}", trace.flip_count());

    if args.check {
        let report = verify::delaunay_oracle(&done, args.common.execution());
        if !report.passed() {
            return Err(Failure::report(EXIT_ORACLE, "delaunay oracle failed", &report));
        }
    }
    Ok(())
}

fn print_report(out: &mut dyn Write, name: &str, report: &CheckReport) {
    let _ = writeln!(out, "{name}: {}", if report.passed() { "passed" } else { "FAILED" });
    for v in &report.violations {
        let _ = writeln!(out, "{}", v.record());
    }
}

fn cmd_check(input: &Path, common: &Common, out: &mut dyn Write) -> CmdResult {
    let map = load_map(input)?;
    let triangulation = verify::check_triangulation(&map);
    print_report(out, "triangulation", &triangulation);
    let embedding = if triangulation.passed() { verify::check_wellembedded(&map) } else { CheckReport::default() };
    if triangulation.passed() {
        print_report(out, "embedding", &embedding);
    }
    if !triangulation.passed() || !embedding.passed() {
        return Err(Failure::new(EXIT_INVALID, "not a well-embedded triangulation"));
    }
    let t = certify(map)?;
    if common.cocircular_scan {
        cocircular_scan(t.map().darts_and_points().1, common.execution())?;
    }
    let oracle = verify::delaunay_oracle(&t, common.execution());
    print_report(out, "delaunay", &oracle);
    if oracle.passed() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_ORACLE, "delaunay oracle failed"))
    }
}

fn cmd_stats(input: &Path, common: &Common, out: &mut dyn Write) -> CmdResult {
    let map = load_map(input)?;
    let census = map.census();
    let t = certify(map)?;
    let _ = writeln!(out, "{census}");
    let _ = writeln!(out, "volume={}", delaunay::total_lifted_volume(&t));
    let _ = writeln!(out, "illegal_edges={}", delaunay::illegal_edge_count(&t, common.execution()));
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Regular output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            } else {
                let _ = write!(err, "{}", e.render());
                EXIT_IO
            };
        }
    };
    let result = match &cli.command {
        Command::Triangulate { input, output, common } => cmd_triangulate(input, output.as_deref(), common, out),
        Command::Delaunay { input, output, trace, svg, max_flips, check, common } => cmd_delaunay(
            DelaunayArgs {
                input,
                output: output.as_deref(),
                trace: trace.as_deref(),
                svg: svg.as_deref(),
                max_flips: *max_flips,
                check: *check,
                common,
            },
            out,
            err,
        ),
        Command::Check { input, common } => cmd_check(input, common, out),
        Command::Stats { input, common } => cmd_stats(input, common, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
