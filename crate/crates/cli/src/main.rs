use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raagh_core::io::{parse_graph, serialize_graph, to_dot, Format};
use raagh_core::report::{ReportDocument, Timings};
use raagh_core::{
    build_cup_form, compute_h, generate_family, radical_at, substitute, verify, AlphaVector, Error,
    FamilyCertificate, Graph, GridShape, SolverConfig,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "raagh", version, about = "h-bounds for right-angled Artin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Betti numbers, m2 and the h bounds of a graph.
    Compute(ComputeArgs),
    /// Write a member of a graph family.
    Generate(GenerateArgs),
    /// Print the cup-product template, or its value at an alpha.
    Form(FormArgs),
    /// Convert a graph to another format or to Graphviz.
    Export(ExportArgs),
    /// Recompute the published reference values and print a pass/fail table.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct Input {
    /// Graph file.
    file: PathBuf,
    /// Input format; guessed from the extension if omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

impl Input {
    fn load(&self) -> Result<Graph, Failure> {
        let text = fs::read_to_string(&self.file)
            .map_err(|e| Failure::input(format!("{}: {e}", self.file.display())))?;
        let format = self.format.unwrap_or_else(|| Format::from_path(&self.file));
        parse_graph(&text, format).map_err(|e| Failure::input(format!("{}: {e}", self.file.display())))
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Largest number of 4-cliques in one block searched exhaustively.
    #[arg(long, env = "RAAGH_CAP", default_value_t = raagh_core::solver::DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for the exhaustive search.
    #[arg(long, env = "RAAGH_WORKERS")]
    workers: Option<usize>,
    /// Use seeded search for blocks above the cap.
    #[arg(long)]
    heuristic: bool,
    /// Fail with exit code 3 instead of falling back when the cap is exceeded.
    #[arg(long)]
    strict: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default().with_cap(self.cap);
        if let Some(w) = self.workers {
            cfg = cfg.with_workers(w);
        }
        cfg.heuristic = self.heuristic;
        cfg.strict = self.strict;
        cfg
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    Text,
    Json,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = ReportKind::Text)]
    report: ReportKind,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Edgeless,
    Complete,
    CliqueString,
    FaceString,
    Grid,
    HexTriangle,
    FiveFourEdgeShare,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: Family,
    /// Vertex count (edgeless, complete).
    #[arg(long)]
    n: Option<usize>,
    /// Clique size (clique-string).
    #[arg(long)]
    size: Option<usize>,
    /// Number of cliques (clique-string, face-string).
    #[arg(long)]
    count: Option<usize>,
    /// Grid rows and columns of cells.
    #[arg(long)]
    rows: Option<u32>,
    #[arg(long)]
    cols: Option<u32>,
    /// Hex triangle side.
    #[arg(long)]
    side: Option<usize>,
    #[arg(long, value_parser = parse_format, default_value = "edges")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FormArgs {
    #[command(flatten)]
    input: Input,
    /// Little-endian bit string: character p is the coefficient of 4-clique p.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    input: Input,
    /// Emit Graphviz instead of a graph file.
    #[arg(long)]
    dot: bool,
    /// Output graph format when not using --dot.
    #[arg(long, value_parser = parse_format, default_value = "edges")]
    to: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, env = "RAAGH_WORKERS")]
    workers: Option<usize>,
    /// Random graphs in the property check.
    #[arg(long, default_value_t = 200)]
    random: usize,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Self { code: EXIT_INPUT, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) { EXIT_CAP } else { EXIT_FAILURE };
        Self { code, message: e.to_string() }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let g = args.input.load()?;
    let parse_ms = ms(start);
    let cfg = args.solver.config();
    let solve_start = Instant::now();
    let h = compute_h(&g, &cfg)?;
    let solve_ms = ms(solve_start);
    let mut doc = ReportDocument::new(&g, h, &cfg);
    if args.timings {
        doc.timings = Some(Timings { parse_ms, solve_ms, total_ms: ms(start) });
    }
    let text = match args.report {
        ReportKind::Text => doc.to_text(),
        ReportKind::Json => doc.to_json(),
    };
    emit(args.out.as_deref(), &text)
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure { code: EXIT_FAILURE, message: format!("missing --{flag}") })
}

fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let cert = match args.family {
        Family::Edgeless => FamilyCertificate::Edgeless { n: need(args.n, "n")? },
        Family::Complete => FamilyCertificate::Complete { n: need(args.n, "n")? },
        Family::CliqueString => FamilyCertificate::CliqueEdgeString {
            clique_size: need(args.size, "size")?,
            count: need(args.count, "count")?,
        },
        Family::FaceString => FamilyCertificate::FaceString { count: need(args.count, "count")? },
        Family::Grid => FamilyCertificate::Grid {
            shape: GridShape::rectangle(need(args.rows, "rows")?, need(args.cols, "cols")?),
        },
        Family::HexTriangle => FamilyCertificate::HexThickTriangle { side: need(args.side, "side")? },
        Family::FiveFourEdgeShare => FamilyCertificate::FiveFourEdgeShare,
    };
    let g = generate_family(&cert)?;
    emit(args.out.as_deref(), &serialize_graph(&g, args.format))
}

fn form(args: &FormArgs) -> Result<(), Failure> {
    let g = args.input.load()?;
    let t = build_cup_form(&g);
    let text = match &args.alpha {
        None => t.to_text(),
        Some(bits) => {
            let alpha = AlphaVector::parse(bits)?;
            let m = substitute(&t, &alpha)?;
            let radical = radical_at(&g, &alpha)?;
            let mut s = m.to_text();
            s.push_str(&format!("# rank {} nullity {}\n", m.rank(), radical.dim()));
            for v in &radical.pretty {
                s.push_str(&format!("# radical {v}\n"));
            }
            s
        }
    };
    emit(args.out.as_deref(), &text)
}

fn export(args: &ExportArgs) -> Result<(), Failure> {
    let g = args.input.load()?;
    let text = if args.dot { to_dot(&g) } else { serialize_graph(&g, args.to) };
    emit(args.out.as_deref(), &text)
}

fn verify_paper(args: &VerifyArgs) -> Result<(), Failure> {
    let workers = args.workers.unwrap_or_else(|| SolverConfig::default().workers);
    let results = verify::run_all(workers, args.random);
    println!("{:>3}  {:<4}  {:>9}  {:<38}  detail", "#", "", "time", "check");
    for r in &results {
        println!(
            "{:>3}  {:<4}  {:>7.0}ms  {:<38}  {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.elapsed.as_secs_f64() * 1000.0,
            r.name,
            r.detail
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        return Err(Failure { code: EXIT_FAILURE, message: format!("{failed} checks failed") });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Generate(a) => generate(a),
        Command::Form(a) => form(a),
        Command::Export(a) => export(a),
        Command::VerifyPaper(a) => verify_paper(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("raagh: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
