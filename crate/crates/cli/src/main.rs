mod custom;

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use vtg_core::discretize::{discretize, read_sample, SampleMetric};
use vtg_core::family::{parse_gens, FamilySpec};
use vtg_core::gh::{certify_family, GhError};
use vtg_core::graph::LabeledGraph;
use vtg_core::groups::DEFAULT_BUDGET;
use vtg_core::limits::LimitModel;
use vtg_core::metric::{diameter, doubling_report, growth_profile};
use vtg_core::structure::{find_fat_triangle, line_defect, max_caret_branch, StructureError};

use custom::CustomCayley;

/// Seed used by every command when `--seed` is not given.
const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "vtg", version, about = "Vertex-transitive graph families and their scaling limits")]
struct Cli {
    /// Write a JSON run report (command, input digest, outputs, exit status).
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one member of a family and write it as a vtg file.
    Build(BuildArgs),
    /// Metric and structure diagnostics of a vtg graph, as JSON.
    Analyze(AnalyzeArgs),
    /// Upper and lower GH bounds against a limit model, as CSV.
    Certify(CertifyArgs),
    /// Net graph of a point sample, written as a vtg file.
    Discretize(DiscretizeArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// cyclic, torus-k, shifted-base-k, heisenberg, dihedral,
    /// random-3-regular, or custom-cayley:<file.json>.
    #[arg(long)]
    family: String,
    /// Generator overrides as integer vectors, e.g. "1,0;0,1;1,1".
    #[arg(long)]
    gens: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest number of group elements or vertices to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Output vtg file; standard output when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    graph: PathBuf,
    /// Base vertex for growth, carets and the line defect.
    #[arg(long, default_value_t = 0)]
    source: usize,
    /// Largest caret radius searched; the eccentricity of the source by default.
    #[arg(long)]
    radius: Option<u32>,
    /// Fatness sought; a quarter of the diameter by default.
    #[arg(long)]
    delta: Option<f64>,
    /// Triangles and segments evaluated by the randomized searches.
    #[arg(long, default_value_t = 2000)]
    budget: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// circle, l1-torus-k, or a JSON norm file.
    #[arg(long)]
    model: String,
    /// Comma-separated parameters, e.g. 50,100,200.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    tol: f64,
    /// Sampled vertex pairs per member for the pointwise error.
    #[arg(long, default_value_t = 400)]
    samples: usize,
    /// Output CSV file; standard output when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiscretizeArgs {
    /// CSV rows `id,x1,..,xm`.
    #[arg(long)]
    sample: PathBuf,
    /// euclidean, l1-torus, circle, circle:<circumference>, explicit-matrix.
    #[arg(long, default_value = "euclidean")]
    metric: String,
    #[arg(long)]
    t: f64,
    /// Output vtg file; standard output when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Certification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Certification(_) => 2,
        }
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs_sha256: String,
    outputs: Vec<String>,
    exit_status: u8,
}

/// Accumulates what went into and came out of a command.
struct Run {
    hasher: Sha256,
    outputs: Vec<String>,
}

impl Run {
    fn new() -> Self {
        let mut hasher = Sha256::new();
        for arg in std::env::args().skip(1) {
            hasher.update(arg.as_bytes());
            hasher.update([0]);
        }
        Run { hasher, outputs: Vec::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<(), Failure> {
        match out {
            Some(path) => {
                fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                self.outputs.push(path.display().to_string());
            }
            None => {
                io::stdout().write_all(text.as_bytes()).map_err(input)?;
                self.outputs.push("-".into());
            }
        }
        Ok(())
    }
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec, Failure> {
    let mut spec: FamilySpec = args.family.parse().map_err(input)?;
    if let Some(g) = &args.gens {
        spec = spec.with_gens(parse_gens(g).map_err(input)?).map_err(input)?;
    }
    Ok(spec.with_seed(args.seed))
}

fn build(args: &BuildArgs, run: &mut Run) -> Result<(), Failure> {
    let graph = match args.family.family.strip_prefix("custom-cayley:") {
        Some(path) => {
            let text = run.read(Path::new(path))?;
            CustomCayley::parse(&text).map_err(Failure::Input)?.build(args.family.budget).map_err(Failure::Input)?
        }
        None => {
            if args.n == 0 {
                return Err(Failure::Input("--n is required".into()));
            }
            family_spec(&args.family)?.build(args.n, args.family.budget).map_err(input)?.graph
        }
    };
    run.emit(args.out.as_deref(), &graph.to_vtg_string())?;
    eprintln!("vertices {} edges {} max-degree {}", graph.num_vertices(), graph.num_edges(), graph.max_degree());
    Ok(())
}

fn analyze(args: &AnalyzeArgs, run: &mut Run) -> Result<(), Failure> {
    let text = run.read(&args.graph)?;
    let graph = LabeledGraph::read_vtg(BufReader::new(text.as_bytes())).map_err(input)?;
    let n = graph.num_vertices();
    if args.source >= n {
        return Err(Failure::Input(format!("source {} outside a graph of {n} vertices", args.source)));
    }
    let d = diameter(&graph).map_err(input)?;

    let profile = growth_profile(&graph, args.source);
    let ecc = profile.r_max();
    // past half the eccentricity the ball is dominated by saturation
    let fit_hi = (ecc / 2).max(2).min(ecc);
    let exponent = (fit_hi > 1).then(|| profile.exponent_fit(1, fit_hi));
    let doubling = match doubling_report(&profile, exponent.map_or(1, |e| e.ceil().max(1.0) as u32), 2) {
        Ok(r) => serde_json::to_value(r).map_err(input)?,
        Err(e) => json!({ "error": e.to_string() }),
    };

    let caret = max_caret_branch(&graph, args.source, args.radius.unwrap_or(ecc as u32).max(1));

    let delta = args.delta.unwrap_or(d as f64 / 4.0);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let triangle = match find_fat_triangle(&graph, delta, args.budget, &mut rng) {
        Ok(t) => json!({ "delta": delta, "found": true, "triangle": t }),
        Err(StructureError::BudgetExhausted { best }) => json!({ "delta": delta, "found": false, "best_fatness": best }),
        Err(e) => return Err(input(e)),
    };

    let defect_r = (ecc / 2) as u32;
    let defect = line_defect(&graph, args.source, defect_r, args.budget);

    let bundle = json!({
        "vertices": n,
        "edges": graph.num_edges(),
        "transitive": graph.is_transitive(),
        "diameter": d,
        "growth": {
            "source": args.source,
            "balls": profile.balls,
            "saturated": profile.saturated,
            "fit_range": [1, fit_hi],
            "exponent_fit": exponent,
        },
        "doubling": doubling,
        "caret": caret,
        "fat_triangle": triangle,
        "line_defect": defect,
    });
    let mut text = serde_json::to_string_pretty(&bundle).map_err(input)?;
    text.push('\n');
    run.emit(args.out.as_deref(), &text)
}

fn read_model(spec: &str, run: &mut Run) -> Result<LimitModel, Failure> {
    match spec.parse::<LimitModel>() {
        Ok(m) => Ok(m),
        Err(_) if Path::new(spec).is_file() => LimitModel::from_json(&run.read(Path::new(spec))?).map_err(input),
        Err(e) => Err(input(e)),
    }
}

fn certify(args: &CertifyArgs, run: &mut Run) -> Result<(), Failure> {
    if args.family.family.starts_with("custom-cayley:") {
        return Err(Failure::Input("custom-cayley graphs have no parameter n to certify over".into()));
    }
    let family = family_spec(&args.family)?;
    let model = read_model(&args.model, run)?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(Failure::Input("--tol must be positive".into()));
    }
    let cert = certify_family(&family, &model, &args.n, args.tol, args.samples, args.family.seed, args.family.budget)
        .map_err(|e| match e {
            GhError::Stage { .. } => Failure::Certification(e.to_string()),
            other => input(other),
        })?;
    run.emit(args.out.as_deref(), &cert.report.to_csv())?;
    let last = cert.report.rows.last().map_or(f64::NAN, |r| r.gh_upper);
    if cert.pass {
        eprintln!("PASS {family} -> {model}: final bound {last:.6} <= {}", args.tol);
        Ok(())
    } else {
        Err(Failure::Certification(format!(
            "{family} -> {model}: bounds not strictly decreasing to within {} (final {last:.6})",
            args.tol
        )))
    }
}

fn discretize_cmd(args: &DiscretizeArgs, run: &mut Run) -> Result<(), Failure> {
    let metric: SampleMetric = args.metric.parse().map_err(Failure::Input)?;
    let text = run.read(&args.sample)?;
    let sample = read_sample(text.as_bytes(), metric).map_err(input)?;
    let (net, report) = discretize(&sample.space, args.t, Some(&sample.ids)).map_err(input)?;
    run.emit(args.out.as_deref(), &net.graph.to_vtg_string())?;
    let summary = json!({ "report": report, "net_ids": net.points.iter().map(|&p| &sample.ids[p]).collect::<Vec<_>>() });
    eprintln!("{}", serde_json::to_string(&summary).map_err(input)?);
    Ok(())
}

fn write_report(path: &Path, report: &RunReport) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    out.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut run = Run::new();
    let (name, result) = match &cli.command {
        Command::Build(a) => ("build", build(a, &mut run)),
        Command::Analyze(a) => ("analyze", analyze(a, &mut run)),
        Command::Certify(a) => ("certify", certify(a, &mut run)),
        Command::Discretize(a) => ("discretize", discretize_cmd(a, &mut run)),
    };
    let code = match &result {
        Ok(()) => 0,
        Err(f) => f.code(),
    };
    match result {
        Err(Failure::Input(msg)) => eprintln!("error: {msg}"),
        Err(Failure::Certification(msg)) => eprintln!("FAIL {msg}"),
        Ok(()) => {}
    }
    if let Some(path) = &cli.report {
        let report = RunReport {
            command: name.into(),
            inputs_sha256: format!("{:x}", run.hasher.finalize()),
            outputs: run.outputs,
            exit_status: code,
        };
        if let Err(e) = write_report(path, &report) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
