//! `qgm`: command-line front end for qgm-core.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use qgm_core::classical::{
    denoise_demo, hc_factorize, is_markov_network, sum_product_bp, transfer_matrix_z, BinaryGrid, ChainFile,
    FactorizationFile, PairwiseModel, PairwiseModelFile,
};
use qgm_core::graph::{SeparatorTriple, DEFAULT_MAX_A};
use qgm_core::plot::{render_plot, PlotLabels};
use qgm_core::quantum::{five_spin_preset, LocalHamiltonian, DEFAULT_COMMUTE_TOL};
use qgm_core::sweep::{parse_csv, run_check, run_cmi_sweep, to_csv, SweepConfig};
use qgm_core::verdict::DEFAULT_CMI_TOL;
use qgm_core::Error;

const FIVE_SPIN: &str = "five_spin";

#[derive(Parser)]
#[command(name = "qgm", version, about = "Classical and quantum Markov network toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep I(A:C|B) of a Gibbs state over a uniform beta grid; writes CSV.
    CmiSweep(SweepArgs),
    /// Commutation audit plus quantum Markov verdict at one beta; writes JSON.
    Check(CheckArgs),
    /// Render a sweep CSV as an SVG line plot.
    Plot(PlotArgs),
    /// Build a clique factorization and test it for the Markov property; writes JSON.
    HcCheck(HcCheckArgs),
    /// Sum-product belief propagation on a pairwise model; writes CSV marginals.
    Bp(BpArgs),
    /// Partition function of an open chain by transfer matrices.
    TransferZ(InputArgs),
    /// Restore a small noisy binary image from per-pixel posterior marginals.
    Denoise(DenoiseArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Preset name (`five_spin`) or path to a Hamiltonian JSON file.
    #[arg(long, default_value = FIVE_SPIN)]
    model: String,
    /// Field on spin 0 (five_spin preset).
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    h1: f64,
    /// Field on spin 2, split between the two middle groups (five_spin preset).
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    h2: f64,
    /// Field on spin 4 (five_spin preset).
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    h3: f64,
}

#[derive(Args)]
struct TripleArgs {
    #[arg(long = "A", value_delimiter = ',', default_value = "0,1")]
    a: Vec<usize>,
    #[arg(long = "B", value_delimiter = ',', default_value = "2")]
    b: Vec<usize>,
    #[arg(long = "C", value_delimiter = ',', default_value = "3,4")]
    c: Vec<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    triple: TripleArgs,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    beta_max: f64,
    #[arg(long, default_value_t = 51)]
    steps: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// CMI tolerance for the Markov verdict.
    #[arg(long, default_value_t = DEFAULT_CMI_TOL)]
    tol: f64,
    /// Relative tolerance for the commutation audit.
    #[arg(long, default_value_t = DEFAULT_COMMUTE_TOL)]
    commute_tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_A)]
    max_a: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Sweep CSV; `-` reads stdin.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    title: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HcCheckArgs {
    /// JSON `{"graph": ..., "potentials": [{"support": [...], "table": [...]}]}`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CMI_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_A)]
    max_a: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BpArgs {
    /// Pairwise model JSON `{"graph", "nodes", "edges"}`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    #[arg(long, default_value_t = 0.0)]
    damping: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Chain JSON `{"arities": [...], "terms": [[...], ...]}`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DenoiseArgs {
    /// Text grid of `0`/`1` rows; `-` reads stdin.
    #[arg(long)]
    input: PathBuf,
    /// Reward for equal neighbouring pixels.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    coupling: f64,
    /// Reward for agreeing with the observed pixel.
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    evidence: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Capacity { .. }) => 3,
        Some(Error::Numerical(_) | Error::Domain(_)) => 4,
        _ => 2,
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::CmiSweep(a) => {
            let h = load_model(&a.model)?;
            let cfg = SweepConfig {
                triple: triple(&a.triple, h.graph().vertex_count())?,
                beta_min: a.beta_min,
                beta_max: a.beta_max,
                steps: a.steps,
            };
            let points = run_cmi_sweep(&h, &cfg)?;
            emit(a.out.as_deref(), &to_csv(&points))
        }
        Command::Check(a) => {
            let h = load_model(&a.model)?;
            let report = run_check(&h, a.beta, a.max_a, a.tol, a.commute_tol)?;
            emit(a.out.as_deref(), &json(&report)?)
        }
        Command::Plot(a) => {
            let points = parse_csv(&read_input(&a.input)?)?;
            if points.is_empty() {
                bail!("no data rows in {}", a.input.display());
            }
            let mut labels = PlotLabels::default();
            if let Some(t) = a.title {
                labels.title = t;
            }
            let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.beta, p.cmi)).collect();
            emit(a.out.as_deref(), &render_plot(&xy, &labels)?)
        }
        Command::HcCheck(a) => {
            let f: FactorizationFile = read_json(&a.input)?;
            let fac = hc_factorize(&f.graph, &f.potentials)?;
            let report = is_markov_network(&f.graph, &fac.table, a.max_a, a.tol)?;
            let out = serde_json::json!({ "z": fac.z, "markov": report });
            emit(a.out.as_deref(), &json(&out)?)
        }
        Command::Bp(a) => {
            let f: PairwiseModelFile = read_json(&a.input)?;
            let model = PairwiseModel::try_from(f)?;
            let bp = sum_product_bp(&model, a.max_iters, a.damping)?;
            if !bp.converged {
                eprintln!(
                    "warning: not converged after {} iterations (last change {:e})",
                    bp.iterations, bp.last_change
                );
            }
            let mut csv = String::from("vertex,value,probability\n");
            for (v, m) in bp.marginals.iter().enumerate() {
                for (x, p) in m.iter().enumerate() {
                    csv.push_str(&format!("{v},{x},{p:.16e}\n"));
                }
            }
            emit(a.out.as_deref(), &csv)
        }
        Command::TransferZ(a) => {
            let f: ChainFile = read_json(&a.input)?;
            let z = transfer_matrix_z(&f.terms, &f.arities)?;
            emit(a.out.as_deref(), &format!("{z}\n"))
        }
        Command::Denoise(a) => {
            let noisy: BinaryGrid = read_input(&a.input)?.parse()?;
            let clean = denoise_demo(&noisy, a.coupling, a.evidence)?;
            emit(a.out.as_deref(), &clean.to_string())
        }
    }
}

fn load_model(m: &ModelArgs) -> anyhow::Result<LocalHamiltonian> {
    if m.model == FIVE_SPIN {
        for (name, v) in [("h1", m.h1), ("h2", m.h2), ("h3", m.h3)] {
            if !v.is_finite() {
                return Err(Error::Validation(format!("{name} must be finite")).into());
            }
        }
        return Ok(five_spin_preset(m.h1, m.h2, m.h3));
    }
    let path = Path::new(&m.model);
    if !path.exists() {
        bail!("model {:?} is neither a preset ({FIVE_SPIN}) nor an existing file", m.model);
    }
    read_json(path)
}

fn triple(t: &TripleArgs, n: usize) -> anyhow::Result<SeparatorTriple> {
    Ok(SeparatorTriple::new(
        t.a.iter().copied(),
        t.b.iter().copied(),
        t.c.iter().copied(),
        n,
    )?)
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
