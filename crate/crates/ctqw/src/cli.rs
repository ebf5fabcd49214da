//! The `ctqw` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ctqw_core::ensemble::{plateau, plateau_stderr, time_grid, EnsembleConfig};
use ctqw_core::netgen::{Generation, Model};
use ctqw_core::qwalk::{longtime, probability_trajectory, Warning};
use ctqw_core::spectral::DEFAULT_TOLERANCE;
use ctqw_core::{Graph, Hamiltonian, SpectralDecomposition};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::io::{read_edge_list, round_real, write_csv, write_edge_list, write_json, Table};
use crate::runner::run_ensemble;
use crate::verify::{self, Suite};

/// Relative output paths are resolved against this directory when it is set.
pub const OUT_DIR_ENV: &str = "CTQW_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "ctqw", version, about = "Continuous-time quantum walks on complex networks")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a network and write it as an edge list plus a JSON sidecar.
    Netgen(NetgenArgs),
    /// Eigenvalues and degeneracy structure of a network's Hamiltonian.
    Spectrum(SpectrumArgs),
    /// Long-time transition probabilities and IPR for every start node.
    Longtime(LongtimeArgs),
    /// Probability trajectory of a walk started on one node.
    Evolve(EvolveArgs),
    /// Mean IPR curve over many random instantiations.
    Ensemble(EnsembleArgs),
    /// Run the built-in verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelName {
    RecursiveTriangle,
    Ring,
    Nws,
    KleinbergRing,
    HolmeKim,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    /// Recursion depth (recursive-triangle).
    #[arg(long)]
    depth: Option<u32>,
    /// Number of nodes.
    #[arg(long)]
    n: Option<usize>,
    /// Shortcut probability per ring edge (nws).
    #[arg(long)]
    p: Option<f64>,
    /// Long-range draws per node (kleinberg-ring).
    #[arg(long)]
    q: Option<usize>,
    /// Distance exponent (kleinberg-ring).
    #[arg(long)]
    alpha: Option<f64>,
    /// Edges per new node (holme-kim, only 2 is supported).
    #[arg(long)]
    m: Option<usize>,
    /// Triangle-formation probability (holme-kim).
    #[arg(long = "p-triangle")]
    p_triangle: Option<f64>,
    /// Let kleinberg-ring draws land on the node itself.
    #[arg(long)]
    allow_self_edges: bool,
    /// Seed for the model's random choices; required for stochastic models.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct NetgenArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Edge-list output; the sidecar goes to `<out>.json`.
    #[arg(long, default_value = "graph.edges")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge-list input.
    #[arg(long)]
    graph: PathBuf,
    /// Accept `u u` lines even without the `self-edges` header token.
    #[arg(long)]
    allow_self_edges: bool,
    /// Absolute tolerance for equal eigenvalues and equal gaps.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tau: f64,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value = "spectrum.json")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct LongtimeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Matrix of long-time transition probabilities, column j = start node j.
    #[arg(long, default_value = "pi_bar.csv")]
    out_pi: PathBuf,
    /// Long-time IPR per start node.
    #[arg(long, default_value = "ipr_bar.csv")]
    out_ipr: PathBuf,
    /// Optional JSON with the IPR gaps and localized nodes.
    #[arg(long)]
    gaps_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// 1-based start node.
    #[arg(long)]
    start: usize,
    #[arg(long)]
    t_max: f64,
    #[arg(long)]
    dt: f64,
    #[arg(long, default_value = "trajectory.csv")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 1000)]
    runs: usize,
    /// 1-based start node.
    #[arg(long)]
    start: usize,
    #[arg(long, default_value_t = 100.0)]
    t_max: f64,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    /// Trailing fraction of the time window averaged into the plateau.
    #[arg(long, default_value_t = 0.2)]
    tail: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tau: f64,
    /// Worker threads (default: all cores). Does not change the output.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "curve.csv")]
    out: PathBuf,
    #[arg(long, default_value = "summary.json")]
    summary: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (program name first), runs one command and returns the exit
/// status. Errors are reported on a single stderr line `error[<kind>]: <msg>`.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{}", e.render());
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    eprint!("{}", e.render());
                    2
                }
                _ => {
                    // clap's message spans several lines; keep the part before the usage hint
                    let rendered = e.render().to_string();
                    let message: Vec<&str> = rendered
                        .lines()
                        .map(str::trim)
                        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                        .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
                        .collect();
                    eprintln!("error[validation]: {}", message.join(" ").trim_start_matches("error: "));
                    2
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {message}", e.kind());
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Netgen(a) => netgen(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Longtime(a) => longtime_cmd(a),
        Command::Evolve(a) => evolve_cmd(a),
        Command::Ensemble(a) => ensemble_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn validation(message: impl Into<String>) -> CliError {
    CliError::Validation(message.into())
}

impl ModelArgs {
    fn flags_given(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("depth", self.depth.is_some()),
            ("n", self.n.is_some()),
            ("p", self.p.is_some()),
            ("q", self.q.is_some()),
            ("alpha", self.alpha.is_some()),
            ("m", self.m.is_some()),
            ("p-triangle", self.p_triangle.is_some()),
            ("allow-self-edges", self.allow_self_edges),
        ]
    }

    /// The model, after checking that exactly its own flags were given and
    /// that stochastic models have a seed.
    fn to_model(&self) -> Result<Model> {
        let (required, optional): (&[&str], &[&str]) = match self.model {
            ModelName::RecursiveTriangle => (&["depth"], &[]),
            ModelName::Ring => (&["n"], &[]),
            ModelName::Nws => (&["n", "p"], &[]),
            ModelName::KleinbergRing => (&["n", "q", "alpha"], &["allow-self-edges"]),
            ModelName::HolmeKim => (&["n", "p-triangle"], &["m"]),
        };
        let name = self.model.to_possible_value().expect("named variant").get_name().to_string();
        for (flag, given) in self.flags_given() {
            if given && !required.contains(&flag) && !optional.contains(&flag) {
                return Err(validation(format!("--{flag} does not apply to --model {name}")));
            }
            if !given && required.contains(&flag) {
                return Err(validation(format!("--model {name} requires --{flag}")));
            }
        }
        let model = match self.model {
            ModelName::RecursiveTriangle => Model::RecursiveTriangle { depth: self.depth.unwrap() },
            ModelName::Ring => Model::Ring { n: self.n.unwrap() },
            ModelName::Nws => Model::Nws { n: self.n.unwrap(), p: self.p.unwrap() },
            ModelName::KleinbergRing => Model::KleinbergRing {
                n: self.n.unwrap(),
                q: self.q.unwrap(),
                alpha: self.alpha.unwrap(),
                allow_self_edges: self.allow_self_edges,
            },
            ModelName::HolmeKim => Model::HolmeKim {
                n: self.n.unwrap(),
                m: self.m.unwrap_or(2),
                p_triangle: self.p_triangle.unwrap(),
            },
        };
        model.validate()?;
        if model.is_random() && self.seed.is_none() {
            return Err(validation(format!("--model {name} is stochastic and requires --seed")));
        }
        Ok(model)
    }
}

/// Resolves an output path against `CTQW_OUT_DIR` and checks that it can be
/// created.
fn output_path(path: &Path) -> Result<PathBuf> {
    let resolved = match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    };
    if resolved.is_dir() {
        return Err(validation(format!("unwritable path {}: is a directory", resolved.display())));
    }
    let parent = match resolved.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    match std::fs::metadata(&parent) {
        Ok(m) if m.is_dir() && !m.permissions().readonly() => Ok(resolved),
        _ => Err(validation(format!("unwritable path {}: no writable directory {}", resolved.display(), parent.display()))),
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Serialize)]
struct SpecEcho<'a> {
    #[serde(flatten)]
    model: &'a Model,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct NetgenSidecar<'a> {
    spec: SpecEcho<'a>,
    n_nodes: usize,
    n_edges: usize,
    mean_clustering: f64,
    connected: bool,
    generation: Option<&'a Generation>,
}

fn netgen(a: NetgenArgs) -> Result<()> {
    let model = a.model.to_model()?;
    let out = output_path(&a.out)?;
    let sidecar = sidecar_path(&out);
    let seed = a.model.seed;
    let generated = model.generate(seed.unwrap_or(0))?;
    let g = &generated.graph;
    let mut comments = vec![format!("model {}", model.name())];
    if model.is_random() {
        comments.push(format!("seed {}", seed.unwrap_or(0)));
    }
    write_edge_list(&out, g, &comments)?;
    write_json(
        &sidecar,
        &NetgenSidecar {
            spec: SpecEcho { model: &model, seed },
            n_nodes: g.n_nodes(),
            n_edges: g.n_edges(),
            mean_clustering: round_real(g.mean_clustering()),
            connected: g.is_connected(),
            generation: generated.generation.as_ref(),
        },
    )?;
    println!("{}: N = {}, M = {}", out.display(), g.n_nodes(), g.n_edges());
    Ok(())
}

fn load(a: &GraphArgs) -> Result<(Graph, SpectralDecomposition)> {
    if !(a.tau > 0.0 && a.tau.is_finite()) {
        return Err(validation(format!("--tau {} must be positive", a.tau)));
    }
    let g = read_edge_list(&a.graph, a.allow_self_edges)?;
    let h = Hamiltonian::from_graph(&g)?;
    let s = SpectralDecomposition::from_hamiltonian(&h, a.tau)?;
    Ok((g, s))
}

fn rounded(values: &[f64]) -> Vec<f64> {
    values.iter().map(|&x| round_real(x)).collect()
}

#[derive(Serialize)]
struct ClassJson {
    value: f64,
    multiplicity: usize,
    /// 1-based positions in the ascending spectrum.
    first: usize,
    last: usize,
    span: f64,
}

#[derive(Serialize)]
struct GapClassJson {
    gap: f64,
    span: f64,
    n_pairs: usize,
}

#[derive(Serialize)]
struct SpectrumJson {
    n_nodes: usize,
    tolerance: f64,
    eigenvalues: Vec<f64>,
    n_distinct: usize,
    classes: Vec<ClassJson>,
    gap_classes: Vec<GapClassJson>,
    chained_degeneracy: bool,
    chained_gaps: bool,
}

fn spectrum(a: SpectrumArgs) -> Result<()> {
    let out = output_path(&a.out)?;
    let (g, s) = load(&a.graph)?;
    let classes = s
        .degeneracy_classes()
        .iter()
        .map(|c| ClassJson {
            value: round_real(c.value),
            multiplicity: c.len(),
            first: c.indices.start + 1,
            last: c.indices.end,
            span: round_real(c.span),
        })
        .collect();
    let gap_classes: Vec<GapClassJson> = s
        .gap_classes()
        .iter()
        .map(|c| GapClassJson { gap: round_real(c.gap), span: round_real(c.span), n_pairs: c.pairs.len() })
        .collect();
    write_json(
        &out,
        &SpectrumJson {
            n_nodes: g.n_nodes(),
            tolerance: s.tolerance(),
            eigenvalues: rounded(s.eigenvalues()),
            n_distinct: s.n_distinct(),
            classes,
            chained_degeneracy: s.has_chained_degeneracy(),
            chained_gaps: gap_classes.iter().any(|c| c.span > s.tolerance()),
            gap_classes,
        },
    )?;
    println!("{}: {} eigenvalues, {} distinct", out.display(), s.dim(), s.n_distinct());
    Ok(())
}

#[derive(Serialize)]
struct GapsJson<'a> {
    n_nodes: usize,
    tolerance: f64,
    n_distinct: usize,
    delta_abs: f64,
    delta_rel: f64,
    max_ipr: f64,
    min_ipr: f64,
    /// 1-based nodes attaining the maximum (the most localized start nodes).
    argmax: Vec<usize>,
    argmin: Vec<usize>,
    warnings: &'a [Warning],
}

fn node_header(first: &str, n: usize) -> Vec<String> {
    std::iter::once(first.to_string()).chain((1..=n).map(|k| format!("node_{k}"))).collect()
}

fn longtime_cmd(a: LongtimeArgs) -> Result<()> {
    let out_pi = output_path(&a.out_pi)?;
    let out_ipr = output_path(&a.out_ipr)?;
    let gaps_out = a.gaps_out.as_deref().map(output_path).transpose()?;
    let (g, s) = load(&a.graph)?;
    let n = g.n_nodes();
    let r = longtime(&s)?;

    let mut pi = Table::new(node_header("node", n));
    for i in 0..n {
        pi.rows.push(std::iter::once((i + 1) as f64).chain((0..n).map(|j| r.pi_bar[(i, j)])).collect());
    }
    write_csv(&out_pi, &pi)?;
    let mut ipr = Table::new(vec!["node".into(), "ipr_bar".into()]);
    ipr.rows = (0..n).map(|j| vec![(j + 1) as f64, r.ipr_bar[j]]).collect();
    write_csv(&out_ipr, &ipr)?;

    if let Some(path) = gaps_out {
        let max = r.ipr_bar.iter().copied().fold(f64::MIN, f64::max);
        let min = r.ipr_bar.iter().copied().fold(f64::MAX, f64::min);
        let near = |target: f64| (0..n).filter(|&j| (r.ipr_bar[j] - target).abs() <= 1e-10).map(|j| j + 1).collect();
        write_json(
            &path,
            &GapsJson {
                n_nodes: n,
                tolerance: s.tolerance(),
                n_distinct: s.n_distinct(),
                delta_abs: round_real(r.delta_abs),
                delta_rel: round_real(r.delta_rel),
                max_ipr: round_real(max),
                min_ipr: round_real(min),
                argmax: near(max),
                argmin: near(min),
                warnings: &r.warnings,
            },
        )?;
    }
    for w in &r.warnings {
        eprintln!("warning: {w:?}");
    }
    println!("delta_abs = {}, delta_rel = {}", crate::io::format_real(r.delta_abs), crate::io::format_real(r.delta_rel));
    Ok(())
}

fn evolve_cmd(a: EvolveArgs) -> Result<()> {
    let out = output_path(&a.out)?;
    let grid = time_grid(a.t_max, a.dt)?;
    let (g, s) = load(&a.graph)?;
    let n = g.n_nodes();
    if a.start == 0 || a.start > n {
        return Err(ctqw_core::Error::NodeOutOfRange { label: a.start, n }.into());
    }
    let traj = probability_trajectory(&s, a.start - 1, &grid)?;
    let mut table = Table::new(node_header("t", n));
    table.rows = grid.iter().enumerate().map(|(k, &t)| std::iter::once(t).chain(traj.row(k).iter().copied()).collect()).collect();
    write_csv(&out, &table)?;
    println!("{}: {} time points", out.display(), grid.len());
    Ok(())
}

#[derive(Serialize)]
struct EnsembleSpecEcho<'a> {
    #[serde(flatten)]
    model: &'a Model,
    seed: Option<u64>,
    runs: usize,
    start: usize,
    t_max: f64,
    dt: f64,
    tail: f64,
    tau: f64,
}

#[derive(Serialize)]
struct EnsembleSummary<'a> {
    spec: EnsembleSpecEcho<'a>,
    effective_runs: usize,
    plateau: f64,
    plateau_stderr: f64,
    tail_window: [f64; 2],
    regenerations: u64,
}

fn ensemble_cmd(a: EnsembleArgs) -> Result<()> {
    let model = a.model.to_model()?;
    let out = output_path(&a.out)?;
    let summary = output_path(&a.summary)?;
    if !(a.tail > 0.0 && a.tail <= 1.0) {
        return Err(validation(format!("--tail {} must be in (0, 1]", a.tail)));
    }
    if !(a.tau > 0.0 && a.tau.is_finite()) {
        return Err(validation(format!("--tau {} must be positive", a.tau)));
    }
    if a.start == 0 {
        return Err(validation("--start is a 1-based node label"));
    }
    let cfg = EnsembleConfig {
        model: model.clone(),
        n_runs: a.runs,
        master_seed: a.model.seed.unwrap_or(0),
        start: a.start - 1,
        t_grid: time_grid(a.t_max, a.dt)?,
        tolerance: a.tau,
    };
    cfg.validate()?;
    let curve = match a.threads {
        Some(0) => return Err(validation("--threads must be positive")),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| validation(e.to_string()))?
            .install(|| run_ensemble(&cfg))?,
        None => run_ensemble(&cfg)?,
    };
    let mut table = Table::new(vec!["t".into(), "mean_ipr".into(), "stderr".into()]);
    table.rows = (0..curve.t_grid.len()).map(|k| vec![curve.t_grid[k], curve.mean_ipr[k], curve.stderr[k]]).collect();
    write_csv(&out, &table)?;
    let last = *curve.t_grid.last().expect("non-empty grid");
    let first = curve.t_grid[0];
    let value = plateau(&curve, a.tail)?;
    write_json(
        &summary,
        &EnsembleSummary {
            spec: EnsembleSpecEcho {
                model: &model,
                seed: a.model.seed,
                runs: a.runs,
                start: a.start,
                t_max: a.t_max,
                dt: a.dt,
                tail: a.tail,
                tau: a.tau,
            },
            effective_runs: curve.n_runs,
            plateau: round_real(value),
            plateau_stderr: round_real(plateau_stderr(&curve, a.tail)?),
            tail_window: [round_real(last - a.tail * (last - first)), round_real(last)],
            regenerations: curve.regenerations,
        },
    )?;
    println!("plateau = {}", crate::io::format_real(value));
    Ok(())
}

fn verify_cmd(a: VerifyArgs) -> Result<()> {
    let out = a.out.as_deref().map(output_path).transpose()?;
    let report = verify::run(a.suite);
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(path) = out {
        write_json(&path, &report)?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerifyFailed { failed: report.n_failed, total: report.n_checks })
    }
}
