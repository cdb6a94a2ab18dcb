//! `treepack`: spanning-tree packing, arboricity and orientations from the
//! command line.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use treepack::asymptotics::{self, Prediction};
use treepack::diagnostics::{check_prop_a, check_prop_b, CheckParams};
use treepack::io::{format_graph, parse_edge_list, write_edges};
use treepack::{
    arboricity, cover_with_k_forests, densest_ratio_set, gen_gnm, gen_gnp, max_avg_degree_subgraph, min_max_orientation,
    orient_k, pack_k_trees, stp_number, two_choice_load, Cover, Error, ExperimentConfig, ForestDecomposition, Graph,
    Orient, Packing, ProcessStream, RngSeed,
};

const EXIT_INVALID: u8 = 2;
const EXIT_SKIPPED: u8 = 3;

#[derive(Parser)]
#[command(name = "treepack", version, about = "Spanning-tree packing, arboricity and k-orientability with certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p), G(n, m) or a random graph process.
    Gen(GenArgs),
    /// Spanning-tree packing number, or a decision for k trees.
    Stp(StpArgs),
    /// Arboricity, or a decision for k forests.
    Arboricity(ArboricityArgs),
    /// Bounded-indegree orientations.
    Orient(OrientArgs),
    /// Offline two-choice allocation: maximum load per sample, as CSV.
    Loadbalance(LoadArgs),
    /// Evaluate a closed-form prediction, as JSON.
    Predict(PredictArgs),
    /// Check the structural conditions behind the packing formulas, as JSON.
    Check(CheckArgs),
    /// Run a Monte Carlo experiment from a config file.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "m")]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the process order; with --m only its first m edges.
    #[arg(long, conflicts_with = "p")]
    process: bool,
    /// Output file instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StpArgs {
    /// Edge-list file, `-` for stdin.
    input: PathBuf,
    /// Only decide whether k edge-disjoint spanning trees exist.
    #[arg(long)]
    k: Option<usize>,
    /// Include the partition certificate.
    #[arg(long)]
    certificate: bool,
    /// Write the trees as edge-list blocks.
    #[arg(long)]
    emit_trees: Option<PathBuf>,
}

#[derive(Args)]
struct ArboricityArgs {
    input: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    certificate: bool,
    #[arg(long)]
    emit_forests: Option<PathBuf>,
    /// Print max |E[S]|/(|S|−1) and max |E[S]|/|S| as fractions.
    #[arg(long)]
    density: bool,
}

#[derive(Args)]
struct OrientArgs {
    input: PathBuf,
    #[arg(long, required_unless_present = "min", conflicts_with = "min")]
    k: Option<usize>,
    /// Minimise the maximum indegree.
    #[arg(long)]
    min: bool,
    /// Include the orientation, or the dense set ruling it out.
    #[arg(long)]
    certificate: bool,
}

#[derive(Args)]
struct LoadArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    samples: usize,
    /// Sample j uses seed + j.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw bin pairs with replacement instead of as G(n, m).
    #[arg(long)]
    multigraph: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Beta,
    Threshold,
    Phi,
    Arboricity,
    Ck,
    Mu,
    Core,
    Kc,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long, value_enum)]
    quantity: Quantity,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Report out-of-regime evaluations as null instead of failing.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    A,
    B,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    prop: Prop,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    zeta: f64,
    #[arg(long)]
    eta: f64,
    #[arg(long, default_value_t = 0.1)]
    slack: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Args)]
struct ExperimentArgs {
    config: PathBuf,
    /// Overrides the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Per-cell time budget; overrides the config.
    #[arg(long)]
    budget_secs: Option<f64>,
}

enum Failure {
    Invalid(String),
    Skipped(usize),
    /// stdout closed early, as in `treepack ... | head`.
    BrokenPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Failure::BrokenPipe
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Stp(a) => stp(a),
        Command::Arboricity(a) => arb(a),
        Command::Orient(a) => orient(a),
        Command::Loadbalance(a) => loadbalance(a),
        Command::Predict(a) => predict(a),
        Command::Check(a) => check(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(()) | Err(Failure::BrokenPipe) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Skipped(count)) => {
            eprintln!("warning: {count} samples skipped over budget");
            ExitCode::from(EXIT_SKIPPED)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?
    };
    parse_edge_list(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) -> CmdResult {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn emit_blocks(path: &Path, n: usize, fd: &ForestDecomposition) -> CmdResult {
    let mut s = String::new();
    for forest in &fd.forests {
        write_edges(&mut s, n, forest);
    }
    std::fs::write(path, s)?;
    Ok(())
}

fn gen(a: GenArgs) -> CmdResult {
    let seed = RngSeed::new(a.seed, 0);
    let text = if a.process {
        let ps = ProcessStream::new(a.n, seed);
        let m = a.m.unwrap_or(ps.len());
        if m > ps.len() {
            return Err(Failure::Invalid(format!("m = {m} exceeds C(n, 2) = {}", ps.len())));
        }
        let mut s = String::new();
        write_edges(&mut s, a.n, &ps.order()[..m]);
        s
    } else {
        let g = match (a.p, a.m) {
            (Some(p), None) => gen_gnp(a.n, p, seed)?,
            (None, Some(m)) => gen_gnm(a.n, m, seed)?,
            _ => return Err(Failure::Invalid("exactly one of --p, --m is required".into())),
        };
        format_graph(&g)
    };
    match a.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn stp(a: StpArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let mut out = json!({ "n": g.n(), "m": g.m() });
    let trees = match a.k {
        Some(k) => match pack_k_trees(&g, k)? {
            Packing::Trees(fd) => {
                out["k"] = json!(k);
                out["feasible"] = json!(true);
                Some(fd)
            }
            Packing::Infeasible(cert) => {
                out["k"] = json!(k);
                out["feasible"] = json!(false);
                if a.certificate {
                    out["certificate"] = to_json(&cert);
                }
                None
            }
        },
        None => {
            let r = stp_number(&g)?;
            out["t"] = json!(r.t);
            if a.certificate {
                out["certificate"] = r.certificate.as_ref().map_or(Value::Null, to_json);
            }
            Some(r.packing)
        }
    };
    if let Some(path) = &a.emit_trees {
        match &trees {
            Some(fd) => emit_blocks(path, g.n(), fd)?,
            None => return Err(Failure::Invalid("no packing to emit: k trees do not exist".into())),
        }
    }
    print_json(&out)
}

fn arb(a: ArboricityArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let mut out = json!({ "n": g.n(), "m": g.m() });
    let forests = match a.k {
        Some(k) => {
            out["k"] = json!(k);
            match cover_with_k_forests(&g, k)? {
                Cover::Forests(fd) => {
                    out["feasible"] = json!(true);
                    Some(fd)
                }
                Cover::Infeasible(cert) => {
                    out["feasible"] = json!(false);
                    if a.certificate {
                        out["certificate"] = to_json(&cert);
                    }
                    None
                }
            }
        }
        None => {
            let r = arboricity(&g);
            out["a"] = json!(r.a);
            if a.certificate {
                out["certificate"] = r.certificate.as_ref().map_or(Value::Null, to_json);
            }
            Some(r.cover)
        }
    };
    if a.density {
        if g.m() == 0 {
            out["density_forests"] = json!("0/1");
            out["density_orientation"] = json!("0/1");
        } else {
            let (forest_ratio, forest_set) = densest_ratio_set(&g)?;
            let (mad, set) = max_avg_degree_subgraph(&g)?;
            let half = mad / 2;
            out["density_forests"] = json!(format!("{}/{}", forest_ratio.numer(), forest_ratio.denom()));
            out["density_forests_set"] = to_json(&forest_set);
            out["density_orientation"] = json!(format!("{}/{}", half.numer(), half.denom()));
            out["density_orientation_set"] = to_json(&set);
        }
    }
    if let Some(path) = &a.emit_forests {
        match &forests {
            Some(fd) => emit_blocks(path, g.n(), fd)?,
            None => return Err(Failure::Invalid("no cover to emit: k forests do not suffice".into())),
        }
    }
    print_json(&out)
}

fn arcs(g: &Graph, head: &[u32]) -> Vec<(u32, u32)> {
    g.edges().iter().zip(head).map(|(&(u, v), &h)| (if h == u { v } else { u }, h)).collect()
}

fn orient(a: OrientArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let mut out = json!({ "n": g.n(), "m": g.m() });
    if a.min {
        let (k, o) = min_max_orientation(&g);
        out["max_indegree"] = json!(k);
        if a.certificate {
            out["arcs"] = to_json(&arcs(&g, &o.head));
        }
    } else {
        let k = a.k.expect("clap requires --k without --min");
        out["k"] = json!(k);
        match orient_k(&g, k) {
            Orient::Oriented(o) => {
                out["orientable"] = json!(true);
                if a.certificate {
                    out["arcs"] = to_json(&arcs(&g, &o.head));
                }
            }
            Orient::Infeasible(cert) => {
                out["orientable"] = json!(false);
                if a.certificate {
                    out["certificate"] = to_json(&cert);
                }
            }
        }
    }
    print_json(&out)
}

fn loadbalance(a: LoadArgs) -> CmdResult {
    let mut out = std::io::stdout().lock();
    writeln!(out, "sample,seed,maxload")?;
    for sample in 0..a.samples {
        let seed = a.seed.wrapping_add(sample as u64);
        let r = two_choice_load(a.n, a.m, RngSeed::new(seed, 0), a.multigraph)?;
        writeln!(out, "{sample},{seed},{}", r.max_load)?;
    }
    Ok(())
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T, Error> {
    x.ok_or_else(|| Error::InvalidParameter(format!("this quantity needs --{flag}")))
}

fn small_k(k: usize) -> Result<u32, Error> {
    u32::try_from(k).map_err(|_| Error::InvalidParameter(format!("k = {k} too large")))
}

fn predict(a: PredictArgs) -> CmdResult {
    let eps = a.eps;
    // (formula, prediction, extra fields)
    let evaluated: Result<(&str, Prediction, Value), Error> = (|| match a.quantity {
        Quantity::Beta => Ok((
            "beta = 2/(1 - ln 2)",
            Prediction::new("beta", asymptotics::beta(), 1e-14, "exact constant"),
            Value::Null,
        )),
        Quantity::Threshold => {
            let n = need(a.n, "n")?;
            let p = asymptotics::threshold_p(n)?;
            Ok((
                "p = beta (ln n - ln ln n / 2) / (n - 1)",
                Prediction::new("threshold_p", p, 1e-14 * p, "n -> infinity"),
                json!({ "n": n }),
            ))
        }
        Quantity::Phi => {
            let n = need(a.n, "n")?;
            match (a.m, a.k) {
                (Some(m), None) => {
                    let (phi1, phi2) = asymptotics::phi_window(m, n, eps)?;
                    Ok((
                        "phi_j = n exp(-(1 +- eps) 2m / (beta n))",
                        Prediction::new("phi_1", phi1, 1e-12 * n as f64, "m = O(n log n)"),
                        json!({ "n": n, "m": m, "eps": eps, "phi_2": phi2 }),
                    ))
                }
                (None, Some(k)) => {
                    let phi = asymptotics::orientability_phi(n, k, eps)?;
                    let (lo, hi) = asymptotics::orientability_thresholds(n, k, eps)?;
                    Ok((
                        "phi = n exp(-2 (1 - eps) k / beta), 0 for k >= (1 + eps) beta ln n / 2",
                        Prediction::new("orientability_phi", phi, 1e-12 * n as f64, "k-orientability window"),
                        json!({ "n": n, "k": k, "eps": eps, "orientable_up_to": lo, "never_from": hi }),
                    ))
                }
                _ => Err(Error::InvalidParameter("phi needs exactly one of --m, --k".into())),
            }
        }
        Quantity::Arboricity => {
            let n = need(a.n, "n")?;
            let m = need(a.m, "m")?;
            let values = asymptotics::arboricity_prediction(m, n, eps)?;
            Ok((
                "A in {ceil(m/(n-1)), ceil(m/(n-1)) + 1} by the position of m mod (n-1) in the phi window",
                Prediction::new("arboricity", values[0] as f64, 0.0, "m = O(n log n), delta(n-1) < m"),
                json!({ "n": n, "m": m, "eps": eps, "values": values }),
            ))
        }
        Quantity::Ck => {
            let k = small_k(need(a.k, "k")?)?;
            Ok((
                "c_k = inf_mu mu / f_{k-1}(mu), c_2 = 1",
                Prediction::new("c_k", asymptotics::c_k(k)?, 1e-9, "k >= 2"),
                json!({ "k": k }),
            ))
        }
        Quantity::Mu => {
            let k = small_k(need(a.k, "k")?)?;
            let c = need(a.c, "c")?;
            Ok((
                "mu_{c,k}: larger root of mu / f_{k-1}(mu) = c",
                Prediction::new("mu_ck", asymptotics::mu_ck(c, k)?, 1e-12 * c.max(1.0), "c > c_k"),
                json!({ "c": c, "k": k }),
            ))
        }
        Quantity::Core => {
            let k = small_k(need(a.k, "k")?)?;
            let c = need(a.c, "c")?;
            let (frac, edges) = asymptotics::core_prediction(c, k)?;
            Ok((
                "|core| / n = f_k(mu), e(core) / n = mu f_{k-1}(mu) / 2 at mu = mu_{c,k}",
                Prediction::new("core_fraction", frac, 1e-9, "G(n, c/n), c > c_k"),
                json!({ "c": c, "k": k, "edges_per_n": edges }),
            ))
        }
        Quantity::Kc => {
            let c = need(a.c, "c")?;
            Ok((
                "largest k with c_k <= c whose core has average degree above 2(k - 1)",
                Prediction::new("k_c", asymptotics::k_c(c)? as f64, 0.0, "G(n, c/n), A in {k_c, k_c + 1}"),
                json!({ "c": c }),
            ))
        }
    })();
    let (formula, pred, extra) = match evaluated {
        Ok(x) => x,
        Err(Error::OutOfRegime(msg)) if a.force => (
            "",
            Prediction::new(quantity_name(a.quantity), f64::NAN, f64::NAN, format!("outside regime: {msg}")),
            Value::Null,
        ),
        Err(e) => return Err(e.into()),
    };
    let mut out = to_json(&pred);
    out["formula"] = json!(formula);
    if let Value::Object(extra) = extra {
        out.as_object_mut().expect("object").extend(extra);
    }
    print_json(&out)
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Beta => "beta",
        Quantity::Threshold => "threshold_p",
        Quantity::Phi => "phi",
        Quantity::Arboricity => "arboricity",
        Quantity::Ck => "c_k",
        Quantity::Mu => "mu_ck",
        Quantity::Core => "core_fraction",
        Quantity::Kc => "k_c",
    }
}

fn check(a: CheckArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let params = CheckParams { slack: a.slack, seed: a.seed, samples: a.samples, ..CheckParams::new(a.eps, a.zeta, a.eta) };
    let report = match a.prop {
        Prop::A => check_prop_a(&g, params)?,
        Prop::B => check_prop_b(&g, params)?,
    };
    print_json(&to_json(&report))
}

fn experiment(a: ExperimentArgs) -> CmdResult {
    let text = std::fs::read_to_string(&a.config)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", a.config.display())))?;
    let mut cfg =
        ExperimentConfig::parse(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", a.config.display())))?;
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    if let Some(b) = a.budget_secs {
        cfg.budget_secs = Some(b);
    }
    let report = treepack::run_experiment(&cfg)?;
    report.write(&cfg, &a.out)?;
    eprintln!(
        "{}: {} rows written to {}",
        cfg.experiment,
        report.rows.len(),
        a.out.display()
    );
    if report.skipped > 0 {
        return Err(Failure::Skipped(report.skipped));
    }
    Ok(())
}
