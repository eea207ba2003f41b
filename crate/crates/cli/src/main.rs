use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use eg_matchlab::bounds::{union_budget_with, BudgetQuery, BudgetTag, DEFAULT_MAX_TERMS};
use eg_matchlab::decomposition::{eg_check, eg_check_all, extremal, Decomposition, ExtremalMode, ExtremalOptions};
use eg_matchlab::harness::{
    certify, eg_fails_at_nu, run_trials, write_csv, Checks, DensityChecks, PRule, RegimeSpec,
    DEFAULT_NODE_BUDGET,
};
use eg_matchlab::matching::{
    matching_number, max_matching, tutte_berge_witness, vertex_cover_number_with_budget, WitnessMode,
    DEFAULT_COVER_BUDGET, N_EXACT,
};
use eg_matchlab::moves::{improve, ImproveOptions};
use eg_matchlab::{gen_gnp, Error, GnpParams, Graph};

#[derive(Parser)]
#[command(name = "eg-matchlab", version, about = "Largest subgraphs with a given matching number")]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Overrides every search budget.
    #[arg(long, global = true, env = "EG_MATCHLAB_BUDGET")]
    budget: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    #[value(alias = "heuristic")]
    Heur,
}

#[derive(Clone, Copy, ValueEnum)]
enum Regime {
    Dense,
    Forest,
    Middle,
}

#[derive(Clone, Copy, ValueEnum)]
enum TbMode {
    Exhaustive,
    Structural,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample G(n, p) as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Matching number and a maximum matching. `-` reads stdin.
    Nu { file: PathBuf },
    /// Vertex cover number.
    Tau { file: PathBuf },
    /// A Tutte–Berge witness set.
    TbWitness {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: TbMode,
    },
    /// Largest subgraph with matching number k.
    Extremal {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Required with `--mode heur`.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether every largest subgraph has one of the two shapes; all k when omitted.
    Egcheck {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the improvement moves from a partition, one JSON line per move.
    Improve {
        file: PathBuf,
        /// Partition as `{"S":[...],"blocks":[[...],...]}`, inline or a file path.
        #[arg(long)]
        pi: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
    },
    /// One union-bound sum, in log10.
    Bounds {
        #[arg(long)]
        tag: BudgetTag,
        #[arg(long)]
        n: u64,
        /// A probability, or `auto` for 8 ln n / n.
        #[arg(long, default_value = "auto")]
        p: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Full reports for several union-bound sums.
    Budget {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "auto")]
        p: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Defaults to every tag.
        #[arg(long = "tag")]
        tags: Vec<BudgetTag>,
    },
    /// Seeded trials over G(n, p); with --out, a CSV plus a `.summary.json` beside it.
    Montecarlo {
        #[arg(long, value_enum)]
        regime: Regime,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Edge probability for the middle regime.
        #[arg(long)]
        p: Option<f64>,
        /// p = c/n in the forest regime.
        #[arg(long, default_value_t = 0.1)]
        c: f64,
        #[arg(long, default_value_t = 12)]
        exact_cutoff: usize,
        /// Random sets per density statement; 0 skips the audit.
        #[arg(long, default_value_t = 0)]
        density_samples: usize,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Also run the moves from a random partition.
        #[arg(long)]
        moves: bool,
        /// Skip the vertex cover comparison.
        #[arg(long)]
        no_tau: bool,
    },
    /// Look for the two-P3 failure certificate.
    Certify { file: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Capability(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capability { .. } => Failure::Capability(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    Ok(Graph::parse_edge_list(&read_text(path)?)?)
}

fn resolve_p(p: &str, n: u64) -> CliResult<f64> {
    if p == "auto" {
        return Ok(eg_matchlab::bounds::dense_p(n));
    }
    p.parse().map_err(|_| Failure::Input(format!("bad probability {p:?}")))
}

/// Text destined for stdout or `--out`.
enum Output {
    Json(Value),
    Lines(Vec<Value>),
    Text(String),
    Written,
}

fn run(cli: &Cli) -> CliResult<Output> {
    let node_budget = cli.budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let cover_budget = cli.budget.unwrap_or(DEFAULT_COVER_BUDGET);
    if cli.budget == Some(0) {
        return Err(Failure::Input("budget must be positive".into()));
    }
    Ok(match &cli.cmd {
        Cmd::Gen { n, p, seed } => Output::Text(gen_gnp(&GnpParams::new(*n, *p, *seed)?)?.to_edge_list()),
        Cmd::Nu { file } => {
            let g = read_graph(file)?;
            let m = max_matching(&g);
            Output::Json(json!({"n": g.n(), "m": g.m(), "nu": m.size(), "matching": m.pairs()}))
        }
        Cmd::Tau { file } => {
            let g = read_graph(file)?;
            let tau = vertex_cover_number_with_budget(&g, cover_budget)?;
            Output::Json(json!({"n": g.n(), "m": g.m(), "tau": tau, "nu": matching_number(&g)}))
        }
        Cmd::TbWitness { file, mode } => {
            let g = read_graph(file)?;
            let mode = match mode {
                TbMode::Exhaustive => WitnessMode::Exhaustive { max_n: N_EXACT },
                TbMode::Structural => WitnessMode::Structural,
            };
            Output::Json(to_json(&tutte_berge_witness(&g, mode)?))
        }
        Cmd::Extremal { file, k, mode, seed } => {
            let g = read_graph(file)?;
            let mode = match mode {
                Mode::Exact => ExtremalMode::Exact,
                Mode::Heur => ExtremalMode::Heuristic,
            };
            if matches!(mode, ExtremalMode::Heuristic) && seed.is_none() {
                return Err(Failure::Input("--mode heur needs --seed".into()));
            }
            let opts = ExtremalOptions { seed: seed.unwrap_or(0), ..Default::default() };
            let r = extremal(&g, *k, mode, &opts)?;
            let forms: Vec<_> = r.maximizers.iter().map(|m| &m.forms).collect();
            Output::Json(json!({
                "k": r.k,
                "size": r.size,
                "maximizer_count": r.maximizer_count,
                "forms": forms,
                "mode": r.mode,
                "exact": r.exact,
                "maximizers": r.maximizers,
                "notes": r.notes,
            }))
        }
        Cmd::Egcheck { file, k } => {
            let g = read_graph(file)?;
            let opts = ExtremalOptions::default();
            let verdict = |v: &eg_matchlab::decomposition::EgVerdict| {
                let mut j = to_json(v);
                j["verdict"] = json!(if v.holds { "HOLDS" } else { "FAILS" });
                j
            };
            match k {
                Some(k) => Output::Json(verdict(&eg_check(&g, *k, &opts)?)),
                None => {
                    let all = eg_check_all(&g, &opts)?;
                    let holds = all.iter().all(|v| v.holds);
                    Output::Json(json!({
                        "verdict": if holds { "HOLDS" } else { "FAILS" },
                        "per_k": all.iter().map(verdict).collect::<Vec<_>>(),
                    }))
                }
            }
        }
        Cmd::Improve { file, pi, seed, max_steps } => {
            let g = read_graph(file)?;
            let text = if pi.trim_start().starts_with('{') { pi.clone() } else { read_text(Path::new(pi))? };
            let pi = Decomposition::from_json(g.n(), &text)?;
            let out = improve(&g, &pi, &ImproveOptions { max_steps: *max_steps, seed: *seed })?;
            let mut lines: Vec<Value> = out.trace.iter().map(to_json).collect();
            if let Some(r) = &out.rejected {
                let mut j = to_json(r);
                j["rejected"] = json!(true);
                lines.push(j);
            }
            lines.push(json!({
                "stop": out.stop,
                "initial_size": out.initial_size,
                "final_size": out.final_size,
                "final_pi": out.final_pi.to_json(),
                "note": out.note,
            }));
            Output::Lines(lines)
        }
        Cmd::Bounds { tag, n, p, eps } => {
            let p = resolve_p(p, *n)?;
            let r = union_budget_with(&BudgetQuery::new(*tag, *n, p, *eps)?, cli.budget.unwrap_or(DEFAULT_MAX_TERMS))?;
            Output::Json(json!({"tag": r.tag, "n": r.n, "p": r.p, "value_log10": r.value_log10}))
        }
        Cmd::Budget { n, p, eps, tags } => {
            let p = resolve_p(p, *n)?;
            let tags = if tags.is_empty() { BudgetTag::ALL.to_vec() } else { tags.clone() };
            let max_terms = cli.budget.unwrap_or(DEFAULT_MAX_TERMS);
            let reports = tags
                .iter()
                .map(|&t| union_budget_with(&BudgetQuery::new(t, *n, p, *eps)?, max_terms))
                .collect::<Result<Vec<_>, _>>()?;
            Output::Json(to_json(&reports))
        }
        Cmd::Montecarlo { regime, n, trials, seed, p, c, exact_cutoff, density_samples, eps, moves, no_tau } => {
            let rule = match regime {
                Regime::Dense => PRule::Dense,
                Regime::Forest => PRule::Forest { c: *c },
                Regime::Middle => PRule::Middle {
                    p: p.ok_or_else(|| Failure::Input("--regime middle needs --p".into()))?,
                },
            };
            let mut spec = RegimeSpec::new(*n, rule, *trials, *seed);
            spec.checks = Checks {
                exact_cutoff: *exact_cutoff,
                tau: !no_tau,
                density: (*density_samples > 0).then_some(DensityChecks { epsilon: *eps, samples: *density_samples }),
                moves: *moves,
                cover_budget,
                node_budget,
                ..Checks::default()
            };
            let run = run_trials(&spec)?;
            match &cli.out {
                Some(path) => {
                    write_csv(&run.records, fs::File::create(path)?)?;
                    let summary = path.with_extension("summary.json");
                    fs::write(&summary, serde_json::to_string_pretty(&run.summary).expect("serializable"))?;
                    eprintln!("wrote {} and {}", path.display(), summary.display());
                    Output::Written
                }
                None => Output::Json(to_json(&run)),
            }
        }
        Cmd::Certify { file } => {
            let g = read_graph(file)?;
            let report = certify(&g, node_budget);
            let check = report.certificate.as_ref().map(|_| eg_fails_at_nu(&g, cover_budget));
            Output::Json(json!({"n": g.n(), "m": g.m(), "report": report, "nu_check": check}))
        }
    })
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn emit(out: Option<&Path>, output: Output) -> io::Result<()> {
    let text = match output {
        Output::Written => return Ok(()),
        Output::Json(v) => format!("{v}\n"),
        Output::Lines(vs) => vs.iter().map(|v| format!("{v}\n")).collect(),
        Output::Text(t) => t,
    };
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = if matches!(cli.cmd, Cmd::Montecarlo { .. }) { None } else { cli.out.as_deref() };
    match run(&cli).and_then(|o| Ok(emit(out, o)?)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capability(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
