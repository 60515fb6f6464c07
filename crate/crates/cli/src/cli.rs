use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use floodlab_core::io::{generate, GeneratorSpec};
use floodlab_core::kernel::{kernelize, twin_partition};
use floodlab_core::reductions::{
    find_witness, mcsc_to_floodit, tight_path, McscInstance, ReductionError, WitnessQuery,
};
use floodlab_core::solver::{
    approx_free, decide_free_at_most, free_to_fixed_traced, lower_bound, project_subset_fixed,
    solve_fixed_exact, solve_free_exact, Decision, SearchBudget, SolveError, SolveStatus,
};
use floodlab_core::{validate_sequence, ColoredInstance, Mode, Vertex};
use serde_json::{json, Value};

use crate::input::{
    from_value, instance_doc, load_instance, load_solution, parse_budget, parse_json, read_source,
    CliError,
};
use crate::{EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

/// Default limit for `decide`, which cannot run unbounded.
const DECIDE_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Parser)]
#[command(
    name = "floodlab",
    version,
    about = "Flood-It solvers, kernels and reductions"
)]
pub struct Cli {
    /// Overrides the seed of generator specs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GameMode {
    Free,
    Fixed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact optimum in the free or fixed game.
    Solve {
        /// Instance file; stdin when omitted or `-`.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "free")]
        mode: GameMode,
        /// Pivot for the fixed game; defaults to the instance's pivot.
        #[arg(long)]
        pivot: Option<Vertex>,
        /// `250ms`, `2s`, or a number of expanded states.
        #[arg(long, value_parser = parse_budget)]
        budget: Option<SearchBudget>,
    },
    /// Is the free optimum at most K? Exit 1 on no.
    Decide {
        input: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// Defaults to 60s.
        #[arg(long, value_parser = parse_budget)]
        budget: Option<SearchBudget>,
    },
    /// Approximate free solution with a 2(c_max - 1) guarantee.
    Approx { input: Option<PathBuf> },
    /// Rewrites a free solution into a pivot-only one.
    ConvertFreeToFixed {
        input: Option<PathBuf>,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        pivot: Option<Vertex>,
    },
    /// Applies the twin rules until none fires.
    Kernelize { input: Option<PathBuf> },
    /// Twin partition and neighborhood diversity.
    Twins { input: Option<PathBuf> },
    /// Builds the flooding instance for a set-cover instance.
    ReduceMcsc {
        input: Option<PathBuf>,
        /// Padding block size; defaults to 3k.
        #[arg(long)]
        padding: Option<usize>,
    },
    /// 2-colored path on 2n+1 vertices with its pivot at an endpoint.
    TightPath {
        #[arg(long)]
        n: usize,
    },
    /// Searches pendant paths for a move that raises the free optimum.
    FindWitness {
        #[arg(long)]
        max_len: usize,
        /// Only moves whose color already borders the played component.
        #[arg(long)]
        merging_only: bool,
        /// Accept any starting optimum instead of 3.
        #[arg(long)]
        any: bool,
    },
    /// Replays a solution; exit 2 with the failing move index if invalid.
    Verify {
        input: Option<PathBuf>,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        pivot: Option<Vertex>,
    },
    /// Generates an instance from a JSON spec.
    Gen {
        #[arg(long)]
        spec: PathBuf,
    },
    /// JSON-over-HTTP game service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

/// Result of one subcommand.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub exit: u8,
}

impl Outcome {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Outcome {
            json,
            summary: summary.into(),
            exit: EXIT_OK,
        }
    }

    fn with_exit(mut self, exit: u8) -> Self {
        self.exit = exit;
        self
    }
}

/// Parses `args`, runs the command and prints its output. Returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Command::Serve { port, host } = &cli.command {
        return match crate::server::serve_blocking(host, *port) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("serve: {e}");
                EXIT_INPUT
            }
        };
    }
    let (json, summary, exit) = match execute(&cli) {
        Ok(o) => (o.json, o.summary, o.exit),
        Err(e) => (
            e.to_json(),
            format!("error [{}]: {}", e.code, e.message),
            e.exit,
        ),
    };
    let mut out = std::io::stdout().lock();
    let _ = serde_json::to_writer(&mut out, &json);
    let _ = writeln!(out);
    eprintln!("{summary}");
    exit
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Solve {
            input,
            mode,
            pivot,
            budget,
        } => {
            let inst = load_instance(input.as_deref())?.instance;
            let budget = budget.clone().unwrap_or_default();
            solve(&inst, *mode, *pivot, &budget)
        }
        Command::Decide { input, k, budget } => {
            let inst = load_instance(input.as_deref())?.instance;
            let budget = budget
                .clone()
                .unwrap_or_else(|| SearchBudget::time(DECIDE_BUDGET));
            decide(&inst, *k, &budget)
        }
        Command::Approx { input } => {
            let inst = load_instance(input.as_deref())?.instance;
            let sol = approx_free(&inst).map_err(solve_error)?;
            let c = inst.colors_used();
            let lb = lower_bound(&inst.initial_state());
            let summary = format!("approx: {} moves (lower bound {lb})", sol.len());
            Ok(Outcome::ok(
                json!({
                    "length": sol.len(),
                    "lower_bound": lb,
                    "ratio_bound": 2 * c.saturating_sub(1),
                    "solution": sol,
                }),
                summary,
            ))
        }
        Command::ConvertFreeToFixed {
            input,
            solution,
            pivot,
        } => {
            let inst = load_instance(input.as_deref())?.instance;
            let sol = load_solution(solution)?;
            let p = pivot_of(&inst, *pivot)?;
            let (subset, trace) = free_to_fixed_traced(&inst, p, &sol).map_err(solve_error)?;
            let fixed = project_subset_fixed(&inst, p, &subset).map_err(solve_error)?;
            let summary = format!(
                "convert: {} free moves -> {} fixed moves at pivot {p}",
                sol.len(),
                fixed.len()
            );
            Ok(Outcome::ok(
                json!({
                    "pivot": p,
                    "input_length": sol.len(),
                    "subset_fixed": subset,
                    "fixed": fixed,
                    "trace": trace,
                }),
                summary,
            ))
        }
        Command::Kernelize { input } => {
            let inst = load_instance(input.as_deref())?.instance;
            let k = kernelize(&inst);
            let mut doc = instance_doc(&k.kernel);
            doc["original_ids"] = json!(k.original_ids);
            doc["trace"] = json!(k.trace);
            doc["certificate"] = json!(k.certificate);
            let summary = format!(
                "kernelize: {} -> {} vertices in {} steps",
                inst.vertex_count(),
                k.kernel.vertex_count(),
                k.trace.len()
            );
            Ok(Outcome::ok(doc, summary))
        }
        Command::Twins { input } => {
            let inst = load_instance(input.as_deref())?.instance;
            let p = twin_partition(inst.graph());
            let summary = format!("twins: nd = {}", p.nd());
            Ok(Outcome::ok(
                json!({"nd": p.nd(), "classes": p.classes()}),
                summary,
            ))
        }
        Command::ReduceMcsc { input, padding } => {
            let value = parse_json(&read_source(input.as_deref())?)?;
            let m: McscInstance = from_value(value, "invalid-mcsc")?;
            m.validate().map_err(reduction_error)?;
            let padding = padding.unwrap_or(3 * m.k());
            let (inst, layout) = mcsc_to_floodit(&m, padding).map_err(reduction_error)?;
            let mut doc = instance_doc(&inst);
            doc["k"] = json!(m.k());
            doc["target"] = json!(2 * m.k());
            doc["layout"] = json!(layout);
            let summary = format!(
                "reduce-mcsc: k = {}, padding {padding}, {} vertices",
                m.k(),
                inst.vertex_count()
            );
            Ok(Outcome::ok(doc, summary))
        }
        Command::TightPath { n } => {
            let inst = tight_path(*n).map_err(reduction_error)?;
            let mut doc = instance_doc(&inst);
            doc["n"] = json!(n);
            Ok(Outcome::ok(
                doc,
                format!("tight-path: {} vertices, pivot 0", inst.vertex_count()),
            ))
        }
        Command::FindWitness {
            max_len,
            merging_only,
            any,
        } => {
            let mut q = if *any {
                WitnessQuery::any(*max_len)
            } else {
                WitnessQuery::classic(*max_len)
            };
            q.merging_only = *merging_only;
            match find_witness(q) {
                Ok(w) => {
                    let summary = format!(
                        "find-witness: path {} with pendant at {}, OPT {} -> {}",
                        w.path_len, w.pendant_at, w.opt_before, w.opt_after
                    );
                    let mut doc = instance_doc(&w.instance());
                    doc["found"] = json!(true);
                    doc["witness"] = json!(w);
                    Ok(Outcome::ok(doc, summary))
                }
                Err(ReductionError::NoWitness(len)) => Ok(Outcome::ok(
                    json!({"found": false, "max_path_len": len}),
                    format!("find-witness: none up to path length {len}"),
                )
                .with_exit(EXIT_NEGATIVE)),
                Err(e) => Err(reduction_error(e)),
            }
        }
        Command::Verify {
            input,
            solution,
            pivot,
        } => {
            let mut inst = load_instance(input.as_deref())?.instance;
            if let Some(p) = pivot {
                inst = inst
                    .with_pivot(*p)
                    .map_err(|e| CliError::input("invalid-pivot", e.to_string()))?;
            }
            let sol = load_solution(solution)?;
            let report = validate_sequence(&inst, &sol);
            let mut doc = json!(report);
            doc["mode"] = json!(sol.mode);
            doc["fingerprint"] = json!(inst.fingerprint());
            if report.valid {
                Ok(Outcome::ok(
                    doc,
                    format!("verify: valid, {} moves", report.length),
                ))
            } else {
                let f = report
                    .failure
                    .as_ref()
                    .expect("invalid reports carry a failure");
                let at = match f.index {
                    Some(i) => format!("move {i}"),
                    None => "end of sequence".to_string(),
                };
                Ok(
                    Outcome::ok(doc, format!("verify: invalid at {at}: {}", f.reason))
                        .with_exit(EXIT_INPUT),
                )
            }
        }
        Command::Gen { spec } => {
            let value = parse_json(&read_source(Some(spec))?)?;
            let mut spec: GeneratorSpec = from_value(value, "invalid-spec")?;
            if let Some(s) = cli.seed {
                reseed(&mut spec, s);
            }
            let g = generate(&spec).map_err(|e| CliError::input("invalid-spec", e.to_string()))?;
            let mut doc = instance_doc(&g.instance);
            doc["spec"] = json!(spec);
            if let (Some(m), Some(l)) = (&g.mcsc, &g.layout) {
                doc["mcsc"] = json!(m);
                doc["layout"] = json!(l);
            }
            let summary = format!(
                "gen: {} vertices, {} colors",
                g.instance.vertex_count(),
                g.instance.colors_used()
            );
            Ok(Outcome::ok(doc, summary))
        }
        Command::Serve { .. } => unreachable!("handled by run"),
    }
}

fn reseed(spec: &mut GeneratorSpec, s: u64) {
    match spec {
        GeneratorSpec::Grid { seed, .. }
        | GeneratorSpec::RandomGraph { seed, .. }
        | GeneratorSpec::Reduction { seed, .. } => *seed = s,
        GeneratorSpec::TightPath { .. } | GeneratorSpec::Witness { .. } => {}
    }
}

fn pivot_of(inst: &ColoredInstance, flag: Option<Vertex>) -> Result<Vertex, CliError> {
    let p = flag.or(inst.pivot()).ok_or_else(|| {
        CliError::input("pivot-required", "give --pivot or a pivot in the instance")
    })?;
    if p >= inst.vertex_count() {
        return Err(CliError::input(
            "invalid-pivot",
            format!("pivot {p} is not a vertex"),
        ));
    }
    Ok(p)
}

fn solve(
    inst: &ColoredInstance,
    mode: GameMode,
    pivot: Option<Vertex>,
    budget: &SearchBudget,
) -> Result<Outcome, CliError> {
    let (result, pivot) = match mode {
        GameMode::Free => (solve_free_exact(inst, budget).map_err(solve_error)?, None),
        GameMode::Fixed => {
            let p = pivot_of(inst, pivot)?;
            (
                solve_fixed_exact(inst, p, budget).map_err(solve_error)?,
                Some(p),
            )
        }
    };
    let mut doc = json!(result);
    doc["mode"] = json!(match mode {
        GameMode::Free => Mode::Free,
        GameMode::Fixed => Mode::Fixed,
    });
    doc["pivot"] = json!(pivot);
    let summary = match (result.status, result.value) {
        (SolveStatus::Optimal, Some(v)) => {
            format!("solve: optimal {v} moves ({} states)", result.expanded)
        }
        _ => format!(
            "solve: budget exhausted, optimum in [{}, {}]",
            result.lower_bound,
            result
                .upper_bound
                .map_or("unknown".to_string(), |u| u.to_string())
        ),
    };
    let exit = if result.is_optimal() {
        EXIT_OK
    } else {
        EXIT_BUDGET
    };
    Ok(Outcome::ok(doc, summary).with_exit(exit))
}

fn decide(inst: &ColoredInstance, k: usize, budget: &SearchBudget) -> Result<Outcome, CliError> {
    let d = decide_free_at_most(inst, k, budget).map_err(solve_error)?;
    Ok(match d {
        Decision::Yes(sol) => Outcome::ok(
            json!({"k": k, "answer": "yes", "solution": sol}),
            format!("decide: yes, {} moves <= {k}", sol.len()),
        ),
        Decision::No => Outcome::ok(
            json!({"k": k, "answer": "no"}),
            format!("decide: no, optimum exceeds {k}"),
        )
        .with_exit(EXIT_NEGATIVE),
        Decision::Unknown => Outcome::ok(
            json!({"k": k, "answer": "unknown"}),
            "decide: budget exhausted",
        )
        .with_exit(EXIT_BUDGET),
    })
}

pub(crate) fn solve_error(e: SolveError) -> CliError {
    let code = match &e {
        SolveError::Disconnected => "disconnected",
        SolveError::EmptyGraph => "empty-graph",
        SolveError::InvalidPivot(_) => "invalid-pivot",
        SolveError::UnboundedBudget => "unbounded-budget",
        SolveError::InvalidSolution(_) | SolveError::IllegalMove { .. } => "invalid-solution",
        SolveError::Partition(_) => "invalid-partition",
    };
    CliError::input(code, e.to_string())
}

fn reduction_error(e: ReductionError) -> CliError {
    match e {
        ReductionError::Solve(s) => solve_error(s),
        ReductionError::InvalidSize(_) => CliError::input("invalid-size", e.to_string()),
        other => CliError::input("invalid-mcsc", other.to_string()),
    }
}
